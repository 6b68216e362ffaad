mod common;

use std::collections::BTreeMap;

use gradex::abgroups::{smith_normal_form, FGAbelianGroup, GroupElement, IntMatrix};
use gradex::exactla::Scalar;
use gradex::gfunct::coarsen_module;
use gradex::ghom::dual;
use gradex::gmod::{
    cokernel, generated_submodule, image, kernel, quotient, shift, GradedModule, HilbertFunction,
};
use gradex::io::{module_to_json, parse_module, parse_ring, ring_to_json};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

use common::*;

fn int_matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-9i64..10, c), r)
            .prop_map(|rows| IntMatrix::from_rows(&rows))
    })
}

fn corpus_module() -> impl Strategy<Value = GradedModule> {
    let modules: Vec<GradedModule> = finite_modules().into_iter().map(|(_, m)| m).collect();
    proptest::sample::select(modules)
}

fn add_hilbert(a: &HilbertFunction, b: &HilbertFunction) -> HilbertFunction {
    let mut out: BTreeMap<GroupElement, usize> = a.clone();
    for (g, n) in b {
        *out.entry(g.clone()).or_default() += n;
    }
    out.retain(|_, n| *n > 0);
    out
}

fn nonzero(h: &HilbertFunction) -> HilbertFunction {
    h.iter()
        .filter(|(_, n)| **n > 0)
        .map(|(g, n)| (g.clone(), *n))
        .collect()
}

/// A homogeneous vector of `m` chosen from a seed: one basis vector plus a
/// combination of the others in the same degree.
fn homogeneous_vector(m: &GradedModule, seed: &[u8]) -> Vec<Scalar> {
    let f = m.field();
    let mut v = vec![f.zero(); m.dim()];
    if m.dim() == 0 {
        return v;
    }
    let j = seed[0] as usize % m.dim();
    for (k, &b) in seed.iter().enumerate().skip(1) {
        let i = (j + k) % m.dim();
        if m.degree(i) == m.degree(j) {
            v[i] = f.from_i64(b as i64);
        }
    }
    v[j] = f.one();
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_form_factors_the_matrix(a in int_matrix()) {
        let s = smith_normal_form(&a);
        prop_assert_eq!(s.u.mul(&a).mul(&s.v), s.d.clone());
        prop_assert_eq!(s.u.mul(&s.u_inv), IntMatrix::identity(a.rows()));
        prop_assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(a.cols()));
        let f = s.invariant_factors();
        for w in f.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                if i != j || i >= s.rank {
                    prop_assert!(s.d.row(i)[j].is_zero());
                }
            }
        }
    }

    #[test]
    fn group_arithmetic_is_abelian(
        free in 0usize..3,
        torsion in proptest::collection::vec(2u64..7, 0..3),
        a in proptest::collection::vec(-20i64..20, 5),
        b in proptest::collection::vec(-20i64..20, 5),
    ) {
        let mut torsion = torsion;
        torsion.sort();
        let torsion: Vec<BigInt> = torsion.iter().scan(BigInt::from(1), |acc, &t| {
            *acc = &*acc * BigInt::from(t);
            Some(acc.clone())
        }).collect();
        let g = FGAbelianGroup::new(free, torsion).unwrap();
        let n = g.ngens();
        let x = g.element(a[..n].to_vec()).unwrap();
        let y = g.element(b[..n].to_vec()).unwrap();
        prop_assert_eq!(g.add(&x, &y), g.add(&y, &x));
        prop_assert_eq!(g.sub(&g.add(&x, &y), &y), x.clone());
        prop_assert!(g.is_zero(&g.add(&x, &g.neg(&x))));
    }

    #[test]
    fn shift_round_trips(m in corpus_module(), k in -3i64..4) {
        let g = m.group().clone();
        if g.ngens() == 0 {
            return Ok(());
        }
        let mut coords = vec![0i64; g.ngens()];
        coords[0] = k;
        let d = g.element(coords).unwrap();
        let back = shift(&shift(&m, &d), &g.neg(&d));
        prop_assert_eq!(back, m);
    }

    #[test]
    fn quotients_split_hilbert_functions(m in corpus_module(), seed in proptest::collection::vec(0u8..5, 4)) {
        let v = homogeneous_vector(&m, &seed);
        let space = generated_submodule(&m, &[v]).unwrap();
        let q = quotient(&m, &space).unwrap();
        let inc = kernel(&q);
        prop_assert_eq!(add_hilbert(&inc.source().hilbert(), &q.target().hilbert()), nonzero(&m.hilbert()));
        let im = image(&q);
        prop_assert_eq!(nonzero(&im.source().hilbert()), nonzero(&q.target().hilbert()));
        prop_assert_eq!(cokernel(&q).target().dim(), 0);
    }

    #[test]
    fn dual_is_involutive_and_preserves_dimension(m in corpus_module()) {
        let d = dual(&m);
        prop_assert_eq!(d.dim(), m.dim());
        prop_assert_eq!(dual(&d), m);
    }

    #[test]
    fn coarsening_to_trivial_keeps_total_dimension(m in corpus_module()) {
        let psi = to_trivial(m.group());
        let c = coarsen_module(&m, &psi).unwrap();
        prop_assert_eq!(c.dim(), m.dim());
        prop_assert_eq!(c.hilbert().values().sum::<usize>(), m.dim());
    }

    #[test]
    fn documents_round_trip(m in corpus_module()) {
        let r = m.algebra();
        let parsed = parse_ring(&ring_to_json(r), None).unwrap();
        prop_assert_eq!(&parsed, &**r);
        let parsed = parse_module(&module_to_json(&m), None).unwrap();
        prop_assert_eq!(parsed, m);
    }
}
