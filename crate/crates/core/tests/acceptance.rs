//! Acceptance suite: one line per criterion, each under its runtime bound.
//! Runs with a custom harness (`cargo test --test acceptance`).

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use gradex::abgroups::{FGAbelianGroup, GroupHom};
use gradex::exactla::{Field, Scalar, Subspace};
use gradex::gcore::{graded_ideals, intersect_all, spec_enumerate, GradedAlgebra, GradedIdeal};
use gradex::gfunct::{
    adjunction_check, coarsen_algebra, coarsen_module, coarsening_report, compare_homogeneous_sets,
    corestrict, monoid_corestriction, restrict, tensor_witness,
};
use gradex::ghom::{
    coarsen_dimension_compare, cogenerator_separates, dimension, double_dual_iso, dual,
    dual_morphism, hom_into_cogenerator, lambek_check, resolution, schanuel_glue, DimensionKind,
    Truncation,
};
use gradex::gmod::{
    free_map_matrix, free_module, freeness, generated_submodule, graded_radical, hom_component,
    kernel, principal_suite, quotient, small_submodule, submodule, GradedModule, ModuleMorphism,
    SmallMode,
};
use gradex::io::parse_principal;
use gradex::{oracles, samples, DEFAULT_SEED};
use serde_json::json;

use common::*;

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

fn torsion_dichotomy() -> Check {
    let tf_pairs: Vec<(&str, GradedAlgebra, GroupHom)> = {
        let m = mixed(2);
        vec![
            (
                "Q[X]/(X^2), Z->0",
                samples::dual_numbers(Q),
                to_trivial(&z()),
            ),
            (
                "Q[X,Y]/(X^2,Y^2), Z^2->Z",
                samples::exterior_like(Q),
                sum_map(),
            ),
            ("QxQ, Z->0", samples::split_product(Q), to_trivial(&z())),
            (
                "Q[X]/(X^2+1) over Z+Z/2, onto Z/2",
                into_mixed_torsion(&samples::gaussian_rationals(), &m),
                m.onto_torsion.clone(),
            ),
            (
                "Q over Z^2, Z^2->Z",
                samples::trivial_field(Q, FGAbelianGroup::free(2)),
                sum_map(),
            ),
            (
                "F2[X]/(X^3), Z->0",
                samples::truncated_polynomial(F2, 3),
                to_trivial(&z()),
            ),
        ]
    };
    let torsion_pairs: Vec<(&str, GradedAlgebra, GroupHom)> = vec![
        (
            "F2[Z/2], Z/2->0",
            samples::cyclic_group_algebra(F2, 2),
            to_trivial(&FGAbelianGroup::cyclic(2)),
        ),
        (
            "Q[X]/(X^2+1), Z/2->0",
            samples::gaussian_rationals(),
            to_trivial(&FGAbelianGroup::cyclic(2)),
        ),
        (
            "F3[Z/3], Z/3->0",
            samples::cyclic_group_algebra(F3, 3),
            to_trivial(&FGAbelianGroup::cyclic(3)),
        ),
    ];
    let mut preserved_entire = 0;
    for (name, r, psi) in &tf_pairs {
        ensure!(psi.kernel().torsionfree, "{name}: kernel has torsion");
        let rep = ok(coarsening_report(r, psi), name)?;
        for d in [
            rep.fine.entire,
            rep.fine.reduced,
            rep.coarse.entire,
            rep.coarse.reduced,
        ] {
            ensure!(d.as_bool().is_some(), "{name}: undecided flag");
        }
        ensure!(
            rep.entire_preserved && rep.reduced_preserved,
            "{name}: entire/reduced not preserved"
        );
        if rep.fine.entire.is_yes() {
            preserved_entire += 1;
        }
    }
    ensure!(
        preserved_entire >= 2,
        "only {preserved_entire} entire torsionfree samples"
    );
    for (name, r, psi) in &torsion_pairs {
        ensure!(!psi.kernel().torsionfree, "{name}: kernel is torsionfree");
        ok(coarsening_report(r, psi), name)?;
    }
    let (_, r, psi) = &torsion_pairs[0];
    let rep = ok(coarsening_report(r, psi), "F2[Z/2]")?;
    ensure!(
        rep.fine.simple.is_yes(),
        "F2[Z/2] fine grading is not simple"
    );
    ensure!(rep.coarse.reduced.is_no(), "coarsened F2[Z/2] is reduced");
    let x = rep.coarse_nilpotent.ok_or("no nilpotent witness")?;
    ensure!(x == vec![F2.one(), F2.one()], "witness is not e_0 + e_1");
    let coarse = ok(coarsen_algebra(r, psi), "coarsen")?;
    ensure!(
        coarse.mul(&x, &x).iter().all(|c| c == &F2.zero()),
        "(e_0+e_1)^2 != 0"
    );
    Ok(format!(
        "{} pairs, {} torsionfree preserve entire/reduced; (e0+e1)^2 = 0 after Z/2->0",
        tf_pairs.len() + torsion_pairs.len(),
        tf_pairs.len()
    ))
}

fn simplicity_rigidity() -> Check {
    let r = samples::gaussian_rationals();
    let psi = to_trivial(r.group());
    let cmp = ok(compare_homogeneous_sets(&r, &psi), "Q(i)")?;
    ensure!(!cmp.equal, "homogeneous sets of Q[X]/(X^2+1) coincide");
    let x_plus_1 = vec![Q.one(), Q.one()];
    let coarse = ok(coarsen_algebra(&r, &psi), "coarsen")?;
    ensure!(
        !r.is_homogeneous(&x_plus_1) && coarse.is_homogeneous(&x_plus_1),
        "x+1 is not a witness"
    );
    let m2 = mixed(2);
    let m3 = mixed(3);
    let candidates: Vec<(&str, GradedAlgebra, GroupHom)> = vec![
        (
            "F3 over Z, Z->0",
            samples::trivial_field(F3, z()),
            to_trivial(&z()),
        ),
        (
            "F3 over Z^2, Z^2->Z",
            samples::trivial_field(F3, FGAbelianGroup::free(2)),
            sum_map(),
        ),
        (
            "F9 over Z+Z/2",
            into_mixed_torsion(&samples::pure_extension(F3, 2, -1), &m2),
            m2.onto_torsion.clone(),
        ),
        (
            "F3[Z/3] over Z+Z/3",
            into_mixed_torsion(&samples::cyclic_group_algebra(F3, 3), &m3),
            m3.onto_torsion.clone(),
        ),
        (
            "F3[X]/(X^2), Z->0",
            samples::dual_numbers(F3),
            to_trivial(&z()),
        ),
        ("F3xF3, Z->0", samples::split_product(F3), to_trivial(&z())),
    ];
    let mut compared = 0;
    for (name, r, psi) in &candidates {
        ensure!(psi.kernel().torsionfree, "{name}: kernel has torsion");
        let coarse = ok(coarsen_algebra(r, psi), name)?;
        if !coarse.classify_ring().simple.is_yes() {
            continue;
        }
        let cmp = ok(compare_homogeneous_sets(r, psi), name)?;
        ensure!(cmp.equal, "{name}: homogeneous sets differ");
        let fine: BTreeSet<_> = ok(oracles::homogeneous_elements(r), name)?
            .into_iter()
            .collect();
        let coarse: BTreeSet<_> = ok(oracles::homogeneous_elements(&coarse), name)?
            .into_iter()
            .collect();
        ensure!(fine == coarse, "{name}: oracle homogeneous sets differ");
        compared += 1;
    }
    ensure!(compared >= 3, "only {compared} simple coarsenings compared");
    Ok(format!(
        "x+1 separates Q(i) gradings; {compared} torsionfree samples equal over F3"
    ))
}

fn adjoint_triple() -> Check {
    let z = z();
    let doubling =
        GroupHom::from_images(z.clone(), z.clone(), &[z.element(vec![2]).unwrap()]).unwrap();
    let zero_in = GroupHom::zero(&FGAbelianGroup::trivial(), &z);
    let c2 = FGAbelianGroup::cyclic(2);
    let c4 = FGAbelianGroup::cyclic(4);
    let two_in_four =
        GroupHom::from_images(c2.clone(), c4.clone(), &[c4.element(vec![2]).unwrap()]).unwrap();
    let m = mixed(2);
    let cases: Vec<(&str, GroupHom, Vec<GradedAlgebra>, Vec<GradedAlgebra>)> = vec![
        (
            "2: Z->Z",
            doubling.clone(),
            vec![
                samples::dual_numbers(F2),
                samples::trivial_field(Q, z.clone()),
            ],
            vec![
                samples::dual_numbers(Q),
                samples::truncated_polynomial(F2, 3),
                samples::dual_numbers(F2),
            ],
        ),
        (
            "0->Z",
            zero_in.clone(),
            vec![
                samples::trivial_field(F2, FGAbelianGroup::trivial()),
                samples::split_product_over(F2, FGAbelianGroup::trivial()),
            ],
            vec![
                samples::dual_numbers(F2),
                samples::truncated_polynomial(F2, 3),
            ],
        ),
        (
            "Z/2->Z/4",
            two_in_four,
            vec![samples::cyclic_group_algebra(F2, 2)],
            vec![samples::cyclic_group_algebra(F2, 4)],
        ),
        (
            "Z/2->Z+Z/2",
            m.torsion_in.clone(),
            vec![samples::cyclic_group_algebra(F2, 2)],
            vec![into_mixed_free(&samples::dual_numbers(F2), &m)],
        ),
    ];
    let mut triangles = 0;
    let mut bijections = 0;
    for (name, phi, fs, gs) in &cases {
        let rep = ok(adjunction_check(phi, fs, gs), name)?;
        ensure!(
            rep.triangles.iter().all(|t| t.holds),
            "{name}: triangle identity fails"
        );
        ensure!(
            rep.bijections.iter().all(|b| b.bijective),
            "{name}: Hom-set bijection fails"
        );
        triangles += rep.triangles.len();
        bijections += rep.bijections.len();
    }
    ensure!(
        bijections >= 8,
        "only {bijections} Hom-set bijections enumerated"
    );
    let laurent = samples::laurent(Q);
    let lc = ok(monoid_corestriction(&laurent, &zero_in), "laurent")?;
    ensure!(
        lc.zero_by_unit,
        "corestriction of the Laurent algebra is not the zero ring"
    );
    let r = samples::dual_numbers(Q);
    let cor = ok(corestrict(&r, &doubling), "corestrict")?;
    let res = ok(restrict(&r, &doubling), "restrict")?;
    ensure!(
        cor.ring == res.ring,
        "corestriction along doubling differs from restriction"
    );
    let w = ok(tensor_witness(Q), "tensor witness")?;
    ensure!(
        w.mismatch && w.restricted_degree_zero_dim == 1,
        "tensor witness reports no degree-0 mismatch"
    );
    Ok(format!(
        "{triangles} triangle checks, {bijections} F2 Hom bijections, Laurent corestriction = 0"
    ))
}

fn principal_docs() -> Vec<serde_json::Value> {
    vec![
        json!({"var_degree": [1], "ambient": [[0]], "gens": [[["1", 2]]]}),
        json!({"var_degree": [1], "ambient": [[0], [0]], "gens": [[["1", 1], ["0", 0]], [["0", 0], ["1", 2]]]}),
        json!({"var_degree": [1], "ambient": [[0], [-1]], "gens": [[["1", 1], ["1", 2]], [["1", 3], ["1", 4]]]}),
        json!({"var_degree": [1], "ambient": [[0]], "gens": [[["1", 2]], [["1", 3]], [["2", 5]]]}),
        json!({"var_degree": [1, 0], "ambient": [[0, 0], [0, 1]], "gens": [[["1", 1], ["0", 0]], [["0", 0], ["1", 0]], [["3", 2], ["0", 0]]]}),
    ]
}

fn freeness_criterion() -> Check {
    let m = split_module();
    let fine = ok(freeness(&m, DEFAULT_SEED), "freeness")?;
    ensure!(fine.free.is_no(), "F2xF2 module certified free");
    ensure!(
        ok(oracles::exhaustive_free_basis(&m), "oracle")?.is_none(),
        "oracle finds a basis"
    );
    let cm = ok(coarsen_module(&m, &to_trivial(&z())), "coarsen")?;
    let coarse = ok(freeness(&cm, DEFAULT_SEED), "coarse freeness")?;
    ensure!(
        coarse.free.is_yes() && coarse.rank == Some(1),
        "coarsening is not free of rank 1"
    );
    ensure!(
        coarse.basis == Some(vec![vec![F2.one(), F2.one()]]),
        "basis is not (1,1)"
    );
    ensure!(
        ok(oracles::exhaustive_free_basis(&cm), "oracle")?.is_some(),
        "oracle finds no basis after coarsening"
    );
    let mut ranks = Vec::new();
    for (i, doc) in principal_docs().iter().enumerate() {
        let p = ok(parse_principal(doc, None), "principal document")?;
        let psi = to_trivial(&p.group);
        let rep = ok(principal_suite(&p, &psi), "principal suite")?;
        ensure!(
            rep.free && rep.rank <= p.gens.len(),
            "sample {i}: not free or rank too large"
        );
        ensure!(
            rep.decomposition.len() == rep.rank,
            "sample {i}: decomposition size differs from rank"
        );
        ensure!(
            rep.coarsening_agrees && rep.coarsened_rank == rep.rank,
            "sample {i}: coarsening disagrees"
        );
        ranks.push(rep.rank);
    }
    ensure!(ranks == vec![1, 2, 1, 1, 2], "unexpected ranks {ranks:?}");
    Ok(format!(
        "split module not free, coarsening free on (1,1); K[X] ranks {ranks:?}"
    ))
}

fn residues_to_scalars(f: Field, rows: &[Vec<u64>]) -> Vec<Vec<Scalar>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| f.from_i64(x as i64)).collect())
        .collect()
}

fn superfluous_counterexample() -> Check {
    let p = ok(
        parse_principal(
            &json!({"var_degree": [1], "ambient": [[0]], "gens": [[["1", 1]]]}),
            None,
        ),
        "doc",
    )?;
    let rep = ok(principal_suite(&p, &to_trivial(&p.group)), "suite")?;
    let ce = rep.counterexample.ok_or("no counterexample report")?;
    ensure!(ce.graded_superfluous, "<X> not graded superfluous");
    ensure!(
        !ce.coarsened_superfluous,
        "<X> superfluous after coarsening"
    );
    ensure!(
        ce.witness == Some(vec!["1".into(), "1".into()]),
        "witness is not X+1: {:?}",
        ce.witness
    );
    let samples: Vec<(String, GradedModule, GroupHom)> = vec![
        (
            "F2[X]/(X^4)".into(),
            regular(&samples::truncated_polynomial(F2, 4)),
            to_trivial(&z()),
        ),
        (
            "F2[X]/(X^2) + K".into(),
            finite_modules()[4].1.clone(),
            to_trivial(&z()),
        ),
        (
            "F2[Z/2]".into(),
            regular(&samples::cyclic_group_algebra(F2, 2)),
            to_trivial(&FGAbelianGroup::cyclic(2)),
        ),
        (
            "F2[X,Y]/(X^2,Y^2)".into(),
            regular(&samples::exterior_like(F2)),
            sum_map(),
        ),
        (
            "F2[X,Y]/(X^2,Y^2) total".into(),
            regular(&samples::exterior_like(F2)),
            to_trivial(&FGAbelianGroup::free(2)),
        ),
        (
            "F2xF2 split module".into(),
            split_module(),
            to_trivial(&z()),
        ),
        (
            "F3[X]/(X^2)".into(),
            regular(&samples::dual_numbers(F3)),
            to_trivial(&z()),
        ),
    ];
    let mut checked = 0;
    for (name, n, psi) in &samples {
        let coarse = ok(coarsen_module(n, psi), name)?;
        for sub in ok(oracles::enumerate_graded_submodules(n), name)? {
            let im = residues_to_scalars(n.field(), &sub);
            let up = ok(oracles::superfluous_oracle(&coarse, &im), name)?;
            if up.holds {
                let down = ok(oracles::superfluous_oracle(n, &im), name)?;
                ensure!(
                    down.holds,
                    "{name}: coarsened superfluous but not graded superfluous"
                );
            }
            checked += 1;
        }
    }
    Ok(format!(
        "X+1 refutes the coarsened inclusion; reflection holds on {checked} submodules"
    ))
}

/// `u` is homogeneous, equivariant and invertible, checked entrywise.
fn explicit_iso(u: &ModuleMorphism) -> bool {
    let (s, t, m) = (u.source(), u.target(), u.matrix());
    let homogeneous = (0..t.dim())
        .all(|i| (0..s.dim()).all(|j| m[(i, j)] == s.field().zero() || t.degree(i) == s.degree(j)));
    let equivariant =
        (0..s.algebra().dim()).all(|a| m.mul(s.action(a)).ok() == t.action(a).mul(m).ok());
    homogeneous && equivariant && m.is_invertible()
}

fn schanuel() -> Check {
    let r = std::sync::Arc::new(samples::dual_numbers(Q));
    let rr = regular(&r);
    let x = generated_submodule(&rr, &[rr.basis_vector(1)]).map_err(|e| e.to_string())?;
    let alpha = ok(quotient(&rr, &x), "quotient")?;
    let k = alpha.target().clone();
    let zg = r.group();
    let q = free_module(&r, &[zg.zero(), zg.element(vec![1]).unwrap()]);
    let beta = ok(
        ModuleMorphism::new(
            q,
            k.clone(),
            free_map_matrix(&k, &[k.basis_vector(0), k.zero_vector()]),
        ),
        "beta",
    )?;
    let t1 = ok(Truncation::new(vec![alpha]), "first truncation")?;
    let t2 = ok(Truncation::new(vec![beta]), "second truncation")?;
    let one = ok(schanuel_glue(&t1, &t2), "n = 1")?;
    ensure!(
        one.verified && explicit_iso(&one.iso),
        "n = 1 isomorphism not explicit"
    );
    let expected = json!({"0": 1, "1": 3, "2": 1});
    ensure!(
        serde_json::to_value(&one).unwrap()["source_hilbert"] == expected
            && serde_json::to_value(&one).unwrap()["target_hilbert"] == expected,
        "n = 1 dimensions are not {{0:1, 1:3, 2:1}}"
    );
    let minimal = ok(resolution(&k, 2, true), "resolution")?;
    let padded = ok(resolution(&k, 2, false), "resolution")?;
    let t1 = ok(Truncation::from_resolution(&minimal, 2), "truncate")?;
    let t2 = ok(Truncation::from_resolution(&padded, 2), "truncate")?;
    let two = ok(schanuel_glue(&t1, &t2), "n = 2")?;
    ensure!(
        two.verified && explicit_iso(&two.iso),
        "n = 2 isomorphism not explicit"
    );
    ensure!(
        two.source_hilbert == two.target_hilbert,
        "n = 2 Hilbert functions differ"
    );
    Ok(format!(
        "n=1 dim {}, n=2 dim {}",
        one.iso.source().dim(),
        two.iso.source().dim()
    ))
}

fn dimension_invariance() -> Check {
    let m2 = mixed(2);
    let dn_mixed = into_mixed_free(&samples::dual_numbers(Q), &m2);
    let shift = m2.group.element(vec![0, 1]).unwrap();
    let k_mixed = gradex::gmod::shift(&top(&dn_mixed), &shift);
    let t3 = samples::truncated_polynomial(Q, 3);
    let t3r = regular(&t3);
    let x2 = generated_submodule(&t3r, &[t3r.basis_vector(2)]).map_err(|e| e.to_string())?;
    let pairs: Vec<(&str, GradedModule, GroupHom)> = vec![
        (
            "K over Q[X]/(X^2), Z->0",
            top(&samples::dual_numbers(Q)),
            to_trivial(&z()),
        ),
        (
            "R = Q[X]/(X^2), Z->0",
            regular(&samples::dual_numbers(Q)),
            to_trivial(&z()),
        ),
        (
            "K over Q[X,Y]/(X^2,Y^2), Z^2->Z",
            top(&samples::exterior_like(Q)),
            sum_map(),
        ),
        (
            "Q[X]/(X^3) / <x^2>, Z->0",
            quotient_by(&t3r, &x2),
            to_trivial(&z()),
        ),
        (
            "F2[Z/2], Z/2->0",
            regular(&samples::cyclic_group_algebra(F2, 2)),
            to_trivial(&FGAbelianGroup::cyclic(2)),
        ),
        (
            "K(0,1) over Q[X]/(X^2) on Z+Z/2, onto Z",
            k_mixed,
            m2.onto_free.clone(),
        ),
        (
            "R over F2[X]/(X^2) on Z+Z/2, onto Z",
            regular(&into_mixed_free(&samples::dual_numbers(F2), &m2)),
            m2.onto_free.clone(),
        ),
    ];
    let mut finite_kernel = 0;
    for (name, m, psi) in &pairs {
        let cmp = ok(coarsen_dimension_compare(m, psi, 6), name)?;
        ensure!(cmp.pd.equal && cmp.fd.equal, "{name}: pd/fd differ");
        ensure!(cmp.betti_equal, "{name}: Betti tables differ");
        if psi.kernel().finite {
            let id = cmp.id.ok_or(format!("{name}: id not compared"))?;
            ensure!(id.equal, "{name}: id differs");
            finite_kernel += 1;
        }
    }
    ensure!(
        finite_kernel >= 2,
        "only {finite_kernel} finite-kernel pairs"
    );
    Ok(format!(
        "{} pairs through cutoff 6, id compared on {finite_kernel}",
        pairs.len()
    ))
}

fn exact_after_dual(u: &ModuleMorphism) -> Result<bool, String> {
    let k = kernel(u);
    let c = gradex::gmod::cokernel(&k);
    let dk = ok(dual_morphism(&k), "dual")?;
    let dc = ok(dual_morphism(&c), "dual")?;
    let comp = ok(dk.compose(&dc), "compose")?;
    Ok(comp.matrix().is_zero()
        && dc.is_mono()
        && dk.is_epi()
        && dc.rank() + dk.rank() == dk.source().dim())
}

fn lambek_duality() -> Check {
    let mut n = 0;
    for (name, m) in finite_modules() {
        let lc = ok(lambek_check(&m), &name)?;
        ensure!(lc.agrees, "{name}: flat != injective(HOM(M, E))");
        ensure!(
            ok(double_dual_iso(&m), &name)?.is_iso(),
            "{name}: M -> M** not iso"
        );
        ensure!(
            ok(cogenerator_separates(&m), &name)?,
            "{name}: HOM(-, E) not faithful"
        );
        ensure!(dual(&dual(&m)) == m, "{name}: dual is not involutive");
        let rad = graded_radical(&m);
        let proj = ok(quotient(&m, &rad), &name)?;
        ensure!(
            exact_after_dual(&proj)?,
            "{name}: dual not exact on M -> M/JM"
        );
        let h = ok(hom_into_cogenerator(&m), &name)?.module;
        let id = ok(dimension(&h, DimensionKind::Injective, 4), &name)?.value;
        let fd = ok(dimension(&m, DimensionKind::Flat, 4), &name)?.value;
        ensure!(
            id.le(fd) != Some(false),
            "{name}: id(HOM(M,E)) = {id} > fd(M) = {fd}"
        );
        n += 1;
    }
    Ok(format!("{n} finite-field modules"))
}

fn radical_identities() -> Check {
    let mut rings = 0;
    let mut ideals = 0;
    for (name, r) in finite_rings() {
        if r.field() != F2 || r.dim() > 4 {
            continue;
        }
        let primes = ok(spec_enumerate(&r), &name)?;
        let nil = GradedIdeal::nilradical(&r);
        ensure!(
            intersect_all(&r, &primes) == nil,
            "{name}: nil != intersection of Spec"
        );
        let oracle_nil = ok(oracles::graded_nilradical(&r), &name)?;
        let main_nil = oracles::canonical_span(ok(oracles::residues(nil.basis(), F2), &name)?, 2);
        ensure!(
            oracle_nil == main_nil,
            "{name}: nilradical disagrees with the oracle"
        );
        for a in ok(graded_ideals(&r), &name)? {
            let ra = a.radical(&r);
            ensure!(ra.radical(&r) == ra, "{name}: radical not idempotent");
            ensure!(ra.class(&r).perfect.is_yes(), "{name}: radical not perfect");
            ideals += 1;
        }
        rings += 1;
    }
    ensure!(rings >= 8, "only {rings} F2 samples");
    Ok(format!("{rings} rings, {ideals} graded ideals"))
}

fn subspace_of(f: Field, ambient: usize, rows: &[Vec<u64>]) -> Subspace {
    Subspace::span(f, ambient, &residues_to_scalars(f, rows))
}

fn oracle_concordance() -> Check {
    let mut answers = 0usize;
    for (name, r) in finite_rings() {
        let class = r.classify_ring();
        let o = ok(oracles::exhaustive_ring_class(&r), &name)?;
        ensure!(
            class.simple.as_bool() == Some(o.simple)
                && class.entire.as_bool() == Some(o.entire)
                && class.reduced.as_bool() == Some(o.reduced),
            "{name}: classification disagrees"
        );
        answers += 3;
    }
    let modules = finite_modules();
    for (name, m) in &modules {
        let f = m.field();
        for sub in ok(oracles::enumerate_graded_submodules(m), name)? {
            let space = subspace_of(f, m.dim(), &sub);
            let inc = ok(submodule(m, &space), name)?;
            for mode in [SmallMode::Superfluous, SmallMode::Essential] {
                let rep = ok(small_submodule(&inc, mode), name)?;
                let o = match mode {
                    SmallMode::Superfluous => {
                        ok(oracles::superfluous_oracle(m, space.basis()), name)?
                    }
                    SmallMode::Essential => ok(oracles::essential_oracle(m, space.basis()), name)?,
                };
                ensure!(
                    rep.holds == o.holds,
                    "{name}: {mode:?} disagrees on a submodule"
                );
                answers += 1;
            }
        }
        let free = ok(freeness(m, DEFAULT_SEED), name)?;
        let basis = ok(oracles::exhaustive_free_basis(m), name)?;
        ensure!(
            free.free.as_bool() == Some(basis.is_some()),
            "{name}: freeness disagrees"
        );
        answers += 1;
    }
    for (i, (a, m)) in modules.iter().enumerate() {
        for (b, n) in modules.iter().skip(i) {
            if m.algebra() != n.algebra() {
                continue;
            }
            let p = m.field().characteristic() as usize;
            if (m.dim() * n.dim()) as f64 * (p as f64).log2() > 20.0 {
                continue;
            }
            let dim = ok(hom_component(m, n, &m.group().zero()), a)?.len();
            let count = ok(oracles::enumerate_morphisms(m, n), b)?.len();
            ensure!(
                count == p.pow(dim as u32),
                "Hom({a}, {b}): {count} morphisms, dimension {dim}"
            );
            answers += 1;
        }
    }
    Ok(format!("{answers} answers over {} modules", modules.len()))
}

struct Criterion {
    name: &'static str,
    bound: Duration,
    run: fn() -> Check,
}

fn main() {
    let criteria = [
        Criterion {
            name: "torsion dichotomy",
            bound: Duration::from_secs(1),
            run: torsion_dichotomy,
        },
        Criterion {
            name: "simplicity rigidity",
            bound: Duration::from_secs(1),
            run: simplicity_rigidity,
        },
        Criterion {
            name: "adjoint triple",
            bound: Duration::from_secs(5),
            run: adjoint_triple,
        },
        Criterion {
            name: "freeness",
            bound: Duration::from_secs(2),
            run: freeness_criterion,
        },
        Criterion {
            name: "superfluous counterexample",
            bound: Duration::from_secs(1),
            run: superfluous_counterexample,
        },
        Criterion {
            name: "schanuel",
            bound: Duration::from_secs(1),
            run: schanuel,
        },
        Criterion {
            name: "dimension invariance",
            bound: Duration::from_secs(5),
            run: dimension_invariance,
        },
        Criterion {
            name: "lambek and duality",
            bound: Duration::from_secs(2),
            run: lambek_duality,
        },
        Criterion {
            name: "radical identities",
            bound: Duration::from_secs(10),
            run: radical_identities,
        },
        Criterion {
            name: "oracle concordance",
            bound: Duration::from_secs(30),
            run: oracle_concordance,
        },
    ];
    let suite = Instant::now();
    let mut failures = 0;
    for (i, c) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let took = start.elapsed();
        let (pass, detail) = match result {
            Ok(d) if took <= c.bound => (true, d),
            Ok(d) => (false, format!("{d}; exceeded {} ms", c.bound.as_millis())),
            Err(e) => (false, e),
        };
        if !pass {
            failures += 1;
        }
        println!(
            "criterion {:>2} {:<28} {} {:>6} ms  {}",
            i + 1,
            c.name,
            if pass { "PASS" } else { "FAIL" },
            took.as_millis(),
            detail
        );
    }
    let total = suite.elapsed();
    let in_time = total <= Duration::from_secs(30);
    if !in_time {
        failures += 1;
    }
    println!(
        "suite total {} ms ({})",
        total.as_millis(),
        if in_time { "within 30 s" } else { "over 30 s" }
    );
    if failures > 0 {
        println!("{failures} acceptance failure(s)");
        std::process::exit(1);
    }
}
