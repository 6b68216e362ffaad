//! Sample corpus shared by the integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use gradex::abgroups::{FGAbelianGroup, GroupElement, GroupHom};
use gradex::exactla::{Field, Subspace};
use gradex::gcore::GradedAlgebra;
use gradex::gfunct::extend;
use gradex::gmod::{
    direct_sum, graded_radical, graded_socle, quotient, regular_module, submodule, GradedModule,
};
use gradex::samples;

pub const F2: Field = Field::Prime(2);
pub const F3: Field = Field::Prime(3);
pub const Q: Field = Field::Rational;

pub fn z() -> FGAbelianGroup {
    FGAbelianGroup::free(1)
}

/// `G → 0`.
pub fn to_trivial(g: &FGAbelianGroup) -> GroupHom {
    GroupHom::zero(g, &FGAbelianGroup::trivial())
}

/// `ℤ² → ℤ`, `(a, b) ↦ a + b`.
pub fn sum_map() -> GroupHom {
    let z = z();
    GroupHom::from_images(FGAbelianGroup::free(2), z.clone(), &[z.gen(0), z.gen(0)]).unwrap()
}

/// `ℤ ⊕ ℤ/n` with the inclusion of the torsion summand and the projections.
pub struct Mixed {
    pub group: FGAbelianGroup,
    pub torsion_in: GroupHom,
    pub free_in: GroupHom,
    pub onto_torsion: GroupHom,
    pub onto_free: GroupHom,
}

pub fn mixed(n: u64) -> Mixed {
    let c = FGAbelianGroup::cyclic(n);
    let (group, left, right) = z().direct_sum(&c);
    let torsion_in = GroupHom::from_images(c.clone(), group.clone(), &right).unwrap();
    let free_in = GroupHom::from_images(z(), group.clone(), &left).unwrap();
    let gens: Vec<GroupElement> = (0..group.ngens()).map(|i| group.gen(i)).collect();
    let onto_torsion = GroupHom::from_images(
        group.clone(),
        c.clone(),
        &gens
            .iter()
            .map(|g| project(&group, g, &right, &c))
            .collect::<Vec<_>>(),
    )
    .unwrap();
    let onto_free = GroupHom::from_images(
        group.clone(),
        z(),
        &gens
            .iter()
            .map(|g| project(&group, g, &left, &z()))
            .collect::<Vec<_>>(),
    )
    .unwrap();
    Mixed {
        group,
        torsion_in,
        free_in,
        onto_torsion,
        onto_free,
    }
}

/// Coordinate of `g` along the summand spanned by `images` (one generator).
fn project(
    group: &FGAbelianGroup,
    g: &GroupElement,
    images: &[GroupElement],
    target: &FGAbelianGroup,
) -> GroupElement {
    let k = images[0]
        .coords()
        .iter()
        .position(|c| c != &0.into())
        .expect("summand generator");
    let _ = group;
    target.element(vec![g.coords()[k].clone()]).unwrap()
}

/// The ring regraded into `ℤ ⊕ ℤ/n` through the torsion inclusion.
pub fn into_mixed_torsion(r: &GradedAlgebra, m: &Mixed) -> GradedAlgebra {
    extend(r, &m.torsion_in).unwrap()
}

pub fn into_mixed_free(r: &GradedAlgebra, m: &Mixed) -> GradedAlgebra {
    extend(r, &m.free_in).unwrap()
}

pub fn regular(r: &GradedAlgebra) -> GradedModule {
    regular_module(&Arc::new(r.clone()))
}

/// `R / J·R`.
pub fn top(r: &GradedAlgebra) -> GradedModule {
    let rr = regular(r);
    quotient(&rr, &graded_radical(&rr))
        .unwrap()
        .target()
        .clone()
}

/// The graded socle of `R` as a module.
pub fn socle(r: &GradedAlgebra) -> GradedModule {
    let rr = regular(r);
    submodule(&rr, &graded_socle(&rr)).unwrap().source().clone()
}

pub fn quotient_by(m: &GradedModule, space: &Subspace) -> GradedModule {
    quotient(m, space).unwrap().target().clone()
}

/// The 𝔽₂ × 𝔽₂ module with `M_0 = 𝔽₂ × 0`, `M_1 = 0 × 𝔽₂`.
pub fn split_module() -> GradedModule {
    let r = Arc::new(samples::split_product(F2));
    let z = z();
    let f = F2;
    let (o, l) = (f.one(), f.zero());
    let action = vec![
        vec![vec![o.clone(), l.clone()], vec![l.clone(), l.clone()]],
        vec![vec![l.clone(), l.clone()], vec![l, o]],
    ];
    GradedModule::new(r, vec![z.zero(), z.gen(0)], action).unwrap()
}

/// Small rings over prime fields, each at most 4-dimensional.
pub fn finite_rings() -> Vec<(String, GradedAlgebra)> {
    let mut out = Vec::new();
    for n in 1..=4 {
        out.push((
            format!("F2[X]/(X^{n})"),
            samples::truncated_polynomial(F2, n),
        ));
    }
    out.push(("F2[Z/2]".into(), samples::cyclic_group_algebra(F2, 2)));
    out.push(("F2[Z/4]".into(), samples::cyclic_group_algebra(F2, 4)));
    out.push(("F2[X,Y]/(X^2,Y^2)".into(), samples::exterior_like(F2)));
    out.push(("F2xF2".into(), samples::split_product(F2)));
    out.push((
        "F2 over Z^2".into(),
        samples::trivial_field(F2, FGAbelianGroup::free(2)),
    ));
    out.push((
        "F2[X]/(X^2) with deg X = 1 in Z/2".into(),
        samples::monogenic(
            F2,
            FGAbelianGroup::cyclic(2),
            &FGAbelianGroup::cyclic(2).gen(0),
            2,
            &F2.zero(),
        ),
    ));
    out.push(("F3[X]/(X^2)".into(), samples::dual_numbers(F3)));
    out.push(("F3[Z/3]".into(), samples::cyclic_group_algebra(F3, 3)));
    out.push(("F9 over Z/2".into(), samples::pure_extension(F3, 2, -1)));
    out.push(("F3xF3".into(), samples::split_product(F3)));
    out
}

/// Modules over the finite rings: regular, top, socle and small sums.
pub fn finite_modules() -> Vec<(String, GradedModule)> {
    let mut out = Vec::new();
    for (name, r) in finite_rings() {
        let rr = regular(&r);
        let t = top(&r);
        out.push((format!("{name}: R"), rr.clone()));
        out.push((format!("{name}: R/JR"), t.clone()));
        out.push((format!("{name}: soc R"), socle(&r)));
        if r.dim() <= 2 {
            let s = direct_sum(&[&rr, &t]).unwrap().module;
            out.push((format!("{name}: R + R/JR"), s));
        }
    }
    out.push(("F2xF2 split module".into(), split_module()));
    out
}
