use num_bigint::BigInt;
use num_traits::Zero;

use super::group::{unit_vector, FGAbelianGroup, GroupElement};
use super::snf::{integer_kernel, solve_integer, IntMatrix, LatticeQuotient};
use crate::{Error, Result};

/// Homomorphism between groups in normal form, given by an integer matrix on
/// canonical coordinates (column `j` is the image of generator `j`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupHom {
    source: FGAbelianGroup,
    target: FGAbelianGroup,
    matrix: IntMatrix,
}

/// Kernel of a [`GroupHom`].
#[derive(Clone, Debug)]
pub struct KernelData {
    pub group: FGAbelianGroup,
    pub inclusion: GroupHom,
    pub torsionfree: bool,
    pub finite: bool,
    /// `None` when the kernel is infinite.
    pub order: Option<BigInt>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct HomProps {
    pub epi: bool,
    pub mono: bool,
    pub iso: bool,
}

/// Cokernel `target / im(h)` with its projection.
#[derive(Clone, Debug)]
pub struct CokernelData {
    pub group: FGAbelianGroup,
    pub projection: GroupHom,
}

impl GroupHom {
    pub fn new(source: FGAbelianGroup, target: FGAbelianGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != target.ngens() || matrix.cols() != source.ngens() {
            return Err(Error::InvalidHom(format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.ngens(),
                source.ngens()
            )));
        }
        for (k, d) in source.relation_orders() {
            let img: Vec<BigInt> = matrix.col(k).into_iter().map(|x| x * &d).collect();
            if !target.is_zero(&target.reduce(img)) {
                return Err(Error::InvalidHom(format!(
                    "generator {k} has order {d} but its image does not"
                )));
            }
        }
        let mut matrix = matrix;
        // Keep entries in canonical range so equal homs compare equal.
        for (k, d) in target.relation_orders() {
            for j in 0..matrix.cols() {
                let v = num_integer::Integer::mod_floor(&matrix[(k, j)], &d);
                matrix[(k, j)] = v;
            }
        }
        Ok(GroupHom {
            source,
            target,
            matrix,
        })
    }

    /// The homomorphism sending generator `j` of `source` to `images[j]`.
    pub fn from_images(
        source: FGAbelianGroup,
        target: FGAbelianGroup,
        images: &[GroupElement],
    ) -> Result<Self> {
        if images.len() != source.ngens() {
            return Err(Error::InvalidHom(format!(
                "{} images given for {} generators",
                images.len(),
                source.ngens()
            )));
        }
        let cols: Vec<Vec<BigInt>> = images.iter().map(|e| e.coords().to_vec()).collect();
        let m = IntMatrix::from_columns(target.ngens(), &cols);
        Self::new(source, target, m)
    }

    pub fn identity(g: &FGAbelianGroup) -> Self {
        GroupHom {
            source: g.clone(),
            target: g.clone(),
            matrix: IntMatrix::identity(g.ngens()),
        }
    }

    pub fn zero(source: &FGAbelianGroup, target: &FGAbelianGroup) -> Self {
        GroupHom {
            source: source.clone(),
            target: target.clone(),
            matrix: IntMatrix::zeros(target.ngens(), source.ngens()),
        }
    }

    pub fn source(&self) -> &FGAbelianGroup {
        &self.source
    }

    pub fn target(&self) -> &FGAbelianGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &GroupElement) -> GroupElement {
        self.target.reduce(self.matrix.mul_vec(x.coords()))
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &GroupHom) -> Result<GroupHom> {
        if inner.target != self.source {
            return Err(Error::GroupMismatch(
                "composition of homs with incompatible groups".into(),
            ));
        }
        GroupHom::new(
            inner.source.clone(),
            self.target.clone(),
            self.matrix.mul(&inner.matrix),
        )
    }

    /// Generators of the preimage of the target relation lattice, in `ℤ^ngens(source)`.
    fn preimage_lattice(&self) -> Vec<Vec<BigInt>> {
        let n = self.source.ngens();
        let t = self.target.relation_vectors();
        let neg_t: Vec<Vec<BigInt>> = t.iter().map(|v| v.iter().map(|x| -x).collect()).collect();
        let a = self
            .matrix
            .hstack(&IntMatrix::from_columns(self.target.ngens(), &neg_t));
        let mut gens: Vec<Vec<BigInt>> = integer_kernel(&a)
            .into_iter()
            .map(|v| v[..n].to_vec())
            .filter(|v| v.iter().any(|x| !x.is_zero()))
            .collect();
        if gens.is_empty() {
            gens.push(vec![BigInt::zero(); n]);
        }
        gens
    }

    pub fn kernel(&self) -> KernelData {
        let n = self.source.ngens();
        let lq = LatticeQuotient::new(n, &self.preimage_lattice(), &self.source.relation_vectors());
        let group = FGAbelianGroup::new(lq.free_rank(), lq.torsion_factors())
            .expect("lattice quotient yields normal form");
        let images: Vec<GroupElement> = (0..group.ngens())
            .map(|k| self.source.reduce(lq.generator_lift(k)))
            .collect();
        let inclusion = GroupHom::from_images(group.clone(), self.source.clone(), &images)
            .expect("kernel inclusion is well defined");
        KernelData {
            torsionfree: group.is_torsionfree(),
            finite: group.is_finite(),
            order: group.order(),
            group,
            inclusion,
        }
    }

    pub fn cokernel(&self) -> CokernelData {
        let m = self.target.ngens();
        let basis: Vec<Vec<BigInt>> = (0..m).map(|i| unit_vector(m, i)).collect();
        let mut rels = self.target.relation_vectors();
        rels.extend((0..self.matrix.cols()).map(|j| self.matrix.col(j)));
        let lq = LatticeQuotient::new(m, &basis, &rels);
        let group = FGAbelianGroup::new(lq.free_rank(), lq.torsion_factors())
            .expect("lattice quotient yields normal form");
        let images: Vec<GroupElement> = basis
            .iter()
            .map(|b| GroupElement::from_canonical(lq.to_quotient(b).unwrap()))
            .collect();
        let projection = GroupHom::from_images(self.target.clone(), group.clone(), &images)
            .expect("cokernel projection is well defined");
        CokernelData { group, projection }
    }

    /// Image as an abstract group (isomorphic to source / kernel).
    pub fn image_group(&self) -> FGAbelianGroup {
        let m = self.target.ngens();
        let mut gens: Vec<Vec<BigInt>> = (0..self.matrix.cols())
            .map(|j| self.matrix.col(j))
            .collect();
        let rels = self.target.relation_vectors();
        gens.extend(rels.iter().cloned());
        if gens.is_empty() {
            return FGAbelianGroup::trivial();
        }
        let lq = LatticeQuotient::new(m, &gens, &rels);
        FGAbelianGroup::new(lq.free_rank(), lq.torsion_factors()).unwrap()
    }

    pub fn props(&self) -> HomProps {
        let epi = self.cokernel().group.is_trivial();
        let mono = self.kernel().group.is_trivial();
        HomProps {
            epi,
            mono,
            iso: epi && mono,
        }
    }

    pub fn is_epi(&self) -> bool {
        self.cokernel().group.is_trivial()
    }

    pub fn is_mono(&self) -> bool {
        self.kernel().group.is_trivial()
    }

    /// Some `x` with `self(x) = y`.
    pub fn preimage(&self, y: &GroupElement) -> Option<GroupElement> {
        let t = self.target.relation_vectors();
        let a = self
            .matrix
            .hstack(&IntMatrix::from_columns(self.target.ngens(), &t));
        let sol = solve_integer(&a, y.coords())?;
        Some(self.source.reduce(sol[..self.source.ngens()].to_vec()))
    }

    pub fn in_image(&self, y: &GroupElement) -> bool {
        self.preimage(y).is_some()
    }
}

/// `ψ: G ↠ H`; returns the listed degrees `g` with `ψ(g) = h`, sorted.
pub fn fiber_filter(
    psi: &GroupHom,
    degrees: &[GroupElement],
    h: &GroupElement,
) -> Result<Vec<GroupElement>> {
    if !psi.is_epi() {
        return Err(Error::NotEpimorphism);
    }
    let mut out: Vec<GroupElement> = degrees
        .iter()
        .filter(|g| &psi.apply(g) == h)
        .cloned()
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> FGAbelianGroup {
        FGAbelianGroup::free(1)
    }

    fn hom(src: FGAbelianGroup, tgt: FGAbelianGroup, rows: &[Vec<i64>]) -> GroupHom {
        GroupHom::new(src, tgt, IntMatrix::from_rows(rows)).unwrap()
    }

    #[test]
    fn kernel_examples() {
        let k = hom(z(), FGAbelianGroup::cyclic(2), &[vec![1]]).kernel();
        assert_eq!(k.group, z());
        assert!(k.torsionfree);
        let k = hom(
            FGAbelianGroup::cyclic(4),
            FGAbelianGroup::cyclic(2),
            &[vec![1]],
        )
        .kernel();
        assert_eq!(k.group, FGAbelianGroup::cyclic(2));
        assert!(!k.torsionfree);
        assert_eq!(k.order, Some(BigInt::from(2)));
        let k = hom(FGAbelianGroup::free(2), z(), &[vec![1, 0]]).kernel();
        assert_eq!(k.group, z());
        assert!(k.inclusion.is_mono());
    }

    #[test]
    fn props_examples() {
        let id = GroupHom::identity(&FGAbelianGroup::cyclic(6));
        assert_eq!(
            id.props(),
            HomProps {
                epi: true,
                mono: true,
                iso: true
            }
        );
        let dbl = hom(z(), z(), &[vec![2]]);
        assert_eq!(
            dbl.props(),
            HomProps {
                epi: false,
                mono: true,
                iso: false
            }
        );
        let red = hom(z(), FGAbelianGroup::cyclic(2), &[vec![1]]);
        assert_eq!(
            red.props(),
            HomProps {
                epi: true,
                mono: false,
                iso: false
            }
        );
    }

    #[test]
    fn invalid_hom_rejected() {
        let r = GroupHom::new(
            FGAbelianGroup::cyclic(2),
            z(),
            IntMatrix::from_rows(&[vec![1]]),
        );
        assert!(r.is_err());
    }

    #[test]
    fn fibers() {
        let g = z();
        let degs: Vec<GroupElement> = (0..4).map(|i| g.element(vec![i]).unwrap()).collect();
        let to_zero = GroupHom::zero(&g, &FGAbelianGroup::trivial());
        assert_eq!(
            fiber_filter(&to_zero, &degs[..3], &FGAbelianGroup::trivial().zero()).unwrap(),
            degs[..3].to_vec()
        );
        let c2 = FGAbelianGroup::cyclic(2);
        let red = hom(g.clone(), c2.clone(), &[vec![1]]);
        let one = c2.element(vec![1]).unwrap();
        assert_eq!(
            fiber_filter(&red, &degs, &one).unwrap(),
            vec![degs[1].clone(), degs[3].clone()]
        );
        let dbl = hom(g.clone(), g.clone(), &[vec![2]]);
        assert!(fiber_filter(&dbl, &degs, &g.zero()).is_err());
    }

    #[test]
    fn cokernel_of_doubling() {
        let dbl = hom(z(), z(), &[vec![2]]);
        assert_eq!(dbl.cokernel().group, FGAbelianGroup::cyclic(2));
        assert!(dbl.preimage(&z().element(vec![3]).unwrap()).is_none());
    }
}
