//! Smith normal form over ℤ and the lattice computations built on it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged integer matrix");
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = v.clone().into();
            }
        }
        m
    }

    /// Matrix with the given vectors as columns, each of length `rows`.
    pub fn from_columns(rows: usize, cols: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "integer matrix product shape");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "integer matrix-vector shape");
        (0..self.rows)
            .map(|i| {
                let mut acc = BigInt::zero();
                for (j, x) in v.iter().enumerate() {
                    let a = &self[(i, j)];
                    if !a.is_zero() && !x.is_zero() {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// Horizontal concatenation.
    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows);
        let mut out = IntMatrix::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                out[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * a[(n - 1, n - 1)].clone()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += q * row[src]
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self[(src, j)] * q;
            self[(dst, j)] += v;
        }
    }

    /// col[dst] += q * col[src]
    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self[(i, src)] * q;
            self[(i, dst)] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// Result of [`smith_normal_form`]: `u * a * v == d`, with `u_inv`, `v_inv`
/// the exact inverses of the unimodular transforms.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    pub rank: usize,
}

impl Snf {
    /// Nonzero diagonal entries d_1 | d_2 | ... | d_rank, all positive.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d[(i, i)].clone()).collect()
    }
}

/// Smith normal form of an arbitrary integer matrix.
pub fn smith_normal_form(a: &IntMatrix) -> Snf {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut u_inv = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let mut v_inv = IntMatrix::identity(n);

    // Each elementary operation is mirrored on the transforms and their inverses.
    macro_rules! row_swap {
        ($a:expr, $b:expr) => {{
            d.swap_rows($a, $b);
            u.swap_rows($a, $b);
            u_inv.swap_cols($a, $b);
        }};
    }
    macro_rules! col_swap {
        ($a:expr, $b:expr) => {{
            d.swap_cols($a, $b);
            v.swap_cols($a, $b);
            v_inv.swap_rows($a, $b);
        }};
    }
    macro_rules! row_add {
        ($dst:expr, $src:expr, $q:expr) => {{
            let q: BigInt = $q;
            d.add_row($dst, $src, &q);
            u.add_row($dst, $src, &q);
            u_inv.add_col($src, $dst, &(-q));
        }};
    }
    macro_rules! col_add {
        ($dst:expr, $src:expr, $q:expr) => {{
            let q: BigInt = $q;
            d.add_col($dst, $src, &q);
            v.add_col($dst, $src, &q);
            v_inv.add_row($src, $dst, &(-q));
        }};
    }

    let mut rank = 0;
    for t in 0..m.min(n) {
        // Pivot: smallest nonzero absolute value in the trailing block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !d[(i, j)].is_zero()
                    && best.map_or(true, |(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        row_swap!(t, pi);
        col_swap!(t, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = d[(i, t)].div_floor(&d[(t, t)]);
                row_add!(i, t, -q);
                if !d[(i, t)].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = d[(t, j)].div_floor(&d[(t, t)]);
                col_add!(j, t, -q);
                if !d[(t, j)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // Move the smallest remaining entry of row/column t to the pivot.
                let mut best = (t, t);
                for i in t + 1..m {
                    if !d[(i, t)].is_zero() && d[(i, t)].abs() < d[best].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..n {
                    if !d[(t, j)].is_zero() && d[(t, j)].abs() < d[best].abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    row_swap!(t, best.0);
                } else if best.1 != t {
                    col_swap!(t, best.1);
                }
                continue;
            }
            // Row and column are clear; enforce divisibility of the trailing block.
            let mut offender = None;
            'outer: for i in t + 1..m {
                for j in t + 1..n {
                    if !d[(i, j)].is_multiple_of(&d[(t, t)]) {
                        offender = Some(i);
                        break 'outer;
                    }
                }
            }
            match offender {
                Some(i) => row_add!(t, i, BigInt::one()),
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }
        rank = t + 1;
    }
    Snf {
        u,
        u_inv,
        d,
        v,
        v_inv,
        rank,
    }
}

/// Some integer solution of `a * x = b`, if one exists.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.rows(), b.len());
    let snf = smith_normal_form(a);
    let ub = snf.u.mul_vec(b);
    let mut y = vec![BigInt::zero(); a.cols()];
    for (i, val) in ub.iter().enumerate() {
        if i < snf.rank {
            let (q, r) = val.div_rem(&snf.d[(i, i)]);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !val.is_zero() {
            return None;
        }
    }
    Some(snf.v.mul_vec(&y))
}

/// A basis of the integer kernel `{x : a * x = 0}`, as vectors.
pub fn integer_kernel(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(a);
    (snf.rank..a.cols()).map(|j| snf.v.col(j)).collect()
}

/// The quotient `L / R` of a lattice `L ⊆ ℤ^n` (spanned by `gens`) by a
/// sublattice `R ⊆ L` (spanned by `rels`), brought into invariant-factor
/// form together with the coordinate maps in both directions.
#[derive(Clone, Debug)]
pub struct LatticeQuotient {
    ambient: usize,
    /// Basis of L, one vector of length `ambient` per basis element.
    basis: Vec<Vec<BigInt>>,
    /// Coordinate extraction for L: coords(v)_i = (basis_u * v)_i / basis_d_i.
    basis_u: IntMatrix,
    basis_d: Vec<BigInt>,
    /// Second SNF on relation coordinates: y = quot_u * c.
    quot_u: IntMatrix,
    quot_u_inv: IntMatrix,
    /// Indices into y that carry torsion (with their orders), then free ones.
    torsion: Vec<(usize, BigInt)>,
    free: Vec<usize>,
}

impl LatticeQuotient {
    pub fn new(ambient: usize, gens: &[Vec<BigInt>], rels: &[Vec<BigInt>]) -> Self {
        let g = IntMatrix::from_columns(ambient, gens);
        let snf = smith_normal_form(&g);
        let r = snf.rank;
        let basis_d: Vec<BigInt> = snf.invariant_factors();
        let basis: Vec<Vec<BigInt>> = (0..r)
            .map(|i| {
                snf.u_inv
                    .col(i)
                    .into_iter()
                    .map(|x| x * &basis_d[i])
                    .collect()
            })
            .collect();
        let mut lq = LatticeQuotient {
            ambient,
            basis,
            basis_u: snf.u,
            basis_d,
            quot_u: IntMatrix::identity(r),
            quot_u_inv: IntMatrix::identity(r),
            torsion: Vec::new(),
            free: Vec::new(),
        };
        let rel_coords: Vec<Vec<BigInt>> = rels
            .iter()
            .map(|rel| {
                lq.lattice_coords(rel)
                    .expect("relation lattice must lie inside the generated lattice")
            })
            .collect();
        let c = IntMatrix::from_columns(r, &rel_coords);
        let snf2 = smith_normal_form(&c);
        for i in 0..r {
            if i < snf2.rank {
                let d = snf2.d[(i, i)].clone();
                if !d.is_one() {
                    lq.torsion.push((i, d));
                }
            } else {
                lq.free.push(i);
            }
        }
        lq.quot_u = snf2.u;
        lq.quot_u_inv = snf2.u_inv;
        lq
    }

    /// Coordinates of `v` with respect to the lattice basis, if `v ∈ L`.
    pub fn lattice_coords(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(v.len(), self.ambient);
        let uv = self.basis_u.mul_vec(v);
        let mut out = Vec::with_capacity(self.basis.len());
        for (i, val) in uv.iter().enumerate() {
            if i < self.basis.len() {
                let (q, r) = val.div_rem(&self.basis_d[i]);
                if !r.is_zero() {
                    return None;
                }
                out.push(q);
            } else if !val.is_zero() {
                return None;
            }
        }
        Some(out)
    }

    pub fn free_rank(&self) -> usize {
        self.free.len()
    }

    pub fn torsion_factors(&self) -> Vec<BigInt> {
        self.torsion.iter().map(|(_, d)| d.clone()).collect()
    }

    /// Normal-form coordinates (free first, then torsion reduced) of `v ∈ L`.
    pub fn to_quotient(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let c = self.lattice_coords(v)?;
        let y = self.quot_u.mul_vec(&c);
        let mut out: Vec<BigInt> = self.free.iter().map(|&i| y[i].clone()).collect();
        out.extend(self.torsion.iter().map(|(i, d)| y[*i].mod_floor(d)));
        Some(out)
    }

    /// A representative in ℤ^n of the normal-form generator `k`
    /// (free generators first, then torsion generators).
    pub fn generator_lift(&self, k: usize) -> Vec<BigInt> {
        let idx = if k < self.free.len() {
            self.free[k]
        } else {
            self.torsion[k - self.free.len()].0
        };
        let w = self.quot_u_inv.col(idx);
        let mut out = vec![BigInt::zero(); self.ambient];
        for (coef, b) in w.iter().zip(&self.basis) {
            if coef.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(b) {
                *o += coef * x;
            }
        }
        out
    }

    /// Representative in ℤ^n of a normal-form element.
    pub fn lift(&self, coords: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.ambient];
        for (k, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(self.generator_lift(k)) {
                *o += c * x;
            }
        }
        out
    }
}
