use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Index, IndexMut, Range};

use super::{smith_normal_form, Poly, Rat, RatMat};

/// Dense row-major matrix of polynomials.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyMat {
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl PolyMat {
    pub fn new(rows: usize, cols: usize, entries: Vec<Poly>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count does not match shape");
        PolyMat { rows, cols, entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMat { rows, cols, entries: vec![Poly::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = PolyMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Poly::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Poly) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        PolyMat { rows, cols, entries }
    }

    /// Rows of polynomials given as ascending integer coefficient slices.
    pub fn from_int_polys(rows: &[&[&[i64]]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        PolyMat::from_fn(rows.len(), cols, |i, j| Poly::from_ints(rows[i][j]))
    }

    pub fn from_ratmat(m: &RatMat) -> Self {
        PolyMat::from_fn(m.rows(), m.cols(), |i, j| Poly::constant(m[(i, j)].clone()))
    }

    /// Scalar entries; `None` if any entry has positive degree.
    pub fn to_ratmat(&self) -> Option<RatMat> {
        let entries = self.entries.iter().map(Poly::as_constant).collect::<Option<Vec<_>>>()?;
        Some(RatMat::new(self.rows, self.cols, entries))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        *self == PolyMat::identity(self.rows) && self.is_square()
    }

    pub fn is_constant(&self) -> bool {
        self.entries.iter().all(Poly::is_constant)
    }

    /// Largest entry degree; `None` for the zero matrix.
    pub fn max_degree(&self) -> Option<usize> {
        self.entries.iter().filter_map(Poly::degree).max()
    }

    /// The matrix of coefficients of `x^k`.
    pub fn coeff_matrix(&self, k: usize) -> RatMat {
        RatMat::new(self.rows, self.cols, self.entries.iter().map(|p| p.coeff(k)).collect())
    }

    pub fn derivative(&self) -> PolyMat {
        PolyMat::new(self.rows, self.cols, self.entries.iter().map(Poly::derivative).collect())
    }

    pub fn eval(&self, at: &Rat) -> RatMat {
        RatMat::new(self.rows, self.cols, self.entries.iter().map(|p| p.eval(at)).collect())
    }

    pub fn transpose(&self) -> PolyMat {
        PolyMat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, c: &Rat) -> PolyMat {
        PolyMat::new(self.rows, self.cols, self.entries.iter().map(|p| p.scale(c)).collect())
    }

    pub fn mul(&self, rhs: &PolyMat) -> PolyMat {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in product");
        let mut out = PolyMat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        let t = a * b;
                        out[(i, j)] = &out[(i, j)] + &t;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &PolyMat) -> PolyMat {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch in sum");
        PolyMat::new(self.rows, self.cols, self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, rhs: &PolyMat) -> PolyMat {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch in difference");
        PolyMat::new(self.rows, self.cols, self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> PolyMat {
        PolyMat::new(self.rows, self.cols, self.entries.iter().map(|a| -a).collect())
    }

    pub fn block_diag(&self, other: &PolyMat) -> PolyMat {
        let mut out = PolyMat::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out[(self.rows + i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        out
    }

    pub fn hstack(&self, other: &PolyMat) -> PolyMat {
        assert_eq!(self.rows, other.rows, "row counts differ");
        PolyMat::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols { self[(i, j)].clone() } else { other[(i, j - self.cols)].clone() }
        })
    }

    pub fn vstack(&self, other: &PolyMat) -> PolyMat {
        assert_eq!(self.cols, other.cols, "column counts differ");
        PolyMat::from_fn(self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows { self[(i, j)].clone() } else { other[(i - self.rows, j)].clone() }
        })
    }

    pub fn submatrix(&self, rows: Range<usize>, cols: Range<usize>) -> PolyMat {
        let (r0, c0) = (rows.start, cols.start);
        PolyMat::from_fn(rows.len(), cols.len(), |i, j| self[(r0 + i, c0 + j)].clone())
    }

    /// Determinant by Bareiss elimination over `Q[x]`; every division is exact.
    pub fn determinant(&self) -> Poly {
        assert!(self.is_square(), "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Poly::one();
        }
        let mut a = self.entries.clone();
        let mut prev = Poly::one();
        let mut negate = false;
        for c in 0..n - 1 {
            let Some(p) = (c..n).find(|&r| !a[r * n + c].is_zero()) else {
                return Poly::zero();
            };
            if p != c {
                for j in 0..n {
                    a.swap(p * n + j, c * n + j);
                }
                negate = !negate;
            }
            for r in c + 1..n {
                for j in c + 1..n {
                    let num = &(&a[c * n + c] * &a[r * n + j]) - &(&a[r * n + c] * &a[c * n + j]);
                    let (q, rem) = num.div_rem(&prev);
                    debug_assert!(rem.is_zero(), "inexact Bareiss division");
                    a[r * n + j] = q;
                }
                a[r * n + c] = Poly::zero();
            }
            prev = a[c * n + c].clone();
        }
        let d = a[n * n - 1].clone();
        if negate { -d } else { d }
    }

    /// True when the determinant is a nonzero constant, i.e. the matrix is
    /// invertible over `Q[x]`.
    pub fn is_unimodular(&self) -> bool {
        self.is_square() && {
            let d = self.determinant();
            !d.is_zero() && d.is_constant()
        }
    }

    /// Inverse over `Q[x]`, from the Smith form `U M V = D`: `M^-1 = V D^-1 U`.
    pub fn inverse(&self) -> Option<PolyMat> {
        if !self.is_square() {
            return None;
        }
        let snf = smith_normal_form(self);
        let n = self.rows;
        let mut dinv = PolyMat::zeros(n, n);
        for i in 0..n {
            let c = snf.d[(i, i)].as_constant().filter(|c| !c.is_zero())?;
            dinv[(i, i)] = Poly::constant(c.recip());
        }
        let inv = snf.v.mul(&dinv).mul(&snf.u);
        debug_assert!(self.mul(&inv).is_identity());
        Some(inv)
    }
}

impl PolyMat {
    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[target] += factor * row[source]`
    pub fn add_row_multiple(&mut self, target: usize, source: usize, factor: &Poly) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let t = factor * &self.entries[source * self.cols + j];
            let e = &mut self.entries[target * self.cols + j];
            *e = &*e + &t;
        }
    }

    /// `col[target] += factor * col[source]`
    pub fn add_col_multiple(&mut self, target: usize, source: usize, factor: &Poly) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let t = factor * &self.entries[i * self.cols + source];
            let e = &mut self.entries[i * self.cols + target];
            *e = &*e + &t;
        }
    }

    pub fn scale_row(&mut self, r: usize, c: &Rat) {
        for j in 0..self.cols {
            let e = &mut self.entries[r * self.cols + j];
            *e = e.scale(c);
        }
    }

    pub fn scale_col(&mut self, col: usize, c: &Rat) {
        for i in 0..self.rows {
            let e = &mut self.entries[i * self.cols + col];
            *e = e.scale(c);
        }
    }
}

impl Index<(usize, usize)> for PolyMat {
    type Output = Poly;
    fn index(&self, (i, j): (usize, usize)) -> &Poly {
        debug_assert!(i < self.rows && j < self.cols);
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for PolyMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Poly {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for PolyMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyMat{}x{}[", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_and_inverse() {
        // [[1, -x], [0, 1]]
        let t = PolyMat::from_int_polys(&[&[&[1], &[0, -1]], &[&[], &[1]]]);
        assert!(t.determinant().is_one());
        let inv = t.inverse().unwrap();
        assert_eq!(inv, PolyMat::from_int_polys(&[&[&[1], &[0, 1]], &[&[], &[1]]]));
        let m = PolyMat::from_int_polys(&[&[&[0, 1], &[1]], &[&[1], &[0, 1]]]);
        // x^2 - 1
        assert_eq!(m.determinant(), Poly::from_ints(&[-1, 0, 1]));
        assert!(m.inverse().is_none());
        assert!(PolyMat::zeros(0, 0).determinant().is_one());
    }

    #[test]
    fn three_by_three_determinant_matches_expansion() {
        let m = PolyMat::from_int_polys(&[
            &[&[0, 1], &[2], &[1, 1]],
            &[&[3], &[0, 0, 1], &[]],
            &[&[1], &[1, 2], &[0, 1]],
        ]);
        let e = |i: usize, j: usize| m[(i, j)].clone();
        let expansion = &(&(&e(0, 0) * &(&(&e(1, 1) * &e(2, 2)) - &(&e(1, 2) * &e(2, 1))))
            - &(&e(0, 1) * &(&(&e(1, 0) * &e(2, 2)) - &(&e(1, 2) * &e(2, 0)))))
            + &(&e(0, 2) * &(&(&e(1, 0) * &e(2, 1)) - &(&e(1, 1) * &e(2, 0))));
        assert_eq!(m.determinant(), expansion);
    }
}
