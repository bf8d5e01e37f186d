use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::Rat;

/// Dense row-major matrix over the rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMat {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

impl RatMat {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rat>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count does not match shape");
        RatMat { rows, cols, entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMat { rows, cols, entries: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        RatMat { rows, cols, entries }
    }

    /// Builds from integer rows; all rows must have equal length.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        RatMat::from_fn(rows.len(), cols, |i, j| Rat::from_int(rows[i][j]))
    }

    pub fn column(entries: Vec<Rat>) -> Self {
        let n = entries.len();
        RatMat::new(n, 1, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Rat] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Rat::is_zero)
    }

    pub fn transpose(&self) -> RatMat {
        RatMat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, rhs: &RatMat) -> RatMat {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in product");
        let mut out = RatMat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &RatMat) -> RatMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch in sum");
        RatMat::new(self.rows, self.cols, self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, rhs: &RatMat) -> RatMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch in difference");
        RatMat::new(self.rows, self.cols, self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: &Rat) -> RatMat {
        RatMat::new(self.rows, self.cols, self.entries.iter().map(|a| a * c).collect())
    }

    pub fn block_diag(&self, other: &RatMat) -> RatMat {
        let mut out = RatMat::zeros(self.rows + other.rows, self.cols + other.cols);
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

    pub fn submatrix(&self, rows: core::ops::Range<usize>, cols: core::ops::Range<usize>) -> RatMat {
        let c0 = cols.start;
        let r0 = rows.start;
        RatMat::from_fn(rows.len(), cols.len(), |i, j| self[(r0 + i, c0 + j)].clone())
    }

    pub fn rank(&self) -> usize {
        FractionFreeEchelon::new(self).pivots.len()
    }

    /// Basis of the right kernel `{v : self * v = 0}`, as column vectors.
    pub fn nullspace(&self) -> Vec<RatMat> {
        FractionFreeEchelon::new(self).kernel()
    }

    /// Some `v` with `self * v = rhs` (rhs a column), if one exists.
    pub fn solve(&self, rhs: &RatMat) -> Option<RatMat> {
        assert_eq!(rhs.rows, self.rows, "right-hand side has wrong length");
        assert_eq!(rhs.cols, 1, "right-hand side must be a column");
        let augmented = RatMat::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols { self[(i, j)].clone() } else { -&rhs[(i, 0)] }
        });
        let echelon = FractionFreeEchelon::new(&augmented);
        // Solvable iff the last column is free; its kernel vector then has
        // last entry one.
        if echelon.pivots.iter().any(|&(_, c)| c == self.cols) {
            return None;
        }
        let v = echelon.kernel_vector_for_free(self.cols);
        Some(RatMat::column(v[..self.cols].to_vec()))
    }

    pub fn determinant(&self) -> Rat {
        assert!(self.is_square(), "determinant of non-square matrix");
        let n = self.rows;
        let mut a = self.entries.clone();
        let mut det = Rat::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[r * n + c].is_zero()) else {
                return Rat::zero();
            };
            if p != c {
                for j in 0..n {
                    a.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let piv = a[c * n + c].clone();
            det *= &piv;
            let inv = piv.recip();
            for r in c + 1..n {
                let f = &a[r * n + c] * &inv;
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let t = &f * &a[c * n + j];
                    a[r * n + j] -= &t;
                }
            }
        }
        det
    }

    /// Gauss-Jordan inverse; `None` if singular.
    pub fn inverse(&self) -> Option<RatMat> {
        assert!(self.is_square(), "inverse of non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = RatMat::identity(n);
        for c in 0..n {
            let p = (c..n).find(|&r| !a[(r, c)].is_zero())?;
            a.swap_rows(p, c);
            inv.swap_rows(p, c);
            let s = a[(c, c)].recip();
            a.scale_row(c, &s);
            inv.scale_row(c, &s);
            for r in 0..n {
                if r == c || a[(r, c)].is_zero() {
                    continue;
                }
                let f = a[(r, c)].clone();
                a.add_row_multiple(r, c, &-&f);
                inv.add_row_multiple(r, c, &-&f);
            }
        }
        Some(inv)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn scale_row(&mut self, r: usize, c: &Rat) {
        for j in 0..self.cols {
            self.entries[r * self.cols + j] *= c;
        }
    }

    /// `row[target] += factor * row[source]`
    pub fn add_row_multiple(&mut self, target: usize, source: usize, factor: &Rat) {
        for j in 0..self.cols {
            let t = factor * &self.entries[source * self.cols + j];
            self.entries[target * self.cols + j] += &t;
        }
    }
}

impl Index<(usize, usize)> for RatMat {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        debug_assert!(i < self.rows && j < self.cols);
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for RatMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatMat{}x{}[", self.rows, self.cols)?;
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

/// Integer row-echelon form produced by Bareiss fraction-free elimination.
/// Each row is first cleared of denominators, so the eliminated entries stay
/// integral and every division is exact.
struct FractionFreeEchelon {
    cols: usize,
    rows: Vec<Vec<BigInt>>,
    /// (row, column) of each pivot, in increasing order of both.
    pivots: Vec<(usize, usize)>,
}

impl FractionFreeEchelon {
    fn new(m: &RatMat) -> Self {
        let mut rows: Vec<Vec<BigInt>> = (0..m.rows).map(|i| integral_row(m.row(i))).collect();
        let mut pivots = Vec::new();
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..m.cols {
            if r == rows.len() {
                break;
            }
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let (head, tail) = rows.split_at_mut(r + 1);
            let pivot_row = &head[r];
            let piv = &pivot_row[c];
            for row in tail.iter_mut() {
                let lead = core::mem::take(&mut row[c]);
                for j in c + 1..m.cols {
                    let v = piv * &row[j] - &lead * &pivot_row[j];
                    debug_assert!(v.is_multiple_of(&prev));
                    row[j] = v / &prev;
                }
            }
            // Rows above the pivot are not rescaled, so only the rows below
            // carry the common Bareiss divisor.
            prev = rows[r][c].clone();
            pivots.push((r, c));
            r += 1;
        }
        FractionFreeEchelon { cols: m.cols, rows, pivots }
    }

    fn kernel(&self) -> Vec<RatMat> {
        let pivot_cols: Vec<usize> = self.pivots.iter().map(|&(_, c)| c).collect();
        (0..self.cols)
            .filter(|c| !pivot_cols.contains(c))
            .map(|f| RatMat::column(self.kernel_vector_for_free(f)))
            .collect()
    }

    /// Kernel vector with the given free column set to one and every other
    /// free column zero.
    fn kernel_vector_for_free(&self, free: usize) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); self.cols];
        v[free] = Rat::one();
        for &(r, c) in self.pivots.iter().rev() {
            let row = &self.rows[r];
            let mut acc = Rat::zero();
            for j in c + 1..self.cols {
                if !row[j].is_zero() && !v[j].is_zero() {
                    acc += &(&Rat::from_bigint(row[j].clone()) * &v[j]);
                }
            }
            v[c] = -(acc / Rat::from_bigint(row[c].clone()));
        }
        v
    }
}

fn integral_row(row: &[Rat]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, a| acc.lcm(a.denom()));
    row.iter().map(|a| a.numer() * (&lcm / a.denom())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nullspace_examples() {
        assert!(RatMat::identity(2).nullspace().is_empty());
        assert_eq!(RatMat::from_ints(&[&[0, 0]]).nullspace().len(), 2);
        let ns = RatMat::from_ints(&[&[1, 1]]).nullspace();
        assert_eq!(ns.len(), 1);
        let v = &ns[0];
        assert_eq!(v[(0, 0)], -&v[(1, 0)]);
        assert!(!v[(0, 0)].is_zero());
    }

    #[test]
    fn nullspace_with_fractions() {
        let m = RatMat::new(
            2,
            3,
            vec![Rat::new(1, 2), Rat::new(1, 3), Rat::one(), Rat::new(2, 5), Rat::zero(), Rat::new(-1, 7)],
        );
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(m.mul(&ns[0]).is_zero());
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn solve_and_inverse() {
        let m = RatMat::from_ints(&[&[2, 1], &[1, 3]]);
        let b = RatMat::column(vec![Rat::from_int(3), Rat::from_int(4)]);
        let x = m.solve(&b).unwrap();
        assert_eq!(m.mul(&x), b);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), RatMat::identity(2));
        assert_eq!(m.determinant(), Rat::from_int(5));
        let singular = RatMat::from_ints(&[&[1, 2], &[2, 4]]);
        assert!(singular.inverse().is_none());
        assert!(singular.solve(&b).is_none());
        assert_eq!(singular.determinant(), Rat::zero());
    }
}
