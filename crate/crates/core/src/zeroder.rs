//! Differential modules over `(Q, 0)`: a structure is just a matrix, and a
//! differential isomorphism is a similarity `T A T^-1 = B`. Similarity is
//! decided exactly through the rational canonical (Frobenius) form.

use alloc::vec::Vec;
use core::fmt;

use crate::exactalg::{smith_diagonal, smith_with_left_inverse, Poly, PolyMat, Rat, RatMat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZeroDerError {
    NotSquare,
    ShapeMismatch,
    /// `f` does not commute with the structures it is claimed to map between.
    NotIntertwining,
    NotInvertible,
    /// The induced map on the quotient by constants is not invertible.
    BlockNotInvertible,
}

impl fmt::Display for ZeroDerError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ZeroDerError::NotSquare => "matrix is not square",
            ZeroDerError::ShapeMismatch => "matrix shapes do not match",
            ZeroDerError::NotIntertwining => "map does not intertwine the structures",
            ZeroDerError::NotInvertible => "map is not invertible",
            ZeroDerError::BlockNotInvertible => "induced quotient map is not invertible",
        })
    }
}

/// `transform * A * inverse = B` for the pair `(A, B)` it certifies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimilarityCertificate {
    pub transform: RatMat,
    pub inverse: RatMat,
}

impl SimilarityCertificate {
    pub fn verifies(&self, a: &RatMat, b: &RatMat) -> bool {
        let n = a.rows();
        self.transform.rows() == n
            && self.transform.is_square()
            && self.inverse.rows() == n
            && self.inverse.is_square()
            && a.is_square()
            && b.rows() == n
            && b.is_square()
            && self.transform.mul(&self.inverse) == RatMat::identity(n)
            && self.transform.mul(a).mul(&self.inverse) == *b
    }
}

/// Companion matrix of a monic polynomial: ones below the diagonal and the
/// negated low coefficients in the last column.
pub fn companion(p: &Poly) -> RatMat {
    let k = p.degree().unwrap_or(0);
    let mut c = RatMat::zeros(k, k);
    for i in 1..k {
        c[(i, i - 1)] = Rat::one();
    }
    for i in 0..k {
        c[(i, k - 1)] = -p.coeff(i);
    }
    c
}

fn char_matrix(a: &RatMat) -> PolyMat {
    let n = a.rows();
    PolyMat::from_fn(n, n, |i, j| {
        let c = Poly::constant(-&a[(i, j)]);
        if i == j { &c + &Poly::x() } else { c }
    })
}

/// Monic invariant factors of `A` of positive degree, each dividing the next.
pub fn invariant_factors(a: &RatMat) -> Result<Vec<Poly>, ZeroDerError> {
    if !a.is_square() {
        return Err(ZeroDerError::NotSquare);
    }
    let d = smith_diagonal(&char_matrix(a));
    Ok((0..d.rows()).map(|i| d[(i, i)].clone()).filter(|p| !p.is_constant()).collect())
}

/// Frobenius normal form with a certificate conjugating `a` onto it.
///
/// The Smith form `U (xI - A) V = D` identifies `Q^n` (with `x` acting as `A`)
/// with `sum Q[x]/(d_i)`; the generator of each summand is column `i` of
/// `U^-1` evaluated at `A`, and its cyclic basis gives the companion block.
pub fn rcf(a: &RatMat) -> Result<(RatMat, SimilarityCertificate), ZeroDerError> {
    if !a.is_square() {
        return Err(ZeroDerError::NotSquare);
    }
    let n = a.rows();
    let (d, u_inv) = smith_with_left_inverse(&char_matrix(a));
    let mut basis: Vec<RatMat> = Vec::with_capacity(n);
    let mut form = RatMat::zeros(0, 0);
    for i in 0..n {
        let d = &d[(i, i)];
        let Some(deg) = d.degree().filter(|&k| k > 0) else { continue };
        let generator = evaluate_column(&u_inv, i, a);
        let mut v = generator;
        for _ in 0..deg {
            let next = a.mul(&v);
            basis.push(v);
            v = next;
        }
        form = form.block_diag(&companion(d));
    }
    let p = RatMat::from_fn(n, n, |i, j| basis[j][(i, 0)].clone());
    let p_inv = p.inverse().expect("cyclic bases span the space");
    let cert = SimilarityCertificate { transform: p_inv, inverse: p };
    assert!(cert.verifies(a, &form), "Frobenius form certificate failed");
    Ok((form, cert))
}

/// `sum_k A^k f_k` where `f = sum_k f_k x^k` is column `col` of `m`.
fn evaluate_column(m: &PolyMat, col: usize, a: &RatMat) -> RatMat {
    let n = a.rows();
    let top = (0..n).filter_map(|i| m[(i, col)].degree()).max();
    let mut acc = RatMat::zeros(n, 1);
    let Some(top) = top else { return acc };
    // Horner: ((f_top) A + f_{top-1}) ...
    for k in (0..=top).rev() {
        let fk = RatMat::column((0..n).map(|i| m[(i, col)].coeff(k)).collect());
        acc = a.mul(&acc).add(&fk);
    }
    acc
}

#[derive(Clone, Debug)]
pub enum SimilarityVerdict {
    Similar(SimilarityCertificate),
    NotSimilar { source_factors: Vec<Poly>, target_factors: Vec<Poly> },
}

impl SimilarityVerdict {
    pub fn is_similar(&self) -> bool {
        matches!(self, SimilarityVerdict::Similar(_))
    }
}

/// Complete similarity decision; a positive answer carries `T` with
/// `T A T^-1 = B`.
pub fn similar(a: &RatMat, b: &RatMat) -> Result<SimilarityVerdict, ZeroDerError> {
    if !a.is_square() || !b.is_square() {
        return Err(ZeroDerError::NotSquare);
    }
    if a.rows() != b.rows() {
        return Err(ZeroDerError::ShapeMismatch);
    }
    let source_factors = invariant_factors(a)?;
    let target_factors = invariant_factors(b)?;
    if source_factors != target_factors {
        return Ok(SimilarityVerdict::NotSimilar { source_factors, target_factors });
    }
    let (fa, ca) = rcf(a)?;
    let (fb, cb) = rcf(b)?;
    assert_eq!(fa, fb, "equal invariant factors give equal forms");
    // P_A^-1 A P_A = F = P_B^-1 B P_B, so (P_B P_A^-1) A (P_A P_B^-1) = B.
    let cert = SimilarityCertificate {
        transform: cb.inverse.mul(&ca.transform),
        inverse: ca.inverse.mul(&cb.transform),
    };
    assert!(cert.verifies(a, b), "composed similarity certificate failed");
    Ok(SimilarityVerdict::Similar(cert))
}

/// `diag(I_k, 0_m)`
fn split_identity(k: usize, m: usize) -> RatMat {
    RatMat::identity(k).block_diag(&RatMat::zeros(m, m))
}

/// Cancellation of `(Q^m, 0)` from a differential isomorphism
/// `f: (Q^(a+m), diag(I_a, 0)) -> (Q^(b+m), diag(I_b, 0))`.
///
/// The constants of the source are `0 + Q^m`, `f` maps them onto the
/// constants of the target, and the induced map on the quotients is the
/// upper-left `b x a` block of `f`.
pub fn cancel_zero_derivation(a: usize, b: usize, m: usize, f: &RatMat) -> Result<SimilarityCertificate, ZeroDerError> {
    if f.rows() != b + m || f.cols() != a + m {
        return Err(ZeroDerError::ShapeMismatch);
    }
    let src = split_identity(a, m);
    let tgt = split_identity(b, m);
    if f.mul(&src) != tgt.mul(f) {
        return Err(ZeroDerError::NotIntertwining);
    }
    if !f.is_square() || f.determinant().is_zero() {
        return Err(ZeroDerError::NotInvertible);
    }
    let block = f.submatrix(0..b, 0..a);
    if !block.is_square() {
        return Err(ZeroDerError::BlockNotInvertible);
    }
    let inverse = block.inverse().ok_or(ZeroDerError::BlockNotInvertible)?;
    let cert = SimilarityCertificate { transform: block, inverse };
    debug_assert!(cert.verifies(&RatMat::identity(a), &RatMat::identity(b)));
    Ok(cert)
}

/// Whether similarity of `A + 0_m` and `B + 0_m` agrees with similarity of
/// `A` and `B`.
pub fn padded_cancellation_check(a: &RatMat, b: &RatMat, m: usize) -> Result<bool, ZeroDerError> {
    if !a.is_square() || !b.is_square() {
        return Err(ZeroDerError::NotSquare);
    }
    if a.rows() != b.rows() {
        return Err(ZeroDerError::ShapeMismatch);
    }
    let zero = RatMat::zeros(m, m);
    let padded = invariant_factors(&a.block_diag(&zero))? == invariant_factors(&b.block_diag(&zero))?;
    Ok(padded == (invariant_factors(a)? == invariant_factors(b)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rcf_examples() {
        let (f, _) = rcf(&RatMat::zeros(2, 2)).unwrap();
        assert_eq!(f, RatMat::zeros(2, 2));
        let (f, c) = rcf(&RatMat::from_ints(&[&[0, 1], &[0, 0]])).unwrap();
        assert_eq!(f, companion(&Poly::from_ints(&[0, 0, 1])));
        assert!(c.verifies(&RatMat::from_ints(&[&[0, 1], &[0, 0]]), &f));
        let (f, _) = rcf(&RatMat::from_ints(&[&[1, 0], &[0, 2]])).unwrap();
        // (x - 1)(x - 2) = x^2 - 3x + 2
        assert_eq!(f, RatMat::from_ints(&[&[0, -2], &[1, 3]]));
    }

    #[test]
    fn similarity_examples() {
        let a = RatMat::from_ints(&[&[1, 0], &[0, 2]]);
        let b = RatMat::from_ints(&[&[1, 1], &[0, 2]]);
        match similar(&a, &b).unwrap() {
            SimilarityVerdict::Similar(c) => assert!(c.verifies(&a, &b)),
            v => panic!("{v:?}"),
        }
        assert!(similar(&a, &a).unwrap().is_similar());
        assert!(!similar(&RatMat::from_ints(&[&[0, 1], &[0, 0]]), &RatMat::zeros(2, 2)).unwrap().is_similar());
        assert_eq!(similar(&a, &RatMat::zeros(3, 3)).unwrap_err(), ZeroDerError::ShapeMismatch);
    }

    #[test]
    fn cancellation_examples() {
        let c = cancel_zero_derivation(1, 1, 1, &RatMat::from_ints(&[&[3, 0], &[0, 5]])).unwrap();
        assert_eq!(c.transform, RatMat::from_ints(&[&[3]]));
        let f = RatMat::from_ints(&[&[1, 2], &[3, 4]]);
        assert_eq!(cancel_zero_derivation(2, 2, 0, &f).unwrap().transform, f);
        assert_eq!(
            cancel_zero_derivation(1, 1, 1, &RatMat::from_ints(&[&[1, 1], &[0, 1]])).unwrap_err(),
            ZeroDerError::NotIntertwining
        );
        assert_eq!(
            cancel_zero_derivation(1, 1, 1, &RatMat::from_ints(&[&[1, 0], &[0, 0]])).unwrap_err(),
            ZeroDerError::NotInvertible
        );
        assert_eq!(
            cancel_zero_derivation(1, 1, 1, &RatMat::from_ints(&[&[1, 0]])).unwrap_err(),
            ZeroDerError::ShapeMismatch
        );
    }

    #[test]
    fn padded_examples() {
        let a = RatMat::from_ints(&[&[0, 1], &[0, 0]]);
        assert!(padded_cancellation_check(&a, &a, 2).unwrap());
        assert!(padded_cancellation_check(&a, &RatMat::zeros(2, 2), 3).unwrap());
    }

    #[test]
    fn invariant_factor_chain() {
        let a = RatMat::from_ints(&[&[2, 0, 0], &[0, 2, 0], &[0, 0, 3]]);
        let f = invariant_factors(&a).unwrap();
        assert_eq!(f, alloc::vec![Poly::from_ints(&[-2, 1]), Poly::from_ints(&[6, -5, 1])]);
        let (form, _) = rcf(&a).unwrap();
        assert_eq!(rcf(&form).unwrap().0, form);
    }
}
