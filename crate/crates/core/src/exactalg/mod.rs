//! Exact arithmetic: rationals, dense univariate polynomials over them, and
//! matrices of both, with nullspaces and Smith forms.

mod poly;
mod polymat;
mod rat;
mod ratmat;
mod smith;

use alloc::vec::Vec;
use core::fmt;

pub use poly::Poly;
pub use polymat::PolyMat;
pub use rat::{ParseRatError, Rat};
pub use ratmat::RatMat;
pub(crate) use smith::smith_with_left_inverse;
pub use smith::{smith_diagonal, smith_normal_form, SmithForm};

/// Basis of `{v : M v = 0}` as column vectors.
pub fn rat_nullspace(m: &RatMat) -> Vec<RatMat> {
    m.nullspace()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KernelError {
    /// The entries of the row generate a proper ideal.
    NotUnimodular,
    NotARow,
}

impl fmt::Display for KernelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KernelError::NotUnimodular => write!(f, "row vector is not unimodular"),
            KernelError::NotARow => write!(f, "expected a 1 x n matrix"),
        }
    }
}

/// Free basis (as columns) of the kernel of a unimodular row `w`, together
/// with the full Smith data it was read from. With `w V = (1, 0, ..., 0)`
/// the kernel is spanned by columns `1..n` of `V`.
pub fn kernel_basis_with_transform(w: &PolyMat) -> Result<(PolyMat, SmithForm), KernelError> {
    if w.rows() != 1 {
        return Err(KernelError::NotARow);
    }
    let n = w.cols();
    if n == 0 {
        return Err(KernelError::NotUnimodular);
    }
    let snf = smith_normal_form(w);
    if !snf.d[(0, 0)].is_one() {
        return Err(KernelError::NotUnimodular);
    }
    let kernel = snf.v.submatrix(0..n, 1..n);
    debug_assert!(w.mul(&kernel).is_zero());
    Ok((kernel, snf))
}

pub fn kernel_basis(w: &PolyMat) -> Result<PolyMat, KernelError> {
    kernel_basis_with_transform(w).map(|(k, _)| k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_examples() {
        let k = kernel_basis(&PolyMat::from_int_polys(&[&[&[1], &[]]])).unwrap();
        assert_eq!(k, PolyMat::from_int_polys(&[&[&[]], &[&[1]]]));
        let k = kernel_basis(&PolyMat::from_int_polys(&[&[&[1], &[0, 1]]])).unwrap();
        assert_eq!(k, PolyMat::from_int_polys(&[&[&[0, -1]], &[&[1]]]));
        assert_eq!(
            kernel_basis(&PolyMat::from_int_polys(&[&[&[0, 1]]])),
            Err(KernelError::NotUnimodular)
        );
        assert_eq!(kernel_basis(&PolyMat::zeros(1, 2)), Err(KernelError::NotUnimodular));
        assert_eq!(kernel_basis(&PolyMat::identity(2)), Err(KernelError::NotARow));
    }

    #[test]
    fn kernel_of_unit_scalar_is_empty() {
        let k = kernel_basis(&PolyMat::from_int_polys(&[&[&[3]]])).unwrap();
        assert_eq!(k.shape(), (1, 0));
    }
}
