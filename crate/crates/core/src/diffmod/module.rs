use core::fmt;

use crate::diffring::DiffRing;
use crate::exactalg::{Poly, PolyMat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DiffModError {
    ShapeMismatch { expected: (usize, usize), found: (usize, usize) },
    RingMismatch { left: DiffRing, right: DiffRing },
    NotSquare { rows: usize, cols: usize },
    /// An entry does not belong to the ring, e.g. a polynomial of positive
    /// degree over the zero-derivation ring.
    EntryOutsideRing { row: usize, col: usize },
}

impl fmt::Display for DiffModError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiffModError::ShapeMismatch { expected, found } => write!(
                f,
                "shape mismatch: expected {}x{}, found {}x{}",
                expected.0, expected.1, found.0, found.1
            ),
            DiffModError::RingMismatch { left, right } => write!(f, "ring mismatch: {left} vs {right}"),
            DiffModError::NotSquare { rows, cols } => write!(f, "structure matrix is {rows}x{cols}, not square"),
            DiffModError::EntryOutsideRing { row, col } => {
                write!(f, "entry ({row}, {col}) is not an element of the ring")
            }
        }
    }
}

/// The free module `R^n` with derivation `v -> v' + A v`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DiffModule {
    ring: DiffRing,
    matrix: PolyMat,
}

impl DiffModule {
    pub fn new(ring: DiffRing, matrix: PolyMat) -> Result<Self, DiffModError> {
        if !matrix.is_square() {
            return Err(DiffModError::NotSquare { rows: matrix.rows(), cols: matrix.cols() });
        }
        check_entries(ring, &matrix)?;
        Ok(DiffModule { ring, matrix })
    }

    /// `(R^n, 0)`
    pub fn trivial(ring: DiffRing, n: usize) -> Self {
        DiffModule { ring, matrix: PolyMat::zeros(n, n) }
    }

    /// `(R, f)`
    pub fn rank_one(ring: DiffRing, f: Poly) -> Result<Self, DiffModError> {
        DiffModule::new(ring, PolyMat::new(1, 1, alloc::vec![f]))
    }

    pub fn ring(&self) -> DiffRing {
        self.ring
    }

    pub fn rank(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &PolyMat {
        &self.matrix
    }

    pub fn is_zero_rank(&self) -> bool {
        self.rank() == 0
    }

    pub fn same_ring(&self, other: &DiffModule) -> Result<(), DiffModError> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(DiffModError::RingMismatch { left: self.ring, right: other.ring })
        }
    }

    /// `D_A(v) = v' + A v` for a column `v`.
    pub fn apply_d(&self, v: &PolyMat) -> Result<PolyMat, DiffModError> {
        if v.shape() != (self.rank(), 1) {
            return Err(DiffModError::ShapeMismatch { expected: (self.rank(), 1), found: v.shape() });
        }
        Ok(ring_derivative(self.ring, v).add(&self.matrix.mul(v)))
    }

    pub fn direct_sum(&self, other: &DiffModule) -> Result<DiffModule, DiffModError> {
        self.same_ring(other)?;
        Ok(DiffModule { ring: self.ring, matrix: self.matrix.block_diag(&other.matrix) })
    }
}

impl fmt::Debug for DiffModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiffModule({}, {:?})", self.ring, self.matrix)
    }
}

pub(crate) fn check_entries(ring: DiffRing, m: &PolyMat) -> Result<(), DiffModError> {
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if !ring.contains(&m[(i, j)]) {
                return Err(DiffModError::EntryOutsideRing { row: i, col: j });
            }
        }
    }
    Ok(())
}

pub(crate) fn ring_derivative(ring: DiffRing, m: &PolyMat) -> PolyMat {
    match ring {
        DiffRing::PolyDx => m.derivative(),
        DiffRing::ConstZero => PolyMat::zeros(m.rows(), m.cols()),
    }
}

/// Whether `t` is a differential homomorphism `source -> target`, i.e.
/// `t' = t A_source - A_target t` holds exactly.
pub fn verify_hom(t: &PolyMat, source: &DiffModule, target: &DiffModule) -> Result<bool, DiffModError> {
    source.same_ring(target)?;
    let expected = (target.rank(), source.rank());
    if t.shape() != expected {
        return Err(DiffModError::ShapeMismatch { expected, found: t.shape() });
    }
    if check_entries(source.ring, t).is_err() {
        return Ok(false);
    }
    let rhs = t.mul(&source.matrix).sub(&target.matrix.mul(t));
    Ok(ring_derivative(source.ring, t) == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pm(rows: &[&[&[i64]]]) -> PolyMat {
        PolyMat::from_int_polys(rows)
    }

    #[test]
    fn apply_d_examples() {
        let r = DiffRing::PolyDx;
        let m = DiffModule::trivial(r, 1);
        assert_eq!(m.apply_d(&pm(&[&[&[0, 1]]])).unwrap(), pm(&[&[&[1]]]));
        let m = DiffModule::rank_one(r, Poly::one()).unwrap();
        assert_eq!(m.apply_d(&pm(&[&[&[1]]])).unwrap(), pm(&[&[&[1]]]));
        let jordan = DiffModule::new(r, pm(&[&[&[], &[1]], &[&[], &[]]])).unwrap();
        assert!(jordan.apply_d(&pm(&[&[&[1]], &[&[]]])).unwrap().is_zero());
        assert!(matches!(jordan.apply_d(&pm(&[&[&[1]]])), Err(DiffModError::ShapeMismatch { .. })));
    }

    #[test]
    fn direct_sum_examples() {
        let r = DiffRing::PolyDx;
        let a = DiffModule::trivial(r, 1);
        let b = DiffModule::rank_one(r, Poly::one()).unwrap();
        assert_eq!(a.direct_sum(&b).unwrap().matrix(), &pm(&[&[&[], &[]], &[&[], &[1]]]));
        assert_eq!(b.direct_sum(&DiffModule::trivial(r, 0)).unwrap(), b);
        let x = DiffModule::rank_one(r, Poly::x()).unwrap();
        assert_eq!(x.direct_sum(&x).unwrap().matrix(), &pm(&[&[&[0, 1], &[]], &[&[], &[0, 1]]]));
        let z = DiffModule::trivial(DiffRing::ConstZero, 1);
        assert!(matches!(a.direct_sum(&z), Err(DiffModError::RingMismatch { .. })));
    }

    #[test]
    fn verify_hom_examples() {
        let r = DiffRing::PolyDx;
        let x = DiffModule::rank_one(r, Poly::x()).unwrap();
        assert!(verify_hom(&PolyMat::identity(1), &x, &x).unwrap());
        assert!(!verify_hom(&PolyMat::identity(1), &x, &DiffModule::trivial(r, 1)).unwrap());
        let jordan = DiffModule::new(r, pm(&[&[&[], &[1]], &[&[], &[]]])).unwrap();
        let t = pm(&[&[&[1], &[0, -1]], &[&[], &[1]]]);
        // The constants basis maps the trivial module onto the Jordan module.
        assert!(verify_hom(&t, &DiffModule::trivial(r, 2), &jordan).unwrap());
        let t_inv = pm(&[&[&[1], &[0, 1]], &[&[], &[1]]]);
        assert!(verify_hom(&t_inv, &jordan, &DiffModule::trivial(r, 2)).unwrap());
        assert!(matches!(
            verify_hom(&PolyMat::identity(1), &jordan, &jordan),
            Err(DiffModError::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn const_zero_rejects_polynomial_entries() {
        let bad = DiffModule::rank_one(DiffRing::ConstZero, Poly::x());
        assert_eq!(bad, Err(DiffModError::EntryOutsideRing { row: 0, col: 0 }));
        assert!(matches!(
            DiffModule::new(DiffRing::PolyDx, PolyMat::zeros(1, 2)),
            Err(DiffModError::NotSquare { .. })
        ));
    }
}
