use super::cert::IsoCertificate;
use super::hom::{constants_space, STABILIZATION_STEP};
use super::module::DiffModule;
use crate::exactalg::PolyMat;

#[derive(Clone, Debug)]
pub enum TrivialityResult {
    /// `basis` has a constants basis as its columns; it is the backward map
    /// of `certificate`, which goes from the module to `(R^n, 0)`.
    Trivial { basis: PolyMat, certificate: IsoCertificate },
    NotTrivial {
        constants_dim: usize,
        rank: usize,
        deg_cap: usize,
        /// The count did not change when the cap was widened.
        stable: bool,
        /// The constants count is exact, not only below the cap.
        proven: bool,
    },
}

impl TrivialityResult {
    pub fn is_trivial(&self) -> bool {
        matches!(self, TrivialityResult::Trivial { .. })
    }
}

/// Decides whether `m` is isomorphic to `(R^n, 0)`, which happens exactly
/// when its constants contain a basis. Over the supported rings this also
/// decides stable triviality.
pub fn is_trivial(m: &DiffModule, deg_cap: usize) -> TrivialityResult {
    let n = m.rank();
    let mut space = constants_space(m, deg_cap);
    let mut stable = space.complete;
    if space.dim() < n && !space.complete {
        let wider = constants_space(m, space.deg_cap + STABILIZATION_STEP);
        stable = wider.dim() == space.dim();
        space = wider;
    }
    if space.dim() < n {
        return TrivialityResult::NotTrivial {
            constants_dim: space.dim(),
            rank: n,
            deg_cap: space.deg_cap,
            stable,
            proven: space.complete,
        };
    }
    let mut basis = PolyMat::zeros(n, 0);
    for v in &space.basis {
        basis = basis.hstack(v);
    }
    // Constants that are independent over Q stay independent at every point,
    // so the determinant is a nonzero constant; the inverse exists.
    let inverse = basis.inverse().expect("constants basis has unit determinant");
    let certificate = IsoCertificate::new(m.clone(), DiffModule::trivial(m.ring(), n), inverse, basis.clone())
        .expect("constants basis yields an isomorphism");
    TrivialityResult::Trivial { basis, certificate }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffring::DiffRing;
    use crate::exactalg::{Poly, Rat};

    #[test]
    fn nilpotent_jordan_is_trivial() {
        let r = DiffRing::PolyDx;
        let jordan = DiffModule::new(r, PolyMat::from_int_polys(&[&[&[], &[1]], &[&[], &[]]])).unwrap();
        match is_trivial(&jordan, 32) {
            TrivialityResult::Trivial { basis, certificate } => {
                assert_eq!(basis, PolyMat::from_int_polys(&[&[&[1], &[0, -1]], &[&[], &[1]]]));
                assert_eq!(basis.determinant(), Poly::one());
                certificate.verify().unwrap();
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn shifted_module_is_not_trivial() {
        let m = DiffModule::rank_one(DiffRing::PolyDx, Poly::one()).unwrap();
        match is_trivial(&m, 32) {
            TrivialityResult::NotTrivial { constants_dim, proven, .. } => {
                assert_eq!(constants_dim, 0);
                assert!(proven);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn trivial_module_gets_identity() {
        match is_trivial(&DiffModule::trivial(DiffRing::PolyDx, 3), 32) {
            TrivialityResult::Trivial { basis, .. } => assert!(basis.is_identity()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn zero_derivation_trivial_iff_zero_matrix() {
        // Over (Q, 0) a module is trivial iff its matrix is zero.
        let r = DiffRing::ConstZero;
        let m = DiffModule::new(r, PolyMat::from_ratmat(&crate::exactalg::RatMat::from_ints(&[&[0, 1], &[0, 0]]))).unwrap();
        assert!(!is_trivial(&m, 4).is_trivial());
        let z = DiffModule::rank_one(r, Poly::constant(Rat::zero())).unwrap();
        assert!(is_trivial(&z, 0).is_trivial());
    }
}
