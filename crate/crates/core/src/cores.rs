//! Splitting off trivial summands `(R, 0)`, cores, and free cancellation.
//!
//! A homomorphism `w: P -> (R, 0)` and a constant `v: (R, 0) -> P` compose to
//! a constant `w v`. When it is nonzero, rescaling makes it one and
//! `P = ker w + R v` splits `(R, 0)` off `P`. A module is trivial-free
//! exactly when every such pairing vanishes.

use alloc::vec::Vec;
use core::fmt;

use rand::Rng;

use crate::diffmod::{
    constants, hom_space, iso_search, seeded_rng, verify_hom, CertificateError, DiffModError, DiffModule,
    IsoCertificate, IsoVerdict,
};
use crate::exactalg::{kernel_basis_with_transform, PolyMat, RatMat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoreError {
    /// A pairing came out non-constant; this means the solver is broken.
    NonConstantPairing,
    PairingNotUnit,
    NotAHom,
    NotAConstant,
    CertificateInvalid(CertificateError),
    Module(DiffModError),
}

impl fmt::Display for CoreError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoreError::NonConstantPairing => f.write_str("pairing of a hom and a constant is not constant"),
            CoreError::PairingNotUnit => f.write_str("w * v is not 1"),
            CoreError::NotAHom => f.write_str("w is not a differential homomorphism to (R, 0)"),
            CoreError::NotAConstant => f.write_str("v is not a constant of the module"),
            CoreError::CertificateInvalid(e) => write!(f, "invalid certificate: {e}"),
            CoreError::Module(e) => write!(f, "{e}"),
        }
    }
}

impl From<DiffModError> for CoreError {
    fn from(e: DiffModError) -> Self {
        CoreError::Module(e)
    }
}

/// The constants pairing of a module together with the bases it came from.
#[derive(Clone, Debug)]
pub struct Pairing {
    /// `matrix[(j, k)] = homs[j] * constants[k]`
    pub matrix: RatMat,
    /// Basis of `hom(P, (R, 0))`, as rows.
    pub homs: Vec<PolyMat>,
    /// Basis of the constants of `P`, as columns.
    pub constants: Vec<PolyMat>,
}

impl Pairing {
    pub fn nonzero_entries(&self) -> Vec<(usize, usize)> {
        let (r, c) = (self.matrix.rows(), self.matrix.cols());
        (0..r).flat_map(|j| (0..c).map(move |k| (j, k))).filter(|&(j, k)| !self.matrix[(j, k)].is_zero()).collect()
    }
}

pub fn pairing(p: &DiffModule, deg_cap: usize) -> Result<Pairing, CoreError> {
    let homs = hom_space(p, &DiffModule::trivial(p.ring(), 1), deg_cap)?.basis;
    let consts = constants(p, deg_cap);
    let mut matrix = RatMat::zeros(homs.len(), consts.len());
    for (j, w) in homs.iter().enumerate() {
        for (k, v) in consts.iter().enumerate() {
            matrix[(j, k)] = w.mul(v)[(0, 0)].as_constant().ok_or(CoreError::NonConstantPairing)?;
        }
    }
    Ok(Pairing { matrix, homs, constants: consts })
}

pub fn trivial_pairing(p: &DiffModule, deg_cap: usize) -> Result<RatMat, CoreError> {
    pairing(p, deg_cap).map(|x| x.matrix)
}

pub fn is_trivial_free(p: &DiffModule, deg_cap: usize) -> bool {
    trivial_pairing(p, deg_cap).expect("pairings of homs with constants are constant").is_zero()
}

/// Splits the summand spanned by the constant `v` off `p`, using the
/// complement `ker w`.
///
/// Returns the complement `P'` and the basis change `C = [ker w | v]`, which is
/// a differential isomorphism `P' + (R, 0) -> P`.
pub fn split_trivial_summand(p: &DiffModule, w: &PolyMat, v: &PolyMat) -> Result<(DiffModule, PolyMat), CoreError> {
    split_with_inverse(p, w, v).map(|(m, c, _)| (m, c))
}

fn split_with_inverse(p: &DiffModule, w: &PolyMat, v: &PolyMat) -> Result<(DiffModule, PolyMat, PolyMat), CoreError> {
    let n = p.rank();
    let trivial = DiffModule::trivial(p.ring(), 1);
    if !verify_hom(w, p, &trivial)? {
        return Err(CoreError::NotAHom);
    }
    if !p.apply_d(v)?.is_zero() {
        return Err(CoreError::NotAConstant);
    }
    if !w.mul(v).is_identity() {
        return Err(CoreError::PairingNotUnit);
    }
    let (kernel, snf) = kernel_basis_with_transform(w).map_err(|_| CoreError::PairingNotUnit)?;
    let change = kernel.hstack(v);
    // u = K y + v (w u) with y read off through V^-1 after removing v (w u).
    let projector = PolyMat::identity(n).sub(&v.mul(w));
    let change_inv = snf.v_inv.submatrix(1..n, 0..n).mul(&projector).vstack(w);
    assert!(change_inv.mul(&change).is_identity(), "split basis change is not inverted");
    let conjugated = change_inv.mul(&p.matrix().mul(&change).add(&derivative(p, &change)));
    let (complement, rest) = (conjugated.submatrix(0..n - 1, 0..n - 1), conjugated.submatrix(0..n, n - 1..n));
    assert!(
        rest.is_zero() && conjugated.submatrix(n - 1..n, 0..n).is_zero(),
        "kernel of w is not a differential submodule"
    );
    let complement = DiffModule::new(p.ring(), complement)?;
    Ok((complement, change, change_inv))
}

fn derivative(p: &DiffModule, m: &PolyMat) -> PolyMat {
    match p.ring() {
        crate::diffring::DiffRing::PolyDx => m.derivative(),
        crate::diffring::DiffRing::ConstZero => PolyMat::zeros(m.rows(), m.cols()),
    }
}

/// `input` is isomorphic to `core + (R^multiplicity, 0)` via `certificate`.
#[derive(Clone, Debug)]
pub struct CoreDecomposition {
    pub input: DiffModule,
    pub core: DiffModule,
    pub multiplicity: usize,
    pub certificate: IsoCertificate,
}

/// Which nonzero pairing entry to split on at each step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PivotRule {
    /// First nonzero entry in row-major order.
    FirstNonzero,
    /// Uniformly random nonzero entry, seeded.
    Seeded(u64),
}

pub fn core(p: &DiffModule, deg_cap: usize) -> CoreDecomposition {
    core_with_pivot(p, deg_cap, PivotRule::FirstNonzero)
}

pub fn core_with_pivot(p: &DiffModule, deg_cap: usize, rule: PivotRule) -> CoreDecomposition {
    let n = p.rank();
    let mut rng = match rule {
        PivotRule::Seeded(s) => Some(seeded_rng(s)),
        PivotRule::FirstNonzero => None,
    };
    let mut current = p.clone();
    let mut backward = PolyMat::identity(n);
    let mut forward = PolyMat::identity(n);
    let mut split = 0;
    loop {
        let pr = pairing(&current, deg_cap).expect("pairings of homs with constants are constant");
        let nonzero = pr.nonzero_entries();
        let Some(&first) = nonzero.first() else { break };
        let (j, k) = match rng.as_mut() {
            Some(r) => nonzero[r.gen_range(0..nonzero.len())],
            None => first,
        };
        let w = pr.homs[j].scale(&pr.matrix[(j, k)].recip());
        let (next, change, change_inv) =
            split_with_inverse(&current, &w, &pr.constants[k]).expect("rescaled pairing splits");
        let id = PolyMat::identity(split);
        backward = backward.mul(&change.block_diag(&id));
        forward = change_inv.block_diag(&id).mul(&forward);
        split += 1;
        current = next;
    }
    let target = current.direct_sum(&DiffModule::trivial(p.ring(), split)).expect("same ring");
    let certificate =
        IsoCertificate::new(p.clone(), target, forward, backward).expect("accumulated splits form an isomorphism");
    CoreDecomposition { input: p.clone(), core: current, multiplicity: split, certificate }
}

#[derive(Clone, Debug)]
pub enum CancelOutcome {
    Iso(IsoCertificate),
    Unknown,
}

/// Given a certified `P + (R^n, 0) = Q + (R^n, 0)`, produces a certificate for
/// `P = Q` by matching cores: `P -> H(P) + (R^s, 0) -> H(Q) + (R^s, 0) -> Q`.
#[allow(clippy::too_many_arguments)]
pub fn cancel_free(
    p: &DiffModule,
    q: &DiffModule,
    n: usize,
    cert: &IsoCertificate,
    trials: usize,
    seed: u64,
    deg_cap: usize,
) -> Result<CancelOutcome, CoreError> {
    let padded_p = p.direct_sum(&DiffModule::trivial(p.ring(), n))?;
    let padded_q = q.direct_sum(&DiffModule::trivial(q.ring(), n))?;
    if cert.source() != &padded_p || cert.target() != &padded_q {
        return Err(CoreError::CertificateInvalid(CertificateError::Module(DiffModError::ShapeMismatch {
            expected: (padded_q.rank(), padded_p.rank()),
            found: cert.forward().shape(),
        })));
    }
    cert.verify().map_err(CoreError::CertificateInvalid)?;
    let hp = core(p, deg_cap);
    let hq = core(q, deg_cap);
    if hp.multiplicity != hq.multiplicity {
        return Ok(CancelOutcome::Unknown);
    }
    let middle = match iso_search(&hp.core, &hq.core, trials, seed, deg_cap)? {
        IsoVerdict::Iso(c) => c,
        _ => return Ok(CancelOutcome::Unknown),
    };
    let padding = IsoCertificate::identity(&DiffModule::trivial(p.ring(), hp.multiplicity));
    let chain = hp
        .certificate
        .then(&middle.direct_sum(&padding).map_err(CoreError::CertificateInvalid)?)
        .and_then(|c| c.then(&hq.certificate.inverse()))
        .map_err(CoreError::CertificateInvalid)?;
    Ok(CancelOutcome::Iso(chain))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffring::DiffRing;
    use crate::exactalg::Rat;

    fn pm(rows: &[&[&[i64]]]) -> PolyMat {
        PolyMat::from_int_polys(rows)
    }

    fn poly_dx(rows: &[&[&[i64]]]) -> DiffModule {
        DiffModule::new(DiffRing::PolyDx, pm(rows)).unwrap()
    }

    #[test]
    fn pairing_examples() {
        let shifted = poly_dx(&[&[&[1]]]);
        assert_eq!(trivial_pairing(&shifted, 32).unwrap().rows(), 0);
        assert_eq!(trivial_pairing(&shifted, 32).unwrap().cols(), 0);
        let one = trivial_pairing(&DiffModule::trivial(DiffRing::PolyDx, 1), 32).unwrap();
        assert_eq!(one, RatMat::from_ints(&[&[1]]));
        let mixed = poly_dx(&[&[&[], &[]], &[&[], &[1]]]);
        assert_eq!(trivial_pairing(&mixed, 32).unwrap(), RatMat::from_ints(&[&[1]]));
    }

    #[test]
    fn trivial_free_examples() {
        assert!(is_trivial_free(&poly_dx(&[&[&[1]]]), 32));
        assert!(!is_trivial_free(&DiffModule::trivial(DiffRing::PolyDx, 1), 32));
        assert!(is_trivial_free(&poly_dx(&[&[&[0, 1]]]), 32));
    }

    #[test]
    fn split_examples() {
        let mixed = poly_dx(&[&[&[], &[]], &[&[], &[1]]]);
        let (rest, change) = split_trivial_summand(&mixed, &pm(&[&[&[1], &[]]]), &pm(&[&[&[1]], &[&[]]])).unwrap();
        assert_eq!(rest, poly_dx(&[&[&[1]]]));
        assert_eq!(change, pm(&[&[&[], &[1]], &[&[1], &[]]]));

        let one = DiffModule::trivial(DiffRing::PolyDx, 1);
        let (rest, _) = split_trivial_summand(&one, &pm(&[&[&[1]]]), &pm(&[&[&[1]]])).unwrap();
        assert_eq!(rest.rank(), 0);

        let two = DiffModule::trivial(DiffRing::PolyDx, 2);
        let (rest, _) = split_trivial_summand(&two, &pm(&[&[&[1], &[]]]), &pm(&[&[&[1]], &[&[]]])).unwrap();
        assert_eq!(rest, DiffModule::trivial(DiffRing::PolyDx, 1));
    }

    #[test]
    fn split_errors() {
        let mixed = poly_dx(&[&[&[], &[]], &[&[], &[1]]]);
        let v = pm(&[&[&[1]], &[&[]]]);
        assert_eq!(split_trivial_summand(&mixed, &pm(&[&[&[], &[1]]]), &v).unwrap_err(), CoreError::NotAHom);
        assert_eq!(
            split_trivial_summand(&mixed, &pm(&[&[&[1], &[]]]), &pm(&[&[&[]], &[&[1]]])).unwrap_err(),
            CoreError::NotAConstant
        );
        assert_eq!(
            split_trivial_summand(&mixed, &pm(&[&[&[2], &[]]]), &v).unwrap_err(),
            CoreError::PairingNotUnit
        );
    }

    #[test]
    fn core_examples() {
        let d = core(&DiffModule::trivial(DiffRing::PolyDx, 3), 32);
        assert_eq!((d.core.rank(), d.multiplicity), (0, 3));
        let d = core(&poly_dx(&[&[&[], &[]], &[&[], &[1]]]), 32);
        assert_eq!(d.core, poly_dx(&[&[&[1]]]));
        assert_eq!(d.multiplicity, 1);
        d.certificate.verify().unwrap();
        let x = poly_dx(&[&[&[0, 1]]]);
        let d = core(&x, 32);
        assert_eq!((d.core.clone(), d.multiplicity), (x, 0));
        let d = core(&DiffModule::trivial(DiffRing::PolyDx, 0), 32);
        assert_eq!((d.core.rank(), d.multiplicity), (0, 0));
    }

    #[test]
    fn core_of_zero_derivation_module() {
        let m = DiffModule::new(
            DiffRing::ConstZero,
            PolyMat::from_ratmat(&RatMat::from_ints(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 2]])),
        )
        .unwrap();
        // Kernel of A is 1-dimensional but the nilpotent block pairs to zero:
        // only a semisimple zero eigenvalue splits off.
        let d = core(&m, 0);
        assert_eq!(d.multiplicity, 0);
        let m = DiffModule::new(DiffRing::ConstZero, PolyMat::from_ratmat(&RatMat::from_ints(&[&[0, 0], &[0, 3]])))
            .unwrap();
        let d = core(&m, 0);
        assert_eq!(d.multiplicity, 1);
        assert_eq!(d.core.matrix(), &PolyMat::identity(1).scale(&Rat::from_int(3)));
    }

    #[test]
    fn cancel_identity() {
        let p = poly_dx(&[&[&[1]]]);
        let padded = p.direct_sum(&DiffModule::trivial(DiffRing::PolyDx, 1)).unwrap();
        match cancel_free(&p, &p, 1, &IsoCertificate::identity(&padded), 4, 0, 32).unwrap() {
            CancelOutcome::Iso(c) => assert!(c.forward().is_identity()),
            CancelOutcome::Unknown => panic!("unknown"),
        }
    }

    #[test]
    fn cancel_jordan_against_trivial() {
        let jordan = poly_dx(&[&[&[], &[1]], &[&[], &[]]]);
        let trivial2 = DiffModule::trivial(DiffRing::PolyDx, 2);
        let t = pm(&[&[&[1], &[0, 1]], &[&[], &[1]]]);
        let t_inv = t.inverse().unwrap();
        let base = IsoCertificate::new(jordan.clone(), trivial2.clone(), t, t_inv).unwrap();
        let padded = base.direct_sum(&IsoCertificate::identity(&DiffModule::trivial(DiffRing::PolyDx, 1))).unwrap();
        match cancel_free(&jordan, &trivial2, 1, &padded, 4, 0, 32).unwrap() {
            CancelOutcome::Iso(c) => c.verify().unwrap(),
            CancelOutcome::Unknown => panic!("unknown"),
        }
        let bad = IsoCertificate::identity(&trivial2.direct_sum(&DiffModule::trivial(DiffRing::PolyDx, 1)).unwrap());
        assert!(matches!(
            cancel_free(&jordan, &trivial2, 1, &bad, 4, 0, 32),
            Err(CoreError::CertificateInvalid(_))
        ));
    }
}
