use core::fmt;

use super::module::{verify_hom, DiffModError, DiffModule};
use crate::exactalg::PolyMat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertificateError {
    Module(DiffModError),
    ForwardNotAHom,
    BackwardNotAHom,
    NotInverse,
}

impl fmt::Display for CertificateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertificateError::Module(e) => write!(f, "{e}"),
            CertificateError::ForwardNotAHom => f.write_str("forward map is not a differential homomorphism"),
            CertificateError::BackwardNotAHom => f.write_str("backward map is not a differential homomorphism"),
            CertificateError::NotInverse => f.write_str("forward and backward maps are not mutually inverse"),
        }
    }
}

impl From<DiffModError> for CertificateError {
    fn from(e: DiffModError) -> Self {
        CertificateError::Module(e)
    }
}

/// A pair of mutually inverse differential homomorphisms. Construction always
/// re-verifies every identity, so holding one is proof of isomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoCertificate {
    source: DiffModule,
    target: DiffModule,
    forward: PolyMat,
    backward: PolyMat,
}

impl IsoCertificate {
    pub fn new(
        source: DiffModule,
        target: DiffModule,
        forward: PolyMat,
        backward: PolyMat,
    ) -> Result<Self, CertificateError> {
        check(&source, &target, &forward, &backward)?;
        Ok(IsoCertificate { source, target, forward, backward })
    }

    pub fn identity(m: &DiffModule) -> Self {
        let id = PolyMat::identity(m.rank());
        IsoCertificate { source: m.clone(), target: m.clone(), forward: id.clone(), backward: id }
    }

    pub fn source(&self) -> &DiffModule {
        &self.source
    }

    pub fn target(&self) -> &DiffModule {
        &self.target
    }

    pub fn forward(&self) -> &PolyMat {
        &self.forward
    }

    pub fn backward(&self) -> &PolyMat {
        &self.backward
    }

    /// Re-runs every check.
    pub fn verify(&self) -> Result<(), CertificateError> {
        check(&self.source, &self.target, &self.forward, &self.backward)
    }

    pub fn inverse(&self) -> IsoCertificate {
        IsoCertificate {
            source: self.target.clone(),
            target: self.source.clone(),
            forward: self.backward.clone(),
            backward: self.forward.clone(),
        }
    }

    /// `self: P -> Q` followed by `next: Q -> S`.
    pub fn then(&self, next: &IsoCertificate) -> Result<IsoCertificate, CertificateError> {
        IsoCertificate::new(
            self.source.clone(),
            next.target.clone(),
            next.forward.mul(&self.forward),
            self.backward.mul(&next.backward),
        )
    }

    pub fn direct_sum(&self, other: &IsoCertificate) -> Result<IsoCertificate, CertificateError> {
        IsoCertificate::new(
            self.source.direct_sum(&other.source)?,
            self.target.direct_sum(&other.target)?,
            self.forward.block_diag(&other.forward),
            self.backward.block_diag(&other.backward),
        )
    }
}

fn check(source: &DiffModule, target: &DiffModule, forward: &PolyMat, backward: &PolyMat) -> Result<(), CertificateError> {
    if !verify_hom(forward, source, target)? {
        return Err(CertificateError::ForwardNotAHom);
    }
    if !verify_hom(backward, target, source)? {
        return Err(CertificateError::BackwardNotAHom);
    }
    if !backward.mul(forward).is_identity() || !forward.mul(backward).is_identity() {
        return Err(CertificateError::NotInverse);
    }
    Ok(())
}
