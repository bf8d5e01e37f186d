use core::fmt;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::cert::IsoCertificate;
use super::iso::seeded_rng;
use super::module::{ring_derivative, DiffModule};
use crate::diffring::DiffRing;
use crate::exactalg::{Poly, PolyMat, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScrambleError {
    UnsupportedRing(DiffRing),
    NotUnimodular,
    ShapeMismatch,
}

impl fmt::Display for ScrambleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScrambleError::UnsupportedRing(r) => write!(f, "scrambling needs the poly_dx ring, got {r}"),
            ScrambleError::NotUnimodular => f.write_str("change of basis is not invertible over Q[x]"),
            ScrambleError::ShapeMismatch => f.write_str("change of basis has the wrong shape"),
        }
    }
}

/// Shape of the random change of basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScrambleParams {
    /// Number of elementary row operations.
    pub steps: usize,
    pub multiplier_degree: usize,
    /// Multiplier coefficients are drawn from `[-height, height]`.
    pub height: i64,
}

impl ScrambleParams {
    pub fn for_rank(n: usize) -> Self {
        ScrambleParams { steps: 2 * n, multiplier_degree: 1, height: 3 }
    }
}

fn random_poly(rng: &mut ChaCha8Rng, degree: usize, height: i64) -> Poly {
    Poly::from_coeffs((0..=degree).map(|_| Rat::from_int(rng.gen_range(-height..=height))).collect())
}

/// A random unimodular matrix and its inverse.
pub fn random_unimodular(n: usize, params: ScrambleParams, rng: &mut ChaCha8Rng) -> (PolyMat, PolyMat) {
    let mut u = PolyMat::identity(n);
    let mut u_inv = PolyMat::identity(n);
    if n >= 2 {
        for _ in 0..params.steps {
            let i = rng.gen_range(0..n);
            let j = (i + rng.gen_range(1..n)) % n;
            let q = random_poly(rng, params.multiplier_degree, params.height);
            u.add_row_multiple(i, j, &q);
            u_inv.add_col_multiple(j, i, &-&q);
        }
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        u.swap_rows(a, b);
        u_inv.swap_cols(a, b);
    }
    for i in 0..n {
        let c = Rat::from_int([1, -1, 2, -3][rng.gen_range(0..4)]);
        u.scale_row(i, &c);
        u_inv.scale_col(i, &c.recip());
    }
    (u, u_inv)
}

/// Moves `p` along the change of basis `u`: returns `(R^n, B)` with
/// `B = (U A - U') U^-1`, so that `u` is a differential isomorphism onto it.
pub fn scramble_with(p: &DiffModule, u: &PolyMat) -> Result<(DiffModule, IsoCertificate), ScrambleError> {
    if u.shape() != (p.rank(), p.rank()) {
        return Err(ScrambleError::ShapeMismatch);
    }
    let u_inv = u.inverse().ok_or(ScrambleError::NotUnimodular)?;
    conjugate(p, u, &u_inv)
}

fn conjugate(p: &DiffModule, u: &PolyMat, u_inv: &PolyMat) -> Result<(DiffModule, IsoCertificate), ScrambleError> {
    let b = u.mul(p.matrix()).sub(&ring_derivative(p.ring(), u)).mul(u_inv);
    let q = DiffModule::new(p.ring(), b).map_err(|_| ScrambleError::NotUnimodular)?;
    let cert = IsoCertificate::new(p.clone(), q.clone(), u.clone(), u_inv.clone())
        .expect("conjugated module is isomorphic by construction");
    Ok((q, cert))
}

/// Seeded random isomorphic copy of `p` over `Q[x]`.
pub fn scramble(p: &DiffModule, seed: u64) -> Result<(DiffModule, IsoCertificate), ScrambleError> {
    scramble_with_params(p, seed, ScrambleParams::for_rank(p.rank()))
}

pub fn scramble_with_params(
    p: &DiffModule,
    seed: u64,
    params: ScrambleParams,
) -> Result<(DiffModule, IsoCertificate), ScrambleError> {
    if p.ring() != DiffRing::PolyDx {
        return Err(ScrambleError::UnsupportedRing(p.ring()));
    }
    let mut rng = seeded_rng(seed);
    let (u, u_inv) = random_unimodular(p.rank(), params, &mut rng);
    conjugate(p, &u, &u_inv)
}
