use alloc::vec::Vec;
use core::fmt;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::cert::IsoCertificate;
use super::hom::{constants_space, stabilized_hom_space, HomSpace, STABILIZATION_STEP};
use super::module::{verify_hom, DiffModError, DiffModule};
use crate::exactalg::{PolyMat, Rat, RatMat};

pub const DEFAULT_TRIALS: usize = 32;

/// Random combination coefficients are drawn uniformly from `[-H, H]`.
pub const SAMPLE_HEIGHT: i64 = 101;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub(crate) fn random_coeffs(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rat> {
    loop {
        let v: Vec<Rat> = (0..n).map(|_| Rat::from_int(rng.gen_range(-SAMPLE_HEIGHT..=SAMPLE_HEIGHT))).collect();
        if n == 0 || v.iter().any(|c| !c.is_zero()) {
            return v;
        }
    }
}

/// An invariant that differs between two modules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Invariant {
    Rank { source: usize, target: usize },
    /// No nonzero homomorphism in at least one direction.
    HomDimensionZero { forward: bool, backward: bool },
    ConstantsDimension { source: usize, target: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonIsoWitness {
    pub invariant: Invariant,
    /// Cap at which the invariant was computed and found stable.
    pub deg_cap: usize,
    /// The invariant holds without any degree cap.
    pub proven: bool,
}

impl fmt::Display for NonIsoWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.invariant {
            Invariant::Rank { source, target } => return write!(f, "rank {source} vs {target}"),
            Invariant::HomDimensionZero { forward: true, backward: true } => write!(f, "hom dimension 0 both ways")?,
            Invariant::HomDimensionZero { forward: true, .. } => write!(f, "hom dimension 0 source to target")?,
            Invariant::HomDimensionZero { .. } => write!(f, "hom dimension 0 target to source")?,
            Invariant::ConstantsDimension { source, target } => {
                write!(f, "constants dimension {source} vs {target}")?
            }
        }
        if self.proven {
            Ok(())
        } else {
            write!(f, " (stable at degree caps {} and {})", self.deg_cap, self.deg_cap + STABILIZATION_STEP)
        }
    }
}

#[derive(Clone, Debug)]
pub enum IsoVerdict {
    Iso(IsoCertificate),
    NotIso(NonIsoWitness),
    Unknown { trials: usize },
}

impl IsoVerdict {
    pub fn is_iso(&self) -> bool {
        matches!(self, IsoVerdict::Iso(_))
    }

    pub fn certificate(&self) -> Option<&IsoCertificate> {
        match self {
            IsoVerdict::Iso(c) => Some(c),
            _ => None,
        }
    }
}

/// Randomized search for a differential isomorphism `p -> q`.
///
/// Definitive negatives come only from invariant mismatches. Otherwise random
/// combinations `T` of the hom basis are tried; for each one with constant
/// nonzero determinant, the inverse is obtained by solving the linear system
/// `S T = 1` for `S` in `hom(q, p)`.
pub fn iso_search(
    p: &DiffModule,
    q: &DiffModule,
    trials: usize,
    seed: u64,
    deg_cap: usize,
) -> Result<IsoVerdict, DiffModError> {
    p.same_ring(q)?;
    if p.rank() != q.rank() {
        return Ok(IsoVerdict::NotIso(NonIsoWitness {
            invariant: Invariant::Rank { source: p.rank(), target: q.rank() },
            deg_cap,
            proven: true,
        }));
    }
    if p.rank() == 0 {
        let empty = PolyMat::zeros(0, 0);
        return Ok(IsoVerdict::Iso(
            IsoCertificate::new(p.clone(), q.clone(), empty.clone(), empty).expect("empty maps are inverse"),
        ));
    }
    if p == q {
        return Ok(IsoVerdict::Iso(IsoCertificate::identity(p)));
    }

    let (forward, forward_stable) = stabilized_hom_space(p, q, deg_cap)?;
    let (backward, backward_stable) = stabilized_hom_space(q, p, deg_cap)?;
    let fz = forward.dim() == 0 && forward_stable;
    let bz = backward.dim() == 0 && backward_stable;
    if fz || bz {
        let proven = (fz && forward.complete) || (bz && backward.complete);
        return Ok(IsoVerdict::NotIso(NonIsoWitness {
            invariant: Invariant::HomDimensionZero { forward: fz, backward: bz },
            deg_cap: forward.deg_cap.min(backward.deg_cap),
            proven,
        }));
    }
    if let Some(w) = constants_mismatch(p, q, deg_cap) {
        return Ok(IsoVerdict::NotIso(w));
    }
    if forward.dim() == 0 {
        return Ok(IsoVerdict::Unknown { trials: 0 });
    }

    let mut rng = seeded_rng(seed);
    for _ in 0..trials {
        let coeffs = random_coeffs(&mut rng, forward.dim());
        let t = forward.combination(&coeffs);
        if !t.is_unimodular() {
            continue;
        }
        if let Some(cert) = invert_within(&t, &forward, &backward) {
            return Ok(IsoVerdict::Iso(cert));
        }
    }
    Ok(IsoVerdict::Unknown { trials })
}

fn constants_mismatch(p: &DiffModule, q: &DiffModule, deg_cap: usize) -> Option<NonIsoWitness> {
    let cp = constants_space(p, deg_cap);
    let cq = constants_space(q, deg_cap);
    if cp.dim() == cq.dim() {
        return None;
    }
    let proven = cp.complete && cq.complete;
    if !proven {
        let wide = deg_cap + STABILIZATION_STEP;
        if constants_space(p, wide).dim() != cp.dim() || constants_space(q, wide).dim() != cq.dim() {
            return None;
        }
    }
    Some(NonIsoWitness {
        invariant: Invariant::ConstantsDimension { source: cp.dim(), target: cq.dim() },
        deg_cap,
        proven,
    })
}

/// Given an invertible homomorphism `t`, finds its inverse in the span of
/// `backward`; falls back to direct inversion when the backward basis was
/// truncated by its degree cap.
fn invert_within(t: &PolyMat, forward: &HomSpace, backward: &HomSpace) -> Option<IsoCertificate> {
    let (p, q) = (&forward.source, &forward.target);
    let s = solve_left_inverse(t, backward).or_else(|| {
        let s = t.inverse()?;
        verify_hom(&s, q, p).ok()?.then_some(s)
    })?;
    IsoCertificate::new(p.clone(), q.clone(), t.clone(), s).ok()
}

/// Solves `sum_i d_i (B_i t) = 1` for rational `d`.
fn solve_left_inverse(t: &PolyMat, backward: &HomSpace) -> Option<PolyMat> {
    let n = t.cols();
    let products: Vec<PolyMat> = backward.basis.iter().map(|b| b.mul(t)).collect();
    let top = products.iter().filter_map(PolyMat::max_degree).max().unwrap_or(0);
    let eqs = n * n * (top + 1);
    let mut system = RatMat::zeros(eqs, products.len());
    let mut rhs = RatMat::zeros(eqs, 1);
    for k in 0..=top {
        for r in 0..n {
            for c in 0..n {
                let row = (k * n + r) * n + c;
                for (i, prod) in products.iter().enumerate() {
                    system[(row, i)] = prod[(r, c)].coeff(k);
                }
                if k == 0 && r == c {
                    rhs[(row, 0)] = Rat::one();
                }
            }
        }
    }
    let d = system.solve(&rhs)?;
    let coeffs: Vec<Rat> = (0..products.len()).map(|i| d[(i, 0)].clone()).collect();
    Some(backward.combination(&coeffs))
}
