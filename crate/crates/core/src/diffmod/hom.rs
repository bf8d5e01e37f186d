use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::module::{DiffModError, DiffModule};
use crate::diffring::DiffRing;
use crate::exactalg::{Poly, PolyMat, Rat, RatMat};

pub const DEFAULT_DEG_CAP: usize = 32;

/// Extra degrees searched when checking that a cap-relative answer has
/// stabilized.
pub const STABILIZATION_STEP: usize = 10;

/// A basis over `Q` of the differential homomorphisms `source -> target`
/// whose entries have degree at most `deg_cap`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomSpace {
    pub source: DiffModule,
    pub target: DiffModule,
    pub basis: Vec<PolyMat>,
    /// The cap actually searched, which can exceed the requested one.
    pub deg_cap: usize,
    /// The basis spans every homomorphism, not only those under the cap.
    pub complete: bool,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `sum_i coeffs[i] * basis[i]`
    pub fn combination(&self, coeffs: &[Rat]) -> PolyMat {
        assert_eq!(coeffs.len(), self.basis.len());
        let mut out = PolyMat::zeros(self.target.rank(), self.source.rank());
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if !c.is_zero() {
                out = out.add(&b.scale(c));
            }
        }
        out
    }
}

/// Degree cap that is provably sufficient, if one is known. With constant
/// structure matrices the polynomial solutions are `exp(xL) T_0` truncated
/// by nilpotency of the Sylvester operator `L`, whose index is at most
/// `rank_source * rank_target`. In rank one `a' = a (f - g)` forces `a`
/// constant or zero.
fn proven_cap(source: &DiffModule, target: &DiffModule) -> Option<usize> {
    match source.ring() {
        DiffRing::ConstZero => Some(0),
        DiffRing::PolyDx => {
            let (n, m) = (source.rank(), target.rank());
            if source.matrix().is_constant() && target.matrix().is_constant() {
                Some(n * m)
            } else if n == 1 && m == 1 {
                Some(0)
            } else {
                None
            }
        }
    }
}

/// Solves `T' = T A_source - A_target T` for all `T` with entry degree at most
/// `deg_cap`.
///
/// Writing `T = sum_k T_k x^k`, the coefficient of `x^k` gives
/// `(k+1) T_{k+1} = sum_j L_j(T_{k-j})` with `L_j(T) = T A_j - B_j T`, so every
/// coefficient is a linear function of the initial value `T_0 = T(0)`. The
/// truncated series solves the equation iff the next `deg(A, B) + 1`
/// coefficients vanish, which is a linear system in `T_0`. For the zero
/// derivation the same system at cap zero is the intertwining condition.
pub fn hom_space(source: &DiffModule, target: &DiffModule, deg_cap: usize) -> Result<HomSpace, DiffModError> {
    source.same_ring(target)?;
    let proven = proven_cap(source, target);
    let cap = match (source.ring(), proven) {
        (DiffRing::ConstZero, _) => 0,
        (_, Some(p)) => deg_cap.max(p),
        (_, None) => deg_cap,
    };
    let mut solver = SeriesSolver::new(source.matrix(), target.matrix());
    let basis = solver.basis(cap);
    Ok(HomSpace { source: source.clone(), target: target.clone(), basis, deg_cap: cap, complete: proven.is_some() })
}

/// Dimensions of the hom space at each requested cap, sharing one series
/// expansion.
pub fn hom_dims(source: &DiffModule, target: &DiffModule, caps: &[usize]) -> Result<Vec<usize>, DiffModError> {
    source.same_ring(target)?;
    if source.ring() == DiffRing::ConstZero {
        let d = hom_space(source, target, 0)?.dim();
        return Ok(vec![d; caps.len()]);
    }
    let mut solver = SeriesSolver::new(source.matrix(), target.matrix());
    Ok(caps.iter().map(|&c| solver.dim(c)).collect())
}

/// Hom space at `deg_cap`, widened by [`STABILIZATION_STEP`] when the answer
/// is not provably complete and the wider search finds more.
pub fn stabilized_hom_space(
    source: &DiffModule,
    target: &DiffModule,
    deg_cap: usize,
) -> Result<(HomSpace, bool), DiffModError> {
    let h = hom_space(source, target, deg_cap)?;
    if h.complete {
        return Ok((h, true));
    }
    let wider = hom_space(source, target, h.deg_cap + STABILIZATION_STEP)?;
    let stable = wider.dim() == h.dim();
    Ok((if stable { h } else { wider }, stable))
}

/// Fraction-free expansion of the series recurrence. Row `e` of `coeffs[k]`
/// holds entry `e` of `k! * den^k * T_k` as an integer combination of the
/// entries of `T_0`, where `den` clears every denominator of the structure
/// matrices.
struct SeriesSolver {
    rows: usize,
    cols: usize,
    width: usize,
    den: BigInt,
    /// `den * A_j`, `den * B_j` for `j = 0..=order`.
    a_int: Vec<Vec<BigInt>>,
    b_int: Vec<Vec<BigInt>>,
    order: usize,
    coeffs: Vec<Vec<BigInt>>,
}

impl SeriesSolver {
    fn new(a: &PolyMat, b: &PolyMat) -> Self {
        let (n, m) = (a.rows(), b.rows());
        let order = a.max_degree().unwrap_or(0).max(b.max_degree().unwrap_or(0));
        let den = a
            .entries()
            .iter()
            .chain(b.entries())
            .flat_map(|p| p.coeffs())
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let scaled = |mat: &PolyMat, j: usize| -> Vec<BigInt> {
            mat.entries().iter().map(|p| {
                let c = p.coeff(j);
                c.numer() * (&den / c.denom())
            }).collect()
        };
        let a_int = (0..=order).map(|j| scaled(a, j)).collect();
        let b_int = (0..=order).map(|j| scaled(b, j)).collect();
        let width = m * n;
        let mut first = vec![BigInt::zero(); width * width];
        for e in 0..width {
            first[e * width + e] = BigInt::one();
        }
        SeriesSolver { rows: m, cols: n, width, den, a_int, b_int, order, coeffs: vec![first] }
    }

    /// `T A_j - B_j T` on every parameter column, unscaled.
    fn apply_sylvester(&self, j: usize, t: &[BigInt]) -> Vec<BigInt> {
        let (m, n, w) = (self.rows, self.cols, self.width);
        let a = &self.a_int[j];
        let b = &self.b_int[j];
        let mut out = vec![BigInt::zero(); w * w];
        for i in 0..m {
            for l in 0..n {
                let e = i * n + l;
                let dst = &mut out[e * w..(e + 1) * w];
                for r in 0..n {
                    let coef = &a[r * n + l];
                    if coef.is_zero() {
                        continue;
                    }
                    let src = &t[(i * n + r) * w..(i * n + r + 1) * w];
                    for (d, s) in dst.iter_mut().zip(src) {
                        if !s.is_zero() {
                            *d += coef * s;
                        }
                    }
                }
                for r in 0..m {
                    let coef = &b[i * m + r];
                    if coef.is_zero() {
                        continue;
                    }
                    let src = &t[(r * n + l) * w..(r * n + l + 1) * w];
                    for (d, s) in dst.iter_mut().zip(src) {
                        if !s.is_zero() {
                            *d -= coef * s;
                        }
                    }
                }
            }
        }
        out
    }

    fn extend_to(&mut self, k_max: usize) {
        while self.coeffs.len() <= k_max {
            let k = self.coeffs.len() - 1;
            let mut next = vec![BigInt::zero(); self.width * self.width];
            // k! / (k-j)! * den^j
            let mut factor = BigInt::one();
            for j in 0..=k.min(self.order) {
                if j > 0 {
                    factor *= BigInt::from(k - j + 1) * &self.den;
                }
                let term = self.apply_sylvester(j, &self.coeffs[k - j]);
                for (acc, t) in next.iter_mut().zip(term) {
                    if !t.is_zero() {
                        *acc += &factor * t;
                    }
                }
            }
            self.coeffs.push(next);
        }
    }

    fn constraint_matrix(&mut self, cap: usize) -> RatMat {
        let last = cap + self.order + 1;
        self.extend_to(last);
        let w = self.width;
        let mut entries = Vec::new();
        let mut rows = 0;
        for k in cap + 1..=last {
            for e in 0..w {
                let row = &self.coeffs[k][e * w..(e + 1) * w];
                if row.iter().all(Zero::is_zero) {
                    continue;
                }
                entries.extend(row.iter().map(|c| Rat::from_bigint(c.clone())));
                rows += 1;
            }
        }
        RatMat::new(rows, w, entries)
    }

    fn dim(&mut self, cap: usize) -> usize {
        if self.width == 0 {
            return 0;
        }
        let c = self.constraint_matrix(cap);
        self.width - c.rank()
    }

    fn basis(&mut self, cap: usize) -> Vec<PolyMat> {
        if self.width == 0 {
            return Vec::new();
        }
        let kernel = self.constraint_matrix(cap).nullspace();
        let w = self.width;
        // k! * den^k
        let mut scales = Vec::with_capacity(cap + 1);
        let mut s = BigInt::one();
        for k in 0..=cap {
            if k > 0 {
                s *= BigInt::from(k) * &self.den;
            }
            scales.push(Rat::from_bigint(s.clone()).recip());
        }
        kernel
            .iter()
            .map(|v| {
                let params = v.entries();
                let entries = (0..w)
                    .map(|e| {
                        let coeffs = (0..=cap)
                            .map(|k| {
                                let row = &self.coeffs[k][e * w..(e + 1) * w];
                                let mut acc = Rat::zero();
                                for (c, p) in row.iter().zip(params) {
                                    if !c.is_zero() && !p.is_zero() {
                                        acc += &(&Rat::from_bigint(c.clone()) * p);
                                    }
                                }
                                acc * &scales[k]
                            })
                            .collect();
                        Poly::from_coeffs(coeffs)
                    })
                    .collect();
                PolyMat::new(self.rows, self.cols, entries)
            })
            .collect()
    }
}

/// Basis of the constants `{v : v' + A v = 0}` with entry degree at most
/// `deg_cap`, as columns. These are the homomorphisms `(R, 0) -> M`.
pub fn constants(m: &DiffModule, deg_cap: usize) -> Vec<PolyMat> {
    constants_space(m, deg_cap).basis
}

pub fn constants_space(m: &DiffModule, deg_cap: usize) -> HomSpace {
    hom_space(&DiffModule::trivial(m.ring(), 1), m, deg_cap).expect("same ring by construction")
}
