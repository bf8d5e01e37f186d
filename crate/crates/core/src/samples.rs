//! Seeded generators of modules with known decomposition, used by the
//! property suites.

use alloc::vec::Vec;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::diffmod::{scramble, seeded_rng, DiffModule, IsoCertificate};
use crate::diffring::DiffRing;
use crate::exactalg::{Poly, PolyMat, Rat, RatMat};

/// Building blocks with known cores.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Block {
    /// `(R, 0)`
    Trivial,
    /// `(R, f)` with `f` nonzero; trivial-free.
    Shift(Poly),
    /// `(R^2, [[0, 1], [0, 0]])`; isomorphic to `(R^2, 0)`.
    Jordan,
    /// `(R^2, [[f, 1], [0, f]])` with `f` nonzero; trivial-free.
    Twisted(Poly),
}

impl Block {
    pub fn rank(&self) -> usize {
        match self {
            Block::Trivial | Block::Shift(_) => 1,
            Block::Jordan | Block::Twisted(_) => 2,
        }
    }

    pub fn core_rank(&self) -> usize {
        match self {
            Block::Trivial | Block::Jordan => 0,
            Block::Shift(_) => 1,
            Block::Twisted(_) => 2,
        }
    }

    pub fn module(&self) -> DiffModule {
        let r = DiffRing::PolyDx;
        let m = match self {
            Block::Trivial => PolyMat::zeros(1, 1),
            Block::Shift(f) => PolyMat::new(1, 1, alloc::vec![f.clone()]),
            Block::Jordan => PolyMat::new(2, 2, alloc::vec![Poly::zero(), Poly::one(), Poly::zero(), Poly::zero()]),
            Block::Twisted(f) => PolyMat::new(2, 2, alloc::vec![f.clone(), Poly::one(), Poly::zero(), f.clone()]),
        };
        DiffModule::new(r, m).expect("square")
    }
}

pub fn random_nonzero_poly(rng: &mut ChaCha8Rng, max_degree: usize, height: i64) -> Poly {
    loop {
        let d = rng.gen_range(0..=max_degree);
        let p = Poly::from_coeffs((0..=d).map(|_| Rat::from_int(rng.gen_range(-height..=height))).collect());
        if !p.is_zero() {
            return p;
        }
    }
}

pub fn random_block(rng: &mut ChaCha8Rng, room: usize, max_degree: usize) -> Block {
    let choices = if room >= 2 { 4 } else { 2 };
    match rng.gen_range(0..choices) {
        0 => Block::Trivial,
        1 => Block::Shift(random_nonzero_poly(rng, max_degree, 3)),
        2 => Block::Jordan,
        _ => Block::Twisted(random_nonzero_poly(rng, max_degree, 3)),
    }
}

/// A direct sum of blocks with its expected core rank.
#[derive(Clone, Debug)]
pub struct KnownSum {
    pub blocks: Vec<Block>,
    pub module: DiffModule,
}

impl KnownSum {
    pub fn from_blocks(blocks: Vec<Block>) -> Self {
        let module = blocks
            .iter()
            .fold(DiffModule::trivial(DiffRing::PolyDx, 0), |acc, b| acc.direct_sum(&b.module()).expect("same ring"));
        KnownSum { blocks, module }
    }

    /// Core ranks add because sums of trivial-free modules are trivial-free.
    pub fn expected_core_rank(&self) -> usize {
        self.blocks.iter().map(Block::core_rank).sum()
    }

    pub fn rank(&self) -> usize {
        self.module.rank()
    }
}

/// Random direct sum of rank between 1 and `max_rank` with entry degrees at
/// most `max_degree`.
pub fn random_known_sum(seed: u64, max_rank: usize, max_degree: usize) -> KnownSum {
    let mut rng = seeded_rng(seed);
    let target = rng.gen_range(1..=max_rank);
    let mut blocks = Vec::new();
    let mut rank = 0;
    while rank < target {
        let b = random_block(&mut rng, target - rank, max_degree);
        rank += b.rank();
        blocks.push(b);
    }
    KnownSum::from_blocks(blocks)
}

/// A scrambled copy of a random known sum, with the certificate from the
/// plain sum to the scrambled module.
pub fn random_scrambled(seed: u64, max_rank: usize, max_degree: usize) -> (KnownSum, DiffModule, IsoCertificate) {
    let sum = random_known_sum(seed, max_rank, max_degree);
    let (q, cert) = scramble(&sum.module, seed ^ 0x5eed_5eed).expect("poly_dx ring");
    (sum, q, cert)
}

/// Random integer matrix with entries in `[-height, height]`.
pub fn random_ratmat(rng: &mut ChaCha8Rng, n: usize, height: i64) -> RatMat {
    RatMat::from_fn(n, n, |_, _| Rat::from_int(rng.gen_range(-height..=height)))
}

/// Random matrix over `Q` that is invertible, as a product of elementary
/// integer operations.
pub fn random_invertible_ratmat(rng: &mut ChaCha8Rng, n: usize) -> (RatMat, RatMat) {
    let mut t = RatMat::identity(n);
    let mut t_inv = RatMat::identity(n);
    if n >= 2 {
        for _ in 0..2 * n {
            let i = rng.gen_range(0..n);
            let j = (i + rng.gen_range(1..n)) % n;
            let c = Rat::from_int(rng.gen_range(-2..=2));
            t.add_row_multiple(i, j, &c);
            // t_inv <- t_inv E^-1 acts on columns: col_j -= c col_i
            for r in 0..n {
                let v = &t_inv[(r, i)] * &c;
                t_inv[(r, j)] -= &v;
            }
        }
    }
    (t, t_inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cores::core;

    #[test]
    fn known_sums_have_expected_cores() {
        for seed in 0..6 {
            let s = random_known_sum(seed, 4, 3);
            assert!(s.rank() <= 4 && s.rank() >= 1);
            let d = core(&s.module, 32);
            assert_eq!(d.core.rank(), s.expected_core_rank(), "{:?}", s.blocks);
        }
    }

    #[test]
    fn invertible_generator() {
        let mut rng = seeded_rng(3);
        let (t, t_inv) = random_invertible_ratmat(&mut rng, 4);
        assert_eq!(t.mul(&t_inv), RatMat::identity(4));
    }
}
