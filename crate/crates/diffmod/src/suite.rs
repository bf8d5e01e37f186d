//! Criterion runners shared by `diffmod suite` and the acceptance tests.
//!
//! Every item is a pure function of its seed, so items run in parallel and
//! the tallies are reproducible. Items end in one of three states: pass,
//! unknown (the randomized search gave up; never counted as a failure) and
//! fail (a verified counterexample or a certificate that did not check).

use std::time::{Duration, Instant};

use diffmod_core::cores::{
    cancel_free, core, core_with_pivot, is_trivial_free, pairing, split_trivial_summand, CancelOutcome, PivotRule,
};
use diffmod_core::diffmod::{
    constants_space, hom_dims, hom_space, is_trivial, iso_search, scramble, seeded_rng, verify_hom, DiffModule,
    IsoCertificate, IsoVerdict, TrivialityResult, STABILIZATION_STEP,
};
use diffmod_core::diffring::DiffRing;
use diffmod_core::exactalg::{Poly, PolyMat, Rat, RatMat};
use diffmod_core::monoid::{ClassEntry, ClassEquality, ClassLedger};
use diffmod_core::samples::{random_invertible_ratmat, random_known_sum, random_ratmat, random_scrambled};
use diffmod_core::zeroder::{cancel_zero_derivation, padded_cancellation_check, ZeroDerError};
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Number of random modules in the core suite; the other randomized
    /// criteria scale from it. 200 is the full acceptance size.
    pub size: usize,
    pub deg_cap: usize,
    pub trials: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 0, size: 200, deg_cap: 32, trials: 32 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    pub total: usize,
    pub passed: usize,
    pub unknown: usize,
    pub failed: usize,
    pub required_pass_rate: f64,
    pub time_limit_s: Option<u64>,
    /// The first few failure and unknown messages.
    pub details: Vec<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CriterionReport {
    pub fn within_time(&self) -> bool {
        self.time_limit_s.is_none_or(|s| self.elapsed < Duration::from_secs(s))
    }

    pub fn ok(&self) -> bool {
        let needed = (self.required_pass_rate * self.total as f64).ceil() as usize;
        self.failed == 0 && self.passed >= needed && self.within_time()
    }

    pub fn line(&self) -> String {
        let limit = self.time_limit_s.map(|s| format!(" (limit {s} s)")).unwrap_or_default();
        format!(
            "{} C{} {}: {}/{} pass, {} unknown, {} fail, {:.2} s{}",
            if self.ok() { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.passed,
            self.total,
            self.unknown,
            self.failed,
            self.elapsed.as_secs_f64(),
            limit
        )
    }
}

enum Progress {
    Pass,
    Unknown(String),
}

type Item = Result<Progress, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

const MAX_DETAILS: usize = 5;

fn tally(
    id: u8,
    name: &'static str,
    rate: f64,
    limit: Option<u64>,
    items: Vec<Item>,
    started: Instant,
) -> CriterionReport {
    let mut r = CriterionReport {
        id,
        name,
        total: items.len(),
        passed: 0,
        unknown: 0,
        failed: 0,
        required_pass_rate: rate,
        time_limit_s: limit,
        details: Vec::new(),
        elapsed: Duration::ZERO,
    };
    for (i, item) in items.into_iter().enumerate() {
        match item {
            Ok(Progress::Pass) => r.passed += 1,
            Ok(Progress::Unknown(m)) => {
                r.unknown += 1;
                if r.details.len() < MAX_DETAILS {
                    r.details.push(format!("item {i}: unknown: {m}"));
                }
            }
            Err(m) => {
                r.failed += 1;
                if r.details.len() < MAX_DETAILS {
                    r.details.push(format!("item {i}: fail: {m}"));
                }
            }
        }
    }
    r.elapsed = started.elapsed();
    r
}

/// Distinct streams per criterion and item.
fn item_seed(base: u64, criterion: u8, i: usize) -> u64 {
    base.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ ((criterion as u64) << 56) ^ i as u64
}

fn poly_dx(f: &[i64]) -> DiffModule {
    DiffModule::rank_one(DiffRing::PolyDx, Poly::from_ints(f)).expect("rank one")
}

fn jordan() -> DiffModule {
    DiffModule::new(DiffRing::PolyDx, PolyMat::from_int_polys(&[&[&[], &[1]], &[&[], &[]]])).expect("square")
}

fn check_cert(c: &IsoCertificate, what: &str) -> Result<(), String> {
    c.verify().map_err(|e| format!("{what} certificate: {e}"))
}

/// Which of `{0, 1, x, x+1, x^2, 3x}` the rank-one table ranges over.
const RANK_ONE_TABLE: [&[i64]; 6] = [&[], &[1], &[0, 1], &[1, 1], &[0, 0, 1], &[0, 3]];

pub fn rank_one_table(cfg: &SuiteConfig) -> CriterionReport {
    let started = Instant::now();
    let mut items = Vec::new();
    for f in RANK_ONE_TABLE {
        for g in RANK_ONE_TABLE {
            let item = (|| {
                let h = hom_space(&poly_dx(f), &poly_dx(g), cfg.deg_cap).map_err(|e| e.to_string())?;
                let expected = usize::from(f == g);
                ensure(h.dim() == expected, || format!("f={f:?} g={g:?}: dim {} != {expected}", h.dim()))?;
                ensure(h.complete, || format!("f={f:?} g={g:?}: not complete"))?;
                Ok(Progress::Pass)
            })();
            items.push(item);
        }
    }
    tally(1, "rank-1 hom table", 1.0, Some(1), items, started)
}

pub fn nontriviality(cfg: &SuiteConfig) -> (CriterionReport, Vec<ClassLedger>) {
    let started = Instant::now();
    let one = poly_dx(&[1]);
    let mut items: Vec<Item> = Vec::new();

    let consts = constants_space(&one, cfg.deg_cap);
    items.push(
        ensure(consts.dim() == 0 && consts.complete, || format!("(R,1) has {} constants", consts.dim()))
            .map(|_| Progress::Pass),
    );
    items.push(ensure(is_trivial_free(&one, cfg.deg_cap), || "(R,1) is not trivial-free".into()).map(|_| Progress::Pass));

    let mut ledger = ClassLedger::new(DiffRing::PolyDx, cfg.deg_cap);
    let mut names = vec!["1".to_string()];
    ledger.class_of(&one, "1").expect("fresh name");
    for k in 1..=5i64 {
        let name = format!("{k}x");
        ledger.class_of(&poly_dx(&[0, k]), &name).expect("fresh name");
        names.push(name);
    }
    items.push(
        ensure(!ledger.is_zero_class("1").expect("present"), || "class of (R,1) is zero".into())
            .map(|_| Progress::Pass),
    );
    items.push(
        ensure(!ledger.is_invertible_class("1").expect("present"), || "class of (R,1) is invertible".into())
            .map(|_| Progress::Pass),
    );
    for (i, a) in names.iter().enumerate() {
        for b in &names[i + 1..] {
            let item = match ledger.classes_equal(a, b, cfg.trials, cfg.seed) {
                Ok(ClassEquality::NotEqual(_)) => Ok(Progress::Pass),
                Ok(ClassEquality::Equal(_)) => Err(format!("classes {a} and {b} are equal")),
                Ok(ClassEquality::Unknown) => Ok(Progress::Unknown(format!("{a} vs {b}"))),
                Err(e) => Err(e.to_string()),
            };
            items.push(item);
        }
    }
    (tally(2, "nontriviality witness", 1.0, Some(5), items, started), vec![ledger])
}

pub fn jordan_certificate(cfg: &SuiteConfig) -> (CriterionReport, Vec<ClassLedger>) {
    let started = Instant::now();
    let j = jordan();
    let item = (|| {
        let TrivialityResult::Trivial { basis: t, certificate } = is_trivial(&j, cfg.deg_cap) else {
            return Err("Jordan module reported not trivial".to_string());
        };
        check_cert(&certificate, "triviality")?;
        let s0 = t[(0, 0)].as_constant().filter(|c| !c.is_zero());
        let s1 = t[(1, 1)].as_constant().filter(|c| !c.is_zero());
        let (Some(_), Some(s1)) = (s0, s1) else {
            return Err(format!("diagonal of {t:?} is not nonzero constants"));
        };
        ensure(t[(1, 0)].is_zero(), || "lower-left entry nonzero".into())?;
        ensure(t[(0, 1)] == Poly::from_ints(&[0, -1]).scale(&s1), || "upper-right entry is not -x times scale".into())?;
        let ok = verify_hom(&t, &DiffModule::trivial(DiffRing::PolyDx, 2), &j).map_err(|e| e.to_string())?;
        ensure(ok, || "T is not a hom (R^2,0) -> Jordan".into())?;
        let det = t.determinant();
        ensure(det.as_constant().is_some_and(|d| !d.is_zero()), || format!("det T = {det} is not a unit"))?;
        Ok(Progress::Pass)
    })();
    let mut ledger = ClassLedger::new(DiffRing::PolyDx, cfg.deg_cap);
    ledger.class_of(&j, "jordan").expect("fresh name");
    ledger.class_of(&DiffModule::trivial(DiffRing::PolyDx, 2), "trivial2").expect("fresh name");
    (tally(3, "triviality certificate", 1.0, None, vec![item], started), vec![ledger])
}

fn core_item(seed: u64, cfg: &SuiteConfig) -> (Item, Option<ClassLedger>) {
    let cap = cfg.deg_cap;
    let mut unknown = Vec::new();
    let mut ledger = None;
    let result = (|| {
        let (sum, q, scrambled) = random_scrambled(seed, 4, 3);
        check_cert(&scrambled, "scramble")?;
        let d1 = core(&q, cap);
        let d2 = core_with_pivot(&q, cap, PivotRule::Seeded(seed));
        check_cert(&d1.certificate, "core")?;
        check_cert(&d2.certificate, "seeded core")?;
        ensure(d1.core.rank() + d1.multiplicity == q.rank(), || "core rank + multiplicity != rank".into())?;
        ensure(d1.core.rank() == sum.expected_core_rank(), || {
            format!("core rank {} != expected {}", d1.core.rank(), sum.expected_core_rank())
        })?;
        ensure(d2.multiplicity == d1.multiplicity, || "pivot rules disagree on multiplicity".into())?;
        ensure(is_trivial_free(&d1.core, cap), || "core is not trivial-free".into())?;

        let again = core(&d1.core, cap);
        ensure(again.multiplicity == 0 && again.core == d1.core, || "core is not idempotent".into())?;

        match iso_search(&d1.core, &d2.core, cfg.trials, seed, cap).map_err(|e| e.to_string())? {
            IsoVerdict::Iso(c) => check_cert(&c, "uniqueness")?,
            IsoVerdict::NotIso(w) => return Err(format!("cores under two pivots not isomorphic: {w}")),
            IsoVerdict::Unknown { .. } => unknown.push("uniqueness search gave up".to_string()),
        }

        let (_, p, _) = random_scrambled(seed ^ 0xa11ce, 2, 3);
        let (_, r, _) = random_scrambled(seed ^ 0xb0b, 2, 3);
        let hp = core(&p, cap);
        let hr = core(&r, cap);
        let hs = core(&p.direct_sum(&r).expect("same ring"), cap);
        let split = hp.core.direct_sum(&hr.core).expect("same ring");
        ensure(hs.core.rank() == split.rank(), || "H(P+Q) rank differs from H(P)+H(Q)".into())?;
        match iso_search(&split, &hs.core, cfg.trials, seed, cap).map_err(|e| e.to_string())? {
            IsoVerdict::Iso(c) => check_cert(&c, "additivity")?,
            IsoVerdict::NotIso(w) => return Err(format!("H(P+Q) not isomorphic to H(P)+H(Q): {w}")),
            IsoVerdict::Unknown { .. } => unknown.push("additivity search gave up".to_string()),
        }

        let note = |what: &str| vec![format!("core suite seed {seed}: {what}")];
        let entries = vec![
            ClassEntry { name: "M".into(), core: d1.core.clone(), provenance: note("scrambled module") },
            ClassEntry { name: "P".into(), core: hp.core, provenance: note("summand P") },
            ClassEntry { name: "Q".into(), core: hr.core, provenance: note("summand Q") },
            ClassEntry { name: "P+Q".into(), core: hs.core, provenance: note("core of P + Q") },
        ];
        ledger = Some(ClassLedger::from_entries(DiffRing::PolyDx, cap, entries).map_err(|e| e.to_string())?);
        Ok(())
    })();
    let item = result.map(|()| if unknown.is_empty() { Progress::Pass } else { Progress::Unknown(unknown.join("; ")) });
    (item, ledger)
}

pub fn core_suite(cfg: &SuiteConfig) -> (CriterionReport, Vec<ClassLedger>) {
    let started = Instant::now();
    let (items, ledgers): (Vec<_>, Vec<_>) =
        (0..cfg.size).into_par_iter().map(|i| core_item(item_seed(cfg.seed, 4, i), cfg)).unzip();
    let report = tally(4, "core suite", 0.95, Some(120), items, started);
    (report, ledgers.into_iter().flatten().collect())
}

fn cancel_item(seed: u64, cfg: &SuiteConfig) -> (Item, Option<ClassLedger>) {
    let cap = cfg.deg_cap;
    let mut ledger = None;
    let item = (|| {
        let p = random_known_sum(seed, 3, 2).module;
        let padded = p.direct_sum(&DiffModule::trivial(DiffRing::PolyDx, 1)).expect("same ring");
        let (s, u) = scramble(&padded, seed ^ 0xcafe).map_err(|e| e.to_string())?;
        check_cert(&u, "scramble")?;

        // Reorganize S as Q' + (R, 0) along a randomly chosen trivial summand.
        let pr = pairing(&s, cap).map_err(|e| e.to_string())?;
        let nonzero = pr.nonzero_entries();
        if nonzero.is_empty() {
            return Ok(Progress::Unknown("no trivial summand found below the cap".into()));
        }
        let (j, k) = nonzero[seeded_rng(seed).gen_range(0..nonzero.len())];
        let w = pr.homs[j].scale(&pr.matrix[(j, k)].recip());
        let (q, c) = split_trivial_summand(&s, &w, &pr.constants[k]).map_err(|e| e.to_string())?;
        let c_inv = c.inverse().ok_or("basis change is not invertible")?;
        let target = q.direct_sum(&DiffModule::trivial(DiffRing::PolyDx, 1)).expect("same ring");
        let reorg = IsoCertificate::new(s, target, c_inv, c).map_err(|e| format!("reorganization: {e}"))?;
        let chain = u.then(&reorg).map_err(|e| e.to_string())?;

        let mut l = ClassLedger::new(DiffRing::PolyDx, cap);
        l.class_of(&p, "P").map_err(|e| e.to_string())?;
        l.class_of(&q, "Q'").map_err(|e| e.to_string())?;
        ledger = Some(l);

        match cancel_free(&p, &q, 1, &chain, cfg.trials, seed, cap).map_err(|e| e.to_string())? {
            CancelOutcome::Iso(cert) => {
                check_cert(&cert, "cancellation")?;
                ensure(cert.source() == &p && cert.target() == &q, || "certificate has the wrong ends".into())?;
                Ok(Progress::Pass)
            }
            CancelOutcome::Unknown => Ok(Progress::Unknown("core iso search gave up".into())),
        }
    })();
    (item, ledger)
}

pub fn free_cancellation(cfg: &SuiteConfig) -> (CriterionReport, Vec<ClassLedger>) {
    let started = Instant::now();
    let n = (cfg.size / 2).max(1);
    let (items, ledgers): (Vec<_>, Vec<_>) =
        (0..n).into_par_iter().map(|i| cancel_item(item_seed(cfg.seed, 5, i), cfg)).unzip();
    let report = tally(5, "free cancellation", 0.95, Some(120), items, started);
    (report, ledgers.into_iter().flatten().collect())
}

pub fn units_law(ledgers: &[ClassLedger]) -> CriterionReport {
    let started = Instant::now();
    let items = ledgers
        .par_iter()
        .flat_map_iter(|l| {
            let mut l = l.clone();
            let names: Vec<String> = l.entries().iter().map(|e| e.name.clone()).collect();
            names
                .into_iter()
                .map(|name| {
                    let zero = l.is_zero_class(&name).map_err(|e| e.to_string())?;
                    let unit = l.is_invertible_class(&name).map_err(|e| e.to_string())?;
                    ensure(zero == unit, || format!("{name}: zero {zero}, invertible {unit}"))?;
                    Ok(Progress::Pass)
                })
                .collect::<Vec<_>>()
        })
        .collect();
    tally(6, "units law", 1.0, None, items, started)
}

fn padded_item(seed: u64) -> Item {
    let mut rng = seeded_rng(seed);
    let n = rng.gen_range(1..=6);
    let m = rng.gen_range(0..=3);
    let a = random_ratmat(&mut rng, n, 3);
    let b = match rng.gen_range(0..3) {
        0 => {
            let (t, t_inv) = random_invertible_ratmat(&mut rng, n);
            t.mul(&a).mul(&t_inv)
        }
        1 => random_ratmat(&mut rng, n, 3),
        _ => a.clone(),
    };
    let agree = padded_cancellation_check(&a, &b, m).map_err(|e| e.to_string())?;
    ensure(agree, || format!("padding by {m} changes similarity of {n}x{n} pair"))?;

    let (g, _) = random_invertible_ratmat(&mut rng, n);
    let (h, _) = random_invertible_ratmat(&mut rng, m);
    let f = g.block_diag(&h);
    let cert = cancel_zero_derivation(n, n, m, &f).map_err(|e| e.to_string())?;
    let id = RatMat::identity(n);
    ensure(cert.verifies(&id, &id) && cert.transform == g, || "cancellation certificate is not the top block".into())?;
    Ok(Progress::Pass)
}

fn broken_item(seed: u64) -> Item {
    let mut rng = seeded_rng(seed);
    let a = rng.gen_range(1..=5);
    let m = rng.gen_range(1..=3);
    let (g, _) = random_invertible_ratmat(&mut rng, a);
    let (h, _) = random_invertible_ratmat(&mut rng, m);
    let good = g.block_diag(&h);
    let upper = rng.gen_bool(0.5);
    let (r, c) = if upper { (rng.gen_range(0..a), a + rng.gen_range(0..m)) } else { (a + rng.gen_range(0..m), rng.gen_range(0..a)) };
    let bump = Rat::from_int(if rng.gen_bool(0.5) { 1 } else { -2 });
    let f = RatMat::from_fn(a + m, a + m, |i, j| if (i, j) == (r, c) { &good[(i, j)] + &bump } else { good[(i, j)].clone() });
    match cancel_zero_derivation(a, a, m, &f) {
        Err(ZeroDerError::NotIntertwining) => Ok(Progress::Pass),
        other => Err(format!("broken intertwiner gave {other:?}")),
    }
}

pub fn zero_derivation(cfg: &SuiteConfig) -> CriterionReport {
    let started = Instant::now();
    let pairs = cfg.size.max(1);
    let broken = (cfg.size / 4).max(1);
    let mut items: Vec<Item> = (0..pairs).into_par_iter().map(|i| padded_item(item_seed(cfg.seed, 7, i))).collect();
    items.extend(
        (0..broken).into_par_iter().map(|i| broken_item(item_seed(cfg.seed, 7, pairs + i))).collect::<Vec<_>>(),
    );
    tally(7, "zero-derivation suite", 1.0, Some(10), items, started)
}

/// Re-checks `T' = T A - B T` by evaluating every matrix at enough integer
/// points to pin down the residual, which has degree at most
/// `deg T + max(deg A, deg B)`.
pub fn substitution_check(t: &PolyMat, source: &DiffModule, target: &DiffModule) -> bool {
    let deg = |m: &PolyMat| m.max_degree().unwrap_or(0);
    let bound = deg(t) + deg(source.matrix()).max(deg(target.matrix()));
    let dt = match source.ring() {
        DiffRing::PolyDx => t.derivative(),
        DiffRing::ConstZero => PolyMat::zeros(t.rows(), t.cols()),
    };
    (0..=bound as i64 + 1).all(|c| {
        let x = Rat::from_int(c);
        let tx = t.eval(&x);
        let rhs = tx.mul(&source.matrix().eval(&x)).sub(&target.matrix().eval(&x).mul(&tx));
        dt.eval(&x) == rhs
    })
}

struct SolverCase {
    label: String,
    source: DiffModule,
    target: DiffModule,
}

fn solver_cases(cfg: &SuiteConfig) -> Vec<SolverCase> {
    let mut cases = Vec::new();
    let mut push = |label: String, source: DiffModule, target: DiffModule| cases.push(SolverCase { label, source, target });
    for f in RANK_ONE_TABLE {
        for g in RANK_ONE_TABLE {
            push(format!("rank one {f:?} -> {g:?}"), poly_dx(f), poly_dx(g));
        }
    }
    let triv2 = DiffModule::trivial(DiffRing::PolyDx, 2);
    push("trivial -> jordan".into(), triv2.clone(), jordan());
    push("jordan -> trivial".into(), jordan(), triv2);
    push("jordan -> jordan".into(), jordan(), jordan());
    for i in 0..(cfg.size / 10).max(1) {
        let seed = item_seed(cfg.seed, 4, i);
        let (sum, q, _) = random_scrambled(seed, 4, 3);
        push(format!("scrambled seed {seed}"), sum.module, q);
    }
    let mut rng = seeded_rng(item_seed(cfg.seed, 8, 0));
    for i in 0..(cfg.size / 4).max(1) {
        let n = rng.gen_range(1..=3);
        let m = rng.gen_range(1..=3);
        let a = random_ratmat(&mut rng, n, 2);
        // Strictly upper triangular targets give polynomial solutions of
        // positive degree.
        let b = match i % 3 {
            0 => random_ratmat(&mut rng, m, 2),
            1 => RatMat::from_fn(m, m, |r, c| if c > r { Rat::from_int(rng.gen_range(-2..=2)) } else { Rat::zero() }),
            _ => a.clone(),
        };
        let a = if i % 3 == 1 { RatMat::from_fn(n, n, |r, c| if c > r { a[(r, c)].clone() } else { Rat::zero() }) } else { a };
        let ring = if i % 2 == 0 { DiffRing::PolyDx } else { DiffRing::ConstZero };
        let module = |x: &RatMat| DiffModule::new(ring, PolyMat::from_ratmat(x)).expect("square constant matrix");
        push(format!("constant {ring} {n}x{m} #{i}"), module(&a), module(&b));
    }
    cases
}

fn solver_item(case: &SolverCase, cfg: &SuiteConfig) -> Item {
    let (s, t) = (&case.source, &case.target);
    let h = hom_space(s, t, cfg.deg_cap).map_err(|e| e.to_string())?;
    for (i, b) in h.basis.iter().enumerate() {
        ensure(substitution_check(b, s, t), || format!("{}: basis element {i} fails substitution", case.label))?;
    }
    let dims = hom_dims(s, t, &[cfg.deg_cap, cfg.deg_cap + STABILIZATION_STEP]).map_err(|e| e.to_string())?;
    ensure(dims[0] == dims[1], || format!("{}: dims {dims:?} not stable", case.label))?;
    if h.deg_cap == cfg.deg_cap {
        ensure(h.dim() == dims[0], || format!("{}: basis size {} vs dim {}", case.label, h.dim(), dims[0]))?;
    }
    if s.matrix().is_constant() && t.matrix().is_constant() {
        ensure(h.complete, || format!("{}: constant case not marked complete", case.label))?;
        let exact = hom_space(s, t, 0).map_err(|e| e.to_string())?;
        let proven = if s.ring() == DiffRing::PolyDx { s.rank() * t.rank() } else { 0 };
        ensure(exact.deg_cap == proven && exact.dim() == h.dim(), || {
            format!("{}: proven cap {} gives dim {} vs {}", case.label, exact.deg_cap, exact.dim(), h.dim())
        })?;
    }
    Ok(Progress::Pass)
}

pub fn solver_oracle(cfg: &SuiteConfig) -> CriterionReport {
    let started = Instant::now();
    let cases = solver_cases(cfg);
    let items = cases.par_iter().map(|c| solver_item(c, cfg)).collect();
    tally(8, "solver soundness and stabilization", 1.0, None, items, started)
}

/// All eight criteria in order; the units law runs over the ledgers built by
/// criteria 2 to 5.
pub fn run_all(cfg: &SuiteConfig) -> Vec<CriterionReport> {
    run_all_with(cfg, |_| {})
}

/// Like [`run_all`], calling `progress` as each criterion finishes.
pub fn run_all_with(cfg: &SuiteConfig, mut progress: impl FnMut(&CriterionReport)) -> Vec<CriterionReport> {
    let mut reports = Vec::new();
    let mut ledgers = Vec::new();
    let mut record = |r: CriterionReport, reports: &mut Vec<CriterionReport>| {
        progress(&r);
        reports.push(r);
    };
    record(rank_one_table(cfg), &mut reports);
    for run in [nontriviality, jordan_certificate, core_suite, free_cancellation] {
        let (r, l) = run(cfg);
        ledgers.extend(l);
        record(r, &mut reports);
    }
    record(units_law(&ledgers), &mut reports);
    record(zero_derivation(cfg), &mut reports);
    record(solver_oracle(cfg), &mut reports);
    reports
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn substitution_check_rejects_non_homs() {
        let j = jordan();
        let triv = DiffModule::trivial(DiffRing::PolyDx, 2);
        let good = PolyMat::from_int_polys(&[&[&[1], &[0, -1]], &[&[], &[1]]]);
        let bad = PolyMat::from_int_polys(&[&[&[1], &[0, 1]], &[&[], &[1]]]);
        assert!(substitution_check(&good, &triv, &j));
        assert!(!substitution_check(&bad, &triv, &j));
    }

    #[test]
    fn small_suite_passes() {
        let cfg = SuiteConfig { size: 8, ..SuiteConfig::default() };
        for r in run_all(&cfg) {
            assert!(r.failed == 0, "{}: {:?}", r.line(), r.details);
        }
    }
}
