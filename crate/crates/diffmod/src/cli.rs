//! Command-line front end.
//!
//! Every command prints a verdict line followed by a JSON report on stdout.
//! Exit codes: 0 for a definitive verdict (positive or negative), 3 when the
//! randomized search gave up, 2 for bad input, 1 for internal errors and
//! failing suites.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use diffmod_core::cores::core;
use diffmod_core::diffmod::{
    hom_dims, hom_space, is_trivial, iso_search, DiffModule, IsoCertificate, IsoVerdict, TrivialityResult,
    DEFAULT_DEG_CAP, DEFAULT_TRIALS, STABILIZATION_STEP,
};
use diffmod_core::diffring::DiffRing;
use diffmod_core::exactalg::{PolyMat, RatMat};
use diffmod_core::monoid::{ClassEquality, ClassLedger};
use diffmod_core::zeroder::{invariant_factors, rcf, similar, SimilarityVerdict};
use serde_json::{json, Value};

use crate::format::{
    certificate_to_json, core_to_json, hom_to_json, ledger_from_json, ledger_to_json, module_from_json,
    module_to_json, poly_to_json, polymat_to_json, ratmat_to_json, to_canonical, LedgerJson,
    ModuleJson,
};
use crate::report::{inputs_digest, millis, Defaults, Report, Settings};
use crate::suite::{run_all_with, SuiteConfig};

#[derive(Parser, Debug)]
#[command(name = "diffmod", version, about = "Exact computations with differential modules over Q[x] and (Q, 0)")]
pub struct Cli {
    /// Maximum entry degree searched for homomorphisms and constants.
    #[arg(long, global = true, env = "DIFFMOD_DEG_CAP", default_value_t = DEFAULT_DEG_CAP)]
    pub deg_cap: usize,
    /// Random candidates tried by isomorphism searches.
    #[arg(long, global = true, default_value_t = DEFAULT_TRIALS)]
    pub trials: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Basis of the differential homomorphisms SOURCE -> TARGET.
    Hom {
        source: PathBuf,
        target: PathBuf,
        /// Write the basis file here.
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
    /// Decide whether a module is isomorphic to (R^n, 0).
    Trivial {
        module: PathBuf,
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Split off trivial summands, leaving a trivial-free core.
    Core {
        module: PathBuf,
        /// Write the core file here.
        #[arg(short = 'o')]
        output: Option<PathBuf>,
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Search for an isomorphism A -> B (decided exactly over const_zero).
    Iso {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Rational canonical form of a module with constant matrix.
    Rcf {
        module: PathBuf,
        /// Write the canonical form as a module file here.
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
    /// Maintain a ledger of classes of modules modulo trivial ones.
    Monoid {
        #[command(subcommand)]
        op: MonoidCommand,
    },
    /// Run the full property suite and print a pass/fail table.
    Suite {
        /// Number of random modules in the core suite; other criteria scale
        /// from it.
        #[arg(long, default_value_t = 200)]
        size: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum MonoidCommand {
    /// Create an empty ledger.
    New {
        #[arg(long)]
        ledger: PathBuf,
        #[arg(long, default_value = "poly_dx")]
        ring: String,
    },
    /// Record the class of a module under NAME.
    AddModule {
        #[arg(long)]
        ledger: PathBuf,
        #[arg(long)]
        name: String,
        module: PathBuf,
    },
    /// Record the sum of two classes under NAME.
    AddClasses {
        #[arg(long)]
        ledger: PathBuf,
        a: String,
        b: String,
        #[arg(long)]
        name: String,
    },
    /// Compare two classes.
    Equal {
        #[arg(long)]
        ledger: PathBuf,
        a: String,
        b: String,
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Whether a class is a unit; the reasoning is appended to the ledger.
    IsInvertible {
        #[arg(long)]
        ledger: PathBuf,
        name: String,
    },
    /// Summarize every class in the ledger.
    Report {
        #[arg(long)]
        ledger: PathBuf,
    },
}

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Internal(String),
}

fn input(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

pub const EXIT_UNKNOWN: u8 = 3;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_INTERNAL: u8 = 1;

struct Outcome {
    verdict: String,
    payload: Value,
    exit: u8,
    timing: Value,
}

impl Outcome {
    fn definitive(verdict: impl Into<String>, payload: Value) -> Self {
        Outcome { verdict: verdict.into(), payload, exit: 0, timing: Value::Null }
    }

    fn unknown(verdict: impl Into<String>, payload: Value) -> Self {
        Outcome { verdict: verdict.into(), payload, exit: EXIT_UNKNOWN, timing: Value::Null }
    }
}

/// Reads files and remembers their bytes for the inputs digest.
#[derive(Default)]
struct Inputs {
    seen: Vec<Vec<u8>>,
}

impl Inputs {
    fn text(&mut self, path: &Path) -> Result<String, CliError> {
        let bytes = std::fs::read(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        let text = String::from_utf8(bytes.clone()).map_err(|_| CliError::Input(format!("{}: not UTF-8", path.display())))?;
        self.seen.push(bytes);
        Ok(text)
    }

    fn json<T: serde::de::DeserializeOwned>(&mut self, path: &Path) -> Result<T, CliError> {
        let text = self.text(path)?;
        serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
    }

    fn module(&mut self, path: &Path) -> Result<DiffModule, CliError> {
        let j: ModuleJson = self.json(path)?;
        module_from_json(&j).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
    }

    fn ledger(&mut self, path: &Path) -> Result<ClassLedger, CliError> {
        let j: LedgerJson = self.json(path)?;
        ledger_from_json(&j).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
    }
}

fn write_file<T: serde::Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    std::fs::write(path, to_canonical(value)).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Inline certificate, or a reference to the file it was written to.
fn certificate_field(cert: &IsoCertificate, file: Option<&Path>) -> Result<Value, CliError> {
    let j = certificate_to_json(cert);
    match file {
        Some(path) => {
            write_file(path, &j)?;
            Ok(json!({ "file": path.display().to_string() }))
        }
        None => Ok(serde_json::to_value(j).expect("plain data")),
    }
}

fn constant_matrix(m: &DiffModule) -> Result<RatMat, CliError> {
    m.matrix().to_ratmat().ok_or_else(|| input("module matrix is not constant"))
}

pub fn run(cli: &Cli, args: Vec<String>) -> (Result<Report, CliError>, u8) {
    let started = Instant::now();
    let mut inputs = Inputs::default();
    let mut settings = Settings { deg_cap: cli.deg_cap, trials: cli.trials, seed: cli.seed };
    let outcome = dispatch(cli, &mut inputs, &mut settings);
    match outcome {
        Ok(o) => {
            let mut timing = json!({ "total_ms": millis(started.elapsed()) });
            if let Value::Object(extra) = o.timing {
                timing.as_object_mut().expect("object").extend(extra);
            }
            let report = Report {
                command: args,
                inputs_sha256: inputs_digest(&inputs.seen),
                verdict: o.verdict,
                settings,
                defaults: Defaults::default(),
                payload: o.payload,
                timing,
            };
            (Ok(report), o.exit)
        }
        Err(e) => {
            let code = match e {
                CliError::Input(_) => EXIT_INPUT,
                CliError::Internal(_) => EXIT_INTERNAL,
            };
            (Err(e), code)
        }
    }
}

fn dispatch(cli: &Cli, inputs: &mut Inputs, settings: &mut Settings) -> Result<Outcome, CliError> {
    let cap = cli.deg_cap;
    match &cli.command {
        Command::Hom { source, target, output } => {
            let s = inputs.module(source)?;
            let t = inputs.module(target)?;
            let h = hom_space(&s, &t, cap).map_err(input)?;
            let dims = hom_dims(&s, &t, &[h.deg_cap, h.deg_cap + STABILIZATION_STEP]).map_err(input)?;
            let j = hom_to_json(&h);
            if let Some(path) = output {
                write_file(path, &j)?;
            }
            let payload = json!({
                "dim": h.dim(),
                "deg_cap": h.deg_cap,
                "complete": h.complete,
                "stable": dims[0] == dims[1],
                "dims_at_caps": [[h.deg_cap, dims[0]], [h.deg_cap + STABILIZATION_STEP, dims[1]]],
                "basis": j.basis,
            });
            Ok(Outcome::definitive(format!("HOM_DIM {}", h.dim()), payload))
        }
        Command::Trivial { module, cert } => {
            let m = inputs.module(module)?;
            match is_trivial(&m, cap) {
                TrivialityResult::Trivial { basis, certificate } => {
                    let det = basis.determinant();
                    let payload = json!({
                        "basis": polymat_to_json(&basis),
                        "det": poly_to_json(&det),
                        "certificate": certificate_field(&certificate, cert.as_deref())?,
                    });
                    Ok(Outcome::definitive("TRIVIAL", payload))
                }
                TrivialityResult::NotTrivial { constants_dim, rank, deg_cap, stable, proven } => {
                    let payload = json!({
                        "constants_dim": constants_dim,
                        "rank": rank,
                        "deg_cap": deg_cap,
                        "stable": stable,
                        "proven": proven,
                    });
                    if proven || stable {
                        let scope = if proven { String::new() } else { format!(" (degree cap {deg_cap})") };
                        Ok(Outcome::definitive(
                            format!("NOT_TRIVIAL: constants dimension {constants_dim} < rank {rank}{scope}"),
                            payload,
                        ))
                    } else {
                        Ok(Outcome::unknown(
                            format!("UNKNOWN: constants still growing at degree cap {deg_cap}"),
                            payload,
                        ))
                    }
                }
            }
        }
        Command::Core { module, output, cert } => {
            let m = inputs.module(module)?;
            let d = core(&m, cap);
            let j = core_to_json(&d);
            if let Some(path) = output {
                write_file(path, &j)?;
            }
            let payload = json!({
                "core": j.core,
                "multiplicity": d.multiplicity,
                "certificate": certificate_field(&d.certificate, cert.as_deref())?,
            });
            Ok(Outcome::definitive(format!("CORE rank {} multiplicity {}", d.core.rank(), d.multiplicity), payload))
        }
        Command::Iso { a, b, cert } => {
            let p = inputs.module(a)?;
            let q = inputs.module(b)?;
            p.same_ring(&q).map_err(input)?;
            if p.ring() == DiffRing::ConstZero && p.rank() == q.rank() {
                return similarity(&p, &q, cert.as_deref());
            }
            match iso_search(&p, &q, cli.trials, cli.seed, cap).map_err(input)? {
                IsoVerdict::Iso(c) => {
                    Ok(Outcome::definitive("ISO", json!({ "certificate": certificate_field(&c, cert.as_deref())? })))
                }
                IsoVerdict::NotIso(w) => Ok(Outcome::definitive(
                    format!("NOT_ISO: {w}"),
                    json!({ "invariant": format!("{:?}", w.invariant), "deg_cap": w.deg_cap, "proven": w.proven }),
                )),
                IsoVerdict::Unknown { trials } => Ok(Outcome::unknown(
                    format!("UNKNOWN: no isomorphism found in {trials} trials"),
                    json!({ "trials": trials }),
                )),
            }
        }
        Command::Rcf { module, output } => {
            let m = inputs.module(module)?;
            let a = constant_matrix(&m)?;
            let (form, c) = rcf(&a).map_err(input)?;
            let factors = invariant_factors(&a).map_err(input)?;
            if let Some(path) = output {
                let fm = DiffModule::new(m.ring(), PolyMat::from_ratmat(&form)).map_err(|e| CliError::Internal(e.to_string()))?;
                write_file(path, &module_to_json(&fm))?;
            }
            let shown: Vec<String> = factors.iter().map(|f| f.to_string()).collect();
            let payload = json!({
                "form": ratmat_to_json(&form),
                "invariant_factors": factors.iter().map(poly_to_json).collect::<Vec<_>>(),
                "transform": ratmat_to_json(&c.transform),
                "inverse": ratmat_to_json(&c.inverse),
            });
            Ok(Outcome::definitive(format!("RCF invariant factors [{}]", shown.join(", ")), payload))
        }
        Command::Monoid { op } => monoid(op, cli, inputs, settings),
        Command::Suite { size } => {
            let cfg = SuiteConfig { seed: cli.seed, size: *size, deg_cap: cap, trials: cli.trials };
            let reports = run_all_with(&cfg, |r| {
                eprintln!("{}", r.line());
                for d in &r.details {
                    eprintln!("    {d}");
                }
            });
            let passed = reports.iter().filter(|r| r.ok()).count();
            let timing = json!({
                "criteria_ms": reports.iter().map(|r| json!([r.id, millis(r.elapsed)])).collect::<Vec<_>>(),
            });
            // Pass/fail against time limits depends on the machine, so the
            // deterministic part of the report records counts only.
            let payload = json!({ "size": size, "criteria": reports });
            let all = reports.len();
            let verdict = if passed == all {
                format!("SUITE PASS {passed}/{all}")
            } else {
                format!("SUITE FAIL {passed}/{all}")
            };
            let exit = if passed == all { 0 } else { EXIT_INTERNAL };
            Ok(Outcome { verdict, payload, exit, timing })
        }
    }
}

fn similarity(p: &DiffModule, q: &DiffModule, cert: Option<&Path>) -> Result<Outcome, CliError> {
    let a = constant_matrix(p)?;
    let b = constant_matrix(q)?;
    match similar(&a, &b).map_err(input)? {
        SimilarityVerdict::Similar(c) => {
            let iso = IsoCertificate::new(
                p.clone(),
                q.clone(),
                PolyMat::from_ratmat(&c.transform),
                PolyMat::from_ratmat(&c.inverse),
            )
            .map_err(|e| CliError::Internal(format!("similarity certificate: {e}")))?;
            Ok(Outcome::definitive("ISO", json!({ "certificate": certificate_field(&iso, cert)? })))
        }
        SimilarityVerdict::NotSimilar { source_factors, target_factors } => Ok(Outcome::definitive(
            "NOT_ISO: invariant factors differ",
            json!({
                "source_factors": source_factors.iter().map(poly_to_json).collect::<Vec<_>>(),
                "target_factors": target_factors.iter().map(poly_to_json).collect::<Vec<_>>(),
            }),
        )),
    }
}

fn monoid(op: &MonoidCommand, cli: &Cli, inputs: &mut Inputs, settings: &mut Settings) -> Result<Outcome, CliError> {
    match op {
        MonoidCommand::New { ledger, ring } => {
            let ring: DiffRing = ring.parse().map_err(input)?;
            if ledger.exists() {
                return Err(CliError::Input(format!("{}: already exists; ledgers are append-only", ledger.display())));
            }
            let l = ClassLedger::new(ring, cli.deg_cap);
            write_file(ledger, &ledger_to_json(&l))?;
            Ok(Outcome::definitive(format!("LEDGER created ({ring}, deg_cap {})", cli.deg_cap), json!({})))
        }
        MonoidCommand::AddModule { ledger, name, module } => {
            let mut l = inputs.ledger(ledger)?;
            settings.deg_cap = l.deg_cap();
            let m = inputs.module(module)?;
            let entry = l.class_of(&m, name).map_err(input)?;
            let verdict = format!("CLASS {name}: core rank {}", entry.core.rank());
            let payload = json!({ "name": name, "core": module_to_json(&entry.core) });
            write_file(ledger, &ledger_to_json(&l))?;
            Ok(Outcome::definitive(verdict, payload))
        }
        MonoidCommand::AddClasses { ledger, a, b, name } => {
            let mut l = inputs.ledger(ledger)?;
            settings.deg_cap = l.deg_cap();
            let entry = l.add_classes(a, b, name).map_err(input)?;
            let verdict = format!("CLASS {name} = {a} + {b}: core rank {}", entry.core.rank());
            let payload = json!({ "name": name, "core": module_to_json(&entry.core) });
            write_file(ledger, &ledger_to_json(&l))?;
            Ok(Outcome::definitive(verdict, payload))
        }
        MonoidCommand::Equal { ledger, a, b, cert } => {
            let l = inputs.ledger(ledger)?;
            settings.deg_cap = l.deg_cap();
            match l.classes_equal(a, b, cli.trials, cli.seed).map_err(input)? {
                ClassEquality::Equal(c) => {
                    Ok(Outcome::definitive("EQUAL", json!({ "certificate": certificate_field(&c, cert.as_deref())? })))
                }
                ClassEquality::NotEqual(w) => Ok(Outcome::definitive(
                    format!("NOT_EQUAL: {w}"),
                    json!({ "invariant": format!("{:?}", w.invariant), "deg_cap": w.deg_cap, "proven": w.proven }),
                )),
                ClassEquality::Unknown => Ok(Outcome::unknown(
                    format!("UNKNOWN: no isomorphism of cores found in {} trials", cli.trials),
                    json!({ "trials": cli.trials }),
                )),
            }
        }
        MonoidCommand::IsInvertible { ledger, name } => {
            let mut l = inputs.ledger(ledger)?;
            settings.deg_cap = l.deg_cap();
            let unit = l.is_invertible_class(name).map_err(input)?;
            let provenance = l.get(name).expect("just checked").provenance.clone();
            write_file(ledger, &ledger_to_json(&l))?;
            let verdict = if unit { "INVERTIBLE" } else { "NOT_INVERTIBLE" };
            Ok(Outcome::definitive(verdict, json!({ "name": name, "provenance": provenance })))
        }
        MonoidCommand::Report { ledger } => {
            let l = inputs.ledger(ledger)?;
            settings.deg_cap = l.deg_cap();
            let mut scratch = l.clone();
            let mut rows = Vec::new();
            let mut zeros = 0;
            for e in l.entries() {
                let zero = l.is_zero_class(&e.name).map_err(input)?;
                let unit = scratch.is_invertible_class(&e.name).map_err(input)?;
                zeros += usize::from(zero);
                rows.push(json!({
                    "name": e.name,
                    "core_rank": e.core.rank(),
                    "zero": zero,
                    "invertible": unit,
                    "provenance": e.provenance,
                }));
            }
            let verdict = format!("LEDGER {} classes, {zeros} zero", rows.len());
            Ok(Outcome::definitive(verdict, json!({ "ring": l.ring().tag(), "entries": rows })))
        }
    }
}

/// Parses the process arguments, runs the command and prints the verdict
/// line and report.
pub fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { 0 });
        }
    };
    let (result, code) = match std::panic::catch_unwind(|| run(&cli, args)) {
        Ok(r) => r,
        Err(_) => return ExitCode::from(EXIT_INTERNAL),
    };
    match result {
        Ok(report) => {
            println!("{}", report.verdict);
            print!("{}", to_canonical(&report));
        }
        Err(CliError::Input(m)) => eprintln!("error: {m}"),
        Err(CliError::Internal(m)) => eprintln!("internal error: {m}"),
    }
    ExitCode::from(code)
}
