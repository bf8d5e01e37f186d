//! The projective class monoid as a ledger of core representatives.
//!
//! Over rings whose constants form a field, classes correspond one-to-one
//! with isomorphism classes of trivial-free modules, so each class is stored
//! by its core and addition is the core of the direct sum.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::cores::{core, is_trivial_free};
use crate::diffmod::{iso_search, DiffModError, DiffModule, IsoCertificate, IsoVerdict, NonIsoWitness};
use crate::diffring::DiffRing;

const UNITS_NOTE: &str =
    "units: invertible iff zero class (units match projective classes over the constants Q, all of which are free)";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassEntry {
    pub name: String,
    /// Trivial-free representative; rank zero is the zero class.
    pub core: DiffModule,
    pub provenance: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LedgerError {
    DuplicateName(String),
    UnknownName(String),
    RingMismatch { ledger: DiffRing, module: DiffRing },
    NotTrivialFree(String),
    Module(DiffModError),
}

impl fmt::Display for LedgerError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LedgerError::DuplicateName(n) => write!(f, "class {n:?} already exists"),
            LedgerError::UnknownName(n) => write!(f, "no class named {n:?}"),
            LedgerError::RingMismatch { ledger, module } => {
                write!(f, "ledger is over {ledger} but the module is over {module}")
            }
            LedgerError::NotTrivialFree(n) => write!(f, "stored core of {n:?} is not trivial-free"),
            LedgerError::Module(e) => write!(f, "{e}"),
        }
    }
}

impl From<DiffModError> for LedgerError {
    fn from(e: DiffModError) -> Self {
        LedgerError::Module(e)
    }
}

#[derive(Clone, Debug)]
pub enum ClassEquality {
    Equal(IsoCertificate),
    NotEqual(NonIsoWitness),
    Unknown,
}

/// Append-only collection of named classes over one ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassLedger {
    ring: DiffRing,
    deg_cap: usize,
    entries: Vec<ClassEntry>,
}

impl ClassLedger {
    pub fn new(ring: DiffRing, deg_cap: usize) -> Self {
        ClassLedger { ring, deg_cap, entries: Vec::new() }
    }

    /// Rebuilds a ledger from stored entries, re-checking that every core is
    /// over the ledger's ring and trivial-free.
    pub fn from_entries(ring: DiffRing, deg_cap: usize, entries: Vec<ClassEntry>) -> Result<Self, LedgerError> {
        let mut ledger = ClassLedger::new(ring, deg_cap);
        for e in entries {
            if e.core.ring() != ring {
                return Err(LedgerError::RingMismatch { ledger: ring, module: e.core.ring() });
            }
            if ledger.get(&e.name).is_some() {
                return Err(LedgerError::DuplicateName(e.name));
            }
            if !is_trivial_free(&e.core, deg_cap) {
                return Err(LedgerError::NotTrivialFree(e.name));
            }
            ledger.entries.push(e);
        }
        Ok(ledger)
    }

    pub fn ring(&self) -> DiffRing {
        self.ring
    }

    pub fn deg_cap(&self) -> usize {
        self.deg_cap
    }

    pub fn entries(&self) -> &[ClassEntry] {
        &self.entries
    }

    pub fn get(&self, name: &str) -> Option<&ClassEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    fn entry(&self, name: &str) -> Result<&ClassEntry, LedgerError> {
        self.get(name).ok_or_else(|| LedgerError::UnknownName(name.to_string()))
    }

    fn push(&mut self, entry: ClassEntry) -> Result<&ClassEntry, LedgerError> {
        if self.get(&entry.name).is_some() {
            return Err(LedgerError::DuplicateName(entry.name));
        }
        self.entries.push(entry);
        Ok(self.entries.last().expect("just pushed"))
    }

    /// Stores the class of `p` under `name`, represented by its core.
    pub fn class_of(&mut self, p: &DiffModule, name: &str) -> Result<&ClassEntry, LedgerError> {
        if p.ring() != self.ring {
            return Err(LedgerError::RingMismatch { ledger: self.ring, module: p.ring() });
        }
        if self.get(name).is_some() {
            return Err(LedgerError::DuplicateName(name.to_string()));
        }
        let d = core(p, self.deg_cap);
        let note = format!(
            "class_of: rank {} input, core rank {}, split {} trivial summands at deg_cap {}",
            p.rank(),
            d.core.rank(),
            d.multiplicity,
            self.deg_cap
        );
        self.push(ClassEntry { name: name.to_string(), core: d.core, provenance: alloc::vec![note] })
    }

    /// `[a] + [b] = [H(a + b)]`
    pub fn add_classes(&mut self, a: &str, b: &str, as_name: &str) -> Result<&ClassEntry, LedgerError> {
        if self.get(as_name).is_some() {
            return Err(LedgerError::DuplicateName(as_name.to_string()));
        }
        let sum = self.entry(a)?.core.direct_sum(&self.entry(b)?.core)?;
        let d = core(&sum, self.deg_cap);
        let note = format!("add_classes: core of {a} + {b}, split {} trivial summands", d.multiplicity);
        self.push(ClassEntry { name: as_name.to_string(), core: d.core, provenance: alloc::vec![note] })
    }

    pub fn is_zero_class(&self, a: &str) -> Result<bool, LedgerError> {
        Ok(self.entry(a)?.core.rank() == 0)
    }

    /// The only unit is the zero class; the reasoning is appended to the
    /// entry's provenance the first time it is asked.
    pub fn is_invertible_class(&mut self, a: &str) -> Result<bool, LedgerError> {
        let zero = self.is_zero_class(a)?;
        let entry = self.entries.iter_mut().find(|e| e.name == a).expect("checked above");
        if !entry.provenance.iter().any(|p| p == UNITS_NOTE) {
            entry.provenance.push(UNITS_NOTE.to_string());
        }
        Ok(zero)
    }

    /// Three-valued: `Unknown` is never a negative answer.
    pub fn classes_equal(&self, a: &str, b: &str, trials: usize, seed: u64) -> Result<ClassEquality, LedgerError> {
        let ea = self.entry(a)?;
        let eb = self.entry(b)?;
        if a == b {
            return Ok(ClassEquality::Equal(IsoCertificate::identity(&ea.core)));
        }
        Ok(match iso_search(&ea.core, &eb.core, trials, seed, self.deg_cap)? {
            IsoVerdict::Iso(c) => ClassEquality::Equal(c),
            IsoVerdict::NotIso(w) => ClassEquality::NotEqual(w),
            IsoVerdict::Unknown { .. } => ClassEquality::Unknown,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{Poly, PolyMat};

    fn poly_dx(rows: &[&[&[i64]]]) -> DiffModule {
        DiffModule::new(DiffRing::PolyDx, PolyMat::from_int_polys(rows)).unwrap()
    }

    fn ledger() -> ClassLedger {
        let mut l = ClassLedger::new(DiffRing::PolyDx, 32);
        l.class_of(&DiffModule::trivial(DiffRing::PolyDx, 3), "zero").unwrap();
        l.class_of(&poly_dx(&[&[&[1]]]), "one").unwrap();
        l.class_of(&poly_dx(&[&[&[], &[]], &[&[], &[1]]]), "mixed").unwrap();
        l.class_of(&poly_dx(&[&[&[0, 1]]]), "x").unwrap();
        l.class_of(&poly_dx(&[&[&[1, 1]]]), "x1").unwrap();
        l.class_of(&poly_dx(&[&[&[0, 0, 1]]]), "x2").unwrap();
        l.class_of(&poly_dx(&[&[&[], &[1]], &[&[], &[]]]), "jordan").unwrap();
        l
    }

    #[test]
    fn class_of_examples() {
        let l = ledger();
        assert_eq!(l.get("zero").unwrap().core.rank(), 0);
        assert_eq!(l.get("one").unwrap().core, poly_dx(&[&[&[1]]]));
        assert_eq!(l.get("mixed").unwrap().core, poly_dx(&[&[&[1]]]));
    }

    #[test]
    fn addition_examples() {
        let mut l = ledger();
        assert_eq!(l.add_classes("zero", "zero", "z2").unwrap().core.rank(), 0);
        assert_eq!(l.add_classes("one", "zero", "o2").unwrap().core, poly_dx(&[&[&[1]]]));
        let s = l.add_classes("x", "x1", "sum").unwrap().core.clone();
        assert_eq!(s.rank(), 2);
        assert!(is_trivial_free(&s, 32));
        assert_eq!(l.add_classes("x", "x1", "sum"), Err(LedgerError::DuplicateName("sum".into())));
        assert_eq!(l.add_classes("nope", "x", "q"), Err(LedgerError::UnknownName("nope".into())));
    }

    #[test]
    fn zero_and_units() {
        let mut l = ledger();
        assert!(l.is_zero_class("zero").unwrap());
        assert!(!l.is_zero_class("one").unwrap());
        assert!(l.is_zero_class("jordan").unwrap());
        assert!(l.is_invertible_class("zero").unwrap());
        assert!(!l.is_invertible_class("one").unwrap());
        assert!(!l.is_invertible_class("x").unwrap());
        assert!(!l.is_invertible_class("x").unwrap());
        assert_eq!(l.get("x").unwrap().provenance.iter().filter(|p| *p == UNITS_NOTE).count(), 1);
    }

    #[test]
    fn equality_examples() {
        let l = ledger();
        assert!(matches!(l.classes_equal("x", "x", 4, 0).unwrap(), ClassEquality::Equal(_)));
        assert!(matches!(l.classes_equal("x", "x2", 4, 0).unwrap(), ClassEquality::NotEqual(_)));
        assert!(matches!(l.classes_equal("mixed", "one", 4, 0).unwrap(), ClassEquality::Equal(_)));
    }

    #[test]
    fn ring_is_enforced() {
        let mut l = ClassLedger::new(DiffRing::PolyDx, 8);
        let z = DiffModule::rank_one(DiffRing::ConstZero, Poly::one()).unwrap();
        assert!(matches!(l.class_of(&z, "z"), Err(LedgerError::RingMismatch { .. })));
        let bad = ClassEntry { name: "t".into(), core: DiffModule::trivial(DiffRing::PolyDx, 1), provenance: Vec::new() };
        assert_eq!(
            ClassLedger::from_entries(DiffRing::PolyDx, 8, alloc::vec![bad]),
            Err(LedgerError::NotTrivialFree("t".into()))
        );
    }
}
