//! JSON file formats.
//!
//! Rationals are strings `"p/q"` (`"p"` when `q = 1`), polynomials are
//! ascending coefficient arrays, matrices are row-major nested arrays. Output
//! is canonical, so parsing and re-serializing a canonical file reproduces it
//! byte for byte.

use std::path::Path;

use diffmod_core::cores::CoreDecomposition;
use diffmod_core::diffmod::{DiffModule, HomSpace, IsoCertificate};
use diffmod_core::diffring::DiffRing;
use diffmod_core::exactalg::{Poly, PolyMat, Rat, RatMat};
use diffmod_core::monoid::{ClassEntry, ClassLedger};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Invalid(String),
}

fn invalid(msg: impl Into<String>) -> FormatError {
    FormatError::Invalid(msg.into())
}

pub type PolyJson = Vec<String>;
pub type MatrixJson = Vec<Vec<PolyJson>>;

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ModuleJson {
    pub ring: String,
    pub rank: usize,
    pub matrix: MatrixJson,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct CertificateJson {
    pub forward: MatrixJson,
    pub backward: MatrixJson,
    pub source: ModuleJson,
    pub target: ModuleJson,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct CoreJson {
    pub input: ModuleJson,
    pub core: ModuleJson,
    pub multiplicity: usize,
    pub certificate: CertificateJson,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct HomBasisJson {
    pub source: ModuleJson,
    pub target: ModuleJson,
    pub deg_cap: usize,
    pub complete: bool,
    pub basis: Vec<MatrixJson>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct EntryJson {
    pub name: String,
    pub core: ModuleJson,
    pub provenance: Vec<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct LedgerJson {
    pub ring: String,
    pub deg_cap: usize,
    pub entries: Vec<EntryJson>,
}

pub fn rat_to_json(r: &Rat) -> String {
    r.to_string()
}

pub fn rat_from_json(s: &str) -> Result<Rat, FormatError> {
    s.parse().map_err(|e| invalid(format!("{e}")))
}

pub fn poly_to_json(p: &Poly) -> PolyJson {
    p.coeffs().iter().map(rat_to_json).collect()
}

pub fn poly_from_json(p: &[String]) -> Result<Poly, FormatError> {
    Ok(Poly::from_coeffs(p.iter().map(|s| rat_from_json(s)).collect::<Result<_, _>>()?))
}

pub fn polymat_to_json(m: &PolyMat) -> MatrixJson {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| poly_to_json(&m[(i, j)])).collect()).collect()
}

/// `cols` fixes the width when there are no rows.
pub fn polymat_from_json(rows: &MatrixJson, cols: usize) -> Result<PolyMat, FormatError> {
    if let Some(bad) = rows.iter().position(|r| r.len() != cols) {
        return Err(invalid(format!("row {bad} has {} entries, expected {cols}", rows[bad].len())));
    }
    let entries = rows.iter().flatten().map(|p| poly_from_json(p)).collect::<Result<Vec<_>, _>>()?;
    Ok(PolyMat::new(rows.len(), cols, entries))
}


pub fn ratmat_to_json(m: &RatMat) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| rat_to_json(&m[(i, j)])).collect()).collect()
}

pub fn module_to_json(m: &DiffModule) -> ModuleJson {
    ModuleJson { ring: m.ring().tag().to_string(), rank: m.rank(), matrix: polymat_to_json(m.matrix()) }
}

pub fn module_from_json(j: &ModuleJson) -> Result<DiffModule, FormatError> {
    let ring: DiffRing = j.ring.parse().map_err(|e| invalid(format!("{e}")))?;
    if j.matrix.len() != j.rank {
        return Err(invalid(format!("rank {} but matrix has {} rows", j.rank, j.matrix.len())));
    }
    let m = polymat_from_json(&j.matrix, j.rank)?;
    DiffModule::new(ring, m).map_err(|e| invalid(format!("{e}")))
}

pub fn certificate_to_json(c: &IsoCertificate) -> CertificateJson {
    CertificateJson {
        forward: polymat_to_json(c.forward()),
        backward: polymat_to_json(c.backward()),
        source: module_to_json(c.source()),
        target: module_to_json(c.target()),
    }
}

/// Parses and re-verifies a certificate.
pub fn certificate_from_json(j: &CertificateJson) -> Result<IsoCertificate, FormatError> {
    let source = module_from_json(&j.source)?;
    let target = module_from_json(&j.target)?;
    let forward = polymat_from_json(&j.forward, source.rank())?;
    let backward = polymat_from_json(&j.backward, target.rank())?;
    IsoCertificate::new(source, target, forward, backward).map_err(|e| invalid(format!("certificate: {e}")))
}

pub fn core_to_json(d: &CoreDecomposition) -> CoreJson {
    CoreJson {
        input: module_to_json(&d.input),
        core: module_to_json(&d.core),
        multiplicity: d.multiplicity,
        certificate: certificate_to_json(&d.certificate),
    }
}

pub fn core_from_json(j: &CoreJson) -> Result<CoreDecomposition, FormatError> {
    let input = module_from_json(&j.input)?;
    let core = module_from_json(&j.core)?;
    let certificate = certificate_from_json(&j.certificate)?;
    let padded = core
        .direct_sum(&DiffModule::trivial(core.ring(), j.multiplicity))
        .map_err(|e| invalid(format!("{e}")))?;
    if certificate.source() != &input || certificate.target() != &padded {
        return Err(invalid("certificate does not connect input to core plus trivial summands"));
    }
    Ok(CoreDecomposition { input, core, multiplicity: j.multiplicity, certificate })
}

pub fn hom_to_json(h: &HomSpace) -> HomBasisJson {
    HomBasisJson {
        source: module_to_json(&h.source),
        target: module_to_json(&h.target),
        deg_cap: h.deg_cap,
        complete: h.complete,
        basis: h.basis.iter().map(polymat_to_json).collect(),
    }
}

pub fn ledger_to_json(l: &ClassLedger) -> LedgerJson {
    LedgerJson {
        ring: l.ring().tag().to_string(),
        deg_cap: l.deg_cap(),
        entries: l
            .entries()
            .iter()
            .map(|e| EntryJson { name: e.name.clone(), core: module_to_json(&e.core), provenance: e.provenance.clone() })
            .collect(),
    }
}

pub fn ledger_from_json(j: &LedgerJson) -> Result<ClassLedger, FormatError> {
    let ring: DiffRing = j.ring.parse().map_err(|e| invalid(format!("{e}")))?;
    let entries = j
        .entries
        .iter()
        .map(|e| Ok(ClassEntry { name: e.name.clone(), core: module_from_json(&e.core)?, provenance: e.provenance.clone() }))
        .collect::<Result<Vec<_>, FormatError>>()?;
    ClassLedger::from_entries(ring, j.deg_cap, entries).map_err(|e| invalid(format!("{e}")))
}

/// Canonical text: pretty-printed with a trailing newline.
pub fn to_canonical<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, FormatError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| FormatError::Io { path: path.display().to_string(), source })?;
    Ok(serde_json::from_str(&text)?)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), FormatError> {
    std::fs::write(path, to_canonical(value))
        .map_err(|source| FormatError::Io { path: path.display().to_string(), source })
}

pub fn read_module(path: &Path) -> Result<DiffModule, FormatError> {
    module_from_json(&read_json(path)?)
}

pub fn read_ledger(path: &Path) -> Result<ClassLedger, FormatError> {
    ledger_from_json(&read_json(path)?)
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn module_round_trip() {
        let text = r#"{
  "ring": "poly_dx",
  "rank": 2,
  "matrix": [
    [
      [],
      [
        "1/2",
        "-3"
      ]
    ],
    [
      [
        "7"
      ],
      []
    ]
  ]
}
"#;
        let j: ModuleJson = serde_json::from_str(text).unwrap();
        let m = module_from_json(&j).unwrap();
        assert_eq!(m.matrix()[(0, 1)], Poly::from_coeffs(vec![Rat::new(1, 2), Rat::from_int(-3)]));
        assert_eq!(to_canonical(&module_to_json(&m)), text);
    }

    #[test]
    fn rejects_bad_modules() {
        let bad = |s: &str| {
            serde_json::from_str::<ModuleJson>(s).map_err(FormatError::from).and_then(|j| module_from_json(&j)).is_err()
        };
        assert!(bad(r#"{"ring":"poly_dx","rank":2,"matrix":[[[]]]}"#));
        assert!(bad(r#"{"ring":"q_x","rank":1,"matrix":[[[]]]}"#));
        assert!(bad(r#"{"ring":"const_zero","rank":1,"matrix":[[["0","1"]]]}"#));
        assert!(bad(r#"{"ring":"poly_dx","rank":1,"matrix":[[["1/0"]]]}"#));
        assert!(bad(r#"{"ring":"poly_dx","rank":1,"matrix":[[["1"]]],"extra":1}"#));
        assert!(bad(r#"{"ring":"poly_dx","rank":1}"#));
    }

    #[test]
    fn non_canonical_input_is_normalized() {
        let j: ModuleJson =
            serde_json::from_str(r#"{"ring":"poly_dx","rank":1,"matrix":[[["2/4","0"]]]}"#).unwrap();
        let m = module_from_json(&j).unwrap();
        assert_eq!(module_to_json(&m).matrix, vec![vec![vec!["1/2".to_string()]]]);
    }
}
