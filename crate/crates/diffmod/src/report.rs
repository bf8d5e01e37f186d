//! The JSON report printed by every command.

use std::time::Duration;

use diffmod_core::diffmod::{DEFAULT_DEG_CAP, DEFAULT_TRIALS, SAMPLE_HEIGHT};
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct Defaults {
    pub deg_cap: usize,
    pub trials: usize,
    pub sample_height: i64,
}

impl Default for Defaults {
    fn default() -> Self {
        Defaults { deg_cap: DEFAULT_DEG_CAP, trials: DEFAULT_TRIALS, sample_height: SAMPLE_HEIGHT }
    }
}

/// Values actually used by this run.
#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct Settings {
    pub deg_cap: usize,
    pub trials: usize,
    pub seed: u64,
}

/// Everything except `timing` is a deterministic function of the command
/// line and the input files.
#[derive(Serialize, Debug, Clone)]
pub struct Report {
    pub command: Vec<String>,
    pub inputs_sha256: String,
    pub verdict: String,
    pub settings: Settings,
    pub defaults: Defaults,
    pub payload: Value,
    pub timing: Value,
}

/// SHA-256 over the inputs, each prefixed by its length so that
/// concatenations cannot collide.
pub fn inputs_digest(inputs: &[Vec<u8>]) -> String {
    let mut h = Sha256::new();
    for bytes in inputs {
        h.update((bytes.len() as u64).to_le_bytes());
        h.update(bytes);
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

pub fn millis(d: Duration) -> u64 {
    d.as_millis().try_into().unwrap_or(u64::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_is_length_prefixed() {
        let a = inputs_digest(&[b"ab".to_vec(), b"c".to_vec()]);
        let b = inputs_digest(&[b"a".to_vec(), b"bc".to_vec()]);
        assert_ne!(a, b);
        assert_eq!(a.len(), 64);
    }
}
