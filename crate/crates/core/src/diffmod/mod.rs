//! Differential modules `(R^n, A)` with `D_A(v) = v' + A v`, their
//! homomorphisms, constants, triviality and isomorphism certificates.
//!
//! A matrix `T` is a differential homomorphism `(R^n, A) -> (R^m, B)` when
//! `T' = T A - B T`.

mod cert;
mod hom;
mod iso;
mod module;
mod scramble;
mod trivial;

pub use cert::{CertificateError, IsoCertificate};
pub use hom::{
    constants, constants_space, hom_dims, hom_space, stabilized_hom_space, HomSpace, DEFAULT_DEG_CAP,
    STABILIZATION_STEP,
};
pub use iso::{iso_search, seeded_rng, Invariant, IsoVerdict, NonIsoWitness, DEFAULT_TRIALS, SAMPLE_HEIGHT};
pub use module::{verify_hom, DiffModError, DiffModule};
pub use scramble::{random_unimodular, scramble, scramble_with, scramble_with_params, ScrambleError, ScrambleParams};
pub use trivial::{is_trivial, TrivialityResult};
