//! Exact kernel for differential modules `(R^n, A)` over `Q[x]` with `d/dx`
//! and over `Q` with the zero derivation: hom spaces, constants, triviality,
//! certified isomorphisms, cores and free cancellation, and the projective
//! class monoid kept as a ledger of cores.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod cores;
pub mod diffmod;
pub mod diffring;
pub mod exactalg;
pub mod monoid;
pub mod samples;
pub mod zeroder;
