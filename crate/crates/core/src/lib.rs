//! Verification and construction toolkit for almost-flat Weyl–Heisenberg SIC
//! fiducials in odd dimension.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, parallel search
//! and the command line live in the `flatsic` crate.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod ansatz;
pub mod dim;
pub mod error;
pub mod known;
pub mod legendre;
pub mod polysys;
pub mod search;
pub mod verify;
pub mod wh;

pub use dim::Dim;
pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use wh::{CVec, Form, PhaseConstants, WeylHeisenberg};
