//! Centralizer algebras of quantum tensor powers: exact scalars, Young
//! diagram combinatorics, the explicit tensor representation, Markov traces
//! and verification suites.

pub mod error;
pub mod combin;
pub mod exact;
pub mod rep;
pub mod traces;
pub mod verify;
pub mod weave;

pub use error::{Error, Result};
