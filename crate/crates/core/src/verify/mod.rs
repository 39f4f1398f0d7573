//! Executable checks of the algebra's identities and the rank certification engine.

mod basis;
mod classical;
mod compression;
mod dimension;
mod linalg;
mod markov;
mod relations;
mod report;
mod variant;

pub use basis::{basis_certificates, basis_rank, basis_suite, BasisOptions};
pub use classical::{classical_limit_suite, closure_rank};
pub use compression::compression_suite;
pub use dimension::dimension_suite;
pub use linalg::{rank, Echelon};
pub use markov::{markov_suite, random_points, weight_suite, weight_witness, MarkovOptions};
pub use relations::relations_suite;
pub use report::{Claim, RankCertificate, Strategy, SuiteReport};
pub use variant::variant_iso_suite;
