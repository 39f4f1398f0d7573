//! Young diagrams, the fusion rule for the vector representation, Bratteli
//! diagrams, multiplicity and dimension counts, and quantum dimensions.

pub mod bratteli;
pub mod counting;
pub mod qdim;
pub mod young;

pub use bratteli::{bratteli, fusion_step, row_limit, BratteliGraph};
pub use counting::{
    binomial, end_dim, end_dim_breakdown, end_dim_formula, end_dim_paths, factorial, falling,
    hook_dim, involution_number, multiplicity, multiplicity_formula, wb_dim,
};
pub use qdim::{qdim_gl, qdim_sp};
pub use young::{partitions, YoungDiagram};
