//! The tensor representation on `V^{⊗n}`.

mod context;
mod eval;
mod generators;
mod local;
mod point;
mod sparse;

pub use context::{Fault, RepContext};
pub use generators::{
    build_e_r, build_g, build_scaled, build_skew_a, build_u, build_u12_u21_p, e_vector_power, embed,
    reversal_permutation, v0_vector, Side,
};
pub use local::{beta, c21, e_factor, local_e, local_u, local_u_plus, qdim_v, scale_divisor, weight_matrix, weights};
pub use sparse::{PointMatrix, SparseMat};
pub use eval::{evaluate_expr, Evaluator};
pub use point::{expr_word, family_word, Atom, PointRep};
