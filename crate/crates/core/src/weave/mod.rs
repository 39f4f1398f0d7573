//! Permutations, reduced words, coset representatives, ladder sets, the
//! spanning family, and the expression language for elements of `C_n`.

pub mod expr;
pub mod family;
pub mod perm;

pub use expr::{parse_expr, theta, AlgebraExpr, Expr, Gen, Variant};
pub use family::{family_block, hecke_basis, ladder_set, spanning_family, FamilyElement};
pub use perm::{min_coset_reps, CosetKind, Permutation};
