//! Exact scalars: ℚ(i), Laurent polynomials in `s = q^{1/2}`, and their
//! reduced quotients.

pub mod field;
pub mod gaussian;
pub mod laurent;
pub mod parse;
pub mod qnum;
pub mod ratfunc;

pub use field::{Field, PrimeField, Rationals, Symbolic};
pub use gaussian::GaussianRational;
pub use laurent::HalfLaurent;
pub use parse::parse_scalar;
pub use qnum::{bracket_pm, q_int, q_number, QNumber};
pub use ratfunc::RatFunc;
