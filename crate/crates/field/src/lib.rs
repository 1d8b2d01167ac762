//! Exact arithmetic for the parameter fields used by the Kummer construction.
//!
//! The crate provides sparse multivariate polynomials over `Q` in a fixed
//! family of named indeterminates (`s`, `t`, `r`, plus auxiliary variables),
//! a multivariate GCD, and the fraction field [`RationalFunction`] with a
//! unique canonical form, so that equality of field elements is structural.

mod error;
pub mod gcd;
pub mod linalg;
mod monomial;
mod parse;
mod poly;
mod ratfun;
mod var;

pub use error::FieldError;
pub use monomial::Monomial;
pub use poly::{degree_cap, set_degree_cap, Poly};
pub use ratfun::{ParamGuard, RationalFunction};
pub use var::Var;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Convenience constructor for a rational number `n/d`.
///
/// Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
