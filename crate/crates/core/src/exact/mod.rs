//! Arbitrary-precision integer primitives and the exact comparison engine
//! for rational-exponent threshold expressions.
//!
//! Everything here is pure and deterministic; results never depend on
//! floating point.

mod factor;
mod power_product;
mod roots;

pub use factor::{factorize, squarefree_core, Factorization};
pub use power_product::{
    max_satisfying, Exponent, PowerProduct, SearchDirection,
};
pub use roots::{ceil_sqrt, iroot, is_perfect_square, isqrt};

use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ExactError {
    #[error("root of negative input {n}")]
    NegativeRoot { n: BigInt },
    #[error("zeroth root is undefined")]
    ZeroRootDegree,
    #[error("input must be non-zero")]
    ZeroInput,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("power-product factor {value} is below 1")]
    FactorBelowOne { value: BigInt },
    #[error("template is not monotone over the search range")]
    NonMonotoneTemplate,
}
