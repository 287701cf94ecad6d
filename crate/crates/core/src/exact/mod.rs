//! Exact arithmetic: rationals, cyclotomic fields Q(ζ_n), prime fields and
//! their quadratic extensions, and the specialization maps between them.

pub mod cyclotomic;
pub mod fp;
pub mod linalg;
pub mod matrix;
mod parse;

pub use cyclotomic::{cyc_arith, cyclotomic_polynomial, euler_phi, lcm, CycOp, Cyclotomic, MAX_ORDER};
pub use fp::{embed_mod_p, Embedding, FieldElem, Fp2Elem, PrimeFieldElem};
pub use matrix::CycMatrix;

/// Arbitrary-precision rational, always kept in lowest terms.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("cyclotomic orders differ ({0} vs {1})")]
    MismatchedOrders(u32, u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {prime} is not congruent to 1 mod {order}")]
    PrimeNotCongruent { prime: u64, order: u32 },
    #[error("{root} does not have multiplicative order {order}")]
    WrongRootOrder { root: u64, order: u32 },
    #[error("a denominator is divisible by {0}")]
    DenominatorDivisibleByPrime(u64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("bad shape: {0}")]
    Shape(String),
}
