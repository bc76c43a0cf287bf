//! Exact arithmetic: Laurent polynomials, polynomials and rational functions in the
//! root variables, and p-modular helpers.

mod laurent;
mod pmod;
mod poly;
mod ratfunc;

pub use laurent::Laurent;
pub use pmod::{bits, is_integer, rank_q, PModular};
pub use poly::{var_name, Mono, Poly, MAX_VARS};
pub use ratfunc::RatFunc;

use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt::Debug;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot invert non-root element {0}")]
    DivisionByNonRoot(String),
    #[error("denominator factor {0} vanishes under parabolic specialisation")]
    NotInRI(String),
    #[error("expected a constant, got {0}")]
    NotConstant(String),
    #[error("{0} is not p-integral")]
    NotIntegral(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
}

/// Entries of localised matrices: symbolic rational functions, or rationals
/// after evaluating at `(1, ..., 1)`.
pub trait Coeff: Clone + Debug + PartialEq + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self, ArithError>;
    fn as_constant(&self) -> Option<BigRational>;
    /// Converts a symbolic entry (already twisted and specialised) into this ring.
    fn from_ratfunc(f: &RatFunc) -> Result<Self, ArithError>;
    fn size_bits(&self) -> u64;
    fn to_text(&self) -> String;
    fn from_text(s: &str) -> Option<Self>;

    fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| One::is_one(&c))
    }
}

impl Coeff for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn one() -> Self {
        RatFunc::one()
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        RatFunc::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        RatFunc::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        RatFunc::mul(self, other)
    }
    fn neg(&self) -> Self {
        RatFunc::neg(self)
    }
    fn inv(&self) -> Result<Self, ArithError> {
        RatFunc::inv(self)
    }
    fn as_constant(&self) -> Option<BigRational> {
        RatFunc::as_constant(self)
    }
    fn from_ratfunc(f: &RatFunc) -> Result<Self, ArithError> {
        Ok(f.clone())
    }
    fn size_bits(&self) -> u64 {
        self.max_coeff_bits()
    }
    fn to_text(&self) -> String {
        RatFunc::to_text(self)
    }
    fn from_text(s: &str) -> Option<Self> {
        RatFunc::from_text(s)
    }
}

impl Coeff for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Result<Self, ArithError> {
        if Zero::is_zero(self) {
            Err(ArithError::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }
    fn as_constant(&self) -> Option<BigRational> {
        Some(self.clone())
    }
    fn from_ratfunc(f: &RatFunc) -> Result<Self, ArithError> {
        f.eval_ones()
    }
    fn size_bits(&self) -> u64 {
        bits(self)
    }
    fn to_text(&self) -> String {
        self.to_string()
    }
    fn from_text(s: &str) -> Option<Self> {
        s.parse().ok()
    }
}
