//! Exact rational arithmetic and the algebra of binary forms: gcd,
//! squarefree decomposition, irreducible factorization over `Q`, and
//! valuations at a place of `P^1`.

mod factor;
mod form;
mod modp;
mod upoly;
mod zassenhaus;

use std::fmt;

use thiserror::Error;

pub use factor::{factor_over_rationals, gcd, squarefree_decomposition, valuation, Factorization};
pub(crate) use factor::valuation_at_place;
pub use form::BinaryForm;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// A non-negative order of vanishing, or infinity for the zero form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Order {
    Finite(u32),
    Infinity,
}

impl Order {
    pub fn finite(self) -> Option<u32> {
        match self {
            Order::Finite(k) => Some(k),
            Order::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Order::Infinity)
    }

    /// `k * self`, saturating at infinity.
    pub fn times(self, k: u32) -> Order {
        match self {
            Order::Finite(v) => Order::Finite(v * k),
            Order::Infinity => Order::Infinity,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(k) => write!(f, "{k}"),
            Order::Infinity => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FormError {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("operation undefined on the zero form")]
    ZeroForm,
    #[error("gcd of two zero forms")]
    BothZero,
    #[error("valuation requires an irreducible primitive nonconstant form, got {0}")]
    NotAPlace(String),
}
