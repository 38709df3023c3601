use std::fmt;

use num_traits::Zero;

use crate::exact_forms::{
    factor_over_rationals, squarefree_decomposition, valuation_at_place, BinaryForm, Factorization,
    FormError, Order, Rational,
};
use crate::Error;

/// j-invariant of the generic fiber, as a function on the base.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum JInvariant {
    Constant(Rational),
    NonConstant,
}

impl JInvariant {
    pub fn is_constant(&self) -> bool {
        matches!(self, JInvariant::Constant(_))
    }

    pub fn value(&self) -> Option<&Rational> {
        match self {
            JInvariant::Constant(v) => Some(v),
            JInvariant::NonConstant => None,
        }
    }

    pub fn is_value(&self, v: i64) -> bool {
        self.value().is_some_and(|j| *j == Rational::from_integer(v.into()))
    }
}

impl fmt::Display for JInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JInvariant::Constant(v) => write!(f, "{v}"),
            JInvariant::NonConstant => write!(f, "nonconstant"),
        }
    }
}

/// A validated `w² = z³ + f4 z + f6` with its discriminant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeierstrassData {
    pub f4: BinaryForm,
    pub f6: BinaryForm,
    pub delta: BinaryForm,
    pub j: JInvariant,
    /// Irreducible factorization of `delta` over `Q`.
    pub delta_factors: Factorization,
}

fn check_degree(f: &BinaryForm, expected: usize) -> Result<(), Error> {
    if f.degree() != expected {
        return Err(Error::Form(FormError::DegreeMismatch { left: f.degree(), right: expected }));
    }
    Ok(())
}

fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

impl WeierstrassData {
    /// Validates the pair: nonzero discriminant and no place where
    /// `ord f4 >= 4` and `ord f6 >= 6` at once.
    pub fn new(f4: BinaryForm, f6: BinaryForm) -> Result<Self, Error> {
        let delta = discriminant(&f4, &f6)?;
        let j = j_invariant(&f4, &f6)?;
        let delta_factors = factor_over_rationals(&delta)?;
        for (place, _) in &delta_factors.factors {
            let v4 = valuation_at_place(&f4, place);
            let v6 = valuation_at_place(&f6, place);
            if v4 >= Order::Finite(4) && v6 >= Order::Finite(6) {
                return Err(Error::NonMinimalPlace { place: place.to_string() });
            }
        }
        Ok(WeierstrassData { f4, f6, delta, j, delta_factors })
    }
}

/// `Δ = -16 (4 f4³ + 27 f6²)`.
pub fn discriminant(f4: &BinaryForm, f6: &BinaryForm) -> Result<BinaryForm, Error> {
    check_degree(f4, 4)?;
    check_degree(f6, 6)?;
    let sum = f4.pow(3).scale(&rat(4)).try_add(&f6.pow(2).scale(&rat(27)))?;
    let delta = sum.scale(&rat(-16));
    if delta.is_zero() {
        return Err(Error::ZeroDiscriminant);
    }
    Ok(delta)
}

/// `j = 1728 · 4 f4³ / (4 f4³ + 27 f6²)`, constant exactly when `f4³` and
/// `f6²` are proportional.
pub fn j_invariant(f4: &BinaryForm, f6: &BinaryForm) -> Result<JInvariant, Error> {
    discriminant(f4, f6)?;
    if f4.is_zero() {
        return Ok(JInvariant::Constant(rat(0)));
    }
    if f6.is_zero() {
        return Ok(JInvariant::Constant(rat(1728)));
    }
    let num = f4.pow(3).scale(&rat(4));
    let den = num.try_add(&f6.pow(2).scale(&rat(27)))?;
    // num and den are both nonzero here; j is constant iff they are proportional.
    let pivot = den.coeffs().iter().position(|c| !c.is_zero()).expect("nonzero discriminant");
    let ratio = num.coeff(pivot) / den.coeff(pivot);
    if den.scale(&ratio) == num {
        Ok(JInvariant::Constant(ratio * rat(1728)))
    } else {
        Ok(JInvariant::NonConstant)
    }
}

/// Whether every root of `f6` over the algebraic closure has multiplicity
/// divisible by three.
pub fn cube_test(f6: &BinaryForm) -> Result<bool, Error> {
    let sf = squarefree_decomposition(f6)?;
    Ok(sf.factors.iter().all(|(_, m)| m % 3 == 0))
}
