use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::upoly::QPoly;
use super::{FormError, Order, Rational};

/// A homogeneous polynomial in `x, y` with an explicit degree.
///
/// Entry `i` of the coefficient vector multiplies `x^(degree - i) * y^i`.
/// The zero form keeps its declared degree so that sums and products of
/// forms stay homogeneous.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryForm {
    coeffs: Vec<Rational>,
}

impl BinaryForm {
    /// Builds a form of degree `coeffs.len() - 1`.
    ///
    /// Panics if `coeffs` is empty; every form has at least one coefficient.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a binary form needs degree + 1 coefficients");
        BinaryForm { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        BinaryForm::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Self {
        BinaryForm::new(coeffs.iter().map(|c| Rational::from_integer(c.clone())).collect())
    }

    pub fn zero(degree: usize) -> Self {
        BinaryForm { coeffs: vec![Rational::zero(); degree + 1] }
    }

    pub fn constant(c: Rational) -> Self {
        BinaryForm { coeffs: vec![c] }
    }

    /// `c * x^a * y^b`.
    pub fn monomial(c: Rational, x_exp: usize, y_exp: usize) -> Self {
        let mut f = BinaryForm::zero(x_exp + y_exp);
        f.coeffs[y_exp] = c;
        f
    }

    pub fn x() -> Self {
        BinaryForm::from_ints(&[1, 0])
    }

    pub fn y() -> Self {
        BinaryForm::from_ints(&[0, 1])
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^(degree - i) * y^i`.
    pub fn coeff(&self, i: usize) -> &Rational {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// First nonzero coefficient in the order `x^d, x^(d-1) y, ..., y^d`.
    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.coeffs.iter().find(|c| !c.is_zero())
    }

    /// Largest `k` with `y^k | f`.
    pub fn y_order(&self) -> Order {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(k) => Order::Finite(k as u32),
            None => Order::Infinity,
        }
    }

    /// Largest `k` with `x^k | f`.
    pub fn x_order(&self) -> Order {
        match self.coeffs.iter().rev().position(|c| !c.is_zero()) {
            Some(k) => Order::Finite(k as u32),
            None => Order::Infinity,
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, FormError> {
        self.check_same_degree(other)?;
        Ok(BinaryForm {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, FormError> {
        self.check_same_degree(other)?;
        Ok(BinaryForm {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    fn check_same_degree(&self, other: &Self) -> Result<(), FormError> {
        if self.degree() != other.degree() {
            return Err(FormError::DegreeMismatch { left: self.degree(), right: other.degree() });
        }
        Ok(())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        BinaryForm { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn neg(&self) -> Self {
        BinaryForm { coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = BinaryForm::zero(self.degree() + other.degree());
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = BinaryForm::constant(Rational::one());
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Evaluates at a point `(x, y)`.
    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        let d = self.degree();
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * num_traits::pow(x.clone(), d - i) * num_traits::pow(y.clone(), i))
            .fold(Rational::zero(), |acc, t| acc + t)
    }

    /// Splits `f` as `content * primitive` where `primitive` has coprime
    /// integer coefficients and a positive leading coefficient.
    pub fn primitive_part(&self) -> Result<(Rational, BinaryForm), FormError> {
        if self.is_zero() {
            return Err(FormError::ZeroForm);
        }
        let denom_lcm = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let scaled: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(denom_lcm.clone())).to_integer())
            .collect();
        let mut g = scaled.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if scaled.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative()) {
            g = -g;
        }
        let prim: Vec<BigInt> = scaled.iter().map(|c| c / &g).collect();
        Ok((Rational::new(g, denom_lcm), BinaryForm::from_bigints(&prim)))
    }

    /// True when the coefficients are coprime integers with positive leading coefficient.
    pub fn is_primitive(&self) -> bool {
        if self.is_zero() || !self.coeffs.iter().all(|c| c.is_integer()) {
            return false;
        }
        let g = self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c.numer()));
        g.is_one() && self.leading_coefficient().is_some_and(|c| c.is_positive())
    }

    /// `(k, g)` with `f(x, y) = y^k * G(x, y)` and `g(t) = f(t, 1)`.
    pub(crate) fn dehomogenize(&self) -> (usize, QPoly) {
        let d = self.degree();
        let poly = QPoly::new((0..=d).map(|j| self.coeffs[d - j].clone()).collect());
        let k = match self.y_order() {
            Order::Finite(k) => k as usize,
            Order::Infinity => 0,
        };
        (k, poly)
    }

    /// Inverse of `dehomogenize`: the form of the given degree with `f(t, 1) = g(t)`.
    pub(crate) fn homogenize(g: &QPoly, degree: usize) -> BinaryForm {
        let mut f = BinaryForm::zero(degree);
        for (j, c) in g.coeffs().iter().enumerate() {
            assert!(j <= degree, "polynomial degree exceeds the target form degree");
            f.coeffs[degree - j] = c.clone();
        }
        f
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &BinaryForm) -> Option<BinaryForm> {
        if divisor.is_zero() {
            return None;
        }
        if divisor.degree() > self.degree() {
            return None;
        }
        let out_degree = self.degree() - divisor.degree();
        if self.is_zero() {
            return Some(BinaryForm::zero(out_degree));
        }
        let (ka, ga) = self.dehomogenize();
        let (kb, gb) = divisor.dehomogenize();
        if ka < kb {
            return None;
        }
        let q = ga.div_exact(&gb)?;
        let core = BinaryForm::homogenize(&q, out_degree - (ka - kb));
        Some(core.mul(&BinaryForm::monomial(Rational::one(), 0, ka - kb)))
    }

    /// `∂f/∂x`, a form of degree `d - 1` (degree 0 maps to the zero constant).
    pub fn derivative_x(&self) -> BinaryForm {
        let d = self.degree();
        if d == 0 {
            return BinaryForm::zero(0);
        }
        BinaryForm::new(
            (0..d)
                .map(|i| &self.coeffs[i] * Rational::from_integer(BigInt::from(d - i)))
                .collect(),
        )
    }

    /// `∂f/∂y`, a form of degree `d - 1`.
    pub fn derivative_y(&self) -> BinaryForm {
        let d = self.degree();
        if d == 0 {
            return BinaryForm::zero(0);
        }
        BinaryForm::new(
            (1..=d)
                .map(|i| &self.coeffs[i] * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }
}

impl PartialOrd for BinaryForm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree first, then coefficients in storage order.
impl Ord for BinaryForm {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

fn write_power(f: &mut fmt::Formatter<'_>, var: char, exp: usize) -> fmt::Result {
    match exp {
        0 => Ok(()),
        1 => write!(f, "{var}"),
        _ => write!(f, "{var}^{exp}"),
    }
}

/// Renders in the input grammar, e.g. `4*x^2 + 27*y^2`.
impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (xe, ye) = (d - i, i);
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let is_unit = mag.is_one();
            if xe == 0 && ye == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !is_unit {
                write!(f, "{mag}*")?;
            }
            write_power(f, 'x', xe)?;
            if xe > 0 && ye > 0 {
                write!(f, "*")?;
            }
            write_power(f, 'y', ye)?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn product_of_linear_forms() {
        let a = BinaryForm::from_ints(&[1, -1]);
        let b = BinaryForm::from_ints(&[1, 1]);
        assert_eq!(a.mul(&b), BinaryForm::from_ints(&[1, 0, -1]));
    }

    #[test]
    fn power_of_monomial() {
        let m = BinaryForm::monomial(r(1), 2, 2);
        assert_eq!(m.pow(3), BinaryForm::monomial(r(1), 6, 6));
        assert_eq!(m.pow(0), BinaryForm::constant(r(1)));
    }

    #[test]
    fn product_with_zero_keeps_degree() {
        let m = BinaryForm::monomial(r(4), 5, 1).pow(3);
        let z = BinaryForm::zero(0);
        let p = m.mul(&z);
        assert!(p.is_zero());
        assert_eq!(p.degree(), 18);
        let z4 = BinaryForm::zero(4);
        assert_eq!(BinaryForm::x().mul(&z4).degree(), 5);
    }

    #[test]
    fn add_rejects_degree_mismatch() {
        let err = BinaryForm::x().try_add(&BinaryForm::from_ints(&[1, 0, 0])).unwrap_err();
        assert_eq!(err, FormError::DegreeMismatch { left: 1, right: 2 });
        let ok = BinaryForm::x().try_sub(&BinaryForm::y()).unwrap();
        assert_eq!(ok, BinaryForm::from_ints(&[1, -1]));
    }

    #[test]
    fn exact_division_handles_y_powers() {
        // x^3 y^2 (x - y) / (x y^2)
        let f = BinaryForm::monomial(r(1), 3, 2).mul(&BinaryForm::from_ints(&[1, -1]));
        let g = BinaryForm::monomial(r(1), 1, 2);
        let q = f.div_exact(&g).unwrap();
        assert_eq!(q, BinaryForm::monomial(r(1), 2, 0).mul(&BinaryForm::from_ints(&[1, -1])));
        assert!(g.div_exact(&BinaryForm::monomial(r(1), 0, 3)).is_none());
        assert!(BinaryForm::x().div_exact(&BinaryForm::y()).is_none());
    }

    #[test]
    fn primitive_part_sign_and_content() {
        let f = BinaryForm::new(vec![Rational::new((-3).into(), 2.into()), r(0), r(6)]);
        let (c, p) = f.primitive_part().unwrap();
        assert_eq!(c, Rational::new((-3).into(), 2.into()));
        assert_eq!(p, BinaryForm::from_ints(&[1, 0, -4]));
        assert!(p.is_primitive());
    }

    #[test]
    fn display_round_trips_through_the_grammar_shape() {
        let f = BinaryForm::from_ints(&[4, 0, 27]);
        assert_eq!(f.to_string(), "4*x^2 + 27*y^2");
        assert_eq!(BinaryForm::monomial(r(-1), 5, 1).to_string(), "-x^5*y");
        assert_eq!(BinaryForm::zero(3).to_string(), "0");
        assert_eq!(BinaryForm::from_ints(&[0, 1]).to_string(), "y");
    }

    #[test]
    fn orders_count_trailing_variables() {
        let f = BinaryForm::monomial(r(2), 3, 7);
        assert_eq!(f.y_order(), Order::Finite(7));
        assert_eq!(f.x_order(), Order::Finite(3));
        assert_eq!(BinaryForm::zero(2).y_order(), Order::Infinity);
    }
}
