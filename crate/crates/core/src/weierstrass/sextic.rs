use num_traits::{One, Zero};

use super::parser::{parse_polynomial, parse_xy_polynomial, Polynomial, WEIGHTS};
use super::short::WeierstrassData;
use crate::exact_forms::{BinaryForm, Rational};
use crate::Error;

/// `c_w2 w² + c_wz wz + c_w w + c_z3 z³ + c_z2 z² + c_z z + c_0`, the
/// general sextic in `P(1,1,2,3)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralSextic {
    pub c_w2: Rational,
    pub c_wz: BinaryForm,
    pub c_w: BinaryForm,
    pub c_z3: Rational,
    pub c_z2: BinaryForm,
    pub c_z: BinaryForm,
    pub c_0: BinaryForm,
}

/// Collects the coefficient of `z^z_exp w^w_exp` as a form of the given degree.
fn coefficient_form(p: &Polynomial, z_exp: u32, w_exp: u32, degree: usize) -> BinaryForm {
    let coeffs = (0..=degree)
        .map(|i| p.coefficient(&[(degree - i) as u32, i as u32, z_exp, w_exp]))
        .collect();
    BinaryForm::new(coeffs)
}

impl GeneralSextic {
    pub fn from_polynomial(p: &Polynomial) -> Result<Self, Error> {
        p.check_weighted_degree(&WEIGHTS, 6)?;
        Ok(GeneralSextic {
            c_w2: p.coefficient(&[0, 0, 0, 2]),
            c_wz: coefficient_form(p, 1, 1, 1),
            c_w: coefficient_form(p, 0, 1, 3),
            c_z3: p.coefficient(&[0, 0, 3, 0]),
            c_z2: coefficient_form(p, 2, 0, 2),
            c_z: coefficient_form(p, 1, 0, 4),
            c_0: coefficient_form(p, 0, 0, 6),
        })
    }

    /// `w² + z³ + f4 z + f6 = 0` in the sign convention used by the
    /// literature's normal form.
    pub fn normal_form(f4: &BinaryForm, f6: &BinaryForm) -> Self {
        GeneralSextic {
            c_w2: Rational::one(),
            c_wz: BinaryForm::zero(1),
            c_w: BinaryForm::zero(3),
            c_z3: Rational::one(),
            c_z2: BinaryForm::zero(2),
            c_z: f4.clone(),
            c_0: f6.clone(),
        }
    }
}

/// Parses an equation over `x, y, z, w` whose monomials all have weighted degree 6.
pub fn parse_sextic(text: &str) -> Result<GeneralSextic, Error> {
    GeneralSextic::from_polynomial(&parse_polynomial(text)?)
}

/// Parses a binary form in `x, y` of the given degree. `0` is the zero form.
pub fn parse_binary_form(text: &str, degree: usize) -> Result<BinaryForm, Error> {
    let p = parse_xy_polynomial(text)?;
    p.check_weighted_degree(&WEIGHTS, degree as u32)?;
    Ok(coefficient_form(&p, 0, 0, degree))
}

fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Brings a general sextic to `w² = z³ + f4 z + f6`.
///
/// Completing the square in `w` leaves `w² = a3 z³ + a2 z² + a1 z + a0`.
/// Rescaling `z ↦ z/a3`, `w ↦ w/a3` makes the cubic monic with
/// coefficients `(a2, a1 a3, a0 a3²)`, and `z ↦ z - a2/3` removes the
/// quadratic term.
pub fn reduce_to_short(g: &GeneralSextic) -> Result<WeierstrassData, Error> {
    if g.c_w2.is_zero() {
        return Err(Error::MissingW2);
    }
    if g.c_z3.is_zero() {
        return Err(Error::MissingZ3);
    }
    let inv_w2 = g.c_w2.recip();
    let quarter_inv_sq = (&inv_w2 * &inv_w2) / rat(4);

    let a3 = -&g.c_z3 * &inv_w2;
    let a2 = g
        .c_wz
        .mul(&g.c_wz)
        .scale(&quarter_inv_sq)
        .try_sub(&g.c_z2.scale(&inv_w2))?;
    let a1 = g
        .c_wz
        .mul(&g.c_w)
        .scale(&(&quarter_inv_sq * rat(2)))
        .try_sub(&g.c_z.scale(&inv_w2))?;
    let a0 = g
        .c_w
        .mul(&g.c_w)
        .scale(&quarter_inv_sq)
        .try_sub(&g.c_0.scale(&inv_w2))?;

    let b2 = a2;
    let b1 = a1.scale(&a3);
    let b0 = a0.scale(&(&a3 * &a3));

    let third = Rational::new(1.into(), 3.into());
    let f4 = b1.try_sub(&b2.mul(&b2).scale(&third))?;
    let f6 = b2
        .pow(3)
        .scale(&Rational::new(2.into(), 27.into()))
        .try_sub(&b2.mul(&b1).scale(&third))?
        .try_add(&b0)?;
    WeierstrassData::new(f4, f6)
}
