use num_traits::One;

use super::upoly::QPoly;
use super::zassenhaus::factor_squarefree_primitive;
use super::{BinaryForm, FormError, Order, Rational};

/// `content * Π factor^multiplicity`, factors primitive with positive
/// leading coefficient and sorted by `(degree, coefficients)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub content: Rational,
    pub factors: Vec<(BinaryForm, u32)>,
}

impl Factorization {
    /// Multiplies the factorization back out.
    pub fn reconstruct(&self) -> BinaryForm {
        self.factors
            .iter()
            .fold(BinaryForm::constant(self.content.clone()), |acc, (f, m)| acc.mul(&f.pow(*m)))
    }

    pub fn degree(&self) -> usize {
        self.factors.iter().map(|(f, m)| f.degree() * *m as usize).sum()
    }
}

fn normalize(f: &BinaryForm) -> BinaryForm {
    f.primitive_part().expect("normalizing a nonzero factor").1
}

/// Content so that `content * Π factor^m` has the same leading coefficient as `f`.
fn content_for(f: &BinaryForm, factors: &[(BinaryForm, u32)]) -> Rational {
    let lead = f.leading_coefficient().expect("nonzero form").clone();
    let denom = factors.iter().fold(Rational::one(), |acc, (g, m)| {
        acc * num_traits::pow(g.leading_coefficient().unwrap().clone(), *m as usize)
    });
    lead / denom
}

/// Primitive greatest common divisor. `gcd(f, 0)` is the primitive part of `f`.
pub fn gcd(a: &BinaryForm, b: &BinaryForm) -> Result<BinaryForm, FormError> {
    match (a.is_zero(), b.is_zero()) {
        (true, true) => return Err(FormError::BothZero),
        (true, false) => return Ok(normalize(b)),
        (false, true) => return Ok(normalize(a)),
        _ => {}
    }
    let (ka, ga) = a.dehomogenize();
    let (kb, gb) = b.dehomogenize();
    let g = ga.gcd(&gb);
    let k = ka.min(kb);
    let core = BinaryForm::homogenize(&g, g.degree().unwrap_or(0));
    let ypow = BinaryForm::monomial(Rational::one(), 0, k);
    Ok(normalize(&core.mul(&ypow)))
}

/// Yun's algorithm on the dehomogenized polynomial.
fn yun(g: &QPoly) -> Vec<(QPoly, u32)> {
    let mut out = Vec::new();
    if g.is_constant() {
        return out;
    }
    let dg = g.derivative();
    let common = g.gcd(&dg);
    let mut c = g.div_exact(&common).unwrap();
    let mut d = dg.div_exact(&common).unwrap().sub(&c.derivative());
    let mut i = 1;
    while !c.is_constant() {
        let a = c.gcd(&d);
        if !a.is_constant() {
            out.push((a.clone(), i));
        }
        c = c.div_exact(&a).unwrap();
        d = d.div_exact(&a).unwrap().sub(&c.derivative());
        i += 1;
    }
    out
}

/// `f = content * Π g_i^i` with the `g_i` squarefree, pairwise coprime and
/// primitive. Pure powers of `y` are merged into the part of matching
/// multiplicity. Parts are sorted by multiplicity.
pub fn squarefree_decomposition(f: &BinaryForm) -> Result<Factorization, FormError> {
    if f.is_zero() {
        return Err(FormError::ZeroForm);
    }
    let (k, g) = f.dehomogenize();
    let mut parts: Vec<(BinaryForm, u32)> = yun(&g)
        .into_iter()
        .map(|(p, m)| (normalize(&BinaryForm::homogenize(&p, p.degree().unwrap())), m))
        .collect();
    if k > 0 {
        let k = k as u32;
        match parts.iter_mut().find(|(_, m)| *m == k) {
            Some((p, _)) => *p = normalize(&p.mul(&BinaryForm::y())),
            None => parts.push((BinaryForm::y(), k)),
        }
    }
    parts.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    let content = content_for(f, &parts);
    Ok(Factorization { content, factors: parts })
}

/// Full factorization into irreducibles over `Q`.
pub fn factor_over_rationals(f: &BinaryForm) -> Result<Factorization, FormError> {
    if f.is_zero() {
        return Err(FormError::ZeroForm);
    }
    let (k, g) = f.dehomogenize();
    let mut factors: Vec<(BinaryForm, u32)> = Vec::new();
    for (part, m) in yun(&g) {
        let ints = part.primitive_integer();
        for irreducible in factor_squarefree_primitive(&ints) {
            let q = QPoly::from_ints(&irreducible);
            let form = BinaryForm::homogenize(&q, q.degree().unwrap());
            factors.push((normalize(&form), m));
        }
    }
    if k > 0 {
        factors.push((BinaryForm::y(), k as u32));
    }
    factors.sort();
    let content = content_for(f, &factors);
    Ok(Factorization { content, factors })
}

/// Largest `k` with `p^k | f`, or infinity when `f` is the zero form.
/// `p` must be irreducible, primitive and nonconstant.
pub fn valuation(f: &BinaryForm, p: &BinaryForm) -> Result<Order, FormError> {
    if p.degree() == 0 || !p.is_primitive() {
        return Err(FormError::NotAPlace(p.to_string()));
    }
    let fp = factor_over_rationals(p)?;
    if fp.factors.len() != 1 || fp.factors[0].1 != 1 {
        return Err(FormError::NotAPlace(p.to_string()));
    }
    if f.is_zero() {
        return Ok(Order::Infinity);
    }
    Ok(valuation_at_place(f, p))
}

/// Valuation at a place already known to be irreducible and primitive.
pub(crate) fn valuation_at_place(f: &BinaryForm, p: &BinaryForm) -> Order {
    if f.is_zero() {
        return Order::Infinity;
    }
    let mut k = 0;
    let mut rest = f.clone();
    while rest.degree() >= p.degree() {
        match rest.div_exact(p) {
            Some(q) => {
                k += 1;
                rest = q;
            }
            None => break,
        }
    }
    Order::Finite(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn x_minus_y() -> BinaryForm {
        BinaryForm::from_ints(&[1, -1])
    }

    fn mono(c: i64, a: usize, b: usize) -> BinaryForm {
        BinaryForm::monomial(r(c), a, b)
    }

    #[test]
    fn gcd_of_shared_linear_factor() {
        let a = x_minus_y().pow(2).mul(&BinaryForm::x());
        let b = x_minus_y().mul(&BinaryForm::y());
        assert_eq!(gcd(&a, &b).unwrap(), x_minus_y());
    }

    #[test]
    fn gcd_with_zero_is_primitive_part() {
        let f = BinaryForm::from_ints(&[-6, 0, 4]);
        assert_eq!(gcd(&f, &BinaryForm::zero(5)).unwrap(), BinaryForm::from_ints(&[3, 0, -2]));
        assert_eq!(gcd(&BinaryForm::zero(1), &BinaryForm::zero(2)), Err(FormError::BothZero));
    }

    #[test]
    fn gcd_tracks_powers_of_y() {
        assert_eq!(gcd(&mono(1, 0, 3), &mono(5, 2, 2)).unwrap(), mono(1, 0, 2));
    }

    #[test]
    fn gcd_of_e8_sextic_and_discriminant_shape() {
        // gcd(x^5 y, x^10 (4x^2 + 27y^2)); expected value checked by trial division below.
        let a = mono(1, 5, 1);
        let b = mono(1, 10, 0).mul(&BinaryForm::from_ints(&[4, 0, 27]));
        let g = gcd(&a, &b).unwrap();
        assert_eq!(g, mono(1, 5, 0));
        // brute force: x^k divides both exactly for k <= 5 and not k = 6; y and 4x^2+27y^2 do not divide b / a resp.
        for k in 0..=6usize {
            let xk = mono(1, k, 0);
            let both = a.div_exact(&xk).is_some() && b.div_exact(&xk).is_some();
            assert_eq!(both, k <= 5);
        }
        assert!(b.div_exact(&BinaryForm::y()).is_none());
        assert!(a.div_exact(&BinaryForm::from_ints(&[4, 0, 27])).is_none());
    }

    #[test]
    fn squarefree_examples() {
        let sf = squarefree_decomposition(&mono(1, 3, 3)).unwrap();
        assert_eq!(sf.factors, vec![(mono(1, 1, 1), 3)]);

        let f = x_minus_y().pow(2).mul(&mono(1, 3, 7));
        let sf = squarefree_decomposition(&f).unwrap();
        assert_eq!(sf.factors, vec![(x_minus_y(), 2), (BinaryForm::x(), 3), (BinaryForm::y(), 7)]);
        assert_eq!(sf.content, r(1));

        let g = BinaryForm::from_ints(&[1, 0, 1]);
        let sf = squarefree_decomposition(&g).unwrap();
        assert_eq!(sf.factors, vec![(g, 1)]);

        assert_eq!(squarefree_decomposition(&BinaryForm::zero(2)), Err(FormError::ZeroForm));
    }

    #[test]
    fn factor_difference_of_squares() {
        let f = BinaryForm::from_ints(&[1, 0, -1]);
        let fac = factor_over_rationals(&f).unwrap();
        assert_eq!(fac.content, r(1));
        assert_eq!(fac.factors, vec![(x_minus_y(), 1), (BinaryForm::from_ints(&[1, 1]), 1)]);
    }

    #[test]
    fn factor_discriminant_of_e8_with_two_nodes() {
        // -16 * x^10 * (4x^2 + 27y^2)
        let f = mono(-16, 10, 0).mul(&BinaryForm::from_ints(&[4, 0, 27]));
        let fac = factor_over_rationals(&f).unwrap();
        assert_eq!(fac.content, r(-16));
        assert_eq!(
            fac.factors,
            vec![(BinaryForm::x(), 10), (BinaryForm::from_ints(&[4, 0, 27]), 1)]
        );
        // 4t^2 + 27 has no rational root: candidates ±p/q with p | 27, q | 4.
        let quad = BinaryForm::from_ints(&[4, 0, 27]);
        for p in [1i64, 3, 9, 27] {
            for q in [1i64, 2, 4] {
                for s in [1i64, -1] {
                    let t = Rational::new((s * p).into(), q.into());
                    assert_ne!(quad.eval(&t, &r(1)), r(0));
                }
            }
        }
    }

    #[test]
    fn factor_example_discriminant() {
        let f = x_minus_y().pow(2).mul(&mono(-1728, 3, 7));
        let fac = factor_over_rationals(&f).unwrap();
        assert_eq!(fac.content, r(-1728));
        assert_eq!(
            fac.factors,
            vec![(BinaryForm::y(), 7), (x_minus_y(), 2), (BinaryForm::x(), 3)]
        );
        assert_eq!(fac.reconstruct(), f);
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(valuation(&mono(1, 5, 1), &BinaryForm::x()).unwrap(), Order::Finite(5));
        assert_eq!(valuation(&BinaryForm::zero(4), &BinaryForm::x()).unwrap(), Order::Infinity);
        let f = x_minus_y().pow(2).mul(&mono(1, 3, 7));
        assert_eq!(valuation(&f, &x_minus_y()).unwrap(), Order::Finite(2));
        assert_eq!(valuation(&f, &BinaryForm::y()).unwrap(), Order::Finite(7));
    }

    #[test]
    fn valuation_rejects_non_places() {
        assert!(valuation(&BinaryForm::x(), &BinaryForm::constant(r(1))).is_err());
        assert!(valuation(&BinaryForm::x(), &BinaryForm::from_ints(&[1, 0, -1])).is_err());
        assert!(valuation(&BinaryForm::x(), &BinaryForm::from_ints(&[2, 0])).is_err());
    }

    #[test]
    fn constant_form_factors_trivially() {
        let fac = factor_over_rationals(&BinaryForm::constant(r(-7))).unwrap();
        assert_eq!(fac.content, r(-7));
        assert!(fac.factors.is_empty());
    }
}
