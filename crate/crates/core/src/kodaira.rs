//! Kodaira fiber types from valuation triples, and fiber configurations of
//! the elliptic fibration over `P^1`.

use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::delpezzo::DuValLabel;
use crate::exact_forms::{valuation_at_place, BinaryForm, Order, Rational};
use crate::weierstrass::{JInvariant, WeierstrassData};
use crate::Error;

/// A singular (or smooth, `I(0)`) fiber type. `I(0)` is I0 and `IStar(0)` is I0*.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum KodairaType {
    I(u32),
    II,
    III,
    IV,
    IStar(u32),
    IVStar,
    IIIStar,
    IIStar,
}

/// How the j-invariant behaves near a fiber of a given type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum JClass {
    Any,
    Pole,
    Zero,
    Value1728,
}

impl JClass {
    pub fn as_str(self) -> &'static str {
        match self {
            JClass::Any => "any",
            JClass::Pole => "pole",
            JClass::Zero => "zero",
            JClass::Value1728 => "1728",
        }
    }
}

/// One column of the fiber-type correspondence table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberTypeProperties {
    /// `None` when the fiber contracts to a smooth point (A0).
    pub duval: Option<DuValLabel>,
    pub chi: u32,
    pub one_minus_lct: Rational,
    pub j_class: JClass,
    pub rank: u32,
}

fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}

pub fn fiber_properties(t: KodairaType) -> FiberTypeProperties {
    use KodairaType::*;
    let (duval, chi, lct, j_class) = match t {
        I(n) => {
            let duval = (n >= 2).then(|| DuValLabel::a(n - 1));
            let j = if n == 0 { JClass::Any } else { JClass::Pole };
            (duval, n, ratio(0, 1), j)
        }
        II => (None, 2, ratio(1, 6), JClass::Zero),
        III => (Some(DuValLabel::a(1)), 3, ratio(1, 4), JClass::Value1728),
        IV => (Some(DuValLabel::a(2)), 4, ratio(1, 3), JClass::Zero),
        IStar(n) => {
            let j = if n == 0 { JClass::Any } else { JClass::Pole };
            (Some(DuValLabel::d(4 + n)), 6 + n, ratio(1, 2), j)
        }
        IVStar => (Some(DuValLabel::e(6)), 8, ratio(2, 3), JClass::Zero),
        IIIStar => (Some(DuValLabel::e(7)), 9, ratio(3, 4), JClass::Value1728),
        IIStar => (Some(DuValLabel::e(8)), 10, ratio(5, 6), JClass::Zero),
    };
    let rank = duval.map_or(0, |d| d.rank());
    FiberTypeProperties { duval, chi, one_minus_lct: lct, j_class, rank }
}

impl KodairaType {
    pub fn chi(self) -> u32 {
        fiber_properties(self).chi
    }

    pub fn rank(self) -> u32 {
        fiber_properties(self).rank
    }

    pub fn j_class(self) -> JClass {
        fiber_properties(self).j_class
    }

    pub fn duval(self) -> Option<DuValLabel> {
        fiber_properties(self).duval
    }

    /// `I_n` with `n >= 1`.
    pub fn is_multiplicative(self) -> bool {
        matches!(self, KodairaType::I(n) if n >= 1)
    }

    pub fn is_additive(self) -> bool {
        !matches!(self, KodairaType::I(_))
    }

    /// Stable identifier with the index split off: `"In"`, `"In*"`, `"IV*"`, ...
    pub fn tag(self) -> &'static str {
        use KodairaType::*;
        match self {
            I(0) => "I0",
            I(_) => "In",
            II => "II",
            III => "III",
            IV => "IV",
            IStar(0) => "I0*",
            IStar(_) => "In*",
            IVStar => "IV*",
            IIIStar => "III*",
            IIStar => "II*",
        }
    }

    /// The index `n` of `I_n` / `I_n*` for `n >= 1`.
    pub fn index(self) -> Option<u32> {
        match self {
            KodairaType::I(n) | KodairaType::IStar(n) if n >= 1 => Some(n),
            _ => None,
        }
    }

    fn display_key(self) -> (Reverse<u32>, bool, Reverse<KodairaType>) {
        (Reverse(self.chi()), self.is_multiplicative(), Reverse(self))
    }
}

impl fmt::Display for KodairaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use KodairaType::*;
        match self {
            I(n) => write!(f, "I{n}"),
            II => f.write_str("II"),
            III => f.write_str("III"),
            IV => f.write_str("IV"),
            IStar(n) => write!(f, "I{n}*"),
            IVStar => f.write_str("IV*"),
            IIIStar => f.write_str("III*"),
            IIStar => f.write_str("II*"),
        }
    }
}

/// Failure to read a fiber type, configuration or singularity label.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("cannot read {what} from {input:?}")]
pub struct NotationError {
    pub what: &'static str,
    pub input: String,
}

impl FromStr for KodairaType {
    type Err = NotationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        use KodairaType::*;
        let err = || NotationError { what: "fiber type", input: s.to_string() };
        let t = s.trim();
        let (body, star) = match t.strip_suffix('*') {
            Some(b) => (b, true),
            None => (t, false),
        };
        let named = match body {
            "II" => Some(if star { IIStar } else { II }),
            "III" => Some(if star { IIIStar } else { III }),
            "IV" => Some(if star { IVStar } else { IV }),
            _ => None,
        };
        if let Some(k) = named {
            return Ok(k);
        }
        let digits = body.strip_prefix('I').ok_or_else(err)?;
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let n: u32 = digits.parse().map_err(|_| err())?;
        Ok(if star { IStar(n) } else { I(n) })
    }
}

/// A multiset of fiber types, counted geometrically.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Configuration {
    counts: BTreeMap<KodairaType, u32>,
}

impl Configuration {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_types<I: IntoIterator<Item = KodairaType>>(types: I) -> Self {
        let mut c = Self::new();
        for t in types {
            c.insert(t, 1);
        }
        c
    }

    pub fn insert(&mut self, t: KodairaType, count: u32) {
        if count > 0 {
            *self.counts.entry(t).or_insert(0) += count;
        }
    }

    pub fn count(&self, t: KodairaType) -> u32 {
        self.counts.get(&t).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (KodairaType, u32)> + '_ {
        self.counts.iter().map(|(t, c)| (*t, *c))
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Number of singular fibers, with multiplicity.
    pub fn fiber_count(&self) -> u32 {
        self.counts.values().sum()
    }

    pub fn euler_sum(&self) -> u32 {
        self.iter().map(|(t, c)| t.chi() * c).sum()
    }

    pub fn rank_sum(&self) -> u32 {
        self.iter().map(|(t, c)| t.rank() * c).sum()
    }

    pub fn has_multiplicative(&self) -> bool {
        self.counts.keys().any(|t| t.is_multiplicative())
    }

    /// Entries in display order: larger Euler number first, additive before
    /// multiplicative on ties.
    pub fn display_entries(&self) -> Vec<(KodairaType, u32)> {
        let mut v: Vec<_> = self.iter().collect();
        v.sort_by_key(|(t, _)| t.display_key());
        v
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("none");
        }
        for (i, (t, c)) in self.display_entries().into_iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if c > 1 {
                write!(f, "{c}")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl FromStr for Configuration {
    type Err = NotationError;

    /// Reads `"I0* + 2III"`, `"II* + 2I1"`, ...; `"none"` is the empty configuration.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || NotationError { what: "fiber configuration", input: s.to_string() };
        let mut c = Configuration::new();
        if s.trim() == "none" {
            return Ok(c);
        }
        for part in s.split('+') {
            let part = part.trim();
            let split = part.find(|ch: char| !ch.is_ascii_digit()).ok_or_else(err)?;
            let (num, ty) = part.split_at(split);
            let count = if num.is_empty() { 1 } else { num.parse().map_err(|_| err())? };
            if count == 0 {
                return Err(err());
            }
            c.insert(ty.parse().map_err(|_| err())?, count);
        }
        Ok(c)
    }
}

/// A closed point of the base carrying a singular fiber.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Place {
    /// Irreducible primitive form cutting out the point.
    pub poly: BinaryForm,
    pub geometric_degree: u32,
    pub v4: Order,
    pub v6: Order,
    pub vd: u32,
    pub fiber: KodairaType,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberConfiguration {
    pub places: Vec<Place>,
    pub entries: Configuration,
}

impl FiberConfiguration {
    pub fn has_multiplicative(&self) -> bool {
        self.entries.has_multiplicative()
    }
}

impl fmt::Display for FiberConfiguration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.entries.fmt(f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum TripleError {
    NonMinimal,
    Inconsistent,
}

fn scaled(v: Order, k: u32) -> Option<u32> {
    v.finite().map(|n| n * k)
}

pub(crate) fn classify_triple(v4: Order, v6: Order, vd: u32) -> Result<KodairaType, TripleError> {
    use KodairaType::*;
    if vd == 0 {
        return Err(TripleError::Inconsistent);
    }
    // ord(4 f4^3) and ord(27 f6^2): vD is their minimum unless they tie.
    let consistent = match (scaled(v4, 3), scaled(v6, 2)) {
        (None, None) => false,
        (Some(a), None) | (None, Some(a)) => vd == a,
        (Some(a), Some(b)) if a != b => vd == a.min(b),
        (Some(a), Some(_)) => vd >= a,
    };
    if !consistent {
        return Err(TripleError::Inconsistent);
    }
    let is = |v: Order, n: u32| v == Order::Finite(n);
    Ok(if is(v4, 0) {
        I(vd)
    } else if is(v6, 1) {
        II
    } else if is(v4, 1) {
        III
    } else if is(v6, 2) {
        IV
    } else if vd == 6 {
        IStar(0)
    } else if is(v4, 2) {
        IStar(vd - 6)
    } else if is(v6, 4) {
        IVStar
    } else if is(v4, 3) {
        IIIStar
    } else if is(v6, 5) {
        IIStar
    } else {
        return Err(TripleError::NonMinimal);
    })
}

fn triple_error(e: TripleError, place: String, v4: Order, v6: Order, vd: u32) -> Error {
    match e {
        TripleError::NonMinimal => Error::NonMinimalPlace { place },
        TripleError::Inconsistent => {
            Error::InconsistentValuations { v4: v4.to_string(), v6: v6.to_string(), vd }
        }
    }
}

/// Kodaira type of the fiber with valuation triple `(ord f4, ord f6, ord Δ)`.
pub fn classify_place(v4: Order, v6: Order, vd: u32) -> Result<KodairaType, Error> {
    classify_triple(v4, v6, vd)
        .map_err(|e| triple_error(e, format!("(v4={v4}, v6={v6}, vD={vd})"), v4, v6, vd))
}

/// Singular fibers at every irreducible factor of the discriminant.
pub fn classify_fibration(wd: &WeierstrassData) -> Result<FiberConfiguration, Error> {
    let mut places = Vec::new();
    let mut entries = Configuration::new();
    for (poly, vd) in &wd.delta_factors.factors {
        let v4 = valuation_at_place(&wd.f4, poly);
        let v6 = valuation_at_place(&wd.f6, poly);
        let fiber = classify_triple(v4, v6, *vd)
            .map_err(|e| triple_error(e, poly.to_string(), v4, v6, *vd))?;
        if fiber.chi() != *vd {
            return Err(Error::Invariant(format!(
                "Euler number of {fiber} is {} but ord Δ = {vd} at {poly}",
                fiber.chi()
            )));
        }
        let geometric_degree = poly.degree() as u32;
        entries.insert(fiber, geometric_degree);
        places.push(Place { poly: poly.clone(), geometric_degree, v4, v6, vd: *vd, fiber });
    }
    let total: u32 = places.iter().map(|p| p.geometric_degree * p.vd).sum();
    if total != 12 {
        return Err(Error::Invariant(format!("Euler numbers of singular fibers sum to {total}, not 12")));
    }
    Ok(FiberConfiguration { places, entries })
}

/// Fiber types must agree with the behaviour of j: a pole somewhere exactly
/// when j is nonconstant, and only types compatible with a constant value
/// otherwise.
pub fn check_j_consistency(fc: &FiberConfiguration, j: &JInvariant) -> Result<(), Error> {
    let classes: Vec<JClass> = fc.entries.iter().map(|(t, _)| t.j_class()).collect();
    let has_pole = classes.contains(&JClass::Pole);
    let ok = match j {
        JInvariant::NonConstant => has_pole,
        JInvariant::Constant(_) if j.is_value(0) => {
            classes.iter().all(|c| matches!(c, JClass::Zero | JClass::Any))
        }
        JInvariant::Constant(_) if j.is_value(1728) => {
            classes.iter().all(|c| matches!(c, JClass::Value1728 | JClass::Any))
        }
        JInvariant::Constant(_) => classes.iter().all(|c| *c == JClass::Any),
    };
    if ok {
        Ok(())
    } else {
        Err(Error::Invariant(format!("fibers {fc} are incompatible with j = {j}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weierstrass::{parse_binary_form, WeierstrassData};
    use KodairaType::*;

    const INF: Order = Order::Infinity;

    fn fin(n: u32) -> Order {
        Order::Finite(n)
    }

    fn config(s: &str) -> Configuration {
        s.parse().unwrap()
    }

    fn fibration(f4: &str, f6: &str) -> FiberConfiguration {
        let wd = WeierstrassData::new(
            parse_binary_form(f4, 4).unwrap(),
            parse_binary_form(f6, 6).unwrap(),
        )
        .unwrap();
        classify_fibration(&wd).unwrap()
    }

    #[test]
    fn place_examples() {
        assert_eq!(classify_place(INF, fin(5), 10).unwrap(), IIStar);
        assert_eq!(classify_place(INF, fin(1), 2).unwrap(), II);
        assert_eq!(classify_place(fin(2), fin(3), 7).unwrap(), IStar(1));
        assert_eq!(classify_place(fin(1), fin(2), 3).unwrap(), III);
        assert_eq!(classify_place(fin(1), fin(1), 2).unwrap(), II);
        assert_eq!(classify_place(fin(0), fin(0), 3).unwrap(), I(3));
        assert_eq!(classify_place(fin(2), fin(3), 6).unwrap(), IStar(0));
        assert!(matches!(
            classify_place(fin(4), fin(6), 12),
            Err(Error::NonMinimalPlace { .. })
        ));
    }

    #[test]
    fn inconsistent_triples() {
        assert!(matches!(
            classify_place(fin(1), fin(1), 3),
            Err(Error::InconsistentValuations { .. })
        ));
        assert!(matches!(
            classify_place(fin(0), fin(0), 0),
            Err(Error::InconsistentValuations { .. })
        ));
        assert!(matches!(classify_place(INF, INF, 4), Err(Error::InconsistentValuations { .. })));
    }

    #[test]
    fn i3_matches_its_table_column() {
        let t = classify_place(fin(0), fin(0), 3).unwrap();
        let p = fiber_properties(t);
        assert_eq!(p.chi, 3);
        assert_eq!(p.j_class, JClass::Pole);
        assert_eq!(p.duval, Some(DuValLabel::a(2)));
    }

    #[test]
    fn property_table() {
        let p = fiber_properties(IIStar);
        assert_eq!(
            (p.duval, p.chi, p.one_minus_lct, p.j_class, p.rank),
            (Some(DuValLabel::e(8)), 10, ratio(5, 6), JClass::Zero, 8)
        );
        let p = fiber_properties(I(0));
        assert_eq!((p.duval, p.chi, p.one_minus_lct, p.j_class, p.rank), (None, 0, ratio(0, 1), JClass::Any, 0));
        let p = fiber_properties(I(5));
        assert_eq!((p.duval, p.chi, p.j_class, p.rank), (Some(DuValLabel::a(4)), 5, JClass::Pole, 4));
        let p = fiber_properties(IStar(3));
        assert_eq!((p.duval, p.chi, p.j_class, p.rank), (Some(DuValLabel::d(7)), 9, JClass::Pole, 7));
        assert_eq!(fiber_properties(IIIStar).one_minus_lct, ratio(3, 4));
        assert_eq!(fiber_properties(IV).one_minus_lct, ratio(1, 3));
    }

    #[test]
    fn every_minimal_triple_classifies() {
        let v4s: Vec<Order> = (0..=6).map(fin).chain([INF]).collect();
        let v6s: Vec<Order> = (0..=8).map(fin).chain([INF]).collect();
        for &v4 in &v4s {
            for &v6 in &v6s {
                for vd in 1..=24 {
                    match classify_triple(v4, v6, vd) {
                        Ok(t) => {
                            assert_eq!(t.chi(), vd, "{v4} {v6} {vd}");
                            let minimal = v4 < fin(4) || v6 < fin(6);
                            assert!(minimal);
                        }
                        Err(TripleError::NonMinimal) => assert!(v4 >= fin(4) && v6 >= fin(6)),
                        Err(TripleError::Inconsistent) => {}
                    }
                }
            }
        }
    }

    #[test]
    fn notation_round_trip() {
        for s in ["II* + II", "IV* + 2II", "2I0*", "I0* + 2III", "I1* + III + II", "II* + 2I1", "IV* + I3 + I1", "6II"] {
            assert_eq!(config(s).to_string(), s);
        }
        assert_eq!(config("III + I0* + III"), config("I0* + 2III"));
        assert!("I0 + X".parse::<Configuration>().is_err());
        assert!("I*".parse::<KodairaType>().is_err());
        assert_eq!("I12".parse::<KodairaType>().unwrap(), I(12));
    }

    #[test]
    fn fibration_examples() {
        let fc = fibration("0", "x^5*y");
        assert_eq!(fc.entries, config("II* + II"));
        let x = fc.places.iter().find(|p| p.poly == BinaryForm::x()).unwrap();
        assert_eq!((x.v4, x.v6, x.vd, x.fiber), (INF, fin(5), 10, IIStar));

        let fc = fibration("x^4", "x^5*y");
        assert_eq!(fc.entries, config("II* + 2I1"));
        let conj = fc.places.iter().find(|p| p.geometric_degree == 2).unwrap();
        assert_eq!(conj.poly, BinaryForm::from_ints(&[4, 0, 27]));
        assert_eq!(conj.fiber, I(1));

        assert_eq!(fibration("0", "x^3*y^3").entries, config("2I0*"));

        let fc = fibration("-3*(x^2-y^2)*y^2", "2*(x^2-y^2)*x*y^3");
        assert_eq!(fc.entries, config("I2* + 2II"));
        assert_eq!(fc.places.len(), 3);
    }

    #[test]
    fn j_consistency() {
        let fc = fibration("0", "x^5*y");
        assert!(check_j_consistency(&fc, &JInvariant::Constant(ratio(0, 1))).is_ok());
        assert!(check_j_consistency(&fc, &JInvariant::Constant(ratio(1728, 1))).is_err());
        assert!(check_j_consistency(&fc, &JInvariant::NonConstant).is_err());
    }
}
