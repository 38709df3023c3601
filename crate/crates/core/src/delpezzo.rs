//! From fiber configurations to the invariants of the del Pezzo surface:
//! du Val singularities, Picard rank, coregularity and toric models.

use std::cmp::{Ordering, Reverse};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::enumerate::{enumerate_isotrivial, IsotrivialClass};
use crate::kodaira::{check_j_consistency, classify_fibration, Configuration, FiberConfiguration, NotationError};
use crate::weierstrass::{parse_binary_form, parse_sextic, reduce_to_short, JInvariant, WeierstrassData};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DuValFamily {
    A,
    D,
    E,
}

impl DuValFamily {
    pub fn as_str(self) -> &'static str {
        match self {
            DuValFamily::A => "A",
            DuValFamily::D => "D",
            DuValFamily::E => "E",
        }
    }

    fn precedence(self) -> u8 {
        match self {
            DuValFamily::E => 0,
            DuValFamily::D => 1,
            DuValFamily::A => 2,
        }
    }
}

/// An ADE singularity `A_n (n >= 1)`, `D_n (n >= 4)` or `E_6, E_7, E_8`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DuValLabel {
    family: DuValFamily,
    index: u32,
}

impl DuValLabel {
    pub fn new(family: DuValFamily, index: u32) -> Option<Self> {
        let valid = match family {
            DuValFamily::A => index >= 1,
            DuValFamily::D => index >= 4,
            DuValFamily::E => (6..=8).contains(&index),
        };
        valid.then_some(DuValLabel { family, index })
    }

    pub fn a(n: u32) -> Self {
        Self::new(DuValFamily::A, n).expect("A_n needs n >= 1")
    }

    pub fn d(n: u32) -> Self {
        Self::new(DuValFamily::D, n).expect("D_n needs n >= 4")
    }

    pub fn e(n: u32) -> Self {
        Self::new(DuValFamily::E, n).expect("E_n needs n in 6..=8")
    }

    pub fn family(self) -> DuValFamily {
        self.family
    }

    pub fn index(self) -> u32 {
        self.index
    }

    pub fn rank(self) -> u32 {
        self.index
    }
}

/// E before D before A, larger index first.
impl Ord for DuValLabel {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.family.precedence(), Reverse(self.index))
            .cmp(&(other.family.precedence(), Reverse(other.index)))
    }
}

impl PartialOrd for DuValLabel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for DuValLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.as_str(), self.index)
    }
}

impl FromStr for DuValLabel {
    type Err = NotationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || NotationError { what: "du Val label", input: s.to_string() };
        let s = s.trim();
        let family = match s.chars().next() {
            Some('A') => DuValFamily::A,
            Some('D') => DuValFamily::D,
            Some('E') => DuValFamily::E,
            _ => return Err(err()),
        };
        let index = s[1..].parse().map_err(|_| err())?;
        DuValLabel::new(family, index).ok_or_else(err)
    }
}

/// Multiset of du Val singular points.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SingularityConfig {
    counts: BTreeMap<DuValLabel, u32>,
}

impl SingularityConfig {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, label: DuValLabel, count: u32) {
        if count > 0 {
            *self.counts.entry(label).or_insert(0) += count;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (DuValLabel, u32)> + '_ {
        self.counts.iter().map(|(l, c)| (*l, *c))
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn rank_sum(&self) -> u32 {
        self.iter().map(|(l, c)| l.rank() * c).sum()
    }
}

impl fmt::Display for SingularityConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("none");
        }
        for (i, (l, c)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if c > 1 {
                write!(f, "{c}")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for SingularityConfig {
    type Err = NotationError;

    /// Reads `"D4 + 2A1"`; `"none"` or `"∅"` is the smooth case.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || NotationError { what: "singularity configuration", input: s.to_string() };
        let mut sc = SingularityConfig::new();
        if matches!(s.trim(), "none" | "∅") {
            return Ok(sc);
        }
        for part in s.split('+') {
            let part = part.trim();
            let split = part.find(|ch: char| !ch.is_ascii_digit()).ok_or_else(err)?;
            let (num, label) = part.split_at(split);
            let count = if num.is_empty() { 1 } else { num.parse().map_err(|_| err())? };
            if count == 0 {
                return Err(err());
            }
            sc.insert(label.parse().map_err(|_| err())?, count);
        }
        Ok(sc)
    }
}

/// Contracting the fiber components missing the zero section gives one
/// du Val point per reducible fiber.
pub fn duval_configuration(fc: &Configuration) -> SingularityConfig {
    let mut sc = SingularityConfig::new();
    for (t, count) in fc.iter() {
        if let Some(label) = t.duval() {
            sc.insert(label, count);
        }
    }
    sc
}

pub fn picard_rank(sc: &SingularityConfig) -> Result<u32, Error> {
    let rank = sc.rank_sum();
    if rank > 8 {
        return Err(Error::RankOverflow(rank));
    }
    Ok(9 - rank)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Coregularity {
    pub coreg1: u8,
    pub coreg2: u8,
    pub coreg: u8,
    pub toric_model: bool,
}

impl Coregularity {
    /// The value for every del Pezzo surface of degree at least two.
    pub const ZERO: Coregularity = Coregularity { coreg1: 0, coreg2: 0, coreg: 0, toric_model: true };
}

fn is_one_of(fc: &Configuration, list: &[&str]) -> bool {
    list.iter().any(|s| *fc == s.parse::<Configuration>().expect("valid notation"))
}

const COREG_ZERO_ISOTRIVIAL: [&str; 2] = ["2I0*", "I0* + 2III"];

pub fn decide_coregularity(fc: &Configuration, j: &JInvariant) -> Coregularity {
    // A nodal fiber plus the section gives a 1-complement whose dual complex is a circle.
    let coreg1 = if fc.has_multiplicative() { 0 } else { 1 };
    let coreg = match j {
        JInvariant::NonConstant => 0,
        JInvariant::Constant(_) if is_one_of(fc, &COREG_ZERO_ISOTRIVIAL) => 0,
        JInvariant::Constant(_) => 1,
    };
    // coreg <= coreg2 <= coreg1, all in {0, 1}; when coreg1 = 1 and coreg = 0
    // the 2-complement realizes coreg, since either coreg1 or coreg2 vanishes.
    let coreg2 = coreg;
    Coregularity { coreg1, coreg2, coreg, toric_model: coreg1 == 0 }
}

pub const EXTREMAL: [&str; 3] = ["II* + II", "III* + III", "IV* + IV"];

pub fn label_special(fc: &Configuration) -> Vec<String> {
    const NAMED: [(&str, &str); 6] = [
        ("II* + II", "X'1(E8)"),
        ("III* + III", "X'1(E7+A1)"),
        ("IV* + IV", "X'1(E6+A2)"),
        ("I1* + III + II", "X'1(D5+A1)"),
        ("I2* + 2II", "X'1(D6)"),
        ("2I0*", "X1(2D4)"),
    ];
    let mut labels = Vec::new();
    if is_one_of(fc, &EXTREMAL) {
        labels.push("extremal".to_string());
    }
    for (config, name) in NAMED {
        if is_one_of(fc, &[config]) {
            labels.push(name.to_string());
        }
    }
    labels
}

/// Dimension of the moduli of isotrivial surfaces with j in {0, 1728} and
/// the given fibers; `None` outside that setting.
pub fn moduli_dimension(fc: &Configuration, rho: u32, j: &JInvariant) -> Option<u32> {
    let class = if j.is_value(0) {
        IsotrivialClass::Zero
    } else if j.is_value(1728) {
        IsotrivialClass::Value1728
    } else {
        return None;
    };
    if !enumerate_isotrivial(class).contains(fc) {
        return None;
    }
    Some(if rho <= 3 { 0 } else { (rho - 3) / 2 })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    pub degree: u32,
    /// The short Weierstrass model; degree one only.
    pub weierstrass: Option<WeierstrassData>,
    pub fibers: Option<FiberConfiguration>,
    pub sing: Option<SingularityConfig>,
    pub rho: Option<u32>,
    pub isotrivial: Option<bool>,
    pub j: Option<JInvariant>,
    pub coreg1: u8,
    pub coreg2: u8,
    pub coreg: u8,
    pub toric_model: bool,
    pub extremal: Option<bool>,
    pub labels: Vec<String>,
    pub moduli_dim: Option<u32>,
}

impl ClassificationReport {
    pub fn coregularity(&self) -> Coregularity {
        Coregularity {
            coreg1: self.coreg1,
            coreg2: self.coreg2,
            coreg: self.coreg,
            toric_model: self.toric_model,
        }
    }

    pub fn configuration(&self) -> Option<&Configuration> {
        self.fibers.as_ref().map(|f| &f.entries)
    }
}

/// Degrees two through nine need no equation: coregularity vanishes and a
/// toric model exists.
pub fn degree_rule(d: u32) -> Result<ClassificationReport, Error> {
    if !(2..=9).contains(&d) {
        return Err(Error::DegreeOutOfRange(d));
    }
    let c = Coregularity::ZERO;
    Ok(ClassificationReport {
        degree: d,
        weierstrass: None,
        fibers: None,
        sing: None,
        rho: None,
        isotrivial: None,
        j: None,
        coreg1: c.coreg1,
        coreg2: c.coreg2,
        coreg: c.coreg,
        toric_model: c.toric_model,
        extremal: None,
        labels: Vec::new(),
        moduli_dim: None,
    })
}

pub fn classify_surface(text: &str) -> Result<ClassificationReport, Error> {
    let sextic = parse_sextic(text)?;
    classify_weierstrass(reduce_to_short(&sextic)?)
}

/// Classifies `w² = z³ + f4 z + f6` given directly as binary forms.
pub fn classify_short(f4: &str, f6: &str) -> Result<ClassificationReport, Error> {
    let f4 = parse_binary_form(f4, 4)?;
    let f6 = parse_binary_form(f6, 6)?;
    classify_weierstrass(WeierstrassData::new(f4, f6)?)
}

pub fn classify_weierstrass(wd: WeierstrassData) -> Result<ClassificationReport, Error> {
    let fibers = classify_fibration(&wd)?;
    check_j_consistency(&fibers, &wd.j)?;
    let fc = &fibers.entries;
    let sing = duval_configuration(fc);
    let rho = picard_rank(&sing)?;
    let c = decide_coregularity(fc, &wd.j);
    let labels = label_special(fc);
    let moduli_dim = moduli_dimension(fc, rho, &wd.j);
    let report = ClassificationReport {
        degree: 1,
        isotrivial: Some(wd.j.is_constant()),
        j: Some(wd.j.clone()),
        extremal: Some(is_one_of(fc, &EXTREMAL)),
        fibers: Some(fibers),
        sing: Some(sing),
        rho: Some(rho),
        coreg1: c.coreg1,
        coreg2: c.coreg2,
        coreg: c.coreg,
        toric_model: c.toric_model,
        labels,
        moduli_dim,
        weierstrass: Some(wd),
    };
    check_theorems(&report)?;
    Ok(report)
}

/// Singularities allowed on surfaces of coregularity one, split by whether
/// the Picard rank is one.
const COREG_ONE_RHO_ONE: [&str; 3] = ["E8", "E7 + A1", "E6 + A2"];
const COREG_ONE_RHO_HIGHER: [&str; 8] = ["E6", "D4 + A2", "D4", "3A2", "2A2", "A2", "4A1", "none"];

/// Fiber configurations of surfaces of coregularity one.
pub const COREG_ONE_FIBERS: [&str; 11] = [
    "II* + II",
    "IV* + IV",
    "IV* + 2II",
    "I0* + IV + II",
    "I0* + 3II",
    "3IV",
    "2IV + 2II",
    "IV + 4II",
    "6II",
    "III* + III",
    "4III",
];

/// Re-derives the coregularity-one classification independently of
/// [`decide_coregularity`] and reports any disagreement.
pub fn check_theorems(r: &ClassificationReport) -> Result<(), Error> {
    let fail = |what: &str| Err(Error::Invariant(format!("{what} fails for this surface")));
    if !(r.coreg <= r.coreg2 && r.coreg2 <= r.coreg1) || r.toric_model != (r.coreg1 == 0) {
        return fail("coreg <= coreg2 <= coreg1 with toric model iff coreg1 = 0");
    }
    let (Some(fc), Some(sing), Some(rho), Some(isotrivial)) =
        (r.configuration(), r.sing.as_ref(), r.rho, r.isotrivial)
    else {
        return Ok(());
    };
    if rho != 9 - sing.rank_sum() || rho < 1 {
        return fail("rho = 9 - total rank >= 1");
    }
    let listed = |list: &[&str]| {
        list.iter().any(|s| *sing == s.parse::<SingularityConfig>().expect("valid notation"))
    };
    if r.coreg == 1 {
        let allowed = if rho == 1 { listed(&COREG_ONE_RHO_ONE) } else { listed(&COREG_ONE_RHO_HIGHER) };
        if !allowed {
            return fail("singularities of coregularity-one surfaces");
        }
    }
    if (r.coreg == 1) != (isotrivial && is_one_of(fc, &COREG_ONE_FIBERS)) {
        return fail("coreg = 1 iff isotrivial with one of eleven fiber configurations");
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_forms::Rational;

    fn config(s: &str) -> Configuration {
        s.parse().unwrap()
    }

    fn sing(s: &str) -> SingularityConfig {
        s.parse().unwrap()
    }

    fn j(v: i64) -> JInvariant {
        JInvariant::Constant(Rational::from_integer(v.into()))
    }

    #[test]
    fn singularities_from_fibers() {
        assert_eq!(duval_configuration(&config("II* + II")), sing("E8"));
        assert_eq!(duval_configuration(&config("I0* + 2III")), sing("D4 + 2A1"));
        assert_eq!(duval_configuration(&config("6II")), sing("none"));
        assert_eq!(duval_configuration(&config("IV* + I3 + I1")), sing("E6 + A2"));
        assert_eq!(duval_configuration(&config("I1* + III + II")).to_string(), "D5 + A1");
    }

    #[test]
    fn label_order_and_parsing() {
        assert_eq!(sing("A1 + 2A1 + D4").to_string(), "D4 + 3A1");
        assert_eq!(sing("A2 + E6").to_string(), "E6 + A2");
        assert_eq!(sing("∅"), SingularityConfig::new());
        assert!("E9".parse::<DuValLabel>().is_err());
        assert!("D3".parse::<DuValLabel>().is_err());
        assert!("A0".parse::<DuValLabel>().is_err());
    }

    #[test]
    fn picard_ranks() {
        assert_eq!(picard_rank(&sing("E8")).unwrap(), 1);
        assert_eq!(picard_rank(&sing("D4")).unwrap(), 5);
        assert_eq!(picard_rank(&sing("none")).unwrap(), 9);
        assert_eq!(picard_rank(&sing("D10")), Err(Error::RankOverflow(10)));
    }

    #[test]
    fn coregularity_cases() {
        let c = |s: &str, j: &JInvariant| {
            let c = decide_coregularity(&config(s), j);
            (c.coreg1, c.coreg2, c.coreg, c.toric_model)
        };
        assert_eq!(c("2I0*", &j(1728)), (1, 0, 0, false));
        assert_eq!(c("2I0*", &JInvariant::Constant(Rational::new(5.into(), 7.into()))), (1, 0, 0, false));
        assert_eq!(c("II* + II", &j(0)), (1, 1, 1, false));
        assert_eq!(c("I1* + III + II", &JInvariant::NonConstant), (1, 0, 0, false));
        assert_eq!(c("II* + 2I1", &JInvariant::NonConstant), (0, 0, 0, true));
        assert_eq!(c("I0* + 2III", &j(1728)), (1, 0, 0, false));
    }

    #[test]
    fn special_labels() {
        assert_eq!(label_special(&config("IV* + IV")), ["extremal", "X'1(E6+A2)"]);
        assert_eq!(label_special(&config("I2* + 2II")), ["X'1(D6)"]);
        assert!(label_special(&config("6II")).is_empty());
    }

    #[test]
    fn moduli() {
        assert_eq!(moduli_dimension(&config("6II"), 9, &j(0)), Some(3));
        assert_eq!(moduli_dimension(&config("IV* + IV"), 1, &j(0)), Some(0));
        assert_eq!(moduli_dimension(&config("II* + 2I1"), 1, &JInvariant::NonConstant), None);
        assert_eq!(moduli_dimension(&config("4III"), 5, &j(0)), None);
    }

    #[test]
    fn degree_rule_range() {
        for d in 2..=9 {
            let r = degree_rule(d).unwrap();
            assert_eq!((r.coreg, r.coreg1, r.coreg2, r.toric_model), (0, 0, 0, true));
            assert!(r.fibers.is_none() && r.sing.is_none());
        }
        assert_eq!(degree_rule(1), Err(Error::DegreeOutOfRange(1)));
        assert_eq!(degree_rule(10), Err(Error::DegreeOutOfRange(10)));
    }

    #[test]
    fn full_pipeline_examples() {
        let r = classify_surface("w^2 + z^3 + x^4*y^2").unwrap();
        assert_eq!(r.configuration().unwrap(), &config("IV* + IV"));
        assert_eq!(r.sing.as_ref().unwrap(), &sing("E6 + A2"));
        assert_eq!((r.rho, r.isotrivial, r.coreg), (Some(1), Some(true), 1));
        assert_eq!(r.j, Some(j(0)));
        assert_eq!(r.labels, ["extremal", "X'1(E6+A2)"]);

        let r = classify_surface("w^2 + z^3 - 3*x^3*(x+4*y)*z + 2*x^4*(x^2+6*x*y+6*y^2)").unwrap();
        assert_eq!(r.configuration().unwrap(), &config("IV* + I3 + I1"));
        assert_eq!(r.sing.as_ref().unwrap(), &sing("E6 + A2"));
        assert_eq!((r.coreg1, r.coreg, r.toric_model), (0, 0, true));
    }

    #[test]
    fn short_and_general_entry_points_agree() {
        let a = classify_short("0", "-x^5*y").unwrap();
        let b = classify_surface("w^2 + z^3 + x^5*y").unwrap();
        assert_eq!(a, b);
    }
}
