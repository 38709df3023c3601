use std::fmt;

use super::tables::{j0_rows, j1728_rows};
use crate::delpezzo::{classify_surface, ClassificationReport, SingularityConfig};
use crate::exact_forms::Rational;
use crate::kodaira::Configuration;
use crate::weierstrass::JInvariant;
use crate::Error;

/// Instantiation of the free parameters `l, m, n` in the table equations.
pub(crate) const L: i64 = 2;
pub(crate) const M: i64 = 3;
pub(crate) const N: i64 = 5;

/// The table rows need the points `0, 1, l, m, n, ∞` of the base pairwise distinct.
pub(crate) fn check_parameters() {
    let pts = [0, 1, L, M, N];
    for (i, a) in pts.iter().enumerate() {
        assert!(pts[i + 1..].iter().all(|b| a != b), "table parameters must be distinct");
    }
}

/// An explicit equation with every invariant it is known to have.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub name: &'static str,
    pub equation: String,
    pub fibers: Configuration,
    pub sing: SingularityConfig,
    pub rho: u32,
    pub isotrivial: bool,
    pub j: Option<Rational>,
    /// `(coreg1, coreg2, coreg)`.
    pub coreg: (u8, u8, u8),
    pub toric_model: bool,
    pub labels: Vec<String>,
    pub moduli_dim: Option<u32>,
    pub source: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub field: &'static str,
    pub expected: String,
    pub got: String,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: expected {}, got {}", self.field, self.expected, self.got)
    }
}

fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

struct Entry {
    name: &'static str,
    equation: String,
    fibers: &'static str,
    sing: &'static str,
    rho: u32,
    j: Option<Rational>,
    coreg: (u8, u8, u8),
    labels: &'static [&'static str],
    moduli_dim: Option<u32>,
    source: &'static str,
}

impl From<Entry> for Witness {
    fn from(s: Entry) -> Self {
        Witness {
            name: s.name,
            equation: s.equation,
            fibers: s.fibers.parse().expect("valid notation"),
            sing: s.sing.parse().expect("valid notation"),
            rho: s.rho,
            isotrivial: s.j.is_some(),
            j: s.j,
            coreg: s.coreg,
            toric_model: s.coreg.0 == 0,
            labels: s.labels.iter().map(|l| l.to_string()).collect(),
            moduli_dim: s.moduli_dim,
            source: s.source,
        }
    }
}

fn table_labels(fibers: &str) -> &'static [&'static str] {
    match fibers {
        "II* + II" => &["extremal", "X'1(E8)"],
        "IV* + IV" => &["extremal", "X'1(E6+A2)"],
        "III* + III" => &["extremal", "X'1(E7+A1)"],
        "2I0*" => &["X1(2D4)"],
        _ => &[],
    }
}

pub fn witness_catalog() -> Vec<Witness> {
    check_parameters();
    let mut out: Vec<Witness> = Vec::new();
    let table_coreg = |c: u8| if c == 1 { (1, 1, 1) } else { (1, 0, 0) };
    for row in j0_rows() {
        out.push(
            Entry {
                name: row.name,
                equation: format!("w^2 + z^3 + {}", row.f),
                fibers: row.fibers,
                sing: row.sing,
                rho: row.rho,
                j: Some(int(0)),
                coreg: table_coreg(row.coreg),
                labels: table_labels(row.fibers),
                moduli_dim: Some(row.moduli_dim),
                source: "isotrivial fibrations with j = 0 (f4 = 0)",
            }
            .into(),
        );
    }
    for row in j1728_rows() {
        out.push(
            Entry {
                name: row.name,
                equation: format!("w^2 + z^3 + z*{}", row.f),
                fibers: row.fibers,
                sing: row.sing,
                rho: row.rho,
                j: Some(int(1728)),
                coreg: table_coreg(row.coreg),
                labels: table_labels(row.fibers),
                moduli_dim: Some(row.moduli_dim),
                source: "isotrivial fibrations with j = 1728 (f6 = 0)",
            }
            .into(),
        );
    }
    let nodal = [
        ("nodal/E8", "w^2 + z^3 + x^4*z + x^5*y", "II* + 2I1", "E8"),
        (
            "nodal/E6+A2",
            "w^2 + z^3 - 3*x^3*(x+4*y)*z + 2*x^4*(x^2+6*x*y+6*y^2)",
            "IV* + I3 + I1",
            "E6 + A2",
        ),
        ("nodal/E7+A1", "w^2 + z^3 - 3*x^3*(x+2*y)*z + 2*x^5*(x+3*y)", "III* + I2 + I1", "E7 + A1"),
    ];
    for (name, eq, fibers, sing) in nodal {
        out.push(
            Entry {
                name,
                equation: eq.to_string(),
                fibers,
                sing,
                rho: 1,
                j: None,
                coreg: (0, 0, 0),
                labels: &[],
                moduli_dim: None,
                source: "non-isotrivial surface sharing the singularities of an extremal one",
            }
            .into(),
        );
    }
    let instar = [
        ("instar/D5+A1", "w^2 + z^3 - 3*(x-y)*x*y^2*z + 2*(x-y)*x^2*y^3", "I1* + III + II", "D5 + A1", "X'1(D5+A1)"),
        ("instar/D6", "w^2 + z^3 - 3*(x^2-y^2)*y^2*z + 2*(x^2-y^2)*x*y^3", "I2* + 2II", "D6", "X'1(D6)"),
    ];
    for (name, eq, fibers, sing, label) in instar {
        out.push(
            Witness::from(Entry {
                name,
                equation: eq.to_string(),
                fibers,
                sing,
                rho: 3,
                j: None,
                coreg: (1, 0, 0),
                labels: &[],
                moduli_dim: None,
                source: "surface without a toric model although coreg = 0",
            })
            .with_label(label),
        );
    }
    for (name, a) in [("product/a=2", "2"), ("product/a=-1", "-1"), ("product/a=1/2", "1/2")] {
        out.push(
            Entry {
                name,
                equation: format!("w^2 = z*(z+x*y)*(z+({a})*x*y)"),
                fibers: "2I0*",
                sing: "2D4",
                rho: 1,
                // These three a are harmonic: the cubic's roots 0, -1, -a have cross-ratio -1.
                j: Some(int(1728)),
                coreg: (1, 0, 0),
                labels: &["X1(2D4)"],
                moduli_dim: Some(0),
                source: "2D4 family w^2 = z(z+xy)(z+axy)",
            }
            .into(),
        );
    }
    out
}

impl Witness {
    fn with_label(mut self, label: &str) -> Self {
        self.labels.push(label.to_string());
        self
    }

    /// Compares a report against every expectation of the witness.
    pub fn compare(&self, r: &ClassificationReport) -> Vec<Mismatch> {
        let mut out = Vec::new();
        let mut check = |field: &'static str, expected: String, got: String| {
            if expected != got {
                out.push(Mismatch { field, expected, got });
            }
        };
        let show = |o: Option<String>| o.unwrap_or_else(|| "none".into());
        check("fibers", self.fibers.to_string(), show(r.configuration().map(|c| c.to_string())));
        check("sing", self.sing.to_string(), show(r.sing.as_ref().map(|s| s.to_string())));
        check("rho", self.rho.to_string(), show(r.rho.map(|v| v.to_string())));
        check("isotrivial", self.isotrivial.to_string(), show(r.isotrivial.map(|v| v.to_string())));
        let expected_j = match &self.j {
            Some(v) => JInvariant::Constant(v.clone()).to_string(),
            None => JInvariant::NonConstant.to_string(),
        };
        check("j", expected_j, show(r.j.as_ref().map(|j| j.to_string())));
        check(
            "coreg",
            format!("{:?}", self.coreg),
            format!("{:?}", (r.coreg1, r.coreg2, r.coreg)),
        );
        check("toric_model", self.toric_model.to_string(), r.toric_model.to_string());
        check("labels", self.labels.join(", "), r.labels.join(", "));
        check("moduli_dim", show(self.moduli_dim.map(|d| d.to_string())), show(r.moduli_dim.map(|d| d.to_string())));
        out
    }
}

/// Classifies the witness equation; `Ok(Err(..))` lists failed expectations.
pub fn verify_witness(w: &Witness) -> Result<Result<ClassificationReport, Vec<Mismatch>>, Error> {
    let report = classify_surface(&w.equation)?;
    let mismatches = w.compare(&report);
    Ok(if mismatches.is_empty() { Ok(report) } else { Err(mismatches) })
}
