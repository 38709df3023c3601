use std::fmt::Write as _;

use super::catalog::{check_parameters, witness_catalog, L, M, N};
use crate::delpezzo::{classify_surface, SingularityConfig};
use crate::exact_forms::{factor_over_rationals, BinaryForm, Rational};
use crate::kodaira::Configuration;
use crate::weierstrass::parse_binary_form;
use crate::Error;

/// A row of an isotrivial table as it appears in the literature, with
/// `l, m, n` instantiated.
pub(crate) struct GoldenRow {
    pub name: &'static str,
    pub fibers: &'static str,
    pub sing: &'static str,
    pub f: String,
    pub coreg: u8,
    pub rho: u32,
    pub moduli_dim: u32,
}

fn row(
    name: &'static str,
    fibers: &'static str,
    sing: &'static str,
    f: String,
    coreg: u8,
    rho: u32,
    moduli_dim: u32,
) -> GoldenRow {
    GoldenRow { name, fibers, sing, f, coreg, rho, moduli_dim }
}

/// `w² + z³ + f6 = 0`.
pub(crate) fn j0_rows() -> Vec<GoldenRow> {
    check_parameters();
    vec![
        row("j0/E8", "II* + II", "E8", "x^5*y".into(), 1, 1, 0),
        row("j0/E6+A2", "IV* + IV", "E6 + A2", "x^4*y^2".into(), 1, 1, 0),
        row("j0/E6", "IV* + 2II", "E6", "x^4*y*(x-y)".into(), 1, 3, 0),
        row("j0/2D4", "2I0*", "2D4", "x^3*y^3".into(), 0, 1, 0),
        row("j0/D4+A2", "I0* + IV + II", "D4 + A2", "x^3*y^2*(x-y)".into(), 1, 3, 0),
        row("j0/D4", "I0* + 3II", "D4", format!("x^3*y*(x-y)*(x-{L}*y)"), 1, 5, 1),
        row("j0/3A2", "3IV", "3A2", "x^2*y^2*(x-y)^2".into(), 1, 3, 0),
        row("j0/2A2", "2IV + 2II", "2A2", format!("x^2*y^2*(x-y)*(x-{L}*y)"), 1, 5, 1),
        row("j0/A2", "IV + 4II", "A2", format!("x^2*y*(x-y)*(x-{L}*y)*(x-{M}*y)"), 1, 7, 2),
        row("j0/smooth", "6II", "none", format!("x*y*(x-y)*(x-{L}*y)*(x-{M}*y)*(x-{N}*y)"), 1, 9, 3),
    ]
}

/// `w² + z³ + f4 z = 0`.
pub(crate) fn j1728_rows() -> Vec<GoldenRow> {
    check_parameters();
    vec![
        row("j1728/E7+A1", "III* + III", "E7 + A1", "x^3*y".into(), 1, 1, 0),
        row("j1728/2D4", "2I0*", "2D4", "x^2*y^2".into(), 0, 1, 0),
        row("j1728/D4+2A1", "I0* + 2III", "D4 + 2A1", "x^2*y*(x-y)".into(), 0, 3, 0),
        row("j1728/4A1", "4III", "4A1", format!("x*y*(x-y)*(x-{L}*y)"), 1, 5, 1),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub fibers: Configuration,
    pub sing: SingularityConfig,
    /// `f6` for j = 0, `f4` for j = 1728, in the `w² + z³ + f4 z + f6 = 0` convention.
    pub f: BinaryForm,
    pub coreg: u8,
    pub rho: u32,
    pub moduli_dim: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    /// `"0"` or `"1728"`.
    pub j: &'static str,
    pub caption: &'static str,
    pub rows: Vec<TableRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TableMismatch {
    #[error("table j={table}, row {row}, column {column}: expected {expected}, got {got}")]
    Cell { table: &'static str, row: usize, column: &'static str, expected: String, got: String },
    #[error("table j={table}, row {row}: {source}")]
    Classifier { table: &'static str, row: usize, source: Error },
}

/// Reclassifies every table witness and checks each cell against the
/// published value.
pub fn emit_tables() -> Result<Vec<Table>, TableMismatch> {
    let catalog = witness_catalog();
    let specs = [
        ("0", "Singular fibers of isotrivial elliptic fibrations with j = 0", j0_rows(), 6usize),
        ("1728", "Singular fibers of isotrivial elliptic fibrations with j = 1728", j1728_rows(), 4),
    ];
    let mut tables = Vec::new();
    for (j, caption, golden, f_degree) in specs {
        let mut rows = Vec::new();
        for (i, g) in golden.iter().enumerate() {
            let index = i + 1;
            let witness = catalog.iter().find(|w| w.name == g.name).expect("table witness in catalog");
            let report = classify_surface(&witness.equation)
                .map_err(|source| TableMismatch::Classifier { table: j, row: index, source })?;
            let wd = report.weierstrass.as_ref().expect("degree-one report");
            let f = if f_degree == 6 { wd.f6.neg() } else { wd.f4.clone() };
            let computed = TableRow {
                fibers: report.configuration().cloned().unwrap_or_default(),
                sing: report.sing.clone().unwrap_or_default(),
                f,
                coreg: report.coreg,
                rho: report.rho.unwrap_or(0),
                moduli_dim: report.moduli_dim.unwrap_or(u32::MAX),
            };
            let cell = |column: &'static str, expected: String, got: String| {
                if expected == got {
                    Ok(())
                } else {
                    Err(TableMismatch::Cell { table: j, row: index, column, expected, got })
                }
            };
            let golden_fibers: Configuration = g.fibers.parse().expect("valid notation");
            let golden_sing: SingularityConfig = g.sing.parse().expect("valid notation");
            let golden_f = parse_binary_form(&g.f, f_degree).expect("valid table polynomial");
            cell("fibers", golden_fibers.to_string(), computed.fibers.to_string())?;
            cell("sing", golden_sing.to_string(), computed.sing.to_string())?;
            cell("f", render_factored(&golden_f), render_factored(&computed.f))?;
            cell("coreg", g.coreg.to_string(), computed.coreg.to_string())?;
            cell("rho", g.rho.to_string(), computed.rho.to_string())?;
            cell("dim M", g.moduli_dim.to_string(), computed.moduli_dim.to_string())?;
            rows.push(computed);
        }
        tables.push(Table { j, caption, rows });
    }
    Ok(tables)
}

/// `x^3*y*(x - y)*(x - 2*y)`: monomial part first, then the remaining
/// irreducible factors.
pub fn render_factored(f: &BinaryForm) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let fac = factor_over_rationals(f).expect("nonzero form");
    let pow = |base: String, m: u32| if m == 1 { base } else { format!("{base}^{m}") };
    let one = Rational::from_integer(1.into());
    let mut parts = Vec::new();
    if fac.content == -one.clone() {
        parts.push("-1".to_string());
    } else if fac.content != one {
        parts.push(fac.content.to_string());
    }
    for var in [BinaryForm::x(), BinaryForm::y()] {
        if let Some((_, m)) = fac.factors.iter().find(|(g, _)| *g == var) {
            parts.push(pow(var.to_string(), *m));
        }
    }
    let mut rest: Vec<_> = fac
        .factors
        .iter()
        .filter(|(g, _)| *g != BinaryForm::x() && *g != BinaryForm::y())
        .collect();
    rest.sort_by(|(a, _), (b, _)| a.degree().cmp(&b.degree()).then_with(|| b.coeffs().cmp(a.coeffs())));
    parts.extend(rest.into_iter().map(|(g, m)| pow(format!("({g})"), *m)));
    if parts.is_empty() {
        return "1".into();
    }
    parts.join("*")
}

/// Plain-text rendering, one table after the other.
pub fn render_tables(tables: &[Table]) -> String {
    let mut out = String::new();
    for t in tables {
        let f_name = if t.j == "0" { "f6" } else { "f4" };
        let _ = writeln!(out, "{}", t.caption);
        let header = ["fibers", "sing", f_name, "coreg", "rho", "dim M"];
        let cells: Vec<[String; 6]> = t
            .rows
            .iter()
            .map(|r| {
                [
                    r.fibers.to_string(),
                    r.sing.to_string(),
                    render_factored(&r.f),
                    r.coreg.to_string(),
                    r.rho.to_string(),
                    r.moduli_dim.to_string(),
                ]
            })
            .collect();
        let widths: Vec<usize> = (0..6)
            .map(|c| cells.iter().map(|r| r[c].chars().count()).chain([header[c].len()]).max().unwrap())
            .collect();
        let line = |vals: [&str; 6]| {
            let mut s = String::new();
            for (c, v) in vals.iter().enumerate() {
                if c > 0 {
                    s.push_str("  ");
                }
                let _ = write!(s, "{v:<w$}", w = widths[c]);
            }
            s.trim_end().to_string()
        };
        let _ = writeln!(out, "{}", line(header));
        for r in &cells {
            let _ = writeln!(out, "{}", line([&r[0], &r[1], &r[2], &r[3], &r[4], &r[5]]));
        }
        out.push('\n');
    }
    out
}
