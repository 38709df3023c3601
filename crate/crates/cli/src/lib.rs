//! `coreg`: classify degree-one du Val del Pezzo surfaces from their
//! equations, run the fiber-configuration enumerators, and check the
//! built-in witness catalog.
//!
//! Exit codes: 0 success, 1 parse or usage error, 2 invalid surface,
//! 3 catalog or table mismatch.

use std::fmt::Write as _;
use std::io::{self, BufRead, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::Value;

use coreg::delpezzo::{classify_short, classify_surface, degree_rule, ClassificationReport};
use coreg::enumerate::{
    annotate, enumerate_instar_without_in, emit_tables, enumerate_isotrivial, render_factored,
    render_tables, verify_witness, witness_catalog, IsotrivialClass,
};
use coreg::json;
use coreg::weierstrass::JInvariant;
use coreg::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID_SURFACE: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "coreg", version, about = "Coregularity of degree-one du Val del Pezzo surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify sextics in P(1,1,2,3), one per argument or input line.
    Classify(ClassifyArgs),
    /// List fiber configurations allowed by the Euler number.
    Enumerate(EnumerateArgs),
    /// List the witness equations, optionally re-verifying them.
    Catalog(CatalogArgs),
    /// Regenerate the isotrivial tables from the witnesses.
    Tables(TablesArgs),
}

#[derive(Args, Debug)]
struct ClassifyArgs {
    /// Emit one JSON object per input.
    #[arg(long)]
    json: bool,
    /// Classify inputs concurrently; output keeps input order.
    #[arg(long)]
    parallel: bool,
    /// Read one equation per line from a file.
    #[arg(long, conflicts_with_all = ["equations", "f4", "degree"])]
    file: Option<PathBuf>,
    /// Give w² = z³ + f4·z + f6 directly; needs --f6.
    #[arg(long, requires = "f6", allow_hyphen_values = true, conflicts_with_all = ["equations", "degree"])]
    f4: Option<String>,
    #[arg(long, requires = "f4", allow_hyphen_values = true)]
    f6: Option<String>,
    /// Report the degree rule for a del Pezzo surface of this degree (2..=9).
    #[arg(long, conflicts_with = "equations")]
    degree: Option<u32>,
    /// Equations such as "w^2 + z^3 + x^5*y"; read from stdin when absent.
    equations: Vec<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum JArg {
    #[value(name = "0")]
    Zero,
    #[value(name = "1728")]
    Value1728,
    #[value(name = "generic")]
    Generic,
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("query").required(true).args(["j", "instar"])))]
struct EnumerateArgs {
    /// Isotrivial configurations with this constant j.
    #[arg(long, value_enum)]
    j: Option<JArg>,
    /// Configurations with some I_n* (n >= 1) and no I_n.
    #[arg(long)]
    instar: bool,
    /// Bound on the total du Val rank.
    #[arg(long, requires = "instar", default_value_t = 8)]
    rank_cap: u32,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct CatalogArgs {
    /// Classify every witness and compare with its expectations.
    #[arg(long)]
    verify: bool,
    #[arg(long)]
    json: bool,
    #[arg(long)]
    parallel: bool,
}

#[derive(Args, Debug)]
struct TablesArgs {
    #[arg(long)]
    json: bool,
}

/// Runs the command line `args` (program name first) against the given streams.
pub fn run<I, S>(args: I, stdin: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let result = match cli.command {
        Command::Classify(a) => classify(a, stdin, out, err),
        Command::Enumerate(a) => enumerate(a, out),
        Command::Catalog(a) => catalog(a, out),
        Command::Tables(a) => tables(a, out, err),
    };
    result.unwrap_or_else(|e| {
        let _ = writeln!(err, "coreg: {e}");
        EXIT_USAGE
    })
}

fn exit_code(e: &Error) -> i32 {
    if e.is_invalid_surface() {
        EXIT_INVALID_SURFACE
    } else {
        EXIT_USAGE
    }
}

fn input_lines(text: &str) -> Vec<String> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(String::from)
        .collect()
}

enum Job {
    Equation(String),
    Short(String, String),
    Degree(u32),
}

impl Job {
    fn run(&self) -> Result<ClassificationReport, Error> {
        match self {
            Job::Equation(text) => classify_surface(text),
            Job::Short(f4, f6) => classify_short(f4, f6),
            Job::Degree(1) => Err(Error::DegreeOutOfRange(1)),
            Job::Degree(d) => degree_rule(*d),
        }
    }

    fn label(&self) -> String {
        match self {
            Job::Equation(text) => text.clone(),
            Job::Short(f4, f6) => format!("f4 = {f4}, f6 = {f6}"),
            Job::Degree(d) => format!("degree {d}"),
        }
    }

    fn degree(&self) -> u32 {
        match self {
            Job::Degree(d) => *d,
            _ => 1,
        }
    }
}

fn classify(
    a: ClassifyArgs,
    stdin: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> io::Result<i32> {
    let jobs: Vec<Job> = if let (Some(f4), Some(f6)) = (&a.f4, &a.f6) {
        vec![Job::Short(f4.clone(), f6.clone())]
    } else if let Some(d) = a.degree.filter(|d| *d != 1) {
        vec![Job::Degree(d)]
    } else if let Some(path) = &a.file {
        match std::fs::read_to_string(path) {
            Ok(text) => input_lines(&text).into_iter().map(Job::Equation).collect(),
            Err(e) => {
                writeln!(err, "coreg: cannot read {}: {e}", path.display())?;
                return Ok(EXIT_USAGE);
            }
        }
    } else if !a.equations.is_empty() {
        a.equations.iter().cloned().map(Job::Equation).collect()
    } else {
        let mut text = String::new();
        stdin.read_to_string(&mut text)?;
        input_lines(&text).into_iter().map(Job::Equation).collect()
    };
    if jobs.is_empty() {
        writeln!(err, "coreg: no input")?;
        return Ok(EXIT_USAGE);
    }
    let results: Vec<Result<ClassificationReport, Error>> = if a.parallel {
        jobs.par_iter().map(Job::run).collect()
    } else {
        jobs.iter().map(Job::run).collect()
    };
    let mut code = EXIT_OK;
    for (i, (job, result)) in jobs.iter().zip(&results).enumerate() {
        if let Err(e) = result {
            code = code.max(exit_code(e));
        }
        if a.json {
            let v = match result {
                Ok(r) => json::report_json(r),
                Err(e) => json::error_json(job.degree(), e),
            };
            writeln!(out, "{}", serde_json::to_string(&v).expect("serializable"))?;
        } else {
            if i > 0 {
                writeln!(out)?;
            }
            out.write_all(text_report(job, result).as_bytes())?;
        }
    }
    Ok(code)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn text_report(job: &Job, result: &Result<ClassificationReport, Error>) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "input: {}", job.label());
    let r = match result {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(s, "error [{} at {}]: {e}", e.code(), e.stage().as_str());
            return s;
        }
    };
    let _ = writeln!(s, "degree: {}", r.degree);
    if let Some(wd) = &r.weierstrass {
        let _ = writeln!(s, "short form: w^2 = z^3 + f4*z + f6");
        let _ = writeln!(s, "f4: {}", wd.f4);
        let _ = writeln!(s, "f6: {}", wd.f6);
        let _ = writeln!(s, "discriminant: {}", render_factored(&wd.delta));
    }
    if let Some(fc) = &r.fibers {
        let _ = writeln!(s, "fibers: {fc}");
        for p in &fc.places {
            let _ = writeln!(
                s,
                "  {}: {} (degree {}, v4={}, v6={}, vD={})",
                p.poly, p.fiber, p.geometric_degree, p.v4, p.v6, p.vd
            );
        }
    }
    if let Some(sing) = &r.sing {
        let _ = writeln!(s, "sing: {sing}");
    }
    if let Some(rho) = r.rho {
        let _ = writeln!(s, "rho: {rho}");
    }
    if let (Some(iso), Some(j)) = (r.isotrivial, &r.j) {
        match j {
            JInvariant::Constant(v) if iso => {
                let _ = writeln!(s, "isotrivial: yes, j = {v}");
            }
            _ => {
                let _ = writeln!(s, "isotrivial: no, j nonconstant");
            }
        }
    }
    let _ = writeln!(s, "coreg1: {}", r.coreg1);
    let _ = writeln!(s, "coreg2: {}", r.coreg2);
    let _ = writeln!(s, "coreg: {}", r.coreg);
    let _ = writeln!(s, "toric model: {}", yes_no(r.toric_model));
    if let Some(ext) = r.extremal {
        let _ = writeln!(s, "extremal: {}", yes_no(ext));
    }
    if !r.labels.is_empty() {
        let _ = writeln!(s, "labels: {}", r.labels.join(", "));
    }
    if let Some(d) = r.moduli_dim {
        let _ = writeln!(s, "moduli dim: {d}");
    }
    s
}

fn enumerate(a: EnumerateArgs, out: &mut dyn Write) -> io::Result<i32> {
    let configs = match a.j {
        Some(JArg::Zero) => enumerate_isotrivial(IsotrivialClass::Zero),
        Some(JArg::Value1728) => enumerate_isotrivial(IsotrivialClass::Value1728),
        Some(JArg::Generic) => enumerate_isotrivial(IsotrivialClass::Generic),
        None => enumerate_instar_without_in(a.rank_cap),
    };
    let annotated = annotate(&configs);
    if a.json {
        let v = json::enumeration_json(&annotated);
        writeln!(out, "{}", serde_json::to_string(&v).expect("serializable"))?;
        return Ok(EXIT_OK);
    }
    writeln!(out, "{} configuration{}", annotated.len(), if annotated.len() == 1 { "" } else { "s" })?;
    let width = annotated.iter().map(|(c, _)| c.to_string().len()).max().unwrap_or(0);
    for (fc, ann) in &annotated {
        let mut note = ann.note().to_string();
        if !ann.witnesses.is_empty() {
            let _ = write!(note, " ({})", ann.witnesses.join(", "));
        }
        writeln!(out, "{:<width$}  {note}", fc.to_string())?;
    }
    Ok(EXIT_OK)
}

fn catalog(a: CatalogArgs, out: &mut dyn Write) -> io::Result<i32> {
    let witnesses = witness_catalog();
    if !a.verify {
        if a.json {
            let v: Value = witnesses.iter().map(json::witness_json).collect();
            writeln!(out, "{}", serde_json::to_string(&v).expect("serializable"))?;
        } else {
            for w in &witnesses {
                writeln!(out, "{:<16} {:<18} {}", w.name, w.fibers.to_string(), w.equation)?;
            }
        }
        return Ok(EXIT_OK);
    }
    let results: Vec<_> = if a.parallel {
        witnesses.par_iter().map(verify_witness).collect()
    } else {
        witnesses.iter().map(verify_witness).collect()
    };
    let mut failed = 0;
    let mut rows = Vec::new();
    for (w, res) in witnesses.iter().zip(&results) {
        let (ok, detail, mismatches) = match res {
            Ok(Ok(_)) => (true, String::new(), Value::Array(vec![])),
            Ok(Err(ms)) => (
                false,
                ms.iter().map(|m| m.to_string()).collect::<Vec<_>>().join("; "),
                json::mismatches_json(ms),
            ),
            Err(e) => (false, e.to_string(), serde_json::json!([json::error_entry(e)])),
        };
        if !ok {
            failed += 1;
        }
        if a.json {
            rows.push(serde_json::json!({ "name": w.name, "pass": ok, "mismatches": mismatches }));
        } else if ok {
            writeln!(out, "PASS {}", w.name)?;
        } else {
            writeln!(out, "FAIL {}: {detail}", w.name)?;
        }
    }
    if a.json {
        writeln!(out, "{}", serde_json::to_string(&Value::Array(rows)).expect("serializable"))?;
    } else {
        writeln!(out, "{}/{} witnesses verified", witnesses.len() - failed, witnesses.len())?;
    }
    Ok(if failed == 0 { EXIT_OK } else { EXIT_MISMATCH })
}

fn tables(a: TablesArgs, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<i32> {
    match emit_tables() {
        Ok(t) if a.json => {
            writeln!(out, "{}", serde_json::to_string(&json::tables_json(&t)).expect("serializable"))?;
            Ok(EXIT_OK)
        }
        Ok(t) => {
            out.write_all(render_tables(&t).as_bytes())?;
            Ok(EXIT_OK)
        }
        Err(e) => {
            writeln!(err, "coreg: {e}")?;
            Ok(EXIT_MISMATCH)
        }
    }
}
