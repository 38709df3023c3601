//! Machine-readable reports. Rationals are strings `"p/q"`, infinite
//! valuations are `"inf"`; object keys come out sorted, so equal inputs give
//! byte-identical output.

use serde_json::{json, Value};

use crate::delpezzo::{ClassificationReport, SingularityConfig};
use crate::enumerate::{render_factored, Annotation, Mismatch, Table, Witness};
use crate::exact_forms::Order;
use crate::kodaira::{Configuration, FiberConfiguration};
use crate::weierstrass::JInvariant;
use crate::Error;

/// Version of `docs/report.schema.json` the output conforms to.
pub const SCHEMA_VERSION: &str = "1.0.0";

fn order(v: Order) -> Value {
    match v {
        Order::Finite(n) => json!(n),
        Order::Infinity => json!("inf"),
    }
}

pub fn fibers_json(fc: &FiberConfiguration) -> Value {
    fc.places
        .iter()
        .map(|p| {
            json!({
                "type": p.fiber.tag(),
                "n": p.fiber.index(),
                "count": p.geometric_degree,
                "place_poly": p.poly.to_string(),
                "place_degree": p.geometric_degree,
                "v4": order(p.v4),
                "v6": order(p.v6),
                "vD": p.vd,
            })
        })
        .collect()
}

pub fn sing_json(sc: &SingularityConfig) -> Value {
    sc.iter()
        .map(|(l, c)| json!({ "family": l.family().as_str(), "index": l.index(), "count": c }))
        .collect()
}

pub fn j_json(j: &JInvariant) -> Value {
    match j {
        JInvariant::Constant(v) => json!({ "kind": "constant", "value": v.to_string() }),
        JInvariant::NonConstant => json!({ "kind": "nonconstant", "value": null }),
    }
}

pub fn report_json(r: &ClassificationReport) -> Value {
    json!({
        "degree": r.degree,
        "fibers": r.fibers.as_ref().map(fibers_json),
        "sing": r.sing.as_ref().map(sing_json),
        "rho": r.rho,
        "isotrivial": r.isotrivial,
        "j": r.j.as_ref().map(j_json),
        "coreg1": r.coreg1,
        "coreg2": r.coreg2,
        "coreg": r.coreg,
        "toric_model": r.toric_model,
        "extremal": r.extremal,
        "labels": r.labels,
        "moduli_dim": r.moduli_dim,
        "errors": [],
    })
}

pub fn error_entry(e: &Error) -> Value {
    json!({ "code": e.code(), "stage": e.stage().as_str(), "message": e.to_string() })
}

pub fn error_json(degree: u32, e: &Error) -> Value {
    json!({ "degree": degree, "errors": [error_entry(e)] })
}

pub fn configuration_json(fc: &Configuration) -> Value {
    let entries: Vec<Value> = fc
        .display_entries()
        .into_iter()
        .map(|(t, c)| json!({ "type": t.tag(), "n": t.index(), "count": c }))
        .collect();
    json!({ "notation": fc.to_string(), "entries": entries })
}

pub fn enumeration_json(items: &[(Configuration, Annotation)]) -> Value {
    items
        .iter()
        .map(|(fc, a)| {
            let mut v = configuration_json(fc);
            v["excluded"] = json!(a.excluded);
            v["witnesses"] = json!(a.witnesses);
            v["note"] = json!(a.note());
            v
        })
        .collect()
}

pub fn witness_json(w: &Witness) -> Value {
    json!({
        "name": w.name,
        "equation": w.equation,
        "fibers": w.fibers.to_string(),
        "sing": w.sing.to_string(),
        "rho": w.rho,
        "isotrivial": w.isotrivial,
        "j": w.j.as_ref().map(|v| v.to_string()),
        "coreg1": w.coreg.0,
        "coreg2": w.coreg.1,
        "coreg": w.coreg.2,
        "toric_model": w.toric_model,
        "labels": w.labels,
        "moduli_dim": w.moduli_dim,
        "source": w.source,
    })
}

pub fn mismatches_json(ms: &[Mismatch]) -> Value {
    ms.iter()
        .map(|m| json!({ "field": m.field, "expected": m.expected, "got": m.got }))
        .collect()
}

pub fn tables_json(tables: &[Table]) -> Value {
    let tables: Vec<Value> = tables
        .iter()
        .map(|t| {
            let rows: Vec<Value> = t
                .rows
                .iter()
                .map(|r| {
                    json!({
                        "fibers": r.fibers.to_string(),
                        "sing": r.sing.to_string(),
                        "f": render_factored(&r.f),
                        "coreg": r.coreg,
                        "rho": r.rho,
                        "moduli_dim": r.moduli_dim,
                    })
                })
                .collect();
            json!({ "j": t.j, "caption": t.caption, "rows": rows })
        })
        .collect();
    json!({ "tables": tables })
}
