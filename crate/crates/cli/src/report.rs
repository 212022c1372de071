//! JSON documents produced by the commands.

use serde_json::{json, Value};
use starnode::catalog;
use starnode::circle::{self, DynamicsType, SymbolSequence};
use starnode::contraction::{self, Witness};
use starnode::parser::FieldSource;
use starnode::rational::{to_compact_string, to_fraction_string};
use starnode::{BinaryForm, Rational, StarField};

pub const SCHEMA_VERSION: u32 = 1;

pub fn q(r: &Rational) -> Value {
    Value::String(to_fraction_string(r))
}

pub fn coeffs(f: &BinaryForm) -> Value {
    Value::Array(f.coeffs().iter().map(q).collect())
}

fn form(f: &BinaryForm) -> Value {
    json!({ "text": f.to_string(), "coefficients": coeffs(f) })
}

pub fn witness(w: &Witness) -> Value {
    match w {
        Witness::Direction { x, y, value } => json!({
            "kind": "direction",
            "x": q(x),
            "y": q(y),
            "value": q(value),
        }),
        Witness::TouchingRoot { lo, hi } => json!({
            "kind": "touching_root",
            "slope_lo": q(lo),
            "slope_hi": q(hi),
        }),
    }
}

pub fn witness_text(w: &Witness) -> String {
    match w {
        Witness::Direction { x, y, value } => format!(
            "MQ({}, {}) = {} >= 0",
            to_compact_string(x),
            to_compact_string(y),
            to_compact_string(value)
        ),
        Witness::TouchingRoot { lo, hi } => format!(
            "MQ(1, t) vanishes for some t in ({}, {})",
            to_compact_string(lo),
            to_compact_string(hi)
        ),
    }
}

fn sigma(s: &SymbolSequence) -> Value {
    json!({
        "raw": s.to_string(),
        "canonical": s.canonical().to_string(),
        "admissible": s.is_admissible(),
    })
}

fn inventory(f: &StarField) -> Value {
    match circle::equilibrium_inventory(f) {
        Ok(inv) => {
            let list: Vec<Value> = inv
                .circle_equilibria
                .iter()
                .map(|e| {
                    json!({
                        "theta": e.theta,
                        "slope_bracket": e.slope_bracket.as_ref().map(|(a, b)| json!([q(a), q(b)])),
                        "multiplicity": e.multiplicity,
                        "root_type": circle::root_type_name(e.multiplicity),
                        "symbol": e.symbol.to_string(),
                        "local_type": e.local_type,
                        "hyperbolic": e.hyperbolic,
                        "radius": e.radius,
                    })
                })
                .collect();
            json!({
                "circle_equilibria": list,
                "count_finite_nonorigin": inv.count_finite_nonorigin,
                "count_infinite": inv.count_infinite,
            })
        }
        Err(_) => json!({
            "circle_equilibria": null,
            "count_finite_nonorigin": null,
            "count_infinite": null,
            "note": "every point of the invariant circle and of the circle at infinity is an equilibrium",
        }),
    }
}

/// The full analysis of a parsed field.
pub fn analyze(src: &FieldSource, input: &str) -> Value {
    let f = &src.field;
    let v = contraction::verdict(f);
    let d = f.decompose();
    let mut warnings: Vec<String> = Vec::new();
    if src.normalized {
        warnings.push("negative lambda normalized by reversing time".into());
    }
    let mut doc = json!({
        "schema_version": SCHEMA_VERSION,
        "input": {
            "text": input,
            "name": src.name,
            "lambda": q(f.lambda()),
            "degree": f.degree(),
            "q1": form(f.q1()),
            "q2": form(f.q2()),
        },
        "contraction": {
            "is_contracting": v.is_contracting,
            "witness": v.witness.as_ref().map(witness),
            "sufficient": {
                "gershgorin": v.gershgorin,
                "determinant": v.determinant,
                "cubic_corners": v.cubic,
            },
        },
        "decomposition": {
            "p1": coeffs(&d.p1),
            "p2": coeffs(&d.p2),
            "p3": coeffs(&d.p3),
            "p4": coeffs(&d.p4),
        },
        "phase_form": form(&f.lq()),
        "radial_form": form(&f.mq()),
    });
    let g = f.lq();
    if let Ok(s) = circle::symbol_sequence(&g) {
        doc["sigma"] = sigma(&s);
        doc["stratum"] = json!(s.stratum(f.p()));
    }
    if v.is_contracting {
        if let Ok(c) = circle::classify_circle(f) {
            doc["dynamics_type"] = json!(c.dynamics_type);
            doc["quick_tests"] = json!(c.quick.triggered());
            if c.degenerate {
                warnings.push("phase form has a root of multiplicity at least 3".into());
            }
            if let Some(graph) = &c.invariant_circle_graph {
                doc["invariant_circle"] = json!({
                    "equation": format!("{} = 0", graph.implicit()),
                });
            }
            if c.dynamics_type != DynamicsType::Continuum && c.quick.continuum {
                warnings.push("continuum quick test fired on a non-continuum field".into());
            }
        }
        doc["equilibria"] = inventory(f);
        if f.degree() == 3 {
            doc["catalog_match"] = match catalog::match_cubic(f) {
                Ok(m) => json!({ "class": m.class, "sigma": m.sigma }),
                Err(e) => json!({ "error": e.to_string() }),
            };
        }
    } else {
        warnings.push("field is not contracting; circle classification skipped".into());
    }
    doc["warnings"] = json!(warnings);
    doc
}

/// One-screen text summary of an analysis document.
pub fn summary(doc: &Value) -> String {
    let mut out = String::new();
    let get = |k: &str| doc.get(k).cloned().unwrap_or(Value::Null);
    let contracting = doc["contraction"]["is_contracting"].as_bool().unwrap_or(false);
    out.push_str(&format!("contracting: {}\n", if contracting { "yes" } else { "no" }));
    if let Some(raw) = doc["sigma"]["raw"].as_str() {
        out.push_str(&format!("sigma: {raw}\n"));
    }
    if let Some(t) = get("dynamics_type").as_str() {
        out.push_str(&format!("dynamics: {t}\n"));
    }
    if let Some(s) = get("stratum").as_u64() {
        out.push_str(&format!("stratum: {s}\n"));
    }
    for w in doc["warnings"].as_array().into_iter().flatten() {
        if let Some(w) = w.as_str() {
            out.push_str(&format!("warning: {w}\n"));
        }
    }
    out
}

pub fn sigma_report(g: &BinaryForm) -> starnode::Result<Value> {
    let s = circle::symbol_sequence(g)?;
    let p = (g.degree().max(2) - 2) / 2;
    let violations: Vec<String> = s.validate_admissible().iter().map(|v| v.to_string()).collect();
    Ok(json!({
        "schema_version": SCHEMA_VERSION,
        "form": g.to_string(),
        "sigma": s.to_string(),
        "canonical": s.canonical().to_string(),
        "admissible": violations.is_empty(),
        "violations": violations,
        "stratum": s.stratum(p),
    }))
}
