//! JSON report documents and their plain-text rendering.
//!
//! Every document carries the keys `input`, `field`, `invariance_dim`,
//! `projection_matrix`, `reduced_map`, `jelonek_generators`,
//! `critical_generators`, `ltv` and `checks`, in that order. Stages a
//! subcommand does not run are `null`. Extra blocks follow the fixed keys.

use std::fmt::Write as _;

use ltv_core::classifier::{
    CheckData, CheckResult, ContainmentRow, GradientProbeReport, IntervalVerdict, LtvDescription, LtvReport, ProbeRow,
    TubeProbeReport,
};
use ltv_core::critical::RealCriticalValue;
use ltv_core::dependence::FactorizationResult;
use ltv_core::infinity::{ConeConstancy, ConeShape, InfinityReport};
use ltv_core::linalg::Subspace;
use ltv_core::properness::{Evidence, PropernessVerdict};
use ltv_core::{PolyMap, Polynomial, Rational, Ring};
use serde_json::{json, Map, Value};

use crate::parser::{print_fraction, print_polynomial, InputMap, MapSource};

pub const SCHEMA_KEYS: [&str; 9] = [
    "input",
    "field",
    "invariance_dim",
    "projection_matrix",
    "reduced_map",
    "jelonek_generators",
    "critical_generators",
    "ltv",
    "checks",
];

const VERDICTS: [&str; 4] = ["PASS", "FAIL", "INCONCLUSIVE", "SKIPPED"];

fn rat(q: &Rational) -> Value {
    Value::String(q.to_string())
}

fn rats(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rat).collect())
}

fn num(x: f64) -> Value {
    // Non-finite floats have no JSON form.
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

fn nums(v: &[f64]) -> Value {
    Value::Array(v.iter().copied().map(num).collect())
}

fn opt_num(x: Option<f64>) -> Value {
    x.map_or(Value::Null, num)
}

fn polys(ps: &[Polynomial]) -> Value {
    Value::Array(ps.iter().map(|p| Value::String(print_polynomial(p))).collect())
}

fn subspace(s: &Subspace) -> Value {
    json!({ "dim": s.dim(), "basis": s.basis().iter().map(|b| rats(b)).collect::<Vec<_>>() })
}

fn names(ring: &Ring) -> Value {
    Value::Array(ring.names().iter().map(|s| Value::String(s.clone())).collect())
}

/// Linear forms in the input variables, one per row.
fn linear_forms(ring: &Ring, rows: &[Vec<Rational>]) -> Vec<String> {
    rows.iter()
        .map(|row| {
            let terms = row.iter().enumerate().map(|(j, c)| Polynomial::var(ring, j).expect("row fits the ring").scale(c));
            print_polynomial(&terms.fold(Polynomial::zero(ring), |a, b| &a + &b))
        })
        .collect()
}

fn input_block(src: &MapSource) -> Value {
    let (kind, comps): (&str, Vec<String>) = match &src.map {
        InputMap::Polynomial(f) => ("map", f.components().iter().map(print_polynomial).collect()),
        InputMap::Rational(r) => ("ratmap", r.numerators().iter().zip(r.denominators()).map(|(a, b)| print_fraction(a, b)).collect()),
    };
    json!({ "name": src.name, "kind": kind, "ring": names(src.ring()), "components": comps })
}

/// A document with every fixed key present and unset stages `null`.
pub fn empty_document(src: &MapSource, field: &str) -> Map<String, Value> {
    let mut doc = Map::new();
    doc.insert("tool_version".into(), Value::String(env!("CARGO_PKG_VERSION").into()));
    for k in SCHEMA_KEYS {
        doc.insert(k.into(), Value::Null);
    }
    doc.insert("input".into(), input_block(src));
    doc.insert("field".into(), Value::String(field.into()));
    doc.insert("checks".into(), Value::Array(Vec::new()));
    doc
}

pub fn set_factorization(doc: &mut Map<String, Value>, f: &PolyMap, fact: &FactorizationResult) {
    let pi = fact.pi.row_vectors();
    doc.insert("invariance_dim".into(), json!(fact.v.dim()));
    doc.insert("projection_matrix".into(), Value::Array(pi.iter().map(|r| rats(r)).collect()));
    doc.insert("reduced_map".into(), json!({ "ring": names(fact.g.ring()), "components": polys(fact.g.components()) }));
    doc.insert(
        "factorization".into(),
        json!({
            "invariance_basis": fact.v.basis().iter().map(|b| rats(b)).collect::<Vec<_>>(),
            "m": fact.m,
            "projection_forms": linear_forms(f.ring(), &pi),
        }),
    );
}

pub fn set_generators(doc: &mut Map<String, Value>, key: &str, gens: &[Polynomial]) {
    doc.insert(key.into(), polys(gens));
}

pub fn infinity_json(r: &InfinityReport) -> Value {
    let cone = match &r.cone {
        ConeShape::Linear(s) => json!({ "shape": "linear", "subspace": subspace(s) }),
        ConeShape::NonLinear => json!({ "shape": "nonlinear" }),
        ConeShape::Undecided => json!({ "shape": "undecided" }),
    };
    json!({
        "value": rats(&r.value),
        "closure_generators": polys(r.closure_ideal.generators()),
        "infinity_generators": polys(r.infinity_ideal.generators()),
        "dim_infinity": r.dim_infinity,
        "m_candidate": r.m_candidate,
        "cone_generators": polys(r.cone_ideal.generators()),
        "cone": cone,
        "real_certified": r.real_certified,
    })
}

pub fn cone_constancy_json(c: &ConeConstancy) -> Value {
    match c {
        ConeConstancy::Constant(s) => json!({ "outcome": "constant", "subspace": subspace(s) }),
        ConeConstancy::Differs { first, second, a, b } => {
            json!({ "outcome": "differs", "first": first, "second": second, "a": subspace(a), "b": subspace(b) })
        }
        ConeConstancy::NonLinear { index } => json!({ "outcome": "nonlinear", "index": index }),
        ConeConstancy::Undecided { index } => json!({ "outcome": "undecided", "index": index }),
    }
}

pub fn properness_json(v: &PropernessVerdict) -> Value {
    let evidence = match &v.evidence {
        Evidence::Exact { jelonek_vanishes, fiber_dimension } => {
            json!({ "kind": "exact", "jelonek_vanishes": jelonek_vanishes, "fiber_dimension": fiber_dimension })
        }
        Evidence::Radii { trace, diagnostics } => json!({
            "kind": "radii",
            "trace": trace.iter().map(|(r, mu)| json!({ "radius": num(*r), "mu": num(*mu) })).collect::<Vec<_>>(),
            "diagnostics": diagnostics,
        }),
    };
    json!({ "value": nums(&v.value), "verdict": v.verdict.as_str(), "evidence": evidence })
}

pub fn tube_json(t: &TubeProbeReport) -> Value {
    json!({
        "c": nums(&t.c),
        "t": nums(&t.t),
        "radii": nums(&t.radii),
        "distances": t.distances.iter().map(|d| opt_num(*d)).collect::<Vec<_>>(),
        "lipschitz_estimate": opt_num(t.lipschitz_estimate),
        "delta": opt_num(t.delta),
        "epsilon": opt_num(t.epsilon),
        "verdict": t.verdict.as_str(),
    })
}

pub fn gradient_json(g: &GradientProbeReport) -> Value {
    json!({
        "c": nums(&g.c),
        "radii": nums(&g.radii),
        "sup_norms": g.sup_norms.iter().map(|d| opt_num(*d)).collect::<Vec<_>>(),
        "bound": opt_num(g.bound),
        "verdict": g.verdict.as_str(),
    })
}

fn containment_json(rows: &[ContainmentRow]) -> Value {
    Value::Array(rows.iter().map(|r| json!({ "value": rats(&r.value), "real": r.real.as_str() })).collect())
}

fn check_data(d: &CheckData) -> Value {
    match d {
        CheckData::None => Value::Null,
        CheckData::Necessary { value, dim_v, n, m_candidate, dim_infinity, real_certified, decisive } => json!({
            "value": rats(value),
            "dim_v": dim_v,
            "n": n,
            "m_candidate": m_candidate,
            "dim_infinity": dim_infinity,
            "real_certified": real_certified,
            "decisive": decisive,
        }),
        CheckData::ConeConstancy { values, outcome } => {
            json!({ "values": values.iter().map(|v| rats(v)).collect::<Vec<_>>(), "outcome": cone_constancy_json(outcome) })
        }
        CheckData::Dominance { nonzero_minors } => json!({ "nonzero_minors": nonzero_minors }),
        CheckData::Tube(t) => tube_json(t),
        CheckData::Gradient(g) => gradient_json(g),
        CheckData::Containment(rows) => containment_json(rows),
        CheckData::Indeterminacy(ind) => json!({
            "complex_unit": ind.complex_unit,
            "sos_certified": ind.sos_certified,
            "common_zeros": ind.common_zeros.iter().map(|(i, id)| json!({ "component": i, "generators": polys(id.generators()) })).collect::<Vec<_>>(),
        }),
        CheckData::RationalInvariance(inv) => json!({
            "subspace": subspace(&inv.subspace),
            "verified": inv.verified.iter().map(|v| rats(v)).collect::<Vec<_>>(),
            "closed": inv.closed,
        }),
    }
}

pub fn check_json(c: &CheckResult) -> Value {
    json!({ "name": c.name, "verdict": c.verdict.as_str(), "data": check_data(&c.data) })
}

fn row_json(r: &ProbeRow) -> Value {
    json!({
        "value": rats(&r.value),
        "membership": r.membership.as_str(),
        "certificate": r.certificate.as_str(),
        "in_critical_locus": r.in_critical_locus,
        "attained_critical": r.attained_critical,
        "properness": properness_json(&r.properness),
    })
}

fn interval_json(iv: &IntervalVerdict) -> Value {
    json!({ "lo": opt_num(iv.lo), "hi": opt_num(iv.hi), "row": row_json(&iv.row) })
}

pub fn critical_value_json(v: &RealCriticalValue) -> Value {
    json!({
        "value": num(v.value),
        "interval": [rat(&v.interval.lo), rat(&v.interval.hi)],
        "attained": v.attained,
        "witness": v.witness.as_deref().map(nums),
        "residual": num(v.residual),
    })
}

fn ltv_label(d: &LtvDescription) -> &'static str {
    match d {
        LtvDescription::Empty { .. } => "empty",
        LtvDescription::AllValues => "all values",
        LtvDescription::Complement { .. } => "complement",
        LtvDescription::RealComplement(_) => "real complement",
        LtvDescription::Undetermined { .. } => "undetermined",
        LtvDescription::NotApplicable { .. } => "not applicable",
    }
}

pub fn set_ltv(doc: &mut Map<String, Value>, d: &LtvDescription) {
    doc.insert("ltv".into(), Value::String(ltv_label(d).into()));
    match d {
        LtvDescription::Empty { reason } | LtvDescription::Undetermined { reason } | LtvDescription::NotApplicable { reason } => {
            doc.insert("reason".into(), Value::String(reason.clone()));
        }
        LtvDescription::AllValues => {}
        LtvDescription::Complement { generators } => {
            doc.insert("ltv_complement".into(), polys(generators));
        }
        LtvDescription::RealComplement(desc) => {
            doc.insert(
                "real".into(),
                json!({
                    "critical_generators": polys(&desc.critical_generators),
                    "jelonek_generators": polys(&desc.jelonek_generators),
                    "critical_values": desc.critical_values.iter().map(critical_value_json).collect::<Vec<_>>(),
                    "probes": desc.probes.iter().map(row_json).collect::<Vec<_>>(),
                    "intervals": desc.intervals.iter().map(interval_json).collect::<Vec<_>>(),
                }),
            );
        }
    }
}

/// The full document of a classification.
pub fn emit_report(src: &MapSource, r: &LtvReport) -> Value {
    let mut doc = empty_document(src, r.field.as_str());
    if let (Some(f), Some(fact)) = (&r.input, &r.factorization) {
        set_factorization(&mut doc, f, fact);
    }
    if let Some(j) = &r.jelonek {
        set_generators(&mut doc, "jelonek_generators", j.ideal.generators());
    }
    if let Some(c) = &r.critical {
        set_generators(&mut doc, "critical_generators", c.ideal.generators());
    }
    set_ltv(&mut doc, &r.ltv);
    doc.insert("checks".into(), Value::Array(r.checks.iter().map(check_json).collect()));
    doc.insert("budget_exceeded".into(), Value::Bool(r.budget_exceeded));
    if !r.infinity_sample.is_empty() {
        doc.insert("infinity".into(), Value::Array(r.infinity_sample.iter().map(infinity_json).collect()));
    }
    Value::Object(doc)
}

fn is_string_array(v: &Value) -> bool {
    v.as_array().is_some_and(|a| a.iter().all(Value::is_string))
}

/// Checks a document against the report schema.
pub fn validate_report_json(v: &Value) -> Result<(), String> {
    let doc = v.as_object().ok_or("report is not an object")?;
    let keys: Vec<&str> = doc.keys().map(String::as_str).filter(|k| SCHEMA_KEYS.contains(k)).collect();
    if keys != SCHEMA_KEYS {
        return Err(format!("schema keys missing or out of order: {keys:?}"));
    }
    let input = doc["input"].as_object().ok_or("`input` is not an object")?;
    for k in ["name", "kind", "ring", "components"] {
        if !input.contains_key(k) {
            return Err(format!("`input.{k}` missing"));
        }
    }
    if !matches!(doc["field"].as_str(), Some("real" | "complex")) {
        return Err("`field` must be \"real\" or \"complex\"".into());
    }
    if !(doc["invariance_dim"].is_null() || doc["invariance_dim"].is_u64()) {
        return Err("`invariance_dim` must be a non-negative integer".into());
    }
    let pm = &doc["projection_matrix"];
    if !(pm.is_null() || pm.as_array().is_some_and(|rows| rows.iter().all(is_string_array))) {
        return Err("`projection_matrix` must be rows of rational strings".into());
    }
    let rm = &doc["reduced_map"];
    if !(rm.is_null() || (is_string_array(&rm["ring"]) && is_string_array(&rm["components"]))) {
        return Err("`reduced_map` must have `ring` and `components`".into());
    }
    for k in ["jelonek_generators", "critical_generators"] {
        if !(doc[k].is_null() || is_string_array(&doc[k])) {
            return Err(format!("`{k}` must be a list of polynomial strings"));
        }
    }
    match &doc["ltv"] {
        Value::Null => {}
        Value::String(s) => match s.as_str() {
            "empty" | "undetermined" | "not applicable" if !doc.get("reason").is_some_and(Value::is_string) => {
                return Err(format!("`ltv` is \"{s}\" but `reason` is missing"));
            }
            "complement" if !doc.get("ltv_complement").is_some_and(is_string_array) => {
                return Err("`ltv` is \"complement\" but `ltv_complement` is missing".into());
            }
            "real complement" if !doc.get("real").is_some_and(Value::is_object) => {
                return Err("`ltv` is \"real complement\" but `real` is missing".into());
            }
            "empty" | "undetermined" | "not applicable" | "complement" | "real complement" | "all values" => {}
            other => return Err(format!("unknown `ltv` value \"{other}\"")),
        },
        _ => return Err("`ltv` must be a string".into()),
    }
    let checks = doc["checks"].as_array().ok_or("`checks` is not a list")?;
    for c in checks {
        let o = c.as_object().ok_or("check is not an object")?;
        let ks: Vec<&str> = o.keys().map(String::as_str).collect();
        if ks != ["name", "verdict", "data"] {
            return Err(format!("check keys must be name, verdict, data; found {ks:?}"));
        }
        if !o["name"].is_string() || !o["verdict"].as_str().is_some_and(|v| VERDICTS.contains(&v)) {
            return Err(format!("malformed check {c}"));
        }
    }
    Ok(())
}

fn join(v: &Value) -> String {
    v.as_array().map_or(String::new(), |a| a.iter().map(|x| x.as_str().map_or_else(|| x.to_string(), str::to_owned)).collect::<Vec<_>>().join(", "))
}

fn ideal(v: &Value) -> String {
    let s = join(v);
    if s.is_empty() { "0".into() } else { s }
}

fn fmt_v(v: &Value) -> String {
    v.as_f64().map_or_else(|| "-".into(), |x| {
        let s = format!("{x:.6}");
        s.trim_end_matches('0').trim_end_matches('.').to_owned()
    })
}

fn fmt_f(v: &Value) -> String {
    v.as_f64().map_or_else(|| "-".into(), |x| format!("{x:.3e}"))
}

/// Human-readable rendering of a document.
pub fn render_text(v: &Value) -> String {
    let mut s = String::new();
    let input = &v["input"];
    let _ = writeln!(s, "{} {}: ({}) over Q[{}]", input["kind"].as_str().unwrap_or("map"), input["name"].as_str().unwrap_or("f"), join(&input["components"]), join(&input["ring"]));
    let _ = writeln!(s, "field: {}", v["field"].as_str().unwrap_or("?"));
    if let Some(fact) = v.get("factorization") {
        let basis: Vec<String> = fact["invariance_basis"].as_array().into_iter().flatten().map(|b| format!("({})", join(b))).collect();
        let _ = writeln!(s, "invariance subspace: dim {}{}", v["invariance_dim"], if basis.is_empty() { String::new() } else { format!(", basis {}", basis.join(", ")) });
        let _ = writeln!(s, "m = {}", fact["m"]);
        let _ = writeln!(s, "pi: ({}) -> ({})", join(&input["ring"]), join(&fact["projection_forms"]));
        let rm = &v["reduced_map"];
        let _ = writeln!(s, "g({}) = ({})", join(&rm["ring"]), join(&rm["components"]));
    }
    if !v["jelonek_generators"].is_null() {
        let _ = writeln!(s, "jelonek ideal: <{}>", ideal(&v["jelonek_generators"]));
    }
    if !v["critical_generators"].is_null() {
        let _ = writeln!(s, "critical values ideal: <{}>", ideal(&v["critical_generators"]));
    }
    if let Some(cv) = v.get("real_critical_values").and_then(Value::as_array) {
        for c in cv {
            let _ = writeln!(s, "  real critical value {} attained={} residual={}", fmt_v(&c["value"]), c["attained"], fmt_f(&c["residual"]));
        }
    }
    if let Some(inf) = v.get("infinity").and_then(Value::as_array) {
        for r in inf {
            let cone = &r["cone"];
            let shape = match cone["shape"].as_str() {
                Some("linear") => format!("linear, dim {}", cone["subspace"]["dim"]),
                other => other.unwrap_or("?").to_owned(),
            };
            let _ = writeln!(s, "fibre at ({}): dim at infinity {}, m_candidate {}, cone {}", join(&r["value"]), r["dim_infinity"], r["m_candidate"], shape);
        }
    }
    match v["ltv"].as_str() {
        Some("empty") => {
            let _ = writeln!(s, "Ltv empty: {}", v["reason"].as_str().unwrap_or(""));
        }
        Some("all values") => s.push_str("Ltv: all values\n"),
        Some("complement") => {
            let _ = writeln!(s, "Ltv: complement of V({})", join(&v["ltv_complement"]));
        }
        Some("real complement") => {
            let real = &v["real"];
            s.push_str("Ltv (real): values of properness off the critical values\n");
            for c in real["critical_values"].as_array().into_iter().flatten() {
                let _ = writeln!(s, "  critical value {} attained={}", fmt_v(&c["value"]), c["attained"]);
            }
            for iv in real["intervals"].as_array().into_iter().flatten() {
                let side = |x: &Value, inf: &str| x.as_f64().map_or_else(|| inf.to_owned(), |x| format!("{x}"));
                let _ = writeln!(s, "  ({}, {}): {} ({})", side(&iv["lo"], "-inf"), side(&iv["hi"], "+inf"), iv["row"]["membership"].as_str().unwrap_or("?"), iv["row"]["certificate"].as_str().unwrap_or("?"));
            }
            for r in real["probes"].as_array().into_iter().flatten() {
                let _ = writeln!(s, "  value ({}): {} ({})", join(&r["value"]), r["membership"].as_str().unwrap_or("?"), r["certificate"].as_str().unwrap_or("?"));
            }
        }
        Some(other) => {
            let _ = writeln!(s, "Ltv {other}: {}", v["reason"].as_str().unwrap_or(""));
        }
        None => {}
    }
    if let Some(p) = v.get("probe") {
        if let Some(pr) = p.get("properness") {
            let _ = writeln!(s, "properness at ({}): {}", join(&pr["value"]), pr["verdict"].as_str().unwrap_or("?"));
            let ev = &pr["evidence"];
            if ev["kind"] == "exact" {
                let _ = writeln!(s, "  exact: jelonek vanishes {}, fibre dimension {}", ev["jelonek_vanishes"], ev["fiber_dimension"]);
            }
            for t in ev["trace"].as_array().into_iter().flatten() {
                let _ = writeln!(s, "  R = {}: mu = {}", t["radius"], fmt_f(&t["mu"]));
            }
        }
        if let Some(t) = p.get("tube") {
            let _ = writeln!(s, "tube between ({}) and ({}): {}", join(&t["c"]), join(&t["t"]), t["verdict"].as_str().unwrap_or("?"));
            let radii = t["radii"].as_array().cloned().unwrap_or_default();
            for (r, d) in radii.iter().zip(t["distances"].as_array().into_iter().flatten()) {
                let _ = writeln!(s, "  R = {r}: distance {}", fmt_f(d));
            }
        }
        if let Some(g) = p.get("gradient") {
            let _ = writeln!(s, "gradient bound near ({}): {} (sup {})", join(&g["c"]), g["verdict"].as_str().unwrap_or("?"), fmt_f(&g["bound"]));
        }
    }
    let checks = v["checks"].as_array().cloned().unwrap_or_default();
    if !checks.is_empty() {
        s.push_str("checks:\n");
        for c in &checks {
            let _ = writeln!(s, "  {}: {}", c["name"].as_str().unwrap_or("?"), c["verdict"].as_str().unwrap_or("?"));
        }
    }
    if v.get("budget_exceeded").and_then(Value::as_bool) == Some(true) {
        s.push_str("note: a Groebner budget was exhausted; the report is partial\n");
    }
    s
}
