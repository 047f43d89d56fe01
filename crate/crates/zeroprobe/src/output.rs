//! Deterministic CSV and JSON renderings of reports.
//!
//! CSV floats carry 17 significant digits; JSON numbers use the shortest
//! representation that parses back to the same binary64. Non-finite values
//! are written as the strings `inf`, `-inf` and `nan` in both formats.

use serde_json::{json, Map, Value};
use zeroprobe_core::bounds::BoundReport;
use zeroprobe_core::coeff::CoeffValue;
use zeroprobe_core::hankel::{PointOutcome, ScanPoint, ScanReport};
use zeroprobe_core::sine::Witness;
use zeroprobe_core::zeta::LambdaSpacing;
use zeroprobe_core::{Extended, SpacingReport};

/// `%.17g`: 17 significant digits, exponent form outside `[1e-5, 1e17)`.
pub fn g17(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return if v.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{v:.16e}");
    let (mant, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..17).contains(&exp) {
        format!("{v:.prec$}", prec = (16 - exp) as usize)
    } else {
        format!("{mant}e{exp}")
    }
}

pub fn extended_str(e: Extended) -> String {
    match e {
        Extended::Finite(v) => g17(v),
        Extended::Infinite => "inf".into(),
    }
}

/// A JSON number, or a string for non-finite values.
pub fn num(v: f64) -> Value {
    if v.is_finite() {
        json!(v)
    } else {
        Value::String(g17(v))
    }
}

fn ext(e: Extended) -> Value {
    match e {
        Extended::Finite(v) => num(v),
        Extended::Infinite => Value::String("inf".into()),
    }
}

/// Rows of a CSV table with a header.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
    }
}

pub fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serialisable value");
    s.push('\n');
    s
}

pub fn spacing_table(r: &SpacingReport) -> Table {
    let mut t = Table::new(&["c", "b", "kappa", "coincident_abscissae"]);
    t.push(vec![extended_str(r.c), extended_str(r.b), extended_str(r.kappa), r.coincident_abscissae.to_string()]);
    t
}

pub fn spacing_json(r: &SpacingReport) -> Value {
    json!({
        "c": ext(r.c),
        "b": ext(r.b),
        "kappa": ext(r.kappa),
        "c_pair": r.c_pair.map(|(i, j)| json!([i, j])),
        "b_index": r.b_index,
        "coincident_abscissae": r.coincident_abscissae,
    })
}

fn point_fields(p: &ScanPoint) -> (Option<f64>, Option<f64>, Option<f64>) {
    match &p.outcome {
        PointOutcome::Evaluated(h) => (Some(h.min_eigenvalue), Some(h.tail_budget), Some(h.tolerance)),
        PointOutcome::Failed(_) => (None, None, None),
    }
}

/// `x,N,min_eig,tail_budget,verdict`; unevaluated fields are left empty.
pub fn verdict_table(r: &ScanReport) -> Table {
    let mut t = Table::new(&["x", "N", "min_eig", "tail_budget", "verdict"]);
    for p in &r.points {
        let (m, tb, _) = point_fields(p);
        let opt = |v: Option<f64>| v.map(g17).unwrap_or_default();
        t.push(vec![g17(p.x), p.order.to_string(), opt(m), opt(tb), p.verdict().as_str().into()]);
    }
    t
}

pub fn scan_json(r: &ScanReport) -> Value {
    let points: Vec<Value> = r
        .points
        .iter()
        .map(|p| {
            let (m, tb, tol) = point_fields(p);
            let mut o = Map::new();
            o.insert("x".into(), num(p.x));
            o.insert("N".into(), json!(p.order));
            o.insert("min_eig".into(), m.map_or(Value::Null, num));
            o.insert("tail_budget".into(), tb.map_or(Value::Null, num));
            o.insert("tolerance".into(), tol.map_or(Value::Null, num));
            o.insert("verdict".into(), json!(p.verdict().as_str()));
            match &p.outcome {
                PointOutcome::Evaluated(h) => {
                    o.insert("block".into(), json!(h.block));
                    if let Some(c) = &h.certificate {
                        o.insert("certificate".into(), Value::Array(c.coeffs.iter().map(|&v| num(v)).collect()));
                    }
                }
                PointOutcome::Failed(e) => {
                    o.insert("error".into(), json!(e.to_string()));
                }
            }
            Value::Object(o)
        })
        .collect();
    let excluded: Vec<Value> =
        r.excluded.iter().map(|e| json!({"x": num(e.x), "reason": e.reason.to_string()})).collect();
    json!({"order": r.order, "any_not_psd": r.any_not_psd(), "points": points, "excluded": excluded})
}

/// Witness JSON; `N` is `"inf"` for the exact sine probe.
pub fn witness_json(w: &Witness) -> Value {
    json!({
        "x": num(w.x),
        "t": num(w.t),
        "N": w.order.map_or(Value::String("inf".into()), |n| json!(n)),
        "value": num(w.value),
        "error_bound": num(w.error_bound),
        "tail_upper": num(w.tail_upper),
        "kind": w.kind.as_str(),
        "certified": w.certified,
    })
}

pub fn coefficient_json(c: &CoeffValue) -> Value {
    json!({"value": [num(c.value.re), num(c.value.im)], "tail": num(c.tail_radius), "n": c.n, "x": num(c.x)})
}

/// `name,inputs,value,notes` with inputs as `key=value` pairs joined by `;`.
pub fn bound_table(b: &BoundReport) -> Table {
    let mut t = Table::new(&["name", "inputs", "value", "notes"]);
    let inputs: Vec<String> = b.inputs.iter().map(|(k, v)| format!("{k}={}", g17(*v))).collect();
    t.push(vec![b.name.as_str().into(), inputs.join(";"), g17(b.value), b.notes.clone()]);
    t
}

pub fn bound_json(b: &BoundReport) -> Value {
    let inputs: Map<String, Value> = b.inputs.iter().map(|(k, v)| (k.clone(), num(*v))).collect();
    json!({"name": b.name.as_str(), "inputs": inputs, "value": num(b.value), "notes": b.notes})
}

/// `j,t_j,lambda_j,gap_j` with `gap_j = λ_{j+1} − λ_j`; heights and exact gaps
/// are printed as full decimals.
pub fn gap_table(s: &LambdaSpacing) -> Table {
    let mut t = Table::new(&["j", "t_j", "lambda_j", "gap_j"]);
    for g in &s.gaps {
        let gap = g.exact_gap.as_ref().map_or_else(|| g17(g.gap), |d| d.to_string());
        t.push(vec![g.j.to_string(), g.t_j.to_string(), g17(g.lambda_j), gap]);
    }
    t
}

pub fn gap_json(s: &LambdaSpacing, threshold: f64, caveats: &[&str]) -> Value {
    let rows: Vec<Value> = s
        .gaps
        .iter()
        .map(|g| {
            json!({
                "j": g.j,
                "t_j": g.t_j.to_string(),
                "lambda_j": num(g.lambda_j),
                "gap_j": g.exact_gap.as_ref().map_or_else(|| num(g.gap), |d| Value::String(d.to_string())),
            })
        })
        .collect();
    json!({
        "count": s.gaps.len(),
        "argmin": s.argmin,
        "min_gap": num(s.min_gap),
        "min_gap_exact": s.min_gap_exact.as_ref().map(|d| d.to_string()),
        "threshold": num(threshold),
        "pass": s.min_gap > threshold,
        "caveats": caveats,
        "gaps": rows,
    })
}

pub fn curve_table(points: &[(f64, f64)]) -> Table {
    let mut t = Table::new(&["t", "re_boundary"]);
    for &(a, b) in points {
        t.push(vec![g17(a), g17(b)]);
    }
    t
}

pub fn curve_json(kind: &str, points: &[(f64, f64)]) -> Value {
    let pts: Vec<Value> = points.iter().map(|&(a, b)| json!({"t": num(a), "re_boundary": num(b)})).collect();
    json!({"kind": kind, "points": pts})
}
