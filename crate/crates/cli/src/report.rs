//! Report assembly and emission.
//!
//! JSON is the canonical format: values are built as `serde_json::Value`
//! trees whose object keys are sorted (the default `Map` is a BTreeMap), so
//! identical inputs produce byte-identical documents. Exact rationals are
//! emitted as `"num/den"` strings next to a convenience float. CSV is a flat
//! projection of the row data only.

use std::io::Write;
use std::path::Path;

use num_rational::BigRational;
use serde_json::{json, Value};

use fsig_core::artinian::ring_dimension;
use fsig_core::conditions::{Eq1Report, EquivalenceReport, IdealTower, StabilizationReport};
use fsig_core::frobenius::{rational_to_f64, Extrapolation, HkEstimate, SignatureEstimate};
use fsig_core::polyring::RingPresentation;
use fsig_core::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

pub fn rational_str(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn ring_value_with_dimension(
    ring: &std::sync::Arc<RingPresentation>,
    label: Option<&str>,
) -> Result<Value> {
    let d = ring_dimension(ring)?;
    Ok(json!({
        "p": ring.characteristic(),
        "vars": ring.var_names(),
        "relations": ring.relations().iter().map(|r| ring.render(r)).collect::<Vec<_>>(),
        "label": label,
        "dimension": d,
    }))
}

pub fn tower_value(tower: &IdealTower) -> Value {
    let ring = tower.ring();
    json!({
        "label": tower.label(),
        "parameters": tower
            .parameters()
            .iter()
            .map(|x| ring.render(x))
            .collect::<Vec<_>>(),
        "u1": ring.render(tower.socle_seed()),
    })
}

pub fn extrapolation_value(extrapolation: &Option<Extrapolation>) -> Value {
    match extrapolation {
        None => Value::Null,
        Some(e) => json!({
            "value": rational_str(&e.limit),
            "value_f64": e.limit_f64(),
            "max_residual": rational_str(&e.max_residual),
            "method": e.method,
        }),
    }
}

pub fn signature_rows_value(est: &SignatureEstimate) -> Value {
    Value::Array(
        est.rows
            .iter()
            .map(|r| {
                json!({
                    "e": r.e,
                    "q": r.q,
                    "splitting_number": r.splitting_length,
                    "normalized": rational_str(&r.normalized),
                    "normalized_f64": rational_to_f64(&r.normalized),
                    "stabilized_t": r.stabilized_t,
                    "stable": r.stable,
                })
            })
            .collect(),
    )
}

pub fn signature_csv(est: &SignatureEstimate) -> String {
    let mut out =
        String::from("e,q,splitting_number,normalized,normalized_f64,stabilized_t,stable\n");
    for r in &est.rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.e,
            r.q,
            r.splitting_length,
            rational_str(&r.normalized),
            rational_to_f64(&r.normalized),
            r.stabilized_t.map(|t| t.to_string()).unwrap_or_default(),
            r.stable,
        ));
    }
    out
}

pub fn hk_rows_value(est: &HkEstimate) -> Value {
    Value::Array(
        est.rows
            .iter()
            .map(|r| {
                json!({
                    "e": r.e,
                    "q": r.q,
                    "length": r.colength,
                    "normalized": rational_str(&r.normalized),
                    "normalized_f64": rational_to_f64(&r.normalized),
                })
            })
            .collect(),
    )
}

pub fn hk_csv(est: &HkEstimate) -> String {
    let mut out = String::from("e,q,length,normalized,normalized_f64\n");
    for r in &est.rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.e,
            r.q,
            r.colength,
            rational_str(&r.normalized),
            rational_to_f64(&r.normalized),
        ));
    }
    out
}

pub fn stabilization_value(report: &StabilizationReport) -> Value {
    let rows: Vec<Value> = report
        .rows
        .iter()
        .map(|r| {
            json!({
                "e": r.e,
                "q": r.q,
                "levels": r
                    .levels
                    .iter()
                    .map(|l| json!({"t": l.t, "fingerprint": l.fingerprint}))
                    .collect::<Vec<_>>(),
                "verdict": verdict_value(r.stable_t),
                "kernel_length": r.kernel_length,
                "chain_ascending": r.chain_ascending,
            })
        })
        .collect();
    json!({
        "rows": rows,
        "uniform_t0": report.uniform_t0,
        "chain_ascending": report.chain_ascending,
        "verdict": verdict_value(report.uniform_t0),
    })
}

pub fn verdict_value(t: Option<u64>) -> Value {
    match t {
        Some(t) => json!({ "STABLE_AT": t }),
        None => Value::String("NOT_STABLE".into()),
    }
}

pub fn stabilization_csv(report: &StabilizationReport) -> String {
    let mut out = String::from("e,q,t,fingerprint,stable_t\n");
    for r in &report.rows {
        for l in &r.levels {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                r.e,
                r.q,
                l.t,
                l.fingerprint,
                r.stable_t.map(|t| t.to_string()).unwrap_or_default(),
            ));
        }
    }
    out
}

pub fn equivalence_value(report: &EquivalenceReport) -> Value {
    json!({
        "rows": report
            .rows
            .iter()
            .map(|r| json!({
                "e": r.e,
                "q": r.q,
                "a_stable_t": r.a_stable_t,
                "b_stabilized_t": r.b_stabilized_t,
                "b_within_a": r.b_within_a,
                "ideals_match": r.ideals_match,
            }))
            .collect::<Vec<_>>(),
        "holds": report.holds,
    })
}

pub fn eq1_value(report: &Eq1Report, ring: &RingPresentation) -> Value {
    let verdict = if report.holds {
        Value::String("HOLDS".into())
    } else {
        json!({"FAILS": {
            "witness": report.witness.as_ref().map(|w| ring.render(w)),
        }})
    };
    json!({
        "n": report.n,
        "N": report.big_n,
        "i": report.i,
        "holds": report.holds,
        "witness": report.witness.as_ref().map(|w| ring.render(w)),
        "saturation_steps": report.saturation_steps,
        "warning": report.warning,
        "verdict": verdict,
    })
}

pub fn eq1_csv(report: &Eq1Report, ring: &RingPresentation) -> String {
    format!(
        "n,N,i,holds,witness\n{},{},{},{},{}\n",
        report.n,
        report.big_n,
        report.i,
        report.holds,
        report
            .witness
            .as_ref()
            .map(|w| ring.render(w))
            .unwrap_or_default(),
    )
}

/// Serializes the chosen format to the output path or stdout.
pub fn emit(value: &Value, csv: &str, format: Format, out: Option<&Path>) -> std::io::Result<()> {
    let body = match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).expect("serializable value");
            s.push('\n');
            s
        }
        Format::Csv => csv.to_string(),
    };
    match out {
        Some(path) => std::fs::write(path, body),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(body.as_bytes())
        }
    }
}
