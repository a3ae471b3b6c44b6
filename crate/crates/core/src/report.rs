//! JSON views of reports and verification records. All maps are ordered so
//! the output is byte-stable for fixed inputs.

use crate::cell::CellPoint;
use crate::combi::Partition;
use crate::poly::UniPoly;
use crate::scalar::{rat_from_str, rat_to_string, C64, Rat};
use crate::solve::{FibreReport, PathLedger};
use serde_json::{json, Map, Value};

pub const SCHEMA: &str = "wronski/1";

pub fn complex_json(z: &C64) -> Value {
    json!([z.re, z.im])
}

pub fn poly_c64_json(p: &UniPoly<C64>) -> Value {
    json!({ "coeffs": p.coeffs().iter().map(complex_json).collect::<Vec<_>>() })
}

pub fn poly_rat_json(p: &UniPoly<Rat>) -> Value {
    json!({ "coeffs": p.coeffs().iter().map(rat_to_string).collect::<Vec<_>>() })
}

/// Parse `{"coeffs": ["p/q", ...]}` (ascending degree).
pub fn poly_rat_from_json(v: &Value) -> Option<UniPoly<Rat>> {
    let coeffs = v.get("coeffs")?.as_array()?;
    let mut out = Vec::with_capacity(coeffs.len());
    for c in coeffs {
        out.push(rat_from_str(c.as_str()?)?);
    }
    Some(UniPoly::new(out))
}

pub fn cell_point_json(x: &CellPoint<C64>) -> Value {
    let mut coords = Map::new();
    for (cell, value) in x.lambda.cells().iter().zip(&x.coords) {
        coords.insert(format!("{},{}", cell.0, cell.1), complex_json(value));
    }
    json!({ "lambda": x.lambda.parts(), "coords": coords })
}

pub fn ledger_json(ledger: &PathLedger) -> Value {
    Value::Array(
        ledger
            .events
            .iter()
            .map(|e| json!({ "t": e.t, "kind": format!("{:?}", e.kind) }))
            .collect(),
    )
}

/// Full fibre report, optionally with per-solution ledgers.
pub fn fibre_report_json(report: &FibreReport, ledgers: Option<&[PathLedger]>) -> Value {
    let solutions: Vec<Value> = report
        .solutions
        .iter()
        .enumerate()
        .map(|(k, s)| {
            let mut obj = Map::new();
            obj.insert("point".into(), cell_point_json(&s.point));
            obj.insert("multiplicity".into(), json!(s.multiplicity));
            obj.insert("real".into(), json!(s.real));
            obj.insert("residual".into(), json!(s.residual));
            if let Some(t) = &s.tableau {
                obj.insert("tableau".into(), json!(t.rows()));
            }
            if let Some(a) = s.asgn {
                obj.insert("asgn".into(), json!(a));
            }
            if let Some(g) = s.sgn {
                obj.insert("sgn".into(), json!(g));
            }
            if let Some(g) = s.sgn_dual {
                obj.insert("sgn_dual".into(), json!(g));
            }
            if let Some(ls) = ledgers {
                if let Some(l) = ls.get(k) {
                    obj.insert("ledger".into(), ledger_json(l));
                }
            }
            Value::Object(obj)
        })
        .collect();
    json!({
        "schema": SCHEMA,
        "lambda": report.lambda.parts(),
        "g": poly_c64_json(&report.g),
        "solutions": solutions,
        "totals": {
            "complex_count": report.complex_count(),
            "real_count_with_multiplicity": report.real_count_with_multiplicity(),
        },
        "certified": report.certified,
        "reduced": report.reduced,
    })
}

/// Provenance tag of an expected value: a known result from the
/// literature, a value computed by an independent oracle, or a value
/// forced directly by definitions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Literature,
    Derived,
    Trivial,
}

/// One runnable claim with its expected and observed values.
#[derive(Debug, Clone, serde::Serialize)]
pub struct VerificationRecord {
    pub claim: String,
    pub params: String,
    pub expected: String,
    pub observed: String,
    pub provenance: Provenance,
    pub pass: bool,
    pub runtime_ms: u128,
}

impl VerificationRecord {
    pub fn new(
        claim: impl Into<String>,
        params: impl Into<String>,
        expected: impl ToString,
        observed: impl ToString,
        provenance: Provenance,
        pass: bool,
        runtime_ms: u128,
    ) -> Self {
        VerificationRecord {
            claim: claim.into(),
            params: params.into(),
            expected: expected.to_string(),
            observed: observed.to_string(),
            provenance,
            pass,
            runtime_ms,
        }
    }
}

pub fn records_json(records: &[VerificationRecord]) -> Value {
    json!({
        "schema": SCHEMA,
        "records": records,
        "pass": records.iter().all(|r| r.pass),
    })
}

/// Parse a partition argument like `"3,2,1"`.
pub fn parse_lambda(s: &str) -> Result<Partition, String> {
    Partition::parse(s).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_i};

    #[test]
    fn poly_json_round_trip() {
        let p = UniPoly::new(vec![rat(1, 2), rat_i(0), rat_i(-3)]);
        let v = poly_rat_json(&p);
        assert_eq!(v["coeffs"][0], "1/2");
        let q = poly_rat_from_json(&v).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn cell_point_json_shape() {
        let x = CellPoint::new(
            Partition::new(vec![2, 1]),
            vec![
                C64::new(1.0, 0.0),
                C64::new(0.5, -0.25),
                C64::new(0.0, 2.0),
            ],
        )
        .unwrap();
        let v = cell_point_json(&x);
        assert_eq!(v["lambda"], json!([2, 1]));
        assert_eq!(v["coords"]["1,2"], json!([0.5, -0.25]));
        assert_eq!(v["coords"]["2,1"], json!([0.0, 2.0]));
    }
}
