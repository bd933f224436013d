use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use scarf_core::potential::Parametrization;
use scarf_core::ScarfParams64;
use serde_json::{json, Map, Value};

use crate::args::{Format, OutputArgs};
use crate::error::CliError;

/// `{re, im}`; non-finite parts become `null`.
pub fn cplx(z: Complex64) -> Value {
    json!({ "re": num(z.re), "im": num(z.im) })
}

pub fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null)
}

pub fn params_json(p: &ScarfParams64, flip_q: bool) -> Value {
    let origin = match p.origin() {
        Parametrization::General => json!({ "kind": "general" }),
        Parametrization::Hermitian { a, b } => json!({ "kind": "hermitian", "a": a, "b": b }),
        Parametrization::PtSymmetric { a, b } => json!({ "kind": "pt", "a": a, "b": b }),
        Parametrization::V1V2(v) => json!({
            "kind": "v1v2",
            "V1": v.v1(),
            "V2": v.v2(),
            "Vc": v.critical(),
            "unbroken": v.is_unbroken(),
        }),
    };
    let mut m = Map::new();
    m.insert("A".into(), cplx(p.a()));
    m.insert("B".into(), cplx(p.b()));
    m.insert("P".into(), cplx(p.p()));
    m.insert("Q".into(), cplx(p.q()));
    m.insert("class".into(), json!(p.class().label()));
    m.insert("parametrization".into(), origin);
    if flip_q {
        m.insert("faultInjection".into(), json!("numerics use -Q"));
    }
    Value::Object(m)
}

pub fn tolerance_profile() -> Value {
    json!({
        "realTolerance": 1e-12,
        "energyAgreement": 1e-7,
        "imaginaryPart": 1e-8,
        "mullerStep": 1e-10,
        "orthogonality": 1e-8,
        "identityRelative": 1e-7,
        "identityAbsolute": 1e-12,
        "residual": 1e-5,
        "tailRatio": 1e-8,
        "squareWellOracle": 1e-6,
        "squareWellQuoted": 5e-3,
        "backendAgreement": 1e-6,
        "reciprocity": 1e-10,
        "poleCoincidence": 1e-6,
        "reflectionWeight": 1e-2,
        "stepHalving": 1e-9,
        "jacobi": 1e-10,
        "gammaFunctional": 1e-11,
        "branchResidual": 1e-12,
        "brokenPhaseImaginary": 1e-4,
    })
}

pub fn document(command: &str, params: Value, results: Value, extra_meta: Value) -> Value {
    let mut meta = Map::new();
    meta.insert("command".into(), json!(command));
    meta.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    meta.insert("units".into(), json!("2mu = hbar^2 = 1"));
    if let Value::Object(extra) = extra_meta {
        meta.extend(extra);
    }
    meta.insert("toleranceProfile".into(), tolerance_profile());
    json!({ "params": params, "results": results, "meta": Value::Object(meta) })
}

/// A CSV table: header row then records.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 csv")
    }
}

/// Shortest representation that round-trips.
pub fn f(x: f64) -> String {
    format!("{x}")
}

pub fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

pub fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

pub fn emit(out: &OutputArgs, doc: &Value, table: &Table) -> Result<(), CliError> {
    let text = match out.format {
        Format::Json => json_text(doc),
        Format::Csv => table.to_csv(),
    };
    match &out.out {
        Some(path) => write_file(path, &text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|source| CliError::Io { path: "<stdout>".into(), source })
        }
    }
}
