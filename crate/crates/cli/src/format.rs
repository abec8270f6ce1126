//! File formats: representation documents and JSON-lines reports.

use std::io::Write;
use std::path::Path;

use anyhow::{bail, Context};
use qspread_core::qis::{RepKind, Representation};
use qspread_core::report::{Param, Residual, Status};
use qspread_core::{CheckReport, Matrix, C64};
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

/// A representation of `A_i(k, n)` or `A_s(n)` on `C^dim`.
///
/// `generators[i][j]` is the matrix of generator `(i + 1, j + 1)`, written as rows of
/// `[re, im]` pairs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepDocument {
    pub kind: RepKindDoc,
    /// Number of columns; equals `n` for permutation reps.
    pub k: usize,
    pub n: usize,
    pub dim: usize,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub generators: Vec<Vec<Vec<Vec<[f64; 2]>>>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RepKindDoc {
    Increasing,
    Permutation,
}

fn default_tolerance() -> f64 {
    1e-10
}

impl RepDocument {
    pub fn from_rep(rep: &Representation<C64>, seed: Option<u64>, description: Option<String>) -> Self {
        let (kind, k, n) = match rep.kind() {
            RepKind::Increasing { k, n } => (RepKindDoc::Increasing, k, n),
            RepKind::Permutation { n } => (RepKindDoc::Permutation, n, n),
        };
        let generators = rep
            .to_rows()
            .iter()
            .map(|row| row.iter().map(|m| m.to_rows().iter().map(|r| r.iter().map(|z| [z.re, z.im]).collect()).collect()).collect())
            .collect();
        RepDocument { kind, k, n, dim: rep.dim(), seed, tolerance: rep.tolerance(), description, generators }
    }

    pub fn to_rep(&self) -> anyhow::Result<Representation<C64>> {
        let kind = match self.kind {
            RepKindDoc::Increasing => RepKind::Increasing { k: self.k, n: self.n },
            RepKindDoc::Permutation => {
                if self.k != self.n {
                    bail!("permutation representation needs k = n, got k = {}, n = {}", self.k, self.n);
                }
                RepKind::Permutation { n: self.n }
            }
        };
        let mut gens = Vec::with_capacity(self.generators.len());
        for (i, row) in self.generators.iter().enumerate() {
            let mut out = Vec::with_capacity(row.len());
            for (j, m) in row.iter().enumerate() {
                if m.len() != self.dim || m.iter().any(|r| r.len() != self.dim) {
                    bail!("generator ({}, {}) is not {d}×{d}", i + 1, j + 1, d = self.dim);
                }
                let rows = m.iter().map(|r| r.iter().map(|&[re, im]| C64::new(re, im)).collect()).collect();
                out.push(Matrix::from_rows(rows)?);
            }
            gens.push(out);
        }
        Ok(Representation::new(kind, gens, self.tolerance)?)
    }

    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }
}

fn number(v: f64) -> Value {
    serde_json::Number::from_f64(v).map(Value::Number).unwrap_or(Value::Null)
}

fn residual(r: &Residual) -> Value {
    match r {
        Residual::ExactZero => Value::String("exact-zero".into()),
        Residual::Value(v) => number(*v),
    }
}

fn param(p: &Param) -> Value {
    match p {
        Param::Int(v) => json!(v),
        Param::Float(v) => number(*v),
        Param::Str(s) => json!(s),
        Param::Bool(b) => json!(b),
    }
}

/// The report as a JSON object. Keys are sorted, so equal reports serialize to equal
/// bytes.
pub fn report_json(r: &CheckReport) -> Value {
    let status = match r.status {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::Error => "error",
    };
    let mut obj = Map::new();
    obj.insert("check_name".into(), json!(r.check_name));
    obj.insert("params".into(), Value::Object(r.params.iter().map(|(k, v)| (k.clone(), param(v))).collect()));
    obj.insert("status".into(), json!(status));
    obj.insert("max_residual".into(), residual(&r.max_residual));
    obj.insert("residuals".into(), Value::Object(r.residuals.iter().map(|(k, v)| (k.clone(), residual(v))).collect()));
    obj.insert("witness".into(), r.witness.as_ref().map_or(Value::Null, |w| json!(w)));
    obj.insert("seed".into(), json!(r.seed));
    obj.insert("runtime_ms".into(), json!(r.runtime_ms));
    obj.insert("message".into(), r.message.as_ref().map_or(Value::Null, |m| json!(m)));
    Value::Object(obj)
}

/// Writes one JSON object per line.
pub fn write_reports(out: &mut impl Write, reports: &[CheckReport]) -> std::io::Result<()> {
    for r in reports {
        serde_json::to_writer(&mut *out, &report_json(r))?;
        out.write_all(b"\n")?;
    }
    out.flush()
}
