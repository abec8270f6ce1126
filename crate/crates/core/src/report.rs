//! Structured outcome of a verification run.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Error,
}

/// Largest residual seen by a check.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Residual {
    /// Exact arithmetic produced zero everywhere.
    ExactZero,
    Value(f64),
}

impl Residual {
    pub fn as_f64(&self) -> f64 {
        match self {
            Residual::ExactZero => 0.0,
            Residual::Value(v) => *v,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Param {
    Int(i64),
    Float(f64),
    Str(String),
    Bool(bool),
}

impl From<usize> for Param {
    fn from(v: usize) -> Self {
        Param::Int(v as i64)
    }
}

impl From<i64> for Param {
    fn from(v: i64) -> Self {
        Param::Int(v)
    }
}

impl From<u64> for Param {
    fn from(v: u64) -> Self {
        Param::Int(v as i64)
    }
}

impl From<f64> for Param {
    fn from(v: f64) -> Self {
        Param::Float(v)
    }
}

impl From<bool> for Param {
    fn from(v: bool) -> Self {
        Param::Bool(v)
    }
}

impl From<&str> for Param {
    fn from(v: &str) -> Self {
        Param::Str(v.to_string())
    }
}

impl From<String> for Param {
    fn from(v: String) -> Self {
        Param::Str(v)
    }
}

/// Named integer tuples locating a failure, e.g. `{"j": [1, 2], "powers": [1, 1]}`.
pub type Witness = BTreeMap<String, Vec<i64>>;

#[derive(Clone, Debug, PartialEq)]
pub struct CheckReport {
    pub check_name: String,
    pub params: BTreeMap<String, Param>,
    pub status: Status,
    pub max_residual: Residual,
    /// Present iff `status == Fail`.
    pub witness: Option<Witness>,
    /// Per-relation breakdown of `max_residual`.
    pub residuals: BTreeMap<String, Residual>,
    pub seed: u64,
    pub runtime_ms: u64,
    pub message: Option<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn with_param(mut self, key: &str, value: impl Into<Param>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// Report for a check that could not run.
    pub fn error(check_name: &str, message: impl Into<String>) -> Self {
        CheckReport {
            check_name: check_name.to_string(),
            params: BTreeMap::new(),
            status: Status::Error,
            max_residual: Residual::Value(f64::NAN),
            witness: None,
            residuals: BTreeMap::new(),
            seed: 0,
            runtime_ms: 0,
            message: Some(message.into()),
        }
    }
}

/// Accumulates residuals and the first witness above tolerance.
#[derive(Clone, Debug)]
pub struct ResidualTracker {
    tolerance: f64,
    exact: bool,
    max: f64,
    components: BTreeMap<String, f64>,
    witness: Option<Witness>,
    failed_component: Option<String>,
}

impl ResidualTracker {
    /// `exact` checks pass only on residual zero regardless of `tolerance`.
    pub fn new(tolerance: f64, exact: bool) -> Self {
        ResidualTracker { tolerance, exact, max: 0.0, components: BTreeMap::new(), witness: None, failed_component: None }
    }

    pub fn tolerance(&self) -> f64 {
        if self.exact {
            0.0
        } else {
            self.tolerance
        }
    }

    pub fn observe(&mut self, component: &str, value: f64, witness: impl FnOnce() -> Witness) {
        self.observe_with(component, value, self.tolerance(), witness);
    }

    /// Like [`observe`](Self::observe) with a component-specific tolerance.
    pub fn observe_with(&mut self, component: &str, value: f64, tolerance: f64, witness: impl FnOnce() -> Witness) {
        let slot = self.components.entry(component.to_string()).or_insert(0.0);
        if value > *slot || value.is_nan() {
            *slot = value;
        }
        if value > self.max || value.is_nan() {
            self.max = value;
        }
        if self.witness.is_none() && !(value <= tolerance) {
            self.witness = Some(witness());
            self.failed_component = Some(component.to_string());
        }
    }

    /// Registers a component with zero residual so it shows in the breakdown.
    pub fn touch(&mut self, component: &str) {
        self.components.entry(component.to_string()).or_insert(0.0);
    }

    pub fn max(&self) -> f64 {
        self.max
    }

    pub fn failed(&self) -> bool {
        self.witness.is_some()
    }

    fn residual(&self, value: f64) -> Residual {
        if self.exact && value == 0.0 {
            Residual::ExactZero
        } else {
            Residual::Value(value)
        }
    }

    pub fn finish(self, check_name: &str) -> CheckReport {
        let status = if self.witness.is_some() { Status::Fail } else { Status::Pass };
        CheckReport {
            check_name: check_name.to_string(),
            params: BTreeMap::new(),
            status,
            max_residual: self.residual(self.max),
            residuals: self.components.iter().map(|(k, v)| (k.clone(), self.residual(*v))).collect(),
            witness: self.witness,
            seed: 0,
            runtime_ms: 0,
            message: self.failed_component.map(|c| alloc::format!("first failure in `{c}`")),
        }
    }
}

/// Witness from `(name, values)` pairs.
pub fn witness<'a>(entries: impl IntoIterator<Item = (&'a str, Vec<i64>)>) -> Witness {
    entries.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

pub fn to_i64s(values: &[usize]) -> Vec<i64> {
    values.iter().map(|&v| v as i64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn witness_iff_fail() {
        let mut t = ResidualTracker::new(1e-9, false);
        t.observe("a", 1e-12, || witness([("j", vec![1])]));
        let r = t.clone().finish("x");
        assert_eq!(r.status, Status::Pass);
        assert!(r.witness.is_none());
        t.observe("b", 1e-3, || witness([("j", vec![2])]));
        t.observe("b", 1.0, || witness([("j", vec![3])]));
        let r = t.finish("x");
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.witness.unwrap()["j"], vec![2]);
        assert_eq!(r.max_residual, Residual::Value(1.0));
    }

    #[test]
    fn exact_zero() {
        let mut t = ResidualTracker::new(1e-9, true);
        t.observe("a", 0.0, Witness::new);
        assert_eq!(t.clone().finish("x").max_residual, Residual::ExactZero);
        t.observe("a", 1e-20, Witness::new);
        assert_eq!(t.finish("x").status, Status::Fail);
    }

    #[test]
    fn nan_fails() {
        let mut t = ResidualTracker::new(1e-9, false);
        t.observe("a", f64::NAN, Witness::new);
        assert_eq!(t.finish("x").status, Status::Fail);
    }
}
