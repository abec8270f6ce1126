//! Suite configuration: one JSON document with a section per module.
//!
//! Every field has a default, so `{}` is a valid configuration and any section may be
//! given partially. Unknown keys are rejected.

use std::path::Path;

use anyhow::Context;
use serde::{Deserialize, Serialize};

/// Environment variable naming the configuration file used when `--config` is absent.
pub const CONFIG_ENV: &str = "QSPREAD_CONFIG";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    /// Base seed; each check derives its own seed from it and records it.
    pub seed: u64,
    pub partitions: PartitionsConfig,
    pub moments: MomentsConfig,
    pub qis: QisConfig,
    pub qperm: QpermConfig,
    pub invariance: InvarianceConfig,
    pub weingarten: WeingartenConfig,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            seed: 20240611,
            partitions: PartitionsConfig::default(),
            moments: MomentsConfig::default(),
            qis: QisConfig::default(),
            qperm: QpermConfig::default(),
            invariance: InvarianceConfig::default(),
            weingarten: WeingartenConfig::default(),
        }
    }
}

impl Config {
    pub fn from_json(text: &str) -> anyhow::Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::from_json(&text).with_context(|| format!("parsing {}", path.display()))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PartitionsConfig {
    /// Counts are compared with Catalan numbers for `m = 0..=count_max_m`.
    pub count_max_m: usize,
    /// Möbius closure and `μ(0, 1)` for `m = 0..=mobius_max_m`.
    pub mobius_max_m: usize,
}

impl Default for PartitionsConfig {
    fn default() -> Self {
        PartitionsConfig { count_max_m: 10, mobius_max_m: 7 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MomentsConfig {
    /// Word length cap for the exact rational round trips.
    pub exact_max_m: usize,
    /// Word length cap for the float `M_2` round trip.
    pub float_max_m: usize,
    pub max_power: usize,
    pub tolerance: f64,
    /// Scalar moment list `m_1, m_2, ...` used for the exact scalar round trip.
    pub scalar_moments: Vec<i64>,
}

impl Default for MomentsConfig {
    fn default() -> Self {
        MomentsConfig { exact_max_m: 5, float_max_m: 4, max_power: 2, tolerance: 1e-9, scalar_moments: vec![1, 3, -2, 11, 5, 40, -7, 200, 9, 1000] }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QisConfig {
    /// Number of seeded angles for the two-projection `A_i(2, 4)` family.
    pub angles: usize,
    pub theta_min: f64,
    pub theta_max: f64,
    pub relation_tolerance: f64,
    pub magic_tolerance: f64,
    /// Classical points are checked exhaustively for `k ≤ n ≤ classical_max_n`.
    pub classical_max_n: usize,
    pub block_reps: Vec<BlockRepConfig>,
}

impl Default for QisConfig {
    fn default() -> Self {
        QisConfig {
            angles: 20,
            theta_min: 0.05,
            theta_max: 1.5,
            relation_tolerance: 1e-12,
            magic_tolerance: 1e-10,
            classical_max_n: 6,
            block_reps: vec![BlockRepConfig { k: 2, n: 2, dim: 3, seed: 1 }, BlockRepConfig { k: 3, n: 2, dim: 2, seed: 2 }],
        }
    }
}

/// `A_i(k, kn)` built from `k` projection-valued measures of size `n` on `C^dim`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockRepConfig {
    pub k: usize,
    pub n: usize,
    pub dim: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QpermConfig {
    pub summation_max_n: usize,
    pub summation_max_m: usize,
    /// Angles of the extended two-projection family used for the float summation check.
    pub extended_angles: Vec<f64>,
    pub tolerance: f64,
}

impl Default for QpermConfig {
    fn default() -> Self {
        QpermConfig { summation_max_n: 4, summation_max_m: 4, extended_angles: vec![0.3, 0.9, 1.4], tolerance: 1e-10 }
    }
}

/// Source of a joint distribution for the invariance checks.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum LawConfig {
    /// Free i.i.d. semicircular variables of the given variance.
    Semicircular {
        #[serde(default = "one")]
        variance: i64,
    },
    /// Free i.i.d. variables with scalar moments `m_1, m_2, ...`.
    Moments { moments: Vec<f64> },
    /// Free i.i.d. copies (amalgamated over `M_b_dim`) of a seeded random Hermitian
    /// matrix on `C^b_dim ⊗ C^env_dim`, scaled by `scale`.
    Ambient {
        #[serde(default = "two")]
        b_dim: usize,
        #[serde(default = "two")]
        env_dim: usize,
        seed: u64,
        #[serde(default = "half")]
        scale: f64,
    },
    /// Free but not identically distributed semicirculars; variances repeat cyclically
    /// over the labels. Not invariant unless all variances agree.
    FreeProduct { variances: Vec<i64> },
}

fn one() -> i64 {
    1
}

fn two() -> usize {
    2
}

fn half() -> f64 {
    0.5
}

impl LawConfig {
    pub fn label(&self) -> &'static str {
        match self {
            LawConfig::Semicircular { .. } => "semicircular",
            LawConfig::Moments { .. } => "moments",
            LawConfig::Ambient { .. } => "ambient",
            LawConfig::FreeProduct { .. } => "free_product",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct InvarianceConfig {
    pub tolerance: f64,
    /// Word length cap.
    pub max_len: usize,
    /// Largest power per letter on two-label reps.
    pub max_power: usize,
    /// Largest power per letter on four-label reps.
    pub extended_max_power: usize,
    /// Random words of length 5 added to the two-label scalar checks.
    pub spot_checks: usize,
    pub laws: Vec<LawConfig>,
    /// Deliberately broken law; the suite passes only if the checker rejects it.
    pub negative_control: LawConfig,
    /// Angles of the two-projection family.
    pub angles: Vec<f64>,
    pub block_reps: Vec<BlockRepConfig>,
}

impl Default for InvarianceConfig {
    fn default() -> Self {
        InvarianceConfig {
            tolerance: 1e-9,
            max_len: 4,
            max_power: 2,
            extended_max_power: 1,
            spot_checks: 16,
            laws: vec![LawConfig::Semicircular { variance: 1 }, LawConfig::Ambient { b_dim: 2, env_dim: 2, seed: 3, scale: 0.5 }],
            negative_control: LawConfig::FreeProduct { variances: vec![1, 2] },
            angles: vec![0.7, 1.1],
            block_reps: vec![BlockRepConfig { k: 2, n: 2, dim: 2, seed: 17 }],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WeingartenConfig {
    pub psi_max_k: usize,
    pub psi_max_n: usize,
    pub psi_max_m: usize,
    pub gram: Vec<GramConfig>,
    pub unit_max_m: usize,
    pub unit_max_n: usize,
    pub reconstruction_max_m: usize,
    pub reconstruction_max_n: usize,
    /// Index labels `1..=labels` used in reconstruction words.
    pub reconstruction_labels: usize,
    /// Seed of the rational `M_2` law and its inserts.
    pub ambient_seed: u64,
}

impl Default for WeingartenConfig {
    fn default() -> Self {
        WeingartenConfig {
            psi_max_k: 3,
            psi_max_n: 3,
            psi_max_m: 5,
            gram: vec![GramConfig { k: 2, n: 2, max_len: 2 }],
            unit_max_m: 4,
            unit_max_n: 4,
            reconstruction_max_m: 3,
            reconstruction_max_n: 3,
            reconstruction_labels: 3,
            ambient_seed: 31,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GramConfig {
    pub k: usize,
    pub n: usize,
    pub max_len: usize,
}
