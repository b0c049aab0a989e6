// SPDX-License-Identifier: Apache-2.0

//! Run configurations and machine-readable reports.
//!
//! Configs are JSON documents carrying a `schema_version`. Reports are
//! serialized with a fixed field order and canonically sorted records, so
//! the same config always produces the same bytes.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::ambient::ModelParams;
use crate::error::{Error, Result};
use crate::formal::FormalReport;
use crate::hopf::TestSurfaceSpec;
use crate::identities::{resolve, run_checks, CheckRecord, Group, GridEvaluation, Verdict};
use crate::pinching::{Range, SweepRanges};
use crate::quadrature::{simons_functional, space_form_functional, GridSpec, Integral, SimonsValue};
use crate::surface::ParametricImmersion;

pub const SCHEMA_VERSION: u32 = 1;

/// Environment variable overriding the default tolerance of every check.
pub const TOL_ENV: &str = "CMC_SIMONS_TOL";

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub schema_version: u32,
    pub model: ModelParams,
    pub surface: TestSurfaceSpec,
    pub grid: GridSpec,
    #[serde(default)]
    pub checks: Vec<String>,
    /// Per-check tolerance overrides.
    #[serde(default)]
    pub tolerances: BTreeMap<String, f64>,
    #[serde(default)]
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub schema_version: u32,
    pub kappa: Range,
    pub tau: Range,
    #[serde(rename = "H")]
    pub h: Range,
    #[serde(rename = "C")]
    pub c: Range,
}

fn check_schema(v: u32) -> Result<()> {
    if v != SCHEMA_VERSION {
        return Err(Error::Config(format!(
            "unsupported schema_version {v} (expected {SCHEMA_VERSION})"
        )));
    }
    Ok(())
}

/// Hex SHA-256 of the raw config bytes.
pub fn config_hash(text: &str) -> String {
    Sha256::digest(text.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let cfg: RunConfig =
            serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        check_schema(cfg.schema_version)?;
        GridSpec::new(cfg.grid.n_u, cfg.grid.n_v)?;
        resolve(&cfg.checks)?;
        for (name, tol) in &cfg.tolerances {
            if !(tol.is_finite() && *tol > 0.0) {
                return Err(Error::Config(format!("tolerance for '{name}' must be positive")));
            }
        }
        Ok(cfg)
    }

    /// Builds the surface; any failure here is a config problem.
    pub fn build_surface(&self) -> Result<ParametricImmersion> {
        let params = ModelParams::new(self.model.kappa, self.model.tau)
            .map_err(|e| Error::Config(e.to_string()))?;
        self.surface
            .build(params)
            .map_err(|e| Error::Config(format!("surface: {e}")))
    }
}

impl SweepConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let cfg: SweepConfig =
            serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        check_schema(cfg.schema_version)?;
        Ok(cfg)
    }

    pub fn ranges(&self) -> SweepRanges {
        SweepRanges {
            kappa: self.kappa,
            tau: self.tau,
            h: self.h,
            c: self.c,
        }
    }
}

/// Reads `CMC_SIMONS_TOL`; unset means no override.
pub fn env_tolerance() -> Result<Option<f64>> {
    match std::env::var(TOL_ENV) {
        Err(_) => Ok(None),
        Ok(s) => match s.trim().parse::<f64>() {
            Ok(t) if t.is_finite() && t > 0.0 => Ok(Some(t)),
            _ => Err(Error::Config(format!("{TOL_ENV}='{s}' is not a positive number"))),
        },
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Provenance {
    pub config_sha256: String,
    pub seed: u64,
    pub tool_version: &'static str,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub schema_version: u32,
    pub surface: String,
    pub mean_curvature_tag: Option<f64>,
    pub total_points: usize,
    pub skipped_points: usize,
    pub records: Vec<CheckRecord>,
    pub verdict: Verdict,
    pub provenance: Provenance,
}

/// Pass iff every record passes; a failure dominates inconclusive records.
pub fn suite_verdict(records: &[CheckRecord]) -> Verdict {
    if records.iter().any(|r| r.verdict == Verdict::Fail) {
        Verdict::Fail
    } else if records.is_empty() || records.iter().any(|r| r.verdict == Verdict::Inconclusive) {
        Verdict::Inconclusive
    } else {
        Verdict::Pass
    }
}

pub fn run_verify(text: &str, env_tol: Option<f64>) -> Result<VerifyReport> {
    let cfg = RunConfig::parse(text)?;
    if cfg.checks.is_empty() {
        return Err(Error::Config("no checks requested".into()));
    }
    let imm = cfg.build_surface()?;
    let checks = resolve(&cfg.checks)?;
    if !imm.is_cmc() && checks.iter().any(|c| c.group == Group::Cmc) {
        return Err(Error::Config(format!(
            "cmc checks requested on '{}', which is not cmc-tagged",
            imm.label()
        )));
    }
    let eval = GridEvaluation::new(&imm, &cfg.grid)?;
    let records = run_checks(&imm, &eval, &checks, |name| {
        cfg.tolerances.get(name).copied().or(env_tol)
    })?;
    Ok(VerifyReport {
        schema_version: SCHEMA_VERSION,
        surface: imm.label().to_string(),
        mean_curvature_tag: imm.cmc_tag(),
        total_points: eval.data.len(),
        skipped_points: eval.skipped(),
        verdict: suite_verdict(&records),
        records,
        provenance: Provenance {
            config_sha256: config_hash(text),
            seed: cfg.seed,
            tool_version: TOOL_VERSION,
        },
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimonsReport {
    pub schema_version: u32,
    pub surface: String,
    pub simons: SimonsValue,
    /// `int |A|^2 (|A|^2 - 2)`, reported when `kappa = 4 tau^2 = 4`.
    pub space_form: Option<Integral>,
    pub verdict: Verdict,
    pub provenance: Provenance,
}

pub fn run_simons(text: &str) -> Result<SimonsReport> {
    let cfg = RunConfig::parse(text)?;
    let imm = cfg.build_surface()?;
    let simons = match simons_functional(&imm, &cfg.grid) {
        Err(e @ (Error::CmcRequired | Error::NonCompact)) => {
            return Err(Error::Config(e.to_string()))
        }
        r => r?,
    };
    let p = imm.params();
    let round = p.kappa == 4.0 && p.tau.abs() == 1.0;
    let space_form = if round {
        Some(space_form_functional(&imm, &cfg.grid)?)
    } else {
        None
    };
    Ok(SimonsReport {
        schema_version: SCHEMA_VERSION,
        surface: imm.label().to_string(),
        verdict: if simons.nonnegative { Verdict::Pass } else { Verdict::Fail },
        simons,
        space_form,
        provenance: Provenance {
            config_sha256: config_hash(text),
            seed: cfg.seed,
            tool_version: TOOL_VERSION,
        },
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FormalRunReport {
    pub schema_version: u32,
    #[serde(flatten)]
    pub formal: FormalReport,
    pub verdict: Verdict,
    pub tool_version: &'static str,
}

impl From<FormalReport> for FormalRunReport {
    fn from(formal: FormalReport) -> Self {
        FormalRunReport {
            schema_version: SCHEMA_VERSION,
            verdict: if formal.all_exact() { Verdict::Pass } else { Verdict::Fail },
            formal,
            tool_version: TOOL_VERSION,
        }
    }
}

pub fn to_json<T: Serialize>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| Error::Config(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    const CLIFFORD: &str = r#"{
        "schema_version": 1,
        "model": {"kappa": 4.0, "tau": 1.0},
        "surface": {"kind": "hopf_torus", "s": 0.7853981633974483},
        "grid": {"n_u": 12, "n_v": 12},
        "checks": ["all-cmc"]
    }"#;

    #[test]
    fn clifford_verify_passes() {
        let r = run_verify(CLIFFORD, None).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{:#?}", r.records);
        assert!(r.records.windows(2).all(|w| w[0].name <= w[1].name));
    }

    #[test]
    fn bad_schema_rejected() {
        let t = CLIFFORD.replace("\"schema_version\": 1", "\"schema_version\": 9");
        assert!(matches!(run_verify(&t, None), Err(Error::Config(_))));
        let t = CLIFFORD.replace("all-cmc", "no_such_check");
        assert!(matches!(run_verify(&t, None), Err(Error::Config(_))));
    }

    #[test]
    fn sweep_config_parses() {
        let t = r#"{"schema_version": 1, "kappa": {"from": 4, "to": 4},
            "tau": {"from": 0.5, "to": 0.5}, "H": {"from": 0, "to": 1, "steps": 3},
            "C": {"from": -1, "to": 1, "steps": 5}}"#;
        let c = SweepConfig::parse(t).unwrap();
        assert_eq!(c.ranges().c.values().unwrap().len(), 5);
        assert!(SweepConfig::parse(&t.replace("\"C\"", "\"D\"")).is_err());
    }

    #[test]
    fn gated_records_are_inconclusive() {
        let rec = |verdict| CheckRecord {
            name: "x".into(),
            group: Group::General,
            tolerance: 1.0,
            max_residual: 0.0,
            evaluated: 0,
            skipped: 64,
            verdict,
            worst: None,
        };
        assert_eq!(suite_verdict(&[rec(Verdict::Inconclusive)]), Verdict::Inconclusive);
        assert_eq!(suite_verdict(&[]), Verdict::Inconclusive);
        assert_eq!(
            suite_verdict(&[rec(Verdict::Inconclusive), rec(Verdict::Fail)]),
            Verdict::Fail
        );
        assert_eq!(suite_verdict(&[rec(Verdict::Pass)]), Verdict::Pass);
    }

    #[test]
    fn hash_is_stable() {
        assert_eq!(
            config_hash(""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
    }
}
