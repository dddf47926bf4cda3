//! JSON job runner for the extended Lorentz group library.
//!
//! A job names a command and carries its inputs:
//!
//! ```json
//! {"command": "compose", "inputs": {"p2": "identity", "p1": {"theta": [0, 0, 1]}}}
//! ```
//!
//! `tolerances` may override any library tolerance (`lin`, `det`, `param`,
//! `fact`, `null`, `comp`, `fd`, `group`, `cond_max`) or any verification
//! threshold (see [`verify::CheckTolerances`]). `seed` (default 42) and
//! `samples` (default 1000) apply to `verify`.

pub mod json;
pub mod verify;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use xlorentz::factorize::factorize_wlr;
use xlorentz::gauge::{pure_gauge_component, site_at, FieldGrid, GaugeField, SiteStatus};
use xlorentz::structure::{oplus_closed, structure_constants, structure_constants_commutator, theta_closed};
use xlorentz::extended::{compose_extended, extended_matrix, inverse_extended};
use xlorentz::{Error, GeneratorIndex, Tolerances};

use crate::json::{field, matrix10_to_json, matrix4_from_json, matrix4_to_json, ComplexMatrixJson, ParamsJson};
use crate::verify::{verify_suite, CheckTolerances, STRUCTURE_STEP};

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_SAMPLES: usize = 1000;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("schema error: {0}")]
    Schema(String),
    #[error("solver failure: {0}")]
    Solver(#[from] Error),
    #[error("verification failed")]
    Verification(Box<verify::VerifyReport>),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Schema(_) | CliError::Io(_) => 2,
            CliError::Solver(_) => 3,
            CliError::Verification(_) => 4,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Schema(_) => "schema",
            CliError::Solver(_) => "solver",
            CliError::Verification(_) => "verification",
            CliError::Io(_) => "io",
        }
    }

    /// Machine-readable error object; a failed verification carries its report.
    pub fn to_json(&self) -> Value {
        match self {
            CliError::Verification(report) => json!({
                "error": {"kind": self.kind(), "message": self.to_string()},
                "report": report,
            }),
            _ => json!({"error": {"kind": self.kind(), "message": self.to_string()}}),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Exp,
    Compose,
    Inverse,
    Factorize,
    Oplus,
    Theta,
    Constants,
    Gauge,
    Verify,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub command: Command,
    #[serde(default)]
    pub inputs: Value,
    #[serde(default)]
    pub tolerances: BTreeMap<String, f64>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub samples: Option<usize>,
}

impl JobSpec {
    pub fn new(command: Command) -> Self {
        Self { command, inputs: Value::Null, tolerances: BTreeMap::new(), seed: None, samples: None }
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Schema(format!("job: {e}")))
    }

    /// Library tolerances and verification thresholds after overrides.
    pub fn resolved_tolerances(&self) -> Result<(Tolerances, CheckTolerances), CliError> {
        let mut tol = Tolerances::default();
        let mut limits = CheckTolerances::default();
        for (name, &value) in &self.tolerances {
            if !(value >= 0.0) {
                return Err(CliError::Schema(format!("tolerance {name} must be non-negative, got {value}")));
            }
            let slot = match name.as_str() {
                "lin" => &mut tol.lin,
                "det" => &mut tol.det,
                "param" => &mut tol.param,
                "fact" => &mut tol.fact,
                "null" => &mut tol.null,
                "comp" => &mut tol.comp,
                "fd" => &mut tol.fd,
                "group" => &mut tol.group,
                "cond_max" => &mut tol.cond_max,
                "all" => {
                    limits = CheckTolerances::uniform(value);
                    continue;
                }
                other => {
                    if limits.set(other, value) {
                        continue;
                    }
                    return Err(CliError::Schema(format!("unknown tolerance {other:?}")));
                }
            };
            *slot = value;
        }
        Ok((tol, limits))
    }
}

fn params(inputs: &Value, name: &str) -> Result<xlorentz::ExtendedParams, CliError> {
    let p = field::<ParamsJson>(inputs, name)?.to_params()?;
    if !p.is_finite() {
        return Err(CliError::Schema(format!("input field {name:?} is not finite")));
    }
    Ok(p)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GaugeInputs {
    dims: [usize; 4],
    spacing: [f64; 4],
    field: Vec<ParamsJson>,
    #[serde(default)]
    background: Option<Vec<[[f64; 10]; 4]>>,
}

fn run_gauge(inputs: &Value, tol: &Tolerances) -> Result<Value, CliError> {
    let g: GaugeInputs =
        serde_json::from_value(inputs.clone()).map_err(|e| CliError::Schema(format!("gauge inputs: {e}")))?;
    let values = g.field.iter().map(|p| p.to_params()).collect::<Result<Vec<_>, _>>()?;
    let grid = FieldGrid::new(g.dims, g.spacing, values).map_err(|e| CliError::Schema(e.to_string()))?;
    let background = match g.background {
        Some(bg) => {
            let mut field = GaugeField::zeros(g.dims);
            if bg.len() != field.values.len() {
                return Err(CliError::Schema("background must have one entry per site".into()));
            }
            field.values = bg;
            Some(field)
        }
        None => None,
    };
    let a = pure_gauge_component(&grid, background.as_ref(), tol)?;
    let sites: Vec<Value> = (0..a.values.len())
        .map(|i| {
            let site = site_at(&g.dims, i);
            match a.status[i] {
                SiteStatus::Computed => json!({"site": site, "status": "computed", "a": a.values[i]}),
                SiteStatus::Boundary => json!({"site": site, "status": "boundary"}),
                SiteStatus::IllConditioned { condition } => {
                    json!({"site": site, "status": "ill_conditioned", "condition": condition})
                }
            }
        })
        .collect();
    Ok(json!({"dims": g.dims, "sites": sites}))
}

fn run_constants(tol: &Tolerances) -> Result<Value, CliError> {
    let from_theta = structure_constants(STRUCTURE_STEP, tol)?;
    let c = structure_constants_commutator();
    let mut nonzero = Vec::new();
    for r in GeneratorIndex::ALL {
        for s in GeneratorIndex::ALL {
            for m in GeneratorIndex::ALL {
                let v = c.get(r, s, m);
                if v != 0.0 {
                    nonzero.push(json!({"r": r.name(), "s": s.name(), "m": m.name(), "value": v}));
                }
            }
        }
    }
    Ok(json!({
        "convention": "[X_r, X_s] = -i c_{rs}^m X_m",
        "nonzero": nonzero,
        "theta_path_difference": from_theta.max_difference(&c),
        "antisymmetry_error": c.antisymmetry_error(),
        "jacobi_error": c.jacobi_error(),
    }))
}

/// Execute a job and return its JSON result.
pub fn run(job: &JobSpec) -> Result<Value, CliError> {
    let (tol, limits) = job.resolved_tolerances()?;
    let inputs = &job.inputs;
    match job.command {
        Command::Exp => {
            let m = extended_matrix(&params(inputs, "params")?)?;
            Ok(json!({"matrix": matrix4_to_json(&m)}))
        }
        Command::Compose => {
            let p = compose_extended(&params(inputs, "p2")?, &params(inputs, "p1")?, &tol)?;
            Ok(json!({"params": ParamsJson::from(&p)}))
        }
        Command::Inverse => {
            let p = inverse_extended(&params(inputs, "params")?);
            Ok(json!({"params": ParamsJson::from(&p)}))
        }
        Command::Factorize => {
            let m = matrix4_from_json(&field::<ComplexMatrixJson>(inputs, "matrix")?)?;
            let r = factorize_wlr(&m, &tol)?;
            Ok(json!({
                "params": ParamsJson::from(&r.params),
                "residual": r.residual,
                "iterations": r.iterations,
            }))
        }
        Command::Oplus => {
            let o = oplus_closed(&params(inputs, "params")?);
            Ok(json!({"matrix": matrix10_to_json(&o.0)}))
        }
        Command::Theta => {
            let t = theta_closed(&params(inputs, "params")?);
            Ok(json!({"matrix": matrix10_to_json(&t.0), "condition": t.condition_number()}))
        }
        Command::Constants => run_constants(&tol),
        Command::Gauge => run_gauge(inputs, &tol),
        Command::Verify => {
            let seed = job.seed.unwrap_or(DEFAULT_SEED);
            let samples = job.samples.unwrap_or(DEFAULT_SAMPLES);
            let report = verify_suite(seed, samples, &tol, &limits)?;
            if report.pass {
                Ok(serde_json::to_value(&report).expect("report serializes"))
            } else {
                Err(CliError::Verification(Box::new(report)))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_identities() {
        let job = JobSpec::parse(r#"{"command": "compose", "inputs": {"p2": "identity", "p1": "identity"}}"#).unwrap();
        let out = run(&job).unwrap();
        assert_eq!(out["params"], json!({"omega": [0.0, 0.0, 0.0, 0.0], "u": [0.0, 0.0, 0.0], "theta": [0.0, 0.0, 0.0]}));
    }

    #[test]
    fn unknown_fields_and_tolerances_are_schema_errors() {
        assert!(JobSpec::parse(r#"{"command": "exp", "input": {}}"#).is_err());
        assert!(JobSpec::parse(r#"{"command": "launch"}"#).is_err());
        let mut job = JobSpec::new(Command::Constants);
        job.tolerances.insert("tightness".into(), 1.0);
        assert_eq!(run(&job).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn tolerance_overrides_reach_both_tables() {
        let mut job = JobSpec::new(Command::Verify);
        job.tolerances.insert("fact".into(), 1e-9);
        job.tolerances.insert("wigner".into(), 1e-3);
        let (tol, limits) = job.resolved_tolerances().unwrap();
        assert_eq!(tol.fact, 1e-9);
        assert_eq!(limits.wigner, 1e-3);
    }

    #[test]
    fn outside_chart_is_a_solver_failure() {
        let job = JobSpec::parse(
            r#"{"command": "compose", "inputs": {"p2": {"omega": [3.141592653589793, 0, 0, 0]}, "p1": {"omega": [0, 1, 0, 0]}}}"#,
        )
        .unwrap();
        assert_eq!(run(&job).unwrap_err().exit_code(), 3);
    }
}
