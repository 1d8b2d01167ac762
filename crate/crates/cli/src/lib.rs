//! Verification harness: run named checks over the construction data, collect
//! a deterministic report, and map it to an exit status.

mod checks;

use std::collections::BTreeSet;
use std::fmt;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::str::FromStr;

use kummer_core::config::{CurveId, IntersectionTable};
use kummer_core::mukai::AlphaTriple;
use kummer_field::{BigRational, RationalFunction};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use checks::{check_ids, CheckDef};

pub const REPORT_VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "/schema-1");

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RunConfigError {
    #[error("specialized mode needs both --s and --t")]
    MissingParameters,
    #[error("{0} must avoid 0 and 1")]
    ForbiddenParameter(&'static str),
    #[error("s and t must differ")]
    EqualParameters,
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("torus level must be even and at least 4, got {0}")]
    BadTorusLevel(u64),
    #[error("omega range must be at most {max}, got {got}")]
    BadOmegaRange { got: i64, max: i64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Config,
    Fibration,
    Torsor,
    Mukai,
    Cohomology,
    Omega,
}

impl Suite {
    pub const ALL: [Suite; 6] = [Suite::Config, Suite::Fibration, Suite::Torsor, Suite::Mukai, Suite::Cohomology, Suite::Omega];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Config => "config",
            Suite::Fibration => "fibration",
            Suite::Torsor => "torsor",
            Suite::Mukai => "mukai",
            Suite::Cohomology => "cohomology",
            Suite::Omega => "omega",
        }
    }
}

impl FromStr for Suite {
    type Err = RunConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| RunConfigError::UnknownSuite(s.into()))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Symbolic,
    Specialized,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub mode: Mode,
    #[serde(with = "opt_rational")]
    pub s: Option<BigRational>,
    #[serde(with = "opt_rational")]
    pub t: Option<BigRational>,
    pub suites: BTreeSet<Suite>,
    pub omega_n: i64,
    pub torus_level: u64,
}

pub const MAX_OMEGA_N: i64 = 40;

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            mode: Mode::Symbolic,
            s: None,
            t: None,
            suites: Suite::ALL.into_iter().collect(),
            omega_n: 8,
            torus_level: 16,
        }
    }
}

impl RunConfig {
    pub fn specialized(s: BigRational, t: BigRational) -> Self {
        RunConfig { mode: Mode::Specialized, s: Some(s), t: Some(t), ..Self::default() }
    }

    pub fn with_suites(mut self, suites: &[Suite]) -> Self {
        self.suites = suites.iter().copied().collect();
        self
    }

    pub fn validate(&self) -> Result<(), RunConfigError> {
        if self.mode == Mode::Specialized {
            let (Some(s), Some(t)) = (&self.s, &self.t) else {
                return Err(RunConfigError::MissingParameters);
            };
            let forbidden = |x: &BigRational| x == &BigRational::from_integer(0.into()) || x == &BigRational::from_integer(1.into());
            if forbidden(s) {
                return Err(RunConfigError::ForbiddenParameter("s"));
            }
            if forbidden(t) {
                return Err(RunConfigError::ForbiddenParameter("t"));
            }
            if s == t {
                return Err(RunConfigError::EqualParameters);
            }
        }
        if self.torus_level < 4 || self.torus_level % 2 == 1 {
            return Err(RunConfigError::BadTorusLevel(self.torus_level));
        }
        if !(0..=MAX_OMEGA_N).contains(&self.omega_n) {
            return Err(RunConfigError::BadOmegaRange { got: self.omega_n, max: MAX_OMEGA_N });
        }
        Ok(())
    }

    /// `(s, t)` as field elements: indeterminates or the given rationals.
    pub fn parameters(&self) -> (RationalFunction, RationalFunction) {
        match (self.mode, &self.s, &self.t) {
            (Mode::Specialized, Some(s), Some(t)) => (RationalFunction::constant(s.clone()), RationalFunction::constant(t.clone())),
            _ => (RationalFunction::s(), RationalFunction::t()),
        }
    }
}

mod opt_rational {
    use kummer_field::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(x) => s.serialize_some(&x.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigRational>, D::Error> {
        let v: Option<String> = Option::deserialize(d)?;
        v.map(|x| x.parse().map_err(serde::de::Error::custom)).transpose()
    }
}

/// The data the checks run against; tests substitute corrupted copies.
#[derive(Clone, Debug)]
pub struct Construction {
    pub table: IntersectionTable,
    pub alpha_override: Option<AlphaTriple>,
    pub cycle_override: Option<Vec<CurveId>>,
}

impl Default for Construction {
    fn default() -> Self {
        Construction { table: IntersectionTable::standard(), alpha_override: None, cycle_override: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    pub witness: serde_json::Value,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub config: RunConfig,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.summary.fail == 0 {
            0
        } else {
            1
        }
    }

    pub fn failed(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| c.status == Status::Fail).map(|c| c.id.as_str()).collect()
    }

    pub fn get(&self, id: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.id == id)
    }
}

pub fn run_suite(config: &RunConfig) -> Result<Report, RunConfigError> {
    run_suite_with(config, &Construction::default())
}

/// Run every selected check; a panicking or erroring check is recorded as a
/// failure and the run continues.
pub fn run_suite_with(config: &RunConfig, construction: &Construction) -> Result<Report, RunConfigError> {
    config.validate()?;
    let ctx = checks::Ctx::new(config, construction);
    let mut records = Vec::new();
    for def in checks::registry().iter().filter(|d| config.suites.contains(&d.suite)) {
        let outcome = catch_unwind(AssertUnwindSafe(|| (def.run)(&ctx)));
        let (status, mut witness) = match outcome {
            Ok(Ok((true, w))) => (Status::Pass, w),
            Ok(Ok((false, w))) => (Status::Fail, w),
            Ok(Err(msg)) => (Status::Fail, serde_json::json!({ "error": msg })),
            Err(panic) => {
                let msg = panic
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_else(|| "panic".into());
                (Status::Fail, serde_json::json!({ "panic": msg }))
            }
        };
        if def.r_dependent && config.mode == Mode::Specialized {
            if let serde_json::Value::Object(map) = &mut witness {
                map.insert("scope".into(), "symbolic-only".into());
            } else {
                witness = serde_json::json!({ "scope": "symbolic-only", "value": witness });
            }
        }
        records.push(CheckRecord { id: def.id.into(), anchor: def.anchor.into(), status, witness });
    }
    records.sort_by(|a, b| a.id.cmp(&b.id));
    let summary = Summary {
        total: records.len(),
        pass: records.iter().filter(|r| r.status == Status::Pass).count(),
        fail: records.iter().filter(|r| r.status == Status::Fail).count(),
        skipped: records.iter().filter(|r| r.status == Status::Skipped).count(),
    };
    Ok(Report { version: REPORT_VERSION.into(), config: config.clone(), checks: records, summary })
}

pub fn emit(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut out = String::new();
            for c in &report.checks {
                let tag = match c.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                    Status::Skipped => "SKIP",
                };
                out.push_str(&format!("{tag}  {:<36} {}\n", c.id, c.anchor));
            }
            let s = &report.summary;
            out.push_str(&format!("{} checks: {} passed, {} failed, {} skipped\n", s.total, s.pass, s.fail, s.skipped));
            out
        }
    }
}
