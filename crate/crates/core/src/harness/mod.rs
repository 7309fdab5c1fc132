//! Seeded random-instance suites for the Bézout-type inequalities, with an
//! NDJSON results store and tightness statistics.

pub mod generate;
pub mod inequalities;
pub mod registry;
mod store;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::discriminant::DiscriminantError;
use crate::geometry::GeometryError;
use crate::inradius::InradiusError;
use crate::mixed_volume::MixedVolumeError;
use crate::newton::NewtonError;
use crate::rational::Rational;
use crate::report::InequalityReport;

pub use generate::{trial_seed, BodyKind, InstanceGenerator, Zonotope};
pub use inequalities::{
    check_corollary, check_log_concavity_form, check_main_theorem, check_reverse_kt, check_simplex_inequality,
    check_zonoid_constant, composition_selector_pairs, zonoid_constant,
};
pub use registry::{InequalityCheck, Registry};
pub use store::{to_ndjson, ResultsStore};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    MixedVolume(#[from] MixedVolumeError),
    #[error(transparent)]
    Discriminant(#[from] DiscriminantError),
    #[error(transparent)]
    Inradius(#[from] InradiusError),
    #[error(transparent)]
    Newton(#[from] NewtonError),
    #[error("{0} must be full-dimensional")]
    NotFullDimensional(&'static str),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("unknown inequality id {0:?}")]
    UnknownInequality(String),
    #[error("{id} does not support dimension {dim}")]
    UnsupportedDim { id: String, dim: usize },
    #[error("thread pool: {0}")]
    ThreadPool(String),
    #[error("results store: {0}")]
    Io(String),
}

/// One line of the results store.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub inequality_id: String,
    pub seed: u64,
    pub trial: u64,
    #[serde(with = "crate::rational::serde_string")]
    pub lhs: Rational,
    #[serde(with = "crate::rational::serde_string")]
    pub rhs: Rational,
    #[serde(with = "crate::rational::serde_string::option")]
    pub ratio: Option<Rational>,
    pub holds: bool,
    pub digest: String,
}

impl TrialRecord {
    pub fn from_report(report: &InequalityReport, seed: u64, trial: u64) -> Self {
        Self {
            inequality_id: report.inequality_id.clone(),
            seed,
            trial,
            lhs: report.lhs.clone(),
            rhs: report.rhs.clone(),
            ratio: report.ratio.clone(),
            holds: report.holds,
            digest: report.digest.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrialError {
    pub trial: u64,
    pub digest: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteConfig {
    pub inequality_id: String,
    pub dim: usize,
    pub trials: u64,
    pub seed: u64,
    /// Worker threads; `None` uses the global rayon pool.
    pub threads: Option<usize>,
    /// Append the check's known equality cases after the random trials.
    pub include_sharp: bool,
}

impl SuiteConfig {
    pub fn new(inequality_id: impl Into<String>, dim: usize, trials: u64, seed: u64) -> Self {
        Self { inequality_id: inequality_id.into(), dim, trials, seed, threads: None, include_sharp: true }
    }

    pub fn threads(mut self, threads: usize) -> Self {
        self.threads = Some(threads);
        self
    }
}

#[derive(Debug, Clone)]
pub struct SuiteResult {
    pub inequality_id: String,
    pub dim: usize,
    pub seed: u64,
    pub asserts: bool,
    /// In trial order; sharp instances follow the random trials.
    pub records: Vec<TrialRecord>,
    /// Full reports (with witnesses), parallel to `records`.
    pub reports: Vec<InequalityReport>,
    pub errors: Vec<TrialError>,
}

impl SuiteResult {
    /// Records with `holds = false` for an asserting check.
    pub fn violations(&self) -> Vec<&TrialRecord> {
        if !self.asserts {
            return Vec::new();
        }
        self.records.iter().filter(|r| !r.holds).collect()
    }

    pub fn is_success(&self) -> bool {
        self.errors.is_empty() && self.violations().is_empty()
    }

    pub fn min_ratio(&self) -> Option<&Rational> {
        self.records.iter().filter_map(|r| r.ratio.as_ref()).min()
    }

    pub fn to_ndjson(&self) -> String {
        to_ndjson(&self.records)
    }
}

fn digest_prefix(seed: u64, trial: u64, dim: usize) -> String {
    format!("seed={seed};trial={trial};dim={dim}")
}

/// Runs `config.trials` independent trials (concurrently) and merges them
/// by trial index, so the output does not depend on the thread count.
pub fn run_suite(registry: &Registry, config: &SuiteConfig) -> Result<SuiteResult, HarnessError> {
    let check = registry.get(&config.inequality_id)?;
    if !check.supports_dim(config.dim) {
        return Err(HarnessError::UnsupportedDim { id: config.inequality_id.clone(), dim: config.dim });
    }
    let (seed, dim) = (config.seed, config.dim);
    let run = || -> Vec<(u64, Result<InequalityReport, HarnessError>)> {
        (0..config.trials)
            .into_par_iter()
            .map(|trial| {
                let mut g = InstanceGenerator::new(trial_seed(seed, trial), dim);
                (trial, check.run_trial(&mut g, trial))
            })
            .collect()
    };
    let outcomes = match config.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| HarnessError::ThreadPool(e.to_string()))?
            .install(run),
        None => run(),
    };

    let mut result = SuiteResult {
        inequality_id: config.inequality_id.clone(),
        dim,
        seed,
        asserts: check.asserts(),
        records: Vec::new(),
        reports: Vec::new(),
        errors: Vec::new(),
    };
    let mut push = |trial: u64, prefix: String, outcome: Result<InequalityReport, HarnessError>| match outcome {
        Ok(mut report) => {
            report.digest = format!("{prefix};{}", report.digest);
            result.records.push(TrialRecord::from_report(&report, seed, trial));
            result.reports.push(report);
        }
        Err(e) => result.errors.push(TrialError { trial, digest: prefix, message: e.to_string() }),
    };
    for (trial, outcome) in outcomes {
        push(trial, digest_prefix(seed, trial, dim), outcome);
    }
    if config.include_sharp {
        match check.sharp_instances(dim) {
            Ok(sharp) => {
                for (j, report) in sharp.into_iter().enumerate() {
                    let trial = config.trials + j as u64;
                    push(trial, format!("sharp;trial={trial};dim={dim}"), Ok(report));
                }
            }
            Err(e) => push(config.trials, format!("sharp;dim={dim}"), Err(e)),
        }
    }
    Ok(result)
}

/// Runs the suite and appends its records to `store`.
pub fn run_suite_into(
    registry: &Registry,
    config: &SuiteConfig,
    store: &ResultsStore,
) -> Result<SuiteResult, HarnessError> {
    let result = run_suite(registry, config)?;
    store.append(&result.records)?;
    Ok(result)
}

/// Statistics of one dimension in a tightness survey.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimSurvey {
    pub dim: usize,
    pub trials: u64,
    pub records: usize,
    pub violations: usize,
    pub errors: usize,
    /// Records with `lhs = 0` (no ratio).
    pub degenerate: usize,
    #[serde(with = "crate::rational::serde_string::option")]
    pub min_ratio: Option<Rational>,
    /// Lower median of the observed ratios.
    #[serde(with = "crate::rational::serde_string::option")]
    pub median_ratio: Option<Rational>,
    /// Records attaining the minimum ratio (at most `EXTREMAL_LIMIT`).
    pub extremal: Vec<TrialRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Survey {
    pub inequality_id: String,
    pub seed: u64,
    pub dims: Vec<DimSurvey>,
}

impl Survey {
    pub fn min_ratio(&self) -> Option<&Rational> {
        self.dims.iter().filter_map(|d| d.min_ratio.as_ref()).min()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }

    pub fn extremal(&self) -> Vec<TrialRecord> {
        self.dims.iter().flat_map(|d| d.extremal.iter().cloned()).collect()
    }
}

pub const EXTREMAL_LIMIT: usize = 5;

fn summarize(result: &SuiteResult, trials: u64) -> DimSurvey {
    let mut ratios: Vec<&Rational> = result.records.iter().filter_map(|r| r.ratio.as_ref()).collect();
    ratios.sort();
    let min_ratio = ratios.first().map(|&r| r.clone());
    let median_ratio = (!ratios.is_empty()).then(|| ratios[(ratios.len() - 1) / 2].clone());
    let extremal = match &min_ratio {
        Some(m) => {
            result.records.iter().filter(|r| r.ratio.as_ref() == Some(m)).take(EXTREMAL_LIMIT).cloned().collect()
        }
        None => Vec::new(),
    };
    DimSurvey {
        dim: result.dim,
        trials,
        records: result.records.len(),
        violations: result.violations().len(),
        errors: result.errors.len(),
        degenerate: result.records.len() - ratios.len(),
        min_ratio,
        median_ratio,
        extremal,
    }
}

/// Per-dimension ratio statistics, with the known equality cases injected.
/// Extremal records are appended to `store` when one is given.
pub fn tightness_survey(
    registry: &Registry,
    inequality_id: &str,
    trials: u64,
    dims: &[usize],
    seed: u64,
    store: Option<&ResultsStore>,
) -> Result<Survey, HarnessError> {
    let mut out = Survey { inequality_id: inequality_id.to_string(), seed, dims: Vec::new() };
    for &dim in dims {
        let result = run_suite(registry, &SuiteConfig::new(inequality_id, dim, trials, seed))?;
        out.dims.push(summarize(&result, trials));
    }
    if let Some(store) = store {
        store.append(&out.extremal())?;
    }
    Ok(out)
}

/// Trial counts per outcome, keyed by id, for compact summaries.
pub fn tally(results: &[SuiteResult]) -> BTreeMap<String, (usize, usize, usize)> {
    let mut out: BTreeMap<String, (usize, usize, usize)> = BTreeMap::new();
    for r in results {
        let e = out.entry(r.inequality_id.clone()).or_default();
        e.0 += r.records.len();
        e.1 += r.violations().len();
        e.2 += r.errors.len();
    }
    out
}
