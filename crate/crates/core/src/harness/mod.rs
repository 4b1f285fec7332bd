//! The acceptance suite: thirteen criteria, each a set of exact checks over a
//! seeded corpus, collected into a serializable [`Report`].

mod criteria;
mod sweep;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::semantics::SWEEP_CAP;

pub use criteria::{criterion_title, CRITERIA};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    /// Reduced corpora for quick runs.
    Smoke,
    /// The full corpora.
    Full,
}

impl FromStr for Level {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "smoke" => Ok(Level::Smoke),
            "full" => Ok(Level::Full),
            _ => Err(Error::Malformed {
                what: "level",
                detail: format!("expected smoke or full, got {s:?}"),
            }),
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Level::Smoke => "smoke",
            Level::Full => "full",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Config {
    pub level: Level,
    /// Variable cap for exhaustive sweeps.
    pub cap: usize,
}

impl Config {
    pub fn new(level: Level) -> Self {
        Config {
            level,
            cap: SWEEP_CAP,
        }
    }

    pub fn cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    fn pick<T>(&self, smoke: T, full: T) -> T {
        match self.level {
            Level::Smoke => smoke,
            Level::Full => full,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub check_id: String,
    /// The inequality or identity being checked, in plain text.
    pub claim: String,
    pub instances_tried: u64,
    pub violations: u64,
    /// The first error, else the instance closest to violating the claim.
    pub extremal_witness: Option<String>,
}

impl CheckRecord {
    pub fn passed(&self) -> bool {
        self.violations == 0 && self.instances_tried > 0
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriterionOutcome {
    pub id: usize,
    pub title: String,
    pub checks: Vec<CheckRecord>,
    pub wall_time_secs: f64,
}

impl CriterionOutcome {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckRecord::passed)
    }

    pub fn violations(&self) -> u64 {
        self.checks.iter().map(|c| c.violations).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub suite: String,
    pub level: Level,
    pub criteria: Vec<CriterionOutcome>,
    pub wall_time_secs: f64,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.criteria.iter().all(CriterionOutcome::passed)
    }

    pub fn violations(&self) -> u64 {
        self.criteria.iter().map(CriterionOutcome::violations).sum()
    }
}

pub fn run_criterion(id: usize, cfg: &Config) -> Result<CriterionOutcome> {
    let title = criterion_title(id).ok_or_else(|| Error::Malformed {
        what: "criterion id",
        detail: format!("{id} is not in 1..={}", CRITERIA.len()),
    })?;
    let start = Instant::now();
    let checks = criteria::run(id, cfg);
    Ok(CriterionOutcome {
        id,
        title: title.to_string(),
        checks,
        wall_time_secs: start.elapsed().as_secs_f64(),
    })
}

/// Runs every criterion; criteria run in parallel and are reported in order.
pub fn run_all(cfg: &Config) -> Report {
    let start = Instant::now();
    let criteria = (1..=CRITERIA.len())
        .into_par_iter()
        .map(|id| run_criterion(id, cfg).expect("known criterion"))
        .collect();
    Report {
        suite: "energy-complexity".to_string(),
        level: cfg.level,
        criteria,
        wall_time_secs: start.elapsed().as_secs_f64(),
    }
}
