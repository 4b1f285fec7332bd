use rayon::prelude::*;

use crate::error::Result;
use crate::harness::CheckRecord;

/// Outcome of one check on one corpus instance, possibly covering several
/// sub-cases (every gate, every input pair, ...).
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct Obs {
    pub tried: u64,
    pub failed: u64,
    /// Distance from violation; negative when violated.
    pub slack: f64,
}

impl Obs {
    pub fn none() -> Obs {
        Obs {
            tried: 0,
            failed: 0,
            slack: f64::INFINITY,
        }
    }

    pub fn holds(ok: bool) -> Obs {
        Obs {
            tried: 1,
            failed: u64::from(!ok),
            slack: if ok { 0.0 } else { -1.0 },
        }
    }

    /// `lhs <= rhs`.
    pub fn le(lhs: f64, rhs: f64) -> Obs {
        let slack = rhs - lhs;
        Obs {
            tried: 1,
            failed: u64::from(slack < 0.0),
            slack,
        }
    }

    /// `lhs >= rhs`.
    pub fn ge(lhs: f64, rhs: f64) -> Obs {
        Obs::le(rhs, lhs)
    }

    pub fn eq(lhs: f64, rhs: f64) -> Obs {
        let ok = lhs == rhs;
        Obs {
            tried: 1,
            failed: u64::from(!ok),
            slack: -(lhs - rhs).abs(),
        }
    }

    pub fn merge(self, o: Obs) -> Obs {
        Obs {
            tried: self.tried + o.tried,
            failed: self.failed + o.failed,
            slack: self.slack.min(o.slack),
        }
    }
}

pub(crate) struct Check {
    pub id: &'static str,
    pub claim: &'static str,
}

#[derive(Clone)]
struct Acc {
    tried: u64,
    failed: u64,
    /// (slack, instance) of the tightest instance.
    worst: Option<(f64, usize)>,
    /// First instance whose evaluation failed with an error.
    error: Option<(usize, String)>,
}

impl Acc {
    fn new() -> Self {
        Acc {
            tried: 0,
            failed: 0,
            worst: None,
            error: None,
        }
    }

    fn add(&mut self, i: usize, o: &Obs) {
        self.tried += o.tried;
        self.failed += o.failed;
        if o.tried > 0 && self.worst.is_none_or(|(s, j)| (o.slack, i) < (s, j)) {
            self.worst = Some((o.slack, i));
        }
    }

    fn add_error(&mut self, i: usize, e: &str) {
        self.tried += 1;
        self.failed += 1;
        if self.error.as_ref().is_none_or(|(j, _)| i < *j) {
            self.error = Some((i, e.to_string()));
        }
    }

    fn merge(mut self, o: Acc) -> Acc {
        self.tried += o.tried;
        self.failed += o.failed;
        if let Some((s, i)) = o.worst {
            if self.worst.is_none_or(|(t, j)| (s, i) < (t, j)) {
                self.worst = Some((s, i));
            }
        }
        if let Some((i, e)) = o.error {
            if self.error.as_ref().is_none_or(|(j, _)| i < *j) {
                self.error = Some((i, e));
            }
        }
        self
    }
}

/// Evaluates `eval` on instances `0..count` in parallel; `eval` returns one
/// [`Obs`] per entry of `checks`. `describe` renders an instance for the
/// witness field.
pub(crate) fn sweep<E, D>(checks: &[Check], count: usize, eval: E, describe: D) -> Vec<CheckRecord>
where
    E: Fn(usize) -> Result<Vec<Obs>> + Sync,
    D: Fn(usize) -> String,
{
    let k = checks.len();
    let accs = (0..count)
        .into_par_iter()
        .fold(
            || vec![Acc::new(); k],
            |mut accs, i| {
                match eval(i) {
                    Ok(obs) => {
                        debug_assert_eq!(obs.len(), k);
                        for (a, o) in accs.iter_mut().zip(&obs) {
                            a.add(i, o);
                        }
                    }
                    Err(e) => {
                        let e = e.to_string();
                        accs.iter_mut().for_each(|a| a.add_error(i, &e));
                    }
                }
                accs
            },
        )
        .reduce(
            || vec![Acc::new(); k],
            |a, b| a.into_iter().zip(b).map(|(x, y)| x.merge(y)).collect(),
        );
    checks
        .iter()
        .zip(accs)
        .map(|(c, a)| {
            let extremal_witness = match (&a.error, a.worst) {
                (Some((i, e)), _) => Some(format!("instance {i}: error: {e}\n{}", describe(*i))),
                (None, Some((s, i))) => Some(format!("instance {i} (slack {s}):\n{}", describe(i))),
                (None, None) => None,
            };
            CheckRecord {
                check_id: c.id.to_string(),
                claim: c.claim.to_string(),
                instances_tried: a.tried,
                violations: a.failed,
                extremal_witness,
            }
        })
        .collect()
}
