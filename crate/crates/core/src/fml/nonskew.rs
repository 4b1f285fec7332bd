use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gen::nonskew_count;
use crate::ir::Formula;
use crate::semantics::{energy_exhaustive_capped, gate_values};

/// Largest variable count for which the exact mean is computed.
const EXACT_CAP: usize = 12;

#[derive(Clone, Debug, PartialEq)]
pub struct NonSkewStats {
    /// AND/OR gates whose children are all leaves.
    pub t: usize,
    pub samples: usize,
    pub mean: f64,
    /// Standard error of `mean`.
    pub std_err: f64,
    /// Mean energy over all inputs, for `n <= 12`.
    pub exact_mean: Option<f64>,
    /// `t / 4`.
    pub lower_envelope: f64,
}

/// Mean energy on `samples` uniform inputs drawn from a ChaCha8 stream seeded
/// with `seed`.
pub fn nonskew_energy_estimate(f: &Formula, samples: usize, seed: u64) -> Result<NonSkewStats> {
    if samples == 0 {
        return Err(Error::Malformed {
            what: "sample count",
            detail: "need at least one sample".into(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let logic: Vec<usize> = f.logic_gates().collect();
    let mut input = vec![false; f.num_vars()];
    let (mut sum, mut sum_sq) = (0f64, 0f64);
    for _ in 0..samples {
        input.iter_mut().for_each(|b| *b = rng.random_bool(0.5));
        let v = gate_values(f, &input);
        let e = logic.iter().filter(|&&g| v[g]).count() as f64;
        sum += e;
        sum_sq += e * e;
    }
    let s = samples as f64;
    let mean = sum / s;
    let var = if samples > 1 {
        ((sum_sq - s * mean * mean) / (s - 1.0)).max(0.0)
    } else {
        0.0
    };
    let exact_mean = if f.num_vars() <= EXACT_CAP {
        Some(energy_exhaustive_capped(f, EXACT_CAP)?.mean(f.num_vars()))
    } else {
        None
    };
    let t = nonskew_count(f);
    Ok(NonSkewStats {
        t,
        samples,
        mean,
        std_err: (var / s).sqrt(),
        exact_mean,
        lower_envelope: t as f64 / 4.0,
    })
}
