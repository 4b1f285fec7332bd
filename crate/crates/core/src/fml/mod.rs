//! Energy of formulas: the restriction bound, the Guo–Komargodski style
//! decomposition into monotone blocks, non-skew formulas and read-once
//! formulas with leaf negations.

mod decompose;
mod nonskew;
mod readonce;
mod restriction;

pub use decompose::{
    alpha, check_decomposition, decompose_gk, DecompositionCheck, DecompositionResult,
};
pub use nonskew::{nonskew_energy_estimate, NonSkewStats};
pub use readonce::{readonce_leafneg_energy, ReadOnceReport};
pub use restriction::{restriction_energy_check, RestrictionCheck};
