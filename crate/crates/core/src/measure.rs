//! Measurement functions: strict monotone maps into `[0, inf)` carrying
//! the reversed order, so larger values mean lower information content.
//! All of them vanish exactly on the pointed distributions.

use crate::error::{Error, Result};
use crate::simplex::{extrema, shannon_entropy, Distribution};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Selector for one of the implemented measurements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Measurement {
    /// `1 - max(x)`; certifies the order renormalised to the largest
    /// coordinate.
    MuPlus,
    /// `(2n - 3) - 2 Z(x) + min_nonzero(x)`; certifies the order
    /// renormalised to the smallest nonzero coordinate and every
    /// restricted information order.
    MuMinus,
    /// Shannon entropy in nats.
    ShannonEntropy,
}

impl fmt::Display for Measurement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Measurement::MuPlus => "mu-plus",
            Measurement::MuMinus => "mu-minus",
            Measurement::ShannonEntropy => "shannon-entropy",
        };
        f.write_str(s)
    }
}

impl Measurement {
    pub fn evaluate(&self, x: &Distribution) -> Result<f64> {
        match self {
            Measurement::MuPlus => Ok(mu_plus(x)),
            Measurement::MuMinus => mu_minus(x),
            Measurement::ShannonEntropy => Ok(shannon_entropy(x)),
        }
    }
}

/// `1 - max(x)`, in `[0, 1 - 1/n]`.
pub fn mu_plus(x: &Distribution) -> f64 {
    1.0 - extrema(x).max_coord
}

/// `(2n - 3) - 2 Z(x) + min_nonzero(x)` where `Z` counts zeros. Zero
/// exactly on the pointed distributions, where `Z = n - 1` and the
/// smallest nonzero coordinate is 1.
pub fn mu_minus(x: &Distribution) -> Result<f64> {
    let n = x.dim();
    if n < 2 {
        return Err(Error::BadDimension {
            dim: n,
            reason: "mu-minus needs dimension at least 2",
        });
    }
    let e = extrema(x);
    Ok((2 * n - 3) as f64 - 2.0 * e.zero_count as f64 + e.min_nonzero)
}
