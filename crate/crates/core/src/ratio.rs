use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

/// A non-negative fraction of two counts with a non-zero denominator.
///
/// Kept unreduced: the numerator and denominator are the raw motif counts,
/// which is what reports want to show.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ratio {
    num: u64,
    den: u64,
}

impl Ratio {
    /// `None` when `den == 0`.
    pub fn new(num: u64, den: u64) -> Option<Ratio> {
        (den != 0).then_some(Ratio { num, den })
    }

    pub fn numer(&self) -> u64 {
        self.num
    }

    pub fn denom(&self) -> u64 {
        self.den
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Value rounded to `places` decimals, half away from zero, computed on
    /// integers so that ties are decided exactly.
    pub fn round_to(&self, places: u32) -> f64 {
        let scale = 10u128.pow(places);
        let n = u128::from(self.num) * scale;
        let d = u128::from(self.den);
        let q = (2 * n + d) / (2 * d);
        q as f64 / scale as f64
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> Ordering {
        (u128::from(self.num) * u128::from(other.den))
            .cmp(&(u128::from(other.num) * u128::from(self.den)))
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl Serialize for Ratio {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(self.to_f64())
    }
}

/// Round half away from zero to 4 decimals, the precision used in tables.
pub fn round4(x: f64) -> f64 {
    (x * 1e4).round() / 1e4
}
