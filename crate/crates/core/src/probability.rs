//! Conditional path probabilities and the probabilities of the three ways a
//! coincidence can be triggered.
//!
//! Only the intensity ratio `x = I_a / I_b` enters; absolute intensities
//! cancel.

use crate::error::{Error, Result};
use crate::model::{check_ratio, BeamSplitter};

const SUM_TOLERANCE: f64 = 1e-12;

/// Probabilities that the photon seen by detector 1 (or 2) came from source
/// `a` (or `b`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathProbabilities {
    pub p1a: f64,
    pub p1b: f64,
    pub p2a: f64,
    pub p2b: f64,
}

impl PathProbabilities {
    /// Checks ranges and that each detector's probabilities sum to one.
    pub fn new(p1a: f64, p1b: f64, p2a: f64, p2b: f64) -> Result<Self> {
        for (name, p) in [("p1a", p1a), ("p1b", p1b), ("p2a", p2a), ("p2b", p2b)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidProbabilities(format!(
                    "{name} = {p} outside [0, 1]"
                )));
            }
        }
        if (p1a + p1b - 1.0).abs() > SUM_TOLERANCE || (p2a + p2b - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::InvalidProbabilities(format!(
                "p1a + p1b = {}, p2a + p2b = {}",
                p1a + p1b,
                p2a + p2b
            )));
        }
        Ok(PathProbabilities { p1a, p1b, p2a, p2b })
    }

    /// All four probabilities equal to one half.
    pub fn symmetric() -> Self {
        PathProbabilities {
            p1a: 0.5,
            p1b: 0.5,
            p2a: 0.5,
            p2b: 0.5,
        }
    }

    /// The same probabilities seen with the two detectors exchanged.
    pub fn swap_detectors(self) -> Self {
        PathProbabilities {
            p1a: self.p2a,
            p1b: self.p2b,
            p2a: self.p1a,
            p2b: self.p1b,
        }
    }

    /// `p1a·p1b·p2a·p2b`, the product under the interference amplitude.
    pub(crate) fn product(&self) -> f64 {
        self.p1a * self.p1b * self.p2a * self.p2b
    }
}

/// Detector 1 sees source `a` transmitted and source `b` reflected; detector
/// 2 the other way round.
pub fn path_probabilities(x: f64, bs: BeamSplitter) -> Result<PathProbabilities> {
    check_ratio(x)?;
    let r = bs.reflectivity();
    let t = bs.transmissivity();
    let p1a = x * t / (x * t + r);
    let p2a = x * r / (x * r + t);
    // 1 − p computed from the complementary numerator keeps full relative
    // precision when p is close to 1.
    let p1b = r / (x * t + r);
    let p2b = t / (x * r + t);
    Ok(PathProbabilities { p1a, p1b, p2a, p2b })
}

/// Probabilities of: both photons from `a`, both from `b`, one from each.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WayProbabilities {
    pub both_a: f64,
    pub both_b: f64,
    pub cross: f64,
}

impl WayProbabilities {
    pub fn total(&self) -> f64 {
        self.both_a + self.both_b + self.cross
    }
}

pub fn way_probabilities(p: &PathProbabilities) -> WayProbabilities {
    WayProbabilities {
        both_a: p.p1a * p.p2a,
        both_b: p.p1b * p.p2b,
        cross: p.p1a * p.p2b + p.p1b * p.p2a,
    }
}
