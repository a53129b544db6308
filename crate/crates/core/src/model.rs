//! Domain types shared by every module, and configuration validation.

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Statistical character of a light source.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SourceKind {
    Laser,
    Thermal,
    SinglePhoton,
}

/// One of the two sources feeding the beam splitter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Source {
    A,
    B,
}

/// Unordered pair of source kinds.
///
/// Each pairing fixes which physical source is `a` and which is `b`:
///
/// | pair | `a`           | `b`     |
/// |------|---------------|---------|
/// | lt   | thermal       | laser   |
/// | ll   | laser         | laser   |
/// | tt   | thermal       | thermal |
/// | ss   | single photon | single photon |
/// | sl   | single photon | laser   |
/// | st   | single photon | thermal |
///
/// The intensity ratio `x` is always `I_a / I_b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PairKind {
    LT,
    LL,
    TT,
    SS,
    SL,
    ST,
}

impl PairKind {
    pub const ALL: [PairKind; 6] = [
        PairKind::LT,
        PairKind::LL,
        PairKind::TT,
        PairKind::SS,
        PairKind::SL,
        PairKind::ST,
    ];

    /// Canonical pair for an ordered pair of source kinds.
    pub fn from_sources(first: SourceKind, second: SourceKind) -> Self {
        use SourceKind::*;
        let (lo, hi) = if first <= second {
            (first, second)
        } else {
            (second, first)
        };
        match (lo, hi) {
            (Laser, Laser) => PairKind::LL,
            (Laser, Thermal) => PairKind::LT,
            (Laser, SinglePhoton) => PairKind::SL,
            (Thermal, Thermal) => PairKind::TT,
            (Thermal, SinglePhoton) => PairKind::ST,
            (SinglePhoton, SinglePhoton) => PairKind::SS,
            _ => unreachable!("sorted pair"),
        }
    }

    /// Kinds of source `a` and source `b`, in that order.
    pub fn sources(self) -> (SourceKind, SourceKind) {
        use SourceKind::*;
        match self {
            PairKind::LT => (Thermal, Laser),
            PairKind::LL => (Laser, Laser),
            PairKind::TT => (Thermal, Thermal),
            PairKind::SS => (SinglePhoton, SinglePhoton),
            PairKind::SL => (SinglePhoton, Laser),
            PairKind::ST => (SinglePhoton, Thermal),
        }
    }

    pub fn kind_of(self, source: Source) -> SourceKind {
        let (a, b) = self.sources();
        match source {
            Source::A => a,
            Source::B => b,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            PairKind::LT => "lt",
            PairKind::LL => "ll",
            PairKind::TT => "tt",
            PairKind::SS => "ss",
            PairKind::SL => "sl",
            PairKind::ST => "st",
        }
    }
}

impl fmt::Display for PairKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown pair kind {0:?} (expected one of lt, ll, tt, ss, sl, st)")]
pub struct ParsePairKindError(String);

impl FromStr for PairKind {
    type Err = ParsePairKindError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let kind = |c: char| match c {
            'l' => Some(SourceKind::Laser),
            't' => Some(SourceKind::Thermal),
            's' => Some(SourceKind::SinglePhoton),
            _ => None,
        };
        let lower = s.trim().to_ascii_lowercase();
        let mut chars = lower.chars();
        match (
            chars.next().and_then(kind),
            chars.next().and_then(kind),
            chars.next(),
        ) {
            (Some(first), Some(second), None) => Ok(PairKind::from_sources(first, second)),
            _ => Err(ParsePairKindError(s.to_string())),
        }
    }
}

/// Lossless beam splitter with reflectivity strictly inside (0, 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamSplitter {
    reflectivity: f64,
}

impl BeamSplitter {
    /// Phase picked up on reflection relative to transmission.
    pub const REFLECTION_PHASE: f64 = FRAC_PI_2;

    pub fn new(reflectivity: f64) -> Result<Self> {
        if reflectivity > 0.0 && reflectivity < 1.0 {
            Ok(BeamSplitter { reflectivity })
        } else {
            Err(Error::InvalidReflectivity(reflectivity))
        }
    }

    pub fn symmetric() -> Self {
        BeamSplitter { reflectivity: 0.5 }
    }

    pub fn reflectivity(&self) -> f64 {
        self.reflectivity
    }

    pub fn transmissivity(&self) -> f64 {
        1.0 - self.reflectivity
    }
}

/// Full description of one simulated experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub pair: PairKind,
    /// Intensity ratio `I_a / I_b`.
    pub ratio: f64,
    pub bs: BeamSplitter,
    /// Beat frequency `|ν_a − ν_b|` in Hz.
    pub delta_nu: f64,
    /// Detection-time offsets `τ = t₁ − t₂` in seconds.
    pub tau: Vec<f64>,
}

impl ExperimentConfig {
    pub fn new(
        pair: PairKind,
        ratio: f64,
        bs: BeamSplitter,
        delta_nu: f64,
        tau: Vec<f64>,
    ) -> Result<Self> {
        validate_config(ExperimentConfig {
            pair,
            ratio,
            bs,
            delta_nu,
            tau,
        })
    }

    /// Default grid: 81 points over `±1/Δν` (two beat periods).
    pub fn default_tau_grid(delta_nu: f64) -> Result<Vec<f64>> {
        check_beat_frequency(delta_nu)?;
        if delta_nu == 0.0 {
            return Err(Error::DegenerateCurve(
                "no natural tau scale when delta_nu = 0".into(),
            ));
        }
        Ok(linspace(-1.0 / delta_nu, 1.0 / delta_nu, 81))
    }
}

pub(crate) fn linspace(start: f64, stop: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![start],
        _ => {
            let step = (stop - start) / (count - 1) as f64;
            (0..count)
                .map(|i| {
                    if i == count - 1 {
                        stop
                    } else {
                        start + step * i as f64
                    }
                })
                .collect()
        }
    }
}

pub(crate) fn check_ratio(x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidRatio(x))
    }
}

fn check_beat_frequency(delta_nu: f64) -> Result<()> {
    if delta_nu >= 0.0 && delta_nu.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidBeatFrequency(delta_nu))
    }
}

/// Returns `cfg` unchanged when every invariant holds.
pub fn validate_config(cfg: ExperimentConfig) -> Result<ExperimentConfig> {
    check_ratio(cfg.ratio)?;
    // BeamSplitter is validated on construction; re-check in case of a
    // struct built by hand in this crate.
    BeamSplitter::new(cfg.bs.reflectivity())?;
    check_beat_frequency(cfg.delta_nu)?;
    if cfg.tau.is_empty() {
        return Err(Error::EmptyTauGrid);
    }
    if let Some(i) = cfg.tau.iter().position(|t| !t.is_finite()) {
        return Err(Error::TauGridNotIncreasing(i));
    }
    if let Some(i) = cfg.tau.windows(2).position(|w| w[1] <= w[0]) {
        return Err(Error::TauGridNotIncreasing(i + 1));
    }
    Ok(cfg)
}

/// Sampled `G²(τ)` curve in proportional units.
#[derive(Debug, Clone, PartialEq)]
pub struct G2Curve {
    pub tau: Vec<f64>,
    pub g2: Vec<f64>,
    /// Zero for analytic curves.
    pub n_realizations: u64,
    pub seed: Option<u64>,
    /// Per-point standard error of the mean; `None` for analytic curves or a
    /// single realization.
    pub stderr: Option<Vec<f64>>,
}

impl G2Curve {
    pub fn analytic(tau: Vec<f64>, g2: Vec<f64>) -> Self {
        G2Curve {
            tau,
            g2,
            n_realizations: 0,
            seed: None,
            stderr: None,
        }
    }

    pub fn len(&self) -> usize {
        self.tau.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tau.is_empty()
    }

    /// Returns a copy with every value (and standard error) multiplied by `k`.
    pub fn scaled(&self, k: f64) -> Self {
        G2Curve {
            g2: self.g2.iter().map(|g| g * k).collect(),
            stderr: self
                .stderr
                .as_ref()
                .map(|se| se.iter().map(|s| s * k.abs()).collect()),
            ..self.clone()
        }
    }
}

/// Visibility together with the extrema it was computed from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VisibilityResult {
    pub v: f64,
    pub g2_max: f64,
    pub g2_min: f64,
}
