//! Closed-form `G²(τ)` and visibility for the six source pairings.
//!
//! Every pairing gives a curve of the form
//!
//! ```text
//! G²(τ) ∝ C − A·cos(2π·Δν·τ),   A = 2·√(p1a·p1b·p2a·p2b)
//! ```
//!
//! with a pairing-dependent constant `C` collecting the incoherent
//! same-source contributions. The visibility is `A / C`.

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::model::{check_ratio, BeamSplitter, G2Curve, PairKind, VisibilityResult};
use crate::probability::PathProbabilities;

/// Coefficients of `C − A·cos(2πΔντ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormG2 {
    pub constant_term: f64,
    pub oscillation_amplitude: f64,
}

impl ClosedFormG2 {
    /// Sign in front of the cosine; the cross terms are always a π apart.
    pub const SIGN: f64 = -1.0;

    pub fn at(&self, delta_nu: f64, tau: f64) -> f64 {
        self.constant_term + Self::SIGN * self.oscillation_amplitude * (TAU * delta_nu * tau).cos()
    }

    pub fn visibility(&self) -> f64 {
        self.oscillation_amplitude / self.constant_term
    }
}

/// Closed form for `pair`. Source `b` is the laser in lt and sl and the
/// thermal source in st.
pub fn g2_closed_form(pair: PairKind, p: &PathProbabilities) -> ClosedFormG2 {
    let both_a = p.p1a * p.p2a;
    let both_b = p.p1b * p.p2b;
    let cross = p.p1a * p.p2b + p.p1b * p.p2a;
    // A thermal pair contributes twice its way probability (bunching).
    let constant_term = match pair {
        PairKind::LT => 2.0 * both_a + both_b + cross,
        PairKind::LL => both_a + both_b + cross,
        PairKind::TT => 2.0 * both_a + 2.0 * both_b + cross,
        PairKind::SS => cross,
        PairKind::SL => both_b + cross,
        PairKind::ST => 2.0 * both_b + cross,
    };
    ClosedFormG2 {
        constant_term,
        oscillation_amplitude: 2.0 * p.product().sqrt(),
    }
}

pub fn g2_analytic(pair: PairKind, p: &PathProbabilities, delta_nu: f64, tau: f64) -> f64 {
    g2_closed_form(pair, p).at(delta_nu, tau)
}

/// Noiseless curve on a τ grid.
pub fn g2_analytic_curve(
    pair: PairKind,
    p: &PathProbabilities,
    delta_nu: f64,
    tau: &[f64],
) -> G2Curve {
    let form = g2_closed_form(pair, p);
    let g2 = tau.iter().map(|&t| form.at(delta_nu, t).max(0.0)).collect();
    G2Curve::analytic(tau.to_vec(), g2)
}

/// Visibility as a rational function of `x` and `R`.
pub fn visibility_analytic(pair: PairKind, x: f64, bs: BeamSplitter) -> Result<f64> {
    check_ratio(x)?;
    Ok(visibility_formula(pair, x, bs.reflectivity()))
}

/// Unchecked rational form. At `R ∈ {0, 1}` every pairing gives 0, the
/// continuous limit of the interior values.
pub(crate) fn visibility_formula(pair: PairKind, x: f64, r: f64) -> f64 {
    let t = 1.0 - r;
    let rt = r * t;
    let numerator = 2.0 * x * rt;
    let denominator = match pair {
        PairKind::LT => (x + r - x * r) * (t + x * r) + x * x * rt,
        PairKind::LL => (x + r - x * r) * (t + x * r),
        PairKind::TT => (x + r - x * r) * (t + x * r) + x * x * rt + rt,
        PairKind::SS => return 2.0 * rt / (1.0 - 2.0 * r + 2.0 * r * r),
        PairKind::SL => x * (1.0 - 2.0 * r + 2.0 * r * r) + rt,
        PairKind::ST => x * (1.0 - 2.0 * r + 2.0 * r * r) + 2.0 * rt,
    };
    numerator / denominator
}

/// Visibility for sweep grids, which may touch the closed boundary
/// `R ∈ {0, 1}`. There the cross terms vanish and the pattern is flat, so
/// the visibility is 0. Interior points go through [`visibility_analytic`].
pub fn visibility_on_grid(pair: PairKind, x: f64, r: f64) -> Result<f64> {
    if r == 0.0 || r == 1.0 {
        check_ratio(x)?;
        return Ok(0.0);
    }
    visibility_analytic(pair, x, BeamSplitter::new(r)?)
}

/// `V = (max − min) / (max + min)`.
pub fn visibility_from_extrema(g2_max: f64, g2_min: f64) -> Result<VisibilityResult> {
    if !(g2_max > 0.0) || !(g2_min >= 0.0) || g2_min > g2_max || !g2_max.is_finite() {
        return Err(Error::InvalidExtrema {
            max: g2_max,
            min: g2_min,
        });
    }
    Ok(VisibilityResult {
        v: (g2_max - g2_min) / (g2_max + g2_min),
        g2_max,
        g2_min,
    })
}
