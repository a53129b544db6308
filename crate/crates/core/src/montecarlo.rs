//! Random-phase ensemble average of the two-photon amplitude.
//!
//! Each realization draws every phase slot uniformly on `[0, 2π)`, sums the
//! alternative amplitudes and records `|Σ|²` at every τ of the grid. The
//! sample mean over realizations estimates `G²(τ)` independently of the
//! closed forms in [`crate::analytic`].
//!
//! Randomness is counter based: realization `i` uses ChaCha8 stream `i` of
//! the generator seeded with `seed`, so a realization's phases do not depend
//! on which thread evaluates it. Realizations are grouped into fixed chunks
//! and chunk sums are reduced in chunk order, which makes every output
//! bit-identical across thread counts.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::alternatives::{temporal_propagator, AlternativeSet, PhaseModel};
use crate::analytic::{self, visibility_from_extrema};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::model::{
    validate_config, BeamSplitter, ExperimentConfig, G2Curve, PairKind, Source, VisibilityResult,
};
use crate::probability::path_probabilities;

/// Frequencies assigned to the two sources. Only their difference enters
/// any observable.
fn source_frequency(source: Source, delta_nu: f64) -> f64 {
    match source {
        Source::A => delta_nu,
        Source::B => 0.0,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McSettings {
    pub n_realizations: u64,
    pub seed: u64,
    /// Realizations per work unit. Part of the reduction order, so it must
    /// stay fixed for results to be reproducible.
    pub parallel_chunk: u64,
    pub phase_model: PhaseModel,
    pub execution: Execution,
}

impl McSettings {
    pub const DEFAULT_REALIZATIONS: u64 = 100_000;
    pub const DEFAULT_CHUNK: u64 = 1024;

    pub fn new(n_realizations: u64, seed: u64) -> Self {
        McSettings {
            n_realizations,
            seed,
            ..Self::default()
        }
    }
}

impl Default for McSettings {
    fn default() -> Self {
        McSettings {
            n_realizations: Self::DEFAULT_REALIZATIONS,
            seed: 0,
            parallel_chunk: Self::DEFAULT_CHUNK,
            phase_model: PhaseModel::Physical,
            execution: Execution::Parallel,
        }
    }
}

/// `|Σ_k w_k·exp(i(φ₁+φ₂+n_k·π/2))·K(ν₁,τ)·K(ν₂,0)|²` for one set of phases.
pub fn realization_value(
    set: &AlternativeSet,
    phases: &[f64],
    delta_nu: f64,
    tau: f64,
) -> Result<f64> {
    if phases.len() != set.slot_count {
        return Err(Error::PhaseCountMismatch {
            expected: set.slot_count,
            got: phases.len(),
        });
    }
    let amplitude: Complex64 = set
        .alternatives
        .iter()
        .map(|alt| {
            let phase = phases[alt.phase_slots[0]]
                + phases[alt.phase_slots[1]]
                + f64::from(alt.bs_phase_count) * BeamSplitter::REFLECTION_PHASE;
            alt.weight
                * Complex64::cis(phase)
                * temporal_propagator(source_frequency(alt.detector1_source, delta_nu), tau)
                * temporal_propagator(source_frequency(alt.detector2_source, delta_nu), 0.0)
        })
        .sum();
    Ok(amplitude.norm_sqr())
}

/// Linear least-squares fit of `c − a·cos(2πΔντ)` on a fixed τ grid,
/// precomputed as two projection vectors so that `c = α·y` and `a = β·y`.
#[derive(Debug, Clone)]
pub struct CosineFit {
    alpha: Vec<f64>,
    beta: Vec<f64>,
}

impl CosineFit {
    /// Requires `Δν > 0` and a grid spanning at least one beat period.
    pub fn new(tau: &[f64], delta_nu: f64) -> Result<Self> {
        if !(delta_nu > 0.0) || !delta_nu.is_finite() {
            return Err(Error::DegenerateCurve(format!(
                "delta_nu must be > 0 to extract a visibility (got {delta_nu})"
            )));
        }
        let (Some(first), Some(last)) = (tau.first(), tau.last()) else {
            return Err(Error::DegenerateCurve("empty curve".into()));
        };
        let period = 1.0 / delta_nu;
        if last - first < period * (1.0 - 1e-9) {
            return Err(Error::DegenerateCurve(format!(
                "tau span {} is shorter than one beat period {period}",
                last - first
            )));
        }
        let basis: Vec<f64> = tau.iter().map(|&t| -(TAU * delta_nu * t).cos()).collect();
        let n = tau.len() as f64;
        let s1: f64 = basis.iter().sum();
        let s2: f64 = basis.iter().map(|b| b * b).sum();
        let det = n * s2 - s1 * s1;
        if !(det > 1e-12 * n * s2) {
            return Err(Error::DegenerateCurve(
                "tau grid does not resolve the beat oscillation".into(),
            ));
        }
        Ok(CosineFit {
            alpha: basis.iter().map(|b| (s2 - s1 * b) / det).collect(),
            beta: basis.iter().map(|b| (n * b - s1) / det).collect(),
        })
    }

    /// `(constant, amplitude)` for samples `y` on the grid.
    pub fn fit(&self, y: &[f64]) -> (f64, f64) {
        let dot = |w: &[f64]| w.iter().zip(y).map(|(w, y)| w * y).sum::<f64>();
        (dot(&self.alpha), dot(&self.beta))
    }

    /// Upper bounds on the standard errors of `(constant, amplitude)` for
    /// per-point errors `se`, valid under any correlation between points.
    pub fn noise_bound(&self, se: &[f64]) -> (f64, f64) {
        let bound = |w: &[f64]| w.iter().zip(se).map(|(w, s)| w.abs() * s).sum::<f64>();
        (bound(&self.alpha), bound(&self.beta))
    }
}

/// How a visibility is read off a sampled curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Extraction {
    /// Least-squares fit of the exact `c − a·cos` model.
    #[default]
    Fit,
    /// Raw maximum and minimum of the samples; biased upward by noise.
    RawExtrema,
}

fn result_from_fit(
    constant: f64,
    amplitude: f64,
    noise_c: f64,
    noise_a: f64,
) -> Result<VisibilityResult> {
    if !(constant > 0.0) {
        return Err(Error::DegenerateCurve(format!(
            "fitted constant term {constant} is not positive"
        )));
    }
    let roundoff = 1e-12 * constant;
    if amplitude < -(3.0 * noise_a + roundoff) {
        return Err(Error::NegativeAmplitude {
            amplitude,
            noise: noise_a,
        });
    }
    if amplitude > constant + 3.0 * (noise_a + noise_c) + roundoff {
        return Err(Error::AmplitudeExceedsConstant {
            amplitude,
            constant,
        });
    }
    // Within noise the amplitude is pinned to the physical range [0, c].
    let a = amplitude.clamp(0.0, constant);
    Ok(VisibilityResult {
        v: a / constant,
        g2_max: constant + a,
        g2_min: constant - a,
    })
}

pub fn visibility_from_curve(curve: &G2Curve, delta_nu: f64) -> Result<VisibilityResult> {
    visibility_from_curve_with(curve, delta_nu, Extraction::Fit)
}

pub fn visibility_from_curve_with(
    curve: &G2Curve,
    delta_nu: f64,
    extraction: Extraction,
) -> Result<VisibilityResult> {
    let fit = CosineFit::new(&curve.tau, delta_nu)?;
    match extraction {
        Extraction::Fit => {
            let (c, a) = fit.fit(&curve.g2);
            let (noise_c, noise_a) = curve
                .stderr
                .as_deref()
                .map_or((0.0, 0.0), |se| fit.noise_bound(se));
            result_from_fit(c, a, noise_c, noise_a)
        }
        Extraction::RawExtrema => {
            let max = curve.g2.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let min = curve.g2.iter().copied().fold(f64::INFINITY, f64::min);
            visibility_from_extrema(max, min.max(0.0))
        }
    }
}

/// Running sums for one chunk of realizations.
#[derive(Debug, Clone)]
struct Accumulator {
    count: u64,
    sum: Vec<f64>,
    sum_sq: Vec<f64>,
    // per-realization fit coefficients: Σc, Σa, Σc², Σa², Σca
    fit: [f64; 5],
}

impl Accumulator {
    fn new(points: usize) -> Self {
        Accumulator {
            count: 0,
            sum: vec![0.0; points],
            sum_sq: vec![0.0; points],
            fit: [0.0; 5],
        }
    }

    fn merge(&mut self, other: &Accumulator) {
        self.count += other.count;
        for (s, o) in self.sum.iter_mut().zip(&other.sum) {
            *s += o;
        }
        for (s, o) in self.sum_sq.iter_mut().zip(&other.sum_sq) {
            *s += o;
        }
        for (s, o) in self.fit.iter_mut().zip(&other.fit) {
            *s += o;
        }
    }
}

/// Precomputed per-term, per-τ factors for one configuration.
struct Ensemble {
    slots: Vec<[usize; 2]>,
    slot_count: usize,
    // term-major: factors[k * points + j]
    factors: Vec<Complex64>,
    points: usize,
}

impl Ensemble {
    fn new(set: &AlternativeSet, delta_nu: f64, tau: &[f64]) -> Self {
        let points = tau.len();
        let mut factors = Vec::with_capacity(set.alternatives.len() * points);
        for alt in &set.alternatives {
            let reflection =
                Complex64::cis(f64::from(alt.bs_phase_count) * BeamSplitter::REFLECTION_PHASE);
            let nu1 = source_frequency(alt.detector1_source, delta_nu);
            let nu2 = source_frequency(alt.detector2_source, delta_nu);
            factors.extend(tau.iter().map(|&t| {
                alt.weight
                    * reflection
                    * temporal_propagator(nu1, t)
                    * temporal_propagator(nu2, 0.0)
            }));
        }
        Ensemble {
            slots: set.alternatives.iter().map(|a| a.phase_slots).collect(),
            slot_count: set.slot_count,
            factors,
            points,
        }
    }

    fn run_chunk(
        &self,
        base: &ChaCha8Rng,
        first: u64,
        end: u64,
        fit: Option<&CosineFit>,
    ) -> Accumulator {
        let mut acc = Accumulator::new(self.points);
        let mut phases = vec![0.0; self.slot_count];
        let mut term_phase = vec![Complex64::new(0.0, 0.0); self.slots.len()];
        let mut values = vec![0.0; self.points];
        for index in first..end {
            let mut rng = base.clone();
            rng.set_stream(index);
            for phi in phases.iter_mut() {
                *phi = TAU * rng.random::<f64>();
            }
            for (e, s) in term_phase.iter_mut().zip(&self.slots) {
                *e = Complex64::cis(phases[s[0]] + phases[s[1]]);
            }
            for (j, value) in values.iter_mut().enumerate() {
                let amplitude: Complex64 = term_phase
                    .iter()
                    .enumerate()
                    .map(|(k, e)| e * self.factors[k * self.points + j])
                    .sum();
                *value = amplitude.norm_sqr();
            }
            for ((s, q), y) in acc.sum.iter_mut().zip(acc.sum_sq.iter_mut()).zip(&values) {
                *s += y;
                *q += y * y;
            }
            if let Some(fit) = fit {
                let (c, a) = fit.fit(&values);
                acc.fit[0] += c;
                acc.fit[1] += a;
                acc.fit[2] += c * c;
                acc.fit[3] += a * a;
                acc.fit[4] += c * a;
            }
            acc.count += 1;
        }
        acc
    }

    fn run(&self, mc: &McSettings, fit: Option<&CosineFit>) -> Accumulator {
        let base = ChaCha8Rng::seed_from_u64(mc.seed);
        let chunk = mc.parallel_chunk.max(1);
        let n_chunks = mc.n_realizations.div_ceil(chunk) as usize;
        let partials = mc.execution.map_indexed(n_chunks, |c| {
            let first = c as u64 * chunk;
            let end = (first + chunk).min(mc.n_realizations);
            self.run_chunk(&base, first, end, fit)
        });
        let mut total = Accumulator::new(self.points);
        for part in &partials {
            total.merge(part);
        }
        total
    }
}

fn sample_variance(sum: f64, sum_sq: f64, n: f64) -> f64 {
    let mean = sum / n;
    ((sum_sq - n * mean * mean) / (n - 1.0)).max(0.0)
}

fn curve_from(acc: &Accumulator, cfg: &ExperimentConfig, mc: &McSettings) -> G2Curve {
    let n = acc.count as f64;
    let g2 = acc.sum.iter().map(|s| s / n).collect();
    let stderr = (acc.count > 1).then(|| {
        acc.sum
            .iter()
            .zip(&acc.sum_sq)
            .map(|(&s, &q)| (sample_variance(s, q, n) / n).sqrt())
            .collect()
    });
    G2Curve {
        tau: cfg.tau.clone(),
        g2,
        n_realizations: acc.count,
        seed: Some(mc.seed),
        stderr,
    }
}

fn prepare(cfg: &ExperimentConfig, mc: &McSettings) -> Result<Ensemble> {
    if mc.n_realizations == 0 {
        return Err(Error::NoRealizations);
    }
    let p = path_probabilities(cfg.ratio, cfg.bs)?;
    let set = AlternativeSet::new(cfg.pair, &p, mc.phase_model);
    Ok(Ensemble::new(&set, cfg.delta_nu, &cfg.tau))
}

/// Per-τ sample mean and standard error of the ensemble.
pub fn g2_monte_carlo(cfg: &ExperimentConfig, mc: &McSettings) -> Result<G2Curve> {
    let cfg = validate_config(cfg.clone())?;
    let ensemble = prepare(&cfg, mc)?;
    let acc = ensemble.run(mc, None);
    Ok(curve_from(&acc, &cfg, mc))
}

/// Monte Carlo visibility with a propagated standard error.
#[derive(Debug, Clone)]
pub struct McVisibility {
    pub curve: G2Curve,
    pub result: VisibilityResult,
    /// Signed `a/c` of the fit before pinning to `[0, 1]`.
    pub estimate: f64,
    /// Delta-method standard error of `a/c` from the per-realization fit
    /// coefficients.
    pub stderr: f64,
}

/// Runs the ensemble and fits the mean curve in one pass.
///
/// The fit is linear, so the fit of the mean curve equals the mean of the
/// per-realization fits; their sample covariance gives the uncertainty of
/// the visibility without assuming independent τ points.
pub fn visibility_monte_carlo(cfg: &ExperimentConfig, mc: &McSettings) -> Result<McVisibility> {
    let cfg = validate_config(cfg.clone())?;
    let fit = CosineFit::new(&cfg.tau, cfg.delta_nu)?;
    let ensemble = prepare(&cfg, mc)?;
    let acc = ensemble.run(mc, Some(&fit));
    let curve = curve_from(&acc, &cfg, mc);

    let n = acc.count as f64;
    let (c, a) = fit.fit(&curve.g2);
    let [sc, sa, scc, saa, sca] = acc.fit;
    let (var_c, var_a, cov) = if acc.count > 1 {
        let mc_ = sc / n;
        let ma = sa / n;
        (
            sample_variance(sc, scc, n),
            sample_variance(sa, saa, n),
            (sca - n * mc_ * ma) / (n - 1.0),
        )
    } else {
        (0.0, 0.0, 0.0)
    };
    let var_v = (var_a / (c * c) + a * a * var_c / c.powi(4) - 2.0 * a * cov / c.powi(3)) / n;
    let stderr = var_v.max(0.0).sqrt();
    let result = result_from_fit(c, a, (var_c / n).sqrt(), (var_a / n).sqrt())?;
    Ok(McVisibility {
        curve,
        result,
        estimate: a / c,
        stderr,
    })
}

/// One cell of the Monte Carlo versus closed-form comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationCell {
    pub pair: PairKind,
    pub x: f64,
    pub r: f64,
    pub v_analytic: f64,
    pub v_mc: f64,
    pub stderr: f64,
}

impl ValidationCell {
    /// Absolute slack added to `3·SE` for configurations whose ensemble has
    /// no variance (single-photon pairs), where only roundoff remains.
    pub const ROUNDOFF_FLOOR: f64 = 1e-9;

    pub fn deviation(&self) -> f64 {
        (self.v_mc - self.v_analytic).abs()
    }

    pub fn bound(&self) -> f64 {
        3.0 * self.stderr + Self::ROUNDOFF_FLOOR
    }

    pub fn passed(&self) -> bool {
        self.deviation() <= self.bound()
    }
}

/// Compares the Monte Carlo visibility with the closed form for one
/// `(pair, x, R)` on the default τ grid of `delta_nu`.
pub fn validate_cell(
    pair: PairKind,
    x: f64,
    r: f64,
    delta_nu: f64,
    mc: &McSettings,
) -> Result<ValidationCell> {
    let bs = BeamSplitter::new(r)?;
    let cfg = ExperimentConfig::new(
        pair,
        x,
        bs,
        delta_nu,
        ExperimentConfig::default_tau_grid(delta_nu)?,
    )?;
    let run = visibility_monte_carlo(&cfg, mc)?;
    Ok(ValidationCell {
        pair,
        x,
        r,
        v_analytic: analytic::visibility_analytic(pair, x, bs)?,
        v_mc: run.result.v,
        stderr: run.stderr,
    })
}
