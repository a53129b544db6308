//! Visibility maxima over `(x, R)` and the conditions under which a pairing
//! with a single-photon source beats the classical limit of 0.5.

use crate::analytic::{visibility_analytic, visibility_formula};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::model::{check_ratio, BeamSplitter, PairKind};

/// Classical upper bound on the visibility of two independent beams.
pub const CLASSICAL_LIMIT: f64 = 0.5;

const GOLDEN: f64 = 0.618_033_988_749_894_9;

/// Rectangle searched by [`maximize_visibility`]. `x` is scanned on a
/// logarithmic grid, `R` on a linear one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchBox {
    pub x_range: (f64, f64),
    pub r_range: (f64, f64),
    pub x_points: usize,
    pub r_points: usize,
    /// Stopping width for each coordinate during refinement.
    pub tolerance: f64,
    pub execution: Execution,
}

impl Default for SearchBox {
    fn default() -> Self {
        SearchBox {
            x_range: (1e-3, 1e3),
            r_range: (1e-3, 1.0 - 1e-3),
            x_points: 200,
            r_points: 200,
            tolerance: 1e-9,
            execution: Execution::Parallel,
        }
    }
}

impl SearchBox {
    fn check(&self) -> Result<()> {
        let (x_lo, x_hi) = self.x_range;
        let (r_lo, r_hi) = self.r_range;
        check_ratio(x_lo)?;
        check_ratio(x_hi)?;
        BeamSplitter::new(r_lo)?;
        BeamSplitter::new(r_hi)?;
        if x_lo >= x_hi || r_lo >= r_hi {
            return Err(Error::InvalidRange(format!(
                "need lo < hi, got x {:?} and R {:?}",
                self.x_range, self.r_range
            )));
        }
        if self.x_points < 3 || self.r_points < 3 {
            return Err(Error::InvalidRange(
                "grid needs at least 3 points per axis".into(),
            ));
        }
        if !(self.tolerance > 0.0) {
            return Err(Error::InvalidRange("tolerance must be positive".into()));
        }
        Ok(())
    }
}

/// Where along `x` the maximum sits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RatioOptimum {
    /// Interior maximizer.
    At(f64),
    /// The visibility does not depend on `x` at the optimal `R`.
    Any,
    /// Still increasing at the upper end of the searched range; the true
    /// supremum lies at `x → ∞`.
    Capped(f64),
}

impl RatioOptimum {
    pub fn value(self) -> Option<f64> {
        match self {
            RatioOptimum::At(x) | RatioOptimum::Capped(x) => Some(x),
            RatioOptimum::Any => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Maximum {
    pub pair: PairKind,
    pub v_max: f64,
    pub r_star: f64,
    pub x_star: RatioOptimum,
}

/// Golden-section search for the maximum of a unimodal `f` on `[lo, hi]`.
/// Returns the best point seen once the bracket is narrower than `tol`.
pub fn golden_section_max(
    f: impl Fn(f64) -> f64,
    mut lo: f64,
    mut hi: f64,
    tol: f64,
) -> (f64, f64) {
    let mut x1 = hi - GOLDEN * (hi - lo);
    let mut x2 = lo + GOLDEN * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    // bracket shrinks by GOLDEN each step; bound the loop for tiny tolerances
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - GOLDEN * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + GOLDEN * (hi - lo);
            f2 = f(x2);
        }
    }
    let candidates = [(x1, f1), (x2, f2), (lo, f(lo)), (hi, f(hi))];
    candidates
        .into_iter()
        .fold((x1, f1), |best, c| if c.1 > best.1 { c } else { best })
}

/// Coarse scan of the search box followed by coordinate-wise golden-section
/// refinement.
pub fn maximize_visibility(pair: PairKind, search: &SearchBox) -> Result<Maximum> {
    search.check()?;
    let (x_lo, x_hi) = search.x_range;
    let (r_lo, r_hi) = search.r_range;
    let (u_lo, u_hi) = (x_lo.ln(), x_hi.ln());
    let u_step = (u_hi - u_lo) / (search.x_points - 1) as f64;
    let r_step = (r_hi - r_lo) / (search.r_points - 1) as f64;
    let u_at = |i: usize| {
        if i + 1 == search.x_points {
            u_hi
        } else {
            u_lo + u_step * i as f64
        }
    };
    let r_at = |j: usize| {
        if j + 1 == search.r_points {
            r_hi
        } else {
            r_lo + r_step * j as f64
        }
    };
    let v = |u: f64, r: f64| visibility_formula(pair, u.exp(), r);

    // Best point per x row, then the best row; ties keep the lowest index.
    let rows =
        search.execution.map_indexed(search.x_points, |i| {
            let u = u_at(i);
            (0..search.r_points).map(|j| (j, v(u, r_at(j)))).fold(
                (0, f64::NEG_INFINITY),
                |best, c| if c.1 > best.1 { c } else { best },
            )
        });
    let (i_best, (j_best, _)) =
        rows.iter()
            .copied()
            .enumerate()
            .fold((0, (0, f64::NEG_INFINITY)), |best, c| {
                if c.1 .1 > best.1 .1 {
                    c
                } else {
                    best
                }
            });

    let mut u = u_at(i_best);
    let mut r = r_at(j_best);
    let tol = search.tolerance;
    for _ in 0..100 {
        let (r_new, _) = golden_section_max(
            |r| v(u, r),
            (r - r_step).max(r_lo),
            (r + r_step).min(r_hi),
            tol,
        );
        // tolerance on x translates to tol/x in log space
        let (u_new, _) = golden_section_max(
            |u| v(u, r_new),
            (u - u_step).max(u_lo),
            (u + u_step).min(u_hi),
            tol / u.exp().max(1.0),
        );
        let dr = (r_new - r).abs();
        let dx = (u_new.exp() - u.exp()).abs();
        r = r_new;
        u = u_new;
        if dr < tol && dx < tol {
            break;
        }
    }

    // Mirror symmetry puts every maximum on R = 0.5; report it exactly.
    // Near the ridge the surface is flat to roundoff, so compare with slack.
    if (r - 0.5).abs() < 1e-6 && v(u, 0.5) >= v(u, r) * (1.0 - 1e-13) {
        r = 0.5;
        u = golden_section_max(
            |u| v(u, r),
            (u - u_step).max(u_lo),
            (u + u_step).min(u_hi),
            tol / u.exp().max(1.0),
        )
        .0;
    }

    let v_max = v(u, r);
    let flat = [u_lo, 0.0_f64.clamp(u_lo, u_hi), u_hi]
        .iter()
        .all(|&w| (v(w, r) - v_max).abs() <= 1e-12 * v_max.max(1.0));
    let x_star = if flat {
        RatioOptimum::Any
    } else if u_hi - u <= 1e-6 {
        RatioOptimum::Capped(x_hi)
    } else {
        RatioOptimum::At(u.exp())
    };
    Ok(Maximum {
        pair,
        v_max,
        r_star: r,
        x_star,
    })
}

/// Reflectivities for which `6R − 6R² − 1 > 0`, i.e. where a single-photon
/// pairing can exceed the classical limit for large enough `x`.
pub fn feasible_reflectivity_interval() -> (f64, f64) {
    let s3 = 3f64.sqrt();
    ((3.0 - s3) / 6.0, (3.0 + s3) / 6.0)
}

/// Smallest `x` at which sl or st reaches the classical limit, or `None`
/// when no ratio suffices at this `R`. Above `x_min` the visibility exceeds
/// 0.5.
pub fn threshold_min_ratio(pair: PairKind, bs: BeamSplitter) -> Result<Option<f64>> {
    let r = bs.reflectivity();
    let u = r - r * r;
    let margin = 6.0 * u - 1.0;
    // feasibility from the factored form 6(R − lo)(hi − R), which is exactly
    // zero at both endpoints of the open interval
    let (lo, hi) = feasible_reflectivity_interval();
    let feasible = (r - lo) * (hi - r) > 0.0;
    let numerator = match pair {
        PairKind::SL => u,
        PairKind::ST => 2.0 * u,
        other => return Err(Error::UnsupportedPair(other)),
    };
    if !feasible || margin <= 0.0 {
        return Ok(None);
    }
    Ok(Some(numerator / margin))
}

/// Visibility at the threshold ratio; `0.5` up to roundoff when it exists.
pub fn visibility_at_threshold(pair: PairKind, bs: BeamSplitter) -> Result<Option<f64>> {
    threshold_min_ratio(pair, bs)?
        .map(|x| visibility_analytic(pair, x, bs))
        .transpose()
}
