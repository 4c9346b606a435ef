//! Deviation functions of an alternative pair and the intermediate
//! efficiency of the weighted maximum statistic relative to the one-sided
//! Kolmogorov-Smirnov statistic.
//!
//! For a pair (F1, G1) with pooled mixture J1 = eta F1 + (1-eta) G1, the
//! deviation function is Abar(t) = (G1 - F1)(J1^{-1}(t)) and its weighted
//! version is Astar(t) = Abar(t) / sqrt(t(1-t)). The efficiency is
//!
//!   e(eta) = (sup_t Astar / (2 sup_t Abar))^2  >=  1,
//!
//! with equality exactly when Astar peaks at t = 1/2.

use crate::dist::{AlternativePair, ContaminationPath, DistError};
use crate::stats::{PartitionScheme, StatError};
use thiserror::Error;

/// Lower edge of the supremum search grid.
const T_EDGE: f64 = 1e-6;
/// Number of coarse grid points.
const T_GRID: usize = 10_000;
/// Relative tolerance of the golden-section refinement.
const REFINE_REL_TOL: f64 = 1e-9;
/// Bisection tolerance for J1^{-1}, measured in t-space.
const J_INV_TOL: f64 = 1e-12;
/// Pairs with sup Abar below this are not detectably in the alternative.
const H1_FLOOR: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EfficiencyError {
    #[error("t = {0} outside (0,1)")]
    Domain(f64),
    #[error("pair not detectably in the alternative: sup (G1-F1) = {0:e}")]
    NotInAlternative(f64),
    #[error(transparent)]
    Dist(#[from] DistError),
    #[error(transparent)]
    Stat(#[from] StatError),
}

/// Suprema, argmax and efficiency value for one pair at its eta.
#[derive(Debug, Clone, PartialEq)]
pub struct EfficiencyReport {
    pub eta: f64,
    pub sup_abar: f64,
    pub sup_astar: f64,
    pub argmax_astar: f64,
    pub e_tv: f64,
}

/// z solving J1(z) = t, by bisection on the closed-form mixture CDF.
/// The componentwise quantiles bracket the root exactly.
fn j1_inverse(pair: &AlternativePair, t: f64) -> f64 {
    let qf = pair.f1.quantile(t).expect("t checked in (0,1)");
    let qg = pair.g1.quantile(t).expect("t checked in (0,1)");
    let (mut lo, mut hi) = if qf <= qg { (qf, qg) } else { (qg, qf) };
    if hi - lo <= f64::EPSILON * hi.abs().max(1.0) {
        return lo;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let j = pair.pooled_mixture_cdf(mid);
        if (j - t).abs() <= J_INV_TOL && (hi - lo) <= 1e-9 * (1.0 + mid.abs()) {
            return mid;
        }
        if j < t {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Abar(t) = (G1 - F1)(J1^{-1}(t)).
pub fn abar(pair: &AlternativePair, t: f64) -> Result<f64, EfficiencyError> {
    if !(t > 0.0 && t < 1.0) {
        return Err(EfficiencyError::Domain(t));
    }
    let z = j1_inverse(pair, t);
    Ok(pair.g1.cdf(z) - pair.f1.cdf(z))
}

/// Astar(t) = Abar(t) / sqrt(t(1-t)).
pub fn astar(pair: &AlternativePair, t: f64) -> Result<f64, EfficiencyError> {
    Ok(abar(pair, t)? / (t * (1.0 - t)).sqrt())
}

/// Golden-section maximization on [lo, hi]; deterministic, returns the
/// located argmax and value.
fn golden_max(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = hi - INV_PHI * (hi - lo);
    let mut d = lo + INV_PHI * (hi - lo);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..200 {
        if hi - lo <= REFINE_REL_TOL * (lo.abs().max(hi.abs()).max(1e-300)) {
            break;
        }
        if fc >= fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - INV_PHI * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + INV_PHI * (hi - lo);
            fd = f(d);
        }
    }
    let mid = 0.5 * (lo + hi);
    (mid, f(mid))
}

/// Coarse scan over the standard grid followed by golden-section
/// refinement around the best cell; ties on the scan resolve to the
/// smallest t.
fn maximize_on_grid(f: impl Fn(f64) -> f64 + Copy) -> (f64, f64) {
    let step = (1.0 - 2.0 * T_EDGE) / (T_GRID - 1) as f64;
    let mut best_i = 0usize;
    let mut best_v = f64::NEG_INFINITY;
    for i in 0..T_GRID {
        let t = T_EDGE + i as f64 * step;
        let v = f(t);
        if v > best_v {
            best_v = v;
            best_i = i;
        }
    }
    let lo = T_EDGE + best_i.saturating_sub(1) as f64 * step;
    let hi = T_EDGE + ((best_i + 1).min(T_GRID - 1)) as f64 * step;
    let (arg, val) = golden_max(lo, hi, f);
    if val >= best_v {
        (arg, val)
    } else {
        (T_EDGE + best_i as f64 * step, best_v)
    }
}

/// Full efficiency report for a pair: both suprema located numerically,
/// the argmax of Astar, and e(eta).
pub fn efficiency_tv(pair: &AlternativePair) -> Result<EfficiencyReport, EfficiencyError> {
    let abar_at = |t: f64| {
        let z = j1_inverse(pair, t);
        pair.g1.cdf(z) - pair.f1.cdf(z)
    };
    let astar_at = |t: f64| abar_at(t) / (t * (1.0 - t)).sqrt();

    let (_, sup_abar) = maximize_on_grid(abar_at);
    if sup_abar < H1_FLOOR {
        return Err(EfficiencyError::NotInAlternative(sup_abar));
    }
    let (argmax_astar, sup_astar) = maximize_on_grid(astar_at);
    let ratio = sup_astar / (2.0 * sup_abar);
    Ok(EfficiencyReport {
        eta: pair.eta,
        sup_abar,
        sup_astar,
        argmax_astar,
        e_tv: ratio * ratio,
    })
}

/// Centering scale of the Kolmogorov-Smirnov statistic along a
/// contamination path: sqrt(mn/N) theta_N sup Abar, with m = floor(eta N).
pub fn centering_v(path: &ContaminationPath, n_total: usize) -> Result<f64, EfficiencyError> {
    let theta = path.theta_at(n_total)?;
    let report = efficiency_tv(&path.base)?;
    let m = (path.base.eta * n_total as f64).floor();
    let n = n_total as f64 - m;
    Ok((m * n / n_total as f64).sqrt() * theta * report.sup_abar)
}

/// Centering scale of the weighted maximum statistic along a contamination
/// path: theta_N sqrt(mn/N) max_j Abar(pi_j) / sqrt(pi_j (1 - pi_j)).
pub fn centering_t(
    path: &ContaminationPath,
    n_total: usize,
    scheme: &PartitionScheme,
) -> Result<f64, EfficiencyError> {
    let theta = path.theta_at(n_total)?;
    let grid = scheme.grid(n_total)?;
    let mut best = f64::NEG_INFINITY;
    for &pi in &grid {
        let v = astar(&path.base, pi)?;
        if v > best {
            best = v;
        }
    }
    let m = (path.base.eta * n_total as f64).floor();
    let n = n_total as f64 - m;
    Ok(theta * (m * n / n_total as f64).sqrt() * best)
}
