//! Continuous distribution families for the simulation alternatives.
//!
//! Every family exposes a closed-form CDF, a quantile (closed form where
//! available, bisection on the CDF otherwise) and inverse-CDF sampling, so
//! each draw consumes exactly one uniform variate. That keeps replicate
//! streams reproducible and counter-indexable regardless of family.

use crate::math::{norm_cdf, norm_quantile};
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Tolerance for quantile bisection, measured in u-space.
const INV_TOL: f64 = 1e-12;
const INV_MAX_STEPS: usize = 200;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DistError {
    #[error("invalid parameter for {family}: {reason}")]
    InvalidParameter { family: &'static str, reason: String },
    #[error("quantile argument {0} outside (0,1)")]
    QuantileDomain(f64),
    #[error("pair is not in the alternative: G1(z) <= F1(z) on the probe grid")]
    NotInAlternative,
    #[error("eta {0} outside (0,1)")]
    InvalidEta(f64),
    #[error("theta {theta} outside (0,1) at N = {n}")]
    InvalidTheta { theta: f64, n: usize },
}

/// A continuous distribution with closed-form CDF.
///
/// Mixtures nest, so two-level contamination models are ordinary values of
/// this type. All variants are immutable and freely shareable across threads.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum ContinuousDistribution {
    Uniform01,
    /// Density 1 + a sin(10 pi x) on (0.4, 0.6), uniform elsewhere on [0,1].
    Mu { a: f64 },
    /// Singh-Maddala: F(x) = 1 - [1 + (x/b)^a]^(-c) for x > 0.
    #[serde(rename = "singhmaddala")]
    SinghMaddala { a: f64, b: f64, c: f64 },
    /// Pareto(a) = SinghMaddala(a, 1, 1).
    Pareto { a: f64 },
    /// log X ~ Normal(a, b).
    #[serde(rename = "lognormal")]
    LogNormal { a: f64, b: f64 },
    Normal { a: f64, b: f64 },
    /// Chi-square with one degree of freedom.
    #[serde(rename = "chisquare1")]
    ChiSquareOne,
    /// Density exp(-|x-a|/b) / (2b).
    Laplace { a: f64, b: f64 },
    Mixture {
        beta: f64,
        first: Box<ContinuousDistribution>,
        second: Box<ContinuousDistribution>,
    },
}

impl ContinuousDistribution {
    /// Validates parameters; every constructor error happens here, never at
    /// evaluation time.
    pub fn validate(&self) -> Result<(), DistError> {
        use ContinuousDistribution::*;
        let bad = |family, reason: String| Err(DistError::InvalidParameter { family, reason });
        match self {
            Uniform01 | ChiSquareOne => Ok(()),
            Mu { a } => {
                if !a.is_finite() || a.abs() > 1.0 {
                    return bad("mu", format!("need a in [-1,1], got {a}"));
                }
                Ok(())
            }
            SinghMaddala { a, b, c } => {
                if ![a, b, c].iter().all(|v| v.is_finite() && **v >= 1.0) {
                    return bad("singhmaddala", format!("need a,b,c >= 1, got ({a},{b},{c})"));
                }
                Ok(())
            }
            Pareto { a } => {
                if !a.is_finite() || *a < 1.0 {
                    return bad("pareto", format!("need a >= 1, got {a}"));
                }
                Ok(())
            }
            LogNormal { a, b } | Normal { a, b } | Laplace { a, b } => {
                if !a.is_finite() || !b.is_finite() || *b <= 0.0 {
                    return bad("location-scale", format!("need finite a and b > 0, got ({a},{b})"));
                }
                Ok(())
            }
            Mixture { beta, first, second } => {
                if !beta.is_finite() || *beta <= 0.0 || *beta >= 1.0 {
                    return bad("mixture", format!("need beta in (0,1), got {beta}"));
                }
                first.validate()?;
                second.validate()
            }
        }
    }

    /// Convenience constructor that validates.
    pub fn new(spec: ContinuousDistribution) -> Result<Self, DistError> {
        spec.validate()?;
        Ok(spec)
    }

    /// F(z), closed form for every family.
    pub fn cdf(&self, z: f64) -> f64 {
        use ContinuousDistribution::*;
        match self {
            Uniform01 => z.clamp(0.0, 1.0),
            Mu { a } => {
                if z <= 0.0 {
                    0.0
                } else if z >= 1.0 {
                    1.0
                } else {
                    let base = z;
                    // antiderivative of a sin(10 pi t) from 0.4 to z on (0.4, 0.6):
                    // a (1 - cos(10 pi z)) / (10 pi); zero mass outside.
                    let pert = if z > 0.4 && z < 0.6 {
                        a * (1.0 - (10.0 * std::f64::consts::PI * z).cos())
                            / (10.0 * std::f64::consts::PI)
                    } else {
                        0.0
                    };
                    base + pert
                }
            }
            SinghMaddala { a, b, c } => {
                if z <= 0.0 {
                    0.0
                } else {
                    1.0 - (1.0 + (z / b).powf(*a)).powf(-c)
                }
            }
            Pareto { a } => {
                if z <= 0.0 {
                    0.0
                } else {
                    1.0 - 1.0 / (1.0 + z.powf(*a))
                }
            }
            LogNormal { a, b } => {
                if z <= 0.0 {
                    0.0
                } else {
                    norm_cdf((z.ln() - a) / b)
                }
            }
            Normal { a, b } => norm_cdf((z - a) / b),
            ChiSquareOne => {
                if z <= 0.0 {
                    0.0
                } else {
                    2.0 * norm_cdf(z.sqrt()) - 1.0
                }
            }
            Laplace { a, b } => {
                if z < *a {
                    0.5 * ((z - a) / b).exp()
                } else {
                    1.0 - 0.5 * (-(z - a) / b).exp()
                }
            }
            Mixture { beta, first, second } => {
                beta * first.cdf(z) + (1.0 - beta) * second.cdf(z)
            }
        }
    }

    /// inf{z : F(z) >= u} for u in (0,1).
    pub fn quantile(&self, u: f64) -> Result<f64, DistError> {
        if !(u > 0.0 && u < 1.0) {
            return Err(DistError::QuantileDomain(u));
        }
        Ok(self.quantile_unchecked(u))
    }

    fn quantile_unchecked(&self, u: f64) -> f64 {
        use ContinuousDistribution::*;
        match self {
            Uniform01 => u,
            SinghMaddala { a, b, c } => b * ((1.0 - u).powf(-1.0 / c) - 1.0).powf(1.0 / a),
            Pareto { a } => ((1.0 - u).recip() - 1.0).powf(1.0 / a),
            LogNormal { a, b } => (a + b * norm_quantile(u)).exp(),
            Normal { a, b } => a + b * norm_quantile(u),
            ChiSquareOne => {
                let q = norm_quantile(0.5 * (1.0 + u));
                q * q
            }
            Laplace { a, b } => {
                if u < 0.5 {
                    a + b * (2.0 * u).ln()
                } else {
                    a - b * (2.0 * (1.0 - u)).ln()
                }
            }
            Mu { .. } => bisect_quantile(self, u, 0.0, 1.0),
            Mixture { first, second, .. } => {
                let q1 = first.quantile_unchecked(u);
                let q2 = second.quantile_unchecked(u);
                let (lo, hi) = if q1 <= q2 { (q1, q2) } else { (q2, q1) };
                if hi - lo <= f64::EPSILON * lo.abs().max(1.0) {
                    lo
                } else {
                    bisect_quantile(self, u, lo, hi)
                }
            }
        }
    }

    /// Independent draws by the inverse-CDF method, one uniform per draw.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R, count: usize) -> Vec<f64> {
        (0..count)
            .map(|_| self.quantile_unchecked(open_unit(rng)))
            .collect()
    }

    /// One draw; exposed for callers that interleave streams.
    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        self.quantile_unchecked(open_unit(rng))
    }
}

/// Uniform draw from the open interval (0,1).
fn open_unit<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    loop {
        let u: f64 = rng.gen();
        if u > 0.0 && u < 1.0 {
            return u;
        }
    }
}

/// Bisection for inf{z : F(z) >= u} on a bracket known to straddle u.
/// The bracket is grown geometrically first in case the callers' guess
/// does not straddle (mixtures of disjoint supports never need it, but a
/// degenerate bracket costs one check only).
fn bisect_quantile(dist: &ContinuousDistribution, u: f64, mut lo: f64, mut hi: f64) -> f64 {
    let mut step = (hi - lo).max(1.0);
    while dist.cdf(lo) >= u {
        lo -= step;
        step *= 2.0;
        if step > 1e300 {
            break;
        }
    }
    step = (hi - lo).max(1.0);
    while dist.cdf(hi) < u {
        hi += step;
        step *= 2.0;
        if step > 1e300 {
            break;
        }
    }
    for _ in 0..INV_MAX_STEPS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f = dist.cdf(mid);
        if (f - u).abs() <= INV_TOL && (hi - lo) <= 1e-9 * (1.0 + mid.abs()) {
            return mid;
        }
        if f < u {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}

/// A pair (F1, G1) from the alternative hypothesis together with the
/// limiting sample-size fraction eta; the pooled mixture is
/// J1 = eta F1 + (1-eta) G1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlternativePair {
    pub f1: ContinuousDistribution,
    pub g1: ContinuousDistribution,
    pub eta: f64,
}

impl AlternativePair {
    /// Validates eta, the member distributions, and membership in the
    /// alternative: G1 must exceed F1 somewhere, probed on a dense grid of
    /// pooled quantile locations.
    pub fn new(
        f1: ContinuousDistribution,
        g1: ContinuousDistribution,
        eta: f64,
    ) -> Result<Self, DistError> {
        f1.validate()?;
        g1.validate()?;
        if !(eta > 0.0 && eta < 1.0) {
            return Err(DistError::InvalidEta(eta));
        }
        let pair = AlternativePair { f1, g1, eta };
        if !pair.probe_alternative() {
            return Err(DistError::NotInAlternative);
        }
        Ok(pair)
    }

    /// Same as [`AlternativePair::new`] but without the H1 probe; used for
    /// degenerate pairs in diagnostics where G1 - F1 may vanish identically.
    pub fn new_unchecked(
        f1: ContinuousDistribution,
        g1: ContinuousDistribution,
        eta: f64,
    ) -> Result<Self, DistError> {
        f1.validate()?;
        g1.validate()?;
        if !(eta > 0.0 && eta < 1.0) {
            return Err(DistError::InvalidEta(eta));
        }
        Ok(AlternativePair { f1, g1, eta })
    }

    fn probe_alternative(&self) -> bool {
        // probe at quantiles of both components so far tails are covered
        const GRID: usize = 2000;
        for i in 0..GRID {
            let u = (i as f64 + 0.5) / GRID as f64;
            for d in [&self.f1, &self.g1] {
                let z = d.quantile_unchecked(u);
                if self.g1.cdf(z) > self.f1.cdf(z) {
                    return true;
                }
            }
        }
        false
    }

    /// J1(z) = eta F1(z) + (1-eta) G1(z).
    pub fn pooled_mixture_cdf(&self, z: f64) -> f64 {
        self.eta * self.f1.cdf(z) + (1.0 - self.eta) * self.g1.cdf(z)
    }

    /// The pooled mixture J1 as a distribution of its own.
    pub fn pooled(&self) -> ContinuousDistribution {
        ContinuousDistribution::Mixture {
            beta: self.eta,
            first: Box::new(self.f1.clone()),
            second: Box::new(self.g1.clone()),
        }
    }
}

/// Rule for the contamination weight theta as a function of the pooled
/// sample size N.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "lowercase")]
pub enum ThetaRule {
    /// theta_N = N^(-q), 0 < q < 1/2.
    PowerLaw { q: f64 },
    /// theta_N = theta for every N.
    Fixed { theta: f64 },
}

/// The contamination path: mixes the null configuration (F0, F0) with a
/// fixed alternative (F1, G1) at weight theta_N, where F0 = J1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContaminationPath {
    pub base: AlternativePair,
    pub theta: ThetaRule,
}

impl ContaminationPath {
    pub fn new(base: AlternativePair, theta: ThetaRule) -> Result<Self, DistError> {
        match theta {
            ThetaRule::PowerLaw { q } => {
                if !(q > 0.0 && q < 0.5) {
                    return Err(DistError::InvalidParameter {
                        family: "contamination",
                        reason: format!("need 0 < q < 1/2, got {q}"),
                    });
                }
            }
            ThetaRule::Fixed { theta } => {
                if !(theta > 0.0 && theta < 1.0) {
                    return Err(DistError::InvalidTheta { theta, n: 0 });
                }
            }
        }
        Ok(ContaminationPath { base, theta })
    }

    /// theta_N for a given pooled size.
    pub fn theta_at(&self, n: usize) -> Result<f64, DistError> {
        let theta = match self.theta {
            ThetaRule::PowerLaw { q } => (n as f64).powf(-q),
            ThetaRule::Fixed { theta } => theta,
        };
        if theta > 0.0 && theta < 1.0 {
            Ok(theta)
        } else {
            Err(DistError::InvalidTheta { theta, n })
        }
    }

    /// The contaminated pair (F_1N, G_1N) = (1-theta_N)(F0, F0) + theta_N (F1, G1),
    /// realized as nested mixtures so sampling is two-level inverse-CDF.
    pub fn contaminated_pair(
        &self,
        n: usize,
    ) -> Result<(ContinuousDistribution, ContinuousDistribution), DistError> {
        let theta = self.theta_at(n)?;
        let f0 = self.base.pooled();
        let mix = |tail: &ContinuousDistribution| ContinuousDistribution::Mixture {
            beta: 1.0 - theta,
            first: Box::new(f0.clone()),
            second: Box::new(tail.clone()),
        };
        Ok((mix(&self.base.f1), mix(&self.base.g1)))
    }
}
