//! One-sided two-sample testing for stochastic dominance.
//!
//! The null hypothesis is that the first sample is stochastically smaller
//! than the second, `F(z) >= G(z)` for all `z`. The crate provides:
//!
//! * the classical one-sided Kolmogorov-Smirnov statistic `V`,
//! * grids of weighted linear rank statistics and their maxima `T` and `W`
//!   (Anderson-Darling-type weights over a partition of `(0,1)`),
//! * the analytic intermediate efficiency of `T` relative to `V` for a
//!   fixed pair of alternatives,
//! * an exact small-sample null-distribution oracle by rank enumeration,
//! * a reproducible, parallel Monte Carlo engine for critical values,
//!   power curves, sample-size ratios and moderate-deviation slopes.
//!
//! All test statistics are rank statistics, hence distribution free under
//! any continuous `F = G`; one critical-value table per `(statistic, m, n)`
//! serves every continuous null model.

pub mod config;
pub mod dist;
pub mod efficiency;
pub mod experiment;
pub mod math;
pub mod montecarlo;
pub mod oracle;
pub mod plot;
pub mod report;
pub mod stats;

pub use dist::{AlternativePair, ContaminationPath, ContinuousDistribution, DistError, ThetaRule};
pub use efficiency::{EfficiencyReport, EfficiencyError};
pub use montecarlo::{
    CriticalValueTable, DataModel, PowerEstimate, SimError, SimulationPlan, StatisticKind,
};
pub use oracle::{ExactNullDistribution, OracleError};
pub use stats::{PartitionScheme, PooledArrangement, RankVector, StatError, TwoSample};

/// Version string embedded into every CSV artifact for provenance.
pub const BUILD_VERSION: &str = env!("SDTEST_BUILD_VERSION");
