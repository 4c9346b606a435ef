//! Exact finite-sample null distributions of the rank statistics.
//!
//! Under any continuous F = G every assignment of pooled ranks to the first
//! sample is equally likely, so the null law of a rank statistic follows by
//! enumerating all C(N, m) arrangements. Probabilities are exact rationals
//! with denominator C(N, m); the Monte Carlo engine is validated against
//! these tables.

use crate::montecarlo::StatisticKind;
use crate::stats::{PooledArrangement, StatError};
use num_rational::Ratio;
use rayon::prelude::*;
use thiserror::Error;

/// Enumeration budget: C(16, 8) = 12870 arrangements.
pub const MAX_POOLED: usize = 16;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("pooled size {0} exceeds the enumeration budget of {MAX_POOLED}")]
    BudgetExceeded(usize),
    #[error(transparent)]
    Stat(#[from] StatError),
}

/// Exact null law as a sorted atom table.
#[derive(Debug, Clone)]
pub struct ExactNullDistribution {
    pub statistic: StatisticKind,
    pub m: usize,
    pub n: usize,
    /// Ascending distinct values with their arrangement counts.
    atoms: Vec<(f64, u64)>,
    /// C(N, m), the common denominator.
    total: u64,
}

/// Merge tolerance for equal atoms produced by different arrangements.
const ATOM_MERGE_EPS: f64 = 1e-12;

impl ExactNullDistribution {
    pub fn atoms(&self) -> &[(f64, u64)] {
        &self.atoms
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// P(statistic = value of atom i) as an exact rational.
    pub fn prob(&self, i: usize) -> Ratio<u64> {
        Ratio::new(self.atoms[i].1, self.total)
    }

    /// P(statistic > w) as an exact rational.
    pub fn tail(&self, w: f64) -> Ratio<u64> {
        let count: u64 = self
            .atoms
            .iter()
            .filter(|&&(v, _)| v > w)
            .map(|&(_, c)| c)
            .sum();
        Ratio::new(count, self.total)
    }

    /// Exact CDF P(statistic <= w).
    pub fn cdf(&self, w: f64) -> Ratio<u64> {
        Ratio::new(self.total, self.total) - self.tail(w)
    }
}

/// Exact tail helper mirroring [`ExactNullDistribution::tail`].
pub fn exact_tail(dist: &ExactNullDistribution, w: f64) -> Ratio<u64> {
    dist.tail(w)
}

/// Enumerates every m-subset of pooled positions as the first-sample rank
/// set and aggregates the statistic's exact null distribution.
pub fn exact_null(
    statistic: StatisticKind,
    m: usize,
    n: usize,
) -> Result<ExactNullDistribution, OracleError> {
    let n_total = m + n;
    if n_total > MAX_POOLED {
        return Err(OracleError::BudgetExceeded(n_total));
    }
    // validate the scheme once up front
    statistic.validate(n_total)?;

    let combos = combinations(n_total, m);
    let total = combos.len() as u64;
    let mut values: Vec<f64> = combos
        .par_iter()
        .map(|subset| {
            let mut is_x = vec![false; n_total];
            for &pos in subset {
                is_x[pos] = true;
            }
            let arr = PooledArrangement::new(is_x, m, n).expect("nonempty by construction");
            statistic
                .evaluate_arrangement(&arr)
                .expect("scheme validated above")
        })
        .collect();
    values.sort_unstable_by(f64::total_cmp);

    let mut atoms: Vec<(f64, u64)> = Vec::new();
    for v in values {
        match atoms.last_mut() {
            Some((last, count)) if (v - *last).abs() <= ATOM_MERGE_EPS => *count += 1,
            _ => atoms.push((v, 1)),
        }
    }
    Ok(ExactNullDistribution { statistic, m, n, atoms, total })
}

/// All m-subsets of {0, .., n_total-1} in lexicographic order.
fn combinations(n_total: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..m).collect();
    loop {
        out.push(idx.clone());
        // advance
        let mut i = m;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n_total - m {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..m {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
