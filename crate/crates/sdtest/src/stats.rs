//! Two-sample rank statistics: the one-sided Kolmogorov-Smirnov statistic,
//! grids of weighted linear rank statistics, their maxima, and the explicit
//! closeness bound between the two weighted forms.
//!
//! Everything is computed from one sort of the pooled sample (O(N log N))
//! plus O(1) work per grid point, since the Monte Carlo engine calls these
//! in its inner loop.

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StatError {
    #[error("sample must be nonempty")]
    EmptySample,
    #[error("tied value {0} in the pooled sample; rank statistics need distinct values")]
    TiedValues(f64),
    #[error("non-finite value {0} in a sample")]
    NonFinite(f64),
    #[error("partition point {0} outside (0,1)")]
    PartitionDomain(f64),
    #[error("partition grid must be strictly increasing inside (0,1)")]
    PartitionNotIncreasing,
    #[error("scheme produces an empty grid at N = {0}")]
    EmptyGrid(usize),
    #[error("power-law exponent {0} outside (0,1]")]
    BadExponent(f64),
}

/// Two samples in arrival order; `x` has m observations, `y` has n.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoSample {
    x: Vec<f64>,
    y: Vec<f64>,
}

impl TwoSample {
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Result<Self, StatError> {
        if x.is_empty() || y.is_empty() {
            return Err(StatError::EmptySample);
        }
        if let Some(&bad) = x.iter().chain(y.iter()).find(|v| !v.is_finite()) {
            return Err(StatError::NonFinite(bad));
        }
        Ok(TwoSample { x, y })
    }

    pub fn m(&self) -> usize {
        self.x.len()
    }

    pub fn n(&self) -> usize {
        self.y.len()
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn y(&self) -> &[f64] {
        &self.y
    }
}

/// Pooled-sample ranks; the first m entries are the ranks of the x's.
#[derive(Debug, Clone, PartialEq)]
pub struct RankVector {
    ranks: Vec<u32>,
    m: usize,
    n: usize,
}

impl RankVector {
    pub fn ranks(&self) -> &[u32] {
        &self.ranks
    }

    /// Positional form: entry t-1 tells whether the t-th smallest pooled
    /// observation came from the first sample.
    pub fn arrangement(&self) -> PooledArrangement {
        let n_total = self.m + self.n;
        let mut is_x = vec![false; n_total];
        for &r in &self.ranks[..self.m] {
            is_x[(r - 1) as usize] = true;
        }
        PooledArrangement { is_x, m: self.m, n: self.n }
    }
}

/// Which of the pooled order statistics belong to the first sample.
///
/// All rank statistics are functions of this arrangement alone, which is
/// what the exact enumeration oracle iterates over.
#[derive(Debug, Clone, PartialEq)]
pub struct PooledArrangement {
    is_x: Vec<bool>,
    m: usize,
    n: usize,
}

impl PooledArrangement {
    pub fn new(is_x: Vec<bool>, m: usize, n: usize) -> Result<Self, StatError> {
        if m == 0 || n == 0 || is_x.len() != m + n {
            return Err(StatError::EmptySample);
        }
        debug_assert_eq!(is_x.iter().filter(|&&b| b).count(), m);
        Ok(PooledArrangement { is_x, m, n })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.m + self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_x(&self) -> &[bool] {
        &self.is_x
    }
}

/// Pooled ranks with ties rejected.
pub fn ranks(sample: &TwoSample) -> Result<RankVector, StatError> {
    rank_impl(sample, None::<&mut rand::rngs::ThreadRng>)
}

/// Pooled ranks with ties broken in uniformly random relative order.
pub fn ranks_random_ties<R: Rng>(sample: &TwoSample, rng: &mut R) -> RankVector {
    rank_impl(sample, Some(rng)).expect("random tie-break cannot fail")
}

fn rank_impl<R: Rng>(
    sample: &TwoSample,
    mut rng: Option<&mut R>,
) -> Result<RankVector, StatError> {
    let m = sample.m();
    let n = sample.n();
    let total = m + n;
    // (value, original index); exact value comparison, no epsilon
    let mut order: Vec<(f64, u32)> = sample
        .x
        .iter()
        .chain(sample.y.iter())
        .copied()
        .zip(0..total as u32)
        .collect();
    order.sort_unstable_by(|a, b| a.0.total_cmp(&b.0));
    // tie handling: permute each run of equal values
    let mut i = 0;
    while i < total {
        let mut j = i + 1;
        while j < total && order[j].0 == order[i].0 {
            j += 1;
        }
        if j - i > 1 {
            match rng.as_deref_mut() {
                None => return Err(StatError::TiedValues(order[i].0)),
                Some(r) => {
                    // Fisher-Yates within the tied run
                    for k in (i + 1..j).rev() {
                        let swap = i + r.gen_range(0..=k - i);
                        order.swap(k, swap);
                    }
                }
            }
        }
        i = j;
    }
    let mut ranks = vec![0u32; total];
    for (pos, &(_, idx)) in order.iter().enumerate() {
        ranks[idx as usize] = pos as u32 + 1;
    }
    Ok(RankVector { ranks, m, n })
}

/// Partition of (0,1) defining which linear rank statistics enter the max.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum PartitionScheme {
    /// Delta(N) = 2^floor(log2 N) - 1, pi_j = j/(Delta+1).
    #[serde(rename = "dyadicstar")]
    DyadicStar,
    /// pi_j = j/(N+1) for 1+floor(sqrt N) <= j <= N - floor(sqrt N).
    #[serde(rename = "denseo")]
    DenseO,
    /// Delta(N) = floor(N^p), pi_j = j/(Delta+1).
    #[serde(rename = "powerlaw")]
    PowerLaw { p: f64 },
    /// Arbitrary strictly increasing grid inside (0,1).
    Explicit { points: Vec<f64> },
}

impl PartitionScheme {
    /// The grid pi_1 < ... < pi_Delta for pooled size N.
    pub fn grid(&self, n_total: usize) -> Result<Vec<f64>, StatError> {
        match self {
            PartitionScheme::DyadicStar => {
                if n_total < 2 {
                    return Err(StatError::EmptyGrid(n_total));
                }
                let delta = (1usize << (n_total as f64).log2().floor() as u32) - 1;
                let denom = (delta + 1) as f64;
                Ok((1..=delta).map(|j| j as f64 / denom).collect())
            }
            PartitionScheme::DenseO => {
                let root = (n_total as f64).sqrt().floor() as usize;
                let lo = 1 + root;
                let hi = n_total.saturating_sub(root);
                if lo > hi {
                    return Err(StatError::EmptyGrid(n_total));
                }
                let denom = (n_total + 1) as f64;
                Ok((lo..=hi).map(|j| j as f64 / denom).collect())
            }
            PartitionScheme::PowerLaw { p } => {
                if !(*p > 0.0 && *p <= 1.0) {
                    return Err(StatError::BadExponent(*p));
                }
                let delta = (n_total as f64).powf(*p).floor() as usize;
                if delta < 1 {
                    return Err(StatError::EmptyGrid(n_total));
                }
                let denom = (delta + 1) as f64;
                Ok((1..=delta).map(|j| j as f64 / denom).collect())
            }
            PartitionScheme::Explicit { points } => {
                if points.is_empty() {
                    return Err(StatError::EmptyGrid(n_total));
                }
                let mut prev = 0.0;
                for &p in points {
                    if !(p > 0.0 && p < 1.0) {
                        return Err(StatError::PartitionDomain(p));
                    }
                    if p <= prev {
                        return Err(StatError::PartitionNotIncreasing);
                    }
                    prev = p;
                }
                Ok(points.clone())
            }
        }
    }
}

/// The two-valued score function: -sqrt((1-pi)/pi) below pi and
/// sqrt(pi/(1-pi)) from pi on.
pub fn score_ell(pi: f64, t: f64) -> Result<f64, StatError> {
    if !(pi > 0.0 && pi < 1.0) {
        return Err(StatError::PartitionDomain(pi));
    }
    debug_assert!((0.0..=1.0).contains(&t));
    if t < pi {
        Ok(-((1.0 - pi) / pi).sqrt())
    } else {
        Ok((pi / (1.0 - pi)).sqrt())
    }
}

/// Number of pooled ranks r in 1..=N with (r - 0.5)/N < pi; equals the
/// ceiling form where an integer argument maps to itself. A candidate from
/// floating arithmetic is fixed up against the exact predicate so the sum
/// and counting forms of the linear rank statistic agree bit for bit.
fn cut_count(n_total: usize, pi: f64) -> usize {
    let t = n_total as f64 * pi;
    let below = |r: usize| (r as f64) - 0.5 < t;
    let mut k = (t + 0.5).floor() as i64;
    k = k.clamp(0, n_total as i64);
    let mut k = k as usize;
    while k > 0 && !below(k) {
        k -= 1;
    }
    while k < n_total && below(k + 1) {
        k += 1;
    }
    k
}

/// Smallest integer >= N t, clamped to [1, N]; integers map to themselves.
fn order_index(n_total: usize, t: f64) -> usize {
    let v = n_total as f64 * t;
    let mut k = v.ceil() as i64;
    if k as f64 - 1.0 >= v {
        k -= 1;
    }
    k.clamp(1, n_total as i64) as usize
}

/// Prefix counts of first-sample membership over the pooled order.
fn x_prefix_counts(arr: &PooledArrangement) -> Vec<u32> {
    let mut counts = Vec::with_capacity(arr.len() + 1);
    counts.push(0u32);
    let mut acc = 0u32;
    for &b in &arr.is_x {
        acc += b as u32;
        counts.push(acc);
    }
    counts
}

/// One-sided Kolmogorov-Smirnov statistic
/// V = sqrt(mn/N) sup_z (Ghat_n(z) - Fhat_m(z)),
/// evaluated by a single pass over the pooled order statistics.
pub fn ks_one_sided(sample: &TwoSample) -> Result<f64, StatError> {
    Ok(ks_from_arrangement(&ranks(sample)?.arrangement()))
}

pub fn ks_from_arrangement(arr: &PooledArrangement) -> f64 {
    let (m, n) = (arr.m as f64, arr.n as f64);
    let mut cx = 0u32;
    let mut best = f64::NEG_INFINITY;
    for (t, &b) in arr.is_x.iter().enumerate() {
        cx += b as u32;
        let diff = ((t + 1) as f64 - cx as f64) / n - cx as f64 / m;
        if diff > best {
            best = diff;
        }
    }
    (m * n / (m + n)).sqrt() * best
}

/// The j-th linear rank statistic over a scheme grid, sum form replaced by
/// the equivalent counting form (one prefix lookup per grid point).
pub fn linear_rank_stat(
    sample: &TwoSample,
    scheme: &PartitionScheme,
    j: usize,
) -> Result<f64, StatError> {
    let arr = ranks(sample)?.arrangement();
    let grid = scheme.grid(arr.len())?;
    let pi = *grid.get(j).ok_or(StatError::EmptyGrid(arr.len()))?;
    let counts = x_prefix_counts(&arr);
    Ok(linear_at(&arr, &counts, pi))
}

fn linear_at(arr: &PooledArrangement, counts: &[u32], pi: f64) -> f64 {
    let n_total = arr.len();
    let (m, n) = (arr.m as f64, arr.n as f64);
    let k = cut_count(n_total, pi);
    let sx = counts[k] as f64;
    let scale = (m * n / (m + n)).sqrt() / (pi * (1.0 - pi)).sqrt();
    scale * ((n_total as f64) / (m * n) * sx - k as f64 / n)
}

/// Literal sum-over-scores form of the linear rank statistic; quadratic in
/// the grid, kept as the cross-check route for the counting form.
pub fn linear_rank_stat_score_form(
    ranks: &RankVector,
    pi: f64,
) -> Result<f64, StatError> {
    let n_total = ranks.m + ranks.n;
    let (m, n) = (ranks.m as f64, ranks.n as f64);
    let root = (m * n / (m + n)).sqrt();
    let mut acc = 0.0;
    for (i, &r) in ranks.ranks.iter().enumerate() {
        let c = if i < ranks.m { -root / m } else { root / n };
        let t = (r as f64 - 0.5) / n_total as f64;
        acc += c * score_ell(pi, t)?;
    }
    Ok(acc)
}

/// T = max_j (-L_j) over the scheme grid.
pub fn t_stat(sample: &TwoSample, scheme: &PartitionScheme) -> Result<f64, StatError> {
    let arr = ranks(sample)?.arrangement();
    t_from_arrangement(&arr, scheme)
}

pub fn t_from_arrangement(
    arr: &PooledArrangement,
    scheme: &PartitionScheme,
) -> Result<f64, StatError> {
    let grid = scheme.grid(arr.len())?;
    let counts = x_prefix_counts(arr);
    Ok(grid
        .iter()
        .map(|&pi| -linear_at(arr, &counts, pi))
        .fold(f64::NEG_INFINITY, f64::max))
}

/// W = sqrt(mn/N) max_j (Ghat - Fhat)(Jhat^{-1}(pi_j)) / sqrt(pi_j (1 - pi_j)),
/// where Jhat^{-1}(t) is the ceil(Nt)-th pooled order statistic.
pub fn w_stat(sample: &TwoSample, scheme: &PartitionScheme) -> Result<f64, StatError> {
    let arr = ranks(sample)?.arrangement();
    w_from_arrangement(&arr, scheme)
}

pub fn w_from_arrangement(
    arr: &PooledArrangement,
    scheme: &PartitionScheme,
) -> Result<f64, StatError> {
    let grid = scheme.grid(arr.len())?;
    let n_total = arr.len();
    let (m, n) = (arr.m as f64, arr.n as f64);
    let counts = x_prefix_counts(arr);
    let root = (m * n / (m + n)).sqrt();
    Ok(grid
        .iter()
        .map(|&pi| {
            let r = order_index(n_total, pi);
            let cx = counts[r] as f64;
            let diff = (r as f64 - cx) / n - cx / m;
            root * diff / (pi * (1.0 - pi)).sqrt()
        })
        .fold(f64::NEG_INFINITY, f64::max))
}

/// Explicit bound on |T - W| for a scheme grid:
/// (1/sqrt N) max{sqrt((1-eta)/eta), sqrt(eta/(1-eta))}
///   * 2 / min{sqrt(pi_1(1-pi_1)), sqrt(pi_D(1-pi_D))}.
pub fn tw_bound(m: usize, n: usize, scheme: &PartitionScheme) -> Result<f64, StatError> {
    let n_total = m + n;
    let grid = scheme.grid(n_total)?;
    let eta = m as f64 / n_total as f64;
    let imbalance = ((1.0 - eta) / eta).sqrt().max((eta / (1.0 - eta)).sqrt());
    let first = grid[0];
    let last = *grid.last().unwrap();
    let edge = (first * (1.0 - first)).sqrt().min((last * (1.0 - last)).sqrt());
    Ok(imbalance / (n_total as f64).sqrt() * 2.0 / edge)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sample(x: &[f64], y: &[f64]) -> TwoSample {
        TwoSample::new(x.to_vec(), y.to_vec()).unwrap()
    }

    fn single_point(pi: f64) -> PartitionScheme {
        PartitionScheme::Explicit { points: vec![pi] }
    }

    #[test]
    fn ranks_basic() {
        let r = ranks(&sample(&[1.0, 3.0], &[2.0, 4.0])).unwrap();
        assert_eq!(r.ranks(), &[1, 3, 2, 4]);
        let r = ranks(&sample(&[10.0], &[-1.0])).unwrap();
        assert_eq!(r.ranks(), &[2, 1]);
    }

    #[test]
    fn ranks_tie_error_names_value() {
        let err = ranks(&sample(&[5.0, 5.0], &[1.0])).unwrap_err();
        assert_eq!(err, StatError::TiedValues(5.0));
    }

    #[test]
    fn ranks_random_tie_break_is_permutation() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let s = sample(&[1.0, 1.0, 1.0], &[1.0, 2.0]);
        for _ in 0..50 {
            let r = ranks_random_ties(&s, &mut rng);
            let mut sorted = r.ranks().to_vec();
            sorted.sort_unstable();
            assert_eq!(sorted, vec![1, 2, 3, 4, 5]);
            // value 2.0 is strictly largest, so its rank never moves
            assert_eq!(r.ranks()[4], 5);
        }
    }

    #[test]
    fn ks_hand_values() {
        // Ghat - Fhat never positive
        assert_abs_diff_eq!(
            ks_one_sided(&sample(&[0.2], &[0.7])).unwrap(),
            0.0,
            epsilon = 1e-15
        );
        // swap: sup = 1 at the lone y, scaled by sqrt(1/2)
        assert_abs_diff_eq!(
            ks_one_sided(&sample(&[0.7], &[0.2])).unwrap(),
            (0.5f64).sqrt(),
            epsilon = 1e-15
        );
        // Ghat - Fhat = 1 on [2,3)
        assert_abs_diff_eq!(
            ks_one_sided(&sample(&[3.0, 4.0], &[1.0, 2.0])).unwrap(),
            1.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn score_function_values() {
        assert_abs_diff_eq!(score_ell(0.5, 0.2).unwrap(), -1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(score_ell(0.5, 0.8).unwrap(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(score_ell(0.25, 0.1).unwrap(), -(3.0f64).sqrt(), epsilon = 1e-15);
        assert!(score_ell(0.0, 0.5).is_err());
        assert!(score_ell(1.0, 0.5).is_err());
    }

    #[test]
    fn score_normalization_identity() {
        // integral of ell over [0,1] is -sqrt((1-pi)/pi) pi + sqrt(pi/(1-pi)) (1-pi) = 0
        for &pi in &[0.1, 0.25, 0.5, 0.9] {
            let lo = score_ell(pi, 0.0).unwrap();
            let hi = score_ell(pi, 1.0).unwrap();
            assert_abs_diff_eq!(lo * pi + hi * (1.0 - pi), 0.0, epsilon = 1e-14);
            assert_abs_diff_eq!(lo * lo * pi + hi * hi * (1.0 - pi), 1.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn linear_rank_hand_value() {
        // m = n = 1, x below y, pi = 1/2: counting form gives sqrt 2
        let s = sample(&[0.2], &[0.7]);
        let l = linear_rank_stat(&s, &single_point(0.5), 0).unwrap();
        assert_abs_diff_eq!(l, (2.0f64).sqrt(), epsilon = 1e-14);
        // swapping the samples negates it
        let s = sample(&[0.7], &[0.2]);
        let l = linear_rank_stat(&s, &single_point(0.5), 0).unwrap();
        assert_abs_diff_eq!(l, -(2.0f64).sqrt(), epsilon = 1e-14);
    }

    #[test]
    fn linear_rank_zero_when_cut_empty() {
        // pi small enough that no rescaled rank falls below it and the cut
        // count is zero
        let s = sample(&[1.0, 2.0], &[3.0, 4.0]);
        let l = linear_rank_stat(&s, &single_point(0.1), 0).unwrap();
        assert_abs_diff_eq!(l, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn t_and_w_hand_values() {
        let lo = sample(&[0.2], &[0.7]);
        let hi = sample(&[0.7], &[0.2]);
        let sp = single_point(0.5);
        assert_abs_diff_eq!(t_stat(&lo, &sp).unwrap(), -(2.0f64).sqrt(), epsilon = 1e-14);
        assert_abs_diff_eq!(t_stat(&hi, &sp).unwrap(), (2.0f64).sqrt(), epsilon = 1e-14);
        assert_abs_diff_eq!(w_stat(&lo, &sp).unwrap(), -(2.0f64).sqrt(), epsilon = 1e-14);
        // all x-ranks above all y-ranks: strictly positive for any scheme
        let s = sample(&[5.0, 6.0, 7.0], &[1.0, 2.0, 3.0]);
        assert!(t_stat(&s, &PartitionScheme::DyadicStar).unwrap() > 0.0);
    }

    #[test]
    fn w_zero_for_interleaved_equal_counts() {
        // Fhat = Ghat at every even pooled index; grid hits exactly those
        let s = sample(&[1.0, 3.0], &[2.0, 4.0]);
        let w = w_stat(&s, &single_point(0.5)).unwrap();
        assert_abs_diff_eq!(w, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn tw_bound_hand_value() {
        // m = n = 1, single point 1/2: (1/sqrt 2) * 1 * (2 / 0.5) = 2 sqrt 2
        let b = tw_bound(1, 1, &single_point(0.5)).unwrap();
        assert_abs_diff_eq!(b, 2.0 * (2.0f64).sqrt(), epsilon = 1e-14);
        // symmetric under m <-> n
        let s1 = tw_bound(20, 80, &PartitionScheme::DyadicStar).unwrap();
        let s2 = tw_bound(80, 20, &PartitionScheme::DyadicStar).unwrap();
        assert_abs_diff_eq!(s1, s2, epsilon = 1e-15);
    }

    #[test]
    fn scheme_grids() {
        // dyadic: Delta(100) = 63 on j/64
        let g = PartitionScheme::DyadicStar.grid(100).unwrap();
        assert_eq!(g.len(), 63);
        assert_abs_diff_eq!(g[0], 1.0 / 64.0, epsilon = 1e-16);
        // dense: indices 11..=90 over 101
        let g = PartitionScheme::DenseO.grid(100).unwrap();
        assert_eq!(g.len(), 80);
        assert_abs_diff_eq!(g[0], 11.0 / 101.0, epsilon = 1e-16);
        assert_abs_diff_eq!(*g.last().unwrap(), 90.0 / 101.0, epsilon = 1e-16);
        // dense grid empty for tiny N
        assert_eq!(PartitionScheme::DenseO.grid(4).unwrap_err(), StatError::EmptyGrid(4));
        // power law 1/3 at N = 12: floor(12^(1/3)) = 2 points
        let g = PartitionScheme::PowerLaw { p: 1.0 / 3.0 }.grid(12).unwrap();
        assert_eq!(g.len(), 2);
        assert!(PartitionScheme::PowerLaw { p: 1.5 }.grid(10).is_err());
        assert!(PartitionScheme::Explicit { points: vec![0.4, 0.2] }.grid(10).is_err());
    }

    #[test]
    fn closeness_bound_on_random_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let m = rng.gen_range(20..=200);
            let n = rng.gen_range(20..=200);
            let x: Vec<f64> = (0..m).map(|_| rng.gen::<f64>()).collect();
            let y: Vec<f64> = (0..n).map(|_| rng.gen::<f64>()).collect();
            let s = TwoSample::new(x, y).unwrap();
            for scheme in [PartitionScheme::DyadicStar, PartitionScheme::DenseO] {
                let t = t_stat(&s, &scheme).unwrap();
                let w = w_stat(&s, &scheme).unwrap();
                let bound = tw_bound(m, n, &scheme).unwrap();
                assert!(
                    (t - w).abs() <= bound,
                    "|T - W| = {} > {} at m={m}, n={n}, {scheme:?}",
                    (t - w).abs(),
                    bound
                );
            }
        }
    }

    #[test]
    fn ks_grid_form_equals_sup_form() {
        // the single-pass walk visits exactly the grid of pooled order
        // statistics; compare against a naive sup over midpoints as well
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let m = rng.gen_range(1..=30);
            let n = rng.gen_range(1..=30);
            let x: Vec<f64> = (0..m).map(|_| rng.gen::<f64>()).collect();
            let y: Vec<f64> = (0..n).map(|_| rng.gen::<f64>()).collect();
            let s = TwoSample::new(x.clone(), y.clone()).unwrap();
            let v = ks_one_sided(&s).unwrap();
            // naive: evaluate Ghat - Fhat just after every pooled point
            let mut pooled: Vec<f64> = x.iter().chain(y.iter()).copied().collect();
            pooled.sort_unstable_by(f64::total_cmp);
            let naive = pooled
                .iter()
                .map(|&z| {
                    let fh = x.iter().filter(|&&v| v <= z).count() as f64 / m as f64;
                    let gh = y.iter().filter(|&&v| v <= z).count() as f64 / n as f64;
                    gh - fh
                })
                .fold(f64::NEG_INFINITY, f64::max);
            let scale = (m as f64 * n as f64 / (m + n) as f64).sqrt();
            assert_abs_diff_eq!(v, scale * naive, epsilon = 1e-12);
        }
    }

    proptest! {
        /// Rank statistics are invariant under strictly increasing maps.
        #[test]
        fn rank_invariance_under_monotone_maps(
            xs in proptest::collection::vec(0.01f64..0.99, 2..20),
            ys in proptest::collection::vec(0.01f64..0.99, 2..20),
        ) {
            let s = TwoSample::new(xs.clone(), ys.clone()).unwrap();
            if ranks(&s).is_err() {
                return Ok(()); // tie by construction, skip
            }
            let phi = |v: f64| (v * 3.0).exp() + v;
            let t = TwoSample::new(
                xs.iter().map(|&v| phi(v)).collect(),
                ys.iter().map(|&v| phi(v)).collect(),
            ).unwrap();
            let scheme = PartitionScheme::DyadicStar;
            prop_assert_eq!(ks_one_sided(&s).unwrap(), ks_one_sided(&t).unwrap());
            prop_assert_eq!(t_stat(&s, &scheme).unwrap(), t_stat(&t, &scheme).unwrap());
            prop_assert_eq!(w_stat(&s, &scheme).unwrap(), w_stat(&t, &scheme).unwrap());
        }

        /// The counting form of L_j agrees with the literal score-sum form.
        #[test]
        fn linear_rank_two_forms_agree(
            xs in proptest::collection::vec(0.0f64..1.0, 2..40),
            ys in proptest::collection::vec(0.0f64..1.0, 2..40),
            pi_raw in 0.02f64..0.98,
        ) {
            let s = TwoSample::new(xs, ys).unwrap();
            let Ok(rv) = ranks(&s) else { return Ok(()) };
            let counting = linear_rank_stat(&s, &single_point(pi_raw), 0).unwrap();
            let score = linear_rank_stat_score_form(&rv, pi_raw).unwrap();
            prop_assert!((counting - score).abs() <= 1e-12,
                "forms differ: {} vs {}", counting, score);
        }

        /// With m = n, exchanging the samples negates every L_j.
        #[test]
        fn exchange_antisymmetry(
            vals in proptest::collection::vec(0.0f64..1.0, 8..24),
            pi_raw in 0.05f64..0.95,
        ) {
            let half = vals.len() / 2;
            let xs = vals[..half].to_vec();
            let ys = vals[half..2*half].to_vec();
            let fwd = TwoSample::new(xs.clone(), ys.clone()).unwrap();
            let rev = TwoSample::new(ys, xs).unwrap();
            if ranks(&fwd).is_err() { return Ok(()); }
            let a = linear_rank_stat(&fwd, &single_point(pi_raw), 0).unwrap();
            let b = linear_rank_stat(&rev, &single_point(pi_raw), 0).unwrap();
            prop_assert!((a + b).abs() <= 1e-12, "L(x,y) = {}, L(y,x) = {}", a, b);
        }
    }
}
