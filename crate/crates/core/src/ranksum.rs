//! Wilcoxon rank-sum (Mann-Whitney U) test with midranks, tie-corrected
//! variance and a continuity-corrected normal approximation.

use statrs::function::erf::erfc;

use crate::error::QdError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankSumResult {
    /// U of the first sample: its rank sum minus n_a(n_a + 1)/2.
    pub u: f64,
    /// Standardised statistic for the two-tailed test (0 when the variance
    /// vanishes).
    pub z: f64,
    pub p_two_tail: f64,
    /// One-tailed p for "the first sample tends to be larger".
    pub p_greater: f64,
    /// One-tailed p for "the first sample tends to be smaller".
    pub p_less: f64,
}

/// Midranks (1-based) of the pooled values; tied values share the mean of
/// the ranks they span. Also returns Σ(t³ − t) over tie groups.
fn midranks(values: &[f64]) -> (Vec<f64>, f64) {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut tie_term = 0.0;
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && values[order[end]] == values[order[start]] {
            end += 1;
        }
        let rank = (start + end + 1) as f64 / 2.0;
        for &i in &order[start..end] {
            ranks[i] = rank;
        }
        let t = (end - start) as f64;
        tie_term += t * t * t - t;
        start = end;
    }
    (ranks, tie_term)
}

fn upper_tail(z: f64) -> f64 {
    0.5 * erfc(z / std::f64::consts::SQRT_2)
}

pub fn rank_sum_test(sample_a: &[f64], sample_b: &[f64]) -> Result<RankSumResult, QdError> {
    if sample_a.is_empty() || sample_b.is_empty() {
        return Err(QdError::EmptySample);
    }
    assert!(
        sample_a.iter().chain(sample_b).all(|x| !x.is_nan()),
        "rank-sum samples must not contain NaN"
    );
    let na = sample_a.len() as f64;
    let nb = sample_b.len() as f64;
    let n = na + nb;
    let pooled: Vec<f64> = sample_a.iter().chain(sample_b).copied().collect();
    let (ranks, tie_term) = midranks(&pooled);
    let rank_sum_a: f64 = ranks[..sample_a.len()].iter().sum();
    let u = rank_sum_a - na * (na + 1.0) / 2.0;

    let mean = na * nb / 2.0;
    let variance = na * nb / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
    if !(variance > 0.0) {
        return Ok(RankSumResult {
            u,
            z: 0.0,
            p_two_tail: 1.0,
            p_greater: 1.0,
            p_less: 1.0,
        });
    }
    let sd = variance.sqrt();
    let z = ((u - mean).abs() - 0.5).max(0.0) / sd;
    let p_two_tail = (2.0 * upper_tail(z)).min(1.0);
    let p_greater = upper_tail((u - mean - 0.5) / sd);
    let p_less = upper_tail((mean - u - 0.5) / sd);
    Ok(RankSumResult {
        u,
        z,
        p_two_tail,
        p_greater,
        p_less,
    })
}
