//! Medians with nonparametric confidence intervals from binomial order
//! statistics.

/// One line of a summary table.
#[derive(Clone, Debug, PartialEq)]
pub struct SummaryRow {
    /// Ordered cell parameters, flattened as (name, value) pairs.
    pub cell: Vec<(String, String)>,
    pub planner: String,
    pub metric: String,
    pub median: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
    pub n: usize,
    pub failures: usize,
    /// Set when n is too small for a two-sided 95% order-statistic CI
    /// (n < 6); the interval then degenerates to the sample range.
    pub low_n: bool,
}

/// Median and a 95% nonparametric CI for it.
///
/// The CI is `[x_(a), x_(n+1-a)]` with `a` the largest rank whose lower
/// binomial(n, 1/2) tail stays at or below 0.025, the standard
/// order-statistic construction. Ties in the median are averaged.
pub fn median_ci(values: &[f64]) -> Option<(f64, f64, f64, bool)> {
    if values.is_empty() {
        return None;
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.total_cmp(b));
    let n = sorted.len();
    let median = if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    };
    let a = lower_rank_95(n);
    let low_n = n < 6;
    let (lo, hi) = (sorted[a - 1], sorted[n - a]);
    Some((median, lo, hi, low_n))
}

/// Largest 1-based rank `a` with `P(X <= a-1) <= 0.025` for `X ~ Bin(n, 1/2)`,
/// floored at 1.
fn lower_rank_95(n: usize) -> usize {
    let mut pmf = 0.5f64.powi(n as i32);
    let mut cdf = pmf; // P(X <= 0)
    let mut a = 1usize;
    for k in 0..n {
        if cdf > 0.025 {
            break;
        }
        a = k + 1;
        // Advance to P(X <= k+1).
        pmf *= (n - k) as f64 / (k + 1) as f64;
        cdf += pmf;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn ranks_one_to_hundred() {
        // Known order-statistic interval for n = 100: ranks 40 and 61.
        let values: Vec<f64> = (1..=100).map(|v| v as f64).collect();
        let (median, lo, hi, low_n) = median_ci(&values).unwrap();
        assert_relative_eq!(median, 50.5);
        assert_relative_eq!(lo, 40.0);
        assert_relative_eq!(hi, 61.0);
        assert!(!low_n);
    }

    #[test]
    fn single_record_degenerates_with_marker() {
        let (median, lo, hi, low_n) = median_ci(&[7.25]).unwrap();
        assert_relative_eq!(median, 7.25);
        assert_relative_eq!(lo, 7.25);
        assert_relative_eq!(hi, 7.25);
        assert!(low_n);
    }

    #[test]
    fn identical_values_have_zero_width_interval() {
        let values = vec![3.0; 40];
        let (median, lo, hi, low_n) = median_ci(&values).unwrap();
        assert_relative_eq!(median, 3.0);
        assert_relative_eq!(lo, 3.0);
        assert_relative_eq!(hi, 3.0);
        assert!(!low_n);
    }

    #[test]
    fn interval_matches_bootstrap_coverage() {
        // Cross-check the closed-form ranks against a bootstrap of the
        // median on a skewed sample.
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let sample: Vec<f64> = (0..75).map(|_| rng.random_range(0.0f64..1.0).powi(3) * 100.0).collect();
        let (median, lo, hi, _) = median_ci(&sample).unwrap();

        let mut boot_medians = Vec::with_capacity(4000);
        for _ in 0..4000 {
            let mut resample: Vec<f64> =
                (0..sample.len()).map(|_| sample[rng.random_range(0..sample.len())]).collect();
            resample.sort_by(|a, b| a.total_cmp(b));
            boot_medians.push(resample[sample.len() / 2]);
        }
        boot_medians.sort_by(|a, b| a.total_cmp(b));
        let b_lo = boot_medians[(0.025 * 4000.0) as usize];
        let b_hi = boot_medians[(0.975 * 4000.0) as usize];
        // Same ballpark, and both contain the point estimate.
        assert!(lo <= median && median <= hi);
        assert!((lo - b_lo).abs() <= 0.35 * (hi - lo).max(1.0));
        assert!((hi - b_hi).abs() <= 0.35 * (hi - lo).max(1.0));
    }

    #[test]
    fn even_sample_averages_middle_pair() {
        let (median, _, _, _) = median_ci(&[1.0, 2.0, 3.0, 10.0]).unwrap();
        assert_relative_eq!(median, 2.5);
    }
}
