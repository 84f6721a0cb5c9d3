//! Paired two-sided t-test at α = 0.05.

use crate::error::{Error, Result};

/// Two-sided 5% critical values of Student's t for df = 1..=30.
const T_CRIT_05: [f64; 30] = [
    12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306, 2.262, 2.228, 2.201, 2.179, 2.160, 2.145, 2.131,
    2.120, 2.110, 2.101, 2.093, 2.086, 2.080, 2.074, 2.069, 2.064, 2.060, 2.056, 2.052, 2.048, 2.045, 2.042,
];

const NORMAL_CRIT_05: f64 = 1.96;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TTest {
    pub t_statistic: f64,
    pub degrees_of_freedom: usize,
    pub critical_value: f64,
    pub significant_at_0_05: bool,
}

pub fn critical_value_05(df: usize) -> f64 {
    match df {
        0 => f64::INFINITY,
        1..=30 => T_CRIT_05[df - 1],
        _ => NORMAL_CRIT_05,
    }
}

pub fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Sample standard deviation (n − 1 denominator).
pub fn sample_sd(xs: &[f64]) -> f64 {
    let m = mean(xs);
    let ss: f64 = xs.iter().map(|x| (x - m).powi(2)).sum();
    (ss / (xs.len() as f64 - 1.0)).sqrt()
}

/// `t = mean / (sd / √n)` over paired differences.
pub fn paired_t_test(diffs: &[f64]) -> Result<TTest> {
    let n = diffs.len();
    if n < 2 {
        return Err(Error::TooFewSamples(n));
    }
    let sd = sample_sd(diffs);
    if sd == 0.0 || !sd.is_finite() {
        return Err(Error::ZeroVariance);
    }
    let t = mean(diffs) / (sd / (n as f64).sqrt());
    let df = n - 1;
    let critical = critical_value_05(df);
    Ok(TTest {
        t_statistic: t,
        degrees_of_freedom: df,
        critical_value: critical,
        significant_at_0_05: t.abs() > critical,
    })
}
