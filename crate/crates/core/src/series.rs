//! Summation of slowly convergent periodic-coefficient series.
//!
//! Two accelerators are provided:
//!
//! * [`euler_alternating`] sums `Σ (-1)^q B_q` with the Euler transform,
//!   realised as iterated averaging of partial sums. When `B_q` is a moment
//!   sequence `∫ t^q dμ` the error after `N` blocks is at most `2^-N · ‖μ‖`.
//! * [`richardson_blocks`] sums `Σ b_j` where the tail after `k` blocks has an
//!   asymptotic expansion in powers of `1/k`, by Richardson extrapolation of
//!   the partial sums at `k = k0, 2k0, 4k0, ...`.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default cap on the number of series terms an accelerator may touch.
pub const DEFAULT_TERM_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesEstimate {
    pub value: Complex64,
    pub error_estimate: f64,
    /// Number of original series terms consumed.
    pub terms: usize,
}

fn euler_average(partial: &[Complex64]) -> Complex64 {
    let mut level = partial.to_vec();
    while level.len() > 1 {
        level = level.windows(2).map(|w| (w[0] + w[1]) * 0.5).collect();
    }
    level[0]
}

/// Sums `Σ_{q>=0} (-1)^q block(q)`; each block accounts for `block_len` terms.
pub fn euler_alternating(
    block: impl Fn(usize) -> Complex64,
    block_len: usize,
    tolerance: f64,
    term_budget: usize,
) -> Result<SeriesEstimate> {
    let mut partial: Vec<Complex64> = Vec::new();
    let mut running = Complex64::new(0.0, 0.0);
    let mut extend_to = |n: usize, partial: &mut Vec<Complex64>| {
        while partial.len() < n {
            let q = partial.len();
            let sign = if q.is_multiple_of(2) { 1.0 } else { -1.0 };
            running += block(q) * sign;
            partial.push(running);
        }
    };

    let mut n = 8;
    extend_to(n, &mut partial);
    let mut previous = euler_average(&partial);
    let mut estimate = f64::INFINITY;
    loop {
        let next_n = 2 * n;
        if next_n * block_len > term_budget {
            return Err(Error::ConvergenceBudget {
                tolerance,
                budget: term_budget,
                estimate,
            });
        }
        extend_to(next_n, &mut partial);
        let current = euler_average(&partial);
        estimate = (current - previous).norm();
        if estimate <= tolerance {
            return Ok(SeriesEstimate {
                value: current,
                error_estimate: estimate,
                terms: next_n * block_len,
            });
        }
        previous = current;
        n = next_n;
    }
}

/// Sums `Σ_{j>=0} block(j)` by Richardson extrapolation in `1/k` on block partial sums.
pub fn richardson_blocks(
    block: impl Fn(usize) -> Complex64,
    block_len: usize,
    tolerance: f64,
    term_budget: usize,
) -> Result<SeriesEstimate> {
    const FIRST: usize = 8;
    const MAX_LEVELS: usize = 24;

    let mut sum = Complex64::new(0.0, 0.0);
    let mut consumed = 0usize;
    let mut diagonal: Vec<Complex64> = Vec::new();
    let mut estimate = f64::INFINITY;
    let mut k = FIRST;
    for level in 0..MAX_LEVELS {
        if k * block_len > term_budget {
            break;
        }
        while consumed < k {
            sum += block(consumed);
            consumed += 1;
        }
        // new row of the Richardson table; column j removes the k^-j term
        let mut row = vec![sum];
        for j in 1..=level {
            let factor = (1u64 << j) as f64;
            let refined = row[j - 1] + (row[j - 1] - diagonal[j - 1]) / (factor - 1.0);
            row.push(refined);
        }
        if level > 0 {
            estimate = (row[level] - diagonal[level - 1]).norm();
            if estimate <= tolerance {
                return Ok(SeriesEstimate {
                    value: row[level],
                    error_estimate: estimate,
                    terms: k * block_len,
                });
            }
        }
        diagonal = row;
        k *= 2;
    }
    Err(Error::ConvergenceBudget {
        tolerance,
        budget: term_budget,
        estimate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_sums_alternating_harmonic() {
        let est = euler_alternating(
            |q| Complex64::new(1.0 / (q as f64 + 1.0), 0.0),
            1,
            1e-12,
            DEFAULT_TERM_BUDGET,
        )
        .unwrap();
        assert!((est.value.re - std::f64::consts::LN_2).abs() < 1e-12);
        assert!(est.error_estimate <= 1e-12);
        assert!(est.terms < 200);
    }

    #[test]
    fn euler_sums_leibniz() {
        let est = euler_alternating(
            |q| Complex64::new(1.0 / (2.0 * q as f64 + 1.0), 0.0),
            1,
            1e-12,
            DEFAULT_TERM_BUDGET,
        )
        .unwrap();
        assert!((est.value.re - std::f64::consts::FRAC_PI_4).abs() < 1e-12);
    }

    #[test]
    fn richardson_sums_basel_tail() {
        // Σ 1/(j+1)^2 = π²/6, tail ~ 1/k
        let est = richardson_blocks(
            |j| Complex64::new(1.0 / ((j as f64 + 1.0) * (j as f64 + 1.0)), 0.0),
            1,
            1e-11,
            DEFAULT_TERM_BUDGET,
        )
        .unwrap();
        let exact = std::f64::consts::PI.powi(2) / 6.0;
        assert!(
            (est.value.re - exact).abs() < 1e-10,
            "{}",
            est.value.re - exact
        );
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let err = euler_alternating(|q| Complex64::new(1.0 / (q as f64 + 1.0), 0.0), 1, 0.0, 100)
            .unwrap_err();
        assert!(matches!(err, Error::ConvergenceBudget { budget: 100, .. }));
        let err = richardson_blocks(|_| Complex64::new(1.0, 0.0), 1, 1e-8, 1000).unwrap_err();
        assert!(matches!(err, Error::ConvergenceBudget { .. }));
    }
}
