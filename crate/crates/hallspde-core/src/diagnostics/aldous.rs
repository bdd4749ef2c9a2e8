//! Empirical Aldous-condition fit: regress mean stopped-increment norms
//! against the lag, mirroring the bound
//! `E[ ||X(tau + theta) - X(tau)||_E^alpha ] <= C theta^beta`.
//!
//! The norm is the Fourier-weight dual norm `dual_norm(., -s)`, the concrete
//! surrogate for the auxiliary dual space the tightness argument works in.

use crate::error::{Error, Result};
use crate::integrator::Trajectory;

/// Stopping-time family used for the increment regression.
#[derive(Debug, Clone, Copy)]
pub enum StoppingRule {
    /// `tau = t0` for every path.
    Deterministic(f64),
    /// First sample time with `|X|_H >= threshold`, or `fallback` if the
    /// level is never reached.
    FirstHitting { threshold: f64, fallback: f64 },
}

impl StoppingRule {
    fn stopping_time(&self, trajectory: &Trajectory) -> f64 {
        match *self {
            StoppingRule::Deterministic(t0) => t0,
            StoppingRule::FirstHitting {
                threshold,
                fallback,
            } => trajectory
                .samples
                .iter()
                .find(|s| s.state.h_norm() >= threshold)
                .map(|s| s.time)
                .unwrap_or(fallback),
        }
    }
}

/// Result of the log-log increment regression.
#[derive(Debug, Clone)]
pub struct AldousReport {
    pub theta: Vec<f64>,
    /// `E[ ||X(tau+theta) - X(tau)||^alpha ]` per lag.
    pub mean_increment: Vec<f64>,
    /// Fitted exponent (slope of log mean vs log theta).
    pub slope: f64,
    pub intercept: f64,
    /// Standard error of the slope from the regression residuals.
    pub slope_std_error: f64,
    /// True when increments vanish and no regression is possible.
    pub degenerate: bool,
    pub trajectories: usize,
}

/// Accumulate stopped increments over an ensemble and fit
/// `log E[||increment||^alpha] ~ intercept + slope * log theta`.
///
/// `norm_index` is the `s` of the `dual_norm(., -s)` surrogate and `alpha`
/// the moment power. Trajectories are consumed one at a time, so the
/// ensemble may be generated lazily.
pub fn aldous_fit(
    trajectories: impl IntoIterator<Item = Trajectory>,
    theta_grid: &[f64],
    rule: StoppingRule,
    norm_index: f64,
    alpha: f64,
) -> Result<AldousReport> {
    if theta_grid.len() < 3 {
        return Err(Error::invalid(format!(
            "need at least 3 lag values, got {}",
            theta_grid.len()
        )));
    }
    if theta_grid.iter().any(|t| !(*t > 0.0)) {
        return Err(Error::invalid("lags must be positive"));
    }
    let mut sums = vec![0.0_f64; theta_grid.len()];
    let mut count = 0usize;
    for trajectory in trajectories {
        let tau = rule.stopping_time(&trajectory);
        let max_theta = theta_grid.iter().copied().fold(0.0, f64::max);
        if tau + max_theta > trajectory.horizon * (1.0 + 1e-12) {
            return Err(Error::invalid(format!(
                "stopping time {tau} plus lag {max_theta} exceeds the horizon {}",
                trajectory.horizon
            )));
        }
        let base = trajectory.state_at(tau).clone();
        for (slot, &theta) in theta_grid.iter().enumerate() {
            let mut inc = trajectory.state_at(tau + theta).clone();
            inc.scaled_add(-1.0, &base);
            sums[slot] += inc.dual_norm(-norm_index).powf(alpha);
        }
        count += 1;
    }
    if count == 0 {
        return Err(Error::EmptyEnsemble);
    }
    let means: Vec<f64> = sums.iter().map(|s| s / count as f64).collect();
    if means.iter().any(|m| *m <= 0.0) {
        return Ok(AldousReport {
            theta: theta_grid.to_vec(),
            mean_increment: means,
            slope: f64::NAN,
            intercept: f64::NAN,
            slope_std_error: f64::NAN,
            degenerate: true,
            trajectories: count,
        });
    }

    // ordinary least squares in log-log coordinates
    let xs: Vec<f64> = theta_grid.iter().map(|t| t.ln()).collect();
    let ys: Vec<f64> = means.iter().map(|m| m.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let dof = (xs.len() as f64 - 2.0).max(1.0);
    let residual_var: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| {
            let r = y - (intercept + slope * x);
            r * r
        })
        .sum::<f64>()
        / dof;
    Ok(AldousReport {
        theta: theta_grid.to_vec(),
        mean_increment: means,
        slope,
        intercept,
        slope_std_error: (residual_var / sxx).sqrt(),
        degenerate: false,
        trajectories: count,
    })
}
