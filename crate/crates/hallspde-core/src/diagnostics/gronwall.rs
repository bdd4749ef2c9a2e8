//! The stochastic Gronwall bound used by the a priori moment estimates.
//!
//! For non-negative processes X, Y, I with I non-decreasing,
//! `X(t) + alpha Y(t) <= Z + int_0^t phi X + I(t)` and
//! `E[I(t)] <= beta E[X(t)] + gamma int_0^t E[X] + delta E[Y(t)] + C_tilde`,
//! admissibility `int_0^T phi <= C`, `2 beta e^C <= 1`, `2 delta e^C <= alpha`
//! yields `E[X(t) + alpha Y(t)] <= 2 exp(C + 2 t gamma e^C) (E[Z] + C_tilde)`.

use crate::error::{Error, Result};

/// Sampled processes and constants feeding the Gronwall bound.
#[derive(Debug, Clone)]
pub struct GronwallInput {
    /// Common time grid of the sampled processes.
    pub times: Vec<f64>,
    /// Per-sample-path processes: `x[path][time]`, non-negative.
    pub x: Vec<Vec<f64>>,
    /// Same layout as `x`.
    pub y: Vec<Vec<f64>>,
    /// Non-decreasing per-path process.
    pub i: Vec<Vec<f64>>,
    /// Samples of the random variable Z, one per path.
    pub z: Vec<f64>,
    /// `phi(t)` on `times`, with `int_0^T phi <= c`.
    pub phi: Vec<f64>,
    pub c: f64,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
    pub c_tilde: f64,
}

fn trapezoid(times: &[f64], values: &[f64], upto: f64) -> f64 {
    let mut acc = 0.0;
    for w in times.windows(2).zip(values.windows(2)) {
        let (ts, vs) = w;
        if ts[0] >= upto {
            break;
        }
        let t1 = ts[1].min(upto);
        // linear interpolation when the panel is clipped at `upto`
        let v1 = if ts[1] <= upto {
            vs[1]
        } else {
            let frac = (t1 - ts[0]) / (ts[1] - ts[0]);
            vs[0] + frac * (vs[1] - vs[0])
        };
        acc += 0.5 * (vs[0] + v1) * (t1 - ts[0]);
    }
    acc
}

impl GronwallInput {
    /// Check the admissibility conditions, naming the failed one.
    pub fn check_admissible(&self) -> Result<()> {
        let phi_int = trapezoid(&self.times, &self.phi, f64::INFINITY);
        if phi_int > self.c * (1.0 + 1e-12) {
            return Err(Error::Admissibility(format!(
                "int phi = {phi_int} exceeds C = {}",
                self.c
            )));
        }
        if 2.0 * self.beta * self.c.exp() > 1.0 {
            return Err(Error::Admissibility(format!(
                "2 beta e^C = {} exceeds 1",
                2.0 * self.beta * self.c.exp()
            )));
        }
        if 2.0 * self.delta * self.c.exp() > self.alpha {
            return Err(Error::Admissibility(format!(
                "2 delta e^C = {} exceeds alpha = {}",
                2.0 * self.delta * self.c.exp(),
                self.alpha
            )));
        }
        for path in &self.i {
            if path.windows(2).any(|w| w[1] < w[0] - 1e-12) {
                return Err(Error::Admissibility("I must be non-decreasing".into()));
            }
        }
        Ok(())
    }

    fn mean_z(&self) -> f64 {
        self.z.iter().sum::<f64>() / self.z.len().max(1) as f64
    }
}

/// The Gronwall bound `2 exp(C + 2 t gamma e^C) (mean(Z) + C_tilde)`.
pub fn gronwall_bound(input: &GronwallInput, t: f64) -> Result<f64> {
    input.check_admissible()?;
    Ok(2.0 * (input.c + 2.0 * t * input.gamma * input.c.exp()).exp() * (input.mean_z() + input.c_tilde))
}

/// Check `E[X(t) + alpha Y(t)] <= bound` on the sampled paths at every grid
/// time up to `t`; returns the worst margin `bound - estimate`.
pub fn gronwall_check(input: &GronwallInput, t: f64) -> Result<f64> {
    let paths = input.x.len();
    if paths == 0 {
        return Err(Error::EmptyEnsemble);
    }
    let mut worst = f64::INFINITY;
    for (ti, &time) in input.times.iter().enumerate() {
        if time > t {
            break;
        }
        let mean: f64 = (0..paths)
            .map(|p| input.x[p][ti] + input.alpha * input.y[p][ti])
            .sum::<f64>()
            / paths as f64;
        let bound = gronwall_bound(input, time)?;
        worst = worst.min(bound - mean);
    }
    Ok(worst)
}
