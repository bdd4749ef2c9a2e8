//! Ensemble moment estimates: the desk-scale shadow of the a priori bounds
//! `E[sup_t |X|_H^q] <= C1(q)` and `E[int |X|^{q-2} ||X||^2 dt] <= C2(q)`.

use crate::error::{Error, Result};
use crate::integrator::TrajectoryNorms;

/// Monte-Carlo estimate with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentEstimate {
    pub value: f64,
    pub std_error: f64,
}

fn estimate(samples: &[f64]) -> MomentEstimate {
    let m = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / m;
    let var = if samples.len() > 1 {
        samples.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (m - 1.0)
    } else {
        0.0
    };
    MomentEstimate {
        value: mean,
        std_error: (var / m).sqrt(),
    }
}

/// Per-order moment estimates for one ensemble.
#[derive(Debug, Clone)]
pub struct MomentReport {
    /// `(q, E[sup_t |X(t)|_H^q], E[int_0^T |X|^{q-2} ||X||^2 dt])` per order.
    pub orders: Vec<(f64, MomentEstimate, MomentEstimate)>,
    /// `E[int_0^T ||X||_V^2 dt]` (the q = 2 energy inequality).
    pub v_integral: MomentEstimate,
    pub guard_radius: f64,
    pub guard_hits: usize,
    pub trajectories: usize,
}

impl MomentReport {
    pub fn sup_estimate(&self, q: f64) -> Option<MomentEstimate> {
        self.orders
            .iter()
            .find(|(oq, _, _)| *oq == q)
            .map(|(_, sup, _)| *sup)
    }
}

/// Time integral of `g(t)` along the sampled path by the trapezoid rule,
/// with left-limit values closing each panel that ends at a jump.
fn path_integral(norms: &TrajectoryNorms, g: impl Fn(f64, f64) -> f64) -> f64 {
    // g(h_sq, dir_sq)
    let mut acc = 0.0;
    for w in norms.samples.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        let left = g(b.left_h_sq, b.left_dir_sq);
        let right = g(a.h_sq, a.dir_sq);
        acc += 0.5 * (right + left) * (b.time - a.time);
    }
    acc
}

/// Estimate the moment quantities over an ensemble of norm series.
pub fn moment_report(
    ensemble: &[TrajectoryNorms],
    q_orders: &[f64],
    guard_radius: f64,
) -> Result<MomentReport> {
    if ensemble.is_empty() {
        return Err(Error::EmptyEnsemble);
    }
    let mut orders = Vec::new();
    for &q in q_orders {
        let sups: Vec<f64> = ensemble
            .iter()
            .map(|tr| {
                tr.samples
                    .iter()
                    // the left limit at a jump is also a path value
                    .map(|s| s.h_sq.max(s.left_h_sq))
                    .fold(0.0_f64, f64::max)
                    .powf(q / 2.0)
            })
            .collect();
        let integrals: Vec<f64> = ensemble
            .iter()
            .map(|tr| path_integral(tr, |h_sq, dir_sq| h_sq.powf((q - 2.0) / 2.0) * dir_sq))
            .collect();
        orders.push((q, estimate(&sups), estimate(&integrals)));
    }
    let v_integrals: Vec<f64> = ensemble
        .iter()
        .map(|tr| path_integral(tr, |h_sq, dir_sq| h_sq + dir_sq))
        .collect();
    Ok(MomentReport {
        orders,
        v_integral: estimate(&v_integrals),
        guard_radius,
        guard_hits: ensemble.iter().filter(|t| t.guard_hit).count(),
        trajectories: ensemble.len(),
    })
}
