//! The state pair `(u, B)` and its inner products.

use super::field::SpectralField;
use super::grid::{CutoffLevel, WaveGrid};
use super::norms::weighted_norm_sq;
use super::project::{cutoff_in_place, leray_project_in_place};
use crate::error::Result;
use rand::Rng;

/// Velocity/magnetic-field pair, both divergence-free spectral fields on one
/// grid.
#[derive(Debug, Clone, PartialEq)]
pub struct State {
    pub u: SpectralField,
    pub b: SpectralField,
}

impl State {
    pub fn new(u: SpectralField, b: SpectralField) -> Result<Self> {
        u.same_grid(&b)?;
        Ok(State { u, b })
    }

    pub fn zeros(grid: WaveGrid) -> Self {
        State {
            u: SpectralField::zeros(grid),
            b: SpectralField::zeros(grid),
        }
    }

    pub fn grid(&self) -> &WaveGrid {
        self.u.grid()
    }

    pub fn same_grid(&self, other: &State) -> Result<()> {
        self.u.same_grid(&other.u)
    }

    /// Random divergence-free state supported on `|k| <= band`.
    pub fn random_div_free<R: Rng + ?Sized>(
        grid: WaveGrid,
        band: f64,
        decay: f64,
        rng: &mut R,
    ) -> Self {
        let mut u = SpectralField::random_smooth(grid, band, decay, rng);
        let mut b = SpectralField::random_smooth(grid, band, decay, rng);
        leray_project_in_place(&mut u);
        leray_project_in_place(&mut b);
        State { u, b }
    }

    pub fn scale(&mut self, a: f64) {
        self.u.scale(a);
        self.b.scale(a);
    }

    /// `self += a * other`.
    pub fn scaled_add(&mut self, a: f64, other: &State) {
        self.u.scaled_add(a, &other.u);
        self.b.scaled_add(a, &other.b);
    }

    /// `|state|_H^2` (squared L2 norm of both components).
    pub fn h_norm_sq(&self) -> f64 {
        self.u.l2_norm_sq() + self.b.l2_norm_sq()
    }

    pub fn h_norm(&self) -> f64 {
        self.h_norm_sq().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.u.is_finite() && self.b.is_finite()
    }

    /// Largest relative spectral divergence over both components.
    pub fn max_divergence(&self) -> f64 {
        super::calculus::max_divergence(&self.u).max(super::calculus::max_divergence(&self.b))
    }

    /// Fourier-weight dual norm `sqrt((L/N)^3 sum (1+|k|^2)^s |coef|^2)` over
    /// both components; `s` may be negative. With `s = 0` this is the H-norm.
    pub fn dual_norm(&self, s: f64) -> f64 {
        (weighted_norm_sq(&self.u, s) + weighted_norm_sq(&self.b, s)).sqrt()
    }

    /// `H^{m1} x H^{m2}` product norm squared.
    pub fn product_norm_sq(&self, m1: f64, m2: f64) -> f64 {
        weighted_norm_sq(&self.u, m1) + weighted_norm_sq(&self.b, m2)
    }
}

/// `<phi, psi>_H = <u, v>_{L2} + <B, C>_{L2}`.
pub fn inner_h(a: &State, b: &State) -> Result<f64> {
    a.same_grid(b)?;
    let w = a.grid().norm_weight();
    let mut acc = 0.0;
    for (x, y) in [(&a.u, &b.u), (&a.b, &b.b)] {
        for c in 0..3 {
            acc += x
                .component(c)
                .iter()
                .zip(y.component(c))
                .map(|(p, q)| (p * q.conj()).re)
                .sum::<f64>();
        }
    }
    Ok(w * acc)
}

/// Dirichlet energy pairing `nu1 <grad u, grad v> + nu2 <grad B, grad C>`,
/// computed mode-wise as `|k|^2`-weighted inner products.
pub fn dirichlet_form(a: &State, b: &State, nu1: f64, nu2: f64) -> Result<f64> {
    a.same_grid(b)?;
    let grid = a.grid();
    let w = grid.norm_weight();
    let mut acc = 0.0;
    for (nu, x, y) in [(nu1, &a.u, &b.u), (nu2, &a.b, &b.b)] {
        let mut part = 0.0;
        for idx in 0..grid.mode_count() {
            let ksq = grid.wavevector_sq(idx);
            if ksq == 0.0 {
                continue;
            }
            let p = x.coef(idx);
            let q = y.coef(idx);
            part += ksq * ((p[0] * q[0].conj()).re + (p[1] * q[1].conj()).re + (p[2] * q[2].conj()).re);
        }
        acc += nu * part;
    }
    Ok(w * acc)
}

/// Squared V-norm `|phi|_H^2 + ((phi, phi))`.
pub fn v_norm_sq(a: &State, nu1: f64, nu2: f64) -> f64 {
    a.h_norm_sq() + dirichlet_form(a, a, nu1, nu2).expect("same state")
}

/// `P_n = pi_n x pi_n`: Fourier-ball cutoff of both components.
pub fn project_state(state: &State, level: CutoffLevel) -> State {
    let mut out = state.clone();
    project_state_in_place(&mut out, level);
    out
}

pub fn project_state_in_place(state: &mut State, level: CutoffLevel) {
    cutoff_in_place(&mut state.u, level);
    cutoff_in_place(&mut state.b, level);
}

/// Both sides of the finite-band embedding bound
/// `||phi||_{m1,m2}^2 <= (1+n^2)^m |phi|_H^2`, `m = max(m1, m2)`,
/// for a state supported on `|k| <= n`.
pub fn check_embedding_bound(state: &State, level: CutoffLevel, m1: f64, m2: f64) -> (f64, f64) {
    let lhs = state.product_norm_sq(m1, m2);
    let n = level.radius();
    let rhs = (1.0 + n * n).powf(m1.max(m2)) * state.h_norm_sq();
    (lhs, rhs)
}
