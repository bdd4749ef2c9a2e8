//! Time-homogeneous Poisson random measure simulation, compensated
//! stochastic integrals, the jump coefficient F with its Lipschitz/growth
//! contracts, and the optional Wiener driver G.
//!
//! The continuous theory allows sigma-finite intensity measures; at desk
//! scale the mark space is finite with finite total mass, so streams are
//! simulated exactly (Poisson count, uniform times, categorical marks).
//! Small-jump regimes are represented by raising the mass while shrinking
//! the amplitudes.

use crate::error::{Error, Result};
use crate::spectral::{dirichlet_form, leray_project_in_place, State};
use rand::distr::weighted::WeightedIndex;
use rand::prelude::*;
use rand_distr::{Poisson, StandardNormal};
use statrs::distribution::{ChiSquared, ContinuousCDF};
use std::io::Write;
use std::sync::Arc;

/// Finite mark space: marks are indices `0..len` with non-negative weights
/// (intensity per unit time).
#[derive(Debug, Clone, PartialEq)]
pub struct MarkSpace {
    weights: Vec<f64>,
}

/// A mark identifier (index into the mark space).
pub type Mark = usize;

impl MarkSpace {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::invalid(
                "mark weights must be finite and non-negative",
            ));
        }
        Ok(MarkSpace { weights })
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weight(&self, mark: Mark) -> f64 {
        self.weights[mark]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Total mass `mu(Y)`.
    pub fn total_mass(&self) -> f64 {
        self.weights.iter().sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JumpEvent {
    pub time: f64,
    pub mark: Mark,
}

/// One realization of the Poisson random measure on `(0, T] x Y`.
#[derive(Debug, Clone, PartialEq)]
pub struct JumpStream {
    pub events: Vec<JumpEvent>,
    pub horizon: f64,
}

impl JumpStream {
    pub fn empty(horizon: f64) -> Self {
        JumpStream {
            events: Vec::new(),
            horizon,
        }
    }

    /// Counting process `N(t, A) = eta((0,t] x A)`.
    pub fn count(&self, t: f64, marks: impl Fn(Mark) -> bool) -> usize {
        self.events
            .iter()
            .filter(|e| e.time <= t && marks(e.mark))
            .count()
    }

    pub fn validate(&self, space: &MarkSpace) -> Result<()> {
        let mut last = 0.0;
        for e in &self.events {
            if !(e.time > last) || e.time > self.horizon {
                return Err(Error::invalid(format!(
                    "event times must be strictly increasing in (0, T], got {}",
                    e.time
                )));
            }
            if e.mark >= space.len() {
                return Err(Error::UnknownMark(format!("{}", e.mark)));
            }
            last = e.time;
        }
        Ok(())
    }

    /// CSV dump, columns `time,mark_id`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "time,mark_id")?;
        for e in &self.events {
            writeln!(w, "{:.17e},{}", e.time, e.mark)?;
        }
        Ok(())
    }
}

/// Sample one jump stream: the total count is Poisson(`T * mu(Y)`), times are
/// i.i.d. uniform on `(0, T]` (then sorted), marks i.i.d. proportional to the
/// weights. Disjoint mark sets automatically get independent counts.
pub fn sample_jump_stream<R: Rng + ?Sized>(
    space: &MarkSpace,
    horizon: f64,
    rng: &mut R,
) -> Result<JumpStream> {
    if !(horizon > 0.0) {
        return Err(Error::invalid(format!(
            "horizon must be positive, got {horizon}"
        )));
    }
    let mass = space.total_mass();
    if mass == 0.0 {
        return Ok(JumpStream::empty(horizon));
    }
    let count = rng.sample(Poisson::new(horizon * mass).map_err(|e| {
        Error::invalid(format!("invalid Poisson intensity {}: {e}", horizon * mass))
    })?) as usize;
    let picker = WeightedIndex::new(space.weights())
        .map_err(|e| Error::invalid(format!("mark weights: {e}")))?;
    let mut events: Vec<JumpEvent> = (0..count)
        .map(|_| JumpEvent {
            // uniform on (0, T]
            time: horizon * (1.0 - rng.random::<f64>()),
            mark: picker.sample(rng),
        })
        .collect();
    events.sort_by(|a, b| a.time.total_cmp(&b.time));
    // collisions have probability zero; nudge them apart to keep times strict
    for i in 1..events.len() {
        if events[i].time <= events[i - 1].time {
            events[i].time = events[i - 1].time.next_up();
        }
    }
    Ok(JumpStream { events, horizon })
}

/// Values that can be accumulated linearly in a compensated integral.
pub trait NoiseValue: Clone {
    fn add_scaled(&mut self, a: f64, other: &Self);
}

impl NoiseValue for f64 {
    fn add_scaled(&mut self, a: f64, other: &Self) {
        *self += a * other;
    }
}

impl NoiseValue for State {
    fn add_scaled(&mut self, a: f64, other: &Self) {
        self.scaled_add(a, other);
    }
}

const GL_NODES: [f64; 5] = [
    -0.906179845938664,
    -0.538469310105683,
    0.0,
    0.538469310105683,
    0.906179845938664,
];
const GL_WEIGHTS: [f64; 5] = [
    0.236926885056189,
    0.478628670499366,
    0.568888888888889,
    0.478628670499366,
    0.236926885056189,
];
const QUAD_PANELS: usize = 16;

/// `int_0^T sum_y xi(s, y) mu(y) ds` by composite 5-point Gauss-Legendre.
/// Exact for integrands polynomial in `t` up to degree 9 per panel, in
/// particular for constant-in-t integrands.
pub fn compensator_time_integral<V: NoiseValue>(
    space: &MarkSpace,
    horizon: f64,
    zero: V,
    xi: impl Fn(f64, Mark) -> V,
) -> V {
    let mut acc = zero;
    let h = horizon / QUAD_PANELS as f64;
    for panel in 0..QUAD_PANELS {
        let mid = (panel as f64 + 0.5) * h;
        for (node, weight) in GL_NODES.iter().zip(GL_WEIGHTS) {
            let t = mid + 0.5 * h * node;
            for mark in 0..space.len() {
                let mu = space.weight(mark);
                if mu == 0.0 {
                    continue;
                }
                acc.add_scaled(0.5 * h * weight * mu, &xi(t, mark));
            }
        }
    }
    acc
}

/// Compensated stochastic integral
/// `sum_events xi(t_i, y_i) - int_0^T sum_y xi(s, y) mu(y) ds`.
pub fn compensated_integral<V: NoiseValue>(
    space: &MarkSpace,
    stream: &JumpStream,
    zero: V,
    xi: impl Fn(f64, Mark) -> V,
) -> V {
    let mut acc = zero.clone();
    for e in &stream.events {
        acc.add_scaled(1.0, &xi(e.time, e.mark));
    }
    let comp = compensator_time_integral(space, stream.horizon, zero, &xi);
    acc.add_scaled(-1.0, &comp);
    acc
}

type CustomCoefficient = Arc<dyn Fn(f64, &State, Mark) -> State + Send + Sync>;

/// The state-to-jump-amplitude map `F(t, X; y)`.
#[derive(Clone)]
pub enum CoefficientKind {
    /// `F(t, X; y) = d(y)`.
    Additive { amplitudes: Vec<State> },
    /// `F(t, X; y) = c(y) X + d(y)`.
    LinearMultiplicative {
        scales: Vec<f64>,
        amplitudes: Vec<State>,
    },
    /// User-supplied map; outputs are Leray-projected.
    Custom(CustomCoefficient),
}

/// Jump coefficient with its declared Lipschitz and growth constants.
///
/// The declared constants are the contracts of the moment theory:
/// `sum_y mu(y) |F(t,X;y) - F(t,Y;y)|_H^2 <= L |X - Y|_H^2` and
/// `sum_y mu(y) |F(t,X;y)|_H^q <= K_q (1 + |X|_H^q)`. They are auditable on
/// samples via [`NoiseCoefficient::lipschitz_audit`] and
/// [`NoiseCoefficient::growth_audit`].
#[derive(Clone)]
pub struct NoiseCoefficient {
    kind: CoefficientKind,
    /// Declared Lipschitz constant L.
    pub lipschitz: f64,
    /// Declared growth constants as `(q, K_q)` pairs.
    pub growth: Vec<(f64, f64)>,
}

impl NoiseCoefficient {
    /// Purely additive jumps. Amplitudes are Leray-projected on construction.
    pub fn additive(space: &MarkSpace, mut amplitudes: Vec<State>) -> Result<Self> {
        if amplitudes.len() != space.len() {
            return Err(Error::invalid(format!(
                "need one amplitude per mark: {} vs {}",
                amplitudes.len(),
                space.len()
            )));
        }
        for a in &mut amplitudes {
            leray_project_in_place(&mut a.u);
            leray_project_in_place(&mut a.b);
        }
        let growth = declare_growth(space, &[], &amplitudes);
        Ok(NoiseCoefficient {
            kind: CoefficientKind::Additive { amplitudes },
            lipschitz: 0.0,
            growth,
        })
    }

    /// Linear multiplicative jumps `c(y) X + d(y)`.
    pub fn linear_multiplicative(
        space: &MarkSpace,
        scales: Vec<f64>,
        mut amplitudes: Vec<State>,
    ) -> Result<Self> {
        if scales.len() != space.len() || amplitudes.len() != space.len() {
            return Err(Error::invalid(format!(
                "need one scale and amplitude per mark: {} / {} vs {}",
                scales.len(),
                amplitudes.len(),
                space.len()
            )));
        }
        for a in &mut amplitudes {
            leray_project_in_place(&mut a.u);
            leray_project_in_place(&mut a.b);
        }
        let lipschitz: f64 = space
            .weights()
            .iter()
            .zip(&scales)
            .map(|(mu, c)| mu * c * c)
            .sum();
        let growth = declare_growth(space, &scales, &amplitudes);
        Ok(NoiseCoefficient {
            kind: CoefficientKind::LinearMultiplicative { scales, amplitudes },
            lipschitz,
            growth,
        })
    }

    pub fn custom(map: CustomCoefficient, lipschitz: f64, growth: Vec<(f64, f64)>) -> Self {
        NoiseCoefficient {
            kind: CoefficientKind::Custom(map),
            lipschitz,
            growth,
        }
    }

    pub fn kind(&self) -> &CoefficientKind {
        &self.kind
    }

    /// Evaluate `F(t, X; y)`; the output is divergence-free.
    pub fn eval(&self, space: &MarkSpace, t: f64, state: &State, mark: Mark) -> Result<State> {
        if mark >= space.len() {
            return Err(Error::UnknownMark(format!("{mark}")));
        }
        match &self.kind {
            CoefficientKind::Additive { amplitudes } => Ok(amplitudes[mark].clone()),
            CoefficientKind::LinearMultiplicative { scales, amplitudes } => {
                let mut out = amplitudes[mark].clone();
                out.scaled_add(scales[mark], state);
                Ok(out)
            }
            CoefficientKind::Custom(map) => {
                let mut out = map(t, state, mark);
                leray_project_in_place(&mut out.u);
                leray_project_in_place(&mut out.b);
                Ok(out)
            }
        }
    }

    /// `sum_y mu(y) F(t, X; y)`, the drift removed by the compensator.
    pub fn compensator_mean(&self, space: &MarkSpace, t: f64, state: &State) -> Result<State> {
        let mut acc = State::zeros(*state.grid());
        match &self.kind {
            CoefficientKind::Additive { amplitudes } => {
                for (mu, a) in space.weights().iter().zip(amplitudes) {
                    acc.scaled_add(*mu, a);
                }
            }
            CoefficientKind::LinearMultiplicative { scales, amplitudes } => {
                let mut c_mass = 0.0;
                for ((mu, c), a) in space.weights().iter().zip(scales).zip(amplitudes) {
                    c_mass += mu * c;
                    acc.scaled_add(*mu, a);
                }
                acc.scaled_add(c_mass, state);
            }
            CoefficientKind::Custom(_) => {
                for mark in 0..space.len() {
                    let mu = space.weight(mark);
                    if mu == 0.0 {
                        continue;
                    }
                    acc.scaled_add(mu, &self.eval(space, t, state, mark)?);
                }
            }
        }
        Ok(acc)
    }

    /// Largest sampled ratio
    /// `sum_y mu(y)|F(X)-F(Y)|^2 / |X-Y|^2` over the supplied pairs.
    pub fn lipschitz_audit(
        &self,
        space: &MarkSpace,
        t: f64,
        pairs: &[(State, State)],
    ) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for (x, y) in pairs {
            let mut num = 0.0;
            for mark in 0..space.len() {
                let fx = self.eval(space, t, x, mark)?;
                let mut diff = self.eval(space, t, y, mark)?;
                diff.scaled_add(-1.0, &fx);
                num += space.weight(mark) * diff.h_norm_sq();
            }
            let mut d = x.clone();
            d.scaled_add(-1.0, y);
            let den = d.h_norm_sq();
            if den > 0.0 {
                worst = worst.max(num / den);
            }
        }
        Ok(worst)
    }

    /// Largest sampled ratio `sum_y mu(y)|F(X)|^q / (1 + |X|^q)`.
    pub fn growth_audit(&self, space: &MarkSpace, t: f64, q: f64, states: &[State]) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for x in states {
            let mut num = 0.0;
            for mark in 0..space.len() {
                let f = self.eval(space, t, x, mark)?;
                num += space.weight(mark) * f.h_norm().powf(q);
            }
            worst = worst.max(num / (1.0 + x.h_norm().powf(q)));
        }
        Ok(worst)
    }
}

/// Sound declared growth constants for the built-in kinds at q = 2 and 4,
/// from `(c|X| + |d|)^q <= 2^(q-1) (c^q |X|^q + |d|^q)`.
fn declare_growth(space: &MarkSpace, scales: &[f64], amplitudes: &[State]) -> Vec<(f64, f64)> {
    [2.0, 4.0]
        .iter()
        .map(|&q| {
            let mut c_part = 0.0;
            let mut d_part = 0.0;
            for (i, mu) in space.weights().iter().enumerate() {
                let c = scales.get(i).copied().unwrap_or(0.0);
                c_part += mu * c.abs().powf(q);
                d_part += mu * amplitudes[i].h_norm().powf(q);
            }
            (q, 2.0_f64.powf(q - 1.0) * (c_part + d_part).max(1e-300))
        })
        .collect()
}

/// Finite-dimensional Wiener driver: columns `G_j(t, X) = a_j X + b_j`.
#[derive(Clone)]
pub struct WienerDriver {
    scales: Vec<f64>,
    amplitudes: Vec<State>,
    /// Declared spectral fraction `a` in `(0, 2]` of the energy bound.
    pub a: f64,
    /// Declared zeroth-order constant of the energy bound.
    pub lambda: f64,
    /// Declared additive constant of the energy bound.
    pub rho: f64,
}

impl WienerDriver {
    pub fn new(
        scales: Vec<f64>,
        mut amplitudes: Vec<State>,
        a: f64,
        lambda: f64,
        rho: f64,
    ) -> Result<Self> {
        if scales.len() != amplitudes.len() {
            return Err(Error::invalid("one scale per Wiener column"));
        }
        if !(a > 0.0 && a <= 2.0) {
            return Err(Error::invalid(format!(
                "spectral fraction a must lie in (0, 2], got {a}"
            )));
        }
        for amp in &mut amplitudes {
            leray_project_in_place(&mut amp.u);
            leray_project_in_place(&mut amp.b);
        }
        Ok(WienerDriver {
            scales,
            amplitudes,
            a,
            lambda,
            rho,
        })
    }

    pub fn dimension(&self) -> usize {
        self.scales.len()
    }

    /// All columns `G_j(t, X)`.
    pub fn eval(&self, _t: f64, state: &State) -> Vec<State> {
        self.scales
            .iter()
            .zip(&self.amplitudes)
            .map(|(a, b)| {
                let mut col = b.clone();
                col.scaled_add(*a, state);
                col
            })
            .collect()
    }

    /// Squared Hilbert-Schmidt norm `sum_j |G_j(t, X)|_H^2`.
    pub fn hs_norm_sq(&self, t: f64, state: &State) -> f64 {
        self.eval(t, state).iter().map(|c| c.h_norm_sq()).sum()
    }

    /// Both sides of the declared energy bound
    /// `||G||_HS^2 <= (2 - a) ||X||^2 + lambda |X|_H^2 + rho`,
    /// where `||X||^2` is the viscosity-weighted Dirichlet seminorm.
    pub fn energy_bound(&self, t: f64, state: &State, nu1: f64, nu2: f64) -> (f64, f64) {
        let lhs = self.hs_norm_sq(t, state);
        let dir = dirichlet_form(state, state, nu1, nu2).expect("same state");
        let rhs = (2.0 - self.a) * dir + self.lambda * state.h_norm_sq() + self.rho;
        (lhs, rhs)
    }
}

/// i.i.d. `N(0, dt)` increments, one per driver column. `dt = 0` gives zeros;
/// negative `dt` is an error.
pub fn sample_wiener_increments<R: Rng + ?Sized>(
    dimension: usize,
    dt: f64,
    rng: &mut R,
) -> Result<Vec<f64>> {
    if dt < 0.0 || !dt.is_finite() {
        return Err(Error::invalid(format!(
            "time increment must be >= 0, got {dt}"
        )));
    }
    let sd = dt.sqrt();
    Ok((0..dimension)
        .map(|_| sd * rng.sample::<f64, _>(StandardNormal))
        .collect())
}

/// Result of a chi-square goodness-of-fit test of integer counts against a
/// Poisson law.
#[derive(Debug, Clone, Copy)]
pub struct ChiSquareReport {
    pub statistic: f64,
    pub threshold: f64,
    pub dof: usize,
    pub pass: bool,
}

/// Chi-square goodness-of-fit of sampled counts vs `Poisson(lambda)` at the
/// given significance. Bins with expected count below 5 are merged.
pub fn poisson_chi_square(counts: &[usize], lambda: f64, significance: f64) -> ChiSquareReport {
    let n = counts.len() as f64;
    let max_count = counts.iter().copied().max().unwrap_or(0);
    let mut probs = Vec::new();
    let mut p = (-lambda).exp();
    let mut cum = 0.0;
    for k in 0..=max_count {
        if k > 0 {
            p *= lambda / k as f64;
        }
        probs.push(p);
        cum += p;
    }
    probs.push((1.0 - cum).max(0.0)); // tail beyond max_count

    let mut observed = vec![0.0; probs.len()];
    for &c in counts {
        observed[c.min(probs.len() - 1)] += 1.0;
    }

    // merge bins until every expected count is at least 5
    let mut merged: Vec<(f64, f64)> = Vec::new();
    let mut carry = (0.0, 0.0);
    for (p, o) in probs.iter().zip(&observed) {
        carry.0 += p * n;
        carry.1 += o;
        if carry.0 >= 5.0 {
            merged.push(carry);
            carry = (0.0, 0.0);
        }
    }
    if carry.0 > 0.0 {
        if let Some(last) = merged.last_mut() {
            last.0 += carry.0;
            last.1 += carry.1;
        } else {
            merged.push(carry);
        }
    }

    let statistic: f64 = merged.iter().map(|(e, o)| (o - e) * (o - e) / e).sum();
    let dof = merged.len().saturating_sub(1).max(1);
    let threshold = ChiSquared::new(dof as f64)
        .expect("dof > 0")
        .inverse_cdf(1.0 - significance);
    ChiSquareReport {
        statistic,
        threshold,
        dof,
        pass: statistic <= threshold,
    }
}
