//! Time-stepping of the truncated stochastic evolution and ensemble
//! orchestration.
//!
//! Scheme per step `[t, t + dt]`: the diffusion is treated by an exact
//! integrating factor `exp(-nu |k|^2 h)` per mode, every other drift term
//! (nonlinear maps, jump compensator, deterministic forcing) by explicit
//! Euler at the left endpoint, the optional Wiener term by Euler-Maruyama,
//! and jumps are applied at their exact sampled times, subdividing the step.
//! Every stored state lies in the cutoff ball with bit-zero coefficients
//! outside, and trajectories are bitwise deterministic given
//! `(master_seed, trajectory_index)`.

use crate::error::{Error, Result};
use crate::noise::{
    sample_jump_stream, sample_wiener_increments, JumpStream, Mark, MarkSpace, NoiseCoefficient,
    WienerDriver,
};
use crate::operators::{nonlinear_rhs, PhysParams};
use crate::seeding::{Channel, TrajectoryRng};
use crate::spectral::{
    dirichlet_form, leray_project_in_place, project_state_in_place, CutoffLevel,
    State, WaveGrid,
};
use rayon::prelude::*;

/// Jump forcing: mark space plus coefficient.
#[derive(Clone)]
pub struct JumpNoise {
    pub space: MarkSpace,
    pub coefficient: NoiseCoefficient,
}

/// Fully resolved simulation configuration.
#[derive(Clone)]
pub struct SimConfig {
    pub grid: WaveGrid,
    pub level: CutoffLevel,
    pub params: PhysParams,
    /// Horizon T.
    pub horizon: f64,
    /// Step size.
    pub dt: f64,
    /// Initial state; projected onto the divergence-free ball at start.
    pub initial: State,
    pub jump_noise: Option<JumpNoise>,
    pub wiener: Option<WienerDriver>,
    /// Steady deterministic forcing, projected at start.
    pub forcing: Option<State>,
    /// Disable the nonlinear maps (pure diffusion + noise).
    pub nonlinear: bool,
    /// Moment orders for reports.
    pub q_orders: Vec<f64>,
    pub master_seed: u64,
    pub ensemble_size: usize,
    /// Blow-up guard: radius defaults to `guard_factor * |X0|_H`
    /// (or `guard_factor` itself for a zero initial state).
    pub guard_factor: f64,
    /// Explicit guard radius override.
    pub guard_radius: Option<f64>,
}

impl SimConfig {
    /// Minimal configuration: no noise, nonlinear terms on, single trajectory.
    pub fn new(
        grid: WaveGrid,
        level: CutoffLevel,
        params: PhysParams,
        horizon: f64,
        dt: f64,
        initial: State,
    ) -> Self {
        SimConfig {
            grid,
            level,
            params,
            horizon,
            dt,
            initial,
            jump_noise: None,
            wiener: None,
            forcing: None,
            nonlinear: true,
            q_orders: vec![2.0, 4.0],
            master_seed: 0,
            ensemble_size: 1,
            guard_factor: 1e6,
            guard_radius: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0) || self.dt > self.horizon {
            return Err(Error::invalid(format!(
                "dt must satisfy 0 < dt <= T, got dt={} T={}",
                self.dt, self.horizon
            )));
        }
        let max_radius = self.grid.max_mode() as f64 * self.grid.spacing();
        if self.level.radius() > max_radius * (1.0 + 1e-12) {
            return Err(Error::invalid(format!(
                "cutoff {} exceeds the grid's largest resolvable radius {max_radius}",
                self.level.radius()
            )));
        }
        self.initial.u.same_grid(&self.initial.b)?;
        if self.initial.grid() != &self.grid {
            return Err(Error::GridMismatch("initial state grid".into()));
        }
        if let Some(noise) = &self.jump_noise {
            // coefficient and space must agree on the number of marks
            let probe = State::zeros(self.grid);
            if !noise.space.is_empty() {
                noise.coefficient.eval(&noise.space, 0.0, &probe, 0)?;
            }
        }
        for q in &self.q_orders {
            if *q < 2.0 {
                return Err(Error::invalid(format!("moment orders must be >= 2, got {q}")));
            }
        }
        Ok(())
    }

    fn resolved_guard_radius(&self, initial_norm: f64) -> f64 {
        self.guard_radius
            .unwrap_or_else(|| self.guard_factor * if initial_norm > 0.0 { initial_norm } else { 1.0 })
    }
}

/// One sampled point of a trajectory.
#[derive(Debug, Clone)]
pub struct Sample {
    pub time: f64,
    /// Cadlag (post-jump) value.
    pub state: State,
    /// Pre-jump value, present only at jump times.
    pub left: Option<State>,
    /// Mark of the jump applied at this time, if any.
    pub jump: Option<Mark>,
}

#[derive(Debug, Clone, Copy)]
pub struct GuardHit {
    pub time: f64,
    pub radius: f64,
}

/// Cadlag record of one simulated path: states at step boundaries and jump
/// times, with left limits at jumps.
#[derive(Clone)]
pub struct Trajectory {
    pub samples: Vec<Sample>,
    pub horizon: f64,
    pub guard: Option<GuardHit>,
    /// Steps on which the advective CFL advisory fired.
    pub cfl_warnings: usize,
    pub stream: JumpStream,
}

impl Trajectory {
    /// Cadlag evaluation: the stored state at the last sample time `<= t`.
    pub fn state_at(&self, t: f64) -> &State {
        let pos = self.samples.partition_point(|s| s.time <= t);
        let idx = pos.saturating_sub(1);
        &self.samples[idx].state
    }

    pub fn final_state(&self) -> &State {
        &self.samples.last().expect("non-empty trajectory").state
    }

    /// Per-sample norms used by the energy CSV and the moment estimators.
    pub fn norm_series(&self, params: &PhysParams) -> TrajectoryNorms {
        let samples = self
            .samples
            .iter()
            .map(|s| {
                let h_sq = s.state.h_norm_sq();
                let dir_sq =
                    dirichlet_form(&s.state, &s.state, params.nu1, params.nu2).expect("same grid");
                let (left_h_sq, left_dir_sq) = match &s.left {
                    Some(l) => (
                        l.h_norm_sq(),
                        dirichlet_form(l, l, params.nu1, params.nu2).expect("same grid"),
                    ),
                    None => (h_sq, dir_sq),
                };
                NormSample {
                    time: s.time,
                    h_sq,
                    dir_sq,
                    left_h_sq,
                    left_dir_sq,
                    jump: s.jump.is_some(),
                }
            })
            .collect();
        TrajectoryNorms {
            samples,
            horizon: self.horizon,
            guard_hit: self.guard.is_some(),
        }
    }
}

/// Norm time series of one trajectory: `(|X|_H^2, ||X||^2, ||X||_V^2)` with
/// left-limit values at jumps.
#[derive(Debug, Clone)]
pub struct TrajectoryNorms {
    pub samples: Vec<NormSample>,
    pub horizon: f64,
    pub guard_hit: bool,
}

#[derive(Debug, Clone, Copy)]
pub struct NormSample {
    pub time: f64,
    pub h_sq: f64,
    pub dir_sq: f64,
    pub left_h_sq: f64,
    pub left_dir_sq: f64,
    pub jump: bool,
}

impl NormSample {
    pub fn v_sq(&self) -> f64 {
        self.h_sq + self.dir_sq
    }
}

/// Energy series of a trajectory: `(t, |X|_H^2, ||X||^2, ||X||_V^2, jump)`.
pub fn energy_series(trajectory: &Trajectory, params: &PhysParams) -> Vec<NormSample> {
    trajectory.norm_series(params).samples
}

struct Stepper<'c> {
    config: &'c SimConfig,
    forcing: Option<State>,
    wiener_rng: rand_chacha::ChaCha12Rng,
}

impl<'c> Stepper<'c> {
    /// Advance over `[t, t + h]` with no jumps inside: integrating factor for
    /// the diffusion, left-endpoint Euler for the other drift terms,
    /// Euler-Maruyama for the Wiener term.
    fn substep(&mut self, x: &mut State, t: f64, h: f64) -> Result<()> {
        if h <= 0.0 {
            return Ok(());
        }
        let cfg = self.config;
        let mut drift = if cfg.nonlinear {
            nonlinear_rhs(x, &cfg.params, cfg.level)?
        } else {
            State::zeros(cfg.grid)
        };
        if let Some(noise) = &cfg.jump_noise {
            let mut comp = noise.coefficient.compensator_mean(&noise.space, t, x)?;
            project_state_in_place(&mut comp, cfg.level);
            drift.scaled_add(-1.0, &comp);
        }
        if let Some(f) = &self.forcing {
            drift.scaled_add(1.0, f);
        }
        let mut wiener_term: Option<State> = None;
        if let Some(driver) = &cfg.wiener {
            let incs = sample_wiener_increments(driver.dimension(), h, &mut self.wiener_rng)?;
            let cols = driver.eval(t, x);
            let mut acc = State::zeros(cfg.grid);
            for (dw, col) in incs.iter().zip(&cols) {
                acc.scaled_add(*dw, col);
            }
            project_state_in_place(&mut acc, cfg.level);
            wiener_term = Some(acc);
        }
        x.scaled_add(h, &drift);
        if let Some(wt) = &wiener_term {
            x.scaled_add(1.0, wt);
        }
        // exact diffusion decay
        let grid = cfg.grid;
        for (nu, field) in [(cfg.params.nu1, &mut x.u), (cfg.params.nu2, &mut x.b)] {
            for idx in 0..grid.mode_count() {
                let factor = (-nu * grid.wavevector_sq(idx) * h).exp();
                let c = field.coef(idx);
                field.set_coef(idx, [factor * c[0], factor * c[1], factor * c[2]]);
            }
        }
        Ok(())
    }

    /// Upper bound for `max_x |u(x)|` from the coefficient l1 norm.
    fn velocity_sup_bound(x: &State) -> f64 {
        let grid = x.grid();
        let scale = 1.0 / (grid.mode_count() as f64).sqrt();
        let mut sq = 0.0;
        for c in 0..3 {
            let l1: f64 = x.u.component(c).iter().map(|z| z.norm()).sum();
            sq += l1 * l1;
        }
        sq.sqrt() * scale
    }
}

/// Simulate one trajectory. Deterministic given
/// `(config.master_seed, trajectory_index)`.
pub fn simulate(config: &SimConfig, trajectory_index: u64) -> Result<Trajectory> {
    config.validate()?;
    let rngs = TrajectoryRng::new(config.master_seed, trajectory_index);

    let stream = match &config.jump_noise {
        Some(noise) => {
            let mut jump_rng = rngs.channel(Channel::Jumps);
            sample_jump_stream(&noise.space, config.horizon, &mut jump_rng)?
        }
        None => JumpStream::empty(config.horizon),
    };

    let mut x = config.initial.clone();
    leray_project_in_place(&mut x.u);
    leray_project_in_place(&mut x.b);
    project_state_in_place(&mut x, config.level);
    let guard_radius = config.resolved_guard_radius(x.h_norm());

    let forcing = config.forcing.as_ref().map(|f| {
        let mut f = f.clone();
        leray_project_in_place(&mut f.u);
        leray_project_in_place(&mut f.b);
        project_state_in_place(&mut f, config.level);
        f
    });

    let mut stepper = Stepper {
        config,
        forcing,
        wiener_rng: rngs.channel(Channel::Wiener),
    };

    let steps = (config.horizon / config.dt).ceil() as usize;
    let k_max = config
        .level
        .radius()
        .min(config.grid.max_mode() as f64 * config.grid.spacing());

    let mut samples = Vec::with_capacity(steps + stream.events.len() + 1);
    samples.push(Sample {
        time: 0.0,
        state: x.clone(),
        left: None,
        jump: None,
    });
    let mut guard = None;
    let mut cfl_warnings = 0usize;
    let mut event_cursor = 0usize;
    let mut t = 0.0;

    'outer: for step in 1..=steps {
        let t_next = (step as f64 * config.dt).min(config.horizon);

        // advective CFL advisory at the step start
        if config.nonlinear && config.dt * k_max * Stepper::velocity_sup_bound(&x) > 0.5 {
            cfl_warnings += 1;
        }

        while event_cursor < stream.events.len() && stream.events[event_cursor].time <= t_next {
            let event = stream.events[event_cursor];
            event_cursor += 1;
            stepper.substep(&mut x, t, event.time - t)?;
            t = event.time;
            let left = x.clone();
            let noise = config.jump_noise.as_ref().expect("events imply noise");
            let mut amp = noise.coefficient.eval(&noise.space, event.time, &left, event.mark)?;
            project_state_in_place(&mut amp, config.level);
            x.scaled_add(1.0, &amp);
            samples.push(Sample {
                time: event.time,
                state: x.clone(),
                left: Some(left),
                jump: Some(event.mark),
            });
            if x.h_norm() > guard_radius {
                guard = Some(GuardHit {
                    time: event.time,
                    radius: guard_radius,
                });
                break 'outer;
            }
        }

        stepper.substep(&mut x, t, t_next - t)?;
        t = t_next;
        // step-end cleanup: both projections are idempotent no-ops up to
        // round-off for states produced by the scheme
        leray_project_in_place(&mut x.u);
        leray_project_in_place(&mut x.b);
        project_state_in_place(&mut x, config.level);

        if samples.last().map(|s| s.time < t).unwrap_or(true) {
            samples.push(Sample {
                time: t,
                state: x.clone(),
                left: None,
                jump: None,
            });
        }
        if !x.is_finite() || x.h_norm() > guard_radius {
            guard = Some(GuardHit {
                time: t,
                radius: guard_radius,
            });
            break;
        }
    }

    Ok(Trajectory {
        samples,
        horizon: config.horizon,
        guard,
        cfl_warnings,
        stream,
    })
}

/// Simulate the configured ensemble and keep full trajectories.
///
/// Heavy at fine grids; prefer [`run_ensemble_map`] with a reducing closure
/// for large ensembles.
pub fn run_ensemble(config: &SimConfig) -> Result<Vec<Trajectory>> {
    run_ensemble_map(config, |_, t| t.clone())
}

/// Simulate the ensemble in parallel, reducing each trajectory to `R` as soon
/// as it finishes. Results are ordered by trajectory index, so reductions are
/// identical whether run serially or in parallel.
pub fn run_ensemble_map<R: Send>(
    config: &SimConfig,
    reduce: impl Fn(u64, &Trajectory) -> R + Sync,
) -> Result<Vec<R>> {
    config.validate()?;
    (0..config.ensemble_size as u64)
        .into_par_iter()
        .map(|idx| simulate(config, idx).map(|t| reduce(idx, &t)))
        .collect()
}
