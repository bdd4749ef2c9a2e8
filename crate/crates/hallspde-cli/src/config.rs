//! Run configuration: TOML sections with flat keys, validated into a fully
//! resolved simulation setup. Unknown keys are rejected; every default is
//! echoed back into the manifest.

use anyhow::{bail, Context, Result};
use hallspde_core::integrator::{JumpNoise, SimConfig};
use hallspde_core::noise::{MarkSpace, NoiseCoefficient, WienerDriver};
use hallspde_core::operators::PhysParams;
use hallspde_core::seeding::shared_rng;
use hallspde_core::spectral::{make_grid, CutoffLevel, SpectralField, State};
use serde::{Deserialize, Serialize};
use std::path::Path;

// shared-stream purposes for config-derived randomness
const PURPOSE_INITIAL: u64 = 1;
const PURPOSE_NOISE: u64 = 2;
const PURPOSE_WIENER: u64 = 3;
const PURPOSE_FORCING: u64 = 4;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    /// Modes per axis (even, >= 4).
    pub size: usize,
    /// Box length; defaults to 2*pi.
    #[serde(default = "default_length")]
    pub length: f64,
}

fn default_length() -> f64 {
    2.0 * std::f64::consts::PI
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PhysicsSection {
    pub nu1: f64,
    pub nu2: f64,
    pub hartmann: f64,
    pub hall: f64,
}

impl Default for PhysicsSection {
    fn default() -> Self {
        PhysicsSection {
            nu1: 1.0,
            nu2: 1.0,
            hartmann: 1.0,
            hall: 1.0,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSection {
    /// Horizon T.
    pub horizon: f64,
    pub dt: f64,
    /// Fourier-ball truncation radius.
    pub cutoff: f64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_ensemble")]
    pub ensemble: usize,
    #[serde(default = "default_q")]
    pub q: Vec<f64>,
    #[serde(default = "default_true")]
    pub nonlinear: bool,
    #[serde(default = "default_guard_factor")]
    pub guard_factor: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub guard_radius: Option<f64>,
    #[serde(default)]
    pub snapshots: bool,
    /// Truncation levels for the study command.
    #[serde(default = "default_levels")]
    pub levels: Vec<f64>,
}

fn default_ensemble() -> usize {
    1
}
fn default_q() -> Vec<f64> {
    vec![2.0, 4.0]
}
fn default_true() -> bool {
    true
}
fn default_guard_factor() -> f64 {
    1e6
}
fn default_levels() -> Vec<f64> {
    vec![2.0, 4.0, 8.0]
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct InitialSection {
    /// zero | smooth | single_mode
    pub kind: String,
    pub amplitude: f64,
    /// Spectral band of the smooth profile.
    pub band: f64,
    /// Mode triple for single_mode.
    pub mode: [i64; 3],
    /// u | b, for single_mode.
    pub component: String,
}

impl Default for InitialSection {
    fn default() -> Self {
        InitialSection {
            kind: "smooth".into(),
            amplitude: 1.0,
            band: 2.0,
            mode: [0, 0, 1],
            component: "u".into(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct NoiseSection {
    /// off | additive | multiplicative
    pub kind: String,
    pub marks: usize,
    /// Total intensity mass, split uniformly over marks.
    pub mass: f64,
    /// Multiplicative scale magnitude.
    pub scale: f64,
    /// Additive amplitude magnitude.
    pub amplitude: f64,
    /// Spectral band of amplitude profiles.
    pub band: f64,
}

impl Default for NoiseSection {
    fn default() -> Self {
        NoiseSection {
            kind: "off".into(),
            marks: 2,
            mass: 10.0,
            scale: 0.05,
            amplitude: 0.01,
            band: 2.0,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct WienerSection {
    /// off | additive | multiplicative
    pub kind: String,
    pub columns: usize,
    pub scale: f64,
    pub amplitude: f64,
    pub band: f64,
}

impl Default for WienerSection {
    fn default() -> Self {
        WienerSection {
            kind: "off".into(),
            columns: 2,
            scale: 0.0,
            amplitude: 0.01,
            band: 2.0,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ForcingSection {
    /// off | smooth
    pub kind: String,
    pub amplitude: f64,
    pub band: f64,
}

impl Default for ForcingSection {
    fn default() -> Self {
        ForcingSection {
            kind: "off".into(),
            amplitude: 0.0,
            band: 2.0,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub grid: GridSection,
    #[serde(default)]
    pub physics: PhysicsSection,
    pub run: RunSection,
    #[serde(default)]
    pub initial: InitialSection,
    #[serde(default)]
    pub noise: NoiseSection,
    #[serde(default)]
    pub wiener: WienerSection,
    #[serde(default)]
    pub forcing: ForcingSection,
}

impl RunConfig {
    /// Canonical serialized form; hashed into the manifest.
    pub fn canonical_toml(&self) -> String {
        toml::to_string_pretty(self).expect("config serializes")
    }

    /// Build the resolved simulation configuration. All randomness used for
    /// construction (initial profile, noise amplitudes) comes from shared
    /// streams of the master seed, so two runs of the same config agree.
    pub fn resolve(&self) -> Result<SimConfig> {
        let grid = make_grid(self.grid.size, self.grid.length)
            .with_context(|| format!("grid.size = {}", self.grid.size))?;
        let params = PhysParams::new(
            self.physics.nu1,
            self.physics.nu2,
            self.physics.hartmann,
            self.physics.hall,
        )
        .context("physics section")?;

        if !(self.run.dt > 0.0) || self.run.dt > self.run.horizon {
            bail!(
                "dt must satisfy 0 < dt <= horizon, got dt = {}, horizon = {}",
                self.run.dt,
                self.run.horizon
            );
        }
        let max_radius = grid.max_mode() as f64 * grid.spacing();
        if self.run.cutoff > max_radius * (1.0 + 1e-12) {
            bail!(
                "cutoff = {} exceeds the largest resolvable radius {} of a size-{} grid",
                self.run.cutoff,
                max_radius,
                self.grid.size
            );
        }
        let level = CutoffLevel::new(self.run.cutoff).context("cutoff")?;
        let seed = self.run.seed;

        let initial = self.build_initial(grid, seed)?;
        let mut cfg = SimConfig::new(
            grid,
            level,
            params,
            self.run.horizon,
            self.run.dt,
            initial,
        );
        cfg.nonlinear = self.run.nonlinear;
        cfg.q_orders = self.run.q.clone();
        cfg.master_seed = seed;
        cfg.ensemble_size = self.run.ensemble;
        cfg.guard_factor = self.run.guard_factor;
        cfg.guard_radius = self.run.guard_radius;
        cfg.jump_noise = self.build_noise(grid, seed)?;
        cfg.wiener = self.build_wiener(grid, seed)?;
        cfg.forcing = self.build_forcing(grid, seed)?;
        cfg.validate().context("resolved configuration")?;
        Ok(cfg)
    }

    fn build_initial(&self, grid: hallspde_core::WaveGrid, seed: u64) -> Result<State> {
        let s = &self.initial;
        match s.kind.as_str() {
            "zero" => Ok(State::zeros(grid)),
            "smooth" => {
                let mut rng = shared_rng(seed, PURPOSE_INITIAL);
                let mut state = State::random_div_free(grid, s.band, 2.0, &mut rng);
                let norm = state.h_norm();
                if norm > 0.0 {
                    state.scale(s.amplitude / norm);
                }
                Ok(state)
            }
            "single_mode" => {
                let amp = [s.amplitude.into(), 0.0.into(), 0.0.into()];
                let field = SpectralField::single_mode(grid, s.mode, amp);
                let zero = SpectralField::zeros(grid);
                let state = match s.component.as_str() {
                    "u" => State::new(field, zero)?,
                    "b" => State::new(zero, field)?,
                    other => bail!("initial.component must be 'u' or 'b', got '{other}'"),
                };
                Ok(state)
            }
            other => bail!("initial.kind must be zero|smooth|single_mode, got '{other}'"),
        }
    }

    fn build_noise(&self, grid: hallspde_core::WaveGrid, seed: u64) -> Result<Option<JumpNoise>> {
        let s = &self.noise;
        if s.kind == "off" {
            return Ok(None);
        }
        if s.marks == 0 {
            bail!("noise.marks must be positive when noise is on");
        }
        let weights = vec![s.mass / s.marks as f64; s.marks];
        let space = MarkSpace::new(weights)?;
        let mut rng = shared_rng(seed, PURPOSE_NOISE);
        let amplitudes: Vec<State> = (0..s.marks)
            .map(|mark| {
                let mut amp = State::random_div_free(grid, s.band, 2.0, &mut rng);
                let norm = amp.h_norm();
                if norm > 0.0 {
                    // distinguishable per-mark amplitudes with decaying sizes
                    let sign = if mark % 2 == 0 { 1.0 } else { -1.0 };
                    amp.scale(sign * s.amplitude / (norm * (1.0 + mark as f64)));
                }
                amp
            })
            .collect();
        let coefficient = match s.kind.as_str() {
            "additive" => NoiseCoefficient::additive(&space, amplitudes)?,
            "multiplicative" => {
                let scales: Vec<f64> = (0..s.marks)
                    .map(|mark| {
                        let sign = if mark % 2 == 0 { 1.0 } else { -1.0 };
                        sign * s.scale / (1.0 + mark as f64)
                    })
                    .collect();
                NoiseCoefficient::linear_multiplicative(&space, scales, amplitudes)?
            }
            other => bail!("noise.kind must be off|additive|multiplicative, got '{other}'"),
        };
        Ok(Some(JumpNoise { space, coefficient }))
    }

    fn build_wiener(&self, grid: hallspde_core::WaveGrid, seed: u64) -> Result<Option<WienerDriver>> {
        let s = &self.wiener;
        if s.kind == "off" {
            return Ok(None);
        }
        let mut rng = shared_rng(seed, PURPOSE_WIENER);
        let mut scales = vec![0.0; s.columns];
        let mut amplitudes = Vec::with_capacity(s.columns);
        for j in 0..s.columns {
            let mut amp = State::random_div_free(grid, s.band, 2.0, &mut rng);
            let norm = amp.h_norm();
            match s.kind.as_str() {
                "additive" => {
                    if norm > 0.0 {
                        amp.scale(s.amplitude / (norm * (1.0 + j as f64)));
                    }
                }
                "multiplicative" => {
                    amp.scale(0.0);
                    scales[j] = s.scale / (1.0 + j as f64);
                }
                other => bail!("wiener.kind must be off|additive|multiplicative, got '{other}'"),
            }
            amplitudes.push(amp);
        }
        // declared energy-bound constants for the built-in kinds
        let lambda: f64 = scales.iter().map(|a| a * a).sum();
        let rho: f64 = amplitudes.iter().map(|b| b.h_norm_sq()).sum();
        Ok(Some(WienerDriver::new(
            scales,
            amplitudes,
            2.0,
            lambda * (1.0 + 1e-12),
            rho * (1.0 + 1e-12) + 1e-300,
        )?))
    }

    fn build_forcing(&self, grid: hallspde_core::WaveGrid, seed: u64) -> Result<Option<State>> {
        let s = &self.forcing;
        match s.kind.as_str() {
            "off" => Ok(None),
            "smooth" => {
                let mut rng = shared_rng(seed, PURPOSE_FORCING);
                let mut f = State::random_div_free(grid, s.band, 2.0, &mut rng);
                let norm = f.h_norm();
                if norm > 0.0 {
                    f.scale(s.amplitude / norm);
                }
                Ok(Some(f))
            }
            other => bail!("forcing.kind must be off|smooth, got '{other}'"),
        }
    }
}

/// Parse and fully validate a config file.
pub fn parse_config(path: &Path) -> Result<RunConfig> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading config {}", path.display()))?;
    let cfg: RunConfig = toml::from_str(&text).context("parsing config")?;
    // resolve eagerly so key errors surface at parse time
    cfg.resolve()?;
    Ok(cfg)
}
