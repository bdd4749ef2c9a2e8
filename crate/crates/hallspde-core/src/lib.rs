//! Pseudo-spectral Hall-MHD on a periodic box, driven by compensated
//! Poisson (and optionally Wiener) forcing.
//!
//! The crate simulates the spectrally truncated stochastic Hall-MHD system
//! and ships the verification machinery for its structural identities:
//! energy orthogonality of the nonlinear terms, projection calculus,
//! Poisson-measure laws, moment estimates, and cadlag path utilities.
//!
//! All fields live on a periodic box `[0, L]^3` sampled on an `N^3` grid;
//! states are pairs `(u, B)` of divergence-free vector fields stored as
//! Fourier coefficients.

pub mod diagnostics;
pub mod error;
mod fft;
pub mod integrator;
pub mod noise;
pub mod operators;
pub mod seeding;
pub mod snapshot;
pub mod spectral;
pub mod verify;

pub use error::{Error, Result};
pub use integrator::{run_ensemble, run_ensemble_map, simulate, JumpNoise, SimConfig, Trajectory};
pub use noise::{JumpStream, Mark, MarkSpace, NoiseCoefficient, WienerDriver};
pub use operators::PhysParams;
pub use spectral::{CutoffLevel, SobolevIndex, SpectralField, State, WaveGrid};
