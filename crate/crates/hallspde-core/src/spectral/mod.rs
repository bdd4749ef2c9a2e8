//! Discrete Fourier representation of the divergence-free function spaces:
//! grids, fields, transforms, projections, and Sobolev-type norms.
//!
//! The continuous theory lives on the whole space; this crate works on the
//! periodic box `[0, L]^3` as its desk-scale surrogate. Every operator below
//! is domain-generic; only the mode set is discrete.

mod calculus;
mod field;
mod grid;
mod norms;
mod project;
mod state;
mod transform;

pub use calculus::{cross, curl, divergence, max_divergence};
pub use field::SpectralField;
pub use grid::{make_grid, CutoffLevel, SobolevIndex, WaveGrid};
pub use norms::{sobolev_norm, weighted_norm_sq};
pub use project::{cutoff, cutoff_in_place, leray_project, leray_project_in_place};
pub use state::{
    check_embedding_bound, dirichlet_form, inner_h, project_state, project_state_in_place,
    v_norm_sq, State,
};
pub use transform::{physical_l2_norm, to_physical, to_spectral};

pub(crate) use transform::Padded;
