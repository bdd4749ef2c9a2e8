//! Shared fixtures for the benchmark targets.

use hallspde_core::seeding::shared_rng;
use hallspde_core::spectral::{make_grid, project_state, CutoffLevel, State, WaveGrid};

pub fn grid(n: usize) -> WaveGrid {
    make_grid(n, 2.0 * std::f64::consts::PI).expect("valid grid")
}

pub fn ball_state(g: WaveGrid, level: f64, seed: u64) -> State {
    let mut rng = shared_rng(seed, 900);
    project_state(
        &State::random_div_free(g, level, 1.0, &mut rng),
        CutoffLevel::new(level).expect("valid level"),
    )
}
