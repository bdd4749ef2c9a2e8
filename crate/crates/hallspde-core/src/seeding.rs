//! Counter-based reproducible seeding.
//!
//! Every trajectory owns independent ChaCha streams derived from
//! `(master_seed, trajectory_index, channel)`, so ensembles are bitwise
//! reproducible regardless of execution order, and jump sampling never
//! shares randomness with Wiener sampling.

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

const CHANNELS: u64 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Channel {
    Jumps = 0,
    Wiener = 1,
    Initial = 2,
    Scratch = 3,
}

/// Stream bundle for one trajectory.
#[derive(Debug, Clone, Copy)]
pub struct TrajectoryRng {
    master_seed: u64,
    index: u64,
}

impl TrajectoryRng {
    pub fn new(master_seed: u64, trajectory_index: u64) -> Self {
        TrajectoryRng {
            master_seed,
            index: trajectory_index,
        }
    }

    pub fn channel(&self, channel: Channel) -> ChaCha12Rng {
        let mut rng = ChaCha12Rng::seed_from_u64(self.master_seed);
        rng.set_stream(self.index.wrapping_mul(CHANNELS) + channel as u64);
        rng
    }
}

/// Stream shared by all trajectories of one run (initial data, coefficient
/// construction). Stream ids live far above any trajectory channel.
pub fn shared_rng(master_seed: u64, purpose: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(master_seed);
    rng.set_stream(u64::MAX - purpose);
    rng
}
