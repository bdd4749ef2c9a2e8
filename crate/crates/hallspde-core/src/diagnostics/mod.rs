//! Empirical verification of the moment and tightness machinery: the
//! stochastic Gronwall bound, ensemble moment estimates, the Taylor
//! remainder inequality, the Aldous increment regression, and cadlag path
//! utilities (modulus and Skorokhod distance).

mod aldous;
mod cadlag;
mod gronwall;
mod moments;
mod taylor;

pub use aldous::{aldous_fit, AldousReport, StoppingRule};
pub use cadlag::{skorokhod_distance, skorokhod_modulus, time_change_cost, CadlagPath};
pub use gronwall::{gronwall_bound, gronwall_check, GronwallInput};
pub use moments::{moment_report, MomentEstimate, MomentReport};
pub use taylor::{taylor_check, TAYLOR_C2, TAYLOR_C4};
