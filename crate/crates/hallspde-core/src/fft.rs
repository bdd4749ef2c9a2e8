//! Internal 3-D FFT kernels on flat row-major buffers.
//!
//! Transforms are unnormalized: `forward` computes `F(k) = sum_x f(x) e^{-ikx}`
//! and `inverse` computes `f(x) = sum_k F(k) e^{+ikx}`. Normalization factors
//! are applied by the callers in `spectral::transform`.

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

struct PlanCache {
    forward: HashMap<usize, Arc<dyn Fft<f64>>>,
    inverse: HashMap<usize, Arc<dyn Fft<f64>>>,
    planner: FftPlanner<f64>,
}

fn cache() -> &'static Mutex<PlanCache> {
    static CACHE: OnceLock<Mutex<PlanCache>> = OnceLock::new();
    CACHE.get_or_init(|| {
        Mutex::new(PlanCache {
            forward: HashMap::new(),
            inverse: HashMap::new(),
            planner: FftPlanner::new(),
        })
    })
}

fn plan(len: usize, forward: bool) -> Arc<dyn Fft<f64>> {
    let mut guard = cache().lock().expect("fft plan cache poisoned");
    let guard = &mut *guard;
    let map = if forward {
        &mut guard.forward
    } else {
        &mut guard.inverse
    };
    map.entry(len)
        .or_insert_with(|| {
            if forward {
                guard.planner.plan_fft_forward(len)
            } else {
                guard.planner.plan_fft_inverse(len)
            }
        })
        .clone()
}

/// In-place 3-D transform of a flat `n^3` buffer indexed `(ix*n + iy)*n + iz`.
fn transform3(data: &mut [Complex64], n: usize, forward: bool) {
    debug_assert_eq!(data.len(), n * n * n);
    let fft = plan(n, forward);
    let mut scratch = vec![Complex64::default(); fft.get_inplace_scratch_len()];
    let mut line = vec![Complex64::default(); n];

    // z-axis: contiguous rows
    for row in data.chunks_exact_mut(n) {
        fft.process_with_scratch(row, &mut scratch);
    }
    // y-axis: stride n
    for ix in 0..n {
        for iz in 0..n {
            let base = ix * n * n + iz;
            for iy in 0..n {
                line[iy] = data[base + iy * n];
            }
            fft.process_with_scratch(&mut line, &mut scratch);
            for iy in 0..n {
                data[base + iy * n] = line[iy];
            }
        }
    }
    // x-axis: stride n^2
    for iy in 0..n {
        for iz in 0..n {
            let base = iy * n + iz;
            for ix in 0..n {
                line[ix] = data[base + ix * n * n];
            }
            fft.process_with_scratch(&mut line, &mut scratch);
            for ix in 0..n {
                data[base + ix * n * n] = line[ix];
            }
        }
    }
}

pub fn forward3(data: &mut [Complex64], n: usize) {
    transform3(data, n, true);
}

pub fn inverse3(data: &mut [Complex64], n: usize) {
    transform3(data, n, false);
}

/// Smallest 5-smooth integer `>= 3*band + 1`.
///
/// Pointwise products of fields supported on `|k_j| <= band` are evaluated on
/// a grid of this size: triple products then integrate exactly and quadratic
/// products are alias-free on the retained band.
pub fn padded_size(band: usize) -> usize {
    let mut m = 3 * band + 1;
    loop {
        let mut r = m.max(1);
        for p in [2usize, 3, 5] {
            while r % p == 0 {
                r /= p;
            }
        }
        if r == 1 {
            return m;
        }
        m += 1;
    }
}
