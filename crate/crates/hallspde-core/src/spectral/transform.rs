//! Transforms between spectral coefficients and physical samples.
//!
//! Unitary convention: both directions carry the factor `N^(-3/2)`, so the
//! discrete Parseval identity `sum_x |f(x)|^2 = sum_k |coef(k)|^2` holds
//! without extra constants, and the quadrature L2 norm
//! `(L/N)^3 sum_x |f(x)|^2` equals the spectral L2 norm
//! `(L/N)^3 sum_k |coef(k)|^2` exactly.
//!
//! Pointwise products are never formed on the state grid. They are evaluated
//! on a zero-padded grid large enough that quadratic products are alias-free
//! on the retained band and cubic quadratures are exact (see
//! [`crate::fft::padded_size`]); this keeps the cancellation identities of
//! the nonlinear terms at round-off level.

use super::field::SpectralField;
use super::grid::WaveGrid;
use crate::error::{Error, Result};
use crate::fft;
use num_complex::Complex64;

/// Physical samples of a field: `N^3` triples in row-major grid order
/// (x slow, z fast), sample points `x_j = j * L / N`.
pub fn to_physical(field: &SpectralField) -> Vec<[f64; 3]> {
    let grid = *field.grid();
    let n = grid.resolution();
    let count = grid.mode_count();
    let scale = 1.0 / (count as f64).sqrt();
    let mut out = vec![[0.0; 3]; count];
    let mut buf = vec![Complex64::ZERO; count];
    for c in 0..3 {
        buf.copy_from_slice(field.component(c));
        fft::inverse3(&mut buf, n);
        for (o, z) in out.iter_mut().zip(&buf) {
            o[c] = z.re * scale;
        }
    }
    out
}

/// Spectral coefficients of physical samples (shape `N^3 x 3`).
pub fn to_spectral(samples: &[[f64; 3]], grid: WaveGrid) -> Result<SpectralField> {
    if samples.len() != grid.mode_count() {
        return Err(Error::ShapeMismatch {
            expected: grid.mode_count(),
            got: samples.len(),
        });
    }
    let n = grid.resolution();
    let count = grid.mode_count();
    let scale = 1.0 / (count as f64).sqrt();
    let mut f = SpectralField::zeros(grid);
    let mut buf = vec![Complex64::ZERO; count];
    for c in 0..3 {
        for (z, s) in buf.iter_mut().zip(samples) {
            *z = Complex64::new(s[c], 0.0);
        }
        fft::forward3(&mut buf, n);
        for (o, z) in f.component_mut(c).iter_mut().zip(&buf) {
            *o = z * scale;
        }
    }
    Ok(f)
}

/// Quadrature L2 norm of physical samples, `sqrt((L/N)^3 sum |f|^2)`.
pub fn physical_l2_norm(samples: &[[f64; 3]], grid: &WaveGrid) -> f64 {
    let s: f64 = samples
        .iter()
        .map(|v| v[0] * v[0] + v[1] * v[1] + v[2] * v[2])
        .sum();
    (grid.norm_weight() * s).sqrt()
}

/// Dealiased pointwise-product workspace for fields band-limited to per-axis
/// integer modes `|m_j| <= band`.
pub(crate) struct Padded {
    src: WaveGrid,
    m: usize,
    /// Band modes as `(source index, padded index, wavevector)`, computed once.
    modes: Vec<(usize, usize, [f64; 3])>,
}

impl Padded {
    /// `band` is the largest per-axis integer mode magnitude of the inputs;
    /// for full-grid fields that is `N/2`.
    pub fn new(src: WaveGrid, band: usize) -> Self {
        let m = fft::padded_size(band);
        let band = band as i64;
        let half = |v: i64| -> usize { (if v < 0 { v + m as i64 } else { v }) as usize };
        let modes = src
            .iter_modes()
            .filter(|(_, mode)| mode.iter().all(|c| c.abs() <= band))
            .map(|(idx, mode)| {
                let pidx = (half(mode[0]) * m + half(mode[1])) * m + half(mode[2]);
                (idx, pidx, src.wavevector(idx))
            })
            .collect();
        Padded { src, m, modes }
    }

    pub fn point_count(&self) -> usize {
        self.m * self.m * self.m
    }

    fn embed(&self, spec: &[Complex64], symbol: impl Fn([f64; 3]) -> Complex64) -> Vec<Complex64> {
        let mut out = vec![Complex64::ZERO; self.point_count()];
        for &(idx, pidx, k) in &self.modes {
            let z = spec[idx];
            if z == Complex64::ZERO {
                continue;
            }
            out[pidx] = z * symbol(k);
        }
        out
    }

    fn inverse_to_real(&self, mut buf: Vec<Complex64>) -> Vec<f64> {
        fft::inverse3(&mut buf, self.m);
        let scale = 1.0 / (self.src.mode_count() as f64).sqrt();
        buf.iter().map(|z| z.re * scale).collect()
    }

    /// Physical samples of one spectral component on the padded grid.
    pub fn phys(&self, spec: &[Complex64]) -> Vec<f64> {
        self.inverse_to_real(self.embed(spec, |_| Complex64::ONE))
    }

    /// Physical samples of the `axis`-derivative of one component.
    pub fn phys_deriv(&self, spec: &[Complex64], axis: usize) -> Vec<f64> {
        self.inverse_to_real(self.embed(spec, |k| Complex64::new(0.0, k[axis])))
    }

    /// Exact coefficients (on the source grid, restricted to the band) of a
    /// pointwise product formed on the padded grid.
    pub fn product_to_spectral(&self, phys: &[f64]) -> Vec<Complex64> {
        let mut buf: Vec<Complex64> = phys.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        fft::forward3(&mut buf, self.m);
        let scale = (self.src.mode_count() as f64).sqrt() / self.point_count() as f64;
        let mut out = vec![Complex64::ZERO; self.src.mode_count()];
        for &(idx, pidx, _) in &self.modes {
            out[idx] = buf[pidx] * scale;
        }
        out
    }

    /// Exact quadrature `(L/M)^3 sum_x f(x)` of padded-grid samples.
    pub fn integrate(&self, phys: &[f64]) -> f64 {
        let h = self.src.box_length() / self.m as f64;
        h.powi(3) * phys.iter().sum::<f64>()
    }
}
