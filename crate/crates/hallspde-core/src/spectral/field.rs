//! Three-component spectral vector fields.

use super::grid::WaveGrid;
use crate::error::{Error, Result};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

/// Fourier coefficients of a real 3-component vector field on a [`WaveGrid`].
///
/// Coefficients are stored per component as flat row-major arrays in the
/// grid's k-order. Physical realness corresponds to Hermitian symmetry
/// `coef(-k) = conj(coef(k))`; every operation in this crate preserves it.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralField {
    grid: WaveGrid,
    comps: [Vec<Complex64>; 3],
}

impl SpectralField {
    pub fn zeros(grid: WaveGrid) -> Self {
        let n = grid.mode_count();
        SpectralField {
            grid,
            comps: [vec![Complex64::ZERO; n], vec![Complex64::ZERO; n], vec![Complex64::ZERO; n]],
        }
    }

    pub fn from_components(grid: WaveGrid, comps: [Vec<Complex64>; 3]) -> Result<Self> {
        for c in &comps {
            if c.len() != grid.mode_count() {
                return Err(Error::ShapeMismatch {
                    expected: grid.mode_count(),
                    got: c.len(),
                });
            }
        }
        Ok(SpectralField { grid, comps })
    }

    pub fn grid(&self) -> &WaveGrid {
        &self.grid
    }

    pub fn component(&self, c: usize) -> &[Complex64] {
        &self.comps[c]
    }

    pub fn component_mut(&mut self, c: usize) -> &mut [Complex64] {
        &mut self.comps[c]
    }

    /// Coefficient triple at flat index.
    #[inline]
    pub fn coef(&self, idx: usize) -> [Complex64; 3] {
        [self.comps[0][idx], self.comps[1][idx], self.comps[2][idx]]
    }

    #[inline]
    pub fn set_coef(&mut self, idx: usize, v: [Complex64; 3]) {
        self.comps[0][idx] = v[0];
        self.comps[1][idx] = v[1];
        self.comps[2][idx] = v[2];
    }

    pub fn same_grid(&self, other: &SpectralField) -> Result<()> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch(format!(
                "N={} L={} vs N={} L={}",
                self.grid.resolution(),
                self.grid.box_length(),
                other.grid.resolution(),
                other.grid.box_length()
            )));
        }
        Ok(())
    }

    /// Orthogonal projection onto Hermitian-symmetric coefficients.
    ///
    /// Self-conjugate modes (where `-k` aliases back to `k`, e.g. Nyquist
    /// planes) end up real.
    pub fn symmetrize_hermitian(&mut self) {
        let grid = self.grid;
        for c in 0..3 {
            let comp = &mut self.comps[c];
            for (idx, m) in grid.iter_modes() {
                let midx = grid.flat_index([
                    wrap_neg(m[0], grid.resolution()),
                    wrap_neg(m[1], grid.resolution()),
                    wrap_neg(m[2], grid.resolution()),
                ]);
                if midx < idx {
                    continue;
                }
                let a = comp[idx];
                let b = comp[midx];
                let avg = 0.5 * (a + b.conj());
                comp[idx] = avg;
                comp[midx] = avg.conj();
            }
        }
    }

    /// Max deviation from Hermitian symmetry, relative to the max coefficient.
    pub fn hermitian_defect(&self) -> f64 {
        let grid = self.grid;
        let mut defect: f64 = 0.0;
        let mut scale: f64 = 0.0;
        for c in 0..3 {
            let comp = &self.comps[c];
            for (idx, m) in grid.iter_modes() {
                let midx = grid.flat_index([
                    wrap_neg(m[0], grid.resolution()),
                    wrap_neg(m[1], grid.resolution()),
                    wrap_neg(m[2], grid.resolution()),
                ]);
                defect = defect.max((comp[idx] - comp[midx].conj()).norm());
                scale = scale.max(comp[idx].norm());
            }
        }
        if scale == 0.0 {
            0.0
        } else {
            defect / scale
        }
    }

    pub fn is_finite(&self) -> bool {
        self.comps
            .iter()
            .all(|c| c.iter().all(|z| z.re.is_finite() && z.im.is_finite()))
    }

    /// Squared L2 norm `(L/N)^3 * sum_k |coef(k)|^2`.
    pub fn l2_norm_sq(&self) -> f64 {
        let w = self.grid.norm_weight();
        let s: f64 = self
            .comps
            .iter()
            .map(|c| c.iter().map(|z| z.norm_sqr()).sum::<f64>())
            .sum();
        w * s
    }

    pub fn l2_norm(&self) -> f64 {
        self.l2_norm_sq().sqrt()
    }

    pub fn scale(&mut self, a: f64) {
        for c in &mut self.comps {
            for z in c.iter_mut() {
                *z *= a;
            }
        }
    }

    /// `self += a * other`.
    pub fn scaled_add(&mut self, a: f64, other: &SpectralField) {
        debug_assert_eq!(self.grid, other.grid);
        for c in 0..3 {
            for (z, w) in self.comps[c].iter_mut().zip(&other.comps[c]) {
                *z += a * w;
            }
        }
    }

    /// Gaussian random field supported on `|k| <= band`, Hermitian-symmetric,
    /// with coefficients damped by `(1 + |k|^2)^(-decay/2)`.
    pub fn random_smooth<R: Rng + ?Sized>(
        grid: WaveGrid,
        band: f64,
        decay: f64,
        rng: &mut R,
    ) -> Self {
        let mut f = SpectralField::zeros(grid);
        for c in 0..3 {
            for (idx, _) in grid.iter_modes() {
                let ksq = grid.wavevector_sq(idx);
                if ksq <= band * band {
                    let damp = (1.0 + ksq).powf(-decay / 2.0);
                    let re: f64 = rng.sample(StandardNormal);
                    let im: f64 = rng.sample(StandardNormal);
                    f.comps[c][idx] = Complex64::new(re, im) * damp;
                }
            }
        }
        f.symmetrize_hermitian();
        f
    }

    /// Real single-mode field: `coef(k) = amp`, `coef(-k) = conj(amp)`.
    ///
    /// For self-conjugate modes the amplitude is forced real.
    pub fn single_mode(grid: WaveGrid, mode: [i64; 3], amp: [Complex64; 3]) -> Self {
        let mut f = SpectralField::zeros(grid);
        let idx = grid.flat_index(mode);
        let midx = grid.flat_index([
            wrap_neg(mode[0], grid.resolution()),
            wrap_neg(mode[1], grid.resolution()),
            wrap_neg(mode[2], grid.resolution()),
        ]);
        if idx == midx {
            f.set_coef(idx, [amp[0].re.into(), amp[1].re.into(), amp[2].re.into()]);
        } else {
            f.set_coef(idx, amp);
            f.set_coef(midx, [amp[0].conj(), amp[1].conj(), amp[2].conj()]);
        }
        f
    }
}

/// Negate an integer mode index, wrapping the Nyquist index `-N/2` to itself.
#[inline]
pub(crate) fn wrap_neg(m: i64, n: usize) -> i64 {
    let half = (n / 2) as i64;
    if m == -half {
        -half
    } else {
        -m
    }
}
