//! Wavevector grid of the periodic box.

use crate::error::{Error, Result};

/// Discrete wavevector grid for a periodic box `[0, L]^3` with `N` modes per
/// axis.
///
/// Integer mode indices run over `[-N/2, N/2 - 1]` per axis (standard DFT
/// layout); physical wavevectors are those indices scaled by `2*pi/L`. With
/// the default box length `2*pi` the wavevectors are the integer triples
/// themselves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveGrid {
    resolution: usize,
    box_length: f64,
}

impl WaveGrid {
    /// Total number of wavevectors (`N^3`).
    pub fn mode_count(&self) -> usize {
        self.resolution.pow(3)
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    pub fn box_length(&self) -> f64 {
        self.box_length
    }

    /// Wavevector spacing `2*pi/L`.
    pub fn spacing(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.box_length
    }

    /// Quadrature weight `(L/N)^3` carried by every physical-space sum, and by
    /// Parseval also by every spectral norm.
    pub fn norm_weight(&self) -> f64 {
        (self.box_length / self.resolution as f64).powi(3)
    }

    /// Signed integer mode index along one axis for array position `i`.
    #[inline]
    pub fn mode_index(&self, i: usize) -> i64 {
        let n = self.resolution as i64;
        let i = i as i64;
        if i < n / 2 {
            i
        } else {
            i - n
        }
    }

    /// Array position along one axis for a signed integer mode index.
    #[inline]
    pub fn array_index(&self, m: i64) -> usize {
        let n = self.resolution as i64;
        (if m < 0 { m + n } else { m }) as usize
    }

    /// Physical wavevector at flat position `idx` (row-major, z fastest).
    #[inline]
    pub fn wavevector(&self, idx: usize) -> [f64; 3] {
        let n = self.resolution;
        let iz = idx % n;
        let iy = (idx / n) % n;
        let ix = idx / (n * n);
        let h = self.spacing();
        [
            self.mode_index(ix) as f64 * h,
            self.mode_index(iy) as f64 * h,
            self.mode_index(iz) as f64 * h,
        ]
    }

    /// `|k|^2` at flat position `idx`.
    #[inline]
    pub fn wavevector_sq(&self, idx: usize) -> f64 {
        let k = self.wavevector(idx);
        k[0] * k[0] + k[1] * k[1] + k[2] * k[2]
    }

    /// Flat position of the integer mode triple `(mx, my, mz)`.
    #[inline]
    pub fn flat_index(&self, m: [i64; 3]) -> usize {
        let n = self.resolution;
        (self.array_index(m[0]) * n + self.array_index(m[1])) * n + self.array_index(m[2])
    }

    /// Largest per-axis integer mode magnitude (`N/2`, the Nyquist index).
    pub fn max_mode(&self) -> usize {
        self.resolution / 2
    }

    /// Iterator over flat index and integer mode triple.
    pub fn iter_modes(&self) -> impl Iterator<Item = (usize, [i64; 3])> + '_ {
        let n = self.resolution;
        (0..self.mode_count()).map(move |idx| {
            let iz = idx % n;
            let iy = (idx / n) % n;
            let ix = idx / (n * n);
            (
                idx,
                [
                    self.mode_index(ix),
                    self.mode_index(iy),
                    self.mode_index(iz),
                ],
            )
        })
    }
}

/// Build a grid with `resolution` modes per axis on a box of length
/// `box_length`.
pub fn make_grid(resolution: usize, box_length: f64) -> Result<WaveGrid> {
    if resolution < 4 {
        return Err(Error::invalid(format!(
            "grid resolution must be at least 4, got {resolution}"
        )));
    }
    if resolution % 2 != 0 {
        return Err(Error::invalid(format!(
            "grid resolution must be even, got {resolution}"
        )));
    }
    if !(box_length > 0.0) || !box_length.is_finite() {
        return Err(Error::invalid(format!(
            "box length must be positive and finite, got {box_length}"
        )));
    }
    Ok(WaveGrid {
        resolution,
        box_length,
    })
}

/// Fourier-ball truncation radius, in physical wavevector units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutoffLevel(f64);

impl CutoffLevel {
    pub fn new(n: f64) -> Result<Self> {
        if !(n > 0.0) || !n.is_finite() {
            return Err(Error::invalid(format!(
                "cutoff level must be positive, got {n}"
            )));
        }
        Ok(CutoffLevel(n))
    }

    pub fn radius(&self) -> f64 {
        self.0
    }

    /// Modes with `|k| <= n` are kept; ties on the shell stay inside the ball.
    #[inline]
    pub fn keeps(&self, k_sq: f64) -> bool {
        k_sq <= self.0 * self.0 * (1.0 + 1e-12)
    }

    /// Whether the cutoff actually removes anything on `grid`.
    pub fn is_effective_on(&self, grid: &WaveGrid) -> bool {
        self.0 < grid.max_mode() as f64 * grid.spacing()
    }
}

/// Sobolev regularity index `s >= 0` for `H^s`-type norms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SobolevIndex(f64);

impl SobolevIndex {
    pub fn new(s: f64) -> Result<Self> {
        if !(s >= 0.0) || !s.is_finite() {
            return Err(Error::invalid(format!(
                "Sobolev index must be non-negative, got {s}"
            )));
        }
        Ok(SobolevIndex(s))
    }

    pub fn value(&self) -> f64 {
        self.0
    }
}
