//! Leray and Fourier-ball projections.

use super::field::SpectralField;
use super::grid::CutoffLevel;

/// Leray projection onto divergence-free fields.
///
/// Mode-wise `coef(k) -> coef(k) - k (k.coef(k)) / |k|^2`; the `k = 0` mode is
/// left unchanged. Idempotent and self-adjoint in L2; annihilates gradients.
pub fn leray_project(field: &SpectralField) -> SpectralField {
    let mut out = field.clone();
    leray_project_in_place(&mut out);
    out
}

pub fn leray_project_in_place(field: &mut SpectralField) {
    let grid = *field.grid();
    for idx in 0..grid.mode_count() {
        let ksq = grid.wavevector_sq(idx);
        if ksq == 0.0 {
            continue;
        }
        let k = grid.wavevector(idx);
        let v = field.coef(idx);
        let kd = k[0] * v[0] + k[1] * v[1] + k[2] * v[2];
        let f = kd / ksq;
        field.set_coef(idx, [v[0] - k[0] * f, v[1] - k[1] * f, v[2] - k[2] * f]);
    }
}

/// Fourier-ball cutoff: zero all coefficients with `|k| > n`.
///
/// An orthogonal projection in every `H^s`; norms never increase.
pub fn cutoff(field: &SpectralField, level: CutoffLevel) -> SpectralField {
    let mut out = field.clone();
    cutoff_in_place(&mut out, level);
    out
}

pub fn cutoff_in_place(field: &mut SpectralField, level: CutoffLevel) {
    let grid = *field.grid();
    for idx in 0..grid.mode_count() {
        if !level.keeps(grid.wavevector_sq(idx)) {
            field.set_coef(idx, [num_complex::Complex64::ZERO; 3]);
        }
    }
}
