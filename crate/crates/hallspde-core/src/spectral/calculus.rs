//! Spectral differential calculus: curl, divergence, pointwise cross product.

use super::field::SpectralField;
use super::transform::Padded;
use crate::error::Result;
use num_complex::Complex64;

/// `curl f` computed mode-wise as `ik x coef(k)`.
pub fn curl(field: &SpectralField) -> SpectralField {
    let grid = *field.grid();
    let mut out = SpectralField::zeros(grid);
    for idx in 0..grid.mode_count() {
        let k = grid.wavevector(idx);
        let v = field.coef(idx);
        let i = Complex64::new(0.0, 1.0);
        out.set_coef(
            idx,
            [
                i * (k[1] * v[2] - k[2] * v[1]),
                i * (k[2] * v[0] - k[0] * v[2]),
                i * (k[0] * v[1] - k[1] * v[0]),
            ],
        );
    }
    out
}

/// `div f` as a scalar spectral array (`ik . coef(k)`), in the grid's k-order.
pub fn divergence(field: &SpectralField) -> Vec<Complex64> {
    let grid = field.grid();
    (0..grid.mode_count())
        .map(|idx| {
            let k = grid.wavevector(idx);
            let v = field.coef(idx);
            Complex64::new(0.0, 1.0) * (k[0] * v[0] + k[1] * v[1] + k[2] * v[2])
        })
        .collect()
}

/// Largest `|ik . coef(k)|` relative to the field's L2 size; zero field gives 0.
pub fn max_divergence(field: &SpectralField) -> f64 {
    let div = divergence(field);
    let max = div.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let scale = field.l2_norm();
    if scale == 0.0 {
        0.0
    } else {
        max / scale
    }
}

/// Pointwise cross product `a x b`, evaluated on a dealiased padded grid.
pub fn cross(a: &SpectralField, b: &SpectralField) -> Result<SpectralField> {
    a.same_grid(b)?;
    let grid = *a.grid();
    let p = Padded::new(grid, grid.max_mode());
    let ap: Vec<Vec<f64>> = (0..3).map(|c| p.phys(a.component(c))).collect();
    let bp: Vec<Vec<f64>> = (0..3).map(|c| p.phys(b.component(c))).collect();
    let count = p.point_count();
    let mut out = SpectralField::zeros(grid);
    let mut prod = vec![0.0; count];
    for c in 0..3 {
        let (i, j) = ((c + 1) % 3, (c + 2) % 3);
        for x in 0..count {
            prod[x] = ap[i][x] * bp[j][x] - ap[j][x] * bp[i][x];
        }
        let spec = p.product_to_spectral(&prod);
        out.component_mut(c).copy_from_slice(&spec);
    }
    // the extraction keeps only one of the +-Nyquist product modes; project
    // back onto the real (Hermitian) subspace, which leaves H-pairings
    // against real fields unchanged
    out.symmetrize_hermitian();
    Ok(out)
}
