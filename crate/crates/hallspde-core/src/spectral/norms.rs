//! Sobolev-type norms from Fourier weights.

use super::field::SpectralField;
use super::grid::SobolevIndex;

/// Weighted spectral sum `(L/N)^3 sum_k (1 + |k|^2)^s |coef(k)|^2` over all
/// three components. `s` may be negative (dual-norm surrogates).
pub fn weighted_norm_sq(field: &SpectralField, s: f64) -> f64 {
    let grid = field.grid();
    let w = grid.norm_weight();
    let mut acc = 0.0;
    for idx in 0..grid.mode_count() {
        let weight = (1.0 + grid.wavevector_sq(idx)).powf(s);
        let c = field.coef(idx);
        acc += weight * (c[0].norm_sqr() + c[1].norm_sqr() + c[2].norm_sqr());
    }
    w * acc
}

/// `H^s` norm, `s >= 0`.
pub fn sobolev_norm(field: &SpectralField, s: SobolevIndex) -> f64 {
    weighted_norm_sq(field, s.value()).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::field::SpectralField;
    use crate::spectral::grid::{make_grid, CutoffLevel, SobolevIndex};
    use crate::spectral::project::cutoff;
    use num_complex::Complex64;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    const TAU: f64 = 2.0 * std::f64::consts::PI;

    #[test]
    fn single_mode_value() {
        let grid = make_grid(8, TAU).unwrap();
        let c = Complex64::new(0.3, -0.4); // |c| = 0.5
        let f = SpectralField::single_mode(grid, [1, 2, 0], [c, Complex64::ZERO, Complex64::ZERO]);
        // hermitian pair carries the amplitude twice
        let s = SobolevIndex::new(2.0).unwrap();
        let expect = (2.0 * grid.norm_weight()).sqrt() * 0.5 * (1.0 + 5.0_f64).powf(1.0);
        assert!((sobolev_norm(&f, s) - expect).abs() < 1e-12 * expect);
    }

    #[test]
    fn s_zero_is_l2() {
        let grid = make_grid(8, TAU).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(31);
        let f = SpectralField::random_smooth(grid, 3.0, 1.0, &mut rng);
        let s0 = SobolevIndex::new(0.0).unwrap();
        assert!((sobolev_norm(&f, s0) - f.l2_norm()).abs() < 1e-12 * f.l2_norm());
    }

    #[test]
    fn random_field_vs_direct_sum_oracle() {
        let grid = make_grid(8, TAU).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(32);
        let f = SpectralField::random_smooth(grid, 3.5, 0.5, &mut rng);
        let s = 1.7;
        // independent brute-force sum
        let mut acc = 0.0;
        for (idx, m) in grid.iter_modes() {
            let h = grid.spacing();
            let ksq = (m[0] * m[0] + m[1] * m[1] + m[2] * m[2]) as f64 * h * h;
            for c in 0..3 {
                acc += (1.0 + ksq).powf(s) * f.coef(idx)[c].norm_sqr();
            }
        }
        let expect = (grid.norm_weight() * acc).sqrt();
        let got = sobolev_norm(&f, SobolevIndex::new(s).unwrap());
        assert!((got - expect).abs() < 1e-10 * expect);
    }

    #[test]
    fn cutoff_never_increases_sobolev_norms() {
        let grid = make_grid(16, TAU).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(33);
        let f = SpectralField::random_smooth(grid, 8.0, 0.5, &mut rng);
        for n in [2.0, 4.0, 8.0] {
            let cut = cutoff(&f, CutoffLevel::new(n).unwrap());
            for s in [0.0, 1.0, 3.0] {
                let si = SobolevIndex::new(s).unwrap();
                assert!(sobolev_norm(&cut, si) <= sobolev_norm(&f, si) * (1.0 + 1e-12));
            }
        }
    }

    #[test]
    fn truncation_decay_bound() {
        // || S_n u - u ||_{H^s}^2 <= (1+n^2)^{-k0} || u ||_{H^{s+k0}}^2
        // on the profile coef(k) = (1 + |k|^2)^{-3}
        let grid = make_grid(16, TAU).unwrap();
        let mut f = SpectralField::zeros(grid);
        for idx in 0..grid.mode_count() {
            let v = Complex64::new((1.0 + grid.wavevector_sq(idx)).powi(-3), 0.0);
            f.set_coef(idx, [v, v, v]);
        }
        for s in [0.0, 1.0] {
            for k0 in [1.0, 2.0] {
                for n in [2.0, 4.0, 8.0, 16.0] {
                    let cut = cutoff(&f, CutoffLevel::new(n).unwrap());
                    let mut diff = cut.clone();
                    diff.scaled_add(-1.0, &f);
                    let lhs = weighted_norm_sq(&diff, s);
                    let rhs = (1.0 + n * n).powf(-k0) * weighted_norm_sq(&f, s + k0);
                    assert!(
                        lhs <= rhs * (1.0 + 1e-12),
                        "decay bound failed: s={s} k0={k0} n={n}: {lhs} > {rhs}"
                    );
                }
            }
        }
    }
}
