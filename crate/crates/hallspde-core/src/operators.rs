//! Deterministic right-hand side of the truncated evolution: the Stokes-type
//! operator, the MHD and Hall trilinear forms, and their Riesz
//! representatives in the truncated state space.
//!
//! All pointwise products are formed on dealiased padded grids, so the
//! structural cancellations (`<MHD(X), X> = 0`, `<Hall(X), X> = 0`, the
//! antisymmetries of the forms) hold to round-off, exactly as in the
//! continuous theory.
//!
//! Sign convention: `mhd_riesz` and `hall_riesz` return the Riesz
//! representatives of the terms as they appear on the left-hand side of the
//! evolution, i.e. the flow is
//! `dX/dt = -stokes - mhd_riesz(X) - hall_riesz(X) + forcing + noise`,
//! and the duality identities read
//! `<mhd_riesz(X), phi>_H = form_mhd(X, X, phi)` and
//! `<hall_riesz(X), phi>_H = hall_coupling(X, X, phi)`.

use crate::error::{Error, Result};
use crate::spectral::{
    cutoff_in_place, leray_project_in_place, CutoffLevel, Padded, SpectralField, State, WaveGrid,
};
use num_complex::Complex64;

/// Physical constants of the Hall-MHD system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysParams {
    /// Kinematic viscosity (u-component diffusion).
    pub nu1: f64,
    /// Resistivity (B-component diffusion).
    pub nu2: f64,
    /// Hartmann number scaling the Lorentz coupling.
    pub hartmann: f64,
    /// Hall parameter; zero disables the Hall term (plain MHD).
    pub hall: f64,
}

impl PhysParams {
    pub fn new(nu1: f64, nu2: f64, hartmann: f64, hall: f64) -> Result<Self> {
        if !(nu1 > 0.0) || !(nu2 > 0.0) {
            return Err(Error::invalid(format!(
                "viscosity and resistivity must be positive, got nu1={nu1}, nu2={nu2}"
            )));
        }
        if !(hartmann > 0.0) {
            return Err(Error::invalid(format!(
                "Hartmann number must be positive, got {hartmann}"
            )));
        }
        if !(hall >= 0.0) {
            return Err(Error::invalid(format!(
                "Hall parameter must be non-negative, got {hall}"
            )));
        }
        Ok(PhysParams {
            nu1,
            nu2,
            hartmann,
            hall,
        })
    }
}

impl Default for PhysParams {
    fn default() -> Self {
        PhysParams {
            nu1: 1.0,
            nu2: 1.0,
            hartmann: 1.0,
            hall: 1.0,
        }
    }
}

/// Largest per-axis integer mode magnitude inside the cutoff ball on `grid`.
fn band_of(grid: &WaveGrid, level: CutoffLevel) -> usize {
    let per_axis = (level.radius() / grid.spacing()).floor() as usize;
    per_axis.min(grid.max_mode())
}

/// Error unless every coefficient outside the cutoff ball is exactly zero.
fn require_in_ball(state: &State, level: CutoffLevel) -> Result<()> {
    let grid = state.grid();
    for field in [&state.u, &state.b] {
        for idx in 0..grid.mode_count() {
            if !level.keeps(grid.wavevector_sq(idx)) {
                let c = field.coef(idx);
                if c.iter().any(|z| *z != Complex64::ZERO) {
                    return Err(Error::invalid(format!(
                        "state not supported in the cutoff ball (|k| <= {})",
                        level.radius()
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Riesz representative of the Stokes-type operator on the truncated space:
/// mode-wise `nu1 |k|^2` on u and `nu2 |k|^2` on B.
///
/// Satisfies `<stokes_riesz(phi), psi>_H = dirichlet_form(phi, psi)`.
pub fn stokes_riesz(state: &State, params: &PhysParams, level: CutoffLevel) -> Result<State> {
    require_in_ball(state, level)?;
    let grid = *state.grid();
    let mut out = state.clone();
    for (nu, field) in [(params.nu1, &mut out.u), (params.nu2, &mut out.b)] {
        for idx in 0..grid.mode_count() {
            let ksq = grid.wavevector_sq(idx);
            let c = field.coef(idx);
            field.set_coef(idx, [nu * ksq * c[0], nu * ksq * c[1], nu * ksq * c[2]]);
        }
    }
    Ok(out)
}

/// Convective trilinear form `b(u, w, v) = int (u . grad w) . v dx`,
/// evaluated by exact quadrature on a padded grid.
pub fn trilinear_b(u: &SpectralField, w: &SpectralField, v: &SpectralField) -> Result<f64> {
    u.same_grid(w)?;
    u.same_grid(v)?;
    let grid = *u.grid();
    let p = Padded::new(grid, grid.max_mode());
    let up: Vec<Vec<f64>> = (0..3).map(|c| p.phys(u.component(c))).collect();
    let vp: Vec<Vec<f64>> = (0..3).map(|c| p.phys(v.component(c))).collect();
    let count = p.point_count();
    let mut integrand = vec![0.0; count];
    for i in 0..3 {
        for a in 0..3 {
            let dw = p.phys_deriv(w.component(i), a);
            for x in 0..count {
                integrand[x] += up[a][x] * dw[x] * vp[i][x];
            }
        }
    }
    Ok(p.integrate(&integrand))
}

/// The coupled MHD form
/// `b(u1,u2,u3) - b(B1,B2,u3) + b(u1,B2,B3) - b(B1,u2,B3)`.
pub fn form_mhd(p1: &State, p2: &State, p3: &State) -> Result<f64> {
    p1.same_grid(p2)?;
    p1.same_grid(p3)?;
    Ok(trilinear_b(&p1.u, &p2.u, &p3.u)? - trilinear_b(&p1.b, &p2.b, &p3.u)?
        + trilinear_b(&p1.u, &p2.b, &p3.b)?
        - trilinear_b(&p1.b, &p2.u, &p3.b)?)
}

/// Hall trilinear form `hall(u, w, v) = -int [u x curl w] . curl v dx`.
pub fn form_hall(u: &SpectralField, w: &SpectralField, v: &SpectralField) -> Result<f64> {
    u.same_grid(w)?;
    u.same_grid(v)?;
    let grid = *u.grid();
    let p = Padded::new(grid, grid.max_mode());
    let up: Vec<Vec<f64>> = (0..3).map(|c| p.phys(u.component(c))).collect();
    let cw = crate::spectral::curl(w);
    let cv = crate::spectral::curl(v);
    let cwp: Vec<Vec<f64>> = (0..3).map(|c| p.phys(cw.component(c))).collect();
    let cvp: Vec<Vec<f64>> = (0..3).map(|c| p.phys(cv.component(c))).collect();
    let count = p.point_count();
    let mut integrand = vec![0.0; count];
    for x in 0..count {
        let cx = up[1][x] * cwp[2][x] - up[2][x] * cwp[1][x];
        let cy = up[2][x] * cwp[0][x] - up[0][x] * cwp[2][x];
        let cz = up[0][x] * cwp[1][x] - up[1][x] * cwp[0][x];
        integrand[x] = -(cx * cvp[0][x] + cy * cvp[1][x] + cz * cvp[2][x]);
    }
    Ok(p.integrate(&integrand))
}

/// The Hall coupling on states: `hall(B1, B2, B3)` scaled by the Hall
/// parameter; this is the pairing represented by [`hall_riesz`].
pub fn hall_coupling(p1: &State, p2: &State, p3: &State, params: &PhysParams) -> Result<f64> {
    Ok(params.hall * form_hall(&p1.b, &p2.b, &p3.b)?)
}

fn phys_all(p: &Padded, f: &SpectralField) -> [Vec<f64>; 3] {
    [
        p.phys(f.component(0)),
        p.phys(f.component(1)),
        p.phys(f.component(2)),
    ]
}

fn phys_grad(p: &Padded, f: &SpectralField) -> [[Vec<f64>; 3]; 3] {
    // grad[i][a] = d_a f_i
    std::array::from_fn(|i| std::array::from_fn(|a| p.phys_deriv(f.component(i), a)))
}

/// Riesz representative of the MHD term in the truncated space:
/// `P_n Leray [ (u.grad)u - s (B.grad)B ; (u.grad)B - (B.grad)u ]`.
///
/// Satisfies `<mhd_riesz(X), phi>_H = form_mhd(X, X, phi)` for all
/// divergence-free `phi` in the ball, hence `<mhd_riesz(X), X>_H = 0`.
pub fn mhd_riesz(state: &State, params: &PhysParams, level: CutoffLevel) -> Result<State> {
    require_in_ball(state, level)?;
    let grid = *state.grid();
    let p = Padded::new(grid, band_of(&grid, level));
    let up = phys_all(&p, &state.u);
    let bp = phys_all(&p, &state.b);
    let gu = phys_grad(&p, &state.u);
    let gb = phys_grad(&p, &state.b);
    let count = p.point_count();
    let s = params.hartmann;

    let mut out = State::zeros(grid);
    let mut prod = vec![0.0; count];
    for i in 0..3 {
        for x in 0..count {
            let conv_u = up[0][x] * gu[i][0][x] + up[1][x] * gu[i][1][x] + up[2][x] * gu[i][2][x];
            let conv_b = bp[0][x] * gb[i][0][x] + bp[1][x] * gb[i][1][x] + bp[2][x] * gb[i][2][x];
            prod[x] = conv_u - s * conv_b;
        }
        out.u
            .component_mut(i)
            .copy_from_slice(&p.product_to_spectral(&prod));
        for x in 0..count {
            let adv = up[0][x] * gb[i][0][x] + up[1][x] * gb[i][1][x] + up[2][x] * gb[i][2][x];
            let stretch = bp[0][x] * gu[i][0][x] + bp[1][x] * gu[i][1][x] + bp[2][x] * gu[i][2][x];
            prod[x] = adv - stretch;
        }
        out.b
            .component_mut(i)
            .copy_from_slice(&p.product_to_spectral(&prod));
    }
    restore_real_subspace(&mut out, &grid, level);
    leray_project_in_place(&mut out.u);
    leray_project_in_place(&mut out.b);
    cutoff_in_place(&mut out.u, level);
    cutoff_in_place(&mut out.b, level);
    Ok(out)
}

/// When the ball touches the Nyquist planes, product extraction keeps only
/// one of the +-Nyquist modes; project back onto the Hermitian subspace
/// (H-pairings against real fields are unchanged).
fn restore_real_subspace(out: &mut State, grid: &WaveGrid, level: CutoffLevel) {
    if band_of(grid, level) == grid.max_mode() {
        out.u.symmetrize_hermitian();
        out.b.symmetrize_hermitian();
    }
}

/// Riesz representative of the Hall term: u-component zero, B-component
/// `eps P_n Leray curl[(curl B) x B]`.
///
/// Satisfies `<hall_riesz(X), phi>_H = hall_coupling(X, X, phi)`, hence
/// `<hall_riesz(X), X>_H = 0`.
pub fn hall_riesz(state: &State, params: &PhysParams, level: CutoffLevel) -> Result<State> {
    require_in_ball(state, level)?;
    let grid = *state.grid();
    let mut out = State::zeros(grid);
    if params.hall == 0.0 {
        return Ok(out);
    }
    let p = Padded::new(grid, band_of(&grid, level));
    let cb = crate::spectral::curl(&state.b);
    let cbp = phys_all(&p, &cb);
    let bp = phys_all(&p, &state.b);
    let count = p.point_count();
    let mut cross_spec = SpectralField::zeros(grid);
    let mut prod = vec![0.0; count];
    for c in 0..3 {
        let (i, j) = ((c + 1) % 3, (c + 2) % 3);
        for x in 0..count {
            prod[x] = cbp[i][x] * bp[j][x] - cbp[j][x] * bp[i][x];
        }
        cross_spec
            .component_mut(c)
            .copy_from_slice(&p.product_to_spectral(&prod));
    }
    out.b = crate::spectral::curl(&cross_spec);
    out.b.scale(params.hall);
    restore_real_subspace(&mut out, &grid, level);
    leray_project_in_place(&mut out.b);
    cutoff_in_place(&mut out.b, level);
    Ok(out)
}

/// Fused evaluation of `-mhd_riesz(X) - hall_riesz(X)`, sharing the padded
/// transforms of `u`, `B` and their gradients between the two terms.
pub fn nonlinear_rhs(state: &State, params: &PhysParams, level: CutoffLevel) -> Result<State> {
    let grid = *state.grid();
    let p = Padded::new(grid, band_of(&grid, level));
    let up = phys_all(&p, &state.u);
    let bp = phys_all(&p, &state.b);
    let gu = phys_grad(&p, &state.u);
    let gb = phys_grad(&p, &state.b);
    let count = p.point_count();
    let s = params.hartmann;

    let mut out = State::zeros(grid);
    let mut prod = vec![0.0; count];
    for i in 0..3 {
        for x in 0..count {
            let conv_u = up[0][x] * gu[i][0][x] + up[1][x] * gu[i][1][x] + up[2][x] * gu[i][2][x];
            let conv_b = bp[0][x] * gb[i][0][x] + bp[1][x] * gb[i][1][x] + bp[2][x] * gb[i][2][x];
            prod[x] = -(conv_u - s * conv_b);
        }
        out.u
            .component_mut(i)
            .copy_from_slice(&p.product_to_spectral(&prod));
        for x in 0..count {
            let adv = up[0][x] * gb[i][0][x] + up[1][x] * gb[i][1][x] + up[2][x] * gb[i][2][x];
            let stretch = bp[0][x] * gu[i][0][x] + bp[1][x] * gu[i][1][x] + bp[2][x] * gu[i][2][x];
            prod[x] = -(adv - stretch);
        }
        out.b
            .component_mut(i)
            .copy_from_slice(&p.product_to_spectral(&prod));
    }

    if params.hall != 0.0 {
        // curl B in physical space comes free from the gradient table
        let mut cross_spec = SpectralField::zeros(grid);
        let cbp: [Vec<f64>; 3] = std::array::from_fn(|c| {
            let (i, j) = ((c + 1) % 3, (c + 2) % 3);
            (0..count).map(|x| gb[j][i][x] - gb[i][j][x]).collect()
        });
        for c in 0..3 {
            let (i, j) = ((c + 1) % 3, (c + 2) % 3);
            for x in 0..count {
                prod[x] = cbp[i][x] * bp[j][x] - cbp[j][x] * bp[i][x];
            }
            cross_spec
                .component_mut(c)
                .copy_from_slice(&p.product_to_spectral(&prod));
        }
        let mut hall = crate::spectral::curl(&cross_spec);
        hall.scale(-params.hall);
        out.b.scaled_add(1.0, &hall);
    }

    restore_real_subspace(&mut out, &grid, level);
    leray_project_in_place(&mut out.u);
    leray_project_in_place(&mut out.b);
    cutoff_in_place(&mut out.u, level);
    cutoff_in_place(&mut out.b, level);
    Ok(out)
}

/// Fourier-weight dual norm over both components; `s` may be negative.
pub fn dual_norm(state: &State, s: f64) -> f64 {
    state.dual_norm(s)
}
