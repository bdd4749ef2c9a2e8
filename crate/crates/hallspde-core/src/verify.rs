//! Runnable invariant suites for every module, aggregated for the CLI
//! `verify` command. Each check is named, self-contained, and deterministic.

use crate::diagnostics::{
    gronwall_bound, gronwall_check, skorokhod_distance, skorokhod_modulus, taylor_check,
    CadlagPath, GronwallInput, TAYLOR_C2, TAYLOR_C4,
};
use crate::integrator::{simulate, SimConfig};
use crate::noise::{
    compensated_integral, poisson_chi_square, sample_jump_stream, MarkSpace, NoiseCoefficient,
};
use crate::operators::{
    form_hall, form_mhd, hall_riesz, mhd_riesz, stokes_riesz,
};
use crate::seeding::shared_rng;
use crate::spectral::{
    cutoff, dirichlet_form, inner_h, leray_project, physical_l2_norm, project_state, to_physical,
    CutoffLevel, SobolevIndex, SpectralField, State,
};
use rand::Rng;

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, f: impl FnOnce() -> Result<String, String>) -> CheckResult {
    match f() {
        Ok(detail) => CheckResult {
            name,
            passed: true,
            detail,
        },
        Err(detail) => CheckResult {
            name,
            passed: false,
            detail,
        },
    }
}

fn require(cond: bool, msg: String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg)
    }
}

/// Run every module's property suite against the configured grid, physics,
/// and noise. Returns one result per named check.
pub fn run_all(config: &SimConfig) -> Vec<CheckResult> {
    let grid = config.grid;
    let level = config.level;
    let params = config.params;
    let band = level.radius().min(grid.max_mode() as f64 * grid.spacing());
    let mut rng = shared_rng(config.master_seed, 100);

    let mut results = Vec::new();

    results.push(check("spectral.parseval", || {
        let f = SpectralField::random_smooth(grid, band, 1.0, &mut shared_rng(1, 101));
        let quad = physical_l2_norm(&to_physical(&f), &grid);
        let spec = f.l2_norm();
        require(
            (quad - spec).abs() <= 1e-10 * spec,
            format!("quadrature {quad} vs spectral {spec}"),
        )?;
        Ok(format!("|.|_quad = |.|_spec = {spec:.6e}"))
    }));

    results.push(check("spectral.leray_projection", || {
        let f = SpectralField::random_smooth(grid, band, 1.0, &mut shared_rng(1, 102));
        let p1 = leray_project(&f);
        let p2 = leray_project(&p1);
        let mut diff = p2.clone();
        diff.scaled_add(-1.0, &p1);
        require(
            diff.l2_norm() <= 1e-12 * p1.l2_norm(),
            format!("idempotence defect {}", diff.l2_norm()),
        )?;
        require(
            crate::spectral::max_divergence(&p1) <= 1e-12,
            format!("divergence {}", crate::spectral::max_divergence(&p1)),
        )?;
        // self-adjointness in L2
        let g = SpectralField::random_smooth(grid, band, 1.0, &mut shared_rng(1, 103));
        let a = State::new(leray_project(&f), SpectralField::zeros(grid)).map_err(|e| e.to_string())?;
        let b = State::new(g.clone(), SpectralField::zeros(grid)).map_err(|e| e.to_string())?;
        let lhs = inner_h(&a, &b).map_err(|e| e.to_string())?;
        let c = State::new(f.clone(), SpectralField::zeros(grid)).map_err(|e| e.to_string())?;
        let d = State::new(leray_project(&g), SpectralField::zeros(grid)).map_err(|e| e.to_string())?;
        let rhs = inner_h(&c, &d).map_err(|e| e.to_string())?;
        require(
            (lhs - rhs).abs() <= 1e-10 * lhs.abs().max(1e-30),
            format!("self-adjointness {lhs} vs {rhs}"),
        )?;
        Ok("idempotent, divergence-free, self-adjoint".into())
    }));

    results.push(check("spectral.cutoff_algebra", || {
        let f = SpectralField::random_smooth(grid, grid.max_mode() as f64, 0.5, &mut shared_rng(1, 104));
        let n1 = CutoffLevel::new((band * 0.5).max(1.0)).map_err(|e| e.to_string())?;
        let n2 = CutoffLevel::new(band.max(1.5)).map_err(|e| e.to_string())?;
        let a = cutoff(&cutoff(&f, n2), n1);
        let b = cutoff(&f, n1);
        require(a == b, "S_n S_m != S_min".into())?;
        for s in [0.0, 1.0, 3.0] {
            let si = SobolevIndex::new(s).map_err(|e| e.to_string())?;
            let cut = crate::spectral::sobolev_norm(&cutoff(&f, n1), si);
            let full = crate::spectral::sobolev_norm(&f, si);
            require(
                cut <= full * (1.0 + 1e-12),
                format!("norm grew under cutoff at s={s}"),
            )?;
        }
        Ok("composition and norm bounds hold".into())
    }));

    results.push(check("spectral.truncation_decay", || {
        let mut f = SpectralField::zeros(grid);
        for idx in 0..grid.mode_count() {
            let v = (1.0 + grid.wavevector_sq(idx)).powi(-3);
            f.set_coef(idx, [v.into(), v.into(), v.into()]);
        }
        for n in [2.0, 4.0, 8.0, 16.0] {
            for (s, k0) in [(0.0, 1.0), (1.0, 2.0)] {
                let cut = cutoff(&f, CutoffLevel::new(n).map_err(|e| e.to_string())?);
                let mut diff = cut.clone();
                diff.scaled_add(-1.0, &f);
                let lhs = crate::spectral::weighted_norm_sq(&diff, s);
                let rhs = (1.0 + n * n).powf(-k0) * crate::spectral::weighted_norm_sq(&f, s + k0);
                require(
                    lhs <= rhs * (1.0 + 1e-12),
                    format!("decay bound failed at n={n} s={s} k0={k0}: {lhs} > {rhs}"),
                )?;
            }
        }
        Ok("truncation error bound holds on the smooth profile".into())
    }));

    results.push(check("operators.energy_orthogonality", || {
        let mut worst: f64 = 0.0;
        for seed in 0..20u64 {
            let phi = project_state(
                &State::random_div_free(grid, band, 1.0, &mut shared_rng(seed, 105)),
                level,
            );
            let rm = mhd_riesz(&phi, &params, level).map_err(|e| e.to_string())?;
            let rh = hall_riesz(&phi, &params, level).map_err(|e| e.to_string())?;
            for r in [rm, rh] {
                let pairing = inner_h(&r, &phi).map_err(|e| e.to_string())?.abs();
                let scale = phi.h_norm() * r.h_norm().max(1e-300);
                worst = worst.max(pairing / scale);
            }
        }
        require(worst <= 1e-10, format!("worst relative pairing {worst:.3e}"))?;
        Ok(format!("worst relative pairing {worst:.3e}"))
    }));

    results.push(check("operators.antisymmetry", || {
        let mut worst: f64 = 0.0;
        for seed in 0..20u64 {
            let p1 = project_state(
                &State::random_div_free(grid, band, 1.0, &mut shared_rng(seed, 106)),
                level,
            );
            let p2 = project_state(
                &State::random_div_free(grid, band, 1.0, &mut shared_rng(seed, 107)),
                level,
            );
            let p3 = project_state(
                &State::random_div_free(grid, band, 1.0, &mut shared_rng(seed, 108)),
                level,
            );
            let scale = p1.h_norm() * p2.h_norm() * p3.h_norm();
            let a = form_mhd(&p1, &p2, &p3).map_err(|e| e.to_string())?;
            let b = form_mhd(&p1, &p3, &p2).map_err(|e| e.to_string())?;
            worst = worst.max((a + b).abs() / scale.max(1e-300));
            let c = form_hall(&p1.b, &p2.b, &p3.b).map_err(|e| e.to_string())?;
            let d = form_hall(&p1.b, &p3.b, &p2.b).map_err(|e| e.to_string())?;
            worst = worst.max((c + d).abs() / scale.max(1e-300));
        }
        require(worst <= 1e-10, format!("worst antisymmetry defect {worst:.3e}"))?;
        Ok(format!("worst antisymmetry defect {worst:.3e}"))
    }));

    results.push(check("operators.stokes_duality", || {
        let phi = project_state(
            &State::random_div_free(grid, band, 1.0, &mut shared_rng(2, 109)),
            level,
        );
        let psi = project_state(
            &State::random_div_free(grid, band, 1.0, &mut shared_rng(2, 110)),
            level,
        );
        let a = stokes_riesz(&phi, &params, level).map_err(|e| e.to_string())?;
        let lhs = inner_h(&a, &psi).map_err(|e| e.to_string())?;
        let rhs = dirichlet_form(&phi, &psi, params.nu1, params.nu2).map_err(|e| e.to_string())?;
        require(
            (lhs - rhs).abs() <= 1e-10 * rhs.abs().max(1e-30),
            format!("{lhs} vs {rhs}"),
        )?;
        Ok("pairs to the Dirichlet form".into())
    }));

    results.push(check("noise.counting_law_chi_square", || {
        let space = MarkSpace::new(vec![1.2, 1.8]).map_err(|e| e.to_string())?;
        let t = 1.0;
        let mut counts = Vec::with_capacity(10_000);
        for _ in 0..10_000 {
            let stream = sample_jump_stream(&space, t, &mut rng).map_err(|e| e.to_string())?;
            counts.push(stream.events.len());
        }
        let report = poisson_chi_square(&counts, t * space.total_mass(), 0.01);
        require(
            report.pass,
            format!(
                "chi2 {} above threshold {} (dof {})",
                report.statistic, report.threshold, report.dof
            ),
        )?;
        // sub-family: counts restricted to one mark
        let mut sub = Vec::with_capacity(10_000);
        for _ in 0..10_000 {
            let stream = sample_jump_stream(&space, t, &mut rng).map_err(|e| e.to_string())?;
            sub.push(stream.count(t, |m| m == 1));
        }
        let sub_report = poisson_chi_square(&sub, t * space.weight(1), 0.01);
        require(
            sub_report.pass,
            format!("mark subset chi2 {}", sub_report.statistic),
        )?;
        Ok(format!(
            "chi2 {:.2} <= {:.2}, subset {:.2} <= {:.2}",
            report.statistic, report.threshold, sub_report.statistic, sub_report.threshold
        ))
    }));

    results.push(check("noise.martingale_mean", || {
        let space = MarkSpace::new(vec![2.0, 1.0]).map_err(|e| e.to_string())?;
        let t_end = 1.0;
        let m = 10_000;
        for frac in [0.25, 0.5, 1.0] {
            let t = frac * t_end;
            let mut vals = Vec::with_capacity(m);
            for _ in 0..m {
                let s = sample_jump_stream(&space, t_end, &mut rng).map_err(|e| e.to_string())?;
                vals.push(s.count(t, |_| true) as f64 - t * space.total_mass());
            }
            let mean = vals.iter().sum::<f64>() / m as f64;
            let var =
                vals.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (m as f64 - 1.0);
            let se = (var / m as f64).sqrt();
            require(
                mean.abs() <= 3.0 * se,
                format!("compensated count mean {mean} at t={t} (3se {})", 3.0 * se),
            )?;
        }
        Ok("compensated counts centred at T/4, T/2, T".into())
    }));

    results.push(check("noise.isometry", || {
        let space = MarkSpace::new(vec![2.0, 1.0]).map_err(|e| e.to_string())?;
        let t_end = 1.0;
        let m = 10_000;
        let xi = |t: f64, mark: usize| (1.0 + mark as f64) * (0.5 + t);
        let mut vals = Vec::with_capacity(m);
        for _ in 0..m {
            let s = sample_jump_stream(&space, t_end, &mut rng).map_err(|e| e.to_string())?;
            vals.push(compensated_integral(&space, &s, 0.0, xi));
        }
        let second = vals.iter().map(|v| v * v).sum::<f64>() / m as f64;
        let expect = crate::noise::compensator_time_integral(&space, t_end, 0.0, |t, mk| {
            xi(t, mk) * xi(t, mk)
        });
        let fourth = vals.iter().map(|v| v.powi(4)).sum::<f64>() / m as f64;
        let se = ((fourth - second * second).max(0.0) / m as f64).sqrt();
        require(
            (second - expect).abs() <= 3.0 * se,
            format!("E|I|^2 = {second} vs {expect} (3se {})", 3.0 * se),
        )?;
        Ok(format!("E|I|^2 = {second:.4} vs {expect:.4}"))
    }));

    results.push(check("noise.coefficient_contracts", || {
        if let Some(noise) = &config.jump_noise {
            let states: Vec<State> = (0..40)
                .map(|s| State::random_div_free(grid, band, 1.5, &mut shared_rng(s, 111)))
                .collect();
            let pairs: Vec<(State, State)> = states
                .chunks(2)
                .map(|c| (c[0].clone(), c[1].clone()))
                .collect();
            let lip = noise
                .coefficient
                .lipschitz_audit(&noise.space, 0.0, &pairs)
                .map_err(|e| e.to_string())?;
            require(
                lip <= noise.coefficient.lipschitz * (1.0 + 1e-9) || noise.coefficient.lipschitz == 0.0 && lip == 0.0,
                format!("lipschitz audit {lip} vs declared {}", noise.coefficient.lipschitz),
            )?;
            for (q, k) in &noise.coefficient.growth {
                let audit = noise
                    .coefficient
                    .growth_audit(&noise.space, 0.0, *q, &states)
                    .map_err(|e| e.to_string())?;
                require(
                    audit <= k * (1.0 + 1e-9),
                    format!("growth audit {audit} vs declared {k} at q={q}"),
                )?;
            }
            // divergence-freeness of jump amplitudes
            for mark in 0..noise.space.len() {
                let f = noise
                    .coefficient
                    .eval(&noise.space, 0.0, &states[0], mark)
                    .map_err(|e| e.to_string())?;
                require(
                    f.max_divergence() <= 1e-10,
                    format!("jump amplitude not divergence-free at mark {mark}"),
                )?;
            }
            Ok("declared Lipschitz/growth constants audited".into())
        } else {
            let space = MarkSpace::new(vec![1.0, 0.5]).map_err(|e| e.to_string())?;
            let amps: Vec<State> = (0..2)
                .map(|s| State::random_div_free(grid, band, 2.0, &mut shared_rng(s, 112)))
                .collect();
            let coef = NoiseCoefficient::linear_multiplicative(&space, vec![0.2, -0.1], amps)
                .map_err(|e| e.to_string())?;
            let states: Vec<State> = (0..40)
                .map(|s| State::random_div_free(grid, band, 1.5, &mut shared_rng(s, 113)))
                .collect();
            let pairs: Vec<(State, State)> = states
                .chunks(2)
                .map(|c| (c[0].clone(), c[1].clone()))
                .collect();
            let lip = coef
                .lipschitz_audit(&space, 0.0, &pairs)
                .map_err(|e| e.to_string())?;
            require(
                lip <= coef.lipschitz * (1.0 + 1e-9),
                format!("lipschitz audit {lip} vs declared {}", coef.lipschitz),
            )?;
            Ok("default multiplicative coefficient audited".into())
        }
    }));

    results.push(check("noise.wiener_energy_bound", || {
        if let Some(driver) = &config.wiener {
            for s in 0..20u64 {
                let x = State::random_div_free(grid, band, 1.0, &mut shared_rng(s, 114));
                let (lhs, rhs) = driver.energy_bound(0.0, &x, params.nu1, params.nu2);
                require(
                    lhs <= rhs * (1.0 + 1e-9),
                    format!("HS bound violated: {lhs} > {rhs}"),
                )?;
            }
            Ok("Hilbert-Schmidt energy bound audited".into())
        } else {
            Ok("no Wiener driver configured".into())
        }
    }));

    results.push(check("integrator.heat_decay_exact", || {
        let mut cfg = SimConfig::new(
            grid,
            level,
            params,
            0.1_f64.min(config.horizon),
            config.dt.min(1e-3),
            State::new(
                SpectralField::single_mode(
                    grid,
                    [0, 0, 1],
                    [1.0.into(), 0.0.into(), 0.0.into()],
                ),
                SpectralField::zeros(grid),
            )
            .map_err(|e| e.to_string())?,
        );
        cfg.nonlinear = false;
        let tr = simulate(&cfg, 0).map_err(|e| e.to_string())?;
        let idx = grid.flat_index([0, 0, 1]);
        let got = tr.final_state().u.coef(idx)[0].norm();
        let ksq = grid.spacing() * grid.spacing();
        let expect = (-params.nu1 * ksq * cfg.horizon).exp();
        require(
            (got - expect).abs() <= 1e-12 * expect,
            format!("decay {got} vs {expect}"),
        )?;
        Ok("single-mode decay exact to 1e-12".into())
    }));

    results.push(check("integrator.determinism", || {
        let a = simulate(config, 0).map_err(|e| e.to_string())?;
        let b = simulate(config, 0).map_err(|e| e.to_string())?;
        require(a.samples.len() == b.samples.len(), "sample counts differ".into())?;
        for (x, y) in a.samples.iter().zip(&b.samples) {
            require(x.time == y.time && x.state == y.state, "states differ bitwise".into())?;
        }
        Ok(format!("{} samples bitwise identical", a.samples.len()))
    }));

    results.push(check("integrator.state_support_and_divergence", || {
        let tr = simulate(config, 0).map_err(|e| e.to_string())?;
        for s in &tr.samples {
            require(
                s.state.max_divergence() <= 1e-10,
                format!("divergence {} at t={}", s.state.max_divergence(), s.time),
            )?;
            for field in [&s.state.u, &s.state.b] {
                for idx in 0..grid.mode_count() {
                    if !level.keeps(grid.wavevector_sq(idx)) {
                        let c = field.coef(idx);
                        require(
                            c.iter().all(|z| z.re == 0.0 && z.im == 0.0),
                            format!("mode outside ball populated at t={}", s.time),
                        )?;
                    }
                }
            }
        }
        Ok("all stored states in the ball, divergence-free".into())
    }));

    results.push(check("diagnostics.gronwall", || {
        let phi = 0.5;
        let times: Vec<f64> = (0..=50).map(|i| i as f64 / 50.0).collect();
        let n = times.len();
        let input = GronwallInput {
            times: times.clone(),
            x: vec![times.iter().map(|t| (phi * t).exp()).collect()],
            y: vec![vec![0.0; n]],
            i: vec![vec![0.0; n]],
            z: vec![1.0],
            phi: vec![phi; n],
            c: phi,
            alpha: 1.0,
            beta: 0.0,
            gamma: 0.0,
            delta: 0.0,
            c_tilde: 0.0,
        };
        let margin = gronwall_check(&input, 1.0).map_err(|e| e.to_string())?;
        require(margin >= 0.0, format!("bound violated by {margin}"))?;
        let mut bad = input;
        bad.beta = 1.0;
        require(
            gronwall_bound(&bad, 1.0).is_err(),
            "inadmissible constants not rejected".into(),
        )?;
        Ok("ODE oracle bounded, admissibility enforced".into())
    }));

    results.push(check("diagnostics.taylor_remainder", || {
        let mut worst: f64 = 0.0;
        let mut check_rng = shared_rng(3, 115);
        for _ in 0..500 {
            let mut x = State::random_div_free(grid, band, 1.0, &mut check_rng);
            let mut h = State::random_div_free(grid, band, 1.0, &mut check_rng);
            x.scale(10.0_f64.powf(check_rng.random::<f64>() * 2.0 - 1.0));
            h.scale(10.0_f64.powf(check_rng.random::<f64>() * 2.0 - 1.0));
            for (q, cq) in [(2.0, TAYLOR_C2), (4.0, TAYLOR_C4)] {
                let (lhs, rhs) = taylor_check(&x, &h, q, cq);
                if rhs > 0.0 {
                    worst = worst.max(lhs / rhs);
                }
            }
        }
        require(worst <= 1.0 + 1e-9, format!("worst remainder ratio {worst}"))?;
        Ok(format!("worst remainder ratio {worst:.4}"))
    }));

    results.push(check("diagnostics.skorokhod", || {
        let p = CadlagPath::new(vec![0.0, 0.5], vec![0.0, 1.0], 1.0).map_err(|e| e.to_string())?;
        require(
            skorokhod_modulus(&p, 0.3).map_err(|e| e.to_string())? == 0.0,
            "separating partition missed".into(),
        )?;
        require(
            skorokhod_modulus(&p, 0.6).map_err(|e| e.to_string())? == 1.0,
            "jump should be unseparable at delta > T/2".into(),
        )?;
        require(
            skorokhod_distance(&p, &p).map_err(|e| e.to_string())? == 0.0,
            "self distance not zero".into(),
        )?;
        let q = CadlagPath::new(vec![0.0, 0.6], vec![0.0, 1.0], 1.0).map_err(|e| e.to_string())?;
        let d = skorokhod_distance(&p, &q).map_err(|e| e.to_string())?;
        require(d < 1.0, format!("shifted jump distance {d} not below jump size"))?;
        Ok(format!("modulus and distance checks pass (shifted-jump d = {d:.3})"))
    }));

    results
}
