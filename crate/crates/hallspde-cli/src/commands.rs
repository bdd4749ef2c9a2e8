//! The four run modes: single simulation, ensemble reduction, truncation
//! study, and the invariant verification suite.

use crate::config::RunConfig;
use crate::manifest::RunManifest;
use crate::output::{write_energies, write_moments, Report};
use anyhow::{Context, Result};
use hallspde_core::diagnostics::moment_report;
use hallspde_core::integrator::{run_ensemble_map, simulate, SimConfig, Trajectory};
use hallspde_core::spectral::CutoffLevel;
use std::path::Path;

fn prepare(command: &str, out: &Path, config: &RunConfig, force: bool) -> Result<RunManifest> {
    let manifest = RunManifest::new(command, out, config.clone());
    manifest.write(force)?;
    Ok(manifest)
}

pub fn cmd_simulate(config: &RunConfig, out: &Path, force: bool) -> Result<()> {
    prepare("simulate", out, config, force)?;
    let sim = config.resolve()?;
    let trajectory = simulate(&sim, 0)?;
    write_outputs_for_trajectory(&sim, &trajectory, out, config.run.snapshots)?;
    if let Some(guard) = trajectory.guard {
        println!(
            "guard hit at t = {} (radius {}); trajectory truncated",
            guard.time, guard.radius
        );
    }
    if trajectory.cfl_warnings > 0 {
        println!(
            "advisory: advective CFL bound exceeded on {} steps; consider a smaller dt",
            trajectory.cfl_warnings
        );
    }
    println!(
        "simulate: {} samples, final |X|_H = {:.6e}",
        trajectory.samples.len(),
        trajectory.final_state().h_norm()
    );
    Ok(())
}

fn write_outputs_for_trajectory(
    sim: &SimConfig,
    trajectory: &Trajectory,
    out: &Path,
    snapshots: bool,
) -> Result<()> {
    let norms = trajectory.norm_series(&sim.params);
    write_energies(&out.join("energies.csv"), &norms.samples)?;
    let mut jumps = std::fs::File::create(out.join("jumps.csv"))?;
    trajectory.stream.write_csv(&mut jumps)?;
    if snapshots {
        let dir = out.join("snapshots");
        std::fs::create_dir_all(&dir)?;
        let mut initial = std::fs::File::create(dir.join("initial.bin"))?;
        hallspde_core::snapshot::write_state(&mut initial, &trajectory.samples[0].state)?;
        let mut fin = std::fs::File::create(dir.join("final.bin"))?;
        hallspde_core::snapshot::write_state(&mut fin, trajectory.final_state())?;
    }
    Ok(())
}

pub fn cmd_ensemble(config: &RunConfig, out: &Path, force: bool) -> Result<()> {
    prepare("ensemble", out, config, force)?;
    let sim = config.resolve()?;
    let series = run_ensemble_map(&sim, |_, tr| tr.norm_series(&sim.params))?;
    let guard = sim
        .guard_radius
        .unwrap_or(sim.guard_factor * sim.initial.h_norm().max(1.0));
    let report = moment_report(&series, &sim.q_orders, guard)?;
    write_moments(&out.join("moments.csv"), &[(sim.level.radius(), &report)])?;

    let mut flat = Report::new();
    flat.put("ensemble.trajectories", report.trajectories);
    flat.put("ensemble.guard_hits", report.guard_hits);
    for (q, sup, int) in &report.orders {
        flat.put_with_se(&format!("moment.q{q}.sup"), sup.value, sup.std_error);
        flat.put_with_se(
            &format!("moment.q{q}.weighted_dissipation"),
            int.value,
            int.std_error,
        );
    }
    flat.put_with_se(
        "moment.v_integral",
        report.v_integral.value,
        report.v_integral.std_error,
    );
    flat.write(&out.join("report.txt"))?;
    println!(
        "ensemble: {} trajectories, {} guard hits",
        report.trajectories, report.guard_hits
    );
    for (q, sup, _) in &report.orders {
        println!("  E[sup |X|^{q}] = {:.6e} (se {:.2e})", sup.value, sup.std_error);
    }
    Ok(())
}

pub fn cmd_study(config: &RunConfig, out: &Path, levels: Option<Vec<f64>>, force: bool) -> Result<()> {
    prepare("study", out, config, force)?;
    let base = config.resolve()?;
    let levels = levels.unwrap_or_else(|| config.run.levels.clone());

    // per-level ensembles with identical physics, seeds, and jump streams
    let mut reports = Vec::new();
    let mut sims = Vec::new();
    for &n in &levels {
        let mut sim = base.clone();
        sim.level = CutoffLevel::new(n)?;
        sim.validate().with_context(|| format!("study level {n}"))?;
        let series = run_ensemble_map(&sim, |_, tr| tr.norm_series(&sim.params))?;
        let guard = sim
            .guard_radius
            .unwrap_or(sim.guard_factor * sim.initial.h_norm().max(1.0));
        reports.push(moment_report(&series, &sim.q_orders, guard)?);
        sims.push(sim);
    }
    let rows: Vec<(f64, &hallspde_core::diagnostics::MomentReport)> = levels
        .iter()
        .copied()
        .zip(reports.iter())
        .collect();
    write_moments(&out.join("moments.csv"), &rows)?;

    // coupled pathwise comparison: same jump stream and seeds across levels
    let mut flat = Report::new();
    for (level, report) in &rows {
        for (q, sup, _) in &report.orders {
            flat.put_with_se(
                &format!("study.n{level}.moment.q{q}.sup"),
                sup.value,
                sup.std_error,
            );
        }
        flat.put(&format!("study.n{level}.guard_hits"), report.guard_hits);
    }
    let coupled = base.ensemble_size.min(8);
    for a in 0..levels.len() {
        for b in (a + 1)..levels.len() {
            let mut dist_sq_mean = 0.0;
            for idx in 0..coupled as u64 {
                let ta = simulate(&sims[a], idx)?;
                let tb = simulate(&sims[b], idx)?;
                dist_sq_mean += coupled_l2_distance_sq(&ta, &tb)?;
            }
            dist_sq_mean /= coupled as f64;
            let key = format!("study.distance.n{}_n{}", levels[a], levels[b]);
            flat.put_with_se(&key, dist_sq_mean.sqrt(), 0.0);
            println!(
                "study: coupled L2(0,T;H) distance n={} vs n={}: {:.6e}",
                levels[a],
                levels[b],
                dist_sq_mean.sqrt()
            );
        }
    }
    flat.write(&out.join("report.txt"))?;
    Ok(())
}

/// `int_0^T |X_a(t) - X_b(t)|_H^2 dt` for two trajectories driven by the
/// same jump stream (hence sampled on the same time set).
fn coupled_l2_distance_sq(a: &Trajectory, b: &Trajectory) -> Result<f64> {
    anyhow::ensure!(
        a.samples.len() == b.samples.len(),
        "coupled trajectories must share their sample times"
    );
    let mut acc = 0.0;
    for w in 0..a.samples.len() - 1 {
        let (sa, sb) = (&a.samples[w], &b.samples[w]);
        anyhow::ensure!(sa.time == sb.time, "coupled sample times diverged");
        let mut diff = sa.state.clone();
        diff.scaled_add(-1.0, &sb.state);
        let dt = a.samples[w + 1].time - sa.time;
        acc += diff.h_norm_sq() * dt;
    }
    Ok(acc)
}

pub fn cmd_verify(config: &RunConfig, out: &Path, force: bool) -> Result<bool> {
    prepare("verify", out, config, force)?;
    let sim = config.resolve()?;
    let results = hallspde_core::verify::run_all(&sim);
    let mut flat = Report::new();
    let mut all_ok = true;
    for r in &results {
        let status = if r.passed { "pass" } else { "FAIL" };
        println!("{status:<4} {} - {}", r.name, r.detail);
        flat.put(&format!("verify.{}", r.name), status);
        all_ok &= r.passed;
    }
    flat.put("verify.passed", all_ok);
    flat.write(&out.join("report.txt"))?;
    if !all_ok {
        let failures: Vec<&str> = results
            .iter()
            .filter(|r| !r.passed)
            .map(|r| r.name)
            .collect();
        println!("failed checks: {failures:?}");
    }
    Ok(all_ok)
}
