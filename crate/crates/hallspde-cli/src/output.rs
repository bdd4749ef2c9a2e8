//! CSV and flat-report writers for run artifacts.

use anyhow::{Context, Result};
use hallspde_core::diagnostics::MomentReport;
use hallspde_core::integrator::NormSample;
use std::io::Write;
use std::path::Path;

/// `energies.csv`: `t,H_norm_sq,dirichlet_sq,V_norm_sq,jump_flag`.
pub fn write_energies(path: &Path, series: &[NormSample]) -> Result<()> {
    let mut w = std::io::BufWriter::new(
        std::fs::File::create(path).with_context(|| format!("creating {}", path.display()))?,
    );
    writeln!(w, "t,H_norm_sq,dirichlet_sq,V_norm_sq,jump_flag")?;
    for s in series {
        writeln!(
            w,
            "{:.17e},{:.17e},{:.17e},{:.17e},{}",
            s.time,
            s.h_sq,
            s.dir_sq,
            s.v_sq(),
            u8::from(s.jump)
        )?;
    }
    Ok(())
}

/// `moments.csv`: one row per (level, q) with estimates and standard errors.
pub fn write_moments(path: &Path, rows: &[(f64, &MomentReport)]) -> Result<()> {
    let mut w = std::io::BufWriter::new(
        std::fs::File::create(path).with_context(|| format!("creating {}", path.display()))?,
    );
    writeln!(
        w,
        "level,q,sup_moment,sup_moment_se,weighted_dissipation,weighted_dissipation_se,v_integral,v_integral_se,guard_hits,trajectories"
    )?;
    for (level, report) in rows {
        for (q, sup, int) in &report.orders {
            writeln!(
                w,
                "{level},{q},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e},{},{}",
                sup.value,
                sup.std_error,
                int.value,
                int.std_error,
                report.v_integral.value,
                report.v_integral.std_error,
                report.guard_hits,
                report.trajectories
            )?;
        }
    }
    Ok(())
}

/// Flat key-value summary: `name = value [stderr]` lines.
pub struct Report {
    lines: Vec<String>,
}

impl Report {
    pub fn new() -> Self {
        Report { lines: Vec::new() }
    }

    pub fn put(&mut self, key: &str, value: impl std::fmt::Display) {
        self.lines.push(format!("{key} = {value}"));
    }

    pub fn put_with_se(&mut self, key: &str, value: f64, se: f64) {
        self.lines.push(format!("{key} = {value:.10e} {se:.4e}"));
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.lines.join("\n") + "\n")
            .with_context(|| format!("writing {}", path.display()))
    }
}
