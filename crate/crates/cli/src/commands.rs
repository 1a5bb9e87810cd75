//! The four run commands. Each returns the exit code for a completed run;
//! configuration problems and blowups come back as `CliError`.

use std::io::Write;

use serde_json::json;
use stochwave_core::diagnostics::{ensemble_stats, EnsembleConfig, EnsembleSource};
use stochwave_core::export::{self, Header};
use stochwave_core::noise::sample_path;
use stochwave_core::sim::{
    integrate, stability_probe, strong_convergence_with, Scheme, StepperSpec,
};
use stochwave_core::verify::{pathwise_residual_with, Verdict};
use stochwave_core::{Error, PathPoint};

use crate::config::{EnsembleMode, GridConfig, SimulateSection, StabilitySection, StrongSection};
use crate::output::{header, write_file};
use crate::{CliError, Invocation, EXIT_ACCEPTANCE, EXIT_INCONCLUSIVE, EXIT_OK};

fn missing(section: &str) -> CliError {
    CliError::config(format!("configuration has no `{section}` section"))
}

fn in_band(x: f64, band: Option<[f64; 2]>) -> bool {
    band.is_none_or(|[lo, hi]| x >= lo && x <= hi)
}

pub fn cmd_verify(inv: &Invocation) -> Result<i32, CliError> {
    let cfg = &inv.config;
    let v = cfg.verify.as_ref().ok_or_else(|| missing("verify"))?;
    let mut mismatch = false;
    let mut inconclusive = false;
    for vc in &v.candidates {
        let entry = stochwave_core::waves::lookup(&vc.id)?;
        let mut cand = entry.build(&vc.params)?;
        if let Some(e) = vc.expected {
            cand = cand.with_expected(e);
        }
        let grid = vc.grid.unwrap_or_else(|| GridConfig::from(entry)).build()?;
        let horizon = vc.horizon.unwrap_or(entry.horizon);
        let base_steps = vc.base_steps.unwrap_or(entry.base_steps);
        let levels = vc.levels.unwrap_or(entry.levels);
        for i in 0..v.n_paths as u64 {
            let path = sample_path(horizon, base_steps, cfg.seed, i)?;
            let r = pathwise_residual_with(
                cand.model(),
                &cand,
                &path,
                &grid,
                horizon,
                levels,
                &v.options,
            )?;
            println!("{} {}", vc.id, r.summary());
            let h = header(cfg, "verify").with("candidate_id", &vc.id);
            write_file(&inv.out_dir, &format!("verify_{}_p{i}.csv", vc.id), |w| {
                Ok(export::write_residual_csv(w, &h, &r)?)
            })?;
            match r.verdict {
                Verdict::Inconclusive => inconclusive = true,
                v if !v.matches(r.expected) => mismatch = true,
                _ => {}
            }
        }
    }
    Ok(if mismatch {
        EXIT_ACCEPTANCE
    } else if inconclusive {
        EXIT_INCONCLUSIVE
    } else {
        EXIT_OK
    })
}

fn manifest(
    inv: &Invocation,
    s: &SimulateSection,
    model: &stochwave_core::ModelSpec,
    outcome: &Result<(), Error>,
) -> serde_json::Value {
    let (status, blowup_time, detail) = match outcome {
        Ok(()) => ("ok", None, None),
        Err(Error::Blowup { time, detail }) => ("blowup", Some(*time), Some(detail.clone())),
        Err(e) => ("error", None, Some(e.to_string())),
    };
    json!({
        "scenario": inv.config.scenario,
        "seed": inv.config.seed,
        "param_hash": crate::output::param_hash(&inv.config),
        "version": env!("CARGO_PKG_VERSION"),
        "initial": s.initial,
        "model": {
            "kind": model.kind,
            "noise": model.noise,
            "sigma": model.sigma,
            "interpretation": model.interpretation,
        },
        "grid": s.grid,
        "stepper": s.stepper,
        "scheme": s.stepper.scheme.name(),
        "dt": s.stepper.dt,
        "horizon": s.horizon,
        "path_index": s.path_index,
        "status": status,
        "blowup_time": blowup_time,
        "detail": detail,
    })
}

pub fn cmd_simulate(inv: &Invocation) -> Result<i32, CliError> {
    let cfg = &inv.config;
    let s = cfg.simulate.as_ref().ok_or_else(|| missing("simulate"))?;
    let cand = s.initial.build()?;
    let model = match &s.model {
        Some(m) => m.build()?,
        None => *cand.model(),
    };
    let grid = s.grid.build()?;
    let n_steps = (s.horizon / s.stepper.dt).round() as usize;
    let path = sample_path(s.horizon, n_steps.max(1), cfg.seed, s.path_index)?;
    let f0 = cand.field_at(&grid, &PathPoint::ORIGIN);
    let h = header(cfg, "simulate")
        .with("model", model.kind.name())
        .with("scheme", s.stepper.scheme.name())
        .with("dt", s.stepper.dt)
        .with("path_index", s.path_index);
    write_file(&inv.out_dir, "path.csv", |w| {
        Ok(export::write_path_csv(w, &h, &path)?)
    })?;
    let run = integrate(&model, &f0, &path, &s.stepper, &s.snapshots);
    let outcome = run.as_ref().map(|_| ()).map_err(|e| match e {
        Error::InPath { source, .. } => (**source).clone(),
        other => other.clone(),
    });
    let m = manifest(inv, s, &model, &outcome);
    write_file(&inv.out_dir, "manifest.json", |w| {
        serde_json::to_writer_pretty(&mut *w, &m).map_err(|e| CliError::config(e.to_string()))?;
        Ok(writeln!(w)?)
    })?;
    let tr = run?;
    write_file(&inv.out_dir, "trajectory.csv", |w| {
        Ok(export::write_trajectory_csv(w, &h, &tr)?)
    })?;
    if s.binary {
        write_file(&inv.out_dir, "trajectory.bin", |w| {
            Ok(export::write_trajectory_bin(w, &tr)?)
        })?;
    }
    println!(
        "simulated {} to t = {} with {} ({} snapshots)",
        model.kind.name(),
        tr.times.last().copied().unwrap_or(0.0),
        s.stepper.scheme.name(),
        tr.times.len()
    );
    Ok(EXIT_OK)
}

pub fn cmd_ensemble(inv: &Invocation) -> Result<i32, CliError> {
    let cfg = &inv.config;
    let e = cfg.ensemble.as_ref().ok_or_else(|| missing("ensemble"))?;
    let cand = e.candidate.build()?;
    let model = match &e.model {
        Some(m) => m.build()?,
        None => *cand.model(),
    };
    let source = match e.mode {
        EnsembleMode::ClosedForm => EnsembleSource::ClosedForm(cand),
        EnsembleMode::Simulation => EnsembleSource::Simulation {
            initial: cand,
            stepper: e
                .stepper
                .ok_or_else(|| CliError::config("simulation ensembles need a stepper"))?,
        },
    };
    let ec = EnsembleConfig {
        grid: e.grid.build()?,
        horizon: e.horizon,
        n_steps: e.n_steps,
        snapshots: e.snapshots.clone(),
        n_paths: e.n_paths,
        seed: cfg.seed,
    };
    let stats = ensemble_stats(&model, &source, e.observable, &ec)?;
    let h = header(cfg, "ensemble").with("n_paths", e.n_paths);
    write_file(&inv.out_dir, "ensemble.csv", |w| {
        Ok(export::write_ensemble_csv(w, &h, &stats)?)
    })?;
    let mean_ok = in_band(stats.mean_slope, e.bands.mean_slope);
    let var_ok = in_band(stats.var_slope, e.bands.var_slope);
    println!(
        "{}: mean slope {:.6} ± {:.2e} [{}], variance slope {:.6} ± {:.2e} [{}], M = {}",
        stats.observable,
        stats.mean_slope,
        stats.mean_slope_se,
        if mean_ok { "in band" } else { "OUT OF BAND" },
        stats.var_slope,
        stats.var_slope_se,
        if var_ok { "in band" } else { "OUT OF BAND" },
        stats.n_paths
    );
    Ok(if mean_ok && var_ok {
        EXIT_OK
    } else {
        EXIT_ACCEPTANCE
    })
}

fn run_strong(inv: &Invocation, s: &StrongSection) -> Result<bool, CliError> {
    let cfg = &inv.config;
    let cand = s.candidate.build()?;
    let m = *cand.model();
    let grid = s.grid.build()?;
    let template = match s.stepper {
        Some(t) => t,
        None => StepperSpec::new(Scheme::explicit_for(&m), 1.0)?,
    };
    let paths = (0..s.n_paths as u64)
        .map(|i| sample_path(s.horizon, s.base_steps, cfg.seed, i))
        .collect::<Result<Vec<_>, _>>()?;
    let rep = strong_convergence_with(&m, &cand, &grid, &paths, s.levels, template)?;
    let ok = in_band(rep.order, Some(s.order_band));
    let h = header(cfg, "converge")
        .with("candidate_id", &s.candidate.id)
        .with("scheme", template.scheme.name())
        .with("n_paths", rep.n_paths);
    write_file(&inv.out_dir, "converge_strong.csv", |w| {
        h.write_to(w)?;
        writeln!(w, "dt,error")?;
        for (dt, e) in rep.dts.iter().zip(&rep.errors) {
            writeln!(w, "{dt:.16e},{e:.16e}")?;
        }
        writeln!(w, "# order: {:.16e}", rep.order)?;
        Ok(writeln!(
            w,
            "# order_band: {},{}",
            s.order_band[0], s.order_band[1]
        )?)
    })?;
    println!(
        "strong order {:.4} over {} paths, band [{}, {}]: {}",
        rep.order,
        rep.n_paths,
        s.order_band[0],
        s.order_band[1],
        if ok { "pass" } else { "FAIL" }
    );
    Ok(ok)
}

/// The boundary passes when the largest stable and smallest unstable mesh
/// ratios both exist, bracket the target, and each lies within a factor two
/// of it.
pub fn boundary_brackets(stable: Option<f64>, unstable: Option<f64>, target: f64) -> bool {
    match (stable, unstable) {
        (Some(rs), Some(ru)) => {
            rs <= target && target <= ru && ru <= 2.0 * target && rs >= 0.5 * target
        }
        _ => false,
    }
}

fn run_stability(inv: &Invocation, s: &StabilitySection) -> Result<bool, CliError> {
    let grid = s.grid.build()?;
    let rep = stability_probe(s.nu, &grid, &s.dts)?;
    let (rs, ru) = rep.boundary();
    let ok = s
        .expected_boundary
        .is_none_or(|t| boundary_brackets(rs, ru, t));
    let mut h: Header = header(&inv.config, "converge")
        .with("nu", s.nu)
        .with("dx", rep.dx);
    if let Some(t) = s.expected_boundary {
        h = h.with("expected_boundary", t);
    }
    write_file(&inv.out_dir, "converge_stability.csv", |w| {
        h.write_to(w)?;
        writeln!(w, "dt,mesh_ratio,max_norm_ratio,stable")?;
        for r in &rep.rows {
            writeln!(
                w,
                "{:.16e},{:.16e},{:.16e},{}",
                r.dt,
                r.mesh_ratio,
                r.max_norm_ratio,
                u8::from(r.stable)
            )?;
        }
        let fmt = |v: Option<f64>| v.map_or("none".to_string(), |v| format!("{v:.16e}"));
        writeln!(w, "# largest_stable_ratio: {}", fmt(rs))?;
        Ok(writeln!(w, "# smallest_unstable_ratio: {}", fmt(ru))?)
    })?;
    println!(
        "stability boundary between mesh ratios {:?} and {:?}: {}",
        rs,
        ru,
        if ok { "pass" } else { "FAIL" }
    );
    Ok(ok)
}

pub fn cmd_converge(inv: &Invocation) -> Result<i32, CliError> {
    let c = inv
        .config
        .converge
        .as_ref()
        .ok_or_else(|| missing("converge"))?;
    if c.strong.is_none() && c.stability.is_none() {
        return Err(missing("converge.strong or converge.stability"));
    }
    let mut ok = true;
    if let Some(s) = &c.strong {
        ok &= run_strong(inv, s)?;
    }
    if let Some(s) = &c.stability {
        ok &= run_stability(inv, s)?;
    }
    Ok(if ok { EXIT_OK } else { EXIT_ACCEPTANCE })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bracket_rule() {
        assert!(boundary_brackets(Some(0.48), Some(0.6), 0.5));
        assert!(!boundary_brackets(Some(0.48), None, 0.5));
        assert!(!boundary_brackets(Some(0.2), Some(0.6), 0.5));
        assert!(!boundary_brackets(Some(0.48), Some(1.2), 0.5));
        assert!(!boundary_brackets(Some(0.55), Some(0.6), 0.5));
    }
}
