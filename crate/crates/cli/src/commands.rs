//! The four subcommands. Each returns a table; writing is left to the caller.

use qdeform::deformed::potential_at_offset;
use qdeform::oracle::oracle_spectrum;
use qdeform::solvers::{self, disputed_closed_form, solve_morse_exact, spectrum_morse_asymptotic};
use qdeform::wavefunction::{eigenfunction_on, mesh_for};
use qdeform::{EnergyLevel, Regime};
use rayon::prelude::*;

use crate::config::{check_q_list, RunConfig};
use crate::error::{CliError, CliResult};
use crate::table::{Cell, Table};

/// Analytic and oracle levels must agree to this fraction of `M`.
pub const VERIFY_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, Default)]
pub struct SpectrumFlags {
    pub verify: bool,
    pub show_disputed: bool,
}

pub fn spectrum(cfg: &RunConfig, flags: SpectrumFlags) -> CliResult<Table> {
    let (dc, p) = (&cfg.dirac, &cfg.potential);
    let levels = solvers::spectrum(dc, p, &cfg.solver)?.levels;

    let mut columns = vec!["n_r", "E", "E_tilde", "method"];
    let oracle = if flags.verify {
        columns.push("residual_vs_oracle");
        Some(oracle_spectrum(dc, p)?)
    } else {
        None
    };
    let disputed = if flags.show_disputed {
        if p.regime() != Regime::Regular {
            return Err(CliError::config(
                "q",
                "--show-disputed compares against the q < 1 spectrum and needs 0 < q < 1",
            ));
        }
        columns.push("disputed_closed_form_E");
        Some(disputed_closed_form(dc, p, &cfg.solver)?)
    } else {
        None
    };

    let mut table = Table::new(&columns);
    let rows = levels.len().max(disputed.as_ref().map_or(0, Vec::len));
    for i in 0..rows {
        let mut row: Vec<Cell> = match levels.get(i) {
            Some(l) => vec![l.n_r.into(), l.energy.into(), l.e_tilde.into(), l.method.as_str().into()],
            None => vec![i.into(), Cell::Empty, Cell::Empty, Cell::Empty],
        };
        if let Some(o) = &oracle {
            let diff = levels.get(i).zip(o.get(i)).map(|(a, b)| (a.energy - b.energy).abs());
            row.push(diff.into());
        }
        if let Some(d) = &disputed {
            row.push(d.get(i).copied().into());
        }
        table.push(row);
    }

    if levels.is_empty() {
        table.notes.push("no bound states for these parameters".into());
    }
    if let Some(o) = &oracle {
        if o.len() != levels.len() {
            table.notes.push(format!(
                "oracle finds {} level(s), the analytic condition {}",
                o.len(),
                levels.len()
            ));
        }
    }
    if disputed.is_some() {
        table.notes.push(
            "disputed_closed_form_E applies the q >= 1 termination condition at q < 1; \
             it ignores the boundary condition at r = 0 and is shown for comparison only"
                .into(),
        );
    }
    Ok(table)
}

pub fn wavefunction(cfg: &RunConfig, n_r: usize) -> CliResult<Table> {
    let (dc, p) = (&cfg.dirac, &cfg.potential);
    let levels = solvers::spectrum(dc, p, &cfg.solver)?.levels;
    let level: EnergyLevel = *levels.get(n_r).ok_or(CliError::LevelNotFound {
        n_r,
        available: levels.len(),
    })?;

    let mesh = mesh_for(&[level], dc, p)?;
    let fine = eigenfunction_on(&level, dc, p, &mesh)?;
    let wf = match cfg.export_points {
        None => fine,
        Some(n) => {
            let (lo, hi) = (mesh[0], *mesh.last().unwrap());
            let radii: Vec<f64> = (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect();
            let mut coarse = eigenfunction_on(&level, dc, p, &radii)?;
            // keep the normalization of the fine mesh
            let c = fine.norm_constant / coarse.norm_constant;
            coarse.f_values.iter_mut().for_each(|v| *v *= c);
            coarse.g_values.iter_mut().for_each(|v| *v *= c);
            coarse.norm_constant = fine.norm_constant;
            coarse
        }
    };

    let origin = p.left_boundary();
    let mut table = Table::new(&["r", "F", "G", "potential_value"]);
    for i in 0..wf.radii.len() {
        let r = wf.radii[i];
        let v = potential_at_offset(r - origin, p).unwrap_or(f64::INFINITY);
        table.push(vec![r.into(), wf.f_values[i].into(), wf.g_values[i].into(), v.into()]);
    }
    table.notes.push(format!(
        "n_r = {n_r}, E = {}, method {}",
        level.energy, level.method
    ));
    Ok(table)
}

pub fn morse_limit(cfg: &RunConfig, q_list: &[f64]) -> CliResult<Table> {
    check_q_list(q_list)?;
    if let Some(q) = q_list.iter().find(|q| !(**q > 0.0 && **q < 1.0)) {
        return Err(CliError::config("q_list", format!("{q} is outside (0, 1)")));
    }
    let (dc, solver) = (&cfg.dirac, &cfg.solver);
    let morse = cfg.potential.with_q(0.0);
    let exact = solve_morse_exact(dc, &morse, solver)?.levels;
    let asym = spectrum_morse_asymptotic(dc, &morse, solver)?.levels;

    let sweeps = q_list
        .par_iter()
        .map(|&q| solvers::spectrum(dc, &morse.with_q(q), solver).map(|s| (q, s.levels)))
        .collect::<qdeform::Result<Vec<_>>>()?;

    let deviation = |l: &EnergyLevel| exact.get(l.n_r).map(|m| (l.energy - m.energy).abs());
    let mut table = Table::new(&["q", "method", "n_r", "E", "deviation_from_morse_exact"]);
    let mut push = |q: f64, l: &EnergyLevel, dev: Option<f64>| {
        table.push(vec![q.into(), l.method.as_str().into(), l.n_r.into(), l.energy.into(), dev.into()]);
    };
    for (q, levels) in &sweeps {
        for l in levels {
            push(*q, l, deviation(l));
        }
    }
    for l in exact.iter().chain(&asym) {
        push(0.0, l, deviation(l));
    }
    if exact.is_empty() {
        table.notes.push("the Morse limit holds no bound states".into());
    }
    Ok(table)
}

/// Analytic levels against the shooting oracle, for the configured `q` or
/// for every entry of `q_list`. The table is returned even when levels
/// disagree; the second item then describes the failures.
pub fn verify(cfg: &RunConfig, q_list: Option<&[f64]>) -> CliResult<(Table, Option<CliError>)> {
    let qs = match q_list {
        Some(qs) => {
            check_q_list(qs)?;
            qs.to_vec()
        }
        None => vec![cfg.potential.q],
    };
    let dc = &cfg.dirac;
    let tol = VERIFY_TOL * dc.m;
    let results = qs
        .par_iter()
        .map(|&q| {
            let p = cfg.potential.with_q(q);
            let analytic = solvers::spectrum(dc, &p, &cfg.solver)?.levels;
            let oracle = oracle_spectrum(dc, &p)?;
            Ok((q, analytic, oracle))
        })
        .collect::<qdeform::Result<Vec<_>>>()?;

    let mut table = Table::new(&["q", "n_r", "E", "E_oracle", "abs_diff", "pass"]);
    let mut failures = Vec::new();
    for (q, analytic, oracle) in &results {
        for i in 0..analytic.len().max(oracle.len()) {
            let a = analytic.get(i).map(|l| l.energy);
            let o = oracle.get(i).map(|l| l.energy);
            let diff = a.zip(o).map(|(a, o)| (a - o).abs());
            let pass = diff.is_some_and(|d| d <= tol);
            if !pass {
                failures.push(format!("q = {q}, n_r = {i}"));
            }
            table.push(vec![
                (*q).into(),
                i.into(),
                a.into(),
                o.into(),
                diff.into(),
                if pass { "yes" } else { "no" }.into(),
            ]);
        }
    }
    let failure = (!failures.is_empty()).then(|| {
        CliError::Verification(format!(
            "{} level(s) differ from the oracle by more than {tol:e}: {}",
            failures.len(),
            failures.join("; ")
        ))
    });
    Ok((table, failure))
}
