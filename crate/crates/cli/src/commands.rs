//! The `solve`, `scan`, `optimize` and `nboson` commands.

use std::io::Write;
use std::path::PathBuf;

use rayon::prelude::*;
use serde_json::json;
use sinebasis::{
    assemble, catalog, eigenvalues_symmetric, minimize_ab, minimize_l, minimize_l_joint, scan_l, BasisWindow,
    BosonSystem, Interval, PairKind, SearchSettings, VariationalProblem, WindowFamily,
};

use crate::config::{check_window, CliError, ProblemSpec};
use crate::output::{number, Cell, Table};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

fn interval(field: &str, [lo, hi]: [f64; 2]) -> Result<Interval, CliError> {
    Interval::new(lo, hi).map_err(|e| CliError::config(field, e.to_string()))
}

#[derive(Debug, Clone)]
pub struct SolveRun {
    pub problem: ProblemSpec,
    pub window: Option<[f64; 2]>,
    /// Half-width on the line, right end for radial problems.
    pub length: Option<f64>,
    pub states: usize,
    pub dump_matrix: Option<PathBuf>,
}

impl SolveRun {
    fn resolve_window(&self) -> Result<[f64; 2], CliError> {
        match (self.window, self.length) {
            (Some(w), _) => Ok(w),
            (None, Some(l)) if self.problem.is_radial() => Ok([0.0, l]),
            (None, Some(l)) => Ok([-l, l]),
            (None, None) => Err(CliError::config("window", "give --window A B or --length L")),
        }
    }
}

pub fn solve(run: &SolveRun) -> Result<Table, CliError> {
    let potential = run.problem.build()?;
    let [a, b] = run.resolve_window()?;
    check_window(&potential, "window", a)?;
    let window = BasisWindow::new(a, b, run.problem.basis).map_err(|e| CliError::config("window", e.to_string()))?;
    if run.states == 0 || run.states > run.problem.basis {
        return Err(CliError::config(
            "states",
            format!("must lie in 1..={}", run.problem.basis),
        ));
    }
    let h = assemble(&potential, &window, &run.problem.quadrature).map_err(|e| match e {
        sinebasis::Error::Domain(msg) => CliError::config("window", msg),
        other => other.into(),
    })?;
    if let Some(path) = &run.dump_matrix {
        dump_matrix(path, &h)?;
    }
    let spectrum = eigenvalues_symmetric(&h, run.states)?;

    let mut table = Table::new(["state", "a", "b", "epsilon"]);
    table
        .meta("command", "solve")
        .meta("version", VERSION)
        .meta("problem", run.problem.meta())
        .meta("window", json!([number(a), number(b)]))
        .meta("residual_bound", number(spectrum.residual_bound))
        .meta("error_bound", number(spectrum.error_bound));
    for (k, e) in spectrum.eigenvalues.iter().enumerate() {
        table.push(vec![k.into(), a.into(), b.into(), (*e).into()]);
    }
    Ok(table)
}

/// Header line `N,a,b`, one data line, then the matrix row by row at full
/// precision.
fn dump_matrix(path: &PathBuf, h: &sinebasis::HamiltonianMatrix) -> Result<(), CliError> {
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    let w = h.window();
    writeln!(out, "N,a,b")?;
    writeln!(out, "{},{:e},{:e}", h.dim(), w.a(), w.b())?;
    for i in 0..h.dim() {
        let row: Vec<String> = h.entries().row(i).iter().map(|x| format!("{x:e}")).collect();
        writeln!(out, "{}", row.join(","))?;
    }
    out.flush()?;
    Ok(())
}

fn family(problem: &ProblemSpec, left: Option<f64>) -> WindowFamily {
    match left {
        Some(left) => WindowFamily::Anchored { left },
        None if problem.is_radial() => WindowFamily::Anchored { left: 0.0 },
        None => WindowFamily::Symmetric,
    }
}

#[derive(Debug, Clone)]
pub struct ScanRun {
    pub problem: ProblemSpec,
    pub range: [f64; 2],
    pub step: f64,
    pub states: usize,
    pub left: Option<f64>,
}

pub fn scan(run: &ScanRun) -> Result<Table, CliError> {
    let potential = run.problem.build()?;
    let family = family(&run.problem, run.left);
    if let WindowFamily::Anchored { left } = family {
        check_window(&potential, "left", left)?;
    }
    let range = interval("range", run.range)?;
    if !(run.step > 0.0) {
        return Err(CliError::config("step", "must be positive"));
    }
    if run.states == 0 || run.states > run.problem.basis {
        return Err(CliError::config(
            "states",
            format!("must lie in 1..={}", run.problem.basis),
        ));
    }
    let problem = VariationalProblem::new(&potential, run.problem.basis).with_quadrature(run.problem.quadrature);
    let result = scan_l(&problem, family, run.states, range, run.step).map_err(|e| match e {
        sinebasis::Error::Domain(msg) => CliError::config("range", msg),
        other => other.into(),
    })?;

    let mut columns = vec!["L".to_string()];
    columns.extend((0..run.states).map(|k| format!("epsilon_{k}")));
    let mut table = Table::new(columns);
    let minima: Vec<_> = result
        .minima
        .iter()
        .enumerate()
        .map(|(k, (l, e))| json!({"state": k, "L": number(*l), "epsilon": number(*e)}))
        .collect();
    table
        .meta("command", "scan")
        .meta("version", VERSION)
        .meta("problem", run.problem.meta())
        .meta("range", json!([number(range.lo), number(range.hi)]))
        .meta("step", number(run.step))
        .meta("minima", minima);
    for (k, &l) in result.parameter_grid.iter().enumerate() {
        let mut row = vec![Cell::Num(l)];
        row.extend(result.eigencurves.iter().map(|curve| Cell::Num(curve[k])));
        table.push(row);
    }
    Ok(table)
}

#[derive(Debug, Clone)]
pub struct OptimizeRun {
    pub problem: ProblemSpec,
    pub states: usize,
    pub l_range: Option<[f64; 2]>,
    pub a_range: Option<[f64; 2]>,
    pub b_range: Option<[f64; 2]>,
    pub left: Option<f64>,
    pub joint: bool,
}

pub fn optimize(run: &OptimizeRun) -> Result<Table, CliError> {
    let potential = run.problem.build()?;
    if run.states == 0 || run.states > run.problem.basis {
        return Err(CliError::config(
            "states",
            format!("must lie in 1..={}", run.problem.basis),
        ));
    }
    let problem = VariationalProblem::new(&potential, run.problem.basis).with_quadrature(run.problem.quadrature);
    let mut table = Table::new(["state", "a", "b", "epsilon", "evaluations"]);
    table
        .meta("command", "optimize")
        .meta("version", VERSION)
        .meta("problem", run.problem.meta());

    let reports = match (run.a_range, run.b_range, run.l_range) {
        (Some(a), b, _) => {
            let a_range = interval("a-range", a)?;
            let b_range = interval("b-range", crate::config::required("b-range", b)?)?;
            if run.joint {
                return Err(CliError::config("joint", "joint mode applies to --l-range only"));
            }
            if !(a_range.hi < b_range.lo) {
                return Err(CliError::config("a-range", "must lie strictly below --b-range"));
            }
            table
                .meta("a_range", json!([number(a_range.lo), number(a_range.hi)]))
                .meta("b_range", json!([number(b_range.lo), number(b_range.hi)]));
            (0..run.states)
                .into_par_iter()
                .map(|s| minimize_ab(&problem, s, a_range, b_range))
                .collect::<Result<Vec<_>, _>>()?
        }
        (None, Some(_), _) => return Err(CliError::config("a-range", "required together with --b-range")),
        (None, None, l) => {
            let l_range = interval("l-range", crate::config::required("l-range", l)?)?;
            let family = family(&run.problem, run.left);
            if let WindowFamily::Anchored { left } = family {
                check_window(&potential, "left", left)?;
                if l_range.lo <= left {
                    return Err(CliError::config(
                        "l-range",
                        format!("must lie above the left end {left}"),
                    ));
                }
            } else if l_range.lo <= 0.0 {
                return Err(CliError::config("l-range", "half-widths must be positive"));
            }
            table
                .meta("l_range", json!([number(l_range.lo), number(l_range.hi)]))
                .meta("joint", run.joint);
            if run.joint {
                minimize_l_joint(&problem, family, run.states, l_range, &SearchSettings::default())?
            } else {
                (0..run.states)
                    .into_par_iter()
                    .map(|s| minimize_l(&problem, family, s, l_range))
                    .collect::<Result<Vec<_>, _>>()?
            }
        }
    };
    for r in reports {
        table.push(vec![
            r.state_index.into(),
            r.best_window.a().into(),
            r.best_window.b().into(),
            r.best_value.into(),
            r.evaluations.into(),
        ]);
    }
    Ok(table)
}

#[derive(Debug, Clone)]
pub struct NbosonRun {
    pub kind: String,
    pub coupling: f64,
    pub particles: usize,
    /// Catalog entry for `kind = general`.
    pub potential: Option<(String, Vec<f64>)>,
}

pub fn nboson(run: &NbosonRun) -> Result<Table, CliError> {
    let kind = match run.kind.as_str() {
        "harmonic" => PairKind::Harmonic,
        "delta" => PairKind::Delta,
        "general" => {
            let (name, params) = crate::config::required("potential", run.potential.clone())?;
            PairKind::General(catalog(&name, &params).map_err(|e| CliError::config("potential", e.to_string()))?)
        }
        other => {
            return Err(CliError::config(
                "kind",
                format!("unknown kind '{other}', expected harmonic, delta or general"),
            ))
        }
    };
    let system = BosonSystem::new(run.particles, run.coupling, kind).map_err(|e| {
        let field = if run.particles < 2 { "n" } else { "c" };
        CliError::config(field, e.to_string())
    })?;
    let optional = |r: sinebasis::Result<f64>| match r {
        Ok(x) => Ok(Some(x)),
        Err(sinebasis::Error::Unsupported(_)) => Ok(None),
        Err(e) => Err(CliError::from(e)),
    };
    let lower = optional(system.lower_bound())?;
    let exact = optional(system.exact_energy())?;
    let upper = system.upper_bound()?;

    let mut table = Table::new(["kind", "N", "c", "E_L", "E", "E_U"]);
    table.meta("command", "nboson").meta("version", VERSION);
    table.push(vec![
        run.kind.as_str().into(),
        run.particles.into(),
        run.coupling.into(),
        lower.into(),
        exact.into(),
        upper.into(),
    ]);
    Ok(table)
}
