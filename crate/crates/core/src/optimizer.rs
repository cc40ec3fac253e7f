//! Minimizing variational eigenvalues over the basis window.
//!
//! Every eigenvalue of the Ritz matrix is an upper bound for the matching
//! exact eigenvalue whatever the window, so the window endpoints are free
//! variational parameters. The `ε(L)` curves are smooth with wide flat basins
//! but are not unimodal over wide ranges, hence a coarse grid scan precedes
//! each golden-section refinement.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::basis::BasisWindow;
use crate::eigensolve::{eigenvalues_symmetric, symmetric_eigen, SpectrumEstimate};
use crate::error::{domain, Result};
use crate::hamiltonian::{assemble, rayleigh_quotient};
use crate::potentials::Potential;
use crate::quadrature::QuadratureConfig;

/// Windows never start closer than this to a strong singularity.
pub const SINGULAR_LEFT_FLOOR: f64 = 1e-4;

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// A closed parameter interval; `lo == hi` pins the parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) || lo > hi {
            return Err(domain(format!("invalid interval [{lo}, {hi}]")));
        }
        Ok(Self { lo, hi })
    }

    pub fn point(x: f64) -> Self {
        Self { lo: x, hi: x }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    /// `count` equally spaced points including both ends.
    pub fn linspace(&self, count: usize) -> Vec<f64> {
        if count <= 1 || self.width() == 0.0 {
            return vec![self.lo];
        }
        let h = self.width() / (count - 1) as f64;
        (0..count)
            .map(|k| {
                if k + 1 == count {
                    self.hi
                } else {
                    self.lo + h * k as f64
                }
            })
            .collect()
    }
}

/// How a single length parameter `L` becomes a window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WindowFamily {
    /// `[-L, L]`
    Symmetric,
    /// `[left, L]`, used for radial problems with `left = 0`.
    Anchored { left: f64 },
}

impl WindowFamily {
    pub fn window(&self, l: f64, size: usize) -> Result<BasisWindow> {
        match *self {
            WindowFamily::Symmetric => BasisWindow::symmetric(l, size),
            WindowFamily::Anchored { left } => BasisWindow::new(left, l, size),
        }
    }

    /// Largest `L` keeping the window inside the confinement box.
    fn parameter_cap(&self, potential: &Potential) -> Option<f64> {
        let (lo, hi) = potential.confinement()?;
        Some(match self {
            WindowFamily::Symmetric => (-lo).min(hi),
            WindowFamily::Anchored { .. } => hi,
        })
    }
}

/// Potential, basis size and quadrature settings shared by every window.
#[derive(Debug, Clone)]
pub struct VariationalProblem<'a> {
    pub potential: &'a Potential,
    pub basis_size: usize,
    pub quadrature: QuadratureConfig,
}

impl<'a> VariationalProblem<'a> {
    pub fn new(potential: &'a Potential, basis_size: usize) -> Self {
        Self {
            potential,
            basis_size,
            quadrature: QuadratureConfig::default(),
        }
    }

    pub fn with_quadrature(mut self, quadrature: QuadratureConfig) -> Self {
        self.quadrature = quadrature;
        self
    }

    pub fn spectrum(&self, window: &BasisWindow, count: usize) -> Result<SpectrumEstimate> {
        let h = assemble(self.potential, window, &self.quadrature)?;
        eigenvalues_symmetric(&h, count)
    }

    /// Variational estimate `ε_state` (0-based) on `window`.
    ///
    /// For potentials stronger than `r⁻²` the matrix carries entries many
    /// orders of magnitude above the low eigenvalues, and eigenvalues read off
    /// the solver inherit rounding of order `ε_mach·‖H‖`. The estimate is then
    /// recomputed as the Rayleigh quotient of the Ritz vector evaluated on the
    /// quadrature grid, where the wave function itself is small near the
    /// wall.
    pub fn eigenvalue(&self, window: &BasisWindow, state: usize) -> Result<f64> {
        if self.potential.singularity_order() <= 2 {
            return Ok(self.spectrum(window, state + 1)?.eigenvalues[state]);
        }
        let h = assemble(self.potential, window, &self.quadrature)?;
        if state >= h.dim() {
            return Err(domain(format!("state {state} needs a basis larger than {}", h.dim())));
        }
        let eig = symmetric_eigen(h.entries())?;
        rayleigh_quotient(self.potential, window, &self.quadrature, eig.vector(state))
    }

    fn check_state(&self, state: usize) -> Result<()> {
        if state >= self.basis_size {
            return Err(domain(format!(
                "state {state} needs a basis larger than {}",
                self.basis_size
            )));
        }
        Ok(())
    }
}

/// Fig.-1 style data: `ε_n(L)` for the lowest states on a grid of `L`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanResult {
    pub parameter_grid: Vec<f64>,
    /// `eigencurves[n][k]` is `ε_n` at `parameter_grid[k]`.
    pub eigencurves: Vec<Vec<f64>>,
    /// Per state, the grid point `(L*, ε*)` with the lowest value (first one
    /// on ties).
    pub minima: Vec<(f64, f64)>,
}

/// Evaluates the `states` lowest eigenvalues at `L = lo, lo + step, …, hi`.
pub fn scan_l(
    problem: &VariationalProblem<'_>,
    family: WindowFamily,
    states: usize,
    range: Interval,
    step: f64,
) -> Result<ScanResult> {
    if !(step > 0.0) {
        return Err(domain(format!("scan step must be positive, got {step}")));
    }
    if states == 0 || states > problem.basis_size {
        return Err(domain(format!(
            "cannot track {states} states with a basis of {}",
            problem.basis_size
        )));
    }
    if let Some(cap) = family.parameter_cap(problem.potential) {
        if range.hi > cap {
            return Err(domain(format!(
                "scan range [{}, {}] exceeds the confinement limit {cap}",
                range.lo, range.hi
            )));
        }
    }
    let count = libm::floor(range.width() / step + 1e-9) as usize;
    let mut grid: Vec<f64> = (0..=count).map(|k| range.lo + step * k as f64).collect();
    if range.hi - grid[count] > 1e-9 * step {
        grid.push(range.hi);
    }
    let mut eigencurves = vec![Vec::with_capacity(grid.len()); states];
    for &l in &grid {
        let window = family.window(l, problem.basis_size)?;
        let spectrum = problem.spectrum(&window, states)?;
        for (curve, value) in eigencurves.iter_mut().zip(spectrum.eigenvalues) {
            curve.push(value);
        }
    }
    let minima = eigencurves
        .iter()
        .map(|curve| {
            let (k, v) = curve.iter().enumerate().fold(
                (0, f64::INFINITY),
                |best, (k, &v)| if v < best.1 { (k, v) } else { best },
            );
            (grid[k], v)
        })
        .collect();
    Ok(ScanResult {
        parameter_grid: grid,
        eigencurves,
        minima,
    })
}

/// Outcome of a window optimization for one state.
#[derive(Debug, Clone, PartialEq)]
pub struct OptimizationReport {
    pub state_index: usize,
    pub best_window: BasisWindow,
    pub best_value: f64,
    pub evaluations: usize,
    /// Best value after the coarse scan and after each refinement sweep.
    pub history: Vec<f64>,
}

/// Coarse-scan and refinement settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchSettings {
    pub coarse_points: usize,
    /// Final bracket width of the golden-section refinement.
    pub tolerance: f64,
    /// Coordinate descent stops once a sweep improves by less than this,
    /// relative.
    pub sweep_rel_tol: f64,
    pub max_sweeps: usize,
}

impl Default for SearchSettings {
    fn default() -> Self {
        Self {
            coarse_points: 25,
            tolerance: 1e-3,
            sweep_rel_tol: 1e-12,
            max_sweeps: 30,
        }
    }
}

/// Tracks the best point seen by a 1-D search.
struct Tracker<F> {
    f: F,
    best_x: f64,
    best_value: f64,
    evaluations: usize,
}

impl<F: FnMut(f64) -> Result<f64>> Tracker<F> {
    fn new(f: F) -> Self {
        Self {
            f,
            best_x: f64::NAN,
            best_value: f64::INFINITY,
            evaluations: 0,
        }
    }

    fn eval(&mut self, x: f64) -> Result<f64> {
        let v = (self.f)(x)?;
        self.evaluations += 1;
        if v < self.best_value {
            self.best_value = v;
            self.best_x = x;
        }
        Ok(v)
    }

    /// Coarse grid over `range`, then golden-section inside the cells
    /// adjacent to the best grid point.
    fn scan_and_refine(&mut self, range: Interval, points: usize, tolerance: f64) -> Result<()> {
        let grid = range.linspace(points.max(1));
        let mut values = Vec::with_capacity(grid.len());
        for &x in &grid {
            values.push(self.eval(x)?);
        }
        if grid.len() < 2 {
            return Ok(());
        }
        let k = (0..grid.len()).fold(0, |b, k| if values[k] < values[b] { k } else { b });
        let lo = grid[k.saturating_sub(1)];
        let hi = grid[(k + 1).min(grid.len() - 1)];
        self.golden(lo, hi, tolerance)
    }

    fn golden(&mut self, mut lo: f64, mut hi: f64, tolerance: f64) -> Result<()> {
        if !(hi - lo > tolerance) {
            return Ok(());
        }
        let mut x1 = hi - INV_PHI * (hi - lo);
        let mut x2 = lo + INV_PHI * (hi - lo);
        let mut f1 = self.eval(x1)?;
        let mut f2 = self.eval(x2)?;
        while hi - lo > tolerance {
            if f1 <= f2 {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - INV_PHI * (hi - lo);
                f1 = self.eval(x1)?;
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + INV_PHI * (hi - lo);
                f2 = self.eval(x2)?;
            }
        }
        Ok(())
    }
}

fn clamp_to_cap(problem: &VariationalProblem<'_>, family: WindowFamily, range: Interval) -> Result<Interval> {
    match family.parameter_cap(problem.potential) {
        Some(cap) if range.lo > cap => Err(domain(format!(
            "range [{}, {}] lies outside the confinement limit {cap}",
            range.lo, range.hi
        ))),
        Some(cap) => Interval::new(range.lo, range.hi.min(cap)),
        None => Ok(range),
    }
}

/// Minimizes `ε_state` over `L ∈ range` with default search settings.
pub fn minimize_l(
    problem: &VariationalProblem<'_>,
    family: WindowFamily,
    state: usize,
    range: Interval,
) -> Result<OptimizationReport> {
    minimize_l_with(problem, family, state, range, &SearchSettings::default())
}

pub fn minimize_l_with(
    problem: &VariationalProblem<'_>,
    family: WindowFamily,
    state: usize,
    range: Interval,
    settings: &SearchSettings,
) -> Result<OptimizationReport> {
    problem.check_state(state)?;
    let range = clamp_to_cap(problem, family, range)?;
    let mut tracker = Tracker::new(|l| problem.eigenvalue(&family.window(l, problem.basis_size)?, state));
    tracker.scan_and_refine(range, settings.coarse_points, settings.tolerance)?;
    Ok(OptimizationReport {
        state_index: state,
        best_window: family.window(tracker.best_x, problem.basis_size)?,
        best_value: tracker.best_value,
        evaluations: tracker.evaluations,
        history: vec![tracker.best_value],
    })
}

/// One window shared by the `count` lowest states, chosen to minimize their
/// sum.
pub fn minimize_l_joint(
    problem: &VariationalProblem<'_>,
    family: WindowFamily,
    count: usize,
    range: Interval,
    settings: &SearchSettings,
) -> Result<Vec<OptimizationReport>> {
    if count == 0 {
        return Ok(Vec::new());
    }
    problem.check_state(count - 1)?;
    let range = clamp_to_cap(problem, family, range)?;
    let mut tracker = Tracker::new(|l| {
        let spectrum = problem.spectrum(&family.window(l, problem.basis_size)?, count)?;
        Ok(spectrum.eigenvalues.iter().sum())
    });
    tracker.scan_and_refine(range, settings.coarse_points, settings.tolerance)?;
    let evaluations = tracker.evaluations;
    let window = family.window(tracker.best_x, problem.basis_size)?;
    let spectrum = problem.spectrum(&window, count)?;
    Ok(spectrum
        .eigenvalues
        .iter()
        .enumerate()
        .map(|(state, &value)| OptimizationReport {
            state_index: state,
            best_window: window,
            best_value: value,
            evaluations,
            history: vec![value],
        })
        .collect())
}

/// Minimizes `ε_state` over both endpoints with default settings.
pub fn minimize_ab(
    problem: &VariationalProblem<'_>,
    state: usize,
    a_range: Interval,
    b_range: Interval,
) -> Result<OptimizationReport> {
    let settings = SearchSettings {
        tolerance: 1e-4,
        ..SearchSettings::default()
    };
    minimize_ab_with(problem, state, a_range, b_range, &settings)
}

/// Coordinate descent over `(a, b)`: a coarse scan of `b` at the lowest
/// admissible `a` seeds the search, then golden-section steps alternate
/// between the coordinates until a full sweep stops improving.
pub fn minimize_ab_with(
    problem: &VariationalProblem<'_>,
    state: usize,
    a_range: Interval,
    b_range: Interval,
    settings: &SearchSettings,
) -> Result<OptimizationReport> {
    problem.check_state(state)?;
    let potential = problem.potential;
    let mut a_range = a_range;
    let mut b_range = b_range;
    if potential.singularity_order() > 2 {
        let floor = SINGULAR_LEFT_FLOOR.max(potential.domain_left());
        if a_range.hi < floor {
            return Err(domain(format!(
                "a range [{}, {}] lies below the singular floor {floor}",
                a_range.lo, a_range.hi
            )));
        }
        a_range.lo = a_range.lo.max(floor);
    }
    if let Some((lo, hi)) = potential.confinement() {
        a_range.lo = a_range.lo.max(lo);
        b_range.hi = b_range.hi.min(hi);
        Interval::new(a_range.lo, a_range.hi)?;
        Interval::new(b_range.lo, b_range.hi)?;
    }
    if !(a_range.hi < b_range.lo) {
        return Err(domain(format!(
            "a range [{}, {}] must lie strictly below b range [{}, {}]",
            a_range.lo, a_range.hi, b_range.lo, b_range.hi
        )));
    }

    let n = problem.basis_size;
    let eval = |a: f64, b: f64| problem.eigenvalue(&BasisWindow::new(a, b, n)?, state);
    let a_grid = a_range.linspace(settings.coarse_points);
    let b_grid = b_range.linspace(settings.coarse_points);
    let a_step = if a_grid.len() > 1 { a_grid[1] - a_grid[0] } else { 0.0 };
    let b_step = if b_grid.len() > 1 { b_grid[1] - b_grid[0] } else { 0.0 };

    let mut evaluations = 0;
    let mut a = a_range.lo;
    let mut tracker = Tracker::new(|b| eval(a, b));
    tracker.scan_and_refine(b_range, settings.coarse_points, settings.tolerance)?;
    let mut b = tracker.best_x;
    let mut best = tracker.best_value;
    evaluations += tracker.evaluations;
    let mut history = vec![best];

    for _ in 0..settings.max_sweeps {
        let start = best;
        if a_range.width() > 0.0 {
            let mut t = Tracker::new(|x| eval(x, b));
            t.best_x = a;
            t.best_value = best;
            if history.len() == 1 {
                t.scan_and_refine(a_range, settings.coarse_points, settings.tolerance)?;
            } else {
                t.golden(
                    (a - a_step).max(a_range.lo),
                    (a + a_step).min(a_range.hi),
                    settings.tolerance,
                )?;
            }
            evaluations += t.evaluations;
            a = t.best_x;
            best = t.best_value;
        }
        if b_range.width() > 0.0 {
            let mut t = Tracker::new(|x| eval(a, x));
            t.best_x = b;
            t.best_value = best;
            t.golden(
                (b - b_step).max(b_range.lo),
                (b + b_step).min(b_range.hi),
                settings.tolerance,
            )?;
            evaluations += t.evaluations;
            b = t.best_x;
            best = t.best_value;
        }
        history.push(best);
        if start - best <= settings.sweep_rel_tol * libm::fabs(start) {
            break;
        }
    }
    Ok(OptimizationReport {
        state_index: state,
        best_window: BasisWindow::new(a, b, n)?,
        best_value: best,
        evaluations,
        history,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potentials::{effective_radial, RadialProblem};

    #[test]
    fn interval_linspace() {
        let g = Interval::new(5.5, 8.0).unwrap().linspace(26);
        assert_eq!(g.len(), 26);
        assert_eq!((g[0], g[25]), (5.5, 8.0));
        assert!((g[1] - 5.6).abs() < 1e-15);
        assert_eq!(Interval::point(3.0).linspace(25), vec![3.0]);
        assert!(Interval::new(2.0, 1.0).is_err());
    }

    #[test]
    fn oscillator_scan_hits_table_point() {
        let v = Potential::harmonic(1.0);
        let p = VariationalProblem::new(&v, 50);
        let scan = scan_l(&p, WindowFamily::Symmetric, 2, Interval::new(6.80, 6.92).unwrap(), 0.02).unwrap();
        assert_eq!(scan.parameter_grid.len(), 7);
        assert_eq!(scan.eigencurves.len(), 2);
        assert!((scan.minima[0].1 - 1.0).abs() < 1e-9);
        assert!(scan.eigencurves[0].iter().all(|&e| e >= 1.0 - 1e-10));
    }

    #[test]
    fn confined_free_particle_prefers_the_wall() {
        let v = Potential::zero().with_confinement(-1.0, 1.0);
        let p = VariationalProblem::new(&v, 6);
        let scan = scan_l(&p, WindowFamily::Symmetric, 1, Interval::new(0.2, 1.0).unwrap(), 0.1).unwrap();
        assert!(scan.eigencurves[0].windows(2).all(|w| w[1] < w[0]));
        assert_eq!(scan.minima[0].0, 1.0);
        assert!(scan_l(&p, WindowFamily::Symmetric, 1, Interval::new(0.5, 1.5).unwrap(), 0.1).is_err());

        let report = minimize_l(&p, WindowFamily::Symmetric, 0, Interval::new(0.2, 3.0).unwrap()).unwrap();
        assert_eq!(report.best_window.b(), 1.0);
        assert!((report.best_value - core::f64::consts::PI.powi(2) / 4.0).abs() < 1e-13);
    }

    #[test]
    fn degenerate_range_evaluates_once() {
        let v = Potential::harmonic(1.0);
        let p = VariationalProblem::new(&v, 10);
        let r = minimize_l(&p, WindowFamily::Symmetric, 0, Interval::point(4.0)).unwrap();
        assert_eq!(r.evaluations, 1);
        assert_eq!(r.best_window.b(), 4.0);
    }

    #[test]
    fn refinement_never_worse_than_grid() {
        let v = Potential::quartic_anharmonic(1.0, 1.0);
        let p = VariationalProblem::new(&v, 12);
        let range = Interval::new(2.0, 4.0).unwrap();
        let grid_best = range
            .linspace(25)
            .into_iter()
            .map(|l| p.eigenvalue(&BasisWindow::symmetric(l, 12).unwrap(), 1).unwrap())
            .fold(f64::INFINITY, f64::min);
        let r = minimize_l(&p, WindowFamily::Symmetric, 1, range).unwrap();
        assert!(r.best_value <= grid_best);
        assert!(r.evaluations > 25);
    }

    #[test]
    fn ab_with_pinned_left_reduces_to_l() {
        let v = effective_radial(&RadialProblem::new(3, 0, Potential::harmonic(1.0)).unwrap()).unwrap();
        let p = VariationalProblem::new(&v, 16);
        let settings = SearchSettings::default();
        let ab = minimize_ab_with(&p, 0, Interval::point(0.0), Interval::new(3.0, 8.0).unwrap(), &settings).unwrap();
        let l = minimize_l_with(
            &p,
            WindowFamily::Anchored { left: 0.0 },
            0,
            Interval::new(3.0, 8.0).unwrap(),
            &settings,
        )
        .unwrap();
        assert_eq!(ab.best_window.a(), 0.0);
        assert!((ab.best_value - l.best_value).abs() < 1e-9);
    }

    #[test]
    fn ab_sweeps_never_increase() {
        let v = Potential::singular_abc(1.0, 1.0, 1.0);
        let p = VariationalProblem::new(&v, 30);
        let r = minimize_ab(
            &p,
            0,
            Interval::new(0.005, 0.3).unwrap(),
            Interval::new(4.0, 7.0).unwrap(),
        )
        .unwrap();
        assert!(r.history.windows(2).all(|w| w[1] <= w[0]));
        assert!(r.best_value >= 5.0 - 1e-10);
        assert!(r.best_window.a() >= 0.005);
    }

    #[test]
    fn ab_rejects_bad_ranges() {
        let v = Potential::singular_abc(1.0, 1.0, 1.0);
        let p = VariationalProblem::new(&v, 8);
        assert!(minimize_ab(
            &p,
            0,
            Interval::new(0.1, 5.0).unwrap(),
            Interval::new(4.0, 7.0).unwrap()
        )
        .is_err());
        assert!(minimize_ab(
            &p,
            0,
            Interval::new(0.0, 1e-5).unwrap(),
            Interval::new(4.0, 7.0).unwrap()
        )
        .is_err());
        assert!(minimize_ab(
            &p,
            9,
            Interval::new(0.01, 0.1).unwrap(),
            Interval::new(4.0, 7.0).unwrap()
        )
        .is_err());
    }

    #[test]
    fn joint_mode_shares_window() {
        let v = Potential::harmonic(1.0);
        let p = VariationalProblem::new(&v, 30);
        let reports = minimize_l_joint(
            &p,
            WindowFamily::Symmetric,
            3,
            Interval::new(4.0, 7.0).unwrap(),
            &SearchSettings::default(),
        )
        .unwrap();
        assert_eq!(reports.len(), 3);
        assert!(reports.iter().all(|r| r.best_window == reports[0].best_window));
        for (k, r) in reports.iter().enumerate() {
            assert!((r.best_value - (2 * k + 1) as f64).abs() < 1e-6);
        }
    }
}
