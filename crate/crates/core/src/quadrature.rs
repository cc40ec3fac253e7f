//! Composite Gauss-Legendre quadrature and potential matrix elements.
//!
//! Matrix elements `Pᵢⱼ = ∫ φᵢ V φⱼ` are computed one of two ways:
//!
//! * polynomials of degree ≤ 4 use exact cosine moments. With `χ = (x-a)/(b-a)`
//!   the product-to-sum identity gives
//!   `φᵢφⱼ dx = [cos((i-j)πχ) - cos((i+j)πχ)] dχ`, so
//!   `Pᵢⱼ = M(|i-j|) - M(i+j)` with `M(k) = ∫₀¹ V(a + (b-a)χ) cos(kπχ) dχ`;
//! * everything else is integrated on one shared composite grid with
//!   `Pᵢⱼ = Σ_q w_q V(x_q) φᵢ(x_q) φⱼ(x_q)`. The product form is evaluated
//!   directly rather than as a difference of cosines, which would cancel
//!   catastrophically next to an `r⁻⁶` wall.
//!
//! Panels are at most about two periods of `cos((i+j)πχ)` wide, and the
//! first panel is refined geometrically toward a singular left endpoint.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::basis::BasisWindow;
use crate::error::{domain, Error, Result};
use crate::matrix::SymmetricMatrix;
use crate::potentials::Potential;

/// Composite-rule settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    /// Gauss-Legendre order on each panel.
    pub nodes_per_panel: usize,
    /// Minimum number of uniform panels.
    pub panels: usize,
    /// Width ratio of successive panels toward a singular left endpoint;
    /// `1` disables grading.
    pub geometric_grading: f64,
    pub target_rel_tol: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            nodes_per_panel: 64,
            panels: 8,
            geometric_grading: 0.5,
            target_rel_tol: 1e-12,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if self.nodes_per_panel < 2 {
            return Err(domain("nodes_per_panel must be at least 2"));
        }
        if self.panels < 1 {
            return Err(domain("panels must be at least 1"));
        }
        if !(self.geometric_grading > 0.0 && self.geometric_grading <= 1.0) {
            return Err(domain(format!(
                "geometric_grading must lie in (0, 1], got {}",
                self.geometric_grading
            )));
        }
        if !(self.target_rel_tol > 0.0) {
            return Err(domain("target_rel_tol must be positive"));
        }
        Ok(())
    }

    pub fn refined(&self) -> Self {
        Self {
            nodes_per_panel: 2 * self.nodes_per_panel,
            ..*self
        }
    }
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`, nodes ascending.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }
}

/// Legendre `P_n(x)` and `P_n'(x)` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

pub fn gauss_legendre(n: usize) -> GaussLegendre {
    assert!(n >= 1, "Gauss-Legendre order must be positive");
    if n == 1 {
        return GaussLegendre {
            nodes: vec![0.0],
            weights: vec![2.0],
        };
    }
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = libm::cos(PI * (i as f64 + 0.75) / (n as f64 + 0.5));
        for _ in 0..100 {
            let (p, dp) = legendre(n, x);
            let dx = p / dp;
            x -= dx;
            if libm::fabs(dx) < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    GaussLegendre { nodes, weights }
}

/// Smallest graded panel relative to the interval length.
const GRADED_FLOOR: f64 = 1e-6;

/// Abscissas and weights of a composite rule on `[a, b]`.
#[derive(Debug, Clone)]
pub(crate) struct Grid {
    pub xs: Vec<f64>,
    pub ws: Vec<f64>,
}

impl Grid {
    pub(crate) fn build(a: f64, b: f64, rule: &GaussLegendre, panels: usize, grading: Option<f64>) -> Self {
        let panels = panels.max(1);
        let h = (b - a) / panels as f64;
        let mut breaks = Vec::with_capacity(panels + 64);
        breaks.push(a);
        if let Some(g) = grading.filter(|g| *g < 1.0) {
            let floor = GRADED_FLOOR * (b - a);
            let mut inner = Vec::new();
            let mut width = h * g;
            while width > floor && inner.len() < 200 {
                inner.push(a + width);
                width *= g;
            }
            breaks.extend(inner.into_iter().rev());
        }
        for k in 1..panels {
            breaks.push(a + h * k as f64);
        }
        breaks.push(b);

        let mut xs = Vec::with_capacity((breaks.len() - 1) * rule.order());
        let mut ws = Vec::with_capacity(xs.capacity());
        for pair in breaks.windows(2) {
            let (lo, hi) = (pair[0], pair[1]);
            let (mid, half) = (0.5 * (lo + hi), 0.5 * (hi - lo));
            for (t, w) in rule.nodes.iter().zip(&rule.weights) {
                xs.push(mid + half * t);
                ws.push(half * w);
            }
        }
        Self { xs, ws }
    }

    fn sum<F: Fn(f64) -> f64>(&self, f: F) -> Result<f64> {
        let mut acc = 0.0;
        for (&x, &w) in self.xs.iter().zip(&self.ws) {
            let y = f(x);
            if !y.is_finite() {
                return Err(Error::Integration { abscissa: x });
            }
            acc += w * y;
        }
        Ok(acc)
    }
}

/// Result of [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    /// `|value - value_refined|`, where the refined value doubles the nodes
    /// per panel.
    pub err_estimate: f64,
}

/// `∫ₐᵇ f(x) dx` by composite Gauss-Legendre.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
    singular_left: bool,
) -> Result<Integral> {
    integrate_with_panels(&f, a, b, cfg, cfg.panels, singular_left)
}

pub(crate) fn integrate_with_panels<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
    panels: usize,
    singular_left: bool,
) -> Result<Integral> {
    cfg.validate()?;
    if !(a < b) {
        return Err(domain(format!("integration requires a < b, got [{a}, {b}]")));
    }
    let grading = singular_left.then_some(cfg.geometric_grading);
    let coarse = Grid::build(a, b, &gauss_legendre(cfg.nodes_per_panel), panels, grading);
    let fine = Grid::build(a, b, &gauss_legendre(2 * cfg.nodes_per_panel), panels, grading);
    let value = coarse.sum(f)?;
    let refined = fine.sum(f)?;
    Ok(Integral {
        value,
        err_estimate: libm::fabs(value - refined),
    })
}

/// Uniform panel count needed to resolve `cos(kπχ)` on the window.
fn oscillation_panels(cfg: &QuadratureConfig, max_frequency: usize) -> usize {
    cfg.panels.max(max_frequency.div_ceil(4))
}

/// `(φᵢ, V φⱼ)` for 1-based `i, j`.
pub fn potential_matrix_element(
    potential: &Potential,
    i: usize,
    j: usize,
    window: &BasisWindow,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    cfg.validate()?;
    for n in [i, j] {
        if n == 0 || n > window.size() {
            return Err(Error::Index {
                index: n,
                size: window.size(),
            });
        }
    }
    potential.check_window(window)?;
    let (lo, hi) = if i <= j { (i, j) } else { (j, i) };
    if parity_forbidden(potential, window, lo + hi) {
        return Ok(0.0);
    }
    if let Some(coeffs) = potential.polynomial() {
        let m = cosine_moments(&coeffs, window, hi + lo);
        return Ok(m[hi - lo] - m[hi + lo]);
    }
    let grid = Grid::build(
        window.a(),
        window.b(),
        &gauss_legendre(cfg.nodes_per_panel),
        oscillation_panels(cfg, lo + hi),
        grading_for(potential, cfg),
    );
    grid.sum(|x| window.eval_unchecked(lo, x) * potential.eval(x) * window.eval_unchecked(hi, x))
}

/// The full `N × N` potential matrix on `window`.
pub fn potential_matrix(
    potential: &Potential,
    window: &BasisWindow,
    cfg: &QuadratureConfig,
) -> Result<SymmetricMatrix> {
    cfg.validate()?;
    potential.check_window(window)?;
    match potential.polynomial() {
        Some(coeffs) => Ok(polynomial_matrix(potential, &coeffs, window)),
        None => quadrature_matrix(potential, window, cfg),
    }
}

fn parity_forbidden(potential: &Potential, window: &BasisWindow, index_sum: usize) -> bool {
    index_sum % 2 == 1 && window.is_symmetric() && potential.is_even()
}

fn grading_for(potential: &Potential, cfg: &QuadratureConfig) -> Option<f64> {
    (potential.singularity_order() > 0).then_some(cfg.geometric_grading)
}

fn polynomial_matrix(potential: &Potential, coeffs: &[f64; 5], window: &BasisWindow) -> SymmetricMatrix {
    let n = window.size();
    let m = cosine_moments(coeffs, window, 2 * n);
    let mut out = SymmetricMatrix::zeros(n);
    for i in 1..=n {
        for j in i..=n {
            if !parity_forbidden(potential, window, i + j) {
                out.set(i - 1, j - 1, m[j - i] - m[i + j]);
            }
        }
    }
    out
}

fn quadrature_matrix(potential: &Potential, window: &BasisWindow, cfg: &QuadratureConfig) -> Result<SymmetricMatrix> {
    let n = window.size();
    let grid = Grid::build(
        window.a(),
        window.b(),
        &gauss_legendre(cfg.nodes_per_panel),
        oscillation_panels(cfg, 2 * n),
        grading_for(potential, cfg),
    );
    let q = grid.xs.len();
    let mut weighted = Vec::with_capacity(q);
    for (&x, &w) in grid.xs.iter().zip(&grid.ws) {
        let v = potential.eval(x);
        if !v.is_finite() {
            return Err(Error::Integration { abscissa: x });
        }
        weighted.push(w * v);
    }
    // sines[(k-1)*q + node] = φₖ(x_node)
    let mut sines = vec![0.0; n * q];
    let norm = libm::sqrt(2.0 / window.width());
    for (node, &x) in grid.xs.iter().enumerate() {
        let theta = PI * (x - window.a()) / window.width();
        for k in 1..=n {
            sines[(k - 1) * q + node] = norm * libm::sin(k as f64 * theta);
        }
    }
    let skip_odd = window.is_symmetric() && potential.is_even();
    let mut out = SymmetricMatrix::zeros(n);
    let mut scratch = vec![0.0; q];
    for i in 0..n {
        let row_i = &sines[i * q..(i + 1) * q];
        for ((s, &r), &wv) in scratch.iter_mut().zip(row_i).zip(&weighted) {
            *s = r * wv;
        }
        for j in i..n {
            if skip_odd && (i + j) % 2 == 1 {
                continue;
            }
            let row_j = &sines[j * q..(j + 1) * q];
            out.set(i, j, dot(&scratch, row_j));
        }
    }
    Ok(out)
}

/// `∫ V ψ²` for `ψ = Σ cₖ φₖ`, integrated on the matrix grid.
pub(crate) fn potential_expectation(
    potential: &Potential,
    window: &BasisWindow,
    cfg: &QuadratureConfig,
    coeffs: &[f64],
) -> Result<f64> {
    cfg.validate()?;
    potential.check_window(window)?;
    let n = coeffs.len();
    let grid = Grid::build(
        window.a(),
        window.b(),
        &gauss_legendre(cfg.nodes_per_panel),
        oscillation_panels(cfg, 2 * n),
        grading_for(potential, cfg),
    );
    let norm = libm::sqrt(2.0 / window.width());
    grid.sum(|x| {
        let theta = PI * (x - window.a()) / window.width();
        let psi: f64 = coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c * libm::sin((k + 1) as f64 * theta))
            .sum();
        let psi = norm * psi;
        if psi == 0.0 {
            0.0
        } else {
            potential.eval(x) * psi * psi
        }
    })
}

fn dot(x: &[f64], y: &[f64]) -> f64 {
    // Four accumulators let the compiler vectorize without -ffast-math.
    let mut acc = [0.0; 4];
    let chunks = x.len() / 4;
    for c in 0..chunks {
        for l in 0..4 {
            acc[l] += x[4 * c + l] * y[4 * c + l];
        }
    }
    let mut tail = 0.0;
    for k in 4 * chunks..x.len() {
        tail += x[k] * y[k];
    }
    (acc[0] + acc[1]) + (acc[2] + acc[3]) + tail
}

/// `M(k) = ∫₀¹ p(a + (b-a)χ) cos(kπχ) dχ` for `k = 0..=max_k`, where `p` has
/// coefficients `coeffs` in `x`.
pub(crate) fn cosine_moments(coeffs: &[f64; 5], window: &BasisWindow, max_k: usize) -> Vec<f64> {
    let (a, len) = (window.a(), window.width());
    // p(a + Lχ) = Σ_m d_m χ^m
    let mut d = [0.0; 5];
    for (p, &c) in coeffs.iter().enumerate() {
        if c == 0.0 {
            continue;
        }
        for m in 0..=p {
            d[m] += c
                * binomial(p, m)
                * crate::potentials::powi(a, (p - m) as i32)
                * crate::potentials::powi(len, m as i32);
        }
    }
    let even_symmetric = window.is_symmetric() && coeffs[1] == 0.0 && coeffs[3] == 0.0;
    (0..=max_k)
        .map(|k| {
            if k == 0 {
                return d.iter().enumerate().map(|(m, dm)| dm / (m as f64 + 1.0)).sum();
            }
            if even_symmetric && k % 2 == 1 {
                return 0.0;
            }
            let powers = chi_power_cosine_moments(k);
            d.iter().zip(powers).map(|(dm, c)| dm * c).sum()
        })
        .collect()
}

/// `∫₀¹ χ^m cos(kπχ) dχ` for `m = 0..=4`, `k ≥ 1`, by integration by parts.
fn chi_power_cosine_moments(k: usize) -> [f64; 5] {
    let omega = k as f64 * PI;
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    let mut cos_m = [0.0; 5];
    // ∫ χ^m sin(ωχ)
    let mut sin_prev = (1.0 - sign) / omega;
    for m in 1..=4 {
        let mf = m as f64;
        cos_m[m] = -mf / omega * sin_prev;
        sin_prev = -sign / omega + mf / omega * cos_m[m - 1];
    }
    cos_m
}

fn binomial(n: usize, k: usize) -> f64 {
    const TABLE: [[f64; 5]; 5] = [
        [1.0, 0.0, 0.0, 0.0, 0.0],
        [1.0, 1.0, 0.0, 0.0, 0.0],
        [1.0, 2.0, 1.0, 0.0, 0.0],
        [1.0, 3.0, 3.0, 1.0, 0.0],
        [1.0, 4.0, 6.0, 4.0, 1.0],
    ];
    TABLE[n][k]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potentials::{effective_radial, RadialProblem, Term};

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn legendre_rule_integrates_polynomials_exactly() {
        let rule = gauss_legendre(7);
        for p in 0..=13 {
            let s: f64 = rule
                .nodes()
                .iter()
                .zip(rule.weights())
                .map(|(x, w)| w * x.powi(p))
                .sum();
            let exact = if p % 2 == 0 { 2.0 / (p as f64 + 1.0) } else { 0.0 };
            assert!((s - exact).abs() < 1e-14, "degree {p}: {s}");
        }
        let w: f64 = gauss_legendre(64).weights().iter().sum();
        assert!((w - 2.0).abs() < 1e-14);
    }

    #[test]
    fn integrate_examples() {
        let one = integrate(|_| 1.0, 0.0, 1.0, &cfg(), false).unwrap();
        assert!((one.value - 1.0).abs() < 1e-15 && one.err_estimate < 1e-14);

        let s2 = integrate(|x| (PI * x).sin().powi(2), 0.0, 1.0, &cfg(), false).unwrap();
        assert!((s2.value - 0.5).abs() < 1e-14 && s2.err_estimate <= 1e-12);

        let inv = integrate(|x| x.powi(-2), 0.01, 5.2, &cfg(), true).unwrap();
        let exact = 1.0 / 0.01 - 1.0 / 5.2;
        assert!((inv.value - exact).abs() < 1e-12 * exact, "{}", inv.value);
        assert!(inv.err_estimate < 1e-10);
    }

    #[test]
    fn integrate_reports_bad_abscissa() {
        let err = integrate(|x| if x > 0.5 { f64::NAN } else { x }, 0.0, 1.0, &cfg(), false).unwrap_err();
        match err {
            Error::Integration { abscissa } => assert!(abscissa > 0.5),
            other => panic!("{other:?}"),
        }
        assert!(integrate(|x| x, 1.0, 0.0, &cfg(), false).is_err());
    }

    #[test]
    fn config_validation() {
        let bad = [
            QuadratureConfig {
                nodes_per_panel: 1,
                ..cfg()
            },
            QuadratureConfig { panels: 0, ..cfg() },
            QuadratureConfig {
                geometric_grading: 0.0,
                ..cfg()
            },
            QuadratureConfig {
                geometric_grading: 1.5,
                ..cfg()
            },
            QuadratureConfig {
                target_rel_tol: 0.0,
                ..cfg()
            },
        ];
        for c in bad {
            assert!(c.validate().is_err(), "{c:?}");
        }
        assert!(cfg().validate().is_ok());
    }

    #[test]
    fn constant_potential_is_identity() {
        let w = BasisWindow::new(-0.7, 3.1, 9).unwrap();
        let one = Potential::new(
            "one",
            vec![Term::Power {
                coeff: 1.0,
                exponent: 0,
            }],
        );
        for i in 1..=9 {
            for j in 1..=9 {
                let p = potential_matrix_element(&one, i, j, &w, &cfg()).unwrap();
                if i == j {
                    assert!((p - 1.0).abs() < 1e-15);
                } else {
                    assert!(p.abs() < 1e-15, "({i},{j}) {p}");
                }
            }
        }
    }

    #[test]
    fn harmonic_ground_element_matches_oracle() {
        // Oracle: a single 200-point Gauss-Legendre panel on the raw product.
        let rule = gauss_legendre(200);
        for l in [0.5, 1.0, 6.86] {
            let w = BasisWindow::symmetric(l, 3).unwrap();
            let brute: f64 = rule
                .nodes()
                .iter()
                .zip(rule.weights())
                .map(|(t, wt)| {
                    let x = l * t;
                    wt * l * x * x * w.function(1, x).unwrap().powi(2)
                })
                .sum();
            let closed = l * l * (1.0 / 3.0 - 2.0 / (PI * PI));
            assert!((brute - closed).abs() < 1e-12 * closed);
            let p = potential_matrix_element(&Potential::harmonic(1.0), 1, 1, &w, &cfg()).unwrap();
            assert!((p - closed).abs() < 1e-12 * closed, "{p} vs {closed}");
        }
    }

    #[test]
    fn closed_form_agrees_with_quadrature() {
        let w = BasisWindow::symmetric(4.0, 10).unwrap();
        for (exponent, name) in [(2, "x2"), (4, "x4")] {
            let closed = Potential::new(name, vec![Term::Power { coeff: 1.0, exponent }]);
            let numeric = Potential::custom(name, f64::NEG_INFINITY, 0, move |x| x.powi(exponent));
            let pc = potential_matrix(&closed, &w, &cfg()).unwrap();
            let pq = potential_matrix(&numeric, &w, &cfg()).unwrap();
            let scale = (0..10).map(|i| pc.get(i, i).abs()).fold(0.0, f64::max);
            for i in 0..10 {
                for j in 0..10 {
                    let (c, q) = (pc.get(i, j), pq.get(i, j));
                    assert!(
                        (c - q).abs() <= 1e-12 * c.abs().max(1e-3 * scale),
                        "x^{exponent} ({i},{j}): {c} vs {q}"
                    );
                }
            }
        }
    }

    #[test]
    fn asymmetric_window_polynomial_matches_quadrature() {
        let w = BasisWindow::new(-1.2, 3.5, 12).unwrap();
        let poly = Potential::new(
            "poly",
            vec![
                Term::Power {
                    coeff: 0.3,
                    exponent: 1,
                },
                Term::Power {
                    coeff: -0.7,
                    exponent: 3,
                },
                Term::Power {
                    coeff: 0.05,
                    exponent: 4,
                },
            ],
        );
        let q = poly.clone();
        let numeric = Potential::custom("poly", f64::NEG_INFINITY, 0, move |x| q.eval(x));
        let pc = potential_matrix(&poly, &w, &cfg()).unwrap();
        let pq = potential_matrix(&numeric, &w, &cfg()).unwrap();
        for i in 0..12 {
            for j in 0..12 {
                assert!((pc.get(i, j) - pq.get(i, j)).abs() < 1e-11, "({i},{j})");
            }
        }
    }

    #[test]
    fn element_and_matrix_routes_agree() {
        let v = Potential::singular_abc(1.0, 1.0, 1.0);
        let w = BasisWindow::new(0.05, 5.2, 12).unwrap();
        let full = potential_matrix(&v, &w, &cfg()).unwrap();
        for i in 1..=12 {
            for j in 1..=12 {
                let e = potential_matrix_element(&v, i, j, &w, &cfg()).unwrap();
                let f = full.get(i - 1, j - 1);
                assert!((e - f).abs() <= 1e-11 * f.abs().max(1.0), "({i},{j}) {e} vs {f}");
                assert_eq!(e, potential_matrix_element(&v, j, i, &w, &cfg()).unwrap());
            }
        }
    }

    #[test]
    fn doubling_nodes_changes_little() {
        let cases = [
            (Potential::harmonic(1.0), BasisWindow::symmetric(6.0, 20).unwrap()),
            (
                Potential::quartic_anharmonic(1.0, 1.0),
                BasisWindow::symmetric(3.4, 20).unwrap(),
            ),
            (
                Potential::sine_squared_confined(5.0),
                BasisWindow::symmetric(core::f64::consts::FRAC_PI_2, 20).unwrap(),
            ),
            (
                Potential::singular_abc(1.0, 1.0, 1.0),
                BasisWindow::new(0.01, 5.2, 20).unwrap(),
            ),
            (
                Potential::singular_abc(1.0, 9.0, 9.0),
                BasisWindow::new(0.01, 5.1, 20).unwrap(),
            ),
            (Potential::hydrogenic(1.0), BasisWindow::new(0.0, 17.5, 20).unwrap()),
            (
                effective_radial(&RadialProblem::new(4, 0, Potential::harmonic(1.0)).unwrap()).unwrap(),
                BasisWindow::new(0.0, 4.25, 20).unwrap(),
            ),
        ];
        let base = cfg();
        for (v, w) in cases {
            let p1 = potential_matrix(&v, &w, &base).unwrap();
            let p2 = potential_matrix(&v, &w, &base.refined()).unwrap();
            for i in 0..20 {
                for j in 0..20 {
                    let (a, b) = (p1.get(i, j), p2.get(i, j));
                    // Entries that vanish analytically are compared against
                    // the diagonal scale instead of their own magnitude.
                    let scale = a.abs().max(1e-2 * (p1.get(i, i) * p1.get(j, j)).abs().sqrt());
                    assert!(
                        (a - b).abs() <= base.target_rel_tol * scale,
                        "{} ({i},{j}): {a} vs {b}",
                        v.id()
                    );
                }
            }
        }
    }

    #[test]
    fn parity_zeros_are_exact() {
        let w = BasisWindow::symmetric(3.0, 8).unwrap();
        let v = Potential::custom("even", f64::NEG_INFINITY, 0, |x| x.cosh());
        // custom potentials are not known to be even, so the zeros are numeric
        let p = potential_matrix(&v, &w, &cfg()).unwrap();
        assert!(p.get(0, 1).abs() < 1e-13);
        let p = potential_matrix(
            &Potential::sine_squared_confined(1.0),
            &BasisWindow::symmetric(1.5, 8).unwrap(),
            &cfg(),
        )
        .unwrap();
        assert_eq!(p.get(0, 1), 0.0);
        assert_eq!(p.get(2, 5), 0.0);
    }

    #[test]
    fn precondition_violations() {
        let w = BasisWindow::new(0.0, 5.0, 4).unwrap();
        assert!(matches!(
            potential_matrix_element(&Potential::singular_abc(1.0, 1.0, 1.0), 1, 1, &w, &cfg()),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            potential_matrix_element(&Potential::harmonic(1.0), 5, 1, &w, &cfg()),
            Err(Error::Index { index: 5, size: 4 })
        ));
    }
}
