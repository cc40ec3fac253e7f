use std::f64::consts::PI;

use proptest::prelude::*;
use sinebasis::eigensolve::symmetric_eigen;
use sinebasis::hamiltonian::rayleigh_quotient;
use sinebasis::potentials::{oscillator_exact_energy, singular_ground_state};
use sinebasis::quadrature::gauss_legendre;
use sinebasis::*;

fn lowest(v: &Potential, w: &BasisWindow, count: usize) -> Vec<f64> {
    let h = assemble(v, w, &QuadratureConfig::default()).unwrap();
    eigenvalues_symmetric(&h, count).unwrap().eigenvalues
}

fn fixtures() -> Vec<(Potential, BasisWindow)> {
    vec![
        (Potential::harmonic(1.0), BasisWindow::symmetric(6.0, 20).unwrap()),
        (
            Potential::quartic_anharmonic(1.0, 1.0),
            BasisWindow::new(-3.1, 3.6, 20).unwrap(),
        ),
        (
            Potential::sine_squared_confined(5.0),
            BasisWindow::symmetric(1.2, 20).unwrap(),
        ),
        (
            Potential::singular_abc(1.0, 1.0, 1.0),
            BasisWindow::new(0.05, 6.0, 20).unwrap(),
        ),
        (
            effective_radial(&RadialProblem::new(3, 0, Potential::hydrogenic(1.0)).unwrap()).unwrap(),
            BasisWindow::new(0.0, 20.0, 20).unwrap(),
        ),
    ]
}

#[test]
fn enlarging_the_basis_never_raises_eigenvalues() {
    for (v, w) in fixtures() {
        let full = assemble(&v, &w, &QuadratureConfig::default()).unwrap();
        let mut previous: Option<Vec<f64>> = None;
        for n in [5, 10, 20] {
            let sub = HamiltonianMatrix::from_entries(full.entries().leading(n), w.with_size(n).unwrap(), v.id());
            let eps = eigenvalues_symmetric(&sub, 5).unwrap().eigenvalues;
            let direct = lowest(&v, &w.with_size(n).unwrap(), 5);
            for (x, y) in eps.iter().zip(&direct) {
                assert!((x - y).abs() <= 1e-10 * y.abs().max(1.0), "{}: {x} vs {y}", v.id());
            }
            if let Some(prev) = &previous {
                for (k, (new, old)) in eps.iter().zip(prev).enumerate() {
                    assert!(
                        new <= &(old + 1e-10 * old.abs().max(1.0)),
                        "{} N={n} state {k}: {new} > {old}",
                        v.id()
                    );
                }
            }
            previous = Some(eps);
        }
    }
}

#[test]
fn free_particle_is_exact() {
    for (a, b) in [(-1.0, 1.0), (0.0, 2.5), (3.0, 3.5)] {
        let w = BasisWindow::new(a, b, 12).unwrap();
        let eps = lowest(&Potential::zero(), &w, 12);
        for (k, e) in eps.iter().enumerate() {
            let exact = ((k + 1) as f64 * PI / (b - a)).powi(2);
            assert!((e - exact).abs() <= 4.0 * f64::EPSILON * exact, "{e} vs {exact}");
        }
    }
}

#[test]
fn hamiltonians_are_bitwise_symmetric() {
    for (v, w) in fixtures() {
        let h = assemble(&v, &w, &QuadratureConfig::default()).unwrap();
        assert!(h.entries().is_bitwise_symmetric(), "{}", v.id());
    }
}

#[test]
fn basis_is_orthonormal_under_quadrature() {
    let rule = gauss_legendre(64);
    for (a, b) in [(-6.86, 6.86), (0.0, 17.5), (0.01, 5.2)] {
        let w = BasisWindow::new(a, b, 30).unwrap();
        let panels = 16;
        let h = (b - a) / panels as f64;
        for i in 1..=30 {
            for j in i..=30 {
                let mut s = 0.0;
                for p in 0..panels {
                    let mid = a + h * (p as f64 + 0.5);
                    for (t, wt) in rule.nodes().iter().zip(rule.weights()) {
                        let x = mid + 0.5 * h * t;
                        s += 0.5 * h * wt * w.function(i, x).unwrap() * w.function(j, x).unwrap();
                    }
                }
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((s - expected).abs() < 1e-12, "({i},{j}) on [{a},{b}]: {s}");
            }
        }
    }
}

#[test]
fn eigenvalues_bound_exact_energies_from_above() {
    let w = BasisWindow::symmetric(6.5, 30).unwrap();
    for (k, e) in lowest(&Potential::harmonic(1.0), &w, 8).iter().enumerate() {
        assert!(*e >= (2 * k + 1) as f64 - 1e-10);
    }
    let radial = effective_radial(&RadialProblem::new(3, 1, Potential::harmonic(1.0)).unwrap()).unwrap();
    let w = BasisWindow::new(0.0, 7.0, 30).unwrap();
    for (k, e) in lowest(&radial, &w, 5).iter().enumerate() {
        assert!(*e >= oscillator_exact_energy(k as u32 + 1, 1, 3) - 1e-10);
    }
    let v = Potential::singular_abc(1.0, 9.0, 9.0);
    let p = VariationalProblem::new(&v, 40);
    let exact = singular_ground_state(9.0, 9.0).unwrap();
    for (a, b) in [(0.05, 5.0), (0.3, 7.7), (0.001, 6.0)] {
        let e = p.eigenvalue(&BasisWindow::new(a, b, 40).unwrap(), 0).unwrap();
        assert!(e >= exact - 1e-11, "[{a},{b}]: {e}");
    }
}

#[test]
fn rayleigh_quotient_of_ritz_vectors_matches_eigenvalues() {
    let v = Potential::sine_squared_confined(1.0);
    let w = BasisWindow::symmetric(1.5, 15).unwrap();
    let cfg = QuadratureConfig::default();
    let h = assemble(&v, &w, &cfg).unwrap();
    let eig = symmetric_eigen(h.entries()).unwrap();
    for k in 0..4 {
        let rq = rayleigh_quotient(&v, &w, &cfg, eig.vector(k)).unwrap();
        assert!((rq - eig.values()[k]).abs() < 1e-12, "{rq} vs {}", eig.values()[k]);
    }
}

#[test]
fn optimizer_matches_oscillator_table_point() {
    let v = Potential::harmonic(1.0);
    let p = VariationalProblem::new(&v, 50);
    let r = minimize_l(&p, WindowFamily::Symmetric, 0, Interval::new(5.5, 8.0).unwrap()).unwrap();
    assert!((r.best_value - 1.0).abs() < 1e-9);
    assert!(r.best_window.is_symmetric());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn centrifugal_equivalence_is_pointwise(d in 4u32..9, l in 0u32..6, r in 0.05f64..15.0, c in 0.1f64..4.0) {
        let high = effective_radial(&RadialProblem::new(d, l, Potential::harmonic(c)).unwrap()).unwrap();
        let low = effective_radial(&RadialProblem::new(d - 2, l + 1, Potential::harmonic(c)).unwrap()).unwrap();
        prop_assert_eq!(high.eval(r), low.eval(r));
    }

    #[test]
    fn window_translation_leaves_free_spectrum_unchanged(a in -5.0f64..5.0, width in 0.5f64..6.0) {
        let w1 = BasisWindow::new(a, a + width, 6).unwrap();
        let w2 = BasisWindow::new(0.0, width, 6).unwrap();
        let e1 = lowest(&Potential::zero(), &w1, 6);
        let e2 = lowest(&Potential::zero(), &w2, 6);
        for (x, y) in e1.iter().zip(&e2) {
            prop_assert!((x - y).abs() <= 1e-12 * y);
        }
    }
}
