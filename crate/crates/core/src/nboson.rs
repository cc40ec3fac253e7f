//! Energy bounds for `N` identical bosons on a line bound by attractive pair
//! potentials, with `H = -Σ ∂ᵢ² + c Σ_{i<j} V(xᵢ - xⱼ)` and the centre of mass
//! removed.
//!
//! Boson symmetry reduces `E` to `(N-1)(Ψ, [-2∂² + (N/2) c V(x₁-x₂)] Ψ)`,
//! which yields a lower bound from the scaled two-body problem. The upper
//! bound uses the product trial function `Π φ(xᵢ)` with
//! `φ(x) = √(2/a) cos(πx/a)` on `[-a/2, a/2]`.

use alloc::format;
use core::f64::consts::PI;

use crate::error::{Error, Result};
use crate::potentials::Potential;
use crate::quadrature::{integrate, QuadratureConfig};

/// `A = (π²/3 - 2)^{1/2}`, the ratio `E_U / E` for harmonic pairs.
pub fn harmonic_ratio() -> f64 {
    libm::sqrt(PI * PI / 3.0 - 2.0)
}

#[derive(Debug, Clone)]
pub enum PairKind {
    /// `V(x) = x²`
    Harmonic,
    /// `V(x) = -δ(x)`
    Delta,
    /// Any potential defined on the whole line.
    General(Potential),
}

#[derive(Debug, Clone)]
pub struct BosonSystem {
    particles: usize,
    coupling: f64,
    kind: PairKind,
}

impl BosonSystem {
    pub fn new(particles: usize, coupling: f64, kind: PairKind) -> Result<Self> {
        if particles < 2 {
            return Err(Error::Domain(format!("need at least 2 particles, got {particles}")));
        }
        if !(coupling > 0.0 && coupling.is_finite()) {
            return Err(Error::Domain(format!("coupling must be positive, got {coupling}")));
        }
        if let PairKind::General(v) = &kind {
            if v.domain_left() != f64::NEG_INFINITY {
                return Err(Error::Domain(format!(
                    "pair potential '{}' must be defined on the whole line",
                    v.id()
                )));
            }
        }
        Ok(Self {
            particles,
            coupling,
            kind,
        })
    }

    pub fn particles(&self) -> usize {
        self.particles
    }

    pub fn coupling(&self) -> f64 {
        self.coupling
    }

    pub fn kind(&self) -> &PairKind {
        &self.kind
    }

    fn n(&self) -> f64 {
        self.particles as f64
    }

    pub fn lower_bound(&self) -> Result<f64> {
        let (n, c) = (self.n(), self.coupling);
        match self.kind {
            PairKind::Harmonic => Ok(libm::sqrt(c) * (n - 1.0) * libm::sqrt(n)),
            PairKind::Delta => Ok(-c * c * (n - 1.0) * n * n / 32.0),
            PairKind::General(_) => Err(Error::Unsupported(
                "lower bounds for general pair potentials need a two-body solve".into(),
            )),
        }
    }

    pub fn exact_energy(&self) -> Result<f64> {
        let (n, c) = (self.n(), self.coupling);
        match self.kind {
            PairKind::Harmonic => self.lower_bound(),
            PairKind::Delta => Ok(-c * c * n * (n * n - 1.0) / 48.0),
            PairKind::General(_) => Err(Error::Unsupported(
                "no exact energy is known for general pair potentials".into(),
            )),
        }
    }

    pub fn upper_bound(&self) -> Result<f64> {
        let (n, c) = (self.n(), self.coupling);
        match &self.kind {
            PairKind::Harmonic => Ok(libm::sqrt(c) * harmonic_ratio() * (n - 1.0) * libm::sqrt(n)),
            PairKind::Delta => Ok(-9.0 * c * c * (n - 1.0) * n * n / (64.0 * PI * PI)),
            PairKind::General(v) => Ok(self.general_upper_bound(v, &QuadratureConfig::default())?.0),
        }
    }

    /// `(E_U, a*)` for a general pair potential, minimizing
    /// `(N-1)[(π/a)² + (N/2) c I(a)]` by golden-section search on `log a`.
    pub fn general_upper_bound(&self, potential: &Potential, cfg: &QuadratureConfig) -> Result<(f64, f64)> {
        let (n, c) = (self.n(), self.coupling);
        let objective = |t: f64| -> Result<f64> {
            let a = libm::exp(t);
            Ok((n - 1.0) * ((PI / a) * (PI / a) + 0.5 * n * c * pair_expectation(potential, a, cfg)?))
        };

        const POINTS: usize = 81;
        let (t_lo, t_hi) = (libm::log(1e-4), libm::log(1e4));
        let step = (t_hi - t_lo) / (POINTS - 1) as f64;
        let mut best = (0, f64::INFINITY);
        for k in 0..POINTS {
            let v = objective(t_lo + step * k as f64)?;
            if v < best.1 {
                best = (k, v);
            }
        }
        if best.0 == 0 || best.0 == POINTS - 1 {
            return Err(Error::Convergence { iterations: POINTS });
        }

        let inv_phi = 0.5 * (libm::sqrt(5.0) - 1.0);
        let mut lo = t_lo + step * (best.0 - 1) as f64;
        let mut hi = t_lo + step * (best.0 + 1) as f64;
        let mut x1 = hi - inv_phi * (hi - lo);
        let mut x2 = lo + inv_phi * (hi - lo);
        let (mut f1, mut f2) = (objective(x1)?, objective(x2)?);
        while hi - lo > 1e-7 {
            if f1 <= f2 {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - inv_phi * (hi - lo);
                f1 = objective(x1)?;
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + inv_phi * (hi - lo);
                f2 = objective(x2)?;
            }
        }
        let (t, v) = if f1 <= f2 { (x1, f1) } else { (x2, f2) };
        Ok((v, libm::exp(t)))
    }
}

/// Density of `u = x₁ - x₂ ≥ 0` when both coordinates follow `φ²`; it
/// integrates to ½ over `[0, a]`.
fn separation_density(u: f64, a: f64) -> f64 {
    let s = 2.0 * PI * u / a;
    ((a - u) * (1.0 + 0.5 * libm::cos(s)) + 3.0 * a / (4.0 * PI) * libm::sin(s)) / (a * a)
}

/// `I(a) = ∬ φ²(x₁) φ²(x₂) V(x₁ - x₂) dx₁ dx₂`.
pub fn pair_expectation(potential: &Potential, a: f64, cfg: &QuadratureConfig) -> Result<f64> {
    let f = |u: f64| (potential.eval(u) + potential.eval(-u)) * separation_density(u, a);
    Ok(integrate(f, 0.0, a, cfg, potential.singularity_order() > 0)?.value)
}
