//! The variational matrix `H = K + P` on a basis window.

use alloc::string::{String, ToString};

use crate::basis::BasisWindow;
use crate::error::Result;
use crate::matrix::SymmetricMatrix;
use crate::potentials::Potential;
use crate::quadrature::{potential_expectation, potential_matrix, QuadratureConfig};

#[derive(Debug, Clone, PartialEq)]
pub struct HamiltonianMatrix {
    entries: SymmetricMatrix,
    window: BasisWindow,
    potential_id: String,
}

impl HamiltonianMatrix {
    /// Wraps an arbitrary symmetric matrix, e.g. for solver tests.
    pub fn from_entries(entries: SymmetricMatrix, window: BasisWindow, potential_id: impl Into<String>) -> Self {
        assert_eq!(entries.dim(), window.size(), "matrix size must match the basis size");
        Self {
            entries,
            window,
            potential_id: potential_id.into(),
        }
    }

    pub fn entries(&self) -> &SymmetricMatrix {
        &self.entries
    }

    pub fn window(&self) -> &BasisWindow {
        &self.window
    }

    pub fn potential_id(&self) -> &str {
        &self.potential_id
    }

    pub fn dim(&self) -> usize {
        self.entries.dim()
    }
}

/// Builds `Hᵢⱼ = δᵢⱼ (iπ/(b-a))² + (φᵢ, V φⱼ)`.
///
/// The kinetic part is exact; only the potential part is integrated.
pub fn assemble(potential: &Potential, window: &BasisWindow, cfg: &QuadratureConfig) -> Result<HamiltonianMatrix> {
    let mut entries = potential_matrix(potential, window, cfg)?;
    for i in 0..window.size() {
        let v = entries.get(i, i) + window.kinetic_unchecked(i + 1);
        entries.set(i, i, v);
    }
    Ok(HamiltonianMatrix {
        entries,
        window: *window,
        potential_id: potential.id().to_string(),
    })
}

/// `⟨ψ, Hψ⟩ / ⟨ψ, ψ⟩` for `ψ = Σ cₖ φₖ`, with the potential term integrated
/// from `ψ` itself rather than through the matrix.
pub fn rayleigh_quotient(
    potential: &Potential,
    window: &BasisWindow,
    cfg: &QuadratureConfig,
    coeffs: &[f64],
) -> Result<f64> {
    let w = window.with_size(coeffs.len())?;
    let norm2: f64 = coeffs.iter().map(|c| c * c).sum();
    let kinetic: f64 = coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| c * c * w.kinetic_unchecked(k + 1))
        .sum();
    Ok((kinetic + potential_expectation(potential, &w, cfg, coeffs)?) / norm2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    #[test]
    fn free_particle_is_diagonal() {
        let w = BasisWindow::new(-0.4, 1.9, 5).unwrap();
        let h = assemble(&Potential::zero(), &w, &QuadratureConfig::default()).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                let expected = if i == j {
                    (((i + 1) as f64) * PI / w.width()).powi(2)
                } else {
                    0.0
                };
                assert_eq!(h.entries().get(i, j), expected);
            }
        }
    }

    #[test]
    fn symmetric_and_diagonal_dominates_kinetic() {
        let cases = [
            (Potential::harmonic(1.0), BasisWindow::symmetric(6.86, 30).unwrap()),
            (
                Potential::singular_abc(1.0, 9.0, 9.0),
                BasisWindow::new(0.01, 5.1, 30).unwrap(),
            ),
            (
                Potential::sine_squared_confined(5.0),
                BasisWindow::symmetric(1.5, 30).unwrap(),
            ),
        ];
        for (v, w) in cases {
            let h = assemble(&v, &w, &QuadratureConfig::default()).unwrap();
            assert!(h.entries().is_bitwise_symmetric());
            assert_eq!(h.potential_id(), v.id());
            for i in 0..30 {
                assert!(h.entries().get(i, i) >= w.kinetic_diagonal(i + 1).unwrap());
            }
        }
    }

    #[test]
    fn window_violations_propagate() {
        let w = BasisWindow::symmetric(2.0, 5).unwrap();
        assert!(assemble(&Potential::sine_squared_confined(1.0), &w, &QuadratureConfig::default()).is_err());
        assert!(assemble(&Potential::hydrogenic(1.0), &w, &QuadratureConfig::default()).is_err());
    }
}
