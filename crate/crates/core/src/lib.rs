//! Variational upper bounds on discrete Schrödinger spectra.
//!
//! The trial space is spanned by the particle-in-a-box eigenfunctions scaled
//! to a window `[a, b]`. Restricting `H = -d²/dx² + V` to that space gives a
//! dense symmetric matrix whose eigenvalues bound the true eigenvalues one by
//! one from above; the window endpoints are then tuned to tighten the bounds.
//!
//! The crate is `no_std` (it needs `alloc`). IO, configuration and the command
//! line front end live in the `sinebasis-cli` crate.

#![no_std]
// `!(x > 0.0)` is used on purpose so that NaN is rejected too, and the dense
// kernels read better with explicit indices.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod basis;
pub mod eigensolve;
mod error;
pub mod hamiltonian;
pub mod matrix;
pub mod nboson;
pub mod optimizer;
pub mod potentials;
pub mod quadrature;

pub use basis::{basis_function, kinetic_diagonal, symmetric_window, BasisWindow};
pub use eigensolve::{eigenvalues_symmetric, SpectrumEstimate};
pub use error::{Error, Result};
pub use hamiltonian::{assemble, HamiltonianMatrix};
pub use matrix::SymmetricMatrix;
pub use nboson::{harmonic_ratio, pair_expectation, BosonSystem, PairKind};
pub use optimizer::{
    minimize_ab, minimize_ab_with, minimize_l, minimize_l_joint, minimize_l_with, scan_l, Interval, OptimizationReport,
    ScanResult, SearchSettings, VariationalProblem, WindowFamily,
};
pub use potentials::{catalog, effective_radial, Potential, RadialProblem};
pub use quadrature::{integrate, potential_matrix_element, QuadratureConfig};
