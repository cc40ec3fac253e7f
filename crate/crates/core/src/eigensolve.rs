//! Dense symmetric eigensolvers.
//!
//! The default route is Householder tridiagonalization followed by implicit
//! QL with Wilkinson-style shifts (the EISPACK `tred2`/`tql2` pair). A cyclic
//! Jacobi solver is kept as an independent second route.

use alloc::vec;
use alloc::vec::Vec;

use crate::basis::BasisWindow;
use crate::error::{domain, Error, Result};
use crate::hamiltonian::HamiltonianMatrix;
use crate::matrix::SymmetricMatrix;

/// Contract on `max_k ‖H v_k - ε_k v_k‖ / ‖H‖`.
pub const RESIDUAL_TOLERANCE: f64 = 1e-10;

const MAX_QL_ITERATIONS: usize = 60;
const MAX_JACOBI_SWEEPS: usize = 100;

/// Eigenvalues in ascending order with unit eigenvectors.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition {
    values: Vec<f64>,
    // column-major: vectors[k * n .. (k + 1) * n] is the k-th eigenvector
    vectors: Vec<f64>,
}

impl EigenDecomposition {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn vector(&self, k: usize) -> &[f64] {
        let n = self.values.len();
        &self.vectors[k * n..(k + 1) * n]
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    /// `max_{k<count} ‖M v_k - λ_k v_k‖ / ‖M‖_F`.
    pub fn residual_bound(&self, m: &SymmetricMatrix, count: usize) -> f64 {
        let norm = m.frobenius_norm();
        if norm == 0.0 {
            return 0.0;
        }
        (0..count)
            .map(|k| {
                let v = self.vector(k);
                let mv = m.mul_vec(v);
                let r2: f64 = mv
                    .iter()
                    .zip(v)
                    .map(|(a, b)| {
                        let r = a - self.values[k] * b;
                        r * r
                    })
                    .sum();
                libm::sqrt(r2) / norm
            })
            .fold(0.0, f64::max)
    }

    /// Sorts ascending; equal values keep their original order.
    fn sorted(values: Vec<f64>, vectors: Vec<f64>) -> Self {
        let n = values.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
        let mut sorted_vectors = vec![0.0; n * n];
        for (dst, &src) in order.iter().enumerate() {
            sorted_vectors[dst * n..(dst + 1) * n].copy_from_slice(&vectors[src * n..(src + 1) * n]);
        }
        Self {
            values: order.iter().map(|&i| values[i]).collect(),
            vectors: sorted_vectors,
        }
    }
}

/// Full eigendecomposition by Householder reduction and implicit QL.
pub fn symmetric_eigen(m: &SymmetricMatrix) -> Result<EigenDecomposition> {
    let n = m.dim();
    if n == 0 {
        return Err(domain("empty matrix"));
    }
    // v is column-major: v[c * n + r] holds V[r][c]
    let mut v = vec![0.0; n * n];
    for r in 0..n {
        for c in 0..n {
            v[c * n + r] = m.get(r, c);
        }
    }
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    tridiagonalize(n, &mut v, &mut d, &mut e);
    tridiagonal_ql(n, &mut v, &mut d, &mut e)?;
    Ok(EigenDecomposition::sorted(d, v))
}

fn tridiagonalize(n: usize, v: &mut [f64], d: &mut [f64], e: &mut [f64]) {
    let at = |r: usize, c: usize| c * n + r;
    for j in 0..n {
        d[j] = v[at(n - 1, j)];
    }
    for i in (1..n).rev() {
        let mut scale = 0.0;
        let mut h = 0.0;
        for k in 0..i {
            scale += libm::fabs(d[k]);
        }
        if scale == 0.0 {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = v[at(i - 1, j)];
                v[at(i, j)] = 0.0;
                v[at(j, i)] = 0.0;
            }
        } else {
            for k in 0..i {
                d[k] /= scale;
                h += d[k] * d[k];
            }
            let mut f = d[i - 1];
            let mut g = libm::sqrt(h);
            if f > 0.0 {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for ej in e.iter_mut().take(i) {
                *ej = 0.0;
            }
            for j in 0..i {
                f = d[j];
                v[at(j, i)] = f;
                g = e[j] + v[at(j, j)] * f;
                for k in j + 1..i {
                    g += v[at(k, j)] * d[k];
                    e[k] += v[at(k, j)] * f;
                }
                e[j] = g;
            }
            f = 0.0;
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                f = d[j];
                g = e[j];
                for k in j..i {
                    v[at(k, j)] -= f * e[k] + g * d[k];
                }
                d[j] = v[at(i - 1, j)];
                v[at(i, j)] = 0.0;
            }
        }
        d[i] = h;
    }
    // accumulate transformations
    for i in 0..n - 1 {
        v[at(n - 1, i)] = v[at(i, i)];
        v[at(i, i)] = 1.0;
        let h = d[i + 1];
        if h != 0.0 {
            for k in 0..=i {
                d[k] = v[at(k, i + 1)] / h;
            }
            for j in 0..=i {
                let mut g = 0.0;
                for k in 0..=i {
                    g += v[at(k, i + 1)] * v[at(k, j)];
                }
                for k in 0..=i {
                    v[at(k, j)] -= g * d[k];
                }
            }
        }
        for k in 0..=i {
            v[at(k, i + 1)] = 0.0;
        }
    }
    for j in 0..n {
        d[j] = v[at(n - 1, j)];
        v[at(n - 1, j)] = 0.0;
    }
    v[at(n - 1, n - 1)] = 1.0;
    e[0] = 0.0;
}

fn tridiagonal_ql(n: usize, v: &mut [f64], d: &mut [f64], e: &mut [f64]) -> Result<()> {
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;

    let mut f = 0.0;
    let mut tst1: f64 = 0.0;
    let eps = f64::EPSILON;
    let mut total_iterations = 0;
    for l in 0..n {
        tst1 = tst1.max(libm::fabs(d[l]) + libm::fabs(e[l]));
        let mut m = l;
        while m < n - 1 && libm::fabs(e[m]) > eps * tst1 {
            m += 1;
        }
        if m > l {
            let mut iterations = 0;
            loop {
                iterations += 1;
                total_iterations += 1;
                if iterations > MAX_QL_ITERATIONS {
                    return Err(Error::Convergence {
                        iterations: total_iterations,
                    });
                }
                let mut g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = libm::hypot(p, 1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().skip(l + 2) {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = libm::hypot(p, e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    let (left, right) = v.split_at_mut((i + 1) * n);
                    let col_i = &mut left[i * n..];
                    let col_i1 = &mut right[..n];
                    for (vi, vi1) in col_i.iter_mut().zip(col_i1.iter_mut()) {
                        let t = *vi1;
                        *vi1 = s * *vi + c * t;
                        *vi = c * *vi - s * t;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if libm::fabs(e[l]) <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    Ok(())
}

/// Full eigendecomposition by cyclic Jacobi rotations.
pub fn jacobi_eigen(m: &SymmetricMatrix) -> Result<EigenDecomposition> {
    let n = m.dim();
    if n == 0 {
        return Err(domain("empty matrix"));
    }
    let mut a: Vec<f64> = m.as_slice().to_vec();
    let at = |r: usize, c: usize| r * n + c;
    // column-major eigenvectors
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let scale = m.frobenius_norm();
    for _sweep in 0..MAX_JACOBI_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
            .map(|(p, q)| a[at(p, q)] * a[at(p, q)])
            .sum();
        if libm::sqrt(off) <= f64::EPSILON * scale * 1e-2 || off == 0.0 {
            let values = (0..n).map(|i| a[at(i, i)]).collect();
            return Ok(EigenDecomposition::sorted(values, v));
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[at(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[at(q, q)] - a[at(p, p)]) / (2.0 * apq);
                let t = libm::copysign(1.0, theta) / (libm::fabs(theta) + libm::sqrt(theta * theta + 1.0));
                let c = 1.0 / libm::sqrt(t * t + 1.0);
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[at(k, p)], a[at(k, q)]);
                    a[at(k, p)] = c * akp - s * akq;
                    a[at(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[at(p, k)], a[at(q, k)]);
                    a[at(p, k)] = c * apk - s * aqk;
                    a[at(q, k)] = s * apk + c * aqk;
                }
                a[at(p, q)] = 0.0;
                a[at(q, p)] = 0.0;
                for k in 0..n {
                    let (vkp, vkq) = (v[p * n + k], v[q * n + k]);
                    v[p * n + k] = c * vkp - s * vkq;
                    v[q * n + k] = s * vkp + c * vkq;
                }
            }
        }
    }
    Err(Error::Convergence {
        iterations: MAX_JACOBI_SWEEPS,
    })
}

/// Ascending variational eigenvalues and the window that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumEstimate {
    pub eigenvalues: Vec<f64>,
    pub window: BasisWindow,
    pub basis_size: usize,
    /// `max ‖Hv - εv‖ / ‖H‖_F` over the returned pairs.
    pub residual_bound: f64,
    /// `max ‖Hv - εv‖`: each returned value lies within this distance of an
    /// exact eigenvalue of `H`.
    pub error_bound: f64,
}

/// The `count` lowest eigenvalues of `h`.
pub fn eigenvalues_symmetric(h: &HamiltonianMatrix, count: usize) -> Result<SpectrumEstimate> {
    let n = h.dim();
    if count == 0 || count > n {
        return Err(domain(alloc::format!(
            "requested {count} eigenvalues of a {n}x{n} matrix"
        )));
    }
    let decomposition = symmetric_eigen(h.entries())?;
    let residual_bound = decomposition.residual_bound(h.entries(), count);
    if residual_bound > RESIDUAL_TOLERANCE {
        return Err(Error::Residual { bound: residual_bound });
    }
    Ok(SpectrumEstimate {
        eigenvalues: decomposition.values()[..count].to_vec(),
        window: *h.window(),
        basis_size: n,
        residual_bound,
        error_bound: residual_bound * h.entries().frobenius_norm(),
    })
}
