//! Dense symmetric eigensolver (cyclic Jacobi) and polynomial roots through
//! companion matrices.
//!
//! Each Jacobi rotation annihilates one off-diagonal pair; sweeps repeat until
//! the off-diagonal Frobenius norm drops below `tol·‖M‖_F`. Slow compared with
//! tridiagonal QR but unconditionally stable, and the matrices here have at
//! most a few hundred rows.

use alloc::vec;
use alloc::vec::Vec;

use crate::matrix::DenseSymMatrix;
use crate::{Error, Result};

pub const MAX_SWEEPS: usize = 100;
/// Default convergence threshold relative to `‖M‖_F`.
pub const DEFAULT_TOL: f64 = 1e-14;

#[derive(Clone, Debug, PartialEq)]
pub struct SymEigen {
    /// Descending.
    pub values: Vec<f64>,
    /// `vectors[j]` is the unit eigenvector of `values[j]`.
    pub vectors: Vec<Vec<f64>>,
}

impl SymEigen {
    /// `‖M − V Λ Vᵀ‖_F`.
    pub fn residual(&self, m: &DenseSymMatrix) -> f64 {
        let n = m.dim();
        let mut sum = 0.0;
        for i in 0..n {
            for j in 0..n {
                let rebuilt: f64 = (0..n).map(|k| self.vectors[k][i] * self.values[k] * self.vectors[k][j]).sum();
                let d = m[(i, j)] - rebuilt;
                sum += d * d;
            }
        }
        libm::sqrt(sum)
    }
}

fn jacobi(m: &DenseSymMatrix, tol: f64, want_vectors: bool) -> Result<SymEigen> {
    if !(tol > 0.0) {
        return Err(Error::DimensionMismatch(alloc::format!("tolerance must be positive, got {tol}")));
    }
    let n = m.dim();
    let mut a: Vec<f64> = m.rows().concat();
    let mut v = if want_vectors {
        let mut id = vec![0.0; n * n];
        (0..n).for_each(|i| id[i * n + i] = 1.0);
        id
    } else {
        Vec::new()
    };
    let threshold = tol * m.frobenius_norm();
    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n).flat_map(|p| (p + 1..n).map(move |q| (p, q))).map(|(p, q)| a[p * n + q] * a[p * n + q]).sum();
        if libm::sqrt(2.0 * off) <= threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = if libm::fabs(theta) > 1e150 {
                    0.5 / theta
                } else {
                    let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
                    sign / (libm::fabs(theta) + libm::sqrt(theta * theta + 1.0))
                };
                let c = 1.0 / libm::sqrt(t * t + 1.0);
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k * n + p], a[k * n + q]);
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p * n + k], a[q * n + k]);
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                if want_vectors {
                    for k in 0..n {
                        let (vkp, vkq) = (v[k * n + p], v[k * n + q]);
                        v[k * n + p] = c * vkp - s * vkq;
                        v[k * n + q] = s * vkp + c * vkq;
                    }
                }
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence { sweeps: MAX_SWEEPS });
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[j * n + j].total_cmp(&a[i * n + i]));
    let values = order.iter().map(|&i| a[i * n + i]).collect();
    let vectors = if want_vectors {
        order.iter().map(|&j| (0..n).map(|i| v[i * n + j]).collect()).collect()
    } else {
        Vec::new()
    };
    Ok(SymEigen { values, vectors })
}

/// Eigenvalues sorted descending.
pub fn sym_eigenvalues(m: &DenseSymMatrix, tol: f64) -> Result<Vec<f64>> {
    Ok(jacobi(m, tol, false)?.values)
}

pub fn sym_eigen(m: &DenseSymMatrix, tol: f64) -> Result<SymEigen> {
    jacobi(m, tol, true)
}

/// Roots of the monic polynomial `x^d + c[1] x^(d-1) + … + c[d]` (`c[0]` must
/// be 1) as `(re, im)` pairs, from the eigenvalues of the companion matrix.
pub fn monic_roots(coeffs: &[f64]) -> Result<Vec<(f64, f64)>> {
    let d = coeffs.len().saturating_sub(1);
    if d == 0 || coeffs[0] != 1.0 {
        return Err(Error::DimensionMismatch("expected a monic polynomial of degree ≥ 1".into()));
    }
    let companion = nalgebra::DMatrix::from_fn(d, d, |i, j| {
        if i == 0 {
            -coeffs[j + 1]
        } else if i == j + 1 {
            1.0
        } else {
            0.0
        }
    });
    let mut roots: Vec<(f64, f64)> = companion.complex_eigenvalues().iter().map(|z| (z.re, z.im)).collect();
    roots.sort_by(|a, b| b.0.total_cmp(&a.0).then(b.1.total_cmp(&a.1)));
    Ok(roots)
}

/// Horner evaluation, highest degree first.
pub fn eval_poly(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().fold(0.0, |acc, &c| acc * x + c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::matrices::{adjacency, laplacian};
    use crate::power_graph::{build_power_graph, AdjacencyRule};
    use crate::group::GroupParams;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn diagonal_and_k2() {
        let d = DenseSymMatrix::diagonal(&[3.0, 1.0, 2.0]);
        assert_eq!(sym_eigenvalues(&d, 1e-12).unwrap(), vec![3.0, 2.0, 1.0]);
        let k2 = adjacency(&Graph::complete(2));
        let ev = sym_eigenvalues(&k2, 1e-12).unwrap();
        assert!((ev[0] - 1.0).abs() < 1e-14 && (ev[1] + 1.0).abs() < 1e-14);
    }

    #[test]
    fn complete_graph_spectrum() {
        let ev = sym_eigenvalues(&adjacency(&Graph::complete(6)), 1e-14).unwrap();
        assert!((ev[0] - 5.0).abs() < 1e-12);
        assert!(ev[1..].iter().all(|x| (x + 1.0).abs() < 1e-12));
    }

    #[test]
    fn rejects_non_positive_tolerance() {
        assert!(sym_eigenvalues(&DenseSymMatrix::diagonal(&[1.0]), 0.0).is_err());
    }

    #[test]
    fn random_matrices_reconstruct() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in [1, 2, 5, 17, 40] {
            let mut m = DenseSymMatrix::zeros(n);
            for i in 0..n {
                for j in i..n {
                    m.set(i, j, rng.gen_range(-3.0..3.0));
                }
            }
            let eig = sym_eigen(&m, 1e-14).unwrap();
            assert!(eig.residual(&m) <= 1e-10 * m.frobenius_norm().max(1.0), "n={n}");
            let trace: f64 = eig.values.iter().sum();
            assert!((trace - m.trace()).abs() < 1e-10);
            assert!(eig.values.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn laplacian_of_connected_family_graph_has_simple_zero() {
        let g = GroupParams::new(2, 3).unwrap();
        let graph = build_power_graph(&g, AdjacencyRule::Cyclic);
        let ev = sym_eigenvalues(&laplacian(&graph), 1e-14).unwrap();
        assert!(ev[23].abs() < 1e-10);
        assert!(ev[22] > 1e-6);
    }

    #[test]
    fn spectral_radius_between_average_and_max_degree() {
        let g = GroupParams::new(2, 5).unwrap();
        let graph = build_power_graph(&g, AdjacencyRule::Cyclic);
        let ev = sym_eigenvalues(&adjacency(&graph), 1e-14).unwrap();
        let degs = graph.degrees();
        let avg = degs.iter().sum::<usize>() as f64 / degs.len() as f64;
        let max = *degs.iter().max().unwrap() as f64;
        assert!(avg <= ev[0] + 1e-12 && ev[0] <= max + 1e-12);
    }

    #[test]
    fn companion_roots() {
        // (x - 1)(x - 2)(x + 3) = x³ - 7x + 6
        let roots = monic_roots(&[1.0, 0.0, -7.0, 6.0]).unwrap();
        let re: Vec<f64> = roots.iter().map(|r| r.0).collect();
        for (got, want) in re.iter().zip([2.0, 1.0, -3.0]) {
            assert!((got - want).abs() < 1e-10);
        }
        assert!(roots.iter().all(|r| r.1.abs() < 1e-12));
        let complex = monic_roots(&[1.0, 0.0, 1.0]).unwrap();
        assert!((complex[0].1.abs() - 1.0).abs() < 1e-12);
        assert!(monic_roots(&[2.0, 1.0]).is_err());
        assert_eq!(eval_poly(&[1.0, 0.0, -7.0, 6.0], 2.0), 0.0);
    }
}
