//! Cyclic Jacobi eigensolver for small dense symmetric matrices.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;

/// Eigenvalues in ascending order and matching unit eigenvectors.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricEigen {
    pub values: Vec<f64>,
    /// `vectors[k]` is the eigenvector of `values[k]`.
    pub vectors: Vec<Vec<f64>>,
}

/// Eigendecomposition of the symmetric `n × n` row-major matrix `a`.
pub fn symmetric_eigen(a: &[f64], n: usize) -> Result<SymmetricEigen> {
    assert_eq!(a.len(), n * n, "matrix shape mismatch");
    let mut m = a.to_vec();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let scale: f64 = m.iter().map(|x| x * x).sum::<f64>().sqrt();
    let mut sweeps = 0;
    if n >= 2 && scale > 0.0 {
        loop {
            if sweeps == MAX_SWEEPS {
                return Err(Error::Numerical { sweeps });
            }
            sweeps += 1;
            let mut off = 0.0;
            for p in 0..n {
                for q in p + 1..n {
                    off += m[p * n + q] * m[p * n + q];
                }
            }
            if off.sqrt() <= f64::EPSILON * 1e-3 * scale {
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    let apq = m[p * n + q];
                    if apq == 0.0 {
                        continue;
                    }
                    let app = m[p * n + p];
                    let aqq = m[q * n + q];
                    let theta = (aqq - app) / (2.0 * apq);
                    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                    let t = if theta == 0.0 { 1.0 } else { t };
                    let c = 1.0 / (t * t + 1.0).sqrt();
                    let s = t * c;
                    for k in 0..n {
                        let akp = m[k * n + p];
                        let akq = m[k * n + q];
                        m[k * n + p] = c * akp - s * akq;
                        m[k * n + q] = s * akp + c * akq;
                    }
                    for k in 0..n {
                        let apk = m[p * n + k];
                        let aqk = m[q * n + k];
                        m[p * n + k] = c * apk - s * aqk;
                        m[q * n + k] = s * apk + c * aqk;
                    }
                    m[p * n + q] = 0.0;
                    m[q * n + p] = 0.0;
                    for k in 0..n {
                        let vkp = v[k * n + p];
                        let vkq = v[k * n + q];
                        v[k * n + p] = c * vkp - s * vkq;
                        v[k * n + q] = s * vkp + c * vkq;
                    }
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[i * n + i].total_cmp(&m[j * n + j]).then(i.cmp(&j)));
    let values = order.iter().map(|&i| m[i * n + i]).collect();
    let vectors = order.iter().map(|&i| (0..n).map(|k| v[k * n + i]).collect()).collect();
    Ok(SymmetricEigen { values, vectors })
}

/// Largest absolute row sum, an upper bound on the spectral norm.
pub fn norm_estimate(a: &[f64], n: usize) -> f64 {
    (0..n).map(|i| a[i * n..(i + 1) * n].iter().map(|x| x.abs()).sum::<f64>()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &[f64], n: usize) -> SymmetricEigen {
        let e = symmetric_eigen(a, n).unwrap();
        for (lam, vec) in e.values.iter().zip(&e.vectors) {
            for i in 0..n {
                let av: f64 = (0..n).map(|k| a[i * n + k] * vec[k]).sum();
                assert!((av - lam * vec[i]).abs() < 1e-12 * (1.0 + lam.abs()));
            }
        }
        e
    }

    #[test]
    fn small_examples() {
        assert_eq!(check(&[2.0, 0.0, 0.0, 2.0], 2).values, vec![2.0, 2.0]);
        let e = check(&[1.0, 2.0, 2.0, 1.0], 2);
        assert!((e.values[0] + 1.0).abs() < 1e-15 && (e.values[1] - 3.0).abs() < 1e-15);
        assert_eq!(check(&[-2.0], 1).values, vec![-2.0]);
    }

    #[test]
    fn hilbert_matrix() {
        let n = 6;
        let a: Vec<f64> = (0..n * n).map(|k| 1.0 / ((k / n + k % n + 1) as f64)).collect();
        let e = check(&a, n);
        // smallest eigenvalue of the 6×6 Hilbert matrix
        assert!((e.values[0] - 1.0827994845e-7).abs() < 1e-15);
        assert!((e.values[5] - 1.6188998589).abs() < 1e-9);
    }
}
