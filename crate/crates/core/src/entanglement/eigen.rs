//! Cyclic Jacobi eigensolver for small real symmetric matrices.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{DickeError, Result};

const SYMMETRY_TOL: f64 = 1e-12;
const OFF_DIAGONAL_TOL: f64 = 1e-13;
const MAX_SWEEPS: usize = 50;

#[derive(Debug, Clone, PartialEq)]
pub struct JacobiResult {
    /// Ascending eigenvalues.
    pub values: Vec<f64>,
    /// Eigenvectors as columns, matched to `values`.
    pub vectors: DMatrix<f64>,
    pub sweeps: usize,
    /// Off-diagonal Frobenius norm at exit.
    pub off_norm: f64,
}

fn off_norm(a: &DMatrix<f64>) -> f64 {
    let n = a.nrows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)] * a[(i, j)];
            }
        }
    }
    s.sqrt()
}

fn check_symmetric(m: &DMatrix<f64>) -> Result<()> {
    if m.nrows() != m.ncols() {
        return Err(DickeError::BadShape);
    }
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i + 1..n {
            worst = worst.max((m[(i, j)] - m[(j, i)]).abs());
        }
    }
    if worst > SYMMETRY_TOL {
        return Err(DickeError::NotSymmetric(worst));
    }
    Ok(())
}

pub fn jacobi_eigen(m: &DMatrix<f64>) -> Result<JacobiResult> {
    check_symmetric(m)?;
    let n = m.nrows();
    let mut a = m.clone();
    let mut v = DMatrix::<f64>::identity(n, n);
    let mut sweeps = 0;
    while sweeps < MAX_SWEEPS && off_norm(&a) >= OFF_DIAGONAL_TOL {
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[(k, p)], a[(k, q)]);
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&i, &j| a[(i, i)].total_cmp(&a[(j, j)]));
    let values = idx.iter().map(|&i| a[(i, i)]).collect();
    let vectors = DMatrix::from_fn(n, n, |r, c| v[(r, idx[c])]);
    Ok(JacobiResult { values, vectors, sweeps, off_norm: off_norm(&a) })
}

/// Ascending eigenvalues of a real symmetric matrix.
pub fn symmetric_eigenvalues(m: &DMatrix<f64>) -> Result<Vec<f64>> {
    Ok(jacobi_eigen(m)?.values)
}

/// Ascending eigenvalues of a Hermitian matrix.
///
/// Complex input goes through the real embedding `[[A, -B], [B, A]]`, whose
/// spectrum is that of `A + iB` with every eigenvalue doubled.
pub fn hermitian_eigenvalues(m: &DMatrix<Complex64>) -> Result<Vec<f64>> {
    if m.nrows() != m.ncols() {
        return Err(DickeError::BadShape);
    }
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    if worst > SYMMETRY_TOL {
        return Err(DickeError::NotSymmetric(worst));
    }
    if m.iter().all(|z| z.im == 0.0) {
        return symmetric_eigenvalues(&m.map(|z| z.re));
    }
    let big = DMatrix::from_fn(2 * n, 2 * n, |i, j| {
        let z = m[(i % n, j % n)];
        match (i < n, j < n) {
            (true, true) | (false, false) => z.re,
            (true, false) => -z.im,
            (false, true) => z.im,
        }
    });
    let all = symmetric_eigenvalues(&big)?;
    Ok(all.into_iter().step_by(2).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn identity() {
        assert_eq!(symmetric_eigenvalues(&DMatrix::identity(3, 3)).unwrap(), vec![1.0; 3]);
    }

    #[test]
    fn two_by_two() {
        let c = 0.7;
        let ev = symmetric_eigenvalues(&DMatrix::from_row_slice(2, 2, &[0.0, c, c, 0.0])).unwrap();
        assert_abs_diff_eq!(ev[0], -c, epsilon = 1e-15);
        assert_abs_diff_eq!(ev[1], c, epsilon = 1e-15);
    }

    #[test]
    fn circulant_third() {
        let t = 1.0 / 3.0;
        let m = DMatrix::from_row_slice(3, 3, &[0.0, t, t, t, 0.0, t, t, t, 0.0]);
        let ev = symmetric_eigenvalues(&m).unwrap();
        assert_abs_diff_eq!(ev[0], -t, epsilon = 1e-14);
        assert_abs_diff_eq!(ev[1], -t, epsilon = 1e-14);
        assert_abs_diff_eq!(ev[2], 2.0 * t, epsilon = 1e-14);
    }

    #[test]
    fn reconstruction() {
        let m = DMatrix::from_fn(9, 9, |i, j| ((i * 7 + j * 7 + i * j) % 11) as f64 / 10.0 - 0.4);
        let r = jacobi_eigen(&m).unwrap();
        let lambda = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(r.values.clone()));
        let back = &r.vectors * lambda * r.vectors.transpose();
        assert!((back - &m).amax() <= 1e-10);
        assert_abs_diff_eq!(r.values.iter().sum::<f64>(), m.trace(), epsilon = 1e-10);
        assert!(r.values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn asymmetric_rejected() {
        let m = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 0.0, 0.0]);
        assert!(matches!(symmetric_eigenvalues(&m), Err(DickeError::NotSymmetric(_))));
    }

    #[test]
    fn complex_hermitian() {
        // [[1, i], [-i, 1]] has eigenvalues 0 and 2
        let i = Complex64::new(0.0, 1.0);
        let one = Complex64::new(1.0, 0.0);
        let m = DMatrix::from_row_slice(2, 2, &[one, i, -i, one]);
        let ev = hermitian_eigenvalues(&m).unwrap();
        assert_eq!(ev.len(), 2);
        assert_abs_diff_eq!(ev[0], 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(ev[1], 2.0, epsilon = 1e-14);
    }
}
