use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

// f64 maths without std.
#[allow(unused_imports)]
use num_traits::Float;

use super::CMatrix;
use crate::{Error, Result};

const MAX_SWEEPS: usize = 100;

/// Eigen-decomposition of a real symmetric matrix given row-major.
///
/// Cyclic Jacobi with a fixed row-by-row pivot order. Returns eigenvalues
/// ascending (stable for ties) and the matching eigenvectors as the columns
/// of an `n x n` row-major array.
pub fn symmetric_eigen(n: usize, a: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    assert_eq!(a.len(), n * n, "symmetric_eigen: expected {n}x{n} entries");
    let mut m = a.to_vec();
    // use the symmetric part so tiny asymmetries do not bias the rotations
    for p in 0..n {
        for q in p + 1..n {
            let s = 0.5 * (m[p * n + q] + m[q * n + p]);
            m[p * n + q] = s;
            m[q * n + p] = s;
        }
    }
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let scale = m.iter().map(|x| x * x).sum::<f64>().sqrt();
    let mut converged = scale == 0.0;
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        let off = off_diagonal_norm(n, &m);
        if off <= f64::EPSILON * scale {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(n, &mut m, &mut v, p, q);
            }
        }
    }
    if !converged && off_diagonal_norm(n, &m) > 1e3 * f64::EPSILON * scale {
        return Err(Error::Numeric(format!("Jacobi eigensolver did not converge for n={n}")));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[i * n + i].total_cmp(&m[j * n + j]));
    let values = order.iter().map(|&i| m[i * n + i]).collect();
    let mut vectors = vec![0.0; n * n];
    for (new, &old) in order.iter().enumerate() {
        for r in 0..n {
            vectors[r * n + new] = v[r * n + old];
        }
    }
    Ok((values, vectors))
}

fn off_diagonal_norm(n: usize, m: &[f64]) -> f64 {
    let mut s = 0.0;
    for p in 0..n {
        for q in 0..n {
            if p != q {
                s += m[p * n + q] * m[p * n + q];
            }
        }
    }
    s.sqrt()
}

fn rotate(n: usize, m: &mut [f64], v: &mut [f64], p: usize, q: usize) {
    let apq = m[p * n + q];
    if apq == 0.0 {
        return;
    }
    let app = m[p * n + p];
    let aqq = m[q * n + q];
    let theta = (aqq - app) / (2.0 * apq);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        let t = 1.0 / (theta.abs() + (theta * theta + 1.0).sqrt());
        if theta < 0.0 {
            -t
        } else {
            t
        }
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    m[p * n + p] = app - t * apq;
    m[q * n + q] = aqq + t * apq;
    m[p * n + q] = 0.0;
    m[q * n + p] = 0.0;
    for r in 0..n {
        if r != p && r != q {
            let arp = m[r * n + p];
            let arq = m[r * n + q];
            let np = c * arp - s * arq;
            let nq = s * arp + c * arq;
            m[r * n + p] = np;
            m[p * n + r] = np;
            m[r * n + q] = nq;
            m[q * n + r] = nq;
        }
        let vrp = v[r * n + p];
        let vrq = v[r * n + q];
        v[r * n + p] = c * vrp - s * vrq;
        v[r * n + q] = s * vrp + c * vrq;
    }
}

/// Default Hermiticity tolerance: `1e-10 * dim * maxabs`.
pub(crate) fn default_tol_herm(a: &CMatrix) -> f64 {
    1e-10 * a.rows() as f64 * a.max_abs()
}

/// Eigenvalues of a Hermitian matrix, ascending, with the default tolerance.
pub fn hermitian_eigenvalues(a: &CMatrix) -> Result<Vec<f64>> {
    hermitian_eigenvalues_tol(a, default_tol_herm(a))
}

/// Eigenvalues of a Hermitian matrix, ascending.
///
/// Complex input is embedded as the real symmetric matrix
/// `[[Re, -Im], [Im, Re]]`, whose spectrum is that of `a` with every value
/// doubled; adjacent pairs are averaged back.
pub fn hermitian_eigenvalues_tol(a: &CMatrix, tol: f64) -> Result<Vec<f64>> {
    let n = a.require_square("hermitian_eigenvalues")?;
    let deviation = a.hermitian_deviation();
    if deviation > tol {
        return Err(Error::NotHermitian { deviation, tol });
    }
    let (values, _) = hermitian_eigen_embedded(a, n)?;
    Ok(values)
}

/// Eigenvalues (ascending) and the real-embedded eigenvector array.
fn hermitian_eigen_embedded(a: &CMatrix, n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let real = a.as_slice().iter().all(|z| z.im == 0.0);
    if real {
        let re: Vec<f64> = a.as_slice().iter().map(|z| z.re).collect();
        return symmetric_eigen(n, &re);
    }
    let m = 2 * n;
    let mut s = vec![0.0; m * m];
    for i in 0..n {
        for j in 0..n {
            let z = a[(i, j)];
            s[i * m + j] = z.re;
            s[(i + n) * m + (j + n)] = z.re;
            s[i * m + (j + n)] = -z.im;
            s[(i + n) * m + j] = z.im;
        }
    }
    let (doubled, vecs) = symmetric_eigen(m, &s)?;
    let values = doubled.chunks(2).map(|p| 0.5 * (p[0] + p[1])).collect();
    Ok((values, vecs))
}

/// Eigenvalues and eigenvectors of a real symmetric matrix stored in a
/// [`CMatrix`] (imaginary parts must be zero).
pub fn real_symmetric_eigen(a: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    let n = a.require_square("real_symmetric_eigen")?;
    if a.as_slice().iter().any(|z| z.im != 0.0) {
        return Err(Error::Numeric("real_symmetric_eigen supports real symmetric input only".into()));
    }
    let tol = default_tol_herm(a);
    let deviation = a.symmetric_deviation();
    if deviation > tol {
        return Err(Error::NotHermitian { deviation, tol });
    }
    let (values, vecs) = hermitian_eigen_embedded(a, n)?;
    let q = CMatrix::from_fn(n, n, |i, j| super::Complex::new(vecs[i * n + j], 0.0));
    Ok((values, q))
}
