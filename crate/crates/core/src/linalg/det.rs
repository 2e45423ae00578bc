use super::{CMatrix, Complex, ONE, ZERO};
use crate::Result;

/// Determinant by LU factorisation with partial pivoting.
///
/// The pivot is the largest-modulus entry of the remaining column; every row
/// swap flips the sign. An all-zero pivot column makes the determinant
/// exactly zero.
pub fn det(a: &CMatrix) -> Result<Complex> {
    let n = a.require_square("det")?;
    let mut lu = a.clone();
    let mut acc = ONE;
    for k in 0..n {
        let mut piv = k;
        let mut best = lu[(k, k)].norm();
        for i in k + 1..n {
            let v = lu[(i, k)].norm();
            if v > best {
                best = v;
                piv = i;
            }
        }
        if best == 0.0 {
            return Ok(ZERO);
        }
        if piv != k {
            for j in 0..n {
                let t = lu[(k, j)];
                lu[(k, j)] = lu[(piv, j)];
                lu[(piv, j)] = t;
            }
            acc = -acc;
        }
        let p = lu[(k, k)];
        acc *= p;
        for i in k + 1..n {
            let f = lu[(i, k)] / p;
            if f == ZERO {
                continue;
            }
            for j in k + 1..n {
                let u = lu[(k, j)];
                lu[(i, j)] -= f * u;
            }
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Error;
    use alloc::vec::Vec;

    /// Laplace expansion along the first row.
    fn cofactor_det(a: &CMatrix) -> Complex {
        let n = a.rows();
        if n == 1 {
            return a[(0, 0)];
        }
        let mut total = ZERO;
        for j in 0..n {
            let minor = CMatrix::from_fn(n - 1, n - 1, |r, c| a[(r + 1, if c < j { c } else { c + 1 })]);
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            total += a[(0, j)] * cofactor_det(&minor) * sign;
        }
        total
    }

    #[test]
    fn identity_and_swap() {
        assert_eq!(det(&CMatrix::identity(3)).unwrap(), ONE);
        let x = CMatrix::from_real_rows(&[[0.0, 1.0], [1.0, 0.0]]).unwrap();
        assert_eq!(det(&x).unwrap(), -ONE);
    }

    #[test]
    fn partially_transposed_boson_matrix() {
        let (di, dj) = (0.6, 0.8);
        let m = CMatrix::from_real_rows(&[
            [di * di, 0.0, 0.0, 0.0],
            [0.0, 0.0, di * dj, 0.0],
            [0.0, di * dj, 0.0, 0.0],
            [0.0, 0.0, 0.0, dj * dj],
        ])
        .unwrap();
        let oracle = cofactor_det(&m);
        assert!((oracle.re + 0.05308416).abs() < 1e-15);
        let d = det(&m).unwrap();
        assert!((d - oracle).norm() < 1e-15);
    }

    #[test]
    fn agrees_with_cofactor_expansion_on_complex_input() {
        let vals: Vec<Complex> = (0..25)
            .map(|k| Complex::new(((k * 7 + 3) % 11) as f64 - 5.0, ((k * 5 + 1) % 7) as f64 - 3.0))
            .collect();
        let m = CMatrix::from_vec(5, 5, vals).unwrap();
        let (a, b) = (det(&m).unwrap(), cofactor_det(&m));
        assert!((a - b).norm() < 1e-9 * b.norm().max(1.0));
    }

    #[test]
    fn singular_column_gives_exact_zero() {
        let m = CMatrix::from_real_rows(&[[0.0, 1.0], [0.0, 2.0]]).unwrap();
        assert_eq!(det(&m).unwrap(), ZERO);
    }

    #[test]
    fn non_square_is_rejected() {
        assert!(matches!(det(&CMatrix::zeros(2, 3)), Err(Error::Dimension { .. })));
    }
}
