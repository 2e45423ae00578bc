use alloc::vec::Vec;

// f64 maths without std.
#[allow(unused_imports)]
use num_traits::Float;

use super::{complete_unitary, inner, reorthonormalize, vec_norm, CMatrix, Complex, ONE, ZERO};

const MAX_SWEEPS: usize = 80;

/// Full singular value decomposition `a = u * diag(s) * vdag`.
///
/// `u` is `rows x rows`, `vdag` is `cols x cols`, and `s` holds the
/// `min(rows, cols)` singular values in descending order.
#[derive(Debug, Clone, PartialEq)]
pub struct Svd {
    pub u: CMatrix,
    pub s: Vec<f64>,
    pub vdag: CMatrix,
}

impl Svd {
    /// `u * diag(s) * vdag`, for reconstruction checks.
    pub fn reconstruct(&self) -> CMatrix {
        let (m, n) = (self.u.rows(), self.vdag.cols());
        CMatrix::from_fn(m, n, |i, j| {
            self.s.iter().enumerate().map(|(k, &sk)| self.u[(i, k)] * sk * self.vdag[(k, j)]).sum()
        })
    }
}

/// One-sided (Hestenes) Jacobi SVD with a fixed cyclic pair order.
pub fn svd(a: &CMatrix) -> Svd {
    if a.rows() < a.cols() {
        let t = svd_tall(&a.adjoint());
        return Svd { u: t.vdag.adjoint(), s: t.s, vdag: t.u.adjoint() };
    }
    svd_tall(a)
}

/// Sum of singular values.
pub fn trace_norm(a: &CMatrix) -> f64 {
    svd(a).s.iter().sum()
}

fn svd_tall(a: &CMatrix) -> Svd {
    let (m, n) = a.shape();
    let mut cols: Vec<Vec<Complex>> = (0..n).map(|j| a.column(j)).collect();
    let mut v: Vec<Vec<Complex>> = (0..n)
        .map(|j| (0..n).map(|i| if i == j { ONE } else { ZERO }).collect())
        .collect();

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha = vec_norm(&cols[p]).powi(2);
                let beta = vec_norm(&cols[q]).powi(2);
                let gamma = inner(&cols[p], &cols[q]);
                let g = gamma.norm();
                if g == 0.0 || g <= f64::EPSILON * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                // rotate the phase of column q so the pair overlap is real
                let phase = (gamma / g).conj();
                let zeta = (beta - alpha) / (2.0 * g);
                let t = if zeta >= 0.0 {
                    1.0 / (zeta + (1.0 + zeta * zeta).sqrt())
                } else {
                    -1.0 / (-zeta + (1.0 + zeta * zeta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let (left, right) = cols.split_at_mut(q);
                rotate_pair(&mut left[p], &mut right[0], phase, c, s);
                let (left, right) = v.split_at_mut(q);
                rotate_pair(&mut left[p], &mut right[0], phase, c, s);
            }
        }
        if !rotated {
            break;
        }
    }

    let norms: Vec<f64> = cols.iter().map(|c| vec_norm(c)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));
    let s: Vec<f64> = order.iter().map(|&j| norms[j]).collect();
    let s_max = s.first().copied().unwrap_or(0.0);

    let mut u = CMatrix::zeros(m, m);
    let mut filled = 0;
    for (k, &j) in order.iter().enumerate() {
        if s[k] <= 1e-13 * s_max || s[k] == 0.0 {
            break;
        }
        let col: Vec<Complex> = cols[j].iter().map(|z| z / s[k]).collect();
        u.set_column(k, &col);
        filled += 1;
    }
    if filled > 0 {
        let mut head = CMatrix::from_fn(m, filled, |i, j| u[(i, j)]);
        reorthonormalize(&mut head);
        for j in 0..filled {
            u.set_column(j, &head.column(j));
        }
    }
    complete_unitary(&mut u, filled);

    let vdag = CMatrix::from_fn(n, n, |k, i| v[order[k]][i].conj());
    Svd { u, s, vdag }
}

fn rotate_pair(x: &mut [Complex], y: &mut [Complex], phase: Complex, c: f64, s: f64) {
    for (xi, yi) in x.iter_mut().zip(y.iter_mut()) {
        let a = *xi;
        let b = *yi * phase;
        *xi = a * c - b * s;
        *yi = a * s + b * c;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::unitarity_defect;

    fn sample(rows: usize, cols: usize, seed: u64) -> CMatrix {
        let mut state = seed;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        };
        CMatrix::from_fn(rows, cols, |_, _| Complex::new(next(), next()))
    }

    #[test]
    fn diagonal_input() {
        let r = svd(&CMatrix::diag_real(&[3.0, 1.0]));
        assert_eq!(r.s, alloc::vec![3.0, 1.0]);
    }

    #[test]
    fn scaled_identity() {
        let h = core::f64::consts::FRAC_1_SQRT_2;
        let r = svd(&CMatrix::identity(2).scale_real(h));
        assert!(r.s.iter().all(|&x| (x - h).abs() < 1e-16));
    }

    #[test]
    fn reconstructs_square_and_rectangular() {
        for (rows, cols, seed) in [(3, 3, 1), (4, 2, 2), (2, 5, 3), (6, 6, 4)] {
            let a = sample(rows, cols, seed);
            let r = svd(&a);
            assert!(r.reconstruct().max_abs_diff(&a) < 1e-10);
            assert!(unitarity_defect(&r.u) < 1e-9);
            assert!(unitarity_defect(&r.vdag) < 1e-9);
            assert!(r.s.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn rank_deficient_input_still_yields_unitary_factors() {
        let x = sample(4, 1, 9);
        let y = sample(1, 4, 10);
        let a = &x * &y;
        let r = svd(&a);
        assert!(r.s[1] < 1e-14 * r.s[0]);
        assert!(unitarity_defect(&r.u) < 1e-9);
        assert!(r.reconstruct().max_abs_diff(&a) < 1e-12);
    }

    #[test]
    fn trace_norm_basics() {
        assert_eq!(trace_norm(&CMatrix::diag_real(&[1.0, -1.0])), 2.0);
        assert_eq!(trace_norm(&CMatrix::zeros(3, 3)), 0.0);
    }
}
