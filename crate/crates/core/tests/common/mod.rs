#![allow(dead_code)]

use qsep_core::{CMatrix, Complex};
use rand::Rng;

pub fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

/// Laplace expansion along the first row.
pub fn cofactor_det(m: &CMatrix) -> Complex {
    let n = m.rows();
    let idx: Vec<usize> = (0..n).collect();
    minor_det(m, 0, &idx)
}

fn minor_det(m: &CMatrix, row: usize, cols: &[usize]) -> Complex {
    if cols.len() == 1 {
        return m[(row, cols[0])];
    }
    let mut total = c(0.0, 0.0);
    for (k, &col) in cols.iter().enumerate() {
        let entry = m[(row, col)];
        if entry == c(0.0, 0.0) {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != col).collect();
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        total += entry * sign * minor_det(m, row + 1, &rest);
    }
    total
}

/// `((m,μ),(n,ν)) ↦ ((m,ν),(n,μ))` written out index by index.
pub fn brute_pt_b(m: &CMatrix, da: usize, db: usize) -> CMatrix {
    let mut out = CMatrix::zeros(da * db, da * db);
    for a in 0..da {
        for mu in 0..db {
            for b in 0..da {
                for nu in 0..db {
                    out[(a * db + nu, b * db + mu)] = m[(a * db + mu, b * db + nu)];
                }
            }
        }
    }
    out
}

pub fn brute_pt_a(m: &CMatrix, da: usize, db: usize) -> CMatrix {
    let mut out = CMatrix::zeros(da * db, da * db);
    for a in 0..da {
        for mu in 0..db {
            for b in 0..da {
                for nu in 0..db {
                    out[(b * db + mu, a * db + nu)] = m[(a * db + mu, b * db + nu)];
                }
            }
        }
    }
    out
}

/// `((m,μ),(n,ν)) ↦ ((m,n),(μ,ν))`.
pub fn brute_realign(m: &CMatrix, da: usize, db: usize) -> CMatrix {
    let mut out = CMatrix::zeros(da * da, db * db);
    for a in 0..da {
        for mu in 0..db {
            for b in 0..da {
                for nu in 0..db {
                    out[(a * da + b, mu * db + nu)] = m[(a * db + mu, b * db + nu)];
                }
            }
        }
    }
    out
}

pub fn random_complex<R: Rng>(rng: &mut R) -> Complex {
    c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| random_complex(rng))
}

/// `A A† / tr(A A†)` for a random square `A`.
pub fn random_density<R: Rng>(rng: &mut R, dim: usize) -> CMatrix {
    let a = random_matrix(rng, dim, dim);
    let p = &a * &a.adjoint();
    let t = p.trace().re;
    p.scale_real(1.0 / t)
}

pub fn random_symmetric<R: Rng>(rng: &mut R, n: usize) -> CMatrix {
    let a = random_matrix(rng, n, n);
    (&a + &a.transpose()).scale_real(0.5)
}

pub fn random_antisymmetric<R: Rng>(rng: &mut R, n: usize) -> CMatrix {
    let a = random_matrix(rng, n, n);
    (&a - &a.transpose()).scale_real(0.5)
}

/// A Haar-ish unitary from Gram-Schmidt on random columns.
pub fn random_unitary<R: Rng>(rng: &mut R, n: usize) -> CMatrix {
    let a = random_matrix(rng, n, n);
    let mut cols: Vec<Vec<Complex>> = Vec::new();
    for j in 0..n {
        let mut v = a.column(j);
        for q in &cols {
            let p: Complex = q.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
            for (vi, qi) in v.iter_mut().zip(q) {
                *vi -= p * qi;
            }
        }
        let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        cols.push(v.iter().map(|x| x / norm).collect());
    }
    CMatrix::from_fn(n, n, |i, j| cols[j][i])
}

pub fn rel_err(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs()
}
