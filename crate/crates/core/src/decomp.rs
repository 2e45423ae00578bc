//! Canonical forms of two-particle coefficient matrices.
//!
//! * Schmidt: `c = L · diag(ω) · Rᵀ` for distinguishable pairs (any shape).
//! * Takagi: `c = U · diag(d) · Uᵀ` for symmetric (boson) coefficients.
//! * Slater: `Uᵀ · Ω · U = ⊕ [[0, z], [-z, 0]] ⊕ 0` for antisymmetric
//!   (fermion) coefficients.
//!
//! All three count rank against `1e-12` times the largest coefficient.

use alloc::vec;
use alloc::vec::Vec;

use crate::linalg::{
    complete_unitary, reorthonormalize, svd, symmetric_eigen, vec_norm, CMatrix, Complex, ZERO,
};
use crate::{Error, Result};

/// Relative threshold below which a coefficient counts as zero.
pub const RANK_TOL: f64 = 1e-12;

/// Absolute symmetry tolerance for input validation, scaled up for inputs
/// with entries larger than one.
const SYMMETRY_TOL: f64 = 1e-10;

fn symmetry_tol(c: &CMatrix) -> f64 {
    SYMMETRY_TOL * c.max_abs().max(1.0)
}

/// Accepts `c` if `max |c_ij - c_ji|` is within the symmetry tolerance.
pub fn check_symmetric(c: &CMatrix) -> Result<()> {
    c.require_square("check_symmetric")?;
    let (deviation, tol) = (c.symmetric_deviation(), symmetry_tol(c));
    if deviation > tol {
        return Err(Error::NotSymmetric { deviation, tol });
    }
    Ok(())
}

/// Accepts `c` if `max |c_ij + c_ji|` is within the symmetry tolerance.
pub fn check_antisymmetric(c: &CMatrix) -> Result<()> {
    c.require_square("check_antisymmetric")?;
    let (deviation, tol) = (c.antisymmetric_deviation(), symmetry_tol(c));
    if deviation > tol {
        return Err(Error::NotAntisymmetric { deviation, tol });
    }
    Ok(())
}

fn rank_of(values: impl Iterator<Item = f64> + Clone) -> usize {
    let max = values.clone().fold(0.0f64, f64::max);
    if max == 0.0 {
        return 0;
    }
    values.filter(|&v| v > RANK_TOL * max).count()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SchmidtForm {
    /// Nonnegative, descending, `min(rows, cols)` entries.
    pub coefficients: Vec<f64>,
    /// Columns are the left Schmidt vectors.
    pub left_basis: CMatrix,
    /// Columns are the right Schmidt vectors.
    pub right_basis: CMatrix,
    pub rank: usize,
}

impl SchmidtForm {
    pub fn reconstruct(&self) -> CMatrix {
        let (m, n) = (self.left_basis.rows(), self.right_basis.rows());
        CMatrix::from_fn(m, n, |i, j| {
            self.coefficients
                .iter()
                .enumerate()
                .map(|(k, &w)| self.left_basis[(i, k)] * w * self.right_basis[(j, k)])
                .sum()
        })
    }
}

/// Schmidt decomposition of the pure state `Σ c_ij |i⟩|j⟩`.
pub fn schmidt_decompose(c: &CMatrix) -> SchmidtForm {
    let f = svd(c);
    let rank = rank_of(f.s.iter().copied());
    SchmidtForm { rank, right_basis: f.vdag.transpose(), left_basis: f.u, coefficients: f.s }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TakagiForm {
    pub unitary: CMatrix,
    /// Nonnegative, descending.
    pub coefficients: Vec<f64>,
}

impl TakagiForm {
    pub fn rank(&self) -> usize {
        rank_of(self.coefficients.iter().copied())
    }

    pub fn reconstruct(&self) -> CMatrix {
        let u = &self.unitary;
        let n = u.rows();
        CMatrix::from_fn(n, n, |i, j| {
            self.coefficients.iter().enumerate().map(|(k, &d)| u[(i, k)] * d * u[(j, k)]).sum()
        })
    }
}

/// Takagi factorisation `c = U diag(d) Uᵀ` of a complex symmetric matrix.
///
/// With `c = A + iB`, the real symmetric matrix `[[A, B], [B, -A]]` has
/// spectrum `±d`; an eigenvector `[x; y]` for `+d_k` gives the Takagi vector
/// `x + iy`, since `c · conj(x + iy) = d_k (x + iy)`. Any orthonormal basis
/// of a repeated eigenvalue's eigenspace is a valid set of Takagi vectors,
/// so degenerate coefficients need no special treatment. Columns for zero
/// coefficients complete `U` to a unitary.
pub fn takagi_decompose(c: &CMatrix) -> Result<TakagiForm> {
    let n = c.require_square("takagi_decompose")?;
    check_symmetric(c)?;
    let m = 2 * n;
    let mut embed = vec![0.0; m * m];
    for i in 0..n {
        for j in 0..n {
            let z = 0.5 * (c[(i, j)] + c[(j, i)]);
            embed[i * m + j] = z.re;
            embed[i * m + j + n] = z.im;
            embed[(i + n) * m + j] = z.im;
            embed[(i + n) * m + j + n] = -z.re;
        }
    }
    let (values, vectors) = symmetric_eigen(m, &embed)?;
    let top = values.last().copied().unwrap_or(0.0).max(0.0);

    let mut unitary = CMatrix::zeros(n, n);
    let mut coefficients = vec![0.0; n];
    let mut filled = 0;
    for k in (0..m).rev() {
        if filled == n || top == 0.0 || values[k] <= RANK_TOL * top {
            break;
        }
        let u: Vec<Complex> = (0..n).map(|i| Complex::new(vectors[i * m + k], vectors[(i + n) * m + k])).collect();
        let norm = vec_norm(&u);
        let u: Vec<Complex> = u.iter().map(|z| z / norm).collect();
        unitary.set_column(filled, &u);
        coefficients[filled] = values[k];
        filled += 1;
    }
    if filled > 0 {
        let mut head = CMatrix::from_fn(n, filled, |i, j| unitary[(i, j)]);
        reorthonormalize(&mut head);
        for j in 0..filled {
            unitary.set_column(j, &head.column(j));
        }
    }
    complete_unitary(&mut unitary, filled);
    Ok(TakagiForm { unitary, coefficients })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SlaterForm {
    pub unitary: CMatrix,
    /// One entry per canonical block, `|z|` descending. For odd dimension the
    /// unpaired trailing mode contributes a final zero entry.
    pub coefficients: Vec<Complex>,
    pub rank: usize,
}

impl SlaterForm {
    /// The block-diagonal matrix `⊕ [[0, z_l], [-z_l, 0]] ⊕ 0`.
    pub fn canonical_form(&self) -> CMatrix {
        let n = self.unitary.rows();
        let mut z = CMatrix::zeros(n, n);
        for (l, &zl) in self.coefficients.iter().enumerate() {
            if 2 * l + 1 < n {
                z[(2 * l, 2 * l + 1)] = zl;
                z[(2 * l + 1, 2 * l)] = -zl;
            }
        }
        z
    }

    /// `Ω = conj(U) · Z · U^H`.
    pub fn reconstruct(&self) -> CMatrix {
        let u = &self.unitary;
        &(&u.conj() * &self.canonical_form()) * &u.adjoint()
    }
}

/// Slater (Youla) decomposition of an antisymmetric coefficient matrix.
///
/// Deflation: on the remaining subspace `Q`, take the top right singular
/// vector `v` of `Ω_r = Qᵀ Ω Q` with value `σ` and set `w = Ω_r v / σ`.
/// Then `conj(w)` and `v` are orthonormal, span a subspace decoupled from its
/// complement under `Ω`, and `conj(w)ᵀ Ω_r v = σ`. The pair becomes the next
/// canonical block and `Q` shrinks by two.
pub fn slater_decompose(omega: &CMatrix) -> Result<SlaterForm> {
    let n = omega.require_square("slater_decompose")?;
    check_antisymmetric(omega)?;
    let omega = (omega - &omega.transpose()).scale_real(0.5);

    let sigma_max = svd(&omega).s.first().copied().unwrap_or(0.0);
    let mut unitary = CMatrix::zeros(n, n);
    let mut coefficients = Vec::with_capacity(n.div_ceil(2));
    // remaining subspace, as orthonormal columns in full coordinates
    let mut rest = CMatrix::identity(n);
    let mut filled = 0;
    while n - filled >= 2 && sigma_max > 0.0 {
        let r = n - filled;
        let reduced = &(&rest.transpose() * &omega) * &rest;
        let f = svd(&reduced);
        let sigma = f.s[0];
        if sigma <= RANK_TOL * sigma_max {
            break;
        }
        let v: Vec<Complex> = (0..r).map(|i| f.vdag[(0, i)].conj()).collect();
        let w: Vec<Complex> = (0..r)
            .map(|i| (0..r).map(|j| reduced[(i, j)] * v[j]).sum::<Complex>() / sigma)
            .collect();
        let mut pair = CMatrix::zeros(r, r);
        pair.set_column(0, &w.iter().map(|z| z.conj()).collect::<Vec<_>>());
        pair.set_column(1, &v);
        reorthonormalize(&mut pair);
        complete_unitary(&mut pair, 2);
        let a = pair.column(0);
        let b = pair.column(1);
        let z: Complex = (0..r)
            .map(|i| a[i] * (0..r).map(|j| reduced[(i, j)] * b[j]).sum::<Complex>())
            .sum();
        let full = &rest * &pair;
        unitary.set_column(filled, &full.column(0));
        unitary.set_column(filled + 1, &full.column(1));
        filled += 2;
        coefficients.push(z);
        if r > 2 {
            rest = CMatrix::from_fn(n, r - 2, |i, j| full[(i, j + 2)]);
        }
    }
    for j in filled..n {
        unitary.set_column(j, &rest.column(j - filled));
    }
    let rank = coefficients.len();
    coefficients.resize(n.div_ceil(2), ZERO);
    Ok(SlaterForm { unitary, coefficients, rank })
}
