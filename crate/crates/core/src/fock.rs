//! Two-particle density operators as formal term lists.
//!
//! A term `coeff · |k1 k2⟩⟨c1 c2|` stores its ket and bra mode pairs
//! directly. The operator string `a†_{k1} a†_{k2} |0⟩⟨0| a_{m1} a_{m2}` reads
//! as `ket = (k1, k2)`, `col = (m2, m1)`: the bra is the adjoint of
//! `a†_{m2} a†_{m1} |0⟩`. Doubly occupied kets `a†_i a†_i |0⟩` map to `|i i⟩`
//! with weight one.
//!
//! Rewrites never merge or normalise terms. Equal `(ket, col)` pairs add up
//! only when a matrix is assembled, with basis index `(k1, k2) ↦ k1·M + k2`.

use alloc::format;
use alloc::vec::Vec;

use crate::linalg::{CMatrix, Complex, ONE, ZERO};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Statistics {
    Boson,
    Fermion,
    Distinguishable,
}

impl Statistics {
    /// Sign picked up when the two column modes are exchanged.
    fn exchange_sign(self, c1: usize, c2: usize) -> Result<f64> {
        match self {
            Statistics::Boson => Ok(1.0),
            Statistics::Fermion if c1 == c2 => Ok(1.0),
            Statistics::Fermion => Ok(-1.0),
            Statistics::Distinguishable => Err(Error::ExchangeForbidden),
        }
    }
}

/// One summand `coeff · |ket⟩⟨col|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OpTerm {
    pub coeff: Complex,
    pub ket: (usize, usize),
    pub col: (usize, usize),
}

impl OpTerm {
    pub fn new(coeff: Complex, ket: (usize, usize), col: (usize, usize)) -> Self {
        OpTerm { coeff, ket, col }
    }

    /// Term for `coeff · a†_{k1} a†_{k2} |0⟩⟨0| a_{m1} a_{m2}`.
    pub fn from_operator_string(coeff: Complex, creators: (usize, usize), annihilators: (usize, usize)) -> Self {
        OpTerm { coeff, ket: creators, col: (annihilators.1, annihilators.0) }
    }

    /// Annihilator indices `(m1, m2)` in operator-string order.
    pub fn annihilators(&self) -> (usize, usize) {
        (self.col.1, self.col.0)
    }
}

/// A density operator over `mode_count` modes per slot.
#[derive(Debug, Clone, PartialEq)]
pub struct FormalDensity {
    pub statistics: Statistics,
    pub mode_count: usize,
    pub terms: Vec<OpTerm>,
}

impl FormalDensity {
    pub fn new(statistics: Statistics, mode_count: usize, terms: Vec<OpTerm>) -> Result<Self> {
        if mode_count == 0 {
            return Err(Error::Dimension { op: "FormalDensity::new", detail: "mode_count must be >= 1".into() });
        }
        let fd = FormalDensity { statistics, mode_count, terms };
        fd.check_modes()?;
        Ok(fd)
    }

    /// The pure-state projector `|ψ⟩⟨ψ|` for `|ψ⟩ = Σ_l amp_l |k_l⟩`, where
    /// each `k_l` is a mode pair.
    pub fn pure(statistics: Statistics, mode_count: usize, amplitudes: &[(Complex, (usize, usize))]) -> Result<Self> {
        let mut terms = Vec::with_capacity(amplitudes.len() * amplitudes.len());
        for &(ai, ki) in amplitudes {
            for &(aj, kj) in amplitudes {
                terms.push(OpTerm::new(ai * aj.conj(), ki, kj));
            }
        }
        Self::new(statistics, mode_count, terms)
    }

    /// Reads every nonzero entry of an `M² x M²` matrix as one term.
    pub fn from_matrix(statistics: Statistics, mode_count: usize, m: &CMatrix) -> Result<Self> {
        let dim = mode_count * mode_count;
        if m.shape() != (dim, dim) {
            return Err(Error::Dimension {
                op: "FormalDensity::from_matrix",
                detail: format!("expected {dim}x{dim} for {mode_count} modes, got {}x{}", m.rows(), m.cols()),
            });
        }
        let mut terms = Vec::new();
        for r in 0..dim {
            for c in 0..dim {
                let z = m[(r, c)];
                if z != ZERO {
                    terms.push(OpTerm::new(z, (r / mode_count, r % mode_count), (c / mode_count, c % mode_count)));
                }
            }
        }
        Ok(FormalDensity { statistics, mode_count, terms })
    }

    fn check_modes(&self) -> Result<()> {
        for t in &self.terms {
            for idx in [t.ket.0, t.ket.1, t.col.0, t.col.1] {
                if idx >= self.mode_count {
                    return Err(Error::ModeOutOfRange { index: idx, mode_count: self.mode_count });
                }
            }
        }
        Ok(())
    }

    fn map_terms(&self, f: impl Fn(&OpTerm) -> OpTerm) -> FormalDensity {
        FormalDensity {
            statistics: self.statistics,
            mode_count: self.mode_count,
            terms: self.terms.iter().map(f).collect(),
        }
    }
}

/// Matrix over the ordered mode-pair basis; each term adds its coefficient at
/// row `k1·M + k2`, column `c1·M + c2`.
pub fn assemble_matrix(fd: &FormalDensity) -> Result<CMatrix> {
    fd.check_modes()?;
    let m = fd.mode_count;
    let mut out = CMatrix::zeros(m * m, m * m);
    for t in &fd.terms {
        out[(t.ket.0 * m + t.ket.1, t.col.0 * m + t.col.1)] += t.coeff;
    }
    Ok(out)
}

/// Transposes the second slot: `(k1,k2),(c1,c2) ↦ (k1,c2),(c1,k2)`.
pub fn partial_transpose_terms(fd: &FormalDensity) -> FormalDensity {
    fd.map_terms(|t| OpTerm::new(t.coeff, (t.ket.0, t.col.1), (t.col.0, t.ket.1)))
}

/// Partial Hermitian conjugation: the partial transpose with conjugated
/// coefficients.
pub fn phc_terms(fd: &FormalDensity) -> FormalDensity {
    fd.map_terms(|t| OpTerm::new(t.coeff.conj(), (t.ket.0, t.col.1), (t.col.0, t.ket.1)))
}

/// Swaps the two column modes of every term using the commutation rule of
/// the particle statistics: sign `+1` for bosons, `-1` for fermions unless
/// both modes coincide.
pub fn exchange_col_modes(fd: &FormalDensity) -> Result<FormalDensity> {
    let mut terms = Vec::with_capacity(fd.terms.len());
    for t in &fd.terms {
        let sign = fd.statistics.exchange_sign(t.col.0, t.col.1)?;
        terms.push(OpTerm::new(t.coeff * sign, t.ket, (t.col.1, t.col.0)));
    }
    Ok(FormalDensity { statistics: fd.statistics, mode_count: fd.mode_count, terms })
}

/// Regroups indices as realignment does: `(k1,k2),(c1,c2) ↦ (k1,c1),(k2,c2)`.
pub fn realign_terms(fd: &FormalDensity) -> FormalDensity {
    fd.map_terms(|t| OpTerm::new(t.coeff, (t.ket.0, t.col.0), (t.ket.1, t.col.1)))
}

/// The mode-exchange permutation on the `M²`-dimensional pair basis.
pub fn swap_operator(mode_count: usize) -> CMatrix {
    let m = mode_count;
    let mut s = CMatrix::zeros(m * m, m * m);
    for a in 0..m {
        for b in 0..m {
            s[(a * m + b, b * m + a)] = ONE;
        }
    }
    s
}

/// `(I ± SWAP) / 2`: `+` for bosons, `-` for fermions.
pub fn symmetrizer(mode_count: usize, statistics: Statistics) -> Result<CMatrix> {
    let sign = match statistics {
        Statistics::Boson => 1.0,
        Statistics::Fermion => -1.0,
        Statistics::Distinguishable => return Err(Error::ExchangeForbidden),
    };
    let id = CMatrix::identity(mode_count * mode_count);
    let swap = swap_operator(mode_count).scale_real(sign);
    Ok((&id + &swap).scale_real(0.5))
}

/// `P · m · P` with `P` the symmetrizer (bosons) or antisymmetrizer (fermions).
pub fn symmetrizer_projection(m: &CMatrix, mode_count: usize, statistics: Statistics) -> Result<CMatrix> {
    let dim = mode_count * mode_count;
    if m.shape() != (dim, dim) {
        return Err(Error::Dimension {
            op: "symmetrizer_projection",
            detail: format!("expected {dim}x{dim}, got {}x{}", m.rows(), m.cols()),
        });
    }
    let p = symmetrizer(mode_count, statistics)?;
    Ok(&(&p * m) * &p)
}
