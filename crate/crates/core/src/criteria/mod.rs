//! Matrix-level separability criteria and the end-to-end pipelines.

mod pipelines;
mod report;

use alloc::format;
use alloc::vec::Vec;

// f64 maths without std.
#[allow(unused_imports)]
use num_traits::Float;

use crate::linalg::{det, hermitian_eigenvalues_tol, svd, trace_norm, CMatrix, Complex};
use crate::{Error, Result};

pub use pipelines::{
    analyze_density, boson_pipeline, boson_pipeline_with, distinguishable_pipeline, distinguishable_pipeline_with,
    fermion_pipeline, fermion_pipeline_with, pt_symmetrize_equals_realign_check, AnalysisOptions, RealignCheck,
};
pub use report::{AnalysisReport, Check, Decomposition, InputDescriptor, NamedMatrix, NamedScalar, NamedSpectrum};

/// Trace window for the `normalized` flag.
pub const NORMALIZATION_TOL: f64 = 1e-9;
/// Relative rank cut for [`product_factorization`].
pub const FACTORIZATION_RANK_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// Thresholds applied to criterion witnesses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Minimum PT eigenvalue below `-ppt` certifies entanglement.
    pub ppt: f64,
    /// Determinant below `-det` counts as negative.
    pub det: f64,
    /// Realigned trace norm above `1 + realign` certifies entanglement.
    pub realign: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { ppt: 1e-10, det: 1e-12, realign: 1e-10 }
    }
}

impl Tolerances {
    pub fn uniform(tol: f64) -> Self {
        Tolerances { ppt: tol, det: tol, realign: tol }
    }
}

/// A Hermitian operator on `C^dim_a ⊗ C^dim_b`.
///
/// [`DensityMatrix::new`] admits only positive semidefinite input. Maps such
/// as [`partial_transpose`] keep the tagging but may leave the positive cone;
/// the tests re-check positivity of whatever they are handed.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: CMatrix,
    dim_a: usize,
    dim_b: usize,
    normalized: bool,
}

fn tol_herm(m: &CMatrix) -> f64 {
    1e-10 * m.rows() as f64 * m.max_abs()
}

fn tol_psd(m: &CMatrix) -> f64 {
    1e-9 * m.rows() as f64 * m.max_abs()
}

fn check_bipartite(op: &'static str, m: &CMatrix, dim_a: usize, dim_b: usize) -> Result<()> {
    let d = dim_a * dim_b;
    if dim_a == 0 || dim_b == 0 || m.shape() != (d, d) {
        return Err(Error::Dimension {
            op,
            detail: format!("dims {dim_a}x{dim_b} need a {d}x{d} matrix, got {}x{}", m.rows(), m.cols()),
        });
    }
    Ok(())
}

impl DensityMatrix {
    pub fn new(matrix: CMatrix, dim_a: usize, dim_b: usize) -> Result<Self> {
        let rho = Self::hermitian(matrix, dim_a, dim_b)?;
        rho.check_positive()?;
        Ok(rho)
    }

    /// Like [`DensityMatrix::new`] but additionally demands unit trace.
    pub fn new_normalized(matrix: CMatrix, dim_a: usize, dim_b: usize) -> Result<Self> {
        let rho = Self::new(matrix, dim_a, dim_b)?;
        if !rho.normalized {
            return Err(Error::NotNormalized { trace: rho.trace() });
        }
        Ok(rho)
    }

    fn hermitian(matrix: CMatrix, dim_a: usize, dim_b: usize) -> Result<Self> {
        check_bipartite("DensityMatrix", &matrix, dim_a, dim_b)?;
        let tol = tol_herm(&matrix);
        let deviation = matrix.hermitian_deviation();
        if deviation > tol {
            return Err(Error::NotHermitian { deviation, tol });
        }
        Ok(Self::tagged(matrix, dim_a, dim_b))
    }

    fn tagged(matrix: CMatrix, dim_a: usize, dim_b: usize) -> Self {
        let normalized = (matrix.trace().re - 1.0).abs() <= NORMALIZATION_TOL;
        DensityMatrix { matrix, dim_a, dim_b, normalized }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.dim_a, self.dim_b)
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    /// Copy scaled to unit trace.
    pub fn to_normalized(&self) -> Result<Self> {
        let t = self.trace();
        if t <= 0.0 {
            return Err(Error::NotNormalized { trace: t });
        }
        let mut out = Self::tagged(self.matrix.scale_real(1.0 / t), self.dim_a, self.dim_b);
        out.normalized = true;
        Ok(out)
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        hermitian_eigenvalues_tol(&self.matrix, tol_herm(&self.matrix))
    }

    pub fn check_positive(&self) -> Result<()> {
        let tol = tol_psd(&self.matrix);
        let min = self.eigenvalues()?.first().copied().unwrap_or(0.0);
        if min < -tol {
            return Err(Error::NotPositive { min_eigenvalue: min, tol });
        }
        Ok(())
    }
}

/// Partial transpose of a `(dim_a·dim_b)`-square matrix, composite indices
/// row-major. For `B`, entry `((m,μ),(n,ν))` of the result is entry
/// `((m,ν),(n,μ))` of the input.
pub fn partial_transpose_matrix(m: &CMatrix, dim_a: usize, dim_b: usize, subsystem: Subsystem) -> Result<CMatrix> {
    check_bipartite("partial_transpose", m, dim_a, dim_b)?;
    let db = dim_b;
    Ok(CMatrix::from_fn(m.rows(), m.cols(), |r, c| {
        let (a1, b1) = (r / db, r % db);
        let (a2, b2) = (c / db, c % db);
        match subsystem {
            Subsystem::B => m[(a1 * db + b2, a2 * db + b1)],
            Subsystem::A => m[(a2 * db + b1, a1 * db + b2)],
        }
    }))
}

pub fn partial_transpose(rho: &DensityMatrix, subsystem: Subsystem) -> DensityMatrix {
    let m = partial_transpose_matrix(&rho.matrix, rho.dim_a, rho.dim_b, subsystem)
        .expect("DensityMatrix dimensions are consistent");
    DensityMatrix { matrix: m, dim_a: rho.dim_a, dim_b: rho.dim_b, normalized: rho.normalized }
}

/// Realignment: `dim_a² x dim_b²` result whose entry `((m,n),(μ,ν))` is the
/// input entry `((m,μ),(n,ν))`.
pub fn realign_matrix(m: &CMatrix, dim_a: usize, dim_b: usize) -> Result<CMatrix> {
    check_bipartite("realign", m, dim_a, dim_b)?;
    let (da, db) = (dim_a, dim_b);
    Ok(CMatrix::from_fn(da * da, db * db, |r, c| {
        let (a1, a2) = (r / da, r % da);
        let (b1, b2) = (c / db, c % db);
        m[(a1 * db + b1, a2 * db + b2)]
    }))
}

pub fn realign(rho: &DensityMatrix) -> CMatrix {
    realign_matrix(&rho.matrix, rho.dim_a, rho.dim_b).expect("DensityMatrix dimensions are consistent")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Criterion {
    Ppt,
    Determinant,
    Realignment,
    Phc,
    SymmetrizedDeterminant,
    AntisymmetrizedDeterminant,
    ProductFactorization,
}

impl Criterion {
    pub fn name(self) -> &'static str {
        match self {
            Criterion::Ppt => "ppt",
            Criterion::Determinant => "det",
            Criterion::Realignment => "realign",
            Criterion::Phc => "phc",
            Criterion::SymmetrizedDeterminant => "det_symmetrized_pt",
            Criterion::AntisymmetrizedDeterminant => "det_antisymmetrized_pt",
            Criterion::ProductFactorization => "product_factorization",
        }
    }

    /// Parses the user-selectable criteria (`ppt`, `det`, `realign`, `phc`).
    pub fn parse_selectable(s: &str) -> Option<Criterion> {
        match s {
            "ppt" => Some(Criterion::Ppt),
            "det" => Some(Criterion::Determinant),
            "realign" => Some(Criterion::Realignment),
            "phc" => Some(Criterion::Phc),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Separable,
    Entangled,
    Inconclusive,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Separable => "separable",
            Verdict::Entangled => "entangled",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CriterionVerdict {
    pub criterion: Criterion,
    pub verdict: Verdict,
    pub conclusive: bool,
    pub witness: f64,
    pub note: Option<&'static str>,
}

impl CriterionVerdict {
    pub(crate) fn new(criterion: Criterion, verdict: Verdict, conclusive: bool, witness: f64) -> Self {
        CriterionVerdict { criterion, verdict, conclusive, witness, note: None }
    }

    pub(crate) fn with_note(mut self, note: &'static str) -> Self {
        self.note = Some(note);
        self
    }
}

/// Dimensions at which a positive partial transpose implies separability.
fn ppt_decisive(dims: (usize, usize)) -> bool {
    matches!(dims, (2, 2) | (2, 3) | (3, 2))
}

/// Positive-partial-transpose test; the witness is the smallest eigenvalue
/// of `ρ^{T_B}`.
pub fn ppt_test(rho: &DensityMatrix, tol: f64) -> Result<CriterionVerdict> {
    rho.check_positive()?;
    let pt = partial_transpose(rho, Subsystem::B);
    let witness = pt.eigenvalues()?.first().copied().unwrap_or(0.0);
    Ok(if witness < -tol {
        CriterionVerdict::new(Criterion::Ppt, Verdict::Entangled, true, witness)
    } else if ppt_decisive(rho.dims()) {
        CriterionVerdict::new(Criterion::Ppt, Verdict::Separable, true, witness)
    } else {
        CriterionVerdict::new(Criterion::Ppt, Verdict::Inconclusive, false, witness)
            .with_note("positive partial transpose is not sufficient beyond 2x2 and 2x3")
    })
}

fn real_determinant(m: &CMatrix) -> Result<f64> {
    let d = det(m)?;
    if d.im.abs() >= 1e-10 * d.re.abs().max(1.0) {
        return Err(Error::Numeric(format!("determinant of a Hermitian matrix has imaginary part {:e}", d.im)));
    }
    Ok(d.re)
}

/// Determinant test on `ρ^{T_B}`. Decisive for two qubits; elsewhere a
/// negative determinant still certifies an odd number of negative
/// eigenvalues.
pub fn det_test(rho: &DensityMatrix, tol: f64) -> Result<CriterionVerdict> {
    rho.check_positive()?;
    let pt = partial_transpose(rho, Subsystem::B);
    let witness = real_determinant(pt.matrix())?;
    let two_qubits = rho.dims() == (2, 2);
    Ok(match (two_qubits, witness >= -tol) {
        (true, true) => CriterionVerdict::new(Criterion::Determinant, Verdict::Separable, true, witness),
        (true, false) => CriterionVerdict::new(Criterion::Determinant, Verdict::Entangled, true, witness),
        (false, false) => CriterionVerdict::new(Criterion::Determinant, Verdict::Entangled, true, witness)
            .with_note("negative determinant: odd number of negative partial-transpose eigenvalues"),
        (false, true) => CriterionVerdict::new(Criterion::Determinant, Verdict::Inconclusive, false, witness)
            .with_note("nonnegative determinant allows an even number of negative eigenvalues"),
    })
}

/// Realignment (cross-norm) test; requires unit trace.
pub fn realignment_test(rho: &DensityMatrix, tol: f64) -> Result<CriterionVerdict> {
    if !rho.is_normalized() {
        return Err(Error::NotNormalized { trace: rho.trace() });
    }
    let witness = trace_norm(&realign(rho));
    Ok(if witness > 1.0 + tol {
        CriterionVerdict::new(Criterion::Realignment, Verdict::Entangled, true, witness)
    } else {
        CriterionVerdict::new(Criterion::Realignment, Verdict::Inconclusive, false, witness)
    })
}

/// Factors `m ≈ f1 ⊗ f2`.
#[derive(Debug, Clone, PartialEq)]
pub struct Factorization {
    pub first: CMatrix,
    pub second: CMatrix,
    /// `max |m - f1 ⊗ f2|`.
    pub residual: f64,
    /// `σ₂ / σ₁` of the realigned matrix (zero when it has rank one).
    pub rank_ratio: f64,
}

/// Outcome of [`product_factorization`]; `factors` is absent when the
/// realigned matrix is not numerically rank one.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorizationAttempt {
    pub factors: Option<Factorization>,
    pub rank_ratio: f64,
}

/// Splits `m` into a Kronecker product when its realignment has rank one.
///
/// The realignment of `f1 ⊗ f2` is `vec(f1) vec(f2)ᵀ`, so the top singular
/// triple gives both factors, each carrying `√σ₁`. The global phase is fixed
/// by making `tr f1` (or, if that vanishes, the largest entry of `f1`) real
/// and positive.
pub fn product_factorization(m: &CMatrix, dim_a: usize, dim_b: usize) -> Result<FactorizationAttempt> {
    let r = realign_matrix(m, dim_a, dim_b)?;
    let f = svd(&r);
    let s1 = f.s[0];
    let s2 = f.s.get(1).copied().unwrap_or(0.0);
    let rank_ratio = if s1 > 0.0 { s2 / s1 } else { 0.0 };
    if s2 > FACTORIZATION_RANK_TOL * s1 {
        return Ok(FactorizationAttempt { factors: None, rank_ratio });
    }
    let root = s1.sqrt();
    let mut first = CMatrix::from_fn(dim_a, dim_a, |i, j| f.u[(i * dim_a + j, 0)] * root);
    let mut second = CMatrix::from_fn(dim_b, dim_b, |i, j| f.vdag[(0, i * dim_b + j)] * root);

    let tr = first.trace();
    let reference = if tr.norm() > 1e-12 * first.frobenius_norm() {
        tr
    } else {
        let mut best = Complex::new(0.0, 0.0);
        for z in first.as_slice() {
            if z.norm() > best.norm() {
                best = *z;
            }
        }
        best
    };
    if reference.norm() > 0.0 {
        let phase = reference / reference.norm();
        first = first.scale(phase.conj());
        second = second.scale(phase);
    }
    let residual = m.max_abs_diff(&crate::linalg::kron(&first, &second));
    Ok(FactorizationAttempt { factors: Some(Factorization { first, second, residual, rank_ratio }), rank_ratio })
}
