//! The work behind each subcommand, one input file at a time.

use std::path::Path;

use qsep_core::criteria::{
    analyze_density, boson_pipeline_with, distinguishable_pipeline_with, fermion_pipeline_with,
    partial_transpose_matrix, realign_matrix, AnalysisOptions, AnalysisReport, Decomposition, DensityMatrix,
    Subsystem,
};
use qsep_core::decomp::{schmidt_decompose, slater_decompose, takagi_decompose};
use qsep_core::fock::{assemble_matrix, exchange_col_modes, partial_transpose_terms, phc_terms, realign_terms};
use qsep_core::CMatrix;

use crate::error::CliError;
use crate::report::{DecompositionEntry, DocOptions, ReportDocument};
use crate::spec::{State, StateSpec};

pub fn load(path: &Path) -> Result<(StateSpec, State), CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
    let spec = StateSpec::parse(&text)?;
    let state = spec.validate()?;
    Ok((spec, state))
}

fn core(field: &'static str) -> impl Fn(qsep_core::Error) -> CliError {
    move |e| CliError::from_core(field, e)
}

/// Runs the pipeline matching the state kind. Coefficient matrices are first
/// brought to canonical form and analysed through their nonzero canonical
/// coefficients.
pub fn analyze_state(state: &State, opts: &AnalysisOptions) -> Result<AnalysisReport, CliError> {
    let field = "coefficient_matrix";
    match state {
        State::BosonCoefficients(d) => boson_pipeline_with(d, opts).map_err(core("coefficients")),
        State::FermionCoefficients(z) => fermion_pipeline_with(z, opts).map_err(core("coefficients")),
        State::DistinguishableCoefficients(w) => distinguishable_pipeline_with(w, opts).map_err(core("coefficients")),
        State::BosonMatrix(m) => {
            let f = takagi_decompose(m).map_err(core(field))?;
            let mut report = boson_pipeline_with(&f.coefficients[..f.rank()], opts).map_err(core(field))?;
            report.notes.push("analysed in the Takagi basis of the coefficient matrix".into());
            report.decomposition = Some(Decomposition::Takagi(f));
            Ok(report)
        }
        State::FermionMatrix(m) => {
            let f = slater_decompose(m).map_err(core(field))?;
            let mut report = fermion_pipeline_with(&f.coefficients[..f.rank], opts).map_err(core(field))?;
            report.notes.push("analysed in the Slater basis of the coefficient matrix".into());
            report.decomposition = Some(Decomposition::Slater(f));
            Ok(report)
        }
        State::DistinguishableMatrix(m) => {
            let f = schmidt_decompose(m);
            let mut report = distinguishable_pipeline_with(&f.coefficients[..f.rank], opts).map_err(core(field))?;
            report.notes.push("analysed in the Schmidt basis of the coefficient matrix".into());
            report.decomposition = Some(Decomposition::Schmidt(f));
            Ok(report)
        }
        State::Density { matrix, dims, normalized } => {
            let rho = if *normalized {
                DensityMatrix::new_normalized(matrix.clone(), dims.0, dims.1)
            } else {
                DensityMatrix::new(matrix.clone(), dims.0, dims.1)
            }
            .map_err(core("matrix"))?;
            analyze_density(&rho, opts).map_err(core("matrix"))
        }
    }
}

fn coefficient_matrix(state: &State) -> Option<&CMatrix> {
    match state {
        State::BosonMatrix(m) | State::FermionMatrix(m) | State::DistinguishableMatrix(m) => Some(m),
        _ => None,
    }
}

pub fn analyze_file(path: &Path, opts: &AnalysisOptions, doc: DocOptions) -> Result<ReportDocument, CliError> {
    let (spec, state) = load(path)?;
    let report = analyze_state(&state, opts)?;
    Ok(ReportDocument::from_analysis(spec, &report, coefficient_matrix(&state), doc))
}

pub fn decompose_state(state: &State) -> Result<Decomposition, CliError> {
    let field = "coefficient_matrix";
    match state {
        State::BosonMatrix(m) => takagi_decompose(m).map(Decomposition::Takagi).map_err(core(field)),
        State::FermionMatrix(m) => slater_decompose(m).map(Decomposition::Slater).map_err(core(field)),
        State::DistinguishableMatrix(m) => Ok(Decomposition::Schmidt(schmidt_decompose(m))),
        _ => Err(CliError::parse(field, "missing; decompose needs a coefficient_matrix input")),
    }
}

pub fn decompose_file(path: &Path, doc: DocOptions) -> Result<ReportDocument, CliError> {
    let (spec, state) = load(path)?;
    let d = decompose_state(&state)?;
    let m = coefficient_matrix(&state).expect("decompose_state accepted the state");
    let mut out = ReportDocument::empty(spec);
    out.decomposition = Some(DecompositionEntry::new(&d, m, doc.emit_matrices));
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Transform {
    PartialTranspose,
    PartialHermitianConjugate,
    Symmetrize,
    Realign,
}

impl Transform {
    pub fn name(self) -> &'static str {
        match self {
            Transform::PartialTranspose => "pt",
            Transform::PartialHermitianConjugate => "phc",
            Transform::Symmetrize => "symmetrize",
            Transform::Realign => "realign",
        }
    }

    /// Parses `pt`, `phc`, `symmetrize`, `realign`, or a comma-separated
    /// chain applied left to right.
    pub fn parse_chain(s: &str) -> Result<Vec<Transform>, CliError> {
        s.split(',')
            .map(|op| match op.trim() {
                "pt" => Ok(Transform::PartialTranspose),
                "phc" => Ok(Transform::PartialHermitianConjugate),
                "symmetrize" => Ok(Transform::Symmetrize),
                "realign" => Ok(Transform::Realign),
                other => Err(CliError::parse(
                    "operation",
                    format!("unknown operation `{other}`; expected pt, phc, symmetrize or realign"),
                )),
            })
            .collect()
    }
}

/// Applies the transforms and returns the resulting matrix with its
/// subsystem dimensions. Coefficient inputs are transformed term by term on
/// the density operator; density matrices support only `pt` and `realign`.
pub fn transform_state(state: &State, ops: &[Transform]) -> Result<(CMatrix, (usize, usize)), CliError> {
    if let Some(mut fd) = state.formal_density()? {
        for &op in ops {
            fd = match op {
                Transform::PartialTranspose => partial_transpose_terms(&fd),
                Transform::PartialHermitianConjugate => phc_terms(&fd),
                Transform::Realign => realign_terms(&fd),
                Transform::Symmetrize => exchange_col_modes(&fd).map_err(core("symmetrize"))?,
            };
        }
        let m = assemble_matrix(&fd).map_err(core("coefficients"))?;
        return Ok((m, (fd.mode_count, fd.mode_count)));
    }
    let State::Density { matrix, dims, .. } = state else { unreachable!("only density matrices lack terms") };
    let (mut m, (da, db)) = (matrix.clone(), *dims);
    for &op in ops {
        m = match op {
            Transform::PartialTranspose => partial_transpose_matrix(&m, da, db, Subsystem::B).map_err(core("matrix"))?,
            Transform::Realign if da == db => realign_matrix(&m, da, db).map_err(core("matrix"))?,
            Transform::Realign => {
                return Err(CliError::parse("realign", "density_matrix input needs dim_a == dim_b for a square result"))
            }
            Transform::PartialHermitianConjugate | Transform::Symmetrize => {
                return Err(CliError::invariant(
                    op.name(),
                    "needs a coefficient (term) input; a bare density_matrix carries no term decomposition",
                ))
            }
        };
    }
    Ok((m, (da, db)))
}

pub fn transform_file(path: &Path, ops: &[Transform]) -> Result<StateSpec, CliError> {
    let (_, state) = load(path)?;
    let (m, dims) = transform_state(&state, ops)?;
    Ok(StateSpec::density(&m, dims))
}
