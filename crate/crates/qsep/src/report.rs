//! Report documents: the JSON schema and the fixed-width text rendering.

use std::fmt::Write as _;

use qsep_core::criteria::{AnalysisReport, CriterionVerdict, Decomposition};
use qsep_core::CMatrix;
use serde::Serialize;

use crate::json::{matrix_rows, reals, Cnum, NamedMap, Real, Rows};
use crate::spec::StateSpec;

pub const SCHEMA_VERSION: u32 = 1;

/// Which optional sections a document carries.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DocOptions {
    pub emit_matrices: bool,
    pub quiet: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerdictEntry {
    pub criterion: &'static str,
    pub verdict: &'static str,
    pub conclusive: bool,
    pub witness: Real,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<&'static str>,
}

impl From<&CriterionVerdict> for VerdictEntry {
    fn from(v: &CriterionVerdict) -> Self {
        VerdictEntry {
            criterion: v.criterion.name(),
            verdict: v.verdict.name(),
            conclusive: v.conclusive,
            witness: Real(v.witness),
            note: v.note,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckEntry {
    pub passed: bool,
    pub residual: Real,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Coefficients {
    Real(Vec<Real>),
    Complex(Vec<Cnum>),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecompositionEntry {
    pub method: &'static str,
    pub rank: usize,
    /// Descending by magnitude.
    pub coefficients: Coefficients,
    /// Largest entrywise error of the reconstructed coefficient matrix.
    pub reconstruction_residual: Real,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unitary: Option<Rows>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub right_unitary: Option<Rows>,
}

impl DecompositionEntry {
    pub fn new(d: &Decomposition, input: &CMatrix, emit_matrices: bool) -> Self {
        let emit = |m: &CMatrix| emit_matrices.then(|| matrix_rows(m));
        match d {
            Decomposition::Schmidt(f) => DecompositionEntry {
                method: "schmidt",
                rank: f.rank,
                coefficients: Coefficients::Real(reals(&f.coefficients)),
                reconstruction_residual: Real(f.reconstruct().max_abs_diff(input)),
                unitary: emit(&f.left_basis),
                right_unitary: emit(&f.right_basis),
            },
            Decomposition::Takagi(f) => DecompositionEntry {
                method: "takagi",
                rank: f.rank(),
                coefficients: Coefficients::Real(reals(&f.coefficients)),
                reconstruction_residual: Real(f.reconstruct().max_abs_diff(input)),
                unitary: emit(&f.unitary),
                right_unitary: None,
            },
            Decomposition::Slater(f) => DecompositionEntry {
                method: "slater",
                rank: f.rank,
                coefficients: Coefficients::Complex(f.coefficients.iter().map(|&z| z.into()).collect()),
                reconstruction_residual: Real(f.reconstruct().max_abs_diff(input)),
                unitary: emit(&f.unitary),
                right_unitary: None,
            },
        }
    }
}

/// The machine-readable report for one input file.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportDocument {
    pub schema: u32,
    pub input: StateSpec,
    pub verdicts: Vec<VerdictEntry>,
    pub conclusion: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<DecompositionEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub determinants: Option<NamedMap<Cnum>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scalars: Option<NamedMap<Cnum>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eigenvalues: Option<NamedMap<Vec<Real>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checks: Option<NamedMap<CheckEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrices: Option<NamedMap<Rows>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub notes: Option<Vec<String>>,
}

impl ReportDocument {
    pub fn empty(input: StateSpec) -> Self {
        ReportDocument {
            schema: SCHEMA_VERSION,
            input,
            verdicts: Vec::new(),
            conclusion: None,
            decomposition: None,
            determinants: None,
            scalars: None,
            eigenvalues: None,
            checks: None,
            matrices: None,
            notes: None,
        }
    }

    /// `coefficient_matrix` is the decomposed input, when the report carries
    /// a decomposition.
    pub fn from_analysis(
        input: StateSpec,
        report: &AnalysisReport,
        coefficient_matrix: Option<&CMatrix>,
        opts: DocOptions,
    ) -> Self {
        let mut doc = ReportDocument::empty(input);
        doc.verdicts = report.verdicts.iter().map(VerdictEntry::from).collect();
        doc.conclusion = report.conclusion.map(|v| v.name());
        if opts.quiet {
            return doc;
        }
        if let (Some(d), Some(m)) = (&report.decomposition, coefficient_matrix) {
            doc.decomposition = Some(DecompositionEntry::new(d, m, opts.emit_matrices));
        }
        doc.determinants =
            Some(report.determinants.iter().map(|d| (d.name.to_string(), Cnum::from(d.value))).collect());
        doc.scalars = Some(report.scalars.iter().map(|d| (d.name.to_string(), Cnum::from(d.value))).collect());
        doc.eigenvalues = Some(report.eigenvalues.iter().map(|s| (s.name.to_string(), reals(&s.values))).collect());
        doc.checks = Some(
            report
                .checks
                .iter()
                .map(|c| (c.name.to_string(), CheckEntry { passed: c.passed, residual: Real(c.residual) }))
                .collect(),
        );
        if opts.emit_matrices {
            doc.matrices = Some(report.matrices.iter().map(|m| (m.name.to_string(), matrix_rows(&m.matrix))).collect());
        }
        doc.notes = Some(report.notes.clone());
        doc
    }

    pub fn to_json(&self) -> String {
        crate::json::to_pretty(self)
    }

    /// Fixed-width table of verdicts followed by the recorded quantities.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "input: {}", self.input.kind.name());
        if !self.verdicts.is_empty() {
            let _ = writeln!(out, "{:<28}{:<14}{:<12}witness", "criterion", "verdict", "conclusive");
            for v in &self.verdicts {
                let conclusive = if v.conclusive { "yes" } else { "no" };
                let _ = writeln!(out, "{:<28}{:<14}{:<12}{}", v.criterion, v.verdict, conclusive, num(v.witness.0));
            }
        }
        if let Some(c) = self.conclusion {
            let _ = writeln!(out, "conclusion: {c}");
        }
        if let Some(d) = &self.decomposition {
            let _ = writeln!(out, "decomposition: {} (rank {})", d.method, d.rank);
            match &d.coefficients {
                Coefficients::Real(v) => {
                    for x in v {
                        let _ = writeln!(out, "  {}", num(x.0));
                    }
                }
                Coefficients::Complex(v) => {
                    for z in v {
                        let _ = writeln!(out, "  {}  {}", num(z.0), num(z.1));
                    }
                }
            }
            let _ = writeln!(out, "  reconstruction residual {}", num(d.reconstruction_residual.0));
        }
        for (title, map) in [("determinants", &self.determinants), ("scalars", &self.scalars)] {
            if let Some(map) = map.as_ref().filter(|m| !m.is_empty()) {
                let _ = writeln!(out, "{title}:");
                for (name, z) in &map.0 {
                    let _ = writeln!(out, "  {name:<26}{:<26}{}", num(z.0), num(z.1));
                }
            }
        }
        if let Some(map) = self.eigenvalues.as_ref().filter(|m| !m.is_empty()) {
            let _ = writeln!(out, "eigenvalues:");
            for (name, values) in &map.0 {
                let list: Vec<String> = values.iter().map(|x| num(x.0)).collect();
                let _ = writeln!(out, "  {name:<26}{}", list.join(" "));
            }
        }
        if let Some(map) = self.checks.as_ref().filter(|m| !m.is_empty()) {
            let _ = writeln!(out, "checks:");
            for (name, c) in &map.0 {
                let status = if c.passed { "pass" } else { "FAIL" };
                let _ = writeln!(out, "  {name:<34}{status:<6}{}", num(c.residual.0));
            }
        }
        if let Some(notes) = self.notes.as_ref().filter(|n| !n.is_empty()) {
            let _ = writeln!(out, "notes:");
            for n in notes {
                let _ = writeln!(out, "  - {n}");
            }
        }
        out
    }
}

fn num(x: f64) -> String {
    serde_json::to_string(&Real(x)).expect("reals always serialize")
}
