use alloc::string::String;
use alloc::vec::Vec;

use super::{Criterion, CriterionVerdict, Verdict};
use crate::decomp::{SchmidtForm, SlaterForm, TakagiForm};
use crate::linalg::{CMatrix, Complex};

/// What a report was computed from.
#[derive(Debug, Clone, PartialEq)]
pub enum InputDescriptor {
    BosonPair { d: Vec<f64> },
    FermionPair { z: Vec<Complex> },
    Distinguishable { omega: Vec<f64> },
    DensityMatrix { dim_a: usize, dim_b: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub enum Decomposition {
    Schmidt(SchmidtForm),
    Takagi(TakagiForm),
    Slater(SlaterForm),
}

#[derive(Debug, Clone, PartialEq)]
pub struct NamedMatrix {
    pub name: &'static str,
    pub matrix: CMatrix,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NamedScalar {
    pub name: &'static str,
    pub value: Complex,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NamedSpectrum {
    pub name: &'static str,
    pub values: Vec<f64>,
}

/// A pass/fail consistency check with its numeric residual.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisReport {
    pub input: InputDescriptor,
    pub verdicts: Vec<CriterionVerdict>,
    pub decomposition: Option<Decomposition>,
    pub matrices: Vec<NamedMatrix>,
    /// Determinants of entries in `matrices`, keyed by the same names.
    pub determinants: Vec<NamedScalar>,
    /// Traces and closed-form reference values.
    pub scalars: Vec<NamedScalar>,
    pub eigenvalues: Vec<NamedSpectrum>,
    pub checks: Vec<Check>,
    /// Overall reading; absent when the analysis deliberately draws none.
    pub conclusion: Option<Verdict>,
    pub notes: Vec<String>,
}

impl AnalysisReport {
    pub(crate) fn new(input: InputDescriptor) -> Self {
        AnalysisReport {
            input,
            verdicts: Vec::new(),
            decomposition: None,
            matrices: Vec::new(),
            determinants: Vec::new(),
            scalars: Vec::new(),
            eigenvalues: Vec::new(),
            checks: Vec::new(),
            conclusion: None,
            notes: Vec::new(),
        }
    }

    pub fn verdict(&self, criterion: Criterion) -> Option<&CriterionVerdict> {
        self.verdicts.iter().find(|v| v.criterion == criterion)
    }

    pub fn matrix(&self, name: &str) -> Option<&CMatrix> {
        self.matrices.iter().find(|m| m.name == name).map(|m| &m.matrix)
    }

    pub fn determinant(&self, name: &str) -> Option<Complex> {
        self.determinants.iter().find(|d| d.name == name).map(|d| d.value)
    }

    pub fn scalar(&self, name: &str) -> Option<Complex> {
        self.scalars.iter().find(|d| d.name == name).map(|d| d.value)
    }

    pub fn spectrum(&self, name: &str) -> Option<&[f64]> {
        self.eigenvalues.iter().find(|s| s.name == name).map(|s| s.values.as_slice())
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub(crate) fn push_matrix(&mut self, name: &'static str, matrix: CMatrix) {
        self.matrices.push(NamedMatrix { name, matrix });
    }

    pub(crate) fn push_scalar(&mut self, name: &'static str, value: Complex) {
        self.scalars.push(NamedScalar { name, value });
    }

    pub(crate) fn push_check(&mut self, name: &'static str, passed: bool, residual: f64) {
        self.checks.push(Check { name, passed, residual });
    }
}
