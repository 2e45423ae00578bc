//! State-specification files.
//!
//! ```json
//! { "kind": "boson_pair", "coefficients": [[0.6, 0.0], [0.8, 0.0]] }
//! { "kind": "density_matrix", "dims": [2, 2], "matrix": [[[0.25, 0.0], ...], ...] }
//! ```

use qsep_core::decomp::{check_antisymmetric, check_symmetric};
use qsep_core::fock::{FormalDensity, Statistics};
use qsep_core::{CMatrix, Complex};
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::json::{matrix_rows, Cnum, Rows};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    BosonPair,
    FermionPair,
    DistinguishablePure,
    DensityMatrix,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::BosonPair => "boson_pair",
            Kind::FermionPair => "fermion_pair",
            Kind::DistinguishablePure => "distinguishable_pure",
            Kind::DensityMatrix => "density_matrix",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateSpec {
    pub kind: Kind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dims: Option<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normalized: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<Vec<Cnum>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficient_matrix: Option<Rows>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Rows>,
}

/// A state file that passed schema and symmetry validation.
#[derive(Debug, Clone, PartialEq)]
pub enum State {
    BosonCoefficients(Vec<f64>),
    BosonMatrix(CMatrix),
    FermionCoefficients(Vec<Complex>),
    FermionMatrix(CMatrix),
    DistinguishableCoefficients(Vec<f64>),
    DistinguishableMatrix(CMatrix),
    /// Shape-checked only; Hermiticity and positivity are checked by the
    /// commands that need them.
    Density { matrix: CMatrix, dims: (usize, usize), normalized: bool },
}

impl StateSpec {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(format!("invalid state file: {e}")))
    }

    pub fn to_json(&self) -> String {
        let mut s = crate::json::to_pretty(self);
        s.push('\n');
        s
    }

    /// A `density_matrix` spec holding `m`.
    pub fn density(m: &CMatrix, dims: (usize, usize)) -> Self {
        StateSpec {
            kind: Kind::DensityMatrix,
            dims: Some([dims.0, dims.1]),
            normalized: None,
            coefficients: None,
            coefficient_matrix: None,
            matrix: Some(matrix_rows(m)),
        }
    }

    pub fn validate(&self) -> Result<State, CliError> {
        let present: Vec<&str> = [
            ("coefficients", self.coefficients.is_some()),
            ("coefficient_matrix", self.coefficient_matrix.is_some()),
            ("matrix", self.matrix.is_some()),
        ]
        .iter()
        .filter(|(_, p)| *p)
        .map(|(n, _)| *n)
        .collect();
        if present.len() > 1 {
            return Err(CliError::parse(
                present[1],
                format!("conflicts with {}; exactly one data field is allowed", present[0]),
            ));
        }

        if self.kind == Kind::DensityMatrix {
            return self.validate_density(present.first().copied());
        }
        for (field, set) in [("matrix", self.matrix.is_some()), ("dims", self.dims.is_some())] {
            if set {
                return Err(CliError::parse(field, format!("not valid for kind {}", self.kind.name())));
            }
        }
        if self.normalized.is_some() {
            return Err(CliError::parse("normalized", format!("not valid for kind {}", self.kind.name())));
        }

        if let Some(coeffs) = &self.coefficients {
            return Ok(match self.kind {
                Kind::BosonPair => State::BosonCoefficients(real_coefficients(coeffs, self.kind)?),
                Kind::DistinguishablePure => State::DistinguishableCoefficients(real_coefficients(coeffs, self.kind)?),
                Kind::FermionPair => State::FermionCoefficients(coeffs.iter().map(|c| c.to_complex()).collect()),
                Kind::DensityMatrix => unreachable!(),
            });
        }
        let Some(rows) = &self.coefficient_matrix else {
            return Err(CliError::parse(
                "coefficients",
                format!("missing; kind {} needs coefficients or coefficient_matrix", self.kind.name()),
            ));
        };
        let field = "coefficient_matrix";
        let m = to_matrix(field, rows)?;
        match self.kind {
            Kind::BosonPair => {
                require_square(field, &m)?;
                check_symmetric(&m).map_err(|e| CliError::from_core(field, e))?;
                Ok(State::BosonMatrix(m))
            }
            Kind::FermionPair => {
                require_square(field, &m)?;
                check_antisymmetric(&m).map_err(|e| CliError::from_core(field, e))?;
                Ok(State::FermionMatrix(m))
            }
            Kind::DistinguishablePure => Ok(State::DistinguishableMatrix(m)),
            Kind::DensityMatrix => unreachable!(),
        }
    }

    fn validate_density(&self, data: Option<&str>) -> Result<State, CliError> {
        match data {
            Some("matrix") => {}
            Some(other) => return Err(CliError::parse(other, "not valid for kind density_matrix; use matrix")),
            None => return Err(CliError::parse("matrix", "missing; kind density_matrix needs matrix")),
        }
        let Some([da, db]) = self.dims else {
            return Err(CliError::parse("dims", "missing; kind density_matrix needs dims"));
        };
        if da == 0 || db == 0 {
            return Err(CliError::parse("dims", "entries must be at least 1"));
        }
        let m = to_matrix("matrix", self.matrix.as_ref().expect("checked above"))?;
        let n = da * db;
        if m.shape() != (n, n) {
            return Err(CliError::parse(
                "matrix",
                format!("expected {n}x{n} for dims [{da}, {db}], got {}x{}", m.rows(), m.cols()),
            ));
        }
        Ok(State::Density { matrix: m, dims: (da, db), normalized: self.normalized.unwrap_or(false) })
    }
}

fn real_coefficients(coeffs: &[Cnum], kind: Kind) -> Result<Vec<f64>, CliError> {
    coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| {
            if c.1 != 0.0 {
                Err(CliError::invariant(
                    &format!("coefficients[{k}]"),
                    format!("{} coefficients must be real, imaginary part is {:e}", kind.name(), c.1),
                ))
            } else {
                Ok(c.0)
            }
        })
        .collect()
}

fn to_matrix(field: &str, rows: &Rows) -> Result<CMatrix, CliError> {
    let cols = rows.first().map_or(0, Vec::len);
    if cols == 0 {
        return Err(CliError::parse(field, "must be a nonempty array of nonempty rows"));
    }
    if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != cols) {
        return Err(CliError::parse(field, format!("row {i} has {} entries, expected {cols}", r.len())));
    }
    let data = rows.iter().flatten().map(|c| c.to_complex()).collect();
    CMatrix::from_vec(rows.len(), cols, data).map_err(|e| CliError::from_core(field, e))
}

fn require_square(field: &str, m: &CMatrix) -> Result<(), CliError> {
    if m.is_square() {
        Ok(())
    } else {
        Err(CliError::parse(field, format!("must be square, got {}x{}", m.rows(), m.cols())))
    }
}

impl State {
    /// The two-particle density operator as a term list, for term-level
    /// transforms. `None` for density matrices.
    pub fn formal_density(&self) -> Result<Option<FormalDensity>, CliError> {
        let diagonal = |stats, amps: Vec<Complex>| {
            let pairs: Vec<_> = amps.iter().enumerate().map(|(i, &a)| (a, (i, i))).collect();
            FormalDensity::pure(stats, amps.len(), &pairs)
        };
        let dense = |stats, m: &CMatrix| {
            let modes = m.rows().max(m.cols());
            let pairs: Vec<_> =
                (0..m.rows()).flat_map(|i| (0..m.cols()).map(move |j| (i, j))).map(|(i, j)| (m[(i, j)], (i, j))).collect();
            FormalDensity::pure(stats, modes, &pairs)
        };
        let real = |v: &[f64]| v.iter().map(|&x| Complex::new(x, 0.0)).collect::<Vec<_>>();
        let fd = match self {
            State::BosonCoefficients(d) => diagonal(Statistics::Boson, real(d)),
            State::FermionCoefficients(z) => diagonal(Statistics::Fermion, z.clone()),
            State::DistinguishableCoefficients(w) => diagonal(Statistics::Distinguishable, real(w)),
            State::BosonMatrix(m) => dense(Statistics::Boson, m),
            State::FermionMatrix(m) => dense(Statistics::Fermion, m),
            State::DistinguishableMatrix(m) => dense(Statistics::Distinguishable, m),
            State::Density { .. } => return Ok(None),
        };
        fd.map(Some).map_err(|e| CliError::from_core("coefficients", e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn load(text: &str) -> Result<State, CliError> {
        StateSpec::parse(text)?.validate()
    }

    #[test]
    fn boson_coefficients() {
        let s = load(r#"{"kind":"boson_pair","coefficients":[[0.6,0],[0.8,0]]}"#).unwrap();
        assert_eq!(s, State::BosonCoefficients(vec![0.6, 0.8]));
    }

    #[test]
    fn schema_errors_name_the_field() {
        let cases = [
            (r#"{"coefficients":[[1,0]]}"#, "kind"),
            (r#"{"kind":"boson_pair","coefficients":[[1,0]],"extra":1}"#, "extra"),
            (r#"{"kind":"boson_pair"}"#, "coefficients"),
            (r#"{"kind":"density_matrix","matrix":[[[1,0]]]}"#, "dims"),
            (r#"{"kind":"density_matrix","dims":[2,2],"matrix":[[[1,0]]]}"#, "matrix"),
            (r#"{"kind":"boson_pair","coefficients":[[1,0]],"matrix":[[[1,0]]]}"#, "matrix"),
            (r#"{"kind":"fermion_pair","coefficient_matrix":[[[0,0],[1,0]],[[-1,0]]]}"#, "coefficient_matrix"),
            (r#"{"kind":"boson_pair","coefficients":[[1,0]],"dims":[1,1]}"#, "dims"),
            (r#"{"kind":"boson_pair","coefficients":[[1]]}"#, "invalid"),
        ];
        for (text, field) in cases {
            let e = load(text).unwrap_err();
            assert_eq!(e.exit_code(), 2, "{text}: {e}");
            assert!(e.message().contains(field), "{text}: {e}");
        }
    }

    #[test]
    fn invariant_errors() {
        let cases = [
            r#"{"kind":"fermion_pair","coefficient_matrix":[[[0,0],[1,0]],[[1,0],[0,0]]]}"#,
            r#"{"kind":"boson_pair","coefficient_matrix":[[[0,0],[1,0]],[[-1,0],[0,0]]]}"#,
            r#"{"kind":"boson_pair","coefficients":[[1,0.5]]}"#,
        ];
        for text in cases {
            assert_eq!(load(text).unwrap_err().exit_code(), 3, "{text}");
        }
    }

    #[test]
    fn round_trip_is_value_identical() {
        let text = r#"{"kind":"density_matrix","dims":[1,2],"normalized":true,
                       "matrix":[[[0.1,0],[0.2,-0.3]],[[0.2,0.3],[0.9,0]]]}"#;
        let spec = StateSpec::parse(text).unwrap();
        assert_eq!(StateSpec::parse(&spec.to_json()).unwrap(), spec);
    }
}
