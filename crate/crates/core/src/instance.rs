//! JSON instance files.
//!
//! ```json
//! {
//!   "n": 2,
//!   "field": "rational",
//!   "first_col": ["2", "1"],
//!   "first_row": ["2", "1"],
//!   "rhs": ["1", "0"]
//! }
//! ```
//!
//! Entries are JSON numbers or strings holding integers, decimals or `p/q`
//! fractions. Rational instances are written with string entries, float
//! instances with numbers.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::toeplitz::ToeplitzMatrix;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldKind {
    Rational,
    Float,
}

impl FieldKind {
    pub fn of<F: Field>() -> Self {
        if F::EXACT {
            FieldKind::Rational
        } else {
            FieldKind::Float
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FieldKind::Rational => "rational",
            FieldKind::Float => "float",
        }
    }
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FieldKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rational" => Ok(FieldKind::Rational),
            "float" => Ok(FieldKind::Float),
            _ => Err(Error::Instance(format!("unknown field {s:?}"))),
        }
    }
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Number(serde_json::Number),
    Text(String),
}

impl Scalar {
    pub fn parse<F: Field>(&self) -> Result<F> {
        match self {
            Scalar::Number(x) => F::parse_literal(&x.to_string()),
            Scalar::Text(s) => F::parse_literal(s),
        }
    }

    pub fn from_field<F: Field>(x: &F) -> Self {
        if F::EXACT {
            return Scalar::Text(x.to_string());
        }
        serde_json::Number::from_f64(x.to_f64())
            .map(Scalar::Number)
            .unwrap_or_else(|| Scalar::Text(x.to_string()))
    }
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub n: usize,
    pub field: FieldKind,
    pub first_col: Vec<Scalar>,
    pub first_row: Vec<Scalar>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rhs: Option<Vec<Scalar>>,
}

impl InstanceFile {
    /// Parses and validates against the declared field.
    pub fn from_json(text: &str) -> Result<Self> {
        let inst: InstanceFile =
            serde_json::from_str(text).map_err(|e| Error::Instance(e.to_string()))?;
        inst.validate()?;
        Ok(inst)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("instance serializes");
        s.push('\n');
        s
    }

    pub fn from_matrix<F: Field>(t: &ToeplitzMatrix<F>, rhs: Option<&[F]>) -> Self {
        let conv = |v: &[F]| v.iter().map(Scalar::from_field).collect();
        InstanceFile {
            n: t.n(),
            field: FieldKind::of::<F>(),
            first_col: conv(t.first_col()),
            first_row: conv(t.first_row()),
            rhs: rhs.map(conv),
        }
    }

    /// Checks sizes, literals and the shared `t₀` in the declared field.
    pub fn validate(&self) -> Result<()> {
        match self.field {
            FieldKind::Rational => self.check::<crate::field::Rational>(),
            FieldKind::Float => self.check::<crate::field::Real>(),
        }
    }

    fn check<F: Field>(&self) -> Result<()> {
        self.matrix::<F>()?;
        self.rhs_vector::<F>()?;
        Ok(())
    }

    fn entries<F: Field>(&self, name: &str, v: &[Scalar]) -> Result<Vec<F>> {
        if v.len() != self.n {
            return Err(Error::Instance(format!(
                "{name} has {} entries but n = {}",
                v.len(),
                self.n
            )));
        }
        v.iter()
            .enumerate()
            .map(|(i, x)| {
                x.parse()
                    .map_err(|e| Error::Instance(format!("{name}[{i}]: {e}")))
            })
            .collect()
    }

    pub fn matrix<F: Field>(&self) -> Result<ToeplitzMatrix<F>> {
        if self.n == 0 {
            return Err(Error::Instance("n must be at least 1".into()));
        }
        let col = self.entries("first_col", &self.first_col)?;
        let row = self.entries("first_row", &self.first_row)?;
        if col[0] != row[0] {
            return Err(Error::Instance(
                "first_col[0] and first_row[0] differ".into(),
            ));
        }
        ToeplitzMatrix::new(col, row)
    }

    pub fn rhs_vector<F: Field>(&self) -> Result<Option<Vec<F>>> {
        self.rhs
            .as_deref()
            .map(|v| self.entries("rhs", v))
            .transpose()
    }
}
