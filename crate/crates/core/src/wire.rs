//! JSON forms of rings, matrices, echelon results and application inputs.

use std::str::FromStr;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::endo::default_samples;
use crate::error::{Error, Result};
use crate::field::{AlphaKind, BaseField, DeltaKind, ExtensionSpec, Field, FieldKind};
use crate::matrix::{DegDet, EchelonResult, OreMatrix, RowOp};
use crate::ode::FieldMatrix;
use crate::ore::OreRing;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FieldJson {
    PrimeField {
        p: u64,
    },
    ExtensionField {
        p: u64,
        m: usize,
        /// Lowest degree first, length m + 1.
        modulus: Vec<i64>,
        #[serde(default = "default_generator")]
        generator: String,
    },
    Rationals,
    RationalFunction {
        base: Box<FieldJson>,
        variable: String,
    },
}

fn default_generator() -> String {
    "w".into()
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlphaJson {
    #[default]
    Identity,
    Frobenius,
    /// q as an exact rational, e.g. "2" or "-1/3".
    QShift(String),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeltaJson {
    #[default]
    Zero,
    FormalDerivative,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingJson {
    pub field: FieldJson,
    #[serde(default)]
    pub alpha: AlphaJson,
    #[serde(default)]
    pub delta: DeltaJson,
    #[serde(default = "default_indeterminate")]
    pub indeterminate: String,
}

fn default_indeterminate() -> String {
    "x".into()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub ring: RingJson,
    pub n: usize,
    pub entries: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case", deny_unknown_fields)]
pub enum RowOpJson {
    Swap { i: usize, j: usize },
    AddLeftMultiple { target: usize, source: usize, q: String },
    ScaleUnit { row: usize, unit: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PivotJson {
    pub row: usize,
    pub column: usize,
    pub degree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EchelonJson {
    pub echelon: Vec<Vec<String>>,
    pub pivots: Vec<PivotJson>,
    pub ops_log: Vec<RowOpJson>,
    pub degdet: DegDet,
    pub free_rank_s: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TModuleJson {
    pub phi: MatrixJson,
    #[serde(default)]
    pub samples: Option<Vec<Vec<i64>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TwistJson {
    Derivative,
    QShift(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemJson {
    pub field: FieldJson,
    pub twist: TwistJson,
    pub n: usize,
    /// A_0, …, A_d as matrices of field-element strings.
    pub coefficients: Vec<Vec<Vec<String>>>,
}

/// Deserializes `T`, reporting malformed JSON as invalid input.
pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("JSON: {}", e)))
}

fn parse_q(text: &str) -> Result<BigRational> {
    BigRational::from_str(text.trim())
        .map_err(|_| Error::InvalidDescriptor(format!("q must be an exact rational, got '{}'", text)))
}

impl FieldJson {
    fn base(&self) -> Result<BaseField> {
        match self {
            FieldJson::PrimeField { p } => BaseField::prime(*p),
            FieldJson::ExtensionField { p, m, modulus, generator } => {
                let spec = ExtensionSpec::new(*p, modulus, generator)?;
                if spec.degree() != *m {
                    return Err(Error::InvalidDescriptor(format!(
                        "modulus has degree {}, expected m = {}",
                        spec.degree(),
                        m
                    )));
                }
                Ok(BaseField::Extension(spec))
            }
            FieldJson::Rationals => Ok(BaseField::Rationals),
            FieldJson::RationalFunction { .. } => Err(Error::InvalidDescriptor(
                "rational function fields cannot be nested".into(),
            )),
        }
    }

    pub fn kind(&self) -> Result<FieldKind> {
        match self {
            FieldJson::RationalFunction { base, variable } => Ok(FieldKind::RationalFunction {
                base: base.base()?,
                variable: variable.clone(),
            }),
            other => Ok(FieldKind::Base(other.base()?)),
        }
    }

    pub fn from_kind(kind: &FieldKind) -> Self {
        fn base(k: &BaseField) -> FieldJson {
            match k {
                BaseField::Prime(p) => FieldJson::PrimeField { p: *p },
                BaseField::Extension(e) => FieldJson::ExtensionField {
                    p: e.p(),
                    m: e.degree(),
                    modulus: e.modulus().iter().map(|&c| c as i64).collect(),
                    generator: e.generator().to_string(),
                },
                BaseField::Rationals => FieldJson::Rationals,
            }
        }
        match kind {
            FieldKind::Base(k) => base(k),
            FieldKind::RationalFunction { base: k, variable } => FieldJson::RationalFunction {
                base: Box::new(base(k)),
                variable: variable.clone(),
            },
        }
    }
}

impl RingJson {
    pub fn to_ring(&self) -> Result<OreRing> {
        let alpha = match &self.alpha {
            AlphaJson::Identity => AlphaKind::Identity,
            AlphaJson::Frobenius => AlphaKind::Frobenius,
            AlphaJson::QShift(q) => AlphaKind::QShift(parse_q(q)?),
        };
        let delta = match self.delta {
            DeltaJson::Zero => DeltaKind::Zero,
            DeltaJson::FormalDerivative => DeltaKind::FormalDerivative,
        };
        let field = Field::new(self.field.kind()?, alpha, delta)?;
        OreRing::new(field, &self.indeterminate)
    }

    /// `None` for twists with no wire form (the broken test derivation).
    pub fn from_ring(ring: &OreRing) -> Option<Self> {
        let field = ring.field();
        let alpha = match field.alpha() {
            AlphaKind::Identity => AlphaJson::Identity,
            AlphaKind::Frobenius => AlphaJson::Frobenius,
            AlphaKind::QShift(q) => AlphaJson::QShift(q.to_string()),
        };
        let delta = match field.delta() {
            DeltaKind::Zero => DeltaJson::Zero,
            DeltaKind::FormalDerivative => DeltaJson::FormalDerivative,
            DeltaKind::BrokenDerivative => return None,
        };
        Some(RingJson {
            field: FieldJson::from_kind(field.kind()),
            alpha,
            delta,
            indeterminate: ring.indeterminate().to_string(),
        })
    }
}

/// Checks that `rows` is n×n.
fn check_square<T>(rows: &[Vec<T>], n: usize, what: &str) -> Result<()> {
    if n == 0 {
        return Err(Error::SizeMismatch(format!("{}: n must be at least 1", what)));
    }
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::SizeMismatch(format!("{}: expected {}x{} entries", what, n, n)));
    }
    Ok(())
}

impl MatrixJson {
    pub fn to_matrix(&self) -> Result<OreMatrix> {
        let ring = self.ring.to_ring()?;
        check_square(&self.entries, self.n, "entries")?;
        OreMatrix::parse(&ring, &self.entries)
    }

    pub fn from_matrix(m: &OreMatrix) -> Option<Self> {
        Some(MatrixJson {
            ring: RingJson::from_ring(m.ring())?,
            n: m.n(),
            entries: m.to_strings(),
        })
    }
}

impl RowOpJson {
    pub fn from_op(op: &RowOp) -> Self {
        match op {
            RowOp::Swap { i, j } => RowOpJson::Swap { i: *i, j: *j },
            RowOp::AddLeftMultiple { target, source, q } => RowOpJson::AddLeftMultiple {
                target: *target,
                source: *source,
                q: q.to_string(),
            },
            RowOp::ScaleUnit { row, unit } => RowOpJson::ScaleUnit {
                row: *row,
                unit: unit.to_string(),
            },
        }
    }

    pub fn to_op(&self, ring: &OreRing, n: usize) -> Result<RowOp> {
        let check = |i: usize| {
            if i < n {
                Ok(i)
            } else {
                Err(Error::SizeMismatch(format!("row {} out of range for n = {}", i, n)))
            }
        };
        Ok(match self {
            RowOpJson::Swap { i, j } => RowOp::Swap {
                i: check(*i)?,
                j: check(*j)?,
            },
            RowOpJson::AddLeftMultiple { target, source, q } => {
                if target == source {
                    return Err(Error::InvalidInput("target and source rows coincide".into()));
                }
                RowOp::AddLeftMultiple {
                    target: check(*target)?,
                    source: check(*source)?,
                    q: ring.parse(q)?,
                }
            }
            RowOpJson::ScaleUnit { row, unit } => {
                let unit = ring.field().parse(unit)?;
                if unit.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                RowOp::ScaleUnit {
                    row: check(*row)?,
                    unit,
                }
            }
        })
    }
}

impl EchelonJson {
    pub fn from_result(r: &EchelonResult) -> Self {
        let value = r.deg_det();
        EchelonJson {
            echelon: r.echelon.to_strings(),
            pivots: r
                .pivots
                .iter()
                .map(|p| PivotJson {
                    row: p.row,
                    column: p.column,
                    degree: p.degree,
                })
                .collect(),
            ops_log: r.ops_log.iter().map(RowOpJson::from_op).collect(),
            degdet: value.value,
            free_rank_s: value.free_rank_s,
        }
    }
}

/// Parses a logged operation list for replay over `ring`.
pub fn ops_from_json(ring: &OreRing, n: usize, ops: &[RowOpJson]) -> Result<Vec<RowOp>> {
    ops.iter().map(|op| op.to_op(ring, n)).collect()
}

impl TModuleJson {
    pub fn to_input(&self) -> Result<(OreMatrix, Vec<Vec<i64>>)> {
        let phi = self.phi.to_matrix()?;
        let samples = self.samples.clone().unwrap_or_else(default_samples);
        Ok((phi, samples))
    }
}

impl SystemJson {
    pub fn to_ring(&self) -> Result<OreRing> {
        let (alpha, delta, x) = match &self.twist {
            TwistJson::Derivative => (AlphaKind::Identity, DeltaKind::FormalDerivative, "∂"),
            TwistJson::QShift(q) => (AlphaKind::QShift(parse_q(q)?), DeltaKind::Zero, "σ"),
        };
        OreRing::new(Field::new(self.field.kind()?, alpha, delta)?, x)
    }

    pub fn to_system(&self) -> Result<(OreRing, Vec<FieldMatrix>)> {
        let ring = self.to_ring()?;
        let field = ring.field();
        if self.coefficients.is_empty() {
            return Err(Error::SizeMismatch("no coefficient matrices".into()));
        }
        let mut mats = Vec::with_capacity(self.coefficients.len());
        for (i, a) in self.coefficients.iter().enumerate() {
            check_square(a, self.n, &format!("coefficients[{}]", i))?;
            let m = a
                .iter()
                .map(|row| row.iter().map(|s| field.parse(s)).collect())
                .collect::<Result<FieldMatrix>>()?;
            mats.push(m);
        }
        Ok((ring, mats))
    }
}
