//! Square matrices over a skew polynomial ring and the deg det map.

mod echelon;
mod oracle;

use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::ore::{OrePoly, OreRing, PolyDegree};

pub use echelon::{deg_det, invert, row_echelon, EchelonResult, Pivot, RowOp};
pub use oracle::{commutative_oracle, quotient_dim_oracle, OracleCaps, OracleValue};

/// A value in ℕ ∪ {+∞}; +∞ absorbs addition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DegDet {
    Finite(u64),
    #[serde(with = "infinite_tag")]
    Infinite,
}

mod infinite_tag {
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str("infinite")
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<(), D::Error> {
        let s = String::deserialize(d)?;
        if s == "infinite" {
            Ok(())
        } else {
            Err(de::Error::custom("expected \"infinite\""))
        }
    }
}

impl DegDet {
    pub fn is_finite(self) -> bool {
        matches!(self, DegDet::Finite(_))
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            DegDet::Finite(d) => Some(d),
            DegDet::Infinite => None,
        }
    }
}

impl Add for DegDet {
    type Output = DegDet;
    fn add(self, rhs: DegDet) -> DegDet {
        match (self, rhs) {
            (DegDet::Finite(a), DegDet::Finite(b)) => DegDet::Finite(a + b),
            _ => DegDet::Infinite,
        }
    }
}

impl fmt::Display for DegDet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DegDet::Finite(d) => write!(f, "{}", d),
            DegDet::Infinite => write!(f, "infinite"),
        }
    }
}

/// deg det together with the free rank s of R^n/R^nA.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegDetValue {
    #[serde(rename = "degdet")]
    pub value: DegDet,
    pub free_rank_s: usize,
}

/// An n×n matrix over R, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OreMatrix {
    ring: OreRing,
    n: usize,
    entries: Vec<OrePoly>,
}

impl OreMatrix {
    pub fn new(ring: &OreRing, rows: Vec<Vec<OrePoly>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::SizeMismatch("matrix must be at least 1x1".into()));
        }
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::SizeMismatch(format!(
                    "row {} has {} entries, expected {}",
                    i,
                    row.len(),
                    n
                )));
            }
            for e in row {
                if e.ring() != ring {
                    return Err(Error::MixedContexts);
                }
                entries.push(e);
            }
        }
        Ok(OreMatrix {
            ring: ring.clone(),
            n,
            entries,
        })
    }

    /// Parses every entry with the ring's element grammar.
    pub fn parse<S: AsRef<str>>(ring: &OreRing, rows: &[Vec<S>]) -> Result<Self> {
        let parsed = rows
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, s)| {
                        ring.parse(s.as_ref()).map_err(|e| match e {
                            Error::Parse { position, message } => Error::Parse {
                                position,
                                message: format!("entry ({}, {}): {}", i, j, message),
                            },
                            other => other,
                        })
                    })
                    .collect()
            })
            .collect::<Result<Vec<Vec<_>>>>()?;
        Self::new(ring, parsed)
    }

    pub fn from_fn(ring: &OreRing, n: usize, mut f: impl FnMut(usize, usize) -> OrePoly) -> Self {
        assert!(n >= 1);
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        OreMatrix {
            ring: ring.clone(),
            n,
            entries,
        }
    }

    pub fn identity(ring: &OreRing, n: usize) -> Self {
        Self::from_fn(ring, n, |i, j| if i == j { ring.one() } else { ring.zero() })
    }

    pub fn zero(ring: &OreRing, n: usize) -> Self {
        Self::from_fn(ring, n, |_, _| ring.zero())
    }

    pub fn diag(ring: &OreRing, d: Vec<OrePoly>) -> Self {
        let n = d.len();
        Self::from_fn(ring, n, |i, j| if i == j { d[i].clone() } else { ring.zero() })
    }

    /// I + r·E_ij (i ≠ j).
    pub fn elementary(ring: &OreRing, n: usize, i: usize, j: usize, r: OrePoly) -> Self {
        assert!(i != j && i < n && j < n);
        let mut m = Self::identity(ring, n);
        m.entries[i * n + j] = r;
        m
    }

    pub fn ring(&self) -> &OreRing {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &OrePoly {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: OrePoly) {
        debug_assert!(value.ring() == &self.ring);
        self.entries[i * self.n + j] = value;
    }

    pub fn row(&self, i: usize) -> &[OrePoly] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[OrePoly]> {
        self.entries.chunks(self.n)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(&self.ring, self.n)
    }

    /// Largest entry degree, `None` for the zero matrix.
    pub fn max_degree(&self) -> Option<usize> {
        self.entries.iter().filter_map(|e| e.degree().finite()).max()
    }

    /// Σ_i max_j deg A_ij over nonzero rows.
    pub fn row_degree_sum(&self) -> usize {
        self.rows()
            .map(|r| r.iter().filter_map(|e| e.degree().finite()).max().unwrap_or(0))
            .sum()
    }

    /// Whether every off-diagonal entry is zero.
    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self.get(i, j).is_zero()))
    }

    /// Entry strings, row by row.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.rows()
            .map(|r| r.iter().map(|e| e.to_string()).collect())
            .collect()
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let n = self.n;
        for j in 0..n {
            self.entries.swap(a * n + j, b * n + j);
        }
    }

    /// row_target ← row_target + q·row_source.
    pub(crate) fn add_left_multiple(&mut self, target: usize, source: usize, q: &OrePoly) {
        self.add_left_multiple_from(target, source, q, 0);
    }

    /// Like `add_left_multiple`, touching only columns `first..`.
    pub(crate) fn add_left_multiple_from(&mut self, target: usize, source: usize, q: &OrePoly, first: usize) {
        assert!(target != source);
        let n = self.n;
        for j in first..n {
            let s = &self.entries[source * n + j];
            if s.is_zero() {
                continue;
            }
            let add = q * s;
            let t = &mut self.entries[target * n + j];
            *t = &*t + &add;
        }
    }

    /// row ← u·row.
    pub(crate) fn scale_row(&mut self, row: usize, u: &FieldElement) {
        let n = self.n;
        for j in 0..n {
            let e = &mut self.entries[row * n + j];
            *e = e.left_scale(u);
        }
    }

    /// Each diagonal entry's degree, summed, with any zero entry giving +∞.
    pub fn diagonal_degree_sum(&self) -> DegDet {
        (0..self.n)
            .map(|i| match self.get(i, i).degree() {
                PolyDegree::Finite(d) => DegDet::Finite(d as u64),
                PolyDegree::Bottom => DegDet::Infinite,
            })
            .fold(DegDet::Finite(0), |a, b| a + b)
    }
}

pub fn mat_mul(a: &OreMatrix, b: &OreMatrix) -> Result<OreMatrix> {
    if a.ring != b.ring {
        return Err(Error::MixedContexts);
    }
    if a.n != b.n {
        return Err(Error::SizeMismatch(format!("{}x{} times {}x{}", a.n, a.n, b.n, b.n)));
    }
    let n = a.n;
    let ring = &a.ring;
    Ok(OreMatrix::from_fn(ring, n, |i, j| {
        (0..n).fold(ring.zero(), |acc, k| {
            let (x, y) = (a.get(i, k), b.get(k, j));
            if x.is_zero() || y.is_zero() {
                acc
            } else {
                &acc + &(x * y)
            }
        })
    }))
}

impl fmt::Display for OreMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, e) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", e)?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}
