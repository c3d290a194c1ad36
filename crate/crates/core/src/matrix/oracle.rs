//! Independent routes to deg det, used to cross-check the echelon route.
//!
//! [`quotient_dim_oracle`] measures dim_k R^n/R^nA directly by linear algebra
//! over k. Let F_D ⊂ R^n be the vectors whose entries have degree < D and
//! W_J the k-span of {x^j·row_i(A) : j ≤ J}. For J large enough,
//! c(D) = n·D − dim(W_J ∩ F_D) is the dimension of the image of F_D in the
//! quotient. Since F_{D+1} = F_D + k·x·F_D, one equality c(D) = c(D+1) makes
//! the image x-stable, hence the whole quotient, and c stays constant from
//! there on. A finite quotient has dimension at most Σ_i max_j deg A_ij, so c
//! still growing past that bound means the quotient is infinite.
//!
//! [`commutative_oracle`] is the classical determinant by cofactor expansion,
//! valid only when R is the ordinary polynomial ring.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{DegDet, OreMatrix};
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::ore::OrePoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleCaps {
    /// Largest degree window D tried.
    pub max_degree_window: usize,
    /// Largest multiplier degree J tried.
    pub max_multiplier_degree: usize,
}

impl Default for OracleCaps {
    fn default() -> Self {
        OracleCaps {
            max_degree_window: 48,
            max_multiplier_degree: 64,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleValue {
    Finite(u64),
    Infinite,
    /// The caps were reached before the counts stabilised.
    Unstable,
}

impl OracleValue {
    /// Whether this agrees with a deg det value.
    pub fn agrees_with(self, d: DegDet) -> bool {
        match (self, d) {
            (OracleValue::Finite(a), DegDet::Finite(b)) => a == b,
            (OracleValue::Infinite, DegDet::Infinite) => true,
            _ => false,
        }
    }
}

impl std::fmt::Display for OracleValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OracleValue::Finite(d) => write!(f, "{}", d),
            OracleValue::Infinite => write!(f, "infinite"),
            OracleValue::Unstable => write!(f, "unstable"),
        }
    }
}

/// Echelon basis of a k-subspace of coordinate space, keyed by leading
/// (highest) coordinate; every stored vector has leading coefficient 1.
struct SpanBasis {
    rows: BTreeMap<usize, Vec<FieldElement>>,
}

impl SpanBasis {
    fn new() -> Self {
        SpanBasis {
            rows: BTreeMap::new(),
        }
    }

    fn insert(&mut self, mut v: Vec<FieldElement>) {
        loop {
            let Some(lead) = v.iter().rposition(|c| !c.is_zero()) else {
                return;
            };
            v.truncate(lead + 1);
            match self.rows.get(&lead) {
                Some(b) => {
                    let c = v[lead].clone();
                    for (x, y) in v.iter_mut().zip(b) {
                        if !y.is_zero() {
                            *x = &*x - &(&c * y);
                        }
                    }
                }
                None => {
                    let inv = v[lead].inv().expect("nonzero leading coefficient");
                    let v = v.into_iter().map(|c| if c.is_zero() { c } else { &inv * &c }).collect();
                    self.rows.insert(lead, v);
                    return;
                }
            }
        }
    }

    /// Number of basis vectors whose leading coordinate is below `bound`.
    fn count_below(&self, bound: usize) -> usize {
        self.rows.range(..bound).count()
    }
}

struct QuotientCounter {
    n: usize,
    /// x^J·row_i(A) for the current J.
    layer: Vec<Vec<OrePoly>>,
    /// Highest J added so far.
    depth: usize,
    basis: SpanBasis,
}

impl QuotientCounter {
    fn new(a: &OreMatrix) -> Self {
        let layer: Vec<Vec<OrePoly>> = a.rows().map(|r| r.to_vec()).collect();
        let mut qc = QuotientCounter {
            n: a.n(),
            layer,
            depth: 0,
            basis: SpanBasis::new(),
        };
        qc.absorb_layer();
        qc
    }

    fn coordinates(&self, row: &[OrePoly]) -> Vec<FieldElement> {
        let n = self.n;
        let len = row.iter().map(|e| e.coeffs().len()).max().unwrap_or(0);
        let zero = row[0].ring().field().zero();
        let mut v = vec![zero; len * n];
        for (comp, e) in row.iter().enumerate() {
            for (deg, c) in e.coeffs().iter().enumerate() {
                v[deg * n + comp] = c.clone();
            }
        }
        v
    }

    fn absorb_layer(&mut self) {
        for i in 0..self.n {
            let v = self.coordinates(&self.layer[i]);
            self.basis.insert(v);
        }
    }

    fn deepen(&mut self) {
        for row in self.layer.iter_mut() {
            for e in row.iter_mut() {
                *e = e.x_times();
            }
        }
        self.depth += 1;
        self.absorb_layer();
    }

    fn c(&self, window: usize) -> usize {
        self.n * window - self.basis.count_below(self.n * window)
    }
}

/// dim_k R^n/R^nA by exact linear algebra over k.
pub fn quotient_dim_oracle(a: &OreMatrix, caps: OracleCaps) -> OracleValue {
    let bound = a.row_degree_sum();
    let mut counter = QuotientCounter::new(a);
    let mut window = 1;
    loop {
        if window > caps.max_degree_window {
            return OracleValue::Unstable;
        }
        while counter.depth < window {
            if counter.depth >= caps.max_multiplier_degree {
                return OracleValue::Unstable;
            }
            counter.deepen();
        }
        // grow J until both counts survive one more layer unchanged
        loop {
            let before = (counter.c(window), counter.c(window + 1));
            if counter.depth >= caps.max_multiplier_degree {
                return OracleValue::Unstable;
            }
            counter.deepen();
            if (counter.c(window), counter.c(window + 1)) == before {
                break;
            }
        }
        let (here, next) = (counter.c(window), counter.c(window + 1));
        if here == next {
            return OracleValue::Finite(here as u64);
        }
        if window > bound {
            return OracleValue::Infinite;
        }
        window += 1;
    }
}

type CPoly = Vec<FieldElement>;

fn cpoly_trim(mut a: CPoly) -> CPoly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn cpoly_add(a: &CPoly, b: &CPoly) -> CPoly {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.clone();
    for (o, s) in out.iter_mut().zip(short) {
        *o = &*o + s;
    }
    cpoly_trim(out)
}

fn cpoly_mul(a: &CPoly, b: &CPoly) -> CPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let zero = a[0].field().zero();
    let mut out = vec![zero; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    cpoly_trim(out)
}

fn cofactor_det(m: &[Vec<CPoly>]) -> CPoly {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc: CPoly = Vec::new();
    for (j, head) in m[0].iter().enumerate() {
        if head.is_empty() {
            continue;
        }
        let minor: Vec<Vec<CPoly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, e)| e.clone())
                    .collect()
            })
            .collect();
        let mut term = cpoly_mul(head, &cofactor_det(&minor));
        if j % 2 == 1 {
            term = term.iter().map(|c| -c).collect();
        }
        acc = cpoly_add(&acc, &term);
    }
    acc
}

/// Degree of the ordinary determinant; requires α = id and δ = 0.
pub fn commutative_oracle(a: &OreMatrix) -> Result<DegDet> {
    if !a.ring().is_commutative() {
        return Err(Error::NotCommutative);
    }
    let m: Vec<Vec<CPoly>> = a
        .rows()
        .map(|r| r.iter().map(|e| e.coeffs().to_vec()).collect())
        .collect();
    let det = cofactor_det(&m);
    Ok(match det.len() {
        0 => DegDet::Infinite,
        len => DegDet::Finite(len as u64 - 1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{AlphaKind, BaseField, DeltaKind, ExtensionSpec, Field, FieldKind};
    use crate::ore::OreRing;

    fn ring(kind: FieldKind, alpha: AlphaKind, delta: DeltaKind, x: &str) -> OreRing {
        OreRing::new(Field::new(kind, alpha, delta).unwrap(), x).unwrap()
    }

    #[test]
    fn quotient_examples() {
        let f2 = ring(
            FieldKind::Base(BaseField::prime(2).unwrap()),
            AlphaKind::Frobenius,
            DeltaKind::Zero,
            "τ",
        );
        let caps = OracleCaps::default();
        let tau = OreMatrix::parse(&f2, &[vec!["τ"]]).unwrap();
        assert_eq!(quotient_dim_oracle(&tau, caps), OracleValue::Finite(1));
        let d = OreMatrix::parse(&f2, &[vec!["τ^2", "0"], vec!["0", "τ"]]).unwrap();
        assert_eq!(quotient_dim_oracle(&d, caps), OracleValue::Finite(3));
        let z = OreMatrix::parse(&f2, &[vec!["0"]]).unwrap();
        assert_eq!(quotient_dim_oracle(&z, caps), OracleValue::Infinite);
    }

    #[test]
    fn quotient_needs_cancellation() {
        // [x - 1] over F_5[x]: the truncation of R(x-1) to degree < D never
        // contains 1, so only exact intersections give dimension 1.
        let r = ring(
            FieldKind::Base(BaseField::prime(5).unwrap()),
            AlphaKind::Identity,
            DeltaKind::Zero,
            "x",
        );
        let a = OreMatrix::parse(&r, &[vec!["x - 1"]]).unwrap();
        assert_eq!(quotient_dim_oracle(&a, OracleCaps::default()), OracleValue::Finite(1));
        // a unit with large entries
        let u = OreMatrix::parse(&r, &[vec!["1", "x^3 + x"], vec!["0", "1"]]).unwrap();
        assert_eq!(quotient_dim_oracle(&u, OracleCaps::default()), OracleValue::Finite(0));
    }

    #[test]
    fn quotient_weyl_and_f4() {
        let weyl = ring(
            FieldKind::RationalFunction {
                base: BaseField::Rationals,
                variable: "x".into(),
            },
            AlphaKind::Identity,
            DeltaKind::FormalDerivative,
            "∂",
        );
        let a = OreMatrix::parse(&weyl, &[vec!["∂", "-1"], vec!["1", "∂"]]).unwrap();
        assert_eq!(quotient_dim_oracle(&a, OracleCaps::default()), OracleValue::Finite(2));
        let s = OreMatrix::parse(&weyl, &[vec!["∂", "∂"], vec!["∂", "∂"]]).unwrap();
        assert_eq!(quotient_dim_oracle(&s, OracleCaps::default()), OracleValue::Infinite);

        let f4 = ring(
            FieldKind::Base(BaseField::Extension(ExtensionSpec::new(2, &[1, 1, 1], "w").unwrap())),
            AlphaKind::Frobenius,
            DeltaKind::Zero,
            "τ",
        );
        let a = OreMatrix::parse(&f4, &[vec!["τ + w", "w*τ"], vec!["1", "τ^2 + 1"]]).unwrap();
        let v = quotient_dim_oracle(&a, OracleCaps::default());
        assert!(v.agrees_with(super::super::deg_det(&a).value), "{:?}", v);
    }

    #[test]
    fn caps_surface_unstable() {
        let r = ring(
            FieldKind::Base(BaseField::prime(5).unwrap()),
            AlphaKind::Identity,
            DeltaKind::Zero,
            "x",
        );
        let a = OreMatrix::parse(&r, &[vec!["x^3"]]).unwrap();
        let tight = OracleCaps {
            max_degree_window: 2,
            max_multiplier_degree: 10,
        };
        assert_eq!(quotient_dim_oracle(&a, tight), OracleValue::Unstable);
    }

    #[test]
    fn commutative_examples() {
        let r = ring(
            FieldKind::Base(BaseField::prime(5).unwrap()),
            AlphaKind::Identity,
            DeltaKind::Zero,
            "x",
        );
        let a = OreMatrix::parse(&r, &[vec!["x", "1"], vec!["1", "x"]]).unwrap();
        assert_eq!(commutative_oracle(&a), Ok(DegDet::Finite(2)));
        assert_eq!(commutative_oracle(&OreMatrix::identity(&r, 3)), Ok(DegDet::Finite(0)));
        let s = OreMatrix::parse(&r, &[vec!["x", "x"], vec!["x", "x"]]).unwrap();
        assert_eq!(commutative_oracle(&s), Ok(DegDet::Infinite));

        let tw = ring(
            FieldKind::Base(BaseField::prime(5).unwrap()),
            AlphaKind::Frobenius,
            DeltaKind::Zero,
            "τ",
        );
        assert_eq!(
            commutative_oracle(&OreMatrix::identity(&tw, 1)),
            Err(Error::NotCommutative)
        );
    }
}
