//! Linear differential and q-difference systems Σ_i A_i ∂^i y = 0.
//!
//! The solution space over the constants has dimension deg det A when that
//! is finite; otherwise the system is underdetermined and s counts the free
//! summands of the module.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{AlphaKind, DeltaKind, FieldElement};
use crate::matrix::{deg_det, DegDet, OreMatrix};
use crate::ore::{OrePoly, OreRing, PolyDegree};

/// A square matrix over the coefficient field, row-major.
pub type FieldMatrix = Vec<Vec<FieldElement>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TwistKind {
    Differential,
    QDifference,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OdeDimReport {
    pub degdet: DegDet,
    pub dimension: Option<u64>,
    pub free_rank_s: usize,
    pub twist_kind: TwistKind,
    /// Set for a q-shift whose q is a root of unity.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub q_root_of_unity: bool,
}

pub fn twist_kind(ring: &OreRing) -> Result<TwistKind> {
    let field = ring.field();
    match (field.alpha(), field.delta()) {
        (AlphaKind::Identity, DeltaKind::FormalDerivative | DeltaKind::BrokenDerivative) => {
            Ok(TwistKind::Differential)
        }
        (AlphaKind::QShift(_), DeltaKind::Zero) => Ok(TwistKind::QDifference),
        _ => Err(Error::WrongTwist(format!(
            "expected a derivation or a q-shift over Q(x), got {}",
            field.name()
        ))),
    }
}

/// The operator matrix with entry (j, k) = Σ_i (A_i)_jk ∂^i.
pub fn assemble_system(ring: &OreRing, coefficients: &[FieldMatrix]) -> Result<OreMatrix> {
    twist_kind(ring)?;
    let n = match coefficients.first() {
        Some(a0) => a0.len(),
        None => return Err(Error::SizeMismatch("no coefficient matrices".into())),
    };
    if n == 0 {
        return Err(Error::SizeMismatch("matrix must be at least 1x1".into()));
    }
    for (i, a) in coefficients.iter().enumerate() {
        if a.len() != n || a.iter().any(|row| row.len() != n) {
            return Err(Error::SizeMismatch(format!("A_{} is not {}x{}", i, n, n)));
        }
        if a.iter().flatten().any(|c| c.field() != ring.field()) {
            return Err(Error::MixedDescriptors);
        }
    }
    let mut rows = Vec::with_capacity(n);
    for j in 0..n {
        let mut row = Vec::with_capacity(n);
        for k in 0..n {
            let coeffs = coefficients.iter().map(|a| a[j][k].clone()).collect();
            row.push(ring.from_coeffs(coeffs)?);
        }
        rows.push(row);
    }
    OreMatrix::new(ring, rows)
}

pub fn solution_dimension(a: &OreMatrix) -> Result<OdeDimReport> {
    let kind = twist_kind(a.ring())?;
    let value = deg_det(a);
    Ok(OdeDimReport {
        degdet: value.value,
        dimension: value.value.finite(),
        free_rank_s: value.free_rank_s,
        twist_kind: kind,
        q_root_of_unity: a.ring().field().q_is_root_of_unity(),
    })
}

/// First-order system y' = My for the scalar equation L y = 0, returned as
/// [A_0, A_1] = [−M, I] with M the companion matrix of L made monic.
pub fn companion_system(l: &OrePoly) -> Result<Vec<FieldMatrix>> {
    let d = match l.degree() {
        PolyDegree::Finite(0) | PolyDegree::Bottom => return Err(Error::DegreeZero),
        PolyDegree::Finite(d) => d,
    };
    let field = l.ring().field();
    let lead_inv = l.leading().unwrap().inv()?;
    let a: Vec<FieldElement> = l.coeffs()[..d].iter().map(|c| &lead_inv * c).collect();
    // y_(i+1) = ∂y_i for i < d, ∂y_d = −Σ a_j y_(j+1)
    let mut minus_m = vec![vec![field.zero(); d]; d];
    for i in 0..d - 1 {
        minus_m[i][i + 1] = -field.one();
    }
    for (j, c) in a.iter().enumerate() {
        minus_m[d - 1][j] = c.clone();
    }
    let id = (0..d)
        .map(|i| (0..d).map(|j| if i == j { field.one() } else { field.zero() }).collect())
        .collect();
    Ok(vec![minus_m, id])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{BaseField, Field, FieldKind};
    use num_rational::BigRational;

    fn ring(alpha: AlphaKind, delta: DeltaKind, x: &str) -> OreRing {
        let field = Field::new(
            FieldKind::RationalFunction {
                base: BaseField::Rationals,
                variable: "x".into(),
            },
            alpha,
            delta,
        )
        .unwrap();
        OreRing::new(field, x).unwrap()
    }

    fn d_ring() -> OreRing {
        ring(AlphaKind::Identity, DeltaKind::FormalDerivative, "∂")
    }

    #[test]
    fn harmonic_oscillator() {
        let r = d_ring();
        let l = r.parse("∂^2 + 1").unwrap();
        let sys = companion_system(&l).unwrap();
        let a = assemble_system(&r, &sys).unwrap();
        assert_eq!(a, OreMatrix::parse(&r, &[vec!["∂", "-1"], vec!["1", "∂"]]).unwrap());
        let rep = solution_dimension(&a).unwrap();
        assert_eq!(rep.dimension, Some(2));
        assert_eq!(rep.twist_kind, TwistKind::Differential);
    }

    #[test]
    fn first_order_scalar() {
        let r = d_ring();
        let l = r.parse("2*∂ - 2*x").unwrap();
        let a = assemble_system(&r, &companion_system(&l).unwrap()).unwrap();
        assert_eq!(a, OreMatrix::parse(&r, &[vec!["∂ - x"]]).unwrap());
    }

    #[test]
    fn dimensions() {
        let r = d_ring();
        let tri = OreMatrix::parse(&r, &[vec!["∂", "1"], vec!["0", "1"]]).unwrap();
        assert_eq!(solution_dimension(&tri).unwrap().dimension, Some(1));
        let eq = OreMatrix::parse(&r, &[vec!["∂", "∂"], vec!["∂", "∂"]]).unwrap();
        let rep = solution_dimension(&eq).unwrap();
        assert_eq!((rep.degdet, rep.dimension, rep.free_rank_s), (DegDet::Infinite, None, 1));
        let cube = assemble_system(&r, &companion_system(&r.parse("∂^3").unwrap()).unwrap()).unwrap();
        assert_eq!(solution_dimension(&cube).unwrap().dimension, Some(3));
    }

    #[test]
    fn algebraic_system() {
        let r = d_ring();
        let f = r.field();
        let a0 = vec![vec![f.one(), f.zero()], vec![f.zero(), f.from_i64(3)]];
        let a = assemble_system(&r, &[a0]).unwrap();
        assert_eq!(solution_dimension(&a).unwrap().dimension, Some(0));
    }

    #[test]
    fn q_shift_flags_roots_of_unity() {
        let q = |v: i64| AlphaKind::QShift(BigRational::from_integer(v.into()));
        let r = ring(q(2), DeltaKind::Zero, "σ");
        let a = assemble_system(&r, &companion_system(&r.parse("σ^2 - x").unwrap()).unwrap()).unwrap();
        let rep = solution_dimension(&a).unwrap();
        assert_eq!((rep.dimension, rep.twist_kind, rep.q_root_of_unity), (Some(2), TwistKind::QDifference, false));
        let r = ring(q(-1), DeltaKind::Zero, "σ");
        let a = OreMatrix::parse(&r, &[vec!["σ - 1"]]).unwrap();
        assert!(solution_dimension(&a).unwrap().q_root_of_unity);
    }

    #[test]
    fn errors() {
        let r = d_ring();
        assert_eq!(companion_system(&r.parse("x").unwrap()), Err(Error::DegreeZero));
        let f = r.field();
        let bad = vec![vec![vec![f.one()]], vec![vec![f.one(), f.zero()]]];
        assert!(matches!(assemble_system(&r, &bad), Err(Error::SizeMismatch(_))));
        let frob = OreRing::new(
            Field::new(FieldKind::Base(BaseField::prime(3).unwrap()), AlphaKind::Frobenius, DeltaKind::Zero).unwrap(),
            "τ",
        )
        .unwrap();
        assert!(matches!(solution_dimension(&OreMatrix::identity(&frob, 1)), Err(Error::WrongTwist(_))));
    }
}
