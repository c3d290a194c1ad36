//! Kernel ranks of endomorphisms of G_a^n and ranks of t-modules.
//!
//! Over a field of characteristic p with τ acting as the p-th power map, an
//! endomorphism of G_a^n is a matrix over k[τ] and its kernel is a finite
//! group scheme of rank p^(deg det) whenever deg det is finite.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{AlphaKind, DeltaKind};
use crate::matrix::{deg_det, mat_mul, DegDet, OreMatrix};
use crate::ore::OreRing;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelRankReport {
    pub degdet: DegDet,
    pub p: u64,
    /// "p^d", or "infinite".
    pub rank: String,
    /// p^d in decimal when finite.
    pub rank_decimal: Option<String>,
    pub free_rank_s: usize,
}

/// One sample f with the deg det of φ(f).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckedPoly {
    /// Coefficients over F_p, constant term first.
    pub f: Vec<u64>,
    pub deg_f: usize,
    pub degdet: DegDet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TModuleRankReport {
    pub r: u64,
    pub checked_polys: Vec<CheckedPoly>,
    pub consistent: bool,
}

/// The characteristic, if the ring is k[τ] with τ the Frobenius.
pub fn frobenius_characteristic(ring: &OreRing) -> Result<u64> {
    let field = ring.field();
    let p = field.characteristic();
    if p == 0 || *field.alpha() != AlphaKind::Frobenius || *field.delta() != DeltaKind::Zero {
        return Err(Error::WrongTwist(format!(
            "expected a frobenius ring in positive characteristic, got {}",
            field.name()
        )));
    }
    Ok(p)
}

pub fn kernel_rank(phi: &OreMatrix) -> Result<KernelRankReport> {
    let p = frobenius_characteristic(phi.ring())?;
    let value = deg_det(phi);
    let (rank, rank_decimal) = match value.value {
        DegDet::Finite(d) => (
            format!("{}^{}", p, d),
            Some(BigUint::from(p).pow(d as u32).to_string()),
        ),
        DegDet::Infinite => ("infinite".to_string(), None),
    };
    Ok(KernelRankReport {
        degdet: value.value,
        p,
        rank,
        rank_decimal,
        free_rank_s: value.free_rank_s,
    })
}

/// Coefficients reduced into [0, p) with trailing zeros removed.
fn reduce_coeffs(f: &[i64], p: u64) -> Vec<u64> {
    let mut out: Vec<u64> = f.iter().map(|&c| c.rem_euclid(p as i64) as u64).collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

/// φ(f) = Σ_j c_j·φ_t^j for f = Σ_j c_j t^j over F_p.
pub fn evaluate_t_poly(phi_t: &OreMatrix, f: &[i64]) -> Result<OreMatrix> {
    let p = frobenius_characteristic(phi_t.ring())?;
    if f.is_empty() {
        return Err(Error::InvalidInput("empty coefficient list".into()));
    }
    let ring = phi_t.ring();
    let n = phi_t.n();
    let coeffs = reduce_coeffs(f, p);
    let scalar = |c: u64| {
        let u = ring.constant(ring.field().from_i64(c as i64));
        OreMatrix::from_fn(ring, n, |i, j| if i == j { u.clone() } else { ring.zero() })
    };
    let Some((&top, rest)) = coeffs.split_last() else {
        return Ok(OreMatrix::zero(ring, n));
    };
    // Horner; the c_j lie in F_p, which τ fixes, so they commute with φ_t
    let mut acc = scalar(top);
    for &c in rest.iter().rev() {
        acc = mat_mul(&acc, phi_t)?;
        if c != 0 {
            let cm = scalar(c);
            acc = OreMatrix::from_fn(ring, n, |i, j| acc.get(i, j) + cm.get(i, j));
        }
    }
    Ok(acc)
}

/// t, t², t³, t² + t, t³ + t + 1.
pub fn default_samples() -> Vec<Vec<i64>> {
    vec![vec![0, 1], vec![0, 0, 1], vec![0, 0, 0, 1], vec![0, 1, 1], vec![1, 1, 0, 1]]
}

pub fn t_module_rank(phi_t: &OreMatrix, samples: &[Vec<i64>]) -> Result<TModuleRankReport> {
    let p = frobenius_characteristic(phi_t.ring())?;
    let r = match deg_det(phi_t).value {
        DegDet::Finite(r) => r,
        DegDet::Infinite => return Err(Error::InfiniteDegDet),
    };
    let mut checked = Vec::with_capacity(samples.len());
    let mut consistent = true;
    for f in samples {
        let reduced = reduce_coeffs(f, p);
        if reduced.is_empty() {
            return Err(Error::InvalidInput(format!("sample {:?} is zero over F_{}", f, p)));
        }
        let deg_f = reduced.len() - 1;
        let degdet = deg_det(&evaluate_t_poly(phi_t, f)?).value;
        consistent &= degdet == DegDet::Finite(r * deg_f as u64);
        checked.push(CheckedPoly {
            f: reduced,
            deg_f,
            degdet,
        });
    }
    Ok(TModuleRankReport {
        r,
        checked_polys: checked,
        consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{BaseField, Field, FieldKind};

    fn ring(p: u64, var: &str) -> OreRing {
        let field = Field::new(
            FieldKind::RationalFunction {
                base: BaseField::prime(p).unwrap(),
                variable: var.into(),
            },
            AlphaKind::Frobenius,
            DeltaKind::Zero,
        )
        .unwrap();
        OreRing::new(field, "τ").unwrap()
    }

    #[test]
    fn carlitz_square() {
        let r = ring(3, "θ");
        let phi = OreMatrix::parse(&r, &[vec!["θ + τ"]]).unwrap();
        let sq = evaluate_t_poly(&phi, &[0, 0, 1]).unwrap();
        let expected = OreMatrix::parse(&r, &[vec!["θ^2 + (θ^3 + θ)*τ + τ^2"]]).unwrap();
        assert_eq!(sq, expected);
        assert_eq!(evaluate_t_poly(&phi, &[1]).unwrap(), OreMatrix::identity(&r, 1));
        assert_eq!(evaluate_t_poly(&phi, &[0, 1]).unwrap(), phi);
    }

    #[test]
    fn ranks() {
        let r = ring(5, "t");
        let phi = OreMatrix::parse(&r, &[vec!["τ^2", "0"], vec!["0", "τ"]]).unwrap();
        let rep = kernel_rank(&phi).unwrap();
        assert_eq!(rep.rank, "5^3");
        assert_eq!(rep.rank_decimal.as_deref(), Some("125"));
        let scalar = OreMatrix::parse(&r, &[vec!["t"]]).unwrap();
        assert_eq!(kernel_rank(&scalar).unwrap().rank, "5^0");
        let zero = OreMatrix::zero(&r, 2);
        assert_eq!(kernel_rank(&zero).unwrap().rank, "infinite");
    }

    #[test]
    fn drinfeld_ranks() {
        let r = ring(3, "θ");
        for (text, rank) in [("θ + τ", 1), ("θ + θ^2*τ + τ^2", 2), ("θ", 0)] {
            let phi = OreMatrix::parse(&r, &[vec![text]]).unwrap();
            let rep = t_module_rank(&phi, &default_samples()).unwrap();
            assert_eq!(rep.r, rank);
            assert!(rep.consistent, "{}", text);
        }
    }

    #[test]
    fn wrong_twist() {
        let field = Field::prime(5).unwrap();
        let r = OreRing::new(field, "x").unwrap();
        let phi = OreMatrix::identity(&r, 1);
        assert!(matches!(kernel_rank(&phi), Err(Error::WrongTwist(_))));
        assert!(matches!(t_module_rank(&phi, &default_samples()), Err(Error::WrongTwist(_))));
    }

    #[test]
    fn infinite_phi_is_rejected() {
        let r = ring(2, "t");
        let phi = OreMatrix::zero(&r, 1);
        assert_eq!(t_module_rank(&phi, &default_samples()), Err(Error::InfiniteDegDet));
    }
}
