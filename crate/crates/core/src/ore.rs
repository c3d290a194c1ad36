//! The skew polynomial ring R = k[x; α, δ] with `x·a = α(a)·x + δ(a)`.

use std::fmt;
use std::ops::Add;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::expr::{self, Algebra};
use crate::field::{is_identifier, Field, FieldElement};

#[derive(Debug, PartialEq, Eq)]
pub struct OreRingContext {
    field: Field,
    indeterminate: String,
}

/// Shared handle to a ring context.
#[derive(Clone, Debug)]
pub struct OreRing(Arc<OreRingContext>);

impl PartialEq for OreRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for OreRing {}

impl OreRing {
    pub fn new(field: Field, indeterminate: &str) -> Result<Self> {
        if !is_identifier(indeterminate) {
            return Err(Error::InvalidDescriptor(format!(
                "bad indeterminate name '{}'",
                indeterminate
            )));
        }
        if field.variable() == Some(indeterminate)
            || field.base().generator_name() == Some(indeterminate)
        {
            return Err(Error::InvalidDescriptor(format!(
                "indeterminate '{}' clashes with a field name",
                indeterminate
            )));
        }
        Ok(OreRing(Arc::new(OreRingContext {
            field,
            indeterminate: indeterminate.to_string(),
        })))
    }

    pub fn field(&self) -> &Field {
        &self.0.field
    }

    pub fn indeterminate(&self) -> &str {
        &self.0.indeterminate
    }

    pub fn zero(&self) -> OrePoly {
        OrePoly {
            ring: self.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(&self) -> OrePoly {
        self.constant(self.field().one())
    }

    pub fn constant(&self, c: FieldElement) -> OrePoly {
        self.monomial(c, 0)
    }

    /// c·x^i.
    pub fn monomial(&self, c: FieldElement, i: usize) -> OrePoly {
        debug_assert!(*c.field() == *self.field());
        if c.is_zero() {
            return self.zero();
        }
        let mut coeffs = vec![self.field().zero(); i];
        coeffs.push(c);
        OrePoly {
            ring: self.clone(),
            coeffs,
        }
    }

    /// The indeterminate x.
    pub fn x(&self) -> OrePoly {
        self.monomial(self.field().one(), 1)
    }

    /// Builds a polynomial from coefficients, lowest degree first.
    pub fn from_coeffs(&self, coeffs: Vec<FieldElement>) -> Result<OrePoly> {
        if coeffs.iter().any(|c| c.field() != self.field()) {
            return Err(Error::MixedDescriptors);
        }
        let mut p = OrePoly {
            ring: self.clone(),
            coeffs,
        };
        p.normalize();
        Ok(p)
    }

    pub fn parse(&self, text: &str) -> Result<OrePoly> {
        self.eval(&expr::parse(text)?)
    }

    /// Whether α = id and δ = 0, i.e. R is the ordinary polynomial ring.
    pub fn is_commutative(&self) -> bool {
        use crate::field::{AlphaKind, DeltaKind};
        matches!(self.field().alpha(), AlphaKind::Identity)
            && matches!(self.field().delta(), DeltaKind::Zero)
    }
}

/// deg: R → ℕ ∪ {bottom}, with bottom = deg 0 absorbing under addition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PolyDegree {
    Bottom,
    Finite(usize),
}

impl PolyDegree {
    pub fn finite(self) -> Option<usize> {
        match self {
            PolyDegree::Finite(d) => Some(d),
            PolyDegree::Bottom => None,
        }
    }
}

impl Add for PolyDegree {
    type Output = PolyDegree;
    fn add(self, rhs: PolyDegree) -> PolyDegree {
        match (self, rhs) {
            (PolyDegree::Finite(a), PolyDegree::Finite(b)) => PolyDegree::Finite(a + b),
            _ => PolyDegree::Bottom,
        }
    }
}

impl fmt::Display for PolyDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyDegree::Bottom => write!(f, "bottom"),
            PolyDegree::Finite(d) => write!(f, "{}", d),
        }
    }
}

/// An element Σ a_i x^i of R; no trailing zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrePoly {
    ring: OreRing,
    coeffs: Vec<FieldElement>,
}

impl OrePoly {
    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn ring(&self) -> &OreRing {
        &self.ring
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.ring.field().zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> PolyDegree {
        match self.coeffs.len() {
            0 => PolyDegree::Bottom,
            n => PolyDegree::Finite(n - 1),
        }
    }

    pub fn leading(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    /// The constant, when deg ≤ 0.
    pub fn as_constant(&self) -> Option<FieldElement> {
        match self.coeffs.len() {
            0 => Some(self.ring.field().zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn neg(&self) -> OrePoly {
        OrePoly {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    fn add_same(&self, other: &OrePoly) -> OrePoly {
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c = &*c + s;
        }
        let mut p = OrePoly {
            ring: self.ring.clone(),
            coeffs,
        };
        p.normalize();
        p
    }

    /// c·self (left scalar multiplication).
    pub fn left_scale(&self, c: &FieldElement) -> OrePoly {
        if c.is_zero() {
            return self.ring.zero();
        }
        OrePoly {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|a| c * a).collect(),
        }
    }

    /// x·self, pushing x past each coefficient with the commutation rule.
    pub fn x_times(&self) -> OrePoly {
        let field = self.ring.field();
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![field.zero(); self.coeffs.len() + 1];
        let has_delta = !matches!(field.delta(), crate::field::DeltaKind::Zero);
        for (j, b) in self.coeffs.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            coeffs[j + 1] = &coeffs[j + 1] + &b.alpha();
            if has_delta {
                coeffs[j] = &coeffs[j] + &b.delta();
            }
        }
        let mut p = OrePoly {
            ring: self.ring.clone(),
            coeffs,
        };
        p.normalize();
        p
    }

    fn mul_same(&self, other: &OrePoly) -> OrePoly {
        if self.is_zero() || other.is_zero() {
            return self.ring.zero();
        }
        // Σ_i a_i·(x^i·other)
        let mut acc = self.ring.zero();
        let mut shifted = other.clone();
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                shifted = shifted.x_times();
            }
            if !a.is_zero() {
                acc = acc.add_same(&shifted.left_scale(a));
            }
        }
        acc
    }

    pub fn pow(&self, e: u32) -> OrePoly {
        let mut acc = self.ring.one();
        for _ in 0..e {
            acc = acc.mul_same(self);
        }
        acc
    }

    fn check_ring(&self, other: &OrePoly) -> Result<()> {
        if self.ring != other.ring {
            Err(Error::MixedContexts)
        } else {
            Ok(())
        }
    }
}

pub fn poly_add(p: &OrePoly, q: &OrePoly) -> Result<OrePoly> {
    p.check_ring(q)?;
    Ok(p.add_same(q))
}

pub fn poly_mul(p: &OrePoly, q: &OrePoly) -> Result<OrePoly> {
    p.check_ring(q)?;
    Ok(p.mul_same(q))
}

pub fn poly_degree(p: &OrePoly) -> PolyDegree {
    p.degree()
}

/// Left Euclidean division: `b = q·a + r` with `r = 0` or `deg r < deg a`.
pub fn left_divmod(b: &OrePoly, a: &OrePoly) -> Result<(OrePoly, OrePoly)> {
    b.check_ring(a)?;
    let ring = &b.ring;
    let m = match a.degree() {
        PolyDegree::Bottom => return Err(Error::DivisionByZeroPoly),
        PolyDegree::Finite(m) => m,
    };
    let lead_a = a.leading().unwrap();
    // α^j(lead a) for the shifts used so far
    let mut twisted_leads: Vec<FieldElement> = vec![lead_a.clone()];
    let mut q = ring.zero();
    let mut r = b.clone();
    while let PolyDegree::Finite(n) = r.degree() {
        if n < m {
            break;
        }
        let shift = n - m;
        while twisted_leads.len() <= shift {
            let next = twisted_leads.last().unwrap().alpha();
            twisted_leads.push(next);
        }
        let c = r.leading().unwrap() * &twisted_leads[shift].inv()?;
        let term = ring.monomial(c, shift);
        let sub = term.mul_same(a);
        let mut next = r.add_same(&sub.neg());
        // the leading terms cancel exactly; drop any leftover top slot
        next.coeffs.truncate(n);
        next.normalize();
        r = next;
        q = q.add_same(&term);
    }
    Ok((q, r))
}

macro_rules! forward_poly_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl std::ops::$trait<&OrePoly> for &OrePoly {
            type Output = OrePoly;
            fn $method(self, rhs: &OrePoly) -> OrePoly {
                assert!(self.ring == rhs.ring, "mixed skew polynomial rings");
                $body(self, rhs)
            }
        }
        impl std::ops::$trait<OrePoly> for OrePoly {
            type Output = OrePoly;
            fn $method(self, rhs: OrePoly) -> OrePoly {
                std::ops::$trait::$method(&self, &rhs)
            }
        }
    };
}

forward_poly_binop!(Add, add, |a: &OrePoly, b: &OrePoly| a.add_same(b));
forward_poly_binop!(Sub, sub, |a: &OrePoly, b: &OrePoly| a.add_same(&b.neg()));
forward_poly_binop!(Mul, mul, |a: &OrePoly, b: &OrePoly| a.mul_same(b));

impl std::ops::Neg for &OrePoly {
    type Output = OrePoly;
    fn neg(self) -> OrePoly {
        OrePoly::neg(self)
    }
}

impl fmt::Display for OrePoly {
    /// Terms `coef*X^i` in descending powers; parses back to the same value.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let x = self.ring.indeterminate();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let pow = match i {
                0 => String::new(),
                1 => x.to_string(),
                _ => format!("{}^{}", x, i),
            };
            let negative = c.renders_negative();
            let (sign, body) = if i == 0 {
                let s = c.to_string();
                match s.strip_prefix('-') {
                    Some(rest) if negative => (true, rest.to_string()),
                    _ => (false, s),
                }
            } else if c.is_one() {
                (false, pow)
            } else if c.renders_as_factor() {
                (false, format!("{}*{}", c, pow))
            } else if negative && (-c).is_one() {
                (true, pow)
            } else if negative && (-c).renders_as_factor() {
                (true, format!("{}*{}", -c, pow))
            } else {
                (false, format!("({})*{}", c, pow))
            };
            if first {
                if sign {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if sign { " - " } else { " + " })?;
            }
            write!(f, "{}", body)?;
            first = false;
        }
        Ok(())
    }
}

impl Algebra for OreRing {
    type Value = OrePoly;

    fn int(&self, n: &BigInt) -> OrePoly {
        self.constant(self.field().from_bigint(n))
    }

    fn ident(&self, name: &str, pos: usize) -> Result<OrePoly> {
        if name == self.indeterminate() {
            return Ok(self.x());
        }
        Ok(self.constant(self.field().ident(name, pos)?))
    }

    fn add(&self, a: OrePoly, b: OrePoly) -> OrePoly {
        a.add_same(&b)
    }

    fn sub(&self, a: OrePoly, b: OrePoly) -> OrePoly {
        a.add_same(&b.neg())
    }

    fn neg(&self, a: OrePoly) -> OrePoly {
        a.neg()
    }

    fn mul(&self, a: OrePoly, b: OrePoly) -> OrePoly {
        a.mul_same(&b)
    }

    fn div(&self, a: OrePoly, b: OrePoly, pos: usize) -> Result<OrePoly> {
        let c = b
            .as_constant()
            .ok_or_else(|| Error::parse(pos, "can only divide by a field element"))?;
        Ok(a.mul_same(&self.constant(c.inv()?)))
    }

    fn pow(&self, a: OrePoly, e: i64, pos: usize) -> Result<OrePoly> {
        if e >= 0 {
            let e = u32::try_from(e).map_err(|_| Error::parse(pos, "exponent too large"))?;
            return Ok(a.pow(e));
        }
        let c = a
            .as_constant()
            .ok_or_else(|| Error::parse(pos, "negative power of a non-constant"))?;
        Ok(self.constant(c.pow(e)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{AlphaKind, BaseField, DeltaKind, FieldKind};

    fn weyl() -> OreRing {
        let k = Field::new(
            FieldKind::RationalFunction {
                base: BaseField::Rationals,
                variable: "x".into(),
            },
            AlphaKind::Identity,
            DeltaKind::FormalDerivative,
        )
        .unwrap();
        OreRing::new(k, "∂").unwrap()
    }

    fn tau_over_fp_theta(p: u64) -> OreRing {
        let k = Field::new(
            FieldKind::RationalFunction {
                base: BaseField::prime(p).unwrap(),
                variable: "θ".into(),
            },
            AlphaKind::Frobenius,
            DeltaKind::Zero,
        )
        .unwrap();
        OreRing::new(k, "τ").unwrap()
    }

    #[test]
    fn commutation_rule_weyl() {
        let r = weyl();
        let lhs = r.parse("∂*x").unwrap();
        assert_eq!(lhs, r.parse("x*∂ + 1").unwrap());
        assert_eq!(lhs.to_string(), "x*∂ + 1");
    }

    #[test]
    fn commutation_rule_frobenius() {
        for p in [2, 3, 5] {
            let r = tau_over_fp_theta(p);
            let a = r.parse("θ^2 + 1").unwrap();
            let lhs = &r.x() * &a;
            let rhs = r.monomial(a.coeff(0).pow(p as i64).unwrap(), 1);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn product_example() {
        // (τ - θ^p)(τ + θ) = τ^2 + θ^p τ - θ^p τ - θ^(p+1) = τ^2 - θ^(p+1)
        for p in [2u64, 3, 5, 7] {
            let r = tau_over_fp_theta(p);
            let a = r.parse(&format!("τ - θ^{}", p)).unwrap();
            let b = r.parse("τ + θ").unwrap();
            let want = r.parse(&format!("τ^2 - θ^{}", p + 1)).unwrap();
            assert_eq!(poly_mul(&a, &b).unwrap(), want);
        }
    }

    #[test]
    fn add_examples() {
        let r = weyl();
        let s = poly_add(&r.parse("∂ + 1").unwrap(), &r.parse("∂ - 1").unwrap()).unwrap();
        assert_eq!(s, r.parse("2*∂").unwrap());
        let p = r.parse("x*∂^2").unwrap();
        assert_eq!(poly_add(&p, &r.zero()).unwrap(), p);
        let fr = tau_over_fp_theta(5);
        let s = poly_add(&fr.parse("θ*τ").unwrap(), &fr.parse("4*θ*τ").unwrap()).unwrap();
        assert!(s.is_zero());
    }

    #[test]
    fn degrees() {
        let r = weyl();
        assert_eq!(r.parse("∂^3 + 1").unwrap().degree(), PolyDegree::Finite(3));
        assert_eq!(r.zero().degree(), PolyDegree::Bottom);
        assert_eq!(r.parse("x + 2").unwrap().degree(), PolyDegree::Finite(0));
        assert_eq!(PolyDegree::Bottom + PolyDegree::Finite(2), PolyDegree::Bottom);
    }

    #[test]
    fn divmod_example() {
        for p in [2u64, 3, 5] {
            let r = tau_over_fp_theta(p);
            let b = r.parse("τ^2").unwrap();
            let a = r.parse("τ + θ").unwrap();
            let (q, rem) = left_divmod(&b, &a).unwrap();
            assert_eq!(q, r.parse(&format!("τ - θ^{}", p)).unwrap());
            assert_eq!(rem, r.parse(&format!("θ^{}", p + 1)).unwrap());
            assert_eq!(&(&q * &a) + &rem, b);
        }
    }

    #[test]
    fn divmod_degenerate() {
        let r = weyl();
        let a = r.parse("x*∂^2 + ∂").unwrap();
        let (q, rem) = left_divmod(&a, &a).unwrap();
        assert!(q == r.one() && rem.is_zero());
        let b = r.parse("∂ + x").unwrap();
        let (q, rem) = left_divmod(&b, &a).unwrap();
        assert!(q.is_zero());
        assert_eq!(rem, b);
        assert_eq!(left_divmod(&b, &r.zero()), Err(Error::DivisionByZeroPoly));
    }

    #[test]
    fn mixed_contexts() {
        let a = weyl().x();
        let b = tau_over_fp_theta(3).x();
        assert_eq!(poly_add(&a, &b), Err(Error::MixedContexts));
        assert_eq!(poly_mul(&a, &b), Err(Error::MixedContexts));
    }

    #[test]
    fn rendering_roundtrip() {
        let r = weyl();
        for s in [
            "∂^2 + 1",
            "-∂^3 + (x + 1)*∂ - 1/2",
            "(1/x)*∂ - x",
            "-x*∂^2",
            "(-x - 1)*∂ + (x^2 - 1)/(x + 3)",
            "0",
            "-1",
        ] {
            let p = r.parse(s).unwrap();
            let text = p.to_string();
            assert_eq!(r.parse(&text).unwrap(), p, "{} -> {}", s, text);
        }
    }

    #[test]
    fn parse_rules() {
        let r = weyl();
        assert!(matches!(r.parse("1/∂"), Err(Error::Parse { position: 1, .. })));
        assert_eq!(r.parse("∂/x").unwrap(), r.parse("(1/x)*∂ - 1/x^2").unwrap());
        assert!(OreRing::new(r.field().clone(), "x").is_err());
    }
}
