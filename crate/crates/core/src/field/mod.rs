//! Coefficient fields `k` with a twist pair (α, δ).
//!
//! A [`Field`] is a shared handle to a validated [`FieldDescriptor`]; every
//! [`FieldElement`] carries the handle of the field it lives in, so mixing
//! elements of different fields is detected instead of silently computed.

mod qfrac;
pub mod scalar;
pub mod upoly;
mod zpoly;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::expr::{self, Algebra};
pub use scalar::{BaseField, ExtensionSpec, Scalar};
use upoly::UPoly;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Base(BaseField),
    /// base(variable): fractions of polynomials over `base`.
    RationalFunction { base: BaseField, variable: String },
}

/// The endomorphism α.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AlphaKind {
    Identity,
    /// a ↦ a^p.
    Frobenius,
    /// f(x) ↦ f(q·x) on ℚ(x).
    QShift(BigRational),
}

/// The α-derivation δ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum DeltaKind {
    Zero,
    /// d/dx on ℚ(x).
    FormalDerivative,
    /// a ↦ a' + a. Additive but violates the Leibniz rule; only used to
    /// check that the self-test catches a broken twist.
    BrokenDerivative,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldDescriptor {
    kind: FieldKind,
    alpha: AlphaKind,
    delta: DeltaKind,
}

impl FieldDescriptor {
    pub fn new(kind: FieldKind, alpha: AlphaKind, delta: DeltaKind) -> Result<Self> {
        let d = FieldDescriptor { kind, alpha, delta };
        d.validate()?;
        Ok(d)
    }

    fn validate(&self) -> Result<()> {
        let base = self.base();
        if let FieldKind::RationalFunction { variable, .. } = &self.kind {
            if !is_identifier(variable) {
                return Err(Error::InvalidDescriptor(format!(
                    "bad variable name '{}'",
                    variable
                )));
            }
            if base.generator_name() == Some(variable.as_str()) {
                return Err(Error::InvalidDescriptor(
                    "variable and generator share a name".into(),
                ));
            }
        }
        if let Some(g) = base.generator_name() {
            if !is_identifier(g) {
                return Err(Error::InvalidDescriptor(format!("bad generator name '{}'", g)));
            }
        }
        let over_q_x = self.is_rational_function_over_q();
        match (&self.alpha, &self.delta) {
            (AlphaKind::Identity, DeltaKind::Zero) => Ok(()),
            (AlphaKind::Frobenius, DeltaKind::Zero) => {
                if self.characteristic() == 0 {
                    Err(Error::InvalidDescriptor(
                        "frobenius requires positive characteristic".into(),
                    ))
                } else {
                    Ok(())
                }
            }
            (AlphaKind::Identity, DeltaKind::FormalDerivative | DeltaKind::BrokenDerivative) => {
                if over_q_x {
                    Ok(())
                } else {
                    Err(Error::InvalidDescriptor(
                        "formal derivative requires a rational function field over Q".into(),
                    ))
                }
            }
            (AlphaKind::QShift(q), DeltaKind::Zero) => {
                if !over_q_x {
                    Err(Error::InvalidDescriptor(
                        "q-shift requires a rational function field over Q".into(),
                    ))
                } else if q.is_zero() {
                    Err(Error::InvalidDescriptor("q must be nonzero".into()))
                } else {
                    Ok(())
                }
            }
            _ => Err(Error::InvalidDescriptor(format!(
                "unsupported twist combination ({:?}, {:?})",
                self.alpha, self.delta
            ))),
        }
    }

    pub fn kind(&self) -> &FieldKind {
        &self.kind
    }

    pub fn alpha(&self) -> &AlphaKind {
        &self.alpha
    }

    pub fn delta(&self) -> &DeltaKind {
        &self.delta
    }

    pub fn base(&self) -> &BaseField {
        match &self.kind {
            FieldKind::Base(b) => b,
            FieldKind::RationalFunction { base, .. } => base,
        }
    }

    pub fn variable(&self) -> Option<&str> {
        match &self.kind {
            FieldKind::RationalFunction { variable, .. } => Some(variable),
            FieldKind::Base(_) => None,
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.base().characteristic()
    }

    /// ℚ(x), whose elements use the integer representation.
    fn is_rational_function_over_q(&self) -> bool {
        matches!(
            &self.kind,
            FieldKind::RationalFunction {
                base: BaseField::Rationals,
                ..
            }
        )
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    !s.is_empty() && matches!(expr_ident(s), Some(ref t) if t == s)
}

fn expr_ident(s: &str) -> Option<String> {
    match expr::parse(s) {
        Ok(expr::Expr::Ident(name, _)) => Some(name),
        _ => None,
    }
}

/// Shared handle to a validated descriptor.
#[derive(Clone, Debug)]
pub struct Field(Arc<FieldDescriptor>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Field {}

impl std::ops::Deref for Field {
    type Target = FieldDescriptor;
    fn deref(&self) -> &FieldDescriptor {
        &self.0
    }
}

impl From<FieldDescriptor> for Field {
    fn from(d: FieldDescriptor) -> Self {
        Field(Arc::new(d))
    }
}

impl Field {
    pub fn new(kind: FieldKind, alpha: AlphaKind, delta: DeltaKind) -> Result<Self> {
        Ok(FieldDescriptor::new(kind, alpha, delta)?.into())
    }

    /// F_p with the identity twist.
    pub fn prime(p: u64) -> Result<Self> {
        Self::new(FieldKind::Base(BaseField::prime(p)?), AlphaKind::Identity, DeltaKind::Zero)
    }

    pub fn rationals() -> Self {
        Self::new(FieldKind::Base(BaseField::Rationals), AlphaKind::Identity, DeltaKind::Zero)
            .unwrap()
    }

    pub fn descriptor(&self) -> &FieldDescriptor {
        &self.0
    }

    /// Same field with a different twist pair.
    pub fn with_twist(&self, alpha: AlphaKind, delta: DeltaKind) -> Result<Self> {
        Self::new(self.kind.clone(), alpha, delta)
    }

    fn elem(&self, repr: Repr) -> FieldElement {
        FieldElement {
            field: self.clone(),
            repr,
        }
    }

    pub fn zero(&self) -> FieldElement {
        match &self.kind {
            FieldKind::Base(b) => self.elem(Repr::Scalar(b.zero())),
            _ if self.is_rational_function_over_q() => self.elem(Repr::Q(qfrac::zero())),
            FieldKind::RationalFunction { base, .. } => {
                self.elem(Repr::Frac(Vec::new(), vec![base.one()]))
            }
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> FieldElement {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> FieldElement {
        self.from_scalar(self.base().from_bigint(n))
    }

    /// Embeds a constant of the base field.
    pub fn from_scalar(&self, c: Scalar) -> FieldElement {
        match &self.kind {
            FieldKind::Base(_) => self.elem(Repr::Scalar(c)),
            FieldKind::RationalFunction { .. } if self.is_rational_function_over_q() => {
                let Scalar::Q(r) = &c else {
                    unreachable!("rational constant")
                };
                self.elem(Repr::Q(qfrac::from_rational(r)))
            }
            FieldKind::RationalFunction { base, .. } => {
                let num = upoly::constant(base, c);
                self.elem(Repr::Frac(num, vec![base.one()]))
            }
        }
    }

    pub fn from_rational(&self, q: &BigRational) -> Result<FieldElement> {
        if !matches!(self.base(), BaseField::Rationals) {
            return Err(Error::MixedDescriptors);
        }
        Ok(self.from_scalar(Scalar::Q(q.clone())))
    }

    /// num/den over the base field, canonicalised.
    pub fn from_fraction(&self, num: UPoly, den: UPoly) -> Result<FieldElement> {
        match &self.kind {
            FieldKind::Base(_) => Err(Error::MixedDescriptors),
            FieldKind::RationalFunction { .. } if self.is_rational_function_over_q() => {
                let q = qfrac::from_rational_polys(&num, &den).ok_or(Error::DivisionByZero)?;
                Ok(self.elem(Repr::Q(q)))
            }
            FieldKind::RationalFunction { base, .. } => {
                let (n, d) = canonical_fraction(base, num, den)?;
                Ok(self.elem(Repr::Frac(n, d)))
            }
        }
    }

    /// The transcendental variable of a rational function field.
    pub fn variable_element(&self) -> Option<FieldElement> {
        match &self.kind {
            FieldKind::RationalFunction { .. } if self.is_rational_function_over_q() => {
                Some(self.elem(Repr::Q((
                    vec![BigInt::zero(), BigInt::one()],
                    vec![BigInt::one()],
                ))))
            }
            FieldKind::RationalFunction { base, .. } => Some(self.elem(Repr::Frac(
                vec![base.zero(), base.one()],
                vec![base.one()],
            ))),
            FieldKind::Base(_) => None,
        }
    }

    pub fn generator_element(&self) -> Option<FieldElement> {
        self.base().generator().map(|g| self.from_scalar(g))
    }

    /// True when α is the q-shift with q a root of unity (q = ±1 over ℚ).
    pub fn q_is_root_of_unity(&self) -> bool {
        matches!(&self.alpha, AlphaKind::QShift(q) if q.abs().is_one())
    }

    pub fn parse(&self, text: &str) -> Result<FieldElement> {
        self.eval(&expr::parse(text)?)
    }

    /// a ↦ a^α.
    pub fn apply_alpha(&self, a: &FieldElement) -> FieldElement {
        debug_assert!(a.field == *self);
        match (&self.alpha, &a.repr) {
            (AlphaKind::Identity, _) => a.clone(),
            (AlphaKind::Frobenius, Repr::Scalar(s)) => {
                self.elem(Repr::Scalar(self.base().frobenius(s)))
            }
            (AlphaKind::Frobenius, Repr::Frac(n, d)) => {
                let k = self.base();
                self.elem(Repr::Frac(upoly::frobenius(k, n), upoly::frobenius(k, d)))
            }
            (AlphaKind::QShift(q), Repr::Q(a)) => self.elem(Repr::Q(qfrac::shift(a, q))),
            (AlphaKind::Frobenius, Repr::Q(_)) | (AlphaKind::QShift(_), _) => {
                unreachable!("validated descriptor")
            }
        }
    }

    /// a ↦ a^δ.
    pub fn apply_delta(&self, a: &FieldElement) -> FieldElement {
        debug_assert!(a.field == *self);
        match (&self.delta, &a.repr) {
            (DeltaKind::Zero, _) => self.zero(),
            (DeltaKind::FormalDerivative, Repr::Q(q)) => self.elem(Repr::Q(qfrac::derivative(q))),
            (DeltaKind::BrokenDerivative, Repr::Q(q)) => {
                self.elem(Repr::Q(qfrac::derivative(q))).add_same(a)
            }
            _ => unreachable!("validated descriptor"),
        }
    }

    /// Short human-readable name, e.g. `F_5`, `F_2[w]/(w^2 + w + 1)(t)`, `Q(x)`.
    pub fn name(&self) -> String {
        let base = match self.base() {
            BaseField::Prime(p) => format!("F_{}", p),
            BaseField::Extension(e) => {
                let k = BaseField::Prime(e.p());
                let f: Vec<Scalar> = e.modulus().iter().map(|&c| Scalar::Fp(c)).collect();
                format!("F_{}[{}]/({})", e.p(), e.generator(), upoly::render(&k, &f, e.generator()))
            }
            BaseField::Rationals => "Q".to_string(),
        };
        match self.variable() {
            Some(v) => format!("{}({})", base, v),
            None => base,
        }
    }
}

fn canonical_fraction(k: &BaseField, num: UPoly, den: UPoly) -> Result<(UPoly, UPoly)> {
    let mut num = num;
    let mut den = den;
    upoly::trim(k, &mut num);
    upoly::trim(k, &mut den);
    if den.is_empty() {
        return Err(Error::DivisionByZero);
    }
    if num.is_empty() {
        return Ok((Vec::new(), vec![k.one()]));
    }
    let g = upoly::gcd(k, &num, &den);
    if !upoly::is_one(k, &g) {
        num = upoly::div_exact(k, &num, &g);
        den = upoly::div_exact(k, &den, &g);
    }
    Ok(make_monic(k, num, den))
}

/// Scales a fraction already coprime in k[t] to a monic denominator.
fn make_monic(k: &BaseField, num: UPoly, den: UPoly) -> (UPoly, UPoly) {
    if num.is_empty() {
        return (num, vec![k.one()]);
    }
    let lead = den.last().unwrap().clone();
    if k.is_one(&lead) {
        return (num, den);
    }
    let inv = k.inv(&lead).unwrap();
    (upoly::scale(k, &inv, &num), upoly::scale(k, &inv, &den))
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Repr {
    Scalar(Scalar),
    /// Canonical: gcd 1, monic denominator, zero is (0, 1).
    Frac(UPoly, UPoly),
    /// An element of ℚ(x); see [`qfrac`].
    Q(qfrac::QFrac),
}

/// An exact element of a coefficient field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    repr: Repr,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked binary arithmetic.
pub fn fe_arith(op: FieldOp, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
    if a.field != b.field {
        return Err(Error::MixedDescriptors);
    }
    Ok(match op {
        FieldOp::Add => a.add_same(b),
        FieldOp::Sub => a.add_same(&b.neg()),
        FieldOp::Mul => a.mul_same(b),
        FieldOp::Div => a.mul_same(&b.inv()?),
    })
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Scalar(s) => self.field.base().is_zero(s),
            Repr::Frac(n, _) => n.is_empty(),
            Repr::Q(q) => q.0.is_empty(),
        }
    }

    pub fn is_one(&self) -> bool {
        let k = self.field.base();
        match &self.repr {
            Repr::Scalar(s) => k.is_one(s),
            Repr::Frac(n, d) => upoly::is_one(k, n) && upoly::is_one(k, d),
            Repr::Q(q) => qfrac::is_one(q),
        }
    }

    /// The base-field constant, when the element is one.
    pub fn as_scalar(&self) -> Option<Scalar> {
        let k = self.field.base();
        match &self.repr {
            Repr::Scalar(s) => Some(s.clone()),
            Repr::Frac(n, d) if n.len() <= 1 && d.len() == 1 => {
                Some(n.first().cloned().unwrap_or_else(|| k.zero()))
            }
            Repr::Frac(..) => None,
            Repr::Q(q) => qfrac::as_rational(q).map(Scalar::Q),
        }
    }

    /// (numerator, denominator) of a rational function element, with a
    /// monic denominator.
    pub fn fraction(&self) -> Option<(UPoly, UPoly)> {
        match &self.repr {
            Repr::Frac(n, d) => Some((n.clone(), d.clone())),
            Repr::Q(q) => Some(qfrac::to_rational_polys(q)),
            Repr::Scalar(_) => None,
        }
    }

    fn add_same(&self, other: &FieldElement) -> FieldElement {
        let k = self.field.base();
        let repr = match (&self.repr, &other.repr) {
            (Repr::Scalar(a), Repr::Scalar(b)) => Repr::Scalar(k.add(a, b)),
            (Repr::Frac(a, b), Repr::Frac(c, d)) => {
                // a/b + c/d with g = gcd(b, d): only factors of g can cancel
                let g = upoly::gcd(k, b, d);
                let (bg, dg) = (upoly::div_exact(k, b, &g), upoly::div_exact(k, d, &g));
                let mut num = upoly::add(k, &upoly::mul(k, a, &dg), &upoly::mul(k, c, &bg));
                upoly::trim(k, &mut num);
                let mut g = g;
                if !num.is_empty() && g.len() > 1 {
                    let h = upoly::gcd(k, &num, &g);
                    if h.len() > 1 {
                        num = upoly::div_exact(k, &num, &h);
                        g = upoly::div_exact(k, &g, &h);
                    }
                }
                let den = upoly::mul(k, &upoly::mul(k, &bg, &dg), &g);
                let (n, d) = make_monic(k, num, den);
                Repr::Frac(n, d)
            }
            (Repr::Q(a), Repr::Q(b)) => Repr::Q(qfrac::add(a, b)),
            _ => unreachable!("mismatched representations"),
        };
        self.field.elem(repr)
    }

    fn mul_same(&self, other: &FieldElement) -> FieldElement {
        let k = self.field.base();
        let repr = match (&self.repr, &other.repr) {
            (Repr::Scalar(a), Repr::Scalar(b)) => Repr::Scalar(k.mul(a, b)),
            (Repr::Frac(a, b), Repr::Frac(c, d)) => {
                if a.is_empty() || c.is_empty() {
                    Repr::Frac(Vec::new(), vec![k.one()])
                } else {
                    // cross-cancel so the product stays reduced
                    let g1 = upoly::gcd(k, a, d);
                    let g2 = upoly::gcd(k, c, b);
                    let (a, d) = (upoly::div_exact(k, a, &g1), upoly::div_exact(k, d, &g1));
                    let (c, b) = (upoly::div_exact(k, c, &g2), upoly::div_exact(k, b, &g2));
                    let num = upoly::mul(k, &a, &c);
                    let den = upoly::mul(k, &b, &d);
                    let (n, d) = make_monic(k, num, den);
                    Repr::Frac(n, d)
                }
            }
            (Repr::Q(a), Repr::Q(b)) => Repr::Q(qfrac::mul(a, b)),
            _ => unreachable!("mismatched representations"),
        };
        self.field.elem(repr)
    }

    pub fn neg(&self) -> FieldElement {
        let k = self.field.base();
        let repr = match &self.repr {
            Repr::Scalar(a) => Repr::Scalar(k.neg(a)),
            Repr::Frac(n, d) => Repr::Frac(upoly::neg(k, n), d.clone()),
            Repr::Q(q) => Repr::Q(qfrac::neg(q)),
        };
        self.field.elem(repr)
    }

    pub fn inv(&self) -> Result<FieldElement> {
        let k = self.field.base();
        let repr = match &self.repr {
            Repr::Scalar(a) => Repr::Scalar(k.inv(a).ok_or(Error::DivisionByZero)?),
            Repr::Frac(n, d) => {
                let (n, d) = canonical_fraction(k, d.clone(), n.clone())?;
                Repr::Frac(n, d)
            }
            Repr::Q(q) => Repr::Q(qfrac::inv(q).ok_or(Error::DivisionByZero)?),
        };
        Ok(self.field.elem(repr))
    }

    pub fn pow(&self, e: i64) -> Result<FieldElement> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut b = base;
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_same(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul_same(&b);
            }
        }
        Ok(acc)
    }

    pub fn alpha(&self) -> FieldElement {
        self.field.apply_alpha(self)
    }

    pub fn delta(&self) -> FieldElement {
        self.field.apply_delta(self)
    }

    /// Re-canonicalises the payload; a no-op on every value this crate produces.
    pub fn canonicalize(&self) -> FieldElement {
        let k = self.field.base();
        match &self.repr {
            Repr::Scalar(_) => self.clone(),
            Repr::Frac(n, d) => {
                let (n, d) = canonical_fraction(k, n.clone(), d.clone()).unwrap();
                self.field.elem(Repr::Frac(n, d))
            }
            Repr::Q(q) => self.field.elem(Repr::Q(qfrac::canonical(q.0.clone(), q.1.clone()))),
        }
    }

    /// Whether the rendering is a single factor (safe before `*X^i` without parentheses).
    pub(crate) fn renders_as_factor(&self) -> bool {
        let k = self.field.base();
        match &self.repr {
            Repr::Scalar(s) => !k.needs_parens(s) && !k.is_negative(s),
            Repr::Frac(..) | Repr::Q(_) => {
                let (n, d) = self.fraction().unwrap();
                upoly::term_count(k, &n) <= 1
                    && upoly::term_count(k, &d) == 1
                    && n.last().is_none_or(|c| !k.is_negative(c) && !k.needs_parens(c))
            }
        }
    }

    /// Whether the leading sign of the rendering is '-'.
    pub(crate) fn renders_negative(&self) -> bool {
        let k = self.field.base();
        match &self.repr {
            Repr::Scalar(s) => k.is_negative(s),
            Repr::Frac(n, _) => n.last().is_some_and(|c| k.is_negative(c)),
            Repr::Q(q) => q.0.last().is_some_and(|c| c.is_negative()),
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = self.field.base();
        match &self.repr {
            Repr::Scalar(s) => write!(f, "{}", k.render(s)),
            Repr::Frac(..) | Repr::Q(_) => {
                let (n, d) = self.fraction().unwrap();
                let (n, d) = (&n, &d);
                let var = self.field.variable().unwrap();
                let num = upoly::render(k, n, var);
                if upoly::is_one(k, d) {
                    return write!(f, "{}", num);
                }
                let den = upoly::render(k, d, var);
                let num = if upoly::term_count(k, n) > 1 || num.contains('/') {
                    format!("({})", num)
                } else {
                    num
                };
                let den = if upoly::term_count(k, d) > 1 {
                    format!("({})", den)
                } else {
                    den
                };
                write!(f, "{}/{}", num, den)
            }
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl std::ops::$trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                assert!(self.field == rhs.field, "mixed coefficient fields");
                $body(self, rhs)
            }
        }
        impl std::ops::$trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                std::ops::$trait::$method(&self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &FieldElement, b: &FieldElement| a.add_same(b));
forward_binop!(Sub, sub, |a: &FieldElement, b: &FieldElement| a.add_same(&b.neg()));
forward_binop!(Mul, mul, |a: &FieldElement, b: &FieldElement| a.mul_same(b));

impl std::ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::neg(self)
    }
}

impl std::ops::Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::neg(&self)
    }
}

impl Algebra for Field {
    type Value = FieldElement;

    fn int(&self, n: &BigInt) -> FieldElement {
        self.from_bigint(n)
    }

    fn ident(&self, name: &str, pos: usize) -> Result<FieldElement> {
        if self.variable() == Some(name) {
            return Ok(self.variable_element().unwrap());
        }
        if self.base().generator_name() == Some(name) {
            return Ok(self.generator_element().unwrap());
        }
        Err(Error::parse(pos, format!("unknown identifier '{}'", name)))
    }

    fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        a + b
    }

    fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        a - b
    }

    fn neg(&self, a: FieldElement) -> FieldElement {
        -a
    }

    fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        a * b
    }

    fn div(&self, a: FieldElement, b: FieldElement, _pos: usize) -> Result<FieldElement> {
        fe_arith(FieldOp::Div, &a, &b)
    }

    fn pow(&self, a: FieldElement, e: i64, _pos: usize) -> Result<FieldElement> {
        a.pow(e)
    }
}
