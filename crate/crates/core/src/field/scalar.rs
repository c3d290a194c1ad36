//! Scalars of the base fields: prime fields F_p, extensions F_p[w]/(f) and ℚ.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub const MAX_PRIME: u64 = 1 << 31;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Fp(u64),
    /// Coefficients of 1, w, ..., w^(m-1).
    Ext(Vec<u64>),
    Q(BigRational),
}

/// F_p[w]/(modulus) with a verified irreducible monic modulus.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtensionSpec {
    p: u64,
    /// Monic, lowest degree first, length m + 1.
    modulus: Vec<u64>,
    generator: String,
}

impl ExtensionSpec {
    pub fn new(p: u64, modulus: &[i64], generator: &str) -> Result<Self> {
        check_prime(p)?;
        let mut f: Vec<u64> = modulus.iter().map(|&c| reduce_i64(c, p)).collect();
        fp_trim(&mut f);
        if f.len() < 2 {
            return Err(Error::InvalidDescriptor(
                "extension modulus must have degree at least 1".into(),
            ));
        }
        let lead_inv = fp_inv(*f.last().unwrap(), p);
        for c in f.iter_mut() {
            *c = fp_mul(*c, lead_inv, p);
        }
        if !fp_poly_is_irreducible(&f, p) {
            return Err(Error::InvalidDescriptor(format!(
                "modulus {:?} is reducible over F_{}",
                f, p
            )));
        }
        if generator.is_empty() {
            return Err(Error::InvalidDescriptor("empty generator name".into()));
        }
        Ok(ExtensionSpec {
            p,
            modulus: f,
            generator: generator.to_string(),
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn generator(&self) -> &str {
        &self.generator
    }

    fn reduce(&self, mut a: Vec<u64>) -> Vec<u64> {
        let m = self.degree();
        let p = self.p;
        while a.len() > m {
            let top = a.pop().unwrap();
            if top != 0 {
                let shift = a.len() - m;
                for (i, &c) in self.modulus[..m].iter().enumerate() {
                    a[shift + i] = fp_sub(a[shift + i], fp_mul(top, c, p), p);
                }
            }
        }
        a.resize(m, 0);
        a
    }

    fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        self.reduce(fp_poly_mul(a, b, self.p))
    }

    fn inv(&self, a: &[u64]) -> Option<Vec<u64>> {
        let mut a = a.to_vec();
        fp_trim(&mut a);
        if a.is_empty() {
            return None;
        }
        // extended Euclid: track s with s*a ≡ r (mod f)
        let p = self.p;
        let (mut r0, mut r1) = (self.modulus.clone(), a);
        let (mut s0, mut s1): (Vec<u64>, Vec<u64>) = (Vec::new(), vec![1]);
        while !r1.is_empty() {
            let (q, r) = fp_poly_divrem(&r0, &r1, p);
            let s2 = fp_poly_sub(&s0, &fp_poly_mul(&q, &s1, p), p);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is a nonzero constant since the modulus is irreducible
        let c = fp_inv(r0[0], p);
        let s: Vec<u64> = s0.iter().map(|&x| fp_mul(x, c, p)).collect();
        Some(self.reduce(s))
    }
}

/// The coefficient field underlying every descriptor (the constants of a rational function field).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BaseField {
    Prime(u64),
    Extension(ExtensionSpec),
    Rationals,
}

impl BaseField {
    pub fn prime(p: u64) -> Result<Self> {
        check_prime(p)?;
        Ok(BaseField::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            BaseField::Prime(p) => *p,
            BaseField::Extension(e) => e.p,
            BaseField::Rationals => 0,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            BaseField::Prime(_) => Scalar::Fp(0),
            BaseField::Extension(e) => Scalar::Ext(vec![0; e.degree()]),
            BaseField::Rationals => Scalar::Q(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self {
            BaseField::Prime(p) => Scalar::Fp(reduce_bigint(n, *p)),
            BaseField::Extension(e) => {
                let mut v = vec![0; e.degree()];
                v[0] = reduce_bigint(n, e.p);
                Scalar::Ext(v)
            }
            BaseField::Rationals => Scalar::Q(BigRational::from_integer(n.clone())),
        }
    }

    /// The generator w of an extension field.
    pub fn generator(&self) -> Option<Scalar> {
        match self {
            BaseField::Extension(e) => {
                let mut v = vec![0; e.degree()];
                if e.degree() == 1 {
                    // degree-one modulus w + c: w = -c
                    v[0] = fp_neg(e.modulus[0], e.p);
                } else {
                    v[1] = 1;
                }
                Some(Scalar::Ext(v))
            }
            _ => None,
        }
    }

    pub fn generator_name(&self) -> Option<&str> {
        match self {
            BaseField::Extension(e) => Some(&e.generator),
            _ => None,
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Fp(x) => *x == 0,
            Scalar::Ext(v) => v.iter().all(|&c| c == 0),
            Scalar::Q(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        *a == self.one()
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (BaseField::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp(fp_add(*x, *y, *p)),
            (BaseField::Extension(e), Scalar::Ext(x), Scalar::Ext(y)) => Scalar::Ext(
                x.iter().zip(y).map(|(&s, &t)| fp_add(s, t, e.p)).collect(),
            ),
            (BaseField::Rationals, Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(x + y),
            _ => unreachable!("scalar does not belong to its base field"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (BaseField::Prime(p), Scalar::Fp(x)) => Scalar::Fp(fp_neg(*x, *p)),
            (BaseField::Extension(e), Scalar::Ext(x)) => {
                Scalar::Ext(x.iter().map(|&s| fp_neg(s, e.p)).collect())
            }
            (BaseField::Rationals, Scalar::Q(x)) => Scalar::Q(-x),
            _ => unreachable!("scalar does not belong to its base field"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (BaseField::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp(fp_mul(*x, *y, *p)),
            (BaseField::Extension(e), Scalar::Ext(x), Scalar::Ext(y)) => Scalar::Ext(e.mul(x, y)),
            (BaseField::Rationals, Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(x * y),
            _ => unreachable!("scalar does not belong to its base field"),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if self.is_zero(a) {
            return None;
        }
        Some(match (self, a) {
            (BaseField::Prime(p), Scalar::Fp(x)) => Scalar::Fp(fp_inv(*x, *p)),
            (BaseField::Extension(e), Scalar::Ext(x)) => Scalar::Ext(e.inv(x)?),
            (BaseField::Rationals, Scalar::Q(x)) => Scalar::Q(x.recip()),
            _ => unreachable!("scalar does not belong to its base field"),
        })
    }

    pub fn pow(&self, a: &Scalar, mut e: u64) -> Scalar {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// a ↦ a^p; only meaningful in positive characteristic.
    pub fn frobenius(&self, a: &Scalar) -> Scalar {
        match self {
            BaseField::Prime(_) => a.clone(),
            BaseField::Extension(e) => self.pow(a, e.p),
            BaseField::Rationals => unreachable!("frobenius in characteristic zero"),
        }
    }

    /// Plain-text rendering in the element grammar.
    pub fn render(&self, a: &Scalar) -> String {
        match (self, a) {
            (BaseField::Prime(_), Scalar::Fp(x)) => x.to_string(),
            (BaseField::Extension(e), Scalar::Ext(v)) => {
                let terms: Vec<(usize, String)> = v
                    .iter()
                    .enumerate()
                    .rev()
                    .filter(|(_, &c)| c != 0)
                    .map(|(i, &c)| (i, c.to_string()))
                    .collect();
                if terms.is_empty() {
                    return "0".into();
                }
                terms
                    .iter()
                    .map(|(i, c)| monomial(c, &e.generator, *i))
                    .collect::<Vec<_>>()
                    .join(" + ")
            }
            (BaseField::Rationals, Scalar::Q(q)) => render_rational(q),
            _ => unreachable!("scalar does not belong to its base field"),
        }
    }

    /// Whether a rendered coefficient must be parenthesised before `*var^i`.
    pub fn needs_parens(&self, a: &Scalar) -> bool {
        match (self, a) {
            (BaseField::Extension(_), Scalar::Ext(v)) => v.iter().filter(|&&c| c != 0).count() > 1,
            _ => false,
        }
    }

    /// Sign used by renderers: only ℚ has negative scalars.
    pub fn is_negative(&self, a: &Scalar) -> bool {
        matches!(a, Scalar::Q(q) if q.is_negative())
    }
}

pub(crate) fn render_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn monomial(coef: &str, var: &str, i: usize) -> String {
    match (coef, i) {
        (c, 0) => c.to_string(),
        ("1", 1) => var.to_string(),
        ("1", _) => format!("{}^{}", var, i),
        (c, 1) => format!("{}*{}", c, var),
        (c, _) => format!("{}*{}^{}", c, var, i),
    }
}

pub fn check_prime(p: u64) -> Result<()> {
    if !(2..=MAX_PRIME).contains(&p) {
        return Err(Error::InvalidDescriptor(format!(
            "characteristic {} outside [2, 2^31]",
            p
        )));
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return Err(Error::InvalidDescriptor(format!("{} is not prime", p)));
        }
        d += 1;
    }
    Ok(())
}

pub(crate) fn reduce_i64(c: i64, p: u64) -> u64 {
    c.rem_euclid(p as i64) as u64
}

pub(crate) fn reduce_bigint(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

pub(super) fn fp_add(a: u64, b: u64, p: u64) -> u64 {
    (a + b) % p
}

pub(super) fn fp_neg(a: u64, p: u64) -> u64 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

pub(super) fn fp_sub(a: u64, b: u64, p: u64) -> u64 {
    fp_add(a, fp_neg(b, p), p)
}

pub(super) fn fp_mul(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

pub(super) fn fp_pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = fp_mul(acc, a, p);
        }
        a = fp_mul(a, a, p);
        e >>= 1;
    }
    acc
}

pub(super) fn fp_inv(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    fp_pow(a, p - 2, p)
}

pub(super) fn fp_trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub(super) fn fp_poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = fp_add(out[i + j], fp_mul(x, y, p), p);
        }
    }
    fp_trim(&mut out);
    out
}

pub(super) fn fp_poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, &x) in a.iter().enumerate() {
        out[i] = x;
    }
    for (i, &y) in b.iter().enumerate() {
        out[i] = fp_sub(out[i], y, p);
    }
    fp_trim(&mut out);
    out
}

pub(super) fn fp_poly_divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut r = a.to_vec();
    fp_trim(&mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead_inv = fp_inv(*b.last().unwrap(), p);
    let mut q = vec![0u64; r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = fp_mul(*r.last().unwrap(), lead_inv, p);
        q[shift] = c;
        let neg_c = fp_neg(c, p);
        for (x, &y) in r[shift..].iter_mut().zip(b) {
            *x = (*x + neg_c * y) % p;
        }
        fp_trim(&mut r);
    }
    fp_trim(&mut q);
    (q, r)
}

pub(super) fn fp_poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    fp_trim(&mut x);
    fp_trim(&mut y);
    while !y.is_empty() {
        let (_, r) = fp_poly_divrem(&x, &y, p);
        x = std::mem::replace(&mut y, r);
    }
    x
}

pub(super) fn fp_poly_powmod(base: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = fp_poly_divrem(base, f, p).1;
    while e > 0 {
        if e & 1 == 1 {
            acc = fp_poly_divrem(&fp_poly_mul(&acc, &b, p), f, p).1;
        }
        b = fp_poly_divrem(&fp_poly_mul(&b, &b, p), f, p).1;
        e >>= 1;
    }
    acc
}

/// Ben-Or test: a monic f of degree m is irreducible iff gcd(f, w^(p^i) - w) = 1 for 1 ≤ i ≤ m/2.
pub(super) fn fp_poly_is_irreducible(f: &[u64], p: u64) -> bool {
    let m = f.len() - 1;
    let w = vec![0u64, 1];
    let mut h = w.clone();
    for _ in 0..m / 2 {
        h = fp_poly_powmod(&h, p, f, p);
        let g = fp_poly_gcd(f, &fp_poly_sub(&h, &w, p), p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}
