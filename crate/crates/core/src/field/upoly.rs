//! Dense univariate polynomials over a [`BaseField`], lowest degree first, no trailing zeros.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use super::scalar::{fp_poly_divrem, fp_poly_gcd, BaseField, Scalar};
use super::zpoly::{self, ZPoly};

pub type UPoly = Vec<Scalar>;

pub fn trim(k: &BaseField, a: &mut UPoly) {
    while a.last().is_some_and(|c| k.is_zero(c)) {
        a.pop();
    }
}

pub fn constant(k: &BaseField, c: Scalar) -> UPoly {
    let mut v = vec![c];
    trim(k, &mut v);
    v
}

pub fn add(k: &BaseField, a: &[Scalar], b: &[Scalar]) -> UPoly {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o = k.add(o, s);
    }
    trim(k, &mut out);
    out
}

pub fn neg(k: &BaseField, a: &[Scalar]) -> UPoly {
    a.iter().map(|c| k.neg(c)).collect()
}

pub fn sub(k: &BaseField, a: &[Scalar], b: &[Scalar]) -> UPoly {
    add(k, a, &neg(k, b))
}

pub fn scale(k: &BaseField, c: &Scalar, a: &[Scalar]) -> UPoly {
    let mut out: UPoly = a.iter().map(|x| k.mul(c, x)).collect();
    trim(k, &mut out);
    out
}

pub fn mul(k: &BaseField, a: &[Scalar], b: &[Scalar]) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    match k {
        BaseField::Prime(p) => return from_fp(fp_mul_poly(&to_fp(a), &to_fp(b), *p)),
        BaseField::Rationals => return mul_rationals(a, b),
        BaseField::Extension(_) => {}
    }
    let mut out = vec![k.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if k.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = k.add(&out[i + j], &k.mul(x, y));
        }
    }
    trim(k, &mut out);
    out
}

/// Euclidean division; `b` must be nonzero.
pub fn divrem(k: &BaseField, a: &[Scalar], b: &[Scalar]) -> (UPoly, UPoly) {
    assert!(!b.is_empty(), "polynomial division by zero");
    if let BaseField::Prime(p) = k {
        let (q, r) = fp_poly_divrem(&to_fp(a), &to_fp(b), *p);
        return (from_fp(q), from_fp(r));
    }
    let mut r = a.to_vec();
    trim(k, &mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead_inv = k.inv(b.last().unwrap()).unwrap();
    let mut q = vec![k.zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = k.mul(r.last().unwrap(), &lead_inv);
        for (i, y) in b.iter().enumerate() {
            r[shift + i] = k.sub(&r[shift + i], &k.mul(&c, y));
        }
        q[shift] = c;
        // the leading coefficient cancels exactly
        r.pop();
        trim(k, &mut r);
    }
    trim(k, &mut q);
    (q, r)
}

/// Exact quotient of `a` by `b`, assuming `b` divides `a`.
pub fn div_exact(k: &BaseField, a: &[Scalar], b: &[Scalar]) -> UPoly {
    if b.len() == 1 && k.is_one(&b[0]) {
        return a.to_vec();
    }
    if matches!(k, BaseField::Rationals) && !a.is_empty() {
        return div_exact_rationals(a, b);
    }
    let (q, r) = divrem(k, a, b);
    debug_assert!(r.is_empty(), "inexact polynomial division");
    q
}

pub fn monic(k: &BaseField, a: &[Scalar]) -> UPoly {
    match a.last() {
        None => Vec::new(),
        Some(lead) => {
            let inv = k.inv(lead).unwrap();
            scale(k, &inv, a)
        }
    }
}

/// Monic gcd (zero when both inputs are zero).
pub fn gcd(k: &BaseField, a: &[Scalar], b: &[Scalar]) -> UPoly {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    trim(k, &mut x);
    trim(k, &mut y);
    if x.len() == 1 && !y.is_empty() || y.len() == 1 && !x.is_empty() {
        return vec![k.one()];
    }
    if x.is_empty() || y.is_empty() {
        return monic(k, if x.is_empty() { &y } else { &x });
    }
    match k {
        BaseField::Rationals => return gcd_rationals(&x, &y),
        BaseField::Prime(p) => {
            let g = fp_poly_gcd(&to_fp(&x), &to_fp(&y), *p);
            return monic(k, &from_fp(g));
        }
        BaseField::Extension(_) => {}
    }
    while !y.is_empty() {
        let (_, r) = divrem(k, &x, &y);
        x = monic(k, &std::mem::replace(&mut y, r));
    }
    monic(k, &x)
}

fn rational(c: &Scalar) -> &BigRational {
    match c {
        Scalar::Q(r) => r,
        _ => unreachable!("rational coefficients"),
    }
}

/// (A, l) with a = A/l, A integral and l the lcm of the denominators.
fn to_integer(a: &[Scalar]) -> (ZPoly, BigInt) {
    let l = a.iter().fold(BigInt::one(), |l, c| l.lcm(rational(c).denom()));
    let ints = a
        .iter()
        .map(|c| {
            let r = rational(c);
            r.numer() * (&l / r.denom())
        })
        .collect();
    (ints, l)
}

fn to_primitive_integer(a: &[Scalar]) -> ZPoly {
    zpoly::primitive(to_integer(a).0)
}

fn from_integer(a: ZPoly, den: &BigInt) -> UPoly {
    let mut out: UPoly = a
        .into_iter()
        .map(|c| Scalar::Q(BigRational::new(c, den.clone())))
        .collect();
    trim(&BaseField::Rationals, &mut out);
    out
}

fn mul_rationals(a: &[Scalar], b: &[Scalar]) -> UPoly {
    let (x, lx) = to_integer(a);
    let (y, ly) = to_integer(b);
    from_integer(zpoly::mul(&x, &y), &(lx * ly))
}

fn div_exact_rationals(a: &[Scalar], b: &[Scalar]) -> UPoly {
    let (x, lx) = to_integer(a);
    let (y, ly) = to_integer(b);
    let cy = zpoly::content(&y);
    let yp: ZPoly = y.iter().map(|c| c / &cy).collect();
    // a/b = (x/lx)/((cy·yp)/ly) = (x/yp)·ly/(lx·cy)
    let q = zpoly::div_exact(&x, &yp).expect("exact polynomial division");
    let scale = BigRational::new(ly, lx * cy);
    let mut out: UPoly = q
        .into_iter()
        .map(|c| Scalar::Q(BigRational::from_integer(c) * &scale))
        .collect();
    trim(&BaseField::Rationals, &mut out);
    out
}

fn to_fp(a: &[Scalar]) -> Vec<u64> {
    a.iter()
        .map(|c| match c {
            Scalar::Fp(x) => *x,
            _ => unreachable!("prime-field coefficients"),
        })
        .collect()
}

fn from_fp(a: Vec<u64>) -> UPoly {
    let mut out: UPoly = a.into_iter().map(Scalar::Fp).collect();
    while matches!(out.last(), Some(Scalar::Fp(0))) {
        out.pop();
    }
    out
}

fn fp_mul_poly(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![0u128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            acc[i + j] += (x * y) as u128;
        }
    }
    acc.into_iter().map(|c| (c % p as u128) as u64).collect()
}

fn gcd_rationals(a: &[Scalar], b: &[Scalar]) -> UPoly {
    let g = zpoly::gcd(&to_primitive_integer(a), &to_primitive_integer(b));
    let lead = BigRational::from_integer(g.last().unwrap().clone());
    g.into_iter()
        .map(|c| Scalar::Q(BigRational::from_integer(c) / &lead))
        .collect()
}

pub fn is_one(k: &BaseField, a: &[Scalar]) -> bool {
    a.len() == 1 && k.is_one(&a[0])
}

pub fn derivative(k: &BaseField, a: &[Scalar]) -> UPoly {
    let mut out: UPoly = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| k.mul(&k.from_i64(i as i64), c))
        .collect();
    trim(k, &mut out);
    out
}

/// a(t) ↦ a(c·t).
pub fn substitute_scaled(k: &BaseField, a: &[Scalar], c: &Scalar) -> UPoly {
    let mut power = k.one();
    let mut out = Vec::with_capacity(a.len());
    for coef in a {
        out.push(k.mul(coef, &power));
        power = k.mul(&power, c);
    }
    trim(k, &mut out);
    out
}

/// a(t) ↦ a(t)^p in characteristic p: coefficients raised to p, exponents multiplied by p.
pub fn frobenius(k: &BaseField, a: &[Scalar]) -> UPoly {
    let p = k.characteristic() as usize;
    if a.is_empty() {
        return Vec::new();
    }
    let mut out = vec![k.zero(); (a.len() - 1) * p + 1];
    for (i, c) in a.iter().enumerate() {
        out[i * p] = k.frobenius(c);
    }
    trim(k, &mut out);
    out
}

/// Renders `a` in descending powers of `var`.
pub fn render(k: &BaseField, a: &[Scalar], var: &str) -> String {
    let mut out = String::new();
    for (i, c) in a.iter().enumerate().rev() {
        if k.is_zero(c) {
            continue;
        }
        let negative = k.is_negative(c);
        let abs = if negative { k.neg(c) } else { c.clone() };
        let body = if i == 0 {
            if k.needs_parens(&abs) && !out.is_empty() {
                format!("({})", k.render(&abs))
            } else {
                k.render(&abs)
            }
        } else {
            let pow = if i == 1 {
                var.to_string()
            } else {
                format!("{}^{}", var, i)
            };
            if k.is_one(&abs) {
                pow
            } else if k.needs_parens(&abs) {
                format!("({})*{}", k.render(&abs), pow)
            } else {
                format!("{}*{}", k.render(&abs), pow)
            }
        };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Number of nonzero terms.
pub fn term_count(k: &BaseField, a: &[Scalar]) -> usize {
    a.iter().filter(|c| !k.is_zero(c)).count()
}
