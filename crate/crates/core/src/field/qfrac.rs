//! Elements of ℚ(x) as fractions of integer polynomials.
//!
//! Canonical form (n, d): n and d coprime in ℚ[x], their contents coprime in
//! ℤ, lead(d) > 0; zero is (0, 1). This is unique, so equality is payload
//! equality, and arithmetic never normalises individual rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::scalar::Scalar;
use super::upoly::UPoly;
use super::zpoly::{self, ZPoly};

pub type QFrac = (ZPoly, ZPoly);

pub fn zero() -> QFrac {
    (Vec::new(), vec![BigInt::one()])
}

pub fn is_one(a: &QFrac) -> bool {
    a.0.len() == 1 && a.0[0].is_one() && a.1.len() == 1 && a.1[0].is_one()
}

/// Normalises contents and sign of a fraction already coprime in ℚ[x].
fn fix_contents(mut n: ZPoly, mut d: ZPoly) -> QFrac {
    zpoly::trim(&mut n);
    zpoly::trim(&mut d);
    if n.is_empty() {
        return zero();
    }
    let h = zpoly::content(&n).gcd(&zpoly::content(&d));
    if !h.is_one() {
        for c in n.iter_mut().chain(d.iter_mut()) {
            *c /= &h;
        }
    }
    if d.last().unwrap().is_negative() {
        for c in n.iter_mut().chain(d.iter_mut()) {
            *c = -&*c;
        }
    }
    (n, d)
}

/// Strips the common polynomial factor, then the contents. `d` must be nonzero.
pub fn canonical(mut n: ZPoly, mut d: ZPoly) -> QFrac {
    zpoly::trim(&mut n);
    zpoly::trim(&mut d);
    assert!(!d.is_empty(), "zero denominator");
    if n.is_empty() {
        return zero();
    }
    let g = gcd(&n, &d);
    if g.len() > 1 {
        n = zpoly::div_exact(&n, &g).expect("gcd divides");
        d = zpoly::div_exact(&d, &g).expect("gcd divides");
    }
    fix_contents(n, d)
}

/// Primitive gcd of nonzero polynomials.
fn gcd(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.len() == 1 || b.len() == 1 {
        return vec![BigInt::one()];
    }
    zpoly::gcd(&zpoly::primitive(a.to_vec()), &zpoly::primitive(b.to_vec()))
}

fn div(a: &[BigInt], g: &[BigInt]) -> ZPoly {
    if g.len() == 1 {
        a.to_vec()
    } else {
        zpoly::div_exact(a, g).expect("gcd divides")
    }
}

pub fn neg(a: &QFrac) -> QFrac {
    (a.0.iter().map(|c| -c).collect(), a.1.clone())
}

pub fn add(a: &QFrac, b: &QFrac) -> QFrac {
    if a.0.is_empty() {
        return b.clone();
    }
    if b.0.is_empty() {
        return a.clone();
    }
    let g = gcd(&a.1, &b.1);
    if g.len() == 1 {
        let n = zpoly::add(&zpoly::mul(&a.0, &b.1), &zpoly::mul(&b.0, &a.1));
        return fix_contents(n, zpoly::mul(&a.1, &b.1));
    }
    let (ad, bd) = (div(&a.1, &g), div(&b.1, &g));
    let n = zpoly::add(&zpoly::mul(&a.0, &bd), &zpoly::mul(&b.0, &ad));
    if n.is_empty() {
        return zero();
    }
    let h = gcd(&n, &g);
    let n = div(&n, &h);
    let d = zpoly::mul(&zpoly::mul(&ad, &bd), &div(&g, &h));
    fix_contents(n, d)
}

pub fn mul(a: &QFrac, b: &QFrac) -> QFrac {
    if a.0.is_empty() || b.0.is_empty() {
        return zero();
    }
    let g1 = gcd(&a.0, &b.1);
    let g2 = gcd(&b.0, &a.1);
    let n = zpoly::mul(&div(&a.0, &g1), &div(&b.0, &g2));
    let d = zpoly::mul(&div(&a.1, &g2), &div(&b.1, &g1));
    fix_contents(n, d)
}

/// `None` for zero.
pub fn inv(a: &QFrac) -> Option<QFrac> {
    if a.0.is_empty() {
        return None;
    }
    Some(fix_contents(a.1.clone(), a.0.clone()))
}

pub fn derivative(a: &QFrac) -> QFrac {
    let (n, d) = a;
    if n.is_empty() {
        return zero();
    }
    // (n/d)' = (n'd - nd')/d^2
    let num = zpoly::add(
        &zpoly::mul(&zpoly::derivative(n), d),
        &zpoly::neg(&zpoly::mul(n, &zpoly::derivative(d))),
    );
    canonical(num, zpoly::mul(d, d))
}

/// f(x) ↦ f(q·x).
pub fn shift(a: &QFrac, q: &BigRational) -> QFrac {
    let (n, d) = a;
    if n.is_empty() {
        return zero();
    }
    let m = n.len().max(d.len()) - 1;
    let (u, v) = (q.numer(), q.denom());
    let upow: Vec<BigInt> = std::iter::successors(Some(BigInt::one()), |x| Some(x * u))
        .take(m + 1)
        .collect();
    let vpow: Vec<BigInt> = std::iter::successors(Some(BigInt::one()), |x| Some(x * v))
        .take(m + 1)
        .collect();
    // c_i·q^i·v^m = c_i·u^i·v^(m-i)
    let scale = |p: &ZPoly| -> ZPoly {
        p.iter()
            .enumerate()
            .map(|(i, c)| c * &upow[i] * &vpow[m - i])
            .collect()
    };
    // substitution is an automorphism, so only the contents can change
    fix_contents(scale(n), scale(d))
}

fn rational(c: &Scalar) -> &BigRational {
    match c {
        Scalar::Q(r) => r,
        _ => unreachable!("rational coefficients"),
    }
}

/// (A, l) with a = A/l, A integral.
fn clear_denominators(a: &[Scalar]) -> (ZPoly, BigInt) {
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

/// num/den with rational coefficients; `None` if den is zero.
pub fn from_rational_polys(num: &[Scalar], den: &[Scalar]) -> Option<QFrac> {
    let (n, ln) = clear_denominators(num);
    let (d, ld) = clear_denominators(den);
    let mut d: ZPoly = d.into_iter().map(|c| c * &ln).collect();
    let mut n: ZPoly = n.into_iter().map(|c| c * &ld).collect();
    zpoly::trim(&mut n);
    zpoly::trim(&mut d);
    if d.is_empty() {
        return None;
    }
    Some(canonical(n, d))
}

pub fn from_rational(c: &BigRational) -> QFrac {
    fix_contents(vec![c.numer().clone()], vec![c.denom().clone()])
}

/// The same element with a monic denominator and rational coefficients.
pub fn to_rational_polys(a: &QFrac) -> (UPoly, UPoly) {
    let lead = a.1.last().unwrap();
    let conv = |p: &ZPoly| -> UPoly {
        p.iter()
            .map(|c| Scalar::Q(BigRational::new(c.clone(), lead.clone())))
            .collect()
    };
    (conv(&a.0), conv(&a.1))
}

/// The constant value when the element lies in ℚ.
pub fn as_rational(a: &QFrac) -> Option<BigRational> {
    match (a.0.len(), a.1.len()) {
        (0, _) => Some(BigRational::zero()),
        (1, 1) => Some(BigRational::new(a.0[0].clone(), a.1[0].clone())),
        _ => None,
    }
}
