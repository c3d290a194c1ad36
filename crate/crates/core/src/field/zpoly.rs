//! Integer polynomials and their gcd by multi-modular reconstruction.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::scalar::{check_prime, fp_inv, fp_mul, fp_poly_gcd, fp_trim, reduce_bigint};

/// Lowest degree first, no trailing zeros.
pub type ZPoly = Vec<BigInt>;

pub fn trim(a: &mut ZPoly) {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
}

pub fn content(a: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in a {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Divides out the content and makes the leading coefficient positive.
pub fn primitive(mut a: ZPoly) -> ZPoly {
    trim(&mut a);
    let g = content(&a);
    if !g.is_zero() && !g.is_one() {
        for c in a.iter_mut() {
            *c /= &g;
        }
    }
    if a.last().is_some_and(|c| c.is_negative()) {
        for c in a.iter_mut() {
            *c = -&*c;
        }
    }
    a
}

pub fn add(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o += s;
    }
    trim(&mut out);
    out
}

pub fn neg(a: &[BigInt]) -> ZPoly {
    a.iter().map(|c| -c).collect()
}

pub fn derivative(a: &[BigInt]) -> ZPoly {
    let mut out: ZPoly = a.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect();
    trim(&mut out);
    out
}

pub fn mul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

/// Exact quotient a/b in ℤ[x], or `None` when b does not divide a.
pub fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    let mut r = a.to_vec();
    trim(&mut r);
    if r.is_empty() {
        return Some(Vec::new());
    }
    if r.len() < b.len() {
        return None;
    }
    let lb = b.last().unwrap();
    let mut q = vec![BigInt::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let (c, rem) = r.last().unwrap().div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        let shift = r.len() - b.len();
        for (i, y) in b.iter().enumerate() {
            r[shift + i] -= &c * y;
        }
        q[shift] = c;
        trim(&mut r);
        if r.is_empty() {
            return Some(q);
        }
    }
    None
}

fn reduce(a: &[BigInt], p: u64) -> Vec<u64> {
    let mut v: Vec<u64> = a.iter().map(|c| reduce_bigint(c, p)).collect();
    fp_trim(&mut v);
    v
}

/// Primes just below 2^31, largest first.
fn primes() -> impl Iterator<Item = u64> {
    static CACHE: OnceLock<Vec<u64>> = OnceLock::new();
    let cached = CACHE.get_or_init(|| {
        ((1u64 << 30)..(1u64 << 31))
            .rev()
            .filter(|&p| p % 2 == 1 && check_prime(p).is_ok())
            .take(64)
            .collect()
    });
    cached.iter().copied().chain(
        ((1u64 << 20)..*cached.last().unwrap())
            .rev()
            .filter(|&p| p % 2 == 1 && check_prime(p).is_ok()),
    )
}

/// Symmetric residue of c modulo m.
fn symmetric(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

/// gcd of two nonzero primitive polynomials, primitive with positive lead.
pub fn gcd(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.len() == 1 || b.len() == 1 {
        return vec![BigInt::one()];
    }
    let gamma = a.last().unwrap().gcd(b.last().unwrap());
    // image degree, accumulated coefficients, modulus
    let mut state: Option<(usize, ZPoly, BigInt)> = None;
    for p in primes() {
        let ga = reduce_bigint(&gamma, p);
        if ga == 0 || reduce_bigint(a.last().unwrap(), p) == 0 || reduce_bigint(b.last().unwrap(), p) == 0 {
            continue;
        }
        let mut g = fp_poly_gcd(&reduce(a, p), &reduce(b, p), p);
        let deg = g.len() - 1;
        if deg == 0 {
            return vec![BigInt::one()];
        }
        // scale so the image has leading coefficient gamma mod p
        let s = fp_mul(ga, fp_inv(*g.last().unwrap(), p), p);
        for c in g.iter_mut() {
            *c = fp_mul(*c, s, p);
        }
        let next = match state.take() {
            Some(kept) if deg > kept.0 => {
                // unlucky prime
                state = Some(kept);
                continue;
            }
            Some((d, h, m)) if deg == d => {
                let pm = BigInt::from(p);
                let m_inv_p = fp_inv(reduce_bigint(&m, p), p);
                let combined: ZPoly = h
                    .iter()
                    .zip(&g)
                    .map(|(hc, &gc)| {
                        // h + m·((g - h)·m⁻¹ mod p)
                        let diff = (gc + p - reduce_bigint(hc, p)) % p;
                        let t = fp_mul(diff, m_inv_p, p);
                        hc + &m * BigInt::from(t)
                    })
                    .collect();
                let m2 = &m * &pm;
                let before: ZPoly = h.iter().map(|c| symmetric(c, &m)).collect();
                let after: ZPoly = combined.iter().map(|c| symmetric(c, &m2)).collect();
                if before == after {
                    let cand = primitive(after);
                    if div_exact(a, &cand).is_some() && div_exact(b, &cand).is_some() {
                        return cand;
                    }
                }
                (d, combined, m2)
            }
            _ => (deg, g.iter().map(|&c| BigInt::from(c)).collect(), BigInt::from(p)),
        };
        state = Some(next);
    }
    unreachable!("prime supply exhausted")
}
