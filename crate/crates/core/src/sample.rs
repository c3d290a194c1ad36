//! Seeded random inputs for the property suites.
//!
//! Random values are decoded from a flat list of small integers (a genome).
//! Shrinking a failing case then means shrinking integers: genes pulled past
//! the end of the list read as zero, and gene 0 always decodes to the
//! simplest choice (zero entries, smallest size).

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::upoly;
use crate::field::{AlphaKind, BaseField, DeltaKind, ExtensionSpec, Field, FieldElement, FieldKind, Scalar};
use crate::matrix::OreMatrix;
use crate::ore::{OrePoly, OreRing};

/// Cursor over a genome.
pub struct Genes<'a> {
    genes: &'a [i64],
    at: usize,
}

impl<'a> Genes<'a> {
    pub fn new(genes: &'a [i64]) -> Self {
        Genes { genes, at: 0 }
    }

    pub fn next(&mut self) -> i64 {
        let g = self.genes.get(self.at).copied().unwrap_or(0);
        self.at += 1;
        g
    }

    /// A value in [0, m).
    pub fn below(&mut self, m: u64) -> u64 {
        self.next().unsigned_abs() % m.max(1)
    }
}

pub fn rng(seed: u64, stream: &str) -> ChaCha8Rng {
    // FNV-1a of the stream name keeps streams independent yet reproducible
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in stream.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    ChaCha8Rng::seed_from_u64(seed ^ h)
}

pub fn random_genome(rng: &mut impl Rng, len: usize) -> Vec<i64> {
    (0..len).map(|_| rng.random_range(-9..=9)).collect()
}

fn base_scalar(k: &BaseField, g: &mut Genes) -> Scalar {
    match k {
        BaseField::Prime(_) => k.from_i64(g.next()),
        BaseField::Extension(e) => {
            let w = k.generator().unwrap();
            let mut acc = k.zero();
            let mut power = k.one();
            for _ in 0..e.degree() {
                acc = k.add(&acc, &k.mul(&k.from_i64(g.next()), &power));
                power = k.mul(&power, &w);
            }
            acc
        }
        BaseField::Rationals => {
            let num = g.next();
            let den = 1 + g.below(3) as i64;
            Scalar::Q(BigRational::new(BigInt::from(num), BigInt::from(den)))
        }
    }
}

/// A random field element. Rational functions are mostly constants, otherwise
/// of numerator degree ≤ 2 with denominator 1 or of the form t + c.
pub fn field_element(field: &Field, g: &mut Genes) -> FieldElement {
    match field.kind() {
        FieldKind::Base(k) => field.from_scalar(base_scalar(k, g)),
        FieldKind::RationalFunction { base, .. } => {
            let shape = g.below(12);
            let mut num = vec![base_scalar(base, g)];
            if shape >= 8 {
                num.push(base_scalar(base, g));
            }
            if shape == 10 {
                num.push(base_scalar(base, g));
            }
            let den = if shape == 11 {
                vec![base_scalar(base, g), base.one()]
            } else {
                vec![base.one()]
            };
            upoly::trim(base, &mut num);
            field.from_fraction(num, den).expect("monic denominator")
        }
    }
}

pub fn nonzero_field_element(field: &Field, g: &mut Genes) -> FieldElement {
    let a = field_element(field, g);
    if a.is_zero() {
        field.one()
    } else {
        a
    }
}

/// A polynomial of degree exactly `deg` (or zero when `deg` is `None`).
pub fn ore_poly_of_degree(ring: &OreRing, deg: Option<usize>, g: &mut Genes) -> OrePoly {
    let Some(d) = deg else {
        return ring.zero();
    };
    let field = ring.field();
    let mut coeffs: Vec<FieldElement> = (0..d).map(|_| field_element(field, g)).collect();
    coeffs.push(nonzero_field_element(field, g));
    ring.from_coeffs(coeffs).unwrap()
}

/// A random polynomial of degree ≤ `max_deg`, possibly zero.
pub fn ore_poly(ring: &OreRing, max_deg: usize, g: &mut Genes) -> OrePoly {
    let d = g.below(max_deg as u64 + 2);
    let deg = if d == 0 { None } else { Some(d as usize - 1) };
    ore_poly_of_degree(ring, deg, g)
}

pub fn nonzero_ore_poly(ring: &OreRing, max_deg: usize, g: &mut Genes) -> OrePoly {
    let d = g.below(max_deg as u64 + 1) as usize;
    ore_poly_of_degree(ring, Some(d), g)
}

/// Square matrix with n ≤ `max_n` and entry degrees ≤ `max_deg`.
pub fn ore_matrix(ring: &OreRing, max_n: usize, max_deg: usize, g: &mut Genes) -> OreMatrix {
    let n = 1 + g.below(max_n as u64) as usize;
    ore_matrix_of_size(ring, n, max_deg, g)
}

pub fn ore_matrix_of_size(ring: &OreRing, n: usize, max_deg: usize, g: &mut Genes) -> OreMatrix {
    OreMatrix::from_fn(ring, n, |_, _| ore_poly(ring, max_deg, g))
}

/// Total budget n·(cap_A + cap_B) for a multiplicativity pair.
pub const PAIR_BUDGET: usize = 9;

/// A pair (A, B) of equal size for the multiplicativity suite.
///
/// n ≤ `max_n` and entry degrees ≤ `max_deg`, with the two degree caps
/// lowered until n·(cap_A + cap_B) ≤ [`PAIR_BUDGET`]. For n > 1 entries
/// are zero with probability 1/6; otherwise they have uniform degree up to the cap. About one pair in five
/// gets a singular factor: one row replaced by a left multiple of another,
/// or by zero when n = 1.
pub fn matrix_pair(ring: &OreRing, max_n: usize, max_deg: usize, g: &mut Genes) -> (OreMatrix, OreMatrix) {
    let n = 1 + g.below(max_n as u64) as usize;
    let mut caps = [g.below(max_deg as u64 + 1) as usize, g.below(max_deg as u64 + 1) as usize];
    while n * (caps[0] + caps[1]) > PAIR_BUDGET.max(n) {
        let big = if caps[0] >= caps[1] { 0 } else { 1 };
        caps[big] -= 1;
    }
    let singular = g.below(5) == 4;
    let which = g.below(2) as usize;
    let factor = |cap: usize, g: &mut Genes| {
        OreMatrix::from_fn(ring, n, |_, _| {
            if n > 1 && g.below(6) == 0 {
                ring.zero()
            } else {
                ore_poly_of_degree(ring, Some(g.below(cap as u64 + 1) as usize), g)
            }
        })
    };
    let mut pair = [factor(caps[0], g), factor(caps[1], g)];
    if singular {
        make_singular(&mut pair[which], g);
    }
    let [a, b] = pair;
    (a, b)
}

/// Replaces one row by a left multiple of another (by zero when n = 1).
pub fn make_singular(m: &mut OreMatrix, g: &mut Genes) {
    let n = m.n();
    let i = g.below(n as u64) as usize;
    if n == 1 {
        m.set(0, 0, m.ring().zero());
        return;
    }
    let j = (i + 1 + g.below(n as u64 - 1) as usize) % n;
    let q = ore_poly(m.ring(), 1, g);
    for c in 0..n {
        let v = &q * m.get(j, c);
        m.set(i, c, v);
    }
}

/// A product of elementary operations: a unit of M(n, R).
pub fn unit_matrix(ring: &OreRing, n: usize, max_deg: usize, steps: usize, g: &mut Genes) -> OreMatrix {
    let mut m = OreMatrix::identity(ring, n);
    for _ in 0..steps {
        if n == 1 {
            let u = nonzero_field_element(ring.field(), g);
            m.scale_row(0, &u);
            continue;
        }
        let i = g.below(n as u64) as usize;
        let j = (i + 1 + g.below(n as u64 - 1) as usize) % n;
        match g.below(4) {
            0 => m.swap_rows(i, j),
            1 => {
                let u = nonzero_field_element(ring.field(), g);
                m.scale_row(i, &u);
            }
            _ => {
                let q = ore_poly(ring, max_deg, g);
                m.add_left_multiple(i, j, &q);
            }
        }
    }
    m
}

/// The ring instances exercised by the property suites.
#[derive(Clone, Debug)]
pub struct Instance {
    pub name: &'static str,
    pub ring: OreRing,
}

fn instance(name: &'static str, kind: FieldKind, alpha: AlphaKind, delta: DeltaKind, x: &str) -> Instance {
    let field = Field::new(kind, alpha, delta).expect("catalog descriptor");
    Instance {
        name,
        ring: OreRing::new(field, x).expect("catalog ring"),
    }
}

pub fn f5_tau() -> Instance {
    instance(
        "F_5[τ]",
        FieldKind::Base(BaseField::Prime(5)),
        AlphaKind::Frobenius,
        DeltaKind::Zero,
        "τ",
    )
}

pub fn f4_tau() -> Instance {
    instance(
        "F_4[τ]",
        FieldKind::Base(BaseField::Extension(ExtensionSpec::new(2, &[1, 1, 1], "w").unwrap())),
        AlphaKind::Frobenius,
        DeltaKind::Zero,
        "τ",
    )
}

pub fn f3t_tau() -> Instance {
    instance(
        "F_3(t)[τ]",
        FieldKind::RationalFunction {
            base: BaseField::Prime(3),
            variable: "t".into(),
        },
        AlphaKind::Frobenius,
        DeltaKind::Zero,
        "τ",
    )
}

pub fn qx_derivation() -> Instance {
    instance(
        "Q(x)[∂]",
        FieldKind::RationalFunction {
            base: BaseField::Rationals,
            variable: "x".into(),
        },
        AlphaKind::Identity,
        DeltaKind::FormalDerivative,
        "∂",
    )
}

pub fn qx_qshift() -> Instance {
    instance(
        "Q(x)[σ; q=2]",
        FieldKind::RationalFunction {
            base: BaseField::Rationals,
            variable: "x".into(),
        },
        AlphaKind::QShift(BigRational::from_integer(2.into())),
        DeltaKind::Zero,
        "σ",
    )
}

/// ℚ(x)[∂] with the deliberately broken derivation.
pub fn qx_broken_derivation() -> Instance {
    instance(
        "Q(x)[∂; broken]",
        FieldKind::RationalFunction {
            base: BaseField::Rationals,
            variable: "x".into(),
        },
        AlphaKind::Identity,
        DeltaKind::BrokenDerivative,
        "∂",
    )
}

pub fn f5_commutative() -> Instance {
    instance(
        "F_5[x]",
        FieldKind::Base(BaseField::Prime(5)),
        AlphaKind::Identity,
        DeltaKind::Zero,
        "x",
    )
}

pub fn q_commutative() -> Instance {
    instance(
        "Q[x]",
        FieldKind::Base(BaseField::Rationals),
        AlphaKind::Identity,
        DeltaKind::Zero,
        "x",
    )
}

/// The five twisted instances.
pub fn twisted_instances() -> Vec<Instance> {
    vec![f5_tau(), f4_tau(), f3t_tau(), qx_derivation(), qx_qshift()]
}

pub fn commutative_instances() -> Vec<Instance> {
    vec![f5_commutative(), q_commutative()]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genome_zero_is_simplest() {
        let inst = qx_derivation();
        let m = ore_matrix(&inst.ring, 3, 2, &mut Genes::new(&[]));
        assert_eq!(m.n(), 1);
        assert!(m.get(0, 0).is_zero());
    }

    #[test]
    fn decoding_is_deterministic() {
        let mut r1 = rng(7, "x");
        let mut r2 = rng(7, "x");
        let g1 = random_genome(&mut r1, 50);
        assert_eq!(g1, random_genome(&mut r2, 50));
        assert_ne!(g1, random_genome(&mut rng(7, "y"), 50));
        for inst in twisted_instances() {
            let a = ore_matrix(&inst.ring, 3, 2, &mut Genes::new(&g1));
            let b = ore_matrix(&inst.ring, 3, 2, &mut Genes::new(&g1));
            assert_eq!(a, b);
        }
    }

    #[test]
    fn unit_matrices_are_units() {
        let inst = f4_tau();
        let genome = random_genome(&mut rng(1, "u"), 60);
        let u = unit_matrix(&inst.ring, 3, 2, 6, &mut Genes::new(&genome));
        assert_eq!(crate::matrix::deg_det(&u).value, crate::matrix::DegDet::Finite(0));
    }
}
