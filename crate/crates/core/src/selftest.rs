//! Seeded randomized property suites over every ring instance.
//!
//! Each case decodes its inputs from a genome drawn from a stream seeded by
//! (seed, suite, instance), so a report is a pure function of the seed and
//! the caps. Cases of one suite run in parallel and are collected in order.
//! The run stops at the first failing suite, whose lowest failing case is
//! shrunk greedily on its genome before being reported.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::endo::{default_samples, evaluate_t_poly, kernel_rank, t_module_rank};
use crate::error::Error;
use crate::field::{fe_arith, AlphaKind, BaseField, DeltaKind, Field, FieldElement, FieldKind, FieldOp};
use crate::matrix::{
    commutative_oracle, deg_det, invert, mat_mul, quotient_dim_oracle, row_echelon, DegDet, OracleCaps,
    OracleValue, OreMatrix, RowOp,
};
use crate::ode::{assemble_system, companion_system, solution_dimension, FieldMatrix};
use crate::ore::{left_divmod, OrePoly, OreRing};
use crate::sample::{self, Genes, Instance};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    pub max_n: usize,
    pub max_deg: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_n: 4, max_deg: 3 }
    }
}

/// A deliberately planted defect.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    /// Swap the derivation of Q(x)[∂] for a ↦ a' + a.
    BrokenTwist,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SelftestConfig {
    pub seed: u64,
    pub caps: Caps,
    pub fault: Option<Fault>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub instance: String,
    pub checks: u64,
    pub passed: bool,
    /// Cases of note, e.g. pairs with a singular factor.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub tags: BTreeMap<String, u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub suite: String,
    pub instance: String,
    pub case: usize,
    /// The shrunk genome; decoding it reproduces the failure.
    pub genome: Vec<i64>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelftestReport {
    pub seed: u64,
    pub caps: Caps,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fault: Option<Fault>,
    pub suites: Vec<SuiteReport>,
    pub total_checks: u64,
    pub passed: bool,
    pub counterexample: Option<Counterexample>,
}

/// Ok(tag) on success, Err(detail) on failure.
type CaseResult = std::result::Result<Option<&'static str>, String>;
type Check = Box<dyn Fn(usize, &[i64]) -> CaseResult + Send + Sync>;

struct Suite {
    name: &'static str,
    instance: String,
    cases: usize,
    genome_len: usize,
    check: Check,
}

fn suite(
    name: &'static str,
    instance: &str,
    cases: usize,
    genome_len: usize,
    check: impl Fn(usize, &[i64]) -> CaseResult + Send + Sync + 'static,
) -> Suite {
    Suite {
        name,
        instance: instance.to_string(),
        cases,
        genome_len,
        check: Box::new(check),
    }
}

fn run_case(check: &Check, index: usize, genome: &[i64]) -> CaseResult {
    match catch_unwind(AssertUnwindSafe(|| check(index, genome))) {
        Ok(r) => r,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "unknown panic".into());
            Err(format!("panic: {}", msg))
        }
    }
}

const SHRINK_BUDGET: usize = 300;

/// Greedy shrinking: zero the tail, then zero, halve or step single genes
/// toward zero, as long as the case keeps failing.
fn shrink(check: &Check, index: usize, genome: &[i64], detail: String) -> (Vec<i64>, String) {
    let mut best = genome.to_vec();
    let mut detail = detail;
    let mut budget = SHRINK_BUDGET;
    let try_candidate = |cand: Vec<i64>, best: &mut Vec<i64>, detail: &mut String, budget: &mut usize| -> bool {
        if *budget == 0 || cand == *best {
            return false;
        }
        *budget -= 1;
        if let Err(d) = run_case(check, index, &cand) {
            *best = cand;
            *detail = d;
            true
        } else {
            false
        }
    };
    'outer: while budget > 0 {
        while best.last() == Some(&0) {
            best.pop();
        }
        let len = best.len();
        let mut cut = len / 2;
        while cut > 0 {
            let cand = best[..len - cut].to_vec();
            if try_candidate(cand, &mut best, &mut detail, &mut budget) {
                continue 'outer;
            }
            cut /= 2;
        }
        for i in 0..best.len() {
            if best[i] == 0 {
                continue;
            }
            for v in [0, best[i] / 2, best[i] - best[i].signum(), best[i].signum()] {
                if v == best[i] {
                    continue;
                }
                let mut cand = best.clone();
                cand[i] = v;
                if try_candidate(cand, &mut best, &mut detail, &mut budget) {
                    continue 'outer;
                }
            }
        }
        break;
    }
    while best.last() == Some(&0) {
        best.pop();
    }
    (best, detail)
}

fn run_suite(seed: u64, s: &Suite) -> (SuiteReport, Option<Counterexample>) {
    let mut rng = sample::rng(seed, &format!("{}/{}", s.name, s.instance));
    let genomes: Vec<Vec<i64>> = (0..s.cases).map(|_| sample::random_genome(&mut rng, s.genome_len)).collect();
    let results: Vec<CaseResult> = genomes
        .par_iter()
        .enumerate()
        .map(|(i, g)| run_case(&s.check, i, g))
        .collect();
    let mut tags = BTreeMap::new();
    let mut failure = None;
    for (i, r) in results.into_iter().enumerate() {
        match r {
            Ok(Some(tag)) => *tags.entry(tag.to_string()).or_insert(0) += 1,
            Ok(None) => {}
            Err(detail) => {
                failure = Some((i, detail));
                break;
            }
        }
    }
    let counterexample = failure.map(|(i, detail)| {
        let (genome, detail) = shrink(&s.check, i, &genomes[i], detail);
        Counterexample {
            suite: s.name.to_string(),
            instance: s.instance.clone(),
            case: i,
            genome,
            detail,
        }
    });
    let report = SuiteReport {
        suite: s.name.to_string(),
        instance: s.instance.clone(),
        checks: s.cases as u64,
        passed: counterexample.is_none(),
        tags,
    };
    (report, counterexample)
}

pub fn run(config: &SelftestConfig) -> SelftestReport {
    let mut reports = Vec::new();
    let mut counterexample = None;
    for s in suites(config) {
        let (report, cx) = run_suite(config.seed, &s);
        reports.push(report);
        if cx.is_some() {
            counterexample = cx;
            break;
        }
    }
    SelftestReport {
        seed: config.seed,
        caps: config.caps,
        fault: config.fault,
        total_checks: reports.iter().map(|r| r.checks).sum(),
        passed: counterexample.is_none(),
        suites: reports,
        counterexample,
    }
}

/// The twisted instances, with the faulty derivation swapped in on request.
fn twisted(config: &SelftestConfig) -> Vec<Instance> {
    sample::twisted_instances()
        .into_iter()
        .map(|inst| match config.fault {
            Some(Fault::BrokenTwist) if inst.name == sample::qx_derivation().name => sample::qx_broken_derivation(),
            _ => inst,
        })
        .collect()
}

fn all_instances(config: &SelftestConfig) -> Vec<Instance> {
    let mut v = twisted(config);
    v.extend(sample::commutative_instances());
    v
}

fn suites(config: &SelftestConfig) -> Vec<Suite> {
    let caps = config.caps;
    let mut out = Vec::new();
    let all = all_instances(config);
    for inst in &all {
        field_suites(&mut out, inst);
    }
    let poly_deg = (caps.max_deg + 1).min(4);
    for inst in &all {
        ring_suites(&mut out, inst, poly_deg);
    }
    let small_n = caps.max_n.min(3);
    for inst in &twisted(config) {
        let ring = inst.ring.clone();
        let deg = caps.max_deg.min(2);
        out.push(suite("oracle_agreement", inst.name, 250, 160, move |_, g| {
            oracle_agreement(&ring, small_n, deg, g)
        }));
    }
    for inst in sample::commutative_instances() {
        let ring = inst.ring.clone();
        let (n, deg) = (caps.max_n, caps.max_deg);
        out.push(suite("commutative_oracle", inst.name, 200, 300, move |_, g| {
            commutative_agreement(&ring, n, deg, g)
        }));
    }
    for inst in &all {
        matrix_suites(&mut out, inst, small_n, caps.max_deg);
    }
    endo_suites(&mut out, small_n, caps.max_deg);
    for inst in twisted(config) {
        if matches!(inst.ring.field().kind(), FieldKind::RationalFunction { base: BaseField::Rationals, .. }) {
            ode_suites(&mut out, &inst, small_n);
        }
    }
    out
}

fn show(m: &OreMatrix) -> String {
    m.to_string()
}

fn ensure(ok: bool, detail: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(detail())
    }
}

// ---- coefficient fields

fn field_suites(out: &mut Vec<Suite>, inst: &Instance) {
    let name = inst.name;
    let field = inst.ring.field().clone();
    let triple = |field: &Field, g: &[i64]| {
        let mut g = Genes::new(g);
        let a = sample::field_element(field, &mut g);
        let b = sample::field_element(field, &mut g);
        let c = sample::field_element(field, &mut g);
        (a, b, c)
    };
    let f = field.clone();
    out.push(suite("field_axioms", name, 1000, 30, move |_, g| {
        let (a, b, c) = triple(&f, g);
        let show3 = || format!("a = {}, b = {}, c = {}", a, b, c);
        ensure(&a + &b == &b + &a && &a * &b == &b * &a, || format!("commutativity: {}", show3()))?;
        ensure(&(&a + &b) + &c == &a + &(&b + &c), || format!("additive associativity: {}", show3()))?;
        ensure(&(&a * &b) * &c == &a * &(&b * &c), || format!("associativity: {}", show3()))?;
        ensure(&a * &(&b + &c) == &(&a * &b) + &(&a * &c), || format!("distributivity: {}", show3()))?;
        ensure((&a - &a).is_zero(), || format!("a - a: {}", show3()))?;
        if !a.is_zero() {
            let inv = a.inv().map_err(|e| e.to_string())?;
            ensure((&a * &inv).is_one(), || format!("a * a^-1: {}", show3()))?;
        }
        match fe_arith(FieldOp::Div, &b, &a) {
            Ok(q) => ensure(!a.is_zero() && &q * &a == b, || format!("(b / a) * a: {}", show3()))?,
            Err(Error::DivisionByZero) => ensure(a.is_zero(), || format!("spurious DivisionByZero: {}", show3()))?,
            Err(e) => return Err(format!("{}: {}", e, show3())),
        }
        Ok(None)
    }));
    let f = field.clone();
    out.push(suite("twist_homomorphism", name, 1000, 30, move |_, g| {
        let (a, b, _) = triple(&f, g);
        ensure((&a + &b).alpha() == &a.alpha() + &b.alpha(), || format!("α(a + b): a = {}, b = {}", a, b))?;
        ensure((&a * &b).alpha() == &a.alpha() * &b.alpha(), || format!("α(ab): a = {}, b = {}", a, b))?;
        ensure(f.one().alpha().is_one(), || "α(1) ≠ 1".into())?;
        Ok(None)
    }));
    let f = field.clone();
    out.push(suite("leibniz", name, 1000, 30, move |_, g| {
        let (a, b, _) = triple(&f, g);
        let lhs = (&a * &b).delta();
        let rhs = &(&a.delta() * &b.alpha()) + &(&a * &b.delta());
        ensure(lhs == rhs, || format!("δ(ab) = {} but δ(a)α(b) + aδ(b) = {}; a = {}, b = {}", lhs, rhs, a, b))?;
        ensure((&a + &b).delta() == &a.delta() + &b.delta(), || format!("δ(a + b): a = {}, b = {}", a, b))?;
        ensure(f.one().delta().is_zero(), || format!("δ(1) = {}", f.one().delta()))?;
        Ok(None)
    }));
    let f = field.clone();
    out.push(suite("canonical_form", name, 1000, 30, move |_, g| {
        let (a, b, c) = triple(&f, g);
        let mut outputs = vec![&(&a * &b) + &c, a.alpha(), a.delta()];
        if !c.is_zero() {
            outputs.push(fe_arith(FieldOp::Div, &a, &c).map_err(|e| e.to_string())?);
        }
        for v in outputs {
            ensure(v.canonicalize() == v, || format!("not canonical: {}", v))?;
        }
        Ok(None)
    }));
    let f = field;
    out.push(suite("round_trip", name, 1000, 30, move |_, g| {
        let (a, b, c) = triple(&f, g);
        let mut values = vec![a.clone(), &(&a * &b) - &c];
        if !c.is_zero() {
            values.push(fe_arith(FieldOp::Div, &a, &c).map_err(|e| e.to_string())?);
        }
        for v in values {
            let text = v.to_string();
            let back = f.parse(&text).map_err(|e| format!("'{}' does not parse: {}", text, e))?;
            ensure(back == v, || format!("'{}' parses to {}", text, back))?;
        }
        Ok(None)
    }));
}

// ---- skew polynomials

fn deg(p: &OrePoly) -> Option<usize> {
    p.degree().finite()
}

/// Ordinary polynomial product by convolution, for the commutative case.
fn convolve(ring: &OreRing, a: &OrePoly, b: &OrePoly) -> OrePoly {
    let field = ring.field();
    if a.is_zero() || b.is_zero() {
        return ring.zero();
    }
    let (x, y) = (a.coeffs(), b.coeffs());
    let mut c = vec![field.zero(); x.len() + y.len() - 1];
    for (i, u) in x.iter().enumerate() {
        for (j, v) in y.iter().enumerate() {
            c[i + j] = &c[i + j] + &(u * v);
        }
    }
    ring.from_coeffs(c).expect("same field")
}

fn ring_suites(out: &mut Vec<Suite>, inst: &Instance, poly_deg: usize) {
    let name = inst.name;
    let r = inst.ring.clone();
    out.push(suite("ring_axioms", name, 500, 60, move |_, g| {
        let mut g = Genes::new(g);
        let p = sample::ore_poly(&r, poly_deg, &mut g);
        let q = sample::ore_poly(&r, poly_deg, &mut g);
        let s = sample::ore_poly(&r, poly_deg, &mut g);
        let show3 = || format!("p = {}, q = {}, s = {}", p, q, s);
        ensure(&(&p * &q) * &s == &p * &(&q * &s), || format!("associativity: {}", show3()))?;
        ensure(&p * &(&q + &s) == &(&p * &q) + &(&p * &s), || format!("left distributivity: {}", show3()))?;
        ensure(&(&p + &q) * &s == &(&p * &s) + &(&q * &s), || format!("right distributivity: {}", show3()))?;
        ensure(&(&p + &q) + &s == &p + &(&q + &s), || format!("additive associativity: {}", show3()))?;
        Ok(None)
    }));
    let r = inst.ring.clone();
    out.push(suite("degree_additivity", name, 500, 40, move |_, g| {
        let mut g = Genes::new(g);
        let p = sample::nonzero_ore_poly(&r, poly_deg, &mut g);
        let q = sample::nonzero_ore_poly(&r, poly_deg, &mut g);
        let pq = &p * &q;
        ensure(deg(&pq) == Some(deg(&p).unwrap() + deg(&q).unwrap()), || {
            format!("deg({} · {}) = {:?}", p, q, pq.degree())
        })?;
        Ok(None)
    }));
    let r = inst.ring.clone();
    out.push(suite("division", name, 1000, 60, move |_, g| {
        let mut g = Genes::new(g);
        let b = sample::ore_poly(&r, 2 * poly_deg, &mut g);
        let a = sample::nonzero_ore_poly(&r, poly_deg, &mut g);
        let t = sample::nonzero_ore_poly(&r, 2, &mut g);
        let (q, rem) = left_divmod(&b, &a).map_err(|e| e.to_string())?;
        let m = deg(&a).unwrap();
        ensure(&(&q * &a) + &rem == b, || format!("q·a + r ≠ b for b = {}, a = {}: q = {}, r = {}", b, a, q, rem))?;
        ensure(deg(&rem).is_none_or(|d| d < m), || format!("deg r ≥ deg a: b = {}, a = {}, r = {}", b, a, rem))?;
        // any other quotient leaves a remainder of degree ≥ deg a
        let q2 = &q + &t;
        let r2 = &b - &(&q2 * &a);
        ensure(deg(&r2).is_some_and(|d| d >= m), || {
            format!("second quotient {} also divides: b = {}, a = {}", q2, b, a)
        })?;
        Ok(None)
    }));
    if inst.ring.is_commutative() {
        let r = inst.ring.clone();
        out.push(suite("commutative_degeneration", name, 500, 40, move |_, g| {
            let mut g = Genes::new(g);
            let p = sample::ore_poly(&r, poly_deg, &mut g);
            let q = sample::ore_poly(&r, poly_deg, &mut g);
            let prod = &p * &q;
            let conv = convolve(&r, &p, &q);
            ensure(prod == conv, || format!("{} · {} = {} but convolution gives {}", p, q, prod, conv))?;
            Ok(None)
        }));
    }
}

// ---- matrices

fn oracle_agreement(ring: &OreRing, max_n: usize, max_deg: usize, g: &[i64]) -> CaseResult {
    let a = sample::ore_matrix(ring, max_n, max_deg, &mut Genes::new(g));
    let d = deg_det(&a).value;
    let o = quotient_dim_oracle(&a, OracleCaps::default());
    ensure(o != OracleValue::Unstable, || format!("oracle unstable on {}", show(&a)))?;
    ensure(o.agrees_with(d), || format!("deg_det = {} but oracle = {} on {}", d, o, show(&a)))?;
    Ok(if d.is_finite() { None } else { Some("infinite") })
}

fn commutative_agreement(ring: &OreRing, max_n: usize, max_deg: usize, g: &[i64]) -> CaseResult {
    let a = sample::ore_matrix(ring, max_n, max_deg, &mut Genes::new(g));
    let d = deg_det(&a).value;
    let c = commutative_oracle(&a).map_err(|e| e.to_string())?;
    ensure(c == d, || format!("deg_det = {} but det has degree {} on {}", d, c, show(&a)))?;
    Ok(if d.is_finite() { None } else { Some("infinite") })
}

/// Independent k-rank of a matrix of constants.
fn constant_rank(rows: &[Vec<FieldElement>]) -> usize {
    let mut m = rows.to_vec();
    let (n, cols) = (m.len(), m.first().map_or(0, |r| r.len()));
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..n).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = m[rank][c].inv().expect("nonzero");
        for i in rank + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] * &inv;
            for j in c..cols {
                let v = &m[i][j] - &(&f * &m[rank][j]);
                m[i][j] = v;
            }
        }
        rank += 1;
    }
    rank
}

fn random_row_op(ring: &OreRing, n: usize, g: &mut Genes) -> RowOp {
    let i = g.below(n as u64) as usize;
    if n == 1 {
        return RowOp::ScaleUnit {
            row: 0,
            unit: sample::nonzero_field_element(ring.field(), g),
        };
    }
    let j = (i + 1 + g.below(n as u64 - 1) as usize) % n;
    match g.below(3) {
        0 => RowOp::Swap { i, j },
        1 => RowOp::ScaleUnit {
            row: i,
            unit: sample::nonzero_field_element(ring.field(), g),
        },
        _ => RowOp::AddLeftMultiple {
            target: i,
            source: j,
            q: sample::ore_poly(ring, 1, g),
        },
    }
}

fn check_echelon_shape(a: &OreMatrix) -> std::result::Result<(), String> {
    let ech = row_echelon(a);
    let e = &ech.echelon;
    let n = e.n();
    ensure(ech.replay(a) == *e, || format!("ops_log does not replay on {}", show(a)))?;
    let mut last_col = None;
    for (k, p) in ech.pivots.iter().enumerate() {
        ensure(p.row == k, || format!("pivot rows out of order on {}", show(a)))?;
        ensure(last_col.is_none_or(|c| p.column > c), || format!("pivot columns not increasing on {}", show(a)))?;
        last_col = Some(p.column);
        ensure(deg(e.get(p.row, p.column)) == Some(p.degree), || format!("pivot degree wrong on {}", show(a)))?;
        for i in p.row + 1..n {
            ensure(e.get(i, p.column).is_zero(), || format!("nonzero below pivot on {}", show(a)))?;
        }
        for j in 0..p.column {
            ensure(e.get(p.row, j).is_zero(), || format!("nonzero left of pivot on {}", show(a)))?;
        }
    }
    for i in ech.pivots.len()..n {
        ensure((0..n).all(|j| e.get(i, j).is_zero()), || format!("nonzero row below the pivots on {}", show(a)))?;
    }
    for op in ech.ops_log.iter().take(6) {
        let mut m = a.clone();
        op.apply(&mut m);
        op.inverse().apply(&mut m);
        ensure(m == *a, || format!("operation {:?} is not undone by its inverse", op))?;
    }
    Ok(())
}

fn matrix_suites(out: &mut Vec<Suite>, inst: &Instance, max_n: usize, max_deg: usize) {
    let name = inst.name;
    let r = inst.ring.clone();
    out.push(suite("multiplicativity", name, 500, 400, move |_, g| {
        let (a, b) = sample::matrix_pair(&r, max_n, max_deg, &mut Genes::new(g));
        let (da, db) = (deg_det(&a).value, deg_det(&b).value);
        let ab = mat_mul(&a, &b).map_err(|e| e.to_string())?;
        let dab = deg_det(&ab).value;
        ensure(dab == da + db, || {
            format!("deg_det(AB) = {} but {} + {}; A = {}, B = {}", dab, da, db, show(&a), show(&b))
        })?;
        Ok(if da.is_finite() && db.is_finite() { None } else { Some("singular_factor") })
    }));
    let r = inst.ring.clone();
    out.push(suite("unit_criterion", name, 220, 200, move |i, g| {
        let mut g = Genes::new(g);
        let n = 1 + g.below(max_n as u64) as usize;
        if i % 2 == 0 {
            let u = sample::unit_matrix(&r, n, max_deg.min(2), 2 * n + 1, &mut g);
            let d = deg_det(&u).value;
            ensure(d == DegDet::Finite(0), || format!("deg_det = {} for the unit {}", d, show(&u)))?;
            let inv = invert(&u).map_err(|e| format!("{} for the unit {}", e, show(&u)))?;
            let left = mat_mul(&inv, &u).map_err(|e| e.to_string())?;
            let right = mat_mul(&u, &inv).map_err(|e| e.to_string())?;
            ensure(left.is_identity() && right.is_identity(), || {
                format!("{} is not a two-sided inverse of {}", show(&inv), show(&u))
            })?;
            Ok(Some("unit"))
        } else {
            let mut a = sample::ore_matrix_of_size(&r, n, max_deg.min(2), &mut g);
            if deg_det(&a).value == DegDet::Finite(0) {
                let mut d = vec![r.one(); n];
                d[0] = r.x();
                a = mat_mul(&a, &OreMatrix::diag(&r, d)).map_err(|e| e.to_string())?;
            }
            match invert(&a) {
                Err(Error::NotAUnit(_)) => Ok(Some("non_unit")),
                other => Err(format!("invert gave {:?} for the non-unit {}", other.map(|m| show(&m)), show(&a))),
            }
        }
    }));
    let r = inst.ring.clone();
    out.push(suite("echelon_contract", name, 200, 300, move |_, g| {
        let mut g = Genes::new(g);
        let a = sample::ore_matrix(&r, max_n, max_deg.min(2), &mut g);
        check_echelon_shape(&a)?;
        let op = random_row_op(&r, a.n(), &mut g);
        let mut b = a.clone();
        op.apply(&mut b);
        let (da, db) = (deg_det(&a).value, deg_det(&b).value);
        ensure(da == db, || format!("{:?} changes deg_det from {} to {} on {}", op, da, db, show(&a)))?;
        Ok(None)
    }));
    let r = inst.ring.clone();
    out.push(suite("diagonal_clause", name, 121, 60, move |i, g| {
        let n = max_n;
        let d: Vec<OrePoly> = if i <= 20 {
            // surjectivity: diag(x^m, 1, …, 1) has deg det m
            (0..n).map(|k| if k == 0 { r.x().pow(i as u32) } else { r.one() }).collect()
        } else {
            let mut g = Genes::new(g);
            (0..n).map(|_| sample::ore_poly(&r, max_deg, &mut g)).collect()
        };
        let expected = d.iter().fold(DegDet::Finite(0), |acc, p| {
            acc + deg(p).map_or(DegDet::Infinite, |k| DegDet::Finite(k as u64))
        });
        let m = OreMatrix::diag(&r, d);
        let got = deg_det(&m).value;
        ensure(got == expected, || format!("deg_det = {} but Σ deg = {} on {}", got, expected, show(&m)))?;
        Ok(None)
    }));
    let r = inst.ring.clone();
    out.push(suite("degree_zero", name, 200, 100, move |_, g| {
        let mut g = Genes::new(g);
        let n = 1 + g.below(max_n as u64) as usize;
        let mut a = sample::ore_matrix_of_size(&r, n, 0, &mut g);
        if g.below(3) == 0 {
            sample::make_singular(&mut a, &mut g);
            // keep entries constant
            a = OreMatrix::from_fn(&r, n, |i, j| r.constant(a.get(i, j).coeff(0)));
        }
        let rows: Vec<Vec<FieldElement>> = a.rows().map(|row| row.iter().map(|e| e.coeff(0)).collect()).collect();
        let rank = constant_rank(&rows);
        let v = deg_det(&a);
        let expected = if rank == n { DegDet::Finite(0) } else { DegDet::Infinite };
        ensure(v.value == expected && v.free_rank_s == n - rank, || {
            format!("k-rank {} but deg_det = {} (s = {}) on {}", rank, v.value, v.free_rank_s, show(&a))
        })?;
        Ok(if rank == n { None } else { Some("singular") })
    }));
}

// ---- endomorphisms of G_a^n

fn frobenius_ring(kind: FieldKind, x: &str) -> OreRing {
    let field = Field::new(kind, AlphaKind::Frobenius, DeltaKind::Zero).expect("frobenius field");
    OreRing::new(field, x).expect("frobenius ring")
}

fn fp_poly_product(f: &[i64], g: &[i64], p: i64) -> Vec<i64> {
    let mut out = vec![0i64; f.len() + g.len() - 1];
    for (i, a) in f.iter().enumerate() {
        for (j, b) in g.iter().enumerate() {
            out[i + j] = (out[i + j] + a * b).rem_euclid(p);
        }
    }
    out
}

fn endo_suites(out: &mut Vec<Suite>, max_n: usize, max_deg: usize) {
    let e_max = max_deg.min(3);
    for p in [2u64, 3, 5] {
        let ring = frobenius_ring(FieldKind::Base(BaseField::Prime(p)), "τ");
        // every exponent vector with n ≤ max_n and entries ≤ e_max
        let mut vectors: Vec<Vec<u32>> = Vec::new();
        for n in 1..=max_n {
            let total = (e_max + 1).pow(n as u32);
            for code in 0..total {
                let mut c = code;
                vectors.push(
                    (0..n)
                        .map(|_| {
                            let e = c % (e_max + 1);
                            c /= e_max + 1;
                            e as u32
                        })
                        .collect(),
                );
            }
        }
        let name: &'static str = match p {
            2 => "F_2[τ]",
            3 => "F_3[τ]",
            _ => "F_5[τ]",
        };
        let count = vectors.len();
        out.push(suite("kernel_rank_diagonal", name, count, 0, move |i, _| {
            let e = &vectors[i];
            let phi = OreMatrix::diag(&ring, e.iter().map(|&k| ring.x().pow(k)).collect());
            let rep = kernel_rank(&phi).map_err(|e| e.to_string())?;
            let sum: u32 = e.iter().sum();
            ensure(
                rep.rank == format!("{}^{}", p, sum) && rep.rank_decimal == Some(p.pow(sum).to_string()),
                || format!("diag τ^{:?} has rank {} over F_{}", e, rep.rank, p),
            )?;
            Ok(None)
        }));
    }
    let instances = [sample::f5_tau(), sample::f4_tau(), sample::f3t_tau()];
    for inst in instances {
        let p = inst.ring.field().characteristic() as i64;
        let r = inst.ring.clone();
        let n_cap = max_n.min(2);
        out.push(suite("t_module_coherence", inst.name, 100, 120, move |_, g| {
            let mut g = Genes::new(g);
            let phi = sample::ore_matrix(&r, n_cap, max_deg.min(2), &mut g);
            let f: Vec<i64> = (0..=g.below(4)).map(|_| g.next().rem_euclid(p)).collect();
            let h: Vec<i64> = (0..=g.below(4)).map(|_| g.next().rem_euclid(p)).collect();
            let lhs = evaluate_t_poly(&phi, &fp_poly_product(&f, &h, p)).map_err(|e| e.to_string())?;
            let rhs = mat_mul(
                &evaluate_t_poly(&phi, &f).map_err(|e| e.to_string())?,
                &evaluate_t_poly(&phi, &h).map_err(|e| e.to_string())?,
            )
            .map_err(|e| e.to_string())?;
            ensure(lhs == rhs, || format!("φ(fg) ≠ φ(f)φ(g) for φ_t = {}, f = {:?}, g = {:?}", show(&phi), f, h))?;
            Ok(None)
        }));
        let r = inst.ring.clone();
        out.push(suite("kernel_rank_product", inst.name, 100, 400, move |_, g| {
            let (a, b) = sample::matrix_pair(&r, max_n, max_deg, &mut Genes::new(g));
            let ab = mat_mul(&a, &b).map_err(|e| e.to_string())?;
            let (ka, kb, kab) = (
                kernel_rank(&a).map_err(|e| e.to_string())?,
                kernel_rank(&b).map_err(|e| e.to_string())?,
                kernel_rank(&ab).map_err(|e| e.to_string())?,
            );
            if let (Some(x), Some(y)) = (&ka.rank_decimal, &kb.rank_decimal) {
                let prod = x.parse::<num_bigint::BigUint>().unwrap() * y.parse::<num_bigint::BigUint>().unwrap();
                ensure(kab.rank_decimal == Some(prod.to_string()), || {
                    format!("rank {} · {} ≠ {} for A = {}, B = {}", ka.rank, kb.rank, kab.rank, show(&a), show(&b))
                })?;
                Ok(None)
            } else {
                ensure(kab.rank == "infinite", || format!("finite rank {} for a singular product", kab.rank))?;
                Ok(Some("infinite"))
            }
        }));
        let r = inst.ring.clone();
        out.push(suite("drinfeld_rank", inst.name, 50, 60, move |_, g| {
            let mut g = Genes::new(g);
            // a Drinfeld module has positive τ-degree
            let d = 1 + g.below(max_deg.clamp(1, 3) as u64) as usize;
            let phi = OreMatrix::diag(&r, vec![sample::ore_poly_of_degree(&r, Some(d), &mut g)]);
            let tau_deg = deg(phi.get(0, 0)).unwrap() as u64;
            let rep = t_module_rank(&phi, &default_samples()).map_err(|e| e.to_string())?;
            ensure(rep.r == tau_deg && rep.consistent, || {
                format!("r = {} (consistent: {}) for φ_t = {}", rep.r, rep.consistent, show(&phi))
            })?;
            Ok(None)
        }));
    }
    let carlitz_field = FieldKind::RationalFunction {
        base: BaseField::Prime(3),
        variable: "θ".into(),
    };
    let ring = frobenius_ring(carlitz_field, "τ");
    out.push(suite("t_module_fixtures", "F_3(θ)[τ]", 2, 0, move |i, _| {
        let (text, expected) = [("θ + τ", 1), ("θ + θ^2*τ + τ^2", 2)][i];
        let phi = OreMatrix::parse(&ring, &[vec![text]]).map_err(|e| e.to_string())?;
        let rep = t_module_rank(&phi, &default_samples()).map_err(|e| e.to_string())?;
        ensure(rep.r == expected && rep.consistent, || {
            format!("φ_t = {}: r = {}, consistent = {}", text, rep.r, rep.consistent)
        })?;
        Ok(None)
    }));
}

// ---- linear systems

fn random_field_matrix(field: &Field, n: usize, g: &mut Genes) -> FieldMatrix {
    (0..n).map(|_| (0..n).map(|_| sample::field_element(field, g)).collect()).collect()
}

/// Lower unitriangular times upper triangular with a nonzero diagonal.
fn invertible_field_matrix(field: &Field, n: usize, g: &mut Genes) -> FieldMatrix {
    let l: FieldMatrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match j.cmp(&i) {
                    std::cmp::Ordering::Less => sample::field_element(field, g),
                    std::cmp::Ordering::Equal => field.one(),
                    std::cmp::Ordering::Greater => field.zero(),
                })
                .collect()
        })
        .collect();
    let u: FieldMatrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match j.cmp(&i) {
                    std::cmp::Ordering::Less => field.zero(),
                    std::cmp::Ordering::Equal => sample::nonzero_field_element(field, g),
                    std::cmp::Ordering::Greater => sample::field_element(field, g),
                })
                .collect()
        })
        .collect();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(field.zero(), |acc, k| &acc + &(&l[i][k] * &u[k][j])))
                .collect()
        })
        .collect()
}

fn identity_field_matrix(field: &Field, n: usize) -> FieldMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { field.one() } else { field.zero() }).collect())
        .collect()
}

fn negated(m: &FieldMatrix) -> FieldMatrix {
    m.iter().map(|row| row.iter().map(|c| -c).collect()).collect()
}

fn ode_suites(out: &mut Vec<Suite>, inst: &Instance, max_n: usize) {
    let name = inst.name;
    let r = inst.ring.clone();
    out.push(suite("companion_dimension", name, 100, 40, move |_, g| {
        let mut g = Genes::new(g);
        let d = 1 + g.below(4) as usize;
        let mut coeffs: Vec<FieldElement> = (0..d).map(|_| sample::field_element(r.field(), &mut g)).collect();
        coeffs.push(r.field().one());
        let l = r.from_coeffs(coeffs).map_err(|e| e.to_string())?;
        let sys = assemble_system(&r, &companion_system(&l).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let rep = solution_dimension(&sys).map_err(|e| e.to_string())?;
        let scalar = deg_det(&OreMatrix::diag(&r, vec![l.clone()])).value;
        ensure(rep.dimension == Some(d as u64) && scalar == DegDet::Finite(d as u64), || {
            format!("L = {}: system dimension {:?}, deg_det([[L]]) = {}", l, rep.dimension, scalar)
        })?;
        Ok(None)
    }));
    let r = inst.ring.clone();
    out.push(suite("first_order_dimension", name, 100, 60, move |_, g| {
        let mut g = Genes::new(g);
        let n = 1 + g.below(max_n as u64) as usize;
        let m = random_field_matrix(r.field(), n, &mut g);
        let a = assemble_system(&r, &[negated(&m), identity_field_matrix(r.field(), n)]).map_err(|e| e.to_string())?;
        let rep = solution_dimension(&a).map_err(|e| e.to_string())?;
        ensure(rep.dimension == Some(n as u64), || format!("dimension {:?} for {}", rep.dimension, show(&a)))?;
        Ok(None)
    }));
    let r = inst.ring.clone();
    out.push(suite("leading_invertible", name, 60, 200, move |_, g| {
        let mut g = Genes::new(g);
        let n = 1 + g.below(max_n as u64) as usize;
        let d = 1 + g.below(2) as usize;
        let mut mats: Vec<FieldMatrix> = (0..d).map(|_| random_field_matrix(r.field(), n, &mut g)).collect();
        mats.push(invertible_field_matrix(r.field(), n, &mut g));
        let a = assemble_system(&r, &mats).map_err(|e| e.to_string())?;
        let rep = solution_dimension(&a).map_err(|e| e.to_string())?;
        let oracle = quotient_dim_oracle(&a, OracleCaps::default());
        let want = (n * d) as u64;
        ensure(rep.dimension == Some(want) && oracle == OracleValue::Finite(want), || {
            format!("dimension {:?}, oracle {} (expected {}) for {}", rep.dimension, oracle, want, show(&a))
        })?;
        Ok(None)
    }));
    let r = inst.ring.clone();
    out.push(suite("composed_systems", name, 60, 200, move |_, g| {
        let mut g = Genes::new(g);
        let n = 1 + g.below(max_n.min(2) as u64) as usize;
        let mut op = || -> std::result::Result<OreMatrix, String> {
            let m = random_field_matrix(r.field(), n, &mut g);
            let lead = invertible_field_matrix(r.field(), n, &mut g);
            assemble_system(&r, &[negated(&m), lead]).map_err(|e| e.to_string())
        };
        let (a, b) = (op()?, op()?);
        let ab = mat_mul(&a, &b).map_err(|e| e.to_string())?;
        let dims = [&a, &b, &ab].map(|m| solution_dimension(m).map(|rep| rep.dimension));
        let [da, db, dab] = dims.map(|x| x.ok().flatten());
        ensure(da.is_some() && db.is_some() && dab == da.zip(db).map(|(x, y)| x + y), || {
            format!("dimensions {:?} + {:?} ≠ {:?} for A = {}, B = {}", da, db, dab, show(&a), show(&b))
        })?;
        Ok(None)
    }));
    let r = inst.ring.clone();
    let x = r.indeterminate().to_string();
    out.push(suite("ode_fixtures", name, 4, 0, move |i, _| {
        let (rows, degdet, s): (Vec<Vec<String>>, DegDet, usize) = match i {
            0 => (vec![vec![x.clone(), "-1".into()], vec!["1".into(), x.clone()]], DegDet::Finite(2), 0),
            1 => (vec![vec![x.clone(), "1".into()], vec!["0".into(), "0".into()]], DegDet::Infinite, 1),
            2 => (
                vec![
                    vec![x.clone(), "0".into(), "1".into()],
                    vec!["0".into(), "0".into(), "0".into()],
                    vec!["0".into(), "0".into(), "0".into()],
                ],
                DegDet::Infinite,
                2,
            ),
            _ => (
                vec![
                    vec![format!("{}^2", x), "x".into(), "0".into()],
                    vec!["0".into(), "0".into(), "0".into()],
                    vec!["1".into(), "0".into(), x.clone()],
                ],
                DegDet::Infinite,
                1,
            ),
        };
        let a = OreMatrix::parse(&r, &rows).map_err(|e| e.to_string())?;
        let rep = solution_dimension(&a).map_err(|e| e.to_string())?;
        ensure(rep.degdet == degdet && rep.free_rank_s == s, || {
            format!("{}: deg det {} with s = {}", show(&a), rep.degdet, rep.free_rank_s)
        })?;
        Ok(None)
    }));
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shrinking_finds_a_small_failure() {
        let check: Check = Box::new(|_, g| {
            let s: i64 = g.iter().map(|x| x.abs()).sum();
            if s >= 3 {
                Err(format!("sum {}", s))
            } else {
                Ok(None)
            }
        });
        let (g, d) = shrink(&check, 0, &[5, -7, 2, 9, 0, 4], "start".into());
        assert_eq!(g.iter().map(|x| x.abs()).sum::<i64>(), 3);
        assert_eq!(d, "sum 3");
    }

    #[test]
    fn panics_become_failures() {
        let check: Check = Box::new(|_, _| panic!("boom"));
        assert_eq!(run_case(&check, 0, &[]), Err("panic: boom".into()));
    }
}
