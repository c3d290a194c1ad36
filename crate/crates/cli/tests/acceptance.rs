//! Acceptance run: one PASS/FAIL line per criterion.

use std::process::Command;
use std::time::Instant;

use serde_json::Value;

use skewdet::endo::default_samples;
use skewdet::sample::{self, Genes, Instance};
use skewdet::{
    assemble_system, commutative_oracle, companion_system, deg_det, invert, kernel_rank, left_divmod,
    mat_mul, poly_add, poly_degree, poly_mul, quotient_dim_oracle, solution_dimension, t_module_rank,
    AlphaKind, BaseField, DegDet, DeltaKind, Error, Field, FieldElement, FieldKind, OracleCaps, OracleValue,
    OreMatrix, OreRing, PolyDegree,
};

type Outcome = Result<String, String>;

const GENOME: usize = 400;

fn genomes(stream: &str, count: usize) -> Vec<Vec<i64>> {
    let mut rng = sample::rng(0, stream);
    (0..count).map(|_| sample::random_genome(&mut rng, GENOME)).collect()
}

fn show(m: &OreMatrix) -> String {
    format!("{:?}", m.to_strings())
}

fn three_route_agreement() -> Outcome {
    let mut total = 0;
    for inst in sample::twisted_instances() {
        for g in genomes(&format!("acceptance/1/{}", inst.name), 200) {
            let a = sample::ore_matrix(&inst.ring, 3, 2, &mut Genes::new(&g));
            let d = deg_det(&a).value;
            let o = quotient_dim_oracle(&a, OracleCaps::default());
            if o == OracleValue::Unstable {
                return Err(format!("{}: oracle unstable on {}", inst.name, show(&a)));
            }
            if !o.agrees_with(d) {
                return Err(format!("{}: deg_det {} vs oracle {} on {}", inst.name, d, o, show(&a)));
            }
            total += 1;
        }
    }
    Ok(format!("{} matrices over 5 instances, 0 unstable", total))
}

fn commutative_degeneration() -> Outcome {
    let mut total = 0;
    for inst in sample::commutative_instances() {
        for g in genomes(&format!("acceptance/2/{}", inst.name), 200) {
            let a = sample::ore_matrix(&inst.ring, 4, 3, &mut Genes::new(&g));
            let d = deg_det(&a).value;
            let c = commutative_oracle(&a).map_err(|e| e.to_string())?;
            if c != d {
                return Err(format!("{}: deg_det {} vs det degree {} on {}", inst.name, d, c, show(&a)));
            }
            total += 1;
        }
    }
    Ok(format!("{} matrices over F_5 and Q", total))
}

fn all_instances() -> Vec<Instance> {
    let mut v = sample::twisted_instances();
    v.extend(sample::commutative_instances());
    v
}

fn multiplicativity() -> Outcome {
    let mut fewest_singular = usize::MAX;
    for inst in all_instances() {
        let mut singular = 0;
        for g in genomes(&format!("acceptance/3/{}", inst.name), 500) {
            let (a, b) = sample::matrix_pair(&inst.ring, 3, 2, &mut Genes::new(&g));
            let (da, db) = (deg_det(&a).value, deg_det(&b).value);
            let dab = deg_det(&mat_mul(&a, &b).map_err(|e| e.to_string())?).value;
            if dab != da + db {
                return Err(format!("{}: {} ≠ {} + {} for A = {}, B = {}", inst.name, dab, da, db, show(&a), show(&b)));
            }
            if !da.is_finite() || !db.is_finite() {
                singular += 1;
            }
        }
        if singular < 50 {
            return Err(format!("{}: only {} pairs with a singular factor", inst.name, singular));
        }
        fewest_singular = fewest_singular.min(singular);
    }
    Ok(format!("500 pairs on each of 7 instances, at least {} with a singular factor", fewest_singular))
}

fn unit_criterion() -> Outcome {
    for inst in sample::twisted_instances() {
        let r = &inst.ring;
        for g in genomes(&format!("acceptance/4u/{}", inst.name), 100) {
            let mut g = Genes::new(&g);
            let n = 1 + g.below(3) as usize;
            let u = sample::unit_matrix(r, n, 2, 2 * n + 1, &mut g);
            if deg_det(&u).value != DegDet::Finite(0) {
                return Err(format!("{}: unit with deg_det {}", inst.name, deg_det(&u).value));
            }
            let inv = invert(&u).map_err(|e| format!("{}: {} for {}", inst.name, e, show(&u)))?;
            let two_sided = mat_mul(&u, &inv).map_err(|e| e.to_string())?.is_identity()
                && mat_mul(&inv, &u).map_err(|e| e.to_string())?.is_identity();
            if !two_sided {
                return Err(format!("{}: inverse of {} fails verification", inst.name, show(&u)));
            }
        }
        for g in genomes(&format!("acceptance/4n/{}", inst.name), 100) {
            let mut g = Genes::new(&g);
            let n = 1 + g.below(3) as usize;
            let mut a = sample::ore_matrix_of_size(r, n, 2, &mut g);
            if deg_det(&a).value == DegDet::Finite(0) {
                let mut d = vec![r.one(); n];
                d[0] = r.x();
                a = mat_mul(&a, &OreMatrix::diag(r, d)).map_err(|e| e.to_string())?;
            }
            match invert(&a) {
                Err(Error::NotAUnit(_)) => {}
                other => return Err(format!("{}: invert gave {:?} on {}", inst.name, other.map(|m| show(&m)), show(&a))),
            }
        }
    }
    Ok("100 units and 100 non-units on each of 5 instances".into())
}

fn division_contract() -> Outcome {
    for inst in all_instances() {
        let r = &inst.ring;
        for g in genomes(&format!("acceptance/5/{}", inst.name), 1000) {
            let mut g = Genes::new(&g);
            let b = sample::ore_poly(r, 5, &mut g);
            let a = sample::nonzero_ore_poly(r, 3, &mut g);
            let (q, rem) = left_divmod(&b, &a).map_err(|e| e.to_string())?;
            let back = poly_add(&poly_mul(&q, &a).map_err(|e| e.to_string())?, &rem).map_err(|e| e.to_string())?;
            let smaller = match (poly_degree(&rem), poly_degree(&a)) {
                (PolyDegree::Bottom, _) => true,
                (PolyDegree::Finite(x), PolyDegree::Finite(y)) => x < y,
                _ => false,
            };
            if back != b || !smaller {
                return Err(format!("{}: b = {}, a = {} gave q = {}, r = {}", inst.name, b, a, q, rem));
            }
        }
    }
    Ok("1000 pairs on each of 7 instances".into())
}

fn frobenius_ring(kind: FieldKind) -> OreRing {
    OreRing::new(Field::new(kind, AlphaKind::Frobenius, DeltaKind::Zero).unwrap(), "τ").unwrap()
}

fn ga_endomorphisms() -> Outcome {
    let mut count = 0;
    for p in [2u64, 3, 5] {
        let ring = frobenius_ring(FieldKind::Base(BaseField::Prime(p)));
        for n in 1..=3u32 {
            for code in 0..4u32.pow(n) {
                let e: Vec<u32> = (0..n).map(|i| (code / 4u32.pow(i)) % 4).collect();
                let phi = OreMatrix::diag(&ring, e.iter().map(|&k| ring.x().pow(k)).collect());
                let rep = kernel_rank(&phi).map_err(|e| e.to_string())?;
                let sum: u32 = e.iter().sum();
                if rep.rank_decimal != Some(p.pow(sum).to_string()) {
                    return Err(format!("diag τ^{:?} over F_{}: rank {}", e, p, rep.rank));
                }
                count += 1;
            }
        }
    }
    let ring = frobenius_ring(FieldKind::RationalFunction {
        base: BaseField::Prime(3),
        variable: "θ".into(),
    });
    for (text, expected) in [("θ + τ", 1), ("θ + θ^2*τ + τ^2", 2)] {
        let phi = OreMatrix::parse(&ring, &[vec![text]]).map_err(|e| e.to_string())?;
        let rep = t_module_rank(&phi, &default_samples()).map_err(|e| e.to_string())?;
        if rep.r != expected || !rep.consistent {
            return Err(format!("φ_t = {}: r = {}, consistent = {}", text, rep.r, rep.consistent));
        }
    }
    Ok(format!("{} diagonal kernels; Carlitz r = 1 and rank-2 fixture r = 2, both consistent", count))
}

fn field_matrix(ring: &OreRing, n: usize, g: &mut Genes) -> Vec<Vec<FieldElement>> {
    (0..n).map(|_| (0..n).map(|_| sample::field_element(ring.field(), g)).collect()).collect()
}

fn linear_systems() -> Outcome {
    for inst in [sample::qx_derivation(), sample::qx_qshift()] {
        let r = &inst.ring;
        let one = r.field().one();
        for g in genomes(&format!("acceptance/7c/{}", inst.name), 100) {
            let mut g = Genes::new(&g);
            let d = 1 + g.below(4) as usize;
            let mut coeffs: Vec<FieldElement> = (0..d).map(|_| sample::field_element(r.field(), &mut g)).collect();
            coeffs.push(one.clone());
            let l = r.from_coeffs(coeffs).map_err(|e| e.to_string())?;
            let a = assemble_system(r, &companion_system(&l).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            let dim = solution_dimension(&a).map_err(|e| e.to_string())?.dimension;
            if dim != Some(d as u64) {
                return Err(format!("{}: companion of {} has dimension {:?}", inst.name, l, dim));
            }
        }
        for g in genomes(&format!("acceptance/7f/{}", inst.name), 100) {
            let mut g = Genes::new(&g);
            let n = 1 + g.below(3) as usize;
            let m = field_matrix(r, n, &mut g);
            let minus_m: Vec<Vec<FieldElement>> = m.iter().map(|row| row.iter().map(|c| -c).collect()).collect();
            let id = (0..n)
                .map(|i| (0..n).map(|j| if i == j { one.clone() } else { r.field().zero() }).collect())
                .collect();
            let a = assemble_system(r, &[minus_m, id]).map_err(|e| e.to_string())?;
            let dim = solution_dimension(&a).map_err(|e| e.to_string())?.dimension;
            if dim != Some(n as u64) {
                return Err(format!("{}: I{} - M has dimension {:?} on {}", inst.name, r.indeterminate(), dim, show(&a)));
            }
        }
        let x = r.indeterminate();
        let fixture = OreMatrix::parse(r, &[vec![x, "1", "0"], vec!["0", "0", "0"], vec!["x", "0", x]])
            .map_err(|e| e.to_string())?;
        let rep = solution_dimension(&fixture).map_err(|e| e.to_string())?;
        if rep.degdet != DegDet::Infinite || rep.dimension.is_some() || rep.free_rank_s != 1 {
            return Err(format!("{}: zero-row fixture gave {} with s = {}", inst.name, rep.degdet, rep.free_rank_s));
        }
    }
    Ok("companions d ≤ 4 and I∂ - M n ≤ 3 under both twists; zero row gives infinite with s = 1".into())
}

fn skewdet(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_skewdet")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn cli_determinism_and_fault() -> Outcome {
    let args = ["selftest", "--seed", "11", "--max-n", "2", "--max-deg", "1", "--no-timing"];
    let (c1, first) = skewdet(&args);
    let (c2, second) = skewdet(&args);
    if c1 != 0 || c2 != 0 || first != second {
        return Err(format!("selftest runs differ (exit {} and {})", c1, c2));
    }
    let inline = r#"{"ring": {"field": {"kind": "prime_field", "p": 5}, "alpha": "frobenius"}, "n": 2, "entries": [["τ^2", "1"], ["3", "τ"]]}"#;
    let oracle_args = ["degdet", "--oracle", "--no-timing", "--json", inline];
    if skewdet(&oracle_args) != skewdet(&oracle_args) {
        return Err("degdet reports differ".into());
    }
    let (code, out) = skewdet(&["selftest", "--inject-fault", "broken-twist", "--no-timing"]);
    let report: Value = serde_json::from_slice(&out).map_err(|e| e.to_string())?;
    let suite = report["result"]["counterexample"]["suite"].as_str().unwrap_or("");
    if code != 5 || suite != "leibniz" {
        return Err(format!("broken twist gave exit {} in suite {:?}", code, suite));
    }
    Ok("byte-identical reports; broken twist fails leibniz with exit 5".into())
}

fn selftest_budget() -> Outcome {
    let start = Instant::now();
    let (code, out) = skewdet(&["selftest", "--seed", "0"]);
    let secs = start.elapsed().as_secs_f64();
    let report: Value = serde_json::from_slice(&out).map_err(|e| e.to_string())?;
    let checks = report["result"]["total_checks"].as_u64().unwrap_or(0);
    if code != 0 || checks < 5000 || secs >= 120.0 {
        return Err(format!("exit {}, {} checks in {:.1}s", code, checks, secs));
    }
    let (small, _) = skewdet(&["selftest", "--max-n", "1", "--max-deg", "1", "--no-timing"]);
    if small != 0 {
        return Err(format!("caps n = 1, deg 1 exit {}", small));
    }
    Ok(format!("{} checks at seed 0 in {:.1}s; caps n = 1, deg 1 pass", checks, secs))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("1 three-route agreement", three_route_agreement),
        ("2 commutative degeneration", commutative_degeneration),
        ("3 multiplicativity", multiplicativity),
        ("4 unit criterion", unit_criterion),
        ("5 division contract", division_contract),
        ("6 G_a endomorphisms", ga_endomorphisms),
        ("7 linear systems", linear_systems),
        ("8 cli determinism and fault injection", cli_determinism_and_fault),
        ("selftest runtime", selftest_budget),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("PASS criterion {}: {} [{:.1}s]", name, msg, secs),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {}: {} [{:.1}s]", name, msg, secs);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
