use proptest::prelude::*;

use skewdet::sample::{self, Genes, Instance};
use skewdet::wire::{from_json, MatrixJson};
use skewdet::{
    deg_det, left_divmod, mat_mul, row_echelon, DegDet, FieldElement, OreMatrix, OrePoly, PolyDegree,
};

fn instances() -> Vec<Instance> {
    let mut v = sample::twisted_instances();
    v.extend(sample::commutative_instances());
    v
}

fn genome() -> impl Strategy<Value = (usize, Vec<i64>)> {
    (0..7usize, prop::collection::vec(-9i64..=9, 200))
}

fn deg(p: &OrePoly) -> Option<usize> {
    p.degree().finite()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn field_axioms((i, g) in genome()) {
        let inst = &instances()[i];
        let k = inst.ring.field();
        let mut g = Genes::new(&g);
        let [a, b, c]: [FieldElement; 3] = std::array::from_fn(|_| sample::field_element(k, &mut g));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn twist_is_a_homomorphism_and_delta_obeys_leibniz((i, g) in genome()) {
        let inst = &instances()[i];
        let k = inst.ring.field();
        let mut g = Genes::new(&g);
        let a = sample::field_element(k, &mut g);
        let b = sample::field_element(k, &mut g);
        prop_assert_eq!((&a + &b).alpha(), &a.alpha() + &b.alpha());
        prop_assert_eq!((&a * &b).alpha(), &a.alpha() * &b.alpha());
        prop_assert_eq!((&a + &b).delta(), &a.delta() + &b.delta());
        prop_assert_eq!((&a * &b).delta(), &(&a.delta() * &b) + &(&a.alpha() * &b.delta()));
    }

    #[test]
    fn ring_axioms_and_degree((i, g) in genome()) {
        let r = &instances()[i].ring;
        let mut g = Genes::new(&g);
        let [p, q, s]: [OrePoly; 3] = std::array::from_fn(|_| sample::ore_poly(r, 3, &mut g));
        prop_assert_eq!(&(&p * &q) * &s, &p * &(&q * &s));
        prop_assert_eq!(&p * &(&q + &s), &(&p * &q) + &(&p * &s));
        prop_assert_eq!(&(&q + &s) * &p, &(&q * &p) + &(&s * &p));
        prop_assert_eq!(&r.one() * &p, p.clone());
        match (deg(&p), deg(&q)) {
            (Some(x), Some(y)) => prop_assert_eq!(deg(&(&p * &q)), Some(x + y)),
            _ => prop_assert!((&p * &q).is_zero()),
        }
    }

    #[test]
    fn left_division((i, g) in genome()) {
        let r = &instances()[i].ring;
        let mut g = Genes::new(&g);
        let b = sample::ore_poly(r, 6, &mut g);
        let a = sample::nonzero_ore_poly(r, 3, &mut g);
        let (q, rem) = left_divmod(&b, &a).unwrap();
        prop_assert_eq!(&(&q * &a) + &rem, b);
        prop_assert!(rem.degree() == PolyDegree::Bottom || deg(&rem) < deg(&a));
    }

    #[test]
    fn text_round_trip((i, g) in genome()) {
        let r = &instances()[i].ring;
        let p = sample::ore_poly(r, 4, &mut Genes::new(&g));
        prop_assert_eq!(r.parse(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn units_times_diagonal((i, g) in genome()) {
        // deg det(U D V) = Σ deg d_i for units U, V
        let r = &instances()[i].ring;
        let mut g = Genes::new(&g);
        let n = 1 + g.below(3) as usize;
        let d: Vec<OrePoly> = (0..n).map(|_| sample::ore_poly(r, 2, &mut g)).collect();
        let expected = d.iter().fold(DegDet::Finite(0), |acc, p| {
            acc + deg(p).map_or(DegDet::Infinite, |k| DegDet::Finite(k as u64))
        });
        let u = sample::unit_matrix(r, n, 1, 3, &mut g);
        let v = sample::unit_matrix(r, n, 1, 3, &mut g);
        let m = mat_mul(&mat_mul(&u, &OreMatrix::diag(r, d)).unwrap(), &v).unwrap();
        prop_assert_eq!(deg_det(&m).value, expected);
    }

    #[test]
    fn deg_det_is_bounded_by_row_degrees((i, g) in genome()) {
        let r = &instances()[i].ring;
        let a = sample::ore_matrix(r, 3, 2, &mut Genes::new(&g));
        if let Some(d) = deg_det(&a).value.finite() {
            prop_assert!(d as usize <= a.row_degree_sum());
        }
    }

    #[test]
    fn echelon_replays_and_counts_free_rank((i, g) in genome()) {
        let r = &instances()[i].ring;
        let a = sample::ore_matrix(r, 3, 2, &mut Genes::new(&g));
        let e = row_echelon(&a);
        prop_assert_eq!(&e.replay(&a), &e.echelon);
        let v = e.deg_det();
        prop_assert_eq!(v.free_rank_s, a.n() - e.pivots.len());
        prop_assert_eq!(v.value.is_finite(), v.free_rank_s == 0);
        for w in e.pivots.windows(2) {
            prop_assert!(w[0].row < w[1].row && w[0].column < w[1].column);
        }
    }

    #[test]
    fn matrix_json_round_trip((i, g) in genome()) {
        let r = &instances()[i].ring;
        let a = sample::ore_matrix(r, 3, 2, &mut Genes::new(&g));
        let text = serde_json::to_string(&MatrixJson::from_matrix(&a).unwrap()).unwrap();
        prop_assert_eq!(from_json::<MatrixJson>(&text).unwrap().to_matrix().unwrap(), a);
    }
}
