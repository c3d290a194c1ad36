use skewdet::sample;
use skewdet::{
    commutative_oracle, deg_det, invert, kernel_rank, left_divmod, mat_mul, quotient_dim_oracle, row_echelon,
    AlphaKind, BaseField, DegDet, DeltaKind, Error, Field, FieldKind, OracleCaps, OracleValue, OreMatrix, OreRing,
};

fn tau_over_fp_theta(p: u64) -> OreRing {
    let k = Field::new(
        FieldKind::RationalFunction {
            base: BaseField::Prime(p),
            variable: "θ".into(),
        },
        AlphaKind::Frobenius,
        DeltaKind::Zero,
    )
    .unwrap();
    OreRing::new(k, "τ").unwrap()
}

fn parse(r: &OreRing, rows: &[&[&str]]) -> OreMatrix {
    let rows: Vec<Vec<&str>> = rows.iter().map(|row| row.to_vec()).collect();
    OreMatrix::parse(r, &rows).unwrap()
}

#[test]
fn frobenius_division() {
    // τ^2 = (τ - θ^p)(τ + θ) + θ^(p+1)
    for p in [2, 3, 5, 7] {
        let r = tau_over_fp_theta(p);
        let (q, rem) = left_divmod(&r.parse("τ^2").unwrap(), &r.parse("τ + θ").unwrap()).unwrap();
        assert_eq!(q, r.parse(&format!("τ - θ^{}", p)).unwrap());
        assert_eq!(rem, r.parse(&format!("θ^{}", p + 1)).unwrap());
    }
}

#[test]
fn weyl_echelon() {
    // swap, then row 2 -= ∂·row 1
    let r = sample::qx_derivation().ring;
    let a = parse(&r, &[&["∂", "-1"], &["1", "∂"]]);
    let e = row_echelon(&a);
    assert_eq!(e.echelon, parse(&r, &[&["1", "∂"], &["0", "-∂^2 - 1"]]));
    assert_eq!(e.pivots.iter().map(|p| p.degree).collect::<Vec<_>>(), vec![0, 2]);
    assert_eq!(deg_det(&a).value, DegDet::Finite(2));
}

#[test]
fn commutative_two_by_two() {
    // det = x^2 - 1
    let r = sample::f5_commutative().ring;
    let a = parse(&r, &[&["x", "1"], &["1", "x"]]);
    assert_eq!(deg_det(&a).value, DegDet::Finite(2));
    assert_eq!(commutative_oracle(&a).unwrap(), DegDet::Finite(2));
    assert_eq!(quotient_dim_oracle(&a, OracleCaps::default()), OracleValue::Finite(2));
}

#[test]
fn cancellation_below_row_degrees() {
    // row 2 - row 1 leaves diag(∂, 1)
    let r = sample::qx_derivation().ring;
    let a = parse(&r, &[&["∂", "∂"], &["∂", "∂ + 1"]]);
    assert_eq!(deg_det(&a).value, DegDet::Finite(1));
}

#[test]
fn twisted_two_by_two() {
    // row 1 -= θ^(-3)τ · row 2 leaves θ - θ^(-3)τ^2 in the corner
    let r = tau_over_fp_theta(3);
    let a = parse(&r, &[&["τ", "θ"], &["θ", "τ"]]);
    let v = deg_det(&a);
    assert_eq!((v.value, v.free_rank_s), (DegDet::Finite(2), 0));
    assert_eq!(quotient_dim_oracle(&a, OracleCaps::default()), OracleValue::Finite(2));
}

#[test]
fn singular_matrix_reports_free_rank() {
    let r = tau_over_fp_theta(5);
    let a = parse(&r, &[&["τ", "θ*τ"], &["0", "0"]]);
    let v = deg_det(&a);
    assert_eq!((v.value, v.free_rank_s), (DegDet::Infinite, 1));
    assert!(matches!(invert(&a), Err(Error::NotAUnit(_))));
}

#[test]
fn unit_inverse() {
    let r = sample::qx_derivation().ring;
    let u = parse(&r, &[&["1", "∂"], &["0", "x"]]);
    let inv = invert(&u).unwrap();
    assert!(mat_mul(&u, &inv).unwrap().is_identity());
    assert!(mat_mul(&inv, &u).unwrap().is_identity());
}

#[test]
fn twist_values() {
    let f4 = sample::f4_tau().ring;
    let w = f4.field().parse("w").unwrap();
    assert_eq!(w.alpha(), f4.field().parse("w + 1").unwrap());

    let q = sample::qx_qshift().ring;
    assert_eq!(q.parse("σ*x").unwrap(), q.parse("2*x*σ").unwrap());

    let d = sample::qx_derivation().ring;
    assert_eq!(d.parse("∂*x").unwrap(), d.parse("x*∂ + 1").unwrap());
    assert_eq!(d.parse("∂*(1/x)").unwrap(), d.parse("(1/x)*∂ - 1/x^2").unwrap());
}

#[test]
fn kernel_of_frobenius_powers() {
    let r = OreRing::new(
        Field::new(FieldKind::Base(BaseField::Prime(3)), AlphaKind::Frobenius, DeltaKind::Zero).unwrap(),
        "τ",
    )
    .unwrap();
    let rep = kernel_rank(&parse(&r, &[&["τ^2", "1"], &["0", "τ"]])).unwrap();
    assert_eq!(rep.rank, "3^3");
    assert_eq!(rep.rank_decimal.as_deref(), Some("27"));
}

#[test]
fn parse_errors_carry_positions() {
    let r = sample::qx_derivation().ring;
    for (text, position) in [("∂ + + 1", 4), ("x^^2", 2), ("(x + 1", 6)] {
        match r.parse(text) {
            Err(Error::Parse { position: got, .. }) => assert_eq!(got, position, "{}", text),
            other => panic!("{} parsed as {:?}", text, other),
        }
    }
}
