use hypturan::coeffs::{
    a_tilde_n, ak_table, an2_table, build_table, oracle_table, tails_general, tails_symmetric,
    CoeffKind,
};
use hypturan::sequences::{
    lambda_n, lambda_n_exact, phi_n, phi_n_exact, product_turning_point,
    product_turning_point_exact, rho_n, rho_n_exact, tau_n, tau_n_exact, turning_threshold,
    ExactSeqParams, ProductKind, SeqParams,
};
use hypturan::series::{parse_rational, rational, to_f64, ExactRational};
use proptest::prelude::*;

fn rat(p: i64, q: i64) -> ExactRational {
    rational(p, q)
}

#[test]
fn every_kind_matches_its_oracle() {
    let sets: [&[i64]; 3] = [&[1, 4], &[2, 3], &[5, 6]];
    for kind in CoeffKind::ALL {
        if !kind.is_exact() {
            continue;
        }
        for s in sets {
            let a = rat(s[0], s[1]);
            let params = match kind.param_names().len() {
                0 => vec![],
                1 => vec![a],
                _ => vec![a, rat(1, 3), rat(7, 4)],
            };
            let t = build_table(kind, &params, 16, false).unwrap();
            assert_eq!(
                t.exact_values().unwrap(),
                oracle_table(kind, &params, 16).unwrap().as_slice(),
                "{kind}"
            );
        }
    }
}

#[test]
fn degree_cap_and_parameter_checks() {
    assert!(build_table(CoeffKind::An2, &[], 65, false).is_err());
    assert!(build_table(CoeffKind::An2, &[], 65, true).is_ok());
    assert!(build_table(CoeffKind::Bn, &[rat(1, 2), rat(1, 1), rat(1, 2)], 4, false).is_err());
    assert!(build_table(CoeffKind::Ak, &[rat(3, 2)], 4, false).is_err());
    assert!(build_table(CoeffKind::Ak, &[], 4, false).is_err());
}

#[test]
fn exact_json_round_trip() {
    let t = an2_table(6);
    let v: serde_json::Value = serde_json::to_value(&t).unwrap();
    let back: Vec<ExactRational> = v["values"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| parse_rational(s.as_str().unwrap()).unwrap())
        .collect();
    assert_eq!(back.as_slice(), t.exact_values().unwrap());
    assert_eq!(v["exact"], true);
}

#[test]
fn a2_tail_constants_decrease() {
    let mut prev = f64::INFINITY;
    for n in 1..12 {
        let t = a_tilde_n(n);
        assert!(t > 0.0 && t < prev, "n = {n}");
        prev = t;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ak_recurrence_equals_quotient_series(p in 1i64..40, q in 41i64..80) {
        let a = rat(p, q);
        let t = ak_table(&a, 12).unwrap();
        let oracle = oracle_table(CoeffKind::Ak, &[a], 12).unwrap();
        prop_assert_eq!(t.exact_values().unwrap(), oracle.as_slice());
    }

    #[test]
    fn general_tables_equal_oracle(a in 1i64..30, b1 in 1i64..30, gap in 1i64..30) {
        let params = vec![rat(a, 12), rat(b1, 12), rat(b1 + gap, 12)];
        for kind in [CoeffKind::Bn, CoeffKind::BbarN, CoeffKind::Btilde, CoeffKind::An1] {
            let t = build_table(kind, &params, 10, false).unwrap();
            let oracle = oracle_table(kind, &params, 10).unwrap();
            prop_assert_eq!(t.exact_values().unwrap(), oracle.as_slice());
        }
    }

    #[test]
    fn symmetric_coefficients_positive(p in 1i64..20) {
        let t = ak_table(&rat(p, 21), 15).unwrap();
        prop_assert!(t.signs().iter().all(|&s| s == 1));
        let tails = tails_symmetric(&rat(p, 21), 3).unwrap();
        prop_assert!(tails.delta_n.unwrap() > 0.0);
    }

    #[test]
    fn general_tails_nonnegative(a in 1i64..12, b1 in 1i64..12, gap in 1i64..12) {
        let tails = tails_general(&rat(a, 12), &rat(b1, 12), &rat(b1 + gap, 12), 3).unwrap();
        if let Some(eta) = tails.eta_n {
            prop_assert!(eta >= -1e-12);
        }
    }

    #[test]
    fn sequences_exact_and_float_agree(a in 1i64..40, b in 1i64..40, n in 0usize..30) {
        let pe = ExactSeqParams::new(rat(a, 8), rat(b, 8)).unwrap();
        let pf = SeqParams::new(a as f64 / 8.0, b as f64 / 8.0).unwrap();
        let close = |x: f64, y: &ExactRational| (x - to_f64(y)).abs() <= 1e-13 * x.abs().max(1.0);
        prop_assert!(close(phi_n(pf, n), &phi_n_exact(&pe, n)));
        prop_assert!(close(rho_n(pf, n), &rho_n_exact(&pe, n)));
        prop_assert!(close(tau_n(pf, n), &tau_n_exact(&pe, n)));
        prop_assert!(close(lambda_n(pf, n), &lambda_n_exact(&pe, n)));
    }

    #[test]
    fn turning_points_agree_away_from_threshold(a in 1i64..24, b in 1i64..48) {
        let (af, bf) = (a as f64 / 8.0, b as f64 / 8.0);
        for kind in [ProductKind::PhiTau, ProductKind::RhoLambda] {
            if (bf - turning_threshold(kind, af)).abs() < 0.05 {
                continue;
            }
            let f = product_turning_point(kind, SeqParams::new(af, bf).unwrap(), 40).unwrap();
            let e = product_turning_point_exact(kind, &ExactSeqParams::new(rat(a, 8), rat(b, 8)).unwrap(), 40).unwrap();
            prop_assert_eq!(f, e);
        }
    }
}
