use hypturan::functionals::{
    alpha, beta, bound_chain, f2, f_ratio, lambda, lambda2, lambda_half_closed, ChainInput,
    ChainKind, SymmetricParams, TuranParams, Verdict,
};
use hypturan::hyp2f1::{f21, HypParams, Point};
use proptest::prelude::*;

const EPS: f64 = 1e-13;

#[test]
fn equal_b_collapses() {
    let p = TuranParams::new(0.7, 1.3, 1.3).unwrap();
    assert!(p.is_equal_case());
    assert_eq!(p.alpha_bar, 1.0);
    assert_eq!(lambda2(&p, 0.6, EPS).unwrap(), 1.0);
    assert!(TuranParams::new(0.7, 1.4, 1.3).is_err());
}

#[test]
fn missing_parameters_are_precondition_errors() {
    let input = ChainInput {
        a: Some(0.5),
        r: 0.5,
        ..Default::default()
    };
    assert!(bound_chain(ChainKind::Ineqlam2, &input, EPS).is_err());
    let input = ChainInput {
        a: Some(0.5),
        r: 0.5,
        n: None,
        ..Default::default()
    };
    assert!(bound_chain(ChainKind::Ineqa1pp, &input, EPS).is_err());
}

#[test]
fn lambda_limits() {
    // Λ(a, 1 − 10⁻²⁰⁰) − α from 400-digit reference evaluations
    let reference = [
        (0.2, -0.001851600117988372),
        (0.5, -0.003989712810916336),
        (0.8, -0.020_390_962_732_293_42),
    ];
    for (a, want) in reference {
        let l0 = lambda(a, 1e-9, EPS).unwrap();
        assert!((l0 - 1.0).abs() < 1e-8);
        // the approach to α is only logarithmic in 1 − r
        let gap = |s: f64| lambda(a, Point::from_complement(s), EPS).unwrap() - alpha(a);
        assert!(
            gap(1e-200).abs() < gap(1e-100).abs() && gap(1e-100).abs() < gap(1e-20).abs(),
            "a = {a}"
        );
        assert!(
            (gap(1e-200) - want).abs() < 1e-12,
            "a = {a}: {}",
            gap(1e-200)
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lambda_is_quotient_of_ratios(a in 0.05f64..0.95, r in 0.01f64..0.99) {
        let f = |b: f64, c: f64| f21(HypParams::new(a, b, c).unwrap(), r, EPS).unwrap();
        let want = (f(1.0 - a, 2.0) / f(1.0 - a, 1.0)) / (f(1.5 - a, 2.5) / f(1.5 - a, 1.5));
        prop_assert!((lambda(a, r, EPS).unwrap() - want).abs() < 1e-12 * want);
        prop_assert!((lambda(a, r, EPS).unwrap() - f_ratio(a, 1.0 - a, r, EPS).unwrap() / f_ratio(a, 1.5 - a, r, EPS).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn lambda_half_closed_form(r in 0.01f64..0.99) {
        prop_assert!((lambda(0.5, r, EPS).unwrap() - lambda_half_closed(r).unwrap()).abs() < 1e-10);
    }

    #[test]
    fn f2_below_its_limit(a in 0.05f64..0.95, r in 0.05f64..0.999) {
        let v = f2(a, r, EPS).unwrap();
        prop_assert!(v > 0.0 && v < alpha(a) * beta(a).unwrap() + 1e-12);
    }

    #[test]
    fn symmetric_chains_hold(a in 0.05f64..0.95, r in 0.02f64..0.98, n in 0usize..4) {
        let input = ChainInput { a: Some(a), r, n: Some(n), ..Default::default() };
        for chain in [ChainKind::Ineqf2, ChainKind::Ineqlam1, ChainKind::Ineqlam1p] {
            let rep = bound_chain(chain, &input, EPS).unwrap();
            prop_assert_eq!(rep.verdict, Verdict::Pass, "{:?} slacks {:?}", chain, rep.slacks);
        }
    }

    #[test]
    fn general_chains_hold(a in 0.05f64..1.0, b1 in 0.05f64..2.5, gap in 0.01f64..2.0, r in 0.02f64..0.98, n in 0usize..4) {
        let input = ChainInput { a: Some(a), b1: Some(b1), b2: Some(b1 + gap), r, n: Some(n) };
        for chain in [ChainKind::Ineqlam23, ChainKind::Ineqlam23p] {
            let rep = bound_chain(chain, &input, EPS).unwrap();
            prop_assert_eq!(rep.verdict, Verdict::Pass, "{:?} slacks {:?}", chain, rep.slacks);
        }
    }

    #[test]
    fn radius_chains_hold(r in 0.02f64..0.98) {
        let input = ChainInput { r, ..Default::default() };
        for chain in [ChainKind::Ineqwv, ChainKind::Ineqh14, ChainKind::Ineq2g2] {
            let rep = bound_chain(chain, &input, EPS).unwrap();
            prop_assert_eq!(rep.verdict, Verdict::Pass, "{:?} slacks {:?}", chain, rep.slacks);
        }
    }

    #[test]
    fn chain_slacks_are_link_differences(a in 0.05f64..0.95, r in 0.05f64..0.95, n in 0usize..4) {
        let input = ChainInput { a: Some(a), r, n: Some(n), ..Default::default() };
        let rep = bound_chain(ChainKind::Ineqa1pp, &input, EPS).unwrap();
        prop_assert_eq!(rep.slacks.len() + 1, rep.links.len());
        for (i, s) in rep.slacks.iter().enumerate() {
            prop_assert_eq!(*s, rep.links[i + 1].value - rep.links[i].value);
        }
    }

    #[test]
    fn symmetric_pair_reduces_to_lambda(a in 0.05f64..0.95, r in 0.02f64..0.98) {
        let s = SymmetricParams::new(a).unwrap();
        let g = s.as_general().unwrap();
        prop_assert!((g.alpha_bar - s.alpha).abs() < 1e-12);
        prop_assert!((lambda2(&g, r, EPS).unwrap() - lambda(a, r, EPS).unwrap()).abs() < 1e-12);
    }
}
