use hypturan::elliptic::{agm_k, e_a, k_a, Modulus};
use hypturan::hyp2f1::{f21, f21_euler, f21_value_at_1, f21_with, HypParams, Point, Strategy};
use hypturan::special::{beta_fn, digamma, gamma, ln_gamma, pochhammer, ramanujan_r};
use proptest::prelude::*;
use std::f64::consts::PI;

const EPS: f64 = 1e-14;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

/// Plain term-by-term sum, independent of the library's tail bounds.
fn naive_f21(a: f64, b: f64, c: f64, x: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for n in 0..4000 {
        let n = n as f64;
        term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * x;
        sum += term;
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

#[test]
fn gamma_reference_values() {
    assert!(rel(gamma(0.5).unwrap(), PI.sqrt()) < 1e-14);
    assert!(rel(gamma(5.0).unwrap(), 24.0) < 1e-14);
    assert!(rel(gamma(1.0 / 3.0).unwrap(), 2.678_938_534_707_747_6) < 1e-14);
    assert!((digamma(1.0).unwrap() + 0.577_215_664_901_532_9).abs() < 1e-15);
    assert!(rel(beta_fn(0.25, 0.75).unwrap(), PI * 2f64.sqrt()) < 1e-13);
    assert!(gamma(0.0).is_err());
}

#[test]
fn ramanujan_r_half() {
    // R(1/2,1/2) = −2ψ(1/2) − 2γ = 4 log 2
    assert!((ramanujan_r(0.5, 0.5).unwrap() - 4.0 * 2f64.ln()).abs() < 1e-13);
}

#[test]
fn complete_elliptic_integrals() {
    let m = Modulus::new(0.5).unwrap();
    assert!(rel(k_a(0.5, m).unwrap(), 1.685_750_354_812_596) < 1e-14);
    assert!(rel(e_a(0.5, m).unwrap(), 1.467_462_209_339_427) < 1e-14);
    for &r in &[0.1, 0.5, 0.9, 0.999] {
        let m = Modulus::new(r).unwrap();
        assert!(
            rel(agm_k(r).unwrap(), k_a(0.5, m).unwrap()) < 1e-13,
            "r = {r}"
        );
    }
}

#[test]
fn gauss_value_near_one() {
    let p = HypParams::new(0.3, 0.4, 1.9).unwrap();
    let g = f21_value_at_1(p).unwrap();
    let near = f21(p, Point::from_complement(1e-12), EPS).unwrap();
    assert!(rel(near, g) < 1e-9);
}

#[test]
fn point_keeps_tiny_complements() {
    let p = Point::from_complement(1e-300);
    assert_eq!(p.complement(), 1e-300);
    assert_eq!(p.x(), 1.0);
    // F(1/2,1/2;1;x) ~ (1/π) log(16/(1−x)) as x → 1
    let v = f21(HypParams::new(0.5, 0.5, 1.0).unwrap(), p, EPS).unwrap();
    assert!(rel(v, (16.0f64.ln() + 300.0 * 10f64.ln()) / PI) < 1e-12);
}

proptest! {
    #[test]
    fn gamma_recurrence(x in 0.05f64..30.0) {
        prop_assert!(rel(gamma(x + 1.0).unwrap(), x * gamma(x).unwrap()) < 1e-12);
        prop_assert!((ln_gamma(x).unwrap() - gamma(x).unwrap().ln()).abs() < 1e-12 * (1.0 + ln_gamma(x).unwrap().abs()));
    }

    #[test]
    fn digamma_recurrence(x in 0.05f64..40.0) {
        prop_assert!((digamma(x + 1.0).unwrap() - digamma(x).unwrap() - 1.0 / x).abs() < 1e-12 * (1.0 + 1.0 / x));
    }

    #[test]
    fn pochhammer_matches_gamma_ratio(x in 0.1f64..5.0, n in 0u32..12) {
        let g = gamma(x + n as f64).unwrap() / gamma(x).unwrap();
        prop_assert!(rel(pochhammer(x, n), g) < 1e-12);
    }

    #[test]
    fn f21_matches_direct_sum(a in 0.05f64..3.0, b in 0.05f64..3.0, c in 0.1f64..4.0, x in 0.0f64..0.6) {
        let p = HypParams::new(a, b, c).unwrap();
        prop_assert!(rel(f21(p, x, EPS).unwrap(), naive_f21(a, b, c, x)) < 1e-12);
    }

    #[test]
    fn f21_symmetric_in_numerator(a in 0.05f64..3.0, b in 0.05f64..3.0, c in 0.1f64..4.0, x in 0.0f64..0.99) {
        let v1 = f21(HypParams::new(a, b, c).unwrap(), x, EPS).unwrap();
        let v2 = f21(HypParams::new(b, a, c).unwrap(), x, EPS).unwrap();
        prop_assert!(rel(v1, v2) < 1e-12);
    }

    #[test]
    fn routes_agree_on_overlap(a in 0.05f64..1.5, b in 0.05f64..1.5, s in 0.0f64..2.0, int_s in any::<bool>(), x in 0.55f64..0.85) {
        // either an integer excess or one kept clear of integers
        let s = if int_s { s.round() } else { s.floor() + 0.1 + 0.8 * s.fract() };
        let p = HypParams::new(a, b, a + b + s).unwrap();
        let m = f21_with(p, x, EPS, Strategy::Maclaurin).unwrap().value;
        let c = f21_with(p, x, EPS, Strategy::Connection).unwrap().value;
        prop_assert!(rel(m, c) < 1e-9, "maclaurin {} connection {}", m, c);
    }

    #[test]
    fn euler_transform_consistent(a in 0.05f64..2.0, b in 0.05f64..2.0, s in 0.05f64..2.0, x in 0.0f64..0.95) {
        let p = HypParams::new(a, b, a + b + s).unwrap();
        prop_assert!(rel(f21(p, x, EPS).unwrap(), f21_euler(p, x, EPS).unwrap()) < 1e-10);
    }

    #[test]
    fn legendre_relation(r in 0.01f64..0.99) {
        // E K' + E' K − K K' = π/2
        let m = Modulus::new(r).unwrap();
        let mp = Modulus::new((1.0 - r * r).sqrt()).unwrap();
        let (k, e) = (k_a(0.5, m).unwrap(), e_a(0.5, m).unwrap());
        let (kp, ep) = (k_a(0.5, mp).unwrap(), e_a(0.5, mp).unwrap());
        prop_assert!((e * kp + ep * k - k * kp - PI / 2.0).abs() < 1e-12);
    }
}
