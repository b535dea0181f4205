//! Gamma-family scalar functions: Γ, ψ, ψ′, B, the Pochhammer symbol and
//! the Ramanujan constant R(a, b) = −2γ − ψ(a) − ψ(b).
//!
//! Public entry points take positive arguments only. The crate-internal
//! `*_any` variants extend Γ, 1/Γ and ψ to negative non-integers through
//! the reflection formulas; the hypergeometric connection formulas need
//! them when a Maclaurin parameter is negative (e.g. `a − 1` in ℰₐ).

use std::f64::consts::PI;

use num::{BigRational, One};

use crate::error::{domain, Result};

/// Euler–Mascheroni constant γ.
#[allow(clippy::excessive_precision)]
pub const EULER_GAMMA: f64 = 0.577215664901532860606512090082402431;

/// Textual value of γ to 36 significant digits.
pub const EULER_GAMMA_DIGITS: &str = "0.577215664901532860606512090082402431";

const LANCZOS_G: f64 = 7.0;

#[allow(clippy::excessive_precision, clippy::unreadable_literal)]
const LANCZOS_COEFFS: [f64; 9] = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
];

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// Lanczos sum A(x) and the shifted base t = x + g + 1/2, for x ≥ 1/2
/// (written with the usual x → x − 1 convention).
fn lanczos(x: f64) -> (f64, f64) {
    let z = x - 1.0;
    let mut acc = LANCZOS_COEFFS[0];
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    (acc, z + LANCZOS_G + 0.5)
}

fn gamma_lanczos(x: f64) -> f64 {
    let (acc, t) = lanczos(x);
    // split the power so t^(x-1/2) does not overflow before e^-t pulls it back
    let half = t.powf(0.5 * (x - 0.5));
    (2.0 * PI).sqrt() * half * (half * (-t).exp()) * acc
}

/// Γ(x) for x > 0.
pub fn gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return domain(
            "gamma",
            format!("argument must be positive and finite, got {x}"),
        );
    }
    Ok(gamma_any(x))
}

/// Γ on the whole real line minus the poles; poles return ±∞.
pub(crate) fn gamma_any(x: f64) -> f64 {
    if x < 0.5 {
        if x == x.floor() {
            return f64::INFINITY;
        }
        PI / ((PI * x).sin() * gamma_lanczos(1.0 - x))
    } else {
        gamma_lanczos(x)
    }
}

/// 1/Γ(x) on the whole real line, zero at the poles of Γ.
pub(crate) fn rgamma(x: f64) -> f64 {
    if x <= 0.0 && x == x.floor() {
        return 0.0;
    }
    if x < 0.5 {
        (PI * x).sin() * gamma_lanczos(1.0 - x) / PI
    } else {
        1.0 / gamma_lanczos(x)
    }
}

/// (ln|Γ(x)|, sign Γ(x)) for non-pole x.
pub(crate) fn lgamma_signed(x: f64) -> (f64, f64) {
    if x < 0.5 {
        let s = (PI * x).sin();
        let (l, _) = lgamma_signed(1.0 - x);
        (PI.ln() - s.abs().ln() - l, s.signum())
    } else {
        let (acc, t) = lanczos(x);
        (LN_SQRT_2PI + (x - 0.5) * t.ln() - t + acc.ln(), 1.0)
    }
}

/// ln Γ(x) for x > 0.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return domain(
            "ln_gamma",
            format!("argument must be positive and finite, got {x}"),
        );
    }
    Ok(lgamma_signed(x).0)
}

/// Π Γ(num) / Π Γ(den), evaluated directly when every argument is moderate
/// and through signed log-gamma otherwise. Reciprocal gamma is used for the
/// denominator so that poles there give an exact zero.
pub(crate) fn gamma_ratio(num: &[f64], den: &[f64]) -> f64 {
    let moderate = num.iter().chain(den).all(|x| x.abs() <= 60.0);
    if moderate {
        let mut v = 1.0;
        for &x in num {
            v *= gamma_any(x);
        }
        for &x in den {
            v *= rgamma(x);
        }
        return v;
    }
    if den.iter().any(|&x| x <= 0.0 && x == x.floor()) {
        return 0.0;
    }
    let mut log = 0.0;
    let mut sign = 1.0;
    for &x in num {
        let (l, s) = lgamma_signed(x);
        log += l;
        sign *= s;
    }
    for &x in den {
        let (l, s) = lgamma_signed(x);
        log -= l;
        sign *= s;
    }
    sign * log.exp()
}

fn digamma_positive(x: f64) -> f64 {
    if x == x.floor() && x <= 64.0 {
        // harmonic number minus γ
        let h: f64 = (1..x as u32).map(|k| 1.0 / k as f64).sum();
        return h - EULER_GAMMA;
    }
    // shift up to x ≥ 10, keeping the reciprocal sum separate
    let mut y = x;
    let mut shift = 0.0;
    while y < 10.0 {
        shift += 1.0 / y;
        y += 1.0;
    }
    let w = 1.0 / (y * y);
    let series = w
        * (1.0 / 12.0
            - w * (1.0 / 120.0
                - w * (1.0 / 252.0
                    - w * (1.0 / 240.0 - w * (1.0 / 132.0 - w * (691.0 / 32760.0 - w / 12.0))))));
    (y.ln() - 0.5 / y - series) - shift
}

/// ψ(x) = Γ′(x)/Γ(x) for x > 0.
pub fn digamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return domain(
            "digamma",
            format!("argument must be positive and finite, got {x}"),
        );
    }
    Ok(digamma_positive(x))
}

/// ψ on the real line minus the poles (reflection for x ≤ 0).
pub(crate) fn digamma_any(x: f64) -> f64 {
    if x > 0.0 {
        digamma_positive(x)
    } else if x == x.floor() {
        f64::NAN
    } else {
        digamma_positive(1.0 - x) - PI / (PI * x).tan()
    }
}

/// ψ′(x) for x > 0.
pub fn trigamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return domain(
            "trigamma",
            format!("argument must be positive and finite, got {x}"),
        );
    }
    let mut y = x;
    let mut shift = 0.0;
    while y < 10.0 {
        shift += 1.0 / (y * y);
        y += 1.0;
    }
    let w = 1.0 / (y * y);
    let series = 1.0 / y
        + w / 2.0
        + w / y
            * (1.0 / 6.0
                - w * (1.0 / 30.0
                    - w * (1.0 / 42.0
                        - w * (1.0 / 30.0
                            - w * (5.0 / 66.0 - w * (691.0 / 2730.0 - w * 7.0 / 6.0))))));
    Ok(series + shift)
}

/// Beta function B(x, y) = Γ(x)Γ(y)/Γ(x+y).
pub fn beta_fn(x: f64, y: f64) -> Result<f64> {
    if !(x > 0.0 && y > 0.0) || !x.is_finite() || !y.is_finite() {
        return domain(
            "beta_fn",
            format!("arguments must be positive, got ({x}, {y})"),
        );
    }
    Ok(gamma_ratio(&[x, y], &[x + y]))
}

/// Ramanujan constant R(a, b) = −2γ − ψ(a) − ψ(b).
pub fn ramanujan_r(a: f64, b: f64) -> Result<f64> {
    if !(a > 0.0 && b > 0.0) {
        return domain(
            "ramanujan_r",
            format!("arguments must be positive, got ({a}, {b})"),
        );
    }
    // ψ(a) + ψ(b) is commutative in IEEE arithmetic, so R is exactly symmetric
    Ok(-2.0 * EULER_GAMMA - (digamma_positive(a) + digamma_positive(b)))
}

/// Rising factorial (x)ₙ = x(x+1)⋯(x+n−1), (x)₀ = 1.
pub fn pochhammer(x: f64, n: u32) -> f64 {
    (0..n).fold(1.0, |acc, k| acc * (x + k as f64))
}

/// Exact rising factorial over the rationals.
pub fn pochhammer_exact(x: &BigRational, n: u32) -> BigRational {
    let mut acc = BigRational::one();
    let mut term = x.clone();
    for _ in 0..n {
        acc *= &term;
        term += BigRational::one();
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigInt;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn gamma_classical_values() {
        assert!(rel(gamma(1.0).unwrap(), 1.0) < 1e-14);
        assert!(rel(gamma(0.5).unwrap(), PI.sqrt()) < 1e-14);
        assert!(rel(gamma(2.5).unwrap(), 0.75 * PI.sqrt()) < 1e-14);
        // 10! and 49!
        assert!(rel(gamma(11.0).unwrap(), 3_628_800.0) < 1e-13);
        assert!(rel(gamma(50.0).unwrap(), 6.082_818_640_342_675e62) < 1e-13);
    }

    #[test]
    fn nonpositive_arguments_are_rejected() {
        assert!(gamma(0.0).is_err());
        assert!(gamma(-1.5).is_err());
        assert!(digamma(0.0).is_err());
        assert!(trigamma(-2.0).is_err());
        assert!(beta_fn(1.0, 0.0).is_err());
        assert!(ramanujan_r(-1.0, 1.0).is_err());
    }

    #[test]
    fn digamma_values() {
        assert!((digamma(1.0).unwrap() + EULER_GAMMA).abs() < 1e-15);
        let expect = -EULER_GAMMA - 2.0 * 2f64.ln();
        assert!((digamma(0.5).unwrap() - expect).abs() < 1e-14);
        assert!((digamma(2.0).unwrap() - digamma(1.0).unwrap() - 1.0).abs() < 1e-15);
        // ψ(1e-3) = -1000.5755719318103... (mpmath)
        assert!((digamma(1e-3).unwrap() + 1_000.575_571_931_810_3).abs() < 2e-13);
        // ψ(50) (mpmath)
        assert!((digamma(50.0).unwrap() - 3.901_989_673_427_892_7).abs() < 1e-14);
    }

    #[test]
    fn trigamma_values() {
        let z2 = PI * PI / 6.0;
        assert!((trigamma(1.0).unwrap() - z2).abs() < 1e-14);
        assert!((trigamma(0.5).unwrap() - PI * PI / 2.0).abs() < 1e-13);
        assert!((trigamma(2.0).unwrap() - (z2 - 1.0)).abs() < 1e-14);
    }

    #[test]
    fn beta_values() {
        assert!(rel(beta_fn(1.0, 1.0).unwrap(), 1.0) < 1e-14);
        assert!(rel(beta_fn(0.5, 0.5).unwrap(), PI) < 1e-13);
        assert!(rel(beta_fn(0.25, 0.75).unwrap(), PI * 2f64.sqrt()) < 1e-13);
        // log-space branch: B(80, 90) against lgamma sums done by hand
        let b = beta_fn(80.0, 90.0).unwrap();
        let l = ln_gamma(80.0).unwrap() + ln_gamma(90.0).unwrap() - ln_gamma(170.0).unwrap();
        assert!(rel(b, l.exp()) < 1e-11);
    }

    #[test]
    fn ramanujan_values() {
        assert!(ramanujan_r(1.0, 1.0).unwrap().abs() < 1e-15);
        assert!((ramanujan_r(0.5, 0.5).unwrap() - 16f64.ln()).abs() < 1e-14);
        // ψ(1/4) + ψ(3/4) = −2γ − 6 ln 2
        assert!((ramanujan_r(0.25, 0.75).unwrap() - 6.0 * 2f64.ln()).abs() < 1e-13);
    }

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(0.3, 0), 1.0);
        assert_eq!(pochhammer(0.5, 3), 15.0 / 8.0);
        assert_eq!(pochhammer(1.0, 6), 720.0);
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(
            pochhammer_exact(&half, 3),
            BigRational::new(BigInt::from(15), BigInt::from(8))
        );
    }

    #[test]
    fn reflection_helpers_agree() {
        for &x in &[-2.5, -0.3, 0.2, 1.7] {
            assert!((gamma_any(x) * rgamma(x) - 1.0).abs() < 1e-13);
        }
        assert_eq!(rgamma(-3.0), 0.0);
        let (l, s) = lgamma_signed(-0.5);
        assert!(rel(s * l.exp(), -2.0 * PI.sqrt()) < 1e-13);
        assert!((digamma_any(-0.5) - 0.036_489_973_978_576_52).abs() < 1e-13);
    }

    #[test]
    fn euler_gamma_digits_consistent() {
        let parsed: f64 = EULER_GAMMA_DIGITS.parse().unwrap();
        assert_eq!(parsed, EULER_GAMMA);
        assert!(EULER_GAMMA_DIGITS.len() >= 32);
    }
}
