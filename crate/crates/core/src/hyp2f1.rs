//! Gaussian hypergeometric function F(a, b; c; x) on [0, 1).
//!
//! Three evaluation routes are available:
//!
//! * the Maclaurin series with a certified geometric tail bound, used for
//!   x ≤ 0.9;
//! * the 1−x connection formulas: the logarithmic forms for integer
//!   c−a−b (the zero-balanced case c = a+b being the Ramanujan expansion
//!   whose leading term is [`zero_balanced_asymptote`]) and the two-term
//!   power form otherwise. These take `1 − x` directly, so points such as
//!   1 − 10⁻²⁰⁰ are representable through [`Point::from_complement`];
//! * the Euler transformation F = (1−x)^{c−a−b} F(c−a, c−b; c; x), exposed
//!   as [`f21_euler`] and used internally to flip negative excesses.
//!
//! Exact Maclaurin coefficients over the rationals come from
//! [`f21_series_coeffs`].

use serde::Serialize;

use crate::error::{domain, Result};
use crate::series::{ExactRational, SeriesPoly};
use crate::special::{
    beta_fn, digamma_any, gamma_ratio, pochhammer_exact, ramanujan_r, EULER_GAMMA,
};

use num::{BigRational, One, Zero};

/// Hard cap on the number of series terms.
pub const MAX_TERMS: usize = 2_000_000;

/// Default relative tolerance.
pub const DEFAULT_EPS: f64 = 1e-12;

/// Above this x the connection formulas replace the Maclaurin series.
pub const CONNECTION_THRESHOLD: f64 = 0.9;

const MIN_EPS: f64 = 1e-15;
const MAX_EPS: f64 = 1e-6;

/// Parameters (a, b; c) of ₂F₁.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HypParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl HypParams {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return domain(
                "f21",
                format!("parameters must be finite, got ({a}, {b}; {c})"),
            );
        }
        if c <= 0.0 && c == c.floor() {
            return domain("f21", format!("c = {c} is a nonpositive integer"));
        }
        Ok(HypParams { a, b, c })
    }

    /// c − a − b.
    pub fn excess(&self) -> f64 {
        self.c - self.a - self.b
    }

    pub fn is_zero_balanced(&self) -> bool {
        is_integer(self.excess(), self.c).is_some_and(|m| m == 0)
    }
}

/// A point x ∈ [0, 1) stored together with its complement 1 − x, so that
/// points extremely close to 1 keep their full relative accuracy.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Point {
    x: f64,
    comp: f64,
}

impl Point {
    pub fn new(x: f64) -> Self {
        Point { x, comp: 1.0 - x }
    }

    /// The point 1 − s.
    pub fn from_complement(s: f64) -> Self {
        Point {
            x: 1.0 - s,
            comp: s,
        }
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    /// 1 − x.
    pub fn complement(&self) -> f64 {
        self.comp
    }

    /// A point with an independently known complement (caller guarantees consistency).
    pub fn with_complement(x: f64, comp: f64) -> Self {
        Point { x, comp }
    }

    /// x² with complement (1−x)(1+x).
    pub fn square(&self) -> Self {
        Point {
            x: self.x * self.x,
            comp: self.comp * (1.0 + self.x),
        }
    }

    /// √x with complement (1−x)/(1+√x).
    pub fn sqrt(&self) -> Self {
        let r = self.x.sqrt();
        Point {
            x: r,
            comp: self.comp / (1.0 + r),
        }
    }

    pub(crate) fn check_unit(&self, op: &'static str) -> Result<()> {
        if !(self.x >= 0.0 && self.comp > 0.0 && self.comp <= 1.0) {
            return domain(
                op,
                format!(
                    "argument must lie in [0, 1), got x = {} (1 − x = {})",
                    self.x, self.comp
                ),
            );
        }
        Ok(())
    }

    pub(crate) fn check_open(&self, op: &'static str) -> Result<()> {
        if !(self.x > 0.0 && self.comp > 0.0 && self.comp < 1.0) {
            return domain(
                op,
                format!(
                    "argument must lie in (0, 1), got x = {} (1 − x = {})",
                    self.x, self.comp
                ),
            );
        }
        Ok(())
    }
}

impl From<f64> for Point {
    fn from(x: f64) -> Self {
        Point::new(x)
    }
}

/// Which route evaluated a value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Method {
    Trivial,
    Maclaurin,
    /// Logarithmic 1−x expansion (integer c−a−b).
    LogConnection,
    /// Two-term 1−x expansion (non-integer c−a−b).
    PowerConnection,
}

/// Caller-selectable evaluation route.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Strategy {
    Auto,
    Maclaurin,
    Connection,
}

/// A value with its accuracy report.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HypEval {
    pub value: f64,
    /// Number of series terms summed (largest over the pieces).
    pub terms: usize,
    /// Truncation bound plus a rounding estimate.
    pub error_bound: f64,
    /// Whether the truncation bound met `eps · max(1, |value|)`.
    pub converged: bool,
    pub method: Method,
}

impl HypEval {
    fn exact(value: f64) -> Self {
        HypEval {
            value,
            terms: 0,
            error_bound: 0.0,
            converged: true,
            method: Method::Trivial,
        }
    }
}

fn is_integer(s: f64, scale: f64) -> Option<i64> {
    let m = s.round();
    ((s - m).abs() <= 1e-12 * (1.0 + scale.abs())).then_some(m as i64)
}

fn check_eps(op: &'static str, eps: f64) -> Result<()> {
    if !(MIN_EPS..=MAX_EPS).contains(&eps) {
        return domain(
            op,
            format!("eps must lie in [{MIN_EPS:e}, {MAX_EPS:e}], got {eps:e}"),
        );
    }
    Ok(())
}

/// F(a, b; c; x) with automatic route selection.
pub fn f21(p: HypParams, x: impl Into<Point>, eps: f64) -> Result<f64> {
    f21_eval(p, x, eps).map(|e| e.value)
}

/// F(a, b; c; x) with its accuracy report.
pub fn f21_eval(p: HypParams, x: impl Into<Point>, eps: f64) -> Result<HypEval> {
    f21_with(p, x, eps, Strategy::Auto)
}

pub fn f21_with(
    p: HypParams,
    x: impl Into<Point>,
    eps: f64,
    strategy: Strategy,
) -> Result<HypEval> {
    let x = x.into();
    check_eps("f21", eps)?;
    x.check_unit("f21")?;
    if x.x == 0.0 {
        return Ok(HypEval::exact(1.0));
    }
    let use_connection = match strategy {
        Strategy::Maclaurin => false,
        Strategy::Connection => true,
        Strategy::Auto => x.x > CONNECTION_THRESHOLD,
    };
    if use_connection && !terminates(p) {
        Ok(connection(p, x.comp, eps))
    } else {
        Ok(maclaurin(p.a, p.b, p.c, x.x, eps))
    }
}

fn terminates(p: HypParams) -> bool {
    let np = |v: f64| v <= 0.0 && v == v.floor();
    np(p.a) || np(p.b)
}

/// Maclaurin partial sum with the tail bound
/// |t_{k+1}/t_k| ≤ x (k+|a|)(k+|b|)/((k+c)(k+1)) ≤ q for all k ≥ n.
fn maclaurin(a: f64, b: f64, c: f64, x: f64, eps: f64) -> HypEval {
    let (aa, ab) = (a.abs(), b.abs());
    let u = (aa + ab - c - 1.0).max(0.0);
    let v = (aa * ab - c).max(0.0);
    let cneg = (-c).max(0.0);
    let mut sum = 1.0;
    let mut abs_sum = 1.0;
    let mut term = 1.0;
    let mut tail = f64::INFINITY;
    let mut converged = false;
    let mut n = 0usize;
    while n < MAX_TERMS {
        let nf = n as f64;
        term *= (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * x;
        n += 1;
        sum += term;
        abs_sum += term.abs();
        if term == 0.0 {
            tail = 0.0;
            converged = true;
            break;
        }
        let k = n as f64;
        let q = if c > 0.0 {
            x * (1.0 + u / k + v / (k * k))
        } else if k > 2.0 * cneg {
            x * (1.0 + aa / k) * (1.0 + ab / k) / (1.0 - cneg / k)
        } else {
            f64::INFINITY
        };
        if q < 1.0 {
            tail = term.abs() * q / (1.0 - q);
            if tail <= eps * sum.abs().max(1.0) {
                converged = true;
                break;
            }
        }
    }
    HypEval {
        value: sum,
        terms: n,
        error_bound: tail + 4.0 * f64::EPSILON * abs_sum,
        converged,
        method: Method::Maclaurin,
    }
}

/// 1−x expansion; `s` is 1 − x.
fn connection(p: HypParams, s: f64, eps: f64) -> HypEval {
    let HypParams { a, b, c } = p;
    match is_integer(p.excess(), c) {
        Some(m) if m >= 0 => log_connection(a, b, m as u32, s, eps),
        Some(m) => {
            // Euler: F(a,b;c;x) = (1−x)^m F(c−a, c−b; c; x) with excess −m > 0
            let inner = log_connection(c - a, c - b, (-m) as u32, s, eps);
            let f = s.powi(m as i32);
            HypEval {
                value: f * inner.value,
                error_bound: f * inner.error_bound,
                ..inner
            }
        }
        None => power_connection(p, s, eps),
    }
}

/// Logarithmic 1−x expansion of F(a, b; a+b+m; x), m ≥ 0.
///
/// m = 0:  F = Γ(a+b)/(Γ(a)Γ(b)) Σ (a)ₙ(b)ₙ/(n!)² [2ψ(n+1) − ψ(a+n) − ψ(b+n) − ln s] sⁿ
///
/// m ≥ 1:  F = Γ(m)Γ(a+b+m)/(Γ(a+m)Γ(b+m)) Σ_{n<m} (a)ₙ(b)ₙ/(n!(1−m)ₙ) sⁿ
///           − (−s)^m Γ(a+b+m)/(Γ(a)Γ(b)) Σ (a+m)ₙ(b+m)ₙ/(n!(n+m)!) sⁿ
///             × [ln s − ψ(n+1) − ψ(n+m+1) + ψ(a+n+m) + ψ(b+n+m)]
fn log_connection(a: f64, b: f64, m: u32, s: f64, eps: f64) -> HypEval {
    let mf = m as f64;
    let ln_s = s.ln();

    let mut finite = 0.0;
    let mut finite_abs = 0.0;
    if m > 0 {
        let pref = gamma_ratio(&[mf, a + b + mf], &[a + mf, b + mf]);
        let mut t = 1.0f64;
        for n in 0..m {
            let nf = n as f64;
            finite += t;
            finite_abs += t.abs();
            t *= (a + nf) * (b + nf) / ((nf + 1.0) * (1.0 - mf + nf)) * s;
        }
        finite *= pref;
        finite_abs *= pref.abs();
    }

    // infinite part: value = finite + outer * Σ coef_n * bracket_n
    let (outer, sign_bracket) = if m == 0 {
        (gamma_ratio(&[a + b], &[]) * gamma_ratio(&[], &[a, b]), -1.0)
    } else {
        let sign = if m.is_multiple_of(2) { -1.0 } else { 1.0 };
        (
            sign * s.powi(m as i32) * gamma_ratio(&[a + b + mf], &[a, b]),
            1.0,
        )
    };
    let (am, bm) = (a + mf, b + mf);
    let big = am.abs().max(bm.abs()).max(1.0);
    let mut coef = 1.0 / gamma_ratio(&[mf + 1.0], &[]);
    let mut psi_n1 = -EULER_GAMMA;
    let mut psi_nm1 = digamma_any(mf + 1.0);
    let mut psi_a = digamma_any(am);
    let mut psi_b = digamma_any(bm);
    let mut sum = 0.0;
    let mut abs_sum = 0.0;
    let mut tail = f64::INFINITY;
    let mut converged = false;
    let mut n = 0usize;
    while n < MAX_TERMS {
        let nf = n as f64;
        // m = 0: 2ψ(n+1) − ψ(a+n) − ψ(b+n) − ln s ; m ≥ 1: ln s − ψ(n+1) − ψ(n+m+1) + ψ(a+n+m) + ψ(b+n+m)
        let bracket = sign_bracket * (ln_s - psi_n1 - psi_nm1 + psi_a + psi_b);
        let term = coef * bracket;
        sum += term;
        abs_sum += term.abs();
        n += 1;

        let q = s * ((nf + big) / (nf + 1.0)).powi(2);
        let bracket_max = ln_s.abs()
            + psi_n1.abs()
            + psi_nm1.abs()
            + psi_a.abs()
            + psi_b.abs()
            + 4.0 * ((nf + mf + big + 2.0).ln() + 1.0);
        let value = finite + outer * sum;
        if q < 0.5 {
            let next = coef.abs() * q;
            tail = outer.abs() * next * bracket_max / (1.0 - q);
            if tail <= eps * value.abs().max(1.0) || coef == 0.0 {
                converged = true;
                break;
            }
        }

        coef *= am_step(am, bm, nf) / ((nf + 1.0) * (nf + mf + 1.0)) * s;
        psi_n1 += 1.0 / (nf + 1.0);
        psi_nm1 += 1.0 / (nf + mf + 1.0);
        psi_a += 1.0 / (am + nf);
        psi_b += 1.0 / (bm + nf);
    }
    let value = finite + outer * sum;
    HypEval {
        value,
        terms: n,
        error_bound: tail + 8.0 * f64::EPSILON * (finite_abs + outer.abs() * abs_sum),
        converged,
        method: Method::LogConnection,
    }
}

#[inline]
fn am_step(am: f64, bm: f64, nf: f64) -> f64 {
    (am + nf) * (bm + nf)
}

/// Two-term 1−x expansion for non-integer excess σ = c − a − b:
/// F = Γ(c)Γ(σ)/(Γ(c−a)Γ(c−b)) F(a, b; 1−σ; s)
///   + s^σ Γ(c)Γ(−σ)/(Γ(a)Γ(b)) F(c−a, c−b; 1+σ; s).
fn power_connection(p: HypParams, s: f64, eps: f64) -> HypEval {
    let HypParams { a, b, c } = p;
    let sigma = p.excess();
    let g1 = gamma_ratio(&[c, sigma], &[c - a, c - b]);
    let g2 = gamma_ratio(&[c, -sigma], &[a, b]) * s.powf(sigma);
    let inner_eps = (eps * 0.1).max(MIN_EPS);
    let f1 = maclaurin(a, b, 1.0 - sigma, s, inner_eps);
    let f2 = maclaurin(c - a, c - b, 1.0 + sigma, s, inner_eps);
    let t1 = g1 * f1.value;
    let t2 = g2 * f2.value;
    let value = t1 + t2;
    let error_bound = g1.abs() * f1.error_bound
        + g2.abs() * f2.error_bound
        + 8.0 * f64::EPSILON * (t1.abs() + t2.abs());
    let converged = f1.converged
        && f2.converged
        && error_bound <= eps.max(1e3 * f64::EPSILON) * value.abs().max(1.0) * 10.0;
    HypEval {
        value,
        terms: f1.terms.max(f2.terms),
        error_bound,
        converged,
        method: Method::PowerConnection,
    }
}

/// Euler-transformed evaluation (1−x)^{c−a−b} F(c−a, c−b; c; x).
/// Requires c − a − b > 0.
pub fn f21_euler(p: HypParams, x: impl Into<Point>, eps: f64) -> Result<f64> {
    f21_euler_eval(p, x, eps).map(|e| e.value)
}

pub fn f21_euler_eval(p: HypParams, x: impl Into<Point>, eps: f64) -> Result<HypEval> {
    let x = x.into();
    if !(p.excess() > 0.0) {
        return domain(
            "f21_euler",
            format!("requires c − a − b > 0, got {}", p.excess()),
        );
    }
    let q = HypParams::new(p.c - p.a, p.c - p.b, p.c)?;
    let inner = f21_eval(q, x, eps)?;
    let f = x.comp.powf(p.excess());
    Ok(HypEval {
        value: f * inner.value,
        error_bound: f * inner.error_bound,
        ..inner
    })
}

/// Gauss summation F(a, b; c; 1) = Γ(c)Γ(c−a−b)/(Γ(c−a)Γ(c−b)), for c − a − b > 0.
pub fn f21_value_at_1(p: HypParams) -> Result<f64> {
    let s = p.excess();
    if !(s > 0.0) {
        return domain(
            "f21_value_at_1",
            format!("series diverges at x = 1 unless c − a − b > 0 (got {s})"),
        );
    }
    Ok(gamma_ratio(&[p.c, s], &[p.c - p.a, p.c - p.b]))
}

/// Leading term of the zero-balanced expansion at x → 1⁻:
/// F(a, b; a+b; x) ≈ (R(a, b) − ln(1 − x)) / B(a, b).
pub fn zero_balanced_asymptote(a: f64, b: f64, x: impl Into<Point>) -> Result<f64> {
    let x = x.into();
    x.check_open("zero_balanced_asymptote")?;
    Ok((ramanujan_r(a, b)? - x.comp.ln()) / beta_fn(a, b)?)
}

/// ∂/∂a F(a, β−a; c; x) by term-wise differentiation:
/// Σ_{n≥1} (a)ₙ(β−a)ₙ/((c)ₙ n!) xⁿ Σ_{k<n} [1/(a+k) − 1/(β−a+k)].
///
/// The inner sums are monotone in n with limit ψ(β−a) − ψ(a), which bounds
/// them uniformly; the tail is that bound times the coefficient tail.
fn linked_derivative(op: &'static str, a: f64, beta: f64, c: f64, r: f64, eps: f64) -> Result<f64> {
    check_eps(op, eps)?;
    let b = beta - a;
    if !(a > 0.0 && b > 0.0 && c > 0.0) {
        return domain(
            op,
            format!("requires a > 0 and {beta} − a > 0, got a = {a}"),
        );
    }
    Point::new(r).check_unit(op)?;
    if r == 0.0 {
        return Ok(0.0);
    }
    let weight_bound = (digamma_any(b) - digamma_any(a)).abs();
    let u = (a + b - c - 1.0).max(0.0);
    let v = (a * b - c).max(0.0);
    let mut coef = 1.0;
    let mut inner = 0.0;
    let mut sum = 0.0;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        coef *= (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * r;
        inner += 1.0 / (a + nf) - 1.0 / (b + nf);
        sum += coef * inner;
        let k = nf + 1.0;
        let q = r * (1.0 + u / k + v / (k * k));
        if q < 1.0 {
            let tail = weight_bound * coef.abs() * q / (1.0 - q);
            if tail <= eps * sum.abs().max(1.0) {
                break;
            }
        }
    }
    Ok(sum)
}

/// ∂F(a, 1−a; 1; r)/∂a.
pub fn df21_da_zero_balanced(a: f64, r: f64, eps: f64) -> Result<f64> {
    if !(a > 0.0 && a < 1.0) {
        return domain(
            "df21_da_zero_balanced",
            format!("a must lie in (0, 1), got {a}"),
        );
    }
    linked_derivative("df21_da_zero_balanced", a, 1.0, 1.0, r, eps)
}

/// Which parameter derivative [`df21_da_variants`] evaluates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DerivVariant {
    /// ∂ₐF(a, 1−a; 2; r)
    F2,
    /// ∂ₐF(a, 3/2−a; 3/2; r)
    F32,
    /// ∂ₐF(a, 3/2−a; 5/2; r)
    F52,
}

pub fn df21_da_variants(which: DerivVariant, a: f64, r: f64, eps: f64) -> Result<f64> {
    if !(a > 0.0 && a < 1.0) {
        return domain("df21_da_variants", format!("a must lie in (0, 1), got {a}"));
    }
    let (beta, c) = match which {
        DerivVariant::F2 => (1.0, 2.0),
        DerivVariant::F32 => (1.5, 1.5),
        DerivVariant::F52 => (1.5, 2.5),
    };
    linked_derivative("df21_da_variants", a, beta, c, r, eps)
}

/// Exact Maclaurin coefficients (a)ₙ(b)ₙ/((c)ₙ n!) for n = 0..=degree.
pub fn f21_series_coeffs(
    a: &ExactRational,
    b: &ExactRational,
    c: &ExactRational,
    degree: usize,
) -> Result<SeriesPoly> {
    if c <= &BigRational::zero() && c.is_integer() {
        return domain(
            "f21_series_coeffs",
            format!("c = {c} is a nonpositive integer"),
        );
    }
    let mut coeffs = Vec::with_capacity(degree + 1);
    let mut t = BigRational::one();
    for n in 0..=degree {
        coeffs.push(t.clone());
        let k = BigRational::from_integer(n.into());
        t = t * (a + &k) * (b + &k) / ((c + &k) * (&k + BigRational::one()));
    }
    debug_assert_eq!(
        coeffs.last().cloned(),
        Some(
            pochhammer_exact(a, degree as u32) * pochhammer_exact(b, degree as u32)
                / (pochhammer_exact(c, degree as u32)
                    * pochhammer_exact(&BigRational::one(), degree as u32))
        )
    );
    Ok(SeriesPoly::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{rational, to_f64};
    use std::f64::consts::PI;

    fn hp(a: f64, b: f64, c: f64) -> HypParams {
        HypParams::new(a, b, c).unwrap()
    }

    /// AGM oracle for 𝒦, kept local so the check stays independent of `elliptic`.
    fn agm_k(r: f64) -> f64 {
        let (mut x, mut y) = (1.0f64, (1.0 - r * r).sqrt());
        for _ in 0..40 {
            (x, y) = (0.5 * (x + y), (x * y).sqrt());
        }
        PI / (2.0 * x)
    }

    #[test]
    fn value_at_zero_is_one() {
        assert_eq!(f21(hp(0.3, 0.7, 1.0), 0.0, 1e-12).unwrap(), 1.0);
        assert_eq!(f21_euler(hp(0.3, 0.2, 1.0), 0.0, 1e-12).unwrap(), 1.0);
    }

    #[test]
    fn arth_representation() {
        let r = 0.5;
        let v = r * f21(hp(0.5, 1.0, 1.5), r * r, 1e-14).unwrap();
        assert!((v - r.atanh()).abs() < 1e-14);
        // same identity on the connection route
        let r: f64 = 0.999;
        let v = r * f21(hp(0.5, 1.0, 1.5), r * r, 1e-14).unwrap();
        assert!((v - r.atanh()).abs() < 1e-12);
    }

    #[test]
    fn complete_k_against_agm() {
        for &r in &[0.1, 0.5, 0.8, 0.9, 0.97, 0.999] {
            let v = PI / 2.0 * f21(hp(0.5, 0.5, 1.0), r * r, 1e-14).unwrap();
            assert!((v - agm_k(r)).abs() < 1e-12, "r = {r}: {v} vs {}", agm_k(r));
        }
        let v = f21(hp(0.5, 0.5, 1.0), 0.25, 1e-14).unwrap();
        assert!((v - 2.0 * agm_k(0.5) / PI).abs() < 1e-14);
    }

    #[test]
    fn invalid_arguments() {
        assert!(HypParams::new(1.0, 1.0, -2.0).is_err());
        assert!(HypParams::new(1.0, 1.0, 0.0).is_err());
        assert!(f21(hp(0.5, 0.5, 1.0), 1.0, 1e-12).is_err());
        assert!(f21(hp(0.5, 0.5, 1.0), -0.1, 1e-12).is_err());
        assert!(f21(hp(0.5, 0.5, 1.0), 0.5, 1e-3).is_err());
        assert!(f21_value_at_1(hp(0.5, 0.5, 1.0)).is_err());
        assert!(f21_euler(hp(0.5, 0.5, 1.0), 0.5, 1e-12).is_err());
    }

    #[test]
    fn maclaurin_cap_reports_reduced_accuracy() {
        let e = f21_with(
            hp(0.5, 0.5, 1.0),
            Point::from_complement(1e-9),
            1e-12,
            Strategy::Maclaurin,
        )
        .unwrap();
        assert!(!e.converged);
        assert_eq!(e.terms, MAX_TERMS);
        assert!(e.value.is_finite());
        let good = f21_eval(hp(0.5, 0.5, 1.0), Point::from_complement(1e-9), 1e-12).unwrap();
        assert!(good.converged);
        assert_eq!(good.method, Method::LogConnection);
    }

    #[test]
    fn routes_agree_in_overlap() {
        // 0.7 ≤ x ≤ 0.9 is handled by both routes
        let cases = [
            (0.25, 0.75, 1.0),
            (0.25, 0.75, 2.0),
            (0.5, 1.0, 2.5),
            (-0.5, 0.5, 1.0),
            (1.25, 2.25, 2.5),
            (0.3, 0.4, 1.9),
            (0.3, 0.4, 0.5),
        ];
        for &(a, b, c) in &cases {
            for &x in &[0.7, 0.8, 0.9] {
                let m = f21_with(hp(a, b, c), x, 1e-14, Strategy::Maclaurin).unwrap();
                let k = f21_with(hp(a, b, c), x, 1e-14, Strategy::Connection).unwrap();
                let scale = m.value.abs().max(1.0);
                assert!(
                    (m.value - k.value).abs() < 1e-12 * scale,
                    "({a},{b};{c}) x={x}: {} vs {} [{:?}]",
                    m.value,
                    k.value,
                    k.method
                );
            }
        }
    }

    #[test]
    fn euler_examples() {
        let p = hp(0.25, 0.75, 2.0);
        let d = f21_eval(p, 0.99, 1e-12).unwrap().value;
        let e = f21_euler(p, 0.99, 1e-12).unwrap();
        assert!((d - e).abs() < 1e-10);
        let p = hp(0.25, 1.25, 2.5);
        let g = f21_value_at_1(p).unwrap();
        let near = f21_euler(p, 0.999, 1e-12).unwrap();
        let nearer = f21_euler(p, Point::from_complement(1e-8), 1e-12).unwrap();
        assert!(near.is_finite());
        assert!((nearer - g).abs() < (near - g).abs());
        assert!((nearer - g).abs() < 1e-6);
    }

    #[test]
    fn gauss_values() {
        let v = f21_value_at_1(hp(0.5, 0.5, 2.0)).unwrap();
        assert!((v - 4.0 / PI).abs() < 1e-14);
        let v = f21_value_at_1(hp(0.5, 1.0, 2.5)).unwrap();
        assert!((v - 1.5).abs() < 1e-14);
        // h₉(1) at (a, b₁, b₂) = (1/2, 1/2, 1) equals 8/(3π)
        let h =
            f21_value_at_1(hp(0.5, 0.5, 2.0)).unwrap() / f21_value_at_1(hp(0.5, 1.0, 2.5)).unwrap();
        assert!((h - 8.0 / (3.0 * PI)).abs() < 1e-14);
    }

    #[test]
    fn zero_balanced_asymptote_examples() {
        let r_half = 16f64.ln();
        let v = zero_balanced_asymptote(0.5, 0.5, Point::from_complement(1e-8)).unwrap();
        assert!((v - (r_half - 1e-8f64.ln()) / PI).abs() < 1e-13);
        let x = Point::from_complement(1e-6);
        let asym = zero_balanced_asymptote(0.5, 0.5, x).unwrap();
        let f = f21(hp(0.5, 0.5, 1.0), x, 1e-13).unwrap();
        assert!((asym - f).abs() <= 1e-4);
        let s1 = zero_balanced_asymptote(0.3, 1.7, 0.99).unwrap();
        let s2 = zero_balanced_asymptote(1.7, 0.3, 0.99).unwrap();
        assert_eq!(s1, s2);
    }

    fn central(f: impl Fn(f64) -> f64, a: f64, h: f64) -> f64 {
        (f(a + h) - f(a - h)) / (2.0 * h)
    }

    #[test]
    fn parameter_derivatives_match_finite_differences() {
        let h = 1e-5;
        for i in 1..=9 {
            let a = i as f64 / 10.0;
            for j in 1..=9 {
                let r = j as f64 / 10.0;
                let fd = central(|t| f21(hp(t, 1.0 - t, 1.0), r, 1e-15).unwrap(), a, h);
                let an = df21_da_zero_balanced(a, r, 1e-14).unwrap();
                assert!((fd - an).abs() < 1e-6, "a={a} r={r}");
                for (which, beta, c) in [
                    (DerivVariant::F2, 1.0, 2.0),
                    (DerivVariant::F32, 1.5, 1.5),
                    (DerivVariant::F52, 1.5, 2.5),
                ] {
                    let fd = central(|t| f21(hp(t, beta - t, c), r, 1e-15).unwrap(), a, h);
                    let an = df21_da_variants(which, a, r, 1e-14).unwrap();
                    assert!((fd - an).abs() < 1e-6, "{which:?} a={a} r={r}");
                }
            }
        }
    }

    #[test]
    fn parameter_derivative_limits_at_zero() {
        let a = 1e-8;
        let r: f64 = 0.5;
        let l = (1.0 / (1.0 - r)).ln();
        assert!((df21_da_zero_balanced(a, r, 1e-14).unwrap() - l).abs() < 1e-6);
        let f2 = df21_da_variants(DerivVariant::F2, a, r, 1e-14).unwrap();
        assert!((f2 - (1.0 - (1.0 - r) / r * l)).abs() < 1e-6);
        let f32 = df21_da_variants(DerivVariant::F32, a, r, 1e-14).unwrap();
        assert!((f32 - l).abs() < 1e-6);
        let t = r.sqrt();
        let f52 = df21_da_variants(DerivVariant::F52, a, r, 1e-14).unwrap();
        assert!((f52 - (2.0 / 3.0 + l - 2.0 / r * (t.atanh() / t - 1.0))).abs() < 1e-6);
        assert_eq!(
            df21_da_variants(DerivVariant::F2, 0.4, 0.0, 1e-12).unwrap(),
            0.0
        );
        // negative on [1/2, 1)
        assert!(df21_da_zero_balanced(0.75, 0.5, 1e-12).unwrap() < 0.0);
        assert!(df21_da_zero_balanced(0.5, 0.5, 1e-12).unwrap().abs() < 1e-15);
    }

    #[test]
    fn exact_coefficients() {
        let s = f21_series_coeffs(&rational(1, 2), &rational(1, 1), &rational(3, 2), 12).unwrap();
        for n in 0..=12 {
            assert_eq!(s.coeff(n), &rational(1, 2 * n as i64 + 1));
        }
        let k = f21_series_coeffs(&rational(1, 2), &rational(1, 2), &rational(1, 1), 3).unwrap();
        assert_eq!(k.coeff(0), &rational(1, 1));
        assert_eq!(k.coeff(1), &rational(1, 4));
        assert!(f21_series_coeffs(&rational(1, 2), &rational(1, 2), &rational(-1, 1), 3).is_err());
    }

    #[test]
    fn float_matches_exact_partial_sums() {
        // rational parameters: partial sum of exact coefficients + geometric tail
        let (a, b, c) = (rational(1, 3), rational(2, 5), rational(7, 4));
        let coeffs = f21_series_coeffs(&a, &b, &c, 400).unwrap();
        for &x in &[0.2, 0.5, 0.8] {
            let partial = coeffs.eval_f64(x);
            let last = to_f64(coeffs.coeff(400)) * x.powi(400);
            let tail = last * x / (1.0 - x);
            let v = f21(hp(1.0 / 3.0, 0.4, 1.75), x, 1e-13).unwrap();
            assert!((v - partial).abs() <= tail + 1e-13 * v.abs().max(1.0));
        }
    }
}
