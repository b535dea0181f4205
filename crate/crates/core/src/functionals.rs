//! The ratio functionals f, Λ, Λ₁, Λ₂, Λ₃, the differences f₁–f₈, the
//! auxiliary ratios h₁, h₂, h₉–h₁₅, the constants α, η, β, ᾱ, η̄, β̄, b̄ and
//! evaluators for the two-sided bound chains.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_8, LN_2, PI};
use std::fmt;

use num::{BigRational, One};
use serde::{Deserialize, Serialize};

use crate::coeffs::{a_tilde_n, ak_table, an2_table, btilde_table, partial_sum_exact};
use crate::elliptic::{agm_k_modulus, e_a, k_a, Modulus};
use crate::error::{domain, precondition, Error, Result};
use crate::hyp2f1::{f21, HypParams, Point};
use crate::series::{rationalize, ExactRational};
use crate::special::{beta_fn, digamma};

/// Relative tolerance applied to chain slacks, scaled by max(1, |links|).
pub const CHAIN_TOL: f64 = 1e-10;

pub fn alpha(a: f64) -> f64 {
    (3.0 - 2.0 * a) / (3.0 * (1.0 - a))
}

pub fn eta(a: f64) -> f64 {
    a / (3.0 - 2.0 * a)
}

/// β(a) = (ψ(3/2−a) − ψ(1−a))/B(a, 1−a).
pub fn beta(a: f64) -> Result<f64> {
    check_unit_a("beta", a)?;
    Ok((digamma(1.5 - a)? - digamma(1.0 - a)?) / beta_fn(a, 1.0 - a)?)
}

pub fn alpha_exact(a: &ExactRational) -> ExactRational {
    let one = BigRational::one();
    let three = BigRational::from_integer(3.into());
    (&three - a - a) / (&three * (&one - a))
}

pub fn alpha_bar_exact(a: &ExactRational, b1: &ExactRational, b2: &ExactRational) -> ExactRational {
    b2 * (a + b1) / (b1 * (a + b2))
}

/// β̄ = (ψ(b₂) − ψ(b₁))/B(a, b₁).
pub fn beta_bar(a: f64, b1: f64, b2: f64) -> Result<f64> {
    Ok((digamma(b2)? - digamma(b1)?) / beta_fn(a, b1)?)
}

/// b̄(a) for a > 1, the positive zero of −(a−1)b² − (a²−1)b + a(a+1).
pub fn b_bar(a: f64) -> Result<f64> {
    if !(a > 1.0 && a.is_finite()) {
        return domain("b_bar", format!("requires a > 1, got {a}"));
    }
    Ok(
        ((a * a + 4.0 * a - 1.0).sqrt() - (a * a - 1.0).sqrt()) / 2.0
            * ((a + 1.0) / (a - 1.0)).sqrt(),
    )
}

fn check_unit_a(op: &'static str, a: f64) -> Result<()> {
    if !(a > 0.0 && a < 1.0) {
        return domain(op, format!("a must lie in (0, 1), got {a}"));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymmetricParams {
    pub a: f64,
    pub alpha: f64,
    pub eta: f64,
    pub beta: f64,
}

impl SymmetricParams {
    pub fn new(a: f64) -> Result<Self> {
        check_unit_a("SymmetricParams", a)?;
        Ok(SymmetricParams {
            a,
            alpha: alpha(a),
            eta: eta(a),
            beta: beta(a)?,
        })
    }

    /// The same constants as a general tuple (a, 1−a, 3/2−a).
    pub fn as_general(&self) -> Result<TuranParams> {
        TuranParams::new(self.a, 1.0 - self.a, 1.5 - self.a)
    }
}

pub fn constants_symmetric(a: f64) -> Result<SymmetricParams> {
    SymmetricParams::new(a)
}

/// (a, b₁, b₂) with c₁ = a+b₁, c₂ = a+b₂ and the derived constants.
/// b₁ = b₂ is accepted as the equality case, where ᾱ = 1 and η̄ = β̄ = 0.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TuranParams {
    pub a: f64,
    pub b1: f64,
    pub b2: f64,
    pub c1: f64,
    pub c2: f64,
    pub alpha_bar: f64,
    pub eta_bar: f64,
    pub beta_bar: f64,
}

impl TuranParams {
    pub fn new(a: f64, b1: f64, b2: f64) -> Result<Self> {
        if !(a > 0.0 && b1 > 0.0 && b2 > 0.0 && a.is_finite() && b1.is_finite() && b2.is_finite()) {
            return domain(
                "TuranParams",
                format!("a, b1, b2 must be positive, got ({a}, {b1}, {b2})"),
            );
        }
        if b1 > b2 {
            return domain(
                "TuranParams",
                format!("requires b1 ≤ b2, got b1 = {b1}, b2 = {b2}"),
            );
        }
        let (c1, c2) = (a + b1, a + b2);
        let equal = b1 == b2;
        Ok(TuranParams {
            a,
            b1,
            b2,
            c1,
            c2,
            alpha_bar: if equal { 1.0 } else { b2 * c1 / (b1 * c2) },
            eta_bar: if equal {
                0.0
            } else {
                a * (b2 - b1) / (b2 * c1)
            },
            beta_bar: if equal { 0.0 } else { beta_bar(a, b1, b2)? },
        })
    }

    pub fn is_equal_case(&self) -> bool {
        self.b1 == self.b2
    }

    /// a(a+1) − b₁b₂, whose sign decides Λ₂ − 1 near r = 0.
    pub fn sign_discriminant(&self) -> f64 {
        self.a * (self.a + 1.0) - self.b1 * self.b2
    }

    /// Whether f₄ is known to be absolutely monotone: a ≤ 1, or b₂ ≤ b̄(a).
    pub fn absolutely_monotone_region(&self) -> bool {
        self.a <= 1.0 || b_bar(self.a).is_ok_and(|bb| self.b2 <= bb)
    }
}

pub fn constants_general(a: f64, b1: f64, b2: f64) -> Result<TuranParams> {
    TuranParams::new(a, b1, b2)
}

fn hyp(a: f64, b: f64, c: f64, r: Point, eps: f64) -> Result<f64> {
    f21(HypParams::new(a, b, c)?, r, eps)
}

/// ∂F(a,b;c;r)/∂r = (ab/c) F(a+1, b+1; c+1; r).
fn dhyp(a: f64, b: f64, c: f64, r: Point, eps: f64) -> Result<f64> {
    Ok(a * b / c * hyp(a + 1.0, b + 1.0, c + 1.0, r, eps)?)
}

fn open_point(op: &'static str, r: impl Into<Point>) -> Result<Point> {
    let p = r.into();
    if !(p.x() >= 0.0 && p.complement() > 0.0 && p.complement() <= 1.0) {
        return domain(op, format!("r must lie in [0, 1), got {}", p.x()));
    }
    Ok(p)
}

/// f(a, b, r) = F(a,b;a+b+1;r)/F(a,b;a+b;r).
pub fn f_ratio(a: f64, b: f64, r: impl Into<Point>, eps: f64) -> Result<f64> {
    if !(a > 0.0 && b > 0.0) {
        return domain(
            "f_ratio",
            format!("a and b must be positive, got ({a}, {b})"),
        );
    }
    let r = open_point("f_ratio", r)?;
    Ok(hyp(a, b, a + b + 1.0, r, eps)? / hyp(a, b, a + b, r, eps)?)
}

/// Λ(a, r) = f(a,1−a,r)/f(a,3/2−a,r).
pub fn lambda(a: f64, r: impl Into<Point>, eps: f64) -> Result<f64> {
    check_unit_a("lambda", a)?;
    let r = open_point("lambda", r)?;
    let num = hyp(a, 1.0 - a, 2.0, r, eps)? * hyp(a, 1.5 - a, 1.5, r, eps)?;
    let den = hyp(a, 1.0 - a, 1.0, r, eps)? * hyp(a, 1.5 - a, 2.5, r, eps)?;
    Ok(num / den)
}

/// Λ₁ = Λ · F(a,1−a;1;r).
pub fn lambda1(a: f64, r: impl Into<Point>, eps: f64) -> Result<f64> {
    check_unit_a("lambda1", a)?;
    let r = open_point("lambda1", r)?;
    Ok(
        hyp(a, 1.0 - a, 2.0, r, eps)? * hyp(a, 1.5 - a, 1.5, r, eps)?
            / hyp(a, 1.5 - a, 2.5, r, eps)?,
    )
}

/// Λ₂ = f(a,b₁,r)/f(a,b₂,r); identically 1 when b₁ = b₂.
pub fn lambda2(p: &TuranParams, r: impl Into<Point>, eps: f64) -> Result<f64> {
    let r = open_point("lambda2", r)?;
    if p.is_equal_case() {
        return Ok(1.0);
    }
    Ok(f_ratio(p.a, p.b1, r, eps)? / f_ratio(p.a, p.b2, r, eps)?)
}

/// Λ₃ = Λ₂ · F(a,b₁;c₁;r).
pub fn lambda3(p: &TuranParams, r: impl Into<Point>, eps: f64) -> Result<f64> {
    let r = open_point("lambda3", r)?;
    if p.is_equal_case() {
        return hyp(p.a, p.b1, p.c1, r, eps);
    }
    Ok(
        hyp(p.a, p.b1, p.c1 + 1.0, r, eps)? * hyp(p.a, p.b2, p.c2, r, eps)?
            / hyp(p.a, p.b2, p.c2 + 1.0, r, eps)?,
    )
}

/// Λ(1⁻, r) = F(1/2,1;3/2;r)/F(1/2,1;5/2;r) = 2r q/(3[1 − (1−r)q]), q = arth(√r)/√r.
pub fn lambda_a_to_one(r: f64) -> Result<f64> {
    if !(r > 0.0 && r < 1.0) {
        return domain("lambda_a_to_one", format!("r must lie in (0, 1), got {r}"));
    }
    let q = crate::elliptic::arth_ratio(r.sqrt())?;
    Ok(2.0 * r * q / (3.0 * (1.0 - (1.0 - r) * q)))
}

/// Λ(0⁺, r) = 1.
pub fn lambda_a_to_zero(r: f64) -> Result<f64> {
    if !(r > 0.0 && r < 1.0) {
        return domain("lambda_a_to_zero", format!("r must lie in (0, 1), got {r}"));
    }
    Ok(1.0)
}

/// arth(t)/t from a point carrying 1 − t.
fn arth_ratio_point(t: Point) -> f64 {
    let x = t.x();
    if x < 1e-4 {
        let w = x * x;
        return 1.0 + w * (1.0 / 3.0 + w * (1.0 / 5.0 + w / 7.0));
    }
    if t.complement() < 0.5 {
        return 0.5 * ((1.0 + x) / t.complement()).ln() / x;
    }
    x.atanh() / x
}

fn modulus_of(t: Point) -> Result<Modulus> {
    if t.complement() < 0.5 {
        Modulus::from_complement(t.complement())
    } else {
        Modulus::new(t.x())
    }
}

/// Λ(1/2, r) = (4 arth t)/(3𝒦(t)) · (ℰ(t) − t′²𝒦(t))/(t − t′² arth t), t = √r.
pub fn lambda_half_closed(r: impl Into<Point>) -> Result<f64> {
    let r = open_point("lambda_half_closed", r)?;
    let t = r.sqrt();
    let m = modulus_of(t)?;
    let k = k_a(0.5, m)?;
    let e = e_a(0.5, m)?;
    let tp2 = m.r_prime() * m.r_prime();
    let arth = arth_ratio_point(t) * t.x();
    Ok(4.0 * arth / (3.0 * k) * (e - tp2 * k) / (t.x() - tp2 * arth))
}

/// f₁ = Λ₁ − F(a,1−a;1;r).
pub fn f1(a: f64, r: impl Into<Point>, eps: f64) -> Result<f64> {
    let r = open_point("f1", r)?;
    Ok(lambda1(a, r, eps)? - hyp(a, 1.0 - a, 1.0, r, eps)?)
}

/// f₂ = αF(a,1−a;1;r) − Λ₁.
pub fn f2(a: f64, r: impl Into<Point>, eps: f64) -> Result<f64> {
    let r = open_point("f2", r)?;
    Ok(alpha(a) * hyp(a, 1.0 - a, 1.0, r, eps)? - lambda1(a, r, eps)?)
}

/// f₃ = Λ₃ − F(a,b₁;c₁;r).
pub fn f3(p: &TuranParams, r: impl Into<Point>, eps: f64) -> Result<f64> {
    let r = open_point("f3", r)?;
    if p.is_equal_case() {
        return Ok(0.0);
    }
    Ok(lambda3(p, r, eps)? - hyp(p.a, p.b1, p.c1, r, eps)?)
}

/// f₄ = ᾱF(a,b₁;c₁;r) − Λ₃.
pub fn f4(p: &TuranParams, r: impl Into<Point>, eps: f64) -> Result<f64> {
    let r = open_point("f4", r)?;
    if p.is_equal_case() {
        return Ok(0.0);
    }
    Ok(p.alpha_bar * hyp(p.a, p.b1, p.c1, r, eps)? - lambda3(p, r, eps)?)
}

/// f₅(r) = F(1/4,3/4;2;r)F(1/4,5/4;3/2;r) − F(1/4,3/4;1;r)F(1/4,5/4;5/2;r).
pub fn f5(r: impl Into<Point>, eps: f64) -> Result<f64> {
    let r = open_point("f5", r)?;
    Ok(
        hyp(0.25, 0.75, 2.0, r, eps)? * hyp(0.25, 1.25, 1.5, r, eps)?
            - hyp(0.25, 0.75, 1.0, r, eps)? * hyp(0.25, 1.25, 2.5, r, eps)?,
    )
}

/// f₅′ from its four-product form.
pub fn f5_prime(r: impl Into<Point>, eps: f64) -> Result<f64> {
    let r = open_point("f5_prime", r)?;
    Ok(
        3.0 / 32.0 * hyp(1.25, 1.75, 3.0, r, eps)? * hyp(0.25, 1.25, 1.5, r, eps)?
            + 5.0 / 24.0 * hyp(0.25, 0.75, 2.0, r, eps)? * hyp(1.25, 2.25, 2.5, r, eps)?
            - 3.0 / 16.0 * hyp(1.25, 1.75, 2.0, r, eps)? * hyp(0.25, 1.25, 2.5, r, eps)?
            - 0.125 * hyp(0.25, 0.75, 1.0, r, eps)? * hyp(1.25, 2.25, 3.5, r, eps)?,
    )
}

/// f₆(r) = 𝒦ₐ(√r) − (ℰₐ(√r) − (1−r)𝒦ₐ(√r))/(aαr F(a,3/2−a;5/2;r)) · F(a,3/2−a;3/2;r).
pub fn f6(a: f64, r: impl Into<Point>, eps: f64) -> Result<f64> {
    check_unit_a("f6", a)?;
    let r = open_point("f6", r)?;
    if r.x() == 0.0 {
        return domain("f6", "r must be positive");
    }
    let m = modulus_of(r.sqrt())?;
    let k = k_a(a, m)?;
    let e = e_a(a, m)?;
    let ratio = hyp(a, 1.5 - a, 1.5, r, eps)? / hyp(a, 1.5 - a, 2.5, r, eps)?;
    Ok(k - (e - r.complement() * k) / (a * alpha(a) * r.x()) * ratio)
}

/// f₇(r) = 𝒦(√r) − h₁₃(r) arth(√r)/√r, with 𝒦 from the AGM.
pub fn f7(r: impl Into<Point>) -> Result<f64> {
    let r = open_point("f7", r)?;
    if r.x() == 0.0 {
        return domain("f7", "r must be positive");
    }
    let t = r.sqrt();
    let m = modulus_of(t)?;
    Ok(agm_k_modulus(m) - h13(r)? * arth_ratio_point(t))
}

/// h₉ = F(a,b₁;c₁+1;r)/F(a,b₂;c₂+1;r).
pub fn h9(a: f64, b1: f64, b2: f64, r: impl Into<Point>, eps: f64) -> Result<f64> {
    let r = open_point("h9", r)?;
    Ok(hyp(a, b1, a + b1 + 1.0, r, eps)? / hyp(a, b2, a + b2 + 1.0, r, eps)?)
}

/// h₉′ by the quotient rule.
pub fn h9_prime(a: f64, b1: f64, b2: f64, r: impl Into<Point>, eps: f64) -> Result<f64> {
    let r = open_point("h9_prime", r)?;
    let (c1, c2) = (a + b1 + 1.0, a + b2 + 1.0);
    let (u, du) = (hyp(a, b1, c1, r, eps)?, dhyp(a, b1, c1, r, eps)?);
    let (v, dv) = (hyp(a, b2, c2, r, eps)?, dhyp(a, b2, c2, r, eps)?);
    Ok((du * v - u * dv) / (v * v))
}

/// h₁₀ = (1 − h₉)/r.
pub fn h10(a: f64, b1: f64, b2: f64, r: impl Into<Point>, eps: f64) -> Result<f64> {
    let r = open_point("h10", r)?;
    if r.x() == 0.0 {
        return domain("h10", "r must be positive");
    }
    Ok((1.0 - h9(a, b1, b2, r, eps)?) / r.x())
}

/// h₁₁ = F(1/2,1/2;2;r)/F(1/2,1;5/2;r).
pub fn h11(r: impl Into<Point>, eps: f64) -> Result<f64> {
    let r = open_point("h11", r)?;
    Ok(hyp(0.5, 0.5, 2.0, r, eps)? / hyp(0.5, 1.0, 2.5, r, eps)?)
}

/// h₁₂ = (Σ_{k≤n} aₖ⁽²⁾rᵏ − h₁₁(r))/r^{n+1}.
pub fn h12(n: usize, r: impl Into<Point>, eps: f64) -> Result<f64> {
    let r = open_point("h12", r)?;
    if r.x() == 0.0 {
        return domain("h12", "r must be positive");
    }
    let t = an2_table(n).float_values();
    let x = r.x();
    Ok((poly(&t, x) - h11(r, eps)?) / x.powi(n as i32 + 1))
}

/// h₁₃(r) = (ℰ(t) − (1−r)𝒦(t))/(1 − (1−r) arth(t)/t), t = √r.
pub fn h13(r: impl Into<Point>) -> Result<f64> {
    let r = open_point("h13", r)?;
    if r.x() == 0.0 {
        return domain("h13", "r must be positive");
    }
    let t = r.sqrt();
    let m = modulus_of(t)?;
    let k = if t.x() > 0.95 {
        agm_k_modulus(m)
    } else {
        k_a(0.5, m)?
    };
    let e = e_a(0.5, m)?;
    let s = r.complement();
    Ok((e - s * k) / (1.0 - s * arth_ratio_point(t)))
}

/// h₁₅ = ∂f₁/∂r = a²F(a,1−a;2;r)/(3(1−r)) + F(a,3/2−a;3/2;r) h₉′(r) at (a, 1−a, 3/2−a).
pub fn h15(a: f64, r: impl Into<Point>, eps: f64) -> Result<f64> {
    check_unit_a("h15", a)?;
    let r = open_point("h15", r)?;
    Ok(
        a * a / (3.0 * r.complement()) * hyp(a, 1.0 - a, 2.0, r, eps)?
            + hyp(a, 1.5 - a, 1.5, r, eps)? * h9_prime(a, 1.0 - a, 1.5 - a, r, eps)?,
    )
}

/// f₈ = ∂f₃/∂r = a²(b₂−b₁)F(a,b₁;c₁+1;r)/(c₁c₂(1−r)) + F(a,b₂;c₂;r) h₉′(r).
pub fn f8(p: &TuranParams, r: impl Into<Point>, eps: f64) -> Result<f64> {
    let r = open_point("f8", r)?;
    let (a, b1, b2, c1, c2) = (p.a, p.b1, p.b2, p.c1, p.c2);
    Ok(
        a * a * (b2 - b1) / (c1 * c2 * r.complement()) * hyp(a, b1, c1 + 1.0, r, eps)?
            + hyp(a, b2, c2, r, eps)? * h9_prime(a, b1, b2, r, eps)?,
    )
}

/// h₁(a) = 1 − β(a)/F(a,1−a;1;r).
pub fn h1(a: f64, r: impl Into<Point>, eps: f64) -> Result<f64> {
    let r = open_point("h1", r)?;
    Ok(1.0 - beta(a)? / hyp(a, 1.0 - a, 1.0, r, eps)?)
}

/// h₂(a) = 1 − η(a)/F(a,1−a;1;r).
pub fn h2(a: f64, r: impl Into<Point>, eps: f64) -> Result<f64> {
    check_unit_a("h2", a)?;
    let r = open_point("h2", r)?;
    Ok(1.0 - eta(a) / hyp(a, 1.0 - a, 1.0, r, eps)?)
}

fn poly(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &k| acc * x + k)
}

/// Float images of a₀..=a_degree for f₂ at parameter a.
pub fn ak_floats(a: f64, degree: usize) -> Result<Vec<f64>> {
    Ok(ak_table(&rationalize(a)?, degree)?.float_values())
}

fn ak_exact(a: f64, degree: usize) -> Result<Vec<ExactRational>> {
    Ok(ak_table(&rationalize(a)?, degree)?
        .exact_values()
        .expect("exact table")
        .to_vec())
}

/// Pₙ(a, r) = Σ_{k≤n+1} aₖ r^{2k}.
pub fn p_n(a: f64, r: f64, n: usize) -> Result<f64> {
    Ok(poly(&ak_floats(a, n + 1)?, r * r))
}

/// Qₙ(a, r) = a(F(a,1−a;1;r) − 1 − a(1−a)r)/(3(1−a)r) − Σ_{k=1..n} a_{k+1}rᵏ.
pub fn q_n(a: f64, r: f64, n: usize, eps: f64) -> Result<f64> {
    check_unit_a("q_n", a)?;
    if !(r > 0.0 && r < 1.0) {
        return domain("q_n", format!("r must lie in (0, 1), got {r}"));
    }
    let c = ak_floats(a, n + 1)?;
    let f = hyp(a, 1.0 - a, 1.0, Point::new(r), eps)?;
    let head = a * (f - 1.0 - a * (1.0 - a) * r) / (3.0 * (1.0 - a) * r);
    let tail: f64 = (1..=n).map(|k| c[k + 1] * r.powi(k as i32)).sum();
    Ok(head - tail)
}

/// δₙ for a float parameter (rationalized for the exact table).
pub fn delta_n_f64(a: f64, n: usize) -> Result<f64> {
    let s = SymmetricParams::new(a)?;
    let t = ak_exact(a, n + 1)?;
    let sum: ExactRational = t.iter().sum();
    Ok(s.alpha * s.beta - crate::series::to_f64(&sum))
}

/// Selector for the scalar functionals used by scans, trends and the CLI.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Functional {
    F,
    Lambda,
    Lambda1,
    Lambda2,
    Lambda3,
    LambdaMinusOne,
    Lambda2MinusOne,
    F1,
    F2,
    F3,
    F4,
    F5,
    F5Prime,
    F6,
    F7,
    F8,
    H1,
    H2,
    H9,
    H10,
    H11,
    H12,
    H13,
    H15,
}

impl Functional {
    pub const ALL: [Functional; 24] = [
        Functional::F,
        Functional::Lambda,
        Functional::Lambda1,
        Functional::Lambda2,
        Functional::Lambda3,
        Functional::LambdaMinusOne,
        Functional::Lambda2MinusOne,
        Functional::F1,
        Functional::F2,
        Functional::F3,
        Functional::F4,
        Functional::F5,
        Functional::F5Prime,
        Functional::F6,
        Functional::F7,
        Functional::F8,
        Functional::H1,
        Functional::H2,
        Functional::H9,
        Functional::H10,
        Functional::H11,
        Functional::H12,
        Functional::H13,
        Functional::H15,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Functional::F => "f",
            Functional::Lambda => "lambda",
            Functional::Lambda1 => "lambda1",
            Functional::Lambda2 => "lambda2",
            Functional::Lambda3 => "lambda3",
            Functional::LambdaMinusOne => "lambda_minus_one",
            Functional::Lambda2MinusOne => "lambda2_minus_one",
            Functional::F1 => "f1",
            Functional::F2 => "f2",
            Functional::F3 => "f3",
            Functional::F4 => "f4",
            Functional::F5 => "f5",
            Functional::F5Prime => "f5_prime",
            Functional::F6 => "f6",
            Functional::F7 => "f7",
            Functional::F8 => "f8",
            Functional::H1 => "h1",
            Functional::H2 => "h2",
            Functional::H9 => "h9",
            Functional::H10 => "h10",
            Functional::H11 => "h11",
            Functional::H12 => "h12",
            Functional::H13 => "h13",
            Functional::H15 => "h15",
        }
    }

    pub fn parse(s: &str) -> Result<Functional> {
        let key = s.to_ascii_lowercase().replace('-', "_");
        Functional::ALL
            .into_iter()
            .find(|f| f.name() == key)
            .ok_or_else(|| Error::Parse(format!("unknown function {s:?}")))
    }
}

impl fmt::Display for Functional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Parameters for [`evaluate`]; each functional reads only the fields it needs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FnArgs {
    pub a: Option<f64>,
    /// The second parameter of f(a, b, r).
    pub b: Option<f64>,
    pub b1: Option<f64>,
    pub b2: Option<f64>,
    pub n: Option<usize>,
}

impl FnArgs {
    pub fn symmetric(a: f64) -> Self {
        FnArgs {
            a: Some(a),
            ..Default::default()
        }
    }

    pub fn general(a: f64, b1: f64, b2: f64) -> Self {
        FnArgs {
            a: Some(a),
            b1: Some(b1),
            b2: Some(b2),
            ..Default::default()
        }
    }

    fn need_a(&self, op: &'static str) -> Result<f64> {
        self.a
            .map_or_else(|| precondition(op, "parameter a is required"), Ok)
    }

    fn need_general(&self, op: &'static str) -> Result<TuranParams> {
        match (self.a, self.b1, self.b2) {
            (Some(a), Some(b1), Some(b2)) => TuranParams::new(a, b1, b2),
            _ => precondition(op, "parameters a, b1 and b2 are required"),
        }
    }
}

/// Evaluates a functional at r.
pub fn evaluate(which: Functional, args: &FnArgs, r: impl Into<Point>, eps: f64) -> Result<f64> {
    let r = r.into();
    let op = "evaluate";
    match which {
        Functional::F => {
            let b = args
                .b
                .map_or_else(|| precondition(op, "parameter b is required"), Ok)?;
            f_ratio(args.need_a(op)?, b, r, eps)
        }
        Functional::Lambda => lambda(args.need_a(op)?, r, eps),
        Functional::Lambda1 => lambda1(args.need_a(op)?, r, eps),
        Functional::Lambda2 => lambda2(&args.need_general(op)?, r, eps),
        Functional::Lambda3 => lambda3(&args.need_general(op)?, r, eps),
        Functional::LambdaMinusOne => Ok(lambda(args.need_a(op)?, r, eps)? - 1.0),
        Functional::Lambda2MinusOne => Ok(lambda2(&args.need_general(op)?, r, eps)? - 1.0),
        Functional::F1 => f1(args.need_a(op)?, r, eps),
        Functional::F2 => f2(args.need_a(op)?, r, eps),
        Functional::F3 => f3(&args.need_general(op)?, r, eps),
        Functional::F4 => f4(&args.need_general(op)?, r, eps),
        Functional::F5 => f5(r, eps),
        Functional::F5Prime => f5_prime(r, eps),
        Functional::F6 => f6(args.need_a(op)?, r, eps),
        Functional::F7 => f7(r),
        Functional::F8 => f8(&args.need_general(op)?, r, eps),
        Functional::H1 => h1(args.need_a(op)?, r, eps),
        Functional::H2 => h2(args.need_a(op)?, r, eps),
        Functional::H9 => {
            let p = args.need_general(op)?;
            h9(p.a, p.b1, p.b2, r, eps)
        }
        Functional::H10 => {
            let p = args.need_general(op)?;
            h10(p.a, p.b1, p.b2, r, eps)
        }
        Functional::H11 => h11(r, eps),
        Functional::H12 => h12(args.n.unwrap_or(0), r, eps),
        Functional::H13 => h13(r),
        Functional::H15 => h15(args.need_a(op)?, r, eps),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum ChainKind {
    Ineqf2,
    Ineqlam1,
    Ineqlam1p,
    Ineqa1pp,
    Ineqlam2,
    Ineqlam3,
    Ineq2g1,
    Ineqlam23,
    Ineqlam23p,
    Ineqwv,
    Ineqh14,
    Ineq2g2,
}

/// Which parameters a chain reads.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChainDomain {
    /// a ∈ (0, 1) and an index n.
    Symmetric,
    /// (a, b₁, b₂), optionally n.
    General,
    /// r only.
    RadiusOnly,
}

impl ChainKind {
    pub const ALL: [ChainKind; 12] = [
        ChainKind::Ineqf2,
        ChainKind::Ineqlam1,
        ChainKind::Ineqlam1p,
        ChainKind::Ineqa1pp,
        ChainKind::Ineqlam2,
        ChainKind::Ineqlam3,
        ChainKind::Ineq2g1,
        ChainKind::Ineqlam23,
        ChainKind::Ineqlam23p,
        ChainKind::Ineqwv,
        ChainKind::Ineqh14,
        ChainKind::Ineq2g2,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ChainKind::Ineqf2 => "INEQF2",
            ChainKind::Ineqlam1 => "INEQLAM1",
            ChainKind::Ineqlam1p => "INEQLAM1P",
            ChainKind::Ineqa1pp => "INEQA1PP",
            ChainKind::Ineqlam2 => "INEQLAM2",
            ChainKind::Ineqlam3 => "INEQLAM3",
            ChainKind::Ineq2g1 => "INEQ2G1",
            ChainKind::Ineqlam23 => "INEQLAM23",
            ChainKind::Ineqlam23p => "INEQLAM23P",
            ChainKind::Ineqwv => "INEQWV",
            ChainKind::Ineqh14 => "INEQH14",
            ChainKind::Ineq2g2 => "INEQ2G2",
        }
    }

    pub fn parse(s: &str) -> Result<ChainKind> {
        ChainKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown bound chain {s:?}")))
    }

    pub fn domain(&self) -> ChainDomain {
        match self {
            ChainKind::Ineqf2
            | ChainKind::Ineqlam1
            | ChainKind::Ineqlam1p
            | ChainKind::Ineqa1pp => ChainDomain::Symmetric,
            ChainKind::Ineqwv | ChainKind::Ineqh14 | ChainKind::Ineq2g2 => ChainDomain::RadiusOnly,
            _ => ChainDomain::General,
        }
    }

    pub fn needs_n(&self) -> bool {
        matches!(
            self,
            ChainKind::Ineqf2
                | ChainKind::Ineqlam1
                | ChainKind::Ineqlam1p
                | ChainKind::Ineqa1pp
                | ChainKind::Ineqlam23
                | ChainKind::Ineqlam23p
        )
    }
}

impl fmt::Display for ChainKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Inputs of one chain evaluation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ChainInput {
    pub a: Option<f64>,
    pub b1: Option<f64>,
    pub b2: Option<f64>,
    pub r: f64,
    pub n: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Link {
    pub label: String,
    pub value: f64,
}

/// Links in ascending order; slacks are the consecutive differences.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub chain_name: String,
    pub links: Vec<Link>,
    pub slacks: Vec<f64>,
    pub verdict: Verdict,
    pub tolerance_used: f64,
}

impl BoundReport {
    pub fn new(chain: ChainKind, links: Vec<(&str, f64)>) -> Self {
        let scale = links.iter().fold(1.0f64, |m, (_, v)| m.max(v.abs()));
        let tolerance_used = CHAIN_TOL * scale;
        let slacks: Vec<f64> = links.windows(2).map(|w| w[1].1 - w[0].1).collect();
        let ok = slacks.iter().all(|s| *s >= -tolerance_used);
        BoundReport {
            chain_name: chain.name().to_string(),
            links: links
                .into_iter()
                .map(|(label, value)| Link {
                    label: label.to_string(),
                    value,
                })
                .collect(),
            slacks,
            verdict: if ok { Verdict::Pass } else { Verdict::Fail },
            tolerance_used,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn min_slack(&self) -> f64 {
        self.slacks.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Index of the first failing slack (between links i and i+1).
    pub fn first_failure(&self) -> Option<usize> {
        self.slacks
            .iter()
            .position(|s| !(*s >= -self.tolerance_used))
    }
}

fn open_r(op: &'static str, r: f64) -> Result<f64> {
    if !(r > 0.0 && r < 1.0) {
        return domain(op, format!("r must lie in (0, 1), got {r}"));
    }
    Ok(r)
}

fn need_n(op: &'static str, input: &ChainInput) -> Result<usize> {
    input
        .n
        .map_or_else(|| precondition(op, "index n is required"), Ok)
}

fn need_symmetric(op: &'static str, input: &ChainInput) -> Result<SymmetricParams> {
    let a = input
        .a
        .map_or_else(|| precondition(op, "parameter a is required"), Ok)?;
    SymmetricParams::new(a)
}

fn need_turan(op: &'static str, input: &ChainInput) -> Result<TuranParams> {
    match (input.a, input.b1, input.b2) {
        (Some(a), Some(b1), Some(b2)) => TuranParams::new(a, b1, b2),
        _ => precondition(op, "parameters a, b1 and b2 are required"),
    }
}

/// Evaluates every link of a chain at one point.
pub fn bound_chain(which: ChainKind, input: &ChainInput, eps: f64) -> Result<BoundReport> {
    let op = "bound_chain";
    let r = open_r(op, input.r)?;
    match which.domain() {
        ChainDomain::Symmetric => symmetric_chain(
            which,
            &need_symmetric(op, input)?,
            r,
            need_n(op, input)?,
            eps,
        ),
        ChainDomain::General => general_chain(which, &need_turan(op, input)?, r, input.n, eps),
        ChainDomain::RadiusOnly => radius_chain(which, r, eps),
    }
}

fn symmetric_chain(
    which: ChainKind,
    s: &SymmetricParams,
    r: f64,
    n: usize,
    eps: f64,
) -> Result<BoundReport> {
    let a = s.a;
    let c = ak_floats(a, n + 3)?;
    let delta = delta_n_f64(a, n)?;
    let rp = Point::new(r);
    let report = match which {
        ChainKind::Ineqf2 => {
            let mid = 2.0 / PI * ka_expansion_lhs(a, r, eps)? - poly(&c[..=n + 1], r * r);
            BoundReport::new(
                which,
                vec![
                    ("0", 0.0),
                    ("2αK_a/π − 2(E_a − r'²K_a)F(a,3/2−a;3/2;r²)/(πar²F(a,3/2−a;5/2;r²)) − P_n(a,r)", mid),
                    ("δ_n r^{2(n+2)}", delta * r.powi(2 * (n as i32 + 2))),
                ],
            )
        }
        ChainKind::Ineqlam1 => {
            let f = hyp(a, 1.0 - a, 1.0, rp, eps)?;
            let mid = s.alpha * f - poly(&c[..=n + 1], r) - lambda1(a, rp, eps)?;
            BoundReport::new(
                which,
                vec![
                    ("a_{n+2} r^{n+2}", c[n + 2] * r.powi(n as i32 + 2)),
                    ("αF(a,1−a;1;r) − P_n(a,√r) − Λ₁", mid),
                    ("δ_n r^{n+2}", delta * r.powi(n as i32 + 2)),
                ],
            )
        }
        ChainKind::Ineqlam1p => {
            let f = hyp(a, 1.0 - a, 1.0, rp, eps)?;
            let mid =
                (lambda1(a, rp, eps)? - f) / r - a * (7.0 * a - 3.0) / 30.0 - q_n(a, r, n, eps)?;
            BoundReport::new(
                which,
                vec![
                    ("−δ_n r^{n+1}", -delta * r.powi(n as i32 + 1)),
                    ("(Λ₁ − F(a,1−a;1;r))/r − a(7a−3)/30 − Q_n", mid),
                    ("−a_{n+2} r^{n+1}", -c[n + 2] * r.powi(n as i32 + 1)),
                ],
            )
        }
        ChainKind::Ineqa1pp => {
            let (al, be) = (s.alpha, s.beta);
            let f = hyp(a, 1.0 - a, 1.0, rp, eps)?;
            let rn2 = r.powi(n as i32 + 2);
            let p_now = poly(&c[..=n + 1], r);
            let p_next = poly(&c[..=n + 2], r);
            let head: f64 = c[..=n + 2].iter().sum();
            BoundReport::new(
                which,
                vec![
                    ("α(1−β)", al * (1.0 - be)),
                    ("α[1 − β/F]", al * (1.0 - be / f)),
                    ("α − αβr^{n+2}/F", al - al * be * rn2 / f),
                    (
                        "α − (P_n(a,√r) + δ_n r^{n+2})/F",
                        al - (p_now + delta * rn2) / f,
                    ),
                    ("Λ", lambda(a, rp, eps)?),
                    ("α − P_{n+1}(a,√r)/F", al - p_next / f),
                    (
                        "α − (r^{n+2}Σ_{k≤n+2}a_k + a₀(1−r^{n+2}))/F",
                        al - (rn2 * head + c[0] * (1.0 - rn2)) / f,
                    ),
                    ("α − η/F", al - s.eta / f),
                    ("α", al),
                ],
            )
        }
        _ => unreachable!("not a symmetric chain"),
    };
    Ok(report)
}

fn general_chain(
    which: ChainKind,
    p: &TuranParams,
    r: f64,
    n: Option<usize>,
    eps: f64,
) -> Result<BoundReport> {
    let rp = Point::new(r);
    let f = hyp(p.a, p.b1, p.c1, rp, eps)?;
    let (ab, bb, eb) = (p.alpha_bar, p.beta_bar, p.eta_bar);
    let report = match which {
        ChainKind::Ineqlam2 => BoundReport::new(
            which,
            vec![
                ("ᾱ[F(a,b₁;c₁;r) − β̄]", ab * (f - bb)),
                ("Λ₃", lambda3(p, rp, eps)?),
                ("ᾱ[F(a,b₁;c₁;r) − η̄]", ab * (f - eb)),
            ],
        ),
        ChainKind::Ineqlam3 => BoundReport::new(
            which,
            vec![
                ("ᾱ[1 − β̄/F]", ab * (1.0 - bb / f)),
                ("Λ₂", lambda2(p, rp, eps)?),
                ("ᾱ[1 − η̄/F]", ab * (1.0 - eb / f)),
            ],
        ),
        ChainKind::Ineq2g1 => BoundReport::new(
            which,
            vec![
                ("ᾱ(1−β̄)", ab * (1.0 - bb)),
                ("Λ₂", lambda2(p, rp, eps)?),
                ("ᾱ", ab),
            ],
        ),
        ChainKind::Ineqlam23 | ChainKind::Ineqlam23p => {
            let n = n.map_or_else(|| precondition("bound_chain", "index n is required"), Ok)?;
            if !p.absolutely_monotone_region() {
                return precondition(
                    "bound_chain",
                    format!(
                        "{which} requires a ≤ 1, or a > 1 and b2 ≤ b̄(a); got a = {}, b2 = {}",
                        p.a, p.b2
                    ),
                );
            }
            if p.is_equal_case() {
                return precondition("bound_chain", format!("{which} requires b1 < b2"));
            }
            let (s_lo, s_hi, eta_n) = btilde_partials(p, r, n)?;
            let upper = s_lo + eta_n * r.powi(n as i32 + 2);
            if which == ChainKind::Ineqlam23 {
                BoundReport::new(
                    which,
                    vec![
                        ("Σ_{k≤n+2} b̃_k r^k", s_hi),
                        ("ᾱF(a,b₁;c₁;r) − Λ₃", ab * f - lambda3(p, rp, eps)?),
                        ("Σ_{k≤n+1} b̃_k r^k + η_n r^{n+2}", upper),
                    ],
                )
            } else {
                BoundReport::new(
                    which,
                    vec![
                        ("ᾱ(1−β̄)", ab * (1.0 - bb)),
                        ("ᾱ − (Σ_{k≤n+1} b̃_k r^k + η_n r^{n+2})/F", ab - upper / f),
                        ("Λ₂", lambda2(p, rp, eps)?),
                        ("ᾱ − Σ_{k≤n+2} b̃_k r^k/F", ab - s_hi / f),
                        ("ᾱ", ab),
                    ],
                )
            }
        }
        _ => unreachable!("not a general chain"),
    };
    Ok(report)
}

/// (Σ_{k≤n+1} b̃ₖrᵏ, Σ_{k≤n+2} b̃ₖrᵏ, ηₙ).
fn btilde_partials(p: &TuranParams, r: f64, n: usize) -> Result<(f64, f64, f64)> {
    let (a, b1, b2) = (rationalize(p.a)?, rationalize(p.b1)?, rationalize(p.b2)?);
    let t = btilde_table(&a, &b1, &b2, n + 2)?;
    let c = t.float_values();
    let head = crate::series::to_f64(&partial_sum_exact(&t, n + 1)?);
    let eta_n = p.alpha_bar * p.beta_bar - head;
    Ok((poly(&c[..=n + 1], r), poly(&c, r), eta_n))
}

fn radius_chain(which: ChainKind, r: f64, eps: f64) -> Result<BoundReport> {
    let t = an2_table(5).float_values();
    let at4 = a_tilde_n(4);
    let report = match which {
        ChainKind::Ineqwv => BoundReport::new(
            which,
            vec![
                (
                    "Σ_{k≤4} a_k⁽²⁾ r^k − ã₄ r⁵",
                    poly(&t[..=4], r) - at4 * r.powi(5),
                ),
                ("h₁₁", h11(r, eps)?),
                ("Σ_{k≤5} a_k⁽²⁾ r^k", poly(&t, r)),
            ],
        ),
        ChainKind::Ineqh14 => {
            let w = r * r;
            BoundReport::new(
                which,
                vec![
                    (
                        "(3π/8)(Σ_{k≤4} a_k⁽²⁾ r^{2k} − ã₄ r^{10})",
                        3.0 * FRAC_PI_8 * (poly(&t[..=4], w) - at4 * w.powi(5)),
                    ),
                    ("(E − r'²K)/(1 − r'² arth r/r)", h13(w)?),
                    (
                        "(3π/8) Σ_{k≤5} a_k⁽²⁾ r^{2k}",
                        3.0 * FRAC_PI_8 * poly(&t, w),
                    ),
                ],
            )
        }
        ChainKind::Ineq2g2 => {
            let w = r * r;
            let m = Modulus::new(r)?;
            let q = crate::elliptic::arth_ratio(r)?;
            let at3 = a_tilde_n(3);
            let h = h13(w)?;
            let lift = (LN_2 - FRAC_PI_8) * w;
            BoundReport::new(
                which,
                vec![
                    (
                        "π/8 + (3π/8)[Σ_{k≤3} a_k⁽²⁾ r^{2k} − ã₃ r⁸] arth r/r",
                        FRAC_PI_8 + 3.0 * FRAC_PI_8 * (poly(&t[..=3], w) - at3 * w.powi(4)) * q,
                    ),
                    ("π/8 + h₁₃(r²) arth r/r", FRAC_PI_8 + h * q),
                    ("K (AGM)", agm_k_modulus(m)),
                    (
                        "π/8 + h₁₃(r²) arth r/r + (log 2 − π/8) r²",
                        FRAC_PI_8 + h * q + lift,
                    ),
                    (
                        "π/8 + (log 2 − π/8) r² + (3π/8) Σ_{k≤4} a_k⁽²⁾ r^{2k} arth r/r",
                        FRAC_PI_8 + lift + 3.0 * FRAC_PI_8 * poly(&t[..=4], w) * q,
                    ),
                ],
            )
        }
        _ => unreachable!("not a radius-only chain"),
    };
    Ok(report)
}

/// K(r) from the two sums of the 𝒦 expansion truncated after n+1 terms:
/// (3π/8)[(Σ_{k≤n+1} aₖ⁽²⁾r^{2k}) arth r/r + Σ_{k≤n+1} aₖ(1/2) r^{2k}].
pub fn k_truncated(r: f64, n: usize) -> Result<f64> {
    let r = open_r("k_truncated", r)?;
    let w = r * r;
    let t2 = an2_table(n + 1).float_values();
    let tk = ak_floats(0.5, n + 1)?;
    Ok(3.0 * FRAC_PI_8 * (poly(&t2, w) * crate::elliptic::arth_ratio(r)? + poly(&tk, w)))
}

/// Left side of the 𝒦ₐ expansion: α𝒦ₐ(r) − (ℰₐ − r′²𝒦ₐ)/(ar²) · F(a,3/2−a;3/2;r²)/F(a,3/2−a;5/2;r²).
pub fn ka_expansion_lhs(a: f64, r: f64, eps: f64) -> Result<f64> {
    check_unit_a("ka_expansion_lhs", a)?;
    let m = Modulus::new(r)?;
    let k = k_a(a, m)?;
    let r2 = m.square();
    // (ℰₐ − r′²𝒦ₐ)/(ar²) = (π/2) F(a,1−a;2;r²), without the cancellation at small r
    let combo = FRAC_PI_2 * hyp(a, 1.0 - a, 2.0, r2, eps)?;
    let ratio = hyp(a, 1.5 - a, 1.5, r2, eps)? / hyp(a, 1.5 - a, 2.5, r2, eps)?;
    Ok(alpha(a) * k - combo * ratio)
}

/// (π/2) Pₙ(a, r), the truncated right side of the 𝒦ₐ expansion.
pub fn ka_expansion_partial(a: f64, r: f64, n: usize) -> Result<f64> {
    Ok(FRAC_PI_2 * p_n(a, r, n)?)
}
