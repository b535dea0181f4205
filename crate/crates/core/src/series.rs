//! Exact rationals and truncated Maclaurin series over them.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{domain, Error, Result};

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator (guaranteed by `num`'s `Ratio`).
pub type ExactRational = BigRational;

/// p/q as an [`ExactRational`]. Panics if `q == 0`.
pub fn rational(p: i64, q: i64) -> ExactRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn to_f64(q: &ExactRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Parses "p/q", "p" or a finite decimal such as "0.25".
pub fn parse_rational(s: &str) -> Result<ExactRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(p, q));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    let digits = format!("{int}{frac}");
    if !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let num: BigInt = digits.parse().map_err(|_| bad())?;
    let den = num::pow(BigInt::from(10), frac.len());
    let q = BigRational::new(num, den);
    Ok(if neg { -q } else { q })
}

/// Converts a float to a rational. Short continued-fraction convergents
/// (denominator ≤ 10⁶) are preferred when they reproduce `x` to within two
/// ulps, so 0.1 becomes 1/10; otherwise the exact binary value is used.
pub fn rationalize(x: f64) -> Result<ExactRational> {
    if !x.is_finite() {
        return domain("rationalize", format!("cannot rationalize {x}"));
    }
    let tol = 2.0 * f64::EPSILON * x.abs().max(f64::MIN_POSITIVE);
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut y = x;
    for _ in 0..40 {
        let a = y.floor();
        if a.abs() > 1e15 {
            break;
        }
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > 1_000_000 {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        if ((h1 as f64) / (k1 as f64) - x).abs() <= tol {
            return Ok(BigRational::new(BigInt::from(h1), BigInt::from(k1)));
        }
        let frac = y - a;
        if frac == 0.0 {
            break;
        }
        y = 1.0 / frac;
    }
    BigRational::from_float(x).ok_or_else(|| Error::Parse(format!("cannot rationalize {x}")))
}

/// Formats a rational as "p/q" (or "p" when the denominator is 1).
pub fn format_rational(q: &ExactRational) -> String {
    q.to_string()
}

pub(crate) fn serialize_rationals<S: Serializer>(
    v: &[ExactRational],
    s: S,
) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(format_rational))
}

/// Truncated Maclaurin series Σ_{n≤degree} cₙ xⁿ with exact coefficients.
///
/// Binary operations truncate to the smaller degree of the two operands.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesPoly {
    #[serde(serialize_with = "serialize_rationals")]
    coeffs: Vec<ExactRational>,
}

impl SeriesPoly {
    /// Builds a series from coefficients; an empty vector is the zero series of degree 0.
    pub fn new(mut coeffs: Vec<ExactRational>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(BigRational::zero());
        }
        SeriesPoly { coeffs }
    }

    pub fn from_fn(degree: usize, f: impl FnMut(usize) -> ExactRational) -> Self {
        SeriesPoly::new((0..=degree).map(f).collect())
    }

    pub fn one(degree: usize) -> Self {
        SeriesPoly::from_fn(degree, |n| {
            if n == 0 {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[ExactRational] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &ExactRational {
        &self.coeffs[n]
    }

    pub fn into_coeffs(self) -> Vec<ExactRational> {
        self.coeffs
    }

    pub fn truncate(&self, degree: usize) -> Self {
        SeriesPoly::new(self.coeffs[..=degree.min(self.degree())].to_vec())
    }

    pub fn scale(&self, k: &ExactRational) -> Self {
        SeriesPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Float image of the partial sum at `x` (Horner).
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + to_f64(c))
    }

    /// Exact quotient `self / den`; the constant term of `den` must be nonzero.
    pub fn divide(&self, den: &SeriesPoly) -> Result<SeriesPoly> {
        series_divide(self, den)
    }
}

impl fmt::Display for SeriesPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(format_rational).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

impl Add for &SeriesPoly {
    type Output = SeriesPoly;
    fn add(self, rhs: &SeriesPoly) -> SeriesPoly {
        let d = self.degree().min(rhs.degree());
        SeriesPoly::from_fn(d, |n| &self.coeffs[n] + &rhs.coeffs[n])
    }
}

impl Sub for &SeriesPoly {
    type Output = SeriesPoly;
    fn sub(self, rhs: &SeriesPoly) -> SeriesPoly {
        let d = self.degree().min(rhs.degree());
        SeriesPoly::from_fn(d, |n| &self.coeffs[n] - &rhs.coeffs[n])
    }
}

impl Neg for &SeriesPoly {
    type Output = SeriesPoly;
    fn neg(self) -> SeriesPoly {
        SeriesPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Cauchy product.
impl Mul for &SeriesPoly {
    type Output = SeriesPoly;
    fn mul(self, rhs: &SeriesPoly) -> SeriesPoly {
        let d = self.degree().min(rhs.degree());
        SeriesPoly::from_fn(d, |n| {
            (0..=n).fold(BigRational::zero(), |acc, k| {
                acc + &self.coeffs[k] * &rhs.coeffs[n - k]
            })
        })
    }
}

/// Exact series quotient by back-substitution:
/// qₙ = (numₙ − Σ_{k<n} q_k den_{n−k}) / den₀.
pub fn series_divide(num: &SeriesPoly, den: &SeriesPoly) -> Result<SeriesPoly> {
    let lead = &den.coeffs[0];
    if lead.is_zero() {
        return domain("series_divide", "denominator has zero constant term");
    }
    let d = num.degree().min(den.degree());
    let inv = lead.recip();
    let mut q: Vec<ExactRational> = Vec::with_capacity(d + 1);
    for n in 0..=d {
        let mut acc = num.coeffs[n].clone();
        for k in 0..n {
            acc -= &q[k] * &den.coeffs[n - k];
        }
        q.push(acc * &inv);
    }
    Ok(SeriesPoly::new(q))
}

/// Sign of a rational as −1, 0 or 1.
pub fn sign(q: &ExactRational) -> i32 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}
