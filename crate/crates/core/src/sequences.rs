//! Auxiliary sequences for a, b > 0 and c = a + b:
//!
//! φₙ = (b)ₙ/(c+1)ₙ, ρₙ = (b)ₙ/(c)ₙ,
//! τₙ = Σ_{k<n} (a+1)/((k+b)(k+c+1)), λₙ = Σ_{k<n} a/((k+b)(k+c)).
//!
//! The products φₙτₙ and ρₙλₙ decrease from n = 1 exactly when
//! b ≤ √((a+1)(a+2)) and b ≤ √(a(a+1)) respectively, and otherwise rise
//! to a single maximum before decreasing.

use num::{BigRational, One, Zero};
use serde::Serialize;

use crate::error::{domain, Result};
use crate::series::ExactRational;
use crate::special::digamma;

/// Relative slack for float comparisons in turning-point detection.
pub const FLOAT_SLACK: f64 = 1e-14;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SeqParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl SeqParams {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
            return domain(
                "SeqParams",
                format!("a and b must be positive, got ({a}, {b})"),
            );
        }
        Ok(SeqParams { a, b, c: a + b })
    }
}

pub fn phi_n(p: SeqParams, n: usize) -> f64 {
    (0..n).fold(1.0, |acc, k| {
        acc * (p.b + k as f64) / (p.c + 1.0 + k as f64)
    })
}

pub fn rho_n(p: SeqParams, n: usize) -> f64 {
    (0..n).fold(1.0, |acc, k| acc * (p.b + k as f64) / (p.c + k as f64))
}

pub fn tau_n(p: SeqParams, n: usize) -> f64 {
    (0..n)
        .map(|k| {
            let k = k as f64;
            (p.a + 1.0) / ((k + p.b) * (k + p.c + 1.0))
        })
        .sum()
}

pub fn lambda_n(p: SeqParams, n: usize) -> f64 {
    (0..n)
        .map(|k| {
            let k = k as f64;
            p.a / ((k + p.b) * (k + p.c))
        })
        .sum()
}

/// τₙ through ψ(c+1) − ψ(b) + ψ(n+b) − ψ(n+c+1).
pub fn tau_n_digamma(p: SeqParams, n: usize) -> Result<f64> {
    let n = n as f64;
    Ok(digamma(p.c + 1.0)? - digamma(p.b)? + digamma(n + p.b)? - digamma(n + p.c + 1.0)?)
}

/// λₙ through ψ(c) − ψ(b) + ψ(n+b) − ψ(n+c).
pub fn lambda_n_digamma(p: SeqParams, n: usize) -> Result<f64> {
    let n = n as f64;
    Ok(digamma(p.c)? - digamma(p.b)? + digamma(n + p.b)? - digamma(n + p.c)?)
}

/// lim τₙ = ψ(c+1) − ψ(b).
pub fn tau_limit(p: SeqParams) -> Result<f64> {
    Ok(digamma(p.c + 1.0)? - digamma(p.b)?)
}

/// lim λₙ = ψ(c) − ψ(b).
pub fn lambda_limit(p: SeqParams) -> Result<f64> {
    Ok(digamma(p.c)? - digamma(p.b)?)
}

/// Exact-rational parameters with c = a + b.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactSeqParams {
    pub a: ExactRational,
    pub b: ExactRational,
    pub c: ExactRational,
}

impl ExactSeqParams {
    pub fn new(a: ExactRational, b: ExactRational) -> Result<Self> {
        if a <= BigRational::zero() || b <= BigRational::zero() {
            return domain(
                "ExactSeqParams",
                format!("a and b must be positive, got ({a}, {b})"),
            );
        }
        let c = &a + &b;
        Ok(ExactSeqParams { a, b, c })
    }
}

fn k_rat(k: usize) -> ExactRational {
    BigRational::from_integer(k.into())
}

pub fn phi_n_exact(p: &ExactSeqParams, n: usize) -> ExactRational {
    (0..n).fold(BigRational::one(), |acc, k| {
        acc * (&p.b + k_rat(k)) / (&p.c + k_rat(k + 1))
    })
}

pub fn rho_n_exact(p: &ExactSeqParams, n: usize) -> ExactRational {
    (0..n).fold(BigRational::one(), |acc, k| {
        acc * (&p.b + k_rat(k)) / (&p.c + k_rat(k))
    })
}

pub fn tau_n_exact(p: &ExactSeqParams, n: usize) -> ExactRational {
    let a1 = &p.a + BigRational::one();
    (0..n).fold(BigRational::zero(), |acc, k| {
        acc + &a1 / ((&p.b + k_rat(k)) * (&p.c + k_rat(k + 1)))
    })
}

pub fn lambda_n_exact(p: &ExactSeqParams, n: usize) -> ExactRational {
    (0..n).fold(BigRational::zero(), |acc, k| {
        acc + &p.a / ((&p.b + k_rat(k)) * (&p.c + k_rat(k)))
    })
}

/// Which product sequence to scan.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ProductKind {
    /// φₙτₙ
    PhiTau,
    /// ρₙλₙ
    RhoLambda,
}

fn product(kind: ProductKind, p: SeqParams, n: usize) -> f64 {
    match kind {
        ProductKind::PhiTau => phi_n(p, n) * tau_n(p, n),
        ProductKind::RhoLambda => rho_n(p, n) * lambda_n(p, n),
    }
}

fn product_exact(kind: ProductKind, p: &ExactSeqParams, n: usize) -> ExactRational {
    match kind {
        ProductKind::PhiTau => phi_n_exact(p, n) * tau_n_exact(p, n),
        ProductKind::RhoLambda => rho_n_exact(p, n) * lambda_n_exact(p, n),
    }
}

/// Index n ≥ 1 where the product stops increasing, scanning 1..=n_max.
/// Returns 1 when the sequence decreases from the start and `None` when it
/// is still increasing at n_max.
pub fn product_turning_point(
    kind: ProductKind,
    p: SeqParams,
    n_max: usize,
) -> Result<Option<usize>> {
    if n_max < 2 {
        return domain(
            "product_turning_point",
            format!("n_max must be at least 2, got {n_max}"),
        );
    }
    let mut prev = product(kind, p, 1);
    for n in 2..=n_max {
        let cur = product(kind, p, n);
        if cur <= prev * (1.0 + FLOAT_SLACK) {
            return Ok(Some(n - 1));
        }
        prev = cur;
    }
    Ok(None)
}

/// Exact counterpart of [`product_turning_point`] with strict comparison.
pub fn product_turning_point_exact(
    kind: ProductKind,
    p: &ExactSeqParams,
    n_max: usize,
) -> Result<Option<usize>> {
    if n_max < 2 {
        return domain(
            "product_turning_point",
            format!("n_max must be at least 2, got {n_max}"),
        );
    }
    let mut prev = product_exact(kind, p, 1);
    for n in 2..=n_max {
        let cur = product_exact(kind, p, n);
        if cur <= prev {
            return Ok(Some(n - 1));
        }
        prev = cur;
    }
    Ok(None)
}

/// The threshold on b at which the product changes shape:
/// √((a+1)(a+2)) for φₙτₙ and √(a(a+1)) for ρₙλₙ.
pub fn turning_threshold(kind: ProductKind, a: f64) -> f64 {
    match kind {
        ProductKind::PhiTau => ((a + 1.0) * (a + 2.0)).sqrt(),
        ProductKind::RhoLambda => (a * (a + 1.0)).sqrt(),
    }
}
