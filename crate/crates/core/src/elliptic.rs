//! Generalized complete elliptic integrals
//! 𝒦ₐ(r) = (π/2) F(a, 1−a; 1; r²) and ℰₐ(r) = (π/2) F(a−1, 1−a; 1; r²),
//! the arth representation, two identity combinations and an AGM oracle
//! for the classical 𝒦 that does not touch the hypergeometric series.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use serde::Serialize;

use crate::error::{domain, Result};
use crate::hyp2f1::{f21, HypParams, Point};

/// Tolerance used for the ₂F₁ evaluations in this module.
pub const EVAL_EPS: f64 = 1e-14;

/// Above this modulus the classical 𝒦 is taken from the AGM.
const AGM_SWITCH: f64 = 0.95;

/// Modulus r ∈ (0, 1) together with r′ = √(1 − r²).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Modulus {
    r: f64,
    r_prime: f64,
}

impl Modulus {
    pub fn new(r: f64) -> Result<Self> {
        if !(r > 0.0 && r < 1.0) {
            return domain("Modulus", format!("r must lie in (0, 1), got {r}"));
        }
        Ok(Modulus {
            r,
            r_prime: ((1.0 - r) * (1.0 + r)).sqrt(),
        })
    }

    /// The modulus r = 1 − s, keeping r′ accurate for tiny s.
    pub fn from_complement(s: f64) -> Result<Self> {
        if !(s > 0.0 && s < 1.0) {
            return domain("Modulus", format!("1 − r must lie in (0, 1), got {s}"));
        }
        Ok(Modulus {
            r: 1.0 - s,
            r_prime: (s * (2.0 - s)).sqrt(),
        })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn r_prime(&self) -> f64 {
        self.r_prime
    }

    /// r² as a point carrying its complement r′².
    pub fn square(&self) -> Point {
        Point::with_complement(self.r * self.r, self.r_prime * self.r_prime)
    }
}

fn check_a(op: &'static str, a: f64) -> Result<()> {
    if !(a > 0.0 && a < 1.0) {
        return domain(op, format!("a must lie in (0, 1), got {a}"));
    }
    Ok(())
}

/// 𝒦ₐ(r). For a = 1/2 and r > 0.95 the AGM value is returned.
pub fn k_a(a: f64, m: Modulus) -> Result<f64> {
    check_a("k_a", a)?;
    if a == 0.5 && m.r > AGM_SWITCH {
        return Ok(agm_k_modulus(m));
    }
    Ok(FRAC_PI_2 * f21(HypParams::new(a, 1.0 - a, 1.0)?, m.square(), EVAL_EPS)?)
}

/// ℰₐ(r).
pub fn e_a(a: f64, m: Modulus) -> Result<f64> {
    check_a("e_a", a)?;
    Ok(FRAC_PI_2 * f21(HypParams::new(a - 1.0, 1.0 - a, 1.0)?, m.square(), EVAL_EPS)?)
}

/// Classical 𝒦(r) = π / (2 AGM(1, r′)).
pub fn agm_k(r: f64) -> Result<f64> {
    Ok(agm_k_modulus(Modulus::new(r)?))
}

pub fn agm_k_modulus(m: Modulus) -> f64 {
    let (mut x, mut y) = (1.0f64, m.r_prime);
    for _ in 0..64 {
        if (x - y).abs() <= 1e-15 * x {
            break;
        }
        (x, y) = (0.5 * (x + y), (x * y).sqrt());
    }
    PI / (x + y)
}

/// arth(r)/r on [0, 1), equal to F(1/2, 1; 3/2; r²).
pub fn arth_ratio(r: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&r) {
        return domain("arth_ratio", format!("r must lie in [0, 1), got {r}"));
    }
    if r < 1e-4 {
        let w = r * r;
        return Ok(1.0 + w * (1.0 / 3.0 + w * (1.0 / 5.0 + w / 7.0)));
    }
    Ok(r.atanh() / r)
}

/// (ℰ(r) − r′²𝒦(r))/r² through (π/4) F(1/2, 1/2; 2; r²).
pub fn ek_combo(m: Modulus) -> Result<f64> {
    Ok(FRAC_PI_4 * f21(HypParams::new(0.5, 0.5, 2.0)?, m.square(), EVAL_EPS)?)
}

/// (ℰ(r) − r′²𝒦(r))/r² from the integrals themselves; loses accuracy as r → 0.
pub fn ek_combo_direct(m: Modulus) -> Result<f64> {
    let e = e_a(0.5, m)?;
    let k = k_a(0.5, m)?;
    Ok((e - m.r_prime * m.r_prime * k) / (m.r * m.r))
}

/// Both sides of F(a, 1−a; 2; t²) = 2(ℰₐ(t) − t′²𝒦ₐ(t))/(π a t²).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct KaCombo {
    /// The ₂F₁ side.
    pub value: f64,
    /// The elliptic-integral side.
    pub integral_side: f64,
    pub residual: f64,
}

pub fn ka_combo(a: f64, t: f64) -> Result<KaCombo> {
    check_a("ka_combo", a)?;
    let m = Modulus::new(t)?;
    let value = f21(HypParams::new(a, 1.0 - a, 2.0)?, m.square(), EVAL_EPS)?;
    let ea = FRAC_PI_2 * f21(HypParams::new(a - 1.0, 1.0 - a, 1.0)?, m.square(), EVAL_EPS)?;
    let ka = FRAC_PI_2 * f21(HypParams::new(a, 1.0 - a, 1.0)?, m.square(), EVAL_EPS)?;
    let integral_side = 2.0 * (ea - m.r_prime * m.r_prime * ka) / (PI * a * t * t);
    Ok(KaCombo {
        value,
        integral_side,
        residual: (value - integral_side).abs(),
    })
}
