//! Exact coefficient recurrences for the ratio functionals, their
//! series-division oracle, and the tail constants δₙ, ηₙ, ãₙ.
//!
//! Every table is produced by its own recurrence; [`oracle_table`] rebuilds
//! the same coefficients from products and quotients of ₂F₁ Maclaurin
//! series, so the two can be compared exactly.

use std::f64::consts::PI;
use std::fmt;

use num::{BigRational, One, Signed, Zero};
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::functionals::{
    alpha_bar_exact, alpha_exact, beta, beta_bar, SymmetricParams, TuranParams,
};
use crate::hyp2f1::f21_series_coeffs;
use crate::sequences::{lambda_n, phi_n, rho_n, tau_n, SeqParams};
use crate::series::{format_rational, rational, series_divide, to_f64, ExactRational, SeriesPoly};
use crate::special::{pochhammer, pochhammer_exact};

/// Largest degree [`build_table`] accepts without `allow_large`.
pub const DEFAULT_MAX_DEGREE: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum CoeffKind {
    /// h₉ = F(a,b₁;c₁+1)/F(a,b₂;c₂+1)
    An1,
    /// h₁₁ = F(1/2,1/2;2)/F(1/2,1;5/2)
    An2,
    /// f₂ = αF(a,1−a;1) − Λ₁
    Ak,
    /// Λ₃
    Bn,
    /// Λ₁
    Cn,
    /// Λ
    Dn,
    /// Λ₂
    BbarN,
    /// f₄ = ᾱF(a,b₁;c₁) − Λ₃
    Btilde,
    /// (3π/8)·AN2
    An3,
    /// π aₖ/(2α)
    An4,
}

impl CoeffKind {
    pub const ALL: [CoeffKind; 10] = [
        CoeffKind::An1,
        CoeffKind::An2,
        CoeffKind::Ak,
        CoeffKind::Bn,
        CoeffKind::Cn,
        CoeffKind::Dn,
        CoeffKind::BbarN,
        CoeffKind::Btilde,
        CoeffKind::An3,
        CoeffKind::An4,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            CoeffKind::An1 => "an1",
            CoeffKind::An2 => "an2",
            CoeffKind::Ak => "ak",
            CoeffKind::Bn => "bn",
            CoeffKind::Cn => "cn",
            CoeffKind::Dn => "dn",
            CoeffKind::BbarN => "bbarn",
            CoeffKind::Btilde => "btilde",
            CoeffKind::An3 => "an3",
            CoeffKind::An4 => "an4",
        }
    }

    pub fn parse(s: &str) -> Result<CoeffKind> {
        CoeffKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown coefficient table {s:?}")))
    }

    /// Names of the parameters the table takes, in order.
    pub fn param_names(&self) -> &'static [&'static str] {
        match self {
            CoeffKind::An2 | CoeffKind::An3 => &[],
            CoeffKind::Ak | CoeffKind::Cn | CoeffKind::Dn | CoeffKind::An4 => &["a"],
            _ => &["a", "b1", "b2"],
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, CoeffKind::An3 | CoeffKind::An4)
    }
}

impl fmt::Display for CoeffKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum CoeffValues {
    Exact(Vec<ExactRational>),
    /// Tables carrying a factor of π.
    Float(Vec<f64>),
}

/// Coefficients 0..=degree of one series.
#[derive(Clone, Debug, PartialEq)]
pub struct CoeffTable {
    pub kind: CoeffKind,
    pub params: Vec<ExactRational>,
    pub values: CoeffValues,
    pub degree: usize,
}

impl CoeffTable {
    fn exact(kind: CoeffKind, params: Vec<ExactRational>, values: Vec<ExactRational>) -> Self {
        let degree = values.len() - 1;
        CoeffTable {
            kind,
            params,
            values: CoeffValues::Exact(values),
            degree,
        }
    }

    pub fn exact_values(&self) -> Option<&[ExactRational]> {
        match &self.values {
            CoeffValues::Exact(v) => Some(v),
            CoeffValues::Float(_) => None,
        }
    }

    pub fn float_values(&self) -> Vec<f64> {
        match &self.values {
            CoeffValues::Exact(v) => v.iter().map(to_f64).collect(),
            CoeffValues::Float(v) => v.clone(),
        }
    }

    pub fn value_f64(&self, k: usize) -> f64 {
        match &self.values {
            CoeffValues::Exact(v) => to_f64(&v[k]),
            CoeffValues::Float(v) => v[k],
        }
    }

    /// Sign of each coefficient (−1, 0, 1).
    pub fn signs(&self) -> Vec<i32> {
        match &self.values {
            CoeffValues::Exact(v) => v.iter().map(crate::series::sign).collect(),
            CoeffValues::Float(v) => v
                .iter()
                .map(|x| {
                    if *x > 0.0 {
                        1
                    } else if *x < 0.0 {
                        -1
                    } else {
                        0
                    }
                })
                .collect(),
        }
    }

    /// "k value" lines; exact tables print p/q.
    pub fn lines(&self) -> Vec<String> {
        match &self.values {
            CoeffValues::Exact(v) => v
                .iter()
                .enumerate()
                .map(|(k, c)| format!("{k} {}", format_rational(c)))
                .collect(),
            CoeffValues::Float(v) => v
                .iter()
                .enumerate()
                .map(|(k, c)| format!("{k} {c:e}"))
                .collect(),
        }
    }

    pub fn truncate(&self, degree: usize) -> CoeffTable {
        let d = degree.min(self.degree);
        let values = match &self.values {
            CoeffValues::Exact(v) => CoeffValues::Exact(v[..=d].to_vec()),
            CoeffValues::Float(v) => CoeffValues::Float(v[..=d].to_vec()),
        };
        CoeffTable {
            kind: self.kind,
            params: self.params.clone(),
            values,
            degree: d,
        }
    }
}

impl Serialize for CoeffTable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CoeffTable", 5)?;
        st.serialize_field("kind", &self.kind)?;
        let names = self.kind.param_names();
        let params: Vec<(String, String)> = names
            .iter()
            .zip(&self.params)
            .map(|(n, p)| (n.to_string(), format_rational(p)))
            .collect();
        st.serialize_field(
            "params",
            &params
                .into_iter()
                .collect::<std::collections::BTreeMap<_, _>>(),
        )?;
        st.serialize_field("degree", &self.degree)?;
        st.serialize_field("exact", &self.kind.is_exact())?;
        match &self.values {
            CoeffValues::Exact(v) => {
                let strs: Vec<String> = v.iter().map(format_rational).collect();
                st.serialize_field("values", &strs)?
            }
            CoeffValues::Float(v) => st.serialize_field("values", v)?,
        }
        st.end()
    }
}

fn int(k: usize) -> ExactRational {
    BigRational::from_integer(k.into())
}

/// (a)ₙ(b)ₙ/((c)ₙ n!) from Pochhammer symbols.
fn hyp_term(a: &ExactRational, b: &ExactRational, c: &ExactRational, n: usize) -> ExactRational {
    let n32 = n as u32;
    pochhammer_exact(a, n32) * pochhammer_exact(b, n32)
        / (pochhammer_exact(c, n32) * pochhammer_exact(&BigRational::one(), n32))
}

fn hyp_terms(
    a: &ExactRational,
    b: &ExactRational,
    c: &ExactRational,
    degree: usize,
) -> Vec<ExactRational> {
    (0..=degree).map(|n| hyp_term(a, b, c, n)).collect()
}

pub(crate) fn check_unit_a(op: &'static str, a: &ExactRational) -> Result<()> {
    if !(a.is_positive() && a < &BigRational::one()) {
        return domain(op, format!("a must lie in (0, 1), got {a}"));
    }
    Ok(())
}

pub(crate) fn check_general(
    op: &'static str,
    a: &ExactRational,
    b1: &ExactRational,
    b2: &ExactRational,
) -> Result<()> {
    if !(a.is_positive() && b1.is_positive() && b2.is_positive()) {
        return domain(
            op,
            format!("a, b1, b2 must be positive, got ({a}, {b1}, {b2})"),
        );
    }
    if b1 >= b2 {
        return domain(op, format!("requires b1 < b2, got b1 = {b1}, b2 = {b2}"));
    }
    Ok(())
}

fn half(k: i64) -> ExactRational {
    rational(k, 2)
}

/// aₙ⁽¹⁾: coefficients of F(a,b₁;c₁+1;r)/F(a,b₂;c₂+1;r),
/// aₙ⁽¹⁾ = (a)ₙ(b₁)ₙ/(n!(c₁+1)ₙ) − Σ_{k<n} (a)_{n−k}(b₂)_{n−k} a_k⁽¹⁾/((n−k)!(c₂+1)_{n−k}).
pub fn an1_table(
    a: &ExactRational,
    b1: &ExactRational,
    b2: &ExactRational,
    degree: usize,
) -> Result<CoeffTable> {
    check_general("an1_table", a, b1, b2)?;
    let one = BigRational::one();
    let c1p = a + b1 + &one;
    let c2p = a + b2 + &one;
    let u = hyp_terms(a, b1, &c1p, degree);
    let w = hyp_terms(a, b2, &c2p, degree);
    let mut v: Vec<ExactRational> = Vec::with_capacity(degree + 1);
    for n in 0..=degree {
        let mut acc = u[n].clone();
        for k in 0..n {
            acc -= &w[n - k] * &v[k];
        }
        v.push(acc);
    }
    Ok(CoeffTable::exact(
        CoeffKind::An1,
        vec![a.clone(), b1.clone(), b2.clone()],
        v,
    ))
}

/// aₖ⁽²⁾ = [(1/2)ₖ/k!]²/(k+1) − 3 Σ_{j<k} aⱼ⁽²⁾/((2(k−j)+1)(2(k−j)+3)).
pub fn an2_table(degree: usize) -> CoeffTable {
    let h = half(1);
    let one = BigRational::one();
    let mut v: Vec<ExactRational> = Vec::with_capacity(degree + 1);
    for k in 0..=degree {
        let q = pochhammer_exact(&h, k as u32) / pochhammer_exact(&one, k as u32);
        let mut acc = &q * &q / int(k + 1);
        for j in 0..k {
            let d = 2 * (k - j);
            acc -= rational(3, 1) * &v[j] / (int(d + 1) * int(d + 3));
        }
        v.push(acc);
    }
    CoeffTable::exact(CoeffKind::An2, vec![], v)
}

/// Cₙ: coefficients of Λ₁,
/// Cₙ = pₙ + Σ_{k<n} (a)ₘ(3/2−a)ₘ/(m!(3/2)_{m+1}) [(m+3/2)p_k − (3/2)C_k], m = n−k,
/// with pₙ = (a)ₙ(1−a)ₙ/((n+1)! n!).
pub fn cn_table(a: &ExactRational, degree: usize) -> Result<CoeffTable> {
    check_unit_a("cn_table", a)?;
    let one = BigRational::one();
    let one_m_a = &one - a;
    let b32 = half(3);
    let b32_m_a = &b32 - a;
    let p: Vec<ExactRational> = (0..=degree)
        .map(|n| {
            let n32 = n as u32;
            pochhammer_exact(a, n32) * pochhammer_exact(&one_m_a, n32)
                / (pochhammer_exact(&one, n32 + 1) * pochhammer_exact(&one, n32))
        })
        .collect();
    let g: Vec<ExactRational> = (0..=degree)
        .map(|m| {
            let m32 = m as u32;
            pochhammer_exact(a, m32) * pochhammer_exact(&b32_m_a, m32)
                / (pochhammer_exact(&one, m32) * pochhammer_exact(&b32, m32 + 1))
        })
        .collect();
    let mut v: Vec<ExactRational> = Vec::with_capacity(degree + 1);
    for n in 0..=degree {
        let mut acc = p[n].clone();
        for k in 0..n {
            let m = n - k;
            acc += &g[m] * ((int(m) + &b32) * &p[k] - &b32 * &v[k]);
        }
        v.push(acc);
    }
    Ok(CoeffTable::exact(CoeffKind::Cn, vec![a.clone()], v))
}

/// Dₙ: coefficients of Λ, Dₙ = Cₙ − Σ_{k<n} D_k (a)_{n−k}(1−a)_{n−k}/((n−k)!)².
pub fn dn_table(a: &ExactRational, degree: usize) -> Result<CoeffTable> {
    let c = cn_table(a, degree)?;
    let c = c.exact_values().expect("exact table");
    let one = BigRational::one();
    let z = hyp_terms(a, &(&one - a), &one, degree);
    let mut v: Vec<ExactRational> = Vec::with_capacity(degree + 1);
    for n in 0..=degree {
        let mut acc = c[n].clone();
        for k in 0..n {
            acc -= &v[k] * &z[n - k];
        }
        v.push(acc);
    }
    Ok(CoeffTable::exact(CoeffKind::Dn, vec![a.clone()], v))
}

/// Bₙ: coefficients of Λ₃,
/// Bₙ = uₙ + Σ_{k<n} (a)ₘ(b₂)ₘ/(m!(c₂)_{m+1}) [(m+c₂)u_k − c₂B_k], m = n−k,
/// with uₙ = (a)ₙ(b₁)ₙ/(n!(c₁+1)ₙ).
pub fn bn_table(
    a: &ExactRational,
    b1: &ExactRational,
    b2: &ExactRational,
    degree: usize,
) -> Result<CoeffTable> {
    check_general("bn_table", a, b1, b2)?;
    let one = BigRational::one();
    let c1 = a + b1;
    let c2 = a + b2;
    let u = hyp_terms(a, b1, &(&c1 + &one), degree);
    let g: Vec<ExactRational> = (0..=degree)
        .map(|m| {
            let m32 = m as u32;
            pochhammer_exact(a, m32) * pochhammer_exact(b2, m32)
                / (pochhammer_exact(&one, m32) * pochhammer_exact(&c2, m32 + 1))
        })
        .collect();
    let mut v: Vec<ExactRational> = Vec::with_capacity(degree + 1);
    for n in 0..=degree {
        let mut acc = u[n].clone();
        for k in 0..n {
            let m = n - k;
            acc += &g[m] * ((int(m) + &c2) * &u[k] - &c2 * &v[k]);
        }
        v.push(acc);
    }
    Ok(CoeffTable::exact(
        CoeffKind::Bn,
        vec![a.clone(), b1.clone(), b2.clone()],
        v,
    ))
}

/// B̄ₙ: coefficients of Λ₂, B̄ₙ = Bₙ − Σ_{k<n} (a)_{n−k}(b₁)_{n−k}/((c₁)_{n−k}(n−k)!) B̄_k.
pub fn bbarn_table(
    a: &ExactRational,
    b1: &ExactRational,
    b2: &ExactRational,
    degree: usize,
) -> Result<CoeffTable> {
    let b = bn_table(a, b1, b2, degree)?;
    let b = b.exact_values().expect("exact table");
    let z = hyp_terms(a, b1, &(a + b1), degree);
    let mut v: Vec<ExactRational> = Vec::with_capacity(degree + 1);
    for n in 0..=degree {
        let mut acc = b[n].clone();
        for k in 0..n {
            acc -= &z[n - k] * &v[k];
        }
        v.push(acc);
    }
    Ok(CoeffTable::exact(
        CoeffKind::BbarN,
        vec![a.clone(), b1.clone(), b2.clone()],
        v,
    ))
}

/// b̃ₖ: coefficients of f₄, b̃ₖ = ᾱ(a)ₖ(b₁)ₖ/((c₁)ₖ k!) − Bₖ.
pub fn btilde_table(
    a: &ExactRational,
    b1: &ExactRational,
    b2: &ExactRational,
    degree: usize,
) -> Result<CoeffTable> {
    let b = bn_table(a, b1, b2, degree)?;
    let b = b.exact_values().expect("exact table");
    let ab = alpha_bar_exact(a, b1, b2);
    let c1 = a + b1;
    let v = (0..=degree)
        .map(|k| &ab * hyp_term(a, b1, &c1, k) - &b[k])
        .collect();
    Ok(CoeffTable::exact(
        CoeffKind::Btilde,
        vec![a.clone(), b1.clone(), b2.clone()],
        v,
    ))
}

/// aₖ: coefficients of f₂, computed two ways that must agree exactly:
/// aₖ = (1/k) Σ_{i<k} (i+1) (a)_{k−i−1}(3/2−a)_{k−i−1}/((3/2)_{k−i−1}(k−i−1)!) |a_{i+1}⁽¹⁾|
/// with a⁽¹⁾ at (a, 1−a, 3/2−a), and aₖ = α(a)ₖ(1−a)ₖ/(k!)² − Cₖ.
pub fn ak_table(a: &ExactRational, degree: usize) -> Result<CoeffTable> {
    check_unit_a("ak_table", a)?;
    let one = BigRational::one();
    let b1 = &one - a;
    let b2 = half(3) - a;
    let a1 = an1_table(a, &b1, &b2, degree + 1)?;
    let a1 = a1.exact_values().expect("exact table");
    let g = hyp_terms(a, &b2, &half(3), degree);
    let alpha = alpha_exact(a);
    let mut v: Vec<ExactRational> = Vec::with_capacity(degree + 1);
    v.push(&alpha - &one);
    for k in 1..=degree {
        let mut acc = BigRational::zero();
        for i in 0..k {
            acc += int(i + 1) * &g[k - i - 1] * a1[i + 1].abs();
        }
        v.push(acc / int(k));
    }

    let c = cn_table(a, degree)?;
    let c = c.exact_values().expect("exact table");
    let z = hyp_terms(a, &b1, &one, degree);
    for k in 0..=degree {
        let other = &alpha * &z[k] - &c[k];
        if other != v[k] {
            return Err(Error::Inconsistent(format!(
                "a_{k}({a}): derivative route gives {} but αF − Λ₁ route gives {}",
                v[k], other
            )));
        }
    }
    Ok(CoeffTable::exact(CoeffKind::Ak, vec![a.clone()], v))
}

/// aₙ⁽³⁾ = (3π/8) aₙ⁽²⁾.
pub fn an3_table(degree: usize) -> CoeffTable {
    let base = an2_table(degree);
    let f = 3.0 * PI / 8.0;
    CoeffTable {
        kind: CoeffKind::An3,
        params: vec![],
        values: CoeffValues::Float(base.float_values().into_iter().map(|x| f * x).collect()),
        degree,
    }
}

/// aₖ⁽⁴⁾ = π aₖ/(2α).
pub fn an4_table(a: &ExactRational, degree: usize) -> Result<CoeffTable> {
    let base = ak_table(a, degree)?;
    let alpha = to_f64(&alpha_exact(a));
    Ok(CoeffTable {
        kind: CoeffKind::An4,
        params: vec![a.clone()],
        values: CoeffValues::Float(
            base.float_values()
                .into_iter()
                .map(|x| PI * x / (2.0 * alpha))
                .collect(),
        ),
        degree,
    })
}

/// Dispatches on `kind`; `params` follow [`CoeffKind::param_names`].
pub fn build_table(
    kind: CoeffKind,
    params: &[ExactRational],
    degree: usize,
    allow_large: bool,
) -> Result<CoeffTable> {
    if degree > DEFAULT_MAX_DEGREE && !allow_large {
        return domain(
            "build_table",
            format!("degree {degree} exceeds the default cap {DEFAULT_MAX_DEGREE}; opt in to larger tables explicitly"),
        );
    }
    let want = kind.param_names().len();
    if params.len() != want {
        return domain(
            "build_table",
            format!(
                "{kind} takes {want} parameter(s) {:?}, got {}",
                kind.param_names(),
                params.len()
            ),
        );
    }
    match kind {
        CoeffKind::An1 => an1_table(&params[0], &params[1], &params[2], degree),
        CoeffKind::An2 => Ok(an2_table(degree)),
        CoeffKind::Ak => ak_table(&params[0], degree),
        CoeffKind::Bn => bn_table(&params[0], &params[1], &params[2], degree),
        CoeffKind::Cn => cn_table(&params[0], degree),
        CoeffKind::Dn => dn_table(&params[0], degree),
        CoeffKind::BbarN => bbarn_table(&params[0], &params[1], &params[2], degree),
        CoeffKind::Btilde => btilde_table(&params[0], &params[1], &params[2], degree),
        CoeffKind::An3 => Ok(an3_table(degree)),
        CoeffKind::An4 => an4_table(&params[0], degree),
    }
}

fn f21s(
    a: &ExactRational,
    b: &ExactRational,
    c: &ExactRational,
    degree: usize,
) -> Result<SeriesPoly> {
    f21_series_coeffs(a, b, c, degree)
}

/// Exact coefficients of the same series obtained by multiplying and
/// dividing ₂F₁ Maclaurin series. Float-valued kinds are not covered.
pub fn oracle_table(
    kind: CoeffKind,
    params: &[ExactRational],
    degree: usize,
) -> Result<Vec<ExactRational>> {
    if params.len() != kind.param_names().len() {
        return domain(
            "oracle_table",
            format!("{kind} takes {} parameter(s)", kind.param_names().len()),
        );
    }
    let one = BigRational::one();
    let d = degree;
    // Λ₃ = F(a,b₁;c₁+1)F(a,b₂;c₂)/F(a,b₂;c₂+1)
    let lambda3 =
        |a: &ExactRational, b1: &ExactRational, b2: &ExactRational| -> Result<SeriesPoly> {
            let (c1, c2) = (a + b1, a + b2);
            let num = &f21s(a, b1, &(&c1 + &one), d)? * &f21s(a, b2, &c2, d)?;
            series_divide(&num, &f21s(a, b2, &(&c2 + &one), d)?)
        };
    let symmetric = |a: &ExactRational| (&one - a, half(3) - a);
    let poly = match kind {
        CoeffKind::An1 => {
            let (a, b1, b2) = (&params[0], &params[1], &params[2]);
            check_general("oracle_table", a, b1, b2)?;
            series_divide(
                &f21s(a, b1, &(a + b1 + &one), d)?,
                &f21s(a, b2, &(a + b2 + &one), d)?,
            )?
        }
        CoeffKind::An2 => series_divide(
            &f21s(&half(1), &half(1), &rational(2, 1), d)?,
            &f21s(&half(1), &one, &half(5), d)?,
        )?,
        CoeffKind::Bn => {
            check_general("oracle_table", &params[0], &params[1], &params[2])?;
            lambda3(&params[0], &params[1], &params[2])?
        }
        CoeffKind::Cn => {
            let a = &params[0];
            check_unit_a("oracle_table", a)?;
            let (b1, b2) = symmetric(a);
            let num = &f21s(a, &b1, &rational(2, 1), d)? * &f21s(a, &b2, &half(3), d)?;
            series_divide(&num, &f21s(a, &b2, &half(5), d)?)?
        }
        CoeffKind::Dn => {
            let a = &params[0];
            check_unit_a("oracle_table", a)?;
            let (b1, b2) = symmetric(a);
            let num = &f21s(a, &b1, &rational(2, 1), d)? * &f21s(a, &b2, &half(3), d)?;
            let den = &f21s(a, &b1, &one, d)? * &f21s(a, &b2, &half(5), d)?;
            series_divide(&num, &den)?
        }
        CoeffKind::BbarN => {
            let (a, b1, b2) = (&params[0], &params[1], &params[2]);
            check_general("oracle_table", a, b1, b2)?;
            series_divide(&lambda3(a, b1, b2)?, &f21s(a, b1, &(a + b1), d)?)?
        }
        CoeffKind::Btilde => {
            let (a, b1, b2) = (&params[0], &params[1], &params[2]);
            check_general("oracle_table", a, b1, b2)?;
            let f = f21s(a, b1, &(a + b1), d)?.scale(&alpha_bar_exact(a, b1, b2));
            &f - &lambda3(a, b1, b2)?
        }
        CoeffKind::Ak => {
            let a = &params[0];
            check_unit_a("oracle_table", a)?;
            let (b1, b2) = symmetric(a);
            let num = &f21s(a, &b1, &rational(2, 1), d)? * &f21s(a, &b2, &half(3), d)?;
            let l1 = series_divide(&num, &f21s(a, &b2, &half(5), d)?)?;
            let f = f21s(a, &b1, &one, d)?.scale(&alpha_exact(a));
            &f - &l1
        }
        CoeffKind::An3 | CoeffKind::An4 => {
            return domain(
                "oracle_table",
                format!("{kind} is float-valued; compare its exact base table instead"),
            )
        }
    };
    Ok(poly.into_coeffs())
}

/// Tail constants at truncation index n.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TailConstants {
    pub n: usize,
    /// δₙ = αβ − Σ_{k≤n+1} aₖ (symmetric parameters only).
    pub delta_n: Option<f64>,
    /// ηₙ = ᾱβ̄ − Σ_{k≤n+1} b̃ₖ.
    pub eta_n: Option<f64>,
    /// ãₙ = Σ_{k≤n} aₖ⁽²⁾ − 8/(3π).
    pub a_tilde_n: f64,
}

/// Exact Σ_{k≤m} of a table.
pub fn partial_sum_exact(t: &CoeffTable, m: usize) -> Result<ExactRational> {
    let v = t.exact_values().ok_or_else(|| Error::Domain {
        op: "partial_sum_exact",
        msg: format!("{} is float-valued", t.kind),
    })?;
    if m > t.degree {
        return domain(
            "partial_sum_exact",
            format!("index {m} beyond table degree {}", t.degree),
        );
    }
    Ok(v[..=m].iter().fold(BigRational::zero(), |acc, x| acc + x))
}

pub fn delta_n(a: &ExactRational, n: usize) -> Result<f64> {
    let s = SymmetricParams::new(to_f64(a))?;
    let t = ak_table(a, n + 1)?;
    Ok(s.alpha * s.beta - to_f64(&partial_sum_exact(&t, n + 1)?))
}

pub fn eta_n(a: &ExactRational, b1: &ExactRational, b2: &ExactRational, n: usize) -> Result<f64> {
    let p = TuranParams::new(to_f64(a), to_f64(b1), to_f64(b2))?;
    let t = btilde_table(a, b1, b2, n + 1)?;
    Ok(p.alpha_bar * p.beta_bar - to_f64(&partial_sum_exact(&t, n + 1)?))
}

pub fn a_tilde_n(n: usize) -> f64 {
    let t = an2_table(n);
    to_f64(&partial_sum_exact(&t, n).expect("exact table")) - 8.0 / (3.0 * PI)
}

/// All tail constants for the symmetric choice b₁ = 1−a, b₂ = 3/2−a, where ηₙ = δₙ.
pub fn tails_symmetric(a: &ExactRational, n: usize) -> Result<TailConstants> {
    let one = BigRational::one();
    Ok(TailConstants {
        n,
        delta_n: Some(delta_n(a, n)?),
        eta_n: Some(eta_n(a, &(&one - a), &(half(3) - a), n)?),
        a_tilde_n: a_tilde_n(n),
    })
}

pub fn tails_general(
    a: &ExactRational,
    b1: &ExactRational,
    b2: &ExactRational,
    n: usize,
) -> Result<TailConstants> {
    Ok(TailConstants {
        n,
        delta_n: None,
        eta_n: Some(eta_n(a, b1, b2, n)?),
        a_tilde_n: a_tilde_n(n),
    })
}

/// A₀ = a(b² − a(a+1))/(c²(c+1)²), the leading coefficient of
/// F(a,b;c;r)² ∂_b f(a,b,r)/r.
pub fn a0_closed(a: f64, b: f64) -> f64 {
    let c = a + b;
    a * (b * b - a * (a + 1.0)) / (c * c * (c + 1.0) * (c + 1.0))
}

pub fn a0_exact(a: &ExactRational, b: &ExactRational) -> ExactRational {
    let one = BigRational::one();
    let c = a + b;
    let c1 = &c + &one;
    a * (b * b - a * (a + &one)) / (&c * &c * &c1 * &c1)
}

/// Aₙ for n = 0..=degree from the φ/ρ/τ/λ double sum:
/// Aₙ = Σ_{k+m=n} (a)ₖρₖ(a)ₘφₘ/(k!m!) [(m+a)(m+b)/((m+1)(m+c+1)) τ_{m+1} − (k+a)(k+b)/((k+1)(k+c)) λ_{k+1}].
pub fn a_n_coeffs(a: f64, b: f64, degree: usize) -> Result<Vec<f64>> {
    let p = SeqParams::new(a, b)?;
    let c = p.c;
    let fact = |k: usize| pochhammer(1.0, k as u32);
    let rk: Vec<f64> = (0..=degree)
        .map(|k| pochhammer(a, k as u32) * rho_n(p, k) / fact(k))
        .collect();
    let pm: Vec<f64> = (0..=degree)
        .map(|m| pochhammer(a, m as u32) * phi_n(p, m) / fact(m))
        .collect();
    let tau: Vec<f64> = (0..=degree + 1).map(|m| tau_n(p, m)).collect();
    let lam: Vec<f64> = (0..=degree + 1).map(|k| lambda_n(p, k)).collect();
    Ok((0..=degree)
        .map(|n| {
            (0..=n)
                .map(|k| {
                    let m = n - k;
                    let (kf, mf) = (k as f64, m as f64);
                    let t = (mf + a) * (mf + b) / ((mf + 1.0) * (mf + c + 1.0)) * tau[m + 1];
                    let l = (kf + a) * (kf + b) / ((kf + 1.0) * (kf + c)) * lam[k + 1];
                    rk[k] * pm[m] * (t - l)
                })
                .sum()
        })
        .collect())
}

/// ᾱβ̄ and αβ as floats, for callers that need the r → 1⁻ values of f₄ and f₂.
pub fn f2_limit(a: f64) -> Result<f64> {
    let s = SymmetricParams::new(a)?;
    Ok(s.alpha * beta(a)?)
}

pub fn f4_limit(a: f64, b1: f64, b2: f64) -> Result<f64> {
    let p = TuranParams::new(a, b1, b2)?;
    Ok(p.alpha_bar * beta_bar(a, b1, b2)?)
}
