//! Batch verification: sign-change scans with certificates, grid runs of
//! the bound chains, the small-a counterexample search and trend reports
//! along rₖ = 1 − 10⁻ᵏ.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::functionals::{
    bound_chain, evaluate, lambda, BoundReport, ChainDomain, ChainInput, ChainKind, FnArgs,
    Functional, TuranParams,
};
use crate::hyp2f1::Point;

/// Width below which bisection stops.
pub const BISECT_WIDTH: f64 = 1e-6;

/// A sign is resolved when |value| exceeds this multiple of the evaluation eps.
pub const RESOLVE_FACTOR: f64 = 10.0;

/// A bracket [r_lo, r_hi] on which the function changes sign.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SignChangeCertificate {
    pub function_label: String,
    pub params: FnArgs,
    pub r_lo: f64,
    pub r_hi: f64,
    pub value_lo: f64,
    pub value_hi: f64,
    pub eval_eps: f64,
}

impl SignChangeCertificate {
    /// Checks the stored invariants without re-evaluating.
    pub fn is_well_formed(&self) -> bool {
        let t = RESOLVE_FACTOR * self.eval_eps;
        self.r_lo < self.r_hi
            && self.value_lo * self.value_hi < 0.0
            && self.value_lo.abs() > t
            && self.value_hi.abs() > t
    }

    /// Re-evaluates both endpoints and confirms the stored signs.
    pub fn revalidate(&self) -> Result<bool> {
        let which = Functional::parse(&self.function_label)?;
        let lo = evaluate(which, &self.params, self.r_lo, self.eval_eps)?;
        let hi = evaluate(which, &self.params, self.r_hi, self.eval_eps)?;
        Ok(self.is_well_formed()
            && lo.signum() == self.value_lo.signum()
            && hi.signum() == self.value_hi.signum())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SkippedSample {
    pub r: f64,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub certificates: Vec<SignChangeCertificate>,
    /// Samples whose evaluation failed.
    pub skipped: Vec<SkippedSample>,
    /// Samples with |value| ≤ 10·eps, counted neither way.
    pub neutral: Vec<f64>,
}

fn resolved_sign(v: f64, eps: f64) -> Option<f64> {
    (v.is_finite() && v.abs() > RESOLVE_FACTOR * eps).then(|| v.signum())
}

/// Samples `steps` equally spaced points of [r_lo, r_hi], refines every
/// sign flip between consecutive resolved samples by bisection and
/// certifies the final bracket.
pub fn scan_sign(
    which: Functional,
    params: &FnArgs,
    r_lo: f64,
    r_hi: f64,
    steps: usize,
    eps: f64,
) -> Result<ScanReport> {
    if !(r_lo < r_hi && r_lo >= 0.0 && r_hi < 1.0) {
        return domain(
            "scan_sign",
            format!("need 0 ≤ r_lo < r_hi < 1, got [{r_lo}, {r_hi}]"),
        );
    }
    if steps < 2 {
        return domain(
            "scan_sign",
            format!("steps must be at least 2, got {steps}"),
        );
    }
    let eval = |r: f64| evaluate(which, params, r, eps);
    let h = (r_hi - r_lo) / (steps - 1) as f64;
    let mut report = ScanReport {
        certificates: vec![],
        skipped: vec![],
        neutral: vec![],
    };
    let mut prev: Option<(f64, f64)> = None;
    for i in 0..steps {
        let r = if i + 1 == steps {
            r_hi
        } else {
            r_lo + h * i as f64
        };
        let v = match eval(r) {
            Ok(v) => v,
            Err(e) => {
                report.skipped.push(SkippedSample {
                    r,
                    reason: e.to_string(),
                });
                continue;
            }
        };
        let Some(s) = resolved_sign(v, eps) else {
            report.neutral.push(r);
            continue;
        };
        if let Some((r0, v0)) = prev {
            if v0.signum() != s {
                report
                    .certificates
                    .push(bisect(which, params, (r0, v0), (r, v), eps));
            }
        }
        prev = Some((r, v));
    }
    Ok(report)
}

fn bisect(
    which: Functional,
    params: &FnArgs,
    mut lo: (f64, f64),
    mut hi: (f64, f64),
    eps: f64,
) -> SignChangeCertificate {
    while hi.0 - lo.0 > BISECT_WIDTH {
        let m = 0.5 * (lo.0 + hi.0);
        let Ok(v) = evaluate(which, params, m, eps) else {
            break;
        };
        let Some(s) = resolved_sign(v, eps) else {
            break;
        };
        if s == lo.1.signum() {
            lo = (m, v);
        } else {
            hi = (m, v);
        }
    }
    SignChangeCertificate {
        function_label: which.name().to_string(),
        params: *params,
        r_lo: lo.0,
        r_hi: hi.0,
        value_lo: lo.1,
        value_hi: hi.1,
        eval_eps: eps,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AxisScale {
    Linear,
    /// Uniform in log(1 − x), clustering points toward 1.
    LogTowardOne,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    /// One of "a", "b1", "b2", "r".
    pub name: String,
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
    pub scale: AxisScale,
}

impl Axis {
    pub fn linear(name: &str, lo: f64, hi: f64, steps: usize) -> Self {
        Axis {
            name: name.to_string(),
            lo,
            hi,
            steps,
            scale: AxisScale::Linear,
        }
    }

    pub fn log_toward_one(name: &str, lo: f64, hi: f64, steps: usize) -> Self {
        Axis {
            name: name.to_string(),
            lo,
            hi,
            steps,
            scale: AxisScale::LogTowardOne,
        }
    }

    fn validate(&self) -> Result<()> {
        if !["a", "b1", "b2", "r"].contains(&self.name.as_str()) {
            return domain("GridSpec", format!("unknown axis {:?}", self.name));
        }
        if self.steps < 2 {
            return domain(
                "GridSpec",
                format!("axis {} needs at least 2 steps", self.name),
            );
        }
        if !(self.lo < self.hi && self.lo > 0.0) {
            return domain("GridSpec", format!("axis {} needs 0 < lo < hi", self.name));
        }
        if (self.name == "r" || self.scale == AxisScale::LogTowardOne) && self.hi >= 1.0 {
            return domain(
                "GridSpec",
                format!("axis {} must stay inside (0, 1)", self.name),
            );
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        let k = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| {
                let t = i as f64 / k;
                match self.scale {
                    AxisScale::Linear => {
                        // exact endpoints and decimal-friendly interior points
                        if i + 1 == self.steps {
                            self.hi
                        } else {
                            self.lo + (self.hi - self.lo) * t
                        }
                    }
                    AxisScale::LogTowardOne => {
                        let (l0, l1) = ((1.0 - self.lo).ln(), (1.0 - self.hi).ln());
                        1.0 - (l0 + (l1 - l0) * t).exp()
                    }
                }
            })
            .collect()
    }
}

/// Explicit (a, b₁, b₂) tuple for grids over sanctioned parameter sets.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParamSet {
    pub a: f64,
    pub b1: Option<f64>,
    pub b2: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub chain: ChainKind,
    pub axes: Vec<Axis>,
    /// When non-empty, each tuple is crossed with the axes.
    #[serde(default)]
    pub param_sets: Vec<ParamSet>,
    /// Indices n crossed with every point (ignored by chains without n).
    #[serde(default)]
    pub n_values: Vec<usize>,
}

impl GridSpec {
    pub fn new(chain: ChainKind, axes: Vec<Axis>) -> Self {
        GridSpec {
            chain,
            axes,
            param_sets: vec![],
            n_values: vec![],
        }
    }

    pub fn with_n(mut self, ns: impl IntoIterator<Item = usize>) -> Self {
        self.n_values = ns.into_iter().collect();
        self
    }

    pub fn with_param_sets(mut self, sets: Vec<ParamSet>) -> Self {
        self.param_sets = sets;
        self
    }

    pub fn validate(&self) -> Result<()> {
        for ax in &self.axes {
            ax.validate()?;
        }
        if !self.axes.iter().any(|a| a.name == "r") {
            return domain("GridSpec", "an r axis is required");
        }
        if self.chain.domain() == ChainDomain::General && self.param_sets.is_empty() {
            return domain(
                "GridSpec",
                format!("{} needs parameter sets with b1 and b2", self.chain),
            );
        }
        for set in &self.param_sets {
            match (set.b1, set.b2) {
                (Some(b1), Some(b2)) => {
                    TuranParams::new(set.a, b1, b2)?;
                }
                (None, None) if self.chain.domain() != ChainDomain::General => {}
                _ => return domain("GridSpec", format!("{} needs both b1 and b2", self.chain)),
            }
        }
        Ok(())
    }

    /// Grid points in a fixed order: parameter sets, then axes (first axis
    /// outermost), then n.
    pub fn points(&self) -> Result<Vec<ChainInput>> {
        self.validate()?;
        let sets: Vec<Option<ParamSet>> = if self.param_sets.is_empty() {
            vec![None]
        } else {
            self.param_sets.iter().copied().map(Some).collect()
        };
        let ns: Vec<Option<usize>> = if self.n_values.is_empty() || !self.chain.needs_n() {
            vec![None]
        } else {
            self.n_values.iter().copied().map(Some).collect()
        };
        let mut out = Vec::new();
        for set in &sets {
            let mut base = ChainInput::default();
            if let Some(s) = set {
                base.a = Some(s.a);
                base.b1 = s.b1;
                base.b2 = s.b2;
            }
            let mut partial = vec![base];
            for ax in &self.axes {
                let vals = ax.values();
                partial = partial
                    .into_iter()
                    .flat_map(|p| {
                        vals.iter().map(move |&v| {
                            let mut q = p;
                            match ax.name.as_str() {
                                "a" => q.a = Some(v),
                                "b1" => q.b1 = Some(v),
                                "b2" => q.b2 = Some(v),
                                _ => q.r = v,
                            }
                            q
                        })
                    })
                    .collect();
            }
            for p in partial {
                for &n in &ns {
                    out.push(ChainInput { n, ..p });
                }
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointResult {
    pub point: ChainInput,
    pub report: Option<BoundReport>,
    pub error: Option<String>,
}

impl PointResult {
    pub fn passed(&self) -> bool {
        self.report.as_ref().is_some_and(|r| r.passed())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub chain: ChainKind,
    pub total: usize,
    pub passed: usize,
    pub failures: Vec<PointResult>,
    /// Smallest slack over all evaluated points.
    pub min_slack: Option<f64>,
    pub runtime_ms: u64,
    /// Every point in grid order, for tabular export.
    pub results: Vec<PointResult>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs the chain at every grid point in parallel; the report lists points
/// in grid order regardless of scheduling.
pub fn verify_grid(spec: &GridSpec, eps: f64) -> Result<VerificationReport> {
    let start = Instant::now();
    let points = spec.points()?;
    let results: Vec<PointResult> = points
        .par_iter()
        .map(|p| match bound_chain(spec.chain, p, eps) {
            Ok(rep) => PointResult {
                point: *p,
                report: Some(rep),
                error: None,
            },
            Err(e) => PointResult {
                point: *p,
                report: None,
                error: Some(e.to_string()),
            },
        })
        .collect();
    let failures: Vec<PointResult> = results.iter().filter(|r| !r.passed()).cloned().collect();
    let min_slack = results
        .iter()
        .filter_map(|r| r.report.as_ref().map(|b| b.min_slack()))
        .fold(None, |m: Option<f64>, s| Some(m.map_or(s, |m| m.min(s))));
    Ok(VerificationReport {
        chain: spec.chain,
        total: results.len(),
        passed: results.len() - failures.len(),
        failures,
        min_slack,
        runtime_ms: start.elapsed().as_millis() as u64,
        results,
    })
}

/// Writes one row per point: a, b1, b2, r, n, link1..linkK, slackmin, verdict.
pub fn write_csv<W: std::io::Write>(report: &VerificationReport, out: W) -> Result<()> {
    let io = |e: csv::Error| Error::Parse(format!("csv output failed: {e}"));
    let width = report
        .results
        .iter()
        .filter_map(|r| r.report.as_ref().map(|b| b.links.len()))
        .max()
        .unwrap_or(0);
    let mut w = csv::Writer::from_writer(out);
    let mut header: Vec<String> = ["a", "b1", "b2", "r", "n"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    header.extend((1..=width).map(|i| format!("link{i}")));
    header.push("slackmin".into());
    header.push("verdict".into());
    w.write_record(&header).map_err(io)?;
    let opt = |v: Option<f64>| v.map_or_else(String::new, |x| format!("{x:e}"));
    for res in &report.results {
        let p = &res.point;
        let mut row = vec![
            opt(p.a),
            opt(p.b1),
            opt(p.b2),
            format!("{:e}", p.r),
            p.n.map_or_else(String::new, |n| n.to_string()),
        ];
        match &res.report {
            Some(b) => {
                row.extend(b.links.iter().map(|l| format!("{:e}", l.value)));
                row.extend((b.links.len()..width).map(|_| String::new()));
                row.push(format!("{:e}", b.min_slack()));
                row.push(if b.passed() {
                    "pass".into()
                } else {
                    "fail".into()
                });
            }
            None => {
                row.extend((0..width).map(|_| String::new()));
                row.push(String::new());
                row.push("error".into());
            }
        }
        w.write_record(&row).map_err(io)?;
    }
    w.flush()
        .map_err(|e| Error::Parse(format!("csv output failed: {e}")))?;
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub r: f64,
    /// Λ(a, r) − 1.
    pub excess: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FindingStatus {
    /// Λ < 1 somewhere in (0, 0.2] and Λ > 1 somewhere in [0.9, 1).
    BothWitnesses,
    /// No sample of (0, 0.2] has Λ < 1 beyond the resolution threshold.
    NoSmallRCounterexample,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CounterexampleFinding {
    pub a: f64,
    pub status: FindingStatus,
    pub small_r: Option<Witness>,
    pub large_r: Option<Witness>,
    pub eval_eps: f64,
    pub note: String,
}

fn small_r_samples() -> Vec<f64> {
    let mut v: Vec<f64> = (1..=40).map(|i| 0.2 * i as f64 / 40.0).collect();
    v.extend((1..=6).map(|k| 10f64.powi(-k - 2)));
    v.sort_by(f64::total_cmp);
    v
}

fn large_r_samples() -> Vec<Point> {
    let mut v: Vec<Point> = (0..10).map(|i| Point::new(0.9 + 0.01 * i as f64)).collect();
    v.extend((3..=12).map(|k| Point::from_complement(10f64.powi(-k))));
    v
}

/// Searches (0, 0.2] for Λ(a, r) < 1 and [0.9, 1) for Λ(a, r) > 1.
pub fn counterexample_certificate(a: f64, eps: f64) -> Result<CounterexampleFinding> {
    if !(a > 0.0 && a < 1.0) {
        return domain(
            "counterexample_certificate",
            format!("a must lie in (0, 1), got {a}"),
        );
    }
    let thr = RESOLVE_FACTOR * eps;
    let mut failures = 0usize;
    let mut small: Option<Witness> = None;
    for r in small_r_samples() {
        match lambda(a, r, eps) {
            Ok(v) if v - 1.0 < -thr => {
                small = Some(Witness { r, excess: v - 1.0 });
                break;
            }
            Ok(_) => {}
            Err(_) => failures += 1,
        }
    }
    let mut large: Option<Witness> = None;
    for p in large_r_samples() {
        match lambda(a, p, eps) {
            Ok(v) if v - 1.0 > thr => {
                large = Some(Witness {
                    r: p.x(),
                    excess: v - 1.0,
                });
                break;
            }
            Ok(_) => {}
            Err(_) => failures += 1,
        }
    }
    let (status, note) = match (small, large) {
        (Some(_), Some(_)) => (
            FindingStatus::BothWitnesses,
            "Λ < 1 near 0 and Λ > 1 near 1".to_string(),
        ),
        (None, _) if failures == 0 => (
            FindingStatus::NoSmallRCounterexample,
            "no sample of (0, 0.2] has Λ < 1 beyond the resolution threshold".to_string(),
        ),
        _ => (
            FindingStatus::Inconclusive,
            format!("witness missing; {failures} sample evaluation(s) failed"),
        ),
    };
    Ok(CounterexampleFinding {
        a,
        status,
        small_r: small,
        large_r: large,
        eval_eps: eps,
        note,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    Finite(f64),
    Infinity,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrendReport {
    pub function_label: String,
    pub params: FnArgs,
    pub target: Target,
    pub ks: Vec<u32>,
    /// f(1 − 10⁻ᵏ); `None` where evaluation failed.
    pub values: Vec<Option<f64>>,
    /// |f(rₖ) − target| for finite targets.
    pub distances: Vec<Option<f64>>,
    /// Finite target: distances strictly decreasing. Infinity: values strictly increasing.
    pub monotone: bool,
    /// Infinity only: first k at which the value exceeds `threshold`.
    pub exceeds_threshold_at: Option<u32>,
    pub threshold: Option<f64>,
    /// ks whose evaluation failed or was not finite.
    pub degraded: Vec<u32>,
}

/// Evaluates at rₖ = 1 − 10⁻ᵏ (carried as a complement) and reports the
/// approach to `target`. `threshold` is used only for an infinite target.
pub fn trend_to_limit(
    which: Functional,
    params: &FnArgs,
    target: Target,
    ks: &[u32],
    threshold: Option<f64>,
    eps: f64,
) -> Result<TrendReport> {
    if ks.is_empty() || ks.windows(2).any(|w| w[0] >= w[1]) {
        return domain(
            "trend_to_limit",
            "ks must be non-empty and strictly ascending",
        );
    }
    if ks.iter().any(|&k| k == 0 || k > 307) {
        return domain("trend_to_limit", "each k must lie in 1..=307");
    }
    let values: Vec<Option<f64>> = ks
        .iter()
        .map(|&k| {
            evaluate(
                which,
                params,
                Point::from_complement(10f64.powi(-(k as i32))),
                eps,
            )
            .ok()
            .filter(|v| v.is_finite())
        })
        .collect();
    let degraded: Vec<u32> = ks
        .iter()
        .zip(&values)
        .filter(|(_, v)| v.is_none())
        .map(|(k, _)| *k)
        .collect();
    let (distances, monotone, exceeds) = match target {
        Target::Finite(t) => {
            let d: Vec<Option<f64>> = values.iter().map(|v| v.map(|v| (v - t).abs())).collect();
            let mono = degraded.is_empty() && d.windows(2).all(|w| w[1].unwrap() < w[0].unwrap());
            (d, mono, None)
        }
        Target::Infinity => {
            let mono =
                degraded.is_empty() && values.windows(2).all(|w| w[1].unwrap() > w[0].unwrap());
            let thr = threshold.unwrap_or(10.0);
            let at = ks
                .iter()
                .zip(&values)
                .find(|(_, v)| v.is_some_and(|v| v > thr))
                .map(|(k, _)| *k);
            (vec![None; values.len()], mono, at)
        }
    };
    Ok(TrendReport {
        function_label: which.name().to_string(),
        params: *params,
        target,
        ks: ks.to_vec(),
        values,
        distances,
        monotone,
        exceeds_threshold_at: exceeds,
        threshold: matches!(target, Target::Infinity).then(|| threshold.unwrap_or(10.0)),
        degraded,
    })
}

/// Named grids used by the CLI and the acceptance suite.
pub fn default_grid(chain: ChainKind) -> GridSpec {
    let ar = || {
        vec![
            Axis::linear("a", 0.1, 0.9, 9),
            Axis::linear("r", 0.1, 0.9, 9),
        ]
    };
    match chain.domain() {
        ChainDomain::Symmetric => GridSpec::new(chain, ar()).with_n(0..=3),
        ChainDomain::RadiusOnly => GridSpec::new(chain, vec![Axis::linear("r", 0.05, 0.95, 19)]),
        ChainDomain::General => GridSpec::new(chain, vec![Axis::linear("r", 0.1, 0.9, 9)])
            .with_param_sets(sanctioned_param_sets())
            .with_n(0..=3),
    }
}

/// (a, b₁, b₂) with a ≤ 1 and b₁ < b₂, on both sides of b₁b₂ = a(a+1).
pub fn sanctioned_param_sets() -> Vec<ParamSet> {
    let mut v = Vec::new();
    for &a in &[0.25, 0.5, 0.75, 1.0] {
        for &(b1, b2) in &[(0.5, 1.0), (0.2, 0.3), (1.0, 2.0), (0.3, 2.5), (1.5, 1.75)] {
            v.push(ParamSet {
                a,
                b1: Some(b1),
                b2: Some(b2),
            });
        }
        if a < 1.0 {
            v.push(ParamSet {
                a,
                b1: Some(1.0 - a),
                b2: Some(1.5 - a),
            });
        }
    }
    v
}
