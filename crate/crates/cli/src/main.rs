use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use hypturan::coeffs::{build_table, CoeffKind};
use hypturan::functionals::{
    alpha, beta, bound_chain, evaluate, ChainDomain, ChainInput, ChainKind, FnArgs, Functional,
    TuranParams, Verdict,
};
use hypturan::harness::{
    counterexample_certificate, default_grid, scan_sign, trend_to_limit, verify_grid, write_csv,
    Axis, AxisScale, GridSpec, ParamSet, Target,
};
use hypturan::hyp2f1::DEFAULT_EPS;
use hypturan::series::parse_rational;
use hypturan::Error;

#[derive(Parser)]
#[command(
    name = "hypturan",
    version,
    about = "Hypergeometric ratio functionals, coefficient tables and bound checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a functional at one point.
    Eval(EvalArgs),
    /// Print a coefficient table.
    Coeffs(CoeffsArgs),
    /// Check a bound chain at one point or over a grid.
    Verify(VerifyArgs),
    /// Locate sign changes of a functional in r.
    Scan(ScanArgs),
    /// Report the approach to a limit along r = 1 − 10⁻ᵏ.
    Limits(LimitsArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Pretty,
    Json,
    Csv,
}

#[derive(Args)]
struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value = "pretty")]
    output: Output,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Series tolerance for ₂F₁ evaluations.
    #[arg(long, default_value_t = DEFAULT_EPS)]
    eps: f64,
}

#[derive(Args)]
struct Params {
    #[arg(long)]
    a: Option<f64>,
    /// Second parameter of f(a, b, r).
    #[arg(long)]
    b: Option<f64>,
    #[arg(long)]
    b1: Option<f64>,
    #[arg(long)]
    b2: Option<f64>,
}

impl Params {
    fn fn_args(&self, n: Option<usize>) -> FnArgs {
        FnArgs {
            a: self.a,
            b: self.b,
            b1: self.b1,
            b2: self.b2,
            n,
        }
    }
}

#[derive(Args)]
struct EvalArgs {
    /// Functional name, e.g. lambda, lambda2, f1, h13.
    #[arg(long = "fn")]
    func: String,
    #[command(flatten)]
    params: Params,
    #[arg(long)]
    r: f64,
    /// Truncation index (h12).
    #[arg(long)]
    n: Option<usize>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct CoeffsArgs {
    /// Table name: an1, an2, ak, bn, cn, dn, bbarn, btilde, an3, an4.
    #[arg(long)]
    seq: String,
    /// Number of coefficients (indices 0..n−1).
    #[arg(long, default_value_t = 6)]
    n: usize,
    /// Parameters as decimals or p/q.
    #[arg(long)]
    a: Option<String>,
    #[arg(long)]
    b1: Option<String>,
    #[arg(long)]
    b2: Option<String>,
    /// Print exact rationals instead of floats.
    #[arg(long)]
    exact: bool,
    /// Allow tables longer than the default cap.
    #[arg(long)]
    allow_large: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct VerifyArgs {
    /// Chain name, e.g. ineqA1pp, ineqLam23, ineq2g2.
    #[arg(long)]
    suite: String,
    /// "default", or axes like "a=0.1:0.9:9;r=0.9:0.999:4:log".
    #[arg(long)]
    grid: Option<String>,
    #[command(flatten)]
    params: Params,
    /// Single-point radius (when no grid is given).
    #[arg(long)]
    r: Option<f64>,
    /// Truncation index; comma-separated list for grids.
    #[arg(long)]
    n: Option<String>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long = "fn", default_value = "lambda_minus_one")]
    func: String,
    #[command(flatten)]
    params: Params,
    #[arg(long, default_value_t = 0.01)]
    r_lo: f64,
    #[arg(long, default_value_t = 0.99)]
    r_hi: f64,
    #[arg(long, default_value_t = 50)]
    steps: usize,
    /// Run the Λ < 1 / Λ > 1 witness search for --a instead.
    #[arg(long)]
    counterexample: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct LimitsArgs {
    #[arg(long = "fn")]
    func: String,
    #[command(flatten)]
    params: Params,
    /// A number, "inf", or omitted for the functional's known limit.
    #[arg(long)]
    target: Option<String>,
    /// Exponents k (comma-separated).
    #[arg(long, default_value = "2,3,4,5,6")]
    ks: String,
    /// Divergence threshold for an infinite target.
    #[arg(long, default_value_t = 10.0)]
    threshold: f64,
    #[command(flatten)]
    common: Common,
}

enum CliError {
    Usage(String),
    Lib(Error),
    Io(io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

type CliResult<T> = Result<T, CliError>;

fn sink(common: &Common) -> CliResult<Box<dyn Write>> {
    Ok(match &common.out {
        Some(p) => Box::new(File::create(p)?),
        None => Box::new(io::stdout().lock()),
    })
}

fn emit_json<T: Serialize>(w: &mut dyn Write, v: &T) -> CliResult<()> {
    serde_json::to_writer_pretty(&mut *w, v).map_err(|e| CliError::Usage(e.to_string()))?;
    writeln!(w)?;
    Ok(())
}

fn check_eps(eps: f64) -> CliResult<()> {
    if !(1e-15..=1e-6).contains(&eps) {
        return Err(CliError::Usage(format!(
            "--eps must lie in [1e-15, 1e-6], got {eps:e}"
        )));
    }
    Ok(())
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> CliResult<Vec<T>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<T>()
                .map_err(|_| CliError::Usage(format!("bad {what} list entry {t:?}")))
        })
        .collect()
}

#[derive(Serialize)]
struct EvalOut<'a> {
    function: &'a str,
    params: FnArgs,
    r: f64,
    eps: f64,
    value: f64,
}

fn run_eval(args: &EvalArgs) -> CliResult<u8> {
    check_eps(args.common.eps)?;
    let which = Functional::parse(&args.func)?;
    let p = args.params.fn_args(args.n);
    let value = evaluate(which, &p, args.r, args.common.eps)?;
    let mut w = sink(&args.common)?;
    match args.common.output {
        Output::Json => emit_json(
            &mut *w,
            &EvalOut {
                function: which.name(),
                params: p,
                r: args.r,
                eps: args.common.eps,
                value,
            },
        )?,
        Output::Csv => writeln!(
            w,
            "function,r,value\n{},{:e},{:e}",
            which.name(),
            args.r,
            value
        )?,
        Output::Pretty => writeln!(w, "{}(r = {}) = {:.16e}", which.name(), args.r, value)?,
    }
    Ok(0)
}

fn run_coeffs(args: &CoeffsArgs) -> CliResult<u8> {
    let kind = CoeffKind::parse(&args.seq)?;
    if args.n == 0 {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }
    if args.exact && !kind.is_exact() {
        return Err(CliError::Usage(format!(
            "{kind} carries a factor of π and has no exact form"
        )));
    }
    let given = [("a", &args.a), ("b1", &args.b1), ("b2", &args.b2)];
    let mut params = Vec::new();
    for name in kind.param_names() {
        let raw = given
            .iter()
            .find(|(n, _)| n == name)
            .and_then(|(_, v)| v.as_ref());
        let raw = raw.ok_or_else(|| CliError::Usage(format!("{kind} needs --{name}")))?;
        params.push(parse_rational(raw)?);
    }
    let table = build_table(kind, &params, args.n - 1, args.allow_large)?;
    let mut w = sink(&args.common)?;
    match args.common.output {
        Output::Json => emit_json(&mut *w, &table)?,
        Output::Csv => {
            writeln!(w, "k,value")?;
            for line in lines(&table, args.exact) {
                writeln!(w, "{}", line.replacen(' ', ",", 1))?;
            }
        }
        Output::Pretty => {
            for line in lines(&table, args.exact) {
                writeln!(w, "{line}")?;
            }
        }
    }
    Ok(0)
}

fn lines(table: &hypturan::coeffs::CoeffTable, exact: bool) -> Vec<String> {
    if exact {
        table.lines()
    } else {
        table
            .float_values()
            .iter()
            .enumerate()
            .map(|(k, v)| format!("{k} {v:.16e}"))
            .collect()
    }
}

/// Parses "name=lo:hi:steps[:log]" axes separated by ';'.
fn parse_axes(s: &str) -> CliResult<Vec<Axis>> {
    let bad = |t: &str| {
        CliError::Usage(format!(
            "bad grid axis {t:?}; expected name=lo:hi:steps[:log]"
        ))
    };
    s.split(';')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let (name, rest) = t.split_once('=').ok_or_else(|| bad(t))?;
            let parts: Vec<&str> = rest.split(':').collect();
            if parts.len() < 3 || parts.len() > 4 {
                return Err(bad(t));
            }
            let lo: f64 = parts[0].parse().map_err(|_| bad(t))?;
            let hi: f64 = parts[1].parse().map_err(|_| bad(t))?;
            let steps: usize = parts[2].parse().map_err(|_| bad(t))?;
            let scale = match parts.get(3) {
                None => AxisScale::Linear,
                Some(&"log") => AxisScale::LogTowardOne,
                Some(_) => return Err(bad(t)),
            };
            Ok(Axis {
                name: name.trim().to_string(),
                lo,
                hi,
                steps,
                scale,
            })
        })
        .collect()
}

fn run_verify(args: &VerifyArgs) -> CliResult<u8> {
    check_eps(args.common.eps)?;
    let chain = ChainKind::parse(&args.suite)?;
    let ns: Option<Vec<usize>> = args.n.as_deref().map(|s| parse_list(s, "n")).transpose()?;
    let mut w = sink(&args.common)?;
    let Some(grid) = &args.grid else {
        let r = args
            .r
            .ok_or_else(|| CliError::Usage("give --grid or --r".into()))?;
        let n = match ns.as_deref() {
            None => None,
            Some([n]) => Some(*n),
            Some(_) => return Err(CliError::Usage("a single-point check takes one --n".into())),
        };
        let input = ChainInput {
            a: args.params.a,
            b1: args.params.b1,
            b2: args.params.b2,
            r,
            n,
        };
        let rep = bound_chain(chain, &input, args.common.eps)?;
        match args.common.output {
            Output::Json => emit_json(&mut *w, &rep)?,
            Output::Csv => {
                writeln!(w, "label,value")?;
                for l in &rep.links {
                    writeln!(w, "\"{}\",{:e}", l.label.replace('"', "'"), l.value)?;
                }
            }
            Output::Pretty => {
                writeln!(w, "{} at r = {r}: {:?}", rep.chain_name, rep.verdict)?;
                for (i, l) in rep.links.iter().enumerate() {
                    let slack = rep
                        .slacks
                        .get(i)
                        .map_or(String::new(), |s| format!("   slack {s:+.3e}"));
                    writeln!(w, "  {:>22.15e}  {}{}", l.value, l.label, slack)?;
                }
            }
        }
        return Ok(if rep.verdict == Verdict::Pass { 0 } else { 1 });
    };

    let mut spec = if grid == "default" {
        default_grid(chain)
    } else {
        GridSpec::new(chain, parse_axes(grid)?)
    };
    if let Some(ns) = ns {
        spec.n_values = ns;
    } else if spec.n_values.is_empty() && chain.needs_n() {
        spec.n_values = vec![0, 1, 2, 3];
    }
    if args.params.a.is_none() && (args.params.b1.is_some() || args.params.b2.is_some()) {
        return Err(CliError::Usage(
            "--b1/--b2 on a grid need --a as well".into(),
        ));
    }
    let fixed_general = chain.domain() == ChainDomain::General && grid != "default";
    if fixed_general || (args.params.a.is_some() && !spec.axes.iter().any(|x| x.name == "a")) {
        if let Some(a) = args.params.a {
            spec.param_sets = vec![ParamSet {
                a,
                b1: args.params.b1,
                b2: args.params.b2,
            }];
        }
    }
    let report = verify_grid(&spec, args.common.eps)?;
    match args.common.output {
        Output::Json => emit_json(&mut *w, &report)?,
        Output::Csv => write_csv(&report, &mut *w)?,
        Output::Pretty => {
            writeln!(
                w,
                "{}: {}/{} points pass, min slack {:+.3e}, {} ms",
                chain,
                report.passed,
                report.total,
                report.min_slack.unwrap_or(f64::NAN),
                report.runtime_ms
            )?;
            for f in report.failures.iter().take(20) {
                let p = &f.point;
                write!(
                    w,
                    "  FAIL a={:?} b1={:?} b2={:?} r={} n={:?}",
                    p.a, p.b1, p.b2, p.r, p.n
                )?;
                match (&f.report, &f.error) {
                    (Some(rep), _) => {
                        let i = rep.first_failure().unwrap_or(0);
                        writeln!(
                            w,
                            ": \"{}\" > \"{}\" by {:.3e}",
                            rep.links[i].label,
                            rep.links[i + 1].label,
                            -rep.slacks[i]
                        )?;
                    }
                    (None, Some(e)) => writeln!(w, ": {e}")?,
                    (None, None) => writeln!(w)?,
                }
            }
            if report.failures.len() > 20 {
                writeln!(w, "  … {} more", report.failures.len() - 20)?;
            }
        }
    }
    Ok(if report.all_passed() { 0 } else { 1 })
}

fn run_scan(args: &ScanArgs) -> CliResult<u8> {
    check_eps(args.common.eps)?;
    let mut w = sink(&args.common)?;
    if args.counterexample {
        let a = args
            .params
            .a
            .ok_or_else(|| CliError::Usage("--counterexample needs --a".into()))?;
        let f = counterexample_certificate(a, args.common.eps)?;
        match args.common.output {
            Output::Pretty => {
                writeln!(w, "a = {a}: {:?} ({})", f.status, f.note)?;
                if let Some(s) = f.small_r {
                    writeln!(w, "  small r = {}: Λ − 1 = {:+.6e}", s.r, s.excess)?;
                }
                if let Some(l) = f.large_r {
                    writeln!(w, "  large r = {}: Λ − 1 = {:+.6e}", l.r, l.excess)?;
                }
            }
            _ => emit_json(&mut *w, &f)?,
        }
        return Ok(0);
    }
    let which = Functional::parse(&args.func)?;
    let p = args.params.fn_args(None);
    let rep = scan_sign(which, &p, args.r_lo, args.r_hi, args.steps, args.common.eps)?;
    match args.common.output {
        Output::Json => emit_json(&mut *w, &rep)?,
        Output::Csv => {
            writeln!(w, "function,r_lo,r_hi,value_lo,value_hi,eval_eps")?;
            for c in &rep.certificates {
                writeln!(
                    w,
                    "{},{:e},{:e},{:e},{:e},{:e}",
                    c.function_label, c.r_lo, c.r_hi, c.value_lo, c.value_hi, c.eval_eps
                )?;
            }
        }
        Output::Pretty => {
            writeln!(
                w,
                "{} sign change(s) of {} on [{}, {}]",
                rep.certificates.len(),
                which,
                args.r_lo,
                args.r_hi
            )?;
            for c in &rep.certificates {
                writeln!(
                    w,
                    "  r ∈ [{:.9}, {:.9}]: {:+.3e} → {:+.3e}",
                    c.r_lo, c.r_hi, c.value_lo, c.value_hi
                )?;
            }
            if !rep.skipped.is_empty() {
                writeln!(
                    w,
                    "  {} sample(s) skipped after evaluation errors",
                    rep.skipped.len()
                )?;
            }
        }
    }
    Ok(0)
}

fn default_target(which: Functional, p: &FnArgs) -> CliResult<Target> {
    let need_a = || {
        p.a.ok_or_else(|| CliError::Usage(format!("{which} needs --a")))
    };
    let general = || -> CliResult<TuranParams> {
        match (p.a, p.b1, p.b2) {
            (Some(a), Some(b1), Some(b2)) => Ok(TuranParams::new(a, b1, b2)?),
            _ => Err(CliError::Usage(format!("{which} needs --a, --b1 and --b2"))),
        }
    };
    Ok(match which {
        Functional::F2 => {
            let a = need_a()?;
            Target::Finite(alpha(a) * beta(a)?)
        }
        Functional::Lambda => Target::Finite(alpha(need_a()?)),
        Functional::Lambda2 => Target::Finite(general()?.alpha_bar),
        Functional::F4 => {
            let g = general()?;
            Target::Finite(g.alpha_bar * g.beta_bar)
        }
        Functional::F6 => Target::Finite(std::f64::consts::FRAC_PI_2 * beta(need_a()?)?),
        Functional::F7 => Target::Finite(std::f64::consts::LN_2),
        Functional::H11 => Target::Finite(8.0 / (3.0 * std::f64::consts::PI)),
        Functional::H13 => Target::Finite(1.0),
        Functional::F1 | Functional::F3 => Target::Infinity,
        _ => {
            return Err(CliError::Usage(format!(
                "no known limit for {which}; pass --target"
            )))
        }
    })
}

fn run_limits(args: &LimitsArgs) -> CliResult<u8> {
    check_eps(args.common.eps)?;
    let which = Functional::parse(&args.func)?;
    let p = args.params.fn_args(None);
    let target = match args.target.as_deref() {
        None => default_target(which, &p)?,
        Some("inf") | Some("infinity") => Target::Infinity,
        Some(t) => Target::Finite(
            t.parse()
                .map_err(|_| CliError::Usage(format!("bad --target {t:?}")))?,
        ),
    };
    let ks: Vec<u32> = parse_list(&args.ks, "k")?;
    let rep = trend_to_limit(
        which,
        &p,
        target,
        &ks,
        Some(args.threshold),
        args.common.eps,
    )?;
    let mut w = sink(&args.common)?;
    match args.common.output {
        Output::Json => emit_json(&mut *w, &rep)?,
        Output::Csv => {
            writeln!(w, "k,value,distance")?;
            for ((k, v), d) in rep.ks.iter().zip(&rep.values).zip(&rep.distances) {
                let f = |x: &Option<f64>| x.map_or_else(String::new, |x| format!("{x:e}"));
                writeln!(w, "{k},{},{}", f(v), f(d))?;
            }
        }
        Output::Pretty => {
            writeln!(
                w,
                "{} toward {:?}: monotone = {}",
                which, rep.target, rep.monotone
            )?;
            for ((k, v), d) in rep.ks.iter().zip(&rep.values).zip(&rep.distances) {
                match (v, d) {
                    (Some(v), Some(d)) => writeln!(w, "  k = {k:>3}: {v:.12e}  |Δ| = {d:.3e}")?,
                    (Some(v), None) => writeln!(w, "  k = {k:>3}: {v:.12e}")?,
                    _ => writeln!(w, "  k = {k:>3}: evaluation failed")?,
                }
            }
            if let Some(k) = rep.exceeds_threshold_at {
                writeln!(w, "  exceeds {} at k = {k}", args.threshold)?;
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match &cli.command {
        Command::Eval(a) => run_eval(a),
        Command::Coeffs(a) => run_coeffs(a),
        Command::Verify(a) => run_verify(a),
        Command::Scan(a) => run_scan(a),
        Command::Limits(a) => run_limits(a),
    };
    match res {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            match e {
                CliError::Usage(m) => eprintln!("error: {m}"),
                CliError::Lib(e) => eprintln!("error: {e}"),
                CliError::Io(e) => eprintln!("error: {e}"),
            }
            ExitCode::from(2)
        }
    }
}
