//! The five subcommands. Each returns a [`Report`] and whether every check in
//! it passed; only `table1` can fail that way.

use std::str::FromStr;

use clap::{ArgGroup, Args, ValueEnum};
use kiv_zeros::coeffs::{CoeffTables, DEFAULT_KMAX, MAX_SADDLE_K};
use kiv_zeros::lambert::{inv_w_asymptotic, w_asymptotic, w_principal};
use kiv_zeros::macdonald::{
    eval_scaled, eval_scaled_asymptotic, EvalConfig, ASYMPTOTIC_MARGIN,
};
use kiv_zeros::reference::{self, TABLE, TABLE_X};
use kiv_zeros::series::{rat, ParamPoly};
use kiv_zeros::zeros::{
    brent, build_table, estimate_zero, m_of, scan_sign_changes, xi_base, zero_equation_defect,
    DEFAULT_TOL, MAX_ORDER, SIGN_DIGITS,
};

use crate::output::{Cell, Report};
use crate::{Failure, OutputArgs};

pub struct Outcome {
    pub report: Report,
    pub all_passed: bool,
}

impl From<Report> for Outcome {
    fn from(report: Report) -> Self {
        Outcome { report, all_passed: true }
    }
}

type CmdResult = Result<Outcome, Failure>;

/// `a:b:step`, inclusive of `b` up to rounding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NuRange {
    pub start: f64,
    pub end: f64,
    pub step: f64,
}

impl NuRange {
    pub fn points(&self) -> Vec<f64> {
        let count = ((self.end - self.start) / self.step + 1e-9).floor() as usize + 1;
        (0..count).map(|i| self.start + i as f64 * self.step).collect()
    }
}

impl FromStr for NuRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [a, b, step] = parts[..] else {
            return Err(format!("expected a:b:step, got `{s}`"));
        };
        let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("`{t}`: {e}"));
        let r = NuRange { start: num(a)?, end: num(b)?, step: num(step)? };
        if !(r.step > 0.0 && r.end >= r.start && r.start.is_finite() && r.end.is_finite()) {
            return Err(format!("need a <= b and step > 0, got `{s}`"));
        }
        Ok(r)
    }
}

/// `a:b` of zero indices, inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NRange {
    pub start: u32,
    pub end: u32,
}

impl FromStr for NRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (a, b) = s.split_once(':').ok_or_else(|| format!("expected a:b, got `{s}`"))?;
        let num = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("`{t}`: {e}"));
        let r = NRange { start: num(a)?, end: num(b)? };
        if r.start < 1 {
            return Err("n must be at least 1".into());
        }
        if r.end < r.start {
            return Err(format!("need a <= b, got `{s}`"));
        }
        Ok(r)
    }
}

fn check_x(x: f64) -> Result<(), Failure> {
    if !(x.is_finite() && x > 0.0) {
        return Err(Failure::Usage(format!("x must be positive, got {x}")));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Quad,
    Asym,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("point").required(true).args(["nu", "nu_range"])))]
pub struct EvalArgs {
    #[arg(long, default_value_t = 1.0)]
    pub x: f64,
    #[arg(long)]
    pub nu: Option<f64>,
    /// Sweep `a:b:step`, both ends included.
    #[arg(long, value_name = "A:B:STEP")]
    pub nu_range: Option<NuRange>,
    /// Correct significant digits asked of the quadrature.
    #[arg(long, env = "KIV_ZEROS_DIGITS", default_value_t = 12)]
    pub digits: u32,
    #[arg(long, value_enum, default_value = "quad")]
    pub method: MethodArg,
    /// Last saddle coefficient used by the large-nu expansion.
    #[arg(long, default_value_t = DEFAULT_KMAX)]
    pub kmax: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

pub fn eval(a: &EvalArgs) -> CmdResult {
    check_x(a.x)?;
    if a.digits == 0 || a.digits > 60 {
        return Err(Failure::Usage(format!("digits must be in 1..=60, got {}", a.digits)));
    }
    let points = match (a.nu, a.nu_range) {
        (Some(nu), _) => vec![nu],
        (None, Some(r)) => r.points(),
        (None, None) => unreachable!("clap requires one of --nu, --nu-range"),
    };
    let mut report = Report::new("eval", vec!["nu", "value", "est_error", "method"]);
    report.param("x", a.x);
    report.param("digits", a.digits);
    report.param("method", a.method.to_possible_value().unwrap().get_name());
    if let Some(nu) = a.nu {
        report.param("nu", nu);
    }
    if let Some(r) = a.nu_range {
        report.param("nu_range", [r.start, r.end, r.step]);
    }
    let cfg = EvalConfig::with_digits(a.digits);
    let mut skipped = 0;
    for &nu in &points {
        let r = match a.method {
            MethodArg::Quad => eval_scaled(nu, a.x, &cfg)?,
            MethodArg::Asym => {
                if a.nu_range.is_some() && nu < a.x + ASYMPTOTIC_MARGIN {
                    skipped += 1;
                    continue;
                }
                eval_scaled_asymptotic(nu, a.x, a.kmax)?
            }
        };
        report.push(vec![nu.into(), r.value.into(), r.est_error.into(), r.method.to_string().into()]);
    }
    if skipped > 0 {
        report.warnings.push(format!(
            "skipped {skipped} point(s) below nu = x + {ASYMPTOTIC_MARGIN}, where the large-nu expansion is not used"
        ));
    }
    Ok(report.into())
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("which").required(true).args(["n", "n_range", "scan"])))]
pub struct ZerosArgs {
    #[arg(long, default_value_t = 1.0)]
    pub x: f64,
    #[arg(long)]
    pub n: Option<u32>,
    /// Indices `a:b`, both ends included.
    #[arg(long, value_name = "A:B")]
    pub n_range: Option<NRange>,
    /// Number of correction terms after `xi` (0..=3).
    #[arg(long, default_value_t = MAX_ORDER)]
    pub order: usize,
    /// Also locate each zero by bracketing and Brent's method on the quadrature.
    #[arg(long)]
    pub refine: bool,
    /// Absolute tolerance on refined zeros.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    /// Diagnostic: list every sign change of f on [0, below], unlabelled.
    #[arg(long, requires = "below")]
    pub scan: bool,
    #[arg(long)]
    pub below: Option<f64>,
    /// Grid spacing for --scan.
    #[arg(long, default_value_t = 0.05)]
    pub step: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

pub fn zeros(a: &ZerosArgs) -> CmdResult {
    check_x(a.x)?;
    if a.scan {
        return scan(a);
    }
    if a.order > MAX_ORDER {
        return Err(Failure::Usage(format!("order must be in 0..={MAX_ORDER}, got {}", a.order)));
    }
    let n_list: Vec<u32> = match (a.n, a.n_range) {
        (Some(n), _) => vec![n],
        (None, Some(r)) => (r.start..=r.end).collect(),
        (None, None) => unreachable!("clap requires --n, --n-range or --scan"),
    };
    if n_list.contains(&0) {
        return Err(Failure::Usage("n must be at least 1".into()));
    }
    let mut columns = vec!["n", "x", "m", "xi", "chi", "estimate", "defect"];
    if a.refine {
        columns.extend(["refined", "est_minus_refined", "f_at_refined"]);
    }
    let mut report = Report::new("zeros", columns);
    report.param("x", a.x);
    report.param("n", &n_list);
    report.param("order", a.order);
    report.param("refine", a.refine);
    if a.refine {
        report.param("tol", a.tol);
    }
    let refined = if a.refine { Some(build_table(&n_list, a.x, a.tol)?) } else { None };
    for (i, &n) in n_list.iter().enumerate() {
        let xi = xi_base(n, a.x)?;
        let m = m_of(n);
        let est = estimate_zero(n, a.x, a.order)?;
        let mut row: Vec<Cell> = vec![
            n.into(),
            a.x.into(),
            m.into(),
            xi.into(),
            (xi / m).into(),
            est.into(),
            zero_equation_defect(n, a.x, est).into(),
        ];
        if let Some(rows) = &refined {
            let rec = rows[i].clone()?;
            row.extend([rec.refined.into(), (est - rec.refined).into(), rec.f_at_refined.into()]);
        }
        report.push(row);
    }
    Ok(report.into())
}

fn scan(a: &ZerosArgs) -> CmdResult {
    let below = a.below.expect("clap enforces --below with --scan");
    let mut report = Report::new("zeros", vec!["lo", "hi", "nu", "f"]);
    report.param("x", a.x);
    report.param("scan_below", below);
    report.param("step", a.step);
    let brackets = scan_sign_changes(a.x, 0.0, below, a.step, SIGN_DIGITS)?;
    let cfg = EvalConfig::with_digits(14);
    let f = |nu: f64| eval_scaled(nu, a.x, &cfg).map(|r| r.value);
    for &(lo, hi) in &brackets {
        let (nu, fv) = brent(f, lo, hi, f(lo)?, f(hi)?, a.tol)?;
        report.push(vec![lo.into(), hi.into(), nu.into(), fv.into()]);
    }
    report.warnings.push(format!(
        "diagnostic scan: {} sign change(s) on [0, {below}] at spacing {}; no index is assigned",
        brackets.len(),
        a.step
    ));
    Ok(report.into())
}

#[derive(Args, Debug)]
pub struct Table1Args {
    /// Absolute tolerance on refined zeros.
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

pub fn table1(a: &Table1Args) -> CmdResult {
    let n_list = reference::table_n();
    let rows = build_table(&n_list, TABLE_X, a.tol)?;
    let mut report =
        Report::new("table1", vec!["n", "nu_refined", "nu_asymptotic", "xi", "diff", "pass"]);
    report.param("x", TABLE_X);
    report.param("tol", a.tol);
    let mut text_rows = Vec::new();
    let mut all_passed = true;
    for (row, rec) in TABLE.iter().zip(rows) {
        let rec = rec?;
        let pass = (rec.refined - reference::value(row.nu)).abs() <= reference::eleventh_digit_tolerance(row.nu)
            && reference::agrees_to_printed_decimals(rec.estimate, row.asymptotic)
            && reference::agrees_to_printed_decimals(rec.xi, row.xi);
        all_passed &= pass;
        if !pass {
            report.warnings.push(format!(
                "n = {}: expected nu {}, asymptotic {}, xi {}",
                row.n, row.nu, row.asymptotic, row.xi
            ));
        }
        text_rows.push(vec![
            row.n.to_string(),
            format!("{:.10}", rec.refined),
            format!("{:.10}", rec.estimate),
            format!("{:.6}", rec.xi),
            format!("{:.3e}", rec.est_minus_refined),
            if pass { "ok" } else { "FAIL" }.to_string(),
        ]);
        report.push(vec![
            row.n.into(),
            rec.refined.into(),
            rec.estimate.into(),
            rec.xi.into(),
            rec.est_minus_refined.into(),
            pass.into(),
        ]);
    }
    let header: Vec<String> = report.columns.iter().map(|c| c.to_string()).collect();
    report.text = Some(crate::output::align(&header, &text_rows));
    Ok(Outcome { report, all_passed })
}

#[derive(Args, Debug)]
pub struct CoeffsArgs {
    /// Highest saddle coefficient `C_k` to derive.
    #[arg(long, default_value_t = DEFAULT_KMAX)]
    pub kmax: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// `(family, index, variable, polynomial)` for every dumped coefficient.
fn coefficient_list(kmax: usize) -> Result<Vec<(&'static str, usize, &'static str, ParamPoly)>, Failure> {
    if kmax > MAX_SADDLE_K {
        return Err(Failure::Usage(format!("kmax must be at most {MAX_SADDLE_K}, got {kmax}")));
    }
    let t = CoeffTables::derive(kmax)?;
    let mut out = Vec::new();
    for (k, c) in t.c.iter().enumerate() {
        out.push(("C", k, "s", c.clone()));
    }
    for (k, a) in t.a.iter().enumerate() {
        out.push(("A", k, "u", a.clone()));
    }
    for (p, e) in t.eps_series.coeffs().iter().enumerate() {
        if !e.is_zero() {
            out.push(("eps", p, "u", e.clone()));
        }
    }
    for (j, c) in t.mu_minus_tanh.coeffs().iter().enumerate().skip(1) {
        out.push(("mu", j, "r", c.clone()));
    }
    Ok(out)
}

pub fn coeffs(a: &CoeffsArgs) -> CmdResult {
    let list = coefficient_list(a.kmax)?;
    let mut report = Report::new("coeffs", vec!["family", "index", "power", "numerator", "denominator"]);
    report.param("kmax", a.kmax);
    let mut text = String::from(
        "# C[k]: saddle coefficients in s = coth(mu)\n\
         # A[k]: zero-equation coefficients in u = x^2\n\
         # eps[p]: coefficient of nu^-p in the phase correction, in u = x^2\n\
         # mu[j]: coefficient of r^(2j) in mu - tanh(mu) - log(2/(e r)), r = x/nu\n",
    );
    for (family, index, var, p) in &list {
        text.push_str(&format!("{family}[{index}] = {}\n", p.display_with(var)));
        for (power, c) in p.coeffs().iter().enumerate() {
            if *c == rat(0, 1) {
                continue;
            }
            report.push(vec![
                (*family).into(),
                (*index).into(),
                power.into(),
                c.numer().to_string().into(),
                c.denom().to_string().into(),
            ]);
        }
    }
    report.text = Some(text);
    Ok(report.into())
}

#[derive(Args, Debug)]
pub struct WcheckArgs {
    /// Comma-separated arguments; defaults to a grid from 1e-3 to 1e12.
    #[arg(long, value_delimiter = ',')]
    pub z: Vec<f64>,
    /// Terms of the W series (1..=6); the 1/W series uses at most 5.
    #[arg(long, default_value_t = 6)]
    pub terms: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

const W_GRID: [f64; 12] = [1e-3, 1e-2, 0.1, 1.0, 10.0, 1e2, 1e3, 1e4, 1e6, 1e8, 1e10, 1e12];

pub fn wcheck(a: &WcheckArgs) -> CmdResult {
    if !(1..=6).contains(&a.terms) {
        return Err(Failure::Usage(format!("terms must be in 1..=6, got {}", a.terms)));
    }
    let zs: Vec<f64> = if a.z.is_empty() { W_GRID.to_vec() } else { a.z.clone() };
    let mut report = Report::new(
        "wcheck",
        vec!["z", "w_halley", "iterations", "residual", "w_series", "w_series_rel_err", "inv_w_series", "inv_w_series_rel_err"],
    );
    report.param("z", &zs);
    report.param("terms", a.terms);
    let inv_terms = a.terms.min(5);
    let mut below_e = 0;
    for &z in &zs {
        let r = w_principal(z)?;
        let (ws, wi) = if z > std::f64::consts::E {
            (w_asymptotic(z, a.terms)?, inv_w_asymptotic(z, inv_terms)?)
        } else {
            below_e += 1;
            (f64::NAN, f64::NAN)
        };
        report.push(vec![
            z.into(),
            r.w.into(),
            r.iterations.into(),
            r.residual.into(),
            ws.into(),
            ((ws - r.w) / r.w).abs().into(),
            wi.into(),
            ((wi - 1.0 / r.w) * r.w).abs().into(),
        ]);
    }
    if below_e > 0 {
        report.warnings.push(format!("series columns are blank (null in JSON) for {below_e} point(s) with z <= e"));
    }
    Ok(report.into())
}
