//! Acceptance checks. Runs without the libtest harness and prints one
//! `PASS`/`FAIL` line per criterion; exits non-zero if any fail.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use kiv_zeros::coeffs::{derive_mu_expansion, derive_saddle_coeffs, tables};
use kiv_zeros::lambert::{w_asymptotic, w_principal};
use kiv_zeros::macdonald::{eval_scaled, eval_scaled_asymptotic, phase_mu, EvalConfig};
use kiv_zeros::reference::{self, TABLE, TABLE_X};
use kiv_zeros::series::{rat, FormalSeries};
use kiv_zeros::zeros::{
    build_table, estimate_zero, scan_sign_changes, xi_base, zero_equation_defect, ZeroRecord,
};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

mod common;
use common::{poly, published_a, published_c};

type Outcome = std::result::Result<String, String>;

fn refined_rows(n: &[u32], tol: f64) -> Vec<ZeroRecord> {
    build_table(n, TABLE_X, tol)
        .expect("valid n list")
        .into_iter()
        .map(|r| r.expect("refinement succeeds"))
        .collect()
}

fn table_reproduction_refined(rows: &[ZeroRecord], elapsed: Duration) -> Outcome {
    let mut worst: f64 = 0.0;
    for (row, rec) in TABLE.iter().zip(rows) {
        let diff = (rec.refined - reference::value(row.nu)).abs();
        let tol = reference::eleventh_digit_tolerance(row.nu);
        if diff > tol {
            return Err(format!("n = {}: {} vs {} (diff {diff:.2e} > {tol:.0e})", row.n, rec.refined, row.nu));
        }
        worst = worst.max(diff / tol);
    }
    if elapsed > Duration::from_secs(60) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("8 rows, worst diff {worst:.3} of tolerance, {:.1} s", elapsed.as_secs_f64()))
}

fn table_reproduction_asymptotic() -> Outcome {
    for row in &TABLE {
        let est = estimate_zero(row.n, TABLE_X, 3).map_err(|e| e.to_string())?;
        if !reference::agrees_to_printed_decimals(est, row.asymptotic) {
            return Err(format!("n = {}: {est} vs {}", row.n, row.asymptotic));
        }
    }
    Ok("8 rows to 10 decimals".into())
}

fn table_reproduction_xi() -> Outcome {
    for row in &TABLE {
        let xi = xi_base(row.n, TABLE_X).map_err(|e| e.to_string())?;
        if !reference::agrees_to_printed_decimals(xi, row.xi) {
            return Err(format!("n = {}: {xi} vs {}", row.n, row.xi));
        }
    }
    Ok("8 rows to 6 decimals".into())
}

fn coefficient_derivation() -> Outcome {
    let c = derive_saddle_coeffs(5).map_err(|e| e.to_string())?;
    if c != published_c() {
        return Err("C_0..C_5 differ".into());
    }
    let t = tables();
    if t.a[..3] != published_a()[..] {
        return Err("A_0..A_2 differ".into());
    }
    let eps = &t.eps_series;
    let expect_eps = [
        (1, poly(&[(1, 12)])),
        (3, poly(&[(1, 360), (1, 4)])),
        (5, poly(&[(1, 1260), (-1, 4), (11, 32)])),
    ];
    for p in 0..=5 {
        let want = expect_eps.iter().find(|e| e.0 == p).map(|e| e.1.clone());
        match want {
            Some(w) if eps.coeff(p) != w => return Err(format!("epsilon nu^-{p} differs")),
            None if !eps.coeff(p).is_zero() => return Err(format!("epsilon nu^-{p} non-zero")),
            _ => {}
        }
    }
    let mu = derive_mu_expansion(4).map_err(|e| e.to_string())?;
    let want = [rat(1, 4), rat(1, 32), rat(1, 96)];
    for (j, w) in want.iter().enumerate() {
        if mu.coeff(j + 1).constant_term() != *w || !mu.coeff(j + 1).is_constant() {
            return Err(format!("mu expansion r^{} differs", 2 * (j + 1)));
        }
    }
    Ok("C_0..C_5, A_0..A_2, epsilon to nu^-5, mu - tanh mu: exact".into())
}

fn lambert() -> Outcome {
    let grid = [1e-3, 1e-2, 0.1, 1.0, 10.0, 1e2, 1e3, 1e4, 1e6, 1e8, 1e10, 1e12];
    let mut worst: f64 = 0.0;
    for z in grid {
        let r = w_principal(z).map_err(|e| e.to_string())?;
        if r.residual > 1e-14 {
            return Err(format!("residual {:.2e} at z = {z}", r.residual));
        }
        worst = worst.max(r.residual);
    }
    let w = w_principal(1e8).unwrap().w;
    let rel = ((w_asymptotic(1e8, 6).unwrap() - w) / w).abs();
    if rel > 1e-3 {
        return Err(format!("six-term series at 1e8 off by {rel:.2e}"));
    }
    for z in [1e6, 1e8, 1e10, 1e12] {
        let w = w_principal(z).unwrap().w;
        let err: Vec<f64> = (1..=6).map(|t| (w_asymptotic(z, t).unwrap() - w).abs()).collect();
        if !err.windows(2).all(|p| p[1] < p[0]) {
            return Err(format!("series not monotone at z = {z}: {err:?}"));
        }
    }
    Ok(format!("max residual {worst:.1e}; series rel err at 1e8 {rel:.1e}"))
}

fn cross_validation() -> Outcome {
    let cfg = EvalConfig::with_digits(14);
    let mut worst: f64 = 0.0;
    for nu in [15.0, 20.0, 30.0] {
        for x in [0.5, 1.0, 2.0] {
            let q = eval_scaled(nu, x, &cfg).map_err(|e| e.to_string())?;
            let a = eval_scaled_asymptotic(nu, x, 5).map_err(|e| e.to_string())?;
            let t = nu * phase_mu(nu, x).unwrap().tanh_mu;
            let prefactor = (2.0 * PI / t).sqrt();
            let err = (q.value - a.value).abs() / prefactor;
            let bound = 10.0 * t.powi(-6);
            if err >= bound {
                return Err(format!("nu = {nu}, x = {x}: {err:.2e} >= {bound:.2e}"));
            }
            worst = worst.max(err / bound);
        }
    }
    Ok(format!("9 points, worst error {worst:.3} of bound"))
}

fn compose_revert_identity() -> std::result::Result<(), String> {
    let cfg = Config { cases: 200, failure_persistence: None, ..Config::default() };
    let mut runner = TestRunner::new_with_rng(cfg, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    let strategy = (prop_oneof![-3i64..=-1, 1i64..=3], prop::collection::vec(-4i64..=4, 6));
    runner
        .run(&strategy, |(a1, rest)| {
            let mut c = vec![rat(0, 1), rat(a1, 1)];
            c.extend(rest.into_iter().map(|v| rat(v, 1)));
            let f = FormalSeries::from_rationals("u", 8, c).unwrap();
            let g = f.revert().unwrap();
            prop_assert_eq!(f.compose(&g).unwrap(), FormalSeries::variable("u", 8).unwrap());
            Ok(())
        })
        .map_err(|e| format!("compose/revert: {e}"))
}

fn ordering_and_signs(zeros: &[ZeroRecord]) -> std::result::Result<usize, String> {
    let nu: Vec<f64> = zeros.iter().map(|z| z.refined).collect();
    if !nu.windows(2).all(|w| w[0] < w[1]) {
        return Err("refined zeros not increasing".into());
    }
    let cfg = EvalConfig::with_digits(8);
    let mut prev_sign = 0.0;
    for w in nu.windows(2) {
        let s = eval_scaled(0.5 * (w[0] + w[1]), TABLE_X, &cfg).map_err(|e| e.to_string())?.value.signum();
        if s == prev_sign {
            return Err(format!("no sign alternation between {} and {}", w[0], w[1]));
        }
        prev_sign = s;
    }
    // every sign change from the first to the last zero is one of the refined
    // zeros; anything below the first is reported, not counted
    let changes = scan_sign_changes(TABLE_X, 0.0, nu[nu.len() - 1] + 0.5, 0.125, 6).map_err(|e| e.to_string())?;
    let below = changes.iter().filter(|c| c.1 < nu[0]).count();
    let counted = &changes[below..];
    if counted.len() != nu.len() {
        return Err(format!("scan found {} sign changes from nu_1 on, expected {}", counted.len(), nu.len()));
    }
    for (&(lo, hi), &v) in counted.iter().zip(&nu) {
        if !(lo <= v && v <= hi) {
            return Err(format!("zero {v} outside scan bracket [{lo}, {hi}]"));
        }
    }
    let t = tables();
    for z in zeros {
        let phi = phase_mu(z.refined, TABLE_X).unwrap().phi;
        let target = (z.n as f64 + 0.5) * PI + t.epsilon_at(z.refined, TABLE_X);
        if (phi - target).abs() > 0.05 {
            return Err(format!("n = {}: phase {phi} vs {target}", z.n));
        }
    }
    Ok(below)
}

fn order_improvement(rows: &[ZeroRecord]) -> std::result::Result<(), String> {
    for r in rows {
        let err: Vec<f64> = (0..=3).map(|k| (estimate_zero(r.n, TABLE_X, k).unwrap() - r.refined).abs()).collect();
        if !err.windows(2).all(|p| p[1] < p[0]) {
            return Err(format!("n = {}: estimate errors by order {err:?}", r.n));
        }
    }
    Ok(())
}

fn defect_decay(rows: &[ZeroRecord]) -> std::result::Result<(), String> {
    let d: Vec<f64> = rows.iter().map(|r| zero_equation_defect(r.n, TABLE_X, r.refined).abs()).collect();
    if !d.windows(2).all(|p| p[1] < p[0]) {
        return Err(format!("zero-equation defect not decaying: {d:?}"));
    }
    Ok(())
}

fn property_suite(all: &[ZeroRecord], table_rows: &[ZeroRecord]) -> Outcome {
    compose_revert_identity()?;
    let below = ordering_and_signs(all)?;
    order_improvement(table_rows)?;
    defect_decay(table_rows)?;
    Ok(format!(
        "compose/revert x200, ordering, alternation, phase count, order improvement, defect decay \
         ({below} sign change(s) below nu_1)"
    ))
}

fn error_convergence(rows: &[ZeroRecord]) -> Outcome {
    let first = rows.iter().find(|r| r.n == 1).unwrap().est_minus_refined;
    let last = rows.iter().find(|r| r.n == 30).unwrap().est_minus_refined;
    let published = reference::value(TABLE[0].asymptotic) - reference::value(TABLE[0].nu);
    if ((first - published) / published).abs() > 0.05 {
        return Err(format!("n = 1 difference {first:.4e} vs {published:.4e}"));
    }
    if last.abs() >= 5e-10 {
        return Err(format!("n = 30 difference {last:.2e}"));
    }
    Ok(format!("n = 1: {first:.4e}, n = 30: {last:.1e}"))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let table_rows = refined_rows(&reference::table_n(), 1e-12);
    let elapsed = start.elapsed();
    let all_rows = refined_rows(&(1..=30).collect::<Vec<_>>(), 1e-10);

    let results: Vec<(&str, Outcome)> = vec![
        ("1 refined zeros reproduce the table", table_reproduction_refined(&table_rows, elapsed)),
        ("2 order-3 estimates reproduce the table", table_reproduction_asymptotic()),
        ("3 base solutions xi reproduce the table", table_reproduction_xi()),
        ("4 exact coefficient derivation", coefficient_derivation()),
        ("5 Lambert W accuracy and series", lambert()),
        ("6 quadrature vs large-nu expansion", cross_validation()),
        ("7 property suite", property_suite(&all_rows, &table_rows)),
        ("8 estimate error shrinks from n = 1 to n = 30", error_convergence(&table_rows)),
    ];
    let mut failed = 0;
    for (name, outcome) in &results {
        match outcome {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why}");
            }
        }
    }
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
