//! Acceptance suite. Every check is bit-exact unless a tolerance is named.
//! Prints one PASS/FAIL line per criterion and exits nonzero on any failure.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use bgap::scan::CellValues;
use bgap::{run_identity, run_scan, ScanConfig};
use bgap_core::bernstein::{basis_row, bernstein_apply, diagonal_check};
use bgap_core::gap::{build_g_closedform, build_g_definition, gap_coefficients, gap_report};
use bgap_core::{FunctionSpec, Mode, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

const IDENTITY_SEED: u64 = 7;
const IDENTITY_TRIALS: usize = 200;
const IDENTITY_BUDGET: Duration = Duration::from_secs(10);
const LEMMA_BUDGET: Duration = Duration::from_secs(30);
const FLOAT_TOL: f64 = 1e-10;

type Outcome = Result<String, String>;

fn r(n: i64, d: i64) -> Rational {
    Rational::from_frac(n, d)
}

fn grid(steps: i64) -> Vec<Rational> {
    (0..=steps).map(|i| r(i, steps)).collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn identity_exact() -> Outcome {
    let start = Instant::now();
    for n in 1..=8 {
        let s = run_identity(n, IDENTITY_TRIALS, IDENTITY_SEED + n as u64).map_err(|e| e.to_string())?;
        ensure(s.passed(), || format!("n = {n}: {}", s.first_failure.as_ref().unwrap()))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed <= IDENTITY_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!("1600 cases, residual 0 in all, {elapsed:.2?}"))
}

fn lemma_nonnegative() -> Outcome {
    let start = Instant::now();
    let pts = grid(10);
    let mut checked = 0usize;
    for n in 1..=12 {
        for x in &pts {
            for y in &pts {
                let c = gap_coefficients(n, x, y).map_err(|e| format!("n={n} x={x} y={y}: {e}"))?;
                ensure(c.c.len() == 2 * n - 1, || format!("length {} at n={n}", c.c.len()))?;
                ensure(c.c.iter().all(|v| !v.is_negative()), || format!("negative at n={n} x={x} y={y}"))?;
                checked += c.c.len();
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed <= LEMMA_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!("{checked} coefficients >= 0, {elapsed:.2?}"))
}

fn construction_equivalence() -> Outcome {
    let pts = grid(10);
    for n in 1..=12 {
        for x in &pts {
            for y in &pts {
                let def = build_g_definition(n, x, y).map_err(|e| e.to_string())?;
                let closed = build_g_closedform(n, x, y).map_err(|e| e.to_string())?;
                ensure(def == closed, || format!("mismatch at n={n} x={x} y={y}"))?;
                ensure(def.degree().is_none_or(|d| d <= 2 * n - 2), || {
                    format!("degree {:?} at n={n}", def.degree())
                })?;
            }
        }
    }
    Ok("n <= 12 on 11x11 grid, coefficient-equal, degree <= 2n-2".into())
}

fn convex_catalog() -> Vec<FunctionSpec> {
    ["e2", "abs:1/4", "abs:1/2", "abs:3/4", "pwl:0,1;1/3,0;2/3,0;1,1"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect()
}

/// Criteria 4 and 5 share the same 21x21 scans.
fn theorem_and_chain() -> (Outcome, Outcome) {
    let mut cells = 0usize;
    let mut chain_cells = 0usize;
    let mut theorem: Result<(), String> = Ok(());
    let mut chain: Result<(), String> = Ok(());
    for spec in convex_catalog().into_iter().chain(["e1".parse().unwrap()]) {
        let affine = spec == FunctionSpec::Monomial(1);
        for n in 1..=10 {
            let res = match run_scan(&ScanConfig::new(n, spec.clone(), 20)) {
                Ok(res) => res,
                Err(e) => return (Err(e.to_string()), Err(e.to_string())),
            };
            if theorem.is_ok() && !res.convex_input {
                theorem = Err(format!("{spec} samples not convex at n={n}"));
            }
            for cell in &res.cells {
                let CellValues::Exact(rep) = &cell.values else { unreachable!() };
                cells += 1;
                let expect_zero = affine || cell.i == cell.j;
                if theorem.is_ok() && rep.gap4.is_negative() {
                    theorem = Err(format!("{spec} n={n} x={} y={}: gap4 = {}", cell.x, cell.y, rep.gap4));
                }
                if theorem.is_ok() && rep.gap4.is_zero() != expect_zero {
                    theorem = Err(format!(
                        "{spec} n={n} x={} y={}: gap4 = {}, expected zero: {expect_zero}",
                        cell.x, cell.y, rep.gap4
                    ));
                }
                chain_cells += 1;
                if chain.is_ok() && !rep.violations().is_empty() {
                    chain = Err(format!(
                        "{spec} n={n} x={} y={}: {:?}",
                        cell.x,
                        cell.y,
                        rep.violations()
                    ));
                }
            }
        }
    }
    (
        theorem.map(|_| format!("{cells} cells, gap4 >= 0, zero exactly on x = y and for affine samples")),
        chain.map(|_| format!("{chain_cells} cells, gap1 = gap2 = gap3 + 2*gap4")),
    )
}

/// Plain-formula oracle for the worked instances: basis weights from
/// `C(n,v) x^v (1-x)^(n-v)` with factorials, operator values as raw sums.
mod oracle {
    use super::*;

    fn factorial(k: usize) -> Rational {
        (1..=k).map(Rational::from).product()
    }

    pub fn weight(n: usize, v: usize, x: &Rational) -> Rational {
        factorial(n) / (factorial(v) * factorial(n - v))
            * x.pow(v as u32)
            * (Rational::one() - x).pow((n - v) as u32)
    }

    pub fn bernstein(n: usize, f: &dyn Fn(&Rational) -> Rational, x: &Rational) -> Rational {
        (0..=n).map(|v| weight(n, v, x) * f(&r(v as i64, n as i64))).sum()
    }

    pub fn tensor(n: usize, f: &dyn Fn(&Rational) -> Rational, x: &Rational, y: &Rational) -> Rational {
        let mut total = Rational::zero();
        for i in 0..=n {
            for j in 0..=n {
                total += weight(n, i, x) * weight(n, j, y) * f(&r((i + j) as i64, 2 * n as i64));
            }
        }
        total
    }

    fn mul(p: &[Rational], q: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); p.len() + q.len() - 1];
        for (i, a) in p.iter().enumerate() {
            for (j, b) in q.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        out
    }

    /// `c_k` expanded directly in `w = z + 1`, where `1 + t z = (1-t) + t w`:
    /// `(x-y)^2/4 sum_k [(1-m)+mw]^{2(n-1-k)} [((1-x)+xw)((1-y)+yw)]^k`.
    pub fn gap_coeffs(n: usize, x: &Rational, y: &Rational) -> Vec<Rational> {
        let one = Rational::one();
        let m = (x + y) / r(2, 1);
        let mid = vec![&one - &m, m.clone()];
        let prod = mul(&[&one - x, x.clone()], &[&one - y, y.clone()]);
        let mut total = vec![Rational::zero(); 2 * n - 1];
        for k in 0..n {
            let mut term = vec![one.clone()];
            for _ in 0..2 * (n - 1 - k) {
                term = mul(&term, &mid);
            }
            for _ in 0..k {
                term = mul(&term, &prod);
            }
            for (t, v) in total.iter_mut().zip(&term) {
                *t += v;
            }
        }
        let pre = (x - y).pow(2) / r(4, 1);
        total.iter().map(|t| t * &pre).collect()
    }
}

fn worked_instances() -> Outcome {
    let e2 = |t: &Rational| t.pow(2);
    let (one, zero) = (r(1, 1), r(0, 1));
    let mid = r(1, 2);
    for (n, want_gap4, want_gap3, want_gap2) in [
        (1usize, r(1, 8), Some(r(1, 4)), Some(r(1, 2))),
        (2, r(1, 16), None, None),
    ] {
        let b_x = oracle::bernstein(2 * n, &e2, &one);
        let b_y = oracle::bernstein(2 * n, &e2, &zero);
        let b_m = oracle::bernstein(2 * n, &e2, &mid);
        let t = oracle::tensor(n, &e2, &one, &zero);
        let o_gap4 = &b_m - &t;
        let o_gap3 = &b_x + &b_y - &b_m - &b_m;
        let o_gap2 = &b_x + &b_y - &t - &t;
        ensure(o_gap4 == want_gap4, || format!("oracle gap4 = {o_gap4} at n={n}"))?;
        if let Some(w) = &want_gap3 {
            ensure(&o_gap3 == w, || format!("oracle gap3 = {o_gap3}"))?;
        }
        if let Some(w) = &want_gap2 {
            ensure(&o_gap2 == w, || format!("oracle gap2 = {o_gap2}"))?;
        }

        let samples: Vec<Rational> = (0..=2 * n).map(|k| e2(&r(k as i64, 2 * n as i64))).collect();
        let rep = gap_report(n, &samples, &one, &zero).map_err(|e| e.to_string())?;
        ensure(rep.gap4 == want_gap4, || format!("gap4 = {} at n={n}", rep.gap4))?;
        ensure(rep.gap3 == o_gap3 && rep.gap2 == o_gap2 && rep.gap1 == o_gap2, || {
            format!("operator gaps disagree with oracle at n={n}")
        })?;
    }
    let want_c = vec![r(1, 16), r(3, 8), r(1, 16)];
    ensure(oracle::gap_coeffs(2, &r(1, 1), &r(0, 1)) == want_c, || "oracle c".into())?;
    let c = gap_coefficients(2, &r(1, 1), &r(0, 1)).map_err(|e| e.to_string())?.c;
    ensure(c == want_c, || format!("c = {c:?}"))?;
    for n in 1..=6 {
        for (x, y) in [(r(1, 3), r(4, 5)), (r(0, 1), r(7, 9)), (r(1, 2), r(1, 2))] {
            let lib = gap_coefficients(n, &x, &y).map_err(|e| e.to_string())?.c;
            ensure(lib == oracle::gap_coeffs(n, &x, &y), || format!("c mismatch n={n} x={x} y={y}"))?;
        }
    }
    Ok("n=1: gap4 1/8, gap3 1/4, gap2 1/2; n=2: gap4 1/16, c = [1/16, 3/8, 1/16]".into())
}

fn bernstein_sanity() -> Outcome {
    let pts = grid(20);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in 1..=12usize {
        let affine: Vec<Rational> = (0..=n).map(|v| r(v as i64, n as i64)).collect();
        for x in &pts {
            let row = basis_row(n, x).map_err(|e| e.to_string())?;
            ensure(row.weights.iter().sum::<Rational>() == Rational::one(), || format!("partition n={n} x={x}"))?;
            let b = bernstein_apply(n, &affine, x).map_err(|e| e.to_string())?;
            ensure(&b == x, || format!("affine n={n} x={x}"))?;
        }
        for _ in 0..50 {
            let s: Vec<Rational> = (0..=2 * n).map(|_| Rational::from(rng.gen_range(-100i64..=100))).collect();
            let at0 = bernstein_apply(2 * n, &s, &Rational::zero()).map_err(|e| e.to_string())?;
            let at1 = bernstein_apply(2 * n, &s, &Rational::one()).map_err(|e| e.to_string())?;
            ensure(at0 == s[0] && at1 == s[2 * n], || format!("endpoint n={n}"))?;
            for x in pts.iter().step_by(2) {
                let d = diagonal_check(n, &s, x).map_err(|e| e.to_string())?;
                ensure(d.equal, || format!("diagonal n={n} x={x}"))?;
            }
        }
    }
    Ok("n <= 12: partition of unity, affine reproduction, endpoints, diagonal (50 vectors per n)".into())
}

fn float_fidelity() -> Outcome {
    let worst = (1..=32usize)
        .into_par_iter()
        .map(|n| -> Result<f64, String> {
            let exact = run_scan(&ScanConfig::new(n, FunctionSpec::Monomial(2), 20))
                .map_err(|e| e.to_string())?;
            let mut cfg = ScanConfig::new(n, FunctionSpec::Monomial(2), 20);
            cfg.mode = Mode::Float;
            let float = run_scan(&cfg).map_err(|e| e.to_string())?;
            Ok(exact
                .cells
                .iter()
                .zip(&float.cells)
                .map(|(e, f)| (e.gap4_f64() - f.gap4_f64()).abs())
                .fold(0.0, f64::max))
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .fold(0.0, f64::max);
    ensure(worst <= FLOAT_TOL, || format!("max |float - exact| = {worst:e}"))?;
    Ok(format!("n <= 32, 21x21, e2: max |float - exact| gap4 = {worst:e} <= {FLOAT_TOL:e}"))
}

fn cli_determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let run = |format: &str, file: &str| -> Result<Vec<u8>, String> {
        let path = dir.path().join(file);
        let status = Command::new(env!("CARGO_BIN_EXE_bgap"))
            .args(["scan", "--n", "4", "--fn", "abs:1/3", "--grid", "12", "--seed", "5"])
            .args(["--format", format, "--out"])
            .arg(&path)
            .status()
            .map_err(|e| e.to_string())?;
        ensure(status.success(), || format!("bgap exited with {status}"))?;
        std::fs::read(&path).map_err(|e| e.to_string())
    };
    for format in ["json", "csv"] {
        let a = run(format, &format!("a.{format}"))?;
        let b = run(format, &format!("b.{format}"))?;
        ensure(!a.is_empty() && a == b, || format!("{format} output differs between runs"))?;
    }
    Ok("json and csv byte-identical across two runs".into())
}

type Criterion = (&'static str, fn() -> Outcome);

fn report(name: &str, outcome: &Outcome, elapsed: Duration) -> bool {
    match outcome {
        Ok(detail) => println!("PASS criterion {name}: {detail} [{elapsed:.1?}]"),
        Err(why) => println!("FAIL criterion {name}: {why} [{elapsed:.1?}]"),
    }
    outcome.is_ok()
}

fn main() -> ExitCode {
    let singles: [Criterion; 3] = [
        ("1 identity residual exactly 0", identity_exact),
        ("2 gap coefficients nonnegative", lemma_nonnegative),
        ("3 construction equivalence + degree bound", construction_equivalence),
    ];
    let rest: [Criterion; 4] = [
        ("6 worked instances", worked_instances),
        ("7 Bernstein operator sanity", bernstein_sanity),
        ("8 float path fidelity", float_fidelity),
        ("9 CLI determinism", cli_determinism),
    ];
    let mut passed = 0;
    let mut total = 0;
    let mut run = |name: &str, f: fn() -> Outcome| {
        let start = Instant::now();
        let outcome = f();
        total += 1;
        passed += report(name, &outcome, start.elapsed()) as usize;
    };
    for (name, f) in singles {
        run(name, f);
    }
    let start = Instant::now();
    let (theorem, chain) = theorem_and_chain();
    let elapsed = start.elapsed();
    let shared = [
        ("4 midpoint inequality on convex catalog", theorem),
        ("5 chain gap1 = gap2 = gap3 + 2 gap4", chain),
    ];
    let mut extra = 0;
    for (name, outcome) in &shared {
        extra += report(name, outcome, elapsed) as usize;
    }
    for (name, f) in rest {
        run(name, f);
    }
    let (passed, total) = (passed + extra, total + shared.len());
    println!("{passed} passed, {} failed", total - passed);
    if passed == total {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
