//! Acceptance gate: ten end-to-end criteria, each reported on one line.
//!
//! Criteria that measure a published claim which does not hold are kept at
//! their stated tolerance and reported as FAIL with the measured numbers.

use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use k0spectrum::bounds::{
    inner_log_closed_form, integral_identity_suite, kato_sample_grid, seto_0_closed, seto_0_numeric, seto_m,
};
use k0spectrum::eigensolver::{count_bound_states, fd_oracle_extrapolated, find_eigenvalues, RadialProblem};
use k0spectrum::model::{
    coupling_from_physical, kato_lower_bound_function, lower_bound_dimensionless, optimal_lambda, Coupling,
    PhysicalParams,
};
use k0spectrum::quadrature::integrate_split_log;
use k0spectrum::specfun::{k0, k0_scaled, k1_scaled, EULER_GAMMA};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const GRID_C: [f64; 6] = [0.3, 0.5, 1.0, 1.9, 5.0, 10.0];
const GRID_M: [u32; 3] = [0, 1, 2];

fn problem(m: u32, c: f64) -> RadialProblem {
    RadialProblem::new(m, c).expect("valid problem")
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    if elapsed <= limit {
        Ok(())
    } else {
        Err(format!("runtime {elapsed:?} exceeds {limit:?}"))
    }
}

fn integral_identities() -> Outcome {
    let t = Instant::now();
    let r = integral_identity_suite().map_err(|e| e.to_string())?;
    let elapsed = t.elapsed();
    let m1 = r.get("int_s_k0").unwrap().measured;
    let m2 = r.get("int_s2_k0").unwrap().measured;
    let sq = r.get("int_s_k0_sq").unwrap().measured;
    let holds = match ((sq - 0.5).abs() <= 1e-10, (sq - PI / 2.0).abs() <= 1e-10) {
        (true, false) => "1/2 holds, pi/2 does not",
        (false, true) => "pi/2 holds, 1/2 does not",
        (true, true) => "both",
        (false, false) => "neither",
    };
    let detail = format!("int sK0={m1:?} int s^2K0={m2:?} int sK0^2={sq:?} ({holds}) in {elapsed:?}");
    within(elapsed, Duration::from_secs(1))?;
    if (m1 - 1.0).abs() <= 1e-10 && (m2 - PI / 2.0).abs() <= 1e-10 && holds != "neither" {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn inner_outer_identities() -> Outcome {
    let t = Instant::now();
    let mut worst: f64 = 0.0;
    for r in [0.5, 1.0, 2.0] {
        let ln_r = f64::ln(r);
        let q = integrate_split_log(|s: f64| s * (ln_r - s.ln()).abs() * k0(s), r, 1e-12).map_err(|e| e.to_string())?;
        worst = worst.max((q.value - inner_log_closed_form(r)).abs());
    }
    let outer = k0spectrum::quadrature::integrate_semi_infinite(
        |r: f64| {
            let w = r * k0(r);
            if w == 0.0 {
                0.0
            } else {
                w * (EULER_GAMMA + 2.0 * k0(r) + (0.5 * r).ln())
            }
        },
        1e-12,
    )
    .map_err(|e| e.to_string())?
    .value;
    let elapsed = t.elapsed();
    let detail = format!("max inner error {worst:e}, outer = {outer:?} in {elapsed:?}");
    within(elapsed, Duration::from_secs(5))?;
    if worst <= 1e-9 && (outer - 1.0).abs() <= 1e-9 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

/// (node count, mismatch-root count, FD count)
fn three_counts(m: u32, c: f64) -> Result<(usize, usize, usize), String> {
    let p = problem(m, c);
    let nodes = count_bound_states(&p).map_err(|e| e.to_string())?;
    let r = find_eigenvalues(&p).map_err(|e| e.to_string())?;
    let fd = fd_oracle_extrapolated(&p.clone().with_s_max(r.s_max).unwrap(), 2e-3).map_err(|e| e.to_string())?;
    Ok((nodes, r.count(), fd.len()))
}

fn bound_state_counts() -> Outcome {
    let t = Instant::now();
    let mut notes = Vec::new();
    let mut ok = true;

    let b11 = seto_m(Coupling::new(1.0).unwrap(), 1).unwrap();
    let n11 = three_counts(1, 1.0)?;
    ok &= n11 == (0, 0, 0) && b11.closed_form == 0.5;
    notes.push(format!("(C=1,m=1) counts {n11:?} bound {}", b11.closed_form));

    let b42 = seto_m(Coupling::new(4.0).unwrap(), 2).unwrap();
    let n42 = three_counts(2, 4.0)?;
    ok &= (n42.0 as f64) < b42.closed_form && n42.0 == n42.1 && n42.1 == n42.2;
    notes.push(format!("(C=4,m=2) counts {n42:?} bound {}", b42.closed_form));

    for c in [0.5, 1.0] {
        let n = three_counts(0, c)?;
        ok &= n == (1, 1, 1);
        notes.push(format!("(C={c},m=0) counts {n:?}"));
    }
    let elapsed = t.elapsed();
    within(elapsed, Duration::from_secs(30))?;
    let detail = format!("{} in {elapsed:?}", notes.join("; "));
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn weak_coupling() -> Outcome {
    let mut eps = Vec::new();
    for c in [0.3, 0.5, 1.0] {
        let r = find_eigenvalues(&problem(0, c)).map_err(|e| e.to_string())?;
        let e0 = r.ground_state().ok_or(format!("no bound state at C={c}"))?;
        eps.push((c, e0, r.s_max));
    }
    let detail = eps
        .iter()
        .map(|(c, e, s)| format!("C={c}: eps0={e:?} (s_max {s:.1})"))
        .collect::<Vec<_>>()
        .join("; ");
    let negative = eps.iter().all(|(_, e, _)| *e < 0.0);
    let monotone = eps.windows(2).all(|w| w[1].1 < w[0].1);
    if negative && monotone {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn spectral_bracket() -> Outcome {
    let mut violations = Vec::new();
    let mut total = 0;
    for c in GRID_C {
        let lower = lower_bound_dimensionless(Coupling::new(c).unwrap());
        for m in GRID_M {
            let r = find_eigenvalues(&problem(m, c)).map_err(|e| e.to_string())?;
            for e in r.eigenvalues {
                total += 1;
                if !(e >= lower - 1e-9 && e < 0.0) {
                    violations.push(format!("C={c} m={m}: eps={e:?} < -C^2/8={lower:?} by {:e}", lower - e));
                }
            }
        }
    }
    if violations.is_empty() {
        Ok(format!("{total} eigenvalues inside [-C^2/8, 0)"))
    } else {
        Err(format!(
            "{} of {total} outside: {}",
            violations.len(),
            violations.join("; ")
        ))
    }
}

fn oracle_equivalence() -> Outcome {
    let t = Instant::now();
    let mut worst: f64 = 0.0;
    let mut states = 0;
    for c in GRID_C {
        for m in GRID_M {
            let p = problem(m, c);
            let r = find_eigenvalues(&p).map_err(|e| e.to_string())?;
            if r.count() == 0 {
                continue;
            }
            let fd =
                fd_oracle_extrapolated(&p.clone().with_s_max(r.s_max).unwrap(), 2e-3).map_err(|e| e.to_string())?;
            if fd.len() != r.count() {
                return Err(format!("C={c} m={m}: {} shooting vs {} FD states", r.count(), fd.len()));
            }
            for (a, b) in r.eigenvalues.iter().zip(&fd) {
                worst = worst.max((a - b).abs());
                states += 1;
            }
        }
    }
    let elapsed = t.elapsed();
    within(elapsed, Duration::from_secs(120))?;
    let detail = format!("{states} states, max |d eps| = {worst:e} in {elapsed:?}");
    if worst <= 1e-6 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn kato() -> Outcome {
    let p = PhysicalParams::unit();
    let grid = kato_sample_grid(&p).map_err(|e| e.to_string())?;
    let failing: Vec<String> = grid
        .iter()
        .filter(|k| !k.satisfied)
        .map(|k| {
            format!(
                "sigma={} lambda={:?}: lhs {:.6} > rhs {:.6}",
                k.sigma, k.lambda, k.lhs, k.rhs
            )
        })
        .collect();
    let l0 = optimal_lambda(&p);
    let f0 = kato_lower_bound_function(&p, l0);
    let c = coupling_from_physical(&p).unwrap().value();
    let minimum_ok = (l0 - 2.0 * p.kato_scale()).abs() <= 1e-8
        && (f0 - c * p.alpha / 8.0).abs() <= 1e-8
        && (f0 - 0.25).abs() <= 1e-8;
    let detail = format!(
        "{}/{} samples satisfied; lambda0={l0:?} f(lambda0)={f0:?}{}",
        grid.len() - failing.len(),
        grid.len(),
        if failing.is_empty() {
            String::new()
        } else {
            format!("; {}", failing.join("; "))
        }
    );
    if failing.is_empty() && minimum_ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn low_coupling_regime() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for c in [0.5, 1.0] {
        let total: usize = (0..=3)
            .map(|m| find_eigenvalues(&problem(m, c)).map(|r| r.count()))
            .sum::<Result<usize, _>>()
            .map_err(|e| e.to_string())?;
        ok &= total == 1;
        notes.push(format!("C={c}: total {total}"));
    }
    let c = 1.9;
    let n = find_eigenvalues(&problem(0, c)).map_err(|e| e.to_string())?.count();
    let closed = seto_0_closed(Coupling::new(c).unwrap()).closed_form;
    let numeric = seto_0_numeric(Coupling::new(c).unwrap())
        .map_err(|e| e.to_string())?
        .bound
        .numeric
        .unwrap();
    ok &= n >= 1 && (n as f64) < closed.max(numeric);
    let annotation = if n as f64 >= closed {
        " (count exceeds 1 + C/2)"
    } else {
        ""
    };
    notes.push(format!("C=1.9: count {n} < max({closed}, {numeric:.6}){annotation}"));
    let detail = notes.join("; ");
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let run = |name: &str| -> Result<Vec<u8>, String> {
        let path = dir.path().join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_k0spec"))
            .args(["sweep", "--coupling", "0.5,1,1.9,5", "--m-max", "2", "--out"])
            .arg(&path)
            .status()
            .map_err(|e| e.to_string())?;
        if !status.success() {
            return Err(format!("sweep exited with {status}"));
        }
        std::fs::read(&path).map_err(|e| e.to_string())
    };
    let a = run("a.csv")?;
    let b = run("b.csv")?;
    if a == b && !a.is_empty() {
        Ok(format!("{} bytes identical", a.len()))
    } else {
        Err("CSV differs between runs".into())
    }
}

fn scaled_oracle(nu: i32, x: f64) -> f64 {
    // e^x K_ν(x) = ∫_0^∞ cosh(νt) e^{-2x sinh²(t/2)} dt, trapezoid on an even integrand
    let h = 0.01;
    let mut sum = 0.5;
    for k in 1.. {
        let t = k as f64 * h;
        let half = (0.5 * t).sinh();
        let term = (nu as f64 * t).cosh() * (-2.0 * x * half * half).exp();
        sum += term;
        if term < 1e-18 * sum {
            break;
        }
    }
    h * sum
}

fn special_functions() -> Outcome {
    let mut worst: f64 = 0.0;
    for i in 0..50 {
        let x = (f64::ln(1e-6) + (f64::ln(100.0) - f64::ln(1e-6)) * i as f64 / 49.0).exp();
        for (nu, value) in [(0, k0_scaled(x)), (1, k1_scaled(x))] {
            let oracle = scaled_oracle(nu, x);
            worst = worst.max(((value - oracle) / oracle).abs());
        }
    }
    let detail = format!("max relative error {worst:e} over 50 points");
    if worst <= 1e-12 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("integral identities", integral_identities),
        ("inner/outer s-wave identities", inner_outer_identities),
        ("bound-state counts", bound_state_counts),
        ("weak-coupling existence", weak_coupling),
        ("spectral bracket", spectral_bracket),
        ("oracle equivalence", oracle_equivalence),
        ("kato inequality", kato),
        ("low-coupling regime", low_coupling_regime),
        ("determinism", determinism),
        ("special functions", special_functions),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        println!("criterion {:>2} {tag}: {name}: {detail}", i + 1);
        if outcome.is_err() {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
