//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::f64::consts::{LN_2, PI, SQRT_2};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use eigencount::cli::{dispatch, EXIT_OK};
use eigencount::closedform::{
    argmax_w, f_w_minus, integrate_density, v_density, v_piece, w_density, DensityKind, Piece,
};
use eigencount::exactcount::{
    brute_force_count_lambda, cd_partial_sum, count_integer_spectrum, count_repeated_integer,
    fast_count_lambda,
};
use eigencount::montecarlo::{compare_to_density, product_experiment, run_experiment, SeedSpec, PUBLISHED_SEED};

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn gap(value: f64, target: f64) -> f64 {
    (value - target).abs()
}

fn show(r: &Result<f64, eigencount::Error>) -> String {
    match r {
        Ok(g) => format!("{g:.1e}"),
        Err(e) => format!("error: {e}"),
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    for k in 1..=6_u32 {
        let kk = i64::from(k);
        for lambda in -2 * kk..=2 * kk {
            let fast = fast_count_lambda(k, lambda);
            match brute_force_count_lambda(k, lambda) {
                Ok(b) if b == fast => {}
                other => bad.push(format!("k={k} lambda={lambda} brute={other:?} fast={fast}")),
            }
        }
    }
    let elapsed = start.elapsed();
    let ok = bad.is_empty() && elapsed < Duration::from_secs(60);
    outcome(ok, format!("{} mismatches in {:.2?} {}", bad.len(), elapsed, bad.join("; ")))
}

fn criterion_2() -> Outcome {
    let got = [
        brute_force_count_lambda(1, 0).ok(),
        brute_force_count_lambda(1, 1).ok(),
        Some(count_repeated_integer(1)),
        count_integer_spectrum(1).ok(),
    ];
    let want = [Some(33), Some(27), Some(19), Some(55)];
    outcome(got == want, format!("got {got:?}"))
}

fn criterion_3() -> Outcome {
    let at_one = gap(v_density(1.0), 1.0 + LN_2);
    let target = 4.0 / 9.0 * (7.0 * SQRT_2 + 4.0 + 3.0 * (SQRT_2 + 1.0).ln());
    let mass = integrate_density(DensityKind::V, -2.0, 2.0, 1e-11).map(|r| gap(r.value, target));
    let cont_sqrt2 = gap(v_piece(Piece::Middle, SQRT_2), v_piece(Piece::Outer, SQRT_2));
    let below = gap(v_density(1.0 - 1e-12), v_density(1.0));
    let above = gap(v_density(1.0 + 1e-12), v_density(1.0));
    let ok = at_one <= 1e-12
        && matches!(mass, Ok(g) if g <= 1e-8)
        && cont_sqrt2 <= 1e-9
        && below <= 1e-9
        && above <= 1e-9;
    outcome(
        ok,
        format!("V(1) gap {at_one:.1e}, mass gap {}, sqrt2 gap {cont_sqrt2:.1e}, one-sided gaps at 1 {below:.1e}/{above:.1e}", show(&mass)),
    )
}

fn criterion_4() -> Outcome {
    let at_one = gap(w_density(1.0), 15.0 / 32.0);
    let at_zero = gap(w_density(0.0), 5.0 / 9.0);
    let mass = integrate_density(DensityKind::W, -2.0, 2.0, 1e-11).map(|r| gap(r.value, 49.0 / 36.0));
    let peak = argmax_w();
    let ok = at_one <= 1e-12 && at_zero <= 1e-12 && matches!(mass, Ok(g) if g <= 1e-8) && gap(peak, 0.750_307_51) <= 1e-5;
    outcome(ok, format!("W(1) gap {at_one:.1e}, W(0) gap {at_zero:.1e}, mass gap {}, argmax {peak:.9}", show(&mass)))
}

fn criterion_5() -> Outcome {
    let h = 1e-3;
    let mut worst = (0.0_f64, 0.0_f64);
    for i in 1..40 {
        let delta = 0.05 * f64::from(i);
        if gap(delta, 1.0) < 0.02 || gap(delta, SQRT_2) < 0.02 {
            continue;
        }
        let (up, down) = match (f_w_minus(delta + h, 1e-10), f_w_minus(delta - h, 1e-10)) {
            (Ok(u), Ok(d)) => (u.value, d.value),
            (Err(e), _) | (_, Err(e)) => return outcome(false, format!("delta {delta}: {e}")),
        };
        let g = gap(-(up - down) / (2.0 * h), w_density(delta));
        if g > worst.0 {
            worst = (g, delta);
        }
    }
    let at_zero = f_w_minus(0.0, 1e-9).map(|r| gap(r.value, 49.0 / 72.0));
    let ok = worst.0 <= 1e-3 && matches!(at_zero, Ok(g) if g <= 1e-6);
    outcome(ok, format!("max derivative gap {:.2e} at delta {:.2}, F_W(0) gap {}", worst.0, worst.1, show(&at_zero)))
}

fn criterion_6() -> Outcome {
    let ks = [128_u32, 256, 512];
    let mut errors = Vec::new();
    let mut elapsed_512 = Duration::ZERO;
    for k in ks {
        let start = Instant::now();
        let count = fast_count_lambda(k, 0) as f64;
        if k == 512 {
            elapsed_512 = start.elapsed();
        }
        let kf = f64::from(k);
        let main = 24.0 * v_density(0.0) / (PI * PI) * kf * kf * kf.ln();
        errors.push((count / main - 1.0).abs());
    }
    let decreasing = errors.windows(2).all(|w| w[1] < w[0]);
    let ok = decreasing && errors[2] <= 0.35 && elapsed_512 < Duration::from_secs(10);
    outcome(ok, format!("|ratio - 1| at k=128,256,512: {errors:.4?}, k=512 in {elapsed_512:.2?}"))
}

fn criterion_7() -> Outcome {
    let mut worst = 0.0_f64;
    for delta in [0.0, 0.5, 1.0, 1.3, 1.8] {
        for beta in [10_u64, 100, 1000] {
            let b = beta as f64;
            let share = gap(b * cd_partial_sum(delta, beta), v_density(delta)) / (8.0 * (1.0 + b.ln()) / b);
            worst = worst.max(share);
        }
    }
    outcome(worst <= 1.0, format!("largest error is {worst:.3} of the bound"))
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let n = 1_000_000;
    let summary = match run_experiment(n, 40, SeedSpec::new(PUBLISHED_SEED, 0)) {
        Ok(s) => s,
        Err(e) => return outcome(false, e.to_string()),
    };
    let sup = match compare_to_density(&summary, DensityKind::W) {
        Ok(c) => c.sup_deviation,
        Err(e) => return outcome(false, e.to_string()),
    };
    let ks = match product_experiment(n, SeedSpec::new(PUBLISHED_SEED, 1)) {
        Ok(p) => p.ks_distance,
        Err(e) => return outcome(false, e.to_string()),
    };
    let elapsed = start.elapsed();
    let freq_gap = gap(summary.real_pair_frequency, 49.0 / 72.0);
    let ok = freq_gap <= 0.0015
        && sup <= 0.01
        && ks <= 0.002
        && summary.out_of_range == 0
        && summary.min_eigenvalue >= -2.0
        && summary.max_eigenvalue <= 2.0
        && elapsed < Duration::from_secs(60);
    outcome(
        ok,
        format!(
            "frequency gap {freq_gap:.2e}, sup {sup:.2e}, KS {ks:.2e}, range [{:.4}, {:.4}], {elapsed:.2?}",
            summary.min_eigenvalue, summary.max_eigenvalue
        ),
    )
}

fn run_cli(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("eigencount").chain(args.iter().copied());
    let code = dispatch(argv, &mut out, &mut err);
    (code, String::from_utf8_lossy(&out).into_owned())
}

fn trapezoid_from_csv(text: &str) -> Option<f64> {
    let mut rows = Vec::new();
    for line in text.lines().skip(1) {
        let (d, v) = line.split_once(',')?;
        rows.push((d.parse::<f64>().ok()?, v.parse::<f64>().ok()?));
    }
    Some(rows.windows(2).map(|w| 0.5 * (w[1].0 - w[0].0) * (w[0].1 + w[1].1)).sum())
}

fn criterion_9() -> Outcome {
    let (code, _) = run_cli(&["verify", "--suite", "all"]);
    let mut details = vec![format!("verify exit {code}")];
    let mut ok = code == EXIT_OK;
    for kind in ["UZ", "UR"] {
        let (code, csv) = run_cli(&["density", "--kind", kind]);
        match trapezoid_from_csv(&csv) {
            Some(area) if code == EXIT_OK => {
                ok &= gap(area, 2.0) <= 1e-6;
                details.push(format!("{kind} area {area:.9}"));
            }
            _ => {
                ok = false;
                details.push(format!("{kind} table unreadable (exit {code})"));
            }
        }
    }
    outcome(ok, details.join(", "))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("oracle equivalence for k <= 6", criterion_1),
        ("anchor counts", criterion_2),
        ("V identities", criterion_3),
        ("W identities and argmax", criterion_4),
        ("derivative of F_W matches W", criterion_5),
        ("asymptotic trend at lambda = 0", criterion_6),
        ("partial C D sums approach V", criterion_7),
        ("Monte Carlo at the published seed", criterion_8),
        ("CLI verify and area-2 tables", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let r = check();
        if !r.passed {
            failed += 1;
        }
        println!("{} criterion {}: {name} ({})", if r.passed { "PASS" } else { "FAIL" }, i + 1, r.detail);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
