//! Self-check suites run by `eigencount verify`.

use std::f64::consts::SQRT_2;

use crate::closedform::{
    argmax_w, constants, f_w_minus, integrate_density, v_density, v_piece, w_density, w_piece,
    DensityKind, Piece,
};
use crate::error::{invalid, Result};
use crate::exactcount::{
    brute_force_count_lambda, cd_partial_sum, count_integer_spectrum, count_repeated_integer,
    CoprimePairs,
};
use crate::montecarlo::{compare_to_density, product_experiment, run_experiment, SeedSpec, PUBLISHED_SEED};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    SmallK,
    Analytic,
    MonteCarlo,
    All,
}

impl std::str::FromStr for Suite {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "small-k" => Ok(Suite::SmallK),
            "analytic" => Ok(Suite::Analytic),
            "montecarlo" => Ok(Suite::MonteCarlo),
            "all" => Ok(Suite::All),
            other => Err(invalid(format!("unknown suite {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self { name: name.into(), passed, detail: detail.into() }
    }

    fn within(name: &str, value: f64, target: f64, tol: f64) -> Self {
        let gap = (value - target).abs();
        Self::new(name, gap <= tol, format!("value {value:.15} target {target:.15} gap {gap:.3e} tol {tol:.0e}"))
    }

    fn from_result(name: &str, r: Result<Check>) -> Self {
        r.unwrap_or_else(|e| Self::new(name, false, format!("error: {e}")))
    }
}

pub fn run(suite: Suite) -> Vec<Check> {
    match suite {
        Suite::SmallK => small_k(),
        Suite::Analytic => analytic(),
        Suite::MonteCarlo => monte_carlo(),
        Suite::All => {
            let mut v = small_k();
            v.extend(analytic());
            v.extend(monte_carlo());
            v
        }
    }
}

fn small_k() -> Vec<Check> {
    let mut checks = Vec::new();
    let mut mismatches = Vec::new();
    let mut compared = 0;
    for k in 1..=6_u32 {
        let pairs = CoprimePairs::new(k);
        let kk = i64::from(k);
        for lambda in -2 * kk..=2 * kk {
            compared += 1;
            match brute_force_count_lambda(k, lambda) {
                Ok(b) if b == pairs.count_lambda(lambda) => {}
                other => mismatches.push(format!("k={k} lambda={lambda}: brute {other:?} fast {}", pairs.count_lambda(lambda))),
            }
        }
    }
    checks.push(Check::new(
        "oracle equivalence k<=6",
        mismatches.is_empty(),
        if mismatches.is_empty() { format!("{compared} (k, lambda) pairs agree") } else { mismatches.join("; ") },
    ));
    let anchors = [
        ("|M^0(1)| = 33", brute_force_count_lambda(1, 0).ok(), 33),
        ("|M^1(1)| = 27", brute_force_count_lambda(1, 1).ok(), 27),
        ("repeated(1) = 19", Some(count_repeated_integer(1)), 19),
        ("|M^Z(1)| = 55", count_integer_spectrum(1).ok(), 55),
    ];
    for (name, got, want) in anchors {
        checks.push(Check::new(name, got == Some(want), format!("got {got:?}")));
    }
    checks
}

fn analytic() -> Vec<Check> {
    let c = constants();
    let mut checks = vec![
        Check::within("V(1) = 1 + log 2", v_density(1.0), c.v_at_one, 1e-12),
        Check::from_result(
            "integral of V",
            integrate_density(DensityKind::V, -2.0, 2.0, 1e-11).map(|r| Check::within("integral of V", r.value, c.v_mass, 1e-8)),
        ),
        Check::within("V continuous at sqrt 2", v_piece(Piece::Middle, SQRT_2), v_piece(Piece::Outer, SQRT_2), 1e-9),
        Check::within("V continuous at 1", v_piece(Piece::Inner, 1.0), v_piece(Piece::Middle, 1.0), 1e-9),
        Check::within("V(1 - 1e-12) -> V(1)", v_density(1.0 - 1e-12), c.v_at_one, 1e-9),
        Check::within("V(1 + 1e-12) -> V(1)", v_density(1.0 + 1e-12), c.v_at_one, 1e-9),
        Check::within("W(0) = 5/9", w_density(0.0), 5.0 / 9.0, 1e-12),
        Check::within("W(1) = 15/32", w_density(1.0), c.w_at_one, 1e-12),
        Check::within("W continuous at sqrt 2", w_piece(Piece::Middle, SQRT_2), w_piece(Piece::Outer, SQRT_2), 1e-9),
        Check::from_result(
            "integral of W",
            integrate_density(DensityKind::W, -2.0, 2.0, 1e-11).map(|r| Check::within("integral of W", r.value, c.w_mass, 1e-8)),
        ),
        Check::within("argmax W", argmax_w(), 0.750_307_51, 1e-5),
        Check::within("C", c.c_integer, 0.558_739_57, 5e-9),
        Check::from_result(
            "F_W(0) = 49/72",
            f_w_minus(0.0, 1e-9).map(|r| Check::within("F_W(0) = 49/72", r.value, c.real_pair_probability, 1e-6)),
        ),
    ];

    let h = 1e-3;
    let mut worst = (0.0_f64, 0.0_f64);
    let mut failure = None;
    for i in 1..20 {
        let delta = 0.1 * f64::from(i);
        if (delta - 1.0).abs() < 0.02 || (delta - SQRT_2).abs() < 0.02 {
            continue;
        }
        match (f_w_minus(delta + h, 1e-10), f_w_minus(delta - h, 1e-10)) {
            (Ok(up), Ok(down)) => {
                let gap = (-(up.value - down.value) / (2.0 * h) - w_density(delta)).abs();
                if gap > worst.0 {
                    worst = (gap, delta);
                }
            }
            (Err(e), _) | (_, Err(e)) => failure = Some(e),
        }
    }
    checks.push(match failure {
        Some(e) => Check::new("-dF_W/ddelta = W", false, format!("error: {e}")),
        None => Check::new(
            "-dF_W/ddelta = W",
            worst.0 <= 1e-3,
            format!("max gap {:.3e} at delta {:.2}", worst.0, worst.1),
        ),
    });

    let mut worst = 0.0_f64;
    for delta in [0.0, 0.5, 1.0, 1.3, 1.8] {
        for beta in [10_u64, 100, 1000] {
            let b = beta as f64;
            let excess = (b * cd_partial_sum(delta, beta) - v_density(delta)).abs() / (8.0 * (1.0 + b.ln()) / b);
            worst = worst.max(excess);
        }
    }
    checks.push(Check::new(
        "beta * sum C D -> V",
        worst <= 1.0,
        format!("largest error is {worst:.3} of the allowed 8(1 + log beta)/beta"),
    ));
    checks
}

fn monte_carlo() -> Vec<Check> {
    let n = 1_000_000;
    let seed = SeedSpec::new(PUBLISHED_SEED, 0);
    let c = constants();
    let mut checks = Vec::new();
    match run_experiment(n, 40, seed) {
        Ok(s) => {
            checks.push(Check::within("real-pair frequency", s.real_pair_frequency, c.real_pair_probability, 0.0015));
            checks.push(Check::within("histogram mass", s.total_mass(), c.w_mass, 0.003));
            checks.push(Check::new(
                "eigenvalues in [-2, 2]",
                s.out_of_range == 0,
                format!("range [{:.6}, {:.6}]", s.min_eigenvalue, s.max_eigenvalue),
            ));
            checks.push(Check::new("det < 0 iff eigenvalues straddle 0", s.sign_violations == 0, format!("{} violations", s.sign_violations)));
            checks.push(Check::from_result(
                "histogram vs W",
                compare_to_density(&s, DensityKind::W).map(|cmp| {
                    Check::new(
                        "histogram vs W",
                        cmp.sup_deviation <= 0.01,
                        format!("sup deviation {:.3e}, chi-square {:.2} on {} bins", cmp.sup_deviation, cmp.chi_square, cmp.degrees),
                    )
                }),
            ));
        }
        Err(e) => checks.push(Check::new("eigenvalue experiment", false, format!("error: {e}"))),
    }
    checks.push(Check::from_result(
        "product distribution KS",
        product_experiment(n, SeedSpec::new(PUBLISHED_SEED, 1)).map(|p| {
            Check::new("product distribution KS", p.ks_distance <= 0.002, format!("KS distance {:.3e}", p.ks_distance))
        }),
    ));
    checks
}
