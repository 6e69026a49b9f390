//! Counting 2x2 integer matrices with entries in `[-k, k]` that have a given
//! integer eigenvalue.
//!
//! `M` has eigenvalue `lambda` exactly when `M - lambda I` is singular. A
//! singular matrix either has two zero entries or factors as
//! `[[a c, b c], [a d, b d]]` with `gcd(a, b) = 1`, uniquely up to a global
//! sign. The fast counter adds the zero-entry class in closed form to half the
//! number of such quadruples satisfying the entry bounds, and the quadruple
//! sum reduces to products of one-dimensional interval counts.

use rayon::prelude::*;

use crate::closedform::{constants, v_density};
use crate::error::{invalid, Error, Result};
use crate::matrix::gcd;

/// Default ceiling on `(2k+1)^4` for exhaustive enumeration.
pub const DEFAULT_ENUMERATION_LIMIT: u128 = 1_000_000_000;

/// Mobius function values `mu(1..=n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MobiusTable {
    values: Vec<i8>,
}

impl MobiusTable {
    pub fn limit(&self) -> usize {
        self.values.len()
    }

    /// `mu(m)` for `1 <= m <= limit`.
    pub fn get(&self, m: usize) -> i8 {
        self.values[m - 1]
    }

    pub fn values(&self) -> &[i8] {
        &self.values
    }

    /// `sum_{d <= n} mu(d) / d^2`.
    pub fn inverse_square_sum(&self) -> f64 {
        self.values
            .iter()
            .enumerate()
            .map(|(i, &m)| {
                let d = (i + 1) as f64;
                f64::from(m) / (d * d)
            })
            .sum()
    }
}

/// Linear sieve for the Mobius function.
pub fn mobius_sieve(n: usize) -> Result<MobiusTable> {
    if n == 0 {
        return Err(invalid("mobius sieve needs n >= 1"));
    }
    let mut mu = vec![0_i8; n + 1];
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    mu[1] = 1;
    for i in 2..=n {
        if !composite[i] {
            primes.push(i);
            mu[i] = -1;
        }
        for &p in &primes {
            let ip = i * p;
            if ip > n {
                break;
            }
            composite[ip] = true;
            if i % p == 0 {
                mu[ip] = 0;
                break;
            }
            mu[ip] = -mu[i];
        }
    }
    mu.remove(0);
    Ok(MobiusTable { values: mu })
}

/// Number of nonzero integers in `[lo, hi]`.
pub fn nonzero_count(lo: i64, hi: i64) -> u64 {
    if hi < lo {
        return 0;
    }
    let n = (hi - lo + 1) as u64;
    if lo <= 0 && 0 <= hi {
        n - 1
    } else {
        n
    }
}

fn floor_div(a: i64, b: i64) -> i64 {
    a.div_euclid(b)
}

fn ceil_div(a: i64, b: i64) -> i64 {
    -(-a).div_euclid(b)
}

/// `N_{k,lambda}(x, y)` for positive `x, y` in either order.
fn pair_count(k: i64, lambda: i64, x: i64, y: i64) -> u64 {
    // |x c + lambda| <= k and |y c| <= k
    let c_lo = ceil_div(-k - lambda, x).max(ceil_div(-k, y));
    let c_hi = floor_div(k - lambda, x).min(floor_div(k, y));
    let cs = nonzero_count(c_lo, c_hi);
    if cs == 0 {
        return 0;
    }
    // |x d| <= k and |y d + lambda| <= k
    let d_lo = ceil_div(-k, x).max(ceil_div(-k - lambda, y));
    let d_hi = floor_div(k, x).min(floor_div(k - lambda, y));
    cs * nonzero_count(d_lo, d_hi)
}

/// Number of nonzero pairs `(c, d)` with `|x c + lambda|, |y c|, |x d|,
/// |y d + lambda| <= k`.
pub fn n_k_lambda(k: u32, lambda: i64, x: i64, y: i64) -> Result<u64> {
    let kk = i64::from(k);
    if k == 0 {
        return Err(invalid("k must be positive"));
    }
    if !(0..=2 * kk).contains(&lambda) {
        return Err(invalid(format!("lambda = {lambda} outside [0, 2k]")));
    }
    if !(1 <= x && x <= y && y <= kk) {
        return Err(invalid(format!("need 1 <= x <= y <= k, got x = {x}, y = {y}")));
    }
    Ok(pair_count(kk, lambda, x, y))
}

/// Continuum interval-length factors approximating `N_{k,lambda}(x, y) / k^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CdPair {
    pub c: f64,
    pub d: f64,
}

pub fn cd_factors(delta: f64, x: f64, y: f64) -> Result<CdPair> {
    if !(0.0..=2.0).contains(&delta) {
        return Err(invalid(format!("delta = {delta} outside [0, 2]")));
    }
    if !(x > 0.0 && x <= y) {
        return Err(invalid(format!("need 0 < x <= y, got x = {x}, y = {y}")));
    }
    Ok(cd_unchecked(delta, x, y))
}

fn cd_unchecked(delta: f64, x: f64, y: f64) -> CdPair {
    let c = ((1.0 - delta) / x + 1.0 / y).min(2.0 / y).max(0.0);
    let d = ((1.0 - delta) / y + 1.0 / x).min(2.0 / y);
    CdPair { c, d }
}

/// `sum_{1 <= alpha < beta} C(delta; alpha, beta) D(delta; alpha, beta)`.
pub fn cd_partial_sum(delta: f64, beta: u64) -> f64 {
    let b = beta as f64;
    (1..beta)
        .map(|alpha| {
            let CdPair { c, d } = cd_unchecked(delta, alpha as f64, b);
            c * d
        })
        .sum()
}

/// Exhaustive count of `M` in `M_2(k)` with eigenvalue `lambda`.
pub fn brute_force_count_lambda(k: u32, lambda: i64) -> Result<u64> {
    brute_force_count_lambda_with_limit(k, lambda, DEFAULT_ENUMERATION_LIMIT)
}

pub fn brute_force_count_lambda_with_limit(k: u32, lambda: i64, limit: u128) -> Result<u64> {
    check_enumeration(k, limit)?;
    let k = i64::from(k);
    let count = (-k..=k)
        .into_par_iter()
        .map(|a| {
            let mut n = 0_u64;
            for d in -k..=k {
                let target = (a - lambda) * (d - lambda);
                for b in -k..=k {
                    for c in -k..=k {
                        if b * c == target {
                            n += 1;
                        }
                    }
                }
            }
            n
        })
        .sum();
    Ok(count)
}

fn check_enumeration(k: u32, limit: u128) -> Result<()> {
    let cells = (2 * u128::from(k) + 1).pow(4);
    if cells > limit {
        return Err(Error::EnumerationTooLarge { cells, limit });
    }
    Ok(())
}

/// Coprime pairs `1 <= x < y <= k`, the index set of the quadruple sum.
#[derive(Debug, Clone)]
pub struct CoprimePairs {
    k: u32,
    pairs: Vec<(u32, u32)>,
}

impl CoprimePairs {
    pub fn new(k: u32) -> Self {
        let pairs = (2..=k)
            .into_par_iter()
            .flat_map_iter(|y| {
                (1..y)
                    .filter(move |&x| gcd(i64::from(x), i64::from(y)) == 1)
                    .map(move |x| (x, y))
            })
            .collect();
        Self { k, pairs }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Exact `|M_2^lambda(k)|`.
    pub fn count_lambda(&self, lambda: i64) -> u64 {
        let k = i64::from(self.k);
        let lambda = lambda.abs();
        if lambda > 2 * k {
            return 0;
        }
        zero_pattern_count(self.k, lambda) + self.quadruple_count(lambda) / 2
    }

    /// Number of quadruples `(a, b, c, d)`, all nonzero with `gcd(a, b) = 1`,
    /// such that `[[a c, b c], [a d, b d]] + lambda I` lies in `M_2(k)`.
    ///
    /// Sign flips of `a` or `b` and the swap `a <-> b` leave `N` unchanged,
    /// so the signed sum is `4 (N(1,1) + 2 sum_{x<y} N(x,y))`.
    pub fn quadruple_count(&self, lambda: i64) -> u64 {
        let k = i64::from(self.k);
        let lambda = lambda.abs();
        if self.k == 0 || lambda > 2 * k {
            return 0;
        }
        let off_diagonal: u64 = self
            .pairs
            .par_iter()
            .map(|&(x, y)| pair_count(k, lambda, i64::from(x), i64::from(y)))
            .sum();
        4 * (pair_count(k, lambda, 1, 1) + 2 * off_diagonal)
    }
}

/// Shifted matrices `M - lambda I` in the box that are singular with a zero
/// entry. Such a matrix has `ps = 0` and `qr = 0` on its diagonal `(p, s)` and
/// off-diagonal `(q, r)`, and the two factors count independently.
pub fn zero_pattern_count(k: u32, lambda: i64) -> u64 {
    let lambda = lambda.unsigned_abs();
    let k = u64::from(k);
    // the diagonal range [-k - lambda, k - lambda] contains 0 iff lambda <= k
    if lambda > k {
        0
    } else {
        (4 * k + 1) * (4 * k + 1)
    }
}

/// Exact `|M_2^lambda(k)|` without enumeration.
pub fn fast_count_lambda(k: u32, lambda: i64) -> u64 {
    if lambda.unsigned_abs() > 2 * u64::from(k) {
        return 0;
    }
    CoprimePairs::new(k).count_lambda(lambda)
}

/// `sum_{coprime 1 <= x < y <= k} N(x, y)` rewritten with the Mobius function
/// as `sum_d mu(d) sum_{1 <= alpha < beta <= k/d} N(d alpha, d beta)`.
pub fn coprime_sum_via_mobius(k: u32, lambda: i64, mobius: &MobiusTable) -> Result<i128> {
    let kk = i64::from(k);
    if mobius.limit() < k as usize {
        return Err(invalid("mobius table shorter than k"));
    }
    let lambda = lambda.abs();
    let total = (1..=kk)
        .into_par_iter()
        .map(|d| {
            let mu = mobius.get(d as usize);
            if mu == 0 {
                return 0_i128;
            }
            let top = kk / d;
            let mut s = 0_i128;
            for beta in 2..=top {
                for alpha in 1..beta {
                    s += i128::from(pair_count(kk, lambda, d * alpha, d * beta));
                }
            }
            i128::from(mu) * s
        })
        .sum();
    Ok(total)
}

/// `4 k^2 sum_{d <= k} mu(d)/d^2 sum_{beta <= k/d} S(lambda/k, beta)` where `S`
/// is [`cd_partial_sum`]: the continuum approximation of the quadruple sum
/// before the per-beta asymptotics are applied.
pub fn mobius_cd_main_term(k: u32, lambda: i64, mobius: &MobiusTable) -> Result<f64> {
    if k == 0 {
        return Err(invalid("k must be positive"));
    }
    if mobius.limit() < k as usize {
        return Err(invalid("mobius table shorter than k"));
    }
    let kf = f64::from(k);
    let delta = (lambda.abs() as f64 / kf).min(2.0);
    let sum: f64 = (1..=u64::from(k))
        .map(|d| {
            let mu = mobius.get(d as usize);
            if mu == 0 {
                return 0.0;
            }
            let inner: f64 = (1..=u64::from(k) / d).map(|b| cd_partial_sum(delta, b)).sum();
            f64::from(mu) * inner / (d * d) as f64
        })
        .sum();
    Ok(4.0 * kf * kf * sum)
}

/// `(24 V(lambda/k) / pi^2) k^2 log k`.
pub fn asymptotic_count_lambda(k: u32, lambda: i64) -> f64 {
    let kf = f64::from(k);
    24.0 * v_density(lambda as f64 / kf) / (std::f64::consts::PI.powi(2)) * kf * kf * kf.ln()
}

/// `16 C k^3 log k`, the leading term of `|M_2^Z(k)|`.
pub fn asymptotic_integer_spectrum(k: u32) -> f64 {
    let kf = f64::from(k);
    16.0 * constants().c_integer * kf.powi(3) * kf.ln()
}

/// Which repeated-eigenvalue matrices to count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RepeatedScope {
    /// `disc = 0` and the repeated eigenvalue `(a+d)/2` is an integer.
    IntegerEigenvalue,
    /// Every matrix with `disc = 0`.
    All,
}

/// Matrices in `M_2(k)` with `disc = 0` and an integer eigenvalue.
pub fn count_repeated_integer(k: u32) -> u64 {
    count_repeated(k, RepeatedScope::IntegerEigenvalue)
}

/// Counts `4bc = -(a-d)^2`. For `a = d` this is `bc = 0`. Otherwise `a - d =
/// 2m` must be even and `bc = -m^2`, counted by splitting `m^2` over divisors
/// `b <= k` with both signs.
///
/// For integer entries `disc = 0` forces `a = d (mod 2)`, so both scopes
/// agree; the distinction only matters in the statement.
pub fn count_repeated(k: u32, scope: RepeatedScope) -> u64 {
    let _ = scope;
    let k = u64::from(k);
    let diagonal = (2 * k + 1) * (4 * k + 1);
    let off: u64 = (1..=k)
        .into_par_iter()
        .map(|m| {
            let sq = m * m;
            let splits = (1..=k.min(sq))
                .filter(|&b| sq % b == 0 && sq / b <= k)
                .count() as u64;
            // ordered (a, d) with a - d = +-2m, times the sign choice of (b, c)
            let diag_pairs = 2 * (2 * k + 1 - 2 * m);
            diag_pairs * 2 * splits
        })
        .sum();
    diagonal + off
}

/// Exact `|M_2^Z(k)|`: each matrix with integer eigenvalues is counted twice
/// in the sum over lambda, once when the eigenvalue is repeated.
pub fn count_integer_spectrum(k: u32) -> Result<u64> {
    let pairs = CoprimePairs::new(k);
    let kk = i64::from(k);
    let per_lambda: u64 = (-2 * kk..=2 * kk)
        .into_par_iter()
        .map(|l| pairs.count_lambda(l))
        .sum();
    let total = per_lambda + count_repeated_integer(k);
    if total % 2 != 0 {
        return Err(Error::Inconsistent(format!(
            "sum over lambda plus repeated count is odd ({total}) at k = {k}"
        )));
    }
    Ok(total / 2)
}

/// Which counters to run for a [`CountReport`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Methods {
    pub brute: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CountReport {
    pub k: u32,
    pub lambda: i64,
    pub brute: Option<u64>,
    pub fast: u64,
    pub main_term: f64,
    pub ratio: Option<f64>,
}

impl CountReport {
    pub fn agrees(&self) -> bool {
        self.brute.is_none_or(|b| b == self.fast)
    }
}

pub fn count_report(k: u32, lambda: i64, methods: Methods) -> Result<CountReport> {
    if k == 0 {
        return Err(invalid("k must be positive"));
    }
    let brute = if methods.brute {
        Some(brute_force_count_lambda(k, lambda)?)
    } else {
        None
    };
    Ok(build_report(k, lambda, brute, fast_count_lambda(k, lambda)))
}

/// Reports for every `lambda` in `[-2k, 2k]`, sharing one coprime-pair table.
pub fn count_reports_all(k: u32, methods: Methods) -> Result<Vec<CountReport>> {
    if k == 0 {
        return Err(invalid("k must be positive"));
    }
    if methods.brute {
        check_enumeration(k, DEFAULT_ENUMERATION_LIMIT)?;
    }
    let pairs = CoprimePairs::new(k);
    let kk = i64::from(k);
    (-2 * kk..=2 * kk)
        .map(|l| {
            let brute = if methods.brute {
                Some(brute_force_count_lambda(k, l)?)
            } else {
                None
            };
            Ok(build_report(k, l, brute, pairs.count_lambda(l)))
        })
        .collect()
}

fn build_report(k: u32, lambda: i64, brute: Option<u64>, fast: u64) -> CountReport {
    let main_term = if lambda.unsigned_abs() > 2 * u64::from(k) {
        0.0
    } else {
        asymptotic_count_lambda(k, lambda)
    };
    let ratio = (main_term != 0.0).then(|| fast as f64 / main_term);
    CountReport { k, lambda, brute, fast, main_term, ratio }
}
