//! Divisor-count sieves, primes, primorials, and the prime sums behind the
//! explicit divisor-count bounds.
//!
//! Real-valued sums are accumulated with [`CompensatedSum`].

use std::collections::BTreeMap;

use num_bigint::BigUint;

use crate::error::{invalid, Result};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Meissel–Mertens constant, `lim (sum_{p<=n} 1/p - loglog n)`.
pub const MEISSEL_MERTENS: f64 = 0.261_497_212_84;

/// Reference value of `sum_{k>=2} sum_p log(k+1)/p^k (1 - 1/p)`.
pub const S_E_INFINITY: f64 = 0.763_710_69;

/// Reference value of `sum_{k>=2} sum_p log(k+1)^2/p^k`.
pub const S_V_INFINITY: f64 = 1.338_79;

/// Prime zeta function at 2, `sum_p 1/p^2`.
pub const PRIME_ZETA_2: f64 = 0.452_247_420_041_065_5;

/// `c` in the validity threshold `N >= exp(exp(c / eps))`.
pub const HR_THRESHOLD_CONSTANT: f64 = 1.842;

/// `c` in the exceptional-set count `c / eps^2 * N / loglog N`.
pub const HR_COUNT_CONSTANT: f64 = 85.165;

/// Slack constant in the `|E(N) - log 2 loglog N|` estimate.
pub const E_BOUND_SLACK: f64 = 1.26;

/// Slack constant in the `V(N)^2` upper estimate.
pub const V_BOUND_SLACK: f64 = 1.47;

/// Constant term of the average degree as printed alongside Dirichlet's
/// divisor estimate: `2(2 gamma - 3)`.
pub const PRINTED_DEGREE_CONSTANT: f64 = 2.0 * (2.0 * EULER_GAMMA - 3.0);

/// Constant term obtained by subtracting `N` from Dirichlet's divisor sum:
/// `2(2 gamma - 2)`. This is the one the sieve agrees with.
pub const DIRICHLET_DEGREE_CONSTANT: f64 = 2.0 * (2.0 * EULER_GAMMA - 2.0);

/// Neumaier-style compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// Divisor counts `tau(1..=n_max)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TauTable {
    // tau[0] is an unused zero so that tau[n] is the count for n.
    tau: Vec<u32>,
}

impl TauTable {
    pub fn n_max(&self) -> u32 {
        (self.tau.len() - 1) as u32
    }

    /// `tau(n)` for `1 <= n <= n_max`.
    pub fn get(&self, n: u32) -> u32 {
        assert!(n >= 1 && n <= self.n_max(), "n={n} outside 1..={}", self.n_max());
        self.tau[n as usize]
    }

    /// Divisor counts of `1..=n_max`, in order.
    pub fn values(&self) -> &[u32] {
        &self.tau[1..]
    }

    /// Map from divisor count to how many `n <= n_max` have it.
    pub fn histogram(&self) -> BTreeMap<u32, u64> {
        let mut h = BTreeMap::new();
        for &t in self.values() {
            *h.entry(t).or_insert(0) += 1;
        }
        h
    }
}

/// Harmonic sieve of divisor counts, `O(n_max log n_max)`.
pub fn tau_sieve(n_max: u32) -> Result<TauTable> {
    if n_max == 0 {
        return Err(invalid("tau_sieve needs n_max >= 1"));
    }
    let n = n_max as usize;
    let mut tau = vec![0u32; n + 1];
    for d in 1..=n {
        for m in (d..=n).step_by(d) {
            tau[m] += 1;
        }
    }
    Ok(TauTable { tau })
}

/// `#{1 <= n <= n_max : tau(n) >= threshold}`.
pub fn count_tau_at_least(table: &TauTable, threshold: f64) -> u64 {
    table.values().iter().filter(|&&t| f64::from(t) >= threshold).count() as u64
}

/// `sum_{n <= n_max} tau(n)`. Equals the divisor graph's edge count plus `n_max`.
pub fn divisor_sum_total(table: &TauTable) -> u64 {
    table.values().iter().map(|&t| u64::from(t)).sum()
}

/// Exact mean degree of the divisor graph on `1..=n_max`.
pub fn average_degree(table: &TauTable) -> f64 {
    let n = u64::from(table.n_max());
    let edges = divisor_sum_total(table) - n;
    2.0 * edges as f64 / n as f64
}

/// Closed-form mean-degree estimates `2 log N + c` for both candidate constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DegreeEstimate {
    /// `2 log N + 2(2 gamma - 3)`.
    pub printed: f64,
    /// `2 log N + 2(2 gamma - 2)`.
    pub dirichlet: f64,
}

pub fn dirichlet_degree_estimate(n: u64) -> Result<DegreeEstimate> {
    if n == 0 {
        return Err(invalid("dirichlet_degree_estimate needs N >= 1"));
    }
    let main = 2.0 * (n as f64).ln();
    Ok(DegreeEstimate { printed: main + PRINTED_DEGREE_CONSTANT, dirichlet: main + DIRICHLET_DEGREE_CONSTANT })
}

/// All primes up to `limit`, ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeList {
    limit: u64,
    primes: Vec<u64>,
}

impl PrimeList {
    /// Sieve of Eratosthenes.
    pub fn up_to(limit: u64) -> Self {
        let n = limit as usize;
        let mut composite = vec![false; n + 1];
        let mut primes = Vec::new();
        for i in 2..=n {
            if composite[i] {
                continue;
            }
            primes.push(i as u64);
            let mut j = i.saturating_mul(i);
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
        PrimeList { limit, primes }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Primes `<= n` (which must not exceed the sieve limit).
    pub fn primes_up_to(&self, n: u64) -> &[u64] {
        assert!(n <= self.limit, "requested {n} beyond sieve limit {}", self.limit);
        let end = self.primes.partition_point(|&p| p <= n);
        &self.primes[..end]
    }
}

/// Product of the first `d` primes; `primorial(0) = 1`.
pub fn primorial(d: usize) -> BigUint {
    let mut primes = Vec::with_capacity(d);
    let mut limit = 16u64;
    while primes.len() < d {
        limit *= 2;
        primes = PrimeList::up_to(limit).primes;
    }
    primes.iter().take(d).fold(BigUint::from(1u32), |acc, &p| acc * p)
}

/// Smallest `d >= 0` with `2^d >= bound`, i.e. `ceil(log2(bound))` for `bound >= 1`.
pub fn ceil_log2(bound: f64) -> u32 {
    let mut d = 0u32;
    let mut pow = 1.0f64;
    while pow < bound {
        pow *= 2.0;
        d += 1;
    }
    d
}

/// `floor(N / p_d#)` with `d = ceil(log2 D)`: a lower bound on
/// `#{n <= N : tau(n) >= D}`, since every multiple of `p_d#` has at least
/// `2^d` divisors.
pub fn primorial_count_bound(n: u64, bound: f64) -> Result<u64> {
    if n == 0 {
        return Err(invalid("primorial_count_bound needs N >= 1"));
    }
    if bound.is_nan() || bound < 1.0 || !bound.is_finite() {
        return Err(invalid(format!("primorial_count_bound needs finite D >= 1, got {bound}")));
    }
    let d = ceil_log2(bound) as usize;
    let q = BigUint::from(n) / primorial(d);
    Ok(u64::try_from(q).expect("quotient is at most N"))
}

/// A size `N` that may be far beyond `u64`, carried as `loglog N`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HugeN {
    exact: Option<u64>,
    loglog: f64,
}

impl HugeN {
    /// Requires `n >= 3` so that `loglog n > 0`.
    pub fn from_u64(n: u64) -> Result<Self> {
        if n < 3 {
            return Err(invalid(format!("N must be >= 3, got {n}")));
        }
        Ok(HugeN { exact: Some(n), loglog: (n as f64).ln().ln() })
    }

    /// `N = exp(exp(loglog))`; `loglog` must be positive.
    pub fn from_loglog(loglog: f64) -> Result<Self> {
        if loglog.is_nan() || loglog <= 0.0 || !loglog.is_finite() {
            return Err(invalid(format!("loglog N must be finite and > 0, got {loglog}")));
        }
        Ok(HugeN { exact: None, loglog })
    }

    pub fn exact(&self) -> Option<u64> {
        self.exact
    }

    pub fn loglog(&self) -> f64 {
        self.loglog
    }

    pub fn log(&self) -> f64 {
        match self.exact {
            Some(n) => (n as f64).ln(),
            None => self.loglog.exp(),
        }
    }

    /// `N` as a float; `+inf` when it overflows.
    pub fn as_f64(&self) -> f64 {
        match self.exact {
            Some(n) => n as f64,
            None => self.log().exp(),
        }
    }
}

/// Validity threshold `exp(exp(1.842 / eps))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HrThreshold {
    /// The threshold itself; `+inf` once it overflows `f64`.
    pub value: f64,
    /// `1.842 / eps`, exact on the doubly-logarithmic scale.
    pub loglog: f64,
}

impl HrThreshold {
    /// Whether `N >= threshold`, decided on the loglog scale.
    pub fn is_met_by(&self, n: HugeN) -> bool {
        n.loglog() >= self.loglog
    }
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if epsilon > 0.0 && epsilon < 1.0 {
        Ok(())
    } else {
        Err(invalid(format!("epsilon must lie in (0,1), got {epsilon}")))
    }
}

pub fn hr_threshold(epsilon: f64) -> Result<HrThreshold> {
    check_epsilon(epsilon)?;
    let loglog = HR_THRESHOLD_CONSTANT / epsilon;
    Ok(HrThreshold { value: loglog.exp().exp(), loglog })
}

/// Raw count bound `N (1 - 85.165 / (eps^2 loglog N))`, unclamped.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HrCountBound {
    /// `1 - 85.165 / (eps^2 loglog N)`; negative means vacuous.
    pub fraction: f64,
    /// `N * fraction`; infinite when `N` is not representable.
    pub value: f64,
    /// `N >= hr_threshold(eps)`.
    pub certified: bool,
}

impl HrCountBound {
    /// The count bound says nothing (`fraction <= 0`).
    pub fn is_vacuous(&self) -> bool {
        self.fraction <= 0.0
    }
}

pub fn hr_count_bound(n: HugeN, epsilon: f64) -> Result<HrCountBound> {
    let threshold = hr_threshold(epsilon)?;
    let fraction = 1.0 - HR_COUNT_CONSTANT / (epsilon * epsilon * n.loglog());
    let value = match n.exact() {
        Some(n) => n as f64 * fraction,
        None if fraction == 0.0 => 0.0,
        None => n.as_f64() * fraction,
    };
    Ok(HrCountBound { fraction, value, certified: threshold.is_met_by(n) })
}

/// `sum_{p <= n} 1/p`.
pub fn mertens_prime_sum(n: u64) -> Result<f64> {
    if n < 2 {
        return Err(invalid("mertens_prime_sum needs N >= 2"));
    }
    let primes = PrimeList::up_to(n);
    Ok(primes.primes().iter().map(|&p| 1.0 / p as f64).collect::<CompensatedSum>().value())
}

/// Rosser–Schoenfeld bracket `(loglog N + M - 1/(2 log^2 N), loglog N + M + 1/log^2 N)`.
pub fn mertens_bracket(n: u64) -> (f64, f64) {
    let log = (n as f64).ln();
    let centre = log.ln() + MEISSEL_MERTENS;
    let inv = 1.0 / (log * log);
    (centre - 0.5 * inv, centre + inv)
}

/// Whether `sum_{p<=n} 1/p` lies strictly inside [`mertens_bracket`].
pub fn mertens_bracket_holds(n: u64) -> Result<bool> {
    let s = mertens_prime_sum(n)?;
    let (lo, hi) = mertens_bracket(n);
    Ok(lo < s && s < hi)
}

/// Calls `f(p, k, p^k)` for every prime power `p^k <= n`, `k >= 1`.
fn for_each_prime_power(n: u64, mut f: impl FnMut(u64, u32, u64)) {
    for &p in PrimeList::up_to(n).primes() {
        let mut k = 1u32;
        let mut pk = p;
        loop {
            f(p, k, pk);
            match pk.checked_mul(p) {
                Some(next) if next <= n => {
                    pk = next;
                    k += 1;
                }
                _ => break,
            }
        }
    }
}

/// `E(N) = sum_{p^k <= N} log(k+1) / p^k * (1 - 1/p)`.
pub fn e_of_n(n: u64) -> Result<f64> {
    if n < 2 {
        return Err(invalid("E(N) needs N >= 2"));
    }
    let mut acc = CompensatedSum::new();
    for_each_prime_power(n, |p, k, pk| {
        acc.add(f64::from(k + 1).ln() / pk as f64 * (1.0 - 1.0 / p as f64));
    });
    Ok(acc.value())
}

/// `V(N)^2 = sum_{p^k <= N} log(k+1)^2 / p^k`.
pub fn v2_of_n(n: u64) -> Result<f64> {
    if n < 2 {
        return Err(invalid("V(N)^2 needs N >= 2"));
    }
    let mut acc = CompensatedSum::new();
    for_each_prime_power(n, |_, k, pk| {
        let l = f64::from(k + 1).ln();
        acc.add(l * l / pk as f64);
    });
    Ok(acc.value())
}

/// Both sides of the `E(N)` estimate: `(|E(N) - log 2 loglog N|, 1.26 + log 2 / log^2 N)`.
pub fn e_bound_sides(n: u64) -> Result<(f64, f64)> {
    let e = e_of_n(n)?;
    let log = (n as f64).ln();
    let lhs = (e - std::f64::consts::LN_2 * log.ln()).abs();
    Ok((lhs, E_BOUND_SLACK + std::f64::consts::LN_2 / (log * log)))
}

/// Both sides of the `V(N)^2` estimate: `(V(N)^2, log^2 2 loglog N + 1.47 + log^2 2 / log^2 N)`.
pub fn v_bound_sides(n: u64) -> Result<(f64, f64)> {
    let v2 = v2_of_n(n)?;
    let log = (n as f64).ln();
    let l2 = std::f64::consts::LN_2 * std::f64::consts::LN_2;
    Ok((v2, l2 * log.ln() + V_BOUND_SLACK + l2 / (log * log)))
}

fn higher_power_sum(k_max: u32, p_limit: u64, weight: impl Fn(u64, u32) -> f64) -> f64 {
    let primes = PrimeList::up_to(p_limit);
    let mut terms = Vec::new();
    for k in 2..=k_max {
        for &p in primes.primes() {
            let t = weight(p, k);
            if t == 0.0 {
                break;
            }
            terms.push(t);
        }
    }
    // smallest first
    terms.sort_by(|a, b| a.partial_cmp(b).expect("finite terms"));
    terms.into_iter().collect::<CompensatedSum>().value()
}

/// `sum_{2 <= k <= k_max} sum_{p <= p_limit} log(k+1)/p^k (1 - 1/p)`.
pub fn s_e_partial(k_max: u32, p_limit: u64) -> f64 {
    higher_power_sum(k_max, p_limit, |p, k| {
        let pf = p as f64;
        f64::from(k + 1).ln() * pf.powi(-(k as i32)) * (1.0 - 1.0 / pf)
    })
}

/// `sum_{2 <= k <= k_max} sum_{p <= p_limit} log(k+1)^2/p^k`.
pub fn s_v_partial(k_max: u32, p_limit: u64) -> f64 {
    higher_power_sum(k_max, p_limit, |p, k| {
        let l = f64::from(k + 1).ln();
        l * l * (p as f64).powi(-(k as i32))
    })
}

/// `sum_{p <= p_limit} 1/p^2`.
pub fn sum_inverse_prime_squares(p_limit: u64) -> f64 {
    let primes = PrimeList::up_to(p_limit);
    // summed from the largest prime down, smallest terms first
    primes
        .primes()
        .iter()
        .rev()
        .map(|&p| {
            let pf = p as f64;
            1.0 / (pf * pf)
        })
        .collect::<CompensatedSum>()
        .value()
}
