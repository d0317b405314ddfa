//! Closed-form lower bounds on the expected largest SCC.
//!
//! Every bound has the shape `count * triangle_factor(x, rho)` where
//! `count` is a number of `n <= N` with `tau(n) - 2 >= x` and
//!
//! ```text
//! triangle_factor(x, rho) = 1 - rho (2 rho - rho^2)^x - (1 - rho)(1 - rho^2)^x
//! ```
//!
//! is the probability that some triangle `1, d, m` through a divisor `d` of
//! `m` is cyclic, which puts `m` in the component of vertex 1.

use std::fmt;

use num_bigint::BigUint;

use crate::error::{invalid, Result};
use crate::format::sig17;
use crate::graph::check_rho;
use crate::numtheory::{ceil_log2, hr_count_bound, primorial, primorial_count_bound, HugeN, TauTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    Theorem1,
    Corollary4,
    Corollary5,
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundKind::Theorem1 => "theorem1",
            BoundKind::Corollary4 => "cor4",
            BoundKind::Corollary5 => "cor5",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundReport {
    pub kind: BoundKind,
    pub n: HugeNOrSmall,
    pub rho: f64,
    /// `x` for theorem1/cor5, `epsilon` for cor4.
    pub param: f64,
    /// Exponent used in the triangle factor.
    pub x: f64,
    pub value_raw: f64,
    /// `value_raw` clamped into `[0, N]`.
    pub value: f64,
    /// `value / N`.
    pub ratio: f64,
    pub certified: bool,
}

/// `N` as given to a bound: small enough to print, or only known by `loglog N`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HugeNOrSmall {
    Small(u64),
    Huge(HugeN),
}

impl HugeNOrSmall {
    pub fn as_f64(&self) -> f64 {
        match self {
            HugeNOrSmall::Small(n) => *n as f64,
            HugeNOrSmall::Huge(h) => h.as_f64(),
        }
    }
}

impl fmt::Display for HugeNOrSmall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HugeNOrSmall::Small(n) => write!(f, "{n}"),
            HugeNOrSmall::Huge(h) => match h.exact() {
                Some(n) => write!(f, "{n}"),
                None => write!(f, "exp(exp({}))", sig17(h.loglog())),
            },
        }
    }
}

pub const CSV_HEADER: &str = "kind,N,rho,param,value_raw,value_clamped,certified";

impl BoundReport {
    /// `kind,N,rho,param,value_raw,value_clamped,certified`.
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.kind,
            self.n,
            sig17(self.rho),
            sig17(self.param),
            sig17(self.value_raw),
            sig17(self.value),
            self.certified
        )
    }
}

/// `1 - rho (2 rho - rho^2)^x - (1 - rho)(1 - rho^2)^x` for real `x >= 0`.
/// Huge exponents underflow cleanly to a factor of 1.
pub fn triangle_factor(x: f64, rho: f64) -> f64 {
    let a = 2.0 * rho - rho * rho;
    let b = 1.0 - rho * rho;
    let pow = |base: f64| {
        if x.fract() == 0.0 && x.abs() <= f64::from(i32::MAX) {
            base.powi(x as i32)
        } else {
            base.powf(x)
        }
    };
    1.0 - rho * pow(a) - (1.0 - rho) * pow(b)
}

/// Lower bound on `P[m in component of 1]` for `m` with `tau(m)` divisors.
pub fn triangle_prob(tau_m: u32, rho: f64) -> Result<f64> {
    if tau_m < 2 {
        return Err(invalid(format!("triangle probability needs tau(m) >= 2, got {tau_m}")));
    }
    check_rho(rho)?;
    Ok(triangle_factor(f64::from(tau_m - 2), rho).clamp(0.0, 1.0))
}

/// `y * triangle_factor(x, rho)`, valid whenever at least `y` integers
/// `n <= N` have `tau(n) - 2 >= x`.
pub fn theorem1_bound(x: u64, y: f64, rho: f64) -> f64 {
    y * triangle_factor(x as f64, rho)
}

#[allow(clippy::too_many_arguments)]
fn clamp_report(
    kind: BoundKind,
    n: HugeNOrSmall,
    rho: f64,
    param: f64,
    x: f64,
    raw: f64,
    positive: bool,
    certified: bool,
) -> BoundReport {
    let nf = n.as_f64();
    let value = if positive && raw > 0.0 { raw.min(nf) } else { 0.0 };
    BoundReport { kind, n, rho, param, x, value_raw: raw, value, ratio: value / nf, certified }
}

/// The exact-count bound maximised over `x`, using the counts from `table`.
pub fn best_theorem1_bound(table: &TauTable, rho: f64) -> Result<BoundReport> {
    check_rho(rho)?;
    let n = u64::from(table.n_max());
    let hist = table.histogram();
    // y(x) only changes at x = tau - 2 for the taus present in the table
    let mut best = (0u64, 0.0f64, 0.0f64);
    let mut at_least = 0u64;
    for (&t, &count) in hist.iter().rev() {
        at_least += count;
        if t < 2 {
            continue;
        }
        let x = u64::from(t - 2);
        let v = theorem1_bound(x, at_least as f64, rho);
        if v > best.2 || (v == best.2 && x < best.0) {
            best = (x, at_least as f64, v);
        }
    }
    let (x, _, v) = best;
    Ok(clamp_report(BoundKind::Theorem1, HugeNOrSmall::Small(n), rho, x as f64, x as f64, v, true, true))
}

fn check_open_rho(rho: f64) -> Result<()> {
    if rho > 0.0 && rho < 1.0 {
        Ok(())
    } else {
        Err(invalid(format!("rho must lie in (0,1) here, got {rho}")))
    }
}

/// `x_N = log(N)^(log 2 (1 - eps)) - 2`.
pub fn x_n(n: HugeN, epsilon: f64) -> f64 {
    (std::f64::consts::LN_2 * (1.0 - epsilon) * n.loglog()).exp() - 2.0
}

/// Large-`N` bound from the effective divisor-count estimate; certified only
/// when `N >= exp(exp(1.842 / eps))`.
pub fn corollary4_bound(n: HugeN, epsilon: f64, rho: f64) -> Result<BoundReport> {
    check_open_rho(rho)?;
    let count = hr_count_bound(n, epsilon)?;
    let x = x_n(n, epsilon);
    let factor = triangle_factor(x, rho);
    let raw = if count.fraction == 0.0 { 0.0 } else { count.value * factor };
    let mut r = clamp_report(
        BoundKind::Corollary4,
        HugeNOrSmall::Huge(n),
        rho,
        epsilon,
        x,
        raw,
        count.fraction > 0.0 && factor > 0.0,
        count.certified,
    );
    if r.value > 0.0 {
        r.ratio = count.fraction * factor;
    }
    Ok(r)
}

/// Primorial bound: `floor(N / p_d#) * triangle_factor(x, rho)` with
/// `d = ceil(log2(x + 2))`. Holds for every `N`.
pub fn corollary5_bound(n: u64, rho: f64, x: u64) -> Result<BoundReport> {
    check_open_rho(rho)?;
    let count = primorial_count_bound(n, x as f64 + 2.0)?;
    let raw = theorem1_bound(x, count as f64, rho);
    Ok(clamp_report(BoundKind::Corollary5, HugeNOrSmall::Small(n), rho, x as f64, x as f64, raw, true, true))
}

/// [`corollary5_bound`] maximised over `x`. Only `x` with `p_d# <= N` can
/// give a nonzero count, so the search is finite.
pub fn best_corollary5_bound(n: u64, rho: f64) -> Result<BoundReport> {
    check_open_rho(rho)?;
    let mut best = corollary5_bound(n, rho, 0)?;
    let nb = BigUint::from(n);
    let mut d = 1u32;
    while primorial(d as usize) <= nb {
        let lo = (1u64 << (d - 1)).saturating_sub(1);
        let hi = (1u64 << d) - 2;
        for x in lo..=hi {
            debug_assert_eq!(ceil_log2(x as f64 + 2.0), d);
            let r = corollary5_bound(n, rho, x)?;
            if r.value > best.value {
                best = r;
            }
        }
        d += 1;
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::{count_tau_at_least, hr_threshold, tau_sieve};
    use proptest::prelude::*;

    #[test]
    fn triangle_examples() {
        assert!(triangle_prob(2, 0.3).unwrap().abs() < 1e-15);
        assert_eq!(triangle_prob(3, 0.5).unwrap(), 0.25);
        for t in 2..20 {
            assert_eq!(triangle_prob(t, 0.0).unwrap(), 0.0);
            assert_eq!(triangle_prob(t, 1.0).unwrap(), 0.0);
        }
        assert!(triangle_prob(1, 0.5).is_err());
        assert!(triangle_prob(3, 1.5).is_err());
    }

    #[test]
    fn theorem1_examples() {
        for x in 0..12u64 {
            let v = theorem1_bound(x, 37.0, 0.5);
            assert!((v - 37.0 * (1.0 - 0.75f64.powi(x as i32))).abs() < 1e-12);
        }
        assert_eq!(theorem1_bound(0, 100.0, 0.3), 0.0);
        let v = theorem1_bound(5, 100.0, 0.3);
        let expect = 100.0 * (1.0 - 0.3 * 0.51f64.powi(5) - 0.7 * 0.91f64.powi(5));
        assert!((v - expect).abs() < 1e-12);
    }

    #[test]
    fn best_theorem1() {
        let r = best_theorem1_bound(&tau_sieve(1).unwrap(), 0.5).unwrap();
        assert_eq!(r.value, 0.0);
        let r = best_theorem1_bound(&tau_sieve(4096).unwrap(), 0.5).unwrap();
        assert!(r.value > 0.0 && r.value <= 4096.0);
        // brute force over every x
        let t = tau_sieve(4096).unwrap();
        let brute = (0..40u64)
            .map(|x| theorem1_bound(x, count_tau_at_least(&t, x as f64 + 2.0) as f64, 0.5))
            .fold(0.0, f64::max);
        assert!((r.value - brute).abs() < 1e-9);
    }

    #[test]
    fn corollary4() {
        let n = HugeN::from_u64(1_000_000).unwrap();
        let r = corollary4_bound(n, 0.5, 0.5).unwrap();
        assert!(!r.certified);
        assert_eq!(r.value, 0.0);

        let eps = 0.5;
        let at_zero = HugeN::from_loglog(85.165 / (eps * eps)).unwrap();
        assert_eq!(corollary4_bound(at_zero, eps, 0.5).unwrap().value, 0.0);

        let huge = HugeN::from_loglog(1000.0).unwrap();
        let r = corollary4_bound(huge, 0.5, 0.5).unwrap();
        assert!(r.certified);
        let x = x_n(huge, 0.5);
        assert!((x - ((2f64.ln() / 2.0) * 1000.0).exp() + 2.0).abs() / x < 1e-12);
        // (3/4)^x_N underflows, so the ratio is the count fraction
        assert!((r.ratio - (1.0 - 85.165 / 250.0)).abs() < 1e-12);
        assert!((r.ratio - 0.65934).abs() < 1e-5);
        assert!(hr_threshold(0.5).unwrap().is_met_by(huge));

        assert!(corollary4_bound(huge, 0.5, 0.0).is_err());
        assert!(corollary4_bound(huge, 0.5, 1.0).is_err());
        assert!(corollary4_bound(huge, 1.0, 0.5).is_err());
    }

    #[test]
    fn corollary5() {
        assert_eq!(corollary5_bound(4096, 0.5, 0).unwrap().value, 0.0);
        let r = corollary5_bound(4096, 0.5, 6).unwrap();
        assert!((r.value - 136.0 * (1.0 - 729.0 / 4096.0)).abs() < 1e-9);
        assert_eq!(best_corollary5_bound(1, 0.5).unwrap().value, 0.0);
        let best = best_corollary5_bound(4096, 0.5).unwrap();
        assert!(best.value >= r.value);
        assert!(best.certified);
        assert!(corollary5_bound(10, 0.0, 1).is_err());
    }

    #[test]
    fn corollary5_below_true_count_theorem1() {
        let t = tau_sieve(5000).unwrap();
        for &n in &[1u32, 2, 10, 64, 500, 2310, 5000] {
            let sub = tau_sieve(n).unwrap();
            for x in 0..40u64 {
                for rho in [0.1, 0.5, 0.9] {
                    let c5 = corollary5_bound(u64::from(n), rho, x).unwrap();
                    let y = count_tau_at_least(&sub, x as f64 + 2.0) as f64;
                    assert!(c5.value <= theorem1_bound(x, y, rho) + 1e-12);
                    assert!(c5.value <= f64::from(n));
                }
            }
        }
        assert_eq!(t.n_max(), 5000);
    }

    #[test]
    fn csv() {
        let r = corollary5_bound(4096, 0.5, 6).unwrap();
        assert!(r.csv_row().starts_with("cor5,4096,0.5,6,"));
        assert!(r.csv_row().ends_with(",true"));
    }

    proptest! {
        #[test]
        fn triangle_prob_in_unit_interval_and_monotone(t in 2u32..200, rho in 0.0f64..=1.0) {
            let p = triangle_prob(t, rho).unwrap();
            let q = triangle_prob(t + 1, rho).unwrap();
            prop_assert!((0.0..=1.0).contains(&p));
            prop_assert!(q >= p - 1e-15);
        }
    }
}
