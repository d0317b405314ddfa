//! Exact `E[#Phi(D_rho(N))]` as an integer polynomial in `rho`.
//!
//! All `2^|E|` orientations are enumerated. For each flip count `k` the
//! largest-SCC sizes are summed exactly, and the sum
//! `sum_k bucket[k] rho^k (1 - rho)^(|E| - k)` is expanded with big integers.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::build_divisor_graph;

/// Default cap on `|E|`: at most `2^26` orientations.
pub const DEFAULT_EDGE_LIMIT: usize = 26;

/// Orientation masks are split on this many high bits for parallel work.
const SPLIT_BITS: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RhoPolynomial {
    coeffs: Vec<i128>,
    n_source: u32,
}

impl RhoPolynomial {
    pub fn new(n_source: u32, mut coeffs: Vec<i128>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0);
        }
        RhoPolynomial { coeffs, n_source }
    }

    /// Ascending: `coeffs()[j]` multiplies `rho^j`.
    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn n_source(&self) -> u32 {
        self.n_source
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Horner evaluation.
    pub fn evaluate(&self, rho: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * rho + c as f64)
    }

    /// The polynomial `P(1 - rho)`, expanded.
    pub fn reflect(&self) -> Result<RhoPolynomial> {
        let d = self.degree();
        let mut out = vec![BigInt::zero(); d + 1];
        for (j, &c) in self.coeffs.iter().enumerate() {
            let mut binom = BigInt::from(1);
            for (i, slot) in out.iter_mut().enumerate().take(j + 1) {
                let term = BigInt::from(c) * &binom;
                if i % 2 == 0 {
                    *slot += term;
                } else {
                    *slot -= term;
                }
                binom = binom * (j - i) / (i + 1);
            }
        }
        Ok(RhoPolynomial::new(self.n_source, narrow(out)?))
    }

    /// `N,degree,c0,c1,...,cd`.
    pub fn csv_row(&self) -> String {
        let mut s = format!("{},{}", self.n_source, self.degree());
        for c in &self.coeffs {
            s.push(',');
            s.push_str(&c.to_string());
        }
        s
    }

    pub fn parse_csv_row(row: &str) -> Result<Self> {
        let fields: Vec<&str> = row.trim().split(',').map(str::trim).collect();
        let bad = || Error::Malformed(format!("polynomial row {row:?}"));
        if fields.len() < 3 {
            return Err(bad());
        }
        let n: u32 = fields[0].parse().map_err(|_| bad())?;
        let degree: usize = fields[1].parse().map_err(|_| bad())?;
        let coeffs: Vec<i128> = fields[2..].iter().map(|f| f.parse().map_err(|_| bad())).collect::<Result<_>>()?;
        if coeffs.len() != degree + 1 {
            return Err(bad());
        }
        Ok(RhoPolynomial::new(n, coeffs))
    }
}

pub fn evaluate(p: &RhoPolynomial, rho: f64) -> f64 {
    p.evaluate(rho)
}

fn narrow(coeffs: Vec<BigInt>) -> Result<Vec<i128>> {
    coeffs.iter().map(|c| c.to_i128().ok_or(Error::CoefficientOverflow)).collect()
}

fn reach(adj: &[u64], v: usize) -> u64 {
    let mut seen = 1u64 << v;
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0u64;
        let mut f = frontier;
        while f != 0 {
            let u = f.trailing_zeros() as usize;
            f &= f - 1;
            next |= adj[u];
        }
        frontier = next & !seen;
        seen |= frontier;
    }
    seen
}

/// Largest SCC of a graph on at most 64 vertices given as bitmask rows.
fn largest_scc_bits(out: &[u64], inc: &[u64]) -> u32 {
    let n = out.len();
    let mut remaining = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut best = 0;
    while remaining != 0 && remaining.count_ones() > best {
        let v = remaining.trailing_zeros() as usize;
        let comp = reach(out, v) & reach(inc, v);
        best = best.max(comp.count_ones());
        remaining &= !comp;
    }
    best
}

/// `bucket[k]` = sum of largest-SCC sizes over orientations of `G_N` with
/// exactly `k` reversed edges.
pub fn lscc_flip_buckets(n: u32, edge_limit: usize) -> Result<Vec<u128>> {
    let g = build_divisor_graph(n)?;
    let e = g.edge_count();
    if e > edge_limit || e > 63 || n > 64 {
        return Err(Error::TooManyEdges { n, edges: e, limit: edge_limit.min(63) });
    }
    let edges: Vec<(usize, usize)> = g.edges().iter().map(|&(hi, lo)| (hi as usize - 1, lo as usize - 1)).collect();
    let nv = n as usize;
    let high = SPLIT_BITS.min(e);
    let low = e - high;

    let chunk = |c: u64| -> Vec<u128> {
        let mut buckets = vec![0u128; e + 1];
        let mut mask = c << low;
        let mut out = vec![0u64; nv];
        let mut inc = vec![0u64; nv];
        for (i, &(h, l)) in edges.iter().enumerate() {
            let (s, t) = if mask >> i & 1 == 1 { (l, h) } else { (h, l) };
            out[s] |= 1 << t;
            inc[t] |= 1 << s;
        }
        // Gray order over the low bits: step i toggles bit trailing_zeros(i)
        for i in 0u64..(1u64 << low) {
            if i > 0 {
                let b = i.trailing_zeros() as usize;
                mask ^= 1 << b;
                let (h, l) = edges[b];
                out[h] ^= 1 << l;
                out[l] ^= 1 << h;
                inc[l] ^= 1 << h;
                inc[h] ^= 1 << l;
            }
            buckets[mask.count_ones() as usize] += u128::from(largest_scc_bits(&out, &inc));
        }
        buckets
    };

    Ok((0u64..(1u64 << high)).into_par_iter().map(chunk).reduce(
        || vec![0u128; e + 1],
        |mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            a
        },
    ))
}

/// Exact expected largest-SCC size of `D_rho(N)` as a polynomial in `rho`.
pub fn exact_expectation_polynomial(n: u32, edge_limit: usize) -> Result<RhoPolynomial> {
    let buckets = lscc_flip_buckets(n, edge_limit)?;
    let e = buckets.len() - 1;
    let mut coeffs = vec![BigInt::zero(); e + 1];
    for (k, &b) in buckets.iter().enumerate() {
        if b == 0 {
            continue;
        }
        // b * rho^k * (1 - rho)^(e - k)
        let m = e - k;
        let mut binom = BigInt::from(1);
        for j in 0..=m {
            let term = BigInt::from(b) * &binom;
            if j % 2 == 0 {
                coeffs[k + j] += term;
            } else {
                coeffs[k + j] -= term;
            }
            binom = binom * (m - j) / (j + 1);
        }
    }
    Ok(RhoPolynomial::new(n, narrow(coeffs)?))
}
