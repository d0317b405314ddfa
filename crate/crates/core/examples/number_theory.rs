//! Divisor counts, Mertens' bracket and the higher-prime-power sums.
//!
//! ```text
//! cargo run --release --example number_theory
//! ```

use divorient::numtheory::{
    average_degree, dirichlet_degree_estimate, e_bound_sides, mertens_bracket, mertens_prime_sum, s_e_partial,
    s_v_partial, sum_inverse_prime_squares, tau_sieve, v_bound_sides,
};

fn main() -> divorient::Result<()> {
    for k in 2..=6 {
        let n = 10u64.pow(k);
        let table = tau_sieve(n as u32)?;
        let est = dirichlet_degree_estimate(n)?;
        let (lo, hi) = mertens_bracket(n);
        let (el, er) = e_bound_sides(n)?;
        let (vl, vr) = v_bound_sides(n)?;
        println!("N=10^{k}");
        println!(
            "  mean degree {:.4}   2 log N + 2(2g-2) = {:.4}   2 log N + 2(2g-3) = {:.4}",
            average_degree(&table),
            est.dirichlet,
            est.printed
        );
        println!("  sum 1/p = {:.6} in ({lo:.6}, {hi:.6})", mertens_prime_sum(n)?);
        println!("  |E(N) - log2 loglog N| = {el:.4} < {er:.4};  V(N)^2 = {vl:.4} < {vr:.4}");
    }
    println!("S_E partial (k<=60, p<=10^6) = {:.10}", s_e_partial(60, 1_000_000));
    println!("S_V partial (k<=60, p<=10^6) = {:.10}", s_v_partial(60, 1_000_000));
    println!("sum 1/p^2 (p<=10^7)          = {:.10}", sum_inverse_prime_squares(10_000_000));
    Ok(())
}
