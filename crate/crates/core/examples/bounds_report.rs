//! Every lower-bound family across a range of N.
//!
//! ```text
//! cargo run --release --example bounds_report
//! ```

use divorient::bounds::{best_corollary5_bound, best_theorem1_bound, corollary4_bound, CSV_HEADER};
use divorient::numtheory::{hr_threshold, tau_sieve, HugeN};

fn main() -> divorient::Result<()> {
    let rho = 0.5;
    println!("{CSV_HEADER}");
    for n in [100u32, 10_000, 1_000_000] {
        println!("{}", best_theorem1_bound(&tau_sieve(n)?, rho)?.csv_row());
        println!("{}", best_corollary5_bound(u64::from(n), rho)?.csv_row());
    }
    // The effective divisor-count estimate only applies to astronomically large N.
    for eps in [0.5, 0.9] {
        let t = hr_threshold(eps)?;
        let n = HugeN::from_loglog(t.loglog.max(400.0))?;
        let r = corollary4_bound(n, eps, rho)?;
        println!("{}", r.csv_row());
        println!("#   N too large for f64; guaranteed fraction of N: {:.6}", r.ratio);
    }
    Ok(())
}
