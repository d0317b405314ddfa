//! Exact expected largest-SCC polynomials for small N.
//!
//! ```text
//! cargo run --release --example exact_polynomials [max_n]
//! ```

use divorient::exact::{exact_expectation_polynomial, DEFAULT_EDGE_LIMIT};

fn main() -> divorient::Result<()> {
    let max_n: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(10);
    println!("{:>3} {:>8} {:>8}  coefficients (ascending powers of rho)", "N", "E@0.25", "E@0.5");
    for n in 1..=max_n {
        let p = exact_expectation_polynomial(n, DEFAULT_EDGE_LIMIT)?;
        println!("{n:>3} {:>8.5} {:>8.5}  {:?}", p.evaluate(0.25), p.evaluate(0.5), p.coeffs());
    }
    Ok(())
}
