//! Largest-SCC fraction against N, next to the primorial lower bound.
//!
//! ```text
//! cargo run --release --example lscc_growth
//! ```

use divorient::bounds::best_corollary5_bound;
use divorient::simulate::{run_grid, ExperimentConfig, Statistic};

fn main() -> divorient::Result<()> {
    let config = ExperimentConfig {
        n_values: vec![256, 1024, 4096, 16384],
        rho_values: vec![0.1, 0.3, 0.5],
        samples_per_cell: 20,
        master_seed: 1,
        statistic: Statistic::LsccSize,
    };
    println!("{:>6} {:>4} {:>10} {:>8} {:>10}", "N", "rho", "mean", "mean/N", "bound/N");
    for r in run_grid(&config)? {
        let bound = best_corollary5_bound(u64::from(r.n), r.rho)?;
        println!("{:>6} {:>4} {:>10.1} {:>8.4} {:>10.4}", r.n, r.rho, r.mean, r.mean / f64::from(r.n), bound.ratio);
    }
    Ok(())
}
