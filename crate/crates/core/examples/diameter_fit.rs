//! Mean directed diameter against log N, with a least-squares line.
//!
//! Writes `diameter.svg` into the directory given as the first argument
//! (default: the system temp directory).
//!
//! ```text
//! cargo run --release --example diameter_fit [out_dir]
//! ```

use std::path::PathBuf;

use divorient::plot::{diameter_plot, render_svg};
use divorient::simulate::{arithmetic_grid, linfit_log, run_grid, ExperimentConfig, Statistic};

fn main() -> divorient::Result<()> {
    let out_dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(std::env::temp_dir);
    let config = ExperimentConfig {
        n_values: arithmetic_grid(1024, 12),
        rho_values: vec![0.5],
        samples_per_cell: 10,
        master_seed: 7,
        statistic: Statistic::Diameter,
    };
    let records = run_grid(&config)?;
    for r in &records {
        println!("N={:>6}  log N={:.3}  mean diameter={:.2}", r.n, f64::from(r.n).ln(), r.mean);
    }
    let fit = linfit_log(&records)?;
    println!("diameter ~ {:.4} log N + {:.4}   (mse {:.5})", fit.alpha, fit.beta, fit.mse);

    let path = out_dir.join("diameter.svg");
    std::fs::write(&path, render_svg(&diameter_plot(&records, true)?)?)?;
    println!("wrote {}", path.display());
    Ok(())
}
