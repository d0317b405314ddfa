//! Monte Carlo grids over `(N, rho)`.
//!
//! Sample `j` of the cell `(N, rho_values[i])` is drawn from the stream
//! `mix(master_seed, N, i, j)` (see [`crate::rng`]), so every cell is
//! reproducible on its own and the grid output does not depend on how many
//! worker threads ran it. Samples are computed in parallel and aggregated per
//! cell in sample order.

use std::fmt;
use std::io::{BufRead, Read, Write};
use std::str::FromStr;

use rayon::prelude::*;
use serde::Deserialize;

use crate::diameter::sampled_graph_diameter;
use crate::error::{invalid, Error, Result};
use crate::format::sig17;
use crate::graph::{build_divisor_graph, check_rho, oriented_adjacency, sample_orientation, DivisorGraph, SeedSpec};
use crate::numtheory::CompensatedSum;
use crate::scc::{largest_scc_size, strongly_connected_components};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Statistic {
    LsccSize,
    Diameter,
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Statistic::LsccSize => "lscc_size",
            Statistic::Diameter => "diameter",
        })
    }
}

impl FromStr for Statistic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lscc" | "lscc_size" => Ok(Statistic::LsccSize),
            "diameter" => Ok(Statistic::Diameter),
            other => Err(invalid(format!("unknown statistic {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub n_values: Vec<u32>,
    pub rho_values: Vec<f64>,
    pub samples_per_cell: u32,
    pub master_seed: u64,
    pub statistic: Statistic,
}

/// `{step * m : 1 <= m <= count}`.
pub fn arithmetic_grid(step: u32, count: u32) -> Vec<u32> {
    (1..=count).map(|m| step * m).collect()
}

pub const DEFAULT_RHOS: [f64; 5] = [0.1, 0.2, 0.3, 0.4, 0.5];

impl ExperimentConfig {
    /// Largest-SCC grid `N = 256m, m <= 64`, 50 samples per cell.
    pub fn desk_lscc(master_seed: u64) -> Self {
        ExperimentConfig {
            n_values: arithmetic_grid(256, 64),
            rho_values: DEFAULT_RHOS.to_vec(),
            samples_per_cell: 50,
            master_seed,
            statistic: Statistic::LsccSize,
        }
    }

    /// Full largest-SCC grid `N = 256m, m <= 1024`.
    pub fn full_lscc(master_seed: u64) -> Self {
        ExperimentConfig { n_values: arithmetic_grid(256, 1024), ..Self::desk_lscc(master_seed) }
    }

    /// Diameter grid `N = 1024m, m <= 16`, 10 samples per cell.
    pub fn desk_diameter(master_seed: u64) -> Self {
        ExperimentConfig {
            n_values: arithmetic_grid(1024, 16),
            rho_values: DEFAULT_RHOS.to_vec(),
            samples_per_cell: 10,
            master_seed,
            statistic: Statistic::Diameter,
        }
    }

    /// Full diameter grid `N = 1024m, m <= 323`.
    pub fn full_diameter(master_seed: u64) -> Self {
        ExperimentConfig { n_values: arithmetic_grid(1024, 323), ..Self::desk_diameter(master_seed) }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_values.is_empty() {
            return Err(invalid("grid needs at least one N"));
        }
        if self.n_values.contains(&0) {
            return Err(invalid("N values must be positive"));
        }
        if !self.n_values.windows(2).all(|w| w[0] < w[1]) {
            return Err(invalid("N values must be strictly ascending"));
        }
        if self.rho_values.is_empty() {
            return Err(invalid("grid needs at least one rho"));
        }
        for &r in &self.rho_values {
            check_rho(r)?;
        }
        if self.samples_per_cell == 0 {
            return Err(invalid("samples per cell must be >= 1"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimRecord {
    pub n: u32,
    pub rho: f64,
    pub samples: u32,
    pub mean: f64,
    /// Unbiased sample variance; 0 when `samples == 1`.
    pub variance: f64,
    pub statistic: Statistic,
}

impl SimRecord {
    /// Whether `variance` is an actual estimate (needs two or more samples).
    pub fn variance_estimated(&self) -> bool {
        self.samples > 1
    }

    /// Standard error of the mean.
    pub fn std_error(&self) -> f64 {
        (self.variance / f64::from(self.samples)).sqrt()
    }

    pub fn from_samples(n: u32, rho: f64, statistic: Statistic, values: &[u32]) -> Self {
        let k = values.len();
        let mean = values.iter().map(|&v| f64::from(v)).collect::<CompensatedSum>().value() / k as f64;
        let variance = if k > 1 {
            values.iter().map(|&v| (f64::from(v) - mean).powi(2)).collect::<CompensatedSum>().value() / (k - 1) as f64
        } else {
            0.0
        };
        SimRecord { n, rho, samples: k as u32, mean, variance, statistic }
    }
}

/// One sample of the configured statistic.
pub fn sample_statistic(
    g: &DivisorGraph,
    rho: f64,
    seed: &SeedSpec,
    sample_index: u64,
    statistic: Statistic,
) -> Result<u32> {
    let o = sample_orientation(g, rho, seed, sample_index)?;
    match statistic {
        Statistic::LsccSize => {
            let d = oriented_adjacency(g, &o)?;
            Ok(largest_scc_size(&strongly_connected_components(&d)))
        }
        Statistic::Diameter => sampled_graph_diameter(g, &o),
    }
}

/// Runs every cell of the grid on the current rayon pool.
pub fn run_grid(config: &ExperimentConfig) -> Result<Vec<SimRecord>> {
    config.validate()?;
    let samples = u64::from(config.samples_per_cell);
    let mut records = Vec::with_capacity(config.n_values.len() * config.rho_values.len());
    for &n in &config.n_values {
        let g = build_divisor_graph(n)?;
        let jobs: Vec<(usize, u64)> =
            (0..config.rho_values.len()).flat_map(|i| (0..samples).map(move |j| (i, j))).collect();
        let values: Vec<Result<u32>> = jobs
            .par_iter()
            .map(|&(i, j)| {
                let seed = SeedSpec::new(config.master_seed, i as u64);
                sample_statistic(&g, config.rho_values[i], &seed, j, config.statistic)
            })
            .collect();
        for (i, cell) in values.chunks(samples as usize).enumerate() {
            let rho = config.rho_values[i];
            let cell: Vec<u32> = cell
                .iter()
                .map(|r| match r {
                    Ok(v) => Ok(*v),
                    Err(e) => Err(Error::Cell { n, rho, source: Box::new(clone_error(e)) }),
                })
                .collect::<Result<_>>()?;
            records.push(SimRecord::from_samples(n, rho, config.statistic, &cell));
        }
    }
    Ok(records)
}

fn clone_error(e: &Error) -> Error {
    Error::Malformed(e.to_string())
}

/// Runs `f` on a dedicated pool with `threads` workers (hardware default when `None`).
pub fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        builder = builder.num_threads(t.max(1));
    }
    let pool = builder.build().map_err(|e| invalid(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitResult {
    pub alpha: f64,
    pub beta: f64,
    pub mse: f64,
}

/// Least squares of `mean` against `log N`: `mean ~ alpha log N + beta`.
/// Two records are interpolated exactly and report `mse = 0`.
pub fn linfit_log(records: &[SimRecord]) -> Result<FitResult> {
    let mut ns: Vec<u32> = records.iter().map(|r| r.n).collect();
    ns.sort_unstable();
    ns.dedup();
    if ns.len() < 2 {
        return Err(invalid("a log-linear fit needs at least two distinct N"));
    }
    let k = records.len() as f64;
    let xs: Vec<f64> = records.iter().map(|r| f64::from(r.n).ln()).collect();
    let ys: Vec<f64> = records.iter().map(|r| r.mean).collect();
    let mx = xs.iter().copied().collect::<CompensatedSum>().value() / k;
    let my = ys.iter().copied().collect::<CompensatedSum>().value() / k;
    let sxy = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).collect::<CompensatedSum>().value();
    let sxx = xs.iter().map(|x| (x - mx) * (x - mx)).collect::<CompensatedSum>().value();
    let alpha = sxy / sxx;
    let beta = my - alpha * mx;
    let mse = if records.len() == 2 {
        0.0
    } else {
        xs.iter().zip(&ys).map(|(x, y)| (y - alpha * x - beta).powi(2)).collect::<CompensatedSum>().value() / k
    };
    Ok(FitResult { alpha, beta, mse })
}

/// `(N, mean / N)` for largest-SCC records.
pub fn frontier_ratio(records: &[SimRecord]) -> Result<Vec<(u32, f64)>> {
    records
        .iter()
        .map(|r| {
            if r.statistic != Statistic::LsccSize {
                return Err(invalid("frontier ratio needs lscc_size records"));
            }
            Ok((r.n, r.mean / f64::from(r.n)))
        })
        .collect()
}

pub const DIAMETER_CONVENTION: &str = "largest_scc";

pub fn csv_header_line(statistic: Statistic, master_seed: u64) -> String {
    format!(
        "# divorient v1, statistic={statistic}, master_seed={master_seed}, diameter_convention={DIAMETER_CONVENTION}"
    )
}

/// Writes the run header, the column line, and one row per record.
pub fn write_csv<W: Write>(mut w: W, statistic: Statistic, master_seed: u64, records: &[SimRecord]) -> Result<()> {
    writeln!(w, "{}", csv_header_line(statistic, master_seed))?;
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["n", "rho", "samples", "mean", "variance"])?;
    for r in records {
        out.write_record([r.n.to_string(), sig17(r.rho), r.samples.to_string(), sig17(r.mean), sig17(r.variance)])?;
    }
    out.flush()?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimCsv {
    pub statistic: Option<Statistic>,
    pub master_seed: Option<u64>,
    pub records: Vec<SimRecord>,
}

#[derive(Deserialize)]
struct Row {
    n: u32,
    rho: f64,
    samples: u32,
    mean: f64,
    variance: f64,
}

/// Reads a file written by [`write_csv`]. Missing run metadata defaults the
/// statistic to `lscc_size`.
pub fn read_csv<R: BufRead>(mut r: R) -> Result<SimCsv> {
    let mut first = String::new();
    r.read_line(&mut first)?;
    let mut statistic = None;
    let mut master_seed = None;
    let rest: Box<dyn Read + '_> = if first.starts_with('#') {
        for field in first.trim_start_matches('#').split(',') {
            match field.trim().split_once('=') {
                Some(("statistic", v)) => statistic = Some(v.trim().parse()?),
                Some(("master_seed", v)) => {
                    master_seed = Some(v.trim().parse().map_err(|_| Error::Malformed(format!("seed {v:?}")))?)
                }
                _ => {}
            }
        }
        Box::new(r)
    } else {
        Box::new(Read::chain(std::io::Cursor::new(first.into_bytes()), r))
    };
    let stat = statistic.unwrap_or(Statistic::LsccSize);
    let mut reader = csv::ReaderBuilder::new().comment(Some(b'#')).trim(csv::Trim::All).from_reader(rest);
    let headers = reader.headers()?.clone();
    if headers.iter().collect::<Vec<_>>() != ["n", "rho", "samples", "mean", "variance"] {
        return Err(Error::Malformed(format!("unexpected columns {headers:?}")));
    }
    let records = reader
        .deserialize::<Row>()
        .map(|row| {
            let row = row?;
            Ok(SimRecord {
                n: row.n,
                rho: row.rho,
                samples: row.samples,
                mean: row.mean,
                variance: row.variance,
                statistic: stat,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SimCsv { statistic, master_seed, records })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(n: u32, mean: f64) -> SimRecord {
        SimRecord { n, rho: 0.5, samples: 10, mean, variance: 0.0, statistic: Statistic::Diameter }
    }

    /// Normal equations `[k sx; sx sxx][b a]' = [sy sxy]'` solved by Cramer's rule.
    fn normal_equations(points: &[(f64, f64)]) -> (f64, f64) {
        let k = points.len() as f64;
        let sx: f64 = points.iter().map(|p| p.0).sum();
        let sy: f64 = points.iter().map(|p| p.1).sum();
        let sxx: f64 = points.iter().map(|p| p.0 * p.0).sum();
        let sxy: f64 = points.iter().map(|p| p.0 * p.1).sum();
        let det = k * sxx - sx * sx;
        ((k * sxy - sx * sy) / det, (sxx * sy - sx * sxy) / det)
    }

    #[test]
    fn grid_with_five_vertices() {
        let cfg = ExperimentConfig {
            n_values: vec![5],
            rho_values: vec![0.5],
            samples_per_cell: 100_000,
            master_seed: 1,
            statistic: Statistic::LsccSize,
        };
        let r = &run_grid(&cfg).unwrap()[0];
        assert!((r.mean - 1.5).abs() < 4.0 * (0.75f64 / 1e5).sqrt());
        assert!((r.variance - 0.75).abs() < 0.02);
    }

    #[test]
    fn acyclic_and_trivial_cells() {
        let cfg = ExperimentConfig {
            n_values: vec![5, 200],
            rho_values: vec![0.0, 1.0],
            samples_per_cell: 7,
            master_seed: 9,
            statistic: Statistic::LsccSize,
        };
        for r in run_grid(&cfg).unwrap() {
            assert_eq!(r.mean, 1.0);
            assert_eq!(r.variance, 0.0);
        }
        let cfg = ExperimentConfig {
            n_values: vec![1],
            rho_values: vec![0.3],
            samples_per_cell: 1,
            master_seed: 0,
            statistic: Statistic::Diameter,
        };
        let r = &run_grid(&cfg).unwrap()[0];
        assert_eq!(r.mean, 0.0);
        assert!(!r.variance_estimated());
    }

    #[test]
    fn invalid_configs() {
        let good = ExperimentConfig::desk_lscc(0);
        assert!(good.validate().is_ok());
        assert!(ExperimentConfig { n_values: vec![], ..good.clone() }.validate().is_err());
        assert!(ExperimentConfig { n_values: vec![5, 5], ..good.clone() }.validate().is_err());
        assert!(ExperimentConfig { rho_values: vec![1.2], ..good.clone() }.validate().is_err());
        assert!(ExperimentConfig { samples_per_cell: 0, ..good }.validate().is_err());
    }

    #[test]
    fn grids() {
        assert_eq!(ExperimentConfig::desk_lscc(0).n_values.len(), 64);
        assert_eq!(*ExperimentConfig::full_lscc(0).n_values.last().unwrap(), 262_144);
        assert_eq!(*ExperimentConfig::full_diameter(0).n_values.last().unwrap(), 330_752);
    }

    #[test]
    fn fits() {
        let affine: Vec<SimRecord> =
            [100, 200, 400, 800].iter().map(|&n| record(n, 2.0 * f64::from(n).ln() + 3.0)).collect();
        let f = linfit_log(&affine).unwrap();
        assert!((f.alpha - 2.0).abs() < 1e-12 && (f.beta - 3.0).abs() < 1e-12 && f.mse < 1e-24);

        let two = [record(10, 4.0), record(1000, 7.5)];
        assert_eq!(linfit_log(&two).unwrap().mse, 0.0);

        assert!(linfit_log(&[record(10, 1.0), record(10, 2.0)]).is_err());

        let mut rng = crate::rng::SplitMix64::new(5);
        let noisy: Vec<SimRecord> =
            (1..=20).map(|m| record(1024 * m, 0.5 * f64::from(1024 * m).ln() + 4.0 + rng.next_f64() - 0.5)).collect();
        let f = linfit_log(&noisy).unwrap();
        let pts: Vec<(f64, f64)> = noisy.iter().map(|r| (f64::from(r.n).ln(), r.mean)).collect();
        let (a, b) = normal_equations(&pts);
        assert!((f.alpha - a).abs() < 1e-10 && (f.beta - b).abs() < 1e-10);
    }

    #[test]
    fn ratios() {
        let r = SimRecord { n: 5, rho: 0.5, samples: 1, mean: 1.5, variance: 0.0, statistic: Statistic::LsccSize };
        assert_eq!(frontier_ratio(&[r]).unwrap(), vec![(5, 0.3)]);
        assert!(frontier_ratio(&[record(5, 1.0)]).is_err());
    }

    #[test]
    fn csv_round_trip_and_thread_independence() {
        let cfg = ExperimentConfig {
            n_values: vec![64, 128, 256],
            rho_values: vec![0.2, 0.5],
            samples_per_cell: 6,
            master_seed: 77,
            statistic: Statistic::LsccSize,
        };
        let run = |t| {
            let recs = with_threads(Some(t), || run_grid(&cfg)).unwrap().unwrap();
            let mut buf = Vec::new();
            write_csv(&mut buf, cfg.statistic, cfg.master_seed, &recs).unwrap();
            (recs, buf)
        };
        let (recs, one) = run(1);
        assert_eq!(one, run(3).1);
        let text = String::from_utf8(one.clone()).unwrap();
        assert!(text.starts_with(
            "# divorient v1, statistic=lscc_size, master_seed=77, diameter_convention=largest_scc\nn,rho,samples,mean,variance\n"
        ));
        let back = read_csv(&one[..]).unwrap();
        assert_eq!(back.statistic, Some(Statistic::LsccSize));
        assert_eq!(back.master_seed, Some(77));
        assert_eq!(back.records, recs);
        assert!(read_csv(&b"# divorient v1\nfoo,bar\n1,2\n"[..]).is_err());
    }
}
