//! Command-line surface of the `divorient` binary.
//!
//! Every subcommand renders its full output in memory and then writes it to
//! stdout or to `--out`. A failing command writes no file.

use std::fs;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bounds::{
    best_corollary5_bound, best_theorem1_bound, corollary4_bound, corollary5_bound, BoundReport, CSV_HEADER,
};
use crate::error::{invalid, Error, Result};
use crate::exact::{exact_expectation_polynomial, DEFAULT_EDGE_LIMIT};
use crate::format::sig17;
use crate::numtheory::{
    average_degree, count_tau_at_least, dirichlet_degree_estimate, e_bound_sides, mertens_bracket,
    mertens_bracket_holds, mertens_prime_sum, s_e_partial, s_v_partial, sum_inverse_prime_squares, tau_sieve,
    v_bound_sides, HugeN, MEISSEL_MERTENS, PRIME_ZETA_2, S_E_INFINITY, S_V_INFINITY,
};
use crate::plot::{diameter_plot, render_svg, scc_ratio_plot};
use crate::simulate::{linfit_log, read_csv, run_grid, with_threads, write_csv, ExperimentConfig, Statistic};

/// Environment variable capping the worker-thread count.
pub const THREADS_ENV: &str = "DIVORIENT_THREADS";

/// Largest `N` for which the theorem1 bound sieves `tau` exactly.
pub const THEOREM1_SIEVE_LIMIT: u64 = 200_000_000;

const CONVENTIONS: &str = "\
Conventions:
  Diameter: the diameter of a sampled orientation is the directed diameter of
  its largest strongly connected component (ties broken towards the component
  containing the smallest label). A single vertex has diameter 0.

  Seeds: sample j of the cell (N, rho_values[i]) draws its edge flips from a
  SplitMix64 stream seeded with mix(master_seed, N, i, j), where mix folds each
  word into the state through the SplitMix64 finalizer. Results do not depend
  on the number of worker threads (set DIVORIENT_THREADS to cap it).";

#[derive(Debug, Parser)]
#[command(name = "divorient", version, about = "Randomly oriented divisor graphs", after_help = CONVENTIONS)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact expected largest-SCC size as a polynomial in rho.
    #[command(after_help = CONVENTIONS)]
    Exact(ExactArgs),
    /// Monte Carlo grid of largest-SCC sizes or diameters, written as CSV.
    #[command(after_help = CONVENTIONS)]
    Sim(SimArgs),
    /// Closed-form lower bounds on the expected largest SCC.
    #[command(after_help = CONVENTIONS)]
    Bounds(BoundsArgs),
    /// Divisor-count statistics and prime-sum constants.
    #[command(after_help = CONVENTIONS)]
    Tau(TauArgs),
    /// Least-squares fit of mean against log N from a simulation CSV.
    #[command(after_help = CONVENTIONS)]
    Fit(FitArgs),
    /// SVG chart of a simulation CSV.
    #[command(after_help = CONVENTIONS)]
    Plot(PlotArgs),
}

#[derive(Debug, Args)]
pub struct ExactArgs {
    #[arg(long)]
    pub n: u32,
    /// Also print the expectation at this rho.
    #[arg(long)]
    pub rho: Option<f64>,
    /// Refuse graphs with more edges than this.
    #[arg(long, default_value_t = DEFAULT_EDGE_LIMIT)]
    pub edge_limit: usize,
    /// Write the polynomial row here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StatArg {
    Lscc,
    Diameter,
}

impl From<StatArg> for Statistic {
    fn from(s: StatArg) -> Self {
        match s {
            StatArg::Lscc => Statistic::LsccSize,
            StatArg::Diameter => Statistic::Diameter,
        }
    }
}

#[derive(Debug, Args)]
pub struct SimArgs {
    #[arg(long, value_enum, default_value_t = StatArg::Lscc)]
    pub stat: StatArg,
    /// N grid, e.g. `256..16384:256` or `5,10,20`. Defaults to the desk grid.
    #[arg(long)]
    pub n: Option<String>,
    /// rho values, e.g. `0.1,0.2` or `0.1..0.5:0.1`.
    #[arg(long, default_value = "0.1,0.2,0.3,0.4,0.5")]
    pub rho: String,
    /// Samples per cell (default 50 for lscc, 10 for diameter).
    #[arg(long)]
    pub samples: Option<u32>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Use the full-size grids (N = 256m, m <= 1024 or N = 1024m, m <= 323).
    #[arg(long = "paper-scale", alias = "full-scale")]
    pub full_scale: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BoundMode {
    Theorem1,
    Cor4,
    Cor5,
    All,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    /// N as an integer.
    #[arg(long, required_unless_present = "loglog_n", conflicts_with = "loglog_n")]
    pub n: Option<u64>,
    /// N given as loglog N, for sizes beyond 64-bit integers (cor4 only).
    #[arg(long)]
    pub loglog_n: Option<f64>,
    #[arg(long)]
    pub rho: f64,
    #[arg(long, value_enum, default_value_t = BoundMode::All)]
    pub mode: BoundMode,
    #[arg(long, default_value_t = 0.5)]
    pub epsilon: f64,
    /// Fix x for cor5 instead of maximising over it.
    #[arg(long)]
    pub x: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TauArgs {
    #[arg(long, required_unless_present = "constants")]
    pub n: Option<u32>,
    /// Count n <= N with tau(n) >= each threshold.
    #[arg(long, value_delimiter = ',')]
    pub at_least: Vec<f64>,
    /// Print the higher-prime-power sums and the prime zeta value at 2.
    #[arg(long)]
    pub constants: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    /// Simulation CSV.
    #[arg(long)]
    pub input: PathBuf,
    /// Fit only this rho (default: every rho in the file).
    #[arg(long)]
    pub rho: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PlotKind {
    #[value(name = "scc_ratio", alias = "scc-ratio")]
    SccRatio,
    Diameter,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub kind: PlotKind,
    /// Overlay the least-squares line for each rho (diameter plots).
    #[arg(long)]
    pub fit: bool,
    /// Overlay the primorial lower bound for each rho (scc_ratio plots).
    #[arg(long)]
    pub bound: bool,
    #[arg(long)]
    pub out: PathBuf,
}

/// Parses `a..b:s` (inclusive) or comma-separated integers and ranges.
pub fn parse_n_grid(text: &str) -> Result<Vec<u32>> {
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let bad = || invalid(format!("bad N grid item {item:?}"));
        if let Some((start, rest)) = item.split_once("..") {
            let (stop, step) = rest.split_once(':').unwrap_or((rest, "1"));
            let start: u32 = start.trim().parse().map_err(|_| bad())?;
            let stop: u32 = stop.trim().parse().map_err(|_| bad())?;
            let step: u32 = step.trim().parse().map_err(|_| bad())?;
            if step == 0 || stop < start {
                return Err(bad());
            }
            out.extend((start..=stop).step_by(step as usize));
        } else {
            out.push(item.parse().map_err(|_| bad())?);
        }
    }
    if out.is_empty() {
        return Err(invalid("empty N grid"));
    }
    Ok(out)
}

/// Parses `a..b:s` (inclusive) or comma-separated reals. Range points are
/// rounded to 12 decimals so `0.1..0.5:0.1` yields `0.3`, not `0.30000000000000004`.
pub fn parse_rho_list(text: &str) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let bad = || invalid(format!("bad rho item {item:?}"));
        if let Some((start, rest)) = item.split_once("..") {
            let (stop, step) = rest.split_once(':').ok_or_else(bad)?;
            let start: f64 = start.trim().parse().map_err(|_| bad())?;
            let stop: f64 = stop.trim().parse().map_err(|_| bad())?;
            let step: f64 = step.trim().parse().map_err(|_| bad())?;
            if step.is_nan() || step <= 0.0 || stop < start {
                return Err(bad());
            }
            let count = ((stop - start) / step + 1e-9).floor() as u64;
            out.extend((0..=count).map(|k| ((start + k as f64 * step) * 1e12).round() / 1e12));
        } else {
            out.push(item.parse().map_err(|_| bad())?);
        }
    }
    if out.is_empty() {
        return Err(invalid("empty rho list"));
    }
    Ok(out)
}

fn thread_count() -> Result<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Ok(v) if !v.trim().is_empty() => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&t| t > 0)
            .map(Some)
            .ok_or_else(|| invalid(format!("{THREADS_ENV} must be a positive integer, got {v:?}"))),
        _ => Ok(None),
    }
}

fn emit(out: &Option<PathBuf>, text: &str, stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn cmd_exact(a: &ExactArgs, stdout: &mut dyn Write) -> Result<()> {
    let p = with_threads(thread_count()?, || exact_expectation_polynomial(a.n, a.edge_limit))??;
    emit(&a.out, &format!("{}\n", p.csv_row()), stdout)?;
    if let Some(rho) = a.rho {
        crate::graph::check_rho(rho)?;
        writeln!(stdout, "value,{},{}", sig17(rho), sig17(p.evaluate(rho)))?;
    }
    Ok(())
}

/// The experiment a `sim` invocation describes.
pub fn sim_config(a: &SimArgs) -> Result<ExperimentConfig> {
    let statistic = Statistic::from(a.stat);
    let mut cfg = match (statistic, a.full_scale) {
        (Statistic::LsccSize, false) => ExperimentConfig::desk_lscc(a.seed),
        (Statistic::LsccSize, true) => ExperimentConfig::full_lscc(a.seed),
        (Statistic::Diameter, false) => ExperimentConfig::desk_diameter(a.seed),
        (Statistic::Diameter, true) => ExperimentConfig::full_diameter(a.seed),
    };
    if let Some(n) = &a.n {
        cfg.n_values = parse_n_grid(n)?;
    }
    cfg.rho_values = parse_rho_list(&a.rho)?;
    if let Some(s) = a.samples {
        cfg.samples_per_cell = s;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn cmd_sim(a: &SimArgs, stdout: &mut dyn Write) -> Result<()> {
    let cfg = sim_config(a)?;
    let records = with_threads(thread_count()?, || run_grid(&cfg))??;
    let mut buf = Vec::new();
    write_csv(&mut buf, cfg.statistic, cfg.master_seed, &records)?;
    emit(&a.out, &String::from_utf8(buf).expect("csv output is ASCII"), stdout)
}

fn bound_reports(a: &BoundsArgs) -> Result<Vec<BoundReport>> {
    let huge = match (a.n, a.loglog_n) {
        (Some(n), _) if n >= 3 => Some(HugeN::from_u64(n)?),
        (Some(_), _) => None,
        (None, Some(ll)) => Some(HugeN::from_loglog(ll)?),
        (None, None) => return Err(invalid("give --n or --loglog-n")),
    };
    let need_n = |what: &str| a.n.ok_or_else(|| invalid(format!("{what} needs an integer --n")));
    let theorem1 = |n: u64| -> Result<BoundReport> {
        if n == 0 || n > THEOREM1_SIEVE_LIMIT {
            return Err(invalid(format!("theorem1 needs 1 <= N <= {THEOREM1_SIEVE_LIMIT}")));
        }
        best_theorem1_bound(&tau_sieve(n as u32)?, a.rho)
    };
    let cor4 = || -> Result<BoundReport> {
        let n = huge.ok_or_else(|| invalid("cor4 needs N >= 3"))?;
        corollary4_bound(n, a.epsilon, a.rho)
    };
    let cor5 = |n: u64| match a.x {
        Some(x) => corollary5_bound(n, a.rho, x),
        None => best_corollary5_bound(n, a.rho),
    };
    Ok(match a.mode {
        BoundMode::Theorem1 => vec![theorem1(need_n("theorem1")?)?],
        BoundMode::Cor4 => vec![cor4()?],
        BoundMode::Cor5 => vec![cor5(need_n("cor5")?)?],
        BoundMode::All => {
            let mut v = Vec::new();
            if let Some(n) = a.n {
                if n <= THEOREM1_SIEVE_LIMIT {
                    v.push(theorem1(n)?);
                }
            }
            if huge.is_some() && a.rho > 0.0 && a.rho < 1.0 {
                v.push(cor4()?);
            }
            if let Some(n) = a.n {
                if a.rho > 0.0 && a.rho < 1.0 {
                    v.push(cor5(n)?);
                }
            }
            v
        }
    })
}

fn cmd_bounds(a: &BoundsArgs, stdout: &mut dyn Write) -> Result<()> {
    let mut text = format!("{CSV_HEADER}\n");
    for r in bound_reports(a)? {
        text.push_str(&r.csv_row());
        text.push('\n');
    }
    emit(&a.out, &text, stdout)
}

/// The text printed by `tau`.
pub fn tau_report(a: &TauArgs) -> Result<String> {
    let mut s = String::new();
    if let Some(n) = a.n {
        let table = tau_sieve(n)?;
        let hist: Vec<String> = table.histogram().iter().map(|(t, c)| format!("{t}:{c}")).collect();
        s.push_str(&format!("N={n}\n"));
        s.push_str(&format!("tau_histogram={{{}}}\n", hist.join(", ")));
        for &t in &a.at_least {
            s.push_str(&format!("tau_at_least[{}]={}\n", sig17(t), count_tau_at_least(&table, t)));
        }
        s.push_str(&format!("average_degree={}\n", sig17(average_degree(&table))));
        let est = dirichlet_degree_estimate(u64::from(n))?;
        s.push_str(&format!("degree_estimate_2(2gamma-3)={}\n", sig17(est.printed)));
        s.push_str(&format!("degree_estimate_2(2gamma-2)={}\n", sig17(est.dirichlet)));
        if n >= 2 {
            let n = u64::from(n);
            let (lo, hi) = mertens_bracket(n);
            s.push_str(&format!(
                "mertens_sum={} bracket=[{}, {}] holds={}\n",
                sig17(mertens_prime_sum(n)?),
                sig17(lo),
                sig17(hi),
                mertens_bracket_holds(n)?
            ));
            let (el, er) = e_bound_sides(n)?;
            s.push_str(&format!("E_bound lhs={} rhs={} holds={}\n", sig17(el), sig17(er), el < er));
            let (vl, vr) = v_bound_sides(n)?;
            s.push_str(&format!("V2_bound lhs={} rhs={} holds={}\n", sig17(vl), sig17(vr), vl < vr));
        }
    }
    if a.constants {
        s.push_str(&format!(
            "S_E={} (k<=60, p<=10^6; limit {})\n",
            sig17(s_e_partial(60, 1_000_000)),
            sig17(S_E_INFINITY)
        ));
        s.push_str(&format!(
            "S_V={} (k<=60, p<=10^6; limit {})\n",
            sig17(s_v_partial(60, 1_000_000)),
            sig17(S_V_INFINITY)
        ));
        s.push_str(&format!(
            "sum_1/p^2={} (p<=10^7; limit {})\n",
            sig17(sum_inverse_prime_squares(10_000_000)),
            sig17(PRIME_ZETA_2)
        ));
        s.push_str(&format!("M={}\n", sig17(MEISSEL_MERTENS)));
    }
    Ok(s)
}

fn read_sim(path: &Path) -> Result<crate::simulate::SimCsv> {
    let f = fs::File::open(path)?;
    let csv = read_csv(BufReader::new(f))?;
    if csv.records.is_empty() {
        return Err(Error::Malformed(format!("{} has no records", path.display())));
    }
    Ok(csv)
}

fn cmd_fit(a: &FitArgs, stdout: &mut dyn Write) -> Result<()> {
    let csv = read_sim(&a.input)?;
    let mut rhos: Vec<f64> = Vec::new();
    for r in &csv.records {
        if !rhos.contains(&r.rho) {
            rhos.push(r.rho);
        }
    }
    if let Some(rho) = a.rho {
        rhos.retain(|&r| (r - rho).abs() < 1e-12);
        if rhos.is_empty() {
            return Err(invalid(format!("no records with rho={rho}")));
        }
    }
    let mut text = String::from("rho,alpha,beta,mse\n");
    for rho in rhos {
        let cell: Vec<_> = csv.records.iter().filter(|r| r.rho == rho).cloned().collect();
        let f = linfit_log(&cell)?;
        text.push_str(&format!("{},{},{},{}\n", sig17(rho), sig17(f.alpha), sig17(f.beta), sig17(f.mse)));
    }
    emit(&a.out, &text, stdout)
}

fn cmd_plot(a: &PlotArgs) -> Result<()> {
    let csv = read_sim(&a.input)?;
    let spec = match a.kind {
        PlotKind::SccRatio => scc_ratio_plot(&csv.records, a.bound)?,
        PlotKind::Diameter => diameter_plot(&csv.records, a.fit)?,
    };
    let svg = render_svg(&spec)?;
    fs::write(&a.out, svg)?;
    Ok(())
}

/// Executes a parsed command line.
pub fn execute(cli: &Cli, stdout: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::Exact(a) => cmd_exact(a, stdout),
        Command::Sim(a) => cmd_sim(a, stdout),
        Command::Bounds(a) => cmd_bounds(a, stdout),
        Command::Tau(a) => {
            let text = tau_report(a)?;
            emit(&a.out, &text, stdout)
        }
        Command::Fit(a) => cmd_fit(a, stdout),
        Command::Plot(a) => cmd_plot(a),
    }
}

/// Parses `args` (including the program name) and runs the command. Help and
/// version requests are written to `stdout`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write) -> Result<()>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli, stdout),
        Err(e) if matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion) => {
            write!(stdout, "{}", e.render())?;
            Ok(())
        }
        Err(e) => Err(invalid(e.render().to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> Result<String> {
        let mut out = Vec::new();
        run(std::iter::once("divorient").chain(args.iter().copied()), &mut out)?;
        Ok(String::from_utf8(out).unwrap())
    }

    #[test]
    fn grids_parse() {
        assert_eq!(parse_n_grid("256..16384:256").unwrap().len(), 64);
        assert_eq!(parse_n_grid("5, 7,10..12").unwrap(), vec![5, 7, 10, 11, 12]);
        assert!(parse_n_grid("10..5:1").is_err());
        assert!(parse_n_grid("1..5:0").is_err());
        assert!(parse_n_grid("").is_err());
        assert_eq!(parse_rho_list("0.1..0.5:0.1").unwrap(), vec![0.1, 0.2, 0.3, 0.4, 0.5]);
        assert_eq!(parse_rho_list("0").unwrap(), vec![0.0]);
        assert!(parse_rho_list("a").is_err());
    }

    #[test]
    fn exact_command() {
        assert_eq!(run_str(&["exact", "--n", "5", "--rho", "0.5"]).unwrap(), "5,2,1,2,-2\nvalue,0.5,1.5\n");
        assert_eq!(run_str(&["exact", "--n", "1"]).unwrap(), "1,0,1\n");
        let err = run_str(&["exact", "--n", "9", "--edge-limit", "10"]).unwrap_err().to_string();
        assert!(err.contains("14"), "{err}");
    }

    #[test]
    fn tau_command() {
        let out = run_str(&["tau", "--n", "10", "--at-least", "4"]).unwrap();
        assert!(out.contains("tau_at_least[4]=3\n"), "{out}");
        assert!(run_str(&["tau", "--n", "1"]).unwrap().contains("tau_histogram={1:1}"));
    }

    #[test]
    fn bounds_command() {
        let out = run_str(&["bounds", "--n", "100", "--rho", "0.5", "--mode", "cor4", "--epsilon", "0.5"]).unwrap();
        assert!(out.lines().nth(1).unwrap().ends_with(",false"), "{out}");
        assert!(run_str(&["bounds", "--n", "100", "--rho", "0.5", "--mode", "cor4", "--epsilon", "1.5"]).is_err());
        let out =
            run_str(&["bounds", "--loglog-n", "1000", "--rho", "0.5", "--mode", "cor4", "--epsilon", "0.5"]).unwrap();
        assert!(out.contains("exp(exp(1000))"), "{out}");
        assert!(out.trim_end().ends_with("true"));
    }

    #[test]
    fn help_mentions_conventions() {
        for sub in ["exact", "sim", "bounds", "tau", "fit", "plot"] {
            let h = run_str(&[sub, "--help"]).unwrap();
            assert!(h.contains("largest strongly connected"), "{sub}");
            assert!(h.contains("mix(master_seed, N, i, j)"), "{sub}");
        }
    }
}
