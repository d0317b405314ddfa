//! One seeded orientation: its dump, SCC structure and iFUB trace.
//!
//! ```text
//! cargo run --release --example orientation_dump [N] [rho] [seed]
//! ```

use divorient::diameter::{ifub_trace, restrict_to_largest_scc};
use divorient::graph::{build_divisor_graph, oriented_adjacency, sample_orientation, Orientation, SeedSpec};
use divorient::scc::strongly_connected_components;

fn main() -> divorient::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: u32 = args.next().and_then(|s| s.parse().ok()).unwrap_or(12);
    let rho: f64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(0.5);
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(1);

    let g = build_divisor_graph(n)?;
    let o = sample_orientation(&g, rho, &SeedSpec::new(seed, 0), 0)?;
    let dump = o.dump(&g);
    print!("{dump}");
    assert_eq!(Orientation::parse_dump(&dump)?.bit_string(), o.bit_string());

    let d = oriented_adjacency(&g, &o)?;
    let labeling = strongly_connected_components(&d);
    let largest = labeling.largest_component().expect("N >= 1");
    println!(
        "{} components; largest has {} vertices",
        labeling.num_components(),
        labeling.comp_sizes()[largest as usize]
    );
    let members: Vec<u32> = labeling.members(largest).iter().map(|v| v + 1).collect();
    println!("largest component labels: {members:?}");

    let (core, _) = restrict_to_largest_scc(&d, &labeling);
    let trace = ifub_trace(&core)?;
    println!(
        "diameter {} (double-sweep lower bound {}, {} BFS runs)",
        trace.diameter, trace.double_sweep_lower, trace.bfs_runs
    );
    Ok(())
}
