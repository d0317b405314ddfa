//! Directed diameters.
//!
//! The diameter of a sampled orientation is measured on its largest strongly
//! connected component (ties broken towards the component holding the
//! smallest label), which keeps it finite. [`ifub_diameter`] computes it
//! exactly with the iterative fringe upper bound method; [`all_pairs_diameter`]
//! is the brute-force oracle.

use crate::error::{Error, Result};
use crate::graph::{oriented_adjacency, Digraph, DivisorGraph, Orientation};
use crate::scc::{strongly_connected_components, ComponentLabeling};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EccentricityResult {
    /// 1-based label of the BFS source.
    pub vertex: u32,
    pub forward_ecc: u32,
    pub reachable_count: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

/// Level-synchronous BFS with an epoch-stamped visited array. Repeated
/// searches on the same graph reuse the buffers without clearing them.
#[derive(Debug, Clone)]
pub struct Bfs {
    epoch: Vec<u32>,
    dist: Vec<u32>,
    queue: Vec<u32>,
    current: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BfsSummary {
    pub ecc: u32,
    pub reached: usize,
    /// Smallest index among the vertices at distance `ecc`.
    pub farthest: u32,
}

impl Bfs {
    pub fn new(n: usize) -> Self {
        Bfs { epoch: vec![0; n], dist: vec![0; n], queue: Vec::with_capacity(n), current: 0 }
    }

    pub fn run(&mut self, d: &Digraph, source: usize, dir: Direction) -> BfsSummary {
        self.current = self.current.wrapping_add(1);
        if self.current == 0 {
            self.epoch.iter_mut().for_each(|e| *e = 0);
            self.current = 1;
        }
        let stamp = self.current;
        self.queue.clear();
        self.queue.push(source as u32);
        self.epoch[source] = stamp;
        self.dist[source] = 0;
        let mut head = 0;
        let mut ecc = 0;
        let mut farthest = source as u32;
        while head < self.queue.len() {
            let v = self.queue[head] as usize;
            head += 1;
            let dv = self.dist[v];
            if dv > ecc {
                ecc = dv;
                farthest = v as u32;
            } else if dv == ecc && (v as u32) < farthest {
                farthest = v as u32;
            }
            let next = match dir {
                Direction::Forward => d.out_neighbors(v),
                Direction::Backward => d.in_neighbors(v),
            };
            for &w in next {
                let w = w as usize;
                if self.epoch[w] != stamp {
                    self.epoch[w] = stamp;
                    self.dist[w] = dv + 1;
                    self.queue.push(w as u32);
                }
            }
        }
        BfsSummary { ecc, reached: self.queue.len(), farthest }
    }

    /// Distance from the last source, if `v` was reached.
    pub fn dist(&self, v: usize) -> Option<u32> {
        (self.epoch[v] == self.current).then_some(self.dist[v])
    }
}

/// Forward eccentricity of the vertex with 1-based `label`.
pub fn eccentricity(d: &Digraph, label: u32) -> EccentricityResult {
    let mut bfs = Bfs::new(d.n());
    let s = bfs.run(d, label as usize - 1, Direction::Forward);
    EccentricityResult { vertex: label, forward_ecc: s.ecc, reachable_count: s.reached as u32 }
}

/// Induced subgraph on the largest SCC plus, for each new index, the
/// original 1-based label.
pub fn restrict_to_largest_scc(d: &Digraph, labeling: &ComponentLabeling) -> (Digraph, Vec<u32>) {
    let Some(c) = labeling.largest_component() else {
        return (d.clone(), Vec::new());
    };
    let members = labeling.members(c);
    let labels = members.iter().map(|&v| v + 1).collect();
    (d.induced(&members), labels)
}

/// Largest BFS distance over all ordered pairs. Oracle for `n <= 2000`.
pub fn all_pairs_diameter(d: &Digraph) -> Result<u32> {
    let n = d.n();
    if n > 2000 {
        return Err(crate::error::invalid(format!("all-pairs oracle limited to 2000 vertices, got {n}")));
    }
    let mut bfs = Bfs::new(n);
    let mut diam = 0;
    for v in 0..n {
        let s = bfs.run(d, v, Direction::Forward);
        if s.reached != n {
            return Err(Error::NotStronglyConnected);
        }
        diam = diam.max(s.ecc);
    }
    Ok(diam)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IfubStep {
    /// BFS level of the root just processed.
    pub level: u32,
    pub lower: u32,
    pub upper: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IfubTrace {
    pub diameter: u32,
    pub double_sweep_lower: u32,
    /// Index of the fringe root.
    pub root: u32,
    pub root_forward_ecc: u32,
    pub root_backward_ecc: u32,
    /// Bounds before any fringe level is processed, then after each level.
    pub steps: Vec<IfubStep>,
    pub bfs_runs: usize,
}

/// Exact diameter of a strongly connected digraph.
pub fn ifub_diameter(d: &Digraph) -> Result<u32> {
    ifub_trace(d).map(|t| t.diameter)
}

/// [`ifub_diameter`] with its bound history.
pub fn ifub_trace(d: &Digraph) -> Result<IfubTrace> {
    let n = d.n();
    if n <= 1 {
        return Ok(IfubTrace {
            diameter: 0,
            double_sweep_lower: 0,
            root: 0,
            root_forward_ecc: 0,
            root_backward_ecc: 0,
            steps: Vec::new(),
            bfs_runs: 0,
        });
    }
    let mut bfs = Bfs::new(n);
    let mut runs = 0;
    let mut run = |bfs: &mut Bfs, v: usize, dir| {
        runs += 1;
        bfs.run(d, v, dir)
    };

    let start = (0..n).max_by_key(|&v| (d.out_degree(v) + d.in_degree(v), std::cmp::Reverse(v))).expect("n > 0");

    let back = run(&mut bfs, start, Direction::Backward);
    if back.reached != n {
        return Err(Error::NotStronglyConnected);
    }
    let fwd = run(&mut bfs, start, Direction::Forward);
    if fwd.reached != n {
        return Err(Error::NotStronglyConnected);
    }

    // double sweep: farthest forward from start, then backward from there
    let a = fwd.farthest as usize;
    let sweep = run(&mut bfs, a, Direction::Backward);
    let mut lower = fwd.ecc.max(sweep.ecc).max(back.ecc);
    let double_sweep_lower = lower;

    // root: middle of a shortest path from the sweep's far end to `a`
    let mut root = sweep.farthest as usize;
    for _ in 0..sweep.ecc / 2 {
        let dr = bfs.dist(root).expect("reached");
        root = d
            .out_neighbors(root)
            .iter()
            .map(|&w| w as usize)
            .find(|&w| bfs.dist(w) == Some(dr - 1))
            .expect("shortest path step");
    }

    let root_f = run(&mut bfs, root, Direction::Forward);
    let mut fwd_levels: Vec<Vec<u32>> = vec![Vec::new(); root_f.ecc as usize + 1];
    for v in 0..n {
        fwd_levels[bfs.dist(v).expect("strongly connected") as usize].push(v as u32);
    }
    let root_b = run(&mut bfs, root, Direction::Backward);
    let mut bwd_levels: Vec<Vec<u32>> = vec![Vec::new(); root_b.ecc as usize + 1];
    for v in 0..n {
        bwd_levels[bfs.dist(v).expect("strongly connected") as usize].push(v as u32);
    }
    lower = lower.max(root_f.ecc).max(root_b.ecc);

    let mut level = root_f.ecc.max(root_b.ecc);
    let mut upper = (root_f.ecc + root_b.ecc).min(2 * level).max(lower);
    let mut steps = vec![IfubStep { level: level + 1, lower, upper }];

    while lower < upper {
        // vertices far from the root: their eccentricities bound every pair
        // with an endpoint at this level
        if let Some(vs) = fwd_levels.get(level as usize) {
            for &v in vs {
                lower = lower.max(run(&mut bfs, v as usize, Direction::Backward).ecc);
            }
        }
        if let Some(vs) = bwd_levels.get(level as usize) {
            for &v in vs {
                lower = lower.max(run(&mut bfs, v as usize, Direction::Forward).ecc);
            }
        }
        let bound = lower.max(2 * level.saturating_sub(1));
        upper = upper.min(bound);
        steps.push(IfubStep { level, lower, upper });
        if level == 0 {
            break;
        }
        level -= 1;
    }

    Ok(IfubTrace {
        diameter: lower,
        double_sweep_lower,
        root: root as u32,
        root_forward_ecc: root_f.ecc,
        root_backward_ecc: root_b.ecc,
        steps,
        bfs_runs: runs,
    })
}

/// Diameter of the largest SCC of one sampled orientation.
pub fn sampled_graph_diameter(g: &DivisorGraph, o: &Orientation) -> Result<u32> {
    let d = oriented_adjacency(g, o)?;
    let labeling = strongly_connected_components(&d);
    let (core, _) = restrict_to_largest_scc(&d, &labeling);
    ifub_diameter(&core)
}

/// Symmetric digraph of the undirected divisor graph.
pub fn undirected_digraph(g: &DivisorGraph) -> Digraph {
    let mut arcs = Vec::with_capacity(2 * g.edge_count());
    for &(hi, lo) in g.edges() {
        arcs.push((hi - 1, lo - 1));
        arcs.push((lo - 1, hi - 1));
    }
    Digraph::from_index_arcs(g.n() as usize, &arcs).expect("labels within 1..=n")
}

/// Diameter of the undirected divisor graph `G_N` (connected through vertex 1).
pub fn undirected_diameter(g: &DivisorGraph) -> u32 {
    ifub_diameter(&undirected_digraph(g)).expect("G_N is connected")
}
