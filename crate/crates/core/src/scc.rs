//! Strongly connected components.
//!
//! [`strongly_connected_components`] is an iterative Tarjan with an explicit
//! frame stack and runs in linear time. Component ids come out in reverse topological order of the
//! condensation, i.e. every arc between distinct components goes from a
//! higher id to a lower one.

use crate::error::{invalid, Result};
use crate::graph::Digraph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentLabeling {
    comp_id: Vec<u32>,
    comp_sizes: Vec<u32>,
}

impl ComponentLabeling {
    /// Component index of vertex index `v`.
    pub fn component_of(&self, v: usize) -> u32 {
        self.comp_id[v]
    }

    pub fn comp_ids(&self) -> &[u32] {
        &self.comp_id
    }

    pub fn comp_sizes(&self) -> &[u32] {
        &self.comp_sizes
    }

    pub fn num_components(&self) -> usize {
        self.comp_sizes.len()
    }

    pub fn n(&self) -> usize {
        self.comp_id.len()
    }

    /// Index of the largest component; ties go to the one containing the
    /// smallest vertex label. `None` only for the empty graph.
    pub fn largest_component(&self) -> Option<u32> {
        let best = *self.comp_sizes.iter().max()?;
        // first vertex (smallest label) whose component has maximal size
        self.comp_id.iter().copied().find(|&c| self.comp_sizes[c as usize] == best)
    }

    /// Vertex indices of component `c`, ascending.
    pub fn members(&self, c: u32) -> Vec<u32> {
        (0..self.comp_id.len() as u32).filter(|&v| self.comp_id[v as usize] == c).collect()
    }

    /// Component ids renumbered by first appearance, for comparing two
    /// labelings of the same graph as partitions.
    pub fn canonical_partition(&self) -> Vec<u32> {
        let mut map = vec![u32::MAX; self.comp_sizes.len()];
        let mut next = 0;
        self.comp_id
            .iter()
            .map(|&c| {
                if map[c as usize] == u32::MAX {
                    map[c as usize] = next;
                    next += 1;
                }
                map[c as usize]
            })
            .collect()
    }
}

const UNVISITED: u32 = u32::MAX;

pub fn strongly_connected_components(d: &Digraph) -> ComponentLabeling {
    let n = d.n();
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0u32; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<u32> = Vec::new();
    let mut frames: Vec<(u32, usize)> = Vec::new();
    let mut comp_id = vec![0u32; n];
    let mut comp_sizes = Vec::new();
    let mut counter = 0u32;

    for root in 0..n {
        if index[root] != UNVISITED {
            continue;
        }
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root as u32);
        on_stack[root] = true;
        frames.push((root as u32, 0));

        while let Some(frame) = frames.last_mut() {
            let v = frame.0 as usize;
            let succ = d.out_neighbors(v);
            if frame.1 < succ.len() {
                let w = succ[frame.1] as usize;
                frame.1 += 1;
                if index[w] == UNVISITED {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w as u32);
                    on_stack[w] = true;
                    frames.push((w as u32, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            frames.pop();
            if low[v] == index[v] {
                let c = comp_sizes.len() as u32;
                let mut size = 0;
                loop {
                    let w = stack.pop().expect("tarjan stack") as usize;
                    on_stack[w] = false;
                    comp_id[w] = c;
                    size += 1;
                    if w == v {
                        break;
                    }
                }
                comp_sizes.push(size);
            }
            if let Some(&(parent, _)) = frames.last() {
                let p = parent as usize;
                low[p] = low[p].min(low[v]);
            }
        }
    }
    ComponentLabeling { comp_id, comp_sizes }
}

/// Size of the largest component; 0 only for the empty graph.
pub fn largest_scc_size(labeling: &ComponentLabeling) -> u32 {
    labeling.comp_sizes.iter().copied().max().unwrap_or(0)
}

/// Size of the component containing the vertex with 1-based `label`.
pub fn scc_size_of_vertex(labeling: &ComponentLabeling, label: u32) -> Result<u32> {
    if label == 0 || label as usize > labeling.n() {
        return Err(invalid(format!("vertex label {label} outside 1..={}", labeling.n())));
    }
    Ok(labeling.comp_sizes[labeling.comp_id[label as usize - 1] as usize])
}

/// Mutual-reachability classes from a bitset transitive closure. Test oracle
/// for graphs with at most 64 vertices; components are numbered by their
/// smallest vertex.
pub fn brute_force_scc(d: &Digraph) -> Result<ComponentLabeling> {
    let n = d.n();
    if n > 64 {
        return Err(invalid(format!("brute-force SCC handles at most 64 vertices, got {n}")));
    }
    let mut reach: Vec<u64> =
        (0..n).map(|v| d.out_neighbors(v).iter().fold(1u64 << v, |m, &w| m | 1u64 << w)).collect();
    for k in 0..n {
        for i in 0..n {
            if reach[i] >> k & 1 == 1 {
                reach[i] |= reach[k];
            }
        }
    }
    let mut comp_id = vec![u32::MAX; n];
    let mut comp_sizes = Vec::new();
    for v in 0..n {
        if comp_id[v] != u32::MAX {
            continue;
        }
        let c = comp_sizes.len() as u32;
        let mut size = 0;
        for w in v..n {
            if reach[v] >> w & 1 == 1 && reach[w] >> v & 1 == 1 {
                comp_id[w] = c;
                size += 1;
            }
        }
        comp_sizes.push(size);
    }
    Ok(ComponentLabeling { comp_id, comp_sizes })
}
