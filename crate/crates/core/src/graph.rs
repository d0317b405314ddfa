//! The divisor graph, its reference orientation, and seeded random orientations.
//!
//! Vertices carry the labels `1..=n`. Internally every array is 0-based, so
//! the vertex with label `v` lives at index `v - 1`; methods that take or
//! return *labels* say so, everything else speaks indices.
//!
//! Edges are enumerated in canonical order: lexicographic in `(hi, lo)` with
//! `lo | hi` and `lo < hi`. Orientation bits, dumps, and random-number
//! consumption all follow that order.

use std::fmt::Write as _;

use crate::error::{invalid, Error, Result};
use crate::format::sig17;
use crate::rng::{stream_seed, SplitMix64};

/// Compressed sparse rows over 0-based vertex indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Csr {
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

impl Csr {
    /// Builds rows from `(source, target)` index pairs, keeping input order
    /// within each row.
    pub fn from_pairs(n: usize, pairs: impl Iterator<Item = (u32, u32)> + Clone) -> Self {
        let mut offsets = vec![0usize; n + 1];
        for (s, _) in pairs.clone() {
            offsets[s as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let mut cursor = offsets.clone();
        let mut targets = vec![0u32; offsets[n]];
        for (s, t) in pairs {
            targets[cursor[s as usize]] = t;
            cursor[s as usize] += 1;
        }
        Csr { offsets, targets }
    }

    #[inline]
    pub fn row(&self, v: usize) -> &[u32] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn rows(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn entries(&self) -> usize {
        self.targets.len()
    }
}

/// Divisor graph `G_N` with its reference orientation `hi -> lo`.
#[derive(Debug, Clone)]
pub struct DivisorGraph {
    n: u32,
    edges: Vec<(u32, u32)>,
    fwd: Csr,
    rev: Csr,
}

/// Builds `G_N` in `O(N log N)` by enumerating multiples.
pub fn build_divisor_graph(n: u32) -> Result<DivisorGraph> {
    if n == 0 {
        return Err(invalid("divisor graph needs N >= 1"));
    }
    if n > i32::MAX as u32 {
        return Err(invalid("N must fit in 31 bits"));
    }
    let nu = n as usize;
    // proper-divisor counts give the row lengths of (hi, lo) ordering
    let mut start = vec![0usize; nu + 2];
    for lo in 1..=nu {
        for hi in (2 * lo..=nu).step_by(lo) {
            start[hi + 1] += 1;
        }
    }
    for i in 1..=nu + 1 {
        start[i] += start[i - 1];
    }
    let mut cursor = start.clone();
    let mut edges = vec![(0u32, 0u32); start[nu + 1]];
    for lo in 1..=nu {
        for hi in (2 * lo..=nu).step_by(lo) {
            edges[cursor[hi]] = (hi as u32, lo as u32);
            cursor[hi] += 1;
        }
    }
    let idx = edges.iter().map(|&(hi, lo)| (hi - 1, lo - 1));
    let fwd = Csr::from_pairs(nu, idx.clone());
    let rev = Csr::from_pairs(nu, idx.map(|(h, l)| (l, h)));
    Ok(DivisorGraph { n, edges, fwd, rev })
}

impl DivisorGraph {
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Canonical `(hi, lo)` label pairs.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Reference orientation rows: index `v` maps to its proper divisors.
    pub fn divisors_csr(&self) -> &Csr {
        &self.fwd
    }

    /// Reverse rows: index `v` maps to its proper multiples `<= n`.
    pub fn multiples_csr(&self) -> &Csr {
        &self.rev
    }

    /// Undirected neighbours of index `v`.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = u32> + '_ {
        self.fwd.row(v).iter().chain(self.rev.row(v)).copied()
    }
}

/// Where a sampled orientation came from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Provenance {
    pub master_seed: u64,
    pub rho_index: u64,
    pub sample_index: u64,
    pub rho: f64,
}

/// One bit per canonical edge; a set bit reverses the edge to `lo -> hi`.
#[derive(Debug, Clone, PartialEq)]
pub struct Orientation {
    words: Vec<u64>,
    len: usize,
    provenance: Option<Provenance>,
}

impl Orientation {
    pub fn zeros(len: usize) -> Self {
        Orientation { words: vec![0; len.div_ceil(64)], len, provenance: None }
    }

    pub fn ones(len: usize) -> Self {
        let mut o = Self::zeros(len);
        for i in 0..len {
            o.set(i, true);
        }
        o
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut o = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            o.set(i, b);
        }
        o
    }

    /// Low `len` bits of `mask`, bit `i` for edge `i`.
    pub fn from_mask(mask: u64, len: usize) -> Self {
        assert!(len <= 64);
        let mut o = Self::zeros(len);
        if len > 0 {
            o.words[0] = if len == 64 { mask } else { mask & ((1u64 << len) - 1) };
        }
        o
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len);
        let bit = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= bit;
        } else {
            self.words[i / 64] &= !bit;
        }
    }

    /// Number of reversed edges.
    pub fn flip_count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Every edge reversed relative to `self`.
    pub fn complement(&self) -> Self {
        let mut o = self.clone();
        for i in 0..o.len {
            o.set(i, !self.get(i));
        }
        o.provenance = None;
        o
    }

    pub fn provenance(&self) -> Option<Provenance> {
        self.provenance
    }

    pub fn bit_string(&self) -> String {
        (0..self.len).map(|i| if self.get(i) { '1' } else { '0' }).collect()
    }

    /// Debug dump: `N=<n> E=<e> seed=<s> idx=<i> rho=<r>` then the bit string.
    pub fn dump(&self, graph: &DivisorGraph) -> String {
        let mut s = String::new();
        let (seed, idx, rho) = match self.provenance {
            Some(p) => (p.master_seed.to_string(), p.sample_index.to_string(), sig17(p.rho)),
            None => ("-".to_string(), "-".to_string(), "-".to_string()),
        };
        writeln!(s, "N={} E={} seed={seed} idx={idx} rho={rho}", graph.n(), self.len).unwrap();
        s.push_str(&self.bit_string());
        s.push('\n');
        s
    }

    /// Reads the flip bits back from [`Orientation::dump`] output.
    pub fn parse_dump(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::Malformed("empty dump".into()))?;
        let e: usize = header
            .split_whitespace()
            .find_map(|f| f.strip_prefix("E="))
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| Error::Malformed(format!("bad header {header:?}")))?;
        let bits = lines.next().unwrap_or("").trim();
        if bits.len() != e {
            return Err(Error::LengthMismatch { expected: e, got: bits.len() });
        }
        let parsed: Option<Vec<bool>> = bits
            .chars()
            .map(|c| match c {
                '0' => Some(false),
                '1' => Some(true),
                _ => None,
            })
            .collect();
        let parsed = parsed.ok_or_else(|| Error::Malformed("non-binary flip string".into()))?;
        Ok(Self::from_bits(&parsed))
    }
}

/// Master seed plus the rho coordinate of the stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeedSpec {
    pub master_seed: u64,
    pub rho_index: u64,
}

impl SeedSpec {
    pub fn new(master_seed: u64, rho_index: u64) -> Self {
        SeedSpec { master_seed, rho_index }
    }

    /// Stream seed for one sample of `D_rho(n)`: mixes `(master, n, rho_index, sample_index)`.
    pub fn stream(&self, n: u32, sample_index: u64) -> u64 {
        stream_seed(self.master_seed, &[u64::from(n), self.rho_index, sample_index])
    }
}

pub(crate) fn check_rho(rho: f64) -> Result<()> {
    if (0.0..=1.0).contains(&rho) {
        Ok(())
    } else {
        Err(invalid(format!("rho must lie in [0,1], got {rho}")))
    }
}

/// Reverses each canonical edge independently with probability `rho`.
pub fn sample_orientation(g: &DivisorGraph, rho: f64, seed: &SeedSpec, sample_index: u64) -> Result<Orientation> {
    check_rho(rho)?;
    let mut rng = SplitMix64::new(seed.stream(g.n(), sample_index));
    let mut o = Orientation::zeros(g.edge_count());
    for (w, word) in o.words.iter_mut().enumerate() {
        let bits = (g.edge_count() - w * 64).min(64);
        let mut acc = 0u64;
        for b in 0..bits {
            if rng.bernoulli(rho) {
                acc |= 1 << b;
            }
        }
        *word = acc;
    }
    o.provenance = Some(Provenance { master_seed: seed.master_seed, rho_index: seed.rho_index, sample_index, rho });
    Ok(o)
}

/// A concrete directed graph in CSR form (out- and in-adjacency).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    out: Csr,
    inc: Csr,
}

impl Digraph {
    /// From 0-based `(source, target)` index arcs.
    pub fn from_index_arcs(n: usize, arcs: &[(u32, u32)]) -> Result<Self> {
        if arcs.iter().any(|&(s, t)| s as usize >= n || t as usize >= n) {
            return Err(invalid(format!("arc endpoint outside 0..{n}")));
        }
        let out = Csr::from_pairs(n, arcs.iter().copied());
        let inc = Csr::from_pairs(n, arcs.iter().map(|&(s, t)| (t, s)));
        Ok(Digraph { out, inc })
    }

    /// From 1-based label arcs.
    pub fn from_label_arcs(n: usize, arcs: &[(u32, u32)]) -> Result<Self> {
        if arcs.iter().any(|&(s, t)| s == 0 || t == 0) {
            return Err(invalid("vertex labels start at 1"));
        }
        let idx: Vec<(u32, u32)> = arcs.iter().map(|&(s, t)| (s - 1, t - 1)).collect();
        Self::from_index_arcs(n, &idx)
    }

    pub fn n(&self) -> usize {
        self.out.rows()
    }

    pub fn arc_count(&self) -> usize {
        self.out.entries()
    }

    #[inline]
    pub fn out_neighbors(&self, v: usize) -> &[u32] {
        self.out.row(v)
    }

    #[inline]
    pub fn in_neighbors(&self, v: usize) -> &[u32] {
        self.inc.row(v)
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out.degree(v)
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.inc.degree(v)
    }

    /// All arcs as 0-based index pairs, grouped by source.
    pub fn index_arcs(&self) -> Vec<(u32, u32)> {
        (0..self.n()).flat_map(|v| self.out_neighbors(v).iter().map(move |&t| (v as u32, t))).collect()
    }

    /// Every arc reversed.
    pub fn reversed(&self) -> Digraph {
        Digraph { out: self.inc.clone(), inc: self.out.clone() }
    }

    /// Induced subgraph on the given indices; vertex `i` of the result is
    /// `vertices[i]` of `self`.
    pub fn induced(&self, vertices: &[u32]) -> Digraph {
        let mut local = vec![u32::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v as usize] = i as u32;
        }
        let mut arcs = Vec::new();
        for (i, &v) in vertices.iter().enumerate() {
            for &t in self.out_neighbors(v as usize) {
                let lt = local[t as usize];
                if lt != u32::MAX {
                    arcs.push((i as u32, lt));
                }
            }
        }
        Digraph::from_index_arcs(vertices.len(), &arcs).expect("local indices in range")
    }
}

/// Realises an orientation: edge `i` becomes `hi -> lo` when its bit is
/// clear and `lo -> hi` when set.
pub fn oriented_adjacency(g: &DivisorGraph, o: &Orientation) -> Result<Digraph> {
    if o.len() != g.edge_count() {
        return Err(Error::LengthMismatch { expected: g.edge_count(), got: o.len() });
    }
    let arcs =
        g.edges().iter().enumerate().map(|(i, &(hi, lo))| if o.get(i) { (lo - 1, hi - 1) } else { (hi - 1, lo - 1) });
    let n = g.n() as usize;
    Ok(Digraph { out: Csr::from_pairs(n, arcs.clone()), inc: Csr::from_pairs(n, arcs.map(|(s, t)| (t, s))) })
}
