//! Simple undirected graphs on at most 64 labelled vertices.

use std::collections::VecDeque;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;

pub const MAX_VERTICES: usize = 64;

/// Adjacency is stored as one neighbour bitmask per vertex.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Path,
    Cycle,
    Complete,
    Star,
    Empty,
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "path" => Family::Path,
            "cycle" => Family::Cycle,
            "complete" => Family::Complete,
            "star" => Family::Star,
            "empty" => Family::Empty,
            other => return Err(Error::InvalidEdgeList(format!("unknown family {other:?}"))),
        })
    }
}

/// Dense integer matrix in row-major order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// `self * self^T`.
    pub fn gram(&self) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.rows, self.rows);
        for i in 0..self.rows {
            for j in 0..self.rows {
                let v = self.row(i).iter().zip(self.row(j)).map(|(a, b)| a * b).sum();
                out.set(i, j, v);
            }
        }
        out
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }
}

impl Graph {
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(i, j) in edges {
            g.add_edge(i, j)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    /// Adds `{i, j}`; adding an existing edge is a no-op.
    pub fn add_edge(&mut self, i: usize, j: usize) -> Result<()> {
        self.check_vertex(i)?;
        self.check_vertex(j)?;
        if i == j {
            return Err(Error::SelfLoop(i));
        }
        self.adj[i] |= 1 << j;
        self.adj[j] |= 1 << i;
        Ok(())
    }

    pub fn remove_edge(&mut self, i: usize, j: usize) {
        if i < self.n && j < self.n {
            self.adj[i] &= !(1 << j);
            self.adj[j] &= !(1 << i);
        }
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i < self.n && j < self.n && self.adj[i] >> j & 1 == 1
    }

    /// Neighbourhood of `v` as a bitmask.
    pub fn neighbors_mask(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        bits(self.adj[v])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(i, j)` with `i < j`, ordered by `i` then `j`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| bits(self.adj[i] & !low_mask(i + 1)).map(move |j| (i, j)))
    }

    /// Sorted (non-increasing) degree sequence of length `n`.
    pub fn degree_sequence(&self) -> Partition {
        Partition::from_unsorted(self.degrees())
    }

    /// Conjugate of the degree sequence, padded to length `n`.
    pub fn conjugate_degrees(&self) -> Partition {
        self.degree_sequence().conjugate().padded(self.n)
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    /// Combinatorial Laplacian `D - A`.
    pub fn laplacian(&self) -> IntMatrix {
        let mut l = IntMatrix::zeros(self.n, self.n);
        for v in 0..self.n {
            l.set(v, v, self.degree(v) as i64);
            for u in self.neighbors(v) {
                l.set(v, u, -1);
            }
        }
        l
    }

    /// Signed vertex-edge incidence matrix, columns in `edges()` order.
    ///
    /// Each edge `(i, j)` with `i < j` is oriented from tail `i` (entry -1)
    /// to head `j` (entry +1).
    pub fn oriented_incidence(&self) -> IntMatrix {
        let edges: Vec<_> = self.edges().collect();
        let mut m = IntMatrix::zeros(self.n, edges.len());
        for (col, (i, j)) in edges.into_iter().enumerate() {
            m.set(i, col, -1);
            m.set(j, col, 1);
        }
        m
    }

    pub fn complement(&self) -> Graph {
        let all = low_mask(self.n);
        let adj = (0..self.n).map(|v| all & !self.adj[v] & !(1 << v)).collect();
        Graph { n: self.n, adj }
    }

    /// `A + B`: the vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_sum(&self, other: &Graph) -> Result<Graph> {
        let n = self.n + other.n;
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|&a| a << self.n));
        Ok(Graph { n, adj })
    }

    /// Union of edge sets on a common vertex set.
    pub fn edge_union(&self, other: &Graph) -> Result<Graph> {
        if self.n != other.n {
            return Err(Error::VertexCountMismatch(self.n, other.n));
        }
        let adj = self.adj.iter().zip(&other.adj).map(|(a, b)| a | b).collect();
        Ok(Graph { n: self.n, adj })
    }

    /// Like [`Graph::edge_union`] but rejects a shared edge.
    pub fn disjoint_edge_union(&self, other: &Graph) -> Result<Graph> {
        if self.n != other.n {
            return Err(Error::VertexCountMismatch(self.n, other.n));
        }
        if self.adj.iter().zip(&other.adj).any(|(a, b)| a & b != 0) {
            return Err(Error::EdgeSetsOverlap);
        }
        self.edge_union(other)
    }

    /// Subgraph induced on `vertices`, relabelled `0..len` in the given order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph> {
        for &v in vertices {
            self.check_vertex(v)?;
        }
        let mut g = Graph::empty(vertices.len())?;
        for (a, &u) in vertices.iter().enumerate() {
            for (b, &v) in vertices.iter().enumerate().skip(a + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(a, b)?;
                }
            }
        }
        Ok(g)
    }

    /// Subgraph induced on the vertices whose bit is set in `mask`.
    pub fn induced_by_mask(&self, mask: u64) -> Graph {
        let verts: Vec<usize> = bits(mask & low_mask(self.n)).collect();
        self.induced_subgraph(&verts).expect("mask restricted to range")
    }

    /// Applies `perm`, sending vertex `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::VertexCountMismatch(perm.len(), self.n));
        }
        let mut g = Graph::empty(self.n)?;
        for (i, j) in self.edges() {
            g.add_edge(perm[i], perm[j])?;
        }
        Ok(g)
    }

    pub fn isolated_vertices(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.adj[v] == 0).collect()
    }

    /// Copy with isolated vertices removed.
    pub fn without_isolated(&self) -> Graph {
        let keep: Vec<usize> = (0..self.n).filter(|&v| self.adj[v] != 0).collect();
        self.induced_subgraph(&keep).expect("in range")
    }

    /// Connected components as vertex bitmasks, ordered by smallest vertex.
    pub fn components(&self) -> Vec<u64> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen >> s & 1 == 1 {
                continue;
            }
            let mut comp = 1u64 << s;
            let mut frontier = comp;
            while frontier != 0 {
                let mut next = 0;
                for v in bits(frontier) {
                    next |= self.adj[v];
                }
                frontier = next & !comp;
                comp |= next;
            }
            seen |= comp;
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    fn eccentricity(&self, s: usize) -> Option<usize> {
        let mut dist = vec![usize::MAX; self.n];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        let mut far = 0;
        while let Some(v) = queue.pop_front() {
            far = far.max(dist[v]);
            for u in self.neighbors(v) {
                if dist[u] == usize::MAX {
                    dist[u] = dist[v] + 1;
                    queue.push_back(u);
                }
            }
        }
        dist.iter().all(|&d| d != usize::MAX).then_some(far)
    }

    /// Longest shortest path; `None` when disconnected.
    pub fn diameter(&self) -> Option<usize> {
        let mut best = 0;
        for s in 0..self.n {
            best = best.max(self.eccentricity(s)?);
        }
        Some(best)
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.edge_count() == self.n - 1 && self.is_connected()
    }

    /// Recovers a creation sequence (0 = isolated, 1 = dominating) by peeling
    /// isolated or dominating vertices; `None` if the graph is not threshold.
    pub fn threshold_creation_sequence(&self) -> Option<Vec<u8>> {
        let mut alive = low_mask(self.n);
        let mut rev = Vec::with_capacity(self.n);
        while alive != 0 {
            let count = alive.count_ones();
            let pick = bits(alive).find_map(|v| {
                let d = (self.adj[v] & alive).count_ones();
                if d == 0 {
                    Some((v, 0))
                } else if d == count - 1 {
                    Some((v, 1))
                } else {
                    None
                }
            })?;
            alive &= !(1 << pick.0);
            rev.push(if alive == 0 { 0 } else { pick.1 });
        }
        rev.reverse();
        Some(rev)
    }

    pub fn is_threshold(&self) -> bool {
        self.threshold_creation_sequence().is_some()
    }
}

/// Threshold graph from a creation sequence: vertex `k` is added isolated for
/// bit 0 or joined to all earlier vertices for bit 1.
pub fn threshold_graph(creation: &[u8]) -> Result<Graph> {
    if creation.is_empty() {
        return Err(Error::EmptyCreationSequence);
    }
    let mut g = Graph::empty(creation.len())?;
    for (k, &bit) in creation.iter().enumerate() {
        if bit != 0 {
            for j in 0..k {
                g.add_edge(j, k)?;
            }
        }
    }
    Ok(g)
}

/// Decodes a Prüfer sequence into a labelled tree on `len + 2` vertices.
pub fn tree_from_prufer(seq: &[usize]) -> Result<Graph> {
    let n = seq.len() + 2;
    let mut g = Graph::empty(n)?;
    if let Some(&entry) = seq.iter().find(|&&e| e >= n) {
        return Err(Error::PruferOutOfRange { entry, n });
    }
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    for &s in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf always exists");
        g.add_edge(leaf, s)?;
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    g.add_edge(rest[0], rest[1])?;
    Ok(g)
}

/// Standard families. The star has its centre at vertex 0.
pub fn standard_family(kind: Family, n: usize) -> Result<Graph> {
    let mut g = Graph::empty(n)?;
    match kind {
        Family::Empty => {}
        Family::Path => {
            for v in 1..n {
                g.add_edge(v - 1, v)?;
            }
        }
        Family::Cycle => {
            for v in 1..n {
                g.add_edge(v - 1, v)?;
            }
            if n >= 3 {
                g.add_edge(n - 1, 0)?;
            }
        }
        Family::Complete => {
            for i in 0..n {
                for j in i + 1..n {
                    g.add_edge(i, j)?;
                }
            }
        }
        Family::Star => {
            for v in 1..n {
                g.add_edge(0, v)?;
            }
        }
    }
    Ok(g)
}

/// Erdős–Rényi graph, deterministic in `seed`.
pub fn random_graph(n: usize, edge_probability: f64, seed: u64) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_graph_with(n, edge_probability, &mut rng)
}

pub fn random_graph_with<R: Rng>(n: usize, edge_probability: f64, rng: &mut R) -> Result<Graph> {
    let mut g = Graph::empty(n)?;
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(edge_probability.clamp(0.0, 1.0)) {
                g.add_edge(i, j)?;
            }
        }
    }
    Ok(g)
}

/// Parses the edge-list text format: a header line `n m` followed by `m`
/// lines `i j` with 0-based vertices. Blank lines and `#` comments are skipped.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let bad = |msg: String| Error::InvalidEdgeList(msg);
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| bad("missing header".into()))?;
    let nums = |line: &str| -> Result<Vec<usize>> {
        line.split_whitespace()
            .map(|t| t.parse().map_err(|_| bad(format!("bad number {t:?}"))))
            .collect()
    };
    let head = nums(header)?;
    let [n, m] = head[..] else {
        return Err(bad(format!("header must be `n m`, got {header:?}")));
    };
    let mut g = Graph::empty(n)?;
    let mut count = 0;
    for line in lines {
        let pair = nums(line)?;
        let [i, j] = pair[..] else {
            return Err(bad(format!("edge line must be `i j`, got {line:?}")));
        };
        g.add_edge(i, j)?;
        count += 1;
    }
    if count != m {
        return Err(bad(format!("header declares {m} edges, found {count}")));
    }
    Ok(g)
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for (i, j) in g.edges() {
        out.push_str(&format!("{i} {j}\n"));
    }
    out
}

pub(crate) fn low_mask(k: usize) -> u64 {
    if k >= 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

/// Positions of set bits, ascending.
pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let b = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(b)
        }
    })
}
