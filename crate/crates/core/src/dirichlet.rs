//! (edge, vertex) pairs: a graph with a set `D` of deleted boundary vertices.
//!
//! The Dirichlet Laplacian is the principal submatrix of `L(G)` on the
//! undeleted vertices `U`, which equals `L(G|_U) + Diag(b)` where `b_v` counts
//! the deleted neighbours of `v`. The pair degree of any vertex (deleted or
//! not) is its number of undeleted neighbours.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gm::{build_report, gm_check, shortcut_check, GmReport};
use crate::graph::{bits, low_mask, Graph, IntMatrix};
use crate::graph6::write_graph6;
use crate::partition::{add_sorted, gale_ryser_check, majorizes, Partition, RealSeq};
use crate::spectra::{laplacian_spectrum, psd_spectrum, Spectrum, SymMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexPair {
    graph: Graph,
    deleted: u64,
}

impl VertexPair {
    pub fn new(graph: Graph, deleted: u64) -> Result<Self> {
        if deleted & !low_mask(graph.n()) != 0 {
            let vertex = 63 - deleted.leading_zeros() as usize;
            return Err(Error::VertexOutOfRange { vertex, n: graph.n() });
        }
        Ok(VertexPair { graph, deleted })
    }

    pub fn from_vertices(graph: Graph, deleted: &[usize]) -> Result<Self> {
        let mut mask = 0u64;
        for &v in deleted {
            if v >= graph.n() {
                return Err(Error::VertexOutOfRange { vertex: v, n: graph.n() });
            }
            mask |= 1 << v;
        }
        VertexPair::new(graph, mask)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn deleted_mask(&self) -> u64 {
        self.deleted
    }

    pub fn deleted(&self) -> Vec<usize> {
        bits(self.deleted).collect()
    }

    pub fn undeleted(&self) -> Vec<usize> {
        bits(low_mask(self.graph.n()) & !self.deleted).collect()
    }

    fn undeleted_mask(&self) -> u64 {
        low_mask(self.graph.n()) & !self.deleted
    }

    /// `G|_U`, relabelled in increasing vertex order.
    pub fn restricted(&self) -> Graph {
        self.graph.induced_by_mask(self.undeleted_mask())
    }

    /// Deleted neighbours `b_v` of each undeleted vertex, in `U` order.
    pub fn boundary_counts(&self) -> Vec<usize> {
        self.undeleted()
            .into_iter()
            .map(|v| (self.graph.neighbors_mask(v) & self.deleted).count_ones() as usize)
            .collect()
    }

    /// Undeleted neighbours `a_w` of each deleted vertex, in `D` order.
    pub fn deleted_counts(&self) -> Vec<usize> {
        self.deleted()
            .into_iter()
            .map(|w| (self.graph.neighbors_mask(w) & self.undeleted_mask()).count_ones() as usize)
            .collect()
    }

    /// `|D| × |U|` 0-1 matrix of crossing edges.
    pub fn cross_incidence(&self) -> Vec<Vec<u8>> {
        let u = self.undeleted();
        self.deleted()
            .into_iter()
            .map(|w| u.iter().map(|&v| self.graph.has_edge(w, v) as u8).collect())
            .collect()
    }

    /// Same pair with every edge inside `D` removed.
    pub fn without_deleted_edges(&self) -> VertexPair {
        let mut g = self.graph.clone();
        for w in self.deleted() {
            for x in bits(self.graph.neighbors_mask(w) & self.deleted) {
                g.remove_edge(w, x);
            }
        }
        VertexPair {
            graph: g,
            deleted: self.deleted,
        }
    }
}

/// Principal submatrix of `L(G)` on `U`, in integers.
pub fn dirichlet_laplacian_int(p: &VertexPair) -> Result<IntMatrix> {
    let u = p.undeleted();
    if u.is_empty() {
        return Err(Error::EmptyUndeleted);
    }
    let l = p.graph.laplacian();
    let mut out = IntMatrix::zeros(u.len(), u.len());
    for (a, &x) in u.iter().enumerate() {
        for (b, &y) in u.iter().enumerate() {
            out.set(a, b, l.get(x, y));
        }
    }
    Ok(out)
}

pub fn dirichlet_laplacian(p: &VertexPair) -> Result<SymMatrix> {
    SymMatrix::from_int(&dirichlet_laplacian_int(p)?)
}

/// Spectrum of the Dirichlet Laplacian, with near-zero values clamped.
pub fn pair_spectrum(p: &VertexPair) -> Result<Spectrum> {
    psd_spectrum(&dirichlet_laplacian(p)?)
}

/// Undeleted-neighbour counts of every vertex, in vertex order.
pub fn pair_degrees(p: &VertexPair) -> Vec<usize> {
    let u = p.undeleted_mask();
    (0..p.graph.n())
        .map(|v| (p.graph.neighbors_mask(v) & u).count_ones() as usize)
        .collect()
}

/// Sorted pair degrees over all `n` vertices.
pub fn pair_degree_sequence(p: &VertexPair) -> Partition {
    Partition::from_unsorted(pair_degrees(p))
}

/// `s(E, D) ⊴ d^T(E, D)`. With `D` empty this is exactly [`gm_check`].
pub fn pair_gm_check(p: &VertexPair, tol: f64) -> Result<GmReport> {
    let spec = pair_spectrum(p)?;
    let d = pair_degree_sequence(p);
    let total = d.sum();
    let trace: i64 = {
        let m = dirichlet_laplacian_int(p)?;
        (0..m.rows()).map(|i| m.get(i, i)).sum()
    };
    debug_assert_eq!(trace as usize, total, "trace equals the pair degree sum");
    let shortcut = if p.deleted == 0 { shortcut_check(&p.graph) } else { None };
    Ok(build_report(
        write_graph6(&p.graph),
        (p.deleted != 0).then_some(p.deleted),
        spec.values,
        d.conjugate(),
        total,
        tol,
        shortcut,
    ))
}

/// Every link of `s(E,D) ⊴ s(G|_U) + b ⊴ d^T(G|_U) + a^T = d^T(E,D)`,
/// each evaluated on its own.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReductionChainReport {
    pub graph6: String,
    pub deleted: u64,
    /// `s(E,D) ⊴ s(G|_U) + sort(b)` (Fan's inequality).
    pub link1: bool,
    /// `b ⊴ a^T` (Gale-Ryser on the crossing incidence matrix).
    pub link2: bool,
    /// `s(G|_U) ⊴ d^T(G|_U)` (GM on the undeleted part).
    pub link3: bool,
    /// `s(E,D) ⊴ d^T(E,D)`.
    #[serde(rename = "final")]
    pub final_: bool,
    /// `d^T(E,D) = d^T(G|_U) + a^T`, exactly.
    pub identity_check: bool,
    /// Spectrum and pair degrees unchanged when edges inside `D` are dropped.
    pub deleted_edges_irrelevant: bool,
    pub a: Partition,
    pub b: Partition,
}

impl ReductionChainReport {
    pub fn all_hold(&self) -> bool {
        self.link1 && self.link2 && self.link3 && self.final_ && self.identity_check && self.deleted_edges_irrelevant
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

pub fn reduction_chain_check(p: &VertexPair, tol: f64) -> Result<ReductionChainReport> {
    let spec = pair_spectrum(p)?;
    let restricted = p.restricted();
    let restricted_spec = laplacian_spectrum(&restricted);
    let a = Partition::from_unsorted(p.deleted_counts());
    let b = Partition::from_unsorted(p.boundary_counts());

    let shifted = add_sorted(&restricted_spec.as_seq(), &b.to_real())?;
    let link1 = majorizes(&shifted, &spec.as_seq(), tol)?.holds;
    let link2 = gale_ryser_check(&p.cross_incidence())?.holds;
    let link3 = gm_check(&restricted, tol).holds;
    let final_ = pair_gm_check(p, tol)?.holds;

    let pair_conj = pair_degree_sequence(p).conjugate();
    let identity_check = pair_conj == restricted.degree_sequence().conjugate().add(&a.conjugate());

    let stripped = p.without_deleted_edges();
    let deleted_edges_irrelevant =
        pair_spectrum(&stripped)?.values == spec.values && pair_degrees(&stripped) == pair_degrees(p);

    Ok(ReductionChainReport {
        graph6: write_graph6(&p.graph),
        deleted: p.deleted,
        link1,
        link2,
        link3,
        final_,
        identity_check,
        deleted_edges_irrelevant,
        a,
        b,
    })
}

/// Pair reports for every single-vertex deletion `(G, {v})`. Exploratory
/// data only; no implication back to `G` is drawn.
pub fn single_vertex_pair_reports(g: &Graph, tol: f64) -> Result<Vec<GmReport>> {
    if g.n() < 2 {
        return Ok(Vec::new());
    }
    (0..g.n())
        .map(|v| pair_gm_check(&VertexPair::new(g.clone(), 1 << v)?, tol))
        .collect()
}

/// `RealSeq` view of the boundary counts, sorted.
pub fn boundary_seq(p: &VertexPair) -> RealSeq {
    Partition::from_unsorted(p.boundary_counts()).to_real()
}
