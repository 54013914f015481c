//! Canonical labelling for small graphs.
//!
//! Vertices start in cells ordered by degree, cells are refined until every
//! vertex in a cell sees the same number of neighbours in each cell, and the
//! search then individualizes one vertex of the first non-trivial cell at a
//! time. Each discrete leaf gives a vertex order; the canonical form is the
//! smallest upper-triangle code over all leaves. Twin vertices (swappable by
//! an automorphism fixing everything else) are branched on only once.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6::write_graph6;

pub const CANONICAL_MAX_VERTICES: usize = 10;

type Cells = Vec<Vec<usize>>;

fn refine(g: &Graph, mut cells: Cells) -> Cells {
    let n = g.n();
    let mut cell_of = vec![0usize; n];
    loop {
        for (c, cell) in cells.iter().enumerate() {
            for &v in cell {
                cell_of[v] = c;
            }
        }
        let mut keyed: Vec<(usize, Vec<u8>, usize)> = (0..n)
            .map(|v| {
                let mut counts = vec![0u8; cells.len()];
                for u in g.neighbors(v) {
                    counts[cell_of[u]] += 1;
                }
                (cell_of[v], counts, v)
            })
            .collect();
        keyed.sort();
        let mut next: Cells = Vec::with_capacity(cells.len());
        for (i, (c, counts, v)) in keyed.iter().enumerate() {
            let new_cell = i == 0 || {
                let (pc, pcounts, _) = &keyed[i - 1];
                pc != c || pcounts != counts
            };
            if new_cell {
                next.push(vec![*v]);
            } else {
                next.last_mut().unwrap().push(*v);
            }
        }
        if next.len() == cells.len() {
            return next;
        }
        cells = next;
    }
}

fn code(g: &Graph, order: &[usize]) -> u64 {
    let mut c = 0u64;
    for j in 1..order.len() {
        for i in 0..j {
            c = c << 1 | g.has_edge(order[i], order[j]) as u64;
        }
    }
    c
}

fn are_twins(g: &Graph, u: usize, v: usize) -> bool {
    g.neighbors_mask(u) & !(1 << v) == g.neighbors_mask(v) & !(1 << u)
}

fn search(g: &Graph, cells: Cells, best: &mut Option<(u64, Vec<usize>)>) {
    let Some(t) = cells.iter().position(|c| c.len() > 1) else {
        let order: Vec<usize> = cells.into_iter().flatten().collect();
        let c = code(g, &order);
        if best.as_ref().is_none_or(|(b, _)| c < *b) {
            *best = Some((c, order));
        }
        return;
    };
    let target = &cells[t];
    let mut reps: Vec<usize> = Vec::new();
    for &v in target {
        if reps.iter().any(|&r| are_twins(g, r, v)) {
            continue;
        }
        reps.push(v);
        let mut next = Vec::with_capacity(cells.len() + 1);
        next.extend_from_slice(&cells[..t]);
        next.push(vec![v]);
        next.push(target.iter().copied().filter(|&u| u != v).collect());
        next.extend_from_slice(&cells[t + 1..]);
        search(g, refine(g, next), best);
    }
}

/// Canonical vertex order: position `k` holds the original vertex placed at `k`.
pub fn canonical_order(g: &Graph) -> Result<Vec<usize>> {
    if g.n() > CANONICAL_MAX_VERTICES {
        return Err(Error::CanonicalBound(g.n()));
    }
    if g.n() == 0 {
        return Ok(Vec::new());
    }
    let mut best = None;
    search(g, refine(g, vec![(0..g.n()).collect()]), &mut best);
    Ok(best.expect("at least one leaf").1)
}

/// Canonically relabelled copy of `g`.
pub fn canonical_graph(g: &Graph) -> Result<Graph> {
    let order = canonical_order(g)?;
    let mut perm = vec![0; order.len()];
    for (k, &v) in order.iter().enumerate() {
        perm[v] = k;
    }
    g.relabel(&perm)
}

/// graph6 bytes of the canonical relabelling; equal iff the graphs are isomorphic.
pub fn canonical_form(g: &Graph) -> Result<Vec<u8>> {
    Ok(write_graph6(&canonical_graph(g)?).into_bytes())
}
