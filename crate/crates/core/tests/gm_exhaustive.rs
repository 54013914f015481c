use std::collections::BTreeSet;

use gm_core::enumeration::{all_graphs, all_trees};
use gm_core::gm::{first_two_inequalities, gm_check, shortcut_check};
use gm_core::graph::{threshold_graph, Graph};
use gm_core::graph6::write_graph6;
use gm_core::partition::DEFAULT_TOLERANCE;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for k in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| (0..=k).map(move |pos| {
                let mut q = p.clone();
                q.insert(pos, k);
                q
            }))
            .collect();
    }
    out
}

/// Isomorphism classes by brute force: least graph6 over all relabellings.
fn labelled_classes(n: usize) -> usize {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    for mask in 0u32..1 << pairs.len() {
        let edges: Vec<_> = pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &e)| e).collect();
        let g = Graph::from_edges(n, &edges).unwrap();
        let key = perms.iter().map(|p| write_graph6(&g.relabel(p).unwrap())).min().unwrap();
        seen.insert(key);
    }
    seen.len()
}

#[test]
fn class_counts_match_brute_force() {
    for (n, expect) in [(1, 1), (2, 2), (3, 4), (4, 11), (5, 34), (6, 156)] {
        assert_eq!(all_graphs(n).unwrap().len(), expect, "n = {n}");
        if n <= 5 {
            assert_eq!(labelled_classes(n), expect, "oracle n = {n}");
        }
    }
    assert_eq!(all_graphs(7).unwrap().len(), 1044);
}

#[test]
fn tree_counts() {
    let expect = [1, 1, 2, 3, 6, 11, 23, 47, 106];
    for (n, &e) in (2..=10).zip(&expect) {
        let trees = all_trees(n).unwrap();
        assert_eq!(trees.len(), e, "n = {n}");
        assert!(trees.iter().all(Graph::is_tree));
    }
}

#[test]
fn gm_holds_up_to_seven_vertices() {
    for n in 1..=7 {
        for g in all_graphs(n).unwrap() {
            let r = gm_check(&g, DEFAULT_TOLERANCE);
            assert!(r.holds, "{}", r.to_text());
            assert_eq!(r.equality, g.is_threshold(), "{}", write_graph6(&g));
            assert_eq!(first_two_inequalities(&g), (true, true));
        }
    }
}

#[test]
fn small_graphs_close_by_degree() {
    for n in 1..=5 {
        for g in all_graphs(n).unwrap() {
            assert!(g.max_degree() <= 3 || g.complement().max_degree() <= 3);
            assert!(shortcut_check(&g).is_some());
        }
    }
}

#[test]
fn threshold_graphs_attain_equality() {
    for n in 1..=8usize {
        for bits in 0u32..1 << (n - 1) {
            let seq: Vec<u8> = std::iter::once(0).chain((0..n - 1).map(|i| (bits >> i & 1) as u8)).collect();
            let g = threshold_graph(&seq).unwrap();
            let r = gm_check(&g, DEFAULT_TOLERANCE);
            assert!(r.holds && r.equality);
        }
    }
}
