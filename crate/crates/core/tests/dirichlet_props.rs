use gm_core::dirichlet::{pair_gm_check, reduction_chain_check, VertexPair};
use gm_core::gm::gm_check;
use gm_core::graph::random_graph;
use gm_core::partition::DEFAULT_TOLERANCE;
use proptest::prelude::*;

fn pair() -> impl Strategy<Value = VertexPair> {
    (2usize..13, 0.0f64..=1.0, any::<u64>(), any::<u64>()).prop_filter_map("U non-empty", |(n, p, seed, d)| {
        let deleted = d & ((1u64 << n) - 1);
        (deleted.count_ones() < n as u32).then(|| VertexPair::new(random_graph(n, p, seed).unwrap(), deleted).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn reduction_chain_holds(p in pair()) {
        let r = reduction_chain_check(&p, DEFAULT_TOLERANCE).unwrap();
        prop_assert!(r.all_hold(), "{}", r.to_json());
    }

    #[test]
    fn empty_deletion_is_plain_gm(n in 1usize..13, prob in 0.0f64..=1.0, seed in any::<u64>()) {
        let g = random_graph(n, prob, seed).unwrap();
        let r = pair_gm_check(&VertexPair::new(g.clone(), 0).unwrap(), DEFAULT_TOLERANCE).unwrap();
        prop_assert_eq!(r.to_json(), gm_check(&g, DEFAULT_TOLERANCE).to_json());
    }
}
