use gm_core::partition::{
    add_sorted, concat, gale_ryser_check, majorizes, majorizes_int, random_doubly_stochastic, sort_desc, Partition,
    RealSeq, DEFAULT_TOLERANCE,
};
use proptest::prelude::*;

fn sorted(mut v: Vec<f64>) -> RealSeq {
    v.sort_by(|a, b| b.total_cmp(a));
    RealSeq::sorted(v).unwrap()
}

fn apply(p: &[Vec<f64>], y: &[f64]) -> Vec<f64> {
    p.iter().map(|row| row.iter().zip(y).map(|(a, b)| a * b).sum()).collect()
}

/// Some `x ⊴ y`, produced by a doubly stochastic matrix.
fn below(y: &[f64], seed: u64) -> RealSeq {
    let p = random_doubly_stochastic(y.len(), seed).unwrap();
    sorted(apply(&p, y))
}

fn values(len: std::ops::Range<usize>) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-10.0f64..10.0, len)
}

fn partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(0usize..8, 0..8).prop_map(Partition::from_unsorted)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn doubly_stochastic_image_is_majorized(y in values(1..10), seed in any::<u64>()) {
        let x = below(&y, seed);
        prop_assert!(majorizes(&sorted(y), &x, DEFAULT_TOLERANCE).unwrap().holds);
    }

    #[test]
    fn appending_preserves_majorization(y in values(1..8), z in values(0..6), seed in any::<u64>()) {
        let x = below(&y, seed);
        let z = RealSeq::new(z);
        let lhs = sort_desc(&concat(&x, &z));
        let rhs = sort_desc(&concat(&sorted(y), &z));
        prop_assert!(majorizes(&rhs, &lhs, DEFAULT_TOLERANCE).unwrap().holds);
    }

    #[test]
    fn transfer_is_majorized(y in values(2..10), i in 0usize..10, j in 0usize..10, frac in 0.0f64..=1.0) {
        let y = sorted(y).values;
        let (i, j) = (i % y.len(), j % y.len());
        prop_assume!(i < j);
        let a = frac * (y[i] - y[j]) / 2.0;
        let mut moved = y.clone();
        moved[i] -= a;
        moved[j] += a;
        prop_assert!(majorizes(&sorted(y), &sorted(moved), DEFAULT_TOLERANCE).unwrap().holds);
    }

    #[test]
    fn sums_of_majorized_pairs(x in values(1..8), y in values(1..8), s1 in any::<u64>(), s2 in any::<u64>()) {
        let n = x.len().min(y.len());
        let (x, y) = (sorted(x[..n].to_vec()), sorted(y[..n].to_vec()));
        let xp = below(&x.values, s1);
        let yp = below(&y.values, s2);
        let lhs = add_sorted(&xp, &yp).unwrap();
        let rhs = add_sorted(&x, &y).unwrap();
        prop_assert!(majorizes(&rhs, &lhs, DEFAULT_TOLERANCE).unwrap().holds);
    }

    #[test]
    fn gale_ryser_on_random_matrices(rows in 1usize..7, cols in 1usize..9, bits in any::<u64>()) {
        let m: Vec<Vec<u8>> = (0..rows)
            .map(|i| (0..cols).map(|j| ((bits >> ((i * cols + j) % 64)) & 1) as u8).collect())
            .collect();
        prop_assert!(gale_ryser_check(&m).unwrap().holds);
    }

    #[test]
    fn integer_majorization_is_reflexive(p in partition()) {
        prop_assert!(majorizes_int(&p, &p).holds);
        prop_assert!(majorizes(&p.to_real(), &p.to_real(), 0.0).unwrap().holds);
    }

    #[test]
    fn integer_majorization_is_transitive(p in partition(), q in partition(), r in partition()) {
        if majorizes_int(&p, &q).holds && majorizes_int(&q, &r).holds {
            prop_assert!(majorizes_int(&p, &r).holds);
        }
        let exact = majorizes(&p.to_real(), &q.to_real(), 0.0).unwrap().holds;
        prop_assert_eq!(exact, majorizes_int(&p, &q).holds);
    }

    #[test]
    fn conjugate_properties(p in partition()) {
        let c = p.conjugate();
        prop_assert_eq!(c.conjugate(), p.clone());
        prop_assert_eq!(c.sum(), p.sum());
        prop_assert_eq!(c.nonzero_len(), p.largest());
    }
}

#[test]
fn transitivity_by_chain() {
    // Each step moves one unit down; every pair along the chain compares.
    let chain: Vec<Partition> = [vec![4], vec![3, 1], vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]]
        .into_iter()
        .map(|v| Partition::new(v).unwrap())
        .collect();
    for i in 0..chain.len() {
        for j in i..chain.len() {
            assert!(majorizes_int(&chain[i], &chain[j]).holds);
        }
    }
}
