use gm_core::graph::{random_graph, Graph};
use gm_core::partition::{concat, majorizes, sort_desc, add_sorted, DEFAULT_TOLERANCE};
use gm_core::spectra::{eigenvalues_sym, laplacian_matrix, laplacian_spectrum, psd_spectrum, SymMatrix};
use proptest::prelude::*;

/// `L(G) + X X^T` for a random real `X`.
fn psd(g: &Graph, x: &[f64]) -> SymMatrix {
    let n = g.n();
    let k = x.len() / n;
    let l = laplacian_matrix(g);
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let gram: f64 = (0..k).map(|t| x[i * k + t] * x[j * k + t]).sum();
                    l.get(i, j) + gram
                })
                .collect()
        })
        .collect();
    SymMatrix::from_rows(&rows).unwrap()
}

fn pair() -> impl Strategy<Value = (SymMatrix, SymMatrix)> {
    (2usize..9, any::<u64>(), any::<u64>(), 1usize..4).prop_flat_map(|(n, s1, s2, k)| {
        prop::collection::vec(-1.5f64..1.5, 2 * n * k).prop_map(move |x| {
            let a = psd(&random_graph(n, 0.5, s1).unwrap(), &x[..n * k]);
            let b = psd(&random_graph(n, 0.5, s2).unwrap(), &x[n * k..]);
            (a, b)
        })
    })
}

fn graph() -> impl Strategy<Value = Graph> {
    (1usize..13, 0.0f64..=1.0, any::<u64>()).prop_map(|(n, p, seed)| random_graph(n, p, seed).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn union_of_spectra_below_sum((a, b) in pair()) {
        let la = psd_spectrum(&a).unwrap().as_seq();
        let lb = psd_spectrum(&b).unwrap().as_seq();
        let lab = psd_spectrum(&a.add(&b).unwrap()).unwrap().as_seq();
        let tol = 1e-7 * (1.0 + a.frobenius_norm() + b.frobenius_norm());
        prop_assert!(majorizes(&lab, &sort_desc(&concat(&la, &lb)), tol).unwrap().holds);
    }

    #[test]
    fn fan_inequality((a, b) in pair()) {
        let la = psd_spectrum(&a).unwrap().as_seq();
        let lb = psd_spectrum(&b).unwrap().as_seq();
        let lab = psd_spectrum(&a.add(&b).unwrap()).unwrap().as_seq();
        let tol = 1e-7 * (1.0 + a.frobenius_norm() + b.frobenius_norm());
        prop_assert!(majorizes(&add_sorted(&la, &lb).unwrap(), &lab, tol).unwrap().holds);
    }

    #[test]
    fn complement_duality(g in graph()) {
        let n = g.n();
        let s = laplacian_spectrum(&g).values;
        let c = laplacian_spectrum(&g.complement()).values;
        // 1-based: λ_i(G) = n - λ_{n-i}(Ḡ) for i < n.
        for i in 1..n {
            prop_assert!((s[i - 1] - (n as f64 - c[n - i - 1])).abs() <= 2.0 * DEFAULT_TOLERANCE);
        }
    }

    #[test]
    fn trace_kernel_and_nonnegativity(g in graph()) {
        let s = laplacian_spectrum(&g);
        let two_m = 2.0 * g.edge_count() as f64;
        prop_assert!((s.sum() - two_m).abs() <= 1e-8 * two_m.max(1.0));
        prop_assert!(s.values.iter().all(|&x| x >= 0.0));
        prop_assert_eq!(*s.values.last().unwrap(), 0.0);
        let zeros = s.values.iter().filter(|&&x| x == 0.0).count();
        prop_assert_eq!(zeros, g.components().len());
    }

    #[test]
    fn degrees_below_spectrum_below_conjugate(g in graph()) {
        let s = laplacian_spectrum(&g).as_seq();
        let d = g.degree_sequence();
        prop_assert!(majorizes(&s, &d.to_real(), DEFAULT_TOLERANCE).unwrap().holds);
        prop_assert!(majorizes(&g.conjugate_degrees().to_real(), &d.to_real(), 0.0).unwrap().holds);
    }

    #[test]
    fn incidence_factors_laplacian(g in graph()) {
        prop_assert_eq!(g.oriented_incidence().gram(), g.laplacian());
    }
}

#[test]
fn sum_of_squares_matches_frobenius() {
    for seed in 0..50 {
        let g = random_graph(5 + (seed as usize % 40), 0.3, seed).unwrap();
        let m = laplacian_matrix(&g);
        let s = eigenvalues_sym(&m).unwrap();
        let f2 = m.frobenius_norm().powi(2);
        let sq: f64 = s.values.iter().map(|x| x * x).sum();
        assert!((sq - f2).abs() <= 1e-8 * f2.max(1.0));
    }
}
