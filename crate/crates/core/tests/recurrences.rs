mod common;

use num_bigint::BigInt;
use proptest::prelude::*;

use ihara_core::certify_regular;
use ihara_core::nbt::{int_mat_to, m_matrix_chebyshev, ClosedWalkCounts, ReducedSweep};
use ihara_core::oracle::{count_nbt_closed_bf, count_reduced_cycles_bf, count_reduced_paths_from_bf, OracleOptions};
use ihara_core::spectral::eigendecompose;
use ihara_core::zeta::{ihara_bass_truncated, zeta_series_from_counts};

use common::permutation_graph;

fn permutations(n: usize, count: usize) -> impl Strategy<Value = Vec<Vec<usize>>> {
    proptest::collection::vec(Just((0..n).collect::<Vec<_>>()).prop_shuffle(), count)
}

fn multigraph() -> impl Strategy<Value = (usize, Vec<Vec<usize>>)> {
    (2usize..8, 0usize..2).prop_flat_map(|(n, k)| (Just(n), permutations(n, k)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn recurrence_matches_enumeration((n, perms) in multigraph()) {
        let g = permutation_graph(n, &perms);
        let cert = certify_regular(&g).unwrap();
        let opts = OracleOptions::default();
        for item in ReducedSweep::new(&g, &cert).take(7) {
            for i in 0..n {
                let bf = count_reduced_paths_from_bf(&g, i, item.m, &opts).unwrap();
                let row: Vec<BigInt> = bf.into_iter().map(BigInt::from).collect();
                prop_assert_eq!(&row[..], item.a.row(i), "A_{} row {}", item.m, i);
                let closed = count_nbt_closed_bf(&g, i, item.m, &opts).unwrap();
                prop_assert_eq!(BigInt::from(closed), item.a[(i, i)].clone());
            }
            if item.m >= 1 {
                let cycles = count_reduced_cycles_bf(&g, item.m, &opts).unwrap();
                prop_assert_eq!(BigInt::from(cycles), item.reduced.trace(), "N_{}", item.m);
            }
        }
    }

    #[test]
    fn chebyshev_form_on_multigraphs((n, perms) in multigraph()) {
        let g = permutation_graph(n, &perms);
        let cert = certify_regular(&g).unwrap();
        let sd = eigendecompose::<f64>(&g, &cert, None).unwrap();
        for item in ReducedSweep::new(&g, &cert).skip(1).take(12) {
            let scale = (cert.q as f64).powf(item.m as f64 / 2.0);
            let gap = m_matrix_chebyshev(&sd, item.m).unwrap().max_abs_diff(&int_mat_to(&item.reduced));
            prop_assert!(gap <= 1e-8 * scale, "m = {}: gap {}", item.m, gap);
        }
    }

    #[test]
    fn determinant_matches_cycle_counts((n, perms) in multigraph()) {
        let g = permutation_graph(n, &perms);
        let cert = certify_regular(&g).unwrap();
        let order = 8;
        let counts = ClosedWalkCounts::compute(&g, &cert, order).n_sequence();
        let from_counts = zeta_series_from_counts(&counts, order);
        let from_det = ihara_bass_truncated(&g, order).zeta_series(order).unwrap();
        prop_assert_eq!(from_counts, from_det);
    }
}

#[test]
fn single_vertex_with_loops() {
    // one vertex, two loops: the bouquet of two circles
    let g = ihara_core::Graph::from_adjacency(1, vec![4]).unwrap();
    let cert = certify_regular(&g).unwrap();
    let counts = ClosedWalkCounts::compute(&g, &cert, 4).n_sequence();
    let opts = OracleOptions::default();
    for (m, n_m) in counts.iter().enumerate() {
        assert_eq!(*n_m, BigInt::from(count_reduced_cycles_bf(&g, m + 1, &opts).unwrap()));
    }
    // reduced cycles of length m in the free group on two letters: 3^m + 1 + 2·[m even]
    let expected: Vec<i64> = (1..=4).map(|m: u32| 3i64.pow(m) + 1 + if m.is_multiple_of(2) { 2 } else { 0 }).collect();
    assert_eq!(counts, expected.into_iter().map(BigInt::from).collect::<Vec<_>>());
}
