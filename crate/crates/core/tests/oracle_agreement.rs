use kfree::bounds::{lower_bound_log2, supersat_bound};
use kfree::clique_hypergraph::{brute_max_codegree, delta_function_at, delta_function_exact, max_codegree};
use kfree::graphs::{binomial_u64, count_cliques, is_subgraph, pair_count, LabeledGraph};
use kfree::oracle::{
    count_free_graphs, count_free_graphs_ie, maximal_free_family, min_cliques_at_edge_count,
    validate_container_family, ScanOptions,
};
use kfree::{LogMagnitude, Order};
use num::bigint::{BigInt, BigUint};
use num::{BigRational, One, ToPrimitive};
use proptest::prelude::*;

fn census(n: usize, l: usize, threads: usize) -> BigUint {
    count_free_graphs(n, l, ScanOptions::threads(threads)).unwrap().count
}

#[test]
fn full_scan_matches_inclusion_exclusion() {
    for n in 1..=5 {
        assert_eq!(BigInt::from(census(n, 3, 1)), count_free_graphs_ie(n).unwrap(), "n = {n}");
    }
}

#[test]
fn thread_count_does_not_change_counts() {
    for l in 3..=5 {
        let one = census(6, l, 1);
        for threads in [2, 3, 8] {
            assert_eq!(census(6, l, threads), one);
        }
    }
}

#[test]
fn no_clique_fits_means_every_graph_counts() {
    for n in 1..=6 {
        for l in n + 1..=n + 2 {
            assert_eq!(census(n, l, 2), BigUint::one() << pair_count(n));
        }
    }
}

#[test]
fn turan_subgraphs_are_free() {
    for n in 3..=6usize {
        for l in 3..=n {
            let lower = lower_bound_log2(n as u64, l as u64).unwrap() as usize;
            assert!(census(n, l, 4) >= BigUint::one() << lower, "n={n} l={l}");
        }
    }
}

#[test]
fn edge_count_minimum_respects_supersaturation() {
    for n in 3..=6u64 {
        for t in 2..=n {
            let t_r = BigRational::from_integer(t.into());
            let threshold = (BigRational::one() - t_r.recip()) * BigRational::from_integer((n * n).into()) / BigRational::from_integer(2.into());
            let m = threshold.ceil().to_integer().to_usize().unwrap();
            for l in 3..=n {
                let r = min_cliques_at_edge_count(n as usize, l as usize, m, ScanOptions::threads(4)).unwrap();
                let bound = supersat_bound(n, &t_r, l).unwrap();
                assert!(BigRational::from_integer(r.min_count.into()) >= bound, "n={n} t={t} l={l}");
                assert_eq!(count_cliques(&r.witness, l as usize), r.min_count);
            }
        }
    }
}

#[test]
fn codegree_closed_form_matches_search_up_to_seven() {
    for n in 3..=7u64 {
        for l in 3..=n as u32 {
            for j in 1..=(l as u64 * (l as u64 - 1) / 2) {
                let closed = max_codegree(n, l, j).unwrap();
                assert_eq!(closed, BigUint::from(brute_max_codegree(n, l, j).unwrap()), "n={n} l={l} j={j}");
            }
        }
    }
}

#[test]
fn maximal_family_is_a_valid_container_family() {
    for n in 3..=6 {
        for l in 3..=n {
            let family = maximal_free_family(n, l, ScanOptions::threads(2)).unwrap();
            let eps = BigRational::new(1.into(), 1000.into());
            let r = validate_container_family(n, l, &family, &eps, None, ScanOptions::threads(2)).unwrap();
            assert!(r.covers_all && r.copies_ok, "n={n} l={l}");
            assert_eq!(BigUint::from(r.free_graphs), census(n, l, 1));
        }
    }
}

fn p_strategy() -> impl Strategy<Value = (u32, u32)> {
    (1u32..=16).prop_flat_map(|den| (1..=den, Just(den)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn delta_function_paths_agree(n in 3u64..=9, l in 3u32..=4, (num, den) in p_strategy()) {
        prop_assume!(n >= l as u64);
        let p = BigRational::new(num.into(), den.into());
        let exact = LogMagnitude::from_ratio(&delta_function_exact(n, l, &p).unwrap());
        let logged = delta_function_at(Order::Exact(n), l, LogMagnitude::from_ratio(&p)).unwrap();
        prop_assert!(exact.relative_diff(logged) < 1e-9);
    }

    /// Covering, decided by full scan, agrees with covering every maximal
    /// free graph, decided by subgraph tests.
    #[test]
    fn covering_matches_maximal_members(n in 3usize..=5, picks in proptest::collection::vec(any::<u64>(), 0..6)) {
        let pairs = pair_count(n);
        let family: Vec<LabeledGraph> = picks
            .iter()
            .map(|m| LabeledGraph::from_mask(n, m & ((1u64 << pairs) - 1)).unwrap())
            .collect();
        let eps = BigRational::one();
        let report = validate_container_family(n, 3, &family, &eps, None, ScanOptions::default()).unwrap();
        let maximal = maximal_free_family(n, 3, ScanOptions::default()).unwrap();
        let expected = maximal
            .iter()
            .all(|g| family.iter().any(|f| is_subgraph(g, f).unwrap()));
        prop_assert_eq!(report.covers_all, expected);
    }

    #[test]
    fn edge_count_minimum_is_a_minimum(n in 3usize..=5, m_frac in 0.0f64..=1.0, mask in any::<u64>()) {
        let pairs = pair_count(n);
        let m = (m_frac * pairs as f64).round() as usize;
        let r = min_cliques_at_edge_count(n, 3, m, ScanOptions::default()).unwrap();
        prop_assert_eq!(r.graphs_scanned, binomial_u64(pairs as u64, m as u64));
        // any other graph with m edges has at least as many triangles
        let mut g = 0u64;
        let mut bits = mask;
        for e in 0..pairs {
            if (g.count_ones() as usize) < m && (bits & 1 == 1 || pairs - e == m - g.count_ones() as usize) {
                g |= 1 << e;
            }
            bits >>= 1;
        }
        let other = LabeledGraph::from_mask(n, g).unwrap();
        prop_assert_eq!(other.edge_count(), m);
        prop_assert!(count_cliques(&other, 3) >= r.min_count);
    }
}
