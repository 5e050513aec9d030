use std::collections::BTreeSet;

use chromaplex::conjecture::simple_hypergraphs;
use chromaplex::hypergraph::{Hypergraph, IndependenceSystem, VertexMask};
use chromaplex::marked_chromatic::marked_chromatic_polys_below;
use chromaplex::qseries::ExponentVector;
use proptest::prelude::*;

#[test]
fn system_round_trip_and_simplicity() {
    for n in 0..=4 {
        for a in IndependenceSystem::enumerate_all(n) {
            let g = a.to_hypergraph(&[]).unwrap();
            let independent: BTreeSet<VertexMask> = g.independent_sets().into_iter().collect();
            assert_eq!(&independent, a.members(), "n={n}");
            let singletons = (0..n).all(|i| a.contains(1 << i));
            assert_eq!(g.validate().simple, singletons, "{:?}", a.members());
        }
    }
}

#[test]
fn marked_series_without_special_is_independence_polynomial() {
    for n in 1..=4 {
        let trunc = ExponentVector::uniform(n, 2);
        for edges in simple_hypergraphs(n) {
            let g = Hypergraph::from_masks(n, edges, 0).unwrap();
            assert_eq!(g.marked_independence_series(&trunc).unwrap(), g.independence_polynomial(&trunc).unwrap());
        }
    }
}

/// Any hypergraph on `n ≤ 4` vertices, edges of every size, any special set.
fn hypergraph_strategy() -> impl Strategy<Value = Hypergraph> {
    (1usize..=4).prop_flat_map(|n| {
        (prop::collection::vec(1u64..(1 << n), 0..5), 0u64..(1 << n))
            .prop_map(move |(edges, special)| Hypergraph::from_masks(n, edges, special).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn series_power_matches_marked_chromatic(g in hypergraph_strategy(), cap in 1u32..=3) {
        let cap = if g.n() == 4 { cap.min(2) } else { cap };
        let trunc = ExponentVector::uniform(g.n(), cap);
        let polys = marked_chromatic_polys_below(&g, &trunc).unwrap();
        let base = g.marked_independence_series(&trunc).unwrap();
        for q in -3..=4i64 {
            let power = base.int_pow(q).unwrap();
            for (m, p) in &polys {
                prop_assert_eq!(power.coeff(m), p.eval_int(q), "q={} m={:?}", q, m.0);
            }
        }
    }
}
