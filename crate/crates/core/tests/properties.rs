mod common;

use std::collections::BTreeSet;

use common::*;
use kgraph::cli::{parse, serialize, GraphDocument};
use kgraph::kp::{
    equivalent, kp_mul, mce, saturation, verify_kp_family, verify_swap_identity, KpElement,
};
use kgraph::limar::{is_paired, limar_split, LimarError, SplitSpec};
use kgraph::skeleton::{product_graph, validate, Color, KGraph, SkeletonBuilder, VertexId};
use proptest::prelude::*;

fn check_split_invariants(g: &KGraph, seed: u64) -> Result<(), TestCaseError> {
    let r = random_split(&mut rng(seed), g);
    let (ls, gs) = (g.skeleton(), r.gamma().skeleton());
    prop_assert!(validate(gs, r.gamma().squares()).is_valid());
    prop_assert!(r.gamma().is_source_free().is_source_free());
    for v in gs.vertex_ids() {
        let (p, _) = r.vertex_parent(v);
        for c in (0..ls.k()).map(Color) {
            prop_assert_eq!(gs.incoming(v, c).len(), ls.incoming(p, c).len());
        }
    }
    let paired = is_paired(g, BLUE).unwrap().paired;
    for e in ls.edge_ids() {
        let copies: Vec<_> = (1..=r.n(ls.range(e))).map(|i| r.edge_copy(e, i).unwrap()).collect();
        let ranges: BTreeSet<_> = copies.iter().map(|x| gs.range(*x)).collect();
        prop_assert_eq!(ranges.len(), copies.len());
        if paired {
            let sources: BTreeSet<_> = copies.iter().map(|x| gs.source(*x)).collect();
            prop_assert_eq!(sources.len(), 1);
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn twisted_pullbacks_are_paired_k_graphs(seed in any::<u64>(), k in 2usize..=3) {
        let g = twisted_pullback(&mut rng(seed), k);
        prop_assert!(g.is_source_free().is_source_free());
        prop_assert!(g.degree_sinks(BLUE).unwrap().is_empty());
        prop_assert!(is_paired(&g, BLUE).unwrap().paired);
    }

    #[test]
    fn products_validate(seed in any::<u64>(), k in 2usize..=3) {
        let g = random_product(&mut rng(seed), k, if k == 2 { 6 } else { 4 });
        prop_assert!(validate(g.skeleton(), g.squares()).is_valid());
    }

    #[test]
    fn documents_round_trip(seed in any::<u64>(), k in 2usize..=3) {
        let mut r = rng(seed);
        let g = twisted_pullback(&mut r, k);
        let mut doc = GraphDocument::from_graph(&g);
        let text = serialize(&doc);
        prop_assert_eq!(parse(&text).unwrap(), doc.clone());
        let split = random_split(&mut r, &g);
        let gamma = GraphDocument::from_graph(split.gamma());
        prop_assert_eq!(parse(&serialize(&gamma)).unwrap(), gamma);
        let base = g.skeleton().vertex_ids().find(|v| g.skeleton().outgoing(*v, BLUE).len() >= 2).unwrap();
        doc.split = Some(SplitSpec::with_default_partition(&g, BLUE, base).unwrap());
        let again = serialize(&doc);
        prop_assert_eq!(parse(&again).unwrap(), doc);
        prop_assert_eq!(serialize(&parse(&again).unwrap()), again);
    }

    #[test]
    fn splits_of_paired_two_graphs(seed in any::<u64>()) {
        let g = twisted_pullback(&mut rng(seed), 2);
        check_split_invariants(&g, seed)?;
    }

    #[test]
    fn splits_of_sink_free_three_graphs(seed in any::<u64>()) {
        let g = twisted_pullback(&mut rng(seed), 3);
        check_split_invariants(&g, seed)?;
    }

    #[test]
    fn split_saturation_is_everything(seed in any::<u64>()) {
        let g = twisted_pullback(&mut rng(seed), 2);
        let r = random_split(&mut rng(seed ^ 1), &g);
        let gs = r.gamma().skeleton();
        let firsts: BTreeSet<VertexId> = g
            .skeleton()
            .vertex_ids()
            .map(|v| r.vertex_copy(v, 1).unwrap())
            .collect();
        let all: BTreeSet<VertexId> = gs.vertex_ids().collect();
        prop_assert_eq!(saturation(r.gamma(), &firsts).unwrap(), all);
    }

    #[test]
    fn mce_matches_the_rewriting_oracle(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = twisted_pullback(&mut r, 2);
        let mu = random_path(&mut r, &g, 2);
        let nu = random_path(&mut r, &g, 2);
        let got: BTreeSet<_> = mce(&g, &mu, &nu).into_iter().collect();
        prop_assert_eq!(got, mce_oracle(&g, &mu, &nu));
    }

    #[test]
    fn multiplication_is_associative(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = twisted_pullback(&mut r, 2);
        let mut term = || loop {
            let a = random_path(&mut r, &g, 2);
            let b = random_path(&mut r, &g, 2);
            if let Ok(x) = KpElement::basis(&g, &a, &b) {
                break x;
            }
        };
        let (x, y, z) = (term(), term(), term());
        let left = kp_mul(&g, &kp_mul(&g, &x, &y).unwrap(), &z).unwrap();
        let right = kp_mul(&g, &x, &kp_mul(&g, &y, &z).unwrap()).unwrap();
        prop_assert!(equivalent(&g, &left, &right).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn induced_family_on_random_paired_splits(seed in any::<u64>()) {
        let g = twisted_pullback_sized(&mut rng(seed), 2, 2);
        let r = random_split(&mut rng(seed ^ 2), &g);
        let report = verify_kp_family(&r, 2).unwrap();
        prop_assert!(report.passed(), "{}", report);
        let report = verify_swap_identity(&r).unwrap();
        prop_assert!(report.passed(), "{}", report);
    }
}

#[test]
fn three_graphs_with_blue_sinks_are_refused() {
    // blue: a loop at a0 and an edge a0 -> a1, so a1 is a blue sink
    let mut blue = SkeletonBuilder::new(["blue"]);
    blue.vertex("a0").vertex("a1");
    blue.edge("s", "blue", "a0", "a0").edge("t", "blue", "a0", "a1");
    let loop_factor = |name: &str, color: &str| {
        let mut b = SkeletonBuilder::new([color]);
        b.vertex(format!("{name}0")).edge(format!("{name}e"), color, format!("{name}0"), format!("{name}0"));
        b.build().unwrap()
    };
    let factors = [blue.build().unwrap(), loop_factor("b", "red"), loop_factor("c", "green")];
    let g = product_graph(&factors).unwrap();
    assert!(g.is_source_free().is_source_free());
    let base = g.skeleton().vertex("a0/b0/c0").unwrap();
    let spec = SplitSpec::with_default_partition(&g, BLUE, base).unwrap();
    let err = limar_split(&g, &spec).unwrap_err();
    assert!(matches!(err, LimarError::SinkHypothesis(_)), "{err}");
}
