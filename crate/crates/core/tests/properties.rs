use lowrw::coloring::{good_refinement, is_hitter, subsets_up_to, verify_td_coloring, Coloring};
use lowrw::ehchi::{chi_product_coloring, greedy_degeneracy_coloring, uniform_blocks, Relation};
use lowrw::generators::{twisted_chain, ChainVariant};
use lowrw::io::{parse_edge_list, write_edge_list};
use lowrw::lab::{certificate_rank, lower_bound_certificate, random_balanced_partition, LowerBoundOutcome};
use lowrw::orderings::wcol_heuristic;
use lowrw::width::{balanced_partition, rank_width_upper, tree_depth_exact, OrderStrategy};
use lowrw::{BitSet, Graph};
use proptest::prelude::*;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n), 0..3 * n).prop_map(move |pairs| {
            let edges: Vec<_> = pairs.into_iter().filter(|(u, v)| u != v).collect();
            Graph::new(n, &edges).unwrap()
        })
    })
}

fn graph_and_mask(max_n: usize) -> impl Strategy<Value = (Graph, u64)> {
    graph(max_n).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), 0u64..1 << n)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn edge_list_round_trip(g in graph(20)) {
        let back = parse_edge_list(&write_edge_list(&g)).unwrap();
        prop_assert_eq!(back.n(), g.n());
        prop_assert!(back.same_edges(&g));
    }

    #[test]
    fn cutrank_is_symmetric((g, mask) in graph_and_mask(12)) {
        let x = BitSet::from_mask(g.n(), mask);
        prop_assert_eq!(g.cutrank(&x), g.cutrank(&x.complement()));
        prop_assert!(g.cutrank(&x) <= x.count().min(g.n() - x.count()));
    }

    #[test]
    fn restriction_never_widens((g, mask) in graph_and_mask(12)) {
        let report = rank_width_upper(&g, OrderStrategy::Degeneracy);
        prop_assume!(report.decomposition.is_some());
        let d = report.decomposition.unwrap();
        let keep = BitSet::from_mask(g.n(), mask);
        if let Some(r) = d.restrict(g.n(), &keep).unwrap() {
            let (sub, _) = g.induced_subgraph(&keep).unwrap();
            prop_assert!(r.width(&sub).unwrap() <= d.width(&g).unwrap());
        } else {
            prop_assert!(keep.count() < 2);
        }
    }

    #[test]
    fn balanced_partition_is_balanced((g, mask) in graph_and_mask(14)) {
        let c = BitSet::from_mask(g.n(), mask);
        prop_assume!(c.count() >= 3);
        let d = rank_width_upper(&g, OrderStrategy::GreedyCut).decomposition.unwrap();
        let (x, y) = balanced_partition(&g, &c, &d).unwrap();
        prop_assert_eq!(x.union(&y), g.vertex_set());
        prop_assert!(!x.intersects(&y));
        prop_assert!(3 * x.intersection_count(&c) <= 2 * c.count());
        prop_assert!(3 * y.intersection_count(&c) <= 2 * c.count());
        prop_assert!(g.cutrank(&x) <= d.width(&g).unwrap());
    }

    #[test]
    fn good_refinement_yields_hitters(seed in 0u64..1000, picks in prop::collection::vec(0usize..64, 1..3)) {
        let g = lowrw::generators::random_degenerate(14, 2, seed);
        let base: Vec<usize> = (0..14).map(|v| 1 + (v * 7 + seed as usize) % 3).collect();
        let c = Coloring::with_palette(base, 3).unwrap();
        let (_, order) = wcol_heuristic(&g, 2);
        let rc = good_refinement(&g, &c, 2, &order).unwrap();
        let used = rc.refined().used_colors();
        let colors: Vec<usize> = picks.iter().map(|&i| used[i % used.len()]).collect();
        let x = rc.refined().union_of(&colors);
        let x2 = rc.expand_good(&x);
        prop_assert!(is_hitter(&g, &x, &x2, 2).unwrap());
        prop_assert!(c.colors_on(&x2).len() <= rc.levels[0].budget() * colors.len());
    }

    #[test]
    fn certificate_rank_is_below_cutrank(seed in 0u64..10_000) {
        let m = 12;
        let g = twisted_chain(m, ChainVariant::Bare);
        let p = random_balanced_partition(m, seed);
        if let LowerBoundOutcome::Certificate(cert) = lower_bound_certificate(&g, m, &p).unwrap() {
            let rank = certificate_rank(&g, &cert).unwrap();
            prop_assert_eq!(rank, cert.order);
            prop_assert!(rank <= g.cutrank(p.s()));
        }
    }

    #[test]
    fn uniform_blocks_are_uniform((g, mask) in graph_and_mask(12)) {
        let a = BitSet::from_mask(g.n(), mask);
        let b = a.complement();
        prop_assume!(!a.is_empty() && !b.is_empty());
        let blocks = uniform_blocks(&g, &a, &b, g.cutrank(&a)).unwrap();
        prop_assert!(blocks.a.is_subset(&a) && blocks.b.is_subset(&b));
        prop_assert!(!blocks.a.is_empty());
        for u in blocks.a.iter() {
            for v in blocks.b.iter() {
                prop_assert_eq!(g.has_edge(u, v), blocks.relation == Relation::Complete);
            }
        }
        // The larger side of a nonempty B is at least half of it.
        prop_assert!(2 * blocks.b.count() >= b.count());
    }

    #[test]
    fn product_coloring_is_proper(g in graph(20), k in 1usize..4) {
        let c = Coloring::with_palette((0..g.n()).map(|v| 1 + v % k).collect(), k).unwrap();
        let pc = chi_product_coloring(&g, &c, greedy_degeneracy_coloring).unwrap();
        prop_assert!(pc.coloring.is_proper(&g));
        prop_assert!(pc.coloring.used_colors().len() <= pc.bound);
    }

    #[test]
    fn td_verification_matches_all_unions(g in graph(10), k in 1usize..6, p in 1usize..4, seed in 0u64..1000) {
        let colors: Vec<usize> = (0..g.n()).map(|v| 1 + (v as u64 * 2654435761 + seed) as usize % k).collect();
        let c = Coloring::with_palette(colors, k).unwrap();
        let brute = subsets_up_to(&c.used_colors(), p).iter().all(|s| {
            let (h, _) = g.induced_subgraph(&c.union_of(s)).unwrap();
            h.n() == 0 || tree_depth_exact(&h).unwrap() <= s.len()
        });
        prop_assert_eq!(verify_td_coloring(&g, &c, p).unwrap().verified, brute);
    }
}
