//! Invariants over random inputs.

mod common;

use common::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sgflow::flows::z2_to_3flow;
use sgflow::generators::random_signed;
use sgflow::graph::{EdgeSet, Orientation};
use sgflow::group::AbelianGroup;
use sgflow::oracle::random_edge_map;

fn graph() -> impl Strategy<Value = sgflow::graph::SignedGraph> {
    (1usize..8, 0usize..11, any::<u64>()).prop_map(|(n, m, seed)| random_signed(n, m, seed))
}

fn group() -> impl Strategy<Value = AbelianGroup> {
    prop::sample::select(vec!["Z2", "Z3", "Z5", "Z6", "Z8", "Z2xZ2", "Z3xZ3", "Z2xZ4", "Z11"])
        .prop_map(|s| AbelianGroup::parse(s).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn switching(g in graph(), mask in any::<u32>(), flip in any::<usize>()) {
        let side: Vec<bool> = (0..g.vertex_count()).map(|v| mask >> v & 1 == 1).collect();
        prop_assert_eq!(switching_case(&g, &side, flip), Ok(()));
    }

    #[test]
    fn boundary_sums_to_a_double(g in graph(), a in group(), seed in any::<u64>(), flips in any::<u64>()) {
        let mut tau = Orientation::default_for(&g);
        for e in g.edges().filter(|e| flips >> (e % 64) & 1 == 1) {
            tau.reverse_edge(e);
        }
        let f = random_edge_map(&a, g.edge_count(), &mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(boundary_sum_case(&g, &tau, &f), Ok(()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1_000))]

    #[test]
    fn closure_is_order_independent(g in graph(), k in 1usize..4, mask in any::<u32>(), seed in any::<u64>()) {
        let seed_set = EdgeSet::from_edges(g.edge_count(), g.edges().filter(|e| mask >> e & 1 == 1));
        prop_assert_eq!(closure_case(&g, &seed_set, k, &mut ChaCha8Rng::seed_from_u64(seed)), Ok(()));
    }

    #[test]
    fn uncontract_then_contract(g in (1usize..6, 4usize..12, any::<u64>()).prop_map(|(n, m, s)| random_signed(n, m, s)),
                                v in any::<usize>(), i in any::<usize>(), j in any::<usize>()) {
        prop_assert_eq!(contract_case(&g, v % g.vertex_count(), i, j), Ok(()));
    }

    #[test]
    fn three_flows_from_even_supports(seed in any::<u64>()) {
        let (g, support) = random_z2_instance(&mut ChaCha8Rng::seed_from_u64(seed));
        let tau = Orientation::default_for(&g);
        let f = z2_to_3flow(&g, &tau, &support, &EdgeSet::full(g.edge_count())).unwrap();
        prop_assert_eq!(three_flow_case(&g, &tau, &support, &f), Ok(()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn sun_steps_rule_out_few_values(n in 3usize..=8, p in prop::sample::select(vec![11u32, 13, 17]), seed in any::<u64>()) {
        prop_assert_eq!(sun_counts_case(n, p, seed), Ok(()));
    }
}
