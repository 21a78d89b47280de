use atlas::autgroup::{automorphism_group, canonical_form};
use atlas::gf::FieldSpec;
use atlas::graph::{from_graph6, to_graph6, Graph};
use atlas::groups::{Perm, PermGroup};
use atlas::predicates::count_s_arcs;
use proptest::prelude::*;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |bits| {
            let mut it = bits.into_iter();
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if it.next().unwrap() {
                        edges.push((u, v));
                    }
                }
            }
            Graph::new(n, &edges).unwrap()
        })
    })
}

fn perm_strategy(n: usize) -> impl Strategy<Value = Perm> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle().prop_map(|v| Perm::from_images(v).unwrap())
}

fn naive_order(n: usize, gens: &[Perm]) -> usize {
    let mut seen = std::collections::HashSet::new();
    let mut stack = vec![Perm::identity(n)];
    seen.insert(Perm::identity(n));
    while let Some(p) = stack.pop() {
        for g in gens {
            let q = p.compose(g).unwrap();
            if seen.insert(q.clone()) {
                stack.push(q);
            }
        }
    }
    seen.len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graph6_round_trips(g in graph_strategy(40)) {
        let s = to_graph6(&g).unwrap();
        prop_assert_eq!(from_graph6(&s).unwrap(), g);
    }

    #[test]
    fn canonical_form_is_relabeling_invariant(g in graph_strategy(12), seed in any::<u64>()) {
        let n = g.order();
        let mut images: Vec<usize> = (0..n).collect();
        let mut x = seed;
        for i in (1..n).rev() {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            images.swap(i, (x >> 33) as usize % (i + 1));
        }
        let h = g.relabel(&Perm::from_images(images).unwrap()).unwrap();
        prop_assert_eq!(canonical_form(&g).graph6, canonical_form(&h).graph6);
        prop_assert_eq!(automorphism_group(&g).order(), automorphism_group(&h).order());
    }

    #[test]
    fn double_cover_connectivity(g in graph_strategy(12).prop_filter("non-empty", |g| g.order() > 0)) {
        let expected = g.is_connected() && g.bipartition().is_none();
        prop_assert_eq!(g.standard_double_cover().is_connected(), expected);
    }

    #[test]
    fn two_arc_count_matches_degrees(g in graph_strategy(20)) {
        let want: u64 = (0..g.order()).map(|v| (g.degree(v) * g.degree(v).saturating_sub(1)) as u64).sum();
        prop_assert_eq!(count_s_arcs(&g, 2), want);
    }

    #[test]
    fn schreier_sims_matches_closure(a in perm_strategy(6), b in perm_strategy(6)) {
        let gens = vec![a, b];
        let group = PermGroup::new(6, gens.clone()).unwrap();
        prop_assert_eq!(group.order_u64().unwrap() as usize, naive_order(6, &gens));
    }

    #[test]
    fn field_inverse_and_distributivity(q in prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9, 16, 25, 27]), x in 0u32..27, y in 0u32..27, z in 0u32..27) {
        let f = FieldSpec::new(q).unwrap();
        let e = |v: u32| atlas::gf::FieldElem(v % q as u32);
        let (x, y, z) = (e(x), e(y), e(z));
        prop_assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
        if x != f.zero() {
            prop_assert_eq!(f.mul(x, f.inv(x).unwrap()), f.one());
            prop_assert_eq!(f.theta_pow(f.dlog(x).unwrap() as u64), x);
        }
    }
}
