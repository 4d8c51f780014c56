use proptest::prelude::*;

use lobster_core::classify::{classify_all, SubtreeType};
use lobster_core::lobster::{build_tree_from_spec, recognize_lobster, LobsterSpec, SubtreeSpec};
use lobster_core::oracle::{exact_beta_b, exact_beta_b_excluding, support_vertices};
use lobster_core::tree::{
    eccentricities, is_broadcast, is_broadcast_sparse, is_dominating, is_dominating_sparse,
    is_independent, is_independent_sparse, metrics, BroadcastAssignment,
};
use lobster_core::{beta_star, construct};

fn s2() -> impl Strategy<Value = SubtreeSpec> {
    prop::collection::vec(1u32..=4, 2..=4).prop_map(|branches| SubtreeSpec::S2 { branches })
}

fn inner() -> impl Strategy<Value = SubtreeSpec> {
    prop_oneof![
        (2u32..=4).prop_map(|leaves| SubtreeSpec::S1 { leaves }),
        s2()
    ]
}

fn spec(max_k: usize) -> impl Strategy<Value = LobsterSpec> {
    (0..=max_k).prop_flat_map(|k| {
        let middle = prop::collection::vec(inner(), k.saturating_sub(1));
        (s2(), middle, s2()).prop_map(move |(first, middle, last)| {
            let mut subtrees = vec![first];
            if k >= 1 {
                subtrees.extend(middle);
                subtrees.push(last);
            }
            LobsterSpec { subtrees }
        })
    })
}

fn small_spec(max_vertices: usize) -> impl Strategy<Value = LobsterSpec> {
    spec(3).prop_filter("oracle-sized", move |s| s.vertex_count() <= max_vertices)
}

fn sorted(spec: &LobsterSpec) -> LobsterSpec {
    LobsterSpec {
        subtrees: spec
            .subtrees
            .iter()
            .map(|s| match s {
                SubtreeSpec::S2 { branches } => {
                    let mut b = branches.clone();
                    b.sort_unstable();
                    SubtreeSpec::S2 { branches: b }
                }
                other => other.clone(),
            })
            .collect(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn build_then_recognize_round_trips(s in spec(6)) {
        let built = build_tree_from_spec(&s).unwrap();
        let recognized = recognize_lobster(built.tree().clone()).unwrap();
        prop_assert_eq!(recognized.to_spec().unwrap(), sorted(&s).canonical());
        prop_assert_eq!(recognized.n(), s.vertex_count());
    }

    #[test]
    fn vertex_count_formula(s in spec(6)) {
        let l = build_tree_from_spec(&s).unwrap();
        let counted: usize = l.subtrees().iter().map(|t| {
            let middles = if t.lambda1 == 0 { t.branch_count() } else { 0 };
            (middles + t.lambda1 + t.lambda2) as usize
        }).sum();
        prop_assert_eq!(l.n(), l.k() + 1 + counted);
        for t in l.subtrees() {
            prop_assert!(t.lambda2_star <= t.alpha2_star && t.alpha2_star <= t.branch_count());
        }
    }

    #[test]
    fn diameter_is_spine_plus_four(s in spec(6)) {
        let l = build_tree_from_spec(&s).unwrap();
        prop_assert_eq!(metrics(l.tree()).diameter() as usize, l.k() + 4);
    }

    #[test]
    fn reversal_keeps_the_total(s in spec(8)) {
        let l = build_tree_from_spec(&s).unwrap();
        let r = build_tree_from_spec(&s.reversed()).unwrap();
        let a = beta_star(&l).unwrap();
        let b = beta_star(&r).unwrap();
        prop_assert_eq!(a.beta_star, b.beta_star);
        let mut back = b.types.clone();
        back.reverse();
        prop_assert_eq!(&a.types, &back);
        prop_assert_eq!(beta_star(&l.reversed()).unwrap().beta_star, a.beta_star);
    }

    #[test]
    fn another_leaf_on_a_big_branch_adds_one(s in spec(6), pick in any::<prop::sample::Index>()) {
        let l = build_tree_from_spec(&s).unwrap();
        let before = beta_star(&l).unwrap().beta_star;
        let big: Vec<(usize, usize)> = s.subtrees.iter().enumerate().flat_map(|(i, t)| match t {
            SubtreeSpec::S2 { branches } => branches.iter().enumerate()
                .filter(|(_, &c)| c >= 3).map(|(j, _)| (i, j)).collect::<Vec<_>>(),
            SubtreeSpec::S1 { .. } => Vec::new(),
        }).collect();
        prop_assume!(!big.is_empty());
        let (i, j) = big[pick.index(big.len())];
        let mut grown = s.clone();
        if let SubtreeSpec::S2 { branches } = &mut grown.subtrees[i] {
            branches[j] += 1;
        }
        let after = beta_star(&build_tree_from_spec(&grown).unwrap()).unwrap().beta_star;
        prop_assert_eq!(after, before + 1);
    }

    #[test]
    fn sparse_predicates_match_the_table(s in spec(3), values in prop::collection::vec(0u64..=5, 64)) {
        let l = build_tree_from_spec(&s).unwrap();
        let t = l.tree();
        let m = metrics(t);
        let ecc = eccentricities(t);
        prop_assert_eq!(&ecc[..], m.eccentricities());
        // Mostly zeros, so independence is sometimes satisfied.
        let f = BroadcastAssignment::from_values(
            (0..t.n()).map(|v| if values[v % 64] >= 4 { values[(v * 7) % 64] } else { 0 }).collect(),
        );
        prop_assert_eq!(is_broadcast(t, &m, &f), is_broadcast_sparse(t, &ecc, &f));
        prop_assert_eq!(is_independent(t, &m, &f), is_independent_sparse(t, &f));
        prop_assert_eq!(is_dominating(t, &m, &f), is_dominating_sparse(t, &f));
        let built = construct(&l).unwrap();
        let f4 = built.final_stage();
        prop_assert_eq!(is_independent(t, &m, f4), is_independent_sparse(t, f4));
        prop_assert_eq!(is_dominating(t, &m, f4), is_dominating_sparse(t, f4));
    }

    #[test]
    fn final_stage_shape(s in spec(8)) {
        let l = build_tree_from_spec(&s).unwrap();
        let report = beta_star(&l).unwrap();
        let trace = construct(&l).unwrap();
        let f4 = trace.final_stage();
        let types = classify_all(&l).unwrap();
        let a_roots: Vec<usize> = report.sequences.iter().flat_map(|q| q.a_positions()).collect();
        for (i, sub) in l.subtrees().iter().enumerate() {
            let root_value = f4.get(sub.root);
            prop_assert!(root_value <= 1);
            if root_value == 1 && l.k() >= 1 {
                prop_assert!(a_roots.contains(&i) && types[i] == SubtreeType::Fa);
            }
            let mut total = root_value;
            for b in &sub.branches {
                if b.depth == 2 {
                    total += f4.get(b.attach);
                }
                for &leaf in &b.leaves {
                    prop_assert!(f4.get(leaf) <= 3);
                    total += f4.get(leaf);
                }
            }
            prop_assert_eq!(total, report.per_subtree[i], "subtree {}", i);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn closed_form_matches_oracle(s in small_spec(20)) {
        let l = build_tree_from_spec(&s).unwrap();
        prop_assert_eq!(beta_star(&l).unwrap().beta_star, exact_beta_b(l.tree()).unwrap().beta_b);
    }

    #[test]
    fn some_optimum_avoids_support_vertices(s in small_spec(18)) {
        let l = build_tree_from_spec(&s).unwrap();
        let t = l.tree();
        let best = exact_beta_b(t).unwrap().beta_b;
        let avoiding = exact_beta_b_excluding(t, &support_vertices(t)).unwrap();
        prop_assert_eq!(avoiding.beta_b, best);
    }
}
