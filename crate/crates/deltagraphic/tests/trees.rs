use deltagraphic::generate;
use deltagraphic::matroid::{has_minor, is_isomorphic};
use deltagraphic::tree::{canonical_decomposition, two_sum, two_sum_by_bases};
use deltagraphic::{LabelledTree, Matroid};
use proptest::prelude::*;
use std::collections::HashMap;

fn pair(seed: u64, n1: usize, n2: usize) -> (Matroid, Matroid) {
    let mut rng = generate::rng(seed);
    let a = generate::connected_binary(&mut rng, n1, "a");
    let b = generate::connected_binary(&mut rng, n2, "b");
    (a.rename("a1", "p").unwrap(), b.rename("b1", "p").unwrap())
}

/// Nodes of `s` and `t` can be matched up to isomorphism.
fn same_shape(s: &LabelledTree, t: &LabelledTree) -> bool {
    if s.len() != t.len() || s.edges().len() != t.edges().len() {
        return false;
    }
    let mut used = vec![false; t.len()];
    s.nodes().iter().all(|a| {
        let hit = t.nodes().iter().enumerate().position(|(j, b)| !used[j] && is_isomorphic(a, b).unwrap());
        hit.map(|j| used[j] = true).is_some()
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn two_sum_commutes_with_minors(seed in any::<u64>(), n1 in 3usize..=6, n2 in 3usize..=6, pick in 2usize..=6) {
        let (a, b) = pair(seed, n1, n2);
        let sum = two_sum(&a, &b, "p").unwrap();
        let f = format!("b{}", 2 + (pick - 2) % (n2 - 1));
        let x = b.set_of(&[&f]).unwrap();
        let y = sum.set_of(&[&f]).unwrap();
        // The marker must stay a non-loop non-coloop for the right-hand 2-sum.
        if let Ok(rhs) = two_sum(&a, &b.delete(x), "p") {
            prop_assert!(sum.delete(y).same_as(&rhs));
        }
        if let Ok(rhs) = two_sum(&a, &b.contract(x), "p") {
            prop_assert!(sum.contract(y).same_as(&rhs));
        }
    }

    #[test]
    fn operands_are_minors_of_the_two_sum(seed in any::<u64>(), n1 in 2usize..=5, n2 in 2usize..=5) {
        let (a, b) = pair(seed, n1, n2);
        let sum = two_sum(&a, &b, "p").unwrap();
        prop_assert!(sum.same_as(&two_sum_by_bases(&a, &b, "p").unwrap()));
        prop_assert!(has_minor(&sum, &a).unwrap().is_some());
        prop_assert!(has_minor(&sum, &b).unwrap().is_some());
        prop_assert!(sum.is_connected());
        prop_assert!(two_sum(&b, &a, "p").unwrap().same_as(&sum));
    }

    #[test]
    fn canonical_trees_are_unique(seed in any::<u64>(), shift in 1usize..14) {
        let mut rng = generate::rng(seed);
        let (m, _) = generate::two_sum_assembly(&mut rng, 12);
        let t = canonical_decomposition(&m).unwrap();
        prop_assert!(t.is_canonical().unwrap());
        prop_assert!(t.compose().unwrap().same_as(&m));
        // Relabelling and reordering the input gives the same tree up to isomorphism.
        let mut order = m.labels().to_vec();
        let k = shift % order.len();
        order.rotate_left(k);
        let map: HashMap<String, String> = m.labels().iter().map(|l| (l.clone(), format!("z{l}"))).collect();
        let other = m.reorder(&order).unwrap().relabel(&map).unwrap();
        let u = canonical_decomposition(&other).unwrap();
        prop_assert!(same_shape(&t, &u));
        // Duality maps canonical trees to canonical trees.
        let d = canonical_decomposition(&m.dual()).unwrap();
        prop_assert!(same_shape(&t.dual(), &d));
    }

    #[test]
    fn composition_is_order_independent(seed in any::<u64>()) {
        let mut rng = generate::rng(seed);
        let (m, _) = generate::two_sum_assembly(&mut rng, 12);
        let t = canonical_decomposition(&m).unwrap();
        let mut nodes = t.nodes().to_vec();
        nodes.reverse();
        let k = seed as usize % nodes.len();
        nodes.rotate_left(k);
        prop_assert!(LabelledTree::new(nodes).unwrap().compose().unwrap().same_as(&m));
    }
}

#[test]
fn bad_pairs_merge() {
    // Two triangles glued along an element form a circuit, which is one node.
    let tri = |p: &str| {
        let labels = vec!["p".to_string(), format!("{p}1"), format!("{p}2")];
        Matroid::from_columns(labels, &[1, 1, 1]).unwrap().dual()
    };
    let c4 = two_sum(&tri("a"), &tri("b"), "p").unwrap();
    let t = canonical_decomposition(&c4).unwrap();
    assert_eq!(t.len(), 1);
    let unmerged = LabelledTree::new(vec![tri("a"), tri("b")]).unwrap();
    assert!(!unmerged.is_canonical().unwrap());
    assert!(unmerged.is_bad_pair(0, 1));
    assert!(unmerged.merge_bad_pairs().unwrap().is_canonical().unwrap());
}
