use deltagraphic::bits;
use deltagraphic::catalog;
use deltagraphic::generate;
use deltagraphic::graph::{self, MultiGraph};
use deltagraphic::matroid::graphic::{graphic_excluded_minor, is_cographic, is_graphic, is_regular};
use deltagraphic::matroid::{has_minor, is_isomorphic, numbered};
use deltagraphic::{Error, Matroid};
use proptest::prelude::*;

fn binary(r: usize, cols: &[u64]) -> Matroid {
    let cols: Vec<u64> = cols.iter().map(|c| c & ((1 << r) - 1)).collect();
    Matroid::from_columns(numbered("e", cols.len()), &cols).unwrap()
}

fn matroid_strategy(max_n: usize) -> impl Strategy<Value = Matroid> {
    (1usize..=4, prop::collection::vec(any::<u64>(), 1..=max_n)).prop_map(|(r, cols)| binary(r, &cols))
}

/// Graph isomorphism by brute force over vertex permutations (small graphs only).
fn graphs_isomorphic(g: &MultiGraph, h: &MultiGraph) -> bool {
    fn edges(g: &MultiGraph, perm: &[usize]) -> Vec<(usize, usize)> {
        let mut es: Vec<(usize, usize)> = g
            .edges()
            .iter()
            .map(|e| {
                let (a, b) = (perm[e.u], perm[e.v]);
                (a.min(b), a.max(b))
            })
            .collect();
        es.sort_unstable();
        es
    }
    fn permutations(k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for p in permutations(k - 1) {
            for i in 0..k {
                let mut q = p.clone();
                q.insert(i, k - 1);
                out.push(q);
            }
        }
        out
    }
    let n = g.vertex_count();
    if n != h.vertex_count() || g.edge_count() != h.edge_count() {
        return false;
    }
    let target = edges(h, &(0..n).collect::<Vec<_>>());
    permutations(n).iter().any(|p| edges(g, p) == target)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 96, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn duality(m in matroid_strategy(9)) {
        let d = m.dual();
        prop_assert_eq!(m.rank() + d.rank(), m.len());
        prop_assert!(d.dual().same_as(&m));
        let bases = m.bases().unwrap();
        let mut co: Vec<u64> = d.bases().unwrap().iter().map(|b| m.ground() & !b).collect();
        co.sort_unstable();
        prop_assert_eq!(co, bases);
    }

    #[test]
    fn minors_commute_with_duality(m in matroid_strategy(9), e in 0usize..9) {
        let x = bits::singleton(e % m.len());
        prop_assert!(m.delete(x).dual().same_as(&m.dual().contract(x)));
        prop_assert!(m.contract(x).dual().same_as(&m.dual().delete(x)));
        prop_assert!(m.delete(x).check_exchange().unwrap());
        prop_assert!(m.contract(x).check_exchange().unwrap());
    }

    #[test]
    fn connectivity_function_is_symmetric(m in matroid_strategy(9), x in any::<u64>()) {
        let x = x & m.ground();
        prop_assert_eq!(m.lambda(x), m.lambda(m.ground() & !x));
        prop_assert_eq!(m.lambda(x), m.rank_of(x) + m.rank_of(m.ground() & !x) - m.rank());
        prop_assert_eq!(m.lambda(x), m.dual().lambda(x));
    }

    #[test]
    fn circuits_meet_cocircuits_evenly(m in matroid_strategy(9)) {
        let cocircuits = m.cocircuits().unwrap();
        for c in m.circuits().unwrap() {
            prop_assert!(cocircuits.iter().all(|d| bits::len(c & d) != 1));
            // Binary: the intersection is even.
            prop_assert!(cocircuits.iter().all(|d| bits::len(c & d) % 2 == 0));
        }
        prop_assert!(m.check_exchange().unwrap());
    }

    #[test]
    fn graphicness_agrees_with_excluded_minors(m in matroid_strategy(8)) {
        let realized = is_graphic(&m).unwrap();
        let obstruction = graphic_excluded_minor(&m).unwrap();
        prop_assert_eq!(realized.is_some(), obstruction.is_none());
        if let Some(g) = realized {
            prop_assert!(g.cycle_matroid().unwrap().same_as(&m));
        }
        if let Some(g) = is_cographic(&m).unwrap() {
            prop_assert!(g.bond_matroid().unwrap().same_as(&m));
        }
    }

    #[test]
    fn graph_minors_match_matroid_minors(seed in any::<u64>()) {
        let g = generate::random_graft(&mut generate::rng(seed), 6, 8).graph().clone();
        let m = g.cycle_matroid().unwrap();
        for e in g.edges() {
            let x = m.set_of(&[&e.label]).unwrap();
            prop_assert!(g.delete_edge(&e.label).unwrap().cycle_matroid().unwrap().same_as(&m.delete(x)));
            if !e.is_loop() {
                prop_assert!(g.contract_edge(&e.label).unwrap().cycle_matroid().unwrap().same_as(&m.contract(x)));
            }
        }
    }
}

#[test]
fn whitney_oracle() {
    // 3-connected simple graphs are determined by their cycle matroids.
    let graphs = [graph::complete(4), graph::complete(5), graph::complete_bipartite(3, 3), graph::wheel(4).unwrap(), graph::wheel(5).unwrap(), graph::k33_prime()];
    for g in &graphs {
        assert!(g.is_k_connected(3) && g.is_simple());
        let m = g.cycle_matroid().unwrap();
        let h = is_graphic(&m).unwrap().expect("graphic");
        assert!(graphs_isomorphic(&h.without_isolated(), g));
        for other in &graphs {
            let same_matroid = is_isomorphic(&m, &other.cycle_matroid().unwrap()).unwrap();
            assert_eq!(same_matroid, graphs_isomorphic(g, other));
        }
    }
}

#[test]
fn catalog_matroids() {
    let f7 = catalog::fano();
    assert_eq!((f7.len(), f7.rank()), (7, 3));
    assert!(is_graphic(&f7).unwrap().is_none() && !is_regular(&f7).unwrap());
    assert!(is_regular(&catalog::r10()).unwrap());
    assert!(is_graphic(&catalog::r10()).unwrap().is_none() && is_cographic(&catalog::r10()).unwrap().is_none());
    assert_eq!(graphic_excluded_minor(&catalog::k5().dual()).unwrap().map(|(n, _)| n), Some("M*(K5)"));
    let u24 = catalog::uniform(2, 4).unwrap();
    assert!(u24.to_binary().unwrap().is_none());
    assert!(has_minor(&catalog::wheel(4).unwrap(), &catalog::k4()).unwrap().is_some());
    assert!(has_minor(&catalog::k4(), &catalog::wheel(4).unwrap()).unwrap().is_none());
    assert!(catalog::r10().is_3_connected().unwrap());
    assert!(Matroid::empty().is_connected());
}

#[test]
fn caps_are_typed_errors() {
    let big = binary(4, &(0..20).map(|i| i % 15 + 1).collect::<Vec<u64>>());
    assert!(matches!(big.bases(), Err(Error::Resource { .. })));
    let reversed: Vec<String> = big.labels().iter().rev().cloned().collect();
    assert!(matches!(is_isomorphic(&big, &big.reorder(&reversed).unwrap()), Err(Error::Resource { .. })));
    // Identical inputs short-circuit before the cap.
    assert!(is_isomorphic(&big, &big).unwrap());
}
