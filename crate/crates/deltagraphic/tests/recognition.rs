use deltagraphic::catalog;
use deltagraphic::gadgets::{make_bench, make_h_matroid, make_hprime_matroid, make_starlike, make_tripod, BenchParts, HParts};
use deltagraphic::generate;
use deltagraphic::matroid::graphic::is_regular;
use deltagraphic::recognize::*;
use deltagraphic::tree;
use deltagraphic::{LabelledTree, Matroid};
use std::collections::HashMap;

fn tagged(m: &Matroid, tag: &str) -> Matroid {
    let map: HashMap<String, String> = m.labels().iter().map(|l| (l.clone(), format!("{tag}{l}"))).collect();
    m.relabel(&map).unwrap()
}

/// `m` with labels prefixed by `tag` and its first element renamed to `marker`.
fn leaf(m: &Matroid, tag: &str, marker: &str) -> Matroid {
    let t = tagged(m, tag);
    let first = t.label(0).to_string();
    t.rename(&first, marker).unwrap()
}

fn uniform_on(r: usize, labels: &[&str]) -> Matroid {
    let u = catalog::uniform(r, labels.len()).unwrap();
    let map: HashMap<String, String> = u.labels().iter().cloned().zip(labels.iter().map(|s| s.to_string())).collect();
    u.relabel(&map).unwrap()
}

fn k33() -> Matroid {
    catalog::k33()
}

fn assert_positive(m: &Matroid) -> Certificate {
    let c = recognize(m).unwrap();
    assert!(c.is_positive(), "expected delta-graphic, got {:?}", c.kind());
    assert!(verify_certificate(m, &c));
    assert!(is_regular(m).unwrap());
    c
}

fn assert_negative(m: &Matroid) -> Certificate {
    let c = recognize(m).unwrap();
    assert!(!c.is_positive(), "expected not delta-graphic, got {}", c.kind());
    assert!(verify_certificate(m, &c));
    c
}

fn round_trip(m: &Matroid) {
    let spec = extract_generalized_wheel(m).unwrap().expect("delta-graphic");
    assert!(generalized_wheel(&spec).unwrap().same_as(m));
}

#[test]
fn graphic_corpus() {
    let mut corpus = vec![catalog::k5(), k33()];
    for k in 3..=6 {
        corpus.push(catalog::wheel(k).unwrap());
    }
    for m in corpus {
        for x in [m.clone(), m.dual()] {
            assert_positive(&x);
            round_trip(&x);
        }
    }
}

#[test]
fn excluded_minors_are_negative() {
    for name in ["F7", "F7*", "R10", "R12", "U(2,4)"] {
        let m = catalog::catalog(name).unwrap();
        assert_negative(&m);
    }
    let c = assert_negative(&catalog::r10());
    assert!(matches!(c, Certificate::NotDeltaGraphic { .. }));
    assert!(extract_generalized_wheel(&catalog::r10()).unwrap().is_none());
}

#[test]
fn all_tripods_are_negative() {
    let graphic = [k33(), catalog::k5()];
    let cographic = [k33().dual(), catalog::k5().dual()];
    let mut count = 0;
    for (outer, inner) in [(&graphic, &cographic), (&cographic, &graphic)] {
        for a in outer.iter() {
            for b in inner.iter() {
                for c in outer.iter() {
                    let g = make_tripod(a, b, c).unwrap();
                    assert_eq!(g.matroid.len(), a.len() + b.len() + c.len() - 4);
                    assert_negative(&g.matroid);
                    assert_negative(&g.matroid.dual());
                    count += 1;
                }
            }
        }
    }
    assert_eq!(count, 16);
}

#[test]
fn h_and_hprime_are_negative() {
    let p = HParts {
        v1: catalog::k4(),
        v2: catalog::uniform(1, 3).unwrap(),
        x1: k33(),
        y1: k33().dual(),
        x2: k33(),
        y2: k33().dual(),
    };
    let h = make_h_matroid(&p).unwrap();
    assert_eq!(h.matroid.len(), 35);
    assert_negative(&h.matroid);
    let q = HParts { v1: catalog::uniform(1, 3).unwrap(), v2: catalog::uniform(1, 3).unwrap(), ..p };
    let hp = make_hprime_matroid(&q, &catalog::k4()).unwrap();
    assert_eq!(hp.matroid.len(), 36);
    assert_negative(&hp.matroid);
    assert!(make_h_matroid(&q).is_err(), "(h1) needs a non-uniform centre");
}

#[test]
fn bench_is_negative() {
    let u13 = catalog::uniform(1, 3).unwrap();
    let u23 = catalog::uniform(2, 3).unwrap();
    let p = BenchParts { spine: vec![u13.clone(), u23, u13], x1: k33(), y1: k33().dual(), xm: k33(), ym: k33().dual(), w: k33().dual() };
    let g = make_bench(3, 2, &p).unwrap();
    assert_eq!(g.matroid.len(), 40);
    assert!(g.tree.is_canonical().unwrap());
    assert_negative(&g.matroid);
    assert_negative(&g.matroid.dual());
}

#[test]
fn starlike_with_and_without_w2() {
    // Hub M(W_3): e1, e3, e5 is the rim triangle t1t2t3; e2 = st2, e4 = st3, e6 = st1.
    let hub = catalog::wheel(3).unwrap();
    let g = [k33(), k33()];
    let c = [k33().dual(), k33().dual()];
    let ok = make_starlike(&hub, ["e1", "e3", "e2", "e4"], [&g[0], &g[1], &c[0], &c[1]]).unwrap();
    let cert = assert_positive(&ok.matroid);
    assert!(matches!(cert, Certificate::WheelDecomp { .. }), "{}", cert.kind());
    round_trip(&ok.matroid);
    // Graphic leaves on the disjoint edges t1t2 and st3: no triangle holds both.
    let bad = make_starlike(&hub, ["e1", "e4", "e2", "e6"], [&g[0], &g[1], &c[0], &c[1]]).unwrap();
    assert_negative(&bad.matroid);
    assert_negative(&bad.matroid.dual());
}

#[test]
fn graphic_two_sum_cographic() {
    let a = leaf(&k33(), "x", "g");
    let b = leaf(&k33().dual(), "y", "g");
    let m = tree::two_sum(&a, &b, "g").unwrap();
    let c = assert_positive(&m);
    assert!(matches!(c, Certificate::TwoSumGC { ref condition, .. } if condition == "T1"));
    round_trip(&m);
}

#[test]
fn uniform_hub_with_mixed_branches() {
    // U_{1,4} with two M(K33) and two M*(K33) branches: (T2).
    let hub = uniform_on(1, &["m1", "m2", "m3", "m4"]);
    let nodes = vec![
        hub,
        leaf(&k33(), "a", "m1"),
        leaf(&k33(), "b", "m2"),
        leaf(&k33().dual(), "c", "m3"),
        leaf(&k33().dual(), "d", "m4"),
    ];
    let t = LabelledTree::new(nodes).unwrap();
    let m = t.compose().unwrap();
    let c = assert_positive(&m);
    assert!(matches!(c, Certificate::TwoSumGC { ref condition, .. } if condition == "T2"), "{}", c.kind());
    round_trip(&m);
    round_trip(&m.dual());
}

#[test]
fn wheel_detection() {
    let w = catalog::wheel(3).unwrap();
    let bare = detect_wheel_decomposition(&LabelledTree::single(w.clone())).unwrap();
    assert!(matches!(bare, Some(Certificate::WheelDecomp { .. })));

    // Graphic part on rim e1, cographic part on spoke e2.
    let t = LabelledTree::new(vec![w.clone(), leaf(&k33(), "a", "e1"), leaf(&k33().dual(), "b", "e2")]).unwrap();
    assert!(matches!(detect_wheel_decomposition(&t).unwrap(), Some(Certificate::WheelDecomp { .. })));

    // A cographic-only part on e1 rules out both triangles through e1 but not the others.
    let t = LabelledTree::new(vec![w, leaf(&k33().dual(), "b", "e1")]).unwrap();
    match detect_wheel_decomposition(&t).unwrap() {
        Some(Certificate::WheelDecomp { rim, .. }) => assert!(!rim.contains(&"e1".to_string())),
        other => panic!("expected a wheel decomposition, got {other:?}"),
    }
}

fn fan_tree(at_a: Matroid, at_b: Matroid) -> LabelledTree {
    LabelledTree::new(vec![
        uniform_on(1, &["a", "b", "s"]),
        uniform_on(2, &["s", "c", "d"]),
        leaf(&at_a, "p", "a"),
        leaf(&at_b, "q", "b"),
        leaf(&k33(), "r", "c"),
        leaf(&k33().dual(), "u", "d"),
    ])
    .unwrap()
}

#[test]
fn fan_detection() {
    let t = fan_tree(k33(), k33().dual());
    assert!(t.is_canonical().unwrap());
    assert!(matches!(detect_fan_decomposition(&t).unwrap(), Some(Certificate::FanDecomp { .. })));
    let m = t.compose().unwrap();
    let c = assert_positive(&m);
    assert!(matches!(c, Certificate::FanDecomp { .. }), "{}", c.kind());
    round_trip(&m);
    round_trip(&m.dual());

    // (F3) fails at the U_{1,3} end: every element is a marker and both branches are graphic.
    let t = fan_tree(k33(), catalog::k5());
    assert!(detect_fan_decomposition(&t).unwrap().is_none());

    assert!(detect_fan_decomposition(&LabelledTree::single(catalog::r10())).unwrap().is_none());
}

#[test]
fn longer_fans_round_trip() {
    // Alternating spine U13 - U23 - U13 - U23: internal parts per (F2).
    let spine = vec![
        uniform_on(1, &["a1", "b1", "s1"]),
        uniform_on(2, &["s1", "s2", "c2"]),
        uniform_on(1, &["s2", "s3", "c3"]),
        uniform_on(2, &["s3", "a4", "b4"]),
    ];
    let mut nodes = spine;
    nodes.push(leaf(&k33(), "p", "a1"));
    nodes.push(leaf(&k33().dual(), "q", "b1"));
    nodes.push(leaf(&k33(), "r", "c2")); // corank-1 internal: graphic
    nodes.push(leaf(&k33().dual(), "s", "c3")); // rank-1 internal: cographic
    nodes.push(leaf(&k33(), "t", "a4"));
    nodes.push(leaf(&k33().dual(), "u", "b4"));
    let t = LabelledTree::new(nodes).unwrap();
    assert!(t.is_canonical().unwrap());
    let m = t.compose().unwrap();
    let c = assert_positive(&m);
    assert!(matches!(c, Certificate::FanDecomp { .. }), "{}", c.kind());
    round_trip(&m);
    round_trip(&m.dual());
}

#[test]
fn tampered_certificates_fail() {
    let t = LabelledTree::new(vec![
        catalog::wheel(3).unwrap(),
        leaf(&k33(), "a", "e1"),
        leaf(&k33().dual(), "b", "e2"),
    ])
    .unwrap();
    let m = t.compose().unwrap();
    let c = detect_wheel_decomposition(&t).unwrap().unwrap();
    assert!(verify_certificate(&m, &c));
    let Certificate::WheelDecomp { hub, k, rim, parts } = c.clone() else { panic!("{}", c.kind()) };
    // Swap one class tag.
    let mut flipped = parts.clone();
    flipped[0].class = flipped[0].class.flip();
    let bad = Certificate::WheelDecomp { hub: hub.clone(), k, rim: rim.clone(), parts: flipped };
    assert!(!verify_certificate(&m, &bad));
    // A rim that is not a circuit-hyperplane (spokes form a cocircuit, not a circuit).
    let spokes = vec!["e2".to_string(), "e4".to_string(), "e6".to_string()];
    let bad = Certificate::WheelDecomp { hub, k, rim: spokes, parts };
    assert!(!verify_certificate(&m, &bad));
    // A positive certificate for the wrong matroid.
    assert!(!verify_certificate(&m.dual(), &c));
    // A negative claim about a delta-graphic matroid.
    let neg = recognize(&catalog::r10()).unwrap();
    assert!(!verify_certificate(&catalog::k5(), &neg));
}

#[test]
fn certificate_json_round_trip() {
    let m = fan_tree(k33(), k33().dual()).compose().unwrap();
    let doc = CertificateDoc::new(recognize(&m).unwrap());
    let json = serde_json::to_string(&doc).unwrap();
    let back: CertificateDoc = serde_json::from_str(&json).unwrap();
    assert_eq!(back.schema, CERTIFICATE_SCHEMA);
    assert!(verify_certificate(&m, &back.certificate));
}

#[test]
fn random_generalized_wheels() {
    let mut rng = generate::rng(2024);
    for _ in 0..40 {
        let spec = generate::generalized_wheel_spec(&mut rng, 5, 30);
        let m = generalized_wheel(&spec).unwrap();
        assert_positive(&m);
        assert!(is_delta_graphic(&m.dual()).unwrap());
        if m.is_connected() {
            round_trip(&m);
        }
        assert!(generalized_wheel(&spec.dual()).unwrap().same_as(&m.dual()));
    }
}

proptest::proptest! {
    #![proptest_config(proptest::prelude::ProptestConfig { cases: 48, failure_persistence: None, ..Default::default() })]

    #[test]
    fn wheel_and_fan_decompositions_dualize(seed in proptest::prelude::any::<u64>()) {
        let spec = generate::generalized_wheel_spec(&mut generate::rng(seed), 5, 26);
        let m = generalized_wheel(&spec).unwrap();
        proptest::prop_assume!(m.is_connected());
        let (t, d) = (tree::canonical_decomposition(&m).unwrap(), tree::canonical_decomposition(&m.dual()).unwrap());
        proptest::prop_assert_eq!(detect_wheel_decomposition(&t).unwrap().is_some(), detect_wheel_decomposition(&d).unwrap().is_some());
        proptest::prop_assert_eq!(detect_fan_decomposition(&t).unwrap().is_some(), detect_fan_decomposition(&d).unwrap().is_some());
        proptest::prop_assert_eq!(is_delta_graphic(&m.dual()).unwrap(), true);
    }
}

#[test]
fn fan_duality_over_all_leaf_choices() {
    let choices = [k33(), k33().dual(), catalog::k5(), catalog::k5().dual()];
    let mut positive = 0;
    for a in &choices {
        for b in &choices {
            let m = fan_tree(a.clone(), b.clone()).compose().unwrap();
            let fan = |x: &Matroid| detect_fan_decomposition(&tree::canonical_decomposition(x).unwrap()).unwrap().is_some();
            assert_eq!(fan(&m), fan(&m.dual()));
            assert_eq!(is_delta_graphic(&m).unwrap(), is_delta_graphic(&m.dual()).unwrap());
            positive += fan(&m) as usize;
        }
    }
    assert!(positive > 0 && positive < 16, "{positive}");
}
