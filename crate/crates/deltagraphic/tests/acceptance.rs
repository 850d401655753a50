//! Acceptance suite: one PASS/FAIL line per criterion, with its time limit.
//!
//! Run with `cargo test -p deltagraphic --test acceptance`.

use deltagraphic::bits;
use deltagraphic::catalog;
use deltagraphic::delta::SetSystem;
use deltagraphic::gadgets::{make_bench, make_h_matroid, make_hprime_matroid, make_starlike, make_tripod, BenchParts, HParts};
use deltagraphic::generate::{self, BagShape};
use deltagraphic::graft::{build_cyclic, validate_cyclic};
use deltagraphic::matroid::graphic::is_regular;
use deltagraphic::matroid::is_isomorphic;
use deltagraphic::mhb::{build_mhb_cycle, build_mhb_path};
use deltagraphic::recognize::{generalized_wheel, is_delta_graphic, recognize, verify_certificate};
use deltagraphic::search::{check_minimal, search, Verdict};
use deltagraphic::tree::{canonical_decomposition, two_sum, two_sum_by_bases, two_sum_by_circuits};
use deltagraphic::Matroid;
use rand::Rng;
use rayon::prelude::*;
use std::collections::BTreeSet;
use std::time::{Duration, Instant};

type Outcome = Result<String, Box<dyn std::error::Error>>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+).into());
        }
    };
}

struct Report {
    failures: Vec<usize>,
}

impl Report {
    fn run(&mut self, id: usize, name: &str, limit: Duration, f: impl FnOnce() -> Outcome) {
        let start = Instant::now();
        let result = f();
        let took = start.elapsed();
        let (ok, detail) = match result {
            Ok(d) if took <= limit => (true, d),
            Ok(d) => (false, format!("{d}; over the time limit")),
            Err(e) => (false, e.to_string()),
        };
        if !ok {
            self.failures.push(id);
        }
        let verdict = if ok { "PASS" } else { "FAIL" };
        println!("criterion {id:>2} {verdict}  {name}: {detail} [{:.2} s / limit {} s]", took.as_secs_f64(), limit.as_secs());
    }
}

/// Labelled feasible sets, independent of ground-set order.
fn family(s: &SetSystem) -> BTreeSet<Vec<String>> {
    s.feasible().iter().map(|&f| s.labels_of(f)).collect()
}

fn with_marker(m: &Matroid, marker: &str) -> Matroid {
    m.rename(m.label(0), marker).unwrap()
}

// 1. F(A * X) = F(A) △ X for every feasible pivot X.
fn pivots() -> Outcome {
    let mut rng = generate::rng(1);
    let mut checked = 0;
    for _ in 0..200 {
        let n = rng.gen_range(1..=8);
        let a = generate::symmetric_matrix(&mut rng, n);
        for x in a.nonsingular_family()? {
            let lhs = SetSystem::from_matrix(&a.pivot(x)?, 0)?;
            let rhs = SetSystem::from_matrix(&a, x)?;
            ensure!(family(&lhs) == family(&rhs), "pivot {x:#b} of {:?}", a.row_strings());
            checked += 1;
        }
    }
    Ok(format!("200 matrices, {checked} pivots"))
}

// 2. Circuit-definition 2-sum equals the base formula.
fn two_sums() -> Outcome {
    let mut rng = generate::rng(2);
    for _ in 0..200 {
        let (n1, n2) = (rng.gen_range(2..=7), rng.gen_range(2..=7));
        let m1 = with_marker(&generate::connected_binary(&mut rng, n1, "a"), "p");
        let m2 = with_marker(&generate::connected_binary(&mut rng, n2, "b"), "p");
        let by_circuits = two_sum_by_circuits(&m1, &m2, "p")?;
        let by_bases = two_sum_by_bases(&m1, &m2, "p")?;
        ensure!(by_circuits.bases()? == by_bases.reorder(by_circuits.labels())?.bases()?, "base families differ");
        ensure!(two_sum(&m1, &m2, "p")?.same_as(&by_bases), "matrix 2-sum differs");
    }
    Ok("200 pairs".into())
}

// 3. compose(canonical_decomposition(m)) = m, and the tree is canonical.
fn decompositions() -> Outcome {
    let mut rng = generate::rng(3);
    let mut nodes = 0;
    for _ in 0..100 {
        let (m, _) = generate::two_sum_assembly(&mut rng, 14);
        let t = canonical_decomposition(&m)?;
        let back = t.compose()?;
        ensure!(back.same_as(&m) || is_isomorphic(&back, &m)?, "composition differs from the input");
        ensure!(t.is_canonical()?, "not canonical: {:?}", t.canonical_violations()?);
        nodes += t.len();
    }
    Ok(format!("100 assemblies, {nodes} tree nodes"))
}

/// Every tuple of bag shapes with the given edge counts.
fn shape_products(sizes: &[usize], shapes: &[Vec<BagShape>], out: &mut Vec<Vec<BagShape>>) {
    let mut idx = vec![0usize; sizes.len()];
    loop {
        out.push(idx.iter().zip(sizes).map(|(&i, &s)| shapes[s][i].clone()).collect());
        let mut k = 0;
        loop {
            if k == idx.len() {
                return;
            }
            idx[k] += 1;
            if idx[k] < shapes[sizes[k]].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

fn mhb_holds(bags: &[BagShape], closed: bool) -> Result<Matroid, String> {
    let (g, d) = generate::graft_from_bags(bags, closed).map_err(|e| e.to_string())?;
    if !validate_cyclic(&g, &d, true).is_valid() {
        return Err(format!("generated decomposition is not nice: {bags:?}"));
    }
    let mhb = if closed { build_mhb_cycle(&g, &d) } else { build_mhb_path(&g, &d) }.map_err(|e| e.to_string())?;
    match mhb.identity_holds(&g) {
        Ok(true) => Ok(mhb.matroid),
        Ok(false) => Err(format!("identity fails for {bags:?} (closed = {closed})")),
        Err(e) => Err(e.to_string()),
    }
}

// 4. F(G(G,T)) = B(M^{H,B}) △ twist on cycle hosts (k = 2, 3) and path hosts.
fn mhb(positives: &mut Vec<Matroid>) -> Outcome {
    const MAX_EDGES: usize = 8;
    let mut exhaustive = [0usize; 2];
    // Cycles of length 4 (loops are not allowed on cycle hosts); paths on 2..=4 vertices.
    for (closed, counts, loops) in [(true, vec![4], false), (false, vec![2, 3, 4], true)] {
        let largest = MAX_EDGES + 1 - counts[0];
        let shapes: Vec<Vec<BagShape>> = (0..=largest).into_par_iter().map(|e| generate::bag_shapes(e, loops)).collect();
        let mut tuples = Vec::new();
        for parts in counts {
            for total in parts..=MAX_EDGES {
                for sizes in generate::compositions(total, parts) {
                    shape_products(&sizes, &shapes, &mut tuples);
                }
            }
        }
        tuples.par_iter().try_for_each(|bags| mhb_holds(bags, closed).map(drop))?;
        exhaustive[!closed as usize] = tuples.len();
    }
    let mut rng = generate::rng(4);
    for i in 0..100 {
        let closed = i < 50;
        let parts = if closed { 2 * rng.gen_range(2..=3) } else { rng.gen_range(2..=4) };
        let bags: Vec<BagShape> = (0..parts)
            .map(|_| {
                let edges = rng.gen_range(1..=12 / parts);
                generate::random_bag(&mut rng, edges, !closed)
            })
            .collect();
        let m = mhb_holds(&bags, closed)?;
        ensure!(is_delta_graphic(&m)?, "M^(H,B) not recognized for {bags:?}");
        positives.push(m);
    }
    Ok(format!("{} cycle-host and {} path-host grafts exhaustively, 50 + 50 random", exhaustive[0], exhaustive[1]))
}

// 5. Deletion and contraction of graft edges against the delta-matroid.
fn graft_minors() -> Outcome {
    let mut rng = generate::rng(5);
    let mut moves = 0;
    for _ in 0..200 {
        let g = generate::random_graft(&mut rng, 6, 8);
        let dm = g.delta_matroid()?;
        for e in g.edge_labels() {
            let x = dm.set_of(&[&e])?;
            let twisted = dm.twist(x).delete_set(x);
            let plain = dm.delete_set(x);
            let del = if g.is_t_bridge(&e)? { twisted.as_ref() } else { plain.as_ref() };
            ensure!(family(&g.delete(&e)?.delta_matroid()?) == family(del.map_err(|e| e.to_string())?), "deleting {e}");
            let loop_edge = g.graph().edges()[g.graph().edge_index(&e)?].is_loop();
            let con = if g.is_t_tunnel(&e)? || loop_edge { plain.as_ref() } else { twisted.as_ref() };
            ensure!(family(&g.contract(&e)?.delta_matroid()?) == family(con.map_err(|e| e.to_string())?), "contracting {e}");
            moves += 2;
        }
    }
    Ok(format!("200 grafts, {moves} minors"))
}

// 6. Twisted matroid ⇔ cyclic decomposition ⇔ no Δ-minor.
fn graft_condition(positives: &mut Vec<Matroid>) -> Outcome {
    let mut counts = [0usize; 2];
    for h in generate::connected_multigraphs(6, true) {
        for g in generate::grafts_up_to_iso(&h, 3) {
            let twisted = g.delta_matroid()?.is_twisted_matroid()?;
            let cyclic = build_cyclic(&g)?;
            let minor = g.find_delta_minor()?;
            let desc = || format!("{:?} T = {:?}", g.graph(), g.terminal_labels());
            ensure!(twisted.is_some() == cyclic.is_some(), "twisted vs cyclic on {}", desc());
            ensure!(cyclic.is_some() == minor.is_none(), "cyclic vs Δ-minor on {}", desc());
            if let Some(d) = &cyclic {
                ensure!(validate_cyclic(&g, d, true).is_valid(), "invalid decomposition on {}", desc());
            }
            if let Some(w) = &minor {
                ensure!(w.verify(&g)?, "bad Δ-minor witness on {}", desc());
            }
            if let Some(t) = twisted {
                ensure!(is_delta_graphic(&t.matroid)?, "twisted matroid not recognized on {}", desc());
                positives.push(t.matroid);
            }
            counts[cyclic.is_some() as usize] += 1;
        }
    }
    Ok(format!("{} grafts: {} with a cyclic decomposition, {} with a Δ-minor", counts[0] + counts[1], counts[1], counts[0]))
}

fn positive_corpus() -> Vec<Matroid> {
    let mut out = Vec::new();
    for m in [catalog::k5(), catalog::k33()] {
        out.push(m.dual());
        out.push(m);
    }
    for k in 3..=6 {
        let w = catalog::wheel(k).unwrap();
        out.push(w.dual());
        out.push(w);
    }
    let mut rng = generate::rng(7);
    for _ in 0..100 {
        out.push(generalized_wheel(&generate::generalized_wheel_spec(&mut rng, 5, 30)).unwrap());
    }
    out
}

fn negative_corpus() -> Vec<Matroid> {
    let k33 = catalog::k33();
    let mut out = vec![catalog::r10()];
    let graphic = [k33.clone(), catalog::k5()];
    let cographic = [k33.dual(), catalog::k5().dual()];
    for (outer, inner) in [(&graphic, &cographic), (&cographic, &graphic)] {
        for a in outer.iter() {
            for b in inner.iter() {
                for c in outer.iter() {
                    out.push(make_tripod(a, b, c).unwrap().matroid);
                }
            }
        }
    }
    let u13 = catalog::uniform(1, 3).unwrap();
    let p = HParts { v1: catalog::k4(), v2: u13.clone(), x1: k33.clone(), y1: k33.dual(), x2: k33.clone(), y2: k33.dual() };
    out.push(make_h_matroid(&p).unwrap().matroid);
    let q = HParts { v1: u13.clone(), ..p };
    out.push(make_hprime_matroid(&q, &catalog::k4()).unwrap().matroid);
    let spine = vec![u13.clone(), catalog::uniform(2, 3).unwrap(), u13];
    let b = BenchParts { spine, x1: k33.clone(), y1: k33.dual(), xm: k33.clone(), ym: k33.dual(), w: k33.dual() };
    out.push(make_bench(3, 2, &b).unwrap().matroid);
    // Graphic leaves on two disjoint edges of the hub W_3 violate (W2).
    let hub = catalog::wheel(3).unwrap();
    out.push(make_starlike(&hub, ["e1", "e4", "e2", "e6"], [&k33, &k33, &k33.dual(), &k33.dual()]).unwrap().matroid);
    out
}

// 7. Recognition with verifiable certificates.
fn recognition(positives: &mut Vec<Matroid>) -> Outcome {
    let (pos, neg) = (positive_corpus(), negative_corpus());
    for (i, m) in pos.iter().enumerate() {
        let c = recognize(m)?;
        ensure!(c.is_positive(), "positive #{i} recognized as {}", c.kind());
        ensure!(verify_certificate(m, &c), "positive #{i}: certificate does not verify");
        positives.push(m.clone());
    }
    for (i, m) in neg.iter().enumerate() {
        let c = recognize(m)?;
        ensure!(!c.is_positive(), "negative #{i} recognized as {}", c.kind());
        ensure!(verify_certificate(m, &c), "negative #{i}: certificate does not verify");
    }
    Ok(format!("{} positive, {} negative", pos.len(), neg.len()))
}

// 8. Invariance under duality and single-element minors.
fn closure(positives: &mut Vec<Matroid>) -> Outcome {
    let pos = positive_corpus();
    let neg = negative_corpus();
    for (m, want) in pos.iter().map(|m| (m, true)).chain(neg.iter().map(|m| (m, false))) {
        ensure!(is_delta_graphic(&m.dual())? == want, "dual changes the answer ({} elements)", m.len());
        if want {
            positives.push(m.dual());
        }
    }
    let mut rng = generate::rng(8);
    for _ in 0..200 {
        let m = &pos[rng.gen_range(0..pos.len())];
        let e = bits::singleton(rng.gen_range(0..m.len()));
        let minor = if rng.gen_bool(0.5) { m.delete(e) } else { m.contract(e) };
        ensure!(is_delta_graphic(&minor)?, "a single-element minor of a positive instance is negative");
        positives.push(minor);
    }
    Ok(format!("{} duals, 200 minors", pos.len() + neg.len()))
}

// 9a. The excluded minors on at most seven elements.
fn search_seven() -> Outcome {
    let found = search(7)?;
    let names: Vec<String> = found.iter().map(|r| r.name.clone().unwrap_or_else(|| format!("{:?}", r.canonical))).collect();
    ensure!(names == ["U(2,4)", "F7", "F7*"], "found {names:?}");
    ensure!(found.iter().all(|r| r.verdict == Verdict::Minimal), "a result is not minimal");
    Ok(names.join(", "))
}

// 9b. R10 is minimal.
fn r10_minimal() -> Outcome {
    let r = check_minimal(&catalog::r10())?;
    ensure!(r.verdict == Verdict::Minimal, "verdict {:?}", r.verdict);
    ensure!(r.minors.len() == 20 && r.minors.iter().all(|x| x.delta_graphic), "single-element minors");
    Ok("minimal, 20 delta-graphic single-element minors".into())
}

// 10. Every positively recognized matroid is regular.
fn regularity(positives: &[Matroid]) -> Outcome {
    for (i, m) in positives.iter().enumerate() {
        ensure!(is_regular(m)?, "positive #{i} ({} elements) is not regular", m.len());
    }
    Ok(format!("{} positives", positives.len()))
}

fn main() {
    let mut report = Report { failures: Vec::new() };
    let mut positives: Vec<Matroid> = Vec::new();
    let secs = Duration::from_secs;
    report.run(1, "pivot twists", secs(10), pivots);
    report.run(2, "2-sum base formula", secs(30), two_sums);
    report.run(3, "canonical decomposition", secs(120), decompositions);
    report.run(4, "M^(H,B) identity", secs(120), || mhb(&mut positives));
    report.run(5, "graft minors", secs(60), graft_minors);
    report.run(6, "graft condition", secs(300), || graft_condition(&mut positives));
    report.run(7, "recognition corpus", secs(300), || recognition(&mut positives));
    report.run(8, "closure laws", secs(120), || closure(&mut positives));
    report.run(9, "search(7)", secs(600), search_seven);
    report.run(9, "R10 minimality", secs(60), r10_minimal);
    report.run(10, "regularity audit", secs(600), || regularity(&positives));
    if !report.failures.is_empty() {
        eprintln!("failed criteria: {:?}", report.failures);
        std::process::exit(1);
    }
}
