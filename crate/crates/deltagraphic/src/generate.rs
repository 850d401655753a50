//! Instance generators: seeded random matroids, grafts and generalized wheels,
//! and exhaustive isomorph-free enumeration of small multigraphs, grafts and
//! the bag shapes of cyclic decompositions.

use crate::bits;
use crate::error::{Error, Result};
use crate::gf2::{Gf2Matrix, XorBasis};
use crate::graft::{CyclicDecomposition, Graft};
use crate::graph::{self, MultiGraph};
use crate::matroid::Matroid;
use crate::recognize::{generalized_wheel, Attachment, GeneralizedWheelSpec, PartClass};
use crate::tree;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::collections::BTreeSet;

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// A uniformly random symmetric `n × n` matrix over GF(2), labelled `v1..vn`.
pub fn symmetric_matrix<R: Rng>(rng: &mut R, n: usize) -> Gf2Matrix {
    let mut rows = vec![0u64; n];
    for i in 0..n {
        for j in i..n {
            if rng.gen_bool(0.5) {
                rows[i] |= 1 << j;
                rows[j] |= 1 << i;
            }
        }
    }
    let labels: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    Gf2Matrix::new(labels.clone(), labels, rows).expect("square matrix")
}

/// A random connected binary matroid on `n >= 1` elements labelled `{prefix}1..`.
pub fn connected_binary<R: Rng>(rng: &mut R, n: usize, prefix: &str) -> Matroid {
    let labels: Vec<String> = (1..=n).map(|i| format!("{prefix}{i}")).collect();
    if n == 1 {
        let c = rng.gen_range(0..2u64);
        return Matroid::from_columns(labels, &[c]).expect("one column");
    }
    loop {
        let r = rng.gen_range(1..n);
        let cols: Vec<u64> = (0..n).map(|_| rng.gen_range(1..1u64 << r)).collect();
        let mut b = XorBasis::default();
        cols.iter().for_each(|&c| {
            b.insert(c);
        });
        if b.dim() != r {
            continue;
        }
        let m = Matroid::from_columns(labels.clone(), &cols).expect("columns");
        if m.is_connected() {
            return m;
        }
    }
}

/// A random 2-sum of connected pieces (3 to 6 elements each) with at most
/// `max_n` elements, together with the number of pieces.
pub fn two_sum_assembly<R: Rng>(rng: &mut R, max_n: usize) -> (Matroid, usize) {
    let first = rng.gen_range(3..=6.min(max_n.max(3)));
    let mut acc = connected_binary(rng, first, "p0e");
    let mut pieces = 1;
    while acc.len() + 1 < max_n && rng.gen_bool(0.8) {
        let room = max_n + 2 - acc.len();
        let size = rng.gen_range(3..=6.min(room));
        let piece = connected_binary(rng, size, &format!("p{pieces}e"));
        let x = acc.label(rng.gen_range(0..acc.len())).to_string();
        let piece = piece.rename(piece.label(0), &x).expect("fresh label");
        acc = tree::two_sum(&acc, &piece, &x).expect("connected pieces");
        pieces += 1;
    }
    (acc, pieces)
}

/// A random graft with at most `max_vertices` vertices and `max_edges` edges.
pub fn random_graft<R: Rng>(rng: &mut R, max_vertices: usize, max_edges: usize) -> Graft {
    let n = rng.gen_range(1..=max_vertices.max(1));
    let e = rng.gen_range(0..=max_edges);
    let mut g = MultiGraph::new();
    for v in 1..=n {
        g.add_vertex(&format!("v{v}")).expect("fresh vertex");
    }
    for k in 1..=e {
        let a = rng.gen_range(0..n);
        let b = if rng.gen_bool(0.1) { a } else { rng.gen_range(0..n) };
        g.add_edge_idx(&format!("e{k}"), a, b).expect("fresh edge");
    }
    let t: Vec<String> = (1..=n).filter(|_| rng.gen_bool(0.5)).map(|v| format!("v{v}")).collect();
    Graft::new(g, &t).expect("valid terminals")
}

// ---------------------------------------------------------------------------
// Small multigraphs up to isomorphism

/// A small multigraph as a vertex count and a sorted list of `(u, v)`, `u <= v`.
type Shape = (usize, Vec<(u8, u8)>);

fn relabelled(edges: &[(u8, u8)], perm: &[u8]) -> Vec<(u8, u8)> {
    let mut out: Vec<(u8, u8)> = edges
        .iter()
        .map(|&(a, b)| {
            let (x, y) = (perm[a as usize], perm[b as usize]);
            (x.min(y), x.max(y))
        })
        .collect();
    out.sort_unstable();
    out
}

/// Canonical form under vertex permutations that preserve `colour`, restricted
/// to permutations that sort vertices by an invariant.
fn canonical(n: usize, edges: &[(u8, u8)], colour: &[u8]) -> Vec<(u8, u8)> {
    let mut deg = vec![0usize; n];
    let mut loops = vec![0usize; n];
    for &(a, b) in edges {
        deg[a as usize] += 1;
        deg[b as usize] += 1;
        if a == b {
            loops[a as usize] += 1;
        }
    }
    let key = |v: usize| (colour[v], deg[v], loops[v]);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| key(v));
    // Classes of equal invariant, in order.
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        match classes.last_mut() {
            Some(c) if key(c[0]) == key(v) => c.push(v),
            _ => classes.push(vec![v]),
        }
    }
    let mut best: Option<Vec<(u8, u8)>> = None;
    let mut perm = vec![0u8; n];
    fn rec(
        classes: &[Vec<usize>],
        ci: usize,
        next: u8,
        perm: &mut Vec<u8>,
        edges: &[(u8, u8)],
        best: &mut Option<Vec<(u8, u8)>>,
    ) {
        if ci == classes.len() {
            let cand = relabelled(edges, perm);
            if best.as_ref().is_none_or(|b| cand < *b) {
                *best = Some(cand);
            }
            return;
        }
        let class = &classes[ci];
        let mut items = class.clone();
        permute(&mut items, 0, &mut |p: &[usize]| {
            for (k, &v) in p.iter().enumerate() {
                perm[v] = next + k as u8;
            }
            rec(classes, ci + 1, next + p.len() as u8, perm, edges, best);
        });
    }
    rec(&classes, 0, 0, &mut perm, edges, &mut best);
    best.unwrap_or_default()
}

fn permute(items: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == items.len() {
        f(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, f);
        items.swap(k, i);
    }
}

fn shape_connected(n: usize, edges: &[(u8, u8)]) -> bool {
    let mut seen = 1u64;
    loop {
        let before = seen;
        for &(a, b) in edges {
            if seen >> a & 1 == 1 || seen >> b & 1 == 1 {
                seen |= 1 << a | 1 << b;
            }
        }
        if seen == before {
            break;
        }
    }
    seen == bits::full(n)
}

fn shape_graph(n: usize, edges: &[(u8, u8)], vertex: impl Fn(usize) -> String) -> MultiGraph {
    let mut g = MultiGraph::new();
    for v in 0..n {
        g.add_vertex(&vertex(v)).expect("fresh vertex");
    }
    for (k, &(a, b)) in edges.iter().enumerate() {
        g.add_edge_idx(&format!("e{}", k + 1), a as usize, b as usize).expect("fresh edge");
    }
    g
}

/// All connected multigraphs with at most `max_edges` edges, one per
/// isomorphism class (including the one-vertex graph); vertices `v1..`,
/// edges `e1..`.
pub fn connected_multigraphs(max_edges: usize, loops: bool) -> Vec<MultiGraph> {
    let mut level: BTreeSet<Shape> = BTreeSet::from([(1, Vec::new())]);
    let mut all: Vec<Shape> = level.iter().cloned().collect();
    for _ in 0..max_edges {
        let mut next = BTreeSet::new();
        for (n, edges) in &level {
            let n = *n;
            let mut cands: Vec<(usize, (u8, u8))> = Vec::new();
            for a in 0..n {
                for b in a..n {
                    if a != b || loops {
                        cands.push((n, (a as u8, b as u8)));
                    }
                }
                cands.push((n + 1, (a as u8, n as u8)));
            }
            for (m, e) in cands {
                let mut es = edges.clone();
                es.push(e);
                let colour = vec![0u8; m];
                next.insert((m, canonical(m, &es, &colour)));
            }
        }
        all.extend(next.iter().cloned());
        level = next;
    }
    all.into_iter().map(|(n, e)| shape_graph(n, &e, |v| format!("v{}", v + 1))).collect()
}

/// All terminal sets of `g` with at least `min_t` terminals, one per
/// isomorphism class of the resulting graft.
pub fn grafts_up_to_iso(g: &MultiGraph, min_t: usize) -> Vec<Graft> {
    let n = g.vertex_count();
    let edges: Vec<(u8, u8)> =
        g.edges().iter().map(|e| (e.u.min(e.v) as u8, e.u.max(e.v) as u8)).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for t in 0..1u64 << n {
        if bits::len(t) < min_t {
            continue;
        }
        let colour: Vec<u8> = (0..n).map(|v| (t >> v & 1) as u8).collect();
        // Canonical form of the coloured graph: colours sort first in the invariant.
        let key = (canonical(n, &edges, &colour), bits::len(t));
        if seen.insert(key) {
            let labels: Vec<String> = bits::iter(t).map(|v| g.vertices()[v].clone()).collect();
            out.push(Graft::new(g.clone(), &labels).expect("valid terminals"));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Cyclic decompositions

/// A connected bag graph: vertices `0` and `1` are the two attachment
/// terminals, `2..2 + private` are private non-terminal vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BagShape {
    pub private: usize,
    pub edges: Vec<(u8, u8)>,
}

impl BagShape {
    pub fn vertex_count(&self) -> usize {
        self.private + 2
    }
}

/// Every bag shape with exactly `edges` edges, up to isomorphism fixing both
/// attachments; with `loops`, loops are allowed at private vertices.
pub fn bag_shapes(edges: usize, loops: bool) -> Vec<BagShape> {
    let mut out = BTreeSet::new();
    for private in 0..edges.max(1) {
        let n = private + 2;
        let mut pairs = Vec::new();
        for a in 0..n {
            for b in a..n {
                if a != b || (loops && a >= 2) {
                    pairs.push((a as u8, b as u8));
                }
            }
        }
        // Colours pin the attachments: 1 and 2 for the terminals, 0 for private vertices.
        let colour: Vec<u8> = (0..n).map(|v| if v < 2 { v as u8 + 1 } else { 0 }).collect();
        multisets(&pairs, edges, &mut Vec::new(), 0, &mut |es| {
            if shape_connected(n, es) {
                out.insert(BagShape { private, edges: canonical_pinned(n, es, &colour) });
            }
        });
    }
    out.into_iter().collect()
}

/// Like [`canonical`], but colours with value > 0 are kept in place.
fn canonical_pinned(n: usize, edges: &[(u8, u8)], colour: &[u8]) -> Vec<(u8, u8)> {
    let private: Vec<usize> = (0..n).filter(|&v| colour[v] == 0).collect();
    let mut best: Option<Vec<(u8, u8)>> = None;
    let mut items = private.clone();
    permute(&mut items, 0, &mut |p: &[usize]| {
        let mut perm: Vec<u8> = (0..n as u8).collect();
        for (k, &v) in p.iter().enumerate() {
            perm[v] = private[k] as u8;
        }
        let cand = relabelled(edges, &perm);
        if best.as_ref().is_none_or(|b| cand < *b) {
            best = Some(cand);
        }
    });
    best.unwrap_or_default()
}

fn multisets(pairs: &[(u8, u8)], k: usize, cur: &mut Vec<(u8, u8)>, from: usize, f: &mut dyn FnMut(&[(u8, u8)])) {
    if cur.len() == k {
        f(cur);
        return;
    }
    for i in from..pairs.len() {
        cur.push(pairs[i]);
        multisets(pairs, k, cur, i, f);
        cur.pop();
    }
}

/// A random bag shape with `edges >= 1` edges.
pub fn random_bag<R: Rng>(rng: &mut R, edges: usize, loops: bool) -> BagShape {
    loop {
        let private = rng.gen_range(0..edges.clamp(1, 4));
        let n = private + 2;
        let es: Vec<(u8, u8)> = (0..edges)
            .map(|_| {
                let a = rng.gen_range(0..n);
                let b = if loops && a >= 2 && rng.gen_bool(0.15) { a } else { rng.gen_range(0..n) };
                (a.min(b) as u8, a.max(b) as u8)
            })
            .filter(|&(a, b)| a != b || (loops && a >= 2))
            .collect();
        if es.len() == edges && shape_connected(n, &es) {
            let mut es = es;
            es.sort_unstable();
            return BagShape { private, edges: es };
        }
    }
}

/// The graft whose bags are `bags` in host order, over a cycle (`closed`) or a
/// path host, with all attachment vertices as terminals.
///
/// Attachment vertices are `u0, u1, ..`; bag `j` (0-based) joins `u_j` and
/// `u_{j+1}` (indices mod the host length on a cycle).
pub fn graft_from_bags(bags: &[BagShape], closed: bool) -> Result<(Graft, CyclicDecomposition)> {
    let p = bags.len();
    if p < 2 {
        return Err(Error::Argument("a host needs at least two bags".into()));
    }
    let attach = |j: usize| if closed { j % p } else { j };
    let n_attach = if closed { p } else { p + 1 };
    let mut g = MultiGraph::new();
    for j in 0..n_attach {
        g.add_vertex(&format!("u{j}"))?;
    }
    let mut host_bags = Vec::with_capacity(p);
    let mut e = 0;
    for (j, bag) in bags.iter().enumerate() {
        let name = |v: u8| match v {
            0 => format!("u{}", attach(j)),
            1 => format!("u{}", attach(j + 1)),
            x => format!("b{}x{}", j + 1, x - 1),
        };
        let mut vs: Vec<String> = (0..bag.vertex_count() as u8).map(name).collect();
        for v in &vs[2..] {
            g.add_vertex(v)?;
        }
        for &(a, b) in &bag.edges {
            e += 1;
            g.add_edge(&format!("e{e}"), &name(a), &name(b))?;
        }
        vs.sort();
        host_bags.push(vs);
    }
    let terminals: Vec<String> = (0..n_attach).map(|j| format!("u{j}")).collect();
    let host = if closed { graph::cycle(p) } else { graph::path(p) };
    Ok((Graft::new(g, &terminals)?, CyclicDecomposition::new(host, host_bags)?))
}

/// Compositions of `total` into `parts` positive integers.
pub fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 1..=total.saturating_sub(parts - 1) {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Generalized wheels

/// A 2-connected graph containing the edge `basepoint`: a cycle through all
/// its vertices plus `extra` random chords (parallel edges allowed).
pub fn random_block<R: Rng>(rng: &mut R, basepoint: &str, prefix: &str, vertices: usize, extra: usize) -> MultiGraph {
    let v = vertices.max(2);
    let mut g = MultiGraph::new();
    for i in 0..v {
        g.add_vertex(&format!("{prefix}v{i}")).expect("fresh vertex");
    }
    let mut k = 0;
    let mut label = |first: bool| {
        k += 1;
        if first {
            basepoint.to_string()
        } else {
            format!("{prefix}{k}")
        }
    };
    for i in 0..v {
        g.add_edge_idx(&label(i == 0), i, (i + 1) % v).expect("fresh edge");
    }
    for _ in 0..extra {
        let a = rng.gen_range(0..v);
        let mut b = rng.gen_range(0..v);
        while b == a {
            b = rng.gen_range(0..v);
        }
        g.add_edge_idx(&label(false), a, b).expect("fresh edge");
    }
    g
}

/// A random valid generalized-wheel spec with `3 <= k <= max_k` and at most
/// `max_elements` elements in the composed matroid.
pub fn generalized_wheel_spec<R: Rng>(rng: &mut R, max_k: usize, max_elements: usize) -> GeneralizedWheelSpec {
    loop {
        let k = rng.gen_range(3..=max_k.max(3));
        let labels: Vec<String> = (1..=2 * k).map(|i| format!("w{i}")).collect();
        let mut delete = Vec::new();
        let mut contract = Vec::new();
        let mut kept = Vec::new();
        for (j, l) in labels.iter().enumerate() {
            match rng.gen_range(0..100) {
                0..=11 => delete.push(l.clone()),
                12..=23 => contract.push(l.clone()),
                _ => kept.push(j),
            }
        }
        let mut size = kept.len();
        let mut attachments = Vec::new();
        for &j in &kept {
            if !rng.gen_bool(0.5) {
                continue;
            }
            let vertices = rng.gen_range(2..=4);
            let extra = rng.gen_range(0..=2);
            let added = vertices.max(2) + extra - 2;
            if size + added > max_elements {
                continue;
            }
            let b = &labels[j];
            let g = random_block(rng, b, &format!("a{}_", j + 1), vertices, extra);
            let (part, class) =
                if j % 2 == 0 { (g.cycle_matroid(), PartClass::Graphic) } else { (g.bond_matroid(), PartClass::Cographic) };
            size += added;
            attachments.push(Attachment { basepoint: b.clone(), part: part.expect("graph matroid"), class });
        }
        let spec = GeneralizedWheelSpec { k, labels, delete, contract, attachments };
        if generalized_wheel(&spec).is_ok() {
            return spec;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multigraph_counts() {
        let count = |loops| {
            let mut by = [0usize; 4];
            for g in connected_multigraphs(3, loops) {
                by[g.edge_count()] += 1;
            }
            by
        };
        // Two edges with loops: two loops, a parallel pair, an edge and a loop, a path.
        assert_eq!(count(true)[..3], [1, 2, 4]);
        // Three loopless edges: triple edge, P4, K_{1,3}, triangle, doubled edge plus pendant.
        assert_eq!(count(false), [1, 1, 2, 5]);
    }

    #[test]
    fn bag_shapes_small() {
        assert_eq!(bag_shapes(1, false).len(), 1);
        // ab twice; a-x-b; ab plus a pendant at a; ab plus a pendant at b.
        assert_eq!(bag_shapes(2, false).len(), 4);
    }

    #[test]
    fn bags_make_nice_decompositions() {
        let mut r = rng(3);
        for closed in [true, false] {
            for _ in 0..20 {
                let p = if closed { 4 } else { 3 };
                let bags: Vec<BagShape> = (0..p).map(|_| random_bag(&mut r, 2, !closed)).collect();
                let (g, d) = graft_from_bags(&bags, closed).unwrap();
                assert!(d.validate(&g, true).is_valid(), "{:?}", d.validate(&g, true));
            }
        }
    }

    #[test]
    fn compositions_count() {
        assert_eq!(compositions(5, 2).len(), 4);
        assert_eq!(compositions(3, 4).len(), 0);
    }
}
