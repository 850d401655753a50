//! 2-sums, matroid-labelled trees and canonical tree decompositions.

use crate::bits::{self, Set};
use crate::error::{Error, Result};
use crate::matroid::Matroid;
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, HashSet};
use std::sync::atomic::{AtomicUsize, Ordering};

static MARKER: AtomicUsize = AtomicUsize::new(1);

/// A fresh marker label `#k` not occurring in `avoid`.
pub fn fresh_marker(avoid: &[String]) -> String {
    loop {
        let l = format!("#{}", MARKER.fetch_add(1, Ordering::Relaxed));
        if !avoid.contains(&l) {
            return l;
        }
    }
}

fn check_marker(m1: &Matroid, m2: &Matroid, marker: &str) -> Result<(usize, usize)> {
    let i = m1.index(marker)?;
    let j = m2.index(marker)?;
    let shared = m1.labels().iter().filter(|l| m2.try_index(l).is_some()).count();
    if shared != 1 {
        return Err(Error::Argument(format!("operands must share exactly the marker `{marker}`")));
    }
    for (m, k) in [(m1, i), (m2, j)] {
        if m.is_loop(k) || m.is_coloop(k) {
            return Err(Error::Argument(format!("marker `{marker}` is a loop or coloop")));
        }
    }
    Ok((i, j))
}

fn summed_labels(m1: &Matroid, m2: &Matroid, i: usize, j: usize) -> Vec<String> {
    let mut labels: Vec<String> = m1.labels().iter().enumerate().filter(|(k, _)| *k != i).map(|(_, l)| l.clone()).collect();
    labels.extend(m2.labels().iter().enumerate().filter(|(k, _)| *k != j).map(|(_, l)| l.clone()));
    labels
}

/// `m1 ⊕₂ m2` along the shared element `marker`. Elements of `m1` come first.
pub fn two_sum(m1: &Matroid, m2: &Matroid, marker: &str) -> Result<Matroid> {
    let (i, j) = check_marker(m1, m2, marker)?;
    match (m1.coordinates_from(i), m2.coordinates_from(j)) {
        (Some(a), Some(b)) => {
            // Parallel connection with the marker as the shared unit vector, then delete it.
            let r1 = m1.rank();
            let mut cols: Vec<u64> = a.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, c)| *c).collect();
            cols.extend(b.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, c)| (c & 1) | (c >> 1) << r1));
            Matroid::from_columns(summed_labels(m1, m2, i, j), &cols)
        }
        _ => two_sum_by_bases(m1, m2, marker),
    }
}

/// 2-sum via the base formula `{B1 ∪ B2 - e : e ∈ B1 △ B2}`.
pub fn two_sum_by_bases(m1: &Matroid, m2: &Matroid, marker: &str) -> Result<Matroid> {
    let (i, j) = check_marker(m1, m2, marker)?;
    let n1 = m1.len() - 1;
    let lift1 = |b: Set| bits::compress(b, m1.ground() & !bits::singleton(i));
    let lift2 = |b: Set| bits::compress(b, m2.ground() & !bits::singleton(j)) << n1;
    let mut bases = Vec::new();
    for b1 in m1.bases()? {
        for b2 in m2.bases()? {
            if bits::contains(b1, i) != bits::contains(b2, j) {
                bases.push(lift1(b1) | lift2(b2));
            }
        }
    }
    Matroid::from_bases(summed_labels(m1, m2, i, j), bases)
}

/// 2-sum via its circuit definition: circuits of `m1 \ e`, of `m2 \ e`, and
/// `C1 ∪ C2 - e` for circuits `C1`, `C2` through the marker. Returns the base
/// family computed from that circuit family.
pub fn two_sum_by_circuits(m1: &Matroid, m2: &Matroid, marker: &str) -> Result<Matroid> {
    let (i, j) = check_marker(m1, m2, marker)?;
    let n1 = m1.len() - 1;
    let k1 = m1.ground() & !bits::singleton(i);
    let k2 = m2.ground() & !bits::singleton(j);
    let c1 = m1.circuits()?;
    let c2 = m2.circuits()?;
    let mut circuits: Vec<Set> = Vec::new();
    circuits.extend(c1.iter().filter(|c| !bits::contains(**c, i)).map(|c| bits::compress(*c, k1)));
    circuits.extend(c2.iter().filter(|c| !bits::contains(**c, j)).map(|c| bits::compress(*c, k2) << n1));
    for a in c1.iter().filter(|c| bits::contains(**c, i)) {
        for b in c2.iter().filter(|c| bits::contains(**c, j)) {
            circuits.push(bits::compress(*a & k1, k1) | bits::compress(*b & k2, k2) << n1);
        }
    }
    let n = n1 + m2.len() - 1;
    let independent = |s: Set| circuits.iter().all(|c| c & !s != 0);
    let mut max = 0;
    let mut bases = Vec::new();
    for s in bits::all_subsets(bits::full(n)) {
        if !independent(s) {
            continue;
        }
        let k = bits::len(s);
        if k > max {
            max = k;
            bases.clear();
        }
        if k == max {
            bases.push(s);
        }
    }
    Matroid::from_bases(summed_labels(m1, m2, i, j), bases)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeEdge {
    pub a: usize,
    pub b: usize,
    pub marker: String,
}

/// A tree whose nodes carry matroids; adjacent nodes share exactly their marker.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LabelledTree {
    nodes: Vec<Matroid>,
    edges: Vec<TreeEdge>,
}

impl LabelledTree {
    /// Build from node matroids; edges are the labels shared by two nodes.
    pub fn new(nodes: Vec<Matroid>) -> Result<LabelledTree> {
        if nodes.is_empty() {
            return Err(Error::Argument("a tree needs at least one node".into()));
        }
        let mut owners: HashMap<&str, Vec<usize>> = HashMap::new();
        for (v, m) in nodes.iter().enumerate() {
            for l in m.labels() {
                owners.entry(l.as_str()).or_default().push(v);
            }
        }
        let mut edges = Vec::new();
        let mut pairs = HashSet::new();
        for (l, vs) in &owners {
            match vs.len() {
                1 => {}
                2 => {
                    let (a, b) = (vs[0], vs[1]);
                    if !pairs.insert((a, b)) {
                        return Err(Error::Argument(format!("nodes {a} and {b} share more than one element")));
                    }
                    edges.push(TreeEdge { a, b, marker: l.to_string() });
                }
                _ => return Err(Error::Argument(format!("element `{l}` lies in more than two nodes"))),
            }
        }
        edges.sort_by(|x, y| (x.a, x.b, &x.marker).cmp(&(y.a, y.b, &y.marker)));
        let t = LabelledTree { nodes, edges };
        t.validate()?;
        Ok(t)
    }

    fn validate(&self) -> Result<()> {
        let n = self.nodes.len();
        if self.edges.len() + 1 != n || self.reach(0, usize::MAX).len() != n {
            return Err(Error::Argument("node matroids do not form a tree".into()));
        }
        for e in &self.edges {
            for v in [e.a, e.b] {
                let m = &self.nodes[v];
                let k = m.index(&e.marker)?;
                if m.is_loop(k) || m.is_coloop(k) {
                    return Err(Error::Argument(format!("marker `{}` is a loop or coloop of node {v}", e.marker)));
                }
            }
        }
        Ok(())
    }

    pub fn single(m: Matroid) -> LabelledTree {
        LabelledTree { nodes: vec![m], edges: Vec::new() }
    }

    pub fn nodes(&self) -> &[Matroid] {
        &self.nodes
    }

    pub fn node(&self, v: usize) -> &Matroid {
        &self.nodes[v]
    }

    pub fn edges(&self) -> &[TreeEdge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn markers(&self) -> Vec<String> {
        self.edges.iter().map(|e| e.marker.clone()).collect()
    }

    pub fn is_marker(&self, label: &str) -> bool {
        self.edges.iter().any(|e| e.marker == label)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.a == v || e.b == v).count()
    }

    /// `(neighbour, marker)` for every edge at `v`.
    pub fn neighbours(&self, v: usize) -> Vec<(usize, String)> {
        self.edges
            .iter()
            .filter_map(|e| {
                if e.a == v {
                    Some((e.b, e.marker.clone()))
                } else if e.b == v {
                    Some((e.a, e.marker.clone()))
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn edge_by_marker(&self, marker: &str) -> Option<&TreeEdge> {
        self.edges.iter().find(|e| e.marker == marker)
    }

    /// Nodes reachable from `start` without crossing the edge `skip` (an index into `edges`).
    fn reach(&self, start: usize, skip: usize) -> Vec<usize> {
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![start];
        seen[start] = true;
        let mut out = Vec::new();
        while let Some(x) = stack.pop() {
            out.push(x);
            for (k, e) in self.edges.iter().enumerate() {
                if k == skip {
                    continue;
                }
                let y = if e.a == x {
                    e.b
                } else if e.b == x {
                    e.a
                } else {
                    continue;
                };
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// `T_e(v)`: the nodes of the component of `T \ e` containing `v`.
    pub fn side(&self, marker: &str, v: usize) -> Result<Vec<usize>> {
        let k = self
            .edges
            .iter()
            .position(|e| e.marker == marker)
            .ok_or_else(|| Error::Label(format!("`{marker}` is not a tree edge")))?;
        let e = &self.edges[k];
        if e.a != v && e.b != v {
            return Err(Error::Argument(format!("node {v} is not an end of `{marker}`")));
        }
        Ok(self.reach(v, k))
    }

    /// The subtree hanging off `v` through `marker` (i.e. `T_e(w)` for the other end `w`).
    pub fn hanging(&self, v: usize, marker: &str) -> Result<Vec<usize>> {
        let e = self.edge_by_marker(marker).ok_or_else(|| Error::Label(format!("`{marker}` is not a tree edge")))?;
        let w = if e.a == v { e.b } else { e.a };
        self.side(marker, w)
    }

    /// `ρ(S)` for a connected node set `S`.
    pub fn compose_nodes(&self, s: &[usize]) -> Result<Matroid> {
        let Some(&first) = s.iter().min() else {
            return Err(Error::Argument("a subtree has at least one node".into()));
        };
        let inside: HashSet<usize> = s.iter().copied().collect();
        let mut acc = self.nodes[first].clone();
        let mut done: HashSet<usize> = HashSet::from([first]);
        let mut frontier = vec![first];
        while let Some(x) = frontier.pop() {
            for (y, marker) in self.neighbours(x) {
                if inside.contains(&y) && done.insert(y) {
                    acc = two_sum(&acc, &self.nodes[y], &marker)?;
                    frontier.push(y);
                }
            }
        }
        if done.len() != inside.len() {
            return Err(Error::Argument("node set is not a subtree".into()));
        }
        Ok(acc)
    }

    /// `ρ(T)`.
    pub fn compose(&self) -> Result<Matroid> {
        let all: Vec<usize> = (0..self.nodes.len()).collect();
        self.compose_nodes(&all)
    }

    /// Subtree composition; a minor of [`LabelledTree::compose`].
    pub fn subtree(&self, s: &[usize]) -> Result<Matroid> {
        self.compose_nodes(s)
    }

    /// The tree restricted to a connected node set.
    pub fn restrict(&self, s: &[usize]) -> Result<LabelledTree> {
        let mut s = s.to_vec();
        s.sort_unstable();
        LabelledTree::new(s.iter().map(|&v| self.nodes[v].clone()).collect())
    }

    /// Node-wise dual.
    pub fn dual(&self) -> LabelledTree {
        LabelledTree { nodes: self.nodes.iter().map(|m| m.dual()).collect(), edges: self.edges.clone() }
    }

    /// Whether `{u, v}` is a bad pair.
    pub fn is_bad_pair(&self, u: usize, v: usize) -> bool {
        let adjacent = self.edges.iter().any(|e| (e.a, e.b) == (u, v) || (e.a, e.b) == (v, u));
        let (x, y) = (&self.nodes[u], &self.nodes[v]);
        adjacent
            && ((x.is_rank_one_uniform() && y.is_rank_one_uniform())
                || (x.is_corank_one_uniform() && y.is_corank_one_uniform()))
    }

    /// Contract the tree edge `marker`, replacing its ends by their 2-sum.
    pub fn contract_edge(&self, marker: &str) -> Result<LabelledTree> {
        let e = self.edge_by_marker(marker).ok_or_else(|| Error::Label(format!("`{marker}` is not a tree edge")))?;
        let (a, b) = (e.a.min(e.b), e.a.max(e.b));
        let merged = two_sum(&self.nodes[a], &self.nodes[b], marker)?;
        let mut nodes = Vec::with_capacity(self.nodes.len() - 1);
        for (v, m) in self.nodes.iter().enumerate() {
            if v == a {
                nodes.push(merged.clone());
            } else if v != b {
                nodes.push(m.clone());
            }
        }
        LabelledTree::new(nodes)
    }

    /// Merge bad pairs until none remain.
    pub fn merge_bad_pairs(&self) -> Result<LabelledTree> {
        let mut t = self.clone();
        while let Some(e) = t.edges.iter().find(|e| t.is_bad_pair(e.a, e.b)).cloned() {
            t = t.contract_edge(&e.marker)?;
        }
        Ok(t)
    }

    /// Replace the path `path[0] .. path[k]` (internal nodes of degree 2) by a
    /// single edge labelled with the first marker, then merge a bad end pair.
    pub fn path_contract(&self, path: &[usize]) -> Result<LabelledTree> {
        if path.len() < 3 {
            return Err(Error::Argument("path needs length at least 2".into()));
        }
        let marker_between = |x: usize, y: usize| {
            self.edges
                .iter()
                .find(|e| (e.a, e.b) == (x, y) || (e.a, e.b) == (y, x))
                .map(|e| e.marker.clone())
                .ok_or_else(|| Error::Argument(format!("nodes {x} and {y} are not adjacent")))
        };
        for w in path.windows(2) {
            marker_between(w[0], w[1])?;
        }
        for &x in &path[1..path.len() - 1] {
            if self.degree(x) != 2 {
                return Err(Error::Argument(format!("internal node {x} does not have degree 2")));
            }
        }
        let (u, v) = (path[0], path[path.len() - 1]);
        let eu = marker_between(u, path[1])?;
        let ev = marker_between(path[path.len() - 2], v)?;
        let internal: HashSet<usize> = path[1..path.len() - 1].iter().copied().collect();
        let mut nodes = Vec::new();
        let mut new_u = 0;
        let mut new_v = 0;
        for (x, m) in self.nodes.iter().enumerate() {
            if internal.contains(&x) {
                continue;
            }
            if x == u {
                new_u = nodes.len();
            }
            if x == v {
                new_v = nodes.len();
                nodes.push(m.rename(&ev, &eu)?);
            } else {
                nodes.push(m.clone());
            }
        }
        let t = LabelledTree::new(nodes)?;
        if t.is_bad_pair(new_u, new_v) {
            t.contract_edge(&eu)
        } else {
            Ok(t)
        }
    }

    /// Violations of the canonical-form conditions (empty when canonical).
    pub fn canonical_violations(&self) -> Result<Vec<String>> {
        let mut out = Vec::new();
        let single_small = self.nodes.len() == 1 && self.nodes[0].len() < 3;
        for (v, m) in self.nodes.iter().enumerate() {
            if single_small {
                break;
            }
            let uniform = m.len() >= 3 && (m.is_rank_one_uniform() || m.is_corank_one_uniform());
            if !uniform && !m.is_3_connected()? {
                out.push(format!("node {v} is neither 3-connected nor U(1,n)/U(n-1,n)"));
            }
            if m.len() < 3 {
                out.push(format!("node {v} has fewer than 3 elements"));
            }
        }
        for e in &self.edges {
            if self.is_bad_pair(e.a, e.b) {
                out.push(format!("bad pair {{{}, {}}}", e.a, e.b));
            }
        }
        Ok(out)
    }

    pub fn is_canonical(&self) -> Result<bool> {
        Ok(self.canonical_violations()?.is_empty())
    }

    /// Indented text rendering.
    pub fn render(&self) -> String {
        let mut s = String::new();
        for (v, m) in self.nodes.iter().enumerate() {
            let kind = if m.is_rank_one_uniform() && m.len() >= 2 {
                format!("U(1,{})", m.len())
            } else if m.is_corank_one_uniform() && m.len() >= 2 {
                format!("U({},{})", m.len() - 1, m.len())
            } else {
                "3-connected".to_string()
            };
            s.push_str(&format!("node {v}: {kind}, rank {}, {} elements\n", m.rank(), m.len()));
            s.push_str(&format!("  elements: {}\n", m.labels().join(" ")));
        }
        for e in &self.edges {
            s.push_str(&format!("edge {} -- {} via {}\n", e.a, e.b, e.marker));
        }
        s
    }
}

/// Elimination with provenance: find a nonzero vector in `span(a) ∩ span(b)`.
fn span_meet(a: &[u64], b: &[u64]) -> Option<u64> {
    // Entries (vector, mask over b): vector = combination of a's plus b's in mask.
    let mut basis: Vec<(u64, u64)> = Vec::new();
    let reduce = |basis: &[(u64, u64)], mut v: u64, mut tag: u64| {
        for &(w, t) in basis {
            let lead = 63 - w.leading_zeros();
            if v >> lead & 1 == 1 {
                v ^= w;
                tag ^= t;
            }
        }
        (v, tag)
    };
    let push = |basis: &mut Vec<(u64, u64)>, v: u64, tag: u64| {
        basis.push((v, tag));
        basis.sort_by_key(|x| x.0.leading_zeros());
    };
    for &v in a {
        let (r, _) = reduce(&basis, v, 0);
        if r != 0 {
            push(&mut basis, r, 0);
        }
    }
    for (k, &v) in b.iter().enumerate() {
        let (r, tag) = reduce(&basis, v, 1u64 << k);
        if r == 0 {
            let w = bits::iter(tag).fold(0u64, |acc, i| acc ^ b[i]);
            if w != 0 {
                return Some(w);
            }
        } else {
            push(&mut basis, r, tag);
        }
    }
    None
}

fn split(m: &Matroid, out: &mut Vec<Matroid>) -> Result<()> {
    if m.len() < 4 || m.is_rank_one_uniform() || m.is_corank_one_uniform() {
        out.push(m.clone());
        return Ok(());
    }
    let Some(sep) = m.find_separation(1, 2)? else {
        out.push(m.clone());
        return Ok(());
    };
    let cols = m.columns().expect("binary");
    let ind = |s: Set| -> Vec<u64> {
        let mut b = crate::gf2::XorBasis::default();
        bits::iter(s).map(|i| cols[i]).filter(|&c| b.insert(c)).collect()
    };
    let v = span_meet(&ind(sep.side_x), &ind(sep.side_y))
        .ok_or_else(|| Error::Precondition("separation is not a 2-separation of a connected matroid".into()))?;
    let marker = fresh_marker(m.labels());
    for side in [sep.side_x, sep.side_y] {
        let mut labels = m.labels_of(side);
        labels.push(marker.clone());
        let mut c: Vec<u64> = bits::iter(side).map(|i| cols[i]).collect();
        c.push(v);
        split(&Matroid::from_columns(labels, &c)?, out)?;
    }
    Ok(())
}

/// The canonical tree decomposition of a connected binary matroid.
///
/// Splits along 2-separations (each part is one side plus a fresh `#k` marker
/// spanning the intersection of the two sides' spans), then merges bad pairs.
pub fn canonical_decomposition(m: &Matroid) -> Result<LabelledTree> {
    if !m.is_connected() {
        return Err(Error::Precondition("canonical decomposition needs a connected matroid".into()));
    }
    if m.len() < 3 {
        return Ok(LabelledTree::single(m.clone()));
    }
    let Some(b) = m.to_binary()? else {
        if m.is_3_connected()? {
            return Ok(LabelledTree::single(m.clone()));
        }
        return Err(Error::Precondition("canonical decomposition needs a binary matroid".into()));
    };
    let mut parts = Vec::new();
    split(&b, &mut parts)?;
    LabelledTree::new(parts)?.merge_bad_pairs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::matroid::is_isomorphic;

    fn triangle(labels: [&str; 3]) -> Matroid {
        Matroid::from_columns(labels.iter().map(|s| s.to_string()).collect(), &[1, 2, 3]).unwrap()
    }

    #[test]
    fn triangles_make_u34() {
        let s = two_sum(&triangle(["a", "b", "p"]), &triangle(["p", "c", "d"]), "p").unwrap();
        assert_eq!(s.labels(), &["a", "b", "c", "d"]);
        assert!(is_isomorphic(&s, &catalog::uniform(3, 4).unwrap()).unwrap());
        let f = two_sum_by_bases(&triangle(["a", "b", "p"]), &triangle(["p", "c", "d"]), "p").unwrap();
        let g = two_sum_by_circuits(&triangle(["a", "b", "p"]), &triangle(["p", "c", "d"]), "p").unwrap();
        assert_eq!(f.bases().unwrap(), s.bases().unwrap());
        assert_eq!(g.bases().unwrap(), s.bases().unwrap());
    }

    #[test]
    fn marker_checks() {
        let a = triangle(["a", "b", "p"]);
        assert!(two_sum(&a, &triangle(["a", "p", "q"]), "p").is_err());
        let coloop = Matroid::from_columns(vec!["p".into(), "z".into()], &[1, 2]).unwrap();
        assert!(two_sum(&a, &coloop, "p").is_err());
    }

    #[test]
    fn decompose_chain() {
        let t1 = triangle(["a", "b", "p"]);
        let t2 = triangle(["p", "c", "q"]);
        let k4 = catalog::k4().rename("12", "q").unwrap();
        let m = two_sum(&two_sum(&t1, &t2, "p").unwrap(), &k4, "q").unwrap();
        let t = canonical_decomposition(&m).unwrap();
        assert!(t.is_canonical().unwrap());
        assert_eq!(t.len(), 2);
        assert!(t.compose().unwrap().same_as(&m));
    }

    #[test]
    fn three_connected_single_node() {
        let t = canonical_decomposition(&catalog::r10()).unwrap();
        assert_eq!(t.len(), 1);
        let small = Matroid::from_columns(vec!["x".into(), "y".into()], &[1, 1]).unwrap();
        assert_eq!(canonical_decomposition(&small).unwrap().len(), 1);
    }

    #[test]
    fn meet_of_spans() {
        assert_eq!(span_meet(&[0b01, 0b10], &[0b11, 0b100]), Some(0b11));
        assert_eq!(span_meet(&[0b01], &[0b10]), None);
    }
}
