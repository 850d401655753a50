//! Multigraphs with loops and parallel edges.

use crate::bits::{self, Set};
use crate::caps;
use crate::error::{Error, Result};
use crate::matroid::Matroid;
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, VecDeque};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub label: String,
    pub u: usize,
    pub v: usize,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    pub fn other(&self, x: usize) -> usize {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiGraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
}

impl MultiGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Build from vertex labels and `(edge, end, end)` triples.
    pub fn from_parts<S: AsRef<str>>(vertices: &[S], edges: &[(S, S, S)]) -> Result<Self> {
        let mut g = MultiGraph::new();
        for v in vertices {
            g.add_vertex(v.as_ref())?;
        }
        for (e, a, b) in edges {
            g.add_edge(e.as_ref(), a.as_ref(), b.as_ref())?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, label: &str) -> Result<usize> {
        if self.vertices.iter().any(|v| v == label) {
            return Err(Error::Label(format!("duplicate vertex `{label}`")));
        }
        self.vertices.push(label.to_string());
        Ok(self.vertices.len() - 1)
    }

    /// Add the vertex unless it already exists.
    pub fn ensure_vertex(&mut self, label: &str) -> usize {
        match self.vertex_index(label) {
            Some(i) => i,
            None => {
                self.vertices.push(label.to_string());
                self.vertices.len() - 1
            }
        }
    }

    pub fn add_edge(&mut self, label: &str, a: &str, b: &str) -> Result<usize> {
        if self.edges.iter().any(|e| e.label == label) {
            return Err(Error::Label(format!("duplicate edge `{label}`")));
        }
        let u = self.vertex_index(a).ok_or_else(|| Error::Label(format!("unknown vertex `{a}`")))?;
        let v = self.vertex_index(b).ok_or_else(|| Error::Label(format!("unknown vertex `{b}`")))?;
        self.edges.push(Edge { label: label.to_string(), u, v });
        Ok(self.edges.len() - 1)
    }

    pub fn add_edge_idx(&mut self, label: &str, u: usize, v: usize) -> Result<usize> {
        if self.edges.iter().any(|e| e.label == label) {
            return Err(Error::Label(format!("duplicate edge `{label}`")));
        }
        self.edges.push(Edge { label: label.to_string(), u, v });
        Ok(self.edges.len() - 1)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn edge_index(&self, label: &str) -> Result<usize> {
        self.edges
            .iter()
            .position(|e| e.label == label)
            .ok_or_else(|| Error::Label(format!("unknown edge `{label}`")))
    }

    pub fn edge_labels(&self) -> Vec<String> {
        self.edges.iter().map(|e| e.label.clone()).collect()
    }

    /// No loops and no parallel edges.
    pub fn is_simple(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.edges.iter().all(|e| !e.is_loop() && seen.insert((e.u.min(e.v), e.u.max(e.v))))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().map(|e| (e.u == v) as usize + (e.v == v) as usize).sum()
    }

    /// Distinct neighbours of `v` (excluding `v` itself).
    pub fn neighbours(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter(|e| !e.is_loop() && (e.u == v || e.v == v))
            .map(|e| e.other(v))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Connected components of the subgraph on `alive` vertices, using edges in `emask`.
    pub fn components_within(&self, alive: &[bool], emask: &[bool]) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut comp = vec![usize::MAX; n];
        let mut adj = vec![Vec::new(); n];
        for (i, e) in self.edges.iter().enumerate() {
            if emask[i] && alive[e.u] && alive[e.v] {
                adj[e.u].push(e.v);
                adj[e.v].push(e.u);
            }
        }
        let mut out = Vec::new();
        for s in 0..n {
            if !alive[s] || comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut q = VecDeque::from([s]);
            while let Some(x) = q.pop_front() {
                for &y in &adj[x] {
                    if comp[y] == usize::MAX {
                        comp[y] = id;
                        members.push(y);
                        q.push_back(y);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_within(&vec![true; self.vertex_count()], &vec![true; self.edge_count()])
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Cycle matroid, represented by the vertex-edge incidence matrix over GF(2).
    pub fn cycle_matroid(&self) -> Result<Matroid> {
        caps::check("graph vertices", bits::MAX_ELEMENTS, self.vertex_count())?;
        let cols: Vec<u64> = self
            .edges
            .iter()
            .map(|e| if e.is_loop() { 0 } else { bits::singleton(e.u) | bits::singleton(e.v) })
            .collect();
        Matroid::from_columns(self.edge_labels(), &cols)
    }

    /// The dual of the cycle matroid.
    pub fn bond_matroid(&self) -> Result<Matroid> {
        Ok(self.cycle_matroid()?.dual())
    }

    pub fn delete_edge(&self, label: &str) -> Result<MultiGraph> {
        let i = self.edge_index(label)?;
        let mut g = self.clone();
        g.edges.remove(i);
        Ok(g)
    }

    pub fn delete_edges(&self, labels: &[String]) -> Result<MultiGraph> {
        let mut g = self.clone();
        for l in labels {
            g = g.delete_edge(l)?;
        }
        Ok(g)
    }

    /// Delete a vertex and every edge meeting it.
    pub fn delete_vertex(&self, label: &str) -> Result<MultiGraph> {
        let v = self.vertex_index(label).ok_or_else(|| Error::Label(format!("unknown vertex `{label}`")))?;
        let mut g = MultiGraph::new();
        for (i, l) in self.vertices.iter().enumerate() {
            if i != v {
                g.vertices.push(l.clone());
            }
        }
        let shift = |x: usize| if x > v { x - 1 } else { x };
        for e in &self.edges {
            if e.u != v && e.v != v {
                g.edges.push(Edge { label: e.label.clone(), u: shift(e.u), v: shift(e.v) });
            }
        }
        Ok(g)
    }

    /// Label used for the vertex created by identifying `a` and `b`.
    pub fn merged_label(&self, a: &str, b: &str) -> String {
        let mut l = format!("{a}+{b}");
        while self.vertex_index(&l).is_some() {
            l.push('\'');
        }
        l
    }

    /// Contract an edge; a loop is simply deleted. Returns the new graph and the
    /// index of the merged vertex (for loops, of the loop's vertex).
    pub fn contract_edge_with_vertex(&self, label: &str) -> Result<(MultiGraph, usize)> {
        let i = self.edge_index(label)?;
        let e = self.edges[i].clone();
        if e.is_loop() {
            let g = self.delete_edge(label)?;
            return Ok((g, e.u));
        }
        let (keep, gone) = (e.u.min(e.v), e.u.max(e.v));
        let merged = self.merged_label(&self.vertices[e.u], &self.vertices[e.v]);
        let mut g = MultiGraph::new();
        for (j, l) in self.vertices.iter().enumerate() {
            if j == keep {
                g.vertices.push(merged.clone());
            } else if j != gone {
                g.vertices.push(l.clone());
            }
        }
        let map = |x: usize| {
            let x = if x == gone { keep } else { x };
            if x > gone {
                x - 1
            } else {
                x
            }
        };
        for (j, f) in self.edges.iter().enumerate() {
            if j != i {
                g.edges.push(Edge { label: f.label.clone(), u: map(f.u), v: map(f.v) });
            }
        }
        Ok((g, keep))
    }

    pub fn contract_edge(&self, label: &str) -> Result<MultiGraph> {
        Ok(self.contract_edge_with_vertex(label)?.0)
    }

    /// Remove vertices without incident edges.
    pub fn without_isolated(&self) -> MultiGraph {
        let mut used = vec![false; self.vertex_count()];
        for e in &self.edges {
            used[e.u] = true;
            used[e.v] = true;
        }
        self.induced_on(&used, true)
    }

    /// Subgraph on the flagged vertices; with `keep_edges`, every edge with both
    /// ends kept survives.
    pub fn induced_on(&self, keep: &[bool], keep_edges: bool) -> MultiGraph {
        let mut idx = vec![usize::MAX; self.vertex_count()];
        let mut g = MultiGraph::new();
        for (i, l) in self.vertices.iter().enumerate() {
            if keep[i] {
                idx[i] = g.vertices.len();
                g.vertices.push(l.clone());
            }
        }
        if keep_edges {
            for e in &self.edges {
                if keep[e.u] && keep[e.v] {
                    g.edges.push(Edge { label: e.label.clone(), u: idx[e.u], v: idx[e.v] });
                }
            }
        }
        g
    }

    /// Rename edges; missing labels are kept.
    pub fn relabel_edges(&self, map: &HashMap<String, String>) -> MultiGraph {
        let mut g = self.clone();
        for e in &mut g.edges {
            if let Some(n) = map.get(&e.label) {
                e.label = n.clone();
            }
        }
        g
    }

    /// Disjoint union; vertex labels of `other` get `suffix` appended when they clash.
    pub fn disjoint_union(&self, other: &MultiGraph) -> Result<MultiGraph> {
        let mut g = self.clone();
        let mut idx = Vec::with_capacity(other.vertex_count());
        for l in &other.vertices {
            let mut name = l.clone();
            while g.vertex_index(&name).is_some() {
                name.push('\'');
            }
            idx.push(g.add_vertex(&name)?);
        }
        for e in &other.edges {
            g.add_edge_idx(&e.label, idx[e.u], idx[e.v])?;
        }
        Ok(g)
    }

    /// Graph 2-sum: identify the marker edge `f` of `self` with the edge of the
    /// same label in `other` (end to end, or crosswise with `flip`), then drop it.
    pub fn two_sum(&self, other: &MultiGraph, f: &str, flip: bool) -> Result<MultiGraph> {
        let i = self.edge_index(f)?;
        let j = other.edge_index(f)?;
        let (a, b) = (self.edges[i].u, self.edges[i].v);
        let (c, d) = (other.edges[j].u, other.edges[j].v);
        if a == b || c == d {
            return Err(Error::Argument(format!("marker `{f}` is a loop")));
        }
        let (c, d) = if flip { (d, c) } else { (c, d) };
        let mut g = self.delete_edge(f)?;
        let mut idx = vec![usize::MAX; other.vertex_count()];
        idx[c] = a;
        idx[d] = b;
        for (t, l) in other.vertices.iter().enumerate() {
            if t == c || t == d {
                continue;
            }
            let mut name = l.clone();
            while g.vertex_index(&name).is_some() {
                name.push('\'');
            }
            idx[t] = g.add_vertex(&name)?;
        }
        for (t, e) in other.edges.iter().enumerate() {
            if t != j {
                g.add_edge_idx(&e.label, idx[e.u], idx[e.v])?;
            }
        }
        Ok(g)
    }

    /// More than `k` vertices and no vertex cut of size below `k` (deletion scan).
    pub fn is_k_connected(&self, k: usize) -> bool {
        let n = self.vertex_count();
        if n <= k {
            return false;
        }
        let all_e = vec![true; self.edge_count()];
        for size in 0..k {
            for cut in bits::subsets_of_size(bits::full(n), size) {
                let alive: Vec<bool> = (0..n).map(|v| !bits::contains(cut, v)).collect();
                if self.components_within(&alive, &all_e).len() > 1 {
                    return false;
                }
            }
        }
        true
    }

    /// Three paths from `source` to three distinct members of `targets`, pairwise
    /// sharing only `source`. Vertex-capacitated max-flow with unit capacities.
    pub fn internally_disjoint_paths(&self, source: usize, targets: &[usize]) -> Option<[Vec<usize>; 3]> {
        let n = self.vertex_count();
        let is_target: Vec<bool> = (0..n).map(|v| v != source && targets.contains(&v)).collect();
        // Node v splits into v_in = 2v and v_out = 2v + 1; sink = 2n.
        let sink = 2 * n;
        let mut cap: HashMap<(usize, usize), i32> = HashMap::new();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); 2 * n + 1];
        let mut add = |cap: &mut HashMap<(usize, usize), i32>, a: usize, b: usize, c: i32| {
            *cap.entry((a, b)).or_insert(0) += c;
            cap.entry((b, a)).or_insert(0);
            adj[a].push(b);
            adj[b].push(a);
        };
        for v in 0..n {
            let c = if v == source { 3 } else { 1 };
            add(&mut cap, 2 * v, 2 * v + 1, c);
            if is_target[v] {
                add(&mut cap, 2 * v + 1, sink, 1);
            }
        }
        for e in &self.edges {
            if e.is_loop() {
                continue;
            }
            // Paths stop at their target: no flow leaves a target vertex.
            if !is_target[e.u] {
                add(&mut cap, 2 * e.u + 1, 2 * e.v, 1);
            }
            if !is_target[e.v] {
                add(&mut cap, 2 * e.v + 1, 2 * e.u, 1);
            }
        }
        for a in adj.iter_mut() {
            a.sort_unstable();
            a.dedup();
        }
        let src = 2 * source;
        let orig = cap.clone();
        let mut flow = 0;
        while flow < 3 {
            let mut prev = vec![usize::MAX; 2 * n + 1];
            prev[src] = src;
            let mut q = VecDeque::from([src]);
            while let Some(x) = q.pop_front() {
                for &y in &adj[x] {
                    if prev[y] == usize::MAX && cap[&(x, y)] > 0 {
                        prev[y] = x;
                        q.push_back(y);
                    }
                }
            }
            if prev[sink] == usize::MAX {
                return None;
            }
            let mut y = sink;
            while y != src {
                let x = prev[y];
                *cap.get_mut(&(x, y)).unwrap() -= 1;
                *cap.get_mut(&(y, x)).unwrap() += 1;
                y = x;
            }
            flow += 1;
        }
        // Decompose the flow into paths.
        let mut used: HashMap<(usize, usize), i32> = HashMap::new();
        let mut paths: Vec<Vec<usize>> = Vec::new();
        for _ in 0..3 {
            let mut path = vec![source];
            let mut x = 2 * source + 1;
            loop {
                let next = adj[x]
                    .iter()
                    .copied()
                    .find(|&y| {
                        let f = orig[&(x, y)] - cap[&(x, y)] - used.get(&(x, y)).copied().unwrap_or(0);
                        f > 0
                    })
                    .expect("flow conservation");
                *used.entry((x, next)).or_insert(0) += 1;
                if next == sink {
                    break;
                }
                path.push(next / 2);
                x = next + 1;
            }
            paths.push(path);
        }
        Some([paths[0].clone(), paths[1].clone(), paths[2].clone()])
    }

    /// Branch sets exhibiting `h` (treated as simple) as a minor of `self`.
    /// `result[i]` is the vertex set of `self` contracted onto vertex `i` of `h`.
    pub fn graph_minor_search(&self, h: &MultiGraph) -> Result<Option<Vec<Set>>> {
        caps::check("graph minor search", 10, self.vertex_count())?;
        let hn = h.vertex_count();
        let mut hedges: Vec<(usize, usize)> =
            h.edges.iter().filter(|e| !e.is_loop()).map(|e| (e.u.min(e.v), e.u.max(e.v))).collect();
        hedges.sort_unstable();
        hedges.dedup();
        let n = self.vertex_count();
        let mut assign = vec![hn; n];
        let mut found = None;
        self.minor_rec(0, hn, &hedges, &mut assign, &mut found);
        Ok(found)
    }

    fn minor_rec(&self, v: usize, hn: usize, hedges: &[(usize, usize)], assign: &mut Vec<usize>, found: &mut Option<Vec<Set>>) {
        if found.is_some() {
            return;
        }
        let n = self.vertex_count();
        if v == n {
            let mut branch = vec![0u64; hn];
            for (x, &a) in assign.iter().enumerate() {
                if a < hn {
                    branch[a] |= bits::singleton(x);
                }
            }
            if branch.iter().any(|b| *b == 0) {
                return;
            }
            for b in &branch {
                let alive: Vec<bool> = (0..n).map(|x| bits::contains(*b, x)).collect();
                if self.components_within(&alive, &vec![true; self.edge_count()]).len() != 1 {
                    return;
                }
            }
            for &(a, b) in hedges {
                let ok = self.edges.iter().any(|e| {
                    let (p, q) = (assign[e.u], assign[e.v]);
                    (p == a && q == b) || (p == b && q == a)
                });
                if !ok {
                    return;
                }
            }
            *found = Some(branch);
            return;
        }
        // Symmetry break: a vertex may open branch set `i` only if `i - 1` is open.
        let opened = assign[..v].iter().filter(|&&a| a < hn).max().map_or(0, |m| m + 1);
        for a in (0..=opened.min(hn - 1)).chain(std::iter::once(hn)) {
            assign[v] = a;
            self.minor_rec(v + 1, hn, hedges, assign, found);
        }
        assign[v] = hn;
    }

    /// Recognise a wheel: returns the hub and the rim vertices in cyclic order.
    pub fn as_wheel(&self) -> Option<(usize, Vec<usize>)> {
        let n = self.vertex_count();
        if n < 4 || self.edge_count() != 2 * (n - 1) || !self.is_simple() {
            return None;
        }
        for s in 0..n {
            if self.degree(s) != n - 1 {
                continue;
            }
            let rim: Vec<usize> = (0..n).filter(|&v| v != s).collect();
            if rim.iter().any(|&v| self.degree(v) != 3) {
                continue;
            }
            // Walk the rim cycle.
            let rim_nb = |v: usize| -> Vec<usize> { self.neighbours(v).into_iter().filter(|&w| w != s).collect() };
            let mut order = vec![rim[0]];
            let mut prev = usize::MAX;
            let mut cur = rim[0];
            loop {
                let nb = rim_nb(cur);
                if nb.len() != 2 {
                    break;
                }
                let next = if nb[0] != prev { nb[0] } else { nb[1] };
                if next == rim[0] {
                    break;
                }
                prev = cur;
                cur = next;
                order.push(cur);
                if order.len() > rim.len() {
                    break;
                }
            }
            if order.len() == rim.len() {
                return Some((s, order));
            }
        }
        None
    }
}

/// `K_n` on vertices `1..n`, edges labelled by their end pair (e.g. `"12"`).
pub fn complete(n: usize) -> MultiGraph {
    let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let mut g = MultiGraph::new();
    for v in &names {
        g.ensure_vertex(v);
    }
    for i in 0..n {
        for j in i + 1..n {
            let label = if n < 10 { format!("{}{}", i + 1, j + 1) } else { format!("{}-{}", i + 1, j + 1) };
            g.add_edge_idx(&label, i, j).unwrap();
        }
    }
    g
}

/// `K_{a,b}` with parts `a1..` and `b1..`; edge `a{i}b{j}`.
pub fn complete_bipartite(a: usize, b: usize) -> MultiGraph {
    let mut g = MultiGraph::new();
    for i in 1..=a {
        g.ensure_vertex(&format!("a{i}"));
    }
    for j in 1..=b {
        g.ensure_vertex(&format!("b{j}"));
    }
    for i in 0..a {
        for j in 0..b {
            g.add_edge_idx(&format!("a{}b{}", i + 1, j + 1), i, a + j).unwrap();
        }
    }
    g
}

/// `K_{3,3}` plus the edge `a1a2` (simple).
pub fn k33_prime() -> MultiGraph {
    let mut g = complete_bipartite(3, 3);
    g.add_edge("a1a2", "a1", "a2").unwrap();
    g
}

/// Cycle on `n >= 1` vertices `v1..vn`, edges `c1..cn` with `ci = v_i v_{i+1}`.
pub fn cycle(n: usize) -> MultiGraph {
    let mut g = MultiGraph::new();
    for i in 1..=n {
        g.ensure_vertex(&format!("v{i}"));
    }
    for i in 0..n {
        g.add_edge_idx(&format!("c{}", i + 1), i, (i + 1) % n).unwrap();
    }
    g
}

/// Path on `n >= 1` vertices `v1..vn`, edges `p1..p{n-1}`.
pub fn path(n: usize) -> MultiGraph {
    let mut g = MultiGraph::new();
    for i in 1..=n {
        g.ensure_vertex(&format!("v{i}"));
    }
    for i in 0..n.saturating_sub(1) {
        g.add_edge_idx(&format!("p{}", i + 1), i, i + 1).unwrap();
    }
    g
}

/// The wheel on hub `s` and rim `t1..tk` including the multigraph case `k = 2`:
/// `e_{2i-1} = t_i t_{i+1}` (rim) and `e_{2i} = s t_{i+1}` (spoke), `t_{k+1} = t_1`.
pub(crate) fn wheel_any(k: usize) -> MultiGraph {
    let mut g = MultiGraph::new();
    g.ensure_vertex("s");
    for i in 1..=k {
        g.ensure_vertex(&format!("t{i}"));
    }
    let t = |i: usize| 1 + (i - 1) % k;
    for i in 1..=k {
        g.add_edge_idx(&format!("e{}", 2 * i - 1), t(i), t(i + 1)).unwrap();
        g.add_edge_idx(&format!("e{}", 2 * i), 0, t(i + 1)).unwrap();
    }
    g
}

/// The wheel `W_k`, `k >= 3`, with edges `e1..e{2k}` (odd: rim, even: spoke).
pub fn wheel(k: usize) -> Result<MultiGraph> {
    if k < 3 {
        return Err(Error::Argument(format!("wheel needs k >= 3, got {k}")));
    }
    Ok(wheel_any(k))
}

/// `Π_k` for `k >= 2`: `W_{⌊k/2⌋+1} / e_{k+1}` for odd `k`, and
/// `W_{⌊k/2⌋+1} \ e_{k+1} / e_{k+2}` for even `k`. Edges `e1..ek` survive.
pub fn pi(k: usize) -> Result<MultiGraph> {
    if k < 2 {
        return Err(Error::Argument(format!("Π_k needs k >= 2, got {k}")));
    }
    let w = wheel_any(k / 2 + 1);
    if k % 2 == 1 {
        w.contract_edge(&format!("e{}", k + 1))
    } else {
        w.delete_edge(&format!("e{}", k + 1))?.contract_edge(&format!("e{}", k + 2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cycle_matroids() {
        let k3 = complete(3).cycle_matroid().unwrap();
        assert_eq!((k3.rank(), k3.len()), (2, 3));
        assert!(k3.is_corank_one_uniform());
        let c4 = cycle(4).cycle_matroid().unwrap();
        assert_eq!((c4.rank(), c4.len()), (3, 4));
        assert_eq!(wheel(3).unwrap().cycle_matroid().unwrap().bases().unwrap().len(), 16);
    }

    #[test]
    fn contraction() {
        let g = complete(3).contract_edge("12").unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 2);
        assert!(!g.is_simple());
        assert_eq!(g.vertices()[0], "1+2");
    }

    #[test]
    fn pi_small() {
        let p2 = pi(2).unwrap().cycle_matroid().unwrap();
        assert!(p2.is_rank_one_uniform() && p2.len() == 2);
        let p3 = pi(3).unwrap().cycle_matroid().unwrap();
        assert!(p3.is_rank_one_uniform() && p3.len() == 3);
        assert_eq!(pi(5).unwrap().edge_labels(), vec!["e1", "e2", "e3", "e4", "e5"]);
    }

    #[test]
    fn connectivity_and_paths() {
        assert!(complete(4).is_k_connected(3));
        assert!(!path(4).is_k_connected(2));
        let w = wheel(4).unwrap();
        let s = w.vertex_index("s").unwrap();
        let t: Vec<usize> = ["t1", "t2", "t3"].iter().map(|l| w.vertex_index(l).unwrap()).collect();
        let p = w.internally_disjoint_paths(s, &t).unwrap();
        for path in &p {
            assert_eq!(path.len(), 2);
        }
    }

    #[test]
    fn minors() {
        assert!(complete(5).graph_minor_search(&complete(4)).unwrap().is_some());
        assert!(k33_prime().graph_minor_search(&complete_bipartite(3, 3)).unwrap().is_some());
        assert!(complete_bipartite(3, 3).graph_minor_search(&complete(5)).unwrap().is_none());
    }

    #[test]
    fn wheel_shape() {
        let (s, rim) = wheel(5).unwrap().as_wheel().unwrap();
        assert_eq!(s, 0);
        assert_eq!(rim.len(), 5);
        assert!(complete_bipartite(3, 3).as_wheel().is_none());
    }
}
