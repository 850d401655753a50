//! Grafts `(G, T)`: T-spanning forests, graft minors, connectedness,
//! `Δ1`/`Δ2`/`Δ3` minors and cyclic decompositions.
//!
//! Isolated vertices never change the feasible family, so they are dropped on
//! construction (together with their terminal status).

use crate::bits::{self, Set};
use crate::caps;
use crate::delta::SetSystem;
use crate::error::{Error, Result};
use crate::graph::MultiGraph;
use crate::matroid::Matroid;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graft {
    graph: MultiGraph,
    /// Terminal vertices, as a bitset over vertex indices of `graph`.
    terminals: Set,
}

/// A single graft minor operation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GraftMove {
    Delete(String),
    Contract(String),
}

impl Graft {
    pub fn new<S: AsRef<str>>(graph: MultiGraph, terminals: &[S]) -> Result<Graft> {
        caps::check("graft vertices", bits::MAX_ELEMENTS, graph.vertex_count())?;
        let mut t = 0;
        for l in terminals {
            let v = graph
                .vertex_index(l.as_ref())
                .ok_or_else(|| Error::Label(format!("unknown terminal `{}`", l.as_ref())))?;
            t |= bits::singleton(v);
        }
        Ok(Graft::pruned(graph, t))
    }

    /// Build from vertex labels, `(edge, end, end)` triples and terminal labels.
    pub fn from_parts<S: AsRef<str>>(vertices: &[S], edges: &[(S, S, S)], terminals: &[S]) -> Result<Graft> {
        Graft::new(MultiGraph::from_parts(vertices, edges)?, terminals)
    }

    fn pruned(graph: MultiGraph, terminals: Set) -> Graft {
        let mut used = vec![false; graph.vertex_count()];
        for e in graph.edges() {
            used[e.u] = true;
            used[e.v] = true;
        }
        let mut t = 0;
        let mut next = 0;
        for (v, &u) in used.iter().enumerate() {
            if u {
                if bits::contains(terminals, v) {
                    t |= bits::singleton(next);
                }
                next += 1;
            }
        }
        Graft { graph: graph.induced_on(&used, true), terminals: t }
    }

    pub fn graph(&self) -> &MultiGraph {
        &self.graph
    }

    pub fn terminals(&self) -> Set {
        self.terminals
    }

    pub fn terminal_labels(&self) -> Vec<String> {
        bits::iter(self.terminals).map(|v| self.graph.vertices()[v].clone()).collect()
    }

    pub fn is_terminal(&self, v: usize) -> bool {
        bits::contains(self.terminals, v)
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn edge_labels(&self) -> Vec<String> {
        self.graph.edge_labels()
    }

    /// Edge sets (bitsets over edge indices) of all T-spanning forests.
    pub fn feasible_sets(&self) -> Result<Vec<Set>> {
        let m = self.edge_count();
        caps::check("graft edges", caps::get().graft_edges, m)?;
        let n = self.graph.vertex_count();
        let comps = self.graph.components();
        let mut comp_size = vec![0usize; n];
        for c in &comps {
            for &v in c {
                comp_size[v] = c.len();
            }
        }
        let ends: Vec<(usize, usize)> = self.graph.edges().iter().map(|e| (e.u, e.v)).collect();
        let mut out = Vec::new();
        let mut label: Vec<usize> = (0..n).collect();
        self.extend(0, 0, &ends, &mut label, &comp_size, &mut out);
        out.sort_unstable();
        Ok(out)
    }

    // Forest extension: decide edges in order, only ever adding edges that join
    // two different trees.
    fn extend(
        &self,
        i: usize,
        chosen: Set,
        ends: &[(usize, usize)],
        label: &mut Vec<usize>,
        comp_size: &[usize],
        out: &mut Vec<Set>,
    ) {
        if i == ends.len() {
            if self.is_t_spanning(label, comp_size) {
                out.push(chosen);
            }
            return;
        }
        self.extend(i + 1, chosen, ends, label, comp_size, out);
        let (u, v) = ends[i];
        let (a, b) = (label[u], label[v]);
        if a != b {
            let saved = label.clone();
            for l in label.iter_mut() {
                if *l == b {
                    *l = a;
                }
            }
            self.extend(i + 1, chosen | bits::singleton(i), ends, label, comp_size, out);
            *label = saved;
        }
    }

    fn is_t_spanning(&self, label: &[usize], comp_size: &[usize]) -> bool {
        let n = label.len();
        let mut size = vec![0usize; n];
        let mut tcount = vec![0usize; n];
        for v in 0..n {
            size[label[v]] += 1;
            tcount[label[v]] += self.is_terminal(v) as usize;
        }
        (0..n).all(|v| label[v] != v || tcount[v] % 2 == 1 || (tcount[v] == 0 && size[v] == comp_size[v]))
    }

    /// The graphic delta-matroid `G(G, T)`.
    pub fn delta_matroid(&self) -> Result<SetSystem> {
        SetSystem::new(self.edge_labels(), self.feasible_sets()?)
    }

    /// Number of components without terminals.
    pub fn kappa(&self) -> usize {
        kappa_of(&self.graph, self.terminals)
    }

    pub fn is_t_bridge(&self, e: &str) -> Result<bool> {
        let h = self.graph.delete_edge(e)?;
        Ok(kappa_of(&h, self.terminals) > self.kappa())
    }

    /// `e = uv` with `V(C) ∩ T = {u, v}` for the component `C` containing `e`.
    pub fn is_t_tunnel(&self, e: &str) -> Result<bool> {
        let edge = &self.graph.edges()[self.graph.edge_index(e)?];
        let comp = self.graph.components().into_iter().find(|c| c.contains(&edge.u)).unwrap_or_default();
        let tin = comp.iter().fold(0, |s, &v| if self.is_terminal(v) { s | bits::singleton(v) } else { s });
        Ok(tin == bits::singleton(edge.u) | bits::singleton(edge.v))
    }

    pub fn delete(&self, e: &str) -> Result<Graft> {
        Ok(Graft::pruned(self.graph.delete_edge(e)?, self.terminals))
    }

    pub fn contract(&self, e: &str) -> Result<Graft> {
        Ok(self.contract_tracked(e)?.0)
    }

    /// Contract `e`, also returning the label of the merged vertex (absent for
    /// loops, or when the merged vertex ends up isolated and is dropped).
    pub fn contract_tracked(&self, e: &str) -> Result<(Graft, Option<String>)> {
        let edge = self.graph.edges()[self.graph.edge_index(e)?].clone();
        if edge.is_loop() {
            return Ok((self.delete(e)?, None));
        }
        let (h, keep) = self.graph.contract_edge_with_vertex(e)?;
        let gone = edge.u.max(edge.v);
        let mut t = 0;
        for v in bits::iter(self.terminals) {
            if v != edge.u && v != edge.v {
                t |= bits::singleton(if v > gone { v - 1 } else { v });
            }
        }
        if self.is_terminal(edge.u) != self.is_terminal(edge.v) {
            t |= bits::singleton(keep);
        }
        let merged = h.vertices()[keep].clone();
        let g = Graft::pruned(h, t);
        let merged = g.graph.vertex_index(&merged).map(|_| merged);
        Ok((g, merged))
    }

    pub fn apply(&self, mv: &GraftMove) -> Result<Graft> {
        match mv {
            GraftMove::Delete(e) => self.delete(e),
            GraftMove::Contract(e) => self.contract(e),
        }
    }

    /// `(G, T) / contract \ delete`.
    pub fn minor<S: AsRef<str>>(&self, delete: &[S], contract: &[S]) -> Result<Graft> {
        let mut g = self.clone();
        for e in contract {
            g = g.contract(e.as_ref())?;
        }
        for e in delete {
            g = g.delete(e.as_ref())?;
        }
        Ok(g)
    }

    /// The graft obtained by identifying all terminals; needs `|T| <= 2`.
    /// Its cycle matroid has the feasible sets of `(G, T)` as bases.
    pub fn collapse_small_t(&self) -> Result<Matroid> {
        let ts: Vec<usize> = bits::iter(self.terminals).collect();
        if ts.len() > 2 {
            return Err(Error::Precondition(format!("collapsing needs |T| <= 2, got {}", ts.len())));
        }
        let map = |v: usize| if ts.len() == 2 && v == ts[1] { ts[0] } else { v };
        let cols: Vec<u64> = self
            .graph
            .edges()
            .iter()
            .map(|e| bits::singleton(map(e.u)) ^ bits::singleton(map(e.v)))
            .collect();
        Matroid::from_columns(self.edge_labels(), &cols)
    }

    /// Connectedness of `G(G, T)` read off the graph: connected, loopless, no
    /// T-separation and no T-cutvertex.
    pub fn connectivity(&self) -> Result<GraftConnectivity> {
        if self.edge_count() < 2 {
            return Err(Error::Precondition("graft connectivity needs at least two edges".into()));
        }
        let comps = self.graph.components();
        if comps.len() > 1 {
            let part = self.edges_touching(&comps[0]);
            return Ok(GraftConnectivity::Disconnected { part });
        }
        if let Some(e) = self.graph.edges().iter().find(|e| e.is_loop()) {
            return Ok(GraftConnectivity::Loop(e.label.clone()));
        }
        if let Some((first, second)) = self.t_separation() {
            return Ok(GraftConnectivity::TSeparation { first, second });
        }
        let k = self.kappa();
        for v in 0..self.graph.vertex_count() {
            let h = self.graph.delete_vertex(&self.graph.vertices()[v])?;
            let t = bits::iter(self.terminals & !bits::singleton(v))
                .fold(0, |s, x| s | bits::singleton(if x > v { x - 1 } else { x }));
            if kappa_of(&h, t) > k {
                return Ok(GraftConnectivity::TCutvertex(self.graph.vertices()[v].clone()));
            }
        }
        Ok(GraftConnectivity::Connected)
    }

    pub fn is_connected_graft(&self) -> Result<bool> {
        Ok(self.connectivity()? == GraftConnectivity::Connected)
    }

    fn edges_touching(&self, vs: &[usize]) -> Vec<String> {
        self.graph.edges().iter().filter(|e| vs.contains(&e.u) || vs.contains(&e.v)).map(|e| e.label.clone()).collect()
    }

    // With T = {a, b}: the edge classes are the bridges of G - {a, b} together
    // with their attachments, and every single edge inside {a, b}.
    fn t_separation(&self) -> Option<(Vec<String>, Vec<String>)> {
        let ts: Vec<usize> = bits::iter(self.terminals).collect();
        if ts.len() != 2 {
            return None;
        }
        let n = self.graph.vertex_count();
        let alive: Vec<bool> = (0..n).map(|v| !ts.contains(&v)).collect();
        let mut classes: Vec<Vec<String>> = self
            .graph
            .components_within(&alive, &vec![true; self.edge_count()])
            .iter()
            .map(|c| self.edges_touching(c))
            .collect();
        for e in self.graph.edges() {
            if ts.contains(&e.u) && ts.contains(&e.v) {
                classes.push(vec![e.label.clone()]);
            }
        }
        if classes.len() < 2 {
            return None;
        }
        let first = classes.remove(0);
        Some((first, classes.concat()))
    }

    /// Which of `Δ1`, `Δ2`, `Δ3` this graft is isomorphic to, if any.
    pub fn classify_delta(&self) -> Option<DeltaGraft> {
        let g = &self.graph;
        if g.edge_count() != 3 || !g.is_simple() {
            return None;
        }
        let n = g.vertex_count();
        let all = bits::full(n);
        if n == 3 && (0..3).all(|v| g.degree(v) == 2) && self.terminals == all {
            return Some(DeltaGraft::Delta1);
        }
        if n == 4 {
            let centre = (0..4).find(|&v| g.degree(v) == 3)?;
            if self.terminals == all {
                return Some(DeltaGraft::Delta2);
            }
            if self.terminals == all & !bits::singleton(centre) {
                return Some(DeltaGraft::Delta3);
            }
        }
        None
    }

    /// A minor isomorphic to `Δ1`, `Δ2` or `Δ3`. Three internally disjoint
    /// paths from a vertex to terminals are tried first; otherwise every choice
    /// of three surviving edges and contraction set is scanned.
    pub fn find_delta_minor(&self) -> Result<Option<GraftMinorWitness>> {
        if let Some(w) = self.delta_minor_by_paths()? {
            return Ok(Some(w));
        }
        self.delta_minor_by_scan()
    }

    /// The path-based search alone (finds `Δ2`/`Δ3` only).
    pub fn delta_minor_by_paths(&self) -> Result<Option<GraftMinorWitness>> {
        let g = &self.graph;
        let terms: Vec<usize> = bits::iter(self.terminals).collect();
        for u in 0..g.vertex_count() {
            let targets: Vec<usize> = terms.iter().copied().filter(|&t| t != u).collect();
            if targets.len() < 3 {
                continue;
            }
            let Some(paths) = g.internally_disjoint_paths(u, &targets) else { continue };
            let mut keep = BTreeSet::new();
            let mut first = BTreeSet::new();
            for p in &paths {
                let stop = (1..p.len()).find(|&i| self.is_terminal(p[i])).unwrap_or(p.len() - 1);
                for i in 0..stop {
                    let l = self.edge_between(p[i], p[i + 1]).expect("path edge");
                    if i == 0 {
                        first.insert(l.clone());
                    }
                    keep.insert(l);
                }
            }
            let delete: Vec<String> = self.edge_labels().into_iter().filter(|l| !keep.contains(l)).collect();
            let contract: Vec<String> = keep.difference(&first).cloned().collect();
            let h = self.minor(&delete, &contract)?;
            if let Some(kind) = h.classify_delta() {
                return Ok(Some(GraftMinorWitness { kind, delete, contract }));
            }
        }
        Ok(None)
    }

    /// The exhaustive scan alone.
    pub fn delta_minor_by_scan(&self) -> Result<Option<GraftMinorWitness>> {
        let m = self.edge_count();
        caps::check("graft edges", caps::get().graft_edges, m)?;
        let n = self.graph.vertex_count();
        let ends: Vec<(usize, usize)> = self.graph.edges().iter().map(|e| (e.u, e.v)).collect();
        let proper = ends.iter().enumerate().filter(|(_, (u, v))| u != v).fold(0, |s, (i, _)| s | bits::singleton(i));
        for keep in bits::subsets_of_size(proper, 3) {
            let rest = bits::full(m) & !keep;
            for contract in bits::all_subsets(rest) {
                let mut label: Vec<usize> = (0..n).collect();
                for i in bits::iter(contract) {
                    let (a, b) = (label[ends[i].0], label[ends[i].1]);
                    if a != b {
                        for l in label.iter_mut() {
                            if *l == b {
                                *l = a;
                            }
                        }
                    }
                }
                if let Some(kind) = self.classify_classes(keep, &ends, &label) {
                    let names = |s: Set| bits::iter(s).map(|i| self.graph.edges()[i].label.clone()).collect();
                    return Ok(Some(GraftMinorWitness { kind, delete: names(rest & !contract), contract: names(contract) }));
                }
            }
        }
        Ok(None)
    }

    fn classify_classes(&self, keep: Set, ends: &[(usize, usize)], label: &[usize]) -> Option<DeltaGraft> {
        let mut pairs = Vec::with_capacity(3);
        for i in bits::iter(keep) {
            let (a, b) = (label[ends[i].0], label[ends[i].1]);
            if a == b {
                return None;
            }
            pairs.push((a.min(b), a.max(b)));
        }
        let mut vs: Vec<usize> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
        vs.sort_unstable();
        vs.dedup();
        let odd = |c: usize| (0..label.len()).filter(|&v| label[v] == c && self.is_terminal(v)).count() % 2 == 1;
        let deg = |c: usize| pairs.iter().filter(|&&(a, b)| a == c || b == c).count();
        let distinct = pairs[0] != pairs[1] && pairs[0] != pairs[2] && pairs[1] != pairs[2];
        if !distinct {
            return None;
        }
        match vs.len() {
            3 if vs.iter().all(|&c| odd(c)) => Some(DeltaGraft::Delta1),
            4 => {
                let centre = *vs.iter().find(|&&c| deg(c) == 3)?;
                if !vs.iter().all(|&c| c == centre || odd(c)) {
                    return None;
                }
                Some(if odd(centre) { DeltaGraft::Delta2 } else { DeltaGraft::Delta3 })
            }
            _ => None,
        }
    }

    fn edge_between(&self, u: usize, v: usize) -> Option<String> {
        self.graph
            .edges()
            .iter()
            .find(|e| (e.u == u && e.v == v) || (e.u == v && e.v == u))
            .map(|e| e.label.clone())
    }
}

fn kappa_of(g: &MultiGraph, terminals: Set) -> usize {
    g.components().iter().filter(|c| c.iter().all(|&v| !bits::contains(terminals, v))).count()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GraftConnectivity {
    Connected,
    /// Edges of one component of a disconnected graph.
    Disconnected { part: Vec<String> },
    Loop(String),
    TSeparation { first: Vec<String>, second: Vec<String> },
    TCutvertex(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DeltaGraft {
    Delta1,
    Delta2,
    Delta3,
}

impl DeltaGraft {
    pub fn name(self) -> &'static str {
        match self {
            DeltaGraft::Delta1 => "Delta1",
            DeltaGraft::Delta2 => "Delta2",
            DeltaGraft::Delta3 => "Delta3",
        }
    }

    /// `Δ1 = (K3, V)`, `Δ2 = (K13, V)`, `Δ3 = (K13, leaves)`; edges `1`, `2`, `3`.
    pub fn graft(self) -> Graft {
        let g = match self {
            DeltaGraft::Delta1 => Graft::from_parts(&["a", "b", "c"], &[("1", "a", "b"), ("2", "b", "c"), ("3", "a", "c")], &["a", "b", "c"]),
            DeltaGraft::Delta2 => Graft::from_parts(
                &["s", "u", "v", "w"],
                &[("1", "s", "u"), ("2", "s", "v"), ("3", "s", "w")],
                &["s", "u", "v", "w"],
            ),
            DeltaGraft::Delta3 => Graft::from_parts(
                &["s", "u", "v", "w"],
                &[("1", "s", "u"), ("2", "s", "v"), ("3", "s", "w")],
                &["u", "v", "w"],
            ),
        };
        g.expect("static graft")
    }
}

/// Deleting `delete` and contracting `contract` leaves a copy of `kind`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraftMinorWitness {
    pub kind: DeltaGraft,
    pub delete: Vec<String>,
    pub contract: Vec<String>,
}

impl GraftMinorWitness {
    pub fn verify(&self, g: &Graft) -> Result<bool> {
        Ok(g.minor(&self.delete, &self.contract)?.classify_delta() == Some(self.kind))
    }
}

/// A host graph `H` (bipartite, maximum degree 2) with a bag of graft
/// vertices for every host vertex; `bags[i]` belongs to host vertex `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicDecomposition {
    pub host: MultiGraph,
    pub bags: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub clause: String,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicReport {
    pub violations: Vec<Violation>,
}

impl CyclicReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, clause: &str, detail: String) {
        self.violations.push(Violation { clause: clause.into(), detail });
    }
}

impl CyclicDecomposition {
    pub fn new(host: MultiGraph, bags: Vec<Vec<String>>) -> Result<CyclicDecomposition> {
        if host.vertex_count() != bags.len() {
            return Err(Error::Argument(format!("{} host vertices but {} bags", host.vertex_count(), bags.len())));
        }
        Ok(CyclicDecomposition { host, bags })
    }

    /// A single bag holding every vertex, on a one-vertex host.
    pub fn single(g: &Graft) -> CyclicDecomposition {
        let mut host = MultiGraph::new();
        host.add_vertex("x1").expect("fresh host");
        CyclicDecomposition { host, bags: vec![g.graph.vertices().to_vec()] }
    }

    pub fn is_cycle_host(&self) -> bool {
        let h = &self.host;
        h.vertex_count() >= 2 && h.is_connected() && (0..h.vertex_count()).all(|v| h.degree(v) == 2)
    }

    pub fn is_path_host(&self) -> bool {
        let h = &self.host;
        h.vertex_count() >= 2 && h.is_connected() && h.edge_count() + 1 == h.vertex_count()
    }

    fn masks(&self, g: &Graft, report: &mut CyclicReport) -> Vec<Set> {
        self.bags
            .iter()
            .map(|bag| {
                bag.iter().fold(0, |s, l| match g.graph.vertex_index(l) {
                    Some(v) => s | bits::singleton(v),
                    None => {
                        report.push("labels", format!("unknown vertex `{l}`"));
                        s
                    }
                })
            })
            .collect()
    }

    /// Check (C1)–(C4) and, with `nice`, (N1)–(N2).
    pub fn validate(&self, g: &Graft, nice: bool) -> CyclicReport {
        let mut report = CyclicReport::default();
        let h = &self.host;
        if h.vertex_count() != self.bags.len() {
            report.push("host", "bag count differs from host vertex count".into());
            return report;
        }
        let p = h.vertex_count();
        if let Some(x) = (0..p).find(|&x| h.degree(x) > 2) {
            report.push("host", format!("vertex `{}` has degree above 2", h.vertices()[x]));
        }
        if !is_bipartite(h) {
            report.push("host", "not bipartite".into());
        }
        let masks = self.masks(g, &mut report);
        let all = masks.iter().fold(0, |s, m| s | m);
        if all != bits::full(g.graph.vertex_count()) {
            let missing = bits::full(g.graph.vertex_count()) & !all;
            report.push("C1", format!("uncovered vertices {:?}", g.vertex_labels(missing)));
        }
        for e in g.graph.edges() {
            let both = bits::singleton(e.u) | bits::singleton(e.v);
            if !masks.iter().any(|m| m & both == both) {
                report.push("C2", format!("edge `{}` lies in no bag", e.label));
            }
        }
        for x in 0..p {
            for y in x + 1..p {
                let meet = masks[x] & masks[y];
                let joins = h.edges().iter().filter(|e| (e.u == x && e.v == y) || (e.u == y && e.v == x)).count();
                if meet & !g.terminals != 0 || bits::len(meet) != joins {
                    report.push("C3", format!("bags `{}` and `{}`", h.vertices()[x], h.vertices()[y]));
                }
            }
        }
        for (x, m) in masks.iter().enumerate() {
            if bits::len(m & g.terminals) > 2 {
                report.push("C4", format!("bag `{}` holds more than two terminals", h.vertices()[x]));
            }
        }
        if nice {
            for (x, &m) in masks.iter().enumerate() {
                let keep: Vec<bool> = (0..g.graph.vertex_count()).map(|v| bits::contains(m, v)).collect();
                if !g.graph.induced_on(&keep, true).is_connected() {
                    report.push("N1", format!("bag `{}` is disconnected", h.vertices()[x]));
                }
                if bits::len(m & g.terminals) <= 1 && h.degree(x) > 0 {
                    report.push("N2", format!("bag `{}` has at most one terminal but is not isolated", h.vertices()[x]));
                }
            }
        }
        report
    }
}

impl Graft {
    fn vertex_labels(&self, s: Set) -> Vec<String> {
        bits::iter(s).map(|v| self.graph.vertices()[v].clone()).collect()
    }
}

fn is_bipartite(h: &MultiGraph) -> bool {
    let n = h.vertex_count();
    let mut colour = vec![usize::MAX; n];
    for s in 0..n {
        if colour[s] != usize::MAX {
            continue;
        }
        colour[s] = 0;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for e in h.edges() {
                if e.u != x && e.v != x {
                    continue;
                }
                let y = e.other(x);
                if colour[y] == usize::MAX {
                    colour[y] = 1 - colour[x];
                    stack.push(y);
                } else if colour[y] == colour[x] {
                    return false;
                }
            }
        }
    }
    true
}

pub fn validate_cyclic(g: &Graft, d: &CyclicDecomposition, nice: bool) -> CyclicReport {
    d.validate(g, nice)
}

/// A nice cyclic decomposition of a connected graft with `|T| >= 3`, over an
/// even cycle when some cycle meets three terminals and over a path otherwise.
/// Absent when the construction does not yield a valid decomposition, which
/// happens exactly when the graft has a `Δ1`, `Δ2` or `Δ3` minor.
pub fn build_cyclic(g: &Graft) -> Result<Option<CyclicDecomposition>> {
    if !g.graph.is_connected() || bits::len(g.terminals) < 3 {
        return Err(Error::Precondition("cyclic construction needs a connected graft with |T| >= 3".into()));
    }
    caps::check("graft edges", caps::get().graft_edges, g.edge_count())?;
    let adj: Vec<Vec<usize>> = (0..g.graph.vertex_count()).map(|v| g.graph.neighbours(v)).collect();
    let t = bits::len(g.terminals);
    let d = if let Some(cycle) = find_cycle(g, &adj) {
        // Rotate so the cycle starts at a terminal.
        let start = cycle.iter().position(|&v| g.is_terminal(v)).expect("terminal on cycle");
        let mut c: Vec<usize> = cycle[start..].iter().chain(&cycle[..start]).copied().collect();
        c.push(c[0]);
        let on = c[..c.len() - 1].iter().filter(|&&v| g.is_terminal(v)).count();
        if on != t || on % 2 == 1 {
            return Ok(None);
        }
        segments_decomposition(g, &c, true)
    } else {
        match find_terminal_path(g, &adj) {
            Some(p) => segments_decomposition(g, &p, false),
            None => None,
        }
    };
    Ok(d.filter(|d| d.validate(g, true).is_valid()))
}

// First simple cycle (length >= 3) through at least three terminals.
fn find_cycle(g: &Graft, adj: &[Vec<usize>]) -> Option<Vec<usize>> {
    fn dfs(g: &Graft, adj: &[Vec<usize>], s: usize, path: &mut Vec<usize>, on: &mut Set) -> bool {
        let x = *path.last().expect("nonempty path");
        for &y in &adj[x] {
            if y == s && path.len() >= 3 && path.iter().filter(|&&v| g.is_terminal(v)).count() >= 3 {
                return true;
            }
            if y > s && !bits::contains(*on, y) {
                path.push(y);
                *on |= bits::singleton(y);
                if dfs(g, adj, s, path, on) {
                    return true;
                }
                path.pop();
                *on &= !bits::singleton(y);
            }
        }
        false
    }
    for s in 0..adj.len() {
        let mut path = vec![s];
        let mut on = bits::singleton(s);
        if dfs(g, adj, s, &mut path, &mut on) {
            return Some(path);
        }
    }
    None
}

// A path with terminal ends containing every terminal.
fn find_terminal_path(g: &Graft, adj: &[Vec<usize>]) -> Option<Vec<usize>> {
    fn dfs(g: &Graft, adj: &[Vec<usize>], path: &mut Vec<usize>, on: &mut Set) -> bool {
        let x = *path.last().expect("nonempty path");
        if g.is_terminal(x) && g.terminals & !*on == 0 {
            return true;
        }
        for &y in &adj[x] {
            if !bits::contains(*on, y) {
                path.push(y);
                *on |= bits::singleton(y);
                if dfs(g, adj, path, on) {
                    return true;
                }
                path.pop();
                *on &= !bits::singleton(y);
            }
        }
        false
    }
    for s in bits::iter(g.terminals) {
        let mut path = vec![s];
        let mut on = bits::singleton(s);
        if dfs(g, adj, &mut path, &mut on) {
            return Some(path);
        }
    }
    None
}

// Bags from the segments of `walk` between consecutive terminals (a closed walk
// for the cycle case), with each component off the walk attached to the first
// segment containing all its neighbours.
fn segments_decomposition(g: &Graft, walk: &[usize], closed: bool) -> Option<CyclicDecomposition> {
    let stops: Vec<usize> = (0..walk.len()).filter(|&i| g.is_terminal(walk[i])).collect();
    let segs: Vec<Set> = stops
        .windows(2)
        .map(|w| walk[w[0]..=w[1]].iter().fold(0, |s, &v| s | bits::singleton(v)))
        .collect();
    let n = g.graph.vertex_count();
    let on_walk = walk.iter().fold(0, |s, &v| s | bits::singleton(v));
    let alive: Vec<bool> = (0..n).map(|v| !bits::contains(on_walk, v)).collect();
    let mut bags = segs.clone();
    for comp in g.graph.components_within(&alive, &vec![true; g.edge_count()]) {
        let cmask = comp.iter().fold(0, |s, &v| s | bits::singleton(v));
        let nb = comp.iter().flat_map(|&v| g.graph.neighbours(v)).fold(0, |s, v| s | bits::singleton(v)) & !cmask;
        let i = segs.iter().position(|&s| nb & !s == 0)?;
        bags[i] |= cmask;
    }
    let k = bags.len();
    let mut host = MultiGraph::new();
    for i in 0..k {
        host.add_vertex(&format!("x{}", i + 1)).ok()?;
    }
    let joins = if closed { k } else { k - 1 };
    for i in 0..joins {
        host.add_edge_idx(&format!("h{}", i + 1), i, (i + 1) % k).ok()?;
    }
    Some(CyclicDecomposition { host, bags: bags.iter().map(|&b| g.vertex_labels(b)).collect() })
}

/// Carry a valid cyclic decomposition of `g` over to `g` after `mv`. Returns
/// the minor graft and its decomposition.
pub fn cyclic_minor_transfer(g: &Graft, d: &CyclicDecomposition, mv: &GraftMove) -> Result<(Graft, CyclicDecomposition)> {
    if !d.validate(g, false).is_valid() {
        return Err(Error::Precondition("decomposition is not valid for the graft".into()));
    }
    let mut work = HostWork::from(d);
    let minor = match mv {
        GraftMove::Delete(e) => g.delete(e)?,
        GraftMove::Contract(e) => {
            let edge = g.graph.edges()[g.graph.edge_index(e)?].clone();
            if edge.is_loop() {
                g.delete(e)?
            } else {
                let (minor, merged) = g.contract_tracked(e)?;
                let (u, v) = (&g.graph.vertices()[edge.u], &g.graph.vertices()[edge.v]);
                if g.is_terminal(edge.u) && g.is_terminal(edge.v) {
                    let z = work.bag_with(u, v).expect("valid decomposition covers every edge");
                    let mut group = vec![z];
                    for y in work.neighbours(z) {
                        group.push(y);
                    }
                    work.merge(&group);
                }
                if let Some(star) = merged {
                    work.substitute(u, v, &star);
                }
                minor
            }
        }
    };
    work.restrict_to(&minor);
    Ok((minor, work.finish()))
}

// Mutable form of a decomposition: bags and host edges by index.
struct HostWork {
    names: Vec<String>,
    bags: Vec<BTreeSet<String>>,
    edges: Vec<(usize, usize, String)>,
}

impl HostWork {
    fn from(d: &CyclicDecomposition) -> HostWork {
        HostWork {
            names: d.host.vertices().to_vec(),
            bags: d.bags.iter().map(|b| b.iter().cloned().collect()).collect(),
            edges: d.host.edges().iter().map(|e| (e.u, e.v, e.label.clone())).collect(),
        }
    }

    fn bag_with(&self, u: &str, v: &str) -> Option<usize> {
        self.bags.iter().position(|b| b.contains(u) && b.contains(v))
    }

    fn neighbours(&self, x: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter(|e| e.0 == x || e.1 == x)
            .map(|e| if e.0 == x { e.1 } else { e.0 })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    // Identify the host vertices in `group` (the first keeps its name), dropping
    // every host edge inside the group.
    fn merge(&mut self, group: &[usize]) {
        let keep = group[0];
        let mut union = BTreeSet::new();
        for &x in group {
            union.extend(self.bags[x].iter().cloned());
        }
        self.edges.retain(|e| !(group.contains(&e.0) && group.contains(&e.1)));
        for e in &mut self.edges {
            if group.contains(&e.0) {
                e.0 = keep;
            }
            if group.contains(&e.1) {
                e.1 = keep;
            }
        }
        self.bags[keep] = union;
        let mut gone: Vec<usize> = group[1..].to_vec();
        gone.sort_unstable_by(|a, b| b.cmp(a));
        for x in gone {
            self.names.remove(x);
            self.bags.remove(x);
            for e in &mut self.edges {
                if e.0 > x {
                    e.0 -= 1;
                }
                if e.1 > x {
                    e.1 -= 1;
                }
            }
        }
    }

    fn substitute(&mut self, u: &str, v: &str, star: &str) {
        for b in &mut self.bags {
            if b.remove(u) | b.remove(v) {
                b.insert(star.to_string());
            }
        }
    }

    // Drop vertices missing from `g`; each dropped vertex shared by two bags
    // takes one host edge between them along.
    fn restrict_to(&mut self, g: &Graft) {
        let mut dropped = BTreeSet::new();
        for b in &self.bags {
            for l in b {
                if g.graph.vertex_index(l).is_none() {
                    dropped.insert(l.clone());
                }
            }
        }
        for l in dropped {
            let holders: Vec<usize> = (0..self.bags.len()).filter(|&x| self.bags[x].contains(&l)).collect();
            for (i, &x) in holders.iter().enumerate() {
                for &y in &holders[i + 1..] {
                    if let Some(p) = self.edges.iter().position(|e| (e.0 == x && e.1 == y) || (e.0 == y && e.1 == x)) {
                        self.edges.remove(p);
                    }
                }
            }
            for b in &mut self.bags {
                b.remove(&l);
            }
        }
    }

    fn finish(self) -> CyclicDecomposition {
        let mut host = MultiGraph::new();
        for n in &self.names {
            host.add_vertex(n).expect("distinct host names");
        }
        for (u, v, l) in &self.edges {
            host.add_edge_idx(l, *u, *v).expect("distinct host edges");
        }
        CyclicDecomposition { host, bags: self.bags.into_iter().map(|b| b.into_iter().collect()).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph;

    fn fam(g: &Graft) -> Vec<Vec<String>> {
        let s = g.delta_matroid().unwrap();
        s.feasible().iter().map(|&f| s.labels_of(f)).collect()
    }

    #[test]
    fn delta_families() {
        let d1 = DeltaGraft::Delta1.graft();
        assert_eq!(fam(&d1), vec![vec![], vec!["1", "2"], vec!["1", "3"], vec!["2", "3"]]);
        let d3 = DeltaGraft::Delta3.graft();
        assert_eq!(fam(&d3), vec![vec!["1"], vec!["2"], vec!["3"], vec!["1", "2", "3"]]);
        for k in [DeltaGraft::Delta1, DeltaGraft::Delta2, DeltaGraft::Delta3] {
            let s = k.graft().delta_matroid().unwrap();
            assert!(s.is_mk3() || s.twist(0b001).is_mk3());
            assert_eq!(k.graft().classify_delta(), Some(k));
        }
    }

    #[test]
    fn no_terminals_gives_spanning_trees() {
        let g = Graft::new(graph::complete(4), &[] as &[&str]).unwrap();
        assert_eq!(g.feasible_sets().unwrap(), graph::complete(4).cycle_matroid().unwrap().bases().unwrap());
    }

    #[test]
    fn isolated_vertices_pruned() {
        let g = Graft::from_parts(&["a", "b", "z"], &[("e", "a", "b")], &["a", "z"]).unwrap();
        assert_eq!(g.graph().vertex_count(), 2);
        assert_eq!(g.terminal_labels(), vec!["a"]);
    }

    #[test]
    fn collapse_path() {
        let g = Graft::from_parts(&["a", "b", "c"], &[("p", "a", "b"), ("q", "b", "c")], &["a", "c"]).unwrap();
        let m = g.collapse_small_t().unwrap();
        assert_eq!(m.bases().unwrap(), g.feasible_sets().unwrap());
        assert!(DeltaGraft::Delta1.graft().collapse_small_t().is_err());
    }

    #[test]
    fn bridges_and_tunnels() {
        let g = Graft::from_parts(&["u", "v"], &[("e", "u", "v")], &["u", "v"]).unwrap();
        assert!(g.is_t_tunnel("e").unwrap());
        assert_eq!(g.feasible_sets().unwrap(), vec![0]);
        let h = Graft::from_parts(&["u", "v", "w"], &[("e", "u", "v"), ("l", "w", "w"), ("f", "v", "w")], &[]).unwrap();
        assert!(h.is_t_bridge("e").unwrap());
        assert!(!h.is_t_bridge("l").unwrap());
        assert!(h.feasible_sets().unwrap().iter().all(|f| f & 0b010 == 0));
    }

    #[test]
    fn contraction_parity() {
        let g = Graft::from_parts(&["u", "v", "w"], &[("e", "u", "v"), ("f", "v", "w")], &["u"]).unwrap();
        let h = g.contract("e").unwrap();
        assert_eq!(h.terminal_labels(), vec!["u+v"]);
        let g = Graft::from_parts(&["u", "v", "w"], &[("e", "u", "v"), ("f", "v", "w")], &["u", "v"]).unwrap();
        assert!(g.contract("e").unwrap().terminal_labels().is_empty());
    }

    #[test]
    fn connectivity_witnesses() {
        assert_eq!(DeltaGraft::Delta1.graft().connectivity().unwrap(), GraftConnectivity::Connected);
        let g = Graft::from_parts(&["a", "b"], &[("e", "a", "b"), ("l", "a", "a")], &["a"]).unwrap();
        assert_eq!(g.connectivity().unwrap(), GraftConnectivity::Loop("l".into()));
        let g = Graft::from_parts(&["u", "v", "x"], &[("e", "u", "v"), ("f", "u", "x"), ("g", "x", "v")], &["u", "v"]).unwrap();
        assert!(matches!(g.connectivity().unwrap(), GraftConnectivity::TSeparation { .. }));
        assert!(!g.delta_matroid().unwrap().is_connected_dm().unwrap());
    }

    #[test]
    fn delta_minor_in_k4() {
        let g = Graft::new(graph::complete(4), &["1", "2", "3"]).unwrap();
        let w = g.find_delta_minor().unwrap().unwrap();
        assert!(w.verify(&g).unwrap());
        let w = g.delta_minor_by_scan().unwrap().unwrap();
        assert!(w.verify(&g).unwrap());
    }

    #[test]
    fn cyclic_on_c4_and_path() {
        let g = Graft::new(graph::cycle(4), &["v1", "v2", "v3", "v4"]).unwrap();
        let d = build_cyclic(&g).unwrap().unwrap();
        assert!(d.is_cycle_host() && d.host.vertex_count() == 4);
        assert!(d.bags.iter().all(|b| b.len() == 2));
        let p = Graft::new(graph::path(4), &["v1", "v2", "v3", "v4"]).unwrap();
        let d = build_cyclic(&p).unwrap().unwrap();
        assert!(d.is_path_host() && d.host.vertex_count() == 3);
        assert!(build_cyclic(&DeltaGraft::Delta2.graft()).unwrap().is_none());
        assert!(build_cyclic(&DeltaGraft::Delta1.graft()).unwrap().is_none());
    }

    #[test]
    fn transfer_keeps_validity() {
        let g = Graft::new(graph::cycle(6), &["v1", "v2", "v4", "v5"]).unwrap();
        let d = build_cyclic(&g).unwrap().unwrap();
        for e in g.edge_labels() {
            for mv in [GraftMove::Delete(e.clone()), GraftMove::Contract(e.clone())] {
                let (h, dh) = cyclic_minor_transfer(&g, &d, &mv).unwrap();
                assert!(dh.validate(&h, false).is_valid(), "{mv:?}: {:?}", dh.validate(&h, false));
            }
        }
    }
}
