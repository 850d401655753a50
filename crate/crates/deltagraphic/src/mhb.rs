//! The matroids `M^{H,B}` of grafts with a nice cyclic decomposition.
//!
//! For an even-cycle host `1, .., 2k` the matroid is
//! `M(W_k) ⊕₂ M(G̃_1) ⊕₂ M*(G̃_2) ⊕₂ .. ⊕₂ M*(G̃_{2k})`; for a path host
//! `1, .., ℓ` the wheel is replaced by `M(Π_ℓ)`. Here `G̃_i` is the part of the
//! graft inside bag `i` plus a marker edge `u_{i-1}u_i` between the bag's two
//! attachment terminals. In both cases the T-spanning forests of the graft are
//! the bases of `M^{H,B}` twisted by the edges of the even-indexed parts.

use crate::bits::{self, Set};
use crate::error::{Error, Result};
use crate::graft::{CyclicDecomposition, Graft};
use crate::graph::{self, MultiGraph};
use crate::matroid::Matroid;
use crate::tree;
use std::collections::HashMap;

/// One bag's contribution `G̃_i`, glued along `marker`.
#[derive(Clone, Debug)]
pub struct MhbPart {
    /// Host vertex label of the bag.
    pub host_vertex: String,
    pub marker: String,
    /// `G_i` plus the marker edge.
    pub graph: MultiGraph,
    /// Whether the bond matroid (rather than the cycle matroid) is used.
    pub dual: bool,
}

/// `M^{H,B}` together with the data of its construction.
#[derive(Clone, Debug)]
pub struct Mhb {
    pub matroid: Matroid,
    /// Edges of the even-indexed parts: `F(G(G,T)) = B(M) △ twist`.
    pub twist: Vec<String>,
    /// Parts in host order `1, 2, ..`.
    pub parts: Vec<MhbPart>,
}

impl Mhb {
    /// Whether `F(G(G,T)) = B(M^{H,B}) △ twist` holds, by enumerating both sides.
    pub fn identity_holds(&self, g: &Graft) -> Result<bool> {
        let labels = g.edge_labels();
        if self.matroid.len() != labels.len() {
            return Ok(false);
        }
        let pos: HashMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let mut to_graft = Vec::with_capacity(labels.len());
        for l in self.matroid.labels() {
            match pos.get(l.as_str()) {
                Some(&i) => to_graft.push(i),
                None => return Ok(false),
            }
        }
        let lift = |s: Set| bits::iter(s).fold(0u64, |a, i| a | bits::singleton(to_graft[i]));
        let twist = self.twist.iter().fold(0u64, |a, l| a | pos.get(l.as_str()).map_or(0, |&i| bits::singleton(i)));
        let mut lhs = g.feasible_sets()?;
        let mut rhs: Vec<Set> = self.matroid.bases()?.into_iter().map(|b| lift(b) ^ twist).collect();
        lhs.sort_unstable();
        rhs.sort_unstable();
        Ok(lhs == rhs)
    }
}

/// Host vertices in walk order: around the cycle, or from one end of the path.
fn host_order(h: &MultiGraph, closed: bool) -> Vec<usize> {
    let n = h.vertex_count();
    let start = if closed { 0 } else { (0..n).find(|&v| h.degree(v) == 1).unwrap_or(0) };
    let mut order = vec![start];
    let mut used_edge = vec![false; h.edge_count()];
    let mut cur = start;
    loop {
        let next = h.edges().iter().enumerate().find(|(k, e)| !used_edge[*k] && (e.u == cur || e.v == cur));
        let Some((k, e)) = next else { break };
        used_edge[k] = true;
        let w = e.other(cur);
        if w == start {
            break;
        }
        order.push(w);
        cur = w;
    }
    order
}

struct Layout {
    /// Bags in host order, as vertex bitsets of the graft.
    bags: Vec<Set>,
    host_labels: Vec<String>,
    /// Edge indices of `G_i` for each bag.
    edges: Vec<Vec<usize>>,
}

fn layout(g: &Graft, d: &CyclicDecomposition, closed: bool, loops_allowed: bool) -> Result<Layout> {
    let report = d.validate(g, true);
    if !report.is_valid() {
        let v = &report.violations[0];
        return Err(Error::Precondition(format!("decomposition is not valid and nice: {} ({})", v.clause, v.detail)));
    }
    let ok_host = if closed { d.is_cycle_host() } else { d.is_path_host() };
    if !ok_host {
        let want = if closed { "an even cycle" } else { "a path" };
        return Err(Error::Precondition(format!("host is not {want}")));
    }
    let order = host_order(&d.host, closed);
    if order.len() != d.host.vertex_count() {
        return Err(Error::Precondition("host is not connected".into()));
    }
    let gr = g.graph();
    let mask = |bag: &[String]| bag.iter().filter_map(|l| gr.vertex_index(l)).fold(0u64, |s, v| s | bits::singleton(v));
    let bags: Vec<Set> = order.iter().map(|&x| mask(&d.bags[x])).collect();
    let host_labels = order.iter().map(|&x| d.host.vertices()[x].clone()).collect();
    let shared = bags
        .iter()
        .enumerate()
        .flat_map(|(i, a)| bags[i + 1..].iter().map(move |b| a & b))
        .fold(0u64, |s, m| s | m);
    let mut edges = vec![Vec::new(); bags.len()];
    for (k, e) in gr.edges().iter().enumerate() {
        if e.is_loop() {
            if !loops_allowed {
                return Err(Error::Precondition(format!("loop `{}` (the graft must be loopless)", e.label)));
            }
            if bits::contains(shared, e.u) {
                return Err(Error::Precondition(format!("loop `{}` at a vertex shared by two bags", e.label)));
            }
        }
        let both = bits::singleton(e.u) | bits::singleton(e.v);
        let i = bags
            .iter()
            .position(|b| b & both == both)
            .ok_or_else(|| Error::Precondition(format!("edge `{}` lies in no bag", e.label)))?;
        edges[i].push(k);
    }
    Ok(Layout { bags, host_labels, edges })
}

fn single_vertex(s: Set, what: &str) -> Result<usize> {
    if bits::len(s) != 1 {
        return Err(Error::Precondition(format!("{what} is not a single vertex")));
    }
    Ok(s.trailing_zeros() as usize)
}

/// Assemble `base ⊕₂ parts` given the attachment vertices `u_0, .., u_p`.
fn assemble(g: &Graft, lay: &Layout, u: &[usize], base: MultiGraph) -> Result<Mhb> {
    let gr = g.graph();
    let p = lay.bags.len();
    let mut avoid = g.edge_labels();
    let mut markers = Vec::with_capacity(p);
    for _ in 0..p {
        let m = tree::fresh_marker(&avoid);
        avoid.push(m.clone());
        markers.push(m);
    }
    // Base edges e1..ep carry the markers; any further edges were removed already.
    let rename: HashMap<String, String> = (0..p).map(|i| (format!("e{}", i + 1), markers[i].clone())).collect();
    let mut acc = base.relabel_edges(&rename).cycle_matroid()?;
    let mut parts = Vec::with_capacity(p);
    let mut twist = Vec::new();
    for i in 0..p {
        let mut h = MultiGraph::new();
        for v in bits::iter(lay.bags[i]) {
            h.add_vertex(&gr.vertices()[v])?;
        }
        for &k in &lay.edges[i] {
            let e = &gr.edges()[k];
            h.add_edge(&e.label, &gr.vertices()[e.u], &gr.vertices()[e.v])?;
        }
        h.add_edge(&markers[i], &gr.vertices()[u[i]], &gr.vertices()[u[i + 1]])?;
        // Host position i + 1: odd positions are graphic, even ones cographic.
        let dual = i % 2 == 1;
        if dual {
            twist.extend(lay.edges[i].iter().map(|&k| gr.edges()[k].label.clone()));
        }
        let part = if dual { h.bond_matroid()? } else { h.cycle_matroid()? };
        acc = tree::two_sum(&acc, &part, &markers[i])?;
        parts.push(MhbPart { host_vertex: lay.host_labels[i].clone(), marker: markers[i].clone(), graph: h, dual });
    }
    Ok(Mhb { matroid: acc, twist, parts })
}

/// `M^{H,B}` for a nice cyclic decomposition over an even cycle of length `2k >= 4`.
pub fn build_mhb_cycle(g: &Graft, d: &CyclicDecomposition) -> Result<Mhb> {
    let lay = layout(g, d, true, false)?;
    let p = lay.bags.len();
    if p < 4 || p % 2 == 1 {
        return Err(Error::Precondition(format!("host cycle must be even of length at least 4, got {p}")));
    }
    // u_i ∈ B_i ∩ B_{i+1}; u_0 = u_{2k}.
    let mut u = vec![0usize; p + 1];
    for i in 1..=p {
        u[i] = single_vertex(lay.bags[i - 1] & lay.bags[i % p], "bag intersection")?;
    }
    u[0] = u[p];
    assemble(g, &lay, &u, graph::wheel_any(p / 2))
}

/// `M^{H,B}` for a nice cyclic decomposition over a path on `ℓ >= 2` vertices.
pub fn build_mhb_path(g: &Graft, d: &CyclicDecomposition) -> Result<Mhb> {
    let lay = layout(g, d, false, true)?;
    let p = lay.bags.len();
    if p < 2 {
        return Err(Error::Precondition("host path needs at least two vertices".into()));
    }
    let t = g.terminals();
    let mut u = vec![0usize; p + 1];
    for i in 1..p {
        u[i] = single_vertex(lay.bags[i - 1] & lay.bags[i], "bag intersection")?;
    }
    u[0] = single_vertex(t & lay.bags[0] & !lay.bags[1], "(T ∩ B_1) - B_2")?;
    u[p] = single_vertex(t & lay.bags[p - 1] & !lay.bags[p - 2], "(T ∩ B_ℓ) - B_{ℓ-1}")?;
    assemble(g, &lay, &u, graph::pi(p)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c4_graft() -> (Graft, CyclicDecomposition) {
        let g = Graft::new(graph::cycle(4), &["v1", "v2", "v3", "v4"]).unwrap();
        let host = graph::cycle(4);
        // Bag i holds the ends of edge c_i = v_i v_{i+1}.
        let bags = (1..=4).map(|i| vec![format!("v{i}"), format!("v{}", i % 4 + 1)]).collect();
        (g, CyclicDecomposition::new(host, bags).unwrap())
    }

    #[test]
    fn c4_all_terminals() {
        let (g, d) = c4_graft();
        let m = build_mhb_cycle(&g, &d).unwrap();
        assert_eq!(m.matroid.len(), 4);
        assert!(m.identity_holds(&g).unwrap());
    }

    #[test]
    fn path_two_bags() {
        let g = Graft::new(graph::path(3), &["v1", "v2", "v3"]).unwrap();
        let host = graph::path(2);
        let d = CyclicDecomposition::new(host, vec![vec!["v1".into(), "v2".into()], vec!["v2".into(), "v3".into()]]).unwrap();
        let m = build_mhb_path(&g, &d).unwrap();
        assert!(m.identity_holds(&g).unwrap());
    }

    #[test]
    fn loops_rejected_on_cycles() {
        let (g, d) = c4_graft();
        let mut gr = g.graph().clone();
        gr.add_edge("l", "v1", "v1").unwrap();
        let g = Graft::new(gr, &["v1", "v2", "v3", "v4"]).unwrap();
        assert!(matches!(build_mhb_cycle(&g, &d), Err(Error::Precondition(_))));
    }
}
