//! Graphicness, cographicness and regularity.
//!
//! Realization works per component on the canonical tree decomposition: each
//! node is realized on its own and the node graphs are glued by graph 2-sums.
//! A 3-connected node is realized from its vertex stars, which in a 3-connected
//! graph are exactly the cocircuits whose deletion leaves a connected matroid.
//! Every realization is checked against the input before it is returned.

use super::{has_minor, Matroid, MinorWitness};
use crate::bits;
use crate::catalog;
use crate::error::Result;
use crate::graph::MultiGraph;
use crate::tree;

/// A graph whose cycle matroid equals `m` (same labels), if one exists.
pub fn is_graphic(m: &Matroid) -> Result<Option<MultiGraph>> {
    let Some(m) = m.to_binary()? else { return Ok(None) };
    let mut g = MultiGraph::new();
    for comp in m.components() {
        let part = m.restrict(comp);
        let Some(h) = realize_connected(&part)? else { return Ok(None) };
        g = g.disjoint_union(&h)?;
    }
    Ok(if g.cycle_matroid()?.same_as(&m) { Some(g) } else { None })
}

/// A graph whose bond matroid equals `m`, if one exists.
pub fn is_cographic(m: &Matroid) -> Result<Option<MultiGraph>> {
    is_graphic(&m.dual())
}

fn fresh_vertices(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("v{i}")).collect()
}

fn realize_connected(m: &Matroid) -> Result<Option<MultiGraph>> {
    if m.len() == 1 {
        let mut g = MultiGraph::new();
        g.add_vertex("v0")?;
        if m.is_loop(0) {
            g.add_edge(m.label(0), "v0", "v0")?;
        } else {
            g.add_vertex("v1")?;
            g.add_edge(m.label(0), "v0", "v1")?;
        }
        return Ok(Some(g));
    }
    let t = tree::canonical_decomposition(m)?;
    let mut graphs = Vec::with_capacity(t.len());
    for node in t.nodes() {
        match realize_node(node)? {
            Some(g) => graphs.push(g),
            None => return Ok(None),
        }
    }
    // Glue along tree edges in breadth-first order from node 0.
    let mut acc = graphs[0].clone();
    let mut done = vec![false; t.len()];
    done[0] = true;
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (y, marker) in t.neighbours(x) {
            if !done[y] {
                done[y] = true;
                acc = acc.two_sum(&graphs[y], &marker, false)?;
                queue.push_back(y);
            }
        }
    }
    Ok(Some(acc))
}

/// Realize a node of a canonical decomposition (uniform of rank or corank 1, or 3-connected).
fn realize_node(m: &Matroid) -> Result<Option<MultiGraph>> {
    let n = m.len();
    let vs = fresh_vertices(n.max(2));
    let mut g = MultiGraph::new();
    if m.is_rank_one_uniform() {
        g.add_vertex(&vs[0])?;
        g.add_vertex(&vs[1])?;
        for l in m.labels() {
            g.add_edge(l, &vs[0], &vs[1])?;
        }
        return Ok(Some(g));
    }
    if m.is_corank_one_uniform() {
        for v in &vs[..n] {
            g.add_vertex(v)?;
        }
        for (i, l) in m.labels().iter().enumerate() {
            g.add_edge(l, &vs[i], &vs[(i + 1) % n])?;
        }
        return Ok(Some(g));
    }
    realize_3_connected(m)
}

fn realize_3_connected(m: &Matroid) -> Result<Option<MultiGraph>> {
    let stars: Vec<u64> = m.cocircuits()?.into_iter().filter(|&d| m.delete(d).is_connected()).collect();
    if stars.len() != m.rank() + 1 {
        return Ok(None);
    }
    let mut g = MultiGraph::new();
    let vs = fresh_vertices(stars.len());
    for v in &vs {
        g.add_vertex(v)?;
    }
    for e in 0..m.len() {
        let ends: Vec<usize> = (0..stars.len()).filter(|&s| bits::contains(stars[s], e)).collect();
        if ends.len() != 2 {
            return Ok(None);
        }
        g.add_edge(m.label(e), &vs[ends[0]], &vs[ends[1]])?;
    }
    Ok(if g.cycle_matroid()?.same_as(m) { Some(g) } else { None })
}

/// Regular: binary and without an `F7` or `F7*` minor. Checked node by node on
/// the canonical decompositions of the components, since 2-sums and direct sums
/// preserve regularity in both directions; graphic or cographic nodes are
/// regular outright.
pub fn is_regular(m: &Matroid) -> Result<bool> {
    let Some(m) = m.to_binary()? else { return Ok(false) };
    let f7 = catalog::fano();
    let f7d = f7.dual();
    for comp in m.components() {
        let part = m.restrict(comp);
        if part.len() < 7 {
            continue;
        }
        for node in tree::canonical_decomposition(&part)?.nodes() {
            if node.len() < 7 || is_graphic(node)?.is_some() || is_cographic(node)?.is_some() {
                continue;
            }
            if has_minor(node, &f7)?.is_some() || has_minor(node, &f7d)?.is_some() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// An excluded minor for graphicness (`U(2,4)`, `F7`, `F7*`, `M*(K5)`, `M*(K33)`)
/// contained in `m`, by exhaustive minor scan.
pub fn graphic_excluded_minor(m: &Matroid) -> Result<Option<(&'static str, MinorWitness)>> {
    let list: [(&'static str, Matroid); 5] = [
        ("U(2,4)", catalog::uniform(2, 4)?),
        ("F7", catalog::fano()),
        ("F7*", catalog::fano().dual()),
        ("M*(K5)", catalog::k5().dual()),
        ("M*(K33)", catalog::k33().dual()),
    ];
    for (name, n) in list {
        if let Some(w) = has_minor(m, &n)? {
            return Ok(Some((name, w)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k5_and_bonds() {
        let k5 = catalog::k5();
        let g = is_graphic(&k5).unwrap().unwrap();
        assert!(g.cycle_matroid().unwrap().same_as(&k5));
        assert!(is_cographic(&k5).unwrap().is_none());
        assert!(is_cographic(&k5.dual()).unwrap().is_some());
    }

    #[test]
    fn r10_and_fano() {
        let r = catalog::r10();
        assert!(is_graphic(&r).unwrap().is_none());
        assert!(is_cographic(&r).unwrap().is_none());
        assert!(is_regular(&r).unwrap());
        assert!(!is_regular(&catalog::fano()).unwrap());
        assert!(is_graphic(&catalog::fano()).unwrap().is_none());
        assert!(!is_regular(&catalog::uniform(2, 4).unwrap()).unwrap());
    }

    #[test]
    fn loops_coloops_and_small() {
        let m = Matroid::from_columns(vec!["l".into(), "c".into(), "p".into(), "q".into()], &[0, 1, 2, 2]).unwrap();
        let g = is_graphic(&m).unwrap().unwrap();
        assert!(g.cycle_matroid().unwrap().same_as(&m));
        assert!(is_graphic(&Matroid::empty()).unwrap().is_some());
    }
}
