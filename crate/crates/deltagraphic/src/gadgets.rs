//! Generators for the non-delta-graphic families: tripods, H- and
//! H′-matroids, (m,k)-benches, and starlike matroids (the last one is
//! delta-graphic exactly when it is a wheel decomposition).
//!
//! Each generator takes the node matroids of the intended canonical tree,
//! prefixes their labels with the node name (`x1.a1b1`), joins adjacent nodes
//! with fresh markers, and checks the family's class constraints.

use crate::error::{Error, Result};
use crate::matroid::graphic::{is_cographic, is_graphic};
use crate::matroid::Matroid;
use crate::tree::{self, LabelledTree};
use std::collections::HashMap;

/// A composed gadget with the tree it was built from.
#[derive(Clone, Debug)]
pub struct Gadget {
    pub matroid: Matroid,
    pub tree: LabelledTree,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Class {
    /// In `G - G*`.
    GraphicOnly,
    /// In `G* - G`.
    CographicOnly,
}

fn check_class(name: &str, m: &Matroid, want: Class) -> Result<()> {
    let g = is_graphic(m)?.is_some();
    let c = is_cographic(m)?.is_some();
    let ok = match want {
        Class::GraphicOnly => g && !c,
        Class::CographicOnly => c && !g,
    };
    if !ok {
        let what = if want == Class::GraphicOnly { "graphic and not cographic" } else { "cographic and not graphic" };
        return Err(Error::Argument(format!("node {name} must be {what}")));
    }
    Ok(())
}

fn is_spine_uniform(m: &Matroid) -> bool {
    m.len() >= 3 && (m.is_rank_one_uniform() || m.is_corank_one_uniform())
}

struct Builder {
    names: Vec<String>,
    nodes: Vec<Matroid>,
    free: Vec<Vec<String>>,
    avoid: Vec<String>,
}

impl Builder {
    fn new() -> Builder {
        Builder { names: Vec::new(), nodes: Vec::new(), free: Vec::new(), avoid: Vec::new() }
    }

    fn node(&mut self, name: &str, m: &Matroid) -> Result<usize> {
        let map: HashMap<String, String> = m.labels().iter().map(|l| (l.clone(), format!("{name}.{l}"))).collect();
        let m = m.relabel(&map)?;
        self.avoid.extend(m.labels().iter().cloned());
        self.free.push(m.labels().to_vec());
        self.nodes.push(m);
        self.names.push(name.to_string());
        Ok(self.nodes.len() - 1)
    }

    /// Take element `at` (unprefixed) of node `v`, or its first unused one.
    fn take(&mut self, v: usize, at: Option<&str>) -> Result<String> {
        let free = &mut self.free[v];
        let pos = match at {
            Some(l) => {
                let full = format!("{}.{l}", self.names[v]);
                free.iter().position(|x| *x == full)
            }
            None => (!free.is_empty()).then_some(0),
        };
        let pos = pos.ok_or_else(|| Error::Argument(format!("node {} has no free element {}", self.names[v], at.unwrap_or(""))))?;
        Ok(free.remove(pos))
    }

    fn join(&mut self, a: usize, at_a: Option<&str>, b: usize, at_b: Option<&str>) -> Result<()> {
        let la = self.take(a, at_a)?;
        let lb = self.take(b, at_b)?;
        let marker = tree::fresh_marker(&self.avoid);
        self.avoid.push(marker.clone());
        self.nodes[a] = self.nodes[a].rename(&la, &marker)?;
        self.nodes[b] = self.nodes[b].rename(&lb, &marker)?;
        Ok(())
    }

    fn finish(self) -> Result<Gadget> {
        let tree = LabelledTree::new(self.nodes)?;
        let bad = tree.canonical_violations()?;
        if !bad.is_empty() {
            return Err(Error::Argument(format!("intended tree is not canonical: {}", bad.join("; "))));
        }
        Ok(Gadget { matroid: tree.compose()?, tree })
    }
}

/// `M1 ⊕₂ M2 ⊕₂ M3` with 3-connected parts, where either `M1, M3 ∈ G - G*`
/// and `M2 ∈ G* - G`, or the reverse.
pub fn make_tripod(m1: &Matroid, m2: &Matroid, m3: &Matroid) -> Result<Gadget> {
    for (name, m) in [("m1", m1), ("m2", m2), ("m3", m3)] {
        if !m.is_3_connected()? || m.len() < 4 {
            return Err(Error::Argument(format!("tripod part {name} must be 3-connected with at least 4 elements")));
        }
    }
    let outer = if is_graphic(m1)?.is_some() { Class::GraphicOnly } else { Class::CographicOnly };
    let inner = if outer == Class::GraphicOnly { Class::CographicOnly } else { Class::GraphicOnly };
    check_class("m1", m1, outer)?;
    check_class("m2", m2, inner)?;
    check_class("m3", m3, outer)?;
    let mut b = Builder::new();
    let v1 = b.node("m1", m1)?;
    let v2 = b.node("m2", m2)?;
    let v3 = b.node("m3", m3)?;
    b.join(v1, None, v2, None)?;
    b.join(v2, None, v3, None)?;
    b.finish()
}

/// Parts of an H-matroid (tree `x1,y1 – v1 – v2 – x2,y2`) or, with `middle`,
/// an H′-matroid (`v1 – v – v2`).
#[derive(Clone, Debug)]
pub struct HParts {
    pub v1: Matroid,
    pub v2: Matroid,
    pub x1: Matroid,
    pub y1: Matroid,
    pub x2: Matroid,
    pub y2: Matroid,
}

fn h_leaves(p: &HParts) -> Result<()> {
    check_class("x1", &p.x1, Class::GraphicOnly)?;
    check_class("x2", &p.x2, Class::GraphicOnly)?;
    check_class("y1", &p.y1, Class::CographicOnly)?;
    check_class("y2", &p.y2, Class::CographicOnly)
}

fn h_assemble(p: &HParts, middle: Option<&Matroid>) -> Result<Gadget> {
    let mut b = Builder::new();
    let v1 = b.node("v1", &p.v1)?;
    let v2 = b.node("v2", &p.v2)?;
    let x1 = b.node("x1", &p.x1)?;
    let y1 = b.node("y1", &p.y1)?;
    let x2 = b.node("x2", &p.x2)?;
    let y2 = b.node("y2", &p.y2)?;
    match middle {
        Some(m) => {
            let v = b.node("v", m)?;
            b.join(v1, None, v, None)?;
            b.join(v, None, v2, None)?;
        }
        None => b.join(v1, None, v2, None)?,
    }
    b.join(v1, None, x1, None)?;
    b.join(v1, None, y1, None)?;
    b.join(v2, None, x2, None)?;
    b.join(v2, None, y2, None)?;
    b.finish()
}

/// An H-matroid: (h1) `v1` or `v2` is not rank-1/corank-1 uniform; (h2) the
/// `x` leaves are in `G - G*` and the `y` leaves in `G* - G`.
pub fn make_h_matroid(p: &HParts) -> Result<Gadget> {
    if is_spine_uniform(&p.v1) && is_spine_uniform(&p.v2) {
        return Err(Error::Argument("(h1): v1 or v2 must be neither rank-1 nor corank-1 uniform".into()));
    }
    h_leaves(p)?;
    h_assemble(p, None)
}

/// An H′-matroid: the middle node `v` is not rank-1/corank-1 uniform and the
/// leaves are as for H-matroids.
pub fn make_hprime_matroid(p: &HParts, v: &Matroid) -> Result<Gadget> {
    if is_spine_uniform(v) {
        return Err(Error::Argument("(H1): v must be neither rank-1 nor corank-1 uniform".into()));
    }
    h_leaves(p)?;
    h_assemble(p, Some(v))
}

/// Parts of an (m,k)-bench: spine `v1..vm`, leaves `x1, y1` at `v1`,
/// `xm, ym` at `vm` and `w` at `vk`.
#[derive(Clone, Debug)]
pub struct BenchParts {
    pub spine: Vec<Matroid>,
    pub x1: Matroid,
    pub y1: Matroid,
    pub xm: Matroid,
    pub ym: Matroid,
    pub w: Matroid,
}

/// An (m,k)-bench, `m >= 3`, `1 < k < m` (1-based `k`).
pub fn make_bench(m: usize, k: usize, p: &BenchParts) -> Result<Gadget> {
    if m < 3 || k <= 1 || k >= m || p.spine.len() != m {
        return Err(Error::Argument(format!("a bench needs m >= 3, 1 < k < m and m spine nodes (m = {m}, k = {k})")));
    }
    if let Some(i) = p.spine.iter().position(|s| !is_spine_uniform(s)) {
        return Err(Error::Argument(format!("(L1): spine node v{} is not rank-1 or corank-1 uniform", i + 1)));
    }
    check_class("x1", &p.x1, Class::GraphicOnly)?;
    check_class("xm", &p.xm, Class::GraphicOnly)?;
    check_class("y1", &p.y1, Class::CographicOnly)?;
    check_class("ym", &p.ym, Class::CographicOnly)?;
    let vk = &p.spine[k - 1];
    let want = if vk.rank() == 1 { Class::GraphicOnly } else { Class::CographicOnly };
    check_class("w", &p.w, want)?;
    let mut b = Builder::new();
    let vs: Vec<usize> =
        p.spine.iter().enumerate().map(|(i, s)| b.node(&format!("v{}", i + 1), s)).collect::<Result<_>>()?;
    for i in 0..m - 1 {
        b.join(vs[i], None, vs[i + 1], None)?;
    }
    let leaves = [("x1", &p.x1, 0), ("y1", &p.y1, 0), ("xm", &p.xm, m - 1), ("ym", &p.ym, m - 1), ("w", &p.w, k - 1)];
    for (name, leaf, at) in leaves {
        let l = b.node(name, leaf)?;
        b.join(vs[at], None, l, None)?;
    }
    b.finish()
}

/// A starlike matroid: hub in `G ∩ G*`, not rank-1/corank-1 uniform, with
/// leaves `x1, x2 ∈ G - G*` and `x3, x4 ∈ G* - G` glued at the hub elements
/// `attach[0..4]` (unprefixed hub labels).
pub fn make_starlike(hub: &Matroid, attach: [&str; 4], leaves: [&Matroid; 4]) -> Result<Gadget> {
    if is_spine_uniform(hub) {
        return Err(Error::Argument("starlike hub must be neither rank-1 nor corank-1 uniform".into()));
    }
    if is_graphic(hub)?.is_none() || is_cographic(hub)?.is_none() {
        return Err(Error::Argument("starlike hub must be graphic and cographic".into()));
    }
    let wants = [Class::GraphicOnly, Class::GraphicOnly, Class::CographicOnly, Class::CographicOnly];
    let mut b = Builder::new();
    let h = b.node("hub", hub)?;
    for (i, (leaf, want)) in leaves.iter().zip(wants).enumerate() {
        let name = format!("x{}", i + 1);
        check_class(&name, leaf, want)?;
        let l = b.node(&name, leaf)?;
        b.join(h, Some(attach[i]), l, None)?;
    }
    b.finish()
}
