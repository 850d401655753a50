//! Recognition of delta-graphic matroids.
//!
//! A connected binary matroid is delta-graphic iff it is graphic, cographic,
//! or its canonical tree decomposition satisfies one of (T1)–(T4): a tree edge
//! splitting it into a graphic and a cographic side, a uniform node with mixed
//! graphic/cographic branches, a wheel decomposition, or a fan decomposition.
//! A disconnected matroid is delta-graphic iff all its components are.
//!
//! Subtree classes are computed node-wise: a subtree of a canonical tree is a
//! canonical tree of its composition, each node is a minor of the whole, and
//! both classes are closed under 2-sums, so a subtree composes to a graphic
//! (cographic) matroid iff all its nodes are graphic (cographic).
//!
//! Every positive answer carries a [`Certificate`] that [`verify_certificate`]
//! re-checks from scratch. Positive certificates also convert into a
//! [`GeneralizedWheelSpec`], an explicit wheel-minor-plus-2-sums construction.

use crate::bits;
use crate::caps;
use crate::catalog;
use crate::error::{Error, Result};
use crate::graph::{self, MultiGraph};
use crate::matroid::graphic::{is_cographic, is_graphic};
use crate::matroid::{has_minor, is_isomorphic, Matroid};
use crate::tree::{self, LabelledTree};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap};

/// Version tag written into certificate documents.
pub const CERTIFICATE_SCHEMA: &str = "delta-graphic-certificate/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PartClass {
    Graphic,
    Cographic,
}

impl PartClass {
    pub fn flip(self) -> PartClass {
        match self {
            PartClass::Graphic => PartClass::Cographic,
            PartClass::Cographic => PartClass::Graphic,
        }
    }
}

/// A branch hanging off a hub or spine node, realized by a graph: the part is
/// `M(graph)` when graphic and `M*(graph)` when cographic.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Part {
    pub marker: String,
    pub class: PartClass,
    pub graph: MultiGraph,
}

impl Part {
    fn realize(marker: &str, m: &Matroid, class: PartClass) -> Result<Part> {
        let g = match class {
            PartClass::Graphic => is_graphic(m)?,
            PartClass::Cographic => is_cographic(m)?,
        };
        let graph = g.ok_or_else(|| Error::Precondition(format!("branch at `{marker}` is not {class:?}")))?;
        Ok(Part { marker: marker.to_string(), class, graph })
    }

    pub fn matroid(&self) -> Result<Matroid> {
        match self.class {
            PartClass::Graphic => self.graph.cycle_matroid(),
            PartClass::Cographic => self.graph.bond_matroid(),
        }
    }

    fn dual(&self) -> Part {
        Part { marker: self.marker.clone(), class: self.class.flip(), graph: self.graph.clone() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpineKind {
    /// `U_{1,n}`.
    Rank1,
    /// `U_{n-1,n}`.
    Corank1,
}

impl SpineKind {
    fn of(m: &Matroid) -> Option<SpineKind> {
        if m.len() < 3 {
            None
        } else if m.is_rank_one_uniform() {
            Some(SpineKind::Rank1)
        } else if m.is_corank_one_uniform() {
            Some(SpineKind::Corank1)
        } else {
            None
        }
    }

    fn flip(self) -> SpineKind {
        match self {
            SpineKind::Rank1 => SpineKind::Corank1,
            SpineKind::Corank1 => SpineKind::Rank1,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FanNode {
    pub matroid: Matroid,
    pub kind: SpineKind,
    /// Off-spine branches at this node.
    pub parts: Vec<Part>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComponentCertificate {
    pub elements: Vec<String>,
    pub certificate: Certificate,
}

/// Why a matroid is not delta-graphic.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum Evidence {
    /// Delta-graphic matroids are regular, hence binary.
    NotBinary,
    /// `M \ delete / contract` is isomorphic to the named excluded minor.
    ExcludedMinor { name: String, delete: Vec<String>, contract: Vec<String> },
    /// The canonical tree fails every one of (T1)–(T4).
    Audit { tree: LabelledTree, failures: Vec<String> },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Certificate {
    Graphic {
        graph: MultiGraph,
    },
    Cographic {
        graph: MultiGraph,
    },
    /// Every component is delta-graphic.
    Components {
        parts: Vec<ComponentCertificate>,
    },
    /// `M = M(graphic) ⊕₂ M*(cographic)` along `marker`; `condition` is `T1` or `T2`.
    TwoSumGC {
        condition: String,
        marker: String,
        graphic: MultiGraph,
        cographic: MultiGraph,
    },
    /// A hub `≅ M(W_k)` with branches: graphic ones on the circuit-hyperplane
    /// `rim`, cographic ones elsewhere.
    WheelDecomp {
        hub: Matroid,
        k: usize,
        rim: Vec<String>,
        parts: Vec<Part>,
    },
    FanDecomp {
        spine: Vec<FanNode>,
    },
    /// The component on `elements` is not delta-graphic.
    NotDeltaGraphic {
        elements: Vec<String>,
        evidence: Evidence,
    },
}

impl Certificate {
    pub fn is_positive(&self) -> bool {
        !matches!(self, Certificate::NotDeltaGraphic { .. })
    }

    /// Short name of the certificate kind.
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::Graphic { .. } => "Graphic",
            Certificate::Cographic { .. } => "Cographic",
            Certificate::Components { .. } => "Components",
            Certificate::TwoSumGC { .. } => "TwoSumGC",
            Certificate::WheelDecomp { .. } => "WheelDecomp",
            Certificate::FanDecomp { .. } => "FanDecomp",
            Certificate::NotDeltaGraphic { .. } => "NotDeltaGraphic",
        }
    }
}

/// A certificate as written to disk.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertificateDoc {
    pub schema: String,
    pub delta_graphic: bool,
    pub certificate: Certificate,
}

impl CertificateDoc {
    pub fn new(certificate: Certificate) -> CertificateDoc {
        CertificateDoc { schema: CERTIFICATE_SCHEMA.to_string(), delta_graphic: certificate.is_positive(), certificate }
    }
}

// ---------------------------------------------------------------------------
// Recognition

/// Decide delta-graphicness of `m`, with a certificate either way.
pub fn recognize(m: &Matroid) -> Result<Certificate> {
    let Some(b) = m.to_binary()? else {
        let evidence = match non_binary_witness(m) {
            Ok(Some(w)) => w,
            _ => Evidence::NotBinary,
        };
        return Ok(Certificate::NotDeltaGraphic { elements: m.labels().to_vec(), evidence });
    };
    let comps = b.components();
    if comps.len() <= 1 {
        return recognize_connected(&b);
    }
    let mut parts = Vec::with_capacity(comps.len());
    for c in comps {
        let sub = b.restrict(c);
        let cert = recognize_connected(&sub)?;
        if !cert.is_positive() {
            return Ok(cert);
        }
        parts.push(ComponentCertificate { elements: sub.labels().to_vec(), certificate: cert });
    }
    Ok(Certificate::Components { parts })
}

pub fn is_delta_graphic(m: &Matroid) -> Result<bool> {
    Ok(recognize(m)?.is_positive())
}

fn non_binary_witness(m: &Matroid) -> Result<Option<Evidence>> {
    let u24 = catalog::uniform(2, 4)?;
    Ok(has_minor(m, &u24)?.map(|w| Evidence::ExcludedMinor {
        name: "U(2,4)".into(),
        delete: m.labels_of(w.delete),
        contract: m.labels_of(w.contract),
    }))
}

const BINARY_OBSTRUCTIONS: [&str; 4] = ["F7", "F7*", "R10", "R12"];

fn recognize_connected(m: &Matroid) -> Result<Certificate> {
    if let Some(graph) = is_graphic(m)? {
        return Ok(Certificate::Graphic { graph });
    }
    if let Some(graph) = is_cographic(m)? {
        return Ok(Certificate::Cographic { graph });
    }
    let t = tree::canonical_decomposition(m)?;
    let elements = m.labels().to_vec();
    if t.len() == 1 {
        // 3-connected and neither graphic nor cographic.
        if m.len() <= caps::get().minor_scan {
            for name in BINARY_OBSTRUCTIONS {
                let n = catalog::catalog(name)?;
                if let Some(w) = has_minor(m, &n)? {
                    let evidence = Evidence::ExcludedMinor {
                        name: name.into(),
                        delete: m.labels_of(w.delete),
                        contract: m.labels_of(w.contract),
                    };
                    return Ok(Certificate::NotDeltaGraphic { elements, evidence });
                }
            }
        }
        let failures = vec!["3-connected, neither graphic nor cographic".to_string()];
        return Ok(Certificate::NotDeltaGraphic { elements, evidence: Evidence::Audit { tree: t, failures } });
    }
    let cls = Classes::new(&t)?;
    match tree_conditions(&t, &cls, m.labels())? {
        Ok(cert) => Ok(cert),
        Err(failures) => Ok(Certificate::NotDeltaGraphic { elements, evidence: Evidence::Audit { tree: t, failures } }),
    }
}

/// Node-wise graphic/cographic flags.
struct Classes {
    g: Vec<bool>,
    c: Vec<bool>,
}

impl Classes {
    fn new(t: &LabelledTree) -> Result<Classes> {
        let mut g = Vec::with_capacity(t.len());
        let mut c = Vec::with_capacity(t.len());
        for node in t.nodes() {
            let uniform = SpineKind::of(node).is_some();
            g.push(uniform || is_graphic(node)?.is_some());
            c.push(uniform || is_cographic(node)?.is_some());
        }
        Ok(Classes { g, c })
    }

    fn of(&self, s: &[usize]) -> (bool, bool) {
        (s.iter().all(|&v| self.g[v]), s.iter().all(|&v| self.c[v]))
    }
}

/// A branch of the tree at `v` through `marker`, with its classes.
struct Branch {
    marker: String,
    nodes: Vec<usize>,
    g: bool,
    c: bool,
}

fn branches(t: &LabelledTree, cls: &Classes, v: usize) -> Result<Vec<Branch>> {
    let mut out = Vec::new();
    for (_, marker) in t.neighbours(v) {
        let nodes = t.hanging(v, &marker)?;
        let (g, c) = cls.of(&nodes);
        out.push(Branch { marker, nodes, g, c });
    }
    Ok(out)
}

/// Indices `(i, j)`, `i != j`, of a graphic and a cographic branch.
fn mixed_pair(bs: &[&Branch]) -> Option<(usize, usize)> {
    for i in 0..bs.len() {
        for j in 0..bs.len() {
            if i != j && bs[i].g && bs[j].c {
                return Some((i, j));
            }
        }
    }
    None
}

fn uniform_on(labels: Vec<String>, kind: SpineKind) -> Result<Matroid> {
    let n = labels.len();
    let cols: Vec<u64> = match kind {
        SpineKind::Rank1 => vec![1; n],
        SpineKind::Corank1 => (0..n).map(|i| if i + 1 < n { bits::singleton(i) } else { bits::full(n - 1) }).collect(),
    };
    Matroid::from_columns(labels, &cols)
}

fn two_sum_certificate(condition: &str, marker: &str, mg: &Matroid, mc: &Matroid) -> Result<Certificate> {
    let graphic = is_graphic(mg)?.ok_or_else(|| Error::Precondition("graphic side is not graphic".into()))?;
    let cographic = is_cographic(mc)?.ok_or_else(|| Error::Precondition("cographic side is not cographic".into()))?;
    Ok(Certificate::TwoSumGC { condition: condition.into(), marker: marker.into(), graphic, cographic })
}

/// Try (T1)–(T4) in order; on failure return the audit lines.
fn tree_conditions(
    t: &LabelledTree,
    cls: &Classes,
    labels: &[String],
) -> Result<std::result::Result<Certificate, Vec<String>>> {
    if let Some(c) = check_t1(t, cls)? {
        return Ok(Ok(c));
    }
    if let Some(c) = check_t2(t, cls, labels)? {
        return Ok(Ok(c));
    }
    if let Some(c) = wheel_on(t, cls)? {
        return Ok(Ok(c));
    }
    if let Some(c) = fan_on(t, cls)? {
        return Ok(Ok(c));
    }
    Ok(Err(vec![
        "T1: no tree edge separates a graphic side from a cographic side".into(),
        "T2: no uniform node has only graphic/cographic branches with a graphic and a distinct cographic one".into(),
        "T3: no wheel hub with a circuit-hyperplane matching the branch classes".into(),
        "T4: no spine of uniform nodes satisfying (F1)-(F3)".into(),
    ]))
}

fn check_t1(t: &LabelledTree, cls: &Classes) -> Result<Option<Certificate>> {
    for e in t.edges() {
        let sa = t.side(&e.marker, e.a)?;
        let sb = t.side(&e.marker, e.b)?;
        let (ga, ca) = cls.of(&sa);
        let (gb, cb) = cls.of(&sb);
        let pick = if ga && cb {
            Some((sa, sb))
        } else if ca && gb {
            Some((sb, sa))
        } else {
            None
        };
        if let Some((sg, sc)) = pick {
            let mg = t.compose_nodes(&sg)?;
            let mc = t.compose_nodes(&sc)?;
            return two_sum_certificate("T1", &e.marker, &mg, &mc).map(Some);
        }
    }
    Ok(None)
}

fn check_t2(t: &LabelledTree, cls: &Classes, labels: &[String]) -> Result<Option<Certificate>> {
    for v in 0..t.len() {
        let node = t.node(v);
        let Some(kind) = SpineKind::of(node) else { continue };
        let bs = branches(t, cls, v)?;
        if bs.iter().any(|b| !b.g && !b.c) {
            continue;
        }
        let refs: Vec<&Branch> = bs.iter().collect();
        let Some((i, j)) = mixed_pair(&refs) else { continue };
        // Split ρ(v) = N1 ⊕₂ N2 with the graphic branches on N1.
        let mut x: Vec<usize> = Vec::new();
        let mut y: Vec<usize> = Vec::new();
        for (k, b) in bs.iter().enumerate() {
            if k == i || (k != j && b.g) {
                x.push(k);
            } else {
                y.push(k);
            }
        }
        let mut avoid: Vec<String> = labels.to_vec();
        avoid.extend(t.markers());
        let g = tree::fresh_marker(&avoid);
        let branch_markers: BTreeSet<&str> = bs.iter().map(|b| b.marker.as_str()).collect();
        let mut xl: Vec<String> = node.labels().iter().filter(|l| !branch_markers.contains(l.as_str())).cloned().collect();
        xl.extend(x.iter().map(|&k| bs[k].marker.clone()));
        xl.push(g.clone());
        let mut yl: Vec<String> = y.iter().map(|&k| bs[k].marker.clone()).collect();
        yl.push(g.clone());
        let mut mg = uniform_on(xl, kind)?;
        for &k in &x {
            mg = tree::two_sum(&mg, &t.compose_nodes(&bs[k].nodes)?, &bs[k].marker)?;
        }
        let mut mc = uniform_on(yl, kind)?;
        for &k in &y {
            mc = tree::two_sum(&mc, &t.compose_nodes(&bs[k].nodes)?, &bs[k].marker)?;
        }
        return two_sum_certificate("T2", &g, &mg, &mc).map(Some);
    }
    Ok(None)
}

/// The wheel realization of a hub `≅ M(W_k)`, `k >= 3`.
fn wheel_graph(hub: &Matroid) -> Result<Option<MultiGraph>> {
    let n = hub.len();
    if n < 6 || n % 2 == 1 || hub.rank() * 2 != n {
        return Ok(None);
    }
    let Some(g) = is_graphic(hub)? else { return Ok(None) };
    let g = g.without_isolated();
    Ok(match g.as_wheel() {
        Some((_, rim)) if rim.len() * 2 == n => Some(g),
        _ => None,
    })
}

/// (W1)/(W2) at `v`.
fn wheel_at(t: &LabelledTree, cls: &Classes, v: usize) -> Result<Option<Certificate>> {
    let hub = t.node(v);
    if wheel_graph(hub)?.is_none() {
        return Ok(None);
    }
    let bs = branches(t, cls, v)?;
    for c in hub.circuit_hyperplanes()? {
        let rim = hub.labels_of(c);
        let ok = bs.iter().all(|b| if rim.contains(&b.marker) { b.g } else { b.c });
        if !ok {
            continue;
        }
        let mut parts = Vec::with_capacity(bs.len());
        for b in &bs {
            let class = if rim.contains(&b.marker) { PartClass::Graphic } else { PartClass::Cographic };
            parts.push(Part::realize(&b.marker, &t.compose_nodes(&b.nodes)?, class)?);
        }
        return Ok(Some(Certificate::WheelDecomp { hub: hub.clone(), k: hub.len() / 2, rim, parts }));
    }
    Ok(None)
}

fn wheel_on(t: &LabelledTree, cls: &Classes) -> Result<Option<Certificate>> {
    for v in 0..t.len() {
        if let Some(c) = wheel_at(t, cls, v)? {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// Detect a wheel decomposition (T3) of a canonical tree.
pub fn detect_wheel_decomposition(t: &LabelledTree) -> Result<Option<Certificate>> {
    let cls = Classes::new(t)?;
    wheel_on(t, &cls)
}

/// Detect a fan decomposition (T4) of a canonical tree.
pub fn detect_fan_decomposition(t: &LabelledTree) -> Result<Option<Certificate>> {
    let cls = Classes::new(t)?;
    fan_on(t, &cls)
}

fn fan_on(t: &LabelledTree, cls: &Classes) -> Result<Option<Certificate>> {
    let kinds: Vec<Option<SpineKind>> = t.nodes().iter().map(SpineKind::of).collect();
    let adj: Vec<Vec<usize>> = (0..t.len()).map(|v| t.neighbours(v).into_iter().map(|(w, _)| w).collect()).collect();
    for a in 0..t.len() {
        if kinds[a].is_none() {
            continue;
        }
        // Depth-first over paths of uniform nodes starting at `a`.
        let mut stack: Vec<Vec<usize>> = vec![vec![a]];
        while let Some(path) = stack.pop() {
            if path.len() >= 2 {
                if let Some(c) = fan_with_spine(t, cls, &path, &kinds)? {
                    return Ok(Some(c));
                }
            }
            let last = *path.last().expect("non-empty");
            for &w in &adj[last] {
                if kinds[w].is_some() && !path.contains(&w) {
                    let mut p = path.clone();
                    p.push(w);
                    stack.push(p);
                }
            }
        }
    }
    Ok(None)
}

fn fan_with_spine(t: &LabelledTree, cls: &Classes, path: &[usize], kinds: &[Option<SpineKind>]) -> Result<Option<Certificate>> {
    let l = path.len();
    // Off-spine branches and their chosen classes, per spine node.
    let mut chosen: Vec<Vec<(Branch, PartClass)>> = Vec::with_capacity(l);
    for (pos, &v) in path.iter().enumerate() {
        let kind = kinds[v].expect("spine node is uniform");
        let spine_nb: Vec<usize> =
            [pos.checked_sub(1).map(|p| path[p]), path.get(pos + 1).copied()].into_iter().flatten().collect();
        let off: Vec<Branch> = branches(t, cls, v)?
            .into_iter()
            .filter(|b| {
                let e = t.edge_by_marker(&b.marker).expect("tree edge");
                let w = if e.a == v { e.b } else { e.a };
                !spine_nb.contains(&w)
            })
            .collect();
        let internal = pos > 0 && pos + 1 < l;
        let mut tags = Vec::with_capacity(off.len());
        if internal {
            let need = if kind == SpineKind::Corank1 { PartClass::Graphic } else { PartClass::Cographic };
            if off.iter().any(|b| if need == PartClass::Graphic { !b.g } else { !b.c }) {
                return Ok(None);
            }
            tags.resize(off.len(), need);
        } else {
            if off.iter().any(|b| !b.g && !b.c) {
                return Ok(None);
            }
            let mut t_: Vec<PartClass> =
                off.iter().map(|b| if b.g { PartClass::Graphic } else { PartClass::Cographic }).collect();
            if t.degree(v) == t.node(v).len() {
                // (F3): a graphic and a distinct cographic branch.
                let refs: Vec<&Branch> = off.iter().collect();
                let Some((i, j)) = mixed_pair(&refs) else { return Ok(None) };
                t_[i] = PartClass::Graphic;
                t_[j] = PartClass::Cographic;
            }
            tags = t_;
        }
        chosen.push(off.into_iter().zip(tags).collect());
    }
    let mut spine = Vec::with_capacity(l);
    for (pos, &v) in path.iter().enumerate() {
        let mut parts = Vec::new();
        for (b, class) in &chosen[pos] {
            parts.push(Part::realize(&b.marker, &t.compose_nodes(&b.nodes)?, *class)?);
        }
        spine.push(FanNode { matroid: t.node(v).clone(), kind: kinds[v].expect("uniform"), parts });
    }
    Ok(Some(Certificate::FanDecomp { spine }))
}

// ---------------------------------------------------------------------------
// Verification

/// Re-derive the claim of `c` about `m` from the certificate alone.
pub fn verify_certificate(m: &Matroid, c: &Certificate) -> bool {
    verify(m, c).unwrap_or(false)
}

fn verify(m: &Matroid, c: &Certificate) -> Result<bool> {
    match c {
        Certificate::Graphic { graph } => Ok(graph.cycle_matroid()?.same_as(m)),
        Certificate::Cographic { graph } => Ok(graph.bond_matroid()?.same_as(m)),
        Certificate::Components { parts } => {
            let mut seen = 0u64;
            let mut rank = 0;
            for p in parts {
                let s = m.set_of(&p.elements)?;
                if s & seen != 0 || bits::len(s) != p.elements.len() || !p.certificate.is_positive() {
                    return Ok(false);
                }
                seen |= s;
                let sub = m.restrict(s);
                rank += sub.rank();
                if !verify(&sub, &p.certificate)? {
                    return Ok(false);
                }
            }
            Ok(seen == m.ground() && rank == m.rank())
        }
        Certificate::TwoSumGC { marker, graphic, cographic, .. } => {
            let mg = graphic.cycle_matroid()?;
            let mc = cographic.bond_matroid()?;
            Ok(tree::two_sum(&mg, &mc, marker)?.same_as(m))
        }
        Certificate::WheelDecomp { hub, k, rim, parts } => verify_wheel(m, hub, *k, rim, parts),
        Certificate::FanDecomp { spine } => verify_fan(m, spine),
        Certificate::NotDeltaGraphic { elements, evidence } => verify_negative(m, elements, evidence),
    }
}

fn verify_wheel(m: &Matroid, hub: &Matroid, k: usize, rim: &[String], parts: &[Part]) -> Result<bool> {
    if k < 3 || hub.len() != 2 * k || wheel_graph(hub)?.is_none() {
        return Ok(false);
    }
    let c = hub.set_of(rim)?;
    if !hub.circuit_hyperplanes()?.contains(&c) {
        return Ok(false);
    }
    let mut used = BTreeSet::new();
    let mut acc = hub.clone();
    for p in parts {
        let want = if rim.contains(&p.marker) { PartClass::Graphic } else { PartClass::Cographic };
        if p.class != want || hub.try_index(&p.marker).is_none() || !used.insert(p.marker.clone()) {
            return Ok(false);
        }
        acc = tree::two_sum(&acc, &p.matroid()?, &p.marker)?;
    }
    Ok(acc.same_as(m))
}

/// Whether the canonical node of `part` holding `marker` is uniform of `kind`.
fn junction_is_bad(part: &Matroid, marker: &str, kind: SpineKind) -> Result<bool> {
    if !part.is_connected() {
        return Err(Error::Precondition("branch is disconnected".into()));
    }
    let t = tree::canonical_decomposition(part)?;
    let node = t
        .nodes()
        .iter()
        .find(|n| n.try_index(marker).is_some())
        .ok_or_else(|| Error::Label(format!("marker `{marker}` missing from branch")))?;
    Ok(SpineKind::of(node) == Some(kind))
}

fn verify_fan(m: &Matroid, spine: &[FanNode]) -> Result<bool> {
    let l = spine.len();
    if l < 2 {
        return Ok(false);
    }
    for (i, n) in spine.iter().enumerate() {
        if SpineKind::of(&n.matroid) != Some(n.kind) {
            return Ok(false);
        }
        if i > 0 && spine[i - 1].kind == n.kind {
            return Ok(false);
        }
    }
    // Spine markers: the label shared by consecutive nodes.
    let mut spine_markers: Vec<BTreeSet<String>> = vec![BTreeSet::new(); l];
    for i in 0..l - 1 {
        let shared: Vec<&String> =
            spine[i].matroid.labels().iter().filter(|x| spine[i + 1].matroid.try_index(x).is_some()).collect();
        if shared.len() != 1 {
            return Ok(false);
        }
        spine_markers[i].insert(shared[0].clone());
        spine_markers[i + 1].insert(shared[0].clone());
    }
    for (i, n) in spine.iter().enumerate() {
        let internal = i > 0 && i + 1 < l;
        let mut seen = BTreeSet::new();
        for p in &n.parts {
            if n.matroid.try_index(&p.marker).is_none() || spine_markers[i].contains(&p.marker) || !seen.insert(&p.marker) {
                return Ok(false);
            }
            if internal {
                let need = if n.kind == SpineKind::Corank1 { PartClass::Graphic } else { PartClass::Cographic };
                if p.class != need {
                    return Ok(false);
                }
            }
            if junction_is_bad(&p.matroid()?, &p.marker, n.kind)? {
                return Ok(false);
            }
        }
        let degree = spine_markers[i].len() + n.parts.len();
        if !internal && degree == n.matroid.len() {
            let g = n.parts.iter().any(|p| p.class == PartClass::Graphic);
            let c = n.parts.iter().any(|p| p.class == PartClass::Cographic);
            if !(g && c) {
                return Ok(false);
            }
        }
    }
    let mut acc = spine[0].matroid.clone();
    for i in 1..l {
        let marker = spine_markers[i - 1].intersection(&spine_markers[i]).next().cloned().expect("spine marker");
        acc = tree::two_sum(&acc, &spine[i].matroid, &marker)?;
    }
    for n in spine {
        for p in &n.parts {
            acc = tree::two_sum(&acc, &p.matroid()?, &p.marker)?;
        }
    }
    Ok(acc.same_as(m))
}

fn verify_negative(m: &Matroid, elements: &[String], evidence: &Evidence) -> Result<bool> {
    // Evidence refers to the restriction to `elements`; a minor of that is a
    // minor of `m`.
    let s = m.set_of(elements)?;
    let sub = m.restrict(s);
    let t = match evidence {
        Evidence::NotBinary => return Ok(sub.to_binary()?.is_none()),
        Evidence::ExcludedMinor { name, delete, contract } => {
            let n = catalog::catalog(name)?;
            let allowed = ["U(2,4)"].contains(&name.as_str()) || BINARY_OBSTRUCTIONS.contains(&name.as_str());
            return Ok(allowed && is_isomorphic(&sub.minor_labels(delete, contract)?, &n)?);
        }
        Evidence::Audit { tree, .. } => tree,
    };
    if sub.rank() + m.restrict(m.ground() & !s).rank() != m.rank() || !sub.is_connected() || sub.is_empty() {
        return Ok(false);
    }
    if !t.compose()?.same_as(&sub) || !t.is_canonical()? {
        return Ok(false);
    }
    if is_graphic(&sub)?.is_some() || is_cographic(&sub)?.is_some() {
        return Ok(false);
    }
    if t.len() == 1 {
        // A 3-connected matroid is delta-graphic iff graphic or cographic.
        return Ok(true);
    }
    let cls = Classes::new(t)?;
    Ok(tree_conditions(t, &cls, sub.labels())?.is_err())
}

// ---------------------------------------------------------------------------
// Generalized wheels

/// One 2-sum of a generalized wheel: `part` glued at `basepoint`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Attachment {
    pub basepoint: String,
    pub part: Matroid,
    pub class: PartClass,
}

/// `M(W_k) \ delete / contract` with 2-sum attachments at its elements.
///
/// `labels[j]` names wheel edge `e_{j+1}`: odd `e` are rim edges
/// `t_i t_{i+1}`, even ones spokes `s t_{i+1}`. Rim basepoints carry graphic
/// parts and spoke basepoints cographic ones.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GeneralizedWheelSpec {
    pub k: usize,
    pub labels: Vec<String>,
    pub delete: Vec<String>,
    pub contract: Vec<String>,
    pub attachments: Vec<Attachment>,
}

impl GeneralizedWheelSpec {
    /// The bare wheel `M(W_k)` with its catalog labels `e1..e{2k}`.
    pub fn bare(k: usize) -> GeneralizedWheelSpec {
        GeneralizedWheelSpec {
            k,
            labels: (1..=2 * k).map(|i| format!("e{i}")).collect(),
            delete: Vec::new(),
            contract: Vec::new(),
            attachments: Vec::new(),
        }
    }

    pub fn is_rim(&self, label: &str) -> Option<bool> {
        self.labels.iter().position(|l| l == label).map(|j| j % 2 == 0)
    }

    /// A spec for the dual matroid: `M*(W_k) ≅ M(W_k)` with rim and spokes
    /// exchanged (edge `e_j` of the dual wheel is edge `e_{j+1}` of the original).
    pub fn dual(&self) -> GeneralizedWheelSpec {
        let n = self.labels.len();
        GeneralizedWheelSpec {
            k: self.k,
            labels: (0..n).map(|j| self.labels[(j + 1) % n].clone()).collect(),
            delete: self.contract.clone(),
            contract: self.delete.clone(),
            attachments: self
                .attachments
                .iter()
                .map(|a| Attachment { basepoint: a.basepoint.clone(), part: a.part.dual(), class: a.class.flip() })
                .collect(),
        }
    }
}

/// Compose a generalized wheel.
pub fn generalized_wheel(spec: &GeneralizedWheelSpec) -> Result<Matroid> {
    if spec.k < 3 || spec.labels.len() != 2 * spec.k {
        return Err(Error::Argument(format!("a generalized wheel needs k >= 3 and 2k labels, got k = {}", spec.k)));
    }
    let rename: HashMap<String, String> =
        spec.labels.iter().enumerate().map(|(j, l)| (format!("e{}", j + 1), l.clone())).collect();
    let w = graph::wheel(spec.k)?.relabel_edges(&rename).cycle_matroid()?;
    let mut acc = w.minor_labels(&spec.delete, &spec.contract)?;
    let mut used = BTreeSet::new();
    for a in &spec.attachments {
        let rim = spec.is_rim(&a.basepoint).ok_or_else(|| Error::Label(format!("`{}` is not a wheel edge", a.basepoint)))?;
        if !used.insert(a.basepoint.as_str()) || acc.try_index(&a.basepoint).is_none() {
            return Err(Error::Argument(format!("basepoint `{}` is not available", a.basepoint)));
        }
        let want = if rim { PartClass::Graphic } else { PartClass::Cographic };
        if a.class != want {
            let side = if rim { "rim" } else { "spoke" };
            return Err(Error::Argument(format!("{side} basepoint `{}` carries a {:?} part", a.basepoint, a.class)));
        }
        let real = match a.class {
            PartClass::Graphic => is_graphic(&a.part)?.is_some(),
            PartClass::Cographic => is_cographic(&a.part)?.is_some(),
        };
        if !real {
            return Err(Error::Argument(format!("part at `{}` is not {:?}", a.basepoint, a.class)));
        }
        acc = tree::two_sum(&acc, &a.part, &a.basepoint)?;
    }
    Ok(acc)
}

/// A generalized-wheel construction of the connected matroid `m`, when `m` is
/// delta-graphic.
pub fn extract_generalized_wheel(m: &Matroid) -> Result<Option<GeneralizedWheelSpec>> {
    if !m.is_connected() {
        return Err(Error::Precondition("extraction needs a connected matroid".into()));
    }
    let cert = recognize(m)?;
    spec_from_certificate(m, &cert)
}

struct Fresh(Vec<String>);

impl Fresh {
    fn next(&mut self) -> String {
        let l = tree::fresh_marker(&self.0);
        self.0.push(l.clone());
        l
    }
}

/// `W_3` with `e1 = t1t2` and `e2 = st2` made parallel (contract `e6 = st1`,
/// delete the rest), plus the two parts at `e1` and `e2`.
fn parallel_pair_spec(fresh: &mut Fresh, rim: String, spoke: String, attachments: Vec<Attachment>) -> GeneralizedWheelSpec {
    let extra: Vec<String> = (0..4).map(|_| fresh.next()).collect();
    GeneralizedWheelSpec {
        k: 3,
        labels: vec![rim, spoke, extra[0].clone(), extra[1].clone(), extra[2].clone(), extra[3].clone()],
        delete: extra[..3].to_vec(),
        contract: vec![extra[3].clone()],
        attachments,
    }
}

fn spec_from_certificate(m: &Matroid, cert: &Certificate) -> Result<Option<GeneralizedWheelSpec>> {
    let mut fresh = Fresh(m.labels().to_vec());
    let spec = match cert {
        Certificate::NotDeltaGraphic { .. } | Certificate::Components { .. } => return Ok(None),
        Certificate::Graphic { .. } | Certificate::Cographic { .. } => {
            let graphic = matches!(cert, Certificate::Graphic { .. });
            match m.len() {
                0 => {
                    let mut s = GeneralizedWheelSpec::bare(3);
                    s.labels = (0..6).map(|_| fresh.next()).collect();
                    s.delete = s.labels.clone();
                    s
                }
                1 => {
                    let mut s = GeneralizedWheelSpec::bare(3);
                    s.labels = (0..6).map(|_| fresh.next()).collect();
                    s.labels[0] = m.label(0).to_string();
                    if m.is_loop(0) {
                        // Contracting both spokes at t1 and t2 turns e1 into a loop.
                        s.contract = vec![s.labels[1].clone(), s.labels[5].clone()];
                        s.delete = vec![s.labels[2].clone(), s.labels[3].clone(), s.labels[4].clone()];
                    } else {
                        s.delete = s.labels[1..].to_vec();
                    }
                    s
                }
                _ => {
                    let x = m.label(0).to_string();
                    let b = fresh.next();
                    let part = m.rename(&x, &b)?;
                    if graphic {
                        let a = Attachment { basepoint: b.clone(), part, class: PartClass::Graphic };
                        parallel_pair_spec(&mut fresh, b, x, vec![a])
                    } else {
                        let a = Attachment { basepoint: b.clone(), part, class: PartClass::Cographic };
                        parallel_pair_spec(&mut fresh, x, b, vec![a])
                    }
                }
            }
        }
        Certificate::TwoSumGC { marker, graphic, cographic, .. } => {
            let a = fresh.next();
            let b = fresh.next();
            let pg = graphic.cycle_matroid()?.rename(marker, &a)?;
            let pc = cographic.bond_matroid()?.rename(marker, &b)?;
            let atts = vec![
                Attachment { basepoint: a.clone(), part: pg, class: PartClass::Graphic },
                Attachment { basepoint: b.clone(), part: pc, class: PartClass::Cographic },
            ];
            parallel_pair_spec(&mut fresh, a, b, atts)
        }
        Certificate::WheelDecomp { hub, k, rim, parts } => wheel_spec(hub, *k, rim, parts)?,
        Certificate::FanDecomp { spine } => {
            for n in spine {
                fresh.0.extend(n.matroid.labels().iter().cloned());
                for p in &n.parts {
                    fresh.0.extend(p.graph.edge_labels());
                }
            }
            fan_spec(spine, &mut fresh)?
        }
    };
    Ok(Some(spec))
}

fn wheel_spec(hub: &Matroid, k: usize, rim: &[String], parts: &[Part]) -> Result<GeneralizedWheelSpec> {
    let g = wheel_graph(hub)?.ok_or_else(|| Error::Precondition("hub is not a wheel".into()))?;
    let is_rim: Vec<bool> = g.edges().iter().map(|e| rim.contains(&e.label)).collect();
    let n = g.vertex_count();
    let mut touched = vec![false; n];
    for (e, &r) in g.edges().iter().zip(&is_rim) {
        if r {
            touched[e.u] = true;
            touched[e.v] = true;
        }
    }
    let s = (0..n).find(|&v| !touched[v]).ok_or_else(|| Error::Precondition("rim covers every vertex".into()))?;
    // Walk the rim cycle t1, t2, ...
    let edge_between = |a: usize, b: usize, rim_edge: bool| {
        g.edges()
            .iter()
            .zip(&is_rim)
            .find(|(e, &r)| r == rim_edge && ((e.u == a && e.v == b) || (e.u == b && e.v == a)))
            .map(|(e, _)| e.label.clone())
    };
    let start = (0..n).find(|&v| v != s).expect("rim vertex");
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while order.len() < k {
        let next = g
            .edges()
            .iter()
            .zip(&is_rim)
            .filter(|(e, &r)| r && (e.u == cur || e.v == cur))
            .map(|(e, _)| e.other(cur))
            .find(|&w| w != prev && !order.contains(&w))
            .ok_or_else(|| Error::Precondition("rim is not a cycle".into()))?;
        prev = cur;
        cur = next;
        order.push(cur);
    }
    let mut labels = Vec::with_capacity(2 * k);
    for i in 0..k {
        let a = order[i];
        let b = order[(i + 1) % k];
        labels.push(edge_between(a, b, true).ok_or_else(|| Error::Precondition("missing rim edge".into()))?);
        labels.push(edge_between(s, b, false).ok_or_else(|| Error::Precondition("missing spoke".into()))?);
    }
    let attachments = parts
        .iter()
        .map(|p| Ok(Attachment { basepoint: p.marker.clone(), part: p.matroid()?, class: p.class }))
        .collect::<Result<Vec<_>>>()?;
    Ok(GeneralizedWheelSpec { k, labels, delete: Vec::new(), contract: Vec::new(), attachments })
}

/// Fan decomposition with spine `u_1..u_ℓ` to `M(Π_{ℓ+2}) ⊕₂ M_1 ⊕₂ .. ⊕₂ M_{ℓ+2}`,
/// where `M_i = N_i ⊕₂ (branches)` and `N_i` is uniform on `Γ_i + e_i`.
fn fan_spec(spine: &[FanNode], fresh: &mut Fresh) -> Result<GeneralizedWheelSpec> {
    if spine[0].kind == SpineKind::Corank1 {
        let dual: Vec<FanNode> = spine
            .iter()
            .map(|n| FanNode { matroid: n.matroid.dual(), kind: n.kind.flip(), parts: n.parts.iter().map(Part::dual).collect() })
            .collect();
        return Ok(fan_spec(&dual, fresh)?.dual());
    }
    let l = spine.len();
    let mut spine_markers: BTreeSet<String> = BTreeSet::new();
    for i in 0..l - 1 {
        for x in spine[i].matroid.labels() {
            if spine[i + 1].matroid.try_index(x).is_some() {
                spine_markers.insert(x.clone());
            }
        }
    }
    let part_of = |n: &FanNode, x: &str| n.parts.iter().find(|p| p.marker == x).cloned();
    let off = |n: &FanNode| -> Vec<String> { n.matroid.labels().iter().filter(|x| !spine_markers.contains(*x)).cloned().collect() };
    // (X_j, Y_j) at the two ends.
    let split_end = |n: &FanNode| -> Result<(Vec<String>, Vec<String>)> {
        let mut x = Vec::new();
        let mut y = Vec::new();
        let mut plain = Vec::new();
        for l in off(n) {
            match part_of(n, &l) {
                Some(p) if p.class == PartClass::Graphic => x.push(l),
                Some(_) => y.push(l),
                None => plain.push(l),
            }
        }
        if x.is_empty() {
            x.push(plain.pop().ok_or_else(|| Error::Precondition("end node cannot be split".into()))?);
        }
        if y.is_empty() {
            y.push(plain.pop().ok_or_else(|| Error::Precondition("end node cannot be split".into()))?);
        }
        x.extend(plain);
        Ok((x, y))
    };
    let (x1, y1) = split_end(&spine[0])?;
    let (xl, yl) = split_end(&spine[l - 1])?;
    // Γ_i with the spine node it comes from.
    let mut gammas: Vec<(Vec<String>, usize)> = vec![(x1, 0), (y1, 0)];
    for (i, node) in spine.iter().enumerate().take(l - 1).skip(1) {
        gammas.push((off(node), i));
    }
    if (l + 1) % 2 == 1 {
        gammas.push((xl, l - 1));
        gammas.push((yl, l - 1));
    } else {
        gammas.push((yl, l - 1));
        gammas.push((xl, l - 1));
    }
    let p = l + 2;
    let k = p / 2 + 1;
    let labels: Vec<String> = (0..2 * k).map(|_| fresh.next()).collect();
    let (delete, contract) =
        if p % 2 == 1 { (Vec::new(), vec![labels[p].clone()]) } else { (vec![labels[p].clone()], vec![labels[p + 1].clone()]) };
    let mut attachments = Vec::with_capacity(p);
    for (i, (gamma, src)) in gammas.into_iter().enumerate() {
        let node = &spine[src];
        let e = labels[i].clone();
        let mut ground = gamma.clone();
        ground.push(e.clone());
        let mut part = uniform_on(ground, node.kind)?;
        for x in &gamma {
            if let Some(pp) = part_of(node, x) {
                part = tree::two_sum(&part, &pp.matroid()?, x)?;
            }
        }
        let class = if i % 2 == 0 { PartClass::Graphic } else { PartClass::Cographic };
        attachments.push(Attachment { basepoint: e, part, class });
    }
    Ok(GeneralizedWheelSpec { k, labels, delete, contract, attachments })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k33() -> Matroid {
        catalog::k33()
    }

    fn tagged(m: &Matroid, tag: &str) -> Matroid {
        let map: HashMap<String, String> = m.labels().iter().map(|l| (l.clone(), format!("{tag}{l}"))).collect();
        m.relabel(&map).unwrap()
    }

    #[test]
    fn basics() {
        assert!(matches!(recognize(&catalog::k5()).unwrap(), Certificate::Graphic { .. }));
        assert!(matches!(recognize(&catalog::k5().dual()).unwrap(), Certificate::Cographic { .. }));
        let r = recognize(&catalog::r10()).unwrap();
        assert!(!r.is_positive());
        assert!(verify_certificate(&catalog::r10(), &r));
        let u = recognize(&catalog::uniform(2, 4).unwrap()).unwrap();
        assert!(!u.is_positive());
        assert!(verify_certificate(&catalog::uniform(2, 4).unwrap(), &u));
    }

    #[test]
    fn graphic_plus_cographic() {
        let a = tagged(&k33(), "x").rename("xa1b1", "g").unwrap();
        let b = tagged(&k33().dual(), "y").rename("ya1b1", "g").unwrap();
        let m = tree::two_sum(&a, &b, "g").unwrap();
        let c = recognize(&m).unwrap();
        assert!(matches!(c, Certificate::TwoSumGC { .. }), "{}", c.kind());
        assert!(verify_certificate(&m, &c));
        let spec = extract_generalized_wheel(&m).unwrap().unwrap();
        assert!(generalized_wheel(&spec).unwrap().same_as(&m));
    }

    #[test]
    fn spec_duality() {
        let spec = GeneralizedWheelSpec::bare(4);
        let w = generalized_wheel(&spec).unwrap();
        assert!(generalized_wheel(&spec.dual()).unwrap().same_as(&w.dual()));
    }

    #[test]
    fn pi_chain_matches_catalog_labels() {
        // The spine chain N'_1 ⊕₂ .. ⊕₂ N'_ℓ of a fan is M(Π_{ℓ+2}).
        for l in 2..=5usize {
            let p = l + 2;
            let k = p / 2 + 1;
            let mut spec = GeneralizedWheelSpec::bare(k);
            if p % 2 == 1 {
                spec.contract = vec![format!("e{}", p + 1)];
            } else {
                spec.delete = vec![format!("e{}", p + 1)];
                spec.contract = vec![format!("e{}", p + 2)];
            }
            assert!(generalized_wheel(&spec).unwrap().same_as(&catalog::pi(p).unwrap()));
        }
    }
}
