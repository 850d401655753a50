//! Delta-matroids as explicit set systems, fundamental graphs and pivot-minors.

use crate::bits::{self, Set};
use crate::caps;
use crate::error::{Error, Result};
use crate::gf2::Gf2Matrix;
use crate::graph::MultiGraph;
use crate::matroid::Matroid;
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, HashSet, VecDeque};

/// A ground set with a family of feasible subsets (sorted, deduplicated).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetSystem {
    ground: Vec<String>,
    feasible: Vec<Set>,
}

impl SetSystem {
    pub fn new(ground: Vec<String>, feasible: Vec<Set>) -> Result<SetSystem> {
        caps::check("ground set", bits::MAX_ELEMENTS, ground.len())?;
        let full = bits::full(ground.len());
        if feasible.is_empty() {
            return Err(Error::Argument("feasible family must be nonempty".into()));
        }
        if feasible.iter().any(|f| f & !full != 0) {
            return Err(Error::Argument("feasible set outside the ground set".into()));
        }
        let mut seen = HashSet::new();
        if !ground.iter().all(|l| seen.insert(l.as_str())) {
            return Err(Error::Label("duplicate ground label".into()));
        }
        let mut feasible = feasible;
        feasible.sort_unstable();
        feasible.dedup();
        Ok(SetSystem { ground, feasible })
    }

    /// Build from labelled feasible sets.
    pub fn from_labels<S: AsRef<str>>(ground: &[S], feasible: &[Vec<S>]) -> Result<SetSystem> {
        let ground: Vec<String> = ground.iter().map(|s| s.as_ref().to_string()).collect();
        let mut fam = Vec::new();
        for f in feasible {
            let mut s = 0;
            for l in f {
                let i = ground
                    .iter()
                    .position(|g| g == l.as_ref())
                    .ok_or_else(|| Error::Label(format!("unknown element `{}`", l.as_ref())))?;
                s |= bits::singleton(i);
            }
            fam.push(s);
        }
        SetSystem::new(ground, fam)
    }

    /// The base family of a matroid.
    pub fn from_matroid(m: &Matroid) -> Result<SetSystem> {
        SetSystem::new(m.labels().to_vec(), m.bases()?)
    }

    /// `F(A) △ x` for a symmetric matrix `a`.
    pub fn from_matrix(a: &Gf2Matrix, x: Set) -> Result<SetSystem> {
        let f = a.nonsingular_family()?;
        SetSystem::new(a.col_labels().to_vec(), f.into_iter().map(|s| s ^ x).collect())
    }

    pub fn ground(&self) -> &[String] {
        &self.ground
    }

    pub fn feasible(&self) -> &[Set] {
        &self.feasible
    }

    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ground.is_empty()
    }

    pub fn universe(&self) -> Set {
        bits::full(self.len())
    }

    pub fn is_feasible(&self, f: Set) -> bool {
        self.feasible.binary_search(&f).is_ok()
    }

    pub fn index(&self, label: &str) -> Result<usize> {
        self.ground
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::Label(format!("unknown element `{label}`")))
    }

    pub fn set_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<Set> {
        let mut s = 0;
        for l in labels {
            s |= bits::singleton(self.index(l.as_ref())?);
        }
        Ok(s)
    }

    pub fn labels_of(&self, s: Set) -> Vec<String> {
        bits::iter(s).map(|i| self.ground[i].clone()).collect()
    }

    /// Symmetric exchange, checked over every `(X, Y, x)`.
    pub fn is_delta_matroid(&self) -> bool {
        for &x in &self.feasible {
            for &y in &self.feasible {
                let d = x ^ y;
                for e in bits::iter(d) {
                    let ok = bits::iter(d).any(|f| self.is_feasible(x ^ (bits::singleton(e) | bits::singleton(f))));
                    if !ok {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn twist(&self, x: Set) -> SetSystem {
        let x = x & self.universe();
        let mut f: Vec<Set> = self.feasible.iter().map(|s| s ^ x).collect();
        f.sort_unstable();
        SetSystem { ground: self.ground.clone(), feasible: f }
    }

    /// `M \ x`: feasible sets avoiding `x`, on the ground set `V - x`.
    pub fn delete_set(&self, x: Set) -> Result<SetSystem> {
        let keep = self.universe() & !x;
        let f: Vec<Set> = self.feasible.iter().filter(|s| *s & x == 0).map(|s| bits::compress(*s, keep)).collect();
        if f.is_empty() {
            return Err(Error::Precondition("deletion leaves no feasible set".into()));
        }
        SetSystem::new(bits::iter(keep).map(|i| self.ground[i].clone()).collect(), f)
    }

    /// `M △ twist \ delete`.
    pub fn dm_minor(&self, twist: Set, delete: Set) -> Result<SetSystem> {
        self.twist(twist).delete_set(delete)
    }

    pub fn is_even(&self) -> bool {
        let p = self.feasible[0].count_ones() % 2;
        self.feasible.iter().all(|f| f.count_ones() % 2 == p)
    }

    /// `G_{M,F}`.
    pub fn fundamental_graph(&self, f: Set) -> Result<FundamentalGraph> {
        if !self.is_feasible(f) {
            return Err(Error::Argument("fundamental graph needs a feasible set".into()));
        }
        let n = self.len();
        let mut adj = vec![0u64; n];
        let mut loops = 0;
        for u in 0..n {
            if self.is_feasible(f ^ bits::singleton(u)) {
                loops |= bits::singleton(u);
            }
            for v in u + 1..n {
                if self.is_feasible(f ^ bits::singleton(u) ^ bits::singleton(v)) {
                    adj[u] |= bits::singleton(v);
                    adj[v] |= bits::singleton(u);
                }
            }
        }
        Ok(FundamentalGraph { graph: SimpleGraph { labels: self.ground.clone(), adj }, loops })
    }

    /// A separation `(V1, V2)` of an even delta-matroid: the component of the first
    /// element in a fundamental graph against the rest.
    pub fn find_separation(&self) -> Result<Option<(Set, Set)>> {
        if !self.is_even() {
            return Err(Error::Precondition("separation test needs an even delta-matroid".into()));
        }
        if self.len() < 2 {
            return Ok(None);
        }
        let g = self.fundamental_graph(self.feasible[0])?;
        let comps = g.graph.components();
        if comps.len() < 2 {
            return Ok(None);
        }
        Ok(Some((comps[0], self.universe() & !comps[0])))
    }

    pub fn is_connected_dm(&self) -> Result<bool> {
        Ok(self.find_separation()?.is_none())
    }

    /// Recover `F = B(M) △ X` when the system is a twisted matroid.
    ///
    /// The fundamental graph at the least feasible set must be loop-free and
    /// bipartite; on each of its components one colour class becomes part of a
    /// basis, choosing the class that keeps `X` smallest (ties: numerically
    /// smaller `X`).
    pub fn is_twisted_matroid(&self) -> Result<Option<TwistedMatroid>> {
        let f0 = self.feasible[0];
        let g = self.fundamental_graph(f0)?;
        if g.loops != 0 {
            return Ok(None);
        }
        let Some(colour) = g.graph.two_colouring() else { return Ok(None) };
        let mut basis = 0u64;
        for comp in g.graph.components() {
            let side = comp & colour;
            let other = comp & !colour;
            let xa = (f0 ^ side) & comp;
            let xb = (f0 ^ other) & comp;
            let pick = if (bits::len(xa), xa) <= (bits::len(xb), xb) { side } else { other };
            basis |= pick;
        }
        let twist = f0 ^ basis;
        let bases: Vec<Set> = self.feasible.iter().map(|f| f ^ twist).collect();
        let r = bits::len(bases[0]);
        if bases.iter().any(|b| bits::len(*b) != r) {
            return Ok(None);
        }
        let Ok(m) = Matroid::from_bases(self.ground.clone(), bases) else { return Ok(None) };
        let m = m.to_binary()?.unwrap_or(m);
        Ok(Some(TwistedMatroid { matroid: m, twist }))
    }

    /// A minor isomorphic to `D1` or `MK3`, present exactly when the system is
    /// not a twisted matroid.
    ///
    /// For every `S` of size 1 or 3 and every pattern `P ⊆ V - S`, the family
    /// `{F ∩ S : F - S = P}` is what survives in `M △ P \ (V - S)`.
    pub fn find_d1_or_mk3_minor(&self) -> Option<DeltaMinorWitness> {
        let all = self.universe();
        for size in [1usize, 3] {
            for s in bits::subsets_of_size(all, size) {
                let mut groups: HashMap<Set, Vec<Set>> = HashMap::new();
                for &f in &self.feasible {
                    groups.entry(f & !s).or_default().push(f & s);
                }
                let mut patterns: Vec<&Set> = groups.keys().collect();
                patterns.sort_unstable();
                for p in patterns {
                    let mut r = groups[p].clone();
                    r.sort_unstable();
                    r.dedup();
                    if size == 1 && r.len() == 2 {
                        return Some(DeltaMinorWitness { kind: DeltaMinorKind::D1, twist: *p, delete: all & !s });
                    }
                    if size == 3 && r.len() == 4 {
                        let parity: Vec<u32> = r.iter().map(|x| x.count_ones() % 2).collect();
                        if parity.iter().all(|&q| q == parity[0]) {
                            let fix = if parity[0] == 0 { 0 } else { s & s.wrapping_neg() };
                            return Some(DeltaMinorWitness { kind: DeltaMinorKind::MK3, twist: *p | fix, delete: all & !s });
                        }
                    }
                }
            }
        }
        None
    }

    /// Literally `D1` on its own ground set.
    pub fn is_d1(&self) -> bool {
        self.len() == 1 && self.feasible == [0, 1]
    }

    /// Literally `MK3` on its own ground set.
    pub fn is_mk3(&self) -> bool {
        self.len() == 3 && self.feasible == [0b000, 0b011, 0b101, 0b110]
    }
}

/// `F = B(matroid) △ twist`. The pair `(matroid*, E - twist)` describes the same system.
#[derive(Clone, Debug)]
pub struct TwistedMatroid {
    pub matroid: Matroid,
    pub twist: Set,
}

impl TwistedMatroid {
    pub fn dual_form(&self) -> TwistedMatroid {
        TwistedMatroid { matroid: self.matroid.dual(), twist: self.matroid.ground() & !self.twist }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DeltaMinorKind {
    D1,
    MK3,
}

/// The minor `M △ twist \ delete` is `D1` or `MK3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaMinorWitness {
    pub kind: DeltaMinorKind,
    pub twist: Set,
    pub delete: Set,
}

/// Simple graph as adjacency words.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SimpleGraph {
    pub labels: Vec<String>,
    pub adj: Vec<u64>,
}

/// `G_{M,F}` with loop flags.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FundamentalGraph {
    pub graph: SimpleGraph,
    pub loops: Set,
}

impl SimpleGraph {
    pub fn new(labels: Vec<String>, edges: &[(usize, usize)]) -> Result<SimpleGraph> {
        let n = labels.len();
        caps::check("graph vertices", bits::MAX_ELEMENTS, n)?;
        let mut adj = vec![0u64; n];
        for &(u, v) in edges {
            if u == v || u >= n || v >= n {
                return Err(Error::Argument(format!("bad edge ({u}, {v})")));
            }
            adj[u] |= bits::singleton(v);
            adj[v] |= bits::singleton(u);
        }
        Ok(SimpleGraph { labels, adj })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        bits::contains(self.adj[u], v)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| bits::len(*a)).sum::<usize>() / 2
    }

    pub fn index(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::Label(format!("unknown vertex `{label}`")))
    }

    /// Vertex sets of the components, ordered by least member.
    pub fn components(&self) -> Vec<Set> {
        let mut left = bits::full(self.len());
        let mut out = Vec::new();
        while left != 0 {
            let mut comp = left & left.wrapping_neg();
            loop {
                let grow = bits::iter(comp).fold(comp, |a, v| a | self.adj[v]);
                if grow == comp {
                    break;
                }
                comp = grow;
            }
            out.push(comp);
            left &= !comp;
        }
        out
    }

    /// One colour class of a proper 2-colouring, if the graph is bipartite.
    pub fn two_colouring(&self) -> Option<Set> {
        let n = self.len();
        let mut colour = vec![u8::MAX; n];
        for s in 0..n {
            if colour[s] != u8::MAX {
                continue;
            }
            colour[s] = 0;
            let mut q = VecDeque::from([s]);
            while let Some(x) = q.pop_front() {
                for y in bits::iter(self.adj[x]) {
                    if colour[y] == u8::MAX {
                        colour[y] = 1 - colour[x];
                        q.push_back(y);
                    } else if colour[y] == colour[x] {
                        return None;
                    }
                }
            }
        }
        Some((0..n).filter(|&v| colour[v] == 0).fold(0, |a, v| a | bits::singleton(v)))
    }

    pub fn adjacency_matrix(&self) -> Gf2Matrix {
        Gf2Matrix::new(self.labels.clone(), self.labels.clone(), self.adj.clone()).expect("square")
    }

    /// Induced subgraph on `keep`.
    pub fn induced(&self, keep: Set) -> SimpleGraph {
        SimpleGraph {
            labels: bits::iter(keep).map(|i| self.labels[i].clone()).collect(),
            adj: bits::iter(keep).map(|i| bits::compress(self.adj[i], keep)).collect(),
        }
    }

    /// Vertex bijection `map` (vertex `i` ↦ `map[i]` of `other`) preserving adjacency.
    pub fn find_isomorphism(&self, other: &SimpleGraph) -> Option<Vec<usize>> {
        let n = self.len();
        if n != other.len() || self.edge_count() != other.edge_count() {
            return None;
        }
        let deg = |g: &SimpleGraph, v: usize| bits::len(g.adj[v]);
        let mut ds: Vec<usize> = (0..n).map(|v| deg(self, v)).collect();
        let mut dt: Vec<usize> = (0..n).map(|v| deg(other, v)).collect();
        let (a, b) = (ds.clone(), dt.clone());
        ds.sort_unstable();
        dt.sort_unstable();
        if ds != dt {
            return None;
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| std::cmp::Reverse(a[v]));
        let mut map = vec![usize::MAX; n];
        fn go(g: &SimpleGraph, h: &SimpleGraph, order: &[usize], k: usize, map: &mut Vec<usize>, used: u64, a: &[usize], b: &[usize]) -> bool {
            if k == order.len() {
                return true;
            }
            let v = order[k];
            for w in 0..h.len() {
                if bits::contains(used, w) || a[v] != b[w] {
                    continue;
                }
                let ok = order[..k].iter().all(|&u| g.has_edge(u, v) == h.has_edge(map[u], w));
                if ok {
                    map[v] = w;
                    if go(g, h, order, k + 1, map, used | bits::singleton(w), a, b) {
                        return true;
                    }
                }
            }
            map[v] = usize::MAX;
            false
        }
        if go(self, other, &order, 0, &mut map, 0, &a, &b) {
            Some(map)
        } else {
            None
        }
    }
}

/// `G ∧ uv`, computed as the principal pivot `A_G * {u, v}`.
pub fn pivot_graph(g: &SimpleGraph, u: usize, v: usize) -> Result<SimpleGraph> {
    if u >= g.len() || v >= g.len() || !g.has_edge(u, v) {
        return Err(Error::Argument("pivoting needs an edge".into()));
    }
    let a = g.adjacency_matrix().pivot(bits::singleton(u) | bits::singleton(v))?;
    Ok(SimpleGraph { labels: g.labels.clone(), adj: a.rows().to_vec() })
}

/// `h` as a pivot-minor of `g`: pivot along `pivots` (vertex pairs in `g`'s
/// indexing), delete `delete`, then map survivors by `map`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PivotMinorWitness {
    pub pivots: Vec<(usize, usize)>,
    pub delete: Set,
    /// `map[i]` is the vertex of `h` matched to the `i`-th survivor.
    pub map: Vec<usize>,
}

/// Search for `h` as a pivot-minor of `g`. Every pivot-minor is an induced
/// subgraph of a pivot-equivalent graph, so the search walks the
/// pivot-equivalence class (with a seen-set) and tests induced subgraphs.
pub fn is_pivot_minor(g: &SimpleGraph, h: &SimpleGraph) -> Result<Option<PivotMinorWitness>> {
    caps::check("pivot-minor search", caps::get().pivot_minor, g.len())?;
    if h.len() > g.len() {
        return Ok(None);
    }
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut queue: VecDeque<(SimpleGraph, Vec<(usize, usize)>)> = VecDeque::new();
    seen.insert(g.adj.clone());
    queue.push_back((g.clone(), Vec::new()));
    let drop = g.len() - h.len();
    while let Some((cur, path)) = queue.pop_front() {
        for d in bits::subsets_of_size(bits::full(g.len()), drop) {
            let sub = cur.induced(bits::full(g.len()) & !d);
            if let Some(map) = sub.find_isomorphism(h) {
                return Ok(Some(PivotMinorWitness { pivots: path, delete: d, map }));
            }
        }
        for u in 0..cur.len() {
            for v in bits::iter(cur.adj[u]).filter(|&v| v > u) {
                let next = pivot_graph(&cur, u, v)?;
                if seen.insert(next.adj.clone()) {
                    let mut p = path.clone();
                    p.push((u, v));
                    queue.push_back((next, p));
                }
            }
        }
    }
    Ok(None)
}

/// `BL(G)`: vertices are the edges of `g`; two are adjacent when both are
/// non-loops sharing exactly one end.
pub fn binary_line_graph(g: &MultiGraph) -> Result<SimpleGraph> {
    let edges = g.edges();
    let mut pairs = Vec::new();
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            let (a, b) = (&edges[i], &edges[j]);
            if a.is_loop() || b.is_loop() {
                continue;
            }
            let shared = [a.u, a.v].iter().filter(|x| **x == b.u || **x == b.v).count();
            if shared == 1 {
                pairs.push((i, j));
            }
        }
    }
    SimpleGraph::new(g.edge_labels(), &pairs)
}
