//! Isomorph-free enumeration of small binary matroids and the search for
//! minor-minimally non-delta-graphic matroids.
//!
//! A binary matroid is determined by its columns up to the action of
//! `GL(r, 2)` and column permutations. The canonical form maps each ordered
//! basis to the unit vectors and keeps the least sorted column list over all
//! ordered bases, which is exact. The only non-binary excluded minor,
//! `U_{2,4}`, is added to search results by hand.

use crate::bits;
use crate::caps;
use crate::catalog;
use crate::error::{Error, Result};
use crate::gf2::XorBasis;
use crate::matroid::{is_isomorphic, numbered, Matroid};
use crate::recognize::{recognize, verify_certificate};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

/// Canonical form of a binary matroid: `r:c1,c2,..` with columns in hex,
/// sorted, in the coordinates of the ordered basis that minimizes the list.
pub fn canonical_form(m: &Matroid) -> Result<String> {
    let b = m.to_binary()?.ok_or_else(|| Error::Precondition("canonical forms need a binary matroid".into()))?;
    let cols = b.columns().expect("binary").to_vec();
    let cols = canonical_columns(&cols, b.rank());
    Ok(format_form(b.rank(), &cols))
}

fn format_form(r: usize, cols: &[u64]) -> String {
    let body: Vec<String> = cols.iter().map(|c| format!("{c:x}")).collect();
    format!("{r}:{}", body.join(","))
}

/// Parse a canonical form back into a matroid labelled `e1..en`.
pub fn from_canonical_form(s: &str) -> Result<Matroid> {
    let (r, body) = s.split_once(':').ok_or_else(|| Error::Parse(format!("bad canonical form `{s}`")))?;
    let _: usize = r.parse().map_err(|_| Error::Parse(format!("bad rank in `{s}`")))?;
    let cols: Vec<u64> = if body.is_empty() {
        Vec::new()
    } else {
        body.split(',').map(|c| u64::from_str_radix(c, 16).map_err(|_| Error::Parse(format!("bad column `{c}`")))).collect::<Result<_>>()?
    };
    Matroid::from_columns(numbered("e", cols.len()), &cols)
}

/// Isomorphism-invariant profile of each element: loop flag, parallel class
/// size, and the numbers of 3- and 4-element circuits through it.
fn element_invariants(cols: &[u64]) -> Vec<InvKey> {
    let n = cols.len();
    (0..n)
        .map(|e| {
            let c = cols[e];
            let par = cols.iter().filter(|&&x| x == c).count();
            let mut tri = 0;
            let mut quad = 0;
            for f in 0..n {
                for g in f + 1..n {
                    if f == e || g == e {
                        continue;
                    }
                    if c ^ cols[f] ^ cols[g] == 0 {
                        tri += 1;
                    }
                    for h in g + 1..n {
                        if h != e && c ^ cols[f] ^ cols[g] ^ cols[h] == 0 {
                            quad += 1;
                        }
                    }
                }
            }
            (c == 0, par, tri, quad)
        })
        .collect()
}

/// Step key of an ordered-basis prefix: the new element's invariant, the
/// size of the prefix's closure, and a hash of the invariants of the elements
/// that entered the closure at this step. All three are preserved by
/// isomorphisms that preserve the prefix.
type Key = (InvKey, usize, u64);
type InvKey = (bool, usize, usize, usize);

fn mix(h: u64) -> u64 {
    let mut x = h.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

fn inv_hash(i: &InvKey) -> u64 {
    mix(((i.0 as u64) << 60) ^ ((i.1 as u64) << 40) ^ ((i.2 as u64) << 20) ^ i.3 as u64)
}

/// Least sorted coordinate list over the ordered bases whose key sequence is
/// lexicographically least; isomorphisms carry that set of bases to itself,
/// so the result is a canonical form.
fn canonical_connected(cols: &[u64], r: usize) -> Vec<u64> {
    // High-rank pieces are searched through the (smaller-rank) dual; the
    // dual of the dual's canonical representation is itself canonical.
    if 2 * r > cols.len() {
        let (d, dr) = dual_columns(cols);
        let mut back = dual_columns(&canonical_search(&d, dr)).0;
        back.sort_unstable();
        return back;
    }
    canonical_search(cols, r)
}

/// A representation of the dual: `[A^T | I]` for `[I | A]` over the first
/// greedy basis. Returns the columns and the dual rank.
fn dual_columns(cols: &[u64]) -> (Vec<u64>, usize) {
    let mut basis = Vec::new();
    let mut span = XorBasis::default();
    for (e, &c) in cols.iter().enumerate() {
        if span.insert(c) {
            basis.push(e);
        }
    }
    let x = in_basis_unsorted(cols, &basis);
    let non: Vec<usize> = (0..cols.len()).filter(|e| !basis.contains(e)).collect();
    let out = (0..cols.len())
        .map(|e| match basis.iter().position(|&b| b == e) {
            Some(p) => non.iter().enumerate().fold(0u64, |a, (q, &f)| a | ((x[f] >> p & 1) << q)),
            None => 1u64 << non.iter().position(|&f| f == e).expect("non-basis"),
        })
        .collect();
    (out, non.len())
}

fn canonical_search(cols: &[u64], r: usize) -> Vec<u64> {
    if cols.is_empty() {
        return Vec::new();
    }
    let inv = element_invariants(cols);
    struct St<'a> {
        cols: &'a [u64],
        inv: &'a [InvKey],
        r: usize,
        chosen: Vec<usize>,
        keys: Vec<Key>,
        best_keys: Option<Vec<Key>>,
        best: Option<Vec<u64>>,
    }
    impl St<'_> {
        /// `Err` when the current prefix already loses, else the bound on
        /// the next key when the prefix ties the best so far.
        fn bound(&self) -> std::result::Result<Option<Key>, ()> {
            let k = self.keys.len();
            match &self.best_keys {
                Some(bk) => match self.keys.as_slice().cmp(&bk[..k]) {
                    std::cmp::Ordering::Greater => Err(()),
                    std::cmp::Ordering::Equal => Ok(bk.get(k).copied()),
                    std::cmp::Ordering::Less => Ok(None),
                },
                None => Ok(None),
            }
        }

        fn rec(&mut self, span: XorBasis, closed: u64) {
            if self.bound().is_err() {
                return;
            }
            if self.chosen.len() == self.r {
                let cand = in_basis(self.cols, &self.chosen);
                let better = match (&self.best_keys, &self.best) {
                    (Some(bk), Some(b)) => self.keys < *bk || (self.keys == *bk && cand < *b),
                    _ => true,
                };
                if better {
                    self.best_keys = Some(self.keys.clone());
                    self.best = Some(cand);
                }
                return;
            }
            let mut cands: Vec<(Key, usize, XorBasis, u64)> = Vec::new();
            let mut tried: Vec<u64> = Vec::new();
            for (e, &c) in self.cols.iter().enumerate() {
                if span.contains(c) || tried.contains(&c) {
                    continue;
                }
                tried.push(c);
                let mut s = span.clone();
                s.insert(c);
                let mut now = closed;
                let mut h = 0u64;
                for (f, &d) in self.cols.iter().enumerate() {
                    if now >> f & 1 == 0 && s.contains(d) {
                        now |= 1 << f;
                        h = h.wrapping_add(inv_hash(&self.inv[f]));
                    }
                }
                cands.push(((self.inv[e], now.count_ones() as usize, h), e, s, now));
            }
            cands.sort_by(|a, b| a.0.cmp(&b.0));
            for (key, e, s, now) in cands {
                match self.bound() {
                    Err(()) => return,
                    Ok(Some(b)) if key > b => break,
                    _ => {}
                }
                self.chosen.push(e);
                self.keys.push(key);
                self.rec(s, now);
                self.keys.pop();
                self.chosen.pop();
            }
        }
    }
    let loops = cols.iter().enumerate().fold(0u64, |a, (i, &c)| if c == 0 { a | 1 << i } else { a });
    let mut st = St { cols, inv: &inv, r, chosen: Vec::new(), keys: Vec::new(), best_keys: None, best: None };
    st.rec(XorBasis::default(), loops);
    st.best.unwrap_or_default()
}

/// Canonical column list: connected components are canonicalized on their
/// own and stacked block-diagonally, largest rank first, in a fixed order of
/// their forms. Symmetric direct sums would otherwise multiply the search.
fn canonical_columns(cols: &[u64], r: usize) -> Vec<u64> {
    let n = cols.len();
    // Coordinates over a greedy basis; the fundamental-circuit graph has the
    // matroid's components as its components (loops isolated).
    let mut basis = Vec::new();
    let mut span = XorBasis::default();
    for (e, &c) in cols.iter().enumerate() {
        if span.insert(c) {
            basis.push(e);
        }
    }
    let coords = in_basis_unsorted(cols, &basis);
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (e, &x) in coords.iter().enumerate() {
        for (p, &b) in basis.iter().enumerate() {
            if x >> p & 1 == 1 {
                let (a, c) = (find(&mut parent, e), find(&mut parent, b));
                parent[a] = c;
            }
        }
    }
    let mut comps: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for e in 0..n {
        let root = find(&mut parent, e);
        comps.entry(root).or_default().push(e);
    }
    if comps.len() <= 1 {
        return canonical_connected(&coords, r);
    }
    let mut blocks: Vec<(usize, Vec<u64>)> = comps
        .values()
        .map(|elems| {
            let local: Vec<usize> = basis.iter().enumerate().filter(|(_, b)| elems.contains(b)).map(|(p, _)| p).collect();
            let sub: Vec<u64> = elems
                .iter()
                .map(|&e| local.iter().enumerate().fold(0u64, |a, (q, &p)| a | ((coords[e] >> p & 1) << q)))
                .collect();
            (local.len(), canonical_connected(&sub, local.len()))
        })
        .collect();
    blocks.sort_by(|a, b| b.0.cmp(&a.0).then(b.1.len().cmp(&a.1.len())).then(a.1.cmp(&b.1)));
    let mut out = Vec::with_capacity(n);
    let mut shift = 0;
    for (rank, block) in blocks {
        out.extend(block.iter().map(|c| c << shift));
        shift += rank;
    }
    out.sort_unstable();
    out
}

fn in_basis_unsorted(cols: &[u64], basis: &[usize]) -> Vec<u64> {
    let mut red: Vec<(u64, u64)> = Vec::with_capacity(basis.len());
    for (k, &b) in basis.iter().enumerate() {
        let (v, tag) = reduce(&red, cols[b], 1u64 << k);
        red.push((v, tag));
        red.sort_by_key(|x| x.0.leading_zeros());
    }
    cols.iter().map(|&c| reduce(&red, c, 0).1).collect()
}

/// Coordinates of all columns in the ordered basis `basis`, sorted.
fn in_basis(cols: &[u64], basis: &[usize]) -> Vec<u64> {
    let mut out = in_basis_unsorted(cols, basis);
    out.sort_unstable();
    out
}

fn reduce(red: &[(u64, u64)], mut v: u64, mut tag: u64) -> (u64, u64) {
    for &(w, t) in red {
        if v & (1u64 << (63 - w.leading_zeros())) != 0 {
            v ^= w;
            tag ^= t;
        }
    }
    (v, tag)
}

/// Every binary matroid of rank `r` on `n` elements, one per isomorphism
/// class, ordered by canonical form. With `simple`, loops and parallel
/// elements are excluded.
pub fn enumerate_binary(n: usize, r: usize, simple: bool) -> Result<Vec<Matroid>> {
    caps::check("binary enumeration", caps::get().search, n)?;
    if r > n {
        return Err(Error::Argument(format!("rank {r} exceeds {n} elements")));
    }
    Ok(enumerate_forms(n, r, simple).iter().map(|f| from_canonical_form(f).expect("own form")).collect())
}

/// Canonical column lists by element count and rank, built level by level
/// and kept for the life of the process.
struct Levels {
    simple: bool,
    /// `sizes[n][r]`.
    sizes: Vec<Vec<BTreeSet<Vec<u64>>>>,
}

impl Levels {
    fn new(simple: bool) -> Levels {
        Levels { simple, sizes: vec![vec![std::iter::once(Vec::new()).collect()]] }
    }

    /// Every binary matroid on `n + 1` elements is one on `n` plus an
    /// element in the span, or plus a coloop.
    fn grow(&mut self) {
        let prev = self.sizes.last().expect("level 0");
        let n = self.sizes.len();
        let simple = self.simple;
        let next: Vec<BTreeSet<Vec<u64>>> = (0..=n)
            .into_par_iter()
            .map(|rr| {
                let mut out = BTreeSet::new();
                let mut grow = |cols: &Vec<u64>, v: u64| {
                    if simple && (v == 0 || cols.contains(&v)) {
                        return;
                    }
                    let mut c = cols.clone();
                    c.push(v);
                    out.insert(canonical_columns(&c, rr));
                };
                if let Some(same) = prev.get(rr) {
                    for cols in same {
                        for v in 0..1u64 << rr {
                            grow(cols, v);
                        }
                    }
                }
                if rr > 0 {
                    for cols in &prev[rr - 1] {
                        grow(cols, 1 << (rr - 1));
                    }
                }
                out
            })
            .collect();
        self.sizes.push(next);
    }
}

static LEVELS: Mutex<[Option<Levels>; 2]> = Mutex::new([None, None]);

/// Canonical forms of rank-`r` binary matroids on `n` elements.
fn enumerate_forms(n: usize, r: usize, simple: bool) -> Vec<String> {
    let mut guard = LEVELS.lock().unwrap_or_else(|e| e.into_inner());
    let levels = guard[simple as usize].get_or_insert_with(|| Levels::new(simple));
    while levels.sizes.len() <= n {
        levels.grow();
    }
    levels.sizes[n].get(r).map(|set| set.iter().map(|c| format_form(r, c)).collect()).unwrap_or_default()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MinorResult {
    /// `delete` or `contract`.
    pub operation: String,
    pub element: String,
    pub delta_graphic: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    /// Not delta-graphic, every single-element minor is.
    Minimal,
    /// Not delta-graphic, with a non-delta-graphic single-element minor.
    NotMinimal,
    DeltaGraphic,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MinimalityReport {
    /// Catalog name when recognized (`F7`, `R10`, ..).
    pub name: Option<String>,
    /// Canonical form, absent for non-binary matroids.
    pub canonical: Option<String>,
    pub matroid: Matroid,
    pub delta_graphic: bool,
    pub minors: Vec<MinorResult>,
    pub verdict: Verdict,
}

const NAMED: [&str; 6] = ["U(2,4)", "F7", "F7*", "R10", "R12", "M*(K5)"];

fn catalog_name(m: &Matroid) -> Option<String> {
    NAMED.iter().find_map(|&name| {
        let c = catalog::catalog(name).ok()?;
        (c.len() == m.len() && c.rank() == m.rank() && is_isomorphic(&c, m).ok()?).then(|| name.to_string())
    })
}

/// Recognize `m` and each single-element deletion and contraction, auditing
/// every certificate.
pub fn check_minimal(m: &Matroid) -> Result<MinimalityReport> {
    let audited = |x: &Matroid| -> Result<bool> {
        let c = recognize(x)?;
        if !verify_certificate(x, &c) {
            return Err(Error::Precondition(format!("certificate {} failed its audit", c.kind())));
        }
        Ok(c.is_positive())
    };
    let delta_graphic = audited(m)?;
    let mut minors = Vec::with_capacity(2 * m.len());
    if !delta_graphic {
        for e in 0..m.len() {
            let s = bits::singleton(e);
            for (op, x) in [("delete", m.delete(s)), ("contract", m.contract(s))] {
                minors.push(MinorResult { operation: op.into(), element: m.label(e).to_string(), delta_graphic: audited(&x)? });
            }
        }
    }
    let verdict = if delta_graphic {
        Verdict::DeltaGraphic
    } else if minors.iter().all(|x| x.delta_graphic) {
        Verdict::Minimal
    } else {
        Verdict::NotMinimal
    };
    let canonical = if m.to_binary()?.is_some() { Some(canonical_form(m)?) } else { None };
    Ok(MinimalityReport { name: catalog_name(m), canonical, matroid: m.clone(), delta_graphic, minors, verdict })
}

/// One shard of the search at a fixed element count.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SearchTask {
    pub n: usize,
    /// Inclusive rank window.
    pub ranks: (usize, usize),
    pub shard: usize,
    pub shards: usize,
    /// Checkpoint file replayed on resume.
    pub resume: Option<PathBuf>,
}

#[derive(Clone, Debug, Default)]
pub struct SearchOptions {
    /// Number of shards (at least 1).
    pub shards: usize,
    /// Directory for per-shard checkpoints and the merged result.
    pub checkpoint_dir: Option<PathBuf>,
}

/// Minor-minimally non-delta-graphic matroids on at most `max_n` elements.
pub fn search(max_n: usize) -> Result<Vec<MinimalityReport>> {
    search_with(max_n, &SearchOptions { shards: 1, checkpoint_dir: None })
}

pub fn search_with(max_n: usize, opts: &SearchOptions) -> Result<Vec<MinimalityReport>> {
    caps::check("excluded-minor search", caps::get().search, max_n)?;
    let shards = opts.shards.max(1);
    if let Some(dir) = &opts.checkpoint_dir {
        fs::create_dir_all(dir).map_err(io_error)?;
    }
    let mut tasks = Vec::new();
    for n in 0..=max_n {
        for shard in 0..shards {
            let resume = opts.checkpoint_dir.as_ref().map(|d| d.join(format!("n{n}-shard{shard}of{shards}.ckpt")));
            tasks.push(SearchTask { n, ranks: (0, n), shard, shards, resume });
        }
    }
    // Enumeration is shared; the per-candidate checks run in parallel per shard.
    let forms: BTreeMap<usize, Vec<String>> =
        (0..=max_n).map(|n| (n, (0..=n).flat_map(|r| enumerate_forms(n, r, false)).collect())).collect();
    let results: Vec<Vec<MinimalityReport>> =
        tasks.par_iter().map(|t| run_task(t, &forms[&t.n])).collect::<Result<_>>()?;
    let mut reports: Vec<MinimalityReport> = results.into_iter().flatten().collect();
    if max_n >= 4 {
        reports.push(check_minimal(&catalog::uniform(2, 4)?)?);
    }
    reports.sort_by(|a, b| (a.matroid.len(), &a.canonical).cmp(&(b.matroid.len(), &b.canonical)));
    if let Some(dir) = &opts.checkpoint_dir {
        let json = serde_json::to_string_pretty(&reports).map_err(|e| Error::Precondition(format!("results: {e}")))?;
        let tmp = dir.join("results.json.tmp");
        fs::write(&tmp, json).map_err(io_error)?;
        fs::rename(&tmp, dir.join("results.json")).map_err(io_error)?;
    }
    Ok(reports)
}

fn io_error(e: std::io::Error) -> Error {
    Error::Precondition(format!("checkpoint i/o: {e}"))
}

fn read_checkpoint(path: &Path) -> BTreeMap<String, bool> {
    let Ok(text) = fs::read_to_string(path) else { return BTreeMap::new() };
    text.lines()
        .filter_map(|l| {
            let (form, v) = l.split_once('\t')?;
            Some((form.to_string(), v == "minimal"))
        })
        .collect()
}

fn run_task(t: &SearchTask, forms: &[String]) -> Result<Vec<MinimalityReport>> {
    let done = t.resume.as_deref().map(read_checkpoint).unwrap_or_default();
    let mut log = match &t.resume {
        Some(p) => Some(fs::OpenOptions::new().create(true).append(true).open(p).map_err(io_error)?),
        None => None,
    };
    let mut out = Vec::new();
    for (i, form) in forms.iter().enumerate() {
        if i % t.shards != t.shard {
            continue;
        }
        let m = from_canonical_form(form)?;
        if !(t.ranks.0..=t.ranks.1).contains(&m.rank()) {
            continue;
        }
        if let Some(&minimal) = done.get(form) {
            if minimal {
                out.push(check_minimal(&m)?);
            }
            continue;
        }
        let report = check_minimal(&m)?;
        let minimal = report.verdict == Verdict::Minimal;
        if let Some(f) = log.as_mut() {
            writeln!(f, "{form}\t{}", if minimal { "minimal" } else { "other" }).map_err(io_error)?;
        }
        if minimal {
            out.push(report);
        }
    }
    Ok(out)
}
