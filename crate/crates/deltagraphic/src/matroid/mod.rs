//! Matroids on labelled ground sets.
//!
//! A [`Matroid`] is either given by a GF(2) representation (the usual case) or
//! by an explicit base family (used for non-binary catalog members such as
//! `U_{2,4}`). Element sets are bitsets over the dense index space of the
//! label list; see [`crate::bits`].

mod connectivity;
pub mod graphic;
mod iso;

pub use connectivity::Separation;
pub use iso::{find_isomorphism, has_minor, is_isomorphic, MinorWitness};

use crate::bits::{self, Set};
use crate::caps;
use crate::error::{Error, Result};
use crate::gf2::{self, Gf2Matrix, XorBasis};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

#[derive(Clone, Debug)]
enum Repr {
    /// Columns as words over `rows` coordinates; the rows are independent,
    /// so `rows` is the rank.
    Binary { rows: usize, cols: Vec<u64> },
    /// Explicit, sorted base family.
    Bases { rank: usize, bases: Vec<Set> },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "MatroidWire", into = "MatroidWire")]
pub struct Matroid {
    labels: Vec<String>,
    repr: Repr,
    bases_cache: OnceLock<Vec<Set>>,
}

fn check_labels(labels: &[String]) -> Result<()> {
    caps::check("ground set", bits::MAX_ELEMENTS, labels.len())?;
    let mut seen = std::collections::HashSet::new();
    for l in labels {
        if !seen.insert(l.as_str()) {
            return Err(Error::Label(format!("duplicate element label `{l}`")));
        }
    }
    Ok(())
}

/// Keep a full-row-rank copy of the column representation.
fn normalize_cols(cols: &[u64]) -> (usize, Vec<u64>) {
    let nrows = cols.iter().fold(0u64, |a, c| a | c);
    let height = 64 - nrows.leading_zeros() as usize;
    let rows: Vec<u64> = (0..height)
        .map(|i| cols.iter().enumerate().fold(0u64, |a, (j, c)| a | ((c >> i & 1) << j)))
        .collect();
    let red = gf2::reduced_basis(&rows);
    let new_cols = (0..cols.len())
        .map(|j| red.iter().enumerate().fold(0u64, |a, (i, r)| a | ((r >> j & 1) << i)))
        .collect();
    (red.len(), new_cols)
}

impl Matroid {
    /// Matroid represented by the columns of `a` (column labels become elements).
    pub fn from_matrix(a: &Gf2Matrix) -> Result<Matroid> {
        let labels = a.col_labels().to_vec();
        check_labels(&labels)?;
        let cols: Vec<u64> = (0..a.ncols()).map(|j| a.column(j)).collect();
        Ok(Matroid::from_cols(labels, &cols))
    }

    /// Matroid from column vectors (bit `i` = row `i`).
    pub fn from_columns(labels: Vec<String>, cols: &[u64]) -> Result<Matroid> {
        check_labels(&labels)?;
        if labels.len() != cols.len() {
            return Err(Error::Argument("one column per label required".into()));
        }
        Ok(Matroid::from_cols(labels, cols))
    }

    fn from_cols(labels: Vec<String>, cols: &[u64]) -> Matroid {
        let (rows, cols) = normalize_cols(cols);
        Matroid { labels, repr: Repr::Binary { rows, cols }, bases_cache: OnceLock::new() }
    }

    /// Matroid from an explicit base family, validated against the base axioms.
    pub fn from_bases(labels: Vec<String>, bases: Vec<Set>) -> Result<Matroid> {
        check_labels(&labels)?;
        let mut bases = bases;
        bases.sort_unstable();
        bases.dedup();
        let Some(&first) = bases.first() else {
            return Err(Error::Argument("base family must be nonempty".into()));
        };
        let rank = bits::len(first);
        let full = bits::full(labels.len());
        if bases.iter().any(|b| bits::len(*b) != rank || b & !full != 0) {
            return Err(Error::Argument("bases must be equicardinal subsets of the ground set".into()));
        }
        if !exchange_holds(&bases) {
            return Err(Error::Argument("base family violates the exchange axiom".into()));
        }
        Ok(Matroid { labels, repr: Repr::Bases { rank, bases }, bases_cache: OnceLock::new() })
    }

    /// The empty matroid.
    pub fn empty() -> Matroid {
        Matroid::from_cols(Vec::new(), &[])
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn ground(&self) -> Set {
        bits::full(self.len())
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::Label(format!("unknown element `{label}`")))
    }

    pub fn try_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn set_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<Set> {
        let mut s = 0;
        for l in labels {
            s |= bits::singleton(self.index(l.as_ref())?);
        }
        Ok(s)
    }

    pub fn labels_of(&self, s: Set) -> Vec<String> {
        bits::iter(s).map(|i| self.labels[i].clone()).collect()
    }

    pub fn is_binary(&self) -> bool {
        matches!(self.repr, Repr::Binary { .. })
    }

    /// Column vectors of the representation, when binary.
    pub fn columns(&self) -> Option<&[u64]> {
        match &self.repr {
            Repr::Binary { cols, .. } => Some(cols),
            Repr::Bases { .. } => None,
        }
    }

    /// The representation as a labelled matrix with independent rows.
    pub fn representation(&self) -> Option<Gf2Matrix> {
        let Repr::Binary { rows, cols } = &self.repr else { return None };
        let words = (0..*rows)
            .map(|i| cols.iter().enumerate().fold(0u64, |a, (j, c)| a | ((c >> i & 1) << j)))
            .collect();
        Gf2Matrix::with_columns(self.labels.clone(), words).ok()
    }

    /// A binary copy of this matroid: itself when already represented,
    /// otherwise a representation derived from fundamental circuits if one exists.
    pub fn to_binary(&self) -> Result<Option<Matroid>> {
        if self.is_binary() {
            return Ok(Some(self.clone()));
        }
        let b = self.some_basis();
        let basis: Vec<usize> = bits::iter(b).collect();
        let cols: Vec<u64> = (0..self.len())
            .map(|e| {
                if let Some(p) = basis.iter().position(|&x| x == e) {
                    1u64 << p
                } else {
                    let c = self.fundamental_circuit(b, e);
                    basis.iter().enumerate().fold(0, |a, (p, &x)| if bits::contains(c, x) { a | 1 << p } else { a })
                }
            })
            .collect();
        let cand = Matroid::from_cols(self.labels.clone(), &cols);
        Ok(if cand.bases()? == self.bases()? { Some(cand) } else { None })
    }

    pub fn rank(&self) -> usize {
        match &self.repr {
            Repr::Binary { rows, .. } => *rows,
            Repr::Bases { rank, .. } => *rank,
        }
    }

    pub fn corank(&self) -> usize {
        self.len() - self.rank()
    }

    pub fn rank_of(&self, s: Set) -> usize {
        match &self.repr {
            Repr::Binary { cols, .. } => {
                let mut b = XorBasis::default();
                bits::iter(s).filter(|&i| b.insert(cols[i])).count()
            }
            Repr::Bases { bases, .. } => bases.iter().map(|b| bits::len(b & s)).max().unwrap_or(0),
        }
    }

    pub fn is_independent(&self, s: Set) -> bool {
        self.rank_of(s) == bits::len(s)
    }

    pub fn closure(&self, s: Set) -> Set {
        let r = self.rank_of(s);
        let mut c = s;
        for e in bits::iter(self.ground() & !s) {
            if self.rank_of(s | bits::singleton(e)) == r {
                c |= bits::singleton(e);
            }
        }
        c
    }

    pub fn is_loop(&self, e: usize) -> bool {
        self.rank_of(bits::singleton(e)) == 0
    }

    pub fn is_coloop(&self, e: usize) -> bool {
        self.rank_of(self.ground() & !bits::singleton(e)) < self.rank()
    }

    pub fn loops(&self) -> Set {
        (0..self.len()).filter(|&e| self.is_loop(e)).fold(0, |a, e| a | bits::singleton(e))
    }

    pub fn coloops(&self) -> Set {
        (0..self.len()).filter(|&e| self.is_coloop(e)).fold(0, |a, e| a | bits::singleton(e))
    }

    /// Lexicographically greedy basis.
    pub fn some_basis(&self) -> Set {
        match &self.repr {
            Repr::Binary { cols, .. } => {
                let mut b = XorBasis::default();
                (0..self.len()).filter(|&i| b.insert(cols[i])).fold(0, |a, i| a | bits::singleton(i))
            }
            Repr::Bases { bases, .. } => {
                let mut s = 0;
                for e in 0..self.len() {
                    if self.is_independent(s | bits::singleton(e)) {
                        s |= bits::singleton(e);
                    }
                }
                debug_assert!(bases.contains(&s));
                s
            }
        }
    }

    /// The unique circuit in `b + e` for a basis `b` and `e` outside it.
    pub fn fundamental_circuit(&self, b: Set, e: usize) -> Set {
        let mut c = bits::singleton(e);
        for x in bits::iter(b) {
            if self.is_independent((b & !bits::singleton(x)) | bits::singleton(e)) {
                c |= bits::singleton(x);
            }
        }
        c
    }

    /// All bases in increasing bitset order.
    pub fn bases(&self) -> Result<Vec<Set>> {
        if let Some(b) = self.bases_cache.get() {
            return Ok(b.clone());
        }
        let b = match &self.repr {
            Repr::Bases { bases, .. } => bases.clone(),
            Repr::Binary { .. } => {
                caps::check("base enumeration", caps::get().bases, self.len())?;
                let mut out: Vec<Set> = bits::subsets_of_size(self.ground(), self.rank())
                    .into_iter()
                    .filter(|&s| self.is_independent(s))
                    .collect();
                out.sort_unstable();
                out
            }
        };
        Ok(self.bases_cache.get_or_init(|| b).clone())
    }

    /// Cocircuits, sorted.
    ///
    /// For binary matroids, a cocycle vector `v` is a cocircuit exactly when the
    /// complement of its support is a hyperplane, which needs only a scan of
    /// the row space.
    pub fn cocircuits(&self) -> Result<Vec<Set>> {
        match &self.repr {
            Repr::Binary { rows, cols } => {
                caps::check("cocycle scan rank", caps::get().cocycle_rank, *rows)?;
                let r = *rows;
                let mut out = Vec::new();
                for y in 1u64..(1u64 << r) {
                    let supp = cols
                        .iter()
                        .enumerate()
                        .fold(0u64, |a, (j, c)| if (c & y).count_ones() % 2 == 1 { a | 1 << j } else { a });
                    if self.rank_of(self.ground() & !supp) + 1 == r {
                        out.push(supp);
                    }
                }
                out.sort_unstable();
                out.dedup();
                Ok(out)
            }
            Repr::Bases { .. } => self.dual().circuits(),
        }
    }

    /// Circuits, sorted.
    pub fn circuits(&self) -> Result<Vec<Set>> {
        match &self.repr {
            Repr::Binary { .. } => self.dual().cocircuits(),
            Repr::Bases { .. } => {
                caps::check("circuit enumeration", caps::get().bases, self.len())?;
                let mut out = Vec::new();
                for s in bits::all_subsets(self.ground()) {
                    let k = bits::len(s);
                    if k == 0 || self.rank_of(s) != k - 1 {
                        continue;
                    }
                    if bits::iter(s).all(|e| self.is_independent(s & !bits::singleton(e))) {
                        out.push(s);
                    }
                }
                out.sort_unstable();
                Ok(out)
            }
        }
    }

    /// Hyperplanes: flats of rank `r - 1`, i.e. complements of cocircuits.
    pub fn hyperplanes(&self) -> Result<Vec<Set>> {
        let mut h: Vec<Set> = self.cocircuits()?.into_iter().map(|c| self.ground() & !c).collect();
        h.sort_unstable();
        Ok(h)
    }

    /// Sets that are both a circuit and a hyperplane.
    pub fn circuit_hyperplanes(&self) -> Result<Vec<Set>> {
        let r = self.rank();
        Ok(self
            .circuits()?
            .into_iter()
            .filter(|&c| bits::len(c) == r && self.rank_of(c) + 1 == r && self.closure(c) == c)
            .collect())
    }

    /// The dual matroid; binary representations are rebuilt in standard form.
    pub fn dual(&self) -> Matroid {
        match &self.repr {
            Repr::Binary { cols, .. } => {
                let n = self.len();
                let b = self.some_basis();
                let basis: Vec<usize> = bits::iter(b).collect();
                let non: Vec<usize> = bits::iter(self.ground() & !b).collect();
                // Coordinates of every column with respect to the basis columns.
                let coords = basis_coordinates(cols, &basis);
                let mut dcols = vec![0u64; n];
                for (q, &f) in non.iter().enumerate() {
                    dcols[f] = 1u64 << q;
                    for (p, &x) in basis.iter().enumerate() {
                        if bits::contains(coords[f], p) {
                            dcols[x] |= 1u64 << q;
                        }
                    }
                }
                Matroid::from_cols(self.labels.clone(), &dcols)
            }
            Repr::Bases { rank, bases } => {
                let g = self.ground();
                let mut d: Vec<Set> = bases.iter().map(|b| g & !b).collect();
                d.sort_unstable();
                Matroid {
                    labels: self.labels.clone(),
                    repr: Repr::Bases { rank: self.len() - rank, bases: d },
                    bases_cache: OnceLock::new(),
                }
            }
        }
    }

    /// Restriction `M | s`, keeping element order.
    pub fn restrict(&self, s: Set) -> Matroid {
        let labels: Vec<String> = self.labels_of(s);
        match &self.repr {
            Repr::Binary { cols, .. } => {
                let c: Vec<u64> = bits::iter(s).map(|i| cols[i]).collect();
                Matroid::from_cols(labels, &c)
            }
            Repr::Bases { bases, .. } => {
                let r = self.rank_of(s);
                let mut nb: Vec<Set> = bases
                    .iter()
                    .filter(|b| bits::len(*b & s) == r)
                    .map(|b| bits::compress(b & s, s))
                    .collect();
                nb.sort_unstable();
                nb.dedup();
                Matroid { labels, repr: Repr::Bases { rank: r, bases: nb }, bases_cache: OnceLock::new() }
            }
        }
    }

    pub fn delete(&self, d: Set) -> Matroid {
        self.restrict(self.ground() & !d)
    }

    pub fn contract(&self, c: Set) -> Matroid {
        let keep = self.ground() & !c;
        match &self.repr {
            Repr::Binary { cols, .. } => {
                let mut cols = cols.clone();
                for e in bits::iter(c) {
                    let v = cols[e];
                    if v == 0 {
                        continue;
                    }
                    let p = v.trailing_zeros();
                    for w in cols.iter_mut() {
                        if *w >> p & 1 == 1 {
                            *w ^= v;
                        }
                    }
                }
                let kept: Vec<u64> = bits::iter(keep).map(|i| cols[i]).collect();
                Matroid::from_cols(self.labels_of(keep), &kept)
            }
            Repr::Bases { bases, .. } => {
                let rc = self.rank_of(c);
                let mut nb: Vec<Set> = bases
                    .iter()
                    .filter(|b| bits::len(*b & c) == rc)
                    .map(|b| bits::compress(b & keep, keep))
                    .collect();
                nb.sort_unstable();
                nb.dedup();
                Matroid {
                    labels: self.labels_of(keep),
                    repr: Repr::Bases { rank: self.rank() - rc, bases: nb },
                    bases_cache: OnceLock::new(),
                }
            }
        }
    }

    /// `M \ d / c`.
    pub fn minor(&self, d: Set, c: Set) -> Result<Matroid> {
        if d & c != 0 {
            return Err(Error::Argument("deletion and contraction sets overlap".into()));
        }
        if (d | c) & !self.ground() != 0 {
            return Err(Error::Argument("minor sets outside the ground set".into()));
        }
        // Contract first on the full ground set, then delete (indices shift).
        let mc = self.contract(c);
        let keep = self.ground() & !c;
        Ok(mc.delete(bits::compress(d, keep)))
    }

    pub fn minor_labels<S: AsRef<str>>(&self, d: &[S], c: &[S]) -> Result<Matroid> {
        let ds = self.set_of(d)?;
        let cs = self.set_of(c)?;
        self.minor(ds, cs)
    }

    /// Rename elements; labels absent from `map` are kept.
    pub fn relabel(&self, map: &HashMap<String, String>) -> Result<Matroid> {
        let labels: Vec<String> = self.labels.iter().map(|l| map.get(l).cloned().unwrap_or_else(|| l.clone())).collect();
        check_labels(&labels)?;
        Ok(Matroid { labels, repr: self.repr.clone(), bases_cache: self.bases_cache.clone() })
    }

    pub fn rename(&self, from: &str, to: &str) -> Result<Matroid> {
        let mut m = HashMap::new();
        m.insert(from.to_string(), to.to_string());
        self.index(from)?;
        self.relabel(&m)
    }

    /// Same matroid with the ground set listed in a different order.
    pub fn reorder(&self, order: &[String]) -> Result<Matroid> {
        if order.len() != self.len() {
            return Err(Error::Argument("reorder needs a permutation of the labels".into()));
        }
        let idx: Vec<usize> = order.iter().map(|l| self.index(l)).collect::<Result<_>>()?;
        let mut seen = 0u64;
        for &i in &idx {
            seen |= bits::singleton(i);
        }
        if seen != self.ground() {
            return Err(Error::Argument("reorder needs a permutation of the labels".into()));
        }
        Ok(self.permuted(&idx))
    }

    /// Element `j` of the result is element `idx[j]` of `self`.
    fn permuted(&self, idx: &[usize]) -> Matroid {
        let labels: Vec<String> = idx.iter().map(|&i| self.labels[i].clone()).collect();
        let map = |s: Set| idx.iter().enumerate().fold(0u64, |a, (j, &i)| if bits::contains(s, i) { a | 1 << j } else { a });
        match &self.repr {
            Repr::Binary { cols, .. } => {
                let c: Vec<u64> = idx.iter().map(|&i| cols[i]).collect();
                Matroid::from_cols(labels, &c)
            }
            Repr::Bases { rank, bases } => {
                let mut nb: Vec<Set> = bases.iter().map(|&b| map(b)).collect();
                nb.sort_unstable();
                Matroid { labels, repr: Repr::Bases { rank: *rank, bases: nb }, bases_cache: OnceLock::new() }
            }
        }
    }

    /// Direct sum with disjoint labels.
    pub fn direct_sum(&self, other: &Matroid) -> Result<Matroid> {
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        check_labels(&labels)?;
        match (&self.repr, &other.repr) {
            (Repr::Binary { rows: r1, cols: c1 }, Repr::Binary { cols: c2, .. }) => {
                let mut cols = c1.clone();
                cols.extend(c2.iter().map(|c| c << r1));
                Ok(Matroid::from_cols(labels, &cols))
            }
            _ => {
                let b1 = self.bases()?;
                let b2 = other.bases()?;
                let n1 = self.len();
                let bases = b1.iter().flat_map(|&x| b2.iter().map(move |&y| x | y << n1)).collect();
                Matroid::from_bases(labels, bases)
            }
        }
    }

    /// Column coordinates over a basis of the column space whose first member is
    /// element `e` (so `e` itself becomes the unit vector `1`). `None` when the
    /// matroid is not binary or `e` is a loop.
    pub(crate) fn coordinates_from(&self, e: usize) -> Option<Vec<u64>> {
        let Repr::Binary { cols, .. } = &self.repr else { return None };
        if cols[e] == 0 {
            return None;
        }
        let mut b = XorBasis::default();
        let mut basis = vec![e];
        b.insert(cols[e]);
        for (i, c) in cols.iter().enumerate() {
            if i != e && b.insert(*c) {
                basis.push(i);
            }
        }
        Some(basis_coordinates(cols, &basis))
    }

    /// Equality as labelled matroids (label order may differ).
    pub fn same_as(&self, other: &Matroid) -> bool {
        if self.len() != other.len() || self.rank() != other.rank() {
            return false;
        }
        let Ok(o) = other.reorder(&self.labels) else { return false };
        match (&self.repr, &o.repr) {
            (Repr::Binary { cols: a, .. }, Repr::Binary { cols: b, .. }) => {
                // Same row space <=> same cocycle space <=> same binary matroid.
                let ra = rows_of(a, self.rank());
                let rb = rows_of(b, o.rank());
                gf2::reduced_basis(&ra) == gf2::reduced_basis(&rb)
            }
            _ => match (self.bases(), o.bases()) {
                (Ok(x), Ok(y)) => x == y,
                _ => false,
            },
        }
    }

    /// Uniform matroid `U_{1,n}` on at least one element (all elements parallel, no loops).
    pub fn is_rank_one_uniform(&self) -> bool {
        self.rank() == 1 && self.loops() == 0
    }

    /// Uniform matroid `U_{n-1,n}`: the whole ground set is a circuit.
    pub fn is_corank_one_uniform(&self) -> bool {
        self.corank() == 1 && self.coloops() == 0
    }

    /// Multiset of circuit sizes, as a sorted map size → count.
    pub fn circuit_size_profile(&self) -> Result<BTreeMap<usize, usize>> {
        let mut m = BTreeMap::new();
        for c in self.circuits()? {
            *m.entry(bits::len(c)).or_insert(0) += 1;
        }
        Ok(m)
    }

    /// Whether the stored base family satisfies the exchange axiom.
    pub fn check_exchange(&self) -> Result<bool> {
        Ok(exchange_holds(&self.bases()?))
    }
}

/// Serialized form: labels plus either matrix rows (as `0`/`1` strings) or bases.
#[derive(Serialize, Deserialize)]
struct MatroidWire {
    labels: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rows: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    bases: Option<Vec<Vec<String>>>,
}

impl From<Matroid> for MatroidWire {
    fn from(m: Matroid) -> Self {
        match &m.repr {
            Repr::Binary { .. } => {
                let rows = m.representation().map(|a| a.row_strings()).unwrap_or_default();
                MatroidWire { labels: m.labels.clone(), rows: Some(rows), bases: None }
            }
            Repr::Bases { bases, .. } => MatroidWire {
                labels: m.labels.clone(),
                rows: None,
                bases: Some(bases.iter().map(|b| m.labels_of(*b)).collect()),
            },
        }
    }
}

impl TryFrom<MatroidWire> for Matroid {
    type Error = Error;

    fn try_from(w: MatroidWire) -> Result<Matroid> {
        match (w.rows, w.bases) {
            (Some(rows), None) => {
                let refs: Vec<&str> = rows.iter().map(|s| s.as_str()).collect();
                let a = Gf2Matrix::from_strings(numbered("r", refs.len()), w.labels, &refs)?;
                Matroid::from_matrix(&a)
            }
            (None, Some(bases)) => {
                check_labels(&w.labels)?;
                let mut sets = Vec::with_capacity(bases.len());
                for b in &bases {
                    let mut s = 0u64;
                    for l in b {
                        let i = w.labels.iter().position(|x| x == l).ok_or_else(|| Error::Label(format!("unknown element `{l}`")))?;
                        s |= bits::singleton(i);
                    }
                    sets.push(s);
                }
                Matroid::from_bases(w.labels, sets)
            }
            _ => Err(Error::Parse("matroid needs exactly one of `rows` and `bases`".into())),
        }
    }
}

fn rows_of(cols: &[u64], r: usize) -> Vec<u64> {
    (0..r)
        .map(|i| cols.iter().enumerate().fold(0u64, |a, (j, c)| a | ((c >> i & 1) << j)))
        .collect()
}

/// For each column, its coordinates (bit `p` = basis member `p`) over the given basis columns.
fn basis_coordinates(cols: &[u64], basis: &[usize]) -> Vec<u64> {
    // Row-reduce [B | all columns] so that B becomes the identity.
    let r = basis.len();
    let mut rows = rows_of(cols, 64 - cols.iter().fold(0u64, |a, c| a | c).leading_zeros() as usize);
    let mut pivot_row = vec![0usize; r];
    let mut used = vec![false; rows.len()];
    for (p, &b) in basis.iter().enumerate() {
        let i = (0..rows.len()).find(|&i| !used[i] && bits::contains(rows[i], b)).expect("basis column");
        used[i] = true;
        pivot_row[p] = i;
        let piv = rows[i];
        for t in 0..rows.len() {
            if t != i && bits::contains(rows[t], b) {
                rows[t] ^= piv;
            }
        }
    }
    (0..cols.len())
        .map(|j| (0..r).fold(0u64, |a, p| if bits::contains(rows[pivot_row[p]], j) { a | 1 << p } else { a }))
        .collect()
}

fn exchange_holds(bases: &[Set]) -> bool {
    let set: std::collections::HashSet<Set> = bases.iter().copied().collect();
    for &b1 in bases {
        for &b2 in bases {
            for x in bits::iter(b1 & !b2) {
                let ok = bits::iter(b2 & !b1).any(|y| set.contains(&((b1 & !bits::singleton(x)) | bits::singleton(y))));
                if !ok {
                    return false;
                }
            }
        }
    }
    true
}

/// Labels `prefix1, prefix2, ..`.
pub fn numbered(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f7() -> Matroid {
        let a = Gf2Matrix::from_strings(numbered("r", 3), numbered("", 7), &["1001011", "0101101", "0010111"]).unwrap();
        Matroid::from_matrix(&a).unwrap()
    }

    #[test]
    fn fano_counts() {
        let m = f7();
        assert_eq!(m.rank(), 3);
        assert_eq!(m.bases().unwrap().len(), 28);
        let lines = m.circuits().unwrap().into_iter().filter(|c| bits::len(*c) == 3).count();
        assert_eq!(lines, 7);
        assert_eq!(m.dual().rank(), 4);
        assert!(m.dual().dual().same_as(&m));
    }

    #[test]
    fn minors_and_loops() {
        let m = f7();
        assert!(m.delete(0).same_as(&m));
        let l = Matroid::from_columns(numbered("x", 3), &[0, 1, 1]).unwrap();
        assert!(l.contract(1).same_as(&l.delete(1)));
        assert!(m.minor(1, 1).is_err());
        let c = m.contract(bits::singleton(0));
        assert_eq!(c.rank(), 2);
        assert_eq!(c.len(), 6);
    }

    #[test]
    fn explicit_uniform() {
        let u24 = Matroid::from_bases(numbered("u", 4), bits::subsets_of_size(bits::full(4), 2)).unwrap();
        assert_eq!(u24.bases().unwrap().len(), 6);
        assert!(u24.to_binary().unwrap().is_none());
        assert_eq!(u24.dual().bases().unwrap(), u24.bases().unwrap());
        assert!(Matroid::from_bases(numbered("u", 3), vec![0b001, 0b110]).is_err());
    }
}
