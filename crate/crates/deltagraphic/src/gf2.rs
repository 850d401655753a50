//! Dense GF(2) matrices with labelled rows and columns.
//!
//! Rows are stored as `u64` words (bit `j` = column `j`), which caps the
//! number of columns at 64. That is far beyond the desk-scale instances this
//! crate targets. Besides rank, the module provides the principal pivot
//! transform `A * X` used by representable delta-matroids.

use crate::bits::{self, Set};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// A matrix over GF(2) with unique row and column labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Gf2Matrix {
    row_labels: Vec<String>,
    col_labels: Vec<String>,
    rows: Vec<u64>,
}

fn check_unique(labels: &[String], axis: &str) -> Result<()> {
    let mut seen = std::collections::HashSet::new();
    for l in labels {
        if !seen.insert(l.as_str()) {
            return Err(Error::Label(format!("duplicate {axis} label `{l}`")));
        }
    }
    Ok(())
}

impl Gf2Matrix {
    pub fn new(row_labels: Vec<String>, col_labels: Vec<String>, rows: Vec<u64>) -> Result<Self> {
        if col_labels.len() > bits::MAX_ELEMENTS {
            return Err(Error::Resource {
                what: "matrix columns",
                limit: bits::MAX_ELEMENTS,
                got: col_labels.len(),
            });
        }
        if rows.len() != row_labels.len() {
            return Err(Error::Argument(format!(
                "{} rows given for {} row labels",
                rows.len(),
                row_labels.len()
            )));
        }
        let mask = bits::full(col_labels.len());
        if rows.iter().any(|r| r & !mask != 0) {
            return Err(Error::Argument("row has bits beyond the last column".into()));
        }
        check_unique(&row_labels, "row")?;
        check_unique(&col_labels, "column")?;
        Ok(Gf2Matrix { row_labels, col_labels, rows })
    }

    /// Parse rows written as strings of `0`/`1`, one character per column.
    pub fn from_strings(row_labels: Vec<String>, col_labels: Vec<String>, rows: &[&str]) -> Result<Self> {
        let mut words = Vec::with_capacity(rows.len());
        for r in rows {
            if r.len() != col_labels.len() {
                return Err(Error::Argument(format!("row `{r}` has wrong width")));
            }
            let mut w = 0u64;
            for (j, ch) in r.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => w |= 1 << j,
                    _ => return Err(Error::Argument(format!("bad matrix entry `{ch}`"))),
                }
            }
            words.push(w);
        }
        Gf2Matrix::new(row_labels, col_labels, words)
    }

    /// Matrix with rows labelled `r0, r1, ..` and the given column labels.
    pub fn with_columns(col_labels: Vec<String>, rows: Vec<u64>) -> Result<Self> {
        let row_labels = (0..rows.len()).map(|i| format!("r{i}")).collect();
        Gf2Matrix::new(row_labels, col_labels, rows)
    }

    pub fn identity(labels: Vec<String>) -> Result<Self> {
        let rows = (0..labels.len()).map(|i| 1u64 << i).collect();
        Gf2Matrix::new(labels.clone(), labels, rows)
    }

    pub fn zero(row_labels: Vec<String>, col_labels: Vec<String>) -> Result<Self> {
        let rows = vec![0; row_labels.len()];
        Gf2Matrix::new(row_labels, col_labels, rows)
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.col_labels.len()
    }

    pub fn row_labels(&self) -> &[String] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[String] {
        &self.col_labels
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        bits::contains(self.rows[i], j)
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        if v {
            self.rows[i] |= 1 << j;
        } else {
            self.rows[i] &= !(1 << j);
        }
    }

    /// Column `j` as a word whose bit `i` is entry `(i, j)`.
    pub fn column(&self, j: usize) -> u64 {
        self.rows
            .iter()
            .enumerate()
            .fold(0, |acc, (i, r)| acc | ((r >> j & 1) << i))
    }

    pub fn col_index(&self, label: &str) -> Result<usize> {
        self.col_labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::Label(format!("unknown column `{label}`")))
    }

    pub fn row_index(&self, label: &str) -> Result<usize> {
        self.row_labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::Label(format!("unknown row `{label}`")))
    }

    /// Column-label set to a bitset.
    pub fn col_set<S: AsRef<str>>(&self, labels: &[S]) -> Result<Set> {
        let mut s = 0;
        for l in labels {
            s |= 1 << self.col_index(l.as_ref())?;
        }
        Ok(s)
    }

    pub fn transpose(&self) -> Gf2Matrix {
        let rows = (0..self.ncols()).map(|j| self.column(j)).collect();
        Gf2Matrix {
            row_labels: self.col_labels.clone(),
            col_labels: self.row_labels.clone(),
            rows,
        }
    }

    /// GF(2) rank by Gaussian elimination with first-nonzero pivoting.
    pub fn rank(&self) -> usize {
        rank_of_words(&self.rows)
    }

    /// Square with identical row and column labels and `A = A^T`.
    pub fn is_symmetric(&self) -> bool {
        self.row_labels == self.col_labels && *self == self.transpose()
    }

    fn require_symmetric(&self) -> Result<()> {
        if self.is_symmetric() {
            Ok(())
        } else {
            Err(Error::Argument("matrix is not symmetric".into()))
        }
    }

    /// The principal submatrix on `x`, rows and columns packed in index order.
    fn principal_words(&self, x: Set) -> Vec<u64> {
        bits::iter(x).map(|i| bits::compress(self.rows[i], x)).collect()
    }

    /// Whether the principal submatrix `A[X]` is nonsingular; `A[∅]` counts as nonsingular.
    pub fn principal_nonsingular(&self, x: Set) -> Result<bool> {
        self.require_symmetric()?;
        if x & !bits::full(self.ncols()) != 0 {
            return Err(Error::Label("subset outside the index range".into()));
        }
        Ok(rank_of_words(&self.principal_words(x)) == bits::len(x))
    }

    pub fn principal_nonsingular_labels<S: AsRef<str>>(&self, x: &[S]) -> Result<bool> {
        let s = self.col_set(x)?;
        self.principal_nonsingular(s)
    }

    /// The principal pivot transform `A * X` of a symmetric matrix.
    ///
    /// With `A = [[a, b], [c, d]]` split along `X`, the result is
    /// `[[a^-1, a^-1 b], [c a^-1, d + c a^-1 b]]` (no signs over GF(2)).
    pub fn pivot(&self, x: Set) -> Result<Gf2Matrix> {
        if !self.principal_nonsingular(x)? {
            return Err(Error::Pivot("principal submatrix is singular".into()));
        }
        let n = self.ncols();
        let xs: Vec<usize> = bits::iter(x).collect();
        let ys: Vec<usize> = bits::iter(bits::full(n) & !x).collect();
        let k = xs.len();
        let inv = invert(&self.principal_words(x), k).expect("checked nonsingular");
        let entry = |i: usize, j: usize| bits::contains(self.rows[i], j);
        // ab[p][q] = (a^-1 b)[p][q]
        let ab: Vec<Vec<bool>> = (0..k)
            .map(|p| {
                ys.iter()
                    .map(|&yq| bits::iter(inv[p]).filter(|&t| entry(xs[t], yq)).count() % 2 == 1)
                    .collect()
            })
            .collect();
        let mut out = vec![0u64; n];
        for p in 0..k {
            for t in bits::iter(inv[p]) {
                out[xs[p]] |= 1 << xs[t];
            }
            for (q, &yq) in ys.iter().enumerate() {
                if ab[p][q] {
                    out[xs[p]] |= 1 << yq;
                    // c a^-1 is the transpose of a^-1 b by symmetry
                    out[yq] |= 1 << xs[p];
                }
            }
        }
        for &y1 in &ys {
            for (q2, &y2) in ys.iter().enumerate() {
                let corr = (0..k).filter(|&t| entry(y1, xs[t]) && ab[t][q2]).count() % 2 == 1;
                if entry(y1, y2) != corr {
                    out[y1] |= 1 << y2;
                }
            }
        }
        Ok(Gf2Matrix {
            row_labels: self.row_labels.clone(),
            col_labels: self.col_labels.clone(),
            rows: out,
        })
    }

    /// The family `F(A)` of subsets `X` with `A[X]` nonsingular, sorted.
    pub fn nonsingular_family(&self) -> Result<Vec<Set>> {
        self.require_symmetric()?;
        let n = self.ncols();
        if n > 20 {
            return Err(Error::Resource { what: "principal-minor enumeration", limit: 20, got: n });
        }
        let mut out = Vec::new();
        for x in bits::all_subsets(bits::full(n)) {
            if rank_of_words(&self.principal_words(x)) == bits::len(x) {
                out.push(x);
            }
        }
        Ok(out)
    }

    /// Keep only the listed rows and columns (principal restriction for square matrices).
    pub fn restrict(&self, rows: Set, cols: Set) -> Gf2Matrix {
        let row_labels = bits::iter(rows).map(|i| self.row_labels[i].clone()).collect();
        let col_labels = bits::iter(cols).map(|j| self.col_labels[j].clone()).collect();
        let words = bits::iter(rows).map(|i| bits::compress(self.rows[i], cols)).collect();
        Gf2Matrix { row_labels, col_labels, rows: words }
    }

    /// Row-reduced copy with zero rows removed (same row space).
    pub fn row_reduced(&self) -> Gf2Matrix {
        let rows = reduced_basis(&self.rows);
        let row_labels = (0..rows.len()).map(|i| format!("r{i}")).collect();
        Gf2Matrix { row_labels, col_labels: self.col_labels.clone(), rows }
    }

    /// Rows as `0`/`1` strings.
    pub fn row_strings(&self) -> Vec<String> {
        self.rows
            .iter()
            .map(|r| (0..self.ncols()).map(|j| if bits::contains(*r, j) { '1' } else { '0' }).collect())
            .collect()
    }
}

/// Rank of a list of words viewed as vectors over GF(2).
pub fn rank_of_words(words: &[u64]) -> usize {
    let mut basis = XorBasis::default();
    words.iter().filter(|&&w| basis.insert(w)).count()
}

/// Reduced row echelon basis of the span of `words`, leading bits ascending.
pub fn reduced_basis(words: &[u64]) -> Vec<u64> {
    let mut rows: Vec<u64> = words.iter().copied().filter(|w| *w != 0).collect();
    let mut r = 0;
    for col in 0..64 {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| bits::contains(rows[i], col)) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r];
        for i in 0..rows.len() {
            if i != r && bits::contains(rows[i], col) {
                rows[i] ^= pivot;
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}

/// Inverse of a `k x k` matrix given as packed rows, or `None` if singular.
pub fn invert(rows: &[u64], k: usize) -> Option<Vec<u64>> {
    let mut a: Vec<u64> = rows.to_vec();
    let mut inv: Vec<u64> = (0..k).map(|i| 1u64 << i).collect();
    for col in 0..k {
        let p = (col..k).find(|&i| bits::contains(a[i], col))?;
        a.swap(col, p);
        inv.swap(col, p);
        for i in 0..k {
            if i != col && bits::contains(a[i], col) {
                a[i] ^= a[col];
                inv[i] ^= inv[col];
            }
        }
    }
    Some(inv)
}

/// Incremental basis for a subspace of GF(2)^64, keyed by leading bit.
#[derive(Clone, Debug, Default)]
pub struct XorBasis {
    vecs: Vec<u64>,
}

impl XorBasis {
    /// Reduce `w` against the basis.
    pub fn reduce(&self, mut w: u64) -> u64 {
        for &b in &self.vecs {
            let lead = 63 - b.leading_zeros();
            if w >> lead & 1 == 1 {
                w ^= b;
            }
        }
        w
    }

    /// Insert `w`; returns true when it increased the dimension.
    pub fn insert(&mut self, w: u64) -> bool {
        let r = self.reduce(w);
        if r == 0 {
            return false;
        }
        // Keep vectors ordered by decreasing leading bit so that one pass of
        // `reduce` suffices.
        let lead = 63 - r.leading_zeros();
        let pos = self
            .vecs
            .iter()
            .position(|b| 63 - b.leading_zeros() < lead)
            .unwrap_or(self.vecs.len());
        self.vecs.insert(pos, r);
        true
    }

    pub fn contains(&self, w: u64) -> bool {
        self.reduce(w) == 0
    }

    pub fn dim(&self) -> usize {
        self.vecs.len()
    }

    pub fn vectors(&self) -> &[u64] {
        &self.vecs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(n: usize, p: &str) -> Vec<String> {
        (0..n).map(|i| format!("{p}{i}")).collect()
    }

    #[test]
    fn rank_examples() {
        let a7 = Gf2Matrix::from_strings(labels(3, "r"), labels(7, "c"), &["1001011", "0101101", "0010111"]).unwrap();
        assert_eq!(a7.rank(), 3);
        assert_eq!(Gf2Matrix::identity(labels(3, "x")).unwrap().rank(), 3);
        assert_eq!(Gf2Matrix::zero(labels(4, "r"), labels(6, "c")).unwrap().rank(), 0);
    }

    #[test]
    fn principal_examples() {
        let k2 = Gf2Matrix::from_strings(labels(2, "v"), labels(2, "v"), &["01", "10"]).unwrap();
        assert!(k2.principal_nonsingular(0).unwrap());
        assert!(k2.principal_nonsingular(0b11).unwrap());
        let k3 = Gf2Matrix::from_strings(labels(3, "v"), labels(3, "v"), &["011", "101", "110"]).unwrap();
        assert!(!k3.principal_nonsingular(0b111).unwrap());
        assert!(k3.principal_nonsingular_labels(&["v9"]).is_err());
    }

    #[test]
    fn pivot_small() {
        let one = Gf2Matrix::from_strings(labels(1, "v"), labels(1, "v"), &["1"]).unwrap();
        assert_eq!(one.pivot(1).unwrap(), one);
        let k3 = Gf2Matrix::from_strings(labels(3, "v"), labels(3, "v"), &["011", "101", "110"]).unwrap();
        assert_eq!(k3.pivot(0).unwrap(), k3);
        assert!(matches!(k3.pivot(0b1), Err(Error::Pivot(_))));
        let p = k3.pivot(0b11).unwrap();
        assert_eq!(p.pivot(0b11).unwrap(), k3);
    }

    #[test]
    fn xor_basis() {
        let mut b = XorBasis::default();
        assert!(b.insert(0b110));
        assert!(b.insert(0b011));
        assert!(!b.insert(0b101));
        assert!(b.contains(0b101));
        assert_eq!(b.dim(), 2);
        assert_eq!(reduced_basis(&[0b110, 0b011, 0b101]), vec![0b101, 0b110]);
        assert!(invert(&[0b01, 0b11], 2).is_some());
        assert!(invert(&[0b11, 0b11], 2).is_none());
    }
}
