//! Components, the connectivity function and separations.

use super::{Matroid, Repr};
use crate::bits::{self, Set};
use crate::caps;
use crate::error::Result;
use crate::gf2::XorBasis;
use serde::{Deserialize, Serialize};

/// A partition `(X, Y)` of the ground set together with `λ(X)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Separation {
    pub side_x: Set,
    pub side_y: Set,
    pub lambda: usize,
}

impl Matroid {
    /// Components as a list of disjoint element sets, ordered by least member.
    ///
    /// Uses fundamental circuits with respect to one basis: two elements are in
    /// the same component iff they are linked by a chain of such circuits.
    pub fn components(&self) -> Vec<Set> {
        let n = self.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nx = p[y];
                p[y] = r;
                y = nx;
            }
            r
        }
        let b = self.some_basis();
        for e in bits::iter(self.ground() & !b) {
            let c = self.fundamental_circuit(b, e);
            for x in bits::iter(c) {
                let (ra, rb) = (find(&mut parent, e), find(&mut parent, x));
                if ra != rb {
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
        }
        let mut groups: Vec<(usize, Set)> = Vec::new();
        for e in 0..n {
            let r = find(&mut parent, e);
            match groups.iter_mut().find(|g| g.0 == r) {
                Some(g) => g.1 |= bits::singleton(e),
                None => groups.push((r, bits::singleton(e))),
            }
        }
        let mut out: Vec<Set> = groups.into_iter().map(|g| g.1).collect();
        out.sort_by_key(|s| s.trailing_zeros());
        out
    }

    /// Connected, with the empty matroid counting as connected.
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// `λ(X) = r(X) + r(E - X) - r(E)`.
    pub fn lambda(&self, x: Set) -> usize {
        let x = x & self.ground();
        self.rank_of(x) + self.rank_of(self.ground() & !x) - self.rank()
    }

    /// A `k`-separation with the least possible `λ`, if any.
    pub fn find_k_separation(&self, k: usize) -> Result<Option<Separation>> {
        if k == 0 {
            return Ok(None);
        }
        for lam in 0..k {
            if let Some(s) = self.find_separation(lam, k)? {
                return Ok(Some(s));
            }
        }
        Ok(None)
    }

    /// Connected and without 2-separations.
    pub fn is_3_connected(&self) -> Result<bool> {
        if !self.is_connected() {
            return Ok(false);
        }
        Ok(self.find_separation(1, 2)?.is_none())
    }

    /// Search for a partition with `λ <= max_lambda` and both sides of size at
    /// least `min_side`.
    ///
    /// Depth-first over element assignments; since `r(X') + r(Y')` only grows as
    /// elements are assigned, a branch is cut as soon as it exceeds
    /// `r(E) + max_lambda`. The first element is pinned to `X`.
    pub fn find_separation(&self, max_lambda: usize, min_side: usize) -> Result<Option<Separation>> {
        let n = self.len();
        caps::check("separation scan", caps::get().separation, n)?;
        if n < 2 * min_side.max(1) {
            return Ok(None);
        }
        if max_lambda == 1 && min_side == 2 {
            if let Repr::Binary { cols, .. } = &self.repr {
                if self.is_connected() {
                    let found = two_separation_binary(cols, self.some_basis());
                    return Ok(found.map(|x| Separation { side_x: x, side_y: self.ground() & !x, lambda: self.lambda(x) }));
                }
            }
        }
        let order = self.dense_order();
        let budget = self.rank() + max_lambda;
        let found = match &self.repr {
            Repr::Binary { cols, .. } => {
                let mut st = Dfs { order: &order, min_side, budget, best: None, n };
                st.run_binary(cols, 1, bits::singleton(order[0]), 0, {
                    let mut b = XorBasis::default();
                    b.insert(cols[order[0]]);
                    b
                }, XorBasis::default());
                st.best
            }
            Repr::Bases { .. } => {
                let mut st = Dfs { order: &order, min_side, budget, best: None, n };
                st.run_oracle(self, 1, bits::singleton(order[0]), 0);
                st.best
            }
        };
        Ok(found.map(|x| Separation { side_x: x, side_y: self.ground() & !x, lambda: self.lambda(x) }))
    }

    /// Element order that keeps prefixes as closed as possible, which makes the
    /// rank budget bite early in [`Matroid::find_separation`].
    fn dense_order(&self) -> Vec<usize> {
        let n = self.len();
        let mut order = Vec::with_capacity(n);
        let mut used = 0u64;
        let mut r = 0;
        while order.len() < n {
            let next = bits::iter(self.ground() & !used)
                .find(|&e| self.rank_of(used | bits::singleton(e)) == r)
                .unwrap_or_else(|| (self.ground() & !used).trailing_zeros() as usize);
            used |= bits::singleton(next);
            r = self.rank_of(used);
            order.push(next);
        }
        order
    }
}

/// Exact 2-separation search for a connected binary matroid.
///
/// With `A` the fundamental matrix of the basis `B`,
/// `λ(X) = rk A[X∩B, Y−B] + rk A[Y∩B, X−B]`. A connected matroid has
/// `λ(X) = 1` iff one block is zero and the other has rank one, i.e. is all
/// ones on its nonzero rows and columns. Fixing one entry `(i, j)` of that
/// block (`i ∈ X∩B`, `j ∈ Y−B`) turns both conditions into 2-clauses over the
/// side assignment, which is then solved by implication closure.
fn two_separation_binary(cols: &[u64], basis: Set) -> Option<Set> {
    let n = cols.len();
    if n < 4 {
        return None;
    }
    let rows: Vec<usize> = bits::iter(basis).collect();
    let nonb: Vec<usize> = (0..n).filter(|&e| !bits::contains(basis, e)).collect();
    // Coordinates of every column in the basis columns.
    let mut red: Vec<(u64, u64)> = Vec::new();
    for (k, &b) in rows.iter().enumerate() {
        let (mut v, mut tag) = (cols[b], 1u64 << k);
        for &(w, t) in &red {
            if v & (1u64 << (63 - w.leading_zeros())) != 0 {
                v ^= w;
                tag ^= t;
            }
        }
        red.push((v, tag));
        red.sort_by_key(|x| x.0.leading_zeros());
    }
    let coords = |c: u64| {
        let (mut v, mut tag) = (c, 0u64);
        for &(w, t) in &red {
            if v & (1u64 << (63 - w.leading_zeros())) != 0 {
                v ^= w;
                tag ^= t;
            }
        }
        debug_assert_eq!(v, 0);
        tag
    };
    // a[c] = rows (as indices into `rows`) in the fundamental circuit of nonb[c].
    let a: Vec<u64> = nonb.iter().map(|&c| coords(cols[c])).collect();
    let at = |r: usize, c: usize| a[c] >> r & 1 == 1;
    let lx = |e: usize| 2 * e;
    let ly = |e: usize| 2 * e + 1;
    let consistent = |s: u128| (0..n).all(|e| s >> lx(e) & 1 == 0 || s >> ly(e) & 1 == 0);
    for (ri, &i) in rows.iter().enumerate() {
        for (cj, &j) in nonb.iter().enumerate() {
            if !at(ri, cj) {
                continue;
            }
            let mut reach: Vec<u128> = (0..2 * n).map(|l| 1u128 << l).collect();
            let forbid = |p: usize, q: usize, reach: &mut Vec<u128>| {
                // ¬(p ∧ q): p ⇒ ¬q and q ⇒ ¬p.
                reach[p] |= 1u128 << (q ^ 1);
                reach[q] |= 1u128 << (p ^ 1);
            };
            for (r, &re) in rows.iter().enumerate() {
                for (c, &ce) in nonb.iter().enumerate() {
                    let v = at(r, c);
                    if v {
                        forbid(ly(re), lx(ce), &mut reach);
                    }
                    if v != (at(r, cj) && at(ri, c)) {
                        forbid(lx(re), ly(ce), &mut reach);
                    }
                }
            }
            for k in 0..2 * n {
                let rk = reach[k];
                for l in 0..2 * n {
                    if reach[l] >> k & 1 == 1 {
                        reach[l] |= rk;
                    }
                }
            }
            if (0..n).any(|e| reach[lx(e)] >> ly(e) & 1 == 1 && reach[ly(e)] >> lx(e) & 1 == 1) {
                continue;
            }
            let base = reach[lx(i)] | reach[ly(j)];
            if !consistent(base) {
                continue;
            }
            let mut seed = None;
            'pairs: for x in 0..n {
                if x == i || x == j || !consistent(base | reach[lx(x)]) {
                    continue;
                }
                for y in 0..n {
                    if y != x && y != i && y != j && consistent(base | reach[lx(x)] | reach[ly(y)]) {
                        seed = Some(base | reach[lx(x)] | reach[ly(y)]);
                        break 'pairs;
                    }
                }
            }
            let Some(mut s) = seed else { continue };
            for e in 0..n {
                if s >> lx(e) & 1 == 0 && s >> ly(e) & 1 == 0 {
                    let t = s | reach[lx(e)];
                    s = if consistent(t) { t } else { s | reach[ly(e)] };
                }
            }
            return Some((0..n).filter(|&e| s >> lx(e) & 1 == 1).fold(0u64, |acc, e| acc | bits::singleton(e)));
        }
    }
    None
}

struct Dfs<'a> {
    order: &'a [usize],
    min_side: usize,
    budget: usize,
    best: Option<Set>,
    n: usize,
}

impl Dfs<'_> {
    fn sides_ok(&self, pos: usize, x: Set, y: Set) -> bool {
        let rest = self.n - pos;
        bits::len(x) + rest >= self.min_side && bits::len(y) + rest >= self.min_side
    }

    fn run_binary(&mut self, cols: &[u64], pos: usize, x: Set, y: Set, bx: XorBasis, by: XorBasis) {
        if self.best.is_some() || bx.dim() + by.dim() > self.budget || !self.sides_ok(pos, x, y) {
            return;
        }
        if pos == self.n {
            self.best = Some(x);
            return;
        }
        let e = self.order[pos];
        let v = cols[e];
        // Y first, then X.
        let mut by2 = by.clone();
        by2.insert(v);
        self.run_binary(cols, pos + 1, x, y | bits::singleton(e), bx.clone(), by2);
        let mut bx2 = bx;
        bx2.insert(v);
        self.run_binary(cols, pos + 1, x | bits::singleton(e), y, bx2, by);
    }

    fn run_oracle(&mut self, m: &Matroid, pos: usize, x: Set, y: Set) {
        if self.best.is_some() || m.rank_of(x) + m.rank_of(y) > self.budget || !self.sides_ok(pos, x, y) {
            return;
        }
        if pos == self.n {
            self.best = Some(x);
            return;
        }
        let e = bits::singleton(self.order[pos]);
        self.run_oracle(m, pos + 1, x, y | e);
        self.run_oracle(m, pos + 1, x | e, y);
    }
}
