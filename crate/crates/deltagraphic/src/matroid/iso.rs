//! Isomorphism and minor containment by pruned backtracking.

use super::Matroid;
use crate::bits::{self, Set};
use crate::caps;
use crate::error::Result;
use crate::gf2;
use serde::{Deserialize, Serialize};

/// `n` appears as `m \ delete / contract`; `map[j]` is the element of `m`
/// playing the role of element `j` of `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorWitness {
    pub delete: Set,
    pub contract: Set,
    pub map: Vec<usize>,
}

/// Per-element invariant: how many circuits and cocircuits of every size contain it.
fn element_profiles(m: &Matroid) -> Result<Vec<Vec<(u8, usize, usize)>>> {
    let circ = m.circuits()?;
    let coc = m.cocircuits()?;
    let mut out = Vec::with_capacity(m.len());
    for e in 0..m.len() {
        let mut p: Vec<(u8, usize, usize)> = Vec::new();
        let mut bump = |kind: u8, size: usize| match p.iter_mut().find(|t| t.0 == kind && t.1 == size) {
            Some(t) => t.2 += 1,
            None => p.push((kind, size, 1)),
        };
        for c in circ.iter().filter(|c| bits::contains(**c, e)) {
            bump(0, bits::len(*c));
        }
        for c in coc.iter().filter(|c| bits::contains(**c, e)) {
            bump(1, bits::len(*c));
        }
        p.sort_unstable();
        out.push(p);
    }
    Ok(out)
}

struct Search<'a> {
    m: &'a Matroid,
    n: &'a Matroid,
    order: Vec<usize>,
    cand: Vec<Vec<usize>>,
    map: Vec<usize>,
    used: Set,
    binary: Option<(Vec<u64>, Vec<u64>)>,
}

impl Search<'_> {
    /// Consistency of the partial map on the first `k` elements of `order`.
    fn consistent(&self, k: usize) -> bool {
        let dom: Vec<usize> = self.order[..k].to_vec();
        if let Some((rm, rn)) = &self.binary {
            // Restrictions agree iff their cocycle spaces (projected row spaces) agree.
            let proj = |rows: &[u64], idx: &dyn Fn(usize) -> usize| -> Vec<u64> {
                rows.iter()
                    .map(|r| (0..k).fold(0u64, |a, t| if bits::contains(*r, idx(t)) { a | 1 << t } else { a }))
                    .collect()
            };
            let a = proj(rm, &|t| dom[t]);
            let b = proj(rn, &|t| self.map[dom[t]]);
            return gf2::reduced_basis(&a) == gf2::reduced_basis(&b);
        }
        // Generic oracle: every subset containing the newest element.
        let last = dom[k - 1];
        let rest: Set = dom[..k - 1].iter().fold(0, |a, &e| a | bits::singleton(e));
        for s in bits::all_subsets(rest) {
            let sm = s | bits::singleton(last);
            let sn = bits::iter(sm).fold(0u64, |a, e| a | bits::singleton(self.map[e]));
            if self.m.rank_of(sm) != self.n.rank_of(sn) {
                return false;
            }
        }
        true
    }

    fn go(&mut self, k: usize) -> bool {
        if k == self.order.len() {
            return true;
        }
        let e = self.order[k];
        for idx in 0..self.cand[e].len() {
            let f = self.cand[e][idx];
            if bits::contains(self.used, f) {
                continue;
            }
            self.map[e] = f;
            self.used |= bits::singleton(f);
            if self.consistent(k + 1) && self.go(k + 1) {
                return true;
            }
            self.used &= !bits::singleton(f);
        }
        false
    }
}

fn row_words(m: &Matroid) -> Vec<u64> {
    m.representation().map(|a| a.rows().to_vec()).unwrap_or_default()
}

/// An element bijection `map` (element `i` of `m` ↦ element `map[i]` of `n`)
/// carrying bases to bases, if one exists.
pub fn find_isomorphism(m: &Matroid, n: &Matroid) -> Result<Option<Vec<usize>>> {
    if m.len() != n.len() || m.rank() != n.rank() {
        return Ok(None);
    }
    let (m, n) = match (m.is_binary(), n.is_binary()) {
        (true, true) | (false, false) => (m.clone(), n.clone()),
        (true, false) => match n.to_binary()? {
            Some(nb) => (m.clone(), nb),
            None => return Ok(None),
        },
        (false, true) => match m.to_binary()? {
            Some(mb) => (mb, n.clone()),
            None => return Ok(None),
        },
    };
    if m.labels() == n.labels() && m.same_as(&n) {
        return Ok(Some((0..m.len()).collect()));
    }
    caps::check("isomorphism search", caps::get().minor_scan, m.len())?;
    let pm = element_profiles(&m)?;
    let pn = element_profiles(&n)?;
    let mut sm = pm.clone();
    let mut sn = pn.clone();
    sm.sort();
    sn.sort();
    if sm != sn {
        return Ok(None);
    }
    let cand: Vec<Vec<usize>> = (0..m.len()).map(|e| (0..n.len()).filter(|&f| pn[f] == pm[e]).collect()).collect();
    let mut order: Vec<usize> = (0..m.len()).collect();
    order.sort_by_key(|&e| (cand[e].len(), e));
    let binary = if m.is_binary() { Some((row_words(&m), row_words(&n))) } else { None };
    let mut s = Search { m: &m, n: &n, order, cand, map: vec![usize::MAX; m.len()], used: 0, binary };
    if s.go(0) {
        Ok(Some(s.map))
    } else {
        Ok(None)
    }
}

pub fn is_isomorphic(m: &Matroid, n: &Matroid) -> Result<bool> {
    Ok(find_isomorphism(m, n)?.is_some())
}

/// Search for `n` as a minor of `m`, contracting an independent set and
/// deleting a coindependent one. Candidates are tried in increasing bitset
/// order, so the witness is deterministic.
pub fn has_minor(m: &Matroid, n: &Matroid) -> Result<Option<MinorWitness>> {
    if n.len() > m.len() || n.rank() > m.rank() {
        return Ok(None);
    }
    let k = m.rank() - n.rank();
    let total = m.len() - n.len();
    if k > total {
        return Ok(None);
    }
    if total > 0 {
        caps::check("minor scan", caps::get().minor_scan, m.len())?;
    }
    let dcount = total - k;
    for c in bits::subsets_of_size(m.ground(), k) {
        if !m.is_independent(c) {
            continue;
        }
        let mc = m.contract(c);
        let keep = m.ground() & !c;
        for dd in bits::subsets_of_size(mc.ground(), dcount) {
            if mc.rank_of(mc.ground() & !dd) != mc.rank() {
                continue;
            }
            let minor = mc.delete(dd);
            if let Some(iso) = find_isomorphism(n, &minor)? {
                // minor element i is the i-th survivor of E - c - d.
                let d = bits::expand(dd, keep);
                let survivors: Vec<usize> = bits::iter(m.ground() & !c & !d).collect();
                let map = iso.iter().map(|&i| survivors[i]).collect();
                return Ok(Some(MinorWitness { delete: d, contract: c, map }));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::Gf2Matrix;
    use crate::matroid::numbered;

    fn f7() -> Matroid {
        let a = Gf2Matrix::from_strings(numbered("r", 3), numbered("", 7), &["1001011", "0101101", "0010111"]).unwrap();
        Matroid::from_matrix(&a).unwrap()
    }

    #[test]
    fn fano_not_self_dual() {
        let m = f7();
        assert!(find_isomorphism(&m, &m.dual()).unwrap().is_none());
        assert_eq!(find_isomorphism(&m, &m).unwrap(), Some((0..7).collect()));
    }

    #[test]
    fn relabelled_copy() {
        let m = f7();
        let order: Vec<String> = ["4", "7", "1", "2", "6", "5", "3"].iter().map(|s| s.to_string()).collect();
        let p = m.reorder(&order).unwrap();
        let iso = find_isomorphism(&m, &p).unwrap().unwrap();
        for b in m.bases().unwrap() {
            let img = bits::iter(b).fold(0u64, |a, e| a | 1 << iso[e]);
            assert!(p.bases().unwrap().contains(&img));
        }
    }

    #[test]
    fn minor_self_and_u24() {
        let m = f7();
        let w = has_minor(&m, &m).unwrap().unwrap();
        assert_eq!((w.delete, w.contract), (0, 0));
        let u24 = Matroid::from_bases(numbered("u", 4), bits::subsets_of_size(bits::full(4), 2)).unwrap();
        assert!(has_minor(&m, &u24).unwrap().is_none());
        let u23 = Matroid::from_columns(numbered("t", 3), &[1, 2, 3]).unwrap();
        let w = has_minor(&m, &u23).unwrap().unwrap();
        let again = m.minor(w.delete, w.contract).unwrap();
        assert!(is_isomorphic(&again, &u23).unwrap());
    }
}
