//! Small helpers for element sets stored as `u64` bitsets.
//!
//! Every structure in this crate maps its labels to dense indices `0..n` with
//! `n <= 64`; a set of elements is then a single machine word.

/// A set of dense indices.
pub type Set = u64;

/// Maximum ground-set size representable by [`Set`].
pub const MAX_ELEMENTS: usize = 64;

/// The set `{0, .., n-1}`.
#[inline]
pub fn full(n: usize) -> Set {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[inline]
pub fn singleton(i: usize) -> Set {
    1u64 << i
}

#[inline]
pub fn contains(s: Set, i: usize) -> bool {
    s >> i & 1 == 1
}

#[inline]
pub fn len(s: Set) -> usize {
    s.count_ones() as usize
}

/// Iterate the members of `s` in increasing order.
pub fn iter(mut s: Set) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if s == 0 {
            None
        } else {
            let i = s.trailing_zeros() as usize;
            s &= s - 1;
            Some(i)
        }
    })
}

pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Set {
    it.into_iter().fold(0, |acc, i| acc | singleton(i))
}

/// All `k`-element subsets of `universe`, in increasing numeric order.
pub fn subsets_of_size(universe: Set, k: usize) -> Vec<Set> {
    let m = len(universe);
    let mut out = Vec::new();
    if k > m {
        return out;
    }
    if k == 0 {
        out.push(0);
        return out;
    }
    // Gosper's hack over the packed index space, then spread back out.
    let limit: u128 = 1u128 << m;
    let mut c: u128 = (1u128 << k) - 1;
    while c < limit {
        out.push(expand(c as u64, universe));
        let u = c & c.wrapping_neg();
        let v = c + u;
        c = v + (((v ^ c) / u) >> 2);
    }
    out
}

/// Every subset of `universe` (including `0` and `universe`), numeric order.
pub fn all_subsets(universe: Set) -> impl Iterator<Item = Set> {
    let mut cur: Option<Set> = Some(0);
    std::iter::from_fn(move || {
        let s = cur?;
        cur = if s == universe {
            None
        } else {
            Some((s.wrapping_sub(universe)) & universe)
        };
        Some(s)
    })
}

/// Re-index `s`, keeping only the members of `keep`, packed to the low bits.
pub fn compress(s: Set, keep: Set) -> Set {
    let mut out = 0;
    for (j, i) in iter(keep).enumerate() {
        if contains(s, i) {
            out |= singleton(j);
        }
    }
    out
}

/// Inverse of [`compress`]: spread the low bits of `s` onto the members of `keep`.
pub fn expand(s: Set, keep: Set) -> Set {
    let mut out = 0;
    for (j, i) in iter(keep).enumerate() {
        if contains(s, j) {
            out |= singleton(i);
        }
    }
    out
}
