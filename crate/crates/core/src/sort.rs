//! The stack-sorting map, its iterates, exact preimage enumeration, and
//! fertility counting.
//!
//! The map sends the empty permutation to itself; for `p = L m R` with `m`
//! the largest entry, `s(p) = s(L) s(R) m`. The *fertility* of `p` is the
//! number of its preimages under `s`.

use std::collections::{BTreeSet, HashMap};

use num::{BigUint, One, Zero};

use crate::error::Error;
use crate::perm::{all_permutations, normalize_word, Permutation};
use crate::Result;

/// One application of the stack-sorting map.
pub fn sort_once(p: &Permutation) -> Permutation {
    let mut out = Vec::with_capacity(p.len());
    sort_word(p.entries(), &mut out);
    Permutation::from_vec_unchecked(out)
}

fn sort_word(w: &[u32], out: &mut Vec<u32>) {
    if w.is_empty() {
        return;
    }
    let (mi, &mv) = w.iter().enumerate().max_by_key(|&(_, &v)| v).unwrap();
    sort_word(&w[..mi], out);
    sort_word(&w[mi + 1..], out);
    out.push(mv);
}

/// The `t`-fold iterate of the stack-sorting map.
pub fn sort_iterate(p: &Permutation, t: usize) -> Permutation {
    let mut q = p.clone();
    for _ in 0..t {
        q = sort_once(&q);
    }
    q
}

/// True iff `t` passes sort the permutation into increasing order.
pub fn is_t_stack_sortable(p: &Permutation, t: usize) -> bool {
    let mut sorted = p.entries().to_vec();
    sorted.sort_unstable();
    sort_iterate(p, t).entries() == sorted.as_slice()
}

/// The exact preimage set of `p`, over permutations of the same entry set.
///
/// If the last entry is not the maximum the set is empty. Otherwise every
/// preimage arises from a split of `p` minus its last entry into a prefix
/// `A` and suffix `B`: preimages are `L m R` with `s(L) = A` and `s(R) = B`.
/// Distinct splits place the maximum at distinct positions, so no output is
/// produced twice.
pub fn preimages(p: &Permutation) -> BTreeSet<Permutation> {
    preimage_words(p.entries())
        .into_iter()
        .map(Permutation::from_vec_unchecked)
        .collect()
}

fn preimage_words(w: &[u32]) -> Vec<Vec<u32>> {
    if w.is_empty() {
        return vec![Vec::new()];
    }
    let n = w.len();
    let max = *w.iter().max().unwrap();
    if w[n - 1] != max {
        return Vec::new();
    }
    let prefix = &w[..n - 1];
    let mut out = Vec::new();
    for i in 0..n {
        let left = preimage_words(&prefix[..i]);
        if left.is_empty() {
            continue;
        }
        let right = preimage_words(&prefix[i..]);
        for l in &left {
            for r in &right {
                let mut q = Vec::with_capacity(n);
                q.extend_from_slice(l);
                q.push(max);
                q.extend_from_slice(r);
                out.push(q);
            }
        }
    }
    out
}

/// Memoized fertility counter.
///
/// Fertility is invariant under normalization, so the memo is keyed by the
/// normalization of each subword; this is what keeps the class sums feasible
/// at length 10 and beyond. Counters are arbitrary-precision.
#[derive(Default)]
pub struct FertilityOracle {
    memo: HashMap<Vec<u32>, BigUint>,
}

impl FertilityOracle {
    pub fn new() -> Self {
        Self::default()
    }

    /// `|s^{-1}(p)|`, without materializing the preimages.
    pub fn fertility(&mut self, p: &Permutation) -> BigUint {
        self.count(p.entries())
    }

    fn count(&mut self, w: &[u32]) -> BigUint {
        if w.is_empty() {
            return BigUint::one();
        }
        let n = w.len();
        let max = *w.iter().max().unwrap();
        if w[n - 1] != max {
            return BigUint::zero();
        }
        let key = normalize_word(w);
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let prefix = &w[..n - 1];
        let mut total = BigUint::zero();
        for i in 0..n {
            let a = self.count(&prefix[..i]);
            if a.is_zero() {
                continue;
            }
            total += a * self.count(&prefix[i..]);
        }
        self.memo.insert(key, total.clone());
        total
    }
}

/// Fertility of a single permutation with a throwaway memo table.
pub fn fertility(p: &Permutation) -> BigUint {
    FertilityOracle::new().fertility(p)
}

/// Fertility computed by decomposing at a tail-bound descent `d` (1-based):
/// the sum over hooks at `d` of the product of the two parts' fertilities.
///
/// The hypothesis that `d` is tail-bound is required and checked; the parts'
/// fertilities are computed by direct recursion, so this serves as an
/// independent cross-check of the decomposition.
pub fn fertility_by_decomposition(
    p: &Permutation,
    d: usize,
    oracle: &mut FertilityOracle,
) -> Result<BigUint> {
    if !p.tail_bound_descents()?.contains(&d) {
        return Err(Error::NotTailBoundDescent(d));
    }
    let mut total = BigUint::zero();
    for h in p.hooks_from(d) {
        let (unsheltered, sheltered) = p.split_by_hook(h)?;
        total += oracle.fertility(&unsheltered) * oracle.fertility(&sheltered);
    }
    Ok(total)
}

/// `W_t(n)`: the number of `t`-stack-sortable permutations in `S_n`,
/// counted exhaustively. Refuses lengths above `cap`.
pub fn count_t_sortable(n: usize, t: usize, cap: usize) -> Result<BigUint> {
    if n > cap {
        return Err(Error::CapExceeded { requested: n, cap });
    }
    let mut count = BigUint::zero();
    for p in all_permutations(n) {
        if is_t_stack_sortable(&p, t) {
            count += BigUint::one();
        }
    }
    Ok(count)
}
