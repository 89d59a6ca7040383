//! Integer compositions under the dominance order, order-ideal sizes, and
//! the identity tying Catalan products to the closed-form descent counts.

use std::fmt;
use std::str::FromStr;

use num::{BigUint, One, Zero};

use crate::classes::closed_form_231_312_321;
use crate::error::Error;
use crate::numbers::catalan_numbers;
use crate::Result;

/// A tuple of positive integers; `a` parts summing to `b`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Composition {
    parts: Vec<u32>,
}

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::ParseComposition("a composition needs at least one part".into()));
        }
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::ParseComposition("parts must be positive".into()));
        }
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of parts.
    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    /// Sum of parts.
    pub fn total(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn prefix_sums(&self) -> Vec<u32> {
        let mut sums = Vec::with_capacity(self.parts.len());
        let mut acc = 0;
        for &p in &self.parts {
            acc += p;
            sums.push(acc);
        }
        sums
    }

    /// True iff `self` is dominated by `other`: every prefix sum of `self`
    /// is at most the corresponding prefix sum of `other`. Requires the same
    /// number of parts and the same total.
    pub fn dominated_by(&self, other: &Composition) -> Result<bool> {
        if self.num_parts() != other.num_parts() || self.total() != other.total() {
            return Err(Error::MismatchedComposition(format!(
                "{self} vs {other}"
            )));
        }
        Ok(self
            .prefix_sums()
            .iter()
            .zip(other.prefix_sums())
            .all(|(&s, o)| s <= o))
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_comma_list(f, &self.parts)
    }
}

fn write_comma_list(f: &mut fmt::Formatter<'_>, parts: &[u32]) -> fmt::Result {
    let mut first = true;
    for p in parts {
        if !first {
            write!(f, ",")?;
        }
        write!(f, "{p}")?;
        first = false;
    }
    Ok(())
}

/// Comma-separated parts, e.g. `"2,1,3"`.
impl FromStr for Composition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::ParseComposition(format!("invalid part '{tok}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        Composition::new(parts)
    }
}

/// All compositions of `b` into `a` parts, lexicographically. Empty when
/// `b < a` (or `a == 0` with `b > 0`).
pub fn enumerate_compositions(a: usize, b: u32) -> Vec<Composition> {
    let mut out = Vec::new();
    if a == 0 {
        return out;
    }
    let mut current = Vec::with_capacity(a);
    fn rec(current: &mut Vec<u32>, a: usize, remaining: u32, out: &mut Vec<Composition>) {
        if current.len() == a {
            if remaining == 0 {
                out.push(Composition { parts: current.clone() });
            }
            return;
        }
        let slots_left = (a - current.len() - 1) as u32;
        if remaining < slots_left + 1 {
            return;
        }
        for part in 1..=remaining - slots_left {
            current.push(part);
            rec(current, a, remaining - part, out);
            current.pop();
        }
    }
    rec(&mut current, a, b, &mut out);
    out
}

/// The size of the dominance order ideal below `x`: the number of
/// compositions with the same shape whose prefix sums never exceed those of
/// `x`. Computed by a prefix-sum dynamic program over positions.
pub fn ideal_size(x: &Composition) -> BigUint {
    let caps = x.prefix_sums();
    let b = *caps.last().unwrap() as usize;
    let mut ways = vec![BigUint::zero(); b + 1];
    ways[0] = BigUint::one();
    for (t, &cap) in caps.iter().enumerate() {
        let cap = cap as usize;
        let mut next = vec![BigUint::zero(); b + 1];
        let mut below = BigUint::zero();
        for s in 0..=cap {
            if s > 0 {
                below += &ways[s - 1];
            }
            // After t+1 parts of size >= 1, the running sum is at least t+1.
            if s >= t + 1 {
                next[s] = below.clone();
            }
        }
        ways = next;
    }
    ways[b].clone()
}

/// Independent route: enumerate the whole composition set and filter by
/// dominance.
pub fn ideal_size_oracle(x: &Composition) -> BigUint {
    let count = enumerate_compositions(x.num_parts(), x.total())
        .iter()
        .filter(|y| y.dominated_by(x).unwrap())
        .count();
    BigUint::from(count)
}

/// A partition: weakly decreasing positive parts (zeros trimmed).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::ParseComposition("partition parts must be weakly decreasing".into()));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Self { parts })
    }

    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_comma_list(f, &self.parts)
    }
}

/// The partition whose Young diagram plays the role of the dominance ideal
/// of `x`: subdiagram counting against it reproduces [`ideal_size`].
///
/// Writing `X_t` for the prefix sums of `x` with `a` parts, the shape is
/// `(X_{a-1} - (a-1), X_{a-2} - (a-2), ..., X_1 - 1)`. This orientation is
/// the one validated against the enumeration oracle: compositions dominated
/// by `x` correspond to their prefix-sum slack read as a partition inside
/// this shape.
pub fn ideal_shape(x: &Composition) -> Partition {
    let caps = x.prefix_sums();
    let a = x.num_parts();
    let parts: Vec<u32> = (1..a)
        .rev()
        .map(|t| caps[t - 1] - t as u32)
        .collect();
    Partition::new(parts).unwrap()
}

/// Number of partitions whose Young diagram fits inside `shape`, including
/// the empty partition.
pub fn subdiagram_count(shape: &Partition) -> BigUint {
    let rows = shape.parts();
    if rows.is_empty() {
        return BigUint::one();
    }
    // ways[v] = number of choices for the rows so far with current row = v.
    let mut ways: Vec<BigUint> = vec![BigUint::one(); rows[0] as usize + 1];
    for &row in &rows[1..] {
        let mut suffix = vec![BigUint::zero(); ways.len() + 1];
        for u in (0..ways.len()).rev() {
            suffix[u] = &suffix[u + 1] + &ways[u];
        }
        ways = (0..=row as usize).map(|v| suffix[v].clone()).collect();
    }
    ways.iter().sum()
}

/// The product of Catalan numbers over the parts.
pub fn catalan_product(x: &Composition) -> BigUint {
    let cat = catalan_numbers(x.parts.iter().copied().max().unwrap_or(0) as usize);
    x.parts.iter().map(|&p| cat[p as usize].clone()).product()
}

/// `sum over Comp_{k+1}(n-k) of C_q * D_q`.
pub fn composition_catalan_sum(n: usize, k: usize) -> BigUint {
    if n < k {
        return BigUint::zero();
    }
    enumerate_compositions(k + 1, (n - k) as u32)
        .iter()
        .map(|q| catalan_product(q) * ideal_size(q))
        .sum()
}

/// The composition-sum identity: the Catalan/ideal sum over
/// `Comp_{k+1}(n-k)` equals the closed form `binom(n-k-1,k) binom(2n-2k,n) / (n+1)`.
/// Both sides vanish together when the composition set is empty.
pub fn composition_identity_holds(n: usize, k: usize) -> bool {
    composition_catalan_sum(n, k) == closed_form_231_312_321(n, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::binomial;

    fn c(parts: &[u32]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_compositions(2, 3), vec![c(&[1, 2]), c(&[2, 1])]);
        assert_eq!(enumerate_compositions(1, 5), vec![c(&[5])]);
        assert_eq!(enumerate_compositions(3, 5).len(), 6);
        assert!(enumerate_compositions(4, 3).is_empty());
        // |Comp_a(b)| = binom(b-1, a-1).
        for a in 1..=5usize {
            for b in 1..=9u32 {
                assert_eq!(
                    BigUint::from(enumerate_compositions(a, b).len()),
                    binomial(b as i64 - 1, a as i64 - 1)
                );
            }
        }
    }

    #[test]
    fn dominance_examples() {
        assert!(c(&[1, 2]).dominated_by(&c(&[2, 1])).unwrap());
        assert!(!c(&[2, 1]).dominated_by(&c(&[1, 2])).unwrap());
        assert!(c(&[2, 1]).dominated_by(&c(&[2, 1])).unwrap());
        assert!(c(&[1, 2]).dominated_by(&c(&[1, 1])).is_err());
        assert!(c(&[1, 2]).dominated_by(&c(&[1, 1, 1])).is_err());
    }

    #[test]
    fn dominance_is_a_partial_order() {
        for (a, b) in [(3usize, 6u32), (4, 6), (2, 8)] {
            let comps = enumerate_compositions(a, b);
            for x in &comps {
                assert!(x.dominated_by(x).unwrap());
                for y in &comps {
                    if x.dominated_by(y).unwrap() && y.dominated_by(x).unwrap() {
                        assert_eq!(x, y);
                    }
                    for z in &comps {
                        if x.dominated_by(y).unwrap() && y.dominated_by(z).unwrap() {
                            assert!(x.dominated_by(z).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn ideal_size_examples() {
        assert_eq!(ideal_size(&c(&[2, 1])), BigUint::from(2u32));
        assert_eq!(ideal_size(&c(&[1, 1, 1, 1])), BigUint::one());
        // Maximal first part dominates the whole set.
        let x = c(&[5, 1, 1]);
        assert_eq!(
            ideal_size(&x),
            BigUint::from(enumerate_compositions(3, 7).len())
        );
    }

    #[test]
    fn ideal_size_matches_oracle() {
        for a in 1..=6usize {
            for b in a as u32..=(13 - a as u32) {
                for x in enumerate_compositions(a, b) {
                    assert_eq!(ideal_size(&x), ideal_size_oracle(&x), "x = {x}");
                }
            }
        }
    }

    #[test]
    fn shape_and_subdiagram_counts() {
        assert_eq!(ideal_shape(&c(&[2, 1])).parts(), &[1]);
        assert_eq!(ideal_shape(&c(&[1, 2])), Partition::empty());
        assert_eq!(subdiagram_count(&Partition::empty()), BigUint::one());
        assert_eq!(
            subdiagram_count(&Partition::new(vec![1]).unwrap()),
            BigUint::from(2u32)
        );
        assert_eq!(
            subdiagram_count(&Partition::new(vec![2, 1]).unwrap()),
            BigUint::from(5u32)
        );
    }

    #[test]
    fn shape_counting_matches_ideal_size() {
        for a in 1..=5usize {
            for b in a as u32..=10 {
                for x in enumerate_compositions(a, b) {
                    assert_eq!(
                        subdiagram_count(&ideal_shape(&x)),
                        ideal_size(&x),
                        "x = {x}"
                    );
                }
            }
        }
    }

    #[test]
    fn catalan_product_examples() {
        assert_eq!(catalan_product(&c(&[1, 1])), BigUint::one());
        assert_eq!(catalan_product(&c(&[5])), BigUint::from(42u32));
        assert_eq!(catalan_product(&c(&[2, 3])), BigUint::from(10u32));
    }

    #[test]
    fn composition_identity_examples() {
        // Comp_2(2) = {(1,1)}: the sum is 1.
        assert_eq!(composition_catalan_sum(3, 1), BigUint::one());
        assert!(composition_identity_holds(3, 1));
        // k = 0 reduces to a single composition (n).
        for n in 1..=10 {
            assert_eq!(composition_catalan_sum(n, 0), crate::numbers::catalan(n));
            assert!(composition_identity_holds(n, 0));
        }
        // Empty composition sets match the vanishing binomial.
        assert!(composition_identity_holds(4, 4));
        assert!(composition_identity_holds(5, 3));
    }

    #[test]
    fn composition_identity_sweep() {
        for n in 1..=12 {
            for k in 0..=n {
                assert!(composition_identity_holds(n, k), "(n, k) = ({n}, {k})");
            }
        }
    }

    #[test]
    fn composition_parsing() {
        let x: Composition = "2,1,3".parse().unwrap();
        assert_eq!(x, c(&[2, 1, 3]));
        assert_eq!(x.to_string(), "2,1,3");
        assert!("".parse::<Composition>().is_err());
        assert!("2,0,3".parse::<Composition>().is_err());
        assert!("2,x".parse::<Composition>().is_err());
    }
}
