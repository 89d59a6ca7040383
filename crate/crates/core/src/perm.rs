//! Permutations in one-line notation, their statistics, pattern containment,
//! and plot geometry.
//!
//! A permutation here is any finite sequence of distinct positive integers;
//! it need not use the values `1..=n`. The *normalization* replaces the
//! i-th smallest entry with `i`. Several statistics (tail length, the `zeil`
//! statistic) are only meaningful for normalized permutations and reject
//! anything else instead of normalizing silently.
//!
//! Positions are 1-based throughout the public API, matching one-line
//! notation conventions.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::Result;

/// A sequence of distinct positive integers in one-line notation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    entries: Vec<u32>,
}

impl Permutation {
    /// Build a permutation, checking that all entries are positive and
    /// pairwise distinct.
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if entries.iter().any(|&e| e == 0) {
            return Err(Error::InvalidPermutation("entries must be positive".into()));
        }
        let mut seen = BTreeSet::new();
        for &e in &entries {
            if !seen.insert(e) {
                return Err(Error::InvalidPermutation(format!("duplicate entry {e}")));
            }
        }
        Ok(Self { entries })
    }

    /// Internal constructor for data already known to be valid.
    pub(crate) fn from_vec_unchecked(entries: Vec<u32>) -> Self {
        debug_assert!(Self::new(entries.clone()).is_ok());
        Self { entries }
    }

    /// The empty permutation.
    pub fn empty() -> Self {
        Self { entries: Vec::new() }
    }

    /// The identity permutation `1 2 ... n`.
    pub fn identity(n: usize) -> Self {
        Self { entries: (1..=n as u32).collect() }
    }

    /// Convenience constructor from single decimal digits, e.g. `"3241"`.
    pub fn from_digits(digits: &str) -> Result<Self> {
        let mut entries = Vec::with_capacity(digits.len());
        for c in digits.chars() {
            let d = c
                .to_digit(10)
                .ok_or_else(|| Error::ParsePermutation(format!("invalid digit '{c}'")))?;
            entries.push(d);
        }
        Self::new(entries)
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// True iff the entry set is exactly `{1, ..., n}`.
    pub fn is_normalized(&self) -> bool {
        let n = self.len() as u32;
        self.entries.iter().all(|&e| e <= n)
    }

    /// The unique order-isomorphic permutation on `{1, ..., n}`.
    pub fn normalize(&self) -> Permutation {
        Permutation::from_vec_unchecked(normalize_word(&self.entries))
    }

    /// 1-based descent positions: `i` with `p_i > p_{i+1}`.
    pub fn descents(&self) -> BTreeSet<usize> {
        (1..self.len())
            .filter(|&i| self.entries[i - 1] > self.entries[i])
            .collect()
    }

    /// Number of descents.
    pub fn des(&self) -> usize {
        self.descents().len()
    }

    /// Number of peaks: positions `i` in `2..=n-1` with `p_{i-1} < p_i > p_{i+1}`.
    pub fn peaks(&self) -> usize {
        (2..self.len())
            .filter(|&i| {
                self.entries[i - 2] < self.entries[i - 1] && self.entries[i - 1] > self.entries[i]
            })
            .count()
    }

    /// Number of right-to-left maxima.
    pub fn rmax(&self) -> usize {
        let mut best = 0u32;
        let mut count = 0;
        for &e in self.entries.iter().rev() {
            if e > best {
                best = e;
                count += 1;
            }
        }
        count
    }

    /// Tail length: the smallest `l >= 0` with `p_{n-l} != n-l`, and `n` for
    /// the identity. Rejects non-normalized input.
    pub fn tail_length(&self) -> Result<usize> {
        if !self.is_normalized() {
            return Err(Error::NotNormalized(self.to_string()));
        }
        let n = self.len();
        for l in 0..n {
            if self.entries[n - l - 1] != (n - l) as u32 {
                return Ok(l);
            }
        }
        Ok(n)
    }

    /// The largest `m >= 1` such that `n, n-1, ..., n-m+1` appear in
    /// decreasing order. Rejects empty or non-normalized input.
    pub fn zeil(&self) -> Result<usize> {
        if self.is_empty() {
            return Err(Error::EmptyPermutation);
        }
        if !self.is_normalized() {
            return Err(Error::NotNormalized(self.to_string()));
        }
        let n = self.len();
        let mut pos = vec![0usize; n + 1];
        for (i, &e) in self.entries.iter().enumerate() {
            pos[e as usize] = i;
        }
        let mut m = 1;
        while m < n && pos[n - m] > pos[n - m + 1] {
            m += 1;
        }
        Ok(m)
    }

    /// All hooks with southwest endpoint at position `sw` (1-based): every
    /// `ne > sw` with `p_sw < p_ne`.
    pub fn hooks_from(&self, sw: usize) -> Vec<Hook> {
        assert!(sw >= 1 && sw <= self.len(), "position {sw} out of range");
        let v = self.entries[sw - 1];
        (sw + 1..=self.len())
            .filter(|&ne| self.entries[ne - 1] > v)
            .map(|ne| Hook { sw, ne })
            .collect()
    }

    /// Descents `d` all of whose hooks end in the tail. Rejects
    /// non-normalized input (the tail is only defined there).
    pub fn tail_bound_descents(&self) -> Result<BTreeSet<usize>> {
        let tail_start = self.len() - self.tail_length()? + 1;
        Ok(self
            .descents()
            .into_iter()
            .filter(|&d| self.hooks_from(d).iter().all(|h| h.ne >= tail_start))
            .collect())
    }

    /// Split along a hook into the unsheltered part
    /// `p_1 .. p_i p_{j+1} .. p_n` and the sheltered part `p_{i+1} .. p_{j-1}`.
    pub fn split_by_hook(&self, hook: Hook) -> Result<(Permutation, Permutation)> {
        self.check_hook(hook)?;
        let (i, j) = (hook.sw, hook.ne);
        let mut unsheltered = self.entries[..i].to_vec();
        unsheltered.extend_from_slice(&self.entries[j..]);
        let sheltered = self.entries[i..j - 1].to_vec();
        Ok((
            Permutation::from_vec_unchecked(unsheltered),
            Permutation::from_vec_unchecked(sheltered),
        ))
    }

    fn check_hook(&self, hook: Hook) -> Result<()> {
        let n = self.len();
        let bad = |reason: &str| Error::IllegalHook {
            sw: hook.sw,
            ne: hook.ne,
            reason: reason.into(),
        };
        if hook.sw < 1 || hook.ne > n {
            return Err(bad("position out of range"));
        }
        if hook.sw >= hook.ne {
            return Err(bad("southwest position must precede northeast position"));
        }
        if self.entries[hook.sw - 1] >= self.entries[hook.ne - 1] {
            return Err(bad("southwest entry must be below northeast entry"));
        }
        Ok(())
    }

    /// True iff the host contains the (possibly vincular) pattern.
    pub fn contains(&self, pat: &VincularPattern) -> bool {
        let m = pat.pattern.len();
        if m == 0 {
            return true;
        }
        if m > self.len() {
            return false;
        }
        let mut chosen: Vec<usize> = Vec::with_capacity(m);
        self.search(pat, &mut chosen)
    }

    /// Backtracking over index tuples, pruning by partial order-isomorphism.
    fn search(&self, pat: &VincularPattern, chosen: &mut Vec<usize>) -> bool {
        let m = pat.pattern.len();
        let t = chosen.len();
        if t == m {
            return true;
        }
        let pv = pat.pattern.entries();
        // Bond t (1-based) forces host positions of pattern positions t, t+1
        // to be adjacent.
        let range: Box<dyn Iterator<Item = usize>> = if t == 0 {
            Box::new(0..self.len())
        } else if pat.bonds.contains(&t) {
            let next = chosen[t - 1] + 1;
            Box::new(next..(next + 1).min(self.len()))
        } else {
            Box::new(chosen[t - 1] + 1..self.len())
        };
        for cand in range {
            if self.len() - cand < m - t {
                break;
            }
            let ok = (0..t).all(|j| {
                (pv[j] < pv[t]) == (self.entries[chosen[j]] < self.entries[cand])
            });
            if ok {
                chosen.push(cand);
                if self.search(pat, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }

    /// True iff the host avoids every pattern in the list.
    pub fn avoids_all(&self, pats: &[VincularPattern]) -> bool {
        pats.iter().all(|p| !self.contains(p))
    }
}

/// All of `S_n` in lexicographic order.
pub fn all_permutations(n: usize) -> impl Iterator<Item = Permutation> {
    use itertools::Itertools;
    (1..=n as u32)
        .permutations(n)
        .map(Permutation::from_vec_unchecked)
}

/// Normalization of a word of distinct entries, as raw entries.
pub(crate) fn normalize_word(word: &[u32]) -> Vec<u32> {
    let mut sorted: Vec<u32> = word.to_vec();
    sorted.sort_unstable();
    word.iter()
        .map(|e| (sorted.binary_search(e).unwrap() + 1) as u32)
        .collect()
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for e in &self.entries {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{e}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

/// Text format: decimal entries separated by single spaces.
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for tok in s.split_whitespace() {
            let e: u32 = tok
                .parse()
                .map_err(|_| Error::ParsePermutation(format!("invalid entry '{tok}'")))?;
            entries.push(e);
        }
        Permutation::new(entries).map_err(|e| Error::ParsePermutation(e.to_string()))
    }
}

/// A hook of a permutation plot: a vertical segment up from position `sw`
/// meeting a horizontal segment left of position `ne`, with `sw < ne` and
/// `p_sw < p_ne`. Positions are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Hook {
    pub sw: usize,
    pub ne: usize,
}

/// A pattern whose underlined (bonded) positions must be matched to adjacent
/// host positions. An empty bond set is a classical pattern.
///
/// `bonds` holds 1-based left indices: bond `i` means pattern positions `i`
/// and `i+1` map to adjacent host positions.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VincularPattern {
    pattern: Permutation,
    bonds: BTreeSet<usize>,
}

impl VincularPattern {
    /// Build a vincular pattern; the underlying permutation must be
    /// normalized and every bond must lie in `1..=m-1`.
    pub fn new(pattern: Permutation, bonds: BTreeSet<usize>) -> Result<Self> {
        if !pattern.is_normalized() {
            return Err(Error::NotNormalized(pattern.to_string()));
        }
        if let Some(&b) = bonds.iter().find(|&&b| b == 0 || b >= pattern.len()) {
            return Err(Error::ParsePattern(format!(
                "bond {b} out of range for a pattern of length {}",
                pattern.len()
            )));
        }
        Ok(Self { pattern, bonds })
    }

    /// A classical (bond-free) pattern.
    pub fn classical(pattern: Permutation) -> Result<Self> {
        Self::new(pattern, BTreeSet::new())
    }

    /// Classical pattern from single decimal digits, e.g. `"231"`.
    pub fn from_digits(digits: &str) -> Result<Self> {
        Self::classical(Permutation::from_digits(digits)?)
    }

    /// Compact digit form with bracketed bonded blocks, e.g. `"[32]41"`.
    pub fn from_compact(s: &str) -> Result<Self> {
        let spaced: String = s
            .chars()
            .flat_map(|c| [c, ' '])
            .collect::<String>();
        spaced.parse()
    }

    pub fn pattern(&self) -> &Permutation {
        &self.pattern
    }

    pub fn bonds(&self) -> &BTreeSet<usize> {
        &self.bonds
    }

    pub fn is_classical(&self) -> bool {
        self.bonds.is_empty()
    }
}

impl fmt::Debug for VincularPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VincularPattern({self})")
    }
}

impl fmt::Display for VincularPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.pattern.len();
        let mut out: Vec<String> = Vec::new();
        let mut i = 1;
        while i <= m {
            // A maximal run of bonds starting at i becomes one bracketed block.
            let mut j = i;
            while j < m && self.bonds.contains(&j) {
                j += 1;
            }
            if j > i {
                let block: Vec<String> = (i..=j)
                    .map(|k| self.pattern.entries()[k - 1].to_string())
                    .collect();
                out.push(format!("[{}]", block.join(" ")));
            } else {
                out.push(self.pattern.entries()[i - 1].to_string());
            }
            i = j + 1;
        }
        write!(f, "{}", out.join(" "))
    }
}

/// Text format: entries separated by spaces, each maximal underlined block
/// wrapped in square brackets, e.g. `"[3 2] 4 1"`.
impl FromStr for VincularPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut entries: Vec<u32> = Vec::new();
        let mut bonds = BTreeSet::new();
        let mut block_start: Option<usize> = None;
        let mut num = String::new();

        let mut flush = |num: &mut String, entries: &mut Vec<u32>| -> Result<()> {
            if !num.is_empty() {
                let e: u32 = num
                    .parse()
                    .map_err(|_| Error::ParsePattern(format!("invalid entry '{num}'")))?;
                entries.push(e);
                num.clear();
            }
            Ok(())
        };

        for c in s.chars() {
            match c {
                '[' => {
                    flush(&mut num, &mut entries)?;
                    if block_start.is_some() {
                        return Err(Error::ParsePattern("nested '[' not allowed".into()));
                    }
                    block_start = Some(entries.len() + 1);
                }
                ']' => {
                    flush(&mut num, &mut entries)?;
                    let start = block_start
                        .take()
                        .ok_or_else(|| Error::ParsePattern("unmatched ']'".into()))?;
                    let end = entries.len();
                    if end < start + 1 {
                        return Err(Error::ParsePattern(
                            "an underlined block needs at least two entries".into(),
                        ));
                    }
                    for b in start..end {
                        bonds.insert(b);
                    }
                }
                d if d.is_ascii_digit() => num.push(d),
                w if w.is_whitespace() => flush(&mut num, &mut entries)?,
                other => {
                    return Err(Error::ParsePattern(format!("unexpected character '{other}'")))
                }
            }
        }
        flush(&mut num, &mut entries)?;
        if block_start.is_some() {
            return Err(Error::ParsePattern("unclosed '['".into()));
        }
        let pattern =
            Permutation::new(entries).map_err(|e| Error::ParsePattern(e.to_string()))?;
        VincularPattern::new(pattern, bonds)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    fn p(digits: &str) -> Permutation {
        Permutation::from_digits(digits).unwrap()
    }

    /// Exhaustive containment oracle: try every index tuple directly.
    fn contains_oracle(host: &Permutation, pat: &VincularPattern) -> bool {
        let m = pat.pattern().len();
        if m > host.len() {
            return false;
        }
        (0..host.len()).combinations(m).any(|idx| {
            let bonded_ok = pat
                .bonds()
                .iter()
                .all(|&b| idx[b] == idx[b - 1] + 1);
            let word: Vec<u32> = idx.iter().map(|&i| host.entries()[i]).collect();
            bonded_ok && normalize_word(&word) == pat.pattern().entries()
        })
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(p("426").normalize(), p("213"));
        assert_eq!(p("123").normalize(), p("123"));
        assert_eq!(p("3158").normalize(), p("2134"));
        // Idempotent.
        assert_eq!(p("3158").normalize().normalize(), p("2134"));
    }

    #[test]
    fn normalize_preserves_relative_order() {
        let q = p("3158");
        let nq = q.normalize();
        for i in 0..q.len() {
            for j in i + 1..q.len() {
                assert_eq!(
                    q.entries()[i] < q.entries()[j],
                    nq.entries()[i] < nq.entries()[j]
                );
            }
        }
    }

    #[test]
    fn containment_examples() {
        assert!(p("14253").contains(&VincularPattern::from_digits("231").unwrap()));
        let non_identity = VincularPattern::from_digits("21").unwrap();
        assert!(!Permutation::identity(6).contains(&non_identity));
        let bonded = VincularPattern::from_compact("[32]41").unwrap();
        assert!(p("3241").contains(&bonded));
        assert!(!p("35241").contains(&bonded));
    }

    #[test]
    fn containment_matches_oracle_exhaustively() {
        // Every normalized host of length <= 6 against a mixed pattern list.
        let pats = [
            VincularPattern::from_digits("231").unwrap(),
            VincularPattern::from_digits("1234").unwrap(),
            VincularPattern::from_compact("[32]41").unwrap(),
            VincularPattern::from_compact("[31]42").unwrap(),
            VincularPattern::from_compact("34[21]").unwrap(),
            VincularPattern::from_compact("[123]").unwrap(),
        ];
        for n in 0..=6 {
            for hv in (1..=n as u32).permutations(n) {
                let host = Permutation::from_vec_unchecked(hv);
                for pat in &pats {
                    assert_eq!(
                        host.contains(pat),
                        contains_oracle(&host, pat),
                        "host {host}, pattern {pat}"
                    );
                }
            }
        }
    }

    #[test]
    fn descent_and_peak_statistics() {
        let q: Permutation = "3 1 5 4 2 6 7 8".parse().unwrap();
        assert_eq!(q.descents(), BTreeSet::from([1, 3, 4]));
        assert_eq!(Permutation::identity(7).des(), 0);
        assert_eq!(p("14253").peaks(), 2);
    }

    #[test]
    fn tail_length_examples() {
        assert_eq!(p("31542678").tail_length().unwrap(), 3);
        assert_eq!(p("1234").tail_length().unwrap(), 4);
        assert_eq!(p("2134").tail_length().unwrap(), 2);
        assert_eq!(Permutation::empty().tail_length().unwrap(), 0);
        assert!(matches!(
            p("426").tail_length(),
            Err(Error::NotNormalized(_))
        ));
    }

    #[test]
    fn tail_length_n_iff_identity() {
        for n in 0..=6 {
            for hv in (1..=n as u32).permutations(n) {
                let q = Permutation::from_vec_unchecked(hv);
                let is_id = q == Permutation::identity(n);
                assert_eq!(q.tail_length().unwrap() == n, is_id, "{q}");
            }
        }
    }

    #[test]
    fn zeil_examples() {
        assert_eq!(p("321").zeil().unwrap(), 3);
        assert_eq!(p("123").zeil().unwrap(), 1);
        // Fixed by the direct-scan definition: 5 does not precede 4 in 14253.
        assert_eq!(p("14253").zeil().unwrap(), 1);
        assert!(p("14253").rmax() == 2);
        assert!(matches!(p("426").zeil(), Err(Error::NotNormalized(_))));
        assert!(matches!(
            Permutation::empty().zeil(),
            Err(Error::EmptyPermutation)
        ));
    }

    #[test]
    fn hooks_and_tail_bound_descents() {
        let q = p("31542678");
        let hooks = q.hooks_from(3);
        assert!(hooks.contains(&Hook { sw: 3, ne: 8 }));
        assert_eq!(hooks, vec![
            Hook { sw: 3, ne: 6 },
            Hook { sw: 3, ne: 7 },
            Hook { sw: 3, ne: 8 }
        ]);
        assert_eq!(q.tail_bound_descents().unwrap(), BTreeSet::from([3, 4]));
        assert_eq!(
            Permutation::identity(5).tail_bound_descents().unwrap(),
            BTreeSet::new()
        );
    }

    #[test]
    fn split_by_hook_examples() {
        let q = p("31542678");
        let (u, s) = q.split_by_hook(Hook { sw: 3, ne: 7 }).unwrap();
        assert_eq!(u, p("3158"));
        assert_eq!(s, p("426"));

        // Adjacent hook: empty sheltered part.
        let (u, s) = q.split_by_hook(Hook { sw: 5, ne: 6 }).unwrap();
        assert_eq!(s, Permutation::empty());
        assert_eq!(u.len(), q.len() - 1);

        let (u, s) = p("231").split_by_hook(Hook { sw: 1, ne: 2 }).unwrap();
        assert_eq!(u, p("21"));
        assert_eq!(s, Permutation::empty());

        assert!(q.split_by_hook(Hook { sw: 3, ne: 5 }).is_err());
        assert!(q.split_by_hook(Hook { sw: 4, ne: 4 }).is_err());
    }

    #[test]
    fn hook_split_reconstructs() {
        // Concatenating unsheltered[..i], sheltered, p_j, unsheltered[i..]
        // recovers the permutation, for every legal hook.
        for hv in (1..=6u32).permutations(6) {
            let q = Permutation::from_vec_unchecked(hv);
            for i in 1..=6 {
                for h in q.hooks_from(i) {
                    let (u, s) = q.split_by_hook(h).unwrap();
                    let mut rebuilt = u.entries()[..h.sw].to_vec();
                    rebuilt.extend_from_slice(s.entries());
                    rebuilt.push(q.entries()[h.ne - 1]);
                    rebuilt.extend_from_slice(&u.entries()[h.sw..]);
                    assert_eq!(rebuilt, q.entries());
                }
            }
        }
    }

    #[test]
    fn permutation_text_round_trip() {
        let q: Permutation = "3 1 5 4 2 6 7 8".parse().unwrap();
        assert_eq!(q.to_string(), "3 1 5 4 2 6 7 8");
        assert_eq!(Permutation::empty().to_string(), "");
        assert_eq!("".parse::<Permutation>().unwrap(), Permutation::empty());
        assert!("3 1 3".parse::<Permutation>().is_err());
        assert!("0 1".parse::<Permutation>().is_err());
        assert!("a b".parse::<Permutation>().is_err());
    }

    #[test]
    fn vincular_text_round_trip() {
        let v: VincularPattern = "[3 2] 4 1".parse().unwrap();
        assert_eq!(v.bonds(), &BTreeSet::from([1]));
        assert_eq!(v.to_string(), "[3 2] 4 1");
        let w: VincularPattern = "3 4 [2 1]".parse().unwrap();
        assert_eq!(w.bonds(), &BTreeSet::from([3]));
        let c: VincularPattern = "1 3 4 2".parse().unwrap();
        assert!(c.is_classical());
        assert!("[3] 2 1".parse::<VincularPattern>().is_err());
        assert!("[3 [2] 1]".parse::<VincularPattern>().is_err());
        assert!("[3 2 4 1".parse::<VincularPattern>().is_err());
        assert!("3 2] 4 1".parse::<VincularPattern>().is_err());
        assert!("3 2 4".parse::<VincularPattern>().is_err()); // not normalized
        assert!("1 1 2".parse::<VincularPattern>().is_err());
    }

    #[test]
    fn long_block_yields_consecutive_bonds() {
        let v: VincularPattern = "[1 2 3]".parse().unwrap();
        assert_eq!(v.bonds(), &BTreeSet::from([1, 2]));
        assert_eq!(v.to_string(), "[1 2 3]");
    }
}
