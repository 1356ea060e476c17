//! Permutations of `{1, …, n}`, cycle structure, and the action of `S_n` on
//! multiindices.
//!
//! All public positions and images are 1-based. Internally a permutation is a
//! 0-based image table.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use crate::caps;
use crate::partitions::Partition;
use crate::util::factorial;
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from its 1-based image table, `images[k-1] = σ(k)`.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::InvalidPermutation(images));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation {
            images: images.into_iter().map(|v| v - 1).collect(),
        })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// The transposition `(a b)` in `S_n`, 1-based.
    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self> {
        if a == 0 || b == 0 || a > n || b > n || a == b {
            return Err(Error::InvalidArgument(format!(
                "transposition ({a} {b}) is not valid in S_{n}"
            )));
        }
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(a - 1, b - 1);
        Ok(Permutation { images })
    }

    /// Builds a permutation of `S_n` from disjoint cycles in 1-based notation;
    /// `[[1,2,3],[4,5]]` is `(1 2 3)(4 5)`, mapping `1→2→3→1`.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                let b = cycle[(k + 1) % cycle.len()];
                if a == 0 || a > n || b == 0 || b > n || touched[a - 1] {
                    return Err(Error::InvalidArgument(format!(
                        "cycles {cycles:?} are not disjoint cycles of S_{n}"
                    )));
                }
                touched[a - 1] = true;
                images[a - 1] = b - 1;
            }
        }
        Ok(Permutation { images })
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// `σ(k)` for 1-based `k`.
    pub fn image(&self, k: usize) -> usize {
        self.images[k - 1] + 1
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|v| v + 1).collect()
    }

    pub(crate) fn zero_based(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &v)| k == v)
    }

    /// `(σ∘τ)(k) = σ(τ(k))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.n() != other.n() {
            return Err(Error::WeightMismatch {
                expected: self.n(),
                found: other.n(),
            });
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&k| self.images[k]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.n()];
        for (k, &v) in self.images.iter().enumerate() {
            images[v] = k;
        }
        Permutation { images }
    }

    /// Cycle lengths, fixed points included, in decreasing order.
    pub fn cycle_type(&self) -> Partition {
        Partition::from_unsorted(cycle_lengths(&self.images))
    }

    pub fn num_cycles(&self) -> usize {
        cycle_lengths(&self.images).len()
    }

    /// `(−1)^{n − #σ}`.
    pub fn sign(&self) -> i32 {
        if (self.n() - self.num_cycles()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Disjoint cycles of length at least two, each starting at its smallest element (1-based).
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut k = start;
            while !seen[k] {
                seen[k] = true;
                cycle.push(k + 1);
                k = self.images[k];
            }
            out.push(cycle);
        }
        out
    }
}

pub(crate) fn cycle_lengths(images: &[usize]) -> Vec<usize> {
    let n = images.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut k = start;
        while !seen[k] {
            seen[k] = true;
            k = images[k];
            len += 1;
        }
        out.push(len);
    }
    out
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (k, v) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.images())
    }
}

/// `n!/z_μ` with `z_μ = Π_k k^{m_k} m_k!`.
pub fn conjugacy_class_size(mu: &Partition) -> BigInt {
    let z: BigInt = mu
        .multiplicities()
        .into_iter()
        .map(|(k, m)| BigInt::from(k).pow(m as u32) * factorial(m))
        .product();
    factorial(mu.weight()) / z
}

/// Every element of `S_n` exactly once, in lexicographic order of the image
/// tables (identity first). Guarded by [`caps::group_cap`].
pub fn enumerate_group(n: usize) -> Result<GroupIter> {
    caps::check_group(n)?;
    Ok(GroupIter {
        next: Some((0..n).collect()),
    })
}

pub struct GroupIter {
    next: Option<Vec<usize>>,
}

impl Iterator for GroupIter {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if next_permutation(&mut succ) {
            self.next = Some(succ);
        }
        Some(Permutation { images: current })
    }
}

/// Advances `a` to its lexicographic successor; returns `false` at the last arrangement.
pub(crate) fn next_permutation<T: Ord>(a: &mut [T]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// A tuple `(i_1, …, i_n)` of positive integers; a monomial selector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct MultiIndex {
    entries: Vec<usize>,
}

impl MultiIndex {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        if let Some(pos) = entries.iter().position(|&v| v == 0) {
            return Err(Error::IndexOutOfRange {
                value: 0,
                position: pos + 1,
                d: entries.iter().copied().max().unwrap_or(0),
            });
        }
        Ok(MultiIndex { entries })
    }

    /// Like [`MultiIndex::new`], additionally requiring every entry to lie in `1..=d`.
    pub fn with_dimension(entries: Vec<usize>, d: usize) -> Result<Self> {
        let idx = MultiIndex::new(entries)?;
        idx.check_range(d)?;
        Ok(idx)
    }

    pub fn constant(value: usize, len: usize) -> Self {
        assert!(value >= 1);
        MultiIndex {
            entries: vec![value; len],
        }
    }

    pub fn check_range(&self, d: usize) -> Result<()> {
        match self.entries.iter().position(|&v| v == 0 || v > d) {
            Some(pos) => Err(Error::IndexOutOfRange {
                value: self.entries[pos],
                position: pos + 1,
                d,
            }),
            None => Ok(()),
        }
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Value multiplicities, keyed by value.
    pub fn multiplicities(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for &v in &self.entries {
            *m.entry(v).or_insert(0) += 1;
        }
        m
    }

    /// Whether `other` is a rearrangement of `self`.
    pub fn same_multiset(&self, other: &MultiIndex) -> bool {
        let mut a = self.entries.clone();
        let mut b = other.entries.clone();
        a.sort_unstable();
        b.sort_unstable();
        a == b
    }

    /// Relabels values entrywise, `v ↦ relabel(v)`.
    pub fn map_values(&self, relabel: impl Fn(usize) -> usize) -> MultiIndex {
        MultiIndex {
            entries: self.entries.iter().map(|&v| relabel(v)).collect(),
        }
    }

    /// Every multiindex of length `len` over `1..=d`, in lexicographic order.
    pub fn all(d: usize, len: usize) -> impl Iterator<Item = MultiIndex> {
        let total = (d as u128).pow(len as u32);
        (0..total).map(move |mut code| {
            let mut entries = vec![0; len];
            for slot in entries.iter_mut().rev() {
                *slot = (code % d as u128) as usize + 1;
                code /= d as u128;
            }
            MultiIndex { entries }
        })
    }

    /// Distinct rearrangements of `self`, in lexicographic order.
    pub fn rearrangements(&self) -> impl Iterator<Item = MultiIndex> {
        let mut sorted = self.entries.clone();
        sorted.sort_unstable();
        let mut next = Some(sorted);
        std::iter::from_fn(move || {
            let current = next.take()?;
            let mut succ = current.clone();
            if next_permutation(&mut succ) {
                next = Some(succ);
            }
            Some(MultiIndex { entries: current })
        })
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for MultiIndex {
    type Err = Error;

    /// Comma-separated 1-based entries; the empty string is the empty multiindex.
    fn from_str(s: &str) -> Result<Self> {
        let entries = s
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::InvalidArgument(format!("bad index entry {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        MultiIndex::new(entries)
    }
}

/// `σ(i) = (i_{σ⁻¹(1)}, …, i_{σ⁻¹(n)})`, a left action.
pub fn act_on_multiindex(sigma: &Permutation, i: &MultiIndex) -> Result<MultiIndex> {
    if sigma.n() != i.len() {
        return Err(Error::LengthMismatch {
            expected: sigma.n(),
            found: i.len(),
        });
    }
    let mut entries = vec![0; i.len()];
    for (m, &v) in i.entries.iter().enumerate() {
        entries[sigma.images[m]] = v;
    }
    Ok(MultiIndex { entries })
}

/// `|{σ : σ(i) = i′}|`, which is `Π_v m_v!` when `i′` rearranges `i` and `0` otherwise.
pub fn matching_count(i: &MultiIndex, i_prime: &MultiIndex) -> BigInt {
    if i.len() != i_prime.len() || !i.same_multiset(i_prime) {
        return BigInt::from(0);
    }
    i.multiplicities().values().map(|&m| factorial(m)).product()
}

/// The permutations `σ` with `σ(i) = i′`.
///
/// Positions are grouped by value and each group of `i` is matched bijectively
/// onto the group of `i′` with the same value, so the work is proportional to
/// the output size `Π_v m_v!`.
pub fn matching_permutations(i: &MultiIndex, i_prime: &MultiIndex) -> MatchingIter {
    let n = i.len();
    if n != i_prime.len() || !i.same_multiset(i_prime) {
        return MatchingIter {
            n,
            groups: Vec::new(),
            done: true,
        };
    }
    let mut sources: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut targets: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (m, &v) in i.entries.iter().enumerate() {
        sources.entry(v).or_default().push(m);
    }
    for (m, &v) in i_prime.entries.iter().enumerate() {
        targets.entry(v).or_default().push(m);
    }
    let groups = sources
        .into_iter()
        .map(|(v, src)| {
            let dst = targets.remove(&v).expect("same multiset");
            (src, dst)
        })
        .collect();
    MatchingIter {
        n,
        groups,
        done: false,
    }
}

pub struct MatchingIter {
    n: usize,
    /// For each value: its positions in `i`, and the current arrangement of its positions in `i′`.
    groups: Vec<(Vec<usize>, Vec<usize>)>,
    done: bool,
}

impl Iterator for MatchingIter {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        let mut images = vec![0; self.n];
        for (src, dst) in &self.groups {
            for (&s, &t) in src.iter().zip(dst) {
                images[s] = t;
            }
        }
        // odometer over the per-value arrangements; each wheel resets to sorted on wrap
        self.done = true;
        for (_, dst) in self.groups.iter_mut() {
            if next_permutation(dst) {
                self.done = false;
                break;
            }
            dst.sort_unstable();
        }
        Some(Permutation { images })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::enumerate_partitions;
    use std::collections::BTreeSet;

    fn perm(images: &[usize]) -> Permutation {
        Permutation::new(images.to_vec()).unwrap()
    }

    fn mi(entries: &[usize]) -> MultiIndex {
        MultiIndex::new(entries.to_vec()).unwrap()
    }

    #[test]
    fn composition() {
        let s = Permutation::from_cycles(3, &[&[1, 2]]).unwrap();
        let t = Permutation::from_cycles(3, &[&[2, 3]]).unwrap();
        let e = Permutation::identity(3);
        assert_eq!(e.compose(&s).unwrap(), s);
        // σ(τ(1)) = σ(1) = 2, σ(τ(2)) = σ(3) = 3, σ(τ(3)) = σ(2) = 1
        assert_eq!(s.compose(&t).unwrap().images(), vec![2, 3, 1]);
        let r = perm(&[3, 1, 4, 2]);
        assert!(r.compose(&r.inverse()).unwrap().is_identity());
        assert!(s.compose(&Permutation::identity(2)).is_err());
        assert!(Permutation::new(vec![1, 1]).is_err());
    }

    #[test]
    fn cycles() {
        assert_eq!(Permutation::identity(4).cycle_type(), Partition::column(4));
        let s = Permutation::from_cycles(5, &[&[1, 2, 3], &[4, 5]]).unwrap();
        assert_eq!(s.cycle_type(), Partition::new(vec![3, 2]).unwrap());
        assert_eq!(s.to_string(), "(1 2 3)(4 5)");
        let t = Permutation::transposition(2, 1, 2).unwrap();
        assert_eq!(t.cycle_type(), Partition::row(2));
        assert_eq!(Permutation::identity(6).num_cycles(), 6);
        assert_eq!(perm(&[2, 3, 4, 5, 1]).num_cycles(), 1);
        let u = Permutation::from_cycles(5, &[&[1, 2], &[3, 4]]).unwrap();
        assert_eq!(u.num_cycles(), 3);
    }

    #[test]
    fn class_sizes() {
        for n in 1..=8 {
            assert_eq!(conjugacy_class_size(&Partition::column(n)), BigInt::from(1));
            assert_eq!(conjugacy_class_size(&Partition::row(n)), factorial(n - 1));
            let total: BigInt = enumerate_partitions(n, None)
                .iter()
                .map(conjugacy_class_size)
                .sum();
            assert_eq!(total, factorial(n));
        }
        // brute-force count of each class for n ≤ 6
        for n in 1..=6 {
            let mut counts = std::collections::HashMap::new();
            for s in enumerate_group(n).unwrap() {
                *counts.entry(s.cycle_type()).or_insert(0u64) += 1;
            }
            for mu in enumerate_partitions(n, None) {
                assert_eq!(BigInt::from(counts[&mu]), conjugacy_class_size(&mu));
            }
        }
    }

    #[test]
    fn group_enumeration() {
        let one: Vec<_> = enumerate_group(1).unwrap().collect();
        assert_eq!(one, vec![Permutation::identity(1)]);
        let three: BTreeSet<_> = enumerate_group(3).unwrap().collect();
        assert_eq!(three.len(), 6);
        assert_eq!(enumerate_group(8).unwrap().count(), 40320);
        assert!(matches!(enumerate_group(9), Err(Error::CapExceeded { .. })));
        let first = enumerate_group(4).unwrap().next().unwrap();
        assert!(first.is_identity());
    }

    #[test]
    fn multiindex_action() {
        let i = mi(&[5, 7]);
        assert_eq!(act_on_multiindex(&Permutation::identity(2), &i).unwrap(), i);
        let swap = Permutation::transposition(2, 1, 2).unwrap();
        assert_eq!(act_on_multiindex(&swap, &i).unwrap(), mi(&[7, 5]));
        // a 3-cycle: entry k of σ(i) is i_{σ⁻¹(k)}
        let c = perm(&[2, 3, 1]);
        assert_eq!(act_on_multiindex(&c, &mi(&[1, 2, 3])).unwrap(), mi(&[3, 1, 2]));
        assert!(act_on_multiindex(&c, &i).is_err());
    }

    #[test]
    fn matching_examples() {
        let m: Vec<_> = matching_permutations(&mi(&[1, 2, 3]), &mi(&[1, 2, 3])).collect();
        assert_eq!(m, vec![Permutation::identity(3)]);
        let m: BTreeSet<_> = matching_permutations(&mi(&[1, 1]), &mi(&[1, 1])).collect();
        assert_eq!(m.len(), 2);
        assert_eq!(matching_permutations(&mi(&[1, 2]), &mi(&[3, 4])).count(), 0);
        assert_eq!(matching_count(&mi(&[1, 2]), &mi(&[3, 4])), BigInt::from(0));
        assert_eq!(matching_count(&mi(&[1, 1, 2, 2, 2]), &mi(&[2, 1, 2, 1, 2])), BigInt::from(12));
    }

    #[test]
    fn matching_agrees_with_group_filter() {
        for n in 1..=6 {
            for d in 1..=3usize {
                for i in MultiIndex::all(d, n) {
                    let fast: BTreeSet<_> = matching_permutations(&i, &i).collect();
                    let slow: BTreeSet<_> = enumerate_group(n)
                        .unwrap()
                        .filter(|s| act_on_multiindex(s, &i).unwrap() == i)
                        .collect();
                    assert_eq!(fast, slow, "i = {i}");
                    assert_eq!(BigInt::from(fast.len()), matching_count(&i, &i));
                }
            }
        }
        // non-trivial targets
        let i = mi(&[1, 2, 1, 3]);
        for target in i.rearrangements() {
            let fast: BTreeSet<_> = matching_permutations(&i, &target).collect();
            let slow: BTreeSet<_> = enumerate_group(4)
                .unwrap()
                .filter(|s| act_on_multiindex(s, &i).unwrap() == target)
                .collect();
            assert_eq!(fast, slow);
        }
    }

    #[test]
    fn rearrangements_and_all() {
        assert_eq!(mi(&[1, 1, 2]).rearrangements().count(), 3);
        assert_eq!(MultiIndex::all(3, 2).count(), 9);
        assert_eq!(MultiIndex::all(2, 0).count(), 1);
        assert_eq!("1,2,3".parse::<MultiIndex>().unwrap(), mi(&[1, 2, 3]));
        assert_eq!("".parse::<MultiIndex>().unwrap(), MultiIndex::default());
        assert!(mi(&[1, 4]).check_range(3).is_err());
    }
}
