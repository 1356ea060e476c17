//! Integer partitions, Young diagrams and the hook-length dimension formulas.
//!
//! Partitions are listed in decreasing lexicographic order throughout the
//! crate: `(4), (3,1), (2,2), (2,1,1), (1,1,1,1)`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::util::{factorial, Memo};
use crate::{Error, Result};

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

/// A box of a Young diagram, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(parts));
        }
        Ok(Partition { parts })
    }

    /// Sorts the parts into decreasing order and drops zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The one-row partition `(n)`, or the empty partition for `n = 0`.
    pub fn row(n: usize) -> Self {
        Partition::from_unsorted(vec![n])
    }

    /// The one-column partition `(1, …, 1)`.
    pub fn column(n: usize) -> Self {
        Partition { parts: vec![1; n] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn contains(&self, cell: Cell) -> bool {
        cell.row >= 1 && cell.col >= 1 && cell.row <= self.len() && cell.col <= self.parts[cell.row - 1]
    }

    /// Cells in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(r, &len)| (1..=len).map(move |c| Cell::new(r + 1, c)))
    }

    /// Multiplicities `m_k` of each part size `k`, as `(k, m_k)` pairs in increasing `k`.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in self.parts.iter().rev() {
            match out.last_mut() {
                Some((k, m)) if *k == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition{self}")
    }
}

/// Accepts `"(3,2,1)"`, `"3,2,1"`, `"3 2 1"` and `"()"`.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::InvalidArgument(format!("bad partition part {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// All partitions of `n`, optionally restricted to at most `max_length` parts,
/// in decreasing lexicographic order. `n = 0` yields the empty partition.
pub fn enumerate_partitions(n: usize, max_length: Option<usize>) -> Vec<Partition> {
    fn go(rest: usize, max_part: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        if slots == 0 {
            return;
        }
        for p in (1..=max_part.min(rest)).rev() {
            cur.push(p);
            go(rest - p, p, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, max_length.unwrap_or(n), &mut Vec::new(), &mut out);
    out
}

/// The canonical list of partitions of `n` together with a reverse index.
/// Class functions store their values in this order.
#[derive(Debug)]
pub struct PartitionIndex {
    partitions: Vec<Partition>,
    positions: HashMap<Partition, usize>,
}

impl PartitionIndex {
    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn len(&self) -> usize {
        self.partitions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.partitions.is_empty()
    }

    pub fn position(&self, p: &Partition) -> Option<usize> {
        self.positions.get(p).copied()
    }
}

/// Shared, cached [`PartitionIndex`] for `n`.
pub fn partition_index(n: usize) -> Arc<PartitionIndex> {
    static CACHE: OnceLock<Memo<usize, PartitionIndex>> = OnceLock::new();
    CACHE.get_or_init(Memo::new).get_or_insert_with(n, || {
        let partitions = enumerate_partitions(n, None);
        let positions = partitions
            .iter()
            .enumerate()
            .map(|(k, p)| (p.clone(), k))
            .collect();
        PartitionIndex {
            partitions,
            positions,
        }
    })
}

/// `h_λ(i,j) = (λ_i − j) + #{r > i : λ_r ≥ j} + 1`.
pub fn hook_length(lambda: &Partition, cell: Cell) -> Result<usize> {
    if !lambda.contains(cell) {
        return Err(Error::InvalidCell {
            row: cell.row,
            col: cell.col,
            partition: lambda.to_string(),
        });
    }
    let arm = lambda.parts[cell.row - 1] - cell.col;
    let leg = lambda.parts[cell.row..]
        .iter()
        .take_while(|&&p| p >= cell.col)
        .count();
    Ok(arm + leg + 1)
}

/// The content `j − i` of a cell.
pub fn content(cell: Cell) -> i64 {
    cell.col as i64 - cell.row as i64
}

fn hook_product(lambda: &Partition) -> BigInt {
    lambda
        .cells()
        .map(|c| BigInt::from(hook_length(lambda, c).expect("cell of own diagram")))
        .product()
}

/// Dimension of the Specht module `S^λ`: `n! / Π h_λ(i,j)`.
pub fn dim_specht(lambda: &Partition) -> BigInt {
    factorial(lambda.weight()) / hook_product(lambda)
}

/// `c_λ(d) = Π_{(i,j) ∈ λ} (d + j − i)`. Zero exactly when `l(λ) > d`.
pub fn c_lambda(lambda: &Partition, d: usize) -> BigInt {
    let mut acc = BigInt::one();
    for cell in lambda.cells() {
        let factor = d as i64 + content(cell);
        if factor == 0 {
            return BigInt::zero();
        }
        acc *= factor;
    }
    acc
}

/// Dimension of the Weyl module of `U(d)` with highest weight `λ`:
/// `Π (d + j − i) / h_λ(i,j)`, which is `0` when `l(λ) > d`.
pub fn dim_weyl(lambda: &Partition, d: usize) -> BigInt {
    c_lambda(lambda, d) / hook_product(lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::util::binomial;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    /// Brute force: all weakly decreasing sequences of positive integers summing to n.
    fn brute_partitions(n: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        // every composition of n, kept when weakly decreasing
        for mask in 0..(1u32 << n.saturating_sub(1)) {
            let mut parts = Vec::new();
            let mut cur = 1;
            for b in 0..n.saturating_sub(1) {
                if mask & (1 << b) != 0 {
                    parts.push(cur);
                    cur = 1;
                } else {
                    cur += 1;
                }
            }
            if n > 0 {
                parts.push(cur);
            }
            if parts.windows(2).all(|w| w[0] >= w[1]) {
                out.push(parts);
            }
        }
        out.sort();
        out.reverse();
        out
    }

    #[test]
    fn enumeration_matches_brute_force() {
        assert_eq!(enumerate_partitions(1, None), vec![p(&[1])]);
        assert_eq!(
            enumerate_partitions(4, None),
            vec![p(&[4]), p(&[3, 1]), p(&[2, 2]), p(&[2, 1, 1]), p(&[1, 1, 1, 1])]
        );
        assert_eq!(enumerate_partitions(8, None).len(), 22);
        assert_eq!(enumerate_partitions(3, Some(2)), vec![p(&[3]), p(&[2, 1])]);
        assert_eq!(enumerate_partitions(0, None), vec![Partition::empty()]);
        for n in 1..=10 {
            let ours: Vec<Vec<usize>> = enumerate_partitions(n, None)
                .into_iter()
                .map(|q| q.parts)
                .collect();
            assert_eq!(ours, brute_partitions(n), "n = {n}");
        }
    }

    #[test]
    fn hooks_and_contents() {
        assert_eq!(hook_length(&p(&[1]), Cell::new(1, 1)), Ok(1));
        assert_eq!(hook_length(&p(&[4, 3, 2, 2, 1]), Cell::new(2, 2)), Ok(4));
        assert_eq!(hook_length(&p(&[7]), Cell::new(1, 1)), Ok(7));
        assert!(matches!(
            hook_length(&p(&[2, 1]), Cell::new(2, 2)),
            Err(Error::InvalidCell { .. })
        ));
        assert_eq!(content(Cell::new(1, 1)), 0);
        assert_eq!(content(Cell::new(1, 3)), 2);
        assert_eq!(content(Cell::new(3, 1)), -2);
    }

    #[test]
    fn dimensions() {
        assert_eq!(dim_specht(&p(&[5])), BigInt::one());
        assert_eq!(dim_specht(&p(&[2, 1])), BigInt::from(2));
        assert_eq!(dim_specht(&p(&[1, 1, 1])), BigInt::one());
        assert_eq!(dim_specht(&Partition::empty()), BigInt::one());
        for d in 1..=6 {
            assert_eq!(dim_weyl(&p(&[1]), d), BigInt::from(d));
            for n in 1..=5 {
                assert_eq!(dim_weyl(&Partition::row(n), d), binomial(d + n - 1, n));
            }
        }
        assert_eq!(dim_weyl(&p(&[1, 1]), 1), BigInt::zero());
        assert_eq!(c_lambda(&p(&[1]), 4), BigInt::from(4));
        assert_eq!(c_lambda(&p(&[2]), 2), BigInt::from(6));
        assert_eq!(c_lambda(&p(&[1, 1]), 1), BigInt::zero());
        assert_eq!(c_lambda(&Partition::empty(), 3), BigInt::one());
    }

    #[test]
    fn regular_representation_dimension_count() {
        for n in 0..=8 {
            let total: BigInt = enumerate_partitions(n, None)
                .iter()
                .map(|l| dim_specht(l).pow(2))
                .sum();
            assert_eq!(total, factorial(n));
        }
    }

    #[test]
    fn weyl_dimension_via_content_product() {
        for n in 1..=8 {
            for lambda in enumerate_partitions(n, None) {
                for d in 1..=8 {
                    let c = c_lambda(&lambda, d);
                    let w = dim_weyl(&lambda, d);
                    assert_eq!(&w * factorial(n), dim_specht(&lambda) * &c);
                    let fits = lambda.len() <= d;
                    assert_eq!(!c.is_zero(), fits);
                    assert_eq!(w > BigInt::zero(), fits);
                }
            }
        }
    }

    /// Counts standard Young tableaux by placing 1..=n one at a time in
    /// every fillable corner.
    fn count_syt(lambda: &Partition) -> u64 {
        fn go(shape: &[usize], filled: &mut Vec<usize>, left: usize) -> u64 {
            if left == 0 {
                return 1;
            }
            let mut total = 0;
            for r in 0..shape.len() {
                let ok = filled[r] < shape[r] && (r == 0 || filled[r - 1] > filled[r]);
                if ok {
                    filled[r] += 1;
                    total += go(shape, filled, left - 1);
                    filled[r] -= 1;
                }
            }
            total
        }
        go(lambda.parts(), &mut vec![0; lambda.len()], lambda.weight())
    }

    #[test]
    fn hook_length_formula_matches_tableau_count() {
        for n in 1..=6 {
            for lambda in enumerate_partitions(n, None) {
                assert_eq!(dim_specht(&lambda), BigInt::from(count_syt(&lambda)), "{lambda}");
            }
        }
    }

    #[test]
    fn parsing_and_display() {
        let q: Partition = "(3,2,2)".parse().unwrap();
        assert_eq!(q, p(&[3, 2, 2]));
        assert_eq!(q.to_string(), "(3,2,2)");
        assert_eq!("2".parse::<Partition>().unwrap(), p(&[2]));
        assert_eq!("()".parse::<Partition>().unwrap(), Partition::empty());
        assert!("1,2".parse::<Partition>().is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert_eq!(p(&[3, 1, 1]).multiplicities(), vec![(1, 2), (3, 1)]);
    }
}
