//! The Gram matrix `G_{στ} = d^{#(σ⁻¹τ)}` of the permutation operators on
//! `(C^d)^{⊗n}` and the Weingarten matrix `W_{τσ} = Wg(τ⁻¹σ)`, as explicit
//! exact `n! × n!` matrices. `W` is the Moore–Penrose inverse of `G`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::caps;
use crate::partitions::{dim_specht, enumerate_partitions};
use crate::symgroup::{enumerate_group, Permutation};
use crate::util::int;
use crate::weingarten::weingarten_class_function;
use crate::{Error, Result};

/// A dense square matrix of exact rationals whose rows and columns are
/// labelled by `S_n` in [`enumerate_group`] order.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    labels: Vec<Permutation>,
    entries: Vec<Vec<BigRational>>,
}

impl ExactMatrix {
    /// `entry(row, col)` for every pair of labels.
    pub fn from_fn(n: usize, f: impl Fn(&Permutation, &Permutation) -> BigRational + Sync) -> Result<Self> {
        caps::check_gram(n)?;
        let labels: Vec<Permutation> = enumerate_group(n)?.collect();
        let entries = labels
            .par_iter()
            .map(|r| labels.iter().map(|c| f(r, c)).collect())
            .collect();
        Ok(ExactMatrix { labels, entries })
    }

    fn with_entries(&self, entries: Vec<Vec<BigRational>>) -> ExactMatrix {
        ExactMatrix {
            labels: self.labels.clone(),
            entries,
        }
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[Permutation] {
        &self.labels
    }

    pub fn get(&self, row: usize, col: usize) -> &BigRational {
        &self.entries[row][col]
    }

    pub fn row(&self, row: usize) -> &[BigRational] {
        &self.entries[row]
    }

    pub fn transpose(&self) -> ExactMatrix {
        let k = self.order();
        self.with_entries((0..k).map(|c| (0..k).map(|r| self.entries[r][c].clone()).collect()).collect())
    }

    pub fn is_symmetric(&self) -> bool {
        let k = self.order();
        (0..k).all(|r| (r + 1..k).all(|c| self.entries[r][c] == self.entries[c][r]))
    }

    /// Integer matrix `M·L` and the common denominator `L`.
    fn scaled_integers(&self) -> (Vec<Vec<BigInt>>, BigInt) {
        let lcm = self
            .entries
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let ints = self
            .entries
            .iter()
            .map(|row| row.iter().map(|v| v.numer() * (&lcm / v.denom())).collect())
            .collect();
        (ints, lcm)
    }

    /// Exact product; rows are computed in parallel over a common denominator.
    pub fn multiply(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.labels != other.labels {
            return Err(Error::LengthMismatch {
                expected: self.order(),
                found: other.order(),
            });
        }
        let (a, la) = self.scaled_integers();
        let (b, lb) = other.scaled_integers();
        let den = la * lb;
        let k = self.order();
        let entries = a
            .par_iter()
            .map(|row| {
                (0..k)
                    .map(|c| {
                        let mut s = BigInt::zero();
                        for (x, brow) in row.iter().zip(&b) {
                            if !x.is_zero() {
                                s += x * &brow[c];
                            }
                        }
                        BigRational::new(s, den.clone())
                    })
                    .collect()
            })
            .collect();
        Ok(self.with_entries(entries))
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().enumerate().all(|(r, row)| {
            row.iter()
                .enumerate()
                .all(|(c, v)| if r == c { v.is_one() } else { v.is_zero() })
        })
    }

    /// Exact rank by fraction-free (Bareiss) elimination.
    pub fn rank(&self) -> usize {
        let (mut m, _) = self.scaled_integers();
        bareiss_rank(&mut m)
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut l = f.debug_list();
        for row in &self.entries {
            l.entry(&row.iter().map(|v| v.to_string()).collect::<Vec<_>>());
        }
        l.finish()
    }
}

/// Rank of an integer matrix; `m` is overwritten by its fraction-free echelon form.
pub(crate) fn bareiss_rank(m: &mut [Vec<BigInt>]) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&p| !m[p][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let (top, rest) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pivot = pivot_row[c].clone();
        for row in rest.iter_mut() {
            let lead = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let v = &pivot * &row[j] - &lead * &pivot_row[j];
                row[j] = v / &prev;
            }
        }
        prev = pivot;
        r += 1;
    }
    r
}

/// `G_{στ} = d^{#(σ⁻¹τ)}`.
pub fn gram_matrix(n: usize, d: usize) -> Result<ExactMatrix> {
    caps::check_dimension(d)?;
    let powers: Vec<BigRational> = (0..=n).map(|c| int(BigInt::from(d).pow(c as u32))).collect();
    ExactMatrix::from_fn(n, |s, t| powers[s.inverse().compose_unchecked(t).num_cycles()].clone())
}

/// `W_{τσ} = Wg(τ⁻¹σ, d)`.
pub fn weingarten_matrix(n: usize, d: usize) -> Result<ExactMatrix> {
    caps::check_gram(n)?;
    let wg = weingarten_class_function(n, d)?;
    ExactMatrix::from_fn(n, |t, s| {
        wg.value_at(&t.inverse().compose_unchecked(s))
            .expect("same n")
            .clone()
    })
}

/// Outcome of [`verify_moore_penrose`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoorePenroseReport {
    pub n: usize,
    pub d: usize,
    pub gwg_equals_g: bool,
    pub wgw_equals_w: bool,
    pub wg_symmetric: bool,
    pub gw_symmetric: bool,
    /// Row of the identity permutation in `W` equals `Wg` on cycle types.
    pub identity_row_matches: bool,
    /// `WG = I`; only checked when `d ≥ n`.
    pub w_is_inverse: Option<bool>,
}

impl MoorePenroseReport {
    pub fn passed(&self) -> bool {
        self.gwg_equals_g
            && self.wgw_equals_w
            && self.wg_symmetric
            && self.gw_symmetric
            && self.identity_row_matches
            && self.w_is_inverse != Some(false)
    }
}

/// Checks `GWG = G`, `WGW = W` and the symmetry of `WG` and `GW` exactly.
pub fn verify_moore_penrose(n: usize, d: usize) -> Result<MoorePenroseReport> {
    let g = gram_matrix(n, d)?;
    let w = weingarten_matrix(n, d)?;
    let wg = w.multiply(&g)?;
    let gw = g.multiply(&w)?;
    let wg_class = weingarten_class_function(n, d)?;
    let identity_row_matches = w
        .labels()
        .iter()
        .zip(w.row(0))
        .all(|(s, v)| wg_class.value_at(s).map(|x| x == v).unwrap_or(false));
    debug_assert!(w.labels()[0].is_identity());
    Ok(MoorePenroseReport {
        n,
        d,
        gwg_equals_g: g.multiply(&wg)? == g,
        wgw_equals_w: w.multiply(&gw)? == w,
        wg_symmetric: wg.is_symmetric(),
        gw_symmetric: gw.is_symmetric(),
        identity_row_matches,
        w_is_inverse: (d >= n).then(|| wg.is_identity()),
    })
}

/// `(rank G, n! − rank G)`.
pub fn rank_and_nullity(n: usize, d: usize) -> Result<(usize, usize)> {
    let g = gram_matrix(n, d)?;
    let rank = g.rank();
    Ok((rank, g.order() - rank))
}

/// `Σ_{λ ⊢ n, l(λ) > d} (dim S^λ)²`, the predicted nullity of `G`.
pub fn predicted_nullity(n: usize, d: usize) -> BigInt {
    enumerate_partitions(n, None)
        .iter()
        .filter(|l| l.len() > d)
        .map(|l| {
            let f = dim_specht(l);
            &f * &f
        })
        .sum()
}
