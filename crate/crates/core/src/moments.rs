//! Haar moments of unitary matrix entries.
//!
//! For multiindices `i, j, i′, j′` of length `n`,
//!
//! ```text
//! ∫ u_{i1j1}⋯u_{injn} ū_{i′1j′1}⋯ū_{i′nj′n} dU = Σ_{σ,τ ∈ S_n} δ_{σ(i),i′} δ_{τ(j),j′} Wg(τσ⁻¹, d)
//! ```
//!
//! where `σ(i)_k = i_{σ⁻¹(k)}`. The integral vanishes unless the two halves
//! have the same length and `i ~ i′`, `j ~ j′` as multisets.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::caps;
use crate::classfun::{convolve, ClassData, ClassFunction};
use crate::partitions::{dim_specht, enumerate_partitions, Partition};
use crate::symgroup::{
    act_on_multiindex, cycle_lengths, matching_count, matching_permutations, MultiIndex,
    Permutation,
};
use crate::util::{binomial, factorial, int};
use crate::weingarten::weingarten_class_function;
use crate::{Error, Result};

/// Largest `Π m_v(i)! · Π m_w(j)!` for which [`haar_moment`] enumerates
/// `(σ, τ)` pairs directly.
pub const DIRECT_PAIR_BUDGET: u128 = 200_000;

/// Largest `d^n` accepted by [`trace_moment_via_sum`].
pub const TRACE_SUM_BUDGET: u128 = 1_000_000;

/// Largest `d^{kn}` accepted by [`trace_power_moment`].
pub const TRACE_POWER_BUDGET: u128 = 500_000;

/// Largest number of matching permutations [`invariant_hermitian_moment`] will visit.
pub const MATCHING_BUDGET: u128 = 10_000_000;

/// One integral `∫ u_{ij} ū_{i′j′} dU` over `U(d)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MomentQuery {
    pub i: MultiIndex,
    pub j: MultiIndex,
    pub i_prime: MultiIndex,
    pub j_prime: MultiIndex,
    pub d: usize,
}

impl MomentQuery {
    /// Validates lengths (`|i| = |j|`, `|i′| = |j′|`) and that every entry lies in `1..=d`.
    pub fn new(
        i: MultiIndex,
        j: MultiIndex,
        i_prime: MultiIndex,
        j_prime: MultiIndex,
        d: usize,
    ) -> Result<Self> {
        caps::check_dimension(d)?;
        if i.len() != j.len() {
            return Err(Error::LengthMismatch {
                expected: i.len(),
                found: j.len(),
            });
        }
        if i_prime.len() != j_prime.len() {
            return Err(Error::LengthMismatch {
                expected: i_prime.len(),
                found: j_prime.len(),
            });
        }
        for m in [&i, &j, &i_prime, &j_prime] {
            m.check_range(d)?;
        }
        Ok(MomentQuery {
            i,
            j,
            i_prime,
            j_prime,
            d,
        })
    }

    pub fn n(&self) -> usize {
        self.i.len()
    }

    pub fn n_prime(&self) -> usize {
        self.i_prime.len()
    }

    fn validate(&self) -> Result<()> {
        MomentQuery::new(
            self.i.clone(),
            self.j.clone(),
            self.i_prime.clone(),
            self.j_prime.clone(),
            self.d,
        )
        .map(|_| ())
    }

    /// `None` when the integral vanishes for multiset or length reasons.
    fn trivial_value(&self) -> Option<BigRational> {
        if self.n() != self.n_prime() {
            return Some(BigRational::zero());
        }
        if self.n() == 0 {
            return Some(BigRational::one());
        }
        if !self.i.same_multiset(&self.i_prime) || !self.j.same_multiset(&self.j_prime) {
            return Some(BigRational::zero());
        }
        None
    }
}

/// `E[Tr_μ(W)]` for every cycle type `μ ⊢ n`, where
/// `Tr_μ(W) = tr(W^{μ_1})⋯tr(W^{μ_l})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralMoments {
    values: ClassFunction,
}

impl SpectralMoments {
    /// Every partition of `n` must appear exactly once.
    pub fn new(n: usize, pairs: impl IntoIterator<Item = (Partition, BigRational)>) -> Result<Self> {
        Ok(SpectralMoments {
            values: ClassFunction::from_pairs(n, pairs)?,
        })
    }

    pub fn from_fn(n: usize, f: impl FnMut(&Partition) -> BigRational) -> Result<Self> {
        Ok(SpectralMoments {
            values: ClassFunction::from_fn(n, f)?,
        })
    }

    /// `W = I_d`: `Tr_μ(I) = d^{l(μ)}`.
    pub fn identity(n: usize, d: usize) -> Result<Self> {
        caps::check_dimension(d)?;
        Self::from_fn(n, |mu| int(BigInt::from(d).pow(mu.len() as u32)))
    }

    pub fn n(&self) -> usize {
        self.values.n()
    }

    pub fn get(&self, mu: &Partition) -> Result<&BigRational> {
        self.values.get(mu)
    }

    pub fn as_class_function(&self) -> &ClassFunction {
        &self.values
    }
}

fn factorial_u128(n: usize) -> u128 {
    (1..=n as u128).fold(1u128, |a, b| a.saturating_mul(b))
}

fn stabilizer_order(i: &MultiIndex) -> u128 {
    i.multiplicities()
        .values()
        .fold(1u128, |a, &m| a.saturating_mul(factorial_u128(m)))
}

/// Number of `(σ, τ)` pairs visited by [`haar_moment_direct`].
pub fn direct_pair_count(q: &MomentQuery) -> u128 {
    stabilizer_order(&q.i).saturating_mul(stabilizer_order(&q.j))
}

/// Exact value of the Haar integral described by `q`.
///
/// Small stabilizers are handled by enumerating the matching `(σ, τ)` pairs;
/// heavily repeated indices fall back to [`haar_moment_paired`], which
/// enumerates `S_n` once and is limited by the group cap.
pub fn haar_moment(q: &MomentQuery) -> Result<BigRational> {
    q.validate()?;
    if let Some(v) = q.trivial_value() {
        return Ok(v);
    }
    let pairs = direct_pair_count(q);
    if pairs <= DIRECT_PAIR_BUDGET {
        return haar_moment_direct(q);
    }
    if q.n() <= caps::group_cap() {
        return haar_moment_paired(q);
    }
    Err(Error::BudgetExceeded {
        what: format!("matching permutation pairs for n = {}", q.n()),
        requested: pairs,
        budget: DIRECT_PAIR_BUDGET,
    })
}

/// Histogram of cycle types, indexed by canonical partition position.
struct ClassCounter<'a> {
    data: &'a ClassData,
    counts: Vec<u64>,
}

impl<'a> ClassCounter<'a> {
    fn new(data: &'a ClassData) -> Self {
        ClassCounter {
            data,
            counts: vec![0; data.partitions().len()],
        }
    }

    fn add(&mut self, zero_based: &[usize]) {
        let mu = Partition::from_unsorted(cycle_lengths(zero_based));
        let pos = self.data.position(&mu).expect("cycle type of a permutation of n");
        self.counts[pos] += 1;
    }

    fn dot(&self, wg: &ClassFunction) -> BigRational {
        self.counts
            .iter()
            .zip(wg.values())
            .filter(|(&c, _)| c != 0)
            .map(|(&c, w)| w * int(c))
            .sum()
    }
}

/// Sum over every `σ` with `σ(i) = i′` and `τ` with `τ(j) = j′` of `Wg(τσ⁻¹)`.
pub fn haar_moment_direct(q: &MomentQuery) -> Result<BigRational> {
    q.validate()?;
    if let Some(v) = q.trivial_value() {
        return Ok(v);
    }
    let n = q.n();
    let data = ClassData::get(n)?;
    let wg = weingarten_class_function(n, q.d)?;
    let sigma_inverses: Vec<Permutation> = matching_permutations(&q.i, &q.i_prime)
        .map(|s| s.inverse())
        .collect();
    let mut counter = ClassCounter::new(&data);
    let mut prod = vec![0usize; n];
    for tau in matching_permutations(&q.j, &q.j_prime) {
        let t = tau.zero_based();
        for s in &sigma_inverses {
            for (k, &v) in s.zero_based().iter().enumerate() {
                prod[k] = t[v];
            }
            counter.add(&prod);
        }
    }
    Ok(counter.dot(&wg))
}

/// The same integral, reorganised by `x = τσ⁻¹`.
///
/// For fixed `x`, the admissible `σ` are the bijections sending each pair
/// `(i_m, j_m)` to a position `p` with `(i′_p, j′_{x(p)}) = (i_m, j_m)`. There
/// are `C = Π_{pairs} m!` of them when the multisets of pairs agree and none
/// otherwise, so the integral is `C · Σ_x Wg(x)` over the `x` found by
/// backtracking.
pub fn haar_moment_paired(q: &MomentQuery) -> Result<BigRational> {
    q.validate()?;
    if let Some(v) = q.trivial_value() {
        return Ok(v);
    }
    let n = q.n();
    caps::check_group(n)?;
    let data = ClassData::get(n)?;
    let wg = weingarten_class_function(n, q.d)?;

    let mut ids: HashMap<(usize, usize), usize> = HashMap::new();
    let mut remaining: Vec<usize> = Vec::new();
    for (&a, &b) in q.i.entries().iter().zip(q.j.entries()) {
        let next = ids.len();
        let id = *ids.entry((a, b)).or_insert(next);
        if id == remaining.len() {
            remaining.push(0);
        }
        remaining[id] += 1;
    }
    let c: BigInt = remaining.iter().map(|&m| factorial(m)).product();
    let (ip, jp) = (q.i_prime.entries(), q.j_prime.entries());
    let table: Vec<Vec<Option<usize>>> = (0..n)
        .map(|p| (0..n).map(|t| ids.get(&(ip[p], jp[t])).copied()).collect())
        .collect();

    struct Search<'s, 'a> {
        table: &'s [Vec<Option<usize>>],
        remaining: Vec<usize>,
        used: Vec<bool>,
        x: Vec<usize>,
        counter: ClassCounter<'a>,
    }

    impl Search<'_, '_> {
        fn run(&mut self, p: usize) {
            let n = self.x.len();
            if p == n {
                self.counter.add(&self.x);
                return;
            }
            for t in 0..n {
                if self.used[t] {
                    continue;
                }
                let Some(id) = self.table[p][t] else { continue };
                if self.remaining[id] == 0 {
                    continue;
                }
                self.used[t] = true;
                self.remaining[id] -= 1;
                self.x[p] = t;
                self.run(p + 1);
                self.remaining[id] += 1;
                self.used[t] = false;
            }
        }
    }

    let mut search = Search {
        table: &table,
        remaining,
        used: vec![false; n],
        x: vec![0; n],
        counter: ClassCounter::new(&data),
    };
    search.run(0);
    Ok(search.counter.dot(&wg) * int(c))
}

/// The row-one configuration `i = i′ = (1,…,1)`, `j = j′ = (1^{a_1}, 2^{a_2}, …)`.
pub fn hewitt_ross_query(a: &[usize], d: usize) -> Result<MomentQuery> {
    check_composition(a, d)?;
    let n: usize = a.iter().sum();
    let j: Vec<usize> = a
        .iter()
        .enumerate()
        .flat_map(|(k, &m)| std::iter::repeat_n(k + 1, m))
        .collect();
    let j = MultiIndex::new(j)?;
    let i = MultiIndex::constant(1, n);
    MomentQuery::new(i.clone(), j.clone(), i, j, d)
}

fn check_composition(a: &[usize], d: usize) -> Result<()> {
    caps::check_dimension(d)?;
    if a.len() != d {
        return Err(Error::InvalidArgument(format!(
            "composition must have exactly d = {d} parts, got {}",
            a.len()
        )));
    }
    Ok(())
}

/// `∫ |u_{11}|^{2a_1} ⋯ |u_{1d}|^{2a_d} dU = (d−1)! Π a_k! / (n+d−1)!`.
pub fn hewitt_ross_row_moment(a: &[usize], d: usize) -> Result<BigRational> {
    check_composition(a, d)?;
    let n: usize = a.iter().sum();
    let num: BigInt = factorial(d - 1) * a.iter().map(|&m| factorial(m)).product::<BigInt>();
    Ok(BigRational::new(num, factorial(n + d - 1)))
}

/// `∫ |u_{ij}|^{2n} dU = 1 / C(d+n−1, d−1)`.
pub fn single_entry_moment(n: usize, d: usize) -> Result<BigRational> {
    caps::check_dimension(d)?;
    Ok(BigRational::new(BigInt::one(), binomial(d + n - 1, d - 1)))
}

/// `∫ |tr U|^{2n} dU = Σ_{λ ⊢ n, l(λ) ≤ d} (dim S^λ)²`.
pub fn trace_moment(n: usize, d: usize) -> Result<BigInt> {
    caps::check_dimension(d)?;
    Ok(enumerate_partitions(n, Some(d))
        .iter()
        .map(|l| {
            let f = dim_specht(l);
            &f * &f
        })
        .sum())
}

fn power_budget(what: &str, d: usize, e: usize, budget: u128) -> Result<()> {
    let requested = (d as u128).checked_pow(e as u32).unwrap_or(u128::MAX);
    if requested > budget {
        return Err(Error::BudgetExceeded {
            what: format!("{what}: d^{e} = {d}^{e} multiindices"),
            requested,
            budget,
        });
    }
    Ok(())
}

/// `n! Σ_{i ∈ [d]^n} Σ_{σ ∈ Stab(i)} Wg(σ)`, which equals [`trace_moment`].
///
/// The inner sum depends only on the multiplicity pattern of `i` and is cached on it.
pub fn trace_moment_via_sum(n: usize, d: usize) -> Result<BigRational> {
    caps::check_dimension(d)?;
    caps::check_group(n)?;
    power_budget("trace stabilizer sum", d, n, TRACE_SUM_BUDGET)?;
    let data = ClassData::get(n)?;
    let wg = weingarten_class_function(n, d)?;
    let mut by_pattern: HashMap<Vec<usize>, BigRational> = HashMap::new();
    let mut total = BigRational::zero();
    for i in MultiIndex::all(d, n) {
        let mut pattern: Vec<usize> = i.multiplicities().into_values().collect();
        pattern.sort_unstable();
        let v = by_pattern.entry(pattern).or_insert_with(|| {
            let mut counter = ClassCounter::new(&data);
            for s in matching_permutations(&i, &i) {
                counter.add(s.zero_based());
            }
            counter.dot(&wg)
        });
        total += &*v;
    }
    Ok(total * int(factorial(n)))
}

/// `γ = γ_1⋯γ_n ∈ S_{kn}` with `γ_l` the cycle `lk → lk−1 → ⋯ → lk−k+1 → lk`.
pub fn trace_power_permutation(k: usize, n: usize) -> Result<Permutation> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let cycles: Vec<Vec<usize>> = (1..=n)
        .map(|l| (0..k).map(|t| l * k - t).collect())
        .collect();
    let refs: Vec<&[usize]> = cycles.iter().map(Vec::as_slice).collect();
    Permutation::from_cycles(k * n, &refs)
}

/// Restricted growth strings of length `len` with at most `d` blocks:
/// one representative per orbit of `S_d` relabelling values.
fn canonical_indices(len: usize, d: usize) -> Vec<(Vec<usize>, usize)> {
    fn go(prefix: &mut Vec<usize>, blocks: usize, len: usize, d: usize, out: &mut Vec<(Vec<usize>, usize)>) {
        if prefix.len() == len {
            out.push((prefix.clone(), blocks));
            return;
        }
        for v in 1..=(blocks + 1).min(d) {
            prefix.push(v);
            go(prefix, blocks.max(v), len, d, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::with_capacity(len), 0, len, d, &mut out);
    out
}

/// `∫ |tr U^k|^{2n} dU`, by summing `∫ u_{i,γ(i)} ū_{γ(j),j}` over `i, j ∈ [d]^{kn}`.
///
/// Only `j` that rearrange `i` contribute. The summand is unchanged when `i`
/// and `j` are relabelled by the same element of `S_d`, so `i` runs over one
/// representative per relabelling orbit, weighted by the orbit size.
pub fn trace_power_moment(k: usize, n: usize, d: usize) -> Result<BigRational> {
    caps::check_dimension(d)?;
    let gamma = trace_power_permutation(k, n)?;
    let len = k * n;
    caps::check_group(len)?;
    power_budget("trace power moment", d, len, TRACE_POWER_BUDGET)?;
    let mut total = BigRational::zero();
    for (entries, blocks) in canonical_indices(len, d) {
        let orbit: BigInt = (0..blocks).map(|b| BigInt::from(d - b)).product();
        let i = MultiIndex::new(entries)?;
        let gi = act_on_multiindex(&gamma, &i)?;
        let mut sum = BigRational::zero();
        for j in i.rearrangements() {
            let gj = act_on_multiindex(&gamma, &j)?;
            let q = MomentQuery::new(i.clone(), gi.clone(), gj, j, d)?;
            sum += haar_moment(&q)?;
        }
        total += sum * int(orbit);
    }
    Ok(total)
}

/// `E[W_{i_1 j_1} ⋯ W_{i_n j_n}]` for a unitarily invariant random matrix `W`
/// with spectral moments `s`:
///
/// ```text
/// Σ_{σ : σ(j) = i} Σ_{τ ∈ S_n} Wg(σ⁻¹τ) s(type τ) = Σ_{σ : σ(j) = i} (S ∗ Wg)(σ),
/// ```
///
/// where `S(τ) = s(type τ)`. The convolution is done on the Fourier side.
pub fn invariant_hermitian_moment(
    i: &MultiIndex,
    j: &MultiIndex,
    s: &SpectralMoments,
    d: usize,
) -> Result<BigRational> {
    caps::check_dimension(d)?;
    let n = s.n();
    for m in [i, j] {
        if m.len() != n {
            return Err(Error::WeightMismatch {
                expected: n,
                found: m.len(),
            });
        }
        m.check_range(d)?;
    }
    let count = matching_count(j, i);
    if count.is_zero() {
        return Ok(BigRational::zero());
    }
    let requested = count.to_u128().unwrap_or(u128::MAX);
    if requested > MATCHING_BUDGET {
        return Err(Error::BudgetExceeded {
            what: format!("matching permutations for n = {n}"),
            requested,
            budget: MATCHING_BUDGET,
        });
    }
    let data = ClassData::get(n)?;
    let wg = weingarten_class_function(n, d)?;
    let kernel = convolve(s.as_class_function(), &wg)?;
    let mut counter = ClassCounter::new(&data);
    for sigma in matching_permutations(j, i) {
        counter.add(sigma.zero_based());
    }
    Ok(counter.dot(&kernel))
}
