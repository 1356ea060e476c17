//! Class functions on `S_n`, irreducible characters, and the Fourier calculus
//! on the centre of the group algebra.
//!
//! A central element `f` acts on the `λ`-isotypic block of the group algebra
//! by the scalar
//!
//! ```text
//! f̂(λ) = (1/dim S^λ) Σ_μ |C_μ| f(μ) χ^λ(μ),
//! ```
//!
//! and `f = Σ_λ f̂(λ) z_λ` with the minimal central idempotents
//! `z_λ = (dim S^λ / n!) χ^λ`. Convolution is therefore pointwise on the
//! Fourier side, and so is the Moore–Penrose pseudo-inverse.

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::caps;
use crate::partitions::{c_lambda, dim_specht, partition_index, Partition, PartitionIndex};
use crate::symgroup::{conjugacy_class_size, Permutation};
use crate::util::{factorial, int, Memo};
use crate::{Error, Result};

fn character_memo() -> &'static Memo<(Partition, Partition), i64> {
    static MEMO: OnceLock<Memo<(Partition, Partition), i64>> = OnceLock::new();
    MEMO.get_or_init(Memo::new)
}

/// `χ^λ(μ)` by the Murnaghan–Nakayama rule.
pub fn irreducible_character(lambda: &Partition, mu: &Partition) -> Result<i64> {
    if lambda.weight() != mu.weight() {
        return Err(Error::WeightMismatch {
            expected: lambda.weight(),
            found: mu.weight(),
        });
    }
    caps::check_class_function(lambda.weight())?;
    Ok(murnaghan_nakayama(lambda, mu.parts()))
}

/// Strips rim hooks of length `rest[0]` from `lambda`, recursing on the
/// remaining parts. Rim hooks are handled on the beta-set
/// `β_k = λ_k + (l − k)`: removing a hook of length `r` moves one bead from
/// `β` to `β − r`, with sign `(−1)^{#beads strictly between}`.
fn murnaghan_nakayama(lambda: &Partition, rest: &[usize]) -> i64 {
    let Some((&r, tail)) = rest.split_first() else {
        return 1;
    };
    let key = (lambda.clone(), Partition::from_unsorted(rest.to_vec()));
    if let Some(v) = character_memo().get(&key) {
        return *v;
    }
    let l = lambda.len();
    let beta: Vec<usize> = lambda
        .parts()
        .iter()
        .enumerate()
        .map(|(k, &p)| p + (l - 1 - k))
        .collect();
    let mut total = 0i64;
    for (k, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let target = b - r;
        let crossed = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut moved = beta.clone();
        moved[k] = target;
        moved.sort_unstable_by(|a, b| b.cmp(a));
        let parts: Vec<usize> = moved
            .iter()
            .enumerate()
            .map(|(k, &x)| x - (l - 1 - k))
            .collect();
        let smaller = Partition::from_unsorted(parts);
        let sign = if crossed % 2 == 0 { 1 } else { -1 };
        total += sign * murnaghan_nakayama(&smaller, tail);
    }
    *character_memo().get_or_insert_with(key, || total)
}

/// Per-`n` tables shared by every class-function computation.
pub struct ClassData {
    n: usize,
    index: Arc<PartitionIndex>,
    class_sizes: Vec<BigInt>,
    dims: Vec<BigInt>,
    /// `chars[λ][μ]`, both in canonical order.
    chars: Vec<Vec<i64>>,
    n_factorial: BigInt,
}

impl ClassData {
    pub fn get(n: usize) -> Result<Arc<ClassData>> {
        static CACHE: OnceLock<Memo<usize, ClassData>> = OnceLock::new();
        caps::check_class_function(n)?;
        Ok(CACHE.get_or_init(Memo::new).get_or_insert_with(n, || {
            let index = partition_index(n);
            let parts = index.partitions();
            let class_sizes = parts.iter().map(conjugacy_class_size).collect();
            let dims = parts.iter().map(dim_specht).collect();
            let chars = parts
                .iter()
                .map(|l| parts.iter().map(|m| murnaghan_nakayama(l, m.parts())).collect())
                .collect();
            ClassData {
                n,
                index,
                class_sizes,
                dims,
                chars,
                n_factorial: factorial(n),
            }
        }))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn partitions(&self) -> &[Partition] {
        self.index.partitions()
    }

    pub fn position(&self, p: &Partition) -> Option<usize> {
        self.index.position(p)
    }

    pub fn class_sizes(&self) -> &[BigInt] {
        &self.class_sizes
    }

    pub fn dims(&self) -> &[BigInt] {
        &self.dims
    }

    /// Character table, rows `λ`, columns `μ`.
    pub fn characters(&self) -> &[Vec<i64>] {
        &self.chars
    }
}

/// The character table of `S_n` (rows `λ`, columns `μ`, canonical order).
pub fn character_table(n: usize) -> Result<Vec<Vec<i64>>> {
    Ok(ClassData::get(n)?.chars.clone())
}

/// An exact rational function on the conjugacy classes of `S_n`.
///
/// Values are stored densely in canonical partition order, so every class of
/// `S_n` has an explicit (possibly zero) value.
#[derive(Clone, PartialEq, Eq)]
pub struct ClassFunction {
    n: usize,
    values: Vec<BigRational>,
}

/// Scalars by which a central element acts on each isotypic block, keyed by `λ ⊢ n`.
#[derive(Clone, PartialEq, Eq)]
pub struct FourierCoefficients {
    n: usize,
    coeffs: Vec<BigRational>,
}

macro_rules! partition_keyed {
    ($ty:ident, $field:ident) => {
        impl $ty {
            pub fn zero(n: usize) -> Result<Self> {
                let len = ClassData::get(n)?.partitions().len();
                Ok($ty {
                    n,
                    $field: vec![BigRational::zero(); len],
                })
            }

            pub fn from_fn(n: usize, mut f: impl FnMut(&Partition) -> BigRational) -> Result<Self> {
                let data = ClassData::get(n)?;
                Ok($ty {
                    n,
                    $field: data.partitions().iter().map(|p| f(p)).collect(),
                })
            }

            /// Builds from `(partition, value)` pairs that must cover every partition of `n` exactly once.
            pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (Partition, BigRational)>) -> Result<Self> {
                let data = ClassData::get(n)?;
                let mut slots: Vec<Option<BigRational>> = vec![None; data.partitions().len()];
                for (p, v) in pairs {
                    let pos = data.position(&p).ok_or(Error::WeightMismatch {
                        expected: n,
                        found: p.weight(),
                    })?;
                    if slots[pos].replace(v).is_some() {
                        return Err(Error::InvalidArgument(format!("duplicate key {p}")));
                    }
                }
                let $field = slots
                    .into_iter()
                    .enumerate()
                    .map(|(k, v)| {
                        v.ok_or_else(|| {
                            Error::InvalidArgument(format!("missing key {}", data.partitions()[k]))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok($ty { n, $field })
            }

            pub(crate) fn from_vec(n: usize, $field: Vec<BigRational>) -> Self {
                $ty { n, $field }
            }

            pub fn n(&self) -> usize {
                self.n
            }

            pub fn get(&self, p: &Partition) -> Result<&BigRational> {
                let data = ClassData::get(self.n)?;
                let pos = data.position(p).ok_or(Error::WeightMismatch {
                    expected: self.n,
                    found: p.weight(),
                })?;
                Ok(&self.$field[pos])
            }

            /// Values in canonical partition order.
            pub fn values(&self) -> &[BigRational] {
                &self.$field
            }

            pub fn iter(&self) -> impl Iterator<Item = (Partition, &BigRational)> + '_ {
                partition_index(self.n)
                    .partitions()
                    .to_vec()
                    .into_iter()
                    .zip(self.$field.iter())
            }

            pub fn is_zero(&self) -> bool {
                self.$field.iter().all(Zero::is_zero)
            }
        }

        impl fmt::Debug for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let mut m = f.debug_map();
                for (p, v) in self.iter() {
                    m.entry(&p.to_string(), &v.to_string());
                }
                m.finish()
            }
        }
    };
}

partition_keyed!(ClassFunction, values);
partition_keyed!(FourierCoefficients, coeffs);

impl ClassFunction {
    pub fn value_at(&self, sigma: &Permutation) -> Result<&BigRational> {
        if sigma.n() != self.n {
            return Err(Error::WeightMismatch {
                expected: self.n,
                found: sigma.n(),
            });
        }
        self.get(&sigma.cycle_type())
    }

    /// `Σ_{σ ∈ S_n} f(σ) = Σ_μ |C_μ| f(μ)`.
    pub fn group_sum(&self) -> BigRational {
        let data = ClassData::get(self.n).expect("validated on construction");
        self.values
            .iter()
            .zip(data.class_sizes())
            .map(|(v, s)| v * int(s.clone()))
            .sum()
    }

    pub fn scale(&self, c: &BigRational) -> ClassFunction {
        ClassFunction {
            n: self.n,
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    pub fn add(&self, other: &ClassFunction) -> Result<ClassFunction> {
        check_same(self.n, other.n)?;
        Ok(ClassFunction {
            n: self.n,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        })
    }
}

fn check_same(a: usize, b: usize) -> Result<()> {
    if a != b {
        Err(Error::WeightMismatch {
            expected: a,
            found: b,
        })
    } else {
        Ok(())
    }
}

/// `χ_π(μ) = d^{l(μ)}`, the character of `S_n` permuting tensor factors of `(C^d)^{⊗n}`.
pub fn char_pi(n: usize, d: usize) -> Result<ClassFunction> {
    caps::check_dimension(d)?;
    ClassFunction::from_fn(n, |mu| int(BigInt::from(d).pow(mu.len() as u32)))
}

/// The unit of convolution: `1` on the identity class, `0` elsewhere.
pub fn delta_e(n: usize) -> Result<ClassFunction> {
    let e = Partition::column(n);
    ClassFunction::from_fn(n, |mu| if *mu == e { BigRational::one() } else { BigRational::zero() })
}

/// The irreducible character `χ^λ` as a class function.
pub fn character(lambda: &Partition) -> Result<ClassFunction> {
    let n = lambda.weight();
    let data = ClassData::get(n)?;
    let row = data.position(lambda).expect("partition of n");
    Ok(ClassFunction::from_vec(
        n,
        data.chars[row].iter().map(|&c| int(c)).collect(),
    ))
}

pub fn fourier(f: &ClassFunction) -> FourierCoefficients {
    let data = ClassData::get(f.n).expect("validated on construction");
    let weighted: Vec<BigRational> = f
        .values
        .iter()
        .zip(data.class_sizes())
        .map(|(v, s)| v * int(s.clone()))
        .collect();
    let coeffs = data
        .chars
        .iter()
        .zip(data.dims())
        .map(|(row, dim)| {
            let s: BigRational = weighted
                .iter()
                .zip(row)
                .filter(|(_, &c)| c != 0)
                .map(|(w, &c)| w * int(c))
                .sum();
            s / int(dim.clone())
        })
        .collect();
    FourierCoefficients::from_vec(f.n, coeffs)
}

pub fn inverse_fourier(coeffs: &FourierCoefficients) -> ClassFunction {
    let data = ClassData::get(coeffs.n).expect("validated on construction");
    // weight of χ^λ in the expansion: f̂(λ) dim λ / n!
    let weights: Vec<BigRational> = coeffs
        .coeffs
        .iter()
        .zip(data.dims())
        .map(|(c, dim)| c * BigRational::new(dim.clone(), data.n_factorial.clone()))
        .collect();
    let ncls = data.partitions().len();
    let values = (0..ncls)
        .map(|m| {
            weights
                .iter()
                .zip(&data.chars)
                .filter(|(w, row)| !w.is_zero() && row[m] != 0)
                .map(|(w, row)| w * int(row[m]))
                .sum()
        })
        .collect();
    ClassFunction::from_vec(coeffs.n, values)
}

/// Group-algebra product of two central elements.
pub fn convolve(f: &ClassFunction, g: &ClassFunction) -> Result<ClassFunction> {
    check_same(f.n, g.n)?;
    let (ff, gg) = (fourier(f), fourier(g));
    let prod = ff.coeffs.iter().zip(&gg.coeffs).map(|(a, b)| a * b).collect();
    Ok(inverse_fourier(&FourierCoefficients::from_vec(f.n, prod)))
}

/// Moore–Penrose pseudo-inverse in the centre: Fourier coefficients are
/// inverted where non-zero and left at zero otherwise.
pub fn pseudo_inverse(f: &ClassFunction) -> ClassFunction {
    let ff = fourier(f);
    let inv = ff
        .coeffs
        .iter()
        .map(|c| if c.is_zero() { BigRational::zero() } else { c.recip() })
        .collect();
    inverse_fourier(&FourierCoefficients::from_vec(f.n, inv))
}

/// The Fourier coefficients `c_λ(d)` of `χ_π`, from the content product.
pub fn content_coefficients(n: usize, d: usize) -> Result<FourierCoefficients> {
    FourierCoefficients::from_fn(n, |l| int(c_lambda(l, d)))
}

impl FourierCoefficients {
    pub fn all_nonzero(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_zero())
    }

    pub fn max_abs(&self) -> BigRational {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigRational::zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::enumerate_partitions;
    use crate::symgroup::enumerate_group;
    use crate::util::ratio;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn character_examples() {
        for n in 1..=8 {
            for mu in enumerate_partitions(n, None) {
                assert_eq!(irreducible_character(&Partition::row(n), &mu), Ok(1));
                let sign = if (n - mu.len()) % 2 == 0 { 1 } else { -1 };
                assert_eq!(irreducible_character(&Partition::column(n), &mu), Ok(sign));
            }
        }
        assert_eq!(irreducible_character(&p(&[2, 1]), &p(&[1, 1, 1])), Ok(2));
        assert_eq!(irreducible_character(&p(&[2, 1]), &p(&[3])), Ok(-1));
        assert_eq!(irreducible_character(&p(&[2, 1]), &p(&[2, 1])), Ok(0));
        assert!(matches!(
            irreducible_character(&p(&[2, 1]), &p(&[2])),
            Err(Error::WeightMismatch { .. })
        ));
        let big = Partition::row(13);
        assert!(matches!(
            irreducible_character(&big, &big),
            Err(Error::CapExceeded { .. })
        ));
    }

    /// `det` of the permutation matrix of σ, computed by Gaussian elimination on floats.
    #[allow(clippy::needless_range_loop)]
    fn permutation_matrix_det(sigma: &Permutation) -> i64 {
        let n = sigma.n();
        let mut m = vec![vec![0f64; n]; n];
        for k in 1..=n {
            m[sigma.image(k) - 1][k - 1] = 1.0;
        }
        let mut det = 1.0;
        for c in 0..n {
            let piv = (c..n).find(|&r| m[r][c] != 0.0).unwrap();
            if piv != c {
                m.swap(piv, c);
                det = -det;
            }
            det *= m[c][c];
            for r in c + 1..n {
                let f = m[r][c] / m[c][c];
                for k in c..n {
                    m[r][k] -= f * m[c][k];
                }
            }
        }
        det.round() as i64
    }

    #[test]
    fn sign_character_is_permutation_determinant() {
        for n in 1..=5 {
            for s in enumerate_group(n).unwrap() {
                let chi = irreducible_character(&Partition::column(n), &s.cycle_type()).unwrap();
                assert_eq!(chi, permutation_matrix_det(&s));
            }
        }
    }

    #[test]
    fn orthogonality_and_dimensions() {
        for n in 1..=8 {
            let data = ClassData::get(n).unwrap();
            let k = data.partitions().len();
            for a in 0..k {
                assert_eq!(BigInt::from(data.chars[a][k - 1]), data.dims[a]);
                for b in 0..k {
                    let s: BigInt = (0..k)
                        .map(|m| &data.class_sizes[m] * data.chars[a][m] * data.chars[b][m])
                        .sum();
                    let expect = if a == b { factorial(n) } else { BigInt::zero() };
                    assert_eq!(s, expect, "n={n} rows {a},{b}");
                }
            }
            // second orthogonality: Σ_λ χ^λ(μ)² = z_μ = n!/|C_μ|
            for m in 0..k {
                let s: i64 = (0..k).map(|a| data.chars[a][m].pow(2)).sum();
                assert_eq!(BigInt::from(s) * &data.class_sizes[m], factorial(n));
            }
        }
    }

    /// Frobenius formula: `χ^λ(μ)` is the coefficient of `x^{λ+δ}` in `a_δ · p_μ`.
    /// Each way of sending the parts of `μ` to variables contributes a monomial of
    /// `p_μ`; it pairs with `a_δ` iff `λ + δ − exponent` is a permutation of `δ`.
    fn frobenius_character(lambda: &Partition, mu: &Partition) -> i64 {
        let vars = lambda.len().max(1);
        let target: Vec<i64> = (0..vars)
            .map(|k| lambda.parts().get(k).copied().unwrap_or(0) as i64 + (vars - 1 - k) as i64)
            .collect();
        let parts = mu.parts();
        let mut total = 0;
        let mut assign = vec![0usize; parts.len()];
        loop {
            let mut exps = target.clone();
            for (part, &v) in parts.iter().zip(&assign) {
                exps[v] -= *part as i64;
            }
            // exps must be a permutation of (vars-1, …, 0); sign of sorting it
            let mut sorted = exps.clone();
            sorted.sort_unstable_by(|a, b| b.cmp(a));
            if sorted.iter().enumerate().all(|(k, &e)| e == (vars - 1 - k) as i64) {
                let mut inversions = 0;
                for a in 0..vars {
                    for b in a + 1..vars {
                        if exps[a] < exps[b] {
                            inversions += 1;
                        }
                    }
                }
                total += if inversions % 2 == 0 { 1 } else { -1 };
            }
            let mut k = 0;
            while k < assign.len() {
                assign[k] += 1;
                if assign[k] < vars {
                    break;
                }
                assign[k] = 0;
                k += 1;
            }
            if k == assign.len() {
                break;
            }
        }
        total
    }

    #[test]
    fn murnaghan_nakayama_matches_frobenius_formula() {
        for n in 1..=7 {
            for lambda in enumerate_partitions(n, None) {
                for mu in enumerate_partitions(n, None) {
                    assert_eq!(
                        irreducible_character(&lambda, &mu).unwrap(),
                        frobenius_character(&lambda, &mu),
                        "χ^{lambda}({mu})"
                    );
                }
            }
        }
    }

    #[test]
    fn char_pi_values() {
        let f = char_pi(1, 5).unwrap();
        assert_eq!(f.get(&p(&[1])).unwrap(), &int(5));
        let f = char_pi(2, 2).unwrap();
        assert_eq!(f.get(&p(&[1, 1])).unwrap(), &int(4));
        assert_eq!(f.get(&p(&[2])).unwrap(), &int(2));
        let f = char_pi(3, 1).unwrap();
        assert!(f.values().iter().all(|v| v.is_one()));
        assert!(char_pi(2, 0).is_err());
    }

    #[test]
    fn delta_and_fourier() {
        let e = delta_e(2).unwrap();
        assert_eq!(e.get(&p(&[1, 1])).unwrap(), &int(1));
        assert_eq!(e.get(&p(&[2])).unwrap(), &int(0));
        for n in 1..=6 {
            let e = delta_e(n).unwrap();
            assert!(fourier(&e).values().iter().all(|c| c.is_one()));
            let ones = FourierCoefficients::from_fn(n, |_| BigRational::one()).unwrap();
            assert_eq!(inverse_fourier(&ones), e);
            assert!(inverse_fourier(&FourierCoefficients::zero(n).unwrap()).is_zero());
            for d in 1..=6 {
                assert_eq!(fourier(&char_pi(n, d).unwrap()), content_coefficients(n, d).unwrap());
            }
        }
    }

    #[test]
    fn pseudo_inverse_basics() {
        for n in 1..=5 {
            assert_eq!(pseudo_inverse(&delta_e(n).unwrap()), delta_e(n).unwrap());
            assert!(pseudo_inverse(&ClassFunction::zero(n).unwrap()).is_zero());
        }
        // n = 2, d = 3: the inverse of [[9,3],[3,9]] has first row 1/8, −1/24
        let w = pseudo_inverse(&char_pi(2, 3).unwrap());
        assert_eq!(w.get(&p(&[1, 1])).unwrap(), &ratio(1, 8));
        assert_eq!(w.get(&p(&[2])).unwrap(), &ratio(-1, 24));
        let prod = convolve(&char_pi(2, 3).unwrap(), &w).unwrap();
        assert_eq!(prod.get(&p(&[1, 1])).unwrap(), &int(1));
    }

    /// `(fg)(x) = Σ_u f(u) g(u⁻¹x)`, summed directly over the group.
    fn direct_convolution(f: &ClassFunction, g: &ClassFunction) -> ClassFunction {
        let n = f.n();
        let group: Vec<Permutation> = enumerate_group(n).unwrap().collect();
        ClassFunction::from_fn(n, |mu| {
            let x = group.iter().find(|s| &s.cycle_type() == mu).unwrap();
            group
                .iter()
                .map(|u| f.value_at(u).unwrap() * g.value_at(&u.inverse().compose(x).unwrap()).unwrap())
                .sum()
        })
        .unwrap()
    }

    #[test]
    fn convolution_matches_direct_group_sum() {
        for n in 1..=5 {
            let f = ClassFunction::from_fn(n, |mu| ratio(mu.len() as i64 * 3 - 7, mu.parts()[0] as i64 + 1)).unwrap();
            let g = char_pi(n, 2).unwrap();
            assert_eq!(convolve(&f, &g).unwrap(), direct_convolution(&f, &g));
            assert_eq!(convolve(&delta_e(n).unwrap(), &f).unwrap(), f);
        }
        assert!(convolve(&delta_e(2).unwrap(), &delta_e(3).unwrap()).is_err());
    }

    #[test]
    fn from_pairs_requires_total_map() {
        let ok = ClassFunction::from_pairs(2, vec![(p(&[2]), int(1)), (p(&[1, 1]), int(2))]).unwrap();
        assert_eq!(ok.get(&p(&[1, 1])).unwrap(), &int(2));
        assert!(ClassFunction::from_pairs(2, vec![(p(&[2]), int(1))]).is_err());
        assert!(ClassFunction::from_pairs(2, vec![(p(&[3]), int(1))]).is_err());
    }
}
