//! The unitary Weingarten function `Wg(·, d)` on `S_n`.
//!
//! `Wg(μ) = (1/(n!)²) Σ_{λ ⊢ n, l(λ) ≤ d} (dim S^λ)² / dim W^λ_d · χ^λ(μ)`.
//! Partitions with more than `d` rows have `dim W^λ_d = 0` and are skipped.
//! Equivalently `Wg` is the pseudo-inverse of `χ_π` in the centre of the group
//! algebra; [`crate::classfun::pseudo_inverse`] computes it that way.

use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::caps;
use crate::classfun::{ClassData, ClassFunction};
use crate::partitions::{dim_weyl, Partition};
use crate::symgroup::Permutation;
use crate::util::{factorial, int, Memo};
use crate::{Error, Result};

fn memo() -> &'static Memo<(usize, usize), ClassFunction> {
    static MEMO: OnceLock<Memo<(usize, usize), ClassFunction>> = OnceLock::new();
    MEMO.get_or_init(Memo::new)
}

/// `Wg(·, d)` on `S_n` as an exact class function. Cached per `(n, d)`.
pub fn weingarten_class_function(n: usize, d: usize) -> Result<Arc<ClassFunction>> {
    caps::check_dimension(d)?;
    let data = ClassData::get(n)?;
    Ok(memo().get_or_insert_with((n, d), || build(&data, d)))
}

fn build(data: &ClassData, d: usize) -> ClassFunction {
    let nf = factorial(data.n());
    let nf2 = &nf * &nf;
    // coefficient of χ^λ
    let weights: Vec<Option<BigRational>> = data
        .partitions()
        .iter()
        .zip(data.dims())
        .map(|(lambda, dim)| {
            if lambda.len() > d {
                return None;
            }
            let weyl = dim_weyl(lambda, d);
            debug_assert!(!weyl.is_zero());
            Some(BigRational::new(dim * dim, &nf2 * weyl))
        })
        .collect();
    let ncls = data.partitions().len();
    let values = (0..ncls)
        .map(|m| {
            let mut s = BigRational::zero();
            for (w, row) in weights.iter().zip(data.characters()) {
                if let Some(w) = w {
                    if row[m] != 0 {
                        s += w * int(row[m]);
                    }
                }
            }
            s
        })
        .collect();
    ClassFunction::from_vec(data.n(), values)
}

/// `Wg(μ, d)` for a cycle type.
pub fn weingarten_value(mu: &Partition, d: usize) -> Result<BigRational> {
    let wg = weingarten_class_function(mu.weight(), d)?;
    wg.get(mu).cloned()
}

/// `Wg(σ, d)`.
pub fn weingarten_value_at(sigma: &Permutation, d: usize) -> Result<BigRational> {
    weingarten_value(&sigma.cycle_type(), d)
}

/// `1/(d(d+1)⋯(d+n−1))`.
pub fn weingarten_sum(n: usize, d: usize) -> Result<BigRational> {
    caps::check_dimension(d)?;
    let rising: BigInt = (d..d + n).map(BigInt::from).product();
    Ok(BigRational::new(BigInt::one(), rising))
}

/// Whether `Σ_μ |C_μ| Wg(μ)` equals [`weingarten_sum`].
pub fn weingarten_sum_holds(n: usize, d: usize) -> Result<bool> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let wg = weingarten_class_function(n, d)?;
    Ok(wg.group_sum() == weingarten_sum(n, d)?)
}
