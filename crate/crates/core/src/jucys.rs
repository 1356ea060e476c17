//! Sparse elements of the group algebra `Q[S_n]` and the Jucys–Murphy
//! elements `J_k = (1 k) + (2 k) + ⋯ + (k−1 k)`.

use std::collections::BTreeMap;
use std::fmt;

use nalgebra::{DMatrix, SymmetricEigen};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::caps;
use crate::classfun::{char_pi, convolve, delta_e, ClassFunction};
use crate::symgroup::{enumerate_group, Permutation};
use crate::util::int;
use crate::weingarten::weingarten_class_function;
use crate::{Error, Result};

/// A finite formal sum `Σ c_σ σ` with rational coefficients. Zero
/// coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    n: usize,
    terms: BTreeMap<Permutation, BigRational>,
}

impl GroupAlgebraElement {
    pub fn zero(n: usize) -> Self {
        GroupAlgebraElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    /// The unit `δ_e`.
    pub fn identity(n: usize) -> Self {
        Self::basis(Permutation::identity(n))
    }

    pub fn basis(sigma: Permutation) -> Self {
        let n = sigma.n();
        let mut terms = BTreeMap::new();
        terms.insert(sigma, BigRational::one());
        GroupAlgebraElement { n, terms }
    }

    /// Sums repeated keys and drops zeros. Every key must lie in `S_n`.
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Permutation, BigRational)>) -> Result<Self> {
        let mut out = GroupAlgebraElement::zero(n);
        for (sigma, c) in terms {
            if sigma.n() != n {
                return Err(Error::WeightMismatch {
                    expected: n,
                    found: sigma.n(),
                });
            }
            out.add_term(sigma, c);
        }
        Ok(out)
    }

    /// `Σ_σ f(type σ) σ`. Enumerates `S_n`.
    pub fn from_class_function(f: &ClassFunction) -> Result<Self> {
        let n = f.n();
        let mut out = GroupAlgebraElement::zero(n);
        for sigma in enumerate_group(n)? {
            let c = f.value_at(&sigma)?.clone();
            out.add_term(sigma, c);
        }
        Ok(out)
    }

    fn add_term(&mut self, sigma: Permutation, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(sigma) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Permutation, BigRational> {
        &self.terms
    }

    pub fn coefficient(&self, sigma: &Permutation) -> BigRational {
        self.terms.get(sigma).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored (non-zero) terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &GroupAlgebraElement) -> Result<GroupAlgebraElement> {
        same_weight(self, other)?;
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.add_term(s.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> GroupAlgebraElement {
        if c.is_zero() {
            return GroupAlgebraElement::zero(self.n);
        }
        GroupAlgebraElement {
            n: self.n,
            terms: self.terms.iter().map(|(s, v)| (s.clone(), v * c)).collect(),
        }
    }

    pub fn multiply(&self, other: &GroupAlgebraElement) -> Result<GroupAlgebraElement> {
        algebra_multiply(self, other)
    }

    /// The coefficients as a class function, or `None` if they are not
    /// constant on conjugacy classes. Enumerates `S_n`.
    pub fn to_class_function(&self) -> Result<Option<ClassFunction>> {
        let mut values: BTreeMap<crate::Partition, BigRational> = BTreeMap::new();
        for sigma in enumerate_group(self.n)? {
            let c = self.coefficient(&sigma);
            match values.get(&sigma.cycle_type()) {
                Some(v) if *v != c => return Ok(None),
                Some(_) => {}
                None => {
                    values.insert(sigma.cycle_type(), c);
                }
            }
        }
        Ok(Some(ClassFunction::from_pairs(self.n, values)?))
    }
}

impl fmt::Debug for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (s, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}·{s}")?;
        }
        Ok(())
    }
}

fn same_weight(a: &GroupAlgebraElement, b: &GroupAlgebraElement) -> Result<()> {
    if a.n != b.n {
        return Err(Error::WeightMismatch {
            expected: a.n,
            found: b.n,
        });
    }
    Ok(())
}

/// `(ab)(x) = Σ_u a(u) b(u⁻¹x)`, i.e. the bilinear extension of `σ·τ = σ∘τ`.
pub fn algebra_multiply(a: &GroupAlgebraElement, b: &GroupAlgebraElement) -> Result<GroupAlgebraElement> {
    same_weight(a, b)?;
    let mut out = GroupAlgebraElement::zero(a.n);
    for (s, x) in &a.terms {
        for (t, y) in &b.terms {
            out.add_term(s.compose_unchecked(t), x * y);
        }
    }
    Ok(out)
}

/// `J_k` in `Q[S_n]`; `J_1 = 0`.
pub fn jucys_murphy(k: usize, n: usize) -> Result<GroupAlgebraElement> {
    caps::check_group(n)?;
    if k == 0 || k > n {
        return Err(Error::InvalidArgument(format!("J_{k} is not defined in S_{n}")));
    }
    let terms = (1..k)
        .map(|i| Ok((Permutation::transposition(n, i, k)?, BigRational::one())))
        .collect::<Result<Vec<_>>>()?;
    GroupAlgebraElement::from_terms(n, terms)
}

/// `(d + J_1)(d + J_2)⋯(d + J_n)`.
pub fn product_d_plus_jm(n: usize, d: usize) -> Result<GroupAlgebraElement> {
    caps::check_group(n)?;
    caps::check_dimension(d)?;
    let scalar = GroupAlgebraElement::identity(n).scale(&int(d));
    let mut acc = GroupAlgebraElement::identity(n);
    for k in 1..=n {
        let factor = scalar.add(&jucys_murphy(k, n)?)?;
        acc = algebra_multiply(&acc, &factor)?;
    }
    Ok(acc)
}

/// `e_r(J_1, …, J_n)`, built by the recurrence `e_r ← e_r + e_{r−1} J_k`.
pub fn elementary_symmetric_jm(r: usize, n: usize) -> Result<GroupAlgebraElement> {
    caps::check_group(n)?;
    if r > n {
        return Err(Error::InvalidArgument(format!("e_{r} needs r ≤ n = {n}")));
    }
    let mut e: Vec<GroupAlgebraElement> = (0..=r)
        .map(|s| {
            if s == 0 {
                GroupAlgebraElement::identity(n)
            } else {
                GroupAlgebraElement::zero(n)
            }
        })
        .collect();
    for k in 1..=n {
        let jk = jucys_murphy(k, n)?;
        for s in (1..=r.min(k)).rev() {
            let step = algebra_multiply(&e[s - 1], &jk)?;
            e[s] = e[s].add(&step)?;
        }
    }
    Ok(e.swap_remove(r))
}

/// Outcome of [`check_novak_identity`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NovakReport {
    pub n: usize,
    pub d: usize,
    /// `(d+J_1)⋯(d+J_n)` has coefficient `d^{#σ}` at every `σ`.
    pub product_matches_char_pi: bool,
    /// The product convolved with `Wg` is `δ_e`; `None` when skipped.
    pub inverse_relation: Option<bool>,
    pub skip_reason: Option<String>,
}

impl NovakReport {
    pub fn passed(&self) -> bool {
        self.product_matches_char_pi && self.inverse_relation != Some(false)
    }
}

/// Checks `(d+J_1)⋯(d+J_n) = χ_π` and, for `d ≥ n`, that its inverse is `Wg`.
pub fn check_novak_identity(n: usize, d: usize) -> Result<NovakReport> {
    let product = product_d_plus_jm(n, d)?;
    let chi = char_pi(n, d)?;
    let mut matches = true;
    for sigma in enumerate_group(n)? {
        if product.coefficient(&sigma) != int(BigInt::from(d).pow(sigma.num_cycles() as u32)) {
            matches = false;
            break;
        }
    }
    let (inverse_relation, skip_reason) = if d >= n {
        let ok = match product.to_class_function()? {
            Some(f) => {
                let wg = weingarten_class_function(n, d)?;
                f == chi && convolve(&f, &wg)? == delta_e(n)?
            }
            None => false,
        };
        (Some(ok), None)
    } else {
        (None, Some(format!("d = {d} < n = {n}: χ_π is not invertible")))
    };
    Ok(NovakReport {
        n,
        d,
        product_matches_char_pi: matches,
        inverse_relation,
        skip_reason,
    })
}

/// Outcome of [`jm_eigenvalue_bound_check`].
#[derive(Clone, Debug, PartialEq)]
pub struct EigenvalueReport {
    pub k: usize,
    pub n: usize,
    pub bound: f64,
    pub min_eigenvalue: f64,
    pub max_eigenvalue: f64,
    pub within_bound: bool,
}

/// Tolerance for the floating-point eigenvalue bound.
pub const EIGENVALUE_TOLERANCE: f64 = 1e-9;

/// Left-regular representation of `a` as a dense `n! × n!` matrix, rows and
/// columns labelled in [`enumerate_group`] order.
pub fn regular_representation(a: &GroupAlgebraElement) -> Result<DMatrix<f64>> {
    let n = a.n();
    if n > caps::REGULAR_REP_CAP {
        return Err(Error::CapExceeded {
            what: "n",
            requested: n,
            cap: caps::REGULAR_REP_CAP,
            reason: "the regular representation is n! x n!",
        });
    }
    let group: Vec<Permutation> = enumerate_group(n)?.collect();
    let position: BTreeMap<&Permutation, usize> = group.iter().enumerate().map(|(k, s)| (s, k)).collect();
    let size = group.len();
    let mut m = DMatrix::<f64>::zeros(size, size);
    for (col, sigma) in group.iter().enumerate() {
        for (t, c) in a.terms() {
            let row = position[&t.compose_unchecked(sigma)];
            m[(row, col)] += num_traits::ToPrimitive::to_f64(c).unwrap_or(f64::NAN);
        }
    }
    Ok(m)
}

/// Confirms numerically that every eigenvalue of `J_k` on the regular
/// representation lies in `[−(k−1), k−1]`.
pub fn jm_eigenvalue_bound_check(k: usize, n: usize) -> Result<EigenvalueReport> {
    let jk = jucys_murphy(k, n)?;
    let m = regular_representation(&jk)?;
    let eig = SymmetricEigen::new(m).eigenvalues;
    let min = eig.iter().copied().fold(f64::INFINITY, f64::min);
    let max = eig.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let bound = (k - 1) as f64;
    Ok(EigenvalueReport {
        k,
        n,
        bound,
        min_eigenvalue: min,
        max_eigenvalue: max,
        within_bound: min >= -bound - EIGENVALUE_TOLERANCE && max <= bound + EIGENVALUE_TOLERANCE,
    })
}
