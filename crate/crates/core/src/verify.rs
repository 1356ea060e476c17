//! The cross-identity suite. Each check returns a [`CriterionReport`]; the
//! CLI `verify` command and the acceptance tests both run these functions.

use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classfun::{char_pi, pseudo_inverse};
use crate::gram::{predicted_nullity, rank_and_nullity, verify_moore_penrose};
use crate::jucys::{elementary_symmetric_jm, product_d_plus_jm};
use crate::moments::{
    haar_moment, hewitt_ross_query, hewitt_ross_row_moment, invariant_hermitian_moment,
    single_entry_moment, trace_moment, trace_moment_via_sum, trace_power_moment, MomentQuery,
    SpectralMoments,
};
use crate::montecarlo::{estimate_observables, monomial, sample_haar_unitary, unitarity_defect, Complex64};
use crate::partitions::dim_specht;
use crate::partitions::enumerate_partitions;
use crate::symgroup::{act_on_multiindex, enumerate_group, MultiIndex, Permutation};
use crate::util::{factorial, int};
use crate::weingarten::{weingarten_class_function, weingarten_sum, weingarten_sum_holds};
use crate::{caps, Error, Result};

/// Failures recorded per criterion before the rest are only counted.
const MAX_LISTED_FAILURES: usize = 20;

#[derive(Clone, Debug, PartialEq)]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    /// Number of individual identities checked.
    pub checks: usize,
    pub failures: Vec<String>,
    pub seconds: f64,
    pub detail: String,
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] criterion {:>2} {}: {} checks, {:.2}s; {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.checks,
            self.seconds,
            self.detail
        )?;
        for failure in &self.failures {
            write!(f, "\n    {failure}")?;
        }
        Ok(())
    }
}

struct Tally {
    id: u8,
    name: &'static str,
    start: Instant,
    checks: usize,
    failed: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new(id: u8, name: &'static str) -> Self {
        Tally {
            id,
            name,
            start: Instant::now(),
            checks: 0,
            failed: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < MAX_LISTED_FAILURES {
                self.failures.push(describe());
            }
        }
    }

    fn finish(self, detail: impl Into<String>) -> CriterionReport {
        let mut failures = self.failures;
        if self.failed > failures.len() {
            failures.push(format!("… and {} more", self.failed - failures.len()));
        }
        CriterionReport {
            id: self.id,
            name: self.name,
            passed: self.failed == 0,
            checks: self.checks,
            failures,
            seconds: self.start.elapsed().as_secs_f64(),
            detail: detail.into(),
        }
    }
}

/// Criterion 1: `Wg` from characters equals the pseudo-inverse of `χ_π`.
pub fn dual_construction(max_n: usize, max_d: usize) -> Result<CriterionReport> {
    let mut t = Tally::new(1, "dual construction of Wg");
    for n in 1..=max_n {
        for d in 1..=max_d {
            let wg = weingarten_class_function(n, d)?;
            let mp = pseudo_inverse(&char_pi(n, d)?);
            t.check(*wg == mp, || format!("n={n} d={d}: {wg:?} != {mp:?}"));
        }
    }
    Ok(t.finish(format!("n ≤ {max_n}, d ≤ {max_d}, exact")))
}

/// Criterion 2: Moore–Penrose identities for the explicit `G` and `W`.
pub fn gram_cross_check(max_n: usize, max_d: usize) -> Result<CriterionReport> {
    let mut t = Tally::new(2, "Gram matrix Moore-Penrose");
    for n in 1..=max_n {
        for d in 1..=max_d {
            let r = verify_moore_penrose(n, d)?;
            t.check(r.passed(), || format!("n={n} d={d}: {r:?}"));
        }
    }
    Ok(t.finish(format!("n ≤ {max_n}, d ≤ {max_d}, GWG=G, WGW=W, WG and GW symmetric, identity row = Wg")))
}

/// Criterion 3: `Σ_μ |C_μ| Wg(μ) = 1/(d(d+1)⋯(d+n−1))`.
pub fn weingarten_sum_identity(max_n: usize, max_d: usize) -> Result<CriterionReport> {
    let mut t = Tally::new(3, "sum of Wg over S_n");
    for n in 1..=max_n {
        for d in 1..=max_d {
            let ok = weingarten_sum_holds(n, d)?;
            t.check(ok, || format!("n={n} d={d}: expected {}", weingarten_sum(n, d).unwrap()));
        }
    }
    Ok(t.finish(format!("n ≤ {max_n}, d ≤ {max_d}")))
}

/// All `d`-tuples of non-negative integers summing to `n`.
pub fn compositions(n: usize, d: usize) -> Vec<Vec<usize>> {
    if d == 0 {
        return if n == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in (0..=n).rev() {
        for mut rest in compositions(n - first, d - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Criterion 4: Row moments `∫ Π |u_{1k}|^{2a_k}` against the closed form.
pub fn hewitt_ross_agreement(max_n: usize, max_d: usize) -> Result<CriterionReport> {
    let mut t = Tally::new(4, "row moments closed form");
    for d in 1..=max_d {
        for n in 1..=max_n {
            for a in compositions(n, d) {
                let closed = hewitt_ross_row_moment(&a, d)?;
                let value = haar_moment(&hewitt_ross_query(&a, d)?)?;
                t.check(value == closed, || format!("a={a:?} d={d}: {value} != {closed}"));
            }
            let dd = BigInt::from(d);
            let quartic = BigRational::new(BigInt::from(2), &dd * (&dd + 1));
            if n == 2 {
                let single = single_entry_moment(2, d)?;
                t.check(single == quartic, || format!("|u|^4 at d={d}: {single}"));
            }
            let mut a = vec![0; d];
            a[0] = n;
            let single = single_entry_moment(n, d)?;
            let closed = hewitt_ross_row_moment(&a, d)?;
            t.check(single == closed, || format!("|u|^{} at d={d}: {single} != {closed}", 2 * n));
        }
    }
    Ok(t.finish(format!("compositions of n ≤ {max_n} into d ≤ {max_d} parts")))
}

fn sum_dim_squared(n: usize, d: usize) -> BigInt {
    enumerate_partitions(n, Some(d))
        .iter()
        .map(|l| {
            let f = dim_specht(l);
            &f * &f
        })
        .sum()
}

/// Criterion 5: `E|tr U|^{2n}` four ways.
pub fn trace_moments(max_n: usize, max_d: usize) -> Result<CriterionReport> {
    let mut t = Tally::new(5, "trace moments");
    for n in 1..=max_n {
        for d in 1..=max_d {
            let mut double_sum = BigRational::zero();
            let all: Vec<MultiIndex> = MultiIndex::all(d, n).collect();
            for i in &all {
                for j in &all {
                    let q = MomentQuery::new(i.clone(), i.clone(), j.clone(), j.clone(), d)?;
                    double_sum += haar_moment(&q)?;
                }
            }
            let tm = int(trace_moment(n, d)?);
            let dims = int(sum_dim_squared(n, d));
            let via = trace_moment_via_sum(n, d)?;
            t.check(double_sum == tm && tm == dims && via == tm, || {
                format!("n={n} d={d}: double sum {double_sum}, trace_moment {tm}, Σdim² {dims}, stabilizer sum {via}")
            });
        }
        for d in n..=n + 2 {
            let tm = trace_moment(n, d)?;
            t.check(tm == factorial(n), || format!("n={n} d={d}: {tm} != n!"));
        }
    }
    let tm = trace_moment(3, 2)?;
    t.check(tm == BigInt::from(5), || format!("trace_moment(3,2) = {tm}"));
    Ok(t.finish(format!("n ≤ {max_n}, d ≤ {max_d}; double sum, Σdim², stabilizer sum")))
}

/// Criterion 6: `(d+J_1)⋯(d+J_n) = Σ d^{#σ} σ` and `e_r(J) = Σ_{#σ = n−r} σ`.
pub fn jucys_identities(max_n: usize, max_d: usize) -> Result<CriterionReport> {
    let mut t = Tally::new(6, "Jucys-Murphy identities");
    for n in 1..=max_n {
        let group: Vec<Permutation> = enumerate_group(n)?.collect();
        for d in 1..=max_d {
            let p = product_d_plus_jm(n, d)?;
            let ok = p.len() == group.len()
                && group
                    .iter()
                    .all(|s| p.coefficient(s) == int(BigInt::from(d).pow(s.num_cycles() as u32)));
            t.check(ok, || format!("product n={n} d={d}"));
        }
        for r in 0..=n {
            let e = elementary_symmetric_jm(r, n)?;
            let ok = group.iter().all(|s| {
                let want = if s.num_cycles() == n - r { 1 } else { 0 };
                e.coefficient(s) == int(want)
            });
            t.check(ok, || format!("e_{r} n={n}"));
        }
    }
    Ok(t.finish(format!("n ≤ {max_n}, d ≤ {max_d}, including d < n")))
}

/// Criterion 7: `rank G = Σ_{l(λ)≤d} dim²`, `nullity = Σ_{l(λ)>d} dim²`.
pub fn rank_nullity(max_n: usize, max_d: usize) -> Result<CriterionReport> {
    let mut t = Tally::new(7, "Gram rank and nullity");
    for n in 1..=max_n {
        for d in 1..=max_d {
            let (rank, nullity) = rank_and_nullity(n, d)?;
            let want_rank = trace_moment(n, d)?;
            let want_null = predicted_nullity(n, d);
            t.check(BigInt::from(rank) == want_rank && BigInt::from(nullity) == want_null, || {
                format!("n={n} d={d}: rank {rank} (want {want_rank}), nullity {nullity} (want {want_null})")
            });
        }
    }
    Ok(t.finish(format!("n ≤ {max_n}, d ≤ {max_d}, Bareiss elimination")))
}

/// Criterion 8: `E|tr U^k|^{2n} = k^n n!` for `kn ≤ d`, at the listed small cases.
pub fn trace_power_values(max_n: usize, max_d: usize) -> Result<CriterionReport> {
    let mut t = Tally::new(8, "trace power moments k^n n!");
    let mut cases = Vec::new();
    for n in 1..=max_n.min(4) {
        for d in n..=max_d {
            cases.push((1, n, d));
        }
    }
    for k in 2..=3 {
        for d in k..=max_d {
            cases.push((k, 1, d));
        }
    }
    for (k, n, d) in cases {
        let v = trace_power_moment(k, n, d)?;
        let want = int(BigInt::from(k).pow(n as u32) * factorial(n));
        t.check(v == want, || format!("k={k} n={n} d={d}: {v} != {want}"));
    }
    Ok(t.finish(format!("(1, n ≤ {}, n ≤ d ≤ {max_d}), (2|3, 1, k ≤ d ≤ {max_d})", max_n.min(4))))
}

fn random_permutation(n: usize, rng: &mut ChaCha8Rng) -> Permutation {
    let mut images: Vec<usize> = (1..=n).collect();
    images.shuffle(rng);
    Permutation::new(images).expect("shuffled identity")
}

fn random_index(n: usize, d: usize, rng: &mut ChaCha8Rng) -> MultiIndex {
    MultiIndex::new((0..n).map(|_| rng.random_range(1..=d)).collect()).expect("entries ≥ 1")
}

/// Criterion 9: Invariance under position permutations, under value relabelling, and
/// under the swap `(i, j, i′, j′) → (j′, i′, j, i)`.
pub fn symmetry_suite(queries: usize, max_n: usize, max_d: usize, seed: u64) -> Result<CriterionReport> {
    let mut t = Tally::new(9, "symmetry properties");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut nonzero = 0;
    for _ in 0..queries {
        let n = rng.random_range(1..=max_n);
        let d = rng.random_range(1..=max_d);
        let i = random_index(n, d, &mut rng);
        let j = random_index(n, d, &mut rng);
        // mostly matching multisets, otherwise almost every value is 0
        let (ip, jp) = if rng.random_bool(0.85) {
            (
                act_on_multiindex(&random_permutation(n, &mut rng), &i)?,
                act_on_multiindex(&random_permutation(n, &mut rng), &j)?,
            )
        } else {
            (random_index(n, d, &mut rng), random_index(n, d, &mut rng))
        };
        let q = MomentQuery::new(i.clone(), j.clone(), ip.clone(), jp.clone(), d)?;
        let value = haar_moment(&q)?;
        if !value.is_zero() {
            nonzero += 1;
        }

        let (s, u) = (random_permutation(n, &mut rng), random_permutation(n, &mut rng));
        let moved = MomentQuery::new(
            act_on_multiindex(&s, &i)?,
            act_on_multiindex(&s, &j)?,
            act_on_multiindex(&u, &ip)?,
            act_on_multiindex(&u, &jp)?,
            d,
        )?;
        let v1 = haar_moment(&moved)?;
        t.check(v1 == value, || format!("positions {q:?} σ={s} τ={u}: {v1} != {value}"));

        let (pi, rho) = (random_permutation(d, &mut rng), random_permutation(d, &mut rng));
        let relabelled = MomentQuery::new(
            i.map_values(|v| pi.image(v)),
            j.map_values(|v| rho.image(v)),
            ip.map_values(|v| pi.image(v)),
            jp.map_values(|v| rho.image(v)),
            d,
        )?;
        let v2 = haar_moment(&relabelled)?;
        t.check(v2 == value, || format!("relabel {q:?} π={pi} ρ={rho}: {v2} != {value}"));

        let swapped = MomentQuery::new(jp, ip, j, i, d)?;
        let v5 = haar_moment(&swapped)?;
        t.check(v5 == value, || format!("swap {q:?}: {v5} != {value}"));
    }
    Ok(t.finish(format!(
        "{queries} random queries, n ≤ {max_n}, d ≤ {max_d}, seed {seed}, {nonzero} non-zero"
    )))
}

/// Criterion 10: With `W = I` the invariant-matrix formula returns `Π δ_{i_k j_k}`.
pub fn invariant_hermitian_identity(max_n: usize, max_d: usize) -> Result<CriterionReport> {
    let mut t = Tally::new(10, "invariant matrix with W = I");
    for n in 1..=max_n {
        for d in n..=max_d.max(n) {
            let s = SpectralMoments::identity(n, d)?;
            let all: Vec<MultiIndex> = MultiIndex::all(d, n).collect();
            for i in &all {
                for j in &all {
                    let v = invariant_hermitian_moment(i, j, &s, d)?;
                    let want = if i == j { 1 } else { 0 };
                    t.check(v == int(want), || format!("i={i} j={j} d={d}: {v}"));
                }
            }
        }
    }
    Ok(t.finish(format!("n ≤ {max_n}, n ≤ d ≤ {}", max_d.max(max_n))))
}

/// Restricted growth strings: one index per relabelling orbit.
fn canonical_indices(len: usize, d: usize) -> Vec<MultiIndex> {
    MultiIndex::all(d, len)
        .filter(|m| {
            let mut next = 1;
            m.entries().iter().all(|&v| {
                if v > next {
                    false
                } else {
                    if v == next {
                        next += 1;
                    }
                    true
                }
            })
        })
        .collect()
}

/// The exact moments compared against sampling in criterion 11: every
/// `(i, j, i′, j′)` with `i`, `j` canonical up to relabelling and `i′`, `j′`
/// rearrangements of them, plus one vanishing query per size.
pub fn monte_carlo_queries(max_n: usize, d: usize) -> Result<Vec<MomentQuery>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let canon = canonical_indices(n, d);
        for i in &canon {
            for j in &canon {
                for ip in i.rearrangements() {
                    for jp in j.rearrangements() {
                        out.push(MomentQuery::new(i.clone(), j.clone(), ip.clone(), jp, d)?);
                    }
                }
            }
        }
        if d >= 2 {
            let ones = MultiIndex::constant(1, n);
            let mut other = vec![1; n];
            other[0] = 2;
            let other = MultiIndex::new(other)?;
            out.push(MomentQuery::new(ones.clone(), ones.clone(), other, ones, d)?);
        }
    }
    Ok(out)
}

/// Criterion 11: Sampling agrees with every exact moment within 4 standard errors.
pub fn monte_carlo_oracle(max_n: usize, max_d: usize, samples: usize, seed: u64) -> Result<CriterionReport> {
    let mut t = Tally::new(11, "Monte Carlo oracle");
    let mut worst_defect = 0.0f64;
    let mut worst_ratio = 0.0f64;
    for d in 1..=max_d {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        for _ in 0..100 {
            worst_defect = worst_defect.max(unitarity_defect(&sample_haar_unitary(d, &mut rng)));
        }

        let queries = monte_carlo_queries(max_n, d)?;
        let exact: Vec<f64> = queries
            .iter()
            .map(|q| haar_moment(q).map(|v| v.to_f64().unwrap_or(f64::NAN)))
            .collect::<Result<_>>()?;
        // (k, n) with kn ≤ max_n for |tr U^k|^{2n}
        let mut powers = Vec::new();
        for k in 1..=max_n {
            for n in 1..=max_n / k {
                powers.push((k, n, trace_power_moment(k, n, d)?.to_f64().unwrap_or(f64::NAN)));
            }
        }
        let nq = queries.len();
        let estimates = estimate_observables(d, samples, seed.wrapping_add(d as u64), nq + powers.len(), |u, out| {
            for (o, q) in out.iter_mut().zip(&queries) {
                *o = monomial(u, q);
            }
            let mut power = u.clone();
            let mut k_done = 1;
            for (o, &(k, n, _)) in out[nq..].iter_mut().zip(&powers) {
                while k_done < k {
                    power = &power * u;
                    k_done += 1;
                }
                *o = Complex64::new(power.trace().norm_sqr().powi(n as i32), 0.0);
            }
        })?;
        for ((q, want), est) in queries.iter().zip(&exact).zip(&estimates) {
            let diff = (est.mean - Complex64::new(*want, 0.0)).norm();
            if est.std_error > 1e-9 {
                worst_ratio = worst_ratio.max(diff / est.std_error);
            }
            t.check(est.agrees_with(*want), || {
                format!("{q:?}: exact {want}, estimate {} ± {}", est.mean, est.std_error)
            });
        }
        for (&(k, n, want), est) in powers.iter().zip(&estimates[nq..]) {
            t.check(est.agrees_with(want), || {
                format!("|tr U^{k}|^{} d={d}: exact {want}, estimate {} ± {}", 2 * n, est.mean, est.std_error)
            });
        }
    }
    t.check(worst_defect < 1e-10, || format!("unitarity defect {worst_defect:e}"));
    Ok(t.finish(format!(
        "n ≤ {max_n}, d ≤ {max_d}, {samples} samples, seed {seed}; max |Δ|/SE {worst_ratio:.2}, max ‖U*U−I‖ {worst_defect:.1e}"
    )))
}

/// Bounds for [`run_suite`]. Every criterion further clamps `max_n` and
/// `max_d` to the range where it is defined.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub max_n: usize,
    pub max_d: usize,
    /// Run criterion 11 with this many samples.
    pub mc_samples: Option<usize>,
    pub seed: u64,
}

/// Largest `max_d` accepted by [`run_suite`].
pub const MAX_SUITE_DIMENSION: usize = 10;

pub fn run_suite(config: &SuiteConfig) -> Result<Vec<CriterionReport>> {
    let (n, d) = (config.max_n, config.max_d);
    if n == 0 {
        return Err(Error::InvalidArgument("max-n must be at least 1".into()));
    }
    caps::check_dimension(d)?;
    caps::check_group(n)?;
    if d > MAX_SUITE_DIMENSION {
        return Err(Error::CapExceeded {
            what: "max-d",
            requested: d,
            cap: MAX_SUITE_DIMENSION,
            reason: "the suite enumerates d^n multiindices",
        });
    }
    if matches!(config.mc_samples, Some(s) if s < 2) {
        return Err(Error::InvalidArgument("mc-samples must be at least 2".into()));
    }
    let mut out = vec![
        dual_construction(n.min(6), d.min(6))?,
        gram_cross_check(n.min(caps::GRAM_CAP), d.min(5))?,
        weingarten_sum_identity(n, d)?,
        hewitt_ross_agreement(n.min(5), d.min(4))?,
        trace_moments(n.min(4), d.min(3))?,
        jucys_identities(n.min(6), d.min(6))?,
        rank_nullity(n.min(caps::GRAM_CAP), d.min(5))?,
        trace_power_values(n.min(4), d.min(4))?,
        symmetry_suite(200, n.min(4), d.min(3), config.seed)?,
        invariant_hermitian_identity(n.min(3), d.min(4))?,
    ];
    if let Some(samples) = config.mc_samples {
        out.push(monte_carlo_oracle(n.min(3), d.min(4), samples, config.seed)?);
    }
    Ok(out)
}
