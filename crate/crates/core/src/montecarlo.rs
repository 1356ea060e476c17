//! Haar-random unitaries and empirical moment estimates.
//!
//! Sampling: a `d × d` Ginibre matrix `Z` with i.i.d. entries
//! `N(0, ½) + i N(0, ½)` is factored `Z = QR`, and column `k` of `Q` is
//! multiplied by `R_kk / |R_kk|`. The result `QΛ` is the unique QR factor
//! with positive `R` diagonal, which is Haar distributed.
//!
//! Random streams: samples are drawn in chunks of [`CHUNK_SIZE`]. Chunk `c`
//! uses `ChaCha8Rng::seed_from_u64(seed)` with stream number `c`, and chunk
//! statistics are merged in chunk order. Estimates therefore do not depend
//! on the number of worker threads.
//!
//! Everything here is `f64`; nothing in this module feeds exact results.

use nalgebra::{Complex, DMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::moments::MomentQuery;
use crate::{caps, Error, Result};

pub type Complex64 = Complex<f64>;
pub type ComplexMatrix = DMatrix<Complex64>;

/// Samples per independent random stream.
pub const CHUNK_SIZE: usize = 4096;

/// Number of standard errors allowed by [`Estimate::agrees_with`].
pub const SE_MULTIPLIER: f64 = 4.0;

/// Absolute slack added to the standard-error bound, for degenerate cases
/// such as `d = 1` where the observable is constant and the standard error is 0.
pub const ABSOLUTE_SLACK: f64 = 1e-12;

/// A Haar-distributed element of `U(d)`.
pub fn sample_haar_unitary<R: Rng + ?Sized>(d: usize, rng: &mut R) -> ComplexMatrix {
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let z = ComplexMatrix::from_fn(d, d, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re * scale, im * scale)
    });
    let qr = z.qr();
    let r = qr.r();
    let mut q = qr.q();
    for k in 0..d {
        let rkk = r[(k, k)];
        let norm = rkk.norm();
        if norm > 0.0 {
            let phase = rkk / norm;
            for row in 0..d {
                q[(row, k)] *= phase;
            }
        }
    }
    q
}

/// `max |(U*U − I)_{ab}|`.
pub fn unitarity_defect(u: &ComplexMatrix) -> f64 {
    let d = u.nrows();
    let prod = u.adjoint() * u;
    let mut worst = 0.0f64;
    for a in 0..d {
        for b in 0..d {
            let target = if a == b { 1.0 } else { 0.0 };
            worst = worst.max((prod[(a, b)] - Complex64::new(target, 0.0)).norm());
        }
    }
    worst
}

/// Sample mean of a complex observable with its standard error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub mean: Complex64,
    /// Sample standard deviation (of `|x − mean|`) over `sqrt(samples)`.
    pub std_error: f64,
    pub samples: usize,
}

impl Estimate {
    /// `|mean − exact| ≤ 4·std_error + 1e−12`.
    pub fn agrees_with(&self, exact: f64) -> bool {
        (self.mean - Complex64::new(exact, 0.0)).norm() <= SE_MULTIPLIER * self.std_error + ABSOLUTE_SLACK
    }
}

/// Running count, mean and sum of squared deviations.
#[derive(Clone, Copy, Debug)]
struct Moments {
    count: f64,
    mean: Complex64,
    m2: f64,
}

impl Moments {
    fn new() -> Self {
        Moments {
            count: 0.0,
            mean: Complex64::new(0.0, 0.0),
            m2: 0.0,
        }
    }

    fn push(&mut self, x: Complex64) {
        self.count += 1.0;
        let delta = x - self.mean;
        self.mean += delta / self.count;
        self.m2 += (delta.conj() * (x - self.mean)).re;
    }

    /// Chan et al. pairwise combination.
    fn merge(self, other: Moments) -> Moments {
        if other.count == 0.0 {
            return self;
        }
        if self.count == 0.0 {
            return other;
        }
        let count = self.count + other.count;
        let delta = other.mean - self.mean;
        Moments {
            count,
            mean: self.mean + delta * (other.count / count),
            m2: self.m2 + other.m2 + delta.norm_sqr() * self.count * other.count / count,
        }
    }

    fn estimate(&self) -> Estimate {
        let n = self.count;
        let var = if n > 1.0 { self.m2 / (n - 1.0) } else { 0.0 };
        Estimate {
            mean: self.mean,
            std_error: (var.max(0.0) / n).sqrt(),
            samples: n as usize,
        }
    }
}

/// Estimates `k` observables from one shared stream of `samples` Haar unitaries.
pub fn estimate_observables<F>(d: usize, samples: usize, seed: u64, k: usize, observe: F) -> Result<Vec<Estimate>>
where
    F: Fn(&ComplexMatrix, &mut [Complex64]) + Sync,
{
    caps::check_dimension(d)?;
    if samples < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 samples, got {samples}")));
    }
    let chunks = samples.div_ceil(CHUNK_SIZE);
    let partial: Vec<Vec<Moments>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c as u64);
            let size = CHUNK_SIZE.min(samples - c * CHUNK_SIZE);
            let mut acc = vec![Moments::new(); k];
            let mut values = vec![Complex64::new(0.0, 0.0); k];
            for _ in 0..size {
                let u = sample_haar_unitary(d, &mut rng);
                observe(&u, &mut values);
                for (a, &v) in acc.iter_mut().zip(&values) {
                    a.push(v);
                }
            }
            acc
        })
        .collect();
    let mut total = vec![Moments::new(); k];
    for chunk in partial {
        for (t, m) in total.iter_mut().zip(chunk) {
            *t = t.merge(m);
        }
    }
    Ok(total.iter().map(Moments::estimate).collect())
}

/// `u_{i1j1}⋯u_{injn} ū_{i′1j′1}⋯ū_{i′n′j′n′}` evaluated at `u`.
pub fn monomial(u: &ComplexMatrix, q: &MomentQuery) -> Complex64 {
    let mut v = Complex64::new(1.0, 0.0);
    for (&a, &b) in q.i.entries().iter().zip(q.j.entries()) {
        v *= u[(a - 1, b - 1)];
    }
    for (&a, &b) in q.i_prime.entries().iter().zip(q.j_prime.entries()) {
        v *= u[(a - 1, b - 1)].conj();
    }
    v
}

/// Empirical mean of the monomial described by `q`.
pub fn estimate_moment(q: &MomentQuery, samples: usize, seed: u64) -> Result<Estimate> {
    Ok(estimate_moments(std::slice::from_ref(q), samples, seed)?.remove(0))
}

/// Estimates every query from the same samples. All queries must share `d`.
pub fn estimate_moments(queries: &[MomentQuery], samples: usize, seed: u64) -> Result<Vec<Estimate>> {
    let Some(first) = queries.first() else {
        return Ok(Vec::new());
    };
    let d = first.d;
    for q in queries {
        if q.d != d {
            return Err(Error::InvalidArgument(format!(
                "queries mix dimensions {d} and {}",
                q.d
            )));
        }
        MomentQuery::new(q.i.clone(), q.j.clone(), q.i_prime.clone(), q.j_prime.clone(), q.d)?;
    }
    estimate_observables(d, samples, seed, queries.len(), |u, out| {
        for (o, q) in out.iter_mut().zip(queries) {
            *o = monomial(u, q);
        }
    })
}

/// Empirical `E|tr(U^k)|^{2n}`.
pub fn estimate_trace_power_moment(k: usize, n: usize, d: usize, samples: usize, seed: u64) -> Result<Estimate> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let est = estimate_observables(d, samples, seed, 1, |u, out| {
        let mut p = u.clone();
        for _ in 1..k {
            p = &p * u;
        }
        out[0] = Complex64::new(p.trace().norm_sqr().powi(n as i32), 0.0);
    })?;
    Ok(est[0])
}
