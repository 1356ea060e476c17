//! Exact Haar-measure integration on the unitary group `U(d)`.
//!
//! Moments of the form `∫ u_{i1 j1} … u_{in jn} ū_{i'1 j'1} … ū_{i'n j'n} dU` are
//! computed exactly through the Weingarten function of the symmetric group
//! `S_n`. The crate is organised bottom-up:
//!
//! - [`partitions`]: partitions, hooks, contents and dimension formulas;
//! - [`symgroup`]: permutations, cycle types and multiindex actions;
//! - [`classfun`]: characters (Murnaghan–Nakayama) and the Fourier calculus on
//!   the centre of the group algebra;
//! - [`weingarten`]: the Weingarten class function;
//! - [`moments`]: Haar moments, closed forms and trace moments;
//! - [`jucys`]: sparse group-algebra elements and Jucys–Murphy identities;
//! - [`gram`]: the Gram matrix and its Moore–Penrose inverse;
//! - [`montecarlo`]: Haar sampling and empirical moment estimates;
//! - [`verify`]: the cross-identity suite used by the CLI and the tests.
//!
//! Everything outside [`montecarlo`] (and the eigenvalue check in [`jucys`])
//! uses exact rational arithmetic.

pub mod caps;
pub mod classfun;
mod error;
pub mod gram;
pub mod jucys;
pub mod moments;
pub mod montecarlo;
pub mod partitions;
pub mod symgroup;
pub mod verify;
pub mod weingarten;

mod util;

pub use error::{Error, Result};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

pub use classfun::{ClassFunction, FourierCoefficients};
pub use moments::{MomentQuery, SpectralMoments};
pub use partitions::{Cell, Partition};
pub use symgroup::{MultiIndex, Permutation};
