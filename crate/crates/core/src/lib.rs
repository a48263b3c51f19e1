//! Information-theoretic Poisson approximation, computed exactly.
//!
//! This crate works with finite-support distributions on {0, 1, 2, ...} and
//! verifies, numerically and at explicit tolerances, a family of bounds on
//! how far the law of a sum of small integer random variables can sit from a
//! Poisson (or compound Poisson) target:
//!
//! - relative-entropy bounds for dependent and independent Bernoulli sums,
//! - the scaled-Fisher-information route (subadditivity, the log-Sobolev
//!   consequence D <= K, the Cramer-Rao-type floor),
//! - total-variation bounds (Le Cam under both TV conventions, Pinsker,
//!   sqrt(2K)),
//! - a Poincare inequality for the Poisson measure,
//! - and the smoothing integral identity expressing D(P || Po) as an
//!   integral of divergences along Poisson smoothing.
//!
//! Everything is exact arithmetic over explicit mass functions: convolution
//! is schoolbook with compensated accumulation, Markov-chain sums come from
//! dynamic programming, dependent-variable checks brute-force the 2^n joint,
//! and Poisson-family probabilities are evaluated pointwise in log space so
//! divergences never see a spurious zero.
//!
//! Conventions: natural logarithms everywhere; total variation is the
//! un-halved L1 distance (the halved variant is reported where a classical
//! statement needs it).
//!
//! ```
//! use poisson_approx::{bounds, dist::Pmf};
//!
//! // D(Bern(0.1) || Po(0.1)) <= K(Bern(0.1)) = p^2/(1-p)
//! let report = bounds::log_sobolev_bound(&Pmf::bernoulli(0.1).unwrap()).unwrap();
//! assert!(report.holds);
//! ```

pub mod bounds;
pub mod campaign;
pub mod dist;
pub mod fisher;
pub mod info;
pub mod numeric;
pub mod quad;
pub mod random;
pub mod report;
pub mod sums;

use thiserror::Error as ThisError;

#[derive(Debug, ThisError)]
pub enum Error {
    #[error("probability out of range: {value}")]
    InvalidProbability { value: f64 },

    #[error("rate out of range: {value}")]
    InvalidRate { value: f64 },

    #[error("tail_eps must lie in (0, 1e-6], got {value}")]
    InvalidTailEps { value: f64 },

    #[error("mass does not sum to 1: total = {total}")]
    NotNormalized { total: f64 },

    #[error("negative entry beyond round-off at index {index}: {value}")]
    NegativeEntry { index: usize, value: f64 },

    #[error("support of length {len} exceeds the materialization cap")]
    SupportOverflow { len: usize },

    #[error("operation needs a distribution with positive mean")]
    ZeroMean,

    #[error("{n} coordinates exceed the 2^n enumeration cap of 20")]
    TooManyCoordinates { n: usize },

    #[error("chain length {n} exceeds the dynamic-programming cap")]
    ChainTooLong { n: usize },

    #[error("coordinate index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("left and right index sets overlap")]
    OverlappingIndexSets,

    #[error("empty input")]
    EmptyInput,

    #[error("quadrature did not converge within the depth limit")]
    QuadratureDidNotConverge,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
