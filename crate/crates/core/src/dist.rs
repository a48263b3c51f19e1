//! Finite-support distributions on the nonnegative integers, plus
//! pointwise-evaluable Poisson and compound-Poisson laws.
//!
//! The central design rule: Poisson-family probabilities that enter a
//! divergence are always evaluated pointwise in log space (via log-factorial),
//! never read from a truncated array. Truncated arrays exist only where a
//! finite object is required (convolution, smoothing), and they carry their
//! cut mass explicitly in `truncation_tail`.

use crate::numeric::{ln_factorial, KahanSum};
use crate::{Error, Result};

/// Default acknowledged tail mass for truncated constructions.
pub const DEFAULT_TAIL_EPS: f64 = 1e-12;

/// Largest support length any construction is allowed to materialize.
pub const MAX_SUPPORT: usize = 1_000_000;

/// Tolerance on `sum(probs) + truncation_tail == 1`.
pub(crate) const MASS_TOL: f64 = 1e-12;

/// A law on {0, 1, 2, ...} that can be evaluated pointwise at any outcome.
///
/// `ln_pmf` returns `f64::NEG_INFINITY` for zero-probability outcomes.
pub trait DiscreteLaw {
    fn ln_pmf(&self, k: u64) -> f64;

    fn pmf(&self, k: u64) -> f64 {
        self.ln_pmf(k).exp()
    }

    /// Exact support length for finitely-supported laws; `None` means the
    /// support is unbounded and callers must horizon-scan the tail.
    fn support_hint(&self) -> Option<u64> {
        None
    }
}

/// Poisson(lambda), evaluated in log space so that probabilities are strictly
/// positive at every outcome and never read from a truncated array.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoissonLaw {
    lambda: f64,
}

impl PoissonLaw {
    pub fn new(lambda: f64) -> Result<Self> {
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(Error::InvalidRate { value: lambda });
        }
        Ok(Self { lambda })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Smallest horizon h with P(X >= h) <= cutoff, found by scanning the
    /// compensated complement of the running sum.
    pub fn tail_horizon(&self, cutoff: f64) -> u64 {
        let mut acc = KahanSum::new();
        let mut k = 0u64;
        loop {
            acc.add(self.pmf(k));
            k += 1;
            if k as f64 >= self.lambda && 1.0 - acc.value() <= cutoff {
                return k;
            }
            if k as u64 >= MAX_SUPPORT as u64 {
                return k;
            }
        }
    }
}

impl DiscreteLaw for PoissonLaw {
    fn ln_pmf(&self, k: u64) -> f64 {
        -self.lambda + (k as f64) * self.lambda.ln() - ln_factorial(k)
    }
}

/// Law of Z1 + 2*Z2 for independent Z1 ~ Poisson(lambda1), Z2 ~ Poisson(lambda2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompoundPoissonLaw {
    lambda1: f64,
    lambda2: f64,
}

impl CompoundPoissonLaw {
    pub fn new(lambda1: f64, lambda2: f64) -> Result<Self> {
        if !(lambda1 >= 0.0) || !lambda1.is_finite() {
            return Err(Error::InvalidRate { value: lambda1 });
        }
        if !(lambda2 >= 0.0) || !lambda2.is_finite() {
            return Err(Error::InvalidRate { value: lambda2 });
        }
        if lambda1 == 0.0 && lambda2 == 0.0 {
            return Err(Error::InvalidRate { value: 0.0 });
        }
        Ok(Self { lambda1, lambda2 })
    }

    pub fn lambda1(&self) -> f64 {
        self.lambda1
    }

    pub fn lambda2(&self) -> f64 {
        self.lambda2
    }

    pub fn mean(&self) -> f64 {
        self.lambda1 + 2.0 * self.lambda2
    }

    /// Probabilities for outcomes 0..len via the Panjer-style recursion
    /// k*P(k) = lambda1*P(k-1) + 2*lambda2*P(k-2), seeded at
    /// P(0) = exp(-(lambda1 + lambda2)). All terms are nonnegative, so the
    /// recursion is stable.
    pub fn pmf_prefix(&self, len: usize) -> Vec<f64> {
        let mut out = vec![0.0; len];
        if len == 0 {
            return out;
        }
        out[0] = (-(self.lambda1 + self.lambda2)).exp();
        for k in 1..len {
            let mut v = self.lambda1 * out[k - 1];
            if k >= 2 {
                v += 2.0 * self.lambda2 * out[k - 2];
            }
            out[k] = v / k as f64;
        }
        out
    }
}

impl DiscreteLaw for CompoundPoissonLaw {
    fn ln_pmf(&self, k: u64) -> f64 {
        self.pmf(k).ln()
    }

    fn pmf(&self, k: u64) -> f64 {
        *self
            .pmf_prefix(k as usize + 1)
            .last()
            .expect("nonempty prefix")
    }
}

/// Finite-support probability mass function on {0, 1, 2, ...}.
///
/// `truncation_tail` is the mass acknowledged as cut off beyond the last
/// index; it is exactly 0 for objects built from finitely many finite-support
/// summands. Mean and variance are computed once, at construction, with
/// compensated summation; values are immutable afterwards.
#[derive(Debug, Clone, PartialEq)]
pub struct Pmf {
    probs: Vec<f64>,
    tail: f64,
    mean: f64,
    variance: f64,
}

impl Pmf {
    /// Validates and wraps raw data: entries in [0, 1], nonnegative tail,
    /// total mass within 1e-12 of 1. Negative round-off entries above -1e-13
    /// are clamped to zero and folded into the tail.
    pub fn from_parts(mut probs: Vec<f64>, mut tail: f64) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::EmptyInput);
        }
        if probs.len() > MAX_SUPPORT {
            return Err(Error::SupportOverflow { len: probs.len() });
        }
        for (index, p) in probs.iter_mut().enumerate() {
            if *p < 0.0 {
                if *p > -1e-13 {
                    tail += *p;
                    *p = 0.0;
                } else {
                    return Err(Error::NegativeEntry { index, value: *p });
                }
            } else if *p > 1.0 + MASS_TOL {
                return Err(Error::InvalidProbability { value: *p });
            }
        }
        if tail < 0.0 {
            if tail > -1e-13 {
                tail = 0.0;
            } else {
                return Err(Error::InvalidProbability { value: tail });
            }
        }
        let mut mass = KahanSum::new();
        for &p in &probs {
            mass.add(p);
        }
        let total = mass.value() + tail;
        if (total - 1.0).abs() > MASS_TOL {
            return Err(Error::NotNormalized { total });
        }

        let mut m = KahanSum::new();
        for (k, &p) in probs.iter().enumerate() {
            m.add(k as f64 * p);
        }
        let mean = m.value();
        let mut v = KahanSum::new();
        for (k, &p) in probs.iter().enumerate() {
            let d = k as f64 - mean;
            v.add(p * d * d);
        }
        Ok(Self {
            probs,
            tail,
            mean,
            variance: v.value(),
        })
    }

    /// Unit mass at 0.
    pub fn point_mass() -> Self {
        Self::from_parts(vec![1.0], 0.0).expect("point mass is valid")
    }

    /// Bernoulli(p): support {0, 1}, no truncation. p = 0 degenerates to a
    /// point mass at 0; p = 1 keeps the two-entry layout and convolves as a
    /// unit shift.
    pub fn bernoulli(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidProbability { value: p });
        }
        if p == 0.0 {
            Ok(Self::point_mass())
        } else {
            Self::from_parts(vec![1.0 - p, p], 0.0)
        }
    }

    /// Poisson(lambda) materialized on [0, N], where N is the smallest index
    /// whose exact remaining upper tail (compensated complement of the
    /// running sum) is at most `tail_eps`. The cut mass is stored in
    /// `truncation_tail`.
    pub fn poisson_truncated(lambda: f64, tail_eps: f64) -> Result<Self> {
        let law = PoissonLaw::new(lambda)?;
        validate_tail_eps(tail_eps)?;
        let mut probs = Vec::new();
        let mut mass = KahanSum::new();
        let mut k = 0u64;
        loop {
            let p = law.pmf(k);
            probs.push(p);
            mass.add(p);
            if k as f64 >= lambda.ceil() && 1.0 - mass.value() <= tail_eps {
                break;
            }
            k += 1;
            if k as usize >= MAX_SUPPORT {
                return Err(Error::SupportOverflow { len: k as usize });
            }
        }
        let tail = (1.0 - mass.value()).max(0.0);
        Self::from_parts(probs, tail)
    }

    /// Geometric on {0, 1, 2, ...}: P(x) = (1-q)^x * q, truncated where the
    /// exact remaining tail (1-q)^(N+1) drops to `tail_eps`. q = 0 is
    /// rejected (infinite mean).
    pub fn geometric(q: f64, tail_eps: f64) -> Result<Self> {
        if !(q > 0.0 && q <= 1.0) {
            return Err(Error::InvalidProbability { value: q });
        }
        if q == 1.0 {
            return Ok(Self::point_mass());
        }
        validate_tail_eps(tail_eps)?;
        let mut probs = Vec::new();
        let mut power = 1.0; // (1-q)^x
        loop {
            probs.push(power * q);
            power *= 1.0 - q;
            if power <= tail_eps {
                break;
            }
            if probs.len() >= MAX_SUPPORT {
                return Err(Error::SupportOverflow { len: probs.len() });
            }
        }
        Self::from_parts(probs, power)
    }

    /// Compound Poisson Po(lambda1, lambda2) materialized by convolving a
    /// truncated Poisson(lambda1) with the push-forward of a truncated
    /// Poisson(lambda2) under k -> 2k, each truncated to `tail_eps / 2`.
    pub fn compound_poisson(law: &CompoundPoissonLaw, tail_eps: f64) -> Result<Self> {
        validate_tail_eps(tail_eps)?;
        let single = |rate: f64| -> Result<Pmf> {
            if rate > 0.0 {
                Pmf::poisson_truncated(rate, tail_eps / 2.0)
            } else {
                Ok(Pmf::point_mass())
            }
        };
        let ones = single(law.lambda1())?;
        let twos = single(law.lambda2())?;
        let mut spread = vec![0.0; 2 * twos.support_len() - 1];
        for (k, &p) in twos.probs().iter().enumerate() {
            spread[2 * k] = p;
        }
        let twos_spread = Pmf::from_parts(spread, twos.truncation_tail())?;
        crate::sums::convolve(&ones, &twos_spread)
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// P(k), reading 0 beyond the stored support.
    #[inline]
    pub fn prob(&self, k: u64) -> f64 {
        self.probs.get(k as usize).copied().unwrap_or(0.0)
    }

    pub fn support_len(&self) -> usize {
        self.probs.len()
    }

    pub fn truncation_tail(&self) -> f64 {
        self.tail
    }

    /// Sum of k*P(k) over the stored support. Truncation contributes nothing;
    /// the bias is at most tail_eps times the largest cut index.
    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn variance(&self) -> f64 {
        self.variance
    }

    /// JSON rendering used by the CLI: {"probs": [...], "tail": t}.
    pub fn to_json(&self) -> String {
        let mut out = String::from("{\"probs\":[");
        for (i, &p) in self.probs.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(&crate::report::fmt_float(p));
        }
        out.push_str("],\"tail\":");
        out.push_str(&crate::report::fmt_float(self.tail));
        out.push('}');
        out
    }
}

impl DiscreteLaw for Pmf {
    fn ln_pmf(&self, k: u64) -> f64 {
        self.prob(k).ln()
    }

    fn pmf(&self, k: u64) -> f64 {
        self.prob(k)
    }

    fn support_hint(&self) -> Option<u64> {
        Some(self.probs.len() as u64)
    }
}

fn validate_tail_eps(tail_eps: f64) -> Result<()> {
    if !(tail_eps > 0.0 && tail_eps <= 1e-6) {
        return Err(Error::InvalidTailEps { value: tail_eps });
    }
    Ok(())
}
