//! Entropies, divergences, and distances between discrete distributions.
//!
//! All logarithms are natural. Zero-probability conventions:
//! 0*log(0/a) = 0, 0*log(0/0) = 0, and a*log(a/0) = +infinity for a > 0.
//!
//! Total variation is the UN-HALVED L1 norm, sum_x |P(x) - Q(x)|. This is the
//! convention under which Pinsker reads (1/2)*TV^2 <= D; the halved variant
//! is reported separately where a classical statement needs it.

use crate::dist::{DiscreteLaw, Pmf};
use crate::numeric::KahanSum;
use crate::sums::JointBinary;
use crate::{Error, Result};

/// When scanning an unbounded law, extend the horizon until its exact
/// remaining tail drops below this cutoff; the leftover is counted as
/// discrepancy.
pub(crate) const LAW_TAIL_CUTOFF: f64 = 1e-13;

/// A nonnegative extended real: finite, or +infinity exactly when some
/// P(x) > 0 falls where Q(x) = 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DivergenceValue(f64);

impl DivergenceValue {
    pub const INFINITE: DivergenceValue = DivergenceValue(f64::INFINITY);

    pub fn finite(value: f64) -> Self {
        DivergenceValue(value)
    }

    /// The divergence in nats; +infinity is a value, not an error.
    pub fn value(&self) -> f64 {
        self.0
    }

    pub fn is_finite(&self) -> bool {
        self.0.is_finite()
    }
}

/// D(P || Q) = sum over the support of P of P(x) * (ln P(x) - ln Q(x)).
pub fn relative_entropy<Q: DiscreteLaw + ?Sized>(p: &Pmf, q: &Q) -> DivergenceValue {
    let mut acc = KahanSum::new();
    for (x, &px) in p.probs().iter().enumerate() {
        if px <= 0.0 {
            continue;
        }
        let lq = q.ln_pmf(x as u64);
        if lq == f64::NEG_INFINITY {
            return DivergenceValue::INFINITE;
        }
        acc.add(px * (px.ln() - lq));
    }
    DivergenceValue::finite(acc.value())
}

/// KL divergence between two categorical atom vectors of equal length.
pub fn relative_entropy_atoms(p: &[f64], q: &[f64]) -> DivergenceValue {
    assert_eq!(p.len(), q.len(), "atom vectors must have equal length");
    let mut acc = KahanSum::new();
    for (&px, &qx) in p.iter().zip(q) {
        if px <= 0.0 {
            continue;
        }
        if qx <= 0.0 {
            return DivergenceValue::INFINITE;
        }
        acc.add(px * (px.ln() - qx.ln()));
    }
    DivergenceValue::finite(acc.value())
}

/// Shannon entropy of a finite-support pmf, in nats.
pub fn entropy(p: &Pmf) -> f64 {
    entropy_atoms(p.probs())
}

/// Entropy of a raw probability vector (categorical atoms), in nats.
pub fn entropy_atoms(atoms: &[f64]) -> f64 {
    let mut acc = KahanSum::new();
    for &p in atoms {
        if p > 0.0 {
            acc.add(-p * p.ln());
        }
    }
    acc.value()
}

/// Joint entropy of an explicit distribution over {0,1}^n.
pub fn joint_entropy(joint: &JointBinary) -> f64 {
    entropy_atoms(joint.atoms())
}

/// h(p) = -p ln p - (1-p) ln(1-p), with h(0) = h(1) = 0.
pub fn binary_entropy(p: f64) -> f64 {
    assert!((0.0..=1.0).contains(&p), "binary_entropy needs p in [0,1]");
    if p <= 0.0 || p >= 1.0 {
        return 0.0;
    }
    -p * p.ln() - (1.0 - p) * (1.0 - p).ln()
}

/// I(left; right) = H(left) + H(right) - H(left, right) over disjoint
/// coordinate sets of a binary joint distribution.
pub fn mutual_information(joint: &JointBinary, left: &[usize], right: &[usize]) -> Result<f64> {
    for &i in left.iter().chain(right) {
        if i >= joint.n() {
            return Err(Error::IndexOutOfRange { index: i, n: joint.n() });
        }
    }
    for &l in left {
        if right.contains(&l) {
            return Err(Error::OverlappingIndexSets);
        }
    }
    let mut union: Vec<usize> = left.to_vec();
    union.extend_from_slice(right);
    let h_left = entropy_atoms(&joint.marginal(left));
    let h_right = entropy_atoms(&joint.marginal(right));
    let h_union = entropy_atoms(&joint.marginal(&union));
    Ok(h_left + h_right - h_union)
}

struct Discrepancy {
    abs_l1: f64,
    affinity: f64,
}

/// Shared horizon walk: scan outcomes until both P's support is exhausted and
/// Q's exact remaining tail is below `LAW_TAIL_CUTOFF` (or Q's finite support
/// ends). The leftover Q tail and P's truncation tail are counted as if the
/// other side were zero there.
fn scan<Q: DiscreteLaw + ?Sized>(p: &Pmf, q: &Q) -> Discrepancy {
    let p_len = p.support_len() as u64;
    let q_hint = q.support_hint();
    let mut q_mass = KahanSum::new();
    let mut l1 = KahanSum::new();
    let mut aff = KahanSum::new();
    let mut k = 0u64;
    loop {
        let qk = q.pmf(k);
        let pk = p.prob(k);
        q_mass.add(qk);
        l1.add((pk - qk).abs());
        aff.add((pk * qk).sqrt());
        k += 1;
        let q_done = match q_hint {
            Some(h) => k >= h,
            None => 1.0 - q_mass.value() <= LAW_TAIL_CUTOFF,
        };
        if k >= p_len && q_done {
            break;
        }
        if k >= 4 * (MAX_HORIZON as u64) {
            break;
        }
    }
    let q_rem = (1.0 - q_mass.value()).max(0.0);
    Discrepancy {
        abs_l1: l1.value() + q_rem + p.truncation_tail(),
        affinity: aff.value(),
    }
}

const MAX_HORIZON: usize = crate::dist::MAX_SUPPORT;

/// Un-halved L1 distance sum_x |P(x) - Q(x)|, tails counted as discrepancy.
pub fn total_variation<Q: DiscreteLaw + ?Sized>(p: &Pmf, q: &Q) -> f64 {
    scan(p, q).abs_l1
}

/// Hellinger affinity mu = sum_x sqrt(P(x) * Q(x)).
pub fn hellinger_affinity<Q: DiscreteLaw + ?Sized>(p: &Pmf, q: &Q) -> f64 {
    scan(p, q).affinity
}

/// Squared Hellinger distance sum_x (sqrt P - sqrt Q)^2 = 2 - 2*mu.
pub fn hellinger_sq<Q: DiscreteLaw + ?Sized>(p: &Pmf, q: &Q) -> f64 {
    2.0 - 2.0 * hellinger_affinity(p, q)
}

/// Pinsker's inequality turned into a TV bound: sqrt(2*D), capped at the L1
/// diameter 2.
pub fn pinsker_tv_from_divergence(d: DivergenceValue) -> f64 {
    assert!(d.value() >= -1e-12, "divergence must be nonnegative");
    if !d.is_finite() {
        return 2.0;
    }
    (2.0 * d.value().max(0.0)).sqrt().min(2.0)
}
