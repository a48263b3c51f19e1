//! Exact distributions of sums: schoolbook convolution, dynamic programming
//! for two-state Markov chains, compound sums, and a brute-force joint
//! oracle over {0,1}^n.
//!
//! Everything here is exact (up to floating round-off); there is no sampling.

use crate::dist::{Pmf, MAX_SUPPORT};
use crate::info::binary_entropy;
use crate::numeric::KahanSum;
use crate::{Error, Result};

/// Largest chain length `markov_sum_distribution` accepts.
pub const MAX_CHAIN_LEN: usize = 100_000;

/// Largest coordinate count for explicit 2^n joint distributions.
pub const MAX_JOINT_COORDS: usize = 20;

/// Exact discrete convolution. Direct O(mn) with a compensated accumulator
/// per output cell; supports here are short enough that FFT (and its
/// negative round-off) is not worth it. Truncation tails add (union bound).
pub fn convolve(p: &Pmf, q: &Pmf) -> Result<Pmf> {
    let (pp, qq) = (p.probs(), q.probs());
    let len = pp.len() + qq.len() - 1;
    if len > MAX_SUPPORT {
        return Err(Error::SupportOverflow { len });
    }
    let mut out = vec![0.0; len];
    for (z, slot) in out.iter_mut().enumerate() {
        let lo = z.saturating_sub(qq.len() - 1);
        let hi = z.min(pp.len() - 1);
        let mut acc = KahanSum::new();
        for x in lo..=hi {
            acc.add(pp[x] * qq[z - x]);
        }
        *slot = acc.value();
    }
    Pmf::from_parts(out, p.truncation_tail() + q.truncation_tail())
}

/// Left fold of `convolve` over at least one part.
pub fn sum_independent(parts: &[Pmf]) -> Result<Pmf> {
    let (first, rest) = parts.split_first().ok_or(Error::EmptyInput)?;
    let mut acc = first.clone();
    for part in rest {
        acc = convolve(&acc, part)?;
    }
    Ok(acc)
}

/// A two-state chain of fixed length: row-stochastic 2x2 transition matrix
/// and the probability of starting in state 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarkovChainSpec {
    n: usize,
    transition: [[f64; 2]; 2],
    initial: f64,
}

impl MarkovChainSpec {
    pub fn new(n: usize, transition: [[f64; 2]; 2], initial: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("chain length must be >= 1".into()));
        }
        for row in &transition {
            for &e in row {
                if !(0.0..=1.0).contains(&e) {
                    return Err(Error::InvalidProbability { value: e });
                }
            }
            if (row[0] + row[1] - 1.0).abs() > 1e-14 {
                return Err(Error::NotNormalized {
                    total: row[0] + row[1],
                });
            }
        }
        if !(0.0..=1.0).contains(&initial) {
            return Err(Error::InvalidProbability { value: initial });
        }
        Ok(Self {
            n,
            transition,
            initial,
        })
    }

    /// The triangular-array row with transition rows
    /// [n/(n+1), 1/(n+1)] and [(n-1)/(n+1), 2/(n+1)], started from its
    /// stationary Bernoulli(1/n) law. Needs n >= 2.
    pub fn stationary_bernoulli(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(
                "stationary Bernoulli(1/n) row needs n >= 2".into(),
            ));
        }
        let nf = n as f64;
        let transition = [
            [nf / (nf + 1.0), 1.0 / (nf + 1.0)],
            [(nf - 1.0) / (nf + 1.0), 2.0 / (nf + 1.0)],
        ];
        let initial = 1.0 / nf;
        // Stationarity: (1 - 1/n)/(n+1) + (1/n)*2/(n+1) = 1/n.
        let next = (1.0 - initial) * transition[0][1] + initial * transition[1][1];
        debug_assert!((next - initial).abs() <= 1e-15);
        Self::new(n, transition, initial)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn transition(&self) -> &[[f64; 2]; 2] {
        &self.transition
    }

    pub fn initial(&self) -> f64 {
        self.initial
    }
}

/// Exact law of X_1 + ... + X_n for a two-state chain, by dynamic programming
/// over (current state, partial sum). No truncation: the tail is exactly 0.
pub fn markov_sum_distribution(spec: &MarkovChainSpec) -> Result<Pmf> {
    let n = spec.n();
    if n > MAX_CHAIN_LEN {
        return Err(Error::ChainTooLong { n });
    }
    let t = spec.transition();
    // dp[m] = [P(sum = m, state 0), P(sum = m, state 1)] after the current step.
    let mut dp = vec![[0.0f64; 2]; n + 1];
    dp[0][0] = 1.0 - spec.initial();
    dp[1][1] = spec.initial();
    for step in 2..=n {
        let mut next = vec![[0.0f64; 2]; n + 1];
        for m in 0..step {
            for s in 0..2 {
                let pr = dp[m][s];
                if pr == 0.0 {
                    continue;
                }
                next[m][0] += pr * t[s][0];
                next[m + 1][1] += pr * t[s][1];
            }
        }
        dp = next;
    }
    let probs: Vec<f64> = dp.iter().map(|cell| cell[0] + cell[1]).collect();
    Pmf::from_parts(probs, 0.0)
}

/// Explicit joint distribution over {0,1}^n, atoms indexed by bitmask with
/// bit i holding coordinate i.
#[derive(Debug, Clone, PartialEq)]
pub struct JointBinary {
    n: usize,
    atoms: Vec<f64>,
}

impl JointBinary {
    pub fn new(n: usize, atoms: Vec<f64>) -> Result<Self> {
        if n == 0 || n > MAX_JOINT_COORDS {
            return Err(Error::TooManyCoordinates { n });
        }
        if atoms.len() != 1usize << n {
            return Err(Error::InvalidParameter(format!(
                "expected {} atoms, got {}",
                1usize << n,
                atoms.len()
            )));
        }
        let mut mass = KahanSum::new();
        for &a in &atoms {
            if !(0.0..=1.0 + 1e-12).contains(&a) {
                return Err(Error::InvalidProbability { value: a });
            }
            mass.add(a);
        }
        if (mass.value() - 1.0).abs() > 1e-12 {
            return Err(Error::NotNormalized { total: mass.value() });
        }
        Ok(Self { n, atoms })
    }

    /// Product law of independent Bernoulli coordinates.
    pub fn product_of_bernoullis(ps: &[f64]) -> Result<Self> {
        let n = ps.len();
        if n == 0 || n > MAX_JOINT_COORDS {
            return Err(Error::TooManyCoordinates { n });
        }
        for &p in ps {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidProbability { value: p });
            }
        }
        let mut atoms = vec![0.0; 1 << n];
        for (mask, slot) in atoms.iter_mut().enumerate() {
            let mut pr = 1.0;
            for (i, &p) in ps.iter().enumerate() {
                pr *= if mask >> i & 1 == 1 { p } else { 1.0 - p };
            }
            *slot = pr;
        }
        Self::new(n, atoms)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn atoms(&self) -> &[f64] {
        &self.atoms
    }

    /// P(X_i = 1).
    pub fn coordinate_mean(&self, i: usize) -> f64 {
        let mut acc = KahanSum::new();
        for (mask, &a) in self.atoms.iter().enumerate() {
            if mask >> i & 1 == 1 {
                acc.add(a);
            }
        }
        acc.value()
    }

    /// Marginal atom vector over the listed coordinates; output index packs
    /// the coordinate bits in list order.
    pub fn marginal(&self, coords: &[usize]) -> Vec<f64> {
        let mut out = vec![0.0; 1 << coords.len()];
        for (mask, &a) in self.atoms.iter().enumerate() {
            let mut idx = 0usize;
            for (pos, &c) in coords.iter().enumerate() {
                idx |= (mask >> c & 1) << pos;
            }
            out[idx] += a;
        }
        out
    }

    /// Law of X_1 + ... + X_n, collecting atom mass by popcount.
    pub fn sum_law(&self) -> Pmf {
        let mut sums = vec![KahanSum::new(); self.n + 1];
        for (mask, &a) in self.atoms.iter().enumerate() {
            sums[mask.count_ones() as usize].add(a);
        }
        let probs: Vec<f64> = sums.iter().map(|s| s.value()).collect();
        Pmf::from_parts(probs, 0.0).expect("popcount law inherits normalization")
    }
}

/// Joint law of the chain: atom(mask) = initial factor times the product of
/// transition entries along the bit path. Capped at 20 coordinates.
pub fn joint_from_markov(spec: &MarkovChainSpec) -> Result<JointBinary> {
    let n = spec.n();
    if n > MAX_JOINT_COORDS {
        return Err(Error::TooManyCoordinates { n });
    }
    let t = spec.transition();
    let mut atoms = vec![0.0; 1 << n];
    for (mask, slot) in atoms.iter_mut().enumerate() {
        let first = mask & 1;
        let mut pr = if first == 1 {
            spec.initial()
        } else {
            1.0 - spec.initial()
        };
        let mut prev = first;
        for step in 1..n {
            let b = mask >> step & 1;
            pr *= t[prev][b];
            prev = b;
        }
        *slot = pr;
    }
    JointBinary::new(n, atoms)
}

/// Exact summary of a joint binary law, all by brute force over 2^n atoms.
#[derive(Debug, Clone)]
pub struct JointSummary {
    pub means: Vec<f64>,
    pub coordinate_entropies: Vec<f64>,
    pub joint_entropy: f64,
    pub sum_law: Pmf,
}

pub fn joint_oracle_summary(joint: &JointBinary) -> JointSummary {
    let means: Vec<f64> = (0..joint.n()).map(|i| joint.coordinate_mean(i)).collect();
    let coordinate_entropies = means.iter().map(|&p| binary_entropy(p)).collect();
    JointSummary {
        coordinate_entropies,
        joint_entropy: crate::info::entropy_atoms(joint.atoms()),
        sum_law: joint.sum_law(),
        means,
    }
}

/// Law of sum_i alpha_i * X_i where X_i ~ Bernoulli(p_i) and alpha_i is 1 or
/// 2 with probability 1/2 each: the per-term law is [1 - p, p/2, p/2].
pub fn compound_sum_distribution(ps: &[f64]) -> Result<Pmf> {
    if ps.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut parts = Vec::with_capacity(ps.len());
    for &p in ps {
        parts.push(compound_term(p)?);
    }
    sum_independent(&parts)
}

/// Per-term law [1-p, p/2, p/2] of alpha * X.
pub fn compound_term(p: f64) -> Result<Pmf> {
    if !(0.0..1.0).contains(&p) {
        return Err(Error::InvalidProbability { value: p });
    }
    if p == 0.0 {
        Ok(Pmf::point_mass())
    } else {
        Pmf::from_parts(vec![1.0 - p, p / 2.0, p / 2.0], 0.0)
    }
}

/// X + Poisson(t) for independent smoothing noise; t = 0 returns the input.
pub fn poisson_smooth(p: &Pmf, t: f64, tail_eps: f64) -> Result<Pmf> {
    if t < 0.0 || !t.is_finite() {
        return Err(Error::InvalidRate { value: t });
    }
    if t == 0.0 {
        return Ok(p.clone());
    }
    convolve(p, &Pmf::poisson_truncated(t, tail_eps)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::DEFAULT_TAIL_EPS;

    fn binomial(n: usize, p: f64) -> Pmf {
        let parts = vec![Pmf::bernoulli(p).unwrap(); n];
        sum_independent(&parts).unwrap()
    }

    #[test]
    fn convolve_examples() {
        let fair = Pmf::bernoulli(0.5).unwrap();
        let pair = convolve(&fair, &fair).unwrap();
        assert_eq!(pair.probs(), &[0.25, 0.5, 0.25]);

        let identity = convolve(&fair, &Pmf::point_mass()).unwrap();
        assert_eq!(identity.probs(), fair.probs());

        let b = binomial(100, 0.01);
        assert!((b.probs()[0] - 0.366_032_341_273_229_5).abs() < 1e-14);
    }

    #[test]
    fn sum_independent_examples() {
        let single = sum_independent(&[Pmf::bernoulli(0.3).unwrap()]).unwrap();
        assert_eq!(single.probs(), &[0.7, 0.3]);

        let b = binomial(3, 1.0 / 3.0);
        assert!((b.probs()[3] - 1.0 / 27.0).abs() < 1e-15);

        // Geom(0.5) + Geom(0.5) = NegBinomial(2, 0.5): P(k) = (k+1)/2^(k+2).
        let g = Pmf::geometric(0.5, DEFAULT_TAIL_EPS).unwrap();
        let nb = convolve(&g, &g).unwrap();
        for k in 0..20usize {
            let expect = (k as f64 + 1.0) / 2f64.powi(k as i32 + 2);
            assert!((nb.probs()[k] - expect).abs() < 1e-14);
        }

        assert!(sum_independent(&[]).is_err());
    }

    #[test]
    fn convolution_mean_variance_add() {
        let a = Pmf::geometric(0.4, DEFAULT_TAIL_EPS).unwrap();
        let b = Pmf::poisson_truncated(1.7, DEFAULT_TAIL_EPS).unwrap();
        let c = convolve(&a, &b).unwrap();
        assert!((c.mean() - a.mean() - b.mean()).abs() < 1e-10);
        assert!((c.variance() - a.variance() - b.variance()).abs() < 1e-10);
    }

    #[test]
    fn markov_spec_examples() {
        let spec = MarkovChainSpec::stationary_bernoulli(2).unwrap();
        let t = spec.transition();
        assert!((t[0][0] - 2.0 / 3.0).abs() < 1e-15);
        assert!((t[0][1] - 1.0 / 3.0).abs() < 1e-15);
        assert!((t[1][0] - 1.0 / 3.0).abs() < 1e-15);
        assert!((t[1][1] - 2.0 / 3.0).abs() < 1e-15);
        assert!((spec.initial() - 0.5).abs() < 1e-15);

        assert!(MarkovChainSpec::stationary_bernoulli(1).is_err());

        for n in [2usize, 10, 1000] {
            let spec = MarkovChainSpec::stationary_bernoulli(n).unwrap();
            let t = spec.transition();
            assert!((t[0][0] + t[0][1] - 1.0).abs() <= 1e-15);
            assert!((t[1][0] + t[1][1] - 1.0).abs() <= 1e-15);
            // Marginal of X_2 stays Bernoulli(1/n).
            let p1 = spec.initial();
            let p2 = (1.0 - p1) * t[0][1] + p1 * t[1][1];
            assert!((p2 - p1).abs() <= 1e-14);
        }
    }

    #[test]
    fn markov_sum_examples() {
        // n = 1, started in state 1 with certainty.
        let spec = MarkovChainSpec::new(1, [[0.5, 0.5], [0.5, 0.5]], 1.0).unwrap();
        let law = markov_sum_distribution(&spec).unwrap();
        assert_eq!(law.probs(), &[0.0, 1.0]);

        // iid rows reduce the DP to a plain binomial.
        let p = 0.3;
        let spec = MarkovChainSpec::new(12, [[1.0 - p, p], [1.0 - p, p]], p).unwrap();
        let law = markov_sum_distribution(&spec).unwrap();
        let b = binomial(12, p);
        for k in 0..law.support_len() {
            assert!((law.probs()[k] - b.probs()[k]).abs() <= 1e-13);
        }

        // Two-step enumeration of the n = 2 stationary chain.
        let spec = MarkovChainSpec::stationary_bernoulli(2).unwrap();
        let law = markov_sum_distribution(&spec).unwrap();
        assert!((law.probs()[0] - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn markov_dp_matches_joint_oracle() {
        for n in [2usize, 3, 7, 12, 16] {
            let spec = MarkovChainSpec::stationary_bernoulli(n).unwrap();
            let dp = markov_sum_distribution(&spec).unwrap();
            let oracle = joint_oracle_summary(&joint_from_markov(&spec).unwrap());
            for k in 0..dp.support_len() {
                assert!(
                    (dp.probs()[k] - oracle.sum_law.probs()[k]).abs() <= 1e-12,
                    "n={n}, k={k}"
                );
            }
        }
        // An asymmetric non-stationary spec as well.
        let spec = MarkovChainSpec::new(9, [[0.9, 0.1], [0.45, 0.55]], 0.25).unwrap();
        let dp = markov_sum_distribution(&spec).unwrap();
        let oracle = joint_oracle_summary(&joint_from_markov(&spec).unwrap());
        for k in 0..dp.support_len() {
            assert!((dp.probs()[k] - oracle.sum_law.probs()[k]).abs() <= 1e-12);
        }
    }

    #[test]
    fn stationary_chain_sum_has_unit_mean() {
        for n in [2usize, 3, 10, 100, 1000, 2000] {
            let spec = MarkovChainSpec::stationary_bernoulli(n).unwrap();
            let law = markov_sum_distribution(&spec).unwrap();
            assert!((law.mean() - 1.0).abs() <= 1e-10, "n={n}");
        }
    }

    #[test]
    fn joint_from_markov_examples() {
        let spec = MarkovChainSpec::stationary_bernoulli(2).unwrap();
        let joint = joint_from_markov(&spec).unwrap();
        assert!((joint.atoms()[0b00] - 1.0 / 3.0).abs() < 1e-15);

        for n in [2usize, 5, 11] {
            let spec = MarkovChainSpec::stationary_bernoulli(n).unwrap();
            let joint = joint_from_markov(&spec).unwrap();
            let total: f64 = crate::numeric::kahan_sum(joint.atoms());
            assert!((total - 1.0).abs() <= 1e-13);
            for i in 0..n {
                assert!(
                    (joint.coordinate_mean(i) - 1.0 / n as f64).abs() <= 1e-13,
                    "n={n}, coord {i}"
                );
            }
        }
    }

    #[test]
    fn compound_sum_examples() {
        assert_eq!(compound_sum_distribution(&[0.0]).unwrap().probs(), &[1.0]);
        let single = compound_sum_distribution(&[0.4]).unwrap();
        assert_eq!(single.probs(), &[0.6, 0.2, 0.2]);
        let two = compound_sum_distribution(&[0.5, 0.5]).unwrap();
        assert!((two.mean() - 1.5).abs() < 1e-14);
        assert!(compound_sum_distribution(&[1.0]).is_err());
    }

    #[test]
    fn compound_sum_matches_mixture_enumeration() {
        // Brute-force over all (alpha, x) outcomes for small n.
        let ps = [0.35, 0.1, 0.6, 0.25];
        let n = ps.len();
        let mut expect = vec![0.0; 2 * n + 1];
        // Each term independently lands on 0, 1, or 2 with probs
        // 1-p, p/2, p/2; enumerate the product space.
        let mut idx = vec![0usize; n];
        loop {
            let mut pr = 1.0;
            let mut total = 0usize;
            for (i, &d) in idx.iter().enumerate() {
                let w = match d {
                    0 => 1.0 - ps[i],
                    _ => ps[i] / 2.0,
                };
                pr *= w;
                total += d;
            }
            expect[total] += pr;
            let mut carry = 0;
            loop {
                idx[carry] += 1;
                if idx[carry] == 3 {
                    idx[carry] = 0;
                    carry += 1;
                    if carry == n {
                        break;
                    }
                } else {
                    break;
                }
            }
            if carry == n {
                break;
            }
        }
        let got = compound_sum_distribution(&ps).unwrap();
        for k in 0..expect.len() {
            assert!((got.probs()[k] - expect[k]).abs() <= 1e-12, "k={k}");
        }
    }

    #[test]
    fn joint_oracle_examples() {
        let indep = JointBinary::product_of_bernoullis(&[0.2, 0.2, 0.2]).unwrap();
        let s = joint_oracle_summary(&indep);
        let gap: f64 = s.coordinate_entropies.iter().sum::<f64>() - s.joint_entropy;
        assert!(gap.abs() <= 1e-12);

        let mut atoms = vec![0.0; 4];
        atoms[0b00] = 0.7;
        atoms[0b11] = 0.3;
        let copied = JointBinary::new(2, atoms).unwrap();
        let s = joint_oracle_summary(&copied);
        let gap: f64 = s.coordinate_entropies.iter().sum::<f64>() - s.joint_entropy;
        assert!((gap - binary_entropy(0.3)).abs() < 1e-13);

        let fair4 = JointBinary::product_of_bernoullis(&[0.5; 4]).unwrap();
        let s = joint_oracle_summary(&fair4);
        let expect = [1.0, 4.0, 6.0, 4.0, 1.0].map(|c| c / 16.0);
        for k in 0..5 {
            assert!((s.sum_law.probs()[k] - expect[k]).abs() < 1e-15);
        }
    }

    #[test]
    fn poisson_smooth_examples() {
        let p = Pmf::bernoulli(0.5).unwrap();
        let same = poisson_smooth(&p, 0.0, DEFAULT_TAIL_EPS).unwrap();
        assert_eq!(same.probs(), p.probs());

        let from_point = poisson_smooth(&Pmf::point_mass(), 1.0, DEFAULT_TAIL_EPS).unwrap();
        let direct = Pmf::poisson_truncated(1.0, DEFAULT_TAIL_EPS).unwrap();
        for k in 0..direct.support_len() {
            assert!((from_point.probs()[k] - direct.probs()[k]).abs() < 1e-16);
        }

        let smoothed = poisson_smooth(&p, 1.0, DEFAULT_TAIL_EPS).unwrap();
        assert!((smoothed.mean() - 1.5).abs() < 1e-9);

        assert!(poisson_smooth(&p, -1.0, DEFAULT_TAIL_EPS).is_err());
    }
}
