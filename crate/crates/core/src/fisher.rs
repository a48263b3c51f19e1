//! Scaled score function, scaled Fisher information K(X), its subadditive
//! combination over independent summands, and the Cramer-Rao-type floor.
//!
//! The scaled score of a mean-lambda variable is
//! rho(x) = (x+1) P(x+1) / (lambda P(x)) - 1; it vanishes identically exactly
//! for the Poisson(lambda) law, and K(X) = lambda * E[rho(X)^2] measures the
//! distance from that fixed point.

use crate::dist::Pmf;
use crate::numeric::KahanSum;
use crate::sums::convolve;
use crate::{Error, Result};

/// The scaled score evaluated across a pmf's support. Positions with
/// P(x) = 0 carry no probability mass and are marked `None` rather than
/// +/-infinity, so they cannot poison downstream expectations.
#[derive(Debug, Clone)]
pub struct ScoreProfile {
    lambda: f64,
    scores: Vec<Option<f64>>,
}

impl ScoreProfile {
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn scores(&self) -> &[Option<f64>] {
        &self.scores
    }

    pub fn score(&self, x: usize) -> Option<f64> {
        self.scores.get(x).copied().flatten()
    }
}

/// rho(x) over the support; P(x+1) reads 0 past the end, so the last mass
/// point always scores -1. Rejects zero-mean (degenerate at 0) input.
pub fn scaled_score(p: &Pmf) -> Result<ScoreProfile> {
    let lambda = p.mean();
    if lambda <= 0.0 {
        return Err(Error::ZeroMean);
    }
    let scores = p
        .probs()
        .iter()
        .enumerate()
        .map(|(x, &px)| {
            if px > 0.0 {
                Some((x as f64 + 1.0) * p.prob(x as u64 + 1) / (lambda * px) - 1.0)
            } else {
                None
            }
        })
        .collect();
    Ok(ScoreProfile { lambda, scores })
}

/// K(X) = lambda * sum_x P(x) rho(x)^2. Undefined score positions carry zero
/// mass and contribute nothing.
pub fn scaled_fisher_info(p: &Pmf) -> Result<f64> {
    let profile = scaled_score(p)?;
    let mut acc = KahanSum::new();
    for (x, &px) in p.probs().iter().enumerate() {
        if let Some(rho) = profile.scores[x] {
            acc.add(px * rho * rho);
        }
    }
    Ok(profile.lambda * acc.value())
}

/// E_P[rho] over the support; zero (up to truncation mass) for every valid
/// score profile.
pub fn score_mean(p: &Pmf, profile: &ScoreProfile) -> f64 {
    let mut acc = KahanSum::new();
    for (x, &px) in p.probs().iter().enumerate() {
        if let Some(rho) = profile.scores()[x] {
            acc.add(px * rho);
        }
    }
    acc.value()
}

/// (sigma^2 - lambda)^2 / (sigma^2 * lambda): the variance-mismatch floor
/// under every K(X).
pub fn cramer_rao_lower(lambda: f64, sigma_sq: f64) -> f64 {
    assert!(lambda > 0.0, "cramer_rao_lower needs lambda > 0");
    assert!(sigma_sq > 0.0, "cramer_rao_lower needs sigma_sq > 0");
    let d = sigma_sq - lambda;
    d * d / (sigma_sq * lambda)
}

/// Mean-weighted average sum_i (p_i / lambda) K_i with lambda = sum_i p_i:
/// the subadditivity ceiling for K of an independent sum.
pub fn subadditive_combination(parts: &[(f64, f64)]) -> f64 {
    assert!(!parts.is_empty(), "combination needs at least one part");
    let mut lam = KahanSum::new();
    for &(p, _) in parts {
        assert!(p > 0.0, "part means must be positive");
        lam.add(p);
    }
    let lambda = lam.value();
    let mut acc = KahanSum::new();
    for &(p, k) in parts {
        acc.add(p / lambda * k);
    }
    acc.value()
}

/// Worst-case deviation, over the support of P*Q, between the score of the
/// sum and the conditional expectation of the mean-weighted component scores
/// given the sum. The underlying statement is an identity, so anything above
/// round-off indicates a bug; conditional expectations are enumerated
/// exactly, never sampled.
pub fn score_convolution_residual(p: &Pmf, q: &Pmf) -> Result<f64> {
    let (mp, mq) = (p.mean(), q.mean());
    if mp <= 0.0 || mq <= 0.0 {
        return Err(Error::ZeroMean);
    }
    let sum = convolve(p, q)?;
    let rho_sum = scaled_score(&sum)?;
    let rho_p = scaled_score(p)?;
    let rho_q = scaled_score(q)?;
    let alpha_p = mp / (mp + mq);
    let alpha_q = mq / (mp + mq);

    let mut worst = 0.0f64;
    for (z, &fz) in sum.probs().iter().enumerate() {
        if fz <= 0.0 {
            continue;
        }
        let mut cond = KahanSum::new();
        let lo = z.saturating_sub(q.support_len() - 1);
        let hi = z.min(p.support_len() - 1);
        for x in lo..=hi {
            let w = p.probs()[x] * q.probs()[z - x];
            if w <= 0.0 {
                continue;
            }
            // w > 0 forces both component scores to exist.
            let rp = rho_p.scores()[x].expect("P(x) > 0");
            let rq = rho_q.scores()[z - x].expect("Q(z-x) > 0");
            cond.add(w * (alpha_p * rp + alpha_q * rq));
        }
        let projected = cond.value() / fz;
        let direct = rho_sum.scores()[z].expect("F(z) > 0");
        worst = worst.max((direct - projected).abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::DEFAULT_TAIL_EPS;
    use crate::sums::sum_independent;

    #[test]
    fn bernoulli_scores_closed_form() {
        for &p in &[0.1, 0.3, 0.5, 0.9] {
            let profile = scaled_score(&Pmf::bernoulli(p).unwrap()).unwrap();
            let s = profile.scores();
            assert!((s[0].unwrap() - p / (1.0 - p)).abs() < 1e-13);
            assert!((s[1].unwrap() - (-1.0)).abs() < 1e-15);
        }
    }

    #[test]
    fn poisson_scores_vanish() {
        for &lambda in &[0.5, 1.0, 4.0] {
            let pmf = Pmf::poisson_truncated(lambda, DEFAULT_TAIL_EPS).unwrap();
            let profile = scaled_score(&pmf).unwrap();
            let hi = (lambda + 5.0 * lambda.sqrt()).ceil() as usize;
            for x in 0..hi.min(pmf.support_len() - 1) {
                assert!(
                    profile.score(x).unwrap().abs() <= 1e-9,
                    "lambda={lambda}, x={x}"
                );
            }
        }
    }

    #[test]
    fn zero_mean_rejected() {
        assert!(scaled_score(&Pmf::point_mass()).is_err());
        assert!(scaled_fisher_info(&Pmf::point_mass()).is_err());
    }

    #[test]
    fn fisher_info_examples() {
        let trunc = Pmf::poisson_truncated(2.0, DEFAULT_TAIL_EPS).unwrap();
        assert!(scaled_fisher_info(&trunc).unwrap() <= 1e-8);

        let bern = Pmf::bernoulli(0.1).unwrap();
        assert!((scaled_fisher_info(&bern).unwrap() - 0.01 / 0.9).abs() < 1e-14);

        // Tight truncation keeps the geometric K on its closed form.
        let geo = Pmf::geometric(0.5, 1e-14).unwrap();
        assert!((scaled_fisher_info(&geo).unwrap() - 0.5).abs() < 1e-9);
    }

    #[test]
    fn score_mean_is_zero() {
        for pmf in [
            Pmf::bernoulli(0.37).unwrap(),
            Pmf::geometric(0.6, DEFAULT_TAIL_EPS).unwrap(),
            Pmf::poisson_truncated(2.5, DEFAULT_TAIL_EPS).unwrap(),
        ] {
            let profile = scaled_score(&pmf).unwrap();
            assert!(score_mean(&pmf, &profile).abs() <= 1e-10);
        }
    }

    #[test]
    fn cramer_rao_examples() {
        assert_eq!(cramer_rao_lower(2.0, 2.0), 0.0);

        // Geometric(0.5): lambda 1, sigma^2 2; the floor is attained.
        let geo = Pmf::geometric(0.5, 1e-14).unwrap();
        let floor = cramer_rao_lower(geo.mean(), geo.variance());
        assert!((floor - 0.5).abs() < 1e-9);
        assert!((scaled_fisher_info(&geo).unwrap() - floor).abs() < 1e-9);

        // Binomial(4, 0.25): lambda 1, sigma^2 0.75; floor = p^2/(1-p).
        let b = sum_independent(&vec![Pmf::bernoulli(0.25).unwrap(); 4]).unwrap();
        let floor = cramer_rao_lower(b.mean(), b.variance());
        assert!((floor - 0.0625 / 0.75).abs() < 1e-12);
        assert!((scaled_fisher_info(&b).unwrap() - floor).abs() < 1e-12);
    }

    #[test]
    fn combination_examples() {
        assert_eq!(subadditive_combination(&[(0.4, 1.25)]), 1.25);
        let iid = vec![(0.2, 0.05); 7];
        assert!((subadditive_combination(&iid) - 0.05).abs() < 1e-15);
        let two = [(0.1, 0.01 / 0.9), (0.2, 0.04 / 0.8)];
        assert!((subadditive_combination(&two) - 0.037_037_037_037_037_035).abs() < 1e-15);
    }

    #[test]
    fn convolution_residual_examples() {
        let b = Pmf::bernoulli(0.3).unwrap();
        assert!(score_convolution_residual(&b, &b).unwrap() <= 1e-10);

        let g = Pmf::geometric(0.5, DEFAULT_TAIL_EPS).unwrap();
        let b2 = Pmf::bernoulli(0.2).unwrap();
        assert!(score_convolution_residual(&b2, &g).unwrap() <= 1e-8);

        assert!(score_convolution_residual(&b, &Pmf::point_mass()).is_err());
    }

    #[test]
    fn subadditivity_on_small_sums() {
        let parts = [
            Pmf::bernoulli(0.25).unwrap(),
            Pmf::geometric(0.7, DEFAULT_TAIL_EPS).unwrap(),
            Pmf::bernoulli(0.4).unwrap(),
        ];
        let sum = sum_independent(&parts).unwrap();
        let k_sum = scaled_fisher_info(&sum).unwrap();
        let combo: Vec<(f64, f64)> = parts
            .iter()
            .map(|p| (p.mean(), scaled_fisher_info(p).unwrap()))
            .collect();
        assert!(k_sum <= subadditive_combination(&combo) + 1e-9);
    }
}
