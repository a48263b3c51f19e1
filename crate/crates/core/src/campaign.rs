//! Seeded verification campaigns: run every inequality of a family against
//! randomized instances and collect any report that fails to hold.
//!
//! Every check here is a theorem, so a failure indicates an implementation
//! bug (or a deliberately tightened tolerance override). Trials run in
//! parallel with per-trial RNG streams; results are aggregated in trial order
//! so output is deterministic for a given seed.

use crate::bounds::{
    self, dependent_sum_bound, independent_sum_bound, le_cam_reports, log_sobolev_bound,
    tv_fisher_bound,
};
use crate::dist::Pmf;
use crate::fisher::{
    cramer_rao_lower, scaled_fisher_info, scaled_score, score_convolution_residual, score_mean,
    subadditive_combination,
};
use crate::info::{
    hellinger_affinity, mutual_information, pinsker_tv_from_divergence, relative_entropy,
    relative_entropy_atoms, total_variation,
};
use crate::random;
use crate::report::BoundReport;
use crate::sums::{sum_independent, MAX_JOINT_COORDS};
use crate::{Error, Result};
use rayon::prelude::*;
use std::str::FromStr;

/// Instance family for a campaign.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    BernoulliLists,
    RandomPmf,
    JointBinary,
    GeometricLists,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::BernoulliLists => "bernoulli-lists",
            Family::RandomPmf => "random-pmf",
            Family::JointBinary => "joint-binary",
            Family::GeometricLists => "geometric-lists",
        }
    }

    /// Default instance-size cap when the caller does not pick one.
    pub fn default_max_n(&self) -> usize {
        match self {
            Family::BernoulliLists => 50,
            Family::RandomPmf => 30,
            Family::JointBinary => 12,
            Family::GeometricLists => 8,
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bernoulli-lists" => Ok(Family::BernoulliLists),
            "random-pmf" => Ok(Family::RandomPmf),
            "joint-binary" => Ok(Family::JointBinary),
            "geometric-lists" => Ok(Family::GeometricLists),
            other => Err(Error::InvalidParameter(format!(
                "unknown family '{other}' (expected bernoulli-lists | random-pmf | joint-binary | geometric-lists)"
            ))),
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone)]
pub struct CampaignConfig {
    pub seed: u64,
    pub trials: u64,
    pub family: Family,
    pub max_n: usize,
    pub tail_eps: f64,
    /// Testing hook: replace every check's default tolerance.
    pub tol_override: Option<f64>,
}

impl CampaignConfig {
    pub fn new(seed: u64, trials: u64, family: Family) -> Self {
        Self {
            seed,
            trials,
            family,
            max_n: family.default_max_n(),
            tail_eps: crate::dist::DEFAULT_TAIL_EPS,
            tol_override: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidParameter("trials must be >= 1".into()));
        }
        if self.max_n == 0 {
            return Err(Error::InvalidParameter("max_n must be >= 1".into()));
        }
        if self.family == Family::JointBinary && self.max_n > MAX_JOINT_COORDS {
            return Err(Error::TooManyCoordinates { n: self.max_n });
        }
        if !(self.tail_eps > 0.0 && self.tail_eps <= 1e-6) {
            return Err(Error::InvalidTailEps {
                value: self.tail_eps,
            });
        }
        Ok(())
    }

    fn tol(&self, default: f64) -> f64 {
        self.tol_override.unwrap_or(default)
    }
}

/// Campaign result: how many individual checks ran, and every report that
/// failed (each carries its generating seed and trial index in params).
#[derive(Debug, Clone)]
pub struct CampaignOutcome {
    pub checks_run: u64,
    pub failures: Vec<BoundReport>,
}

pub fn run_campaign(cfg: &CampaignConfig) -> Result<CampaignOutcome> {
    cfg.validate()?;
    let per_trial: Vec<Vec<BoundReport>> = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| trial_reports(cfg, trial))
        .collect::<Result<_>>()?;
    let mut checks_run = 0u64;
    let mut failures = Vec::new();
    for (trial, reports) in per_trial.into_iter().enumerate() {
        for report in reports {
            checks_run += 1;
            if !report.holds {
                failures.push(
                    report
                        .with_param("seed", cfg.seed)
                        .with_param("trial", trial as u64),
                );
            }
        }
    }
    Ok(CampaignOutcome {
        checks_run,
        failures,
    })
}

fn trial_reports(cfg: &CampaignConfig, trial: u64) -> Result<Vec<BoundReport>> {
    let mut rng = random::trial_rng(cfg.seed, trial);
    match cfg.family {
        Family::BernoulliLists => bernoulli_trial(cfg, &mut rng),
        Family::RandomPmf => random_pmf_trial(cfg, &mut rng),
        Family::JointBinary => joint_binary_trial(cfg, &mut rng),
        Family::GeometricLists => geometric_trial(cfg, &mut rng),
    }
}

fn retol(mut r: BoundReport, tol: f64) -> BoundReport {
    // Recompute the pass flag under an overridden tolerance, preserving the
    // one-sided / two-sided distinction via the recorded slack.
    if tol != r.tolerance {
        r.holds = if r.name == "debruijn_identity" {
            r.slack.abs() <= tol
        } else {
            r.lhs <= r.rhs + tol
        };
        r.tolerance = tol;
    }
    r
}

fn bernoulli_trial(cfg: &CampaignConfig, rng: &mut impl rand::Rng) -> Result<Vec<BoundReport>> {
    let ps = random::bernoulli_list(rng, cfg.max_n, 0.5);
    let tol = cfg.tol(bounds::INEQUALITY_TOL);
    let mut out = Vec::new();

    let sum = bounds::bernoulli_sum(&ps)?;
    let lambda: f64 = crate::numeric::kahan_sum(&ps);
    let law = crate::dist::PoissonLaw::new(lambda)?;
    let d = relative_entropy(&sum, &law).value();
    let k = scaled_fisher_info(&sum)?;
    let combo = subadditive_combination(
        &ps.iter()
            .map(|&p| (p, p * p / (1.0 - p)))
            .collect::<Vec<_>>(),
    );

    out.push(retol(independent_sum_bound(&ps)?, tol));
    out.push(retol(
        BoundReport::upper_bound("chain_kl_vs_fisher", d, k, bounds::INEQUALITY_TOL)
            .with_param("n", ps.len()),
        tol,
    ));
    out.push(retol(
        BoundReport::upper_bound("chain_fisher_vs_combination", k, combo, bounds::INEQUALITY_TOL)
            .with_param("n", ps.len()),
        tol,
    ));

    // The L1-convention Le Cam value is informational (it is convention-
    // sensitive); the halved convention is the classical theorem and is the
    // one asserted here.
    let [l1, halved] = le_cam_reports(&ps)?;
    out.push(retol(
        halved.with_param("lhs_unhalved", l1.lhs),
        tol,
    ));

    let cr = cramer_rao_lower(sum.mean(), sum.variance());
    out.push(retol(
        BoundReport::upper_bound("cramer_rao_floor", cr, k, bounds::INEQUALITY_TOL)
            .with_param("n", ps.len()),
        tol,
    ));

    let tv = total_variation(&sum, &law);
    out.push(retol(
        BoundReport::upper_bound("pinsker", 0.5 * tv * tv, d, 1e-10).with_param("n", ps.len()),
        cfg.tol(1e-10),
    ));
    Ok(out)
}

fn random_pmf_trial(cfg: &CampaignConfig, rng: &mut impl rand::Rng) -> Result<Vec<BoundReport>> {
    let p = random::random_pmf(rng, cfg.max_n.clamp(2, 30));
    let q = random::random_pmf(rng, cfg.max_n.clamp(2, 30));
    let tol = cfg.tol(bounds::INEQUALITY_TOL);
    let mut out = Vec::new();

    out.push(retol(log_sobolev_bound(&p)?, tol));
    out.push(retol(tv_fisher_bound(&p)?, tol));

    let k = scaled_fisher_info(&p)?;
    let cr = cramer_rao_lower(p.mean(), p.variance());
    out.push(retol(
        BoundReport::upper_bound("cramer_rao_floor", cr, k, bounds::INEQUALITY_TOL),
        tol,
    ));

    let profile = scaled_score(&p)?;
    out.push(retol(
        BoundReport::upper_bound(
            "score_mean_zero",
            score_mean(&p, &profile).abs(),
            0.0,
            1e-10,
        ),
        cfg.tol(1e-10),
    ));

    let law = crate::dist::PoissonLaw::new(p.mean())?;
    let mu = hellinger_affinity(&p, &law);
    let h2 = 2.0 - 2.0 * mu;
    out.push(retol(
        BoundReport::upper_bound("hellinger_vs_affinity", h2, 2.0 * (1.0 - mu * mu), 1e-10),
        cfg.tol(1e-10),
    ));
    out.push(retol(
        BoundReport::upper_bound("hellinger_vs_fisher", h2, 2.0 * k, bounds::INEQUALITY_TOL),
        tol,
    ));

    let d = relative_entropy(&p, &law).value();
    let tv = total_variation(&p, &law);
    out.push(retol(
        BoundReport::upper_bound("pinsker", 0.5 * tv * tv, d, 1e-10),
        cfg.tol(1e-10),
    ));

    for r in bounds::smoothing_decay_reports(&p, &[0.5, 2.0, 10.0])? {
        out.push(retol(r, cfg.tol(bounds::IDENTITY_TOL)));
    }

    out.push(retol(
        BoundReport::upper_bound(
            "convolution_lemma_residual",
            score_convolution_residual(&p, &q)?,
            0.0,
            bounds::IDENTITY_TOL,
        ),
        cfg.tol(bounds::IDENTITY_TOL),
    ));

    let sym = (total_variation(&p, &q) - total_variation(&q, &p)).abs();
    out.push(retol(
        BoundReport::upper_bound("tv_symmetry", sym, 0.0, 1e-12),
        cfg.tol(1e-12),
    ));
    Ok(out)
}

fn joint_binary_trial(cfg: &CampaignConfig, rng: &mut impl rand::Rng) -> Result<Vec<BoundReport>> {
    let joint = random::random_joint_binary(rng, cfg.max_n.min(MAX_JOINT_COORDS));
    let tol = cfg.tol(bounds::INEQUALITY_TOL);
    let mut out = Vec::new();

    out.push(retol(dependent_sum_bound(&joint)?, tol));

    // Mutual information of the first coordinate against the rest equals the
    // divergence between the pair law and the product of its marginals.
    let rest: Vec<usize> = (1..joint.n()).collect();
    let mi = mutual_information(&joint, &[0], &rest)?;
    let m0 = joint.marginal(&[0]);
    let mr = joint.marginal(&rest);
    let mut coords = vec![0usize];
    coords.extend_from_slice(&rest);
    let pair = joint.marginal(&coords);
    let mut product = vec![0.0; pair.len()];
    for (idx, slot) in product.iter_mut().enumerate() {
        *slot = m0[idx & 1] * mr[idx >> 1];
    }
    let d = relative_entropy_atoms(&pair, &product).value();
    out.push(retol(
        BoundReport::identity("mutual_information_vs_kl", mi, d, 1e-10),
        cfg.tol(1e-10),
    ));
    out.push(retol(
        BoundReport::upper_bound("mutual_information_nonnegative", -mi, 0.0, 1e-12),
        cfg.tol(1e-12),
    ));
    Ok(out)
}

fn geometric_trial(cfg: &CampaignConfig, rng: &mut impl rand::Rng) -> Result<Vec<BoundReport>> {
    let qs = random::geometric_list(rng, cfg.max_n);
    let tol = cfg.tol(bounds::INEQUALITY_TOL);
    let mut out = Vec::new();

    let parts: Vec<Pmf> = qs
        .iter()
        .map(|&q| Pmf::geometric(q, cfg.tail_eps))
        .collect::<Result<_>>()?;
    let mut combo = Vec::with_capacity(parts.len());
    for (i, (part, &q)) in parts.iter().zip(&qs).enumerate() {
        let k = scaled_fisher_info(part)?;
        let closed = (1.0 - q) * (1.0 - q) / q;
        out.push(retol(
            BoundReport::identity("geometric_fisher_closed_form", k, closed, bounds::IDENTITY_TOL)
                .with_param("i", i)
                .with_param("q", q),
            cfg.tol(bounds::IDENTITY_TOL),
        ));
        combo.push((part.mean(), k));
    }

    let sum = sum_independent(&parts)?;
    let k_sum = scaled_fisher_info(&sum)?;
    out.push(retol(
        BoundReport::upper_bound(
            "chain_fisher_vs_combination",
            k_sum,
            subadditive_combination(&combo),
            bounds::INEQUALITY_TOL,
        )
        .with_param("n", qs.len()),
        tol,
    ));
    out.push(retol(log_sobolev_bound(&sum)?, tol));
    out.push(retol(tv_fisher_bound(&sum)?, tol));

    let cr = cramer_rao_lower(sum.mean(), sum.variance());
    out.push(retol(
        BoundReport::upper_bound("cramer_rao_floor", cr, k_sum, bounds::INEQUALITY_TOL),
        tol,
    ));

    let d = relative_entropy(&sum, &crate::dist::PoissonLaw::new(sum.mean())?);
    out.push(retol(
        BoundReport::upper_bound(
            "pinsker_from_divergence",
            total_variation(&sum, &crate::dist::PoissonLaw::new(sum.mean())?),
            pinsker_tv_from_divergence(d),
            bounds::INEQUALITY_TOL,
        ),
        tol,
    ));
    Ok(out)
}
