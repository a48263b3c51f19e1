//! Every Poisson-approximation inequality as a checkable report: the
//! relative-entropy bound for dependent binaries, the sharper cubic bound for
//! independent ones, Le Cam's total-variation bound (both conventions), the
//! log-Sobolev consequence D <= K, the Poincare inequality, the smoothing
//! integral identity, and the compound-Poisson example.

use crate::dist::{CompoundPoissonLaw, DiscreteLaw, Pmf, PoissonLaw};
use crate::fisher::scaled_fisher_info;
use crate::info::{
    binary_entropy, joint_entropy, relative_entropy, total_variation,
};
use crate::numeric::KahanSum;
use crate::quad::{adaptive_simpson, QuadratureSpec};
use crate::report::BoundReport;
use crate::sums::{
    compound_sum_distribution, compound_term, markov_sum_distribution, poisson_smooth,
    sum_independent, JointBinary, MarkovChainSpec,
};
use crate::{Error, Result};

/// Absolute tolerance for plain inequality checks (floating round-off).
pub const INEQUALITY_TOL: f64 = 1e-9;
/// Absolute tolerance for identity checks limited by truncation noise.
pub const IDENTITY_TOL: f64 = 1e-8;
/// Absolute tolerance for the quadrature-based integral identity.
pub const INTEGRAL_TOL: f64 = 1e-4;

/// Sum of independent Bernoulli(p_i) with every p_i in [0, 1).
pub fn bernoulli_sum(ps: &[f64]) -> Result<Pmf> {
    if ps.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut parts = Vec::with_capacity(ps.len());
    for &p in ps {
        if !(0.0..1.0).contains(&p) {
            return Err(Error::InvalidProbability { value: p });
        }
        parts.push(Pmf::bernoulli(p)?);
    }
    sum_independent(&parts)
}

fn kahan_total(xs: impl IntoIterator<Item = f64>) -> f64 {
    let mut acc = KahanSum::new();
    for x in xs {
        acc.add(x);
    }
    acc.value()
}

/// D(P_{S_n} || Po(lambda)) <= sum p_i^2 + [sum H(X_i) - H(X_1..X_n)] for
/// possibly dependent binary coordinates. The second term is the entropy gap
/// that prices the dependence.
pub fn dependent_sum_bound(joint: &JointBinary) -> Result<BoundReport> {
    let ps: Vec<f64> = (0..joint.n()).map(|i| joint.coordinate_mean(i)).collect();
    let lambda = kahan_total(ps.iter().copied());
    if lambda <= 0.0 {
        return Err(Error::ZeroMean);
    }
    let sum_law = joint.sum_law();
    let lhs = relative_entropy(&sum_law, &PoissonLaw::new(lambda)?).value();
    let p_sq = kahan_total(ps.iter().map(|p| p * p));
    let gap = kahan_total(ps.iter().map(|&p| binary_entropy(p))) - joint_entropy(joint);
    Ok(
        BoundReport::upper_bound("dependent_sum_kl", lhs, p_sq + gap, INEQUALITY_TOL)
            .with_param("n", joint.n())
            .with_param("lambda", lambda)
            .with_param("entropy_gap", gap),
    )
}

/// D(P_{S_n} || Po(lambda)) <= (1/lambda) sum p_i^3/(1-p_i) for independent
/// Bernoulli coordinates: the sharper cubic bound.
pub fn independent_sum_bound(ps: &[f64]) -> Result<BoundReport> {
    let sum = bernoulli_sum(ps)?;
    let lambda = kahan_total(ps.iter().copied());
    if lambda <= 0.0 {
        return Err(Error::ZeroMean);
    }
    let lhs = relative_entropy(&sum, &PoissonLaw::new(lambda)?).value();
    let rhs = kahan_total(ps.iter().map(|&p| p * p * p / (1.0 - p))) / lambda;
    Ok(
        BoundReport::upper_bound("independent_sum_kl", lhs, rhs, INEQUALITY_TOL)
            .with_param("n", ps.len())
            .with_param("lambda", lambda),
    )
}

/// Le Cam's bound ||P_{S_n} - Po(lambda)||_TV <= sum p_i^2, independent
/// Bernoullis only. Emitted under BOTH total-variation conventions, because
/// the un-halved L1 form used elsewhere in this crate makes the n = 1,
/// p = 0.5 instance convention-sensitive: [l1 report, halved report]. The
/// halved one is the classical theorem.
pub fn le_cam_reports(ps: &[f64]) -> Result<[BoundReport; 2]> {
    for &p in ps {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidProbability { value: p });
        }
    }
    let lambda = kahan_total(ps.iter().copied());
    let rhs = kahan_total(ps.iter().map(|p| p * p));
    let tv = if lambda == 0.0 {
        0.0
    } else {
        let sum = bernoulli_sum(ps)?;
        total_variation(&sum, &PoissonLaw::new(lambda)?)
    };
    let l1 = BoundReport::upper_bound("le_cam_l1", tv, rhs, INEQUALITY_TOL)
        .with_param("n", ps.len())
        .with_param("lambda", lambda)
        .with_param("convention", "unhalved L1");
    let halved = BoundReport::upper_bound("le_cam_halved", tv / 2.0, rhs, INEQUALITY_TOL)
        .with_param("n", ps.len())
        .with_param("lambda", lambda)
        .with_param("convention", "halved (classical)");
    Ok([l1, halved])
}

/// The log-Sobolev consequence D(P || Po(mean)) <= K(X) for finite-support P
/// with positive mean.
pub fn log_sobolev_bound(p: &Pmf) -> Result<BoundReport> {
    let lambda = p.mean();
    if lambda <= 0.0 {
        return Err(Error::ZeroMean);
    }
    let lhs = relative_entropy(p, &PoissonLaw::new(lambda)?).value();
    let rhs = scaled_fisher_info(p)?;
    Ok(BoundReport::upper_bound("log_sobolev_kl", lhs, rhs, INEQUALITY_TOL)
        .with_param("lambda", lambda))
}

/// ||P - Po(mean)||_TV <= sqrt(2 K(X)).
pub fn tv_fisher_bound(p: &Pmf) -> Result<BoundReport> {
    let lambda = p.mean();
    if lambda <= 0.0 {
        return Err(Error::ZeroMean);
    }
    let lhs = total_variation(p, &PoissonLaw::new(lambda)?);
    let k = scaled_fisher_info(p)?;
    Ok(
        BoundReport::upper_bound("tv_sqrt_2k", lhs, (2.0 * k).sqrt(), INEQUALITY_TOL)
            .with_param("lambda", lambda)
            .with_param("fisher", k),
    )
}

/// Poincare inequality for the Poisson measure:
/// Var(g) <= lambda * E[(g(x+1) - g(x))^2], both sides summed to `horizon`
/// (choose it so the Poisson tail is below 1e-13).
pub fn poincare_check<F: Fn(u64) -> f64>(lambda: f64, g: F, horizon: u64) -> Result<BoundReport> {
    let law = PoissonLaw::new(lambda)?;
    let weights: Vec<f64> = (0..=horizon).map(|k| law.pmf(k)).collect();
    let mut mean = KahanSum::new();
    for (k, &w) in weights.iter().enumerate() {
        mean.add(w * g(k as u64));
    }
    let mu = mean.value();
    let mut var = KahanSum::new();
    let mut grad = KahanSum::new();
    for (k, &w) in weights.iter().enumerate() {
        let gk = g(k as u64);
        let d = gk - mu;
        var.add(w * d * d);
        let step = g(k as u64 + 1) - gk;
        grad.add(w * step * step);
    }
    Ok(BoundReport::upper_bound(
        "poincare",
        var.value(),
        lambda * grad.value(),
        IDENTITY_TOL,
    )
    .with_param("lambda", lambda)
    .with_param("horizon", horizon))
}

/// The two layers of the Markov-chain example at length n >= 3:
/// D(P_{S_n} || Po(1)) <= 1/n + (n-1) I(X_1; X_2) <= 3 ln(n)/n + 1/n.
/// Returns [exact-vs-intermediate, intermediate-vs-rate].
pub fn markov_chain_reports(n: usize) -> Result<[BoundReport; 2]> {
    if n < 3 {
        return Err(Error::InvalidParameter(
            "the chain bound chain needs n >= 3".into(),
        ));
    }
    let spec = MarkovChainSpec::stationary_bernoulli(n)?;
    let sum = markov_sum_distribution(&spec)?;
    let exact = relative_entropy(&sum, &PoissonLaw::new(1.0)?).value();

    // Exact pair law of (X_1, X_2) from the 2x2 transition row.
    let t = spec.transition();
    let pi = [1.0 - spec.initial(), spec.initial()];
    let mut joint = [[0.0; 2]; 2];
    let mut m2 = [0.0; 2];
    for a in 0..2 {
        for b in 0..2 {
            joint[a][b] = pi[a] * t[a][b];
            m2[b] += joint[a][b];
        }
    }
    let mut mi = KahanSum::new();
    for a in 0..2 {
        for b in 0..2 {
            if joint[a][b] > 0.0 {
                mi.add(joint[a][b] * (joint[a][b] / (pi[a] * m2[b])).ln());
            }
        }
    }
    let nf = n as f64;
    let intermediate = 1.0 / nf + (nf - 1.0) * mi.value();
    let rate = 3.0 * nf.ln() / nf + 1.0 / nf;

    let first = BoundReport::upper_bound("markov_exact_vs_intermediate", exact, intermediate, INEQUALITY_TOL)
        .with_param("n", n)
        .with_param("pair_mi", mi.value());
    let second = BoundReport::upper_bound("markov_intermediate_vs_rate", intermediate, rate, INEQUALITY_TOL)
        .with_param("n", n)
        .with_param("exact_kl", exact);
    Ok([first, second])
}

/// The compound example: the total bound
/// D(P_{S_n} || Po(lambda/2, lambda/2)) <= sum p_i^2 plus the per-term
/// reports D(P_{alpha_i X_i} || Po(p_i/2, p_i/2)) <= p_i^2. Divergences are
/// taken against the compound law's pointwise (recursion) values.
#[derive(Debug, Clone)]
pub struct CompoundReports {
    pub total: BoundReport,
    pub per_term: Vec<BoundReport>,
}

pub fn compound_poisson_bound(ps: &[f64]) -> Result<CompoundReports> {
    for &p in ps {
        if !(0.0..1.0).contains(&p) {
            return Err(Error::InvalidProbability { value: p });
        }
    }
    let lambda = kahan_total(ps.iter().copied());
    let rhs = kahan_total(ps.iter().map(|p| p * p));
    let lhs = if lambda == 0.0 {
        // Degenerate Po(0+, 0+) limit: both laws are the point mass at 0.
        0.0
    } else {
        let sum = compound_sum_distribution(ps)?;
        let law = CompoundPoissonLaw::new(lambda / 2.0, lambda / 2.0)?;
        relative_entropy(&sum, &law).value()
    };
    let total = BoundReport::upper_bound("compound_sum_kl", lhs, rhs, INEQUALITY_TOL)
        .with_param("n", ps.len())
        .with_param("lambda", lambda);

    let mut per_term = Vec::with_capacity(ps.len());
    for (i, &p) in ps.iter().enumerate() {
        let lhs = if p == 0.0 {
            0.0
        } else {
            let term = compound_term(p)?;
            let law = CompoundPoissonLaw::new(p / 2.0, p / 2.0)?;
            relative_entropy(&term, &law).value()
        };
        per_term.push(
            BoundReport::upper_bound("compound_term_kl", lhs, p * p, INEQUALITY_TOL)
                .with_param("i", i)
                .with_param("p", p),
        );
    }
    Ok(CompoundReports { total, per_term })
}

/// D(Bern(p) || Po(p)) in closed form: p + (1-p) ln(1-p). Bounded by p^2.
pub fn bernoulli_poisson_gap(p: f64) -> f64 {
    assert!((0.0..1.0).contains(&p), "gap needs p in [0, 1)");
    p + (1.0 - p) * (-p).ln_1p()
}

/// Smoothed pointwise evaluation P_t(r) = sum_x P(x) Po_t(r - x) in log
/// space, so far tails stay finite instead of underflowing to zero.
struct SmoothedLogPmf<'a> {
    ln_base: Vec<f64>,
    poisson: PoissonLaw,
    base: &'a Pmf,
}

impl<'a> SmoothedLogPmf<'a> {
    fn new(base: &'a Pmf, t: f64) -> Result<Self> {
        Ok(Self {
            ln_base: base.probs().iter().map(|&p| p.ln()).collect(),
            poisson: PoissonLaw::new(t)?,
            base,
        })
    }

    fn ln_pmf(&self, r: u64) -> f64 {
        let hi = (r as usize).min(self.base.support_len() - 1);
        let mut max = f64::NEG_INFINITY;
        let mut terms = Vec::with_capacity(hi + 1);
        for x in 0..=hi {
            let lb = self.ln_base[x];
            if lb == f64::NEG_INFINITY {
                continue;
            }
            let v = lb + self.poisson.ln_pmf(r - x as u64);
            terms.push(v);
            if v > max {
                max = v;
            }
        }
        if terms.is_empty() || max == f64::NEG_INFINITY {
            return f64::NEG_INFINITY;
        }
        let mut acc = KahanSum::new();
        for v in terms {
            acc.add((v - max).exp());
        }
        max + acc.value().ln()
    }
}

/// D(P_t || Ptilde_t) where Ptilde_t(r) = (r+1) P_t(r+1) / (lambda + t),
/// together with |sum_r Ptilde_t(r) - 1| over the evaluation horizon (the
/// mean identity E[X_t] = lambda + t makes the second value a consistency
/// check on the evaluation).
fn smoothing_divergence(p: &Pmf, lambda: f64, t: f64) -> Result<(f64, f64)> {
    let smoothed = SmoothedLogPmf::new(p, t)?;
    let lt = lambda + t;
    let ln_lt = lt.ln();
    let cap = (lt + 20.0 * lt.sqrt()).ceil() as u64 + p.support_len() as u64 + 60;
    let mut div = KahanSum::new();
    let mut norm = KahanSum::new();
    let mut mass = KahanSum::new();
    let mut ln_cur = smoothed.ln_pmf(0);
    let mut r = 0u64;
    loop {
        let ln_next = smoothed.ln_pmf(r + 1);
        let cur = ln_cur.exp();
        if cur > 0.0 {
            div.add(cur * (ln_cur + ln_lt - ((r + 1) as f64).ln() - ln_next));
            norm.add((ln_next + ((r + 1) as f64).ln() - ln_lt).exp());
        }
        mass.add(cur);
        let remaining = 1.0 - mass.value();
        if r as f64 >= lt && remaining <= 1e-13 + p.truncation_tail() {
            break;
        }
        if r >= cap {
            break;
        }
        ln_cur = ln_next;
        r += 1;
    }
    Ok((div.value(), (norm.value() - 1.0).abs()))
}

/// The smoothing integral identity
/// D(P || Po(lambda)) = Integral over t of D(P_t || Ptilde_t),
/// checked by adaptive quadrature on [~0, t_max] plus an analytic tail
/// estimate (fit c/(lambda+t)^2 at the last two nodes and integrate).
///
/// The lower limit is 1e-8, not 0: for bounded support the integrand has an
/// integrable log singularity at t = 0, and the omitted mass is below 1e-7.
pub fn debruijn_identity_report(p: &Pmf, quad: &QuadratureSpec) -> Result<BoundReport> {
    let lambda = p.mean();
    if lambda <= 0.0 {
        return Err(Error::ZeroMean);
    }
    let lhs = relative_entropy(p, &PoissonLaw::new(lambda)?).value();

    let mut worst_norm_err = 0.0f64;
    let mut eval = |t: f64| -> f64 {
        let (value, norm_err) = smoothing_divergence(p, lambda, t)
            .expect("smoothing divergence is defined for t > 0");
        if norm_err > worst_norm_err {
            worst_norm_err = norm_err;
        }
        value
    };
    let integral = adaptive_simpson(&mut eval, 1e-8, quad.t_max, quad.abs_tol, quad.max_depth)?;

    let t1 = 0.98 * quad.t_max;
    let t2 = quad.t_max;
    let c1 = eval(t1) * (lambda + t1) * (lambda + t1);
    let c2 = eval(t2) * (lambda + t2) * (lambda + t2);
    let tail = 0.5 * (c1 + c2) / (lambda + quad.t_max);

    let tolerance = INTEGRAL_TOL.max(quad.abs_tol);
    Ok(
        BoundReport::identity("debruijn_identity", lhs, integral + tail, tolerance)
            .with_param("lambda", lambda)
            .with_param("t_max", quad.t_max)
            .with_param("abs_tol", quad.abs_tol)
            .with_param("integral", integral)
            .with_param("tail_estimate", tail)
            .with_param("ptilde_norm_err", worst_norm_err),
    )
}

/// The first-order companion integral of K(X + Po_t) / (2 (lambda + t)).
/// Emitted for qualitative comparison with the exact divergence; no
/// inequality is asserted.
pub fn debruijn_diagnostic(p: &Pmf, quad: &QuadratureSpec) -> Result<f64> {
    let lambda = p.mean();
    if lambda <= 0.0 {
        return Err(Error::ZeroMean);
    }
    let mut eval = |t: f64| -> f64 {
        let smoothed = poisson_smooth(p, t, crate::dist::DEFAULT_TAIL_EPS)
            .expect("smoothing with a truncated Poisson");
        scaled_fisher_info(&smoothed).expect("positive mean after smoothing")
            / (2.0 * (lambda + t))
    };
    adaptive_simpson(&mut eval, 0.0, quad.t_max, quad.abs_tol, quad.max_depth)
}

/// K(X + Po_t) <= (lambda / (lambda + t)) K(X) for each requested t: Poisson
/// smoothing can only shrink the scaled Fisher information, at that rate.
pub fn smoothing_decay_reports(p: &Pmf, ts: &[f64]) -> Result<Vec<BoundReport>> {
    let lambda = p.mean();
    if lambda <= 0.0 {
        return Err(Error::ZeroMean);
    }
    let k0 = scaled_fisher_info(p)?;
    let mut out = Vec::with_capacity(ts.len());
    for &t in ts {
        let kt = scaled_fisher_info(&poisson_smooth(p, t, crate::dist::DEFAULT_TAIL_EPS)?)?;
        let rhs = lambda / (lambda + t) * k0;
        out.push(
            BoundReport::upper_bound("smoothing_decay", kt, rhs, IDENTITY_TOL)
                .with_param("t", t)
                .with_param("lambda", lambda),
        );
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::DEFAULT_TAIL_EPS;
    use crate::fisher::{scaled_fisher_info, subadditive_combination};
    use crate::info::pinsker_tv_from_divergence;

    #[test]
    fn dependent_bound_independent_case() {
        let joint = JointBinary::product_of_bernoullis(&[0.1; 5]).unwrap();
        let r = dependent_sum_bound(&joint).unwrap();
        assert!(r.holds);
        assert!((r.rhs - 0.05).abs() < 1e-12);
        if let crate::report::ParamValue::Float(gap) = r.params["entropy_gap"] {
            assert!(gap.abs() <= 1e-12);
        } else {
            panic!("entropy_gap should be a float param");
        }
    }

    #[test]
    fn dependent_bound_duplicated_coordinate() {
        let mut atoms = vec![0.0; 4];
        atoms[0b00] = 0.7;
        atoms[0b11] = 0.3;
        let joint = JointBinary::new(2, atoms).unwrap();
        let r = dependent_sum_bound(&joint).unwrap();
        // Two-atom oracle: D(law of 2*X1 || Po(0.6)).
        let law = PoissonLaw::new(0.6).unwrap();
        let oracle = 0.7 * (0.7 / law.pmf(0)).ln() + 0.3 * (0.3 / law.pmf(2)).ln();
        assert!((r.lhs - oracle).abs() < 1e-12);
        assert!((r.rhs - (0.18 + binary_entropy(0.3))).abs() < 1e-12);
        assert!(r.holds);

        let zeros = JointBinary::product_of_bernoullis(&[0.0, 0.0]).unwrap();
        assert!(dependent_sum_bound(&zeros).is_err());
    }

    #[test]
    fn independent_bound_examples() {
        let r = independent_sum_bound(&[0.01; 100]).unwrap();
        assert!((r.rhs - 1.010_101_010_101_010_1e-4).abs() < 1e-16);
        assert!(r.holds);

        let r = independent_sum_bound(&[0.2]).unwrap();
        assert!((r.rhs - 0.05).abs() < 1e-15);
        assert!((r.lhs - bernoulli_poisson_gap(0.2)).abs() < 1e-12);
        assert!((r.lhs - 0.021_485_158_948_632_195).abs() < 1e-13);
        assert!(r.holds);

        assert!(independent_sum_bound(&[1.0]).is_err());
        assert!(independent_sum_bound(&[0.0]).is_err());
    }

    #[test]
    fn le_cam_convention_sensitivity() {
        // n = 1, p = 0.5: the classical halved bound holds, the L1 variant
        // does not; both are reported.
        let [l1, halved] = le_cam_reports(&[0.5]).unwrap();
        assert!((l1.lhs - 0.393_469_340_287_366_58).abs() < 1e-12);
        assert!(!l1.holds);
        assert!(halved.holds);

        let [l1, halved] = le_cam_reports(&[0.0, 0.0]).unwrap();
        assert_eq!(l1.lhs, 0.0);
        assert_eq!(l1.rhs, 0.0);
        assert!(l1.holds && halved.holds);

        let [l1, halved] = le_cam_reports(&[0.01; 100]).unwrap();
        assert!(l1.holds && halved.holds);
    }

    #[test]
    fn log_sobolev_examples() {
        let trunc = Pmf::poisson_truncated(2.0, DEFAULT_TAIL_EPS).unwrap();
        let r = log_sobolev_bound(&trunc).unwrap();
        assert!(r.lhs <= 1e-8 && r.rhs <= 1e-8 && r.holds);

        let r = log_sobolev_bound(&Pmf::bernoulli(0.1).unwrap()).unwrap();
        assert!((r.lhs - 0.005_175_535_907_956_329).abs() < 1e-12);
        assert!((r.rhs - 0.011_111_111_111_111_112).abs() < 1e-12);
        assert!(r.holds);
    }

    #[test]
    fn tv_fisher_examples() {
        let trunc = Pmf::poisson_truncated(1.0, DEFAULT_TAIL_EPS).unwrap();
        let r = tv_fisher_bound(&trunc).unwrap();
        assert!(r.lhs <= 1e-6 && r.holds);

        let r = tv_fisher_bound(&Pmf::bernoulli(0.1).unwrap()).unwrap();
        assert!((r.rhs - (2.0f64 * (0.01 / 0.9)).sqrt()).abs() < 1e-12);
        assert!(r.holds);

        let r = tv_fisher_bound(&Pmf::geometric(0.9, DEFAULT_TAIL_EPS).unwrap()).unwrap();
        assert!(r.holds);
        assert!(r.slack > 0.0);
    }

    #[test]
    fn poincare_examples() {
        let r = poincare_check(1.5, |_| 3.25, 60).unwrap();
        assert!(r.lhs.abs() < 1e-15 && r.rhs.abs() < 1e-15 && r.holds);

        // Linear g attains equality: Var(X) = lambda, steps are 1.
        let r = poincare_check(2.0, |x| x as f64, 80).unwrap();
        assert!((r.lhs - 2.0).abs() < 1e-10);
        assert!((r.rhs - 2.0).abs() < 1e-10);
        assert!(r.holds);

        // Quadratic g under Po(1): Var(X^2) = 11, rhs = E[(2x+1)^2] = 13,
        // both checked against series summation.
        let r = poincare_check(1.0, |x| (x * x) as f64, 60).unwrap();
        assert!((r.lhs - 11.0).abs() < 1e-9);
        assert!((r.rhs - 13.0).abs() < 1e-9);
        assert!(r.holds);
    }

    #[test]
    fn markov_chain_examples() {
        assert!(markov_chain_reports(2).is_err());
        for n in [3usize, 100, 1000] {
            let [a, b] = markov_chain_reports(n).unwrap();
            assert!(a.holds && b.holds, "n={n}");
        }
        let [_, b] = markov_chain_reports(100).unwrap();
        assert!((b.rhs - 0.148_155_105_579_642_74).abs() < 1e-13);
        let [_, b] = markov_chain_reports(1000).unwrap();
        assert!((b.rhs - 0.021_723_265_836_946_41).abs() < 1e-13);
    }

    #[test]
    fn compound_examples() {
        let r = compound_poisson_bound(&[0.0, 0.0]).unwrap();
        assert!(r.total.holds && r.total.lhs.abs() <= 1e-10);

        let r = compound_poisson_bound(&[0.4]).unwrap();
        assert!(r.per_term[0].lhs <= 0.16);
        assert!(r.per_term[0].holds);
        // Exact per-term divergence matches the closed-form expression
        // p^2 + (1-p)(p + ln(1-p)) - (p/2) ln(1 + p/4).
        let p: f64 = 0.4;
        let closed =
            p * p + (1.0 - p) * (p + (1.0 - p).ln()) - (p / 2.0) * (1.0 + p / 4.0).ln();
        assert!((r.per_term[0].lhs - closed).abs() < 1e-12);

        let r = compound_poisson_bound(&[0.1; 10]).unwrap();
        assert!(r.total.lhs <= 0.1);
        assert!(r.total.holds);
        for t in &r.per_term {
            assert!(t.holds);
        }
    }

    #[test]
    fn gap_examples() {
        assert_eq!(bernoulli_poisson_gap(0.0), 0.0);
        assert!((bernoulli_poisson_gap(0.1) - 0.005_175_535_907_956_329).abs() < 1e-15);
        let g = bernoulli_poisson_gap(0.9);
        assert!((g - 0.669_741_490_700_595_4).abs() < 1e-14);
        assert!(g <= 0.81);
        // Equals the generic divergence path.
        let d = relative_entropy(
            &Pmf::bernoulli(0.3).unwrap(),
            &PoissonLaw::new(0.3).unwrap(),
        );
        assert!((bernoulli_poisson_gap(0.3) - d.value()).abs() <= 1e-12);
    }

    #[test]
    fn debruijn_identity_instances() {
        let quad = QuadratureSpec::new(200.0, 1e-5, 40).unwrap();

        let trunc = Pmf::poisson_truncated(1.0, DEFAULT_TAIL_EPS).unwrap();
        let r = debruijn_identity_report(&trunc, &quad).unwrap();
        assert!(r.lhs <= 1e-6 && r.rhs.abs() <= 1e-6, "{r:?}");

        let bern = debruijn_identity_report(&Pmf::bernoulli(0.5).unwrap(), &quad).unwrap();
        assert!((bern.lhs - bern.rhs).abs() <= 1e-4, "{bern:?}");
        assert!(bern.holds);

        let b5 = bernoulli_sum(&[0.2; 5]).unwrap();
        let r = debruijn_identity_report(&b5, &quad).unwrap();
        assert!((r.lhs - r.rhs).abs() <= 1e-4, "{r:?}");
    }

    #[test]
    fn debruijn_diagnostic_is_same_scale() {
        let quad = QuadratureSpec::default_for(0.3);
        let p = Pmf::bernoulli(0.3).unwrap();
        let approx = debruijn_diagnostic(&p, &quad).unwrap();
        let exact = bernoulli_poisson_gap(0.3);
        assert!(approx > 0.0);
        assert!(approx < 2.0 * exact);

        let trunc = Pmf::poisson_truncated(1.0, DEFAULT_TAIL_EPS).unwrap();
        let approx = debruijn_diagnostic(&trunc, &QuadratureSpec::default_for(1.0)).unwrap();
        assert!(approx.abs() <= 1e-6);
    }

    #[test]
    fn smoothing_decay_examples() {
        let p = Pmf::bernoulli(0.5).unwrap();
        let rs = smoothing_decay_reports(&p, &[0.0, 0.5]).unwrap();
        assert!((rs[0].lhs - rs[0].rhs).abs() < 1e-12); // t = 0 equality
        assert!((rs[1].rhs - 0.25).abs() < 1e-12); // 0.5 * K(Bern(0.5))
        assert!(rs[1].holds);

        let g = Pmf::geometric(0.5, DEFAULT_TAIL_EPS).unwrap();
        let rs = smoothing_decay_reports(&g, &[1.0, 10.0, 100.0]).unwrap();
        let mut prev = f64::INFINITY;
        for r in &rs {
            assert!(r.holds);
            assert!(r.lhs <= prev);
            prev = r.lhs;
        }
    }

    #[test]
    fn theorem_chain_and_pinsker_columns() {
        // lambda = 1, n = 100: exact TV <= Pinsker(T1 rhs) <= (2+eps) lambda/n.
        let ps = [0.01; 100];
        let sum = bernoulli_sum(&ps).unwrap();
        let tv = total_variation(&sum, &PoissonLaw::new(1.0).unwrap());
        let t1 = independent_sum_bound(&ps).unwrap();
        let pinsker = pinsker_tv_from_divergence(crate::info::DivergenceValue::finite(t1.rhs));
        assert!((pinsker - 0.014_213_381_090_374_029).abs() < 1e-14);
        assert!(tv <= pinsker);
        assert!(pinsker <= 2.01 / 100.0);

        // K(S_n) sits between the divergence and the combination.
        let k = scaled_fisher_info(&sum).unwrap();
        assert!(t1.lhs <= k + 1e-9);
        let combo = subadditive_combination(&vec![(0.01, 0.0001 / 0.99); 100]);
        assert!(k <= combo + 1e-9);
    }
}
