//! Seeded instance generators for the verification campaigns.
//!
//! Distribution draws are Dirichlet-like (normalized exponentials) over a
//! random support length, so every entry is strictly positive and the
//! full-support hypotheses of the checked inequalities are exercised without
//! degenerate zeros.

use crate::dist::Pmf;
use crate::sums::JointBinary;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Deterministic per-trial stream: one base seed, one stream per trial index.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn exponential<R: Rng>(rng: &mut R) -> f64 {
    // -ln(1 - U) with U in [0, 1): strictly positive.
    -(1.0 - rng.gen::<f64>()).ln()
}

/// n in 1..=max_n Bernoulli parameters in (0, max_p].
pub fn bernoulli_list<R: Rng>(rng: &mut R, max_n: usize, max_p: f64) -> Vec<f64> {
    let n = rng.gen_range(1..=max_n.max(1));
    (0..n).map(|_| max_p * (1.0 - rng.gen::<f64>())).collect()
}

/// Full-support pmf on a random support length in [2, max_support].
pub fn random_pmf<R: Rng>(rng: &mut R, max_support: usize) -> Pmf {
    let len = rng.gen_range(2..=max_support.max(2));
    let mut weights: Vec<f64> = (0..len).map(|_| exponential(rng)).collect();
    let total = crate::numeric::kahan_sum(&weights);
    for w in &mut weights {
        *w /= total;
    }
    // Push the division residual into the largest atom so the mass check
    // stays comfortably inside its band even for long supports.
    let resid = crate::numeric::kahan_sum(&weights) - 1.0;
    let argmax = weights
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .expect("nonempty");
    weights[argmax] -= resid;
    Pmf::from_parts(weights, 0.0).expect("normalized draw")
}

/// Random joint law over {0,1}^n with n in 2..=max_n, atoms drawn as
/// normalized exponentials.
pub fn random_joint_binary<R: Rng>(rng: &mut R, max_n: usize) -> JointBinary {
    let n = rng.gen_range(2..=max_n.max(2));
    let mut atoms: Vec<f64> = (0..1usize << n).map(|_| exponential(rng)).collect();
    let total = crate::numeric::kahan_sum(&atoms);
    for a in &mut atoms {
        *a /= total;
    }
    let resid = crate::numeric::kahan_sum(&atoms) - 1.0;
    let argmax = atoms
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .expect("nonempty");
    atoms[argmax] -= resid;
    JointBinary::new(n, atoms).expect("normalized draw")
}

/// n in 1..=max_n geometric parameters in [0.3, 0.95]: bounded away from 0
/// so truncated supports stay short.
pub fn geometric_list<R: Rng>(rng: &mut R, max_n: usize) -> Vec<f64> {
    let n = rng.gen_range(1..=max_n.max(1));
    (0..n).map(|_| rng.gen_range(0.3..0.95)).collect()
}
