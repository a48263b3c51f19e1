//! Adaptive Simpson quadrature with Richardson correction.

use crate::{Error, Result};

/// Controls for the smoothing-integral quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub t_max: f64,
    pub abs_tol: f64,
    pub max_depth: u32,
}

impl QuadratureSpec {
    pub fn new(t_max: f64, abs_tol: f64, max_depth: u32) -> Result<Self> {
        if !(t_max > 0.0) || !t_max.is_finite() {
            return Err(Error::InvalidParameter(format!("t_max = {t_max}")));
        }
        if !(abs_tol > 0.0) || !abs_tol.is_finite() {
            return Err(Error::InvalidParameter(format!("abs_tol = {abs_tol}")));
        }
        Ok(Self {
            t_max,
            abs_tol,
            max_depth,
        })
    }

    /// Default window for a mean-lambda input: the integrand decays at least
    /// like lambda/(lambda+t)^2, so 50*(1+lambda) leaves only a tail that the
    /// analytic estimate covers.
    pub fn default_for(lambda: f64) -> Self {
        Self {
            t_max: 50.0 * (1.0 + lambda),
            abs_tol: 1e-5,
            max_depth: 40,
        }
    }
}

/// Integrate f over [a, b] to absolute tolerance `abs_tol`. Errors out if a
/// subinterval still fails its share of the tolerance at `max_depth`.
pub fn adaptive_simpson<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    max_depth: u32,
) -> Result<f64> {
    let m = 0.5 * (a + b);
    let fa = f(a);
    let fm = f(m);
    let fb = f(b);
    let whole = (b - a) * (fa + 4.0 * fm + fb) / 6.0;
    simpson_step(&mut f, a, m, b, fa, fm, fb, whole, abs_tol, max_depth)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step<F: FnMut(f64) -> f64>(
    f: &mut F,
    a: f64,
    m: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> Result<f64> {
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) * (fa + 4.0 * flm + fm) / 6.0;
    let right = (b - m) * (fm + 4.0 * frm + fb) / 6.0;
    let delta = left + right - whole;
    if delta.abs() <= 15.0 * tol {
        return Ok(left + right + delta / 15.0);
    }
    if depth == 0 {
        return Err(Error::QuadratureDidNotConverge);
    }
    let l = simpson_step(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1)?;
    let r = simpson_step(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1)?;
    Ok(l + r)
}
