//! Compensated summation and exact-at-integers log-factorials.

use std::sync::OnceLock;

/// Neumaier-compensated accumulator. Used for every probability-mass sum in
/// the crate so that truncation bookkeeping stays meaningful at the 1e-12
/// scale even over long supports.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Sum a slice with compensation.
pub fn kahan_sum(xs: &[f64]) -> f64 {
    let mut acc = KahanSum::new();
    for &x in xs {
        acc.add(x);
    }
    acc.value()
}

const LN_FACT_TABLE_LEN: usize = 1025;

fn ln_fact_table() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = vec![0.0; LN_FACT_TABLE_LEN];
        let mut acc = KahanSum::new();
        for i in 1..LN_FACT_TABLE_LEN {
            acc.add((i as f64).ln());
            t[i] = acc.value();
        }
        t
    })
}

/// ln(k!) as a cumulative sum of ln(i) for small k, Stirling series beyond.
///
/// The cumulative table makes consecutive differences locally exact, which is
/// what keeps the Poisson recurrence lambda*P(x) = (x+1)*P(x+1) accurate to
/// ~1e-13 relative across the whole working range.
pub fn ln_factorial(k: u64) -> f64 {
    let table = ln_fact_table();
    if (k as usize) < table.len() {
        table[k as usize]
    } else {
        stirling_ln_factorial(k as f64)
    }
}

fn stirling_ln_factorial(k: f64) -> f64 {
    // ln k! = (k + 1/2) ln k - k + ln(2*pi)/2 + 1/(12k) - 1/(360k^3) + 1/(1260k^5)
    // Next omitted term is < 1e-28 for k > 1024.
    let ln_two_pi = (2.0 * std::f64::consts::PI).ln();
    let inv = 1.0 / k;
    let inv2 = inv * inv;
    (k + 0.5) * k.ln() - k + 0.5 * ln_two_pi + inv * (1.0 / 12.0)
        - inv * inv2 * (1.0 / 360.0)
        + inv * inv2 * inv2 * (1.0 / 1260.0)
}
