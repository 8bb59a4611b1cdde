use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Physicists' Hermite polynomial `Hₙ(k)` by the three-term recurrence
/// `Hₙ₊₁ = 2k Hₙ - 2n Hₙ₋₁`.
///
/// Fails with [`Error::Overflow`] once an intermediate value leaves the
/// double range; use [`hermite_weighted`] for large `n`.
pub fn hermite_phys(n: u32, k: f64) -> Result<f64> {
    if !k.is_finite() {
        return Err(Error::Domain(format!("non-finite argument {k}")));
    }
    let mut prev = 1.0;
    if n == 0 {
        return Ok(prev);
    }
    let mut cur = 2.0 * k;
    for j in 1..n {
        let next = 2.0 * k * cur - 2.0 * f64::from(j) * prev;
        if !next.is_finite() {
            return Err(Error::Overflow(format!("H_{n}({k}) exceeds double range")));
        }
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Normalized Hermite function `e^{-k²/2} Hₙ(k) / (π^{1/4} 2^{n/2} √n!)`.
///
/// Non-finite `k` propagates to a NaN result.
pub fn hermite_weighted(n: u32, k: f64) -> f64 {
    *hermite_weighted_all(n, k).last().expect("nmax + 1 entries")
}

// Rescaling threshold for the unnormalized recurrence.
const BIG: f64 = 1e150;

/// Normalized Hermite functions of orders `0..=nmax` at `k`.
///
/// The recurrence `ψₙ₊₁ = √(2/(n+1)) k ψₙ - √(n/(n+1)) ψₙ₋₁` is run on an
/// unweighted seed `ψ₀ = 1` with a tracked log-scale; the Gaussian factor is
/// applied per entry at the end so nothing under- or overflows for
/// `nmax ≤ 10⁴` at any `k`.
pub fn hermite_weighted_all(nmax: u32, k: f64) -> Vec<f64> {
    let len = nmax as usize + 1;
    if !k.is_finite() {
        return vec![f64::NAN; len];
    }
    let base = -0.5 * k * k - 0.25 * PI.ln();
    let mut out = Vec::with_capacity(len);
    let mut log_scale = 0.0;
    let finish = |v: f64, s: f64| -> f64 {
        if v == 0.0 {
            0.0
        } else {
            v.signum() * (v.abs().ln() + s + base).exp()
        }
    };

    let mut prev = 0.0;
    let mut cur = 1.0;
    out.push(finish(cur, log_scale));
    for j in 0..nmax {
        let jf = f64::from(j);
        let next = (2.0 / (jf + 1.0)).sqrt() * k * cur - (jf / (jf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
        if cur.abs() > BIG {
            cur /= BIG;
            prev /= BIG;
            log_scale += BIG.ln();
        }
        out.push(finish(cur, log_scale));
    }
    out
}
