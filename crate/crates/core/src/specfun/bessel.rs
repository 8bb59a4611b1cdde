//! Exponentially scaled modified Bessel functions `e^{-t} Iₙ(t)` of integer
//! order.
//!
//! Three regimes: the power series for `t < 2`, Miller's downward
//! recurrence normalized by `e^{t} = I₀ + 2 Σ Iₖ` in the middle, and the
//! Hankel asymptotic expansion once `t` is large against `n²`.

use std::f64::consts::PI;

const SERIES_LIMIT: f64 = 2.0;
const RESCALE: f64 = 1e250;

fn asymptotic_threshold(n: u32) -> f64 {
    let n = f64::from(n);
    (2.5 * n * n).max(40.0)
}

/// `e^{-t} Iₙ(t)` for `t ≥ 0`. Negative or NaN `t` gives NaN.
pub fn bessel_i_scaled(n: u32, t: f64) -> f64 {
    if t.is_nan() || t < 0.0 {
        return f64::NAN;
    }
    if t == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    if t.is_infinite() {
        return 0.0;
    }
    if t < SERIES_LIMIT {
        series(n, t)
    } else if t >= asymptotic_threshold(n) {
        asymptotic(n, t)
    } else {
        miller(n, t)[n as usize]
    }
}

/// `e^{-t} Iₖ(t)` for every `k` in `0..=nmax`.
pub fn bessel_i_scaled_all(nmax: u32, t: f64) -> Vec<f64> {
    let len = nmax as usize + 1;
    if t.is_nan() || t < 0.0 {
        return vec![f64::NAN; len];
    }
    if t == 0.0 {
        let mut out = vec![0.0; len];
        out[0] = 1.0;
        return out;
    }
    if t.is_infinite() {
        return vec![0.0; len];
    }
    if t < SERIES_LIMIT {
        return (0..=nmax).map(|k| series(k, t)).collect();
    }
    if t >= asymptotic_threshold(nmax) {
        return (0..=nmax).map(|k| asymptotic(k, t)).collect();
    }
    let mut out = miller(nmax, t);
    out.truncate(len);
    out
}

fn series(n: u32, t: f64) -> f64 {
    // Σ_k (t/2)^{2k+n} / (k! (n+k)!)
    let half = 0.5 * t;
    let q = half * half;
    let mut term = 1.0;
    for j in 1..=n {
        term *= half / f64::from(j);
    }
    let mut sum = term;
    let mut k = 1.0;
    loop {
        term *= q / (k * (k + f64::from(n)));
        sum += term;
        if term <= sum * 1e-17 {
            break;
        }
        k += 1.0;
    }
    sum * (-t).exp()
}

fn asymptotic(n: u32, t: f64) -> f64 {
    let mu = 4.0 * f64::from(n) * f64::from(n);
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..200 {
        let odd = f64::from(2 * k - 1);
        term *= -(mu - odd * odd) / (f64::from(k) * 8.0 * t);
        if term == 0.0 {
            break;
        }
        if term.abs() > last {
            break;
        }
        sum += term;
        last = term.abs();
        if last < 1e-17 * sum.abs() {
            break;
        }
    }
    sum / (2.0 * PI * t).sqrt()
}

// Returns scaled values for orders 0..=start where start ≥ nmax.
fn miller(nmax: u32, t: f64) -> Vec<f64> {
    let reach = f64::from(nmax).max(t);
    let start = (reach + 30.0 + 10.0 * reach.sqrt()).ceil() as usize;
    let mut vals = vec![0.0; start + 2];
    vals[start] = 1e-300;
    let two_over_t = 2.0 / t;
    for k in (1..=start).rev() {
        let next = (k as f64) * two_over_t * vals[k] + vals[k + 1];
        vals[k - 1] = next;
        if next > RESCALE {
            for v in vals[k - 1..].iter_mut() {
                *v /= RESCALE;
            }
        }
    }
    let norm: f64 = vals[0] + 2.0 * vals[1..].iter().rev().sum::<f64>();
    vals.truncate(start + 1);
    for v in vals.iter_mut() {
        *v /= norm;
    }
    vals
}
