//! Reference computations written without the library's evaluators, so that
//! agreement between the two is evidence rather than tautology.

#![allow(dead_code)]

use std::f64::consts::PI;

/// Normalised Hermite functions `ψ₀..=ψ_nmax` at `k`, by the three-term
/// recurrence `ψ_{n+1} = √(2/(n+1)) k ψₙ - √(n/(n+1)) ψ_{n-1}`.
pub fn hermite_functions(nmax: usize, k: f64) -> Vec<f64> {
    let mut out = vec![0.0; nmax + 1];
    out[0] = PI.powf(-0.25) * (-0.5 * k * k).exp();
    if nmax >= 1 {
        out[1] = 2f64.sqrt() * k * out[0];
    }
    for n in 1..nmax {
        let nf = n as f64;
        out[n + 1] = (2.0 / (nf + 1.0)).sqrt() * k * out[n] - (nf / (nf + 1.0)).sqrt() * out[n - 1];
    }
    out
}

/// `W₀(0,0,2n)` straight from the momentum-space integral
/// `∫ d³k |k|⁻² Πⱼ gⱼ(kⱼ)` with `g_s(k) = π^{-1/2} (-1)^s H_{2s}(k) e^{-k²} / (2^s √(2s)!)`.
///
/// `|k|⁻² = ∫₀^∞ e^{-t|k|²} dt` factorises the integral. Each factor is
/// done by the trapezoid rule in `y = k√(1+t)`, and the `t` integral by the
/// trapezoid rule in `x = ln t`; both integrands are analytic in a strip, so
/// the trapezoid rule converges geometrically.
pub fn w0_axis_schwinger(n: usize) -> f64 {
    let factor = |s: usize, t: f64| -> f64 {
        let scale = (1.0 + t).sqrt();
        let (h, half) = (0.04, 350);
        let sign = if s % 2 == 0 { 1.0 } else { -1.0 };
        let mut acc = 0.0;
        for i in -half..=half {
            let y = i as f64 * h;
            let k = y / scale;
            // H_{2s}(k) e^{-k²} / (2^s √(2s)!) = π^{1/4} ψ_{2s}(k) e^{-k²/2}
            let psi = hermite_functions(2 * s, k)[2 * s];
            acc += (-t * k * k).exp() * PI.powf(0.25) * psi * (-0.5 * k * k).exp();
        }
        sign * acc * h / scale / PI.sqrt()
    };
    let (lo, hi, h) = (-40.0, 80.0, 0.1);
    let steps = ((hi - lo) / h) as usize;
    let mut total = 0.0;
    for i in 0..=steps {
        let x: f64 = lo + i as f64 * h;
        let t = x.exp();
        let g0 = factor(0, t);
        total += t * g0 * g0 * factor(n, t);
    }
    total * h
}

/// `W₀(2s₁, 2s₂, 2s₃) = 2^{S+1} S! / (2S+1)!! · Πⱼ √(2sⱼ)! / (2^{sⱼ} sⱼ!)`
/// in plain products; 0 for odd components. Valid for small totals.
pub fn w0_product(m: [i64; 3]) -> f64 {
    if m.iter().any(|&c| c < 0 || c % 2 != 0) {
        return 0.0;
    }
    let s: Vec<u64> = m.iter().map(|&c| (c / 2) as u64).collect();
    let total: u64 = s.iter().sum();
    let fact = |n: u64| (1..=n).map(|i| i as f64).product::<f64>();
    let double_fact = |n: u64| (1..=n).filter(|i| i % 2 == 1).map(|i| i as f64).product::<f64>();
    let head = 2f64.powi(total as i32 + 1) * fact(total) / double_fact(2 * total + 1);
    let tail: f64 = s.iter().map(|&sj| fact(2 * sj).sqrt() / (2f64.powi(sj as i32) * fact(sj))).product();
    head * tail
}

/// `Σⱼ Δ#ⱼΔ#ⱼ w` at `m`, with `Δ#Δ# f(n) = ½[√((n+1)(n+2)) f(n+2) - (2n+1) f(n) + √(n(n-1)) f(n-2)]`.
pub fn sharp_sharp_sum(w: impl Fn([i64; 3]) -> f64, m: [i64; 3]) -> f64 {
    let mut acc = 0.0;
    for j in 0..3 {
        let n = m[j] as f64;
        let mut up = m;
        up[j] += 2;
        let mut down = m;
        down[j] -= 2;
        let lower = if m[j] >= 2 { (n * (n - 1.0)).sqrt() * w(down) } else { 0.0 };
        acc += 0.5 * (((n + 1.0) * (n + 2.0)).sqrt() * w(up) - (2.0 * n + 1.0) * w(m) + lower);
    }
    acc
}

/// Gauss–Legendre nodes and weights on `[-1, 1]` by Newton iteration on
/// the three-term recurrence.
pub fn legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let step = p1 / dp;
            z -= step;
            if step.abs() < 1e-16 {
                let dp = {
                    let (mut q0, mut q1) = (1.0, z);
                    for k in 2..=n {
                        let kf = k as f64;
                        let q2 = ((2.0 * kf - 1.0) * z * q1 - (kf - 1.0) * q0) / kf;
                        q0 = q1;
                        q1 = q2;
                    }
                    n as f64 * (z * q1 - q0) / (z * z - 1.0)
                };
                w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
                break;
            }
        }
        x[i] = z;
    }
    (x, w)
}

/// `U₀(n)` from the Brillouin-zone integral with the `k₃` integral done in
/// closed form, `∫₀^π cos(m k) dk / (a - cos k) = π (a - √(a²-1))^m / √(a²-1)`,
/// leaving `(2π²)⁻¹ ∫∫_{[0,π]²} cos(n₁k₁) cos(n₂k₂) (a - √(a²-1))^{|n₃|} / √(a²-1)`
/// with `a = 3 - cos k₁ - cos k₂`. Each half of the square is mapped by
/// `(r, ru)`, whose Jacobian `r` removes the `1/|k|` singularity.
pub fn u0_reduced_bz(n: [i64; 3], points: usize) -> f64 {
    let (x, w) = legendre(points);
    let n3 = n[2].unsigned_abs() as i32;
    let integrand = |k1: f64, k2: f64| -> f64 {
        let am1 = 2.0 * (0.5 * k1).sin().powi(2) + 2.0 * (0.5 * k2).sin().powi(2);
        let root = (am1 * (am1 + 2.0)).sqrt();
        let a = 1.0 + am1;
        (n[0] as f64 * k1).cos() * (n[1] as f64 * k2).cos() * (a - root).powi(n3) / root
    };
    let mut acc = 0.0;
    for (&xr, &wr) in x.iter().zip(&w) {
        let r = 0.5 * PI * (xr + 1.0);
        for (&xu, &wu) in x.iter().zip(&w) {
            let u = 0.5 * (xu + 1.0);
            let weight = wr * wu * 0.5 * PI * 0.5 * r;
            acc += weight * (integrand(r, r * u) + integrand(r * u, r));
        }
    }
    acc / (2.0 * PI * PI)
}
