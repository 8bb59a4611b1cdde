use std::f64::consts::PI;
use std::sync::OnceLock;

/// Largest `n` whose `ln n!` is served from the summed table.
pub const LN_FACTORIAL_TABLE_MAX: u64 = 1_000_000;

fn table() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut out = Vec::with_capacity(LN_FACTORIAL_TABLE_MAX as usize + 1);
        // Neumaier-compensated running sum of ln k
        let (mut sum, mut comp) = (0.0f64, 0.0f64);
        out.push(0.0);
        for k in 1..=LN_FACTORIAL_TABLE_MAX {
            let term = (k as f64).ln();
            let t = sum + term;
            if sum.abs() >= term.abs() {
                comp += (sum - t) + term;
            } else {
                comp += (term - t) + sum;
            }
            sum = t;
            out.push(sum + comp);
        }
        out
    })
}

/// `ln n!`: summed and cached up to [`LN_FACTORIAL_TABLE_MAX`], Stirling
/// series beyond.
pub fn ln_factorial(n: u64) -> f64 {
    if n <= LN_FACTORIAL_TABLE_MAX {
        table()[n as usize]
    } else {
        ln_gamma_asymptotic(n as f64 + 1.0)
    }
}

// ln Γ(x) for large x; five correction terms are exact to rounding once x > 10⁶.
fn ln_gamma_asymptotic(x: f64) -> f64 {
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let series = inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 * (1.0 / 1680.0 - inv2 / 1188.0))));
    (x - 0.5) * x.ln() - x + 0.5 * (2.0 * PI).ln() + series
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// `ln |Γ(x)|` for real `x` that is not a non-positive integer.
///
/// Positive integers go through [`ln_factorial`], everything else through a
/// Lanczos sum (g = 7) with reflection below one half.
pub fn ln_gamma(x: f64) -> f64 {
    if x > 0.0 && x.fract() == 0.0 && x <= (LN_FACTORIAL_TABLE_MAX + 1) as f64 {
        return ln_factorial(x as u64 - 1);
    }
    if x > 1e7 {
        return ln_gamma_asymptotic(x);
    }
    if x < 0.5 {
        // Γ(x)Γ(1-x) = π / sin(πx)
        return (PI / (PI * x).sin().abs()).ln() - ln_gamma(1.0 - x);
    }
    let z = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + acc.ln()
}

/// Coefficients of the asymptotic series `Γ(n) ≈ √(2π) n^{n-½} e^{-n} Σ cⱼ n^{-j}`.
pub const STIRLING_COEFFS: [f64; 5] = [
    1.0,
    1.0 / 12.0,
    1.0 / 288.0,
    -139.0 / 51840.0,
    -571.0 / 2_488_320.0,
];

/// Stirling approximation of `Γ(n)` keeping series terms up to `n^{-order}`.
///
/// `order` is clamped to 4. Evaluated in log space so large `n` saturates to
/// infinity rather than producing `inf * 0`.
pub fn gamma_stirling(n: f64, order: usize) -> f64 {
    let order = order.min(4);
    let mut series = 0.0;
    let mut pow = 1.0;
    for c in STIRLING_COEFFS.iter().take(order + 1) {
        series += c * pow;
        pow /= n;
    }
    let ln_lead = 0.5 * (2.0 * PI).ln() + (n - 0.5) * n.ln() - n;
    ln_lead.exp() * series
}
