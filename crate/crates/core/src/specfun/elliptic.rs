use std::f64::consts::PI;

use crate::error::{domain, Result};

const MAX_ITER: usize = 64;

/// Arithmetic-geometric mean of two non-negative numbers.
pub fn agm(mut a: f64, mut b: f64) -> f64 {
    for _ in 0..MAX_ITER {
        if (a - b).abs() <= 4.0 * f64::EPSILON * a.abs() {
            break;
        }
        let next = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = next;
    }
    0.5 * (a + b)
}

/// Complete elliptic integral of the first kind in the modulus convention,
/// `K(k) = ∫₀^{π/2} dθ / √(1 - k² sin²θ)`, via `K = π / (2 AGM(1, √(1-k²)))`.
pub fn elliptic_k(k: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&k) {
        return domain(format!("elliptic modulus {k} outside [0, 1)"));
    }
    let kc = ((1.0 - k) * (1.0 + k)).sqrt();
    Ok(PI / (2.0 * agm(1.0, kc)))
}
