use std::f64::consts::PI;

use crate::error::{domain, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadratureKind {
    /// Weight 1 on `[-1, 1]`.
    LegendreUnitInterval,
    /// Weight `e^{-x²}` on the real line.
    HermiteWeight,
}

/// Gauss nodes and weights. Nodes are strictly increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub kind: QuadratureKind,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `Σ wᵢ f(xᵢ)`; the weight function is implied by [`QuadratureKind`].
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }

    /// Legendre rule mapped onto `[a, b]`.
    pub fn integrate_on(&self, a: f64, b: f64, f: impl Fn(f64) -> f64) -> f64 {
        debug_assert_eq!(self.kind, QuadratureKind::LegendreUnitInterval);
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        half * self.integrate(|x| f(mid + half * x))
    }

    /// Nodes and weights of the composite rule with `panels` equal panels on
    /// `[a, b]`, in increasing node order.
    pub fn composite(&self, a: f64, b: f64, panels: usize) -> (Vec<f64>, Vec<f64>) {
        debug_assert_eq!(self.kind, QuadratureKind::LegendreUnitInterval);
        let width = (b - a) / panels as f64;
        let mut nodes = Vec::with_capacity(panels * self.len());
        let mut weights = Vec::with_capacity(panels * self.len());
        for p in 0..panels {
            let lo = a + p as f64 * width;
            for (&x, &w) in self.nodes.iter().zip(&self.weights) {
                nodes.push(lo + 0.5 * width * (x + 1.0));
                weights.push(0.5 * width * w);
            }
        }
        (nodes, weights)
    }
}

const MAX_NEWTON: usize = 100;

/// Gauss rule with `n` points, nodes by Newton iteration on the
/// three-term recurrence of the orthogonal family.
pub fn gauss_rule(kind: QuadratureKind, n: usize) -> Result<QuadratureRule> {
    if n == 0 {
        return domain("a Gauss rule needs at least one node");
    }
    let (nodes, weights) = match kind {
        QuadratureKind::LegendreUnitInterval => legendre(n)?,
        QuadratureKind::HermiteWeight => hermite(n)?,
    };
    if nodes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Convergence {
            what: "Gauss node search (duplicate roots)",
            estimate: 0.0,
            tolerance: 0.0,
        });
    }
    Ok(QuadratureRule { nodes, weights, kind })
}

fn legendre(n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut z = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut deriv = 0.0;
        let mut converged = false;
        for _ in 0..MAX_NEWTON {
            let (p, dp) = legendre_eval(n, z);
            deriv = dp;
            let step = p / dp;
            z -= step;
            if step.abs() <= 1e-16 {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::Convergence { what: "Gauss-Legendre Newton", estimate: z, tolerance: 1e-16 });
        }
        let (_, dp) = legendre_eval(n, z);
        if dp.is_finite() {
            deriv = dp;
        }
        let w = 2.0 / ((1.0 - z * z) * deriv * deriv);
        nodes[i] = -z;
        nodes[n - 1 - i] = z;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    Ok((nodes, weights))
}

// P_n(z) and P_n'(z)
fn legendre_eval(n: usize, z: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = z;
    if n == 0 {
        return (1.0, 0.0);
    }
    for j in 2..=n {
        let jf = j as f64;
        let p2 = ((2.0 * jf - 1.0) * z * p1 - (jf - 1.0) * p0) / jf;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    (p1, nf * (z * p1 - p0) / (z * z - 1.0))
}

fn hermite(n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    let m = n.div_ceil(2);
    // Largest root first; initial guesses follow the classic asymptotic
    // placement and then extrapolate from the previous two roots.
    let mut found: Vec<f64> = Vec::with_capacity(m);
    for i in 0..m {
        let mut z = match i {
            0 => (2.0 * nf + 1.0).sqrt() - 1.85575 * (2.0 * nf + 1.0).powf(-1.0 / 6.0),
            1 => found[0] - 1.14 * nf.powf(0.426) / found[0],
            2 => 1.86 * found[1] - 0.86 * found[0],
            3 => 1.91 * found[2] - 0.91 * found[1],
            _ => 2.0 * found[i - 1] - found[i - 2],
        };
        let mut converged = false;
        for _ in 0..MAX_NEWTON {
            let (phi_n, phi_nm1) = hermite_pair(n, z);
            let dphi = (2.0 * nf).sqrt() * phi_nm1 - z * phi_n;
            let step = phi_n / dphi;
            z -= step;
            if step.abs() <= 1e-15 * z.abs().max(1.0) {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::Convergence { what: "Gauss-Hermite Newton", estimate: z, tolerance: 1e-15 });
        }
        if n % 2 == 1 && i == m - 1 {
            z = 0.0;
        }
        let (_, phi_nm1) = hermite_pair(n, z);
        let w = (-z * z - (nf * phi_nm1 * phi_nm1).ln()).exp();
        found.push(z);
        nodes[n - 1 - i] = z;
        nodes[i] = -z;
        weights[n - 1 - i] = w;
        weights[i] = w;
    }
    Ok((nodes, weights))
}

// Normalized Hermite functions (weight e^{-z²/2} included) of orders n and n-1.
fn hermite_pair(n: usize, z: f64) -> (f64, f64) {
    let mut prev = 0.0;
    let mut cur = PI.powf(-0.25) * (-0.5 * z * z).exp();
    for j in 0..n {
        let jf = j as f64;
        let next = (2.0 / (jf + 1.0)).sqrt() * z * cur - (jf / (jf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    (cur, prev)
}
