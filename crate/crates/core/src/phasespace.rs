//! Continuous phase space `(q, p)` with the operators
//! `Pⱼ = (pⱼ - i∂_{qʲ})/√2` and `Qᵏ = (qᵏ + i∂_{pₖ})/√2`, applied by central
//! differences, together with their eigenfunctions, the singular potential
//! `Ω₀ = e^{-ip·q}/(4√2π|q|)` and the canonical action of rigid motions.

use std::f64::consts::{PI, SQRT_2};
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::continuum::{IsometryParams, Point3};
use crate::error::{Error, Result};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Default finite-difference step.
pub const DEFAULT_STEP: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhasePoint {
    pub q: Point3,
    pub p: Point3,
}

impl PhasePoint {
    pub fn new(q: [f64; 3], p: [f64; 3]) -> Self {
        Self { q: Point3::from(q), p: Point3::from(p) }
    }

    fn shifted(&self, momentum: bool, axis: usize, by: f64) -> Self {
        let mut z = *self;
        if momentum {
            z.p[axis] += by;
        } else {
            z.q[axis] += by;
        }
        z
    }
}

type Func = dyn Fn(&PhasePoint) -> Complex64 + Send + Sync;
type Pred = dyn Fn(&PhasePoint) -> bool + Send + Sync;

/// A complex function on phase space with a declared singular set.
///
/// Cloning is cheap; derived fields (for example `P ψ`) share the original.
#[derive(Clone)]
pub struct PhaseField {
    func: Arc<Func>,
    singular: Arc<Pred>,
}

impl fmt::Debug for PhaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("PhaseField { .. }")
    }
}

impl PhaseField {
    pub fn new(func: impl Fn(&PhasePoint) -> Complex64 + Send + Sync + 'static) -> Self {
        Self { func: Arc::new(func), singular: Arc::new(|_| false) }
    }

    pub fn with_singular_set(self, singular: impl Fn(&PhasePoint) -> bool + Send + Sync + 'static) -> Self {
        Self { singular: Arc::new(singular), ..self }
    }

    pub fn is_singular(&self, z: &PhasePoint) -> bool {
        (self.singular)(z)
    }

    pub fn eval(&self, z: &PhasePoint) -> Result<Complex64> {
        if self.is_singular(z) {
            return Err(Error::Singular(format!("field evaluated at singular point q={:?}", z.q.as_slice())));
        }
        Ok((self.func)(z))
    }

    fn stencil(&self, z: &PhasePoint, momentum: bool, axis: usize, h: f64) -> Result<(Complex64, Complex64, Complex64)> {
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::Domain(format!("step must be positive, got {h}")));
        }
        if axis > 2 {
            return Err(Error::Domain(format!("axis {axis} out of range")));
        }
        let plus = z.shifted(momentum, axis, h);
        let minus = z.shifted(momentum, axis, -h);
        for node in [z, &plus, &minus] {
            if self.is_singular(node) {
                return Err(Error::Stencil(format!("stencil node q={:?} is singular", node.q.as_slice())));
            }
        }
        Ok(((self.func)(&minus), (self.func)(z), (self.func)(&plus)))
    }

    /// The field `Pⱼ ψ` with step `h`.
    pub fn apply_p(&self, axis: usize, h: f64) -> PhaseField {
        let inner = self.clone();
        PhaseField {
            func: Arc::new(move |z| apply_p(&inner, axis, z, h).unwrap_or(Complex64::new(f64::NAN, f64::NAN))),
            singular: self.singular.clone(),
        }
    }

    /// The field `Qᵏ ψ` with step `h`.
    pub fn apply_q(&self, axis: usize, h: f64) -> PhaseField {
        let inner = self.clone();
        PhaseField {
            func: Arc::new(move |z| apply_q(&inner, axis, z, h).unwrap_or(Complex64::new(f64::NAN, f64::NAN))),
            singular: self.singular.clone(),
        }
    }
}

/// `(pⱼ ψ - i ∂_{qʲ} ψ)/√2` by central differences.
pub fn apply_p(psi: &PhaseField, axis: usize, z: &PhasePoint, h: f64) -> Result<Complex64> {
    let (minus, centre, plus) = psi.stencil(z, false, axis, h)?;
    let d = (plus - minus) / (2.0 * h);
    Ok((z.p[axis] * centre - I * d) / SQRT_2)
}

/// `(qᵏ ψ + i ∂_{pₖ} ψ)/√2` by central differences.
pub fn apply_q(psi: &PhaseField, axis: usize, z: &PhasePoint, h: f64) -> Result<Complex64> {
    let (minus, centre, plus) = psi.stencil(z, true, axis, h)?;
    let d = (plus - minus) / (2.0 * h);
    Ok((z.q[axis] * centre + I * d) / SQRT_2)
}

/// `(PⱼQᵏ - QᵏPⱼ)ψ` by nested differences; tends to `-i δⱼᵏ ψ`.
pub fn commutator_pq(psi: &PhaseField, j: usize, k: usize, z: &PhasePoint, h: f64) -> Result<Complex64> {
    let pq = apply_p(&psi.apply_q(k, h), j, z, h)?;
    let qp = apply_q(&psi.apply_p(j, h), k, z, h)?;
    Ok(pq - qp)
}

fn nonzero(a: Complex64) -> Result<()> {
    if a == Complex64::new(0.0, 0.0) || !a.is_finite() {
        return Err(Error::Validation(format!("amplitude must be finite and nonzero, got {a}")));
    }
    Ok(())
}

/// Momentum eigenfunction `A exp[i(√2 kⱼ - pⱼ) qʲ]`, eigenvalue `kⱼ` of `Pⱼ`.
pub fn psi_momentum(k: [f64; 3], z: &PhasePoint, amplitude: Complex64) -> Result<Complex64> {
    nonzero(amplitude)?;
    let phase: f64 = (0..3).map(|j| (SQRT_2 * k[j] - z.p[j]) * z.q[j]).sum();
    Ok(amplitude * Complex64::from_polar(1.0, phase))
}

/// Position eigenfunction `B exp[-i(√2 xʲ - qʲ) pⱼ]`, eigenvalue `xᵏ` of `Qᵏ`.
pub fn psi_position(x: [f64; 3], z: &PhasePoint, amplitude: Complex64) -> Result<Complex64> {
    nonzero(amplitude)?;
    let phase: f64 = (0..3).map(|j| (SQRT_2 * x[j] - z.q[j]) * z.p[j]).sum();
    Ok(amplitude * Complex64::from_polar(1.0, -phase))
}

pub fn momentum_field(k: [f64; 3], amplitude: Complex64) -> Result<PhaseField> {
    nonzero(amplitude)?;
    Ok(PhaseField::new(move |z| psi_momentum(k, z, amplitude).expect("amplitude checked")))
}

pub fn position_field(x: [f64; 3], amplitude: Complex64) -> Result<PhaseField> {
    nonzero(amplitude)?;
    Ok(PhaseField::new(move |z| psi_position(x, z, amplitude).expect("amplitude checked")))
}

/// `e^{-i p·q} / (4√2 π |q|)`.
pub fn omega0(z: &PhasePoint) -> Result<Complex64> {
    let r = z.q.norm();
    if r == 0.0 {
        return Err(Error::Singular("Ω0 diverges at q = 0".into()));
    }
    Ok(Complex64::from_polar(1.0 / (4.0 * SQRT_2 * PI * r), -z.p.dot(&z.q)))
}

pub fn omega0_field() -> PhaseField {
    PhaseField::new(|z| omega0(z).unwrap_or(Complex64::new(f64::INFINITY, 0.0))).with_singular_set(|z| z.q.norm() == 0.0)
}

/// `-½ Σⱼ (pⱼ - i∂_{qʲ})² ψ = -½ (|p|² ψ - 2i p·∇_q ψ - ∇_q² ψ)` with
/// second-order central stencils.
pub fn potential_residual(psi: &PhaseField, z: &PhasePoint, h: f64) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..3 {
        let (minus, centre, plus) = psi.stencil(z, false, j, h)?;
        let d1 = (plus - minus) / (2.0 * h);
        let d2 = (plus - 2.0 * centre + minus) / (h * h);
        let pj = z.p[j];
        acc += pj * pj * centre - 2.0 * I * pj * d1 - d2;
    }
    Ok(-0.5 * acc)
}

/// [`potential_residual`] of `Ω₀`.
pub fn pde_residual_omega(z: &PhasePoint, h: f64) -> Result<Complex64> {
    potential_residual(&omega0_field(), z, h)
}

/// `q̂ = c + R q`, `p̂ = R p`.
pub fn canonical_io3(z: &PhasePoint, g: &IsometryParams) -> PhasePoint {
    PhasePoint { q: g.translation() + g.rotation() * z.q, p: g.rotation() * z.p }
}

/// Generating function `S(q, p̂) = (c + R q)·p̂`; `∂S/∂p̂ = q̂` and `∂S/∂q = p`.
pub fn generating_function(g: &IsometryParams, q: &Point3, p_hat: &Point3) -> f64 {
    (g.translation() + g.rotation() * q).dot(p_hat)
}

/// `p̂·δq̂ - p·δq` for a displacement `δq` at fixed `c`; zero for a canonical map.
pub fn one_form_defect(z: &PhasePoint, dq: &Point3, g: &IsometryParams) -> f64 {
    let moved = canonical_io3(z, g);
    let dq_hat = g.rotation() * dq;
    moved.p.dot(&dq_hat) - z.p.dot(dq)
}
