//! The simple cubic lattice `ℤ³`: right, left and mean differences, the
//! seven-point Laplacian, and the lattice Green's function
//!
//! ```text
//! U₀(n) = (2π)⁻³ ∫_{[-π,π]³} e^{i n·k} / (4 Σⱼ sin²(kⱼ/2)) d³k
//! ```
//!
//! Writing `1/A = ∫₀^∞ e^{-At} dt` and integrating each `kⱼ` against the
//! generating function of `Iₙ` turns the triple integral into
//! `U₀(n) = ½ ∫₀^∞ Πⱼ e^{-t} I_{|nⱼ|}(t) dt`. The substitution
//! `t = (s/(1-s))²` maps the half line onto `[0, 1)` and makes the integrand
//! smooth at both ends (the `t^{-3/2}` tail becomes a bounded function of
//! `s`), so plain panel Gauss–Legendre reaches full double precision.

use std::f64::consts::PI;

use ndarray::Array3;
use rayon::prelude::*;

use crate::error::{domain, Error, Result};
use crate::specfun::{bessel_i_scaled_all, elliptic_k, gauss_rule, QuadratureKind};

pub type SignedIndex3 = [i64; 3];

/// What a [`LatticeField`] returns for reads outside its box.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutOfBox {
    Error,
    Zero,
}

/// Real values on the box `lo ..= hi` (inclusive per axis).
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeField {
    lo: SignedIndex3,
    values: Array3<f64>,
    policy: OutOfBox,
}

impl LatticeField {
    pub fn zeros(lo: SignedIndex3, hi: SignedIndex3, policy: OutOfBox) -> Result<Self> {
        Self::from_fn(lo, hi, policy, |_| 0.0)
    }

    pub fn from_fn(lo: SignedIndex3, hi: SignedIndex3, policy: OutOfBox, f: impl Fn(SignedIndex3) -> f64) -> Result<Self> {
        if (0..3).any(|a| hi[a] < lo[a]) {
            return domain(format!("empty box {lo:?}..={hi:?}"));
        }
        let shape = ((hi[0] - lo[0] + 1) as usize, (hi[1] - lo[1] + 1) as usize, (hi[2] - lo[2] + 1) as usize);
        let values = Array3::from_shape_fn(shape, |(i, j, k)| f([lo[0] + i as i64, lo[1] + j as i64, lo[2] + k as i64]));
        Ok(Self { lo, values, policy })
    }

    pub fn lo(&self) -> SignedIndex3 {
        self.lo
    }

    pub fn hi(&self) -> SignedIndex3 {
        let (a, b, c) = self.values.dim();
        [self.lo[0] + a as i64 - 1, self.lo[1] + b as i64 - 1, self.lo[2] + c as i64 - 1]
    }

    pub fn policy(&self) -> OutOfBox {
        self.policy
    }

    pub fn contains(&self, n: SignedIndex3) -> bool {
        let hi = self.hi();
        (0..3).all(|a| n[a] >= self.lo[a] && n[a] <= hi[a])
    }

    fn slot(&self, n: SignedIndex3) -> (usize, usize, usize) {
        ((n[0] - self.lo[0]) as usize, (n[1] - self.lo[1]) as usize, (n[2] - self.lo[2]) as usize)
    }

    pub fn get(&self, n: SignedIndex3) -> Result<f64> {
        if self.contains(n) {
            Ok(self.values[self.slot(n)])
        } else {
            match self.policy {
                OutOfBox::Zero => Ok(0.0),
                OutOfBox::Error => domain(format!("index {n:?} outside box {:?}..={:?}", self.lo, self.hi())),
            }
        }
    }

    pub fn set(&mut self, n: SignedIndex3, v: f64) -> Result<()> {
        if !self.contains(n) {
            return domain(format!("index {n:?} outside box"));
        }
        let slot = self.slot(n);
        self.values[slot] = v;
        Ok(())
    }

    /// Every index of the box in row-major order.
    pub fn indices(&self) -> Vec<SignedIndex3> {
        let hi = self.hi();
        let mut out = Vec::with_capacity(self.values.len());
        for a in self.lo[0]..=hi[0] {
            for b in self.lo[1]..=hi[1] {
                for c in self.lo[2]..=hi[2] {
                    out.push([a, b, c]);
                }
            }
        }
        out
    }

    fn shrunk(&self, axis: usize, lo_cut: i64, hi_cut: i64, rule: impl Fn(&Self, SignedIndex3) -> f64) -> Result<Self> {
        if axis > 2 {
            return domain(format!("axis {axis} out of range"));
        }
        let mut lo = self.lo;
        let mut hi = self.hi();
        lo[axis] += lo_cut;
        hi[axis] -= hi_cut;
        if hi[axis] < lo[axis] {
            return domain(format!("box too small along axis {axis} for this difference"));
        }
        Self::from_fn(lo, hi, self.policy, |n| rule(self, n))
    }
}

fn step(n: SignedIndex3, axis: usize, by: i64) -> SignedIndex3 {
    let mut m = n;
    m[axis] += by;
    m
}

/// `f(n + e) - f(n)` on the box shrunk by one at the top of `axis`.
pub fn delta_right(f: &LatticeField, axis: usize) -> Result<LatticeField> {
    f.shrunk(axis, 0, 1, |f, n| f.values[f.slot(step(n, axis, 1))] - f.values[f.slot(n)])
}

/// `f(n) - f(n - e)` on the box shrunk by one at the bottom of `axis`.
pub fn delta_left(f: &LatticeField, axis: usize) -> Result<LatticeField> {
    f.shrunk(axis, 1, 0, |f, n| f.values[f.slot(n)] - f.values[f.slot(step(n, axis, -1))])
}

/// `½[f(n + e) - f(n - e)]` on the box shrunk by one at both ends.
pub fn delta_mean(f: &LatticeField, axis: usize) -> Result<LatticeField> {
    f.shrunk(axis, 1, 1, |f, n| 0.5 * (f.values[f.slot(step(n, axis, 1))] - f.values[f.slot(step(n, axis, -1))]))
}

/// `Σⱼ [f(n + eⱼ) - 2f(n) + f(n - eⱼ)]`; `n` and its six neighbours must lie
/// in the box.
pub fn lattice_laplacian(f: &LatticeField, n: SignedIndex3) -> Result<f64> {
    let neighbours = neighbours(n);
    if !f.contains(n) || neighbours.iter().any(|m| !f.contains(*m)) {
        return domain(format!("{n:?} is not an interior point of the box"));
    }
    let centre = f.values[f.slot(n)];
    Ok(neighbours.iter().map(|m| f.values[f.slot(*m)]).sum::<f64>() - 6.0 * centre)
}

/// `f(n)` minus the arithmetic mean of its six neighbours, which is
/// `-lattice_laplacian / 6`.
pub fn mean_value_defect(f: &LatticeField, n: SignedIndex3) -> Result<f64> {
    let lap = lattice_laplacian(f, n)?;
    Ok(-lap / 6.0)
}

pub fn neighbours(n: SignedIndex3) -> [SignedIndex3; 6] {
    [step(n, 0, 1), step(n, 0, -1), step(n, 1, 1), step(n, 1, -1), step(n, 2, 1), step(n, 2, -1)]
}

/// Panel Gauss–Legendre configuration for the `s ∈ [0, 1]` integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct U0Quadrature {
    pub panels: usize,
    pub points: usize,
}

impl Default for U0Quadrature {
    fn default() -> Self {
        Self { panels: 64, points: 16 }
    }
}

/// Agreement required between the full rule and the half-panel rule.
pub const U0_TOLERANCE: f64 = 1e-10;

struct NodeSet {
    t: Vec<f64>,
    w: Vec<f64>,
}

impl NodeSet {
    fn build(panels: usize, points: usize) -> Result<Self> {
        let rule = gauss_rule(QuadratureKind::LegendreUnitInterval, points)?;
        let (s, ws) = rule.composite(0.0, 1.0, panels);
        let mut t = Vec::with_capacity(s.len());
        let mut w = Vec::with_capacity(s.len());
        for (s, ws) in s.into_iter().zip(ws) {
            let u = 1.0 - s;
            t.push((s / u).powi(2));
            // ½ dt = s/(1-s)³ ds
            w.push(ws * s / (u * u * u));
        }
        Ok(Self { t, w })
    }

    fn integrate(&self, orders: [u32; 3]) -> f64 {
        let top = orders.iter().copied().max().unwrap_or(0);
        self.t
            .iter()
            .zip(&self.w)
            .map(|(&t, &w)| {
                let b = bessel_i_scaled_all(top, t);
                w * b[orders[0] as usize] * b[orders[1] as usize] * b[orders[2] as usize]
            })
            .sum()
    }
}

/// Reusable evaluator for `U₀`.
pub struct LatticeGreen {
    fine: NodeSet,
    coarse: NodeSet,
    quad: U0Quadrature,
}

impl LatticeGreen {
    pub fn new(quad: U0Quadrature) -> Result<Self> {
        if quad.panels < 2 || quad.points == 0 {
            return domain(format!("need at least two panels and one point, got {quad:?}"));
        }
        Ok(Self {
            fine: NodeSet::build(quad.panels, quad.points)?,
            coarse: NodeSet::build(quad.panels / 2, quad.points)?,
            quad,
        })
    }

    pub fn quadrature(&self) -> U0Quadrature {
        self.quad
    }

    /// `U₀(n)`; fails with [`Error::Convergence`] if halving the panel
    /// count moves the result by more than [`U0_TOLERANCE`].
    pub fn eval(&self, n: SignedIndex3) -> Result<f64> {
        let orders = orders(n)?;
        let fine = self.fine.integrate(orders);
        let coarse = self.coarse.integrate(orders);
        let estimate = (fine - coarse).abs();
        if !(estimate <= U0_TOLERANCE) {
            return Err(Error::Convergence { what: "lattice Green's function quadrature", estimate, tolerance: U0_TOLERANCE });
        }
        Ok(fine)
    }

    /// Parallel evaluation; output order follows input order.
    pub fn eval_many(&self, points: &[SignedIndex3]) -> Vec<Result<f64>> {
        points.par_iter().map(|&n| self.eval(n)).collect()
    }
}

fn orders(n: SignedIndex3) -> Result<[u32; 3]> {
    let mut out = [0u32; 3];
    for a in 0..3 {
        out[a] = u32::try_from(n[a].unsigned_abs()).map_err(|_| Error::Domain(format!("index {n:?} too large")))?;
    }
    // sorted so that signed permutations give bit-identical products
    out.sort_unstable();
    Ok(out)
}

/// One-off evaluation of `U₀(n)`.
pub fn u0(n: SignedIndex3, quad: U0Quadrature) -> Result<f64> {
    LatticeGreen::new(quad)?.eval(n)
}

/// `U₀(0,0,0) = ½[18 + 12√2 - 10√3 - 7√6] · ((2/π) K(k))²` with the modulus
/// `k = (2 - √3)(√3 - √2)`.
pub fn u0_origin_closed() -> f64 {
    let (s2, s3, s6) = (2f64.sqrt(), 3f64.sqrt(), 6f64.sqrt());
    let k = (2.0 - s3) * (s3 - s2);
    let kk = elliptic_k(k).expect("modulus lies in [0, 1)");
    0.5 * (18.0 + 12.0 * s2 - 10.0 * s3 - 7.0 * s6) * (2.0 / PI * kk).powi(2)
}

/// Large-`|n|` expansion
/// `1/(4π|n|) + {5 Σ nⱼ⁴ / |n|⁴ - 3} / (32π|n|³)`.
pub fn u0_asymptotic(n: SignedIndex3) -> Result<f64> {
    let x = n.map(|c| c as f64);
    let r2: f64 = x.iter().map(|c| c * c).sum();
    if r2 == 0.0 {
        return domain("the asymptotic expansion is undefined at the origin");
    }
    let r = r2.sqrt();
    Ok(1.0 / (4.0 * PI * r) + anisotropy(n) / (32.0 * PI * r * r2))
}

/// The direction-dependent bracket `5 Σ nⱼ⁴ / |n|⁴ - 3`: 2 along an axis,
/// -4/3 along a body diagonal.
pub fn anisotropy(n: SignedIndex3) -> f64 {
    let x = n.map(|c| c as f64);
    let r2: f64 = x.iter().map(|c| c * c).sum();
    let quartic: f64 = x.iter().map(|c| c.powi(4)).sum();
    5.0 * quartic / (r2 * r2) - 3.0
}

/// `U₀(n)` straight from the Brillouin-zone integral.
///
/// The octant `[0, π]³` is split into the three pyramids on which one
/// coordinate is the largest; with `k_max = r`, the others `r u` and `r v`,
/// the Jacobian `r²` cancels the `1/|k|²` singularity and a tensor
/// Gauss–Legendre rule with `points` nodes per direction converges
/// spectrally. Slow, but independent of the Bessel route.
pub fn u0_brillouin_zone(n: SignedIndex3, points: usize) -> Result<f64> {
    let rule = gauss_rule(QuadratureKind::LegendreUnitInterval, points)?;
    let map = |lo: f64, hi: f64| -> Vec<(f64, f64)> {
        rule.nodes
            .iter()
            .zip(&rule.weights)
            .map(|(&x, &w)| (lo + 0.5 * (hi - lo) * (x + 1.0), 0.5 * (hi - lo) * w))
            .collect()
    };
    let radial = map(0.0, PI);
    let lateral = map(0.0, 1.0);
    let nf = n.map(|c| c as f64);
    let total: f64 = (0..3)
        .into_par_iter()
        .map(|lead| {
            let (a, b) = ((lead + 1) % 3, (lead + 2) % 3);
            let mut sum = 0.0;
            for &(r, wr) in &radial {
                for &(u, wu) in &lateral {
                    for &(v, wv) in &lateral {
                        let mut k = [0.0; 3];
                        k[lead] = r;
                        k[a] = r * u;
                        k[b] = r * v;
                        let denom: f64 = k.iter().map(|x| (0.5 * x).sin().powi(2)).sum();
                        let numer: f64 = (0..3).map(|j| (nf[j] * k[j]).cos()).product();
                        // r² Πcos / Σ sin²; the ratio r²/Σsin² tends to 4/(1+u²+v²)
                        let ratio = if r == 0.0 { 4.0 / (1.0 + u * u + v * v) } else { r * r / denom };
                        sum += wr * wu * wv * numer * ratio;
                    }
                }
            }
            sum
        })
        .collect::<Vec<_>>()
        .into_iter()
        .sum();
    Ok(total / (4.0 * PI.powi(3)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const ORIGIN: f64 = 0.252_731_009_858_663_00;

    fn green() -> LatticeGreen {
        LatticeGreen::new(U0Quadrature::default()).unwrap()
    }

    #[test]
    fn differences_of_simple_fields() {
        let f = LatticeField::from_fn([-3, -2, 0], [4, 2, 1], OutOfBox::Error, |n| n[0] as f64).unwrap();
        let d = delta_right(&f, 0).unwrap();
        assert_eq!(d.hi()[0], 3);
        assert!(d.indices().iter().all(|&n| d.get(n).unwrap() == 1.0));
        let sq = LatticeField::from_fn([-3, 0, 0], [4, 0, 0], OutOfBox::Error, |n| (n[0] * n[0]) as f64).unwrap();
        let m = delta_mean(&sq, 0).unwrap();
        for n in m.indices() {
            assert_eq!(m.get(n).unwrap(), 2.0 * n[0] as f64);
        }
        assert!(delta_mean(&LatticeField::zeros([0, 0, 0], [1, 0, 0], OutOfBox::Zero).unwrap(), 0).is_err());
    }

    #[test]
    fn out_of_box_policies() {
        let f = LatticeField::zeros([0, 0, 0], [1, 1, 1], OutOfBox::Zero).unwrap();
        assert_eq!(f.get([5, 0, 0]).unwrap(), 0.0);
        let g = LatticeField::zeros([0, 0, 0], [1, 1, 1], OutOfBox::Error).unwrap();
        assert!(g.get([-1, 0, 0]).is_err());
    }

    #[test]
    fn laplacian_examples() {
        let c = LatticeField::from_fn([-2, -2, -2], [2, 2, 2], OutOfBox::Error, |_| 3.5).unwrap();
        assert_eq!(lattice_laplacian(&c, [0, 0, 0]).unwrap(), 0.0);
        let q = LatticeField::from_fn([-2, -2, -2], [2, 2, 2], OutOfBox::Error, |n| (n[0] * n[0]) as f64).unwrap();
        assert_eq!(lattice_laplacian(&q, [1, -1, 0]).unwrap(), 2.0);
        assert!(lattice_laplacian(&q, [2, 0, 0]).is_err());
    }

    #[test]
    fn origin_three_ways() {
        let g = green();
        let bessel = g.eval([0, 0, 0]).unwrap();
        assert_relative_eq!(bessel, ORIGIN, max_relative = 1e-12);
        assert_relative_eq!(u0_origin_closed(), ORIGIN, max_relative = 1e-13);
        let bz = u0_brillouin_zone([0, 0, 0], 40).unwrap();
        assert!((bz - ORIGIN).abs() < 1e-9, "{bz}");
    }

    #[test]
    fn extended_precision_values() {
        // mpmath quadrature of the Bessel integral, 40 digits
        let table: [(SignedIndex3, f64); 6] = [
            ([1, 0, 0], 0.086_064_343_191_996_336),
            ([1, 1, 0], 0.055_191_433_687_737_317),
            ([1, 1, 1], 0.043_578_354_397_725_526),
            ([2, 1, 0], 0.035_931_603_473_490_089),
            ([3, 2, 1], 0.021_157_661_967_896_127),
            ([12, 12, 12], 0.003_827_194_134_371_619_4),
        ];
        let g = green();
        for (n, v) in table {
            assert!((g.eval(n).unwrap() - v).abs() < 1e-12, "{n:?}");
        }
    }

    #[test]
    fn symmetry_under_signs_and_permutations() {
        let g = green();
        let a = g.eval([1, -2, 0]).unwrap();
        assert_eq!(a, g.eval([2, 1, 0]).unwrap());
        assert_eq!(a, g.eval([0, 1, 2]).unwrap());
    }

    #[test]
    fn asymptotic_bracket() {
        assert_eq!(anisotropy([7, 0, 0]), 2.0);
        let r = 10.0;
        let want = 1.0 / (4.0 * PI * r) + 1.0 / (16.0 * PI * r.powi(3));
        assert_relative_eq!(u0_asymptotic([10, 0, 0]).unwrap(), want, max_relative = 1e-15);
        assert!(u0_asymptotic([10, 0, 0]).unwrap() != u0_asymptotic([6, 8, 0]).unwrap());
        assert!(u0_asymptotic([0, 0, 0]).is_err());
    }

    #[test]
    fn coarse_rules_report_non_convergence() {
        let g = LatticeGreen::new(U0Quadrature { panels: 2, points: 3 }).unwrap();
        assert!(matches!(g.eval([0, 0, 0]), Err(Error::Convergence { .. })));
    }
}
