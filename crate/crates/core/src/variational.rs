//! Discrete variational calculus on a rectangle of `ℕ²` for the action
//! `J[f] = Σ ½ Σ_A (Δ#_A f)²`.
//!
//! The first variation `δJ = Σ Σ_A (Δ#_A f)(Δ#_A h)` splits, through the
//! product rule
//!
//! ```text
//! φ Δ#_A h + h Δ#_A φ = Δ_A { √(n_A/2) [φ(n) h(n - e_A) + h(n) φ(n - e_A)] }
//! ```
//!
//! and telescoping of the right difference `Δ_A`, into an Euler–Lagrange
//! volume sum `Σ (-Σ_A Δ#_A Δ#_A f) h` and fluxes through the four edges of
//! the box.
//!
//! Index conventions: the box is `N¹₁ ≤ n¹ ≤ N¹₂`, `N²₁ ≤ n² ≤ N²₂`; the
//! interior is `N^A₁ < n^A ≤ N^A₂`. Fields carry a two-cell collar around the
//! box and read as 0 at negative indices.

use std::f64::consts::FRAC_1_SQRT_2;

use ndarray::Array2;

use crate::error::{domain, Result};
use crate::rng::Sampler;

pub type Index2 = [i64; 2];

const COLLAR: i64 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RectDomain2 {
    /// `(N^A₁, N^A₂)` for each axis.
    pub bounds: [(i64, i64); 2],
}

impl RectDomain2 {
    pub fn new(axis1: (i64, i64), axis2: (i64, i64)) -> Result<Self> {
        for (lo, hi) in [axis1, axis2] {
            if lo < 0 || hi < lo {
                return domain(format!("invalid bounds ({lo}, {hi})"));
            }
        }
        Ok(Self { bounds: [axis1, axis2] })
    }

    pub fn box_points(&self) -> Vec<Index2> {
        let [(a0, a1), (b0, b1)] = self.bounds;
        (a0..=a1).flat_map(|i| (b0..=b1).map(move |j| [i, j])).collect()
    }

    pub fn is_interior(&self, n: Index2) -> bool {
        (0..2).all(|a| n[a] > self.bounds[a].0 && n[a] <= self.bounds[a].1)
    }

    pub fn interior_points(&self) -> Vec<Index2> {
        self.box_points().into_iter().filter(|&n| self.is_interior(n)).collect()
    }

    /// The four index lines per axis on which a variation must vanish for
    /// every boundary term to drop: `n^A ∈ {N^A₂+1, N^A₂, N^A₁-1, N^A₁}`
    /// with the other index running over its box range.
    pub fn admissible_boundary(&self) -> Vec<Index2> {
        let mut out = Vec::new();
        for axis in 0..2 {
            let other = 1 - axis;
            let (lo, hi) = self.bounds[axis];
            let (olo, ohi) = self.bounds[other];
            for line in [hi + 1, hi, lo - 1, lo] {
                for m in olo..=ohi {
                    let mut n = [0; 2];
                    n[axis] = line;
                    n[other] = m;
                    if !out.contains(&n) {
                        out.push(n);
                    }
                }
            }
        }
        out
    }
}

/// Real values on the box of a [`RectDomain2`] plus a two-cell collar.
#[derive(Debug, Clone, PartialEq)]
pub struct Field2 {
    lo: Index2,
    values: Array2<f64>,
}

impl Field2 {
    pub fn zeros(dom: &RectDomain2) -> Self {
        Self::from_fn(dom, |_| 0.0)
    }

    /// Values from `f`; indices with a negative component are stored as 0.
    pub fn from_fn(dom: &RectDomain2, f: impl Fn(Index2) -> f64) -> Self {
        let lo = [dom.bounds[0].0 - COLLAR, dom.bounds[1].0 - COLLAR];
        let shape = (
            (dom.bounds[0].1 - dom.bounds[0].0 + 1 + 2 * COLLAR) as usize,
            (dom.bounds[1].1 - dom.bounds[1].0 + 1 + 2 * COLLAR) as usize,
        );
        let values = Array2::from_shape_fn(shape, |(i, j)| {
            let n = [lo[0] + i as i64, lo[1] + j as i64];
            if n[0] < 0 || n[1] < 0 {
                0.0
            } else {
                f(n)
            }
        });
        Self { lo, values }
    }

    /// Uniform `[-1, 1]` values.
    pub fn random(dom: &RectDomain2, rng: &mut Sampler) -> Self {
        let mut out = Self::zeros(dom);
        for ((i, j), v) in out.values.indexed_iter_mut() {
            if out.lo[0] + i as i64 >= 0 && out.lo[1] + j as i64 >= 0 {
                *v = rng.symmetric();
            }
        }
        out
    }

    /// Value at `n`: 0 for negative indices, an error beyond the collar.
    pub fn get(&self, n: Index2) -> Result<f64> {
        if n[0] < 0 || n[1] < 0 {
            return Ok(0.0);
        }
        let (i, j) = (n[0] - self.lo[0], n[1] - self.lo[1]);
        let (a, b) = self.values.dim();
        if i < 0 || j < 0 || i >= a as i64 || j >= b as i64 {
            return domain(format!("index {n:?} lies outside the stored collar"));
        }
        Ok(self.values[[i as usize, j as usize]])
    }

    pub fn set(&mut self, n: Index2, v: f64) -> Result<()> {
        let (i, j) = (n[0] - self.lo[0], n[1] - self.lo[1]);
        let (a, b) = self.values.dim();
        if n[0] < 0 || n[1] < 0 || i < 0 || j < 0 || i >= a as i64 || j >= b as i64 {
            return domain(format!("index {n:?} is not storable"));
        }
        self.values[[i as usize, j as usize]] = v;
        Ok(())
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self { lo: self.lo, values: &self.values * c }
    }

    pub fn plus(&self, other: &Self, c: f64) -> Self {
        Self { lo: self.lo, values: &self.values + &(&other.values * c) }
    }

    /// Zero the field on every point of `set` that is stored.
    pub fn vanish_on(&mut self, set: &[Index2]) {
        for &n in set {
            let _ = self.set(n, 0.0);
        }
    }
}

/// A variation `h` together with the amplitude `ε` it enters with.
#[derive(Debug, Clone, PartialEq)]
pub struct Variation2 {
    pub h: Field2,
    pub eps: f64,
}

impl Variation2 {
    /// `f + ε h`.
    pub fn apply(&self, f: &Field2) -> Field2 {
        f.plus(&self.h, self.eps)
    }
}

/// `L(y; y₁, y₂) = ½ δ^{AB} y_A y_B` with `y_A = Δ#_A f`; it has no
/// explicit dependence on `y = f(n)`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct QuadLagrangian;

impl QuadLagrangian {
    pub fn value(&self, _y: f64, ya: [f64; 2]) -> f64 {
        0.5 * (ya[0] * ya[0] + ya[1] * ya[1])
    }

    pub fn d_dy(&self, _y: f64, _ya: [f64; 2]) -> f64 {
        0.0
    }

    pub fn d_dya(&self, _y: f64, ya: [f64; 2], axis: usize) -> f64 {
        ya[axis]
    }
}

fn shift(n: Index2, axis: usize, by: i64) -> Index2 {
    let mut m = n;
    m[axis] += by;
    m
}

/// `(Δ#_A f)(n) = [√(n_A+1) f(n+e_A) - √n_A f(n-e_A)] / √2`.
pub fn sharp(f: &Field2, axis: usize, n: Index2) -> Result<f64> {
    let m = n[axis] as f64;
    Ok(FRAC_1_SQRT_2 * ((m + 1.0).sqrt() * f.get(shift(n, axis, 1))? - m.max(0.0).sqrt() * f.get(shift(n, axis, -1))?))
}

/// `(Δ#_A Δ#_A f)(n) = ½[√((m+1)(m+2)) f(n+2e) - (2m+1) f(n) + √(m(m-1)) f(n-2e)]`.
pub fn sharp_sharp(f: &Field2, axis: usize, n: Index2) -> Result<f64> {
    let m = n[axis] as f64;
    let down = if m >= 2.0 { (m * (m - 1.0)).sqrt() * f.get(shift(n, axis, -2))? } else { 0.0 };
    Ok(0.5 * (((m + 1.0) * (m + 2.0)).sqrt() * f.get(shift(n, axis, 2))? - (2.0 * m + 1.0) * f.get(n)? + down))
}

/// `J[f] = Σ_box ½ Σ_A (Δ#_A f)²`.
pub fn action_sum(f: &Field2, dom: &RectDomain2) -> Result<f64> {
    let mut sum = 0.0;
    for n in dom.box_points() {
        sum += QuadLagrangian.value(f.get(n)?, [sharp(f, 0, n)?, sharp(f, 1, n)?]);
    }
    Ok(sum)
}

/// `d/dε J[f + εh]` at `ε = 0`: `Σ_box Σ_A (Δ#_A f)(Δ#_A h)`.
pub fn first_variation(f: &Field2, h: &Field2, dom: &RectDomain2) -> Result<f64> {
    let mut sum = 0.0;
    for n in dom.box_points() {
        for axis in 0..2 {
            sum += sharp(f, axis, n)? * sharp(h, axis, n)?;
        }
    }
    Ok(sum)
}

/// `F_A(n) = √(n_A/2) [φ(n) h(n - e_A) + h(n) φ(n - e_A)]`.
pub fn product_flux(phi: &Field2, h: &Field2, axis: usize, n: Index2) -> Result<f64> {
    let m = n[axis].max(0) as f64;
    let back = shift(n, axis, -1);
    Ok((m / 2.0).sqrt() * (phi.get(n)? * h.get(back)? + h.get(n)? * phi.get(back)?))
}

/// `φ Δ#_A h + h Δ#_A φ - Δ_A F_A` at `n`; identically 0.
pub fn product_rule_check(phi: &Field2, h: &Field2, axis: usize, n: Index2) -> Result<f64> {
    let lhs = phi.get(n)? * sharp(h, axis, n)? + h.get(n)? * sharp(phi, axis, n)?;
    let rhs = product_flux(phi, h, axis, shift(n, axis, 1))? - product_flux(phi, h, axis, n)?;
    Ok(lhs - rhs)
}

/// `Σ_box (Δ₁ j¹ + Δ₂ j²)` minus the edge fluxes
/// `Σ_{n²} [j¹(N¹₂+1, n²) - j¹(N¹₁, n²)] + Σ_{n¹} [j²(n¹, N²₂+1) - j²(n¹, N²₁)]`.
pub fn discrete_gauss(j1: &Field2, j2: &Field2, dom: &RectDomain2) -> Result<f64> {
    let mut volume = 0.0;
    for n in dom.box_points() {
        volume += j1.get(shift(n, 0, 1))? - j1.get(n)?;
        volume += j2.get(shift(n, 1, 1))? - j2.get(n)?;
    }
    let [(a0, a1), (b0, b1)] = dom.bounds;
    let mut flux = 0.0;
    for m in b0..=b1 {
        flux += j1.get([a1 + 1, m])? - j1.get([a0, m])?;
    }
    for m in a0..=a1 {
        flux += j2.get([m, b1 + 1])? - j2.get([m, b0])?;
    }
    Ok(volume - flux)
}

/// `∂L/∂y - Δ#_A ∂L/∂y_A = -Σ_A Δ#_A Δ#_A f` at an interior point.
pub fn el_residual(f: &Field2, dom: &RectDomain2, n: Index2) -> Result<f64> {
    if !dom.is_interior(n) {
        return domain(format!("{n:?} is not an interior point"));
    }
    el_value(f, n)
}

fn el_value(f: &Field2, n: Index2) -> Result<f64> {
    Ok(-(sharp_sharp(f, 0, n)? + sharp_sharp(f, 1, n)?))
}

/// `Σ_interior el_residual · h`.
pub fn interior_el_sum(f: &Field2, h: &Field2, dom: &RectDomain2) -> Result<f64> {
    let mut sum = 0.0;
    for n in dom.interior_points() {
        sum += el_value(f, n)? * h.get(n)?;
    }
    Ok(sum)
}

/// The boundary expression of the first variation, split by origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryBreakdown {
    /// `√((N^A₂+1)/2)[φ_A(N^A₂) h(N^A₂+1) + φ_A(N^A₂+1) h(N^A₂)]`, both axes.
    pub upper_flux: f64,
    /// `-√(N^A₁/2)[φ_A(N^A₁) h(N^A₁-1) + φ_A(N^A₁-1) h(N^A₁)]`, both axes.
    pub lower_flux: f64,
    /// `Σ EL·h` on the line `n^A = N^A₁` over the full range of the other index.
    pub edge_el: [f64; 2],
    /// `EL·h` at the corner `(N¹₁, N²₁)`, which both edge sums contain.
    pub corner_el: f64,
}

impl BoundaryBreakdown {
    /// The two axis families summed independently, each with its own
    /// `EL·h` line; the corner enters twice.
    pub fn per_axis(&self) -> f64 {
        self.upper_flux + self.lower_flux + self.edge_el[0] + self.edge_el[1]
    }

    /// `first_variation - Σ_interior EL·h`: the per-axis sum with the
    /// corner counted once.
    pub fn total(&self) -> f64 {
        self.per_axis() - self.corner_el
    }
}

pub fn boundary_terms(f: &Field2, h: &Field2, dom: &RectDomain2) -> Result<BoundaryBreakdown> {
    let mut upper_flux = 0.0;
    let mut lower_flux = 0.0;
    let mut edge_el = [0.0; 2];
    for axis in 0..2 {
        let other = 1 - axis;
        let (lo, hi) = dom.bounds[axis];
        let (olo, ohi) = dom.bounds[other];
        for m in olo..=ohi {
            let mut at = [0; 2];
            at[other] = m;
            let point = |k: i64| {
                let mut p = at;
                p[axis] = k;
                p
            };
            let phi = |k: i64| sharp(f, axis, point(k));
            let hv = |k: i64| h.get(point(k));
            let top = ((hi + 1) as f64 / 2.0).sqrt();
            upper_flux += top * (phi(hi)? * hv(hi + 1)? + phi(hi + 1)? * hv(hi)?);
            let bottom = (lo as f64 / 2.0).sqrt();
            lower_flux -= bottom * (phi(lo)? * hv(lo - 1)? + phi(lo - 1)? * hv(lo)?);
            edge_el[axis] += el_value(f, point(lo))? * hv(lo)?;
        }
    }
    let corner = [dom.bounds[0].0, dom.bounds[1].0];
    let corner_el = el_value(f, corner)? * h.get(corner)?;
    Ok(BoundaryBreakdown { upper_flux, lower_flux, edge_el, corner_el })
}

/// `first_variation - Σ_interior EL·h - boundary_terms.total()`.
pub fn decomposition_residual(f: &Field2, h: &Field2, dom: &RectDomain2) -> Result<f64> {
    Ok(first_variation(f, h, dom)? - interior_el_sum(f, h, dom)? - boundary_terms(f, h, dom)?.total())
}
