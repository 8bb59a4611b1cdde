//! Discrete phase space operators on non-negative integers.
//!
//! ```text
//! (Δ# f)(n) = [√(n+1) f(n+1) - √n f(n-1)] / √2
//! (Δ° f)(n) = [√(n+1) f(n+1) + √n f(n-1)] / √2
//! ```
//!
//! with `f(n) = 0` for `n < 0`. In ladder form `Δ# = (a - a†)/√2` and
//! `Δ° = (a + a†)/√2`, so `P = -iΔ#` and `Q = Δ°` satisfy `[P, Q] = -i`
//! exactly on the half line. On a truncation `0..=N` the only defect is the
//! last diagonal entry of the commutator.

use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::DMatrix;
use ndarray::Array3;
use num_complex::Complex64;

use crate::error::{domain, Result};
use crate::specfun::{hermite_weighted, hermite_weighted_all, QuadratureRule};

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Real values on `{0..=N}³` (or a lower-rank slab with unit extents).
///
/// Reads at negative indices give 0. `exact_upto[a]` is the largest index
/// along axis `a` whose value is unaffected by truncation at `N`; every
/// application of Δ# or Δ° along that axis lowers it by one.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfLineField {
    values: Array3<f64>,
    exact_upto: [i64; 3],
}

impl HalfLineField {
    pub fn from_array(values: Array3<f64>) -> Self {
        let (a, b, c) = values.dim();
        Self { values, exact_upto: [a as i64 - 1, b as i64 - 1, c as i64 - 1] }
    }

    /// One-axis field stored along axis 0.
    pub fn line(values: &[f64]) -> Self {
        Self::from_array(Array3::from_shape_fn((values.len(), 1, 1), |(i, _, _)| values[i]))
    }

    pub fn from_fn(extent: [usize; 3], f: impl Fn([usize; 3]) -> f64) -> Self {
        Self::from_array(Array3::from_shape_fn((extent[0], extent[1], extent[2]), |(i, j, k)| f([i, j, k])))
    }

    pub fn extent(&self) -> [usize; 3] {
        let (a, b, c) = self.values.dim();
        [a, b, c]
    }

    pub fn exact_upto(&self) -> [i64; 3] {
        self.exact_upto
    }

    /// Value at `n`; 0 for negative indices and beyond the stored box.
    pub fn get(&self, n: [i64; 3]) -> f64 {
        let ext = self.extent();
        if (0..3).any(|a| n[a] < 0 || n[a] >= ext[a] as i64) {
            return 0.0;
        }
        self.values[[n[0] as usize, n[1] as usize, n[2] as usize]]
    }

    pub fn values(&self) -> &Array3<f64> {
        &self.values
    }

    fn weighted(&self, axis: usize, sign: f64) -> Self {
        let values = Array3::from_shape_fn(self.values.dim(), |(i, j, k)| {
            let n = [i as i64, j as i64, k as i64];
            let m = n[axis] as f64;
            let mut up = n;
            up[axis] += 1;
            let mut down = n;
            down[axis] -= 1;
            FRAC_1_SQRT_2 * ((m + 1.0).sqrt() * self.get(up) + sign * m.sqrt() * self.get(down))
        });
        let mut exact_upto = self.exact_upto;
        exact_upto[axis] -= 1;
        Self { values, exact_upto }
    }

    fn combine(&self, other: &Self, scale: f64) -> Self {
        let values = &self.values + &(&other.values * scale);
        let exact_upto = [0, 1, 2].map(|a| self.exact_upto[a].min(other.exact_upto[a]));
        Self { values, exact_upto }
    }

    /// `self - other`.
    pub fn minus(&self, other: &Self) -> Self {
        self.combine(other, -1.0)
    }

    /// Largest `|self - other|` over indices within both exactness bounds.
    pub fn max_exact_diff(&self, other: &Self) -> f64 {
        let bound = [0, 1, 2].map(|a| self.exact_upto[a].min(other.exact_upto[a]));
        let mut worst = 0.0f64;
        for ((i, j, k), v) in self.values.indexed_iter() {
            let n = [i as i64, j as i64, k as i64];
            if (0..3).all(|a| n[a] <= bound[a]) {
                worst = worst.max((v - other.get(n)).abs());
            }
        }
        worst
    }
}

/// Δ# along `axis`.
pub fn delta_sharp(f: &HalfLineField, axis: usize) -> HalfLineField {
    f.weighted(axis, -1.0)
}

/// Δ° along `axis`.
pub fn delta_circ(f: &HalfLineField, axis: usize) -> HalfLineField {
    f.weighted(axis, 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorLabel {
    P,
    Q,
    DeltaSharp,
    DeltaCirc,
    /// One-axis factor `Δ# Δ#` of the Casimir operator.
    Casimir,
    /// `½(P² + Q²)`.
    Oscillator,
}

/// Dense truncated one-axis operator on `0..=N`.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    pub label: OperatorLabel,
    pub matrix: DMatrix<Complex64>,
}

impl OperatorMatrix {
    /// `N + 1`.
    pub fn size(&self) -> usize {
        self.matrix.nrows()
    }

    /// Rows `0..=N-2`, unaffected by truncation for two-step compositions.
    pub fn interior_rows(&self) -> std::ops::Range<usize> {
        0..self.size().saturating_sub(1)
    }

    /// `max |A - A†|`.
    pub fn hermiticity_defect(&self) -> f64 {
        (&self.matrix - self.matrix.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

fn ladder(n_max: usize, sign: f64) -> DMatrix<Complex64> {
    let size = n_max + 1;
    DMatrix::from_fn(size, size, |r, c| {
        if c == r + 1 {
            Complex64::new(((r + 1) as f64 / 2.0).sqrt(), 0.0)
        } else if r == c + 1 {
            Complex64::new(sign * (r as f64 / 2.0).sqrt(), 0.0)
        } else {
            ZERO
        }
    })
}

/// Truncated matrix of `label` on `0..=n_max`; `n_max ≥ 2`.
pub fn op_matrix(label: OperatorLabel, n_max: usize) -> Result<OperatorMatrix> {
    if n_max < 2 {
        return domain(format!("truncation N = {n_max} is below 2"));
    }
    let sharp = ladder(n_max, -1.0);
    let circ = ladder(n_max, 1.0);
    let matrix = match label {
        OperatorLabel::DeltaSharp => sharp,
        OperatorLabel::DeltaCirc => circ,
        OperatorLabel::P => sharp * (-I),
        OperatorLabel::Q => circ,
        OperatorLabel::Casimir => &sharp * &sharp,
        OperatorLabel::Oscillator => {
            let p = &sharp * (-I);
            (&p * &p + &circ * &circ) * Complex64::new(0.5, 0.0)
        }
    };
    Ok(OperatorMatrix { label, matrix })
}

/// `|(PQ - QP) + iI|` entrywise, with its maxima split by region.
#[derive(Debug, Clone)]
pub struct CommutatorResidual {
    pub matrix: DMatrix<f64>,
    /// Over rows and columns `0..=N-2`.
    pub interior_max: f64,
    /// Over rows `N-1` and `N`.
    pub boundary_max: f64,
}

/// Tridiagonal ladder operator kept as signed squared weights, so that a
/// product of two entries `±√a · ±√b` is formed as `±√(ab)` with a single
/// rounding. For the half-integer weights here `ab` is exact and the diagonal
/// of a product comes out as an exact half-integer.
#[derive(Debug, Clone, Copy)]
struct SquaredLadder {
    /// Sign of the sub-diagonal relative to the super-diagonal.
    lower_sign: f64,
    /// Overall phase.
    phase: Complex64,
}

impl SquaredLadder {
    // (signed, squared) entry at (r, c)
    fn entry(&self, r: usize, c: usize) -> Option<(f64, f64)> {
        if c == r + 1 {
            Some((1.0, (r + 1) as f64 / 2.0))
        } else if r == c + 1 {
            Some((self.lower_sign, r as f64 / 2.0))
        } else {
            None
        }
    }

    fn product(&self, other: &Self, n_max: usize) -> DMatrix<Complex64> {
        let size = n_max + 1;
        let phase = self.phase * other.phase;
        DMatrix::from_fn(size, size, |r, c| {
            let mut acc = 0.0;
            for m in r.saturating_sub(1)..=(r + 1).min(n_max) {
                if let (Some((s1, w1)), Some((s2, w2))) = (self.entry(r, m), other.entry(m, c)) {
                    acc += s1 * s2 * (w1 * w2).sqrt();
                }
            }
            phase * acc
        })
    }
}

const P_LADDER: SquaredLadder = SquaredLadder { lower_sign: -1.0, phase: Complex64 { re: 0.0, im: -1.0 } };
const Q_LADDER: SquaredLadder = SquaredLadder { lower_sign: 1.0, phase: Complex64 { re: 1.0, im: 0.0 } };

/// `|(PQ - QP) + iI|` on `0..=N`, `N ≥ 4`.
///
/// Entry products are formed as `√(ab)` rather than `√a·√b`; with the
/// latter the interior picks up rounding of a few ulp of `N/2`.
pub fn commutator_residual(n_max: usize) -> Result<CommutatorResidual> {
    if n_max < 4 {
        return domain(format!("truncation N = {n_max} is below 4"));
    }
    let size = n_max + 1;
    let comm = P_LADDER.product(&Q_LADDER, n_max) - Q_LADDER.product(&P_LADDER, n_max)
        + DMatrix::<Complex64>::identity(size, size) * I;
    Ok(split_residual(comm.map(|z| z.norm()), n_max))
}

/// Same as [`commutator_residual`] but with plain dense products of the
/// [`op_matrix`] entries.
pub fn commutator_residual_dense(n_max: usize) -> Result<CommutatorResidual> {
    if n_max < 4 {
        return domain(format!("truncation N = {n_max} is below 4"));
    }
    let p = op_matrix(OperatorLabel::P, n_max)?.matrix;
    let q = op_matrix(OperatorLabel::Q, n_max)?.matrix;
    let size = n_max + 1;
    let comm = &p * &q - &q * &p + DMatrix::<Complex64>::identity(size, size) * I;
    Ok(split_residual(comm.map(|z| z.norm()), n_max))
}

fn split_residual(matrix: DMatrix<f64>, n_max: usize) -> CommutatorResidual {
    let size = n_max + 1;
    let mut interior_max = 0.0f64;
    let mut boundary_max = 0.0f64;
    for r in 0..size {
        for c in 0..size {
            let v = matrix[(r, c)];
            if r + 1 >= n_max {
                boundary_max = boundary_max.max(v);
            } else if c + 1 < n_max {
                interior_max = interior_max.max(v);
            }
        }
    }
    CommutatorResidual { matrix, interior_max, boundary_max }
}

/// Eigenvalues of the truncated `½(P² + Q²)`, ascending.
pub fn oscillator_spectrum(n_max: usize) -> Result<Vec<f64>> {
    let h = op_matrix(OperatorLabel::Oscillator, n_max)?.matrix;
    let mut ev: Vec<f64> = h.symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    Ok(ev)
}

/// Momentum eigenfunction `ξₙ(k) = iⁿ e^{-k²/2} Hₙ(k) / (π^{1/4} 2^{n/2} √n!)`.
pub fn xi(n: u32, k: f64) -> Complex64 {
    I.powu(n) * hermite_weighted(n, k)
}

/// `-iΔ# ξ(k)` at order `n` minus `k ξₙ(k)`.
pub fn xi_ladder_residual(n: u32, k: f64) -> Complex64 {
    let below = if n == 0 { ZERO } else { xi(n - 1, k) };
    let lhs = -I * FRAC_1_SQRT_2 * (f64::from(n + 1).sqrt() * xi(n + 1, k) - f64::from(n).sqrt() * below);
    lhs - k * xi(n, k)
}

/// Gram matrix `∫ ξ̄ₙ ξₘ dk` for `n, m ≤ n_max` under a Gauss–Hermite rule.
pub fn xi_gram(n_max: u32, rule: &QuadratureRule) -> DMatrix<Complex64> {
    let size = n_max as usize + 1;
    let mut gram = DMatrix::from_element(size, size, ZERO);
    for (&k, &w) in rule.nodes.iter().zip(&rule.weights) {
        // the rule carries e^{-k²}; the functions carry it already
        let phi = hermite_weighted_all(n_max, k);
        let weight = w * (k * k).exp();
        let vals: Vec<Complex64> = phi.iter().enumerate().map(|(n, &v)| I.powu(n as u32) * v).collect();
        for r in 0..size {
            for c in 0..size {
                gram[(r, c)] += weight * vals[r].conj() * vals[c];
            }
        }
    }
    gram
}

/// A point on the `n`-th confocal ellipse `½[ℓ²p² + x²/ℓ²] - ½ = n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipseState {
    pub n: u64,
    pub ell: f64,
    pub x: f64,
    pub p: f64,
}

impl EllipseState {
    /// `½[ℓ²p² + x²/ℓ²] - ½`.
    pub fn level(&self) -> f64 {
        ellipse_level(self.x, self.p, self.ell)
    }
}

pub fn ellipse_level(x: f64, p: f64, ell: f64) -> f64 {
    0.5 * (ell * ell * p * p + x * x / (ell * ell)) - 0.5
}

/// `x = ℓ√(2n+1) cos θ`, `p = √(2n+1) sin θ / ℓ`.
pub fn ellipse_points(n: u64, ell: f64, angle: f64) -> Result<EllipseState> {
    if !(ell > 0.0 && ell.is_finite()) {
        return domain(format!("characteristic length must be positive, got {ell}"));
    }
    let radius = (2.0 * n as f64 + 1.0).sqrt();
    Ok(EllipseState { n, ell, x: ell * radius * angle.cos(), p: radius * angle.sin() / ell })
}

/// Ellipse index at `p = 0`: `(x/ℓ)²/2 - ½`.
pub fn index_of_x(x: f64, ell: f64) -> Result<f64> {
    if !(ell > 0.0 && ell.is_finite()) {
        return domain(format!("characteristic length must be positive, got {ell}"));
    }
    Ok(0.5 * (x / ell).powi(2) - 0.5)
}

/// `ℓ√(2m + 1)`, the `p = 0` radius of ellipse `m`; inverse of [`index_of_x`].
pub fn x_of_index(m: f64, ell: f64) -> f64 {
    ell * (2.0 * m + 1.0).sqrt()
}
