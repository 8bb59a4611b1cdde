//! Euclidean three-space: the Coulomb potential `V₀ = 1/(4π|x|)`, its
//! Green's function, finite-difference Laplacians, rigid motions and
//! translation of polynomials as a truncated exponential of `-c·∂`.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use nalgebra::{Matrix3, Rotation3, Unit, Vector3};
use ndarray::Array3;

use crate::error::{Error, Result};
use crate::rng::Sampler;

pub type Point3 = Vector3<f64>;

fn check_finite(p: &Point3) -> Result<()> {
    if p.iter().all(|c| c.is_finite()) {
        Ok(())
    } else {
        Err(Error::Domain(format!("non-finite point {:?}", p.as_slice())))
    }
}

/// `1/(4π|p|)`.
pub fn coulomb_v0(p: &Point3) -> Result<f64> {
    check_finite(p)?;
    let r = p.norm();
    if r == 0.0 {
        return Err(Error::Singular("V0 diverges at the source point".into()));
    }
    Ok(1.0 / (4.0 * PI * r))
}

/// Free-space Green's function with the source at `source`.
pub fn greens_e3(p: &Point3, source: &Point3) -> Result<f64> {
    coulomb_v0(&(p - source))
}

/// Seven-point central-difference Laplacian of `f` at `p`.
///
/// `singular` marks points where `f` must not be evaluated; if any stencil
/// node is marked the call fails with [`Error::Stencil`].
pub fn fd_laplacian<F, S>(f: F, p: &Point3, h: f64, singular: S) -> Result<f64>
where
    F: Fn(&Point3) -> f64,
    S: Fn(&Point3) -> bool,
{
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::Domain(format!("step must be positive, got {h}")));
    }
    check_finite(p)?;
    let mut nodes = vec![*p];
    for axis in 0..3 {
        let mut e = Point3::zeros();
        e[axis] = h;
        nodes.push(p + e);
        nodes.push(p - e);
    }
    if let Some(bad) = nodes.iter().find(|q| singular(q)) {
        return Err(Error::Stencil(format!("stencil node {:?} is singular", bad.as_slice())));
    }
    let centre = f(p);
    let mut sum = 0.0;
    for pair in nodes[1..].chunks(2) {
        sum += f(&pair[0]) - 2.0 * centre + f(&pair[1]);
    }
    Ok(sum / (h * h))
}

/// Predicate for [`fd_laplacian`] that marks the origin as singular.
pub fn origin_is_singular(p: &Point3) -> bool {
    p.norm() == 0.0
}

/// Rotation `R` and translation `c`; acts as `x ↦ c + R x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsometryParams {
    rotation: Matrix3<f64>,
    translation: Point3,
}

const ORTHO_TOL: f64 = 1e-12;

impl IsometryParams {
    /// Fails with [`Error::Validation`] unless `RᵀR = I` within 1e-12.
    pub fn new(rotation: Matrix3<f64>, translation: Point3) -> Result<Self> {
        check_finite(&translation)?;
        let defect = (rotation.transpose() * rotation - Matrix3::identity()).amax();
        if !(defect <= ORTHO_TOL) {
            return Err(Error::Validation(format!("rotation is not orthogonal: |RᵀR - I| = {defect:e}")));
        }
        Ok(Self { rotation, translation })
    }

    pub fn identity() -> Self {
        Self { rotation: Matrix3::identity(), translation: Point3::zeros() }
    }

    pub fn translation_only(c: Point3) -> Result<Self> {
        Self::new(Matrix3::identity(), c)
    }

    pub fn rotation_only(r: Matrix3<f64>) -> Result<Self> {
        Self::new(r, Point3::zeros())
    }

    /// Uniformly random proper rotation and a translation in `[-1, 1]³`.
    pub fn random(rng: &mut Sampler) -> Self {
        let axis = Unit::new_normalize(Vector3::from(rng.direction()));
        let angle = rng.uniform(-PI, PI);
        let rotation = *Rotation3::from_axis_angle(&axis, angle).matrix();
        let translation = Point3::new(rng.symmetric(), rng.symmetric(), rng.symmetric());
        Self { rotation, translation }
    }

    pub fn rotation(&self) -> &Matrix3<f64> {
        &self.rotation
    }

    pub fn translation(&self) -> &Point3 {
        &self.translation
    }

    /// True for the proper subgroup (`det R = +1`).
    pub fn is_proper(&self) -> bool {
        (self.rotation.determinant() - 1.0).abs() <= 1e-12
    }

    /// `x = Rᵀ (x̂ - c)`.
    pub fn apply_inverse(&self, x_hat: &Point3) -> Point3 {
        self.rotation.transpose() * (x_hat - self.translation)
    }
}

/// `c + R p`.
pub fn io3_apply(p: &Point3, g: &IsometryParams) -> Point3 {
    g.translation + g.rotation * p
}

/// Trivariate polynomial as a sparse map from exponents to coefficients.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PolyField {
    terms: BTreeMap<[u32; 3], f64>,
}

impl PolyField {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ([u32; 3], f64)>) -> Self {
        let mut out = Self::new();
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    pub fn add_term(&mut self, exps: [u32; 3], coeff: f64) {
        let slot = self.terms.entry(exps).or_insert(0.0);
        *slot += coeff;
        if *slot == 0.0 {
            self.terms.remove(&exps);
        }
    }

    pub fn coeff(&self, exps: [u32; 3]) -> f64 {
        self.terms.get(&exps).copied().unwrap_or(0.0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; 3], &f64)> {
        self.terms.iter()
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn eval(&self, p: &Point3) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| c * p.x.powi(e[0] as i32) * p.y.powi(e[1] as i32) * p.z.powi(e[2] as i32))
            .sum()
    }

    pub fn derivative(&self, axis: usize) -> Self {
        let mut out = Self::new();
        for (e, c) in &self.terms {
            if e[axis] > 0 {
                let mut d = *e;
                d[axis] -= 1;
                out.add_term(d, c * f64::from(e[axis]));
            }
        }
        out
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (*e, c * s)))
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, *c);
        }
        out
    }

    /// Exact Laplacian.
    pub fn laplacian(&self) -> Self {
        (0..3).fold(Self::new(), |acc, a| acc.plus(&self.derivative(a).derivative(a)))
    }

    /// `c·∇f`.
    pub fn directional(&self, c: &Point3) -> Self {
        (0..3).fold(Self::new(), |acc, a| acc.plus(&self.derivative(a).scaled(c[a])))
    }

    /// Exact substitution `x ↦ x - c`, by binomial expansion of every monomial.
    pub fn shifted(&self, c: &Point3) -> Self {
        let mut out = Self::new();
        for (e, coeff) in &self.terms {
            let factors: Vec<Vec<(u32, f64)>> = (0..3).map(|a| binomial_shift(e[a], -c[a])).collect();
            for &(i, ci) in &factors[0] {
                for &(j, cj) in &factors[1] {
                    for &(k, ck) in &factors[2] {
                        out.add_term([i, j, k], coeff * ci * cj * ck);
                    }
                }
            }
        }
        out
    }

    /// Largest coefficient-wise difference.
    pub fn max_coeff_diff(&self, other: &Self) -> f64 {
        self.terms
            .keys()
            .chain(other.terms.keys())
            .map(|e| (self.coeff(*e) - other.coeff(*e)).abs())
            .fold(0.0, f64::max)
    }
}

// (x + a)^n = Σ_i C(n,i) a^{n-i} x^i
fn binomial_shift(n: u32, a: f64) -> Vec<(u32, f64)> {
    let mut out = Vec::with_capacity(n as usize + 1);
    let mut binom = 1.0;
    for i in 0..=n {
        out.push((i, binom * a.powi((n - i) as i32)));
        binom = binom * f64::from(n - i) / f64::from(i + 1);
    }
    out
}

/// `Σ_{j ≤ order} (-1)^j/j! (c·∂)^j f`; for `order ≥ deg f` this is `f(x - c)`.
pub fn translate_exp(f: &PolyField, c: &Point3, order: u32) -> PolyField {
    let mut term = f.clone();
    let mut acc = f.clone();
    for j in 1..=order {
        term = term.directional(c).scaled(-1.0 / f64::from(j));
        if term.terms.is_empty() {
            break;
        }
        acc = acc.plus(&term);
    }
    acc
}

/// Harmonic polynomials used as test vehicles: `x² - y²`, `xy`, `xyz`,
/// `x³ - 3xy²`, `x⁴ - 6x²y² + y⁴` and `z⁴ - 3z²(x²+y²) + 3(x²+y²)²/8`.
pub fn harmonic_examples() -> Vec<PolyField> {
    vec![
        PolyField::from_terms([([2, 0, 0], 1.0), ([0, 2, 0], -1.0)]),
        PolyField::from_terms([([1, 1, 0], 1.0)]),
        PolyField::from_terms([([1, 1, 1], 1.0)]),
        PolyField::from_terms([([3, 0, 0], 1.0), ([1, 2, 0], -3.0)]),
        PolyField::from_terms([([4, 0, 0], 1.0), ([2, 2, 0], -6.0), ([0, 4, 0], 1.0)]),
        PolyField::from_terms([
            ([0, 0, 4], 1.0),
            ([2, 0, 2], -3.0),
            ([0, 2, 2], -3.0),
            ([4, 0, 0], 3.0 / 8.0),
            ([0, 4, 0], 3.0 / 8.0),
            ([2, 2, 0], 3.0 / 4.0),
        ]),
    ]
}

/// Uniform node grid on a box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid3 {
    pub origin: Point3,
    pub spacing: f64,
    pub nodes: [usize; 3],
}

impl Grid3 {
    pub fn point(&self, i: usize, j: usize, k: usize) -> Point3 {
        self.origin + Point3::new(i as f64, j as f64, k as f64) * self.spacing
    }

    pub fn sample(&self, f: impl Fn(&Point3) -> f64) -> Array3<f64> {
        Array3::from_shape_fn((self.nodes[0], self.nodes[1], self.nodes[2]), |(i, j, k)| f(&self.point(i, j, k)))
    }

    /// Mask that is 1 on interior nodes and 0 on the box faces.
    pub fn interior_mask(&self) -> Array3<f64> {
        let [a, b, c] = self.nodes;
        Array3::from_shape_fn((a, b, c), |(i, j, k)| {
            let inside = i > 0 && j > 0 && k > 0 && i + 1 < a && j + 1 < b && k + 1 < c;
            if inside {
                1.0
            } else {
                0.0
            }
        })
    }
}

/// Discretized Dirichlet integral `½ ∫ |∇u|²` from forward differences on
/// grid samples, with spacing `h`.
pub fn dirichlet_action(u: &Array3<f64>, h: f64) -> f64 {
    let (a, b, c) = u.dim();
    let mut sum = 0.0;
    for i in 0..a {
        for j in 0..b {
            for k in 0..c {
                let here = u[[i, j, k]];
                if i + 1 < a {
                    sum += (u[[i + 1, j, k]] - here).powi(2);
                }
                if j + 1 < b {
                    sum += (u[[i, j + 1, k]] - here).powi(2);
                }
                if k + 1 < c {
                    sum += (u[[i, j, k + 1]] - here).powi(2);
                }
            }
        }
    }
    0.5 * sum * h
}
