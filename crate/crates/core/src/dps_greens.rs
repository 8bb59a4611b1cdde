//! The non-singular discrete phase space potential
//!
//! ```text
//! W₀(n) = ∫ d³k |k|⁻² Πⱼ π^{-1/2} (-1)^{sⱼ} H_{2sⱼ}(kⱼ) e^{-kⱼ²} / (2^{sⱼ} √(2sⱼ)!) ,  nⱼ = 2sⱼ
//! ```
//!
//! Odd components vanish by parity of `Hₙ`. For even components, inserting
//! `|k|⁻² = ∫₀^∞ e^{-t|k|²} dt`, doing each Gaussian moment
//! `∫ e^{-(1+t)k²} H_{2s}(k) dk = √π (2s)!/s! (-t)^s (1+t)^{-s-½}` and
//! recognising a Beta integral gives
//!
//! ```text
//! W₀(2s₁, 2s₂, 2s₃) = √π Γ(S+1)/Γ(S+3/2) Πⱼ √(2sⱼ)! / (2^{sⱼ} sⱼ!) ,  S = Σ sⱼ .
//! ```
//!
//! On the axis this is `2^{n+1} n! / ((2n+1) √(2n)!)`, which is 2 at the
//! origin and decreases monotonically to 0.

use std::f64::consts::{E, PI};

use nalgebra::DMatrix;

use crate::error::{domain, Error, Result};
use crate::specfun::{gauss_rule, hermite_phys, ln_factorial, ln_gamma, QuadratureKind};

/// `W₀(0, 0, 2n) = 2^{n+1} n! / ((2n+1) √(2n)!)`, evaluated in log space.
pub fn w0_axis(n: u64) -> f64 {
    w0_axis_with_base(n, 2.0)
}

/// [`w0_axis`] with the power base exposed, so that a deliberately wrong
/// constant can be fed to the checks that are supposed to catch it.
pub fn w0_axis_with_base(n: u64, base: f64) -> f64 {
    let nf = n as f64;
    ((nf + 1.0) * base.ln() + ln_factorial(n) - (2.0 * nf + 1.0).ln() - 0.5 * ln_factorial(2 * n)).exp()
}

/// `W₀(0,0,2n+2)/W₀(0,0,2n) = ((2n+2)/(2n+3)) √((2n+1)/(2n+2))`.
pub fn w0_ratio(n: u64) -> f64 {
    let nf = n as f64;
    (2.0 * nf + 2.0) / (2.0 * nf + 3.0) * ((2.0 * nf + 1.0) / (2.0 * nf + 2.0)).sqrt()
}

/// The axis value through gamma functions, `2^{m+1} Γ(m+1) / ((2m+1) √Γ(2m+1))`,
/// which continues [`w0_axis`] to real `m > -½`.
pub fn w0_axis_gamma(m: f64) -> Result<f64> {
    if !(m > -0.5 && m.is_finite()) {
        return domain(format!("gamma form needs m > -1/2, got {m}"));
    }
    Ok(((m + 1.0) * 2f64.ln() + ln_gamma(m + 1.0) - (2.0 * m + 1.0).ln() - 0.5 * ln_gamma(2.0 * m + 1.0)).exp())
}

/// Large-`n` form of the axis value from the Stirling series, keeping the
/// `1/(12(n+1))` and `1/(24(2n+1))` corrections.
pub fn w0_stirling(n: u64) -> Result<f64> {
    if n == 0 {
        return domain("the asymptotic form needs n >= 1");
    }
    let nf = n as f64;
    let a = 1.0 / nf;
    let b = 1.0 / (2.0 * nf);
    let power = (nf * (a.ln_1p() - b.ln_1p())).exp();
    let prefactor = PI.powf(0.25) / E.sqrt() * nf.powf(-0.75);
    let shape = (1.0 + a).sqrt() / (1.0 + b).powf(1.25);
    let correction = (1.0 + 1.0 / (12.0 * (nf + 1.0))) / (1.0 + 1.0 / (24.0 * (2.0 * nf + 1.0)));
    Ok(prefactor * power * shape * correction)
}

/// Non-negative even triple `(2s₁, 2s₂, 2s₃)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EvenMultiIndex {
    pub s: [u64; 3],
}

impl EvenMultiIndex {
    /// `None` if any component is odd; error if any is negative.
    pub fn from_index(m: [i64; 3]) -> Result<Option<Self>> {
        if m.iter().any(|&c| c < 0) {
            return domain(format!("index {m:?} has a negative component"));
        }
        if m.iter().any(|&c| c % 2 != 0) {
            return Ok(None);
        }
        Ok(Some(Self { s: m.map(|c| (c / 2) as u64) }))
    }

    pub fn total(&self) -> u64 {
        self.s.iter().sum()
    }
}

/// `ln Γ(S + 3/2)` through factorials, so the whole evaluation stays on the
/// summed log-factorial table.
fn ln_gamma_s_three_halves(s: u64) -> f64 {
    ln_factorial(2 * s + 2) - (s as f64 + 1.0) * 4f64.ln() - ln_factorial(s + 1) + 0.5 * PI.ln()
}

/// `ln[√(2s)! / (2^s s!)]`.
fn ln_axis_factor(s: u64) -> f64 {
    0.5 * ln_factorial(2 * s) - s as f64 * 2f64.ln() - ln_factorial(s)
}

/// `W₀(m)` for a non-negative triple.
///
/// Odd components return 0: the integrand is odd in that `kⱼ`.
pub fn w0_general(m: [i64; 3]) -> Result<f64> {
    let Some(even) = EvenMultiIndex::from_index(m)? else {
        return Ok(0.0);
    };
    let total = even.total();
    let ln_w = 0.5 * PI.ln() + ln_factorial(total) - ln_gamma_s_three_halves(total)
        + even.s.iter().map(|&s| ln_axis_factor(s)).sum::<f64>();
    Ok(ln_w.exp())
}

/// `W₀` by one-dimensional quadrature in the Schwinger parameter.
///
/// Each Gaussian `kⱼ` integral is done numerically with a Gauss–Hermite
/// rule after scaling `u = √(1+t) k`, and `t = (x/(1-x))²` maps the `t`
/// integral onto `[0, 1]` where it is smooth; `panels` Gauss–Legendre panels
/// of 16 points each are used. Independent of the Beta-function reduction.
pub fn w0_t_quadrature(m: [i64; 3], panels: usize) -> Result<f64> {
    let Some(even) = EvenMultiIndex::from_index(m)? else {
        return Ok(0.0);
    };
    let top = *even.s.iter().max().expect("three components");
    let hermite = gauss_rule(QuadratureKind::HermiteWeight, (top as usize + 2).max(16))?;
    let legendre = gauss_rule(QuadratureKind::LegendreUnitInterval, 16)?;
    let (xs, ws) = legendre.composite(0.0, 1.0, panels.max(1));
    let norm: Vec<f64> = even
        .s
        .iter()
        .map(|&s| {
            let sign = if s % 2 == 0 { 1.0 } else { -1.0 };
            sign * (-0.5 * PI.ln() - s as f64 * 2f64.ln() - 0.5 * ln_factorial(2 * s)).exp()
        })
        .collect();
    let mut total = 0.0;
    for (&x, &w) in xs.iter().zip(&ws) {
        let tau = x / (1.0 - x);
        let t = tau * tau;
        let dt = 2.0 * tau / ((1.0 - x) * (1.0 - x));
        let scale = (1.0 + t).sqrt();
        let mut product = 1.0;
        for (axis, &s) in even.s.iter().enumerate() {
            let moment: f64 = hermite
                .nodes
                .iter()
                .zip(&hermite.weights)
                .map(|(&u, &wu)| wu * hermite_phys(2 * s as u32, u / scale).unwrap_or(f64::NAN))
                .sum::<f64>()
                / scale;
            product *= norm[axis] * moment;
        }
        total += w * dt * product;
    }
    if !total.is_finite() {
        return Err(Error::Overflow(format!("Schwinger quadrature overflowed at {m:?}")));
    }
    Ok(total)
}

/// `Σⱼ ½[√((n+1)(n+2)) W(n+2eⱼ) - (2n+1) W(n) + √(n(n-1)) W(n-2eⱼ)]`, the
/// composed `Δ#Δ#` stencil summed over axes, with `W = 0` at negative indices.
pub fn greens_delta_stencil(m: [i64; 3]) -> Result<f64> {
    greens_delta_stencil_with(m, w0_general)
}

/// [`greens_delta_stencil`] for an arbitrary lattice function.
pub fn greens_delta_stencil_with(m: [i64; 3], w: impl Fn([i64; 3]) -> Result<f64>) -> Result<f64> {
    if m.iter().any(|&c| c < 0) {
        return domain(format!("index {m:?} has a negative component"));
    }
    let centre = w(m)?;
    let mut sum = 0.0;
    for axis in 0..3 {
        let n = m[axis] as f64;
        let mut up = m;
        up[axis] += 2;
        let mut down = m;
        down[axis] -= 2;
        let below = if down[axis] < 0 { 0.0 } else { w(down)? };
        sum += 0.5 * (((n + 1.0) * (n + 2.0)).sqrt() * w(up)? - (2.0 * n + 1.0) * centre + (n * (n - 1.0)).sqrt() * below);
    }
    Ok(sum)
}

/// Stencil value minus the delta source: `-1` at the origin, `0` elsewhere.
pub fn greens_delta_residual(m: [i64; 3]) -> Result<f64> {
    let target = if m == [0, 0, 0] { -1.0 } else { 0.0 };
    Ok(greens_delta_stencil(m)? - target)
}

fn sharp(n_max: usize) -> DMatrix<f64> {
    let size = n_max + 1;
    DMatrix::from_fn(size, size, |r, c| {
        if c == r + 1 {
            ((r + 1) as f64 / 2.0).sqrt()
        } else if r == c + 1 {
            -(r as f64 / 2.0).sqrt()
        } else {
            0.0
        }
    })
}

fn circ(n_max: usize) -> DMatrix<f64> {
    sharp(n_max).map(f64::abs)
}

/// Operators on the two-axis truncation `{0..=N}²`; index `a (N+1) + b`.
struct TwoAxis {
    n_max: usize,
    eye: DMatrix<f64>,
    sharp: DMatrix<f64>,
    circ: DMatrix<f64>,
}

impl TwoAxis {
    fn new(n_max: usize) -> Self {
        Self { n_max, eye: DMatrix::identity(n_max + 1, n_max + 1), sharp: sharp(n_max), circ: circ(n_max) }
    }

    fn on(&self, axis: usize, op: &DMatrix<f64>) -> DMatrix<f64> {
        if axis == 0 {
            op.kronecker(&self.eye)
        } else {
            self.eye.kronecker(op)
        }
    }

    fn casimir(&self) -> DMatrix<f64> {
        let sq = &self.sharp * &self.sharp;
        self.on(0, &sq) + self.on(1, &sq)
    }

    /// Largest entry over rows whose two indices are both `≤ N - 4`.
    fn deep_max(&self, m: &DMatrix<f64>) -> f64 {
        let side = self.n_max + 1;
        let mut worst = 0.0f64;
        for row in 0..m.nrows() {
            let (a, b) = (row / side, row % side);
            if a + 4 <= self.n_max && b + 4 <= self.n_max {
                worst = m.row(row).iter().fold(worst, |w, v| w.max(v.abs()));
            }
        }
        worst
    }

    fn edge_max(&self, m: &DMatrix<f64>) -> f64 {
        let side = self.n_max + 1;
        let mut worst = 0.0f64;
        for row in 0..m.nrows() {
            let (a, b) = (row / side, row % side);
            if a + 2 > self.n_max || b + 2 > self.n_max {
                worst = m.row(row).iter().fold(worst, |w, v| w.max(v.abs()));
            }
        }
        worst
    }
}

/// Rotation generator
/// `M_{jk} = ¼[Δ°ⱼΔ#ₖ - Δ°ₖΔ#ⱼ + Δ#ₖΔ°ⱼ - Δ#ⱼΔ°ₖ]` on a two-axis truncation,
/// with the pair `(j, k)` mapped onto the two tensor factors.
#[derive(Debug, Clone)]
pub struct RotationGenerator {
    pub axes: (usize, usize),
    pub omega: f64,
    pub matrix: DMatrix<f64>,
}

impl RotationGenerator {
    /// `axes` must be two distinct axes in `0..3`. Swapping them negates
    /// the generator.
    pub fn new(n_max: usize, axes: (usize, usize), omega: f64) -> Result<Self> {
        let (j, k) = axes;
        if j == k || j > 2 || k > 2 {
            return domain(format!("rotation needs two distinct axes, got {axes:?}"));
        }
        let ops = TwoAxis::new(n_max);
        let (first, second) = if j < k { (0, 1) } else { (1, 0) };
        let cj = ops.on(first, &ops.circ);
        let ck = ops.on(second, &ops.circ);
        let sj = ops.on(first, &ops.sharp);
        let sk = ops.on(second, &ops.sharp);
        let matrix = (&cj * &sk - &ck * &sj + &sk * &cj - &sj * &ck) * (0.25 * omega);
        Ok(Self { axes, omega, matrix })
    }
}

/// `[M, C]` with `C = Σ Δ#ₐΔ#ₐ` on the two-axis truncation.
#[derive(Debug, Clone, Copy)]
pub struct CasimirCommutator {
    /// Over rows with both indices `≤ N - 4`.
    pub deep_max: f64,
    /// Over rows with an index `≥ N - 1`.
    pub edge_max: f64,
}

pub fn rotation_casimir_commutator(n_max: usize, axes: (usize, usize)) -> Result<CasimirCommutator> {
    if n_max < 6 {
        return domain(format!("truncation N = {n_max} is below 6"));
    }
    let ops = TwoAxis::new(n_max);
    let m = RotationGenerator::new(n_max, axes, 1.0)?.matrix;
    let c = ops.casimir();
    let comm = &m * &c - &c * &m;
    Ok(CasimirCommutator { deep_max: ops.deep_max(&comm), edge_max: ops.edge_max(&comm) })
}

/// `max |[Δ#ⱼ, C]|` over the whole two-axis truncation.
pub fn translation_casimir_commutator(n_max: usize, axis: usize) -> Result<f64> {
    if n_max < 2 || axis > 1 {
        return domain(format!("need N >= 2 and a tensor axis in 0..2, got N = {n_max}, axis = {axis}"));
    }
    let ops = TwoAxis::new(n_max);
    let t = ops.on(axis, &ops.sharp);
    let c = ops.casimir();
    let comm = &t * &c - &c * &t;
    Ok(comm.amax())
}
