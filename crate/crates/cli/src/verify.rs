//! Invariant suites and the tab-separated report they produce.

use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};
use std::fmt::Write as _;
use std::str::FromStr;

use nspot_core::continuum::{coulomb_v0, fd_laplacian, harmonic_examples, io3_apply, origin_is_singular, translate_exp, IsometryParams, Point3};
use nspot_core::dps_greens::{greens_delta_stencil, rotation_casimir_commutator, translation_casimir_commutator, w0_axis, w0_ratio, w0_t_quadrature};
use nspot_core::dps_ops::{commutator_residual, oscillator_spectrum, xi_gram, xi_ladder_residual};
use nspot_core::lattice::{lattice_laplacian, mean_value_defect, u0_asymptotic, u0_origin_closed, LatticeField, LatticeGreen, OutOfBox, U0Quadrature};
use nspot_core::phasespace::{apply_p, apply_q, momentum_field, omega0, pde_residual_omega, position_field, PhasePoint};
use nspot_core::rng::Sampler;
use nspot_core::specfun::{bessel_i_scaled_all, elliptic_k, gamma_stirling, gauss_rule, ln_factorial, QuadratureKind};
use nspot_core::variational::{decomposition_residual, discrete_gauss, el_residual, product_rule_check, Field2, RectDomain2};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::config::RunConfig;
use crate::error::{usage, CliError, CliResult};
use crate::table::fmt_sig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Specfun,
    Continuum,
    Lattice,
    Phasespace,
    DpsOps,
    DpsGreens,
    Variational,
}

impl Suite {
    pub const ALL: [Suite; 7] =
        [Suite::Specfun, Suite::Continuum, Suite::Lattice, Suite::Phasespace, Suite::DpsOps, Suite::DpsGreens, Suite::Variational];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Specfun => "specfun",
            Suite::Continuum => "continuum",
            Suite::Lattice => "lattice",
            Suite::Phasespace => "phasespace",
            Suite::DpsOps => "dps_ops",
            Suite::DpsGreens => "dps_greens",
            Suite::Variational => "variational",
        }
    }

    /// Names as given on the command line; `all` expands, duplicates collapse.
    pub fn parse_list(names: &[String]) -> CliResult<Vec<Suite>> {
        let mut out = Vec::new();
        for name in names {
            if name == "all" {
                out.extend(Suite::ALL);
            } else {
                out.push(name.parse()?);
            }
        }
        if out.is_empty() {
            out.extend(Suite::ALL);
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl FromStr for Suite {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).map_or_else(|| usage(format!("unknown suite '{s}'")), Ok)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub suite: &'static str,
    pub name: &'static str,
    pub computed: f64,
    pub reference: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Check {
    /// Passes when `|computed - reference| <= tolerance`; NaN never passes.
    pub fn near(suite: &'static str, name: &'static str, computed: f64, reference: f64, tolerance: f64) -> Self {
        let passed = (computed - reference).abs() <= tolerance;
        Self { suite, name, computed, reference, tolerance, passed }
    }

    /// `near` on the relative error `computed/reference - 1`, reported as is.
    pub fn relative(suite: &'static str, name: &'static str, computed: f64, reference: f64, tolerance: f64) -> Self {
        let passed = ((computed - reference) / reference).abs() <= tolerance;
        Self { suite, name, computed, reference, tolerance, passed }
    }

    fn failed(suite: &'static str, name: &'static str, reference: f64, tolerance: f64) -> Self {
        Self { suite, name, computed: f64::NAN, reference, tolerance, passed: false }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("suite\tcheck\tcomputed\treference\ttolerance\tstatus\n");
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "{}\t{}\t{}\t{}\t{}\t{status}", c.suite, c.name, fmt_sig(c.computed), fmt_sig(c.reference), fmt_sig(c.tolerance));
        }
        let passed = self.checks.iter().filter(|c| c.passed).count();
        let _ = writeln!(out, "# overall {} ({passed}/{} checks)", if self.passed() { "PASS" } else { "FAIL" }, self.checks.len());
        out
    }
}

/// Run the suites concurrently; the report lists them in suite order.
pub fn run_suites(suites: &[Suite], cfg: &RunConfig) -> VerificationReport {
    let checks = suites.par_iter().map(|&s| run_suite(s, cfg)).collect::<Vec<_>>().into_iter().flatten().collect();
    VerificationReport { checks }
}

pub fn run_suite(suite: Suite, cfg: &RunConfig) -> Vec<Check> {
    match suite {
        Suite::Specfun => specfun(),
        Suite::Continuum => continuum(cfg.seed),
        Suite::Lattice => lattice(cfg),
        Suite::Phasespace => phasespace(cfg.seed),
        Suite::DpsOps => dps_ops(),
        Suite::DpsGreens => dps_greens(),
        Suite::Variational => variational(cfg.seed),
    }
}

/// Turn a fallible measurement into a check, recording errors as failures.
fn measure(suite: &'static str, name: &'static str, reference: f64, tolerance: f64, f: impl FnOnce() -> nspot_core::Result<f64>) -> Check {
    match f() {
        Ok(v) => Check::near(suite, name, v, reference, tolerance),
        Err(_) => Check::failed(suite, name, reference, tolerance),
    }
}

fn specfun() -> Vec<Check> {
    const S: &str = "specfun";
    let fact20 = (1..=20u64).product::<u64>() as f64;
    let mut checks = vec![
        Check::relative(S, "ln_factorial_20", ln_factorial(20), fact20.ln(), 1e-14),
        Check::relative(S, "gamma_stirling_10", gamma_stirling(10.0, 4), 362_880.0, 1e-8),
        measure(S, "elliptic_k_zero", FRAC_PI_2, 1e-15, || elliptic_k(0.0)),
        measure(S, "gauss_hermite_second_moment", PI.sqrt() / 2.0, 1e-12, || {
            Ok(gauss_rule(QuadratureKind::HermiteWeight, 64)?.integrate(|z| z * z))
        }),
    ];
    let mut worst = 0.0f64;
    for t in [0.5, 5.0, 50.0] {
        let b = bessel_i_scaled_all(11, t);
        for n in 1..11 {
            worst = worst.max(((b[n - 1] - b[n + 1]) - 2.0 * n as f64 / t * b[n]).abs() / b[n - 1]);
        }
    }
    checks.push(Check::near(S, "bessel_recurrence", worst, 0.0, 1e-12));
    checks
}

/// `log₁₀` of the RMS ratio of residuals at `h = 1e-2` and `h = 1e-3`.
fn refinement_slope(coarse: &[f64], fine: &[f64]) -> f64 {
    let rms = |v: &[f64]| (v.iter().map(|x| x * x).sum::<f64>() / v.len() as f64).sqrt();
    (rms(coarse) / rms(fine)).log10()
}

fn continuum(seed: u64) -> Vec<Check> {
    const S: &str = "continuum";
    let mut rng = Sampler::new(seed);
    let points: Vec<Point3> = (0..50)
        .map(|_| {
            let d = Point3::from(rng.direction());
            d * rng.uniform(0.5, 3.0)
        })
        .collect();
    let v0 = |q: &Point3| coulomb_v0(q).unwrap_or(f64::NAN);
    let lap = |h: f64| -> Vec<f64> {
        points.iter().map(|p| fd_laplacian(v0, p, h, origin_is_singular).unwrap_or(f64::NAN)).collect()
    };
    let slope = refinement_slope(&lap(1e-2), &lap(1e-3));

    let mut shift_err = 0.0f64;
    for _ in 0..5 {
        let c = Point3::new(rng.symmetric(), rng.symmetric(), rng.symmetric()) * 2.0;
        for f in harmonic_examples() {
            shift_err = shift_err.max(translate_exp(&f, &c, 4).max_coeff_diff(&f.shifted(&c)));
        }
    }

    let mut iso_err = 0.0f64;
    for p in &points[..10] {
        let g = IsometryParams::rotation_only(*IsometryParams::random(&mut rng).rotation()).expect("random rotations are orthogonal");
        iso_err = iso_err.max((v0(&io3_apply(p, &g)) / v0(p) - 1.0).abs());
    }

    vec![
        measure(S, "coulomb_unit", 1.0 / (4.0 * PI), 1e-15, || coulomb_v0(&Point3::new(1.0, 0.0, 0.0))),
        Check::near(S, "fd_laplacian_order", slope, 2.0, 0.2),
        Check::near(S, "translation_exact_harmonic", shift_err, 0.0, 1e-12),
        Check::near(S, "rotation_invariance", iso_err, 0.0, 1e-13),
    ]
}

fn lattice(cfg: &RunConfig) -> Vec<Check> {
    const S: &str = "lattice";
    let green = match LatticeGreen::new(U0Quadrature { points: cfg.quad_points, ..U0Quadrature::default() }) {
        Ok(g) => g,
        Err(_) => return vec![Check::failed(S, "u0_quadrature", 0.0, 0.0)],
    };
    let bessel = green.eval([0, 0, 0]);
    let closed = u0_origin_closed();
    let mut checks = vec![
        Check::near(S, "u0_origin_value", closed, 0.252_731_009_858_663, 1e-8),
        match &bessel {
            Ok(b) => Check::near(S, "u0_origin_closed_vs_bessel", closed, *b, 1e-8),
            Err(_) => Check::failed(S, "u0_origin_closed_vs_bessel", closed, 1e-8),
        },
    ];

    let probe = LatticeField::zeros([-4; 3], [4; 3], OutOfBox::Error).expect("non-empty box");
    let idx = probe.indices();
    let field = green.eval_many(&idx).into_iter().collect::<nspot_core::Result<Vec<_>>>().and_then(|vals| {
        let mut f = probe.clone();
        for (n, v) in idx.iter().zip(vals) {
            f.set(*n, v)?;
        }
        Ok(f)
    });
    match field {
        Ok(f) => {
            checks.push(measure(S, "lattice_delta_origin", -1.0, 1e-8, || lattice_laplacian(&f, [0, 0, 0])));
            let mut rng = Sampler::new(cfg.seed);
            let mut worst = 0.0f64;
            let mut taken = 0;
            while taken < 25 {
                let n = [rng.int(-3, 3), rng.int(-3, 3), rng.int(-3, 3)];
                if n == [0, 0, 0] {
                    continue;
                }
                worst = worst.max(mean_value_defect(&f, n).map_or(f64::NAN, f64::abs));
                taken += 1;
            }
            checks.push(Check::near(S, "lattice_mean_value", worst, 0.0, 1e-8));
        }
        Err(_) => checks.push(Check::failed(S, "lattice_delta_origin", -1.0, 1e-8)),
    }

    // the first neglected order of the expansion is |n|^-5 with a
    // coefficient below 0.1 on the axis
    checks.push(measure(S, "u0_asymptotic_axis_20", 0.0, 0.1 / 20f64.powi(5), || {
        Ok(green.eval([20, 0, 0])? - u0_asymptotic([20, 0, 0])?)
    }));
    checks
}

fn phasespace(seed: u64) -> Vec<Check> {
    const S: &str = "phasespace";
    let one = Complex64::new(1.0, 0.0);
    let mut rng = Sampler::new(seed);
    let mut ratio_err = 0.0f64;
    for _ in 0..20 {
        let q = Point3::from(rng.direction()) * rng.uniform(0.2, 5.0);
        let z = PhasePoint { q, p: Point3::new(rng.symmetric(), rng.symmetric(), rng.symmetric()) * 3.0 };
        let v = coulomb_v0(&q).unwrap_or(f64::NAN);
        ratio_err = ratio_err.max((omega0(&z).map_or(f64::NAN, |w| w.norm()) * SQRT_2 / v - 1.0).abs());
    }

    let z = PhasePoint::new([0.3, -0.2, 0.5], [1.0, 2.5, 3.8]);
    let k = [1.0, 2.0, 3.0];
    let x = [1.0, -0.5, 0.25];
    let slope = |f: &dyn Fn(f64) -> nspot_core::Result<f64>| -> f64 {
        match (f(1e-2), f(1e-3)) {
            (Ok(c), Ok(fi)) => refinement_slope(&[c], &[fi]),
            _ => f64::NAN,
        }
    };
    let momentum = slope(&|h| {
        let psi = momentum_field(k, one)?;
        let mut acc = 0.0f64;
        for j in 0..3 {
            acc = acc.max((apply_p(&psi, j, &z, h)? - k[j] * psi.eval(&z)?).norm());
        }
        Ok(acc)
    });
    let position = slope(&|h| {
        let psi = position_field(x, one)?;
        let mut acc = 0.0f64;
        for j in 0..3 {
            acc = acc.max((apply_q(&psi, j, &z, h)? - x[j] * psi.eval(&z)?).norm());
        }
        Ok(acc)
    });
    let zo = PhasePoint::new([1.0, 0.5, 0.0], [0.3, -1.0, 2.0]);
    let omega = slope(&|h| Ok(pde_residual_omega(&zo, h)?.norm()));

    vec![
        Check::near(S, "omega_v0_ratio", ratio_err, 0.0, 1e-12),
        Check::near(S, "momentum_eigen_order", momentum, 2.0, 0.2),
        Check::near(S, "position_eigen_order", position, 2.0, 0.2),
        Check::near(S, "omega_equation_order", omega, 2.0, 0.2),
    ]
}

fn dps_ops() -> Vec<Check> {
    const S: &str = "dps_ops";
    let mut checks = Vec::new();
    match commutator_residual(64) {
        Ok(c) => {
            checks.push(Check::near(S, "commutator_interior", c.interior_max, 0.0, 1e-14));
            checks.push(Check::near(S, "commutator_corner", c.matrix[(64, 64)], 65.0, 1e-12));
        }
        Err(_) => checks.push(Check::failed(S, "commutator_interior", 0.0, 1e-14)),
    }
    checks.push(measure(S, "oscillator_spectrum", 0.0, 1e-8, || {
        let ev = oscillator_spectrum(128)?;
        Ok(ev.iter().take(20).enumerate().map(|(n, e)| (e - (n as f64 + 0.5)).abs()).fold(0.0, f64::max))
    }));
    checks.push(measure(S, "xi_orthonormality", 0.0, 1e-10, || {
        let rule = gauss_rule(QuadratureKind::HermiteWeight, 64)?;
        let gram = xi_gram(20, &rule);
        let mut worst = 0.0f64;
        for r in 0..gram.nrows() {
            for c in 0..gram.ncols() {
                let target = if r == c { 1.0 } else { 0.0 };
                worst = worst.max((gram[(r, c)].re - target).abs().max(gram[(r, c)].im.abs()));
            }
        }
        Ok(worst)
    }));
    let mut ladder = 0.0f64;
    for n in 0..=30 {
        for i in 0..=100 {
            let k = -5.0 + 0.1 * i as f64;
            ladder = ladder.max(xi_ladder_residual(n, k).norm());
        }
    }
    checks.push(Check::near(S, "xi_ladder", ladder, 0.0, 1e-10));
    checks
}

/// Number of `n ≤ nmax` at which `w` fails to be positive and strictly
/// decreasing, starting from the value 2 at the origin.
pub fn w0_monotone_violations(w: impl Fn(u64) -> f64, nmax: u64) -> f64 {
    let mut bad = u32::from((w(0) - 2.0).abs() > 1e-13);
    for n in 0..nmax {
        let (a, b) = (w(n), w(n + 1));
        if !(b > 0.0 && b < a) {
            bad += 1;
        }
    }
    f64::from(bad)
}

fn dps_greens() -> Vec<Check> {
    const S: &str = "dps_greens";
    let mut closed_vs_quad = 0.0f64;
    for n in 0..=10 {
        let q = w0_t_quadrature([0, 0, 2 * n], 32).unwrap_or(f64::NAN);
        closed_vs_quad = closed_vs_quad.max((w0_axis(n as u64) / q - 1.0).abs());
    }
    let ratio = (0..=100u64).map(|n| (w0_axis(n + 1) / w0_axis(n) - w0_ratio(n)).abs()).fold(0.0, f64::max);
    let off_origin = [[0, 0, 2], [2, 2, 0], [2, 0, 2], [0, 0, 4]]
        .into_iter()
        .map(|m| greens_delta_stencil(m).map_or(f64::NAN, f64::abs))
        .fold(0.0, f64::max);
    vec![
        Check::near(S, "w0_origin", w0_axis(0), 2.0, 1e-13),
        Check::near(S, "w0_monotone", w0_monotone_violations(w0_axis, 200), 0.0, 0.0),
        Check::near(S, "w0_closed_vs_quadrature", closed_vs_quad, 0.0, 1e-8),
        Check::near(S, "w0_ratio_law", ratio, 0.0, 1e-12),
        measure(S, "greens_delta_origin", -1.0, 1e-10, || greens_delta_stencil([0, 0, 0])),
        Check::near(S, "greens_delta_off_origin", off_origin, 0.0, 1e-10),
        measure(S, "casimir_rotation_deep", 0.0, 1e-13, || Ok(rotation_casimir_commutator(16, (0, 1))?.deep_max)),
        measure(S, "casimir_translation", 0.0, 1e-13, || translation_casimir_commutator(16, 0)),
    ]
}

fn variational(seed: u64) -> Vec<Check> {
    const S: &str = "variational";
    let mut rng = Sampler::new(seed);
    let run = |rng: &mut Sampler| -> nspot_core::Result<[f64; 4]> {
        let mut decomposition = 0.0f64;
        for dom in [RectDomain2::new((2, 7), (2, 7))?, RectDomain2::new((1, 9), (3, 9))?] {
            for _ in 0..20 {
                let f = Field2::random(&dom, rng);
                let h = Field2::random(&dom, rng);
                decomposition = decomposition.max(decomposition_residual(&f, &h, &dom)?.abs());
            }
        }
        let dom = RectDomain2::new((1, 8), (1, 8))?;
        let j1 = Field2::random(&dom, rng);
        let j2 = Field2::random(&dom, rng);
        let gauss = discrete_gauss(&j1, &j2, &dom)?.abs();
        let mut product = 0.0f64;
        let wide = RectDomain2::new((0, 9), (0, 9))?;
        let phi = Field2::random(&wide, rng);
        let h = Field2::random(&wide, rng);
        for n in wide.box_points() {
            for axis in 0..2 {
                product = product.max(product_rule_check(&phi, &h, axis, n)?.abs());
            }
        }
        let delta = Field2::from_fn(&dom, |n| if n == [3, 3] { 1.0 } else { 0.0 });
        Ok([decomposition, gauss, product, el_residual(&delta, &dom, [3, 3])?])
    };
    match run(&mut rng) {
        Ok([d, g, p, e]) => vec![
            Check::near(S, "variation_decomposition", d, 0.0, 1e-11),
            Check::near(S, "discrete_gauss", g, 0.0, 1e-12),
            Check::near(S, "product_rule", p, 0.0, 1e-13),
            Check::near(S, "el_delta_33", e, 7.0, 1e-14),
        ],
        Err(_) => vec![Check::failed(S, "variation_decomposition", 0.0, 1e-11)],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nspot_core::dps_greens::w0_axis_with_base;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!(matches!("bogus".parse::<Suite>(), Err(CliError::Usage(_))));
        assert_eq!(Suite::parse_list(&["all".into(), "lattice".into()]).unwrap().len(), 7);
    }

    #[test]
    fn monotonicity_check_catches_a_wrong_base() {
        assert_eq!(w0_monotone_violations(w0_axis, 200), 0.0);
        assert!(w0_monotone_violations(|n| w0_axis_with_base(n, 4.0), 200) > 0.0);
    }

    #[test]
    fn nan_never_passes() {
        assert!(!Check::near("s", "c", f64::NAN, 0.0, 1.0).passed);
    }
}
