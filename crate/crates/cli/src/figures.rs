//! Data behind the two comparison plots.
//!
//! The discrete phase space curve is placed at `x = ℓ√(4n+1)`, the `p = 0`
//! point of the ellipse `½[ℓ²p² + x²/ℓ²] - ½ = 2n` that carries
//! `W₀(0,0,2n)`. The lattice curve is placed at `x = ℓn`.

use std::f64::consts::PI;
use std::str::FromStr;

use nspot_core::dps_greens::{w0_axis, w0_axis_gamma};
use nspot_core::lattice::{LatticeGreen, U0Quadrature};

use crate::config::{RunConfig, ScaleMode};
use crate::error::{usage, CliError, CliResult};
use crate::table::{fmt_sig, Table};

/// How the dps column of figure 2 is attached to the shared `x = ℓn` grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DpsMap {
    /// Invert `x = ℓ√(4m+1)` and evaluate the gamma-function continuation
    /// of the axis value at real `m = ((x/ℓ)² - 1)/4`.
    Ellipse,
    /// Use the axis value with the same index, `w0_axis(n)`.
    Index,
}

impl FromStr for DpsMap {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        match s {
            "ellipse" => Ok(Self::Ellipse),
            "index" => Ok(Self::Index),
            other => usage(format!("unknown dps map '{other}' (expected ellipse or index)")),
        }
    }
}

fn scale_factor(cfg: &RunConfig) -> f64 {
    match cfg.scale {
        ScaleMode::Lattice => 1.0,
        ScaleMode::Physical => 1.0 / cfg.ell,
    }
}

pub fn figure1(cfg: &RunConfig) -> CliResult<Table> {
    let s = scale_factor(cfg);
    let mut t = Table::new(&["n", "x", "W"]);
    t.comment("figure 1: discrete phase space potential along an axis");
    t.comment("x = ell*sqrt(4n+1)  (p = 0 point of the level-2n ellipse)");
    t.comment(if cfg.scale == ScaleMode::Physical { "W = W0(0,0,2n)/ell" } else { "W = W0(0,0,2n)" });
    t.comment(format!("ell={} nmax={} scale={}", fmt_sig(cfg.ell), cfg.nmax, cfg.scale));
    for n in 0..=cfg.nmax {
        let x = cfg.ell * ((4 * n + 1) as f64).sqrt();
        t.push(vec![n.to_string(), fmt_sig(x), fmt_sig(w0_axis(n) * s)]);
    }
    Ok(t)
}

pub fn figure2(cfg: &RunConfig, map: DpsMap) -> CliResult<Table> {
    let s = scale_factor(cfg);
    let green = LatticeGreen::new(U0Quadrature { points: cfg.quad_points, ..U0Quadrature::default() })?;
    let indices: Vec<[i64; 3]> = (1..=cfg.nmax as i64).map(|n| [n, 0, 0]).collect();
    let lattice = green.eval_many(&indices);

    let mut t = Table::new(&["x", "V0", "U0", "W0"]);
    t.comment("figure 2: continuum, lattice and discrete phase space potentials");
    t.comment("V0 = 1/(4 pi x)");
    t.comment("U0 = |U0(n,0,0)| at x = ell*n");
    t.comment(match map {
        DpsMap::Ellipse => "W0 = W0 axis value continued to m = ((x/ell)^2 - 1)/4, the inverse of x = ell*sqrt(4m+1)",
        DpsMap::Index => "W0 = W0(0,0,2n) at x = ell*n",
    });
    t.comment(format!(
        "ell={} nmax={} scale={} quad_points={}{}",
        fmt_sig(cfg.ell),
        cfg.nmax,
        cfg.scale,
        cfg.quad_points,
        if cfg.scale == ScaleMode::Physical { " (U0 and W0 divided by ell)" } else { "" }
    ));
    for (n, u) in (1..=cfg.nmax).zip(lattice) {
        let x = cfg.ell * n as f64;
        let v0 = 1.0 / (4.0 * PI * x);
        let w = match map {
            DpsMap::Ellipse => w0_axis_gamma(((n * n) as f64 - 1.0) / 4.0)?,
            DpsMap::Index => w0_axis(n),
        };
        t.push(vec![fmt_sig(x), fmt_sig(v0), fmt_sig(u?.abs() * s), fmt_sig(w * s)]);
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figure1_first_row() {
        let t = figure1(&RunConfig::figure1_defaults()).unwrap();
        assert_eq!(t.rows[0], ["0", "0.100000000", "2.00000000"]);
        assert_eq!(t.rows.len(), 41);
    }

    #[test]
    fn figure2_ratio_and_unit_point() {
        let cfg = RunConfig { ell: 1.0, nmax: 20, ..RunConfig::figure2_defaults() };
        let t = figure2(&cfg, DpsMap::Ellipse).unwrap();
        assert_eq!(t.rows[0][1], "0.0795774715");
        // m = 0 at n = 1
        assert_eq!(t.rows[0][3], "2.00000000");
        let last = &t.rows[19];
        let ratio: f64 = last[2].parse::<f64>().unwrap() / last[1].parse::<f64>().unwrap();
        assert!((ratio - 1.0).abs() < 0.05);
    }
}
