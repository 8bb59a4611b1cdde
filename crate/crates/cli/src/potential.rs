//! Point evaluation of the four potentials.

use std::str::FromStr;

use nspot_core::continuum::{coulomb_v0, Point3};
use nspot_core::dps_greens::w0_general;
use nspot_core::lattice::{LatticeGreen, U0Quadrature};
use nspot_core::phasespace::{omega0, PhasePoint};
use nspot_core::Error;
use rayon::prelude::*;

use crate::config::{RunConfig, ScaleMode};
use crate::error::{usage, CliError, CliResult};
use crate::table::{fmt_sig, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PotentialKind {
    /// `V₀ = 1/(4π|x|)` on E³.
    E3,
    /// `U₀(n)` on ℤ³.
    Lattice,
    /// `Ω₀(q, p)` on continuous phase space.
    Cps,
    /// `W₀(n)` on discrete phase space.
    Dps,
}

impl FromStr for PotentialKind {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        match s {
            "e3" => Ok(Self::E3),
            "lattice" => Ok(Self::Lattice),
            "cps" => Ok(Self::Cps),
            "dps" => Ok(Self::Dps),
            other => usage(format!("unknown potential '{other}' (expected e3, lattice, cps or dps)")),
        }
    }
}

impl PotentialKind {
    pub fn arity(self) -> usize {
        match self {
            Self::Cps => 6,
            _ => 3,
        }
    }

    fn columns(self) -> &'static [&'static str] {
        match self {
            Self::E3 => &["x", "y", "z", "value", "singular"],
            Self::Lattice | Self::Dps => &["n1", "n2", "n3", "value", "singular"],
            Self::Cps => &["q1", "q2", "q3", "p1", "p2", "p3", "magnitude", "phase", "singular"],
        }
    }
}

/// `"1,0,0"` → `[1.0, 0.0, 0.0]`.
pub fn parse_point(s: &str) -> CliResult<Vec<f64>> {
    s.split(',')
        .map(|c| c.trim().parse::<f64>().map_err(|_| CliError::Usage(format!("bad coordinate '{c}' in point '{s}'"))))
        .collect()
}

fn as_index(p: &[f64]) -> CliResult<[i64; 3]> {
    let mut out = [0; 3];
    for (o, &c) in out.iter_mut().zip(p) {
        if c.fract() != 0.0 || c.abs() > 1e9 {
            return usage(format!("lattice indices must be integers, got {c}"));
        }
        *o = c as i64;
    }
    Ok(out)
}

enum Value {
    Real(f64),
    Complex(f64, f64),
    Singular,
}

pub fn potential_table(kind: PotentialKind, points: &[Vec<f64>], cfg: &RunConfig) -> CliResult<Table> {
    if points.is_empty() {
        return usage("give at least one --point");
    }
    for p in points {
        if p.len() != kind.arity() {
            return usage(format!("{kind:?} points need {} coordinates, got {}", kind.arity(), p.len()));
        }
    }
    let indices: Vec<[i64; 3]> = match kind {
        PotentialKind::Lattice | PotentialKind::Dps => points.iter().map(|p| as_index(p)).collect::<CliResult<_>>()?,
        _ => Vec::new(),
    };
    let scale = match cfg.scale {
        ScaleMode::Lattice => 1.0,
        ScaleMode::Physical => 1.0 / cfg.ell,
    };
    let values: Vec<Value> = match kind {
        PotentialKind::E3 => points
            .iter()
            .map(|p| match coulomb_v0(&Point3::new(p[0], p[1], p[2])) {
                Ok(v) => Ok(Value::Real(v)),
                Err(Error::Singular(_)) => Ok(Value::Singular),
                Err(e) => Err(e.into()),
            })
            .collect::<CliResult<_>>()?,
        PotentialKind::Cps => points
            .iter()
            .map(|p| match omega0(&PhasePoint::new([p[0], p[1], p[2]], [p[3], p[4], p[5]])) {
                Ok(w) => Ok(Value::Complex(w.norm(), w.arg())),
                Err(Error::Singular(_)) => Ok(Value::Singular),
                Err(e) => Err(e.into()),
            })
            .collect::<CliResult<_>>()?,
        PotentialKind::Lattice => {
            let green = LatticeGreen::new(U0Quadrature { points: cfg.quad_points, ..U0Quadrature::default() })?;
            green.eval_many(&indices).into_iter().map(|v| Ok(Value::Real(v? * scale))).collect::<CliResult<_>>()?
        }
        PotentialKind::Dps => {
            indices.par_iter().map(|&n| Ok(Value::Real(w0_general(n)? * scale))).collect::<Vec<CliResult<_>>>().into_iter().collect::<CliResult<_>>()?
        }
    };

    let mut table = Table::new(kind.columns());
    table.comment(format!("potential={kind:?} scale={} ell={}", cfg.scale, fmt_sig(cfg.ell)));
    for (p, v) in points.iter().zip(values) {
        let mut row: Vec<String> = p.iter().map(|&c| fmt_sig(c)).collect();
        match v {
            Value::Real(x) => row.extend([fmt_sig(x), "0".into()]),
            Value::Complex(r, phi) => row.extend([fmt_sig(r), fmt_sig(phi), "0".into()]),
            Value::Singular => {
                row.push("inf".into());
                if kind == PotentialKind::Cps {
                    row.push("nan".into());
                }
                row.push("1".into());
            }
        }
        table.push(row);
    }
    Ok(table)
}
