//! Catalog of scalar conservation-law test problems.
//!
//! Each problem is `u_t + sum_k f_k(u)_{x_k} = s(u)` on a periodic box with a
//! closed-form initial condition. Where a closed-form solution exists it is
//! attached as `exact`; for the plain Burgers problems the solution is only
//! available implicitly through characteristics while it stays smooth, which
//! `reference_solution` evaluates by a safeguarded Newton solve.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::mesh::DomainBox;

/// Per-axis flux function. The catalog only needs these two; both are cheap
/// enough to inline into the reconstruction loops.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Flux {
    /// f(u) = speed * u
    Linear { speed: f64 },
    /// f(u) = u^2 / 2
    Burgers,
}

impl Flux {
    #[inline]
    pub fn f(&self, u: f64) -> f64 {
        match self {
            Flux::Linear { speed } => speed * u,
            Flux::Burgers => 0.5 * u * u,
        }
    }

    /// df/du, used for wavespeed bounds.
    #[inline]
    pub fn df(&self, u: f64) -> f64 {
        match self {
            Flux::Linear { speed } => *speed,
            Flux::Burgers => u,
        }
    }
}

/// Pointwise source term on the right-hand side.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Source {
    None,
    /// s(u) = -rate * u
    LinearDamping { rate: f64 },
}

impl Source {
    #[inline]
    pub fn s(&self, u: f64) -> f64 {
        match self {
            Source::None => 0.0,
            Source::LinearDamping { rate } => -rate * u,
        }
    }

    pub fn is_none(&self) -> bool {
        matches!(self, Source::None)
    }
}

/// Initial data of the form `u0(x) = psi(x_1 + .. + x_d)` for a source-free
/// problem with the Burgers flux on every axis. For such data the solution
/// stays a function of `s = x_1 + .. + x_d` and satisfies
/// `u = psi(s - d * u * t)` until characteristics cross at
/// `t = 1 / (d * max(-psi'))`.
#[derive(Clone, Copy, Debug)]
pub struct DiagonalWave {
    pub psi: fn(f64) -> f64,
    pub dpsi: fn(f64) -> f64,
    /// max over s of -psi'(s); determines the breakdown time.
    pub max_negative_slope: f64,
    pub psi_min: f64,
    pub psi_max: f64,
}

impl DiagonalWave {
    /// First time at which characteristics cross for dimension `dim`.
    pub fn shock_time(&self, dim: usize) -> f64 {
        1.0 / (dim as f64 * self.max_negative_slope)
    }

    /// Solve `u = psi(s - dim * t * u)` for the smooth solution. Returns
    /// `None` at or past the breakdown time, or if the iteration fails to
    /// converge.
    pub fn solve(&self, dim: usize, s: f64, t: f64) -> Option<f64> {
        if t < 0.0 || t >= self.shock_time(dim) * (1.0 - 1e-12) {
            return None;
        }
        let m = dim as f64;
        let mut lo = self.psi_min - 1e-9;
        let mut hi = self.psi_max + 1e-9;
        let mut u = (self.psi)(s).clamp(lo, hi);
        for _ in 0..100 {
            let arg = s - m * t * u;
            let f = u - (self.psi)(arg);
            if f.abs() < 1e-14 {
                return Some(u);
            }
            if f > 0.0 {
                hi = u;
            } else {
                lo = u;
            }
            // Pre-shock the derivative is bounded away from zero, but guard
            // the Newton step with the bracket anyway.
            let df = 1.0 + m * t * (self.dpsi)(arg);
            let next = u - f / df;
            u = if df > 0.0 && next > lo && next < hi { next } else { 0.5 * (lo + hi) };
        }
        let f = u - (self.psi)(s - m * t * u);
        if f.abs() < 1e-10 {
            Some(u)
        } else {
            None
        }
    }
}

/// A complete problem definition: geometry, fluxes, source, initial data and
/// whatever form of reference solution is available.
#[derive(Clone, Debug)]
pub struct ProblemSpec {
    pub name: &'static str,
    pub domain: DomainBox,
    pub fluxes: Vec<Flux>,
    pub source: Source,
    pub initial: fn(&[f64]) -> f64,
    pub exact: Option<fn(&[f64], f64) -> f64>,
    pub diagonal_wave: Option<DiagonalWave>,
    pub default_cfl: f64,
    pub default_tfinal: f64,
}

impl ProblemSpec {
    pub fn dim(&self) -> usize {
        self.domain.dim()
    }

    /// Best available pointwise reference value at time `t`: the closed-form
    /// solution if there is one, otherwise the characteristics solution while
    /// it exists.
    pub fn reference_solution(&self, coords: &[f64], t: f64) -> Option<f64> {
        if let Some(exact) = self.exact {
            return Some(exact(coords, t));
        }
        if let Some(wave) = &self.diagonal_wave {
            let s: f64 = coords.iter().sum();
            return wave.solve(self.dim(), s, t);
        }
        None
    }
}

/// Names accepted by `catalog_lookup`, in a stable order.
pub const PROBLEM_NAMES: [&str; 5] =
    ["linear3d", "burgers_source_2d", "burgers_source_3d", "burgers2d", "burgers3d"];

fn sine_diag_3(c: &[f64]) -> f64 {
    (FRAC_PI_2 * (c[0] + c[1] + c[2])).sin()
}

fn sine_diag_3_shifted(c: &[f64], t: f64) -> f64 {
    (FRAC_PI_2 * (c[0] + c[1] + c[2] - 3.0 * t)).sin()
}

fn sine_skew_2(c: &[f64]) -> f64 {
    (c[0] - c[1]).sin()
}

fn sine_skew_2_decayed(c: &[f64], t: f64) -> f64 {
    (-0.1 * t).exp() * (c[0] - c[1]).sin()
}

fn sine_skew_3(c: &[f64]) -> f64 {
    (c[0] - 0.5 * c[1] - 0.5 * c[2]).sin()
}

fn sine_skew_3_decayed(c: &[f64], t: f64) -> f64 {
    (-0.1 * t).exp() * (c[0] - 0.5 * c[1] - 0.5 * c[2]).sin()
}

fn bump_psi(s: f64) -> f64 {
    0.3 + 0.7 * (FRAC_PI_2 * s).sin()
}

fn bump_dpsi(s: f64) -> f64 {
    0.7 * FRAC_PI_2 * (FRAC_PI_2 * s).cos()
}

fn bump_2(c: &[f64]) -> f64 {
    bump_psi(c[0] + c[1])
}

fn bump_3(c: &[f64]) -> f64 {
    bump_psi(c[0] + c[1] + c[2])
}

fn bump_wave() -> DiagonalWave {
    DiagonalWave {
        psi: bump_psi,
        dpsi: bump_dpsi,
        max_negative_slope: 0.7 * FRAC_PI_2,
        psi_min: -0.4,
        psi_max: 1.0,
    }
}

/// Look up a problem by its CLI name.
pub fn catalog_lookup(name: &str) -> Result<ProblemSpec> {
    let pi = std::f64::consts::PI;
    match name {
        // u_t + u_x + u_y + u_z = 0, translating sine wave.
        "linear3d" => Ok(ProblemSpec {
            name: "linear3d",
            domain: DomainBox::new(vec![-2.0; 3], vec![2.0; 3])?,
            fluxes: vec![Flux::Linear { speed: 1.0 }; 3],
            source: Source::None,
            initial: sine_diag_3,
            exact: Some(sine_diag_3_shifted),
            diagonal_wave: None,
            default_cfl: 0.75,
            default_tfinal: 1.0,
        }),
        // 2D Burgers with damping; the nonlinear terms cancel along x - y so
        // the decaying sine is exact for all time.
        "burgers_source_2d" => Ok(ProblemSpec {
            name: "burgers_source_2d",
            domain: DomainBox::new(vec![0.0; 2], vec![2.0 * pi; 2])?,
            fluxes: vec![Flux::Burgers; 2],
            source: Source::LinearDamping { rate: 0.1 },
            initial: sine_skew_2,
            exact: Some(sine_skew_2_decayed),
            diagonal_wave: None,
            default_cfl: 0.5,
            default_tfinal: 1.0,
        }),
        // 3D variant; the profile depends on x - y/2 - z/2, again cancelling
        // the flux divergence.
        "burgers_source_3d" => Ok(ProblemSpec {
            name: "burgers_source_3d",
            domain: DomainBox::new(vec![0.0; 3], vec![4.0 * pi; 3])?,
            fluxes: vec![Flux::Burgers; 3],
            source: Source::LinearDamping { rate: 0.1 },
            initial: sine_skew_3,
            exact: Some(sine_skew_3_decayed),
            diagonal_wave: None,
            default_cfl: 0.75,
            default_tfinal: 1.0,
        }),
        // Source-free 2D Burgers; a shock forms at t = 1/(0.7 pi) ~ 0.455.
        // Default final time keeps the solution smooth.
        "burgers2d" => Ok(ProblemSpec {
            name: "burgers2d",
            domain: DomainBox::new(vec![-2.0; 2], vec![2.0; 2])?,
            fluxes: vec![Flux::Burgers; 2],
            source: Source::None,
            initial: bump_2,
            exact: None,
            diagonal_wave: Some(bump_wave()),
            default_cfl: 0.5,
            default_tfinal: 0.5 / (pi * pi),
        }),
        // Source-free 3D Burgers. Note the initial profile is antiperiodic
        // across the box, so the periodic extension carries a jump along the
        // seam from t = 0; this is a shock-capturing exercise and no smooth
        // reference is attached.
        "burgers3d" => Ok(ProblemSpec {
            name: "burgers3d",
            domain: DomainBox::new(vec![-3.0; 3], vec![3.0; 3])?,
            fluxes: vec![Flux::Burgers; 3],
            source: Source::None,
            initial: bump_3,
            exact: None,
            diagonal_wave: None,
            default_cfl: 0.75,
            default_tfinal: 0.5 / (pi * pi),
        }),
        other => Err(Error::UnknownProblem(other.to_string())),
    }
}
