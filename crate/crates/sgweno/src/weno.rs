//! Third-order finite-difference reconstruction and the semi-discrete
//! right-hand side.
//!
//! The conservative update on each axis is
//! `-(fhat_{i+1/2} - fhat_{i-1/2}) / h` with the numerical flux assembled
//! from a Lax-Friedrichs splitting `f = f+ + f-`, `f+-(u) = (f(u) +- a u)/2`
//! where `a` bounds `|f'(u)|` over the whole grid. The positive part is
//! reconstructed from the left-biased three-point stencil, the negative part
//! mirror-symmetrically from the right-biased one. Convex weights blend the
//! two two-point substencils; the `Linear` variant freezes the weights at
//! their smooth-data values (2/3, 1/3), the `Weno` variant adapts them
//! through the squared slope smoothness indicators.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::mesh::{line_bases, GridFunction};
use crate::problems::{Flux, ProblemSpec};

/// Ideal substencil weights: 2/3 on {i, i+1}, 1/3 on {i-1, i}.
pub const D0: f64 = 2.0 / 3.0;
pub const D1: f64 = 1.0 / 3.0;

/// Which reconstruction to use for interface fluxes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SchemeVariant {
    /// Fixed ideal weights; third order, not oscillation-safe.
    Linear,
    /// Smoothness-adapted weights.
    Weno,
}

/// Convex pair of substencil weights together with the indicators that
/// produced them.
#[derive(Clone, Copy, Debug)]
pub struct WenoWeights {
    pub w0: f64,
    pub w1: f64,
    pub beta0: f64,
    pub beta1: f64,
    pub epsilon: f64,
}

impl WenoWeights {
    /// Weights for the left-biased flux stencil (f_{i-1}, f_i, f_{i+1}).
    #[inline]
    pub fn flux(f_im1: f64, f_i: f64, f_ip1: f64, epsilon: f64) -> Self {
        let beta0 = (f_ip1 - f_i) * (f_ip1 - f_i);
        let beta1 = (f_i - f_im1) * (f_i - f_im1);
        let a0 = D0 / ((epsilon + beta0) * (epsilon + beta0));
        let a1 = D1 / ((epsilon + beta1) * (epsilon + beta1));
        let w0 = a0 / (a0 + a1);
        Self { w0, w1: 1.0 - w0, beta0, beta1, epsilon }
    }
}

/// Positive-wind interface flux at x_{i+1/2} from (f_{i-1}, f_i, f_{i+1}).
#[inline]
pub fn weno_flux_positive(f_im1: f64, f_i: f64, f_ip1: f64, epsilon: f64) -> f64 {
    let w = WenoWeights::flux(f_im1, f_i, f_ip1, epsilon);
    w.w0 * 0.5 * (f_i + f_ip1) + w.w1 * 0.5 * (3.0 * f_i - f_im1)
}

/// Same stencil with the ideal weights; the underlying third-order upwind
/// scheme.
#[inline]
pub fn linear_flux_positive(f_im1: f64, f_i: f64, f_ip1: f64) -> f64 {
    D0 * 0.5 * (f_i + f_ip1) + D1 * 0.5 * (3.0 * f_i - f_im1)
}

/// Negative-wind interface flux at x_{i+1/2} from (f_i, f_{i+1}, f_{i+2});
/// the mirror image of the positive reconstruction about the interface.
#[inline]
pub fn weno_flux_negative(f_i: f64, f_ip1: f64, f_ip2: f64, epsilon: f64) -> f64 {
    weno_flux_positive(f_ip2, f_ip1, f_i, epsilon)
}

#[inline]
pub fn linear_flux_negative(f_i: f64, f_ip1: f64, f_ip2: f64) -> f64 {
    linear_flux_positive(f_ip2, f_ip1, f_i)
}

/// Lax-Friedrichs split of a pointwise flux value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FluxSplitPair {
    pub plus: f64,
    pub minus: f64,
}

#[inline]
pub fn lax_friedrichs_split(f_val: f64, u: f64, alpha: f64) -> FluxSplitPair {
    FluxSplitPair { plus: 0.5 * (f_val + alpha * u), minus: 0.5 * (f_val - alpha * u) }
}

/// Bound on |f'(u)| over the given values.
pub fn max_wavespeed(values: &[f64], flux: Flux) -> f64 {
    values.iter().fold(0.0f64, |m, &u| m.max(flux.df(u).abs()))
}

struct LineScratch {
    fp: Vec<f64>,
    fm: Vec<f64>,
    fhat: Vec<f64>,
}

impl LineScratch {
    fn new(n: usize) -> Self {
        Self { fp: vec![0.0; n], fm: vec![0.0; n], fhat: vec![0.0; n] }
    }
}

/// One periodic line: `line` holds the solution values on entry and the flux
/// difference `-(fhat_{i+1/2} - fhat_{i-1/2}) / h` on exit.
fn line_flux_difference(
    line: &mut [f64],
    flux: Flux,
    alpha: f64,
    h: f64,
    epsilon: f64,
    variant: SchemeVariant,
    scratch: &mut LineScratch,
) {
    let n = line.len();
    let fp = &mut scratch.fp;
    let fm = &mut scratch.fm;
    let fhat = &mut scratch.fhat;
    for i in 0..n {
        let f = flux.f(line[i]);
        let split = lax_friedrichs_split(f, line[i], alpha);
        fp[i] = split.plus;
        fm[i] = split.minus;
    }
    for i in 0..n {
        let im1 = if i == 0 { n - 1 } else { i - 1 };
        let ip1 = if i + 1 == n { 0 } else { i + 1 };
        let ip2 = if ip1 + 1 == n { 0 } else { ip1 + 1 };
        fhat[i] = match variant {
            SchemeVariant::Weno => {
                weno_flux_positive(fp[im1], fp[i], fp[ip1], epsilon)
                    + weno_flux_negative(fm[i], fm[ip1], fm[ip2], epsilon)
            }
            SchemeVariant::Linear => {
                linear_flux_positive(fp[im1], fp[i], fp[ip1])
                    + linear_flux_negative(fm[i], fm[ip1], fm[ip2])
            }
        };
    }
    for i in 0..n {
        let im1 = if i == 0 { n - 1 } else { i - 1 };
        line[i] = -(fhat[i] - fhat[im1]) / h;
    }
}

/// Add this axis' flux-difference contribution to `out`.
fn axis_contribution(
    u: &GridFunction,
    axis: usize,
    flux: Flux,
    alpha: f64,
    epsilon: f64,
    variant: SchemeVariant,
    out: &mut [f64],
) {
    let n = u.spec.cells(axis);
    let h = u.spec.mesh_size(axis);
    let stride = u.spec.strides()[axis];
    let bases = line_bases(&u.spec, axis);

    // Gather into line-major storage, run every line, scatter-add back.
    // Lines are independent, so the parallel loop is bitwise deterministic.
    let mut work = vec![0.0f64; bases.len() * n];
    for (l, &base) in bases.iter().enumerate() {
        for k in 0..n {
            work[l * n + k] = u.values[base + k * stride];
        }
    }
    work.par_chunks_mut(n).for_each_init(
        || LineScratch::new(n),
        |scratch, line| line_flux_difference(line, flux, alpha, h, epsilon, variant, scratch),
    );
    for (l, &base) in bases.iter().enumerate() {
        for k in 0..n {
            out[base + k * stride] += work[l * n + k];
        }
    }
}

/// Semi-discrete right-hand side `-sum_k f_k(u)_xk + s(u)` on the grid of
/// `u`, in the same storage layout. The splitting bound is recomputed per
/// axis from the current values on every call.
pub fn rhs(
    u: &GridFunction,
    problem: &ProblemSpec,
    epsilon: f64,
    variant: SchemeVariant,
) -> Result<Vec<f64>> {
    let d = u.spec.dim();
    if problem.dim() != d {
        return Err(Error::DimensionMismatch(format!(
            "problem '{}' is {}D, grid is {}D",
            problem.name,
            problem.dim(),
            d
        )));
    }
    if epsilon <= 0.0 {
        return Err(Error::InvalidParameter(format!("epsilon must be positive, got {epsilon}")));
    }
    let mut out = vec![0.0f64; u.values.len()];
    for axis in 0..d {
        let flux = problem.fluxes[axis];
        let alpha = max_wavespeed(&u.values, flux);
        axis_contribution(u, axis, flux, alpha, epsilon, variant, &mut out);
    }
    if !problem.source.is_none() {
        for (o, &v) in out.iter_mut().zip(&u.values) {
            *o += problem.source.s(v);
        }
    }
    Ok(out)
}
