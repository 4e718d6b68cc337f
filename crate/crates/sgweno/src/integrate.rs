//! Time marching with the three-stage strong-stability-preserving
//! Runge-Kutta scheme.
//!
//! All component grids of a sparse run advance with one shared step size so
//! their solutions line up at the final time. The step comes from the finest
//! grid's mesh and a per-axis wavespeed bound:
//! `dt = cfl / sum_k(a_k / h_k)`. By default the bound is frozen from the
//! initial data; the refreshed mode recomputes it between steps, which
//! forces the grids to advance in lockstep.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::mesh::GridFunction;
use crate::problems::ProblemSpec;
use crate::weno::{self, SchemeVariant};

/// Step-size rule shared by every grid in a run.
#[derive(Clone, Debug)]
pub struct TimeStepPolicy {
    pub cfl: f64,
    /// Mesh sizes of the finest grid, one per axis.
    pub finest_h: Vec<f64>,
    /// Per-axis bounds on |f_k'(u)|.
    pub wavespeed: Vec<f64>,
}

/// Whether the wavespeed bound is frozen from the initial data or refreshed
/// from the current state between steps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DtMode {
    Frozen,
    Refreshed,
}

/// `dt = cfl / sum_k (a_k / h_k)`.
pub fn compute_dt(policy: &TimeStepPolicy) -> Result<f64> {
    if policy.cfl <= 0.0 || !policy.cfl.is_finite() {
        return Err(Error::InvalidParameter(format!("cfl must be positive, got {}", policy.cfl)));
    }
    if policy.finest_h.len() != policy.wavespeed.len() || policy.finest_h.is_empty() {
        return Err(Error::DimensionMismatch(
            "finest_h and wavespeed must have the same (nonzero) length".into(),
        ));
    }
    let mut denom = 0.0;
    for (&h, &a) in policy.finest_h.iter().zip(&policy.wavespeed) {
        if h <= 0.0 {
            return Err(Error::InvalidParameter(format!("mesh size must be positive, got {h}")));
        }
        if a < 0.0 {
            return Err(Error::InvalidParameter(format!("wavespeed bound negative: {a}")));
        }
        denom += a / h;
    }
    if denom <= 0.0 {
        return Err(Error::ZeroWavespeeds);
    }
    Ok(policy.cfl / denom)
}

/// One SSP-RK3 step `u -> u + dt L(u)` composed of three convex Euler stages.
pub fn ssp_rk3_step<F>(u: &GridFunction, dt: f64, mut rhs_op: F) -> Result<GridFunction>
where
    F: FnMut(&GridFunction) -> Result<Vec<f64>>,
{
    let n = u.values.len();

    let l0 = rhs_op(u)?;
    debug_assert_eq!(l0.len(), n);
    let mut u1 = u.clone();
    for i in 0..n {
        u1.values[i] = u.values[i] + dt * l0[i];
    }

    let l1 = rhs_op(&u1)?;
    let mut u2 = u1; // reuse the buffer
    for i in 0..n {
        u2.values[i] = 0.75 * u.values[i] + 0.25 * (u2.values[i] + dt * l1[i]);
    }

    let l2 = rhs_op(&u2)?;
    let mut out = u2;
    for i in 0..n {
        out.values[i] =
            u.values[i] / 3.0 + 2.0 / 3.0 * (out.values[i] + dt * l2[i]);
    }
    Ok(out)
}

/// March one grid to `t_final` with a frozen step size, truncating the last
/// step to land on the final time exactly. `progress` receives
/// `(step_index, t_after_step, dt_used)`.
pub fn evolve(
    u0: GridFunction,
    problem: &ProblemSpec,
    policy: &TimeStepPolicy,
    t_final: f64,
    epsilon: f64,
    variant: SchemeVariant,
    mut progress: Option<&mut dyn FnMut(usize, f64, f64)>,
) -> Result<GridFunction> {
    if t_final < 0.0 || !t_final.is_finite() {
        return Err(Error::InvalidParameter(format!("t_final must be >= 0, got {t_final}")));
    }
    let dt = compute_dt(policy)?;
    let mut u = u0;
    let mut t = 0.0;
    let mut step = 0usize;
    while t < t_final {
        let remaining = t_final - t;
        if remaining <= t_final * 1e-14 {
            break;
        }
        let dt_step = dt.min(remaining);
        u = ssp_rk3_step(&u, dt_step, |w| weno::rhs(w, problem, epsilon, variant))?;
        t += dt_step;
        if !u.values.iter().all(|v| v.is_finite()) {
            return Err(Error::NonFinite { step, t });
        }
        if let Some(cb) = progress.as_deref_mut() {
            cb(step, t, dt_step);
        }
        step += 1;
    }
    Ok(u)
}

/// Per-axis mesh of the finest grid represented in `states` (the smallest
/// spacing that occurs on each axis).
fn finest_mesh(states: &[GridFunction]) -> Vec<f64> {
    let d = states[0].spec.dim();
    (0..d)
        .map(|k| states.iter().map(|u| u.spec.mesh_size(k)).fold(f64::INFINITY, f64::min))
        .collect()
}

/// Per-axis wavespeed bound over the union of all states.
fn union_wavespeed(states: &[GridFunction], problem: &ProblemSpec) -> Vec<f64> {
    (0..problem.dim())
        .map(|k| {
            states
                .iter()
                .map(|u| weno::max_wavespeed(&u.values, problem.fluxes[k]))
                .fold(0.0f64, f64::max)
        })
        .collect()
}

/// March a family of component grids to `t_final` with one shared dt
/// sequence. Frozen mode evolves the members independently (in parallel);
/// refreshed mode re-derives dt from the union of the current states before
/// every step, synchronizing the members at each step boundary.
pub fn evolve_group(
    states: Vec<GridFunction>,
    problem: &ProblemSpec,
    cfl: f64,
    t_final: f64,
    epsilon: f64,
    variant: SchemeVariant,
    mode: DtMode,
) -> Result<Vec<GridFunction>> {
    if states.is_empty() {
        return Err(Error::ComponentMismatch("no component grids".into()));
    }
    let finest_h = finest_mesh(&states);
    match mode {
        DtMode::Frozen => {
            let policy = TimeStepPolicy {
                cfl,
                finest_h,
                wavespeed: union_wavespeed(&states, problem),
            };
            states
                .into_par_iter()
                .map(|u| evolve(u, problem, &policy, t_final, epsilon, variant, None))
                .collect()
        }
        DtMode::Refreshed => {
            let mut states = states;
            let mut t = 0.0;
            let mut step = 0usize;
            while t < t_final {
                let remaining = t_final - t;
                if remaining <= t_final * 1e-14 {
                    break;
                }
                let policy = TimeStepPolicy {
                    cfl,
                    finest_h: finest_h.clone(),
                    wavespeed: union_wavespeed(&states, problem),
                };
                let dt_step = compute_dt(&policy)?.min(remaining);
                states = states
                    .into_par_iter()
                    .map(|u| ssp_rk3_step(&u, dt_step, |w| weno::rhs(w, problem, epsilon, variant)))
                    .collect::<Result<Vec<_>>>()?;
                t += dt_step;
                for u in &states {
                    if !u.values.iter().all(|v| v.is_finite()) {
                        return Err(Error::NonFinite { step, t });
                    }
                }
                step += 1;
            }
            Ok(states)
        }
    }
}
