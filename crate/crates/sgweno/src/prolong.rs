//! Prolongation of component-grid solutions to the finest grid and their
//! signed combination.
//!
//! Prolongation works axis by axis (x, then y, then z). Along one axis a
//! coarse periodic line of `n` values is refined to `n * r` values,
//! `r = 2^(level gap)`, in a single pass:
//!
//! * Lagrange: the line is tiled with non-overlapping two-cell windows
//!   starting at node 0 (the last window wraps); one quadratic is fitted
//!   through each window's three nodes and evaluated at the fine nodes
//!   inside the window.
//! * WENO: every fine node is assigned to the coarse node whose half-open
//!   cell `[x_{i-1/2}, x_{i+1/2})` contains it and interpolated from
//!   `(u_{i-1}, u_i, u_{i+1})` as a convex blend of the two linear
//!   interpolants, weighted by squared-slope smoothness indicators. This
//!   keeps jumps from ringing where the quadratic fit would overshoot.
//!
//! Fine nodes that coincide with coarse nodes always copy the coarse value.

use crate::error::{Error, Result};
use crate::mesh::{line_bases, CombinationIndexSet, GridFunction, GridSpec, LevelTuple};

/// Interpolation rule used when moving component solutions to the finest
/// grid.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ProlongationKind {
    Lagrange,
    Weno { epsilon: f64 },
}

/// Third-order WENO interpolation at offset `alpha_tilde` (in units of h,
/// measured from node i-1), valid on `[0.5, 1.5)`. The two candidates are
/// the linear interpolants through (i-1, i) and (i, i+1); their ideal
/// weights `1 - alpha/2` and `alpha/2` reproduce the quadratic through all
/// three nodes.
pub fn weno_interpolate(
    u_im1: f64,
    u_i: f64,
    u_ip1: f64,
    alpha_tilde: f64,
    epsilon: f64,
) -> Result<f64> {
    if !(0.5..1.5).contains(&alpha_tilde) {
        return Err(Error::OffsetOutOfRange(alpha_tilde));
    }
    Ok(weno_interpolate_unchecked(u_im1, u_i, u_ip1, alpha_tilde, epsilon))
}

#[inline]
fn weno_interpolate_unchecked(
    u_im1: f64,
    u_i: f64,
    u_ip1: f64,
    alpha_tilde: f64,
    epsilon: f64,
) -> f64 {
    let t = alpha_tilde - 1.0;
    // Increment form: exact at t = 0 and on flat stencils.
    let p1 = u_i + t * (u_i - u_im1);
    let p2 = u_i + t * (u_ip1 - u_i);
    let g1 = 1.0 - 0.5 * alpha_tilde;
    let g2 = 0.5 * alpha_tilde;
    let b1 = (u_i - u_im1) * (u_i - u_im1);
    let b2 = (u_ip1 - u_i) * (u_ip1 - u_i);
    let a1 = g1 / ((epsilon + b1) * (epsilon + b1));
    let a2 = g2 / ((epsilon + b2) * (epsilon + b2));
    let w1 = a1 / (a1 + a2);
    p2 + w1 * (p1 - p2)
}

fn check_refine_factor(r: usize) -> Result<()> {
    if r == 0 || !r.is_power_of_two() {
        return Err(Error::InvalidParameter(format!(
            "refine factor must be a power of two, got {r}"
        )));
    }
    Ok(())
}

/// Refine one periodic line by `refine_factor` with windowed quadratics.
pub fn lagrange_prolong_line(coarse: &[f64], refine_factor: usize) -> Result<Vec<f64>> {
    check_refine_factor(refine_factor)?;
    let n = coarse.len();
    if n % 2 != 0 || n < 2 {
        return Err(Error::OddCellCount(n));
    }
    if refine_factor == 1 {
        return Ok(coarse.to_vec());
    }
    let r = refine_factor;
    let mut fine = vec![0.0; n * r];
    for w in 0..n / 2 {
        let v0 = coarse[2 * w];
        let v1 = coarse[2 * w + 1];
        let v2 = coarse[(2 * w + 2) % n];
        // Newton form on local coordinates t in [0, 2]: exact on flat and
        // linear data by construction.
        let d1 = v1 - v0;
        let d2 = (v2 - v1) - d1;
        let base = 2 * w * r;
        for off in 0..2 * r {
            fine[base + off] = if off == 0 {
                v0
            } else if off == r {
                v1
            } else {
                let t = off as f64 / r as f64;
                v0 + t * d1 + 0.5 * t * (t - 1.0) * d2
            };
        }
    }
    Ok(fine)
}

/// Refine one periodic line by `refine_factor` with per-point WENO
/// interpolation.
pub fn weno_prolong_line(coarse: &[f64], refine_factor: usize, epsilon: f64) -> Result<Vec<f64>> {
    check_refine_factor(refine_factor)?;
    let n = coarse.len();
    if n < 2 {
        return Err(Error::InvalidParameter(format!("line needs at least 2 values, got {n}")));
    }
    if refine_factor == 1 {
        return Ok(coarse.to_vec());
    }
    let r = refine_factor;
    let mut fine = vec![0.0; n * r];
    for (j, slot) in fine.iter_mut().enumerate() {
        if j % r == 0 {
            *slot = coarse[j / r];
            continue;
        }
        // Owning coarse node: the one whose cell [x_{i-1/2}, x_{i+1/2})
        // contains fine node j; its offset from node i-1 lands in [1/2, 3/2).
        let i_raw = (j + r / 2) / r;
        let delta = j as f64 - (i_raw * r) as f64;
        let alpha_tilde = 1.0 + delta / r as f64;
        let i = i_raw % n;
        let im1 = (i + n - 1) % n;
        let ip1 = (i + 1) % n;
        *slot =
            weno_interpolate_unchecked(coarse[im1], coarse[i], coarse[ip1], alpha_tilde, epsilon);
    }
    Ok(fine)
}

/// Replace `axis` of `u` with a line-wise refinement by `factor`.
fn refine_axis(
    u: &GridFunction,
    axis: usize,
    factor: usize,
    kind: &ProlongationKind,
) -> Result<GridFunction> {
    let old_spec = &u.spec;
    let mut levels = old_spec.levels.clone();
    levels[axis] += factor.trailing_zeros() as usize;
    let new_spec = GridSpec::new(old_spec.domain.clone(), old_spec.root_cells, levels)?;

    let n_old = old_spec.cells(axis);
    let n_new = new_spec.cells(axis);
    let old_stride = old_spec.strides()[axis];
    let new_stride = new_spec.strides()[axis];
    // The other axes are untouched, so both grids enumerate the same lines
    // in the same order.
    let old_bases = line_bases(old_spec, axis);
    let new_bases = line_bases(&new_spec, axis);

    let mut out = vec![0.0; new_spec.total_values()];
    let mut line = vec![0.0; n_old];
    for (&ob, &nb) in old_bases.iter().zip(&new_bases) {
        for k in 0..n_old {
            line[k] = u.values[ob + k * old_stride];
        }
        let fine = match kind {
            ProlongationKind::Lagrange => lagrange_prolong_line(&line, factor)?,
            ProlongationKind::Weno { epsilon } => weno_prolong_line(&line, factor, *epsilon)?,
        };
        debug_assert_eq!(fine.len(), n_new);
        for k in 0..n_new {
            out[nb + k * new_stride] = fine[k];
        }
    }
    Ok(GridFunction { spec: new_spec, values: out })
}

fn prolong_with_axis_order(
    u: &GridFunction,
    target_levels: &[usize],
    kind: &ProlongationKind,
    order: &[usize],
) -> Result<GridFunction> {
    let d = u.spec.dim();
    if target_levels.len() != d {
        return Err(Error::DimensionMismatch(format!(
            "{} target levels for a {}D grid",
            target_levels.len(),
            d
        )));
    }
    for k in 0..d {
        if target_levels[k] < u.spec.levels[k] {
            return Err(Error::TargetCoarser(format!(
                "axis {k}: source level {}, target {}",
                u.spec.levels[k], target_levels[k]
            )));
        }
    }
    let mut cur = u.clone();
    for &axis in order {
        let gap = target_levels[axis] - cur.spec.levels[axis];
        if gap > 0 {
            cur = refine_axis(&cur, axis, 1 << gap, kind)?;
        }
    }
    Ok(cur)
}

/// Prolong `u` to the grid with the given per-axis levels, sweeping the axes
/// in their natural order.
pub fn prolong(
    u: &GridFunction,
    target_levels: &[usize],
    kind: &ProlongationKind,
) -> Result<GridFunction> {
    let order: Vec<usize> = (0..u.spec.dim()).collect();
    prolong_with_axis_order(u, target_levels, kind, &order)
}

/// Prolong every component to the finest grid and take the signed sum given
/// by the index set. Components are matched to index-set entries by their
/// level tuples and must cover the set exactly.
pub fn combine(
    components: &[GridFunction],
    set: &CombinationIndexSet,
    kind: &ProlongationKind,
) -> Result<GridFunction> {
    if components.is_empty() {
        return Err(Error::ComponentMismatch("no components given".into()));
    }
    let root = components[0].spec.root_cells;
    let domain = components[0].spec.domain.clone();
    for c in components {
        if c.spec.dim() != set.dim {
            return Err(Error::DimensionMismatch(format!(
                "component is {}D, index set is {}D",
                c.spec.dim(),
                set.dim
            )));
        }
        if c.spec.root_cells != root || c.spec.domain != domain {
            return Err(Error::ComponentMismatch(
                "components disagree on root grid or domain".into(),
            ));
        }
    }
    if components.len() != set.entries.len() {
        return Err(Error::ComponentMismatch(format!(
            "{} components for {} index-set entries",
            components.len(),
            set.entries.len()
        )));
    }
    let mut claimed = vec![false; components.len()];
    let mut find = |levels: &LevelTuple| -> Result<usize> {
        let mut hit = None;
        for (i, c) in components.iter().enumerate() {
            if &c.spec.levels == levels {
                if claimed[i] || hit.is_some() {
                    return Err(Error::ComponentMismatch(format!(
                        "duplicate component for levels {levels:?}"
                    )));
                }
                hit = Some(i);
            }
        }
        match hit {
            Some(i) => {
                claimed[i] = true;
                Ok(i)
            }
            None => Err(Error::ComponentMismatch(format!("missing component {levels:?}"))),
        }
    };

    let target_levels = vec![set.finest_level; set.dim];
    let target_spec = GridSpec::new(domain, root, target_levels.clone())?;
    let mut acc = vec![0.0f64; target_spec.total_values()];
    // Entries are lexicographically sorted; the accumulation order is part
    // of the determinism contract.
    for (levels, coeff) in &set.entries {
        let i = find(levels)?;
        let p = prolong(&components[i], &target_levels, kind)?;
        let c = *coeff as f64;
        for (a, v) in acc.iter_mut().zip(&p.values) {
            *a += c * v;
        }
    }
    Ok(GridFunction { spec: target_spec, values: acc })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::{build_index_set, DomainBox};
    use rand::prelude::*;

    const EPS: f64 = 1e-6;

    /// Independent check polynomial: Lagrange basis through local nodes
    /// t = 0, 1, 2.
    fn fitted_parabola(v0: f64, v1: f64, v2: f64, t: f64) -> f64 {
        v0 * 0.5 * (t - 1.0) * (t - 2.0) + v1 * t * (2.0 - t) + v2 * 0.5 * t * (t - 1.0)
    }

    #[test]
    fn interpolation_reproduces_the_node() {
        let mut rng = StdRng::seed_from_u64(21);
        for _ in 0..100 {
            let a: f64 = rng.gen_range(-5.0..5.0);
            let b: f64 = rng.gen_range(-5.0..5.0);
            let c: f64 = rng.gen_range(-5.0..5.0);
            let v = weno_interpolate(a, b, c, 1.0, EPS).unwrap();
            assert_eq!(v.to_bits(), b.to_bits());
        }
    }

    #[test]
    fn interpolation_on_linear_data_is_exact() {
        // Both candidate interpolants coincide on a straight line, so the
        // weights cannot matter.
        let v = weno_interpolate(0.0, 1.0, 2.0, 0.5, EPS).unwrap();
        assert!((v - 0.5).abs() < 1e-12);
        let v = weno_interpolate(0.0, 1.0, 2.0, 1.25, EPS).unwrap();
        assert!((v - 1.25).abs() < 1e-12);
    }

    #[test]
    fn interpolation_keeps_constants_bitwise() {
        for c in [0.7, -1.3, 1e-8] {
            let v = weno_interpolate(c, c, c, 0.75, EPS).unwrap();
            assert_eq!(v.to_bits(), c.to_bits());
        }
    }

    #[test]
    fn interpolation_leans_on_the_smooth_side_at_a_jump() {
        let v = weno_interpolate(0.0, 0.0, 1.0, 0.5, EPS).unwrap();
        assert!(v.abs() < 1e-9, "got {v}");
    }

    #[test]
    fn interpolation_rejects_out_of_cell_offsets() {
        assert!(matches!(
            weno_interpolate(0.0, 1.0, 2.0, 0.49, EPS),
            Err(Error::OffsetOutOfRange(_))
        ));
        assert!(matches!(
            weno_interpolate(0.0, 1.0, 2.0, 1.5, EPS),
            Err(Error::OffsetOutOfRange(_))
        ));
    }

    #[test]
    fn lagrange_refine_by_one_is_identity() {
        let line = [0.3, -1.0, 2.5, 0.0];
        assert_eq!(lagrange_prolong_line(&line, 1).unwrap(), line.to_vec());
    }

    #[test]
    fn lagrange_reproduces_a_seam_compatible_quadratic() {
        // q(x) = x^2 on [-1, 1] takes the same value at both ends, so even
        // the wrapped window sees consistent data and every fine node must
        // land on the parabola.
        let n = 4;
        let h = 2.0 / n as f64;
        let coarse: Vec<f64> = (0..n).map(|i| (-1.0 + i as f64 * h).powi(2)).collect();
        let fine = lagrange_prolong_line(&coarse, 2).unwrap();
        for (j, &v) in fine.iter().enumerate() {
            let x = -1.0 + j as f64 * h / 2.0;
            assert!((v - x * x).abs() < 1e-14, "node {j}: {v} vs {}", x * x);
        }
    }

    #[test]
    fn lagrange_matches_the_fitted_window_parabolas() {
        let mut rng = StdRng::seed_from_u64(22);
        for &n in &[4usize, 6, 10] {
            for &r in &[2usize, 4, 8] {
                let coarse: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
                let fine = lagrange_prolong_line(&coarse, r).unwrap();
                assert_eq!(fine.len(), n * r);
                for w in 0..n / 2 {
                    let v0 = coarse[2 * w];
                    let v1 = coarse[2 * w + 1];
                    let v2 = coarse[(2 * w + 2) % n];
                    for off in 0..2 * r {
                        let t = off as f64 / r as f64;
                        let expect = fitted_parabola(v0, v1, v2, t);
                        let got = fine[2 * w * r + off];
                        assert!(
                            (got - expect).abs() < 1e-13,
                            "n={n} r={r} window {w} off {off}: {got} vs {expect}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn lagrange_rejects_odd_lines_and_bad_factors() {
        assert!(matches!(
            lagrange_prolong_line(&[1.0, 2.0, 3.0], 2),
            Err(Error::OddCellCount(3))
        ));
        assert!(matches!(
            lagrange_prolong_line(&[1.0, 2.0], 3),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn weno_line_copies_nodes_and_keeps_constants() {
        let mut rng = StdRng::seed_from_u64(23);
        let coarse: Vec<f64> = (0..8).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let fine = weno_prolong_line(&coarse, 4, EPS).unwrap();
        for i in 0..8 {
            assert_eq!(fine[4 * i].to_bits(), coarse[i].to_bits());
        }
        let flat = weno_prolong_line(&vec![0.7; 6], 8, EPS).unwrap();
        assert!(flat.iter().all(|v| v.to_bits() == 0.7f64.to_bits()));
    }

    #[test]
    fn weno_line_does_not_overshoot_a_step() {
        let coarse = [0.0, 0.0, 0.0, 0.0, 1.0, 1.0, 1.0, 1.0];
        for r in [2usize, 4, 8] {
            let fine = weno_prolong_line(&coarse, r, EPS).unwrap();
            for (j, &v) in fine.iter().enumerate() {
                assert!(
                    (-1e-9..=1.0 + 1e-9).contains(&v),
                    "r={r} node {j} overshoots: {v}"
                );
            }
        }
    }

    #[test]
    fn weno_offsets_stay_in_the_owning_cell() {
        // The index arithmetic must produce offsets in [1/2, 3/2) for every
        // fine node, wrapping across the seam.
        for n in [4usize, 6] {
            for r in [2usize, 4] {
                for j in 0..n * r {
                    if j % r == 0 {
                        continue;
                    }
                    let i_raw = (j + r / 2) / r;
                    let alpha = 1.0 + (j as f64 - (i_raw * r) as f64) / r as f64;
                    assert!((0.5..1.5).contains(&alpha), "n={n} r={r} j={j}: {alpha}");
                    assert!(i_raw <= n);
                }
            }
        }
    }

    /// Both line rules converge at third order to a smooth function. The
    /// adaptive rule is measured away from the extrema of the sample, where
    /// its weights are legitimately O(1) off the ideal split.
    #[test]
    fn line_prolongation_is_third_order() {
        // One-periodic on [0, 1): the lines wrap, so the sample must too.
        let tau = 2.0 * std::f64::consts::PI;
        let f = move |x: f64| (tau * x).sin() + 0.3 * (2.0 * tau * x).cos();
        let df = move |x: f64| tau * (tau * x).cos() - 0.6 * tau * (2.0 * tau * x).sin();
        // Locate the extrema with a sign scan of the derivative.
        let scan = 10_000;
        let mut extrema = Vec::new();
        for k in 0..scan {
            let a = k as f64 / scan as f64;
            let b = (k + 1) as f64 / scan as f64;
            if df(a) * df(b) <= 0.0 {
                extrema.push(0.5 * (a + b));
            }
        }
        assert_eq!(extrema.len(), 4);
        let away_from_extrema = |x: f64| {
            extrema.iter().all(|c| {
                let d = (x - c).abs();
                d.min(1.0 - d) > 0.1
            })
        };
        let defect = |n: usize, weno: bool, masked: bool| -> f64 {
            let coarse: Vec<f64> = (0..n).map(|i| f(i as f64 / n as f64)).collect();
            let fine = if weno {
                weno_prolong_line(&coarse, 2, EPS).unwrap()
            } else {
                lagrange_prolong_line(&coarse, 2).unwrap()
            };
            fine.iter()
                .enumerate()
                .map(|(j, &v)| (j as f64 / (2 * n) as f64, v))
                .filter(|(x, _)| !masked || away_from_extrema(*x))
                .map(|(x, v)| (v - f(x)).abs())
                .fold(0.0, f64::max)
        };
        // The polynomial rule is clean third order everywhere.
        let order = (defect(32, false, false) / defect(64, false, false)).log2();
        assert!(order > 2.5, "lagrange order {order}");
        // The adaptive rule matches it away from the extrema bands and
        // still improves across them, just slower.
        let order = (defect(32, true, true) / defect(64, true, true)).log2();
        assert!(order > 2.5, "weno masked order {order}");
        let order = (defect(32, true, false) / defect(64, true, false)).log2();
        assert!(order > 1.5, "weno global order {order}");
    }

    fn quad_grid(levels: Vec<usize>) -> GridFunction {
        let domain = DomainBox::new(vec![-2.0; 2], vec![2.0; 2]).unwrap();
        let spec = GridSpec::new(domain, 4, levels).unwrap();
        GridFunction::from_fn(spec, |c| c[0] * c[0] + c[1] * c[1])
    }

    #[test]
    fn prolong_reproduces_a_separable_quadratic() {
        // x^2 + y^2 on [-2, 2]^2 matches at the periodic seam, so the
        // Lagrange sweep is exact through a two-level gap on each axis.
        let u = quad_grid(vec![1, 1]);
        let fine = prolong(&u, &[3, 3], &ProlongationKind::Lagrange).unwrap();
        let check = quad_grid(vec![3, 3]);
        for (a, b) in fine.values.iter().zip(&check.values) {
            assert!((a - b).abs() < 1e-13, "{a} vs {b}");
        }
    }

    #[test]
    fn prolong_rejects_coarser_targets() {
        let u = quad_grid(vec![1, 1]);
        assert!(matches!(
            prolong(&u, &[0, 3], &ProlongationKind::Lagrange),
            Err(Error::TargetCoarser(_))
        ));
        assert!(matches!(
            prolong(&u, &[1], &ProlongationKind::Lagrange),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn sweep_order_differences_vanish_with_resolution() {
        let domain = DomainBox::new(vec![-2.0; 2], vec![2.0; 2]).unwrap();
        // Periodic on the box but not symmetric in x and y, so the two sweep
        // orders genuinely disagree at finite resolution.
        let f = |c: &[f64]| {
            (std::f64::consts::FRAC_PI_2 * c[0] + std::f64::consts::PI * c[1]).sin()
        };
        let diff = |root: usize, kind: &ProlongationKind| -> f64 {
            let spec = GridSpec::new(domain.clone(), root, vec![0, 0]).unwrap();
            let u = GridFunction::from_fn(spec, f);
            let xy = prolong_with_axis_order(&u, &[2, 2], kind, &[0, 1]).unwrap();
            let yx = prolong_with_axis_order(&u, &[2, 2], kind, &[1, 0]).unwrap();
            xy.values
                .iter()
                .zip(&yx.values)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max)
        };
        // Polynomial interpolation acts per axis as a fixed linear operator,
        // so the two sweep orders are the same tensor product and agree to
        // roundoff.
        for root in [8, 16] {
            let defect = diff(root, &ProlongationKind::Lagrange);
            assert!(defect < 1e-13, "root {root}: lagrange sweeps disagree by {defect}");
        }
        // The adaptive weights of the second sweep are recomputed from the
        // output of the first, so those sweeps genuinely do not commute; the
        // defect is interpolation-error sized and must shrink with the mesh.
        let kind = ProlongationKind::Weno { epsilon: EPS };
        let coarse = diff(8, &kind);
        let fine = diff(16, &kind);
        assert!(coarse > 1e-10, "orders must differ somewhere for this test to bite");
        let order = (coarse / fine).log2();
        assert!(order > 1.5, "sweep-order defect decays at order {order}");
    }

    fn restricted_components(
        set: &CombinationIndexSet,
        f: impl Fn(&[f64]) -> f64,
    ) -> Vec<GridFunction> {
        let domain = DomainBox::new(vec![-2.0; 2], vec![2.0; 2]).unwrap();
        set.entries
            .iter()
            .map(|(levels, _)| {
                let spec = GridSpec::new(domain.clone(), 4, levels.clone()).unwrap();
                GridFunction::from_fn(spec, &f)
            })
            .collect()
    }

    #[test]
    fn combine_preserves_constants_bitwise() {
        for kind in [ProlongationKind::Lagrange, ProlongationKind::Weno { epsilon: EPS }] {
            let set = build_index_set(2, 3).unwrap();
            let components = restricted_components(&set, |_| 0.7);
            let combined = combine(&components, &set, &kind).unwrap();
            assert!(combined.values.iter().all(|v| v.to_bits() == 0.7f64.to_bits()));
            assert_eq!(combined.spec.levels, vec![3, 3]);
        }
    }

    #[test]
    fn combine_reproduces_a_quadratic_with_lagrange() {
        let set = build_index_set(2, 2).unwrap();
        let q = |c: &[f64]| c[0] * c[0] + c[1] * c[1];
        let components = restricted_components(&set, q);
        let combined = combine(&components, &set, &ProlongationKind::Lagrange).unwrap();
        let check = quad_grid(vec![2, 2]);
        for (a, b) in combined.values.iter().zip(&check.values) {
            assert!((a - b).abs() < 1e-12, "{a} vs {b}");
        }
    }

    #[test]
    fn combine_validates_the_component_cover() {
        let set = build_index_set(2, 1).unwrap();
        let mut components = restricted_components(&set, |c| c[0]);
        let dropped = components.pop().unwrap();
        assert!(matches!(
            combine(&components, &set, &ProlongationKind::Lagrange),
            Err(Error::ComponentMismatch(_))
        ));
        components.push(dropped.clone());
        components[0] = dropped; // now one tuple twice, another missing
        assert!(matches!(
            combine(&components, &set, &ProlongationKind::Lagrange),
            Err(Error::ComponentMismatch(_))
        ));
    }
}
