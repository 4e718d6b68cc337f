//! End-to-end drivers: configure a run, march it to the final time, measure
//! the result. A run is either a single full grid or a family of
//! semi-coarsened component grids whose evolved states are prolonged and
//! combined into the finest grid.

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use crate::error::{Error, Result};
use crate::integrate::{evolve, evolve_group, DtMode, TimeStepPolicy};
use crate::mesh::{
    build_index_set, count_points_single, count_points_sparse, for_each_index, GridFunction,
    GridSpec,
};
use crate::problems::ProblemSpec;
use crate::prolong::{combine, ProlongationKind};
use crate::report::{observed_order, ConvergenceReport, ReportRow};
use crate::weno::{max_wavespeed, SchemeVariant};

/// Whether a run marches one full grid or the sparse component family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Single,
    Sparse,
}

/// Everything a run needs besides the problem itself. `cfl` and `t_final`
/// default to the problem's values when left unset.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub mode: Mode,
    pub scheme: SchemeVariant,
    pub prolongation: ProlongationKind,
    pub root_cells: usize,
    pub finest_level: usize,
    pub cfl: Option<f64>,
    pub epsilon: f64,
    pub t_final: Option<f64>,
}

impl RunConfig {
    pub fn resolved_cfl(&self, problem: &ProblemSpec) -> f64 {
        self.cfl.unwrap_or(problem.default_cfl)
    }

    pub fn resolved_t_final(&self, problem: &ProblemSpec) -> f64 {
        self.t_final.unwrap_or(problem.default_tfinal)
    }

    pub fn validate(&self, problem: &ProblemSpec) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "epsilon must be positive and finite, got {}",
                self.epsilon
            )));
        }
        let cfl = self.resolved_cfl(problem);
        if !(cfl > 0.0 && cfl.is_finite()) {
            return Err(Error::InvalidParameter(format!("cfl must be positive, got {cfl}")));
        }
        let t_final = self.resolved_t_final(problem);
        if !(t_final >= 0.0 && t_final.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "final time must be >= 0, got {t_final}"
            )));
        }
        // Polynomial prolongation pairs up coarse cells, so every component
        // line must have even length; the level-0 lines have root_cells of
        // them.
        if self.mode == Mode::Sparse
            && self.prolongation == ProlongationKind::Lagrange
            && self.root_cells % 2 != 0
        {
            return Err(Error::OddCellCount(self.root_cells));
        }
        Ok(())
    }
}

/// What a finished run hands back: the solution on the finest grid, the
/// stored-point count of whatever was marched, and the wall-clock seconds
/// spent marching (and, for sparse runs, combining).
#[derive(Debug)]
pub struct RunOutcome {
    pub solution: GridFunction,
    pub points: u64,
    pub seconds: f64,
}

fn initial_state(problem: &ProblemSpec, root_cells: usize, levels: Vec<usize>) -> Result<GridFunction> {
    let spec = GridSpec::new(problem.domain.clone(), root_cells, levels)?;
    Ok(GridFunction::from_fn(spec, problem.initial))
}

fn run_single(problem: &ProblemSpec, cfg: &RunConfig) -> Result<RunOutcome> {
    let d = problem.dim();
    let u0 = initial_state(problem, cfg.root_cells, vec![cfg.finest_level; d])?;
    let policy = TimeStepPolicy {
        cfl: cfg.resolved_cfl(problem),
        finest_h: (0..d).map(|k| u0.spec.mesh_size(k)).collect(),
        wavespeed: (0..d).map(|k| max_wavespeed(&u0.values, problem.fluxes[k])).collect(),
    };
    let start = Instant::now();
    let solution = evolve(
        u0,
        problem,
        &policy,
        cfg.resolved_t_final(problem),
        cfg.epsilon,
        cfg.scheme,
        None,
    )?;
    let seconds = start.elapsed().as_secs_f64();
    Ok(RunOutcome {
        solution,
        points: count_points_single(d, cfg.root_cells, cfg.finest_level),
        seconds,
    })
}

fn run_sparse(problem: &ProblemSpec, cfg: &RunConfig) -> Result<RunOutcome> {
    let d = problem.dim();
    let set = build_index_set(d, cfg.finest_level)?;
    let states = set
        .entries
        .iter()
        .map(|(levels, _)| initial_state(problem, cfg.root_cells, levels.clone()))
        .collect::<Result<Vec<_>>>()?;
    let start = Instant::now();
    let evolved = evolve_group(
        states,
        problem,
        cfg.resolved_cfl(problem),
        cfg.resolved_t_final(problem),
        cfg.epsilon,
        cfg.scheme,
        DtMode::Frozen,
    )?;
    let solution = combine(&evolved, &set, &cfg.prolongation)?;
    let seconds = start.elapsed().as_secs_f64();
    Ok(RunOutcome {
        solution,
        points: count_points_sparse(d, cfg.root_cells, cfg.finest_level)?,
        seconds,
    })
}

/// March one configured run to its final time.
pub fn run(problem: &ProblemSpec, cfg: &RunConfig) -> Result<RunOutcome> {
    cfg.validate(problem)?;
    match cfg.mode {
        Mode::Single => run_single(problem, cfg),
        Mode::Sparse => run_sparse(problem, cfg),
    }
}

/// Max and RMS error of `u` against the problem's reference solution at time
/// `t`, or `None` when no reference is available there (for instance past
/// the shock time of a wave steepening problem).
pub fn reference_norms(u: &GridFunction, problem: &ProblemSpec, t: f64) -> Option<(f64, f64)> {
    let d = u.spec.dim();
    let cells: Vec<usize> = (0..d).map(|k| u.spec.cells(k)).collect();
    let mut coords = vec![0.0; d];
    let mut linf = 0.0f64;
    let mut sum_sq = 0.0f64;
    let mut flat = 0usize;
    let mut missing = false;
    for_each_index(&cells, |idx| {
        let v = u.values[flat];
        flat += 1;
        if missing {
            return;
        }
        for k in 0..d {
            coords[k] = u.spec.coord(k, idx[k]);
        }
        match problem.reference_solution(&coords, t) {
            Some(r) => {
                let e = v - r;
                linf = linf.max(e.abs());
                sum_sq += e * e;
            }
            None => missing = true,
        }
    });
    if missing {
        None
    } else {
        Some((linf, (sum_sq / u.values.len() as f64).sqrt()))
    }
}

fn mesh_label(dim: usize, root_cells: usize, finest_level: usize) -> String {
    let n = (root_cells << finest_level).to_string();
    vec![n; dim].join("x")
}

fn points_for(cfg: &RunConfig, dim: usize, root_cells: usize) -> u64 {
    match cfg.mode {
        Mode::Single => count_points_single(dim, root_cells, cfg.finest_level),
        Mode::Sparse => count_points_sparse(dim, root_cells, cfg.finest_level).unwrap_or(0),
    }
}

/// Run the same configuration over a sequence of root cell counts and
/// tabulate errors, observed orders and timings. A failed run becomes a row
/// with its error message as the status; the study keeps going.
pub fn run_study(problem: &ProblemSpec, cfg: &RunConfig, roots: &[usize]) -> ConvergenceReport {
    let mut rows = Vec::with_capacity(roots.len());
    let mut prev: Option<(f64, f64)> = None;
    for &root_cells in roots {
        let run_cfg = RunConfig { root_cells, ..cfg.clone() };
        let mesh = mesh_label(problem.dim(), root_cells, cfg.finest_level);
        let points = points_for(cfg, problem.dim(), root_cells);
        match run(problem, &run_cfg) {
            Ok(outcome) => {
                let t = run_cfg.resolved_t_final(problem);
                let norms = reference_norms(&outcome.solution, problem, t);
                let (linf, l2, linf_order, l2_order, status) = match norms {
                    Some((linf, l2)) => {
                        let (po_inf, po_two) = match prev {
                            Some((pi, p2)) => {
                                (observed_order(pi, linf), observed_order(p2, l2))
                            }
                            None => (None, None),
                        };
                        prev = Some((linf, l2));
                        (Some(linf), Some(l2), po_inf, po_two, "ok".to_string())
                    }
                    None => {
                        prev = None;
                        (None, None, None, None, "ok (no reference)".to_string())
                    }
                };
                rows.push(ReportRow {
                    mesh,
                    points,
                    linf,
                    linf_order,
                    l2,
                    l2_order,
                    cpu_seconds: outcome.seconds,
                    status,
                });
            }
            Err(e) => {
                prev = None;
                rows.push(ReportRow {
                    mesh,
                    points,
                    linf: None,
                    linf_order: None,
                    l2: None,
                    l2_order: None,
                    cpu_seconds: 0.0,
                    status: e.to_string(),
                });
            }
        }
    }
    ConvergenceReport { rows }
}

/// The solution along the x = y diagonal (z fixed at its lowest node in 3D),
/// as (x, u) pairs. The first two axes must hold the same number of nodes.
pub fn diagonal_cut(u: &GridFunction) -> Result<Vec<(f64, f64)>> {
    let n = u.spec.cells(0);
    if u.spec.cells(1) != n {
        return Err(Error::InvalidParameter(format!(
            "diagonal cut needs matching x and y node counts, got {} and {}",
            n,
            u.spec.cells(1)
        )));
    }
    let strides = u.spec.strides();
    let step = strides[0] + strides[1];
    Ok((0..n).map(|i| (u.spec.coord(0, i), u.values[i * step])).collect())
}

/// Total variation of a periodically wrapped sequence of samples.
pub fn total_variation_periodic(values: &[f64]) -> f64 {
    if values.len() < 2 {
        return 0.0;
    }
    let mut tv = 0.0;
    for w in values.windows(2) {
        tv += (w[1] - w[0]).abs();
    }
    tv + (values[0] - values[values.len() - 1]).abs()
}

/// Solution dump flavors. Every flavor is a plain comma-separated table with
/// a coordinate header.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DumpFormat {
    /// Every stored node: `x,y[,z],u`.
    FullField,
    /// The x = y diagonal: `x,u`.
    DiagonalCut,
    /// The z = z_min plane of a 3D field: `x,y,u`.
    PlaneSlice,
}

fn write_full_field(u: &GridFunction, path: &Path) -> Result<()> {
    let d = u.spec.dim();
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    writeln!(out, "{},u", ["x", "y", "z"][..d].join(","))?;
    let cells: Vec<usize> = (0..d).map(|k| u.spec.cells(k)).collect();
    let mut flat = 0usize;
    let mut err = None;
    for_each_index(&cells, |idx| {
        if err.is_some() {
            return;
        }
        let mut line = String::new();
        for k in 0..d {
            line.push_str(&format!("{:.8e},", u.spec.coord(k, idx[k])));
        }
        line.push_str(&format!("{:.8e}", u.values[flat]));
        flat += 1;
        if let Err(e) = writeln!(out, "{line}") {
            err = Some(e);
        }
    });
    match err {
        Some(e) => Err(e.into()),
        None => Ok(()),
    }
}

fn write_diagonal_cut(u: &GridFunction, path: &Path) -> Result<()> {
    let cut = diagonal_cut(u)?;
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    writeln!(out, "x,u")?;
    for (x, v) in cut {
        writeln!(out, "{x:.8e},{v:.8e}")?;
    }
    Ok(())
}

fn write_plane_slice(u: &GridFunction, path: &Path) -> Result<()> {
    if u.spec.dim() != 3 {
        return Err(Error::InvalidParameter(
            "plane slice is only defined for 3D fields".into(),
        ));
    }
    let strides = u.spec.strides();
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    writeln!(out, "x,y,u")?;
    for i in 0..u.spec.cells(0) {
        for j in 0..u.spec.cells(1) {
            let v = u.values[i * strides[0] + j * strides[1]];
            writeln!(out, "{:.8e},{:.8e},{v:.8e}", u.spec.coord(0, i), u.spec.coord(1, j))?;
        }
    }
    Ok(())
}

/// Write the requested dump files into `dir` (created if needed) and return
/// the paths written. An empty format list writes nothing.
pub fn dump_solution(u: &GridFunction, dir: &Path, formats: &[DumpFormat]) -> Result<Vec<PathBuf>> {
    if formats.is_empty() {
        return Ok(Vec::new());
    }
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for fmt in formats {
        let (name, writer): (&str, fn(&GridFunction, &Path) -> Result<()>) = match fmt {
            DumpFormat::FullField => ("solution.csv", write_full_field),
            DumpFormat::DiagonalCut => ("diagonal_cut.csv", write_diagonal_cut),
            DumpFormat::PlaneSlice => ("plane_slice.csv", write_plane_slice),
        };
        let path = dir.join(name);
        writer(u, &path)?;
        written.push(path);
    }
    Ok(written)
}
