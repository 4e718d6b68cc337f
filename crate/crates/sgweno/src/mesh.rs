//! Semi-coarsened grid hierarchy on periodic boxes.
//!
//! A run works on a family of anisotropic grids: the root grid has `root_cells`
//! cells per axis and each axis is refined independently by powers of two, so
//! level tuple `(l1, .., ld)` means `root_cells * 2^lk` cells on axis `k`. The
//! combination technique draws its members from the two (2D) or three (3D)
//! finest level diagonals; `build_index_set` enumerates them with their signed
//! coefficients.
//!
//! Fields are periodic: only `cells` values per axis are stored, the right
//! endpoint being identified with the left. Point counts reported to the user
//! follow the `cells + 1` per-axis convention so they can be compared against
//! published sparse-grid sizes.

use crate::error::{Error, Result};

/// Per-axis refinement levels relative to the root grid.
pub type LevelTuple = Vec<usize>;

/// Axis-aligned box `[lo_k, hi_k)` with periodic identification of the ends.
#[derive(Clone, Debug, PartialEq)]
pub struct DomainBox {
    lo: Vec<f64>,
    hi: Vec<f64>,
}

impl DomainBox {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(Error::DimensionMismatch(format!(
                "lo has {} entries, hi has {}",
                lo.len(),
                hi.len()
            )));
        }
        if lo.len() < 2 || lo.len() > 3 {
            return Err(Error::UnsupportedDimension(lo.len()));
        }
        for k in 0..lo.len() {
            if !(lo[k] < hi[k]) || !lo[k].is_finite() || !hi[k].is_finite() {
                return Err(Error::BadDomain(format!(
                    "axis {}: need finite lo < hi, got [{}, {}]",
                    k, lo[k], hi[k]
                )));
            }
        }
        Ok(Self { lo, hi })
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn lo(&self, axis: usize) -> f64 {
        self.lo[axis]
    }

    pub fn extent(&self, axis: usize) -> f64 {
        self.hi[axis] - self.lo[axis]
    }
}

/// One member grid of the hierarchy: a root cell count plus per-axis levels.
#[derive(Clone, Debug, PartialEq)]
pub struct GridSpec {
    pub domain: DomainBox,
    pub root_cells: usize,
    pub levels: LevelTuple,
}

impl GridSpec {
    pub fn new(domain: DomainBox, root_cells: usize, levels: LevelTuple) -> Result<Self> {
        if levels.len() != domain.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} levels for a {}D domain",
                levels.len(),
                domain.dim()
            )));
        }
        if root_cells < 4 {
            return Err(Error::InvalidParameter(format!(
                "root grid needs at least 4 cells per axis, got {root_cells}"
            )));
        }
        Ok(Self { domain, root_cells, levels })
    }

    pub fn dim(&self) -> usize {
        self.domain.dim()
    }

    /// Stored cell (= node) count on one axis.
    pub fn cells(&self, axis: usize) -> usize {
        self.root_cells << self.levels[axis]
    }

    /// Mesh size on one axis: the root spacing halved `level` times.
    pub fn mesh_size(&self, axis: usize) -> f64 {
        self.domain.extent(axis) / self.cells(axis) as f64
    }

    /// Coordinate of node `i` on one axis (no bounds check; callers in hot
    /// loops construct indices that are in range by arithmetic).
    pub fn coord(&self, axis: usize, i: usize) -> f64 {
        self.domain.lo(axis) + i as f64 * self.mesh_size(axis)
    }

    /// Coordinates of a multi-index node, with bounds checking.
    pub fn node_coordinate(&self, idx: &[usize]) -> Result<Vec<f64>> {
        if idx.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "index has {} entries for a {}D grid",
                idx.len(),
                self.dim()
            )));
        }
        for (axis, &i) in idx.iter().enumerate() {
            if i >= self.cells(axis) {
                return Err(Error::IndexOutOfRange { axis, index: i, cells: self.cells(axis) });
            }
        }
        Ok((0..self.dim()).map(|k| self.coord(k, idx[k])).collect())
    }

    /// Number of stored values (product of per-axis cell counts).
    pub fn total_values(&self) -> usize {
        (0..self.dim()).map(|k| self.cells(k)).product()
    }

    /// Strides of the row-major layout with axis order (x, y, z); the last
    /// axis varies fastest.
    pub fn strides(&self) -> Vec<usize> {
        let d = self.dim();
        let mut s = vec![1usize; d];
        for k in (0..d - 1).rev() {
            s[k] = s[k + 1] * self.cells(k + 1);
        }
        s
    }
}

/// Grid values in row-major layout, one value per periodic node.
#[derive(Clone, Debug)]
pub struct GridFunction {
    pub spec: GridSpec,
    pub values: Vec<f64>,
}

impl GridFunction {
    pub fn constant(spec: GridSpec, c: f64) -> Self {
        let n = spec.total_values();
        Self { spec, values: vec![c; n] }
    }

    /// Sample a function of the node coordinates onto the grid.
    pub fn from_fn(spec: GridSpec, f: impl Fn(&[f64]) -> f64) -> Self {
        let d = spec.dim();
        let cells: Vec<usize> = (0..d).map(|k| spec.cells(k)).collect();
        let mut values = Vec::with_capacity(spec.total_values());
        let mut coords = vec![0.0; d];
        for_each_index(&cells, |idx| {
            for k in 0..d {
                coords[k] = spec.coord(k, idx[k]);
            }
            values.push(f(&coords));
        });
        Self { spec, values }
    }

    pub fn linear_index(&self, idx: &[usize]) -> usize {
        let strides = self.spec.strides();
        idx.iter().zip(&strides).map(|(i, s)| i * s).sum()
    }
}

/// Base offsets of every grid line along `axis`, enumerated in a fixed
/// deterministic order shared by the sweep kernels.
pub(crate) fn line_bases(spec: &GridSpec, axis: usize) -> Vec<usize> {
    let d = spec.dim();
    let strides = spec.strides();
    let reduced_cells: Vec<usize> = (0..d).filter(|&k| k != axis).map(|k| spec.cells(k)).collect();
    let reduced_strides: Vec<usize> = (0..d).filter(|&k| k != axis).map(|k| strides[k]).collect();
    let mut bases = Vec::with_capacity(spec.total_values() / spec.cells(axis));
    for_each_index(&reduced_cells, |idx| {
        bases.push(idx.iter().zip(&reduced_strides).map(|(i, s)| i * s).sum());
    });
    bases
}

/// Visit all multi-indices of a box of `cells` in row-major order (last axis
/// fastest), matching the storage layout of `GridFunction`.
pub fn for_each_index(cells: &[usize], mut f: impl FnMut(&[usize])) {
    let d = cells.len();
    let mut idx = vec![0usize; d];
    loop {
        f(&idx);
        let mut k = d;
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < cells[k] {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// The level tuples entering the combination, each with its signed weight.
#[derive(Clone, Debug, PartialEq)]
pub struct CombinationIndexSet {
    pub dim: usize,
    pub finest_level: usize,
    /// Sorted lexicographically by level tuple.
    pub entries: Vec<(LevelTuple, i32)>,
}

impl CombinationIndexSet {
    pub fn coefficient_sum(&self) -> i32 {
        self.entries.iter().map(|(_, c)| c).sum()
    }
}

/// Enumerate the combination index set for the given dimension and finest
/// level. In 2D the diagonals `l1 + l2 = L` and `L - 1` enter with weights
/// +1 and -1; in 3D the diagonals `L`, `L - 1`, `L - 2` enter with weights
/// +1, -2, +1.
pub fn build_index_set(dim: usize, finest_level: usize) -> Result<CombinationIndexSet> {
    let (min_level, layers): (usize, &[(usize, i32)]) = match dim {
        2 => (1, &[(0, 1), (1, -1)]),
        3 => (2, &[(0, 1), (1, -2), (2, 1)]),
        d => return Err(Error::UnsupportedDimension(d)),
    };
    if finest_level < min_level {
        return Err(Error::LevelTooSmall { dim, finest: finest_level, min: min_level });
    }
    let mut entries = Vec::new();
    for &(drop, coeff) in layers {
        let sum = finest_level - drop;
        collect_tuples(dim, sum, coeff, &mut entries);
    }
    entries.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(CombinationIndexSet { dim, finest_level, entries })
}

fn collect_tuples(dim: usize, sum: usize, coeff: i32, out: &mut Vec<(LevelTuple, i32)>) {
    match dim {
        2 => {
            for l1 in 0..=sum {
                out.push((vec![l1, sum - l1], coeff));
            }
        }
        3 => {
            for l1 in 0..=sum {
                for l2 in 0..=(sum - l1) {
                    out.push((vec![l1, l2, sum - l1 - l2], coeff));
                }
            }
        }
        _ => unreachable!("dimension validated by build_index_set"),
    }
}

/// Total stored-point count of the sparse run, using the `cells + 1` per-axis
/// reporting convention and counting every member grid once (all diagonals
/// added, regardless of combination sign).
pub fn count_points_sparse(dim: usize, root_cells: usize, finest_level: usize) -> Result<u64> {
    let set = build_index_set(dim, finest_level)?;
    let mut total = 0u64;
    for (levels, _) in &set.entries {
        let mut prod = 1u64;
        for &l in levels {
            prod *= (root_cells as u64) * (1u64 << l) + 1;
        }
        total += prod;
    }
    Ok(total)
}

/// Point count of the full grid at the finest level, same reporting convention.
pub fn count_points_single(dim: usize, root_cells: usize, finest_level: usize) -> u64 {
    let n = (root_cells as u64) * (1u64 << finest_level) + 1;
    n.pow(dim as u32)
}
