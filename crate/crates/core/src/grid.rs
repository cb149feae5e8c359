//! Uniform meshes and nodal solution snapshots.
//!
//! Two geometries cover everything the constructions need: a symmetric line
//! segment for N = 1 and a radial mesh [0, r_max] for radially symmetric
//! solutions in N ≥ 2 (also usable for N = 1 with even data). Integrals on
//! radial grids carry the r^{N−1} volume weight; the constant solid-angle
//! factor is omitted throughout since only ratios and differences of
//! integrals are ever compared.

use crate::math::pow;
use crate::params::Params;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum GridKind {
    Line,
    Radial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GridError {
    EmptyExtent,
    TooFewCells,
    RadialNotAtOrigin,
}

impl fmt::Display for GridError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GridError::EmptyExtent => write!(f, "grid extent must be positive"),
            GridError::TooFewCells => write!(f, "grid needs at least 3 cells"),
            GridError::RadialNotAtOrigin => write!(f, "radial grids must start at r = 0"),
        }
    }
}

impl core::error::Error for GridError {}

/// Uniform 1D mesh with `n_cells + 1` nodes.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Grid {
    pub kind: GridKind,
    pub x_min: f64,
    pub x_max: f64,
    pub n_cells: usize,
}

impl Grid {
    pub fn line(x_min: f64, x_max: f64, n_cells: usize) -> Result<Self, GridError> {
        if !(x_max > x_min) {
            return Err(GridError::EmptyExtent);
        }
        if n_cells < 3 {
            return Err(GridError::TooFewCells);
        }
        Ok(Grid { kind: GridKind::Line, x_min, x_max, n_cells })
    }

    pub fn radial(r_max: f64, n_cells: usize) -> Result<Self, GridError> {
        if !(r_max > 0.0) {
            return Err(GridError::EmptyExtent);
        }
        if n_cells < 3 {
            return Err(GridError::TooFewCells);
        }
        Ok(Grid { kind: GridKind::Radial, x_min: 0.0, x_max: r_max, n_cells })
    }

    #[inline]
    pub fn h(&self) -> f64 {
        (self.x_max - self.x_min) / self.n_cells as f64
    }

    #[inline]
    pub fn n_nodes(&self) -> usize {
        self.n_cells + 1
    }

    #[inline]
    pub fn node(&self, i: usize) -> f64 {
        self.x_min + i as f64 * self.h()
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_nodes()).map(move |i| self.node(i))
    }

    /// Trapezoid quadrature weight of node `i` including the volume factor
    /// r^{N−1} on radial grids.
    pub fn volume_weight(&self, i: usize, dim: u32) -> f64 {
        let h = self.h();
        let edge = i == 0 || i == self.n_cells;
        let w = if edge { 0.5 * h } else { h };
        match self.kind {
            GridKind::Line => w,
            GridKind::Radial => w * pow(self.node(i), (dim - 1) as f64),
        }
    }
}

/// Nodal values of one scalar field at a single time.
#[derive(Clone, Debug, PartialEq)]
pub struct Field {
    pub grid: Grid,
    pub t: f64,
    pub values: Vec<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldError {
    LengthMismatch,
    NonFinite,
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::LengthMismatch => write!(f, "value count must equal node count"),
            FieldError::NonFinite => write!(f, "field values must be finite"),
        }
    }
}

impl core::error::Error for FieldError {}

impl Field {
    pub fn new(grid: Grid, t: f64, values: Vec<f64>) -> Result<Self, FieldError> {
        if values.len() != grid.n_nodes() {
            return Err(FieldError::LengthMismatch);
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(FieldError::NonFinite);
        }
        Ok(Field { grid, t, values })
    }

    pub fn zeros(grid: Grid, t: f64) -> Self {
        let n = grid.n_nodes();
        Field { grid, t, values: vec![0.0; n] }
    }

    pub fn from_fn(grid: Grid, t: f64, f: impl Fn(f64) -> f64) -> Self {
        let values = grid.nodes().map(f).collect();
        Field { grid, t, values }
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |acc, v| acc.max(crate::math::abs(*v)))
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().fold(f64::INFINITY, |acc, v| acc.min(*v))
    }

    /// ∫ u dV by trapezoid rule (volume-weighted on radial grids).
    pub fn mass(&self, dim: u32) -> f64 {
        self.values
            .iter()
            .enumerate()
            .map(|(i, v)| v * self.grid.volume_weight(i, dim))
            .sum()
    }

    /// ∫ |u − w| dV, grids must match.
    pub fn l1_distance(&self, other: &Field, dim: u32) -> f64 {
        assert_eq!(self.grid, other.grid, "l1_distance needs matching grids");
        self.values
            .iter()
            .zip(&other.values)
            .enumerate()
            .map(|(i, (a, b))| crate::math::abs(a - b) * self.grid.volume_weight(i, dim))
            .sum()
    }

    pub fn linf_distance(&self, other: &Field) -> f64 {
        assert_eq!(self.grid, other.grid, "linf_distance needs matching grids");
        self.values
            .iter()
            .zip(&other.values)
            .fold(0.0, |acc, (a, b)| acc.max(crate::math::abs(a - b)))
    }
}

/// Left/right extent of {u > threshold}, refined to sub-cell accuracy by
/// linear interpolation toward the first node below the threshold. `None`
/// when no node exceeds the threshold.
pub fn support_bounds(field: &Field, threshold: f64) -> Option<(f64, f64)> {
    let v = &field.values;
    let first = v.iter().position(|&u| u > threshold)?;
    let last = v.iter().rposition(|&u| u > threshold)?;
    let g = &field.grid;
    let left = if first == 0 {
        g.node(0)
    } else {
        let (u_out, u_in) = (v[first - 1], v[first]);
        g.node(first) - g.h() * (u_in - threshold) / (u_in - u_out)
    };
    let right = if last == g.n_cells {
        g.node(last)
    } else {
        let (u_in, u_out) = (v[last], v[last + 1]);
        g.node(last) + g.h() * (u_in - threshold) / (u_in - u_out)
    };
    Some((left, right))
}

/// Terminal state of a time integration.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "snake_case"))]
pub enum SolveStatus {
    Completed,
    /// Max value crossed the blow-up threshold; `t_est` is the crossing time.
    BlownUp { t_est: f64 },
    /// Non-finite values appeared.
    Diverged { t: f64 },
}

/// Time-ordered snapshots of one run plus per-snapshot interface locations.
#[derive(Clone, Debug)]
pub struct Trajectory {
    pub params: Params,
    pub snapshots: Vec<Field>,
    /// (s_l, s_r) per snapshot, `None` where the snapshot has no support
    /// above the solver's interface threshold.
    pub interfaces: Vec<Option<(f64, f64)>>,
    pub status: SolveStatus,
    /// Total mass removed by clamping negative undershoots to zero.
    pub clamped_mass: f64,
    /// The dt sequence actually taken, replayable for ordered comparisons.
    pub dts: Vec<f64>,
}

impl Trajectory {
    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        self.snapshots.iter().map(|s| s.t)
    }

    pub fn snapshot_at(&self, t: f64) -> Option<&Field> {
        self.snapshots
            .iter()
            .find(|s| crate::math::abs(s.t - t) <= 1e-12 * (1.0 + crate::math::abs(t)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_degenerate_grids() {
        assert_eq!(Grid::line(0.0, 0.0, 8), Err(GridError::EmptyExtent));
        assert_eq!(Grid::line(-1.0, 1.0, 2), Err(GridError::TooFewCells));
        assert_eq!(Grid::radial(-1.0, 8), Err(GridError::EmptyExtent));
    }

    #[test]
    fn uniform_spacing_and_nodes() {
        let g = Grid::line(-3.0, 3.0, 6).unwrap();
        assert_eq!(g.h(), 1.0);
        assert_eq!(g.n_nodes(), 7);
        assert_eq!(g.node(0), -3.0);
        assert_eq!(g.node(6), 3.0);
    }

    #[test]
    fn support_bounds_tent_example() {
        // [0,0,0.1,0.5,0.1,0,0] on x=-3..3: bounds within one cell of (-1,1).
        let g = Grid::line(-3.0, 3.0, 6).unwrap();
        let f = Field::new(g, 0.0, vec![0.0, 0.0, 0.1, 0.5, 0.1, 0.0, 0.0]).unwrap();
        let (sl, sr) = support_bounds(&f, 1e-10).unwrap();
        assert!((sl - (-1.0)).abs() <= 1.0, "sl={sl}");
        assert!((sr - 1.0).abs() <= 1.0, "sr={sr}");
        assert!(sl < sr);
    }

    #[test]
    fn support_bounds_zero_field() {
        let g = Grid::line(-1.0, 1.0, 4).unwrap();
        assert_eq!(support_bounds(&Field::zeros(g, 0.0), 1e-10), None);
    }

    #[test]
    fn radial_mass_weights() {
        // u = 1 on [0, 1], N = 3: integral of r^2 dr = 1/3 up to trapezoid error.
        let g = Grid::radial(1.0, 200).unwrap();
        let f = Field::from_fn(g, 0.0, |_| 1.0);
        assert!((f.mass(3) - 1.0 / 3.0).abs() < 1e-4);
    }
}
