//! Finite-difference time stepping for u_t = Δu^m + min{(1+|x|)^σ, k} f_k(u).
//!
//! The default scheme is explicit conservative differencing of the flux
//! u^m with a degeneracy-aware CFL limit
//!
//!   dt ≤ safety · h² / (2 N m max(u)^{m−1} + h² Lip(reaction)),
//!
//! which also makes the update monotone in each stencil value, so discrete
//! comparison holds step by step. Fluxes are formed on u^m directly (never
//! dividing by u), so the degenerate interface needs no special casing. A
//! linearly implicit variant (lagged u^{m−1} coefficient, tridiagonal solve)
//! is available for stiff large-k runs.
//!
//! Boundary condition is homogeneous Dirichlet at the outer boundary; the
//! run aborts with `DomainTooSmall` if the numerical support reaches it, so
//! results are only ever reported while the compact-support assumption is
//! intact. Negative undershoots are clamped to zero and the removed mass is
//! accumulated as a diagnostic.

use crate::grid::{support_bounds, Field, GridKind, SolveStatus, Trajectory};
use crate::math::pow;
use crate::params::Params;
use crate::reaction::RegularizedReaction;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Scheme {
    Explicit,
    SemiImplicit,
}

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct StepperConfig {
    pub scheme: Scheme,
    /// CFL safety factor in (0, 1].
    pub cfl_safety: f64,
    pub dt_max: f64,
    /// Absolute blow-up detection level; callers normally use
    /// [`StepperConfig::scaled_to`] for the default 10⁶ · ‖u0‖_∞.
    pub blowup_threshold: f64,
    /// Support threshold relative to ‖u0‖_∞, used for interface records and
    /// the boundary guard.
    pub support_tol_rel: f64,
    /// Setting this false drops the diffusion term (pure-reaction mode).
    pub include_diffusion: bool,
}

impl Default for StepperConfig {
    fn default() -> Self {
        StepperConfig {
            scheme: Scheme::Explicit,
            cfl_safety: 0.4,
            dt_max: 1e-2,
            blowup_threshold: 1e6,
            support_tol_rel: 1e-10,
            include_diffusion: true,
        }
    }
}

impl StepperConfig {
    /// Default blow-up threshold 10⁶ · ‖u0‖_∞ for the given data.
    pub fn scaled_to(mut self, u0: &Field) -> Self {
        let m = u0.sup_norm();
        if m > 0.0 {
            self.blowup_threshold = 1e6 * m;
        }
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SolverError {
    TooFewCells,
    /// Explicit step larger than the stability bound.
    UnstableDt { dt: f64, bound: f64 },
    /// Max value crossed the blow-up threshold at time `t`.
    Blowup { t: f64 },
    /// Non-finite values appeared at time `t`.
    NonFinite { t: f64 },
    /// Numerical support reached the outer boundary at time `t`.
    DomainTooSmall { t: f64 },
    /// Initial data violates a precondition (negative, non-finite, or not
    /// zero on the boundary band).
    BadInitialData,
    SnapshotOutOfRange,
}

impl fmt::Display for SolverError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolverError::TooFewCells => write!(f, "grid with fewer than 3 cells rejected"),
            SolverError::UnstableDt { dt, bound } => {
                write!(f, "explicit step dt={dt} exceeds stability bound {bound}")
            }
            SolverError::Blowup { t } => write!(f, "blow-up threshold crossed at t={t}"),
            SolverError::NonFinite { t } => write!(f, "non-finite values at t={t}"),
            SolverError::DomainTooSmall { t } => {
                write!(f, "support reached the outer boundary at t={t}")
            }
            SolverError::BadInitialData => write!(f, "initial data violates preconditions"),
            SolverError::SnapshotOutOfRange => {
                write!(f, "snapshot times must lie in [0, t_end]")
            }
        }
    }
}

impl core::error::Error for SolverError {}

#[inline]
fn upow(u: f64, m: f64) -> f64 {
    if m == 1.0 {
        u
    } else if m == 2.0 {
        u * u
    } else if m == 3.0 {
        u * u * u
    } else {
        pow(u, m)
    }
}

#[inline]
fn rpow(r: f64, e: u32) -> f64 {
    match e {
        0 => 1.0,
        1 => r,
        2 => r * r,
        _ => pow(r, e as f64),
    }
}

/// Second-order discrete Δ(u^m). Line grids use the central stencil; radial
/// grids the conservative form (1/r^{N−1}) ∂_r(r^{N−1} ∂_r u^m) with the
/// symmetry stencil 2N (u^m_1 − u^m_0)/h² at r = 0. Output values at outer
/// Dirichlet boundary nodes are zero; interior values may be signed.
pub fn laplacian_pme(field: &Field, m: f64, dim: u32) -> Result<Field, SolverError> {
    let grid = field.grid;
    if grid.n_cells < 3 {
        return Err(SolverError::TooFewCells);
    }
    let n = grid.n_nodes();
    let h = grid.h();
    let h2 = h * h;
    let flux: Vec<f64> = field.values.iter().map(|&u| upow(u, m)).collect();
    let mut out = vec![0.0; n];
    match grid.kind {
        GridKind::Line => {
            for i in 1..n - 1 {
                out[i] = (flux[i + 1] - 2.0 * flux[i] + flux[i - 1]) / h2;
            }
        }
        GridKind::Radial => {
            let e = dim - 1;
            out[0] = 2.0 * dim as f64 * (flux[1] - flux[0]) / h2;
            for i in 1..n - 1 {
                let r = grid.node(i);
                let rp = rpow(r + 0.5 * h, e);
                let rm = rpow(r - 0.5 * h, e);
                out[i] = (rp * (flux[i + 1] - flux[i]) - rm * (flux[i] - flux[i - 1]))
                    / (rpow(r, e) * h2);
            }
        }
    }
    Ok(Field { grid, t: field.t, values: out })
}

/// Largest explicit step allowed by the CFL limit for the current state.
pub fn stable_dt(
    field: &Field,
    params: &Params,
    reaction: Option<&RegularizedReaction>,
    cfg: &StepperConfig,
) -> f64 {
    let h = field.grid.h();
    let u_max = field.sup_norm();
    let x_absmax = crate::math::abs(field.grid.x_min).max(crate::math::abs(field.grid.x_max));
    let diffusion = if cfg.include_diffusion {
        2.0 * params.dim as f64 * params.m * pow(u_max, params.m - 1.0)
    } else {
        0.0
    };
    let lip = reaction.map_or(0.0, |r| r.lipschitz(x_absmax, u_max));
    let denom = diffusion + h * h * lip;
    if denom <= 0.0 {
        cfg.dt_max
    } else {
        (cfg.cfl_safety * h * h / denom).min(cfg.dt_max)
    }
}

/// One forward step. Returns the new field and the mass clamped away from
/// negative undershoots.
pub fn step_with_clamp(
    field: &Field,
    params: &Params,
    reaction: Option<&RegularizedReaction>,
    cfg: &StepperConfig,
    dt: f64,
) -> Result<(Field, f64), SolverError> {
    if let Some(r) = reaction {
        debug_assert_eq!(r.params, *params, "reaction built for different exponents");
    }
    if cfg.scheme == Scheme::Explicit {
        let bound = stable_dt(field, params, reaction, cfg);
        if dt > bound * (1.0 + 1e-9) {
            return Err(SolverError::UnstableDt { dt, bound });
        }
    }
    let grid = field.grid;
    let n = grid.n_nodes();
    let t_new = field.t + dt;

    let mut next: Vec<f64> = match cfg.scheme {
        Scheme::Explicit => {
            let lap = if cfg.include_diffusion {
                Some(laplacian_pme(field, params.m, params.dim)?)
            } else {
                None
            };
            (0..n)
                .map(|i| {
                    let mut du = 0.0;
                    if let Some(l) = &lap {
                        du += l.values[i];
                    }
                    if let Some(r) = reaction {
                        du += r.evaluate(grid.node(i), field.values[i]);
                    }
                    field.values[i] + dt * du
                })
                .collect()
        }
        Scheme::SemiImplicit => semi_implicit_update(field, params, reaction, cfg, dt)?,
    };

    // Dirichlet outer boundary.
    next[n - 1] = 0.0;
    if grid.kind == GridKind::Line {
        next[0] = 0.0;
    }

    // Positivity floor: clamp undershoots, keep the removed mass.
    let mut clamped = 0.0;
    for (i, v) in next.iter_mut().enumerate() {
        if *v < 0.0 {
            clamped += -*v * grid.volume_weight(i, params.dim);
            *v = 0.0;
        }
    }

    let mut max = 0.0f64;
    for &v in &next {
        if !v.is_finite() {
            return Err(SolverError::NonFinite { t: t_new });
        }
        max = max.max(v);
    }
    if max > cfg.blowup_threshold {
        return Err(SolverError::Blowup { t: t_new });
    }
    Ok((Field { grid, t: t_new, values: next }, clamped))
}

/// One forward step, discarding the clamp diagnostic.
pub fn step(
    field: &Field,
    params: &Params,
    reaction: Option<&RegularizedReaction>,
    cfg: &StepperConfig,
    dt: f64,
) -> Result<Field, SolverError> {
    step_with_clamp(field, params, reaction, cfg, dt).map(|(f, _)| f)
}

/// Linearly implicit update: u^m is written as a u with the coefficient
/// a = u_old^{m−1} lagged, the reaction is taken explicitly, and the
/// resulting tridiagonal system is solved by the Thomas algorithm.
fn semi_implicit_update(
    field: &Field,
    params: &Params,
    reaction: Option<&RegularizedReaction>,
    cfg: &StepperConfig,
    dt: f64,
) -> Result<Vec<f64>, SolverError> {
    let grid = field.grid;
    if grid.n_cells < 3 {
        return Err(SolverError::TooFewCells);
    }
    let n = grid.n_nodes();
    let h2 = grid.h() * grid.h();
    let a: Vec<f64> = field.values.iter().map(|&u| pow(u, params.m - 1.0)).collect();

    let mut sub = vec![0.0; n];
    let mut diag = vec![1.0; n];
    let mut sup = vec![0.0; n];
    let mut rhs: Vec<f64> = (0..n)
        .map(|i| {
            let r = reaction.map_or(0.0, |r| r.evaluate(grid.node(i), field.values[i]));
            field.values[i] + dt * r
        })
        .collect();

    if cfg.include_diffusion {
        match grid.kind {
            GridKind::Line => {
                for i in 1..n - 1 {
                    let c = dt / h2;
                    sub[i] = -c * a[i - 1];
                    diag[i] = 1.0 + 2.0 * c * a[i];
                    sup[i] = -c * a[i + 1];
                }
            }
            GridKind::Radial => {
                let e = params.dim - 1;
                let h = grid.h();
                // r = 0 symmetry row: u0 - 2N dt (a1 u1 - a0 u0)/h^2 = rhs.
                let c0 = 2.0 * params.dim as f64 * dt / h2;
                diag[0] = 1.0 + c0 * a[0];
                sup[0] = -c0 * a[1];
                for i in 1..n - 1 {
                    let r = grid.node(i);
                    let rp = rpow(r + 0.5 * h, e);
                    let rm = rpow(r - 0.5 * h, e);
                    let c = dt / (rpow(r, e) * h2);
                    sub[i] = -c * rm * a[i - 1];
                    diag[i] = 1.0 + c * (rp + rm) * a[i];
                    sup[i] = -c * rp * a[i + 1];
                }
            }
        }
    }

    // Dirichlet rows.
    rhs[n - 1] = 0.0;
    if grid.kind == GridKind::Line {
        rhs[0] = 0.0;
        sup[0] = 0.0;
    }
    sub[n - 1] = 0.0;

    thomas_solve(&mut sub, &mut diag, &mut sup, &mut rhs);
    Ok(rhs)
}

/// In-place Thomas algorithm; `rhs` holds the solution on return.
fn thomas_solve(sub: &mut [f64], diag: &mut [f64], sup: &mut [f64], rhs: &mut [f64]) {
    let n = rhs.len();
    for i in 1..n {
        let w = sub[i] / diag[i - 1];
        diag[i] -= w * sup[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    rhs[n - 1] /= diag[n - 1];
    for i in (0..n - 1).rev() {
        rhs[i] = (rhs[i] - sup[i] * rhs[i + 1]) / diag[i];
    }
}

/// Step sizes: adaptive from the CFL bound, or an exact replay of a
/// previously recorded sequence (used to compare ordered runs node by node).
#[derive(Clone, Copy, Debug)]
pub enum DtControl<'a> {
    Adaptive,
    Replay(&'a [f64]),
}

/// Integrate the Cauchy problem to `t_end`, capturing snapshots at the
/// requested times (linear interpolation between the bracketing steps).
///
/// Blow-up and divergence are reported through `Trajectory::status` with the
/// snapshots truncated at the event; precondition violations and the
/// support reaching the outer boundary are hard errors.
pub fn solve_cauchy(
    u0: &Field,
    params: &Params,
    reaction: Option<&RegularizedReaction>,
    cfg: &StepperConfig,
    t_end: f64,
    snapshot_times: &[f64],
    dt_control: DtControl<'_>,
) -> Result<Trajectory, SolverError> {
    if u0.grid.n_cells < 3 {
        return Err(SolverError::TooFewCells);
    }
    if u0.values.iter().any(|v| !v.is_finite() || *v < 0.0) {
        return Err(SolverError::BadInitialData);
    }
    if snapshot_times.iter().any(|&t| !(0.0..=t_end + 1e-12).contains(&t)) {
        return Err(SolverError::SnapshotOutOfRange);
    }
    let mut times: Vec<f64> = snapshot_times.to_vec();
    times.sort_by(|a, b| a.partial_cmp(b).unwrap());

    let threshold = cfg.support_tol_rel * u0.sup_norm();
    let guard = boundary_guard_indices(u0);
    if guard.iter().any(|&i| u0.values[i] > threshold) {
        return Err(SolverError::BadInitialData);
    }

    let mut snapshots = Vec::with_capacity(times.len());
    let mut next_snap = 0;
    while next_snap < times.len() && times[next_snap] <= 0.0 {
        let mut s = u0.clone();
        s.t = 0.0;
        snapshots.push(s);
        next_snap += 1;
    }

    let mut cur = u0.clone();
    cur.t = 0.0;
    let mut dts: Vec<f64> = Vec::new();
    let mut clamped_total = 0.0;
    let mut status = SolveStatus::Completed;
    let mut replay = match dt_control {
        DtControl::Replay(seq) => Some(seq.iter().copied()),
        DtControl::Adaptive => None,
    };

    let t_tol = 1e-12 * (1.0 + t_end);
    while cur.t < t_end - t_tol {
        let dt = match replay.as_mut() {
            Some(seq) => match seq.next() {
                Some(dt) => dt,
                None => break,
            },
            None => {
                let bound = match cfg.scheme {
                    Scheme::Explicit => stable_dt(&cur, params, reaction, cfg),
                    Scheme::SemiImplicit => cfg.dt_max,
                };
                bound.min(t_end - cur.t)
            }
        };
        let prev = cur;
        match step_with_clamp(&prev, params, reaction, cfg, dt) {
            Ok((next, clamped)) => {
                cur = next;
                clamped_total += clamped;
            }
            Err(SolverError::Blowup { t }) => {
                status = SolveStatus::BlownUp { t_est: t };
                cur = prev;
                break;
            }
            Err(SolverError::NonFinite { t }) => {
                status = SolveStatus::Diverged { t };
                cur = prev;
                break;
            }
            Err(e) => return Err(e),
        }
        dts.push(dt);
        while next_snap < times.len() && times[next_snap] <= cur.t + t_tol {
            let tau = times[next_snap].min(cur.t);
            let theta = ((tau - prev.t) / (cur.t - prev.t)).clamp(0.0, 1.0);
            let values: Vec<f64> = prev
                .values
                .iter()
                .zip(&cur.values)
                .map(|(a, b)| a + theta * (b - a))
                .collect();
            snapshots.push(Field { grid: cur.grid, t: tau, values });
            next_snap += 1;
        }
        if guard.iter().any(|&i| cur.values[i] > threshold) {
            return Err(SolverError::DomainTooSmall { t: cur.t });
        }
    }

    let interfaces = snapshots.iter().map(|s| support_bounds(s, threshold)).collect();
    Ok(Trajectory {
        params: *params,
        snapshots,
        interfaces,
        status,
        clamped_mass: clamped_total,
        dts,
    })
}

/// Innermost nodes adjacent to the Dirichlet boundary; the support must not
/// reach them.
fn boundary_guard_indices(u0: &Field) -> Vec<usize> {
    let n = u0.grid.n_nodes();
    match u0.grid.kind {
        GridKind::Line => vec![1, n - 2],
        GridKind::Radial => vec![n - 2],
    }
}

/// Uniformly spaced snapshot times over [0, t_end] (t = 0 included).
pub fn uniform_snapshot_times(t_end: f64, count: usize) -> Vec<f64> {
    assert!(count >= 2);
    (0..count).map(|i| t_end * i as f64 / (count - 1) as f64).collect()
}
