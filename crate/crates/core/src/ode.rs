//! Adaptive embedded Runge–Kutta (Dormand–Prince 5(4)) for two-state
//! systems, with downward-crossing event detection.
//!
//! The profile shooting integrates the first-order system (f, (f^m)') in ξ,
//! both forward and backward, and stops on events such as "f reached the
//! floor" or "the flux changed sign". Events are located inside the
//! triggering step by bisection on a cubic Hermite interpolant.

use alloc::vec::Vec;

pub type State = [f64; 2];

#[derive(Clone, Copy, Debug)]
pub struct OdeOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Cap on |h|; also the initial step size.
    pub h_max: f64,
    pub max_steps: usize,
}

impl Default for OdeOptions {
    fn default() -> Self {
        OdeOptions { abs_tol: 1e-10, rel_tol: 1e-8, h_max: 1e-2, max_steps: 2_000_000 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum OdeOutcome {
    ReachedEnd,
    /// Event `index` crossed from positive to ≤ 0 at `x`.
    Event { index: usize, x: f64 },
    StepUnderflow { x: f64 },
    MaxSteps { x: f64 },
    NonFinite { x: f64 },
}

pub struct OdeSolution {
    pub xs: Vec<f64>,
    pub ys: Vec<State>,
    pub outcome: OdeOutcome,
}

impl OdeSolution {
    pub fn last(&self) -> (f64, State) {
        (*self.xs.last().unwrap(), *self.ys.last().unwrap())
    }
}

#[inline]
fn axpy(y: State, pairs: &[(f64, State)], h: f64) -> State {
    let mut out = y;
    for (c, k) in pairs {
        out[0] += h * c * k[0];
        out[1] += h * c * k[1];
    }
    out
}

/// Integrate dy/dx = rhs(x, y) from `x0` to `x_end` (either direction).
/// Every accepted step is recorded. Events fire when their function value
/// crosses from positive to ≤ 0 between two accepted points.
pub fn integrate<F>(
    rhs: F,
    events: &[&dyn Fn(f64, State) -> f64],
    x0: f64,
    y0: State,
    x_end: f64,
    opts: &OdeOptions,
) -> OdeSolution
where
    F: Fn(f64, State) -> State,
{
    let dir = if x_end >= x0 { 1.0 } else { -1.0 };
    let span = crate::math::abs(x_end - x0);
    let h_min = 1e-15 * (span + crate::math::abs(x0));

    let mut xs = Vec::new();
    let mut ys = Vec::new();
    xs.push(x0);
    ys.push(y0);

    let mut x = x0;
    let mut y = y0;
    let mut h = opts.h_max.min(span).max(h_min);
    let mut ev_prev: Vec<f64> = events.iter().map(|e| e(x, y)).collect();
    let mut k1 = rhs(x, y);

    for _ in 0..opts.max_steps {
        if dir * (x_end - x) <= 1e-15 * (1.0 + crate::math::abs(x_end)) {
            return OdeSolution { xs, ys, outcome: OdeOutcome::ReachedEnd };
        }
        h = h.min(crate::math::abs(x_end - x));
        let hs = dir * h;

        // Dormand-Prince 5(4) stages.
        let k2 = rhs(x + 0.2 * hs, axpy(y, &[(0.2, k1)], hs));
        let k3 = rhs(x + 0.3 * hs, axpy(y, &[(3.0 / 40.0, k1), (9.0 / 40.0, k2)], hs));
        let k4 = rhs(
            x + 0.8 * hs,
            axpy(y, &[(44.0 / 45.0, k1), (-56.0 / 15.0, k2), (32.0 / 9.0, k3)], hs),
        );
        let k5 = rhs(
            x + 8.0 / 9.0 * hs,
            axpy(
                y,
                &[
                    (19372.0 / 6561.0, k1),
                    (-25360.0 / 2187.0, k2),
                    (64448.0 / 6561.0, k3),
                    (-212.0 / 729.0, k4),
                ],
                hs,
            ),
        );
        let k6 = rhs(
            x + hs,
            axpy(
                y,
                &[
                    (9017.0 / 3168.0, k1),
                    (-355.0 / 33.0, k2),
                    (46732.0 / 5247.0, k3),
                    (49.0 / 176.0, k4),
                    (-5103.0 / 18656.0, k5),
                ],
                hs,
            ),
        );
        let y_new = axpy(
            y,
            &[
                (35.0 / 384.0, k1),
                (500.0 / 1113.0, k3),
                (125.0 / 192.0, k4),
                (-2187.0 / 6784.0, k5),
                (11.0 / 84.0, k6),
            ],
            hs,
        );
        let k7 = rhs(x + hs, y_new);
        let y_low = axpy(
            y,
            &[
                (5179.0 / 57600.0, k1),
                (7571.0 / 16695.0, k3),
                (393.0 / 640.0, k4),
                (-92097.0 / 339200.0, k5),
                (187.0 / 2100.0, k6),
                (1.0 / 40.0, k7),
            ],
            hs,
        );

        if !(y_new[0].is_finite() && y_new[1].is_finite()) {
            // Retry with a smaller step before giving up.
            if h > 16.0 * h_min {
                h *= 0.25;
                continue;
            }
            return OdeSolution { xs, ys, outcome: OdeOutcome::NonFinite { x } };
        }

        let mut err = 0.0f64;
        for i in 0..2 {
            let sc = opts.abs_tol
                + opts.rel_tol * crate::math::abs(y[i]).max(crate::math::abs(y_new[i]));
            let e = (y_new[i] - y_low[i]) / sc;
            err += e * e;
        }
        err = crate::math::sqrt(0.5 * err);

        if err <= 1.0 {
            let x_new = x + hs;
            // Event check on the accepted interval, Hermite-refined.
            for (idx, ev) in events.iter().enumerate() {
                let g_new = ev(x_new, y_new);
                if ev_prev[idx] > 0.0 && g_new <= 0.0 {
                    let (xe, ye) = locate_event(ev, x, y, k1, x_new, y_new, k7);
                    xs.push(xe);
                    ys.push(ye);
                    return OdeSolution { xs, ys, outcome: OdeOutcome::Event { index: idx, x: xe } };
                }
                ev_prev[idx] = g_new;
            }
            x = x_new;
            y = y_new;
            k1 = k7;
            xs.push(x);
            ys.push(y);
            let grow = if err == 0.0 { 5.0 } else { (0.9 * crate::math::pow(err, -0.2)).min(5.0) };
            h = (h * grow.max(0.2)).min(opts.h_max);
        } else {
            h *= (0.9 * crate::math::pow(err, -0.2)).max(0.2);
        }
        if h < h_min {
            return OdeSolution { xs, ys, outcome: OdeOutcome::StepUnderflow { x } };
        }
    }
    OdeSolution { xs, ys, outcome: OdeOutcome::MaxSteps { x } }
}

/// Cubic Hermite interpolation on one step.
fn hermite(x0: f64, y0: State, d0: State, x1: f64, y1: State, d1: State, x: f64) -> State {
    let h = x1 - x0;
    let s = (x - x0) / h;
    let s2 = s * s;
    let s3 = s2 * s;
    let h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
    let h10 = s3 - 2.0 * s2 + s;
    let h01 = -2.0 * s3 + 3.0 * s2;
    let h11 = s3 - s2;
    [
        h00 * y0[0] + h10 * h * d0[0] + h01 * y1[0] + h11 * h * d1[0],
        h00 * y0[1] + h10 * h * d0[1] + h01 * y1[1] + h11 * h * d1[1],
    ]
}

fn locate_event(
    ev: &dyn Fn(f64, State) -> f64,
    x0: f64,
    y0: State,
    d0: State,
    x1: f64,
    y1: State,
    d1: State,
) -> (f64, State) {
    let mut lo = x0;
    let mut hi = x1;
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        let ym = hermite(x0, y0, d0, x1, y1, d1, mid);
        if ev(mid, ym) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if crate::math::abs(hi - lo) <= 1e-15 * (1.0 + crate::math::abs(hi)) {
            break;
        }
    }
    (hi, hermite(x0, y0, d0, x1, y1, d1, hi))
}
