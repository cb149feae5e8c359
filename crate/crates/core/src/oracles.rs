//! Closed-form reference solutions.
//!
//! Three exactly-known solutions anchor the solver tests:
//!
//! * [`reaction_oracle`] — the maximal branch of the space-homogeneous
//!   reaction ODE u' = u^p.
//! * [`barenblatt`] — the source solution of the pure porous-medium
//!   equation u_t = Δu^m, whose pressure saturates Δv = −K_abe/t exactly.
//! * [`u_bar_subsolution`] — the explicit solution of the pure weighted
//!   reaction equation u_t = (1+|x|)^σ u^p lifting off zero data.

use crate::math::{abs, pow};
use crate::params::Params;

/// Maximal solution of u' = u^p through u(0) = u0:
/// u(t) = (u0^{1−p} + (1−p) t)^{1/(1−p)}.
pub fn reaction_oracle(u0: f64, p: f64, t: f64) -> f64 {
    debug_assert!(u0 >= 0.0 && t >= 0.0 && p > 0.0 && p < 1.0);
    pow(pow(u0, 1.0 - p) + (1.0 - p) * t, 1.0 / (1.0 - p))
}

/// Same ODE with a constant weight c in front of the reaction: u' = c u^p.
pub fn weighted_reaction_oracle(u0: f64, p: f64, c: f64, t: f64) -> f64 {
    pow(pow(u0, 1.0 - p) + (1.0 - p) * c * t, 1.0 / (1.0 - p))
}

/// Barenblatt source solution of u_t = Δu^m in N dimensions:
///
/// u(x,t) = t^{−K} (C − κ |x|² t^{−2K/N})_+^{1/(m−1)},
/// K = N/(N(m−1)+2), κ = (m−1)K/(2mN).
///
/// σ plays no role here; only m and N are read from `params`.
pub fn barenblatt(params: &Params, mass_const: f64, x: f64, t: f64) -> f64 {
    debug_assert!(t > 0.0 && mass_const > 0.0);
    let (m, n) = (params.m, params.dim as f64);
    let k = params.constants().k_abe;
    let kappa = (m - 1.0) * k / (2.0 * m * n);
    let core = mass_const - kappa * x * x * pow(t, -2.0 * k / n);
    if core <= 0.0 {
        0.0
    } else {
        pow(t, -k) * pow(core, 1.0 / (m - 1.0))
    }
}

/// Radius of the Barenblatt support: |x| < (C/κ)^{1/2} t^{K/N}.
pub fn barenblatt_support_radius(params: &Params, mass_const: f64, t: f64) -> f64 {
    let (m, n) = (params.m, params.dim as f64);
    let k = params.constants().k_abe;
    let kappa = (m - 1.0) * k / (2.0 * m * n);
    pow(mass_const / kappa, 0.5) * pow(t, k / n)
}

/// Pressure v = (m/(m−1)) u^{m−1} of the Barenblatt solution. Quadratic in x
/// inside the support, so its Laplacian is exactly −K_abe/t there.
pub fn barenblatt_pressure(params: &Params, mass_const: f64, x: f64, t: f64) -> f64 {
    let m = params.m;
    m / (m - 1.0) * pow(barenblatt(params, mass_const, x, t), m - 1.0)
}

/// Explicit solution of the pure weighted reaction equation
/// u_t = (1+|x|)^σ u^p with zero initial data:
///
/// Ū(x,t) = (1/(1−p))^{1/(p−1)} t^{1/(1−p)} (1+|x|)^{σ/(1−p)}.
pub fn u_bar_subsolution(params: &Params, x: f64, t: f64) -> f64 {
    debug_assert!(t >= 0.0);
    if t == 0.0 {
        return 0.0;
    }
    let (p, sigma) = (params.p, params.sigma);
    let a = 1.0 / (1.0 - p);
    pow(1.0 - p, a) * pow(t, a) * pow(1.0 + abs(x), sigma * a)
}

/// Time derivative of [`u_bar_subsolution`], for residual cross-checks.
pub fn u_bar_time_derivative(params: &Params, x: f64, t: f64) -> f64 {
    let (p, sigma) = (params.p, params.sigma);
    let a = 1.0 / (1.0 - p);
    pow(1.0 - p, a) * a * pow(t, a - 1.0) * pow(1.0 + abs(x), sigma * a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{Field, Grid};

    fn params(m: f64, p: f64, sigma: f64, dim: u32) -> Params {
        Params::new(m, p, sigma, dim).unwrap()
    }

    #[test]
    fn reaction_oracle_values() {
        // (u0=1, p=0.5, t=3): (1 + 1.5)^2 = 6.25.
        assert!((reaction_oracle(1.0, 0.5, 3.0) - 6.25).abs() < 1e-14);
        assert_eq!(reaction_oracle(0.0, 0.5, 0.0), 0.0);
        // Zero data lift: (0.5 * 1)^2 = 0.25, the maximal branch.
        assert!((reaction_oracle(0.0, 0.5, 1.0) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn reaction_oracle_ode_residual() {
        // |du/dt - u^p| <= 1e-8 by central differencing, several exponents.
        for &p in &[0.3, 0.5, 0.75] {
            for &t in &[0.1, 0.5, 1.0, 3.0] {
                let dt = 1e-4;
                let du = (reaction_oracle(1.0, p, t + dt) - reaction_oracle(1.0, p, t - dt))
                    / (2.0 * dt);
                let res = (du - pow(reaction_oracle(1.0, p, t), p)).abs();
                assert!(res <= 1e-8, "p={p} t={t} residual={res}");
            }
        }
    }

    #[test]
    fn barenblatt_values() {
        let pr = params(2.0, 0.5, 0.0, 1);
        // kappa = 1/12 for m=2, N=1, so u(0, 1) = C^{1/(m-1)} = 1.
        assert!((barenblatt(&pr, 1.0, 0.0, 1.0) - 1.0).abs() < 1e-14);
        assert_eq!(barenblatt(&pr, 1.0, 100.0, 1.0), 0.0);
        let r = barenblatt_support_radius(&pr, 1.0, 1.0);
        assert!((r - pow(12.0, 0.5)).abs() < 1e-12);
    }

    #[test]
    fn barenblatt_pressure_laplacian_is_minus_k_over_t() {
        // Second difference of the quadratic pressure inside the support
        // equals -1/(3t) exactly for m=2, N=1.
        let pr = params(2.0, 0.5, 0.0, 1);
        let (h, t) = (0.01, 2.0);
        for i in -50..=50 {
            let x = i as f64 * 0.02;
            let lap = (barenblatt_pressure(&pr, 1.0, x + h, t)
                + barenblatt_pressure(&pr, 1.0, x - h, t)
                - 2.0 * barenblatt_pressure(&pr, 1.0, x, t))
                / (h * h);
            assert!(
                (lap + 1.0 / (3.0 * t)).abs() < 1e-9,
                "x={x} lap={lap} expected={}",
                -1.0 / (3.0 * t)
            );
        }
    }

    #[test]
    fn barenblatt_conserves_mass() {
        let pr = params(2.0, 0.5, 0.0, 1);
        let grid = Grid::line(-10.0, 10.0, 2000).unwrap();
        let m1 = Field::from_fn(grid, 1.0, |x| barenblatt(&pr, 1.0, x, 1.0)).mass(1);
        let m4 = Field::from_fn(grid, 4.0, |x| barenblatt(&pr, 1.0, x, 4.0)).mass(1);
        assert!((m1 - m4).abs() / m1 < 1e-3, "m1={m1} m4={m4}");
    }

    #[test]
    fn u_bar_values() {
        let pr = params(2.0, 0.5, 1.0, 1);
        assert!((u_bar_subsolution(&pr, 0.0, 1.0) - 0.25).abs() < 1e-15);
        assert!((u_bar_subsolution(&pr, 1.0, 1.0) - 1.0).abs() < 1e-15);
        assert_eq!(u_bar_subsolution(&pr, 3.0, 0.0), 0.0);
    }

    #[test]
    fn u_bar_solves_pure_reaction_pointwise() {
        // u_t computed from the independent closed-form derivative matches
        // the weighted reaction term to 1e-10 on t in [0.1, 10].
        for &(m, p, sigma) in &[(2.0, 0.5, 1.0), (3.0, 0.5, 3.0), (1.5, 0.75, 2.0)] {
            let pr = params(m, p, sigma, 1);
            for i in 0..40 {
                let t = 0.1 + 9.9 * i as f64 / 39.0;
                for &x in &[0.0, 0.6, 1.7, 3.0] {
                    let lhs = u_bar_time_derivative(&pr, x, t);
                    let u = u_bar_subsolution(&pr, x, t);
                    let rhs = pow(1.0 + x, sigma) * pow(u, p);
                    let scale = lhs.abs().max(1.0);
                    assert!(
                        (lhs - rhs).abs() <= 1e-10 * scale,
                        "m={m} p={p} sigma={sigma} x={x} t={t}: {lhs} vs {rhs}"
                    );
                }
            }
        }
    }
}
