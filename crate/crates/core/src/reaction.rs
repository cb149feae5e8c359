//! The regularized reaction of the approximating problems (P_k).
//!
//! The Cauchy problem is approximated by replacing the non-Lipschitz source
//! (1+|x|)^σ w^p with min{(1+|x|)^σ, k} f_k(w), where f_k grafts the linear
//! ramp k^{1−p} w below w = 1/k onto w^p above it. Both branches meet at
//! k^{−p}, f_k is globally Lipschitz with constant k^{1−p}, f_k ≤ w^p, and
//! f_k increases pointwise in k, which drives the monotone construction of
//! the minimal solution.

use crate::math::pow;
use crate::params::Params;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regularization {
    /// Truncation level k ≥ 1.
    Lipschitz(u32),
    /// Raw w^p source; vanishes at w = 0, so explicit stepping follows the
    /// minimal (zero) branch on exact zeros.
    Unregularized,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RegularizedReaction {
    pub reg: Regularization,
    pub params: Params,
}

impl RegularizedReaction {
    pub fn new(reg: Regularization, params: Params) -> Self {
        if let Regularization::Lipschitz(k) = reg {
            assert!(k >= 1, "regularization level must be >= 1");
        }
        RegularizedReaction { reg, params }
    }

    pub fn unregularized(params: Params) -> Self {
        RegularizedReaction { reg: Regularization::Unregularized, params }
    }

    /// f_k(w), or w^p in unregularized mode.
    pub fn f_reg(&self, w: f64) -> f64 {
        debug_assert!(w >= 0.0);
        let p = self.params.p;
        match self.reg {
            Regularization::Lipschitz(k) => {
                let k = k as f64;
                if w * k <= 1.0 {
                    pow(k, 1.0 - p) * w
                } else {
                    pow(w, p)
                }
            }
            Regularization::Unregularized => {
                if w == 0.0 {
                    0.0
                } else {
                    pow(w, p)
                }
            }
        }
    }

    /// min{(1+|x|)^σ, k}; the weight cap is dropped in unregularized mode.
    pub fn weight(&self, x: f64) -> f64 {
        let w = pow(1.0 + crate::math::abs(x), self.params.sigma);
        match self.reg {
            Regularization::Lipschitz(k) => w.min(k as f64),
            Regularization::Unregularized => w,
        }
    }

    /// Full source term min{(1+|x|)^σ, k} f_k(w).
    pub fn evaluate(&self, x: f64, w: f64) -> f64 {
        self.weight(x) * self.f_reg(w)
    }

    /// Bound on ∂/∂w of the source over |x| ≤ x_absmax, 0 ≤ w ≤ u_max, used
    /// by the explicit stability limit. The unregularized slope p w^{p−1} is
    /// unbounded at 0; it is evaluated at max(u_max, 10⁻⁶) since fields at or
    /// below that scale carry no dynamics worth resolving faster.
    pub fn lipschitz(&self, x_absmax: f64, u_max: f64) -> f64 {
        let p = self.params.p;
        let weight_max = self.weight(x_absmax);
        match self.reg {
            Regularization::Lipschitz(k) => weight_max * pow(k as f64, 1.0 - p),
            Regularization::Unregularized => {
                if u_max <= 0.0 {
                    0.0
                } else {
                    weight_max * p * pow(u_max.max(1e-6), p - 1.0)
                }
            }
        }
    }
}
