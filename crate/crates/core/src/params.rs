//! Exponent bookkeeping for the equation u_t = Δu^m + (1+|x|)^σ u^p.
//!
//! The admissible window is m > 1, 0 < p < 1, σ ≥ 0 (σ = 0 gives the
//! homogeneous equation used by several closed-form oracles). The sign of
//! m + p − 2 separates finite from infinite propagation speed and is exposed
//! as [`Regime`]. The remaining constants derived from (m, p, σ, N) are
//! gathered in [`DerivedConstants`]:
//!
//! * `L = σ(m−1) + 2(p−1)` controls existence of blow-up self-similar
//!   profiles; the self-similar exponents `α = (σ+2)/L`, `β = (m−p)/L`
//!   exist only when `L ≠ 0`.
//! * `γ = (m−p)/(2(1−p))` scales the support of the absolute minimal
//!   solution E.
//! * `K_abe = N/(N(m−1)+2)` is the semiconvexity constant in Δv ≥ −K/t.
//! * `K_mp = m((m−1)/m)^{(m+p−2)/(m−1)}` is the reaction coefficient of the
//!   pressure equation.

use crate::math::pow;
use core::fmt;

/// Position of (m, p) relative to the m + p = 2 threshold.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Regime {
    /// m + p > 2: finite speed of propagation, interfaces persist.
    Slow,
    /// m + p = 2: borderline, still finite speed.
    Critical,
    /// m + p < 2: infinite speed of propagation, instant positivity.
    Fast,
}

/// Validated exponent set (m, p, σ) plus the space dimension N.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Params {
    pub m: f64,
    pub p: f64,
    pub sigma: f64,
    pub dim: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParamError {
    MOutOfRange,
    POutOfRange,
    SigmaNegative,
    DimZero,
    NonFinite,
}

impl fmt::Display for ParamError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamError::MOutOfRange => write!(f, "m must satisfy m > 1"),
            ParamError::POutOfRange => write!(f, "p must satisfy 0 < p < 1"),
            ParamError::SigmaNegative => write!(f, "sigma must satisfy sigma >= 0"),
            ParamError::DimZero => write!(f, "dimension must satisfy N >= 1"),
            ParamError::NonFinite => write!(f, "exponents must be finite"),
        }
    }
}

impl core::error::Error for ParamError {}

impl Params {
    pub fn new(m: f64, p: f64, sigma: f64, dim: u32) -> Result<Self, ParamError> {
        if !(m.is_finite() && p.is_finite() && sigma.is_finite()) {
            return Err(ParamError::NonFinite);
        }
        if m <= 1.0 {
            return Err(ParamError::MOutOfRange);
        }
        if p <= 0.0 || p >= 1.0 {
            return Err(ParamError::POutOfRange);
        }
        if sigma < 0.0 {
            return Err(ParamError::SigmaNegative);
        }
        if dim == 0 {
            return Err(ParamError::DimZero);
        }
        Ok(Params { m, p, sigma, dim })
    }

    /// Same exponents with σ replaced, revalidated.
    pub fn with_sigma(&self, sigma: f64) -> Result<Self, ParamError> {
        Params::new(self.m, self.p, sigma, self.dim)
    }

    pub fn regime(&self) -> Regime {
        let s = self.m + self.p - 2.0;
        if s > 0.0 {
            Regime::Slow
        } else if s < 0.0 {
            Regime::Fast
        } else {
            Regime::Critical
        }
    }

    /// L = σ(m−1) + 2(p−1).
    pub fn l_const(&self) -> f64 {
        self.sigma * (self.m - 1.0) + 2.0 * (self.p - 1.0)
    }

    /// The borderline weight exponent 2(1−p)/(m−1); L > 0 iff σ exceeds it.
    pub fn sigma_split(&self) -> f64 {
        2.0 * (1.0 - self.p) / (self.m - 1.0)
    }

    pub fn constants(&self) -> DerivedConstants {
        let l = self.l_const();
        let (alpha, beta) = if l != 0.0 {
            (Some((self.sigma + 2.0) / l), Some((self.m - self.p) / l))
        } else {
            (None, None)
        };
        let n = self.dim as f64;
        DerivedConstants {
            l,
            alpha,
            beta,
            gamma: (self.m - self.p) / (2.0 * (1.0 - self.p)),
            k_abe: n / (n * (self.m - 1.0) + 2.0),
            k_mp: self.m * pow((self.m - 1.0) / self.m, (self.m + self.p - 2.0) / (self.m - 1.0)),
        }
    }
}

/// Constants derived from one [`Params`] value; see the module docs for the
/// defining formulas.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DerivedConstants {
    #[cfg_attr(feature = "serde", serde(rename = "L"))]
    pub l: f64,
    /// (σ+2)/L, `None` when L = 0.
    pub alpha: Option<f64>,
    /// (m−p)/L, `None` when L = 0.
    pub beta: Option<f64>,
    pub gamma: f64,
    #[cfg_attr(feature = "serde", serde(rename = "K_abe"))]
    pub k_abe: f64,
    #[cfg_attr(feature = "serde", serde(rename = "K_mp"))]
    pub k_mp: f64,
}
