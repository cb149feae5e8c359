//! Thin wrappers over `libm` so every float transcendental goes through the
//! same code path in `no_std` and `std` builds alike.

/// `x^y`. All call sites in this crate keep the base nonnegative; a negative
/// base with fractional exponent is a bug upstream, so debug builds trap it.
#[inline]
pub fn pow(x: f64, y: f64) -> f64 {
    debug_assert!(
        x >= 0.0 || y == libm::floor(y),
        "pow of negative base {x} with fractional exponent {y}"
    );
    libm::pow(x, y)
}

#[inline]
pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub fn exp(x: f64) -> f64 {
    libm::exp(x)
}

#[inline]
pub fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[inline]
pub fn log10(x: f64) -> f64 {
    libm::log10(x)
}

#[inline]
pub fn abs(x: f64) -> f64 {
    libm::fabs(x)
}

#[inline]
pub fn floor(x: f64) -> f64 {
    libm::floor(x)
}

#[inline]
pub fn round(x: f64) -> f64 {
    libm::round(x)
}
