//! Scalar float math that works with and without the standard library.
//!
//! Under the `std` feature these forward to the inherent `f64` methods; under
//! `libm` they forward to the [`libm`] crate. Everything in this crate routes
//! transcendental and root operations through here so the core stays
//! `no_std`-compatible.

#[cfg(all(not(feature = "std"), not(feature = "libm")))]
compile_error!("daqc-core requires either the `std` or the `libm` feature");

#[cfg(feature = "std")]
mod imp {
    #[inline(always)]
    pub fn sqrt(x: f64) -> f64 {
        x.sqrt()
    }
    #[inline(always)]
    pub fn sin(x: f64) -> f64 {
        x.sin()
    }
    #[inline(always)]
    pub fn cos(x: f64) -> f64 {
        x.cos()
    }
    #[inline(always)]
    pub fn acos(x: f64) -> f64 {
        x.acos()
    }
    #[inline(always)]
    pub fn ln(x: f64) -> f64 {
        x.ln()
    }
    #[inline(always)]
    pub fn hypot(x: f64, y: f64) -> f64 {
        x.hypot(y)
    }
    /// Fused `x*y + z` with a single rounding.
    #[inline(always)]
    pub fn fma(x: f64, y: f64, z: f64) -> f64 {
        x.mul_add(y, z)
    }
}

#[cfg(all(not(feature = "std"), feature = "libm"))]
mod imp {
    #[inline(always)]
    pub fn sqrt(x: f64) -> f64 {
        libm::sqrt(x)
    }
    #[inline(always)]
    pub fn sin(x: f64) -> f64 {
        libm::sin(x)
    }
    #[inline(always)]
    pub fn cos(x: f64) -> f64 {
        libm::cos(x)
    }
    #[inline(always)]
    pub fn acos(x: f64) -> f64 {
        libm::acos(x)
    }
    #[inline(always)]
    pub fn ln(x: f64) -> f64 {
        libm::log(x)
    }
    #[inline(always)]
    pub fn hypot(x: f64, y: f64) -> f64 {
        libm::hypot(x, y)
    }
    /// Fused `x*y + z` with a single rounding.
    #[inline(always)]
    pub fn fma(x: f64, y: f64, z: f64) -> f64 {
        libm::fma(x, y, z)
    }
}

pub(crate) use imp::{acos, cos, fma, hypot, ln, sin, sqrt};
