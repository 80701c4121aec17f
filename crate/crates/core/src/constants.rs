//! Physical constants (SI).

use crate::scalar::Real;

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
/// Reduced Planck constant, J·s.
pub const HBAR: f64 = 1.054_571_817e-34;
/// Impedance of free space, Ω, at the rounded value used for yield estimates.
pub const FREE_SPACE_IMPEDANCE: f64 = 376.7;

#[inline]
pub fn c0<T: Real>() -> T {
    T::lit(SPEED_OF_LIGHT)
}

#[inline]
pub fn hbar<T: Real>() -> T {
    T::lit(HBAR)
}

#[inline]
pub fn z0<T: Real>() -> T {
    T::lit(FREE_SPACE_IMPEDANCE)
}

/// Angular frequency of light with vacuum wavelength `lambda`.
#[inline]
pub fn omega_from_wavelength<T: Real>(lambda: T) -> T {
    T::lit(2.0) * T::PI() * c0::<T>() / lambda
}

/// Vacuum wavelength of light with angular frequency `omega`.
#[inline]
pub fn wavelength_from_omega<T: Real>(omega: T) -> T {
    T::lit(2.0) * T::PI() * c0::<T>() / omega
}

/// Vacuum wavenumber `2π/λ`.
#[inline]
pub fn vacuum_wavenumber<T: Real>(lambda: T) -> T {
    T::lit(2.0) * T::PI() / lambda
}
