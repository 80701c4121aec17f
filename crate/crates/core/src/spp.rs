//! Surface plasmon polaritons on a single metal/dielectric interface.
//!
//! `k = k_0 sqrt(ε_m ε_d / (ε_m + ε_d))`, effective index `n_sp = k / k_0`.
//! The prism loading of a finite film is ignored: the mode is that of the
//! bare interface between the film and the exit medium.

use thiserror::Error;

use crate::constants::{omega_from_wavelength, vacuum_wavenumber};
use crate::materials::{Material, MaterialError};
use crate::scalar::{Cx, Real};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SppError {
    #[error(transparent)]
    Material(#[from] MaterialError),
    #[error("surface-plasmon pole: eps_metal + eps_dielectric = 0")]
    Pole,
    #[error("no prism coupling: mode index {n_sp} exceeds prism index {n0}")]
    NoPrismCoupling { n_sp: f64, n0: f64 },
    #[error("invalid argument: {0}")]
    Invalid(String),
}

/// SPP at one frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SppMode<T> {
    pub omega: T,
    pub lambda_vac: T,
    /// Complex in-plane wavenumber, 1/m.
    pub k: Cx<T>,
    /// Complex effective index `c_0 k / ω`.
    pub n_sp: Cx<T>,
    /// Intensity propagation length `1 / (2 Im k)`; infinite for lossless metals.
    pub propagation_length: T,
    /// `Re ε_m < -Re ε_d`, i.e. a bound mode below the surface-plasmon frequency.
    pub bound: bool,
}

impl<T: Real> SppMode<T> {
    /// Builds a mode directly from an effective index.
    pub fn from_index(n_sp: Cx<T>, lambda_vac: T) -> Self {
        let k = n_sp * vacuum_wavenumber(lambda_vac);
        Self {
            omega: omega_from_wavelength(lambda_vac),
            lambda_vac,
            k,
            n_sp,
            propagation_length: damping_length(k.im),
            bound: true,
        }
    }
}

fn damping_length<T: Real>(im_k: T) -> T {
    if im_k > T::zero() {
        T::one() / (T::lit(2.0) * im_k)
    } else {
        T::infinity()
    }
}

/// SPP dispersion of a single interface at vacuum wavelength `lambda_vac`.
pub fn spp_mode<T: Real>(metal_eps: Cx<T>, dielectric_eps: Cx<T>, lambda_vac: T) -> Result<SppMode<T>, SppError> {
    if !(lambda_vac.is_finite() && lambda_vac > T::zero()) {
        return Err(SppError::Invalid(format!(
            "wavelength {} m",
            lambda_vac.to_f64_lossy()
        )));
    }
    let sum = metal_eps + dielectric_eps;
    if sum.re == T::zero() && sum.im == T::zero() {
        return Err(SppError::Pole);
    }
    // principal root: Re n_sp ≥ 0, and Im n_sp ≥ 0 for passive media
    let n_sp = (metal_eps * dielectric_eps / sum).sqrt();
    let k = n_sp * vacuum_wavenumber(lambda_vac);
    Ok(SppMode {
        omega: omega_from_wavelength(lambda_vac),
        lambda_vac,
        k,
        n_sp,
        propagation_length: damping_length(k.im),
        bound: metal_eps.re < -dielectric_eps.re,
    })
}

/// [`spp_mode`] with permittivities resolved from materials.
pub fn interface_mode<T: Real>(
    metal: &Material<T>,
    dielectric: &Material<T>,
    lambda_vac: T,
) -> Result<SppMode<T>, SppError> {
    spp_mode(
        metal.permittivity(lambda_vac)?,
        dielectric.permittivity(lambda_vac)?,
        lambda_vac,
    )
}

/// Coherence length limited by SPP damping, `1 / (2 Im k)`.
pub fn coherence_length_damping<T: Real>(mode: &SppMode<T>) -> T {
    damping_length(mode.k.im)
}

/// Coherence length limited by phase mismatch, `1 / |k_0 - k_1* - k_2*|`.
pub fn coherence_length_mismatch<T: Real>(k0_eff: Cx<T>, k1: Cx<T>, k2: Cx<T>) -> T {
    let mismatch = (k0_eff - k1.conj() - k2.conj()).norm();
    if mismatch == T::zero() {
        T::infinity()
    } else {
        mismatch.recip()
    }
}

/// Prism coupling angle, in both conventions.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct CouplingAngle<T> {
    /// Measured from the interface plane.
    pub phi_from_plane: T,
    /// Measured from the surface normal; `π/2 - phi_from_plane`.
    pub theta_from_normal: T,
}

impl<T: Real> CouplingAngle<T> {
    pub fn from_plane(phi: T) -> Self {
        Self {
            phi_from_plane: phi,
            theta_from_normal: T::FRAC_PI_2() - phi,
        }
    }

    pub fn from_normal(theta: T) -> Self {
        Self {
            phi_from_plane: T::FRAC_PI_2() - theta,
            theta_from_normal: theta,
        }
    }
}

/// Kretschmann angle `φ = arccos(n_sp / n0)` for a prism of index `n0`.
pub fn kretschmann_angle<T: Real>(n_sp_real: T, n0: T) -> Result<CouplingAngle<T>, SppError> {
    if !(n_sp_real > T::zero() && n0 > T::zero()) {
        return Err(SppError::Invalid(format!(
            "indices must be positive (n_sp={}, n0={})",
            n_sp_real.to_f64_lossy(),
            n0.to_f64_lossy()
        )));
    }
    if n_sp_real > n0 {
        return Err(SppError::NoPrismCoupling {
            n_sp: n_sp_real.to_f64_lossy(),
            n0: n0.to_f64_lossy(),
        });
    }
    Ok(CouplingAngle::from_plane((n_sp_real / n0).acos()))
}

/// Periodic surface corrugation.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct GratingSpec<T> {
    period: T,
    order: i32,
}

impl<T: Real> GratingSpec<T> {
    pub fn new(period: T, order: i32) -> Result<Self, SppError> {
        if !(period.is_finite() && period > T::zero()) {
            return Err(SppError::Invalid(format!(
                "grating period must be positive and finite, got {}",
                period.to_f64_lossy()
            )));
        }
        Ok(Self { period, order })
    }

    pub fn period(&self) -> T {
        self.period
    }

    pub fn order(&self) -> i32 {
        self.order
    }

    /// Grating wavenumber `2π / a`.
    pub fn k_a(&self) -> T {
        T::lit(2.0) * T::PI() / self.period
    }
}

/// Folded wavenumbers `k_n = k - n k_a` for `n` in `-n_max..=n_max`.
pub fn fold_wavevector<T: Real>(k: T, grating: &GratingSpec<T>, n_max: u32) -> Vec<(i32, T)> {
    let k_a = grating.k_a();
    let n_max = n_max as i32;
    (-n_max..=n_max)
        .map(|n| (n, k - T::from_i32(n).expect("order") * k_a))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::materials::Material;

    #[test]
    fn lossless_toy_metal() {
        let m = spp_mode(Cx::new(-2.0_f64, 0.0), Cx::new(1.0, 0.0), 0.8e-6).unwrap();
        assert!((m.n_sp.re - 2f64.sqrt()).abs() < 1e-14);
        assert_eq!(m.k.im, 0.0);
        assert!(m.propagation_length.is_infinite());
        assert!(coherence_length_damping(&m).is_infinite());
    }

    #[test]
    fn perfect_conductor_limit() {
        let m = spp_mode(Cx::new(-1e9_f64, 0.0), Cx::new(2.25, 0.0), 1e-6).unwrap();
        assert!((m.n_sp.re - 1.5).abs() < 1e-4);
    }

    #[test]
    fn pole_is_an_error() {
        assert_eq!(
            spp_mode(Cx::new(-1.0_f64, 0.0), Cx::new(1.0, 0.0), 1e-6),
            Err(SppError::Pole)
        );
    }

    #[test]
    fn unbound_mode_is_flagged_not_rejected() {
        let m = spp_mode(Cx::new(-0.5_f64, 0.1), Cx::new(1.0, 0.0), 1e-6).unwrap();
        assert!(!m.bound);
    }

    #[test]
    fn air_silver_at_one_micron() {
        let m = interface_mode(&Material::<f64>::silver(), &Material::vacuum(), 1e-6).unwrap();
        assert!(m.bound);
        assert!(m.n_sp.re > 1.0 && m.n_sp.re < 1.02);
        assert!(m.n_sp.im > 1e-4 && m.n_sp.im < 1e-3);
        // frozen
        assert!((m.n_sp.re - 1.009_992_132).abs() < 1e-8, "{}", m.n_sp);
        assert!((m.n_sp.im - 1.138_608e-4).abs() < 1e-9, "{}", m.n_sp);
    }

    #[test]
    fn damping_length_arithmetic() {
        let mode = SppMode::from_index(Cx::new(1.0_f64, 500.0 / vacuum_wavenumber(1e-6)), 1e-6);
        assert!((coherence_length_damping(&mode) - 1.0e-3).abs() < 1e-15);
    }

    #[test]
    fn mismatch_length() {
        let c = |x: f64| Cx::new(x, 0.0);
        assert!(coherence_length_mismatch(c(1e7), c(4e6), c(6e6)).is_infinite());
        let l = coherence_length_mismatch(c(1e7), c(4.95e6), c(4.95e6));
        assert!((l - 1e-5).abs() < 1e-17);
        // matched real parts, lossy pair: reduces to the damping length
        let (kr, kappa) = (6.3e6, 734.0);
        let k1 = Cx::new(kr, kappa);
        let l = coherence_length_mismatch(c(2.0 * kr), k1, k1);
        let mode = SppMode::from_index(k1 / vacuum_wavenumber(1e-6), 1e-6);
        let damping = coherence_length_damping(&mode);
        assert!((l - 1.0 / (2.0 * kappa)).abs() <= 1e-12 * l);
        assert!((l - damping).abs() <= 1e-12 * l);
    }

    #[test]
    fn kretschmann_limits() {
        let a = kretschmann_angle(1.5_f64, 1.5).unwrap();
        assert_eq!(a.phi_from_plane, 0.0);
        assert_eq!(a.theta_from_normal, std::f64::consts::FRAC_PI_2);
        assert!(matches!(
            kretschmann_angle(1.2_f64, 1.0),
            Err(SppError::NoPrismCoupling { .. })
        ));
        let a = kretschmann_angle(1.011_f64, 1.5).unwrap();
        assert!((a.phi_from_plane.to_degrees() - 47.625).abs() < 0.01, "{}", a.phi_from_plane.to_degrees());
        assert!((a.theta_from_normal - (1.011_f64 / 1.5).asin()).abs() < 1e-14);
    }

    #[test]
    fn folding_orders() {
        let g = GratingSpec::new(2.0 * std::f64::consts::PI / 3.0, 1).unwrap();
        let folded = fold_wavevector(10.0, &g, 2);
        let expected = [(-2, 16.0), (-1, 13.0), (0, 10.0), (1, 7.0), (2, 4.0)];
        assert_eq!(folded.len(), 5);
        for ((n, k), (en, ek)) in folded.iter().zip(expected) {
            assert_eq!(*n, en);
            assert!((k - ek).abs() < 1e-12);
        }
        assert!(GratingSpec::new(f64::INFINITY, 1).is_err());
        assert!(GratingSpec::new(0.0_f64, 1).is_err());
    }
}
