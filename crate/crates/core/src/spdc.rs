//! Pair-generation bookkeeping: enhanced nonlinearity, parametric
//! transformation coefficient, signal radiance and yield.
//!
//! ```text
//! F = 4π² ω1 ω2 |χ2 E0|² l² / c0²
//! N1 = F (N2 + 1)
//! κ = α η0² η1² η2² ħ ω0² Z0 l² |χ2|² / λ⁴,    λ = 4π c0 / ω0
//! ```
//!
//! For degenerate pairs `η2 = η1` and the enhancement is `η0² η1⁴`.
//! Absolute values of κ are order-of-magnitude estimates;
//! [`YieldReport`] carries the literal formula value plus the η = 1
//! baseline so that ratios, which are free of the unknown prefactors, can be
//! compared directly.

use serde::Serialize;

use crate::constants::{c0, hbar, z0};
use crate::scalar::Real;

/// Default dimensionless prefactor α.
pub const DEFAULT_ALPHA: f64 = 1e-2;

/// Polarisation axis in the interface frame (x along propagation, z normal).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Axis {
    Y,
    Z,
}

/// Tensor element `χ(2)_{pump, signal idler}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct TensorComponent {
    pub pump: Axis,
    pub signal: Axis,
    pub idler: Axis,
}

impl TensorComponent {
    pub const Y_YZ: Self = Self {
        pump: Axis::Y,
        signal: Axis::Y,
        idler: Axis::Z,
    };
    pub const Y_ZY: Self = Self {
        pump: Axis::Y,
        signal: Axis::Z,
        idler: Axis::Y,
    };
}

/// Magnitude of the convolved susceptibility and the tensor elements that
/// carry it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NonlinearResponse<T> {
    chi2_magnitude: T,
    pub active_components: Vec<TensorComponent>,
}

impl<T: Real> NonlinearResponse<T> {
    /// `chi2` in m/V; components default to the surface pair `(y,yz)`, `(y,zy)`.
    pub fn new(chi2: T) -> Option<Self> {
        (chi2 >= T::zero() && chi2.is_finite()).then(|| Self {
            chi2_magnitude: chi2,
            active_components: vec![TensorComponent::Y_YZ, TensorComponent::Y_ZY],
        })
    }

    pub fn magnitude(&self) -> T {
        self.chi2_magnitude
    }
}

/// `χ2 η0 η1 η2`.
pub fn effective_chi2<T: Real>(chi2: T, eta0: T, eta1: T, eta2: T) -> T {
    chi2 * eta0 * eta1 * eta2
}

/// Parametric transformation coefficient (dimensionless).
pub fn transformation_coefficient<T: Real>(omega1: T, omega2: T, chi2_eff: T, pump_field: T, l_delta: T) -> T {
    let four_pi_sq = T::lit(4.0) * T::PI() * T::PI();
    let c = c0::<T>();
    let chi_e = chi2_eff * pump_field;
    four_pi_sq * (omega1 / c) * (omega2 / c) * chi_e * chi_e * l_delta * l_delta
}

/// Signal photons per mode for `n2` seeded idler photons.
pub fn signal_radiance<T: Real>(f: T, n2: T) -> T {
    f * (n2 + T::one())
}

/// Pump intensity corresponding to a photon number, `I0 = N0 ħ ω0²`.
pub fn pump_intensity<T: Real>(photons: T, omega0: T) -> T {
    photons * hbar::<T>() * omega0 * omega0
}

/// Pump field amplitude for intensity `I0`, `E0 = sqrt(Z0 I0)`.
pub fn pump_field_from_intensity<T: Real>(intensity: T) -> T {
    (z0::<T>() * intensity).sqrt()
}

/// Wavelength of the degenerate pair photons, `4π c0 / ω0`.
pub fn pair_wavelength<T: Real>(omega0: T) -> T {
    T::lit(4.0) * T::PI() * c0::<T>() / omega0
}

/// Pump frequency whose degenerate pairs have vacuum wavelength `lambda`.
pub fn pump_omega_for_pair<T: Real>(lambda_pair: T) -> T {
    T::lit(4.0) * T::PI() * c0::<T>() / lambda_pair
}

/// Everything needed to evaluate the yield of one configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct SpdcScenario<T> {
    omega0: T,
    /// Signal frequency; the idler takes `ω0 - ω1`. Defaults to `ω0/2`.
    pub omega1: T,
    pub eta0: T,
    pub eta1: T,
    pub eta2: T,
    pub chi2: NonlinearResponse<T>,
    pub l_delta: T,
    pub alpha: T,
    /// Pump field in V/m; needed only for `F` and `N1`.
    pub pump_field: Option<T>,
    pub idler_photons: T,
    pub loss_factor: T,
}

impl<T: Real> SpdcScenario<T> {
    /// Degenerate scenario with unit enhancements, α = 1e-2, no losses.
    pub fn new(omega0: T, chi2: T, l_delta: T) -> Option<Self> {
        if !(omega0 > T::zero() && omega0.is_finite() && l_delta >= T::zero()) {
            return None;
        }
        Some(Self {
            omega0,
            omega1: omega0 / T::lit(2.0),
            eta0: T::one(),
            eta1: T::one(),
            eta2: T::one(),
            chi2: NonlinearResponse::new(chi2)?,
            l_delta,
            alpha: T::lit(DEFAULT_ALPHA),
            pump_field: None,
            idler_photons: T::zero(),
            loss_factor: T::one(),
        })
    }

    pub fn from_pair_wavelength(lambda_pair: T, chi2: T, l_delta: T) -> Option<Self> {
        Self::new(pump_omega_for_pair(lambda_pair), chi2, l_delta)
    }

    /// Sets `η0` and a degenerate `η1 = η2`.
    pub fn with_degenerate_enhancement(mut self, eta0: T, eta1: T) -> Self {
        self.eta0 = eta0;
        self.eta1 = eta1;
        self.eta2 = eta1;
        self
    }

    pub fn omega0(&self) -> T {
        self.omega0
    }

    pub fn omega2(&self) -> T {
        self.omega0 - self.omega1
    }

    pub fn lambda_pair(&self) -> T {
        pair_wavelength(self.omega0)
    }

    /// `η0² η1² η2²`.
    pub fn enhancement_gain(&self) -> T {
        let e = self.eta0 * self.eta1 * self.eta2;
        e * e
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct YieldReport<T> {
    pub omega0: T,
    pub lambda_pair: T,
    pub eta0: T,
    pub eta1: T,
    pub eta2: T,
    pub chi2: T,
    pub chi2_effective: T,
    pub l_delta: T,
    pub alpha: T,
    pub loss_factor: T,
    /// Transformation coefficient, when a pump field is given.
    pub f: Option<T>,
    /// Signal radiance, when a pump field is given.
    pub n1: Option<T>,
    pub kappa: T,
    /// Same scenario with η0 = η1 = η2 = 1.
    pub kappa_baseline: T,
    /// `κ / κ_baseline = η0² η1² η2²`.
    pub enhancement_gain: T,
}

/// Evaluates `κ`, and `F`/`N1` when the pump field is known.
pub fn yield_kappa<T: Real>(scenario: &SpdcScenario<T>) -> YieldReport<T> {
    let lambda = scenario.lambda_pair();
    let chi2 = scenario.chi2.magnitude();
    let w0 = scenario.omega0;
    let lambda_sq = lambda * lambda;
    let baseline = scenario.loss_factor
        * scenario.alpha
        * hbar::<T>()
        * w0
        * w0
        * z0::<T>()
        * (scenario.l_delta * scenario.l_delta / (lambda_sq * lambda_sq))
        * chi2
        * chi2;
    let gain = scenario.enhancement_gain();
    let chi2_eff = effective_chi2(chi2, scenario.eta0, scenario.eta1, scenario.eta2);
    let f = scenario
        .pump_field
        .map(|e0| transformation_coefficient(scenario.omega1, scenario.omega2(), chi2_eff, e0, scenario.l_delta));
    YieldReport {
        omega0: w0,
        lambda_pair: lambda,
        eta0: scenario.eta0,
        eta1: scenario.eta1,
        eta2: scenario.eta2,
        chi2,
        chi2_effective: chi2_eff,
        l_delta: scenario.l_delta,
        alpha: scenario.alpha,
        loss_factor: scenario.loss_factor,
        f,
        n1: f.map(|f| signal_radiance(f, scenario.idler_photons)),
        kappa: baseline * gain,
        kappa_baseline: baseline,
        enhancement_gain: gain,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const PM_PER_V: f64 = 1e-12;

    #[test]
    fn effective_chi2_cases() {
        assert_eq!(effective_chi2(PM_PER_V, 1.0, 1.0, 1.0), PM_PER_V);
        let e = effective_chi2(PM_PER_V, 1.0, 35.0, 35.0);
        assert!((e - 1225.0 * PM_PER_V).abs() < 1e-24);
        assert_eq!(effective_chi2(0.0, 1.0, 35.0, 35.0), 0.0);
    }

    #[test]
    fn radiance() {
        assert_eq!(signal_radiance(3.5e-9, 0.0), 3.5e-9);
        assert_eq!(signal_radiance(3.5e-9, 1.0), 7.0e-9);
        assert_eq!(signal_radiance(0.0, 4.0), 0.0);
    }

    #[test]
    fn transformation_coefficient_fixture() {
        // 4π² ω1 ω2 (χ E0)² l² / c0² with ω = 1.88e15 rad/s, χ E0 = 1e-6, l = 1 mm:
        // 39.4784176 · 3.5344e30 s⁻² · 1e-12 · 1e-6 m² / 8.98755179e16 m²s⁻² = 1.55250865e-3
        let f = transformation_coefficient(1.88e15, 1.88e15, PM_PER_V, 1e6, 1e-3);
        assert!((f - 1.552_508_653e-3).abs() < 1e-12, "{f}");
        assert_eq!(transformation_coefficient(1.88e15, 1.88e15, 0.0, 1e6, 1e-3), 0.0);
    }

    #[test]
    fn lambda_omega_round_trip() {
        let s = SpdcScenario::from_pair_wavelength(1e-6, PM_PER_V, 1e-3).unwrap();
        assert!((s.lambda_pair() - 1e-6).abs() < 1e-21);
        assert!((s.omega1 - 1.883_651_567e15).abs() < 1e6);
    }

    #[test]
    fn baseline_and_gain() {
        let s = SpdcScenario::from_pair_wavelength(1e-6, PM_PER_V, 3e-3)
            .unwrap()
            .with_degenerate_enhancement(1.0, 35.0);
        let r = yield_kappa(&s);
        assert_eq!(r.enhancement_gain, 35.0_f64.powi(4));
        assert!((r.kappa / r.kappa_baseline - 35.0_f64.powi(4)).abs() < 1e-9 * 35.0_f64.powi(4));
        assert!(r.f.is_none() && r.n1.is_none());
    }

    #[test]
    fn literal_reference_yield() {
        // α ħ ω0² Z0 l² χ² / λ⁴ with λ = 1 µm, l = 1 mm, χ = 1 pm/V
        let s = SpdcScenario::from_pair_wavelength(1e-6, PM_PER_V, 1e-3).unwrap();
        let r = yield_kappa(&s);
        let w0 = 4.0 * std::f64::consts::PI * 299_792_458.0 / 1e-6;
        let expected = 1e-2 * 1.054_571_817e-34 * w0 * w0 * 376.7 * 1e-6 / 1e-24 * 1e-24;
        assert!((r.kappa - expected).abs() < 1e-12 * expected);
        assert!((r.kappa - 5.638_102e-9).abs() < 1e-15, "{}", r.kappa);
    }

    #[test]
    fn rejects_negative_chi() {
        assert!(NonlinearResponse::new(-1.0_f64).is_none());
        assert!(SpdcScenario::new(0.0_f64, 1.0, 1.0).is_none());
    }
}
