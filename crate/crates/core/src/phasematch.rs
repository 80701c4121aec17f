//! Collinear momentum matching between the pump-driven surface polarisation
//! and the generated plasmon pair.
//!
//! A pump of frequency `ω0` entering the prism at angle `φ` from the
//! interface plane drives a polarisation wave with in-plane wavenumber
//! `K = (ω0/c0) n0 cos φ`. Pairs are generated when
//! `Re k(ω1) + Re k(ω0 - ω1) = K`. Only real parts enter the matching; the
//! imaginary parts limit the coherence length instead.

use thiserror::Error;

use crate::constants::{c0, omega_from_wavelength, wavelength_from_omega};
use crate::materials::Material;
use crate::scalar::Real;
use crate::search::bisect;
use crate::spp::{fold_wavevector, interface_mode, kretschmann_angle, CouplingAngle, GratingSpec, SppError, SppMode};

/// Relative bracket width at which the frequency bisection stops.
pub const OMEGA_REL_TOL: f64 = 1e-10;
/// Largest accepted `|K - k1 - k2| / K` for a returned solution.
pub const RESIDUAL_REL_TOL: f64 = 1e-9;
/// Lower end of the signal-frequency bracket, as a fraction of `ω0`.
pub const BRACKET_FLOOR: f64 = 1e-3;

const MONOTONE_SAMPLES: usize = 33;
const FALLBACK_SAMPLES: usize = 2049;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MatchError {
    #[error(transparent)]
    Spp(#[from] SppError),
    #[error("angle {phi} rad exceeds the degenerate angle {phi0} rad: classify the regime first")]
    Regime { phi: f64, phi0: f64 },
    #[error("unmatchable geometry: {0}")]
    Unmatchable(String),
    #[error("grating unnecessary or invalid: momentum deficit {deficit} 1/m")]
    GratingUnnecessary { deficit: f64 },
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
}

/// SPP dispersion `ω ↦ mode`, a pure function of its argument.
pub trait Dispersion<T: Real>: Sync {
    fn mode(&self, omega: T) -> Result<SppMode<T>, SppError>;

    /// Angular frequencies where [`Dispersion::mode`] is defined.
    fn omega_range(&self) -> (T, T) {
        (T::zero(), T::infinity())
    }
}

impl<T, F> Dispersion<T> for F
where
    T: Real,
    F: Fn(T) -> Result<SppMode<T>, SppError> + Sync,
{
    fn mode(&self, omega: T) -> Result<SppMode<T>, SppError> {
        self(omega)
    }
}

/// Single metal/dielectric interface, e.g. air–silver.
#[derive(Debug, Clone)]
pub struct InterfaceDispersion<T> {
    pub metal: Material<T>,
    pub dielectric: Material<T>,
}

impl<T: Real> InterfaceDispersion<T> {
    pub fn new(metal: Material<T>, dielectric: Material<T>) -> Self {
        Self { metal, dielectric }
    }
}

fn material_omega_range<T: Real>(m: &Material<T>) -> (T, T) {
    match m {
        Material::ConstantIndex(_) => (T::zero(), T::infinity()),
        Material::Tabulated(t) => {
            let (lo, hi) = t.range();
            (omega_from_wavelength(hi), omega_from_wavelength(lo))
        }
    }
}

impl<T: Real> Dispersion<T> for InterfaceDispersion<T> {
    fn mode(&self, omega: T) -> Result<SppMode<T>, SppError> {
        interface_mode(&self.metal, &self.dielectric, wavelength_from_omega(omega))
    }

    fn omega_range(&self) -> (T, T) {
        let (a_lo, a_hi) = material_omega_range(&self.metal);
        let (b_lo, b_hi) = material_omega_range(&self.dielectric);
        (a_lo.max(b_lo), a_hi.min(b_hi))
    }
}

/// Pump frequency, prism index and angle from the interface plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PumpGeometry<T> {
    pub omega0: T,
    pub n0: T,
    pub phi_from_plane: T,
}

impl<T: Real> PumpGeometry<T> {
    /// In-plane wavenumber of the driven polarisation, `(ω0/c0) n0 cos φ`.
    pub fn k_par_pump(&self) -> T {
        pump_k_parallel(self.omega0, self.n0, self.phi_from_plane)
    }
}

pub fn pump_k_parallel<T: Real>(omega0: T, n0: T, phi_from_plane: T) -> T {
    omega0 / c0::<T>() * n0 * phi_from_plane.cos()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Regime {
    #[serde(rename = "degenerate")]
    Degenerate,
    #[serde(rename = "nondegenerate")]
    Nondegenerate,
    #[serde(rename = "superluminal-no-SPDC")]
    SuperluminalNoSpdc,
}

impl Regime {
    pub fn label(&self) -> &'static str {
        match self {
            Regime::Degenerate => "degenerate",
            Regime::Nondegenerate => "nondegenerate",
            Regime::SuperluminalNoSpdc => "superluminal-no-SPDC",
        }
    }
}

/// Matched signal/idler pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseMatchSolution<T> {
    pub omega0: T,
    pub omega1: T,
    /// Real SPP wavenumber at `omega1`.
    pub k1: T,
    /// Real SPP wavenumber at `omega2`.
    pub k2: T,
    /// Target in-plane pump wavenumber.
    pub k_par_pump: T,
    /// `|k_par_pump - k1 - k2|`.
    pub residual: T,
    pub regime: Regime,
}

impl<T: Real> PhaseMatchSolution<T> {
    pub fn omega2(&self) -> T {
        self.omega0 - self.omega1
    }
}

/// Pumping beyond the degenerate angle drives a polarisation faster than
/// the plasmons and generates no pairs.
pub fn classify_regime<T: Real>(phi: T, phi0: T) -> Regime {
    if phi > phi0 {
        Regime::SuperluminalNoSpdc
    } else if phi == phi0 {
        Regime::Degenerate
    } else {
        Regime::Nondegenerate
    }
}

/// Degenerate matching `ω1 = ω2 = ω0/2` at `φ0 = arccos(n_sp(ω0/2)/n0)`.
pub fn degenerate_match<T: Real, D: Dispersion<T> + ?Sized>(
    omega0: T,
    n0: T,
    dispersion: &D,
) -> Result<(CouplingAngle<T>, PhaseMatchSolution<T>), MatchError> {
    if !(omega0.is_finite() && omega0 > T::zero()) {
        return Err(MatchError::Invalid(format!("pump frequency {}", omega0.to_f64_lossy())));
    }
    let half = omega0 / T::lit(2.0);
    let mode = dispersion.mode(half)?;
    let angle = kretschmann_angle(mode.n_sp.re, n0)?;
    let k_par = pump_k_parallel(omega0, n0, angle.phi_from_plane);
    let k1 = mode.k.re;
    let residual = (k_par - k1 - k1).abs();
    if residual > T::lit(RESIDUAL_REL_TOL) * k_par {
        return Err(MatchError::Numerical(format!(
            "degenerate residual {} exceeds tolerance",
            residual.to_f64_lossy()
        )));
    }
    Ok((
        angle,
        PhaseMatchSolution {
            omega0,
            omega1: half,
            k1,
            k2: k1,
            k_par_pump: k_par,
            residual,
            regime: Regime::Degenerate,
        },
    ))
}

/// Non-degenerate matching for a pump at `phi` (from the plane) below the
/// degenerate angle. Returns the canonical branch `ω1 ≤ ω0/2`.
pub fn nondegenerate_match<T: Real, D: Dispersion<T> + ?Sized>(
    omega0: T,
    n0: T,
    phi: T,
    dispersion: &D,
) -> Result<PhaseMatchSolution<T>, MatchError> {
    let (phi0, degenerate) = degenerate_match(omega0, n0, dispersion)?;
    let phi0 = phi0.phi_from_plane;
    if !(phi > T::zero()) {
        return Err(MatchError::Invalid(format!(
            "pump angle {} rad must be positive",
            phi.to_f64_lossy()
        )));
    }
    let regime = classify_regime(phi, phi0);
    match regime {
        Regime::SuperluminalNoSpdc => {
            return Err(MatchError::Regime {
                phi: phi.to_f64_lossy(),
                phi0: phi0.to_f64_lossy(),
            })
        }
        Regime::Degenerate => return Ok(degenerate),
        Regime::Nondegenerate => {}
    }

    let target = pump_k_parallel(omega0, n0, phi);
    let mismatch = |w1: T| -> Result<T, SppError> {
        let k1 = dispersion.mode(w1)?.k.re;
        let k2 = dispersion.mode(omega0 - w1)?.k.re;
        Ok(k1 + k2 - target)
    };

    let (w_min, w_max) = dispersion.omega_range();
    let half = omega0 / T::lit(2.0);
    let lo = (T::lit(BRACKET_FLOOR) * omega0).max(omega0 - w_max).max(w_min);
    let hi = half;
    if !(lo < hi) {
        return Err(MatchError::Unmatchable(
            "dispersion domain leaves no room below the degenerate frequency".into(),
        ));
    }

    let g_hi = mismatch(hi)?;
    if g_hi.abs() <= T::lit(1e-12) * target {
        return Ok(solution(omega0, hi, target, dispersion, Regime::Degenerate)?);
    }

    let xtol = T::lit(OMEGA_REL_TOL) * omega0;
    let samples = sample(&mismatch, lo, hi, MONOTONE_SAMPLES)?;
    let monotone = samples.windows(2).all(|w| w[1].1 <= w[0].1) || samples.windows(2).all(|w| w[1].1 >= w[0].1);
    let (g_lo, g_last) = (samples[0].1, samples[samples.len() - 1].1);
    let root = if monotone && g_lo.signum() != g_last.signum() {
        bisect(&mismatch, lo, hi, xtol)?
    } else {
        // dense scan; take the sign change closest to the degenerate point
        let dense = sample(&mismatch, lo, hi, FALLBACK_SAMPLES)?;
        match dense.windows(2).rev().find(|w| w[0].1.signum() != w[1].1.signum()) {
            Some(w) => bisect(&mismatch, w[0].0, w[1].0, xtol)?,
            None => None,
        }
    };
    let root = root.ok_or_else(|| {
        MatchError::Unmatchable(format!(
            "no signal frequency in [{}, {}] rad/s reaches k = {} 1/m",
            lo.to_f64_lossy(),
            hi.to_f64_lossy(),
            target.to_f64_lossy()
        ))
    })?;
    solution(omega0, root.x, target, dispersion, Regime::Nondegenerate)
}

fn sample<T: Real, F>(f: &F, lo: T, hi: T, n: usize) -> Result<Vec<(T, T)>, SppError>
where
    F: Fn(T) -> Result<T, SppError>,
{
    let step = (hi - lo) / T::from_usize(n - 1).expect("sample count");
    (0..n)
        .map(|i| {
            let x = if i == n - 1 {
                hi
            } else {
                lo + step * T::from_usize(i).expect("sample index")
            };
            f(x).map(|y| (x, y))
        })
        .collect()
}

fn solution<T: Real, D: Dispersion<T> + ?Sized>(
    omega0: T,
    omega1: T,
    target: T,
    dispersion: &D,
    regime: Regime,
) -> Result<PhaseMatchSolution<T>, MatchError> {
    let k1 = dispersion.mode(omega1)?.k.re;
    let k2 = dispersion.mode(omega0 - omega1)?.k.re;
    let residual = (target - k1 - k2).abs();
    if residual > T::lit(RESIDUAL_REL_TOL) * target {
        return Err(MatchError::Numerical(format!(
            "phase-matching residual {} exceeds tolerance",
            residual.to_f64_lossy()
        )));
    }
    Ok(PhaseMatchSolution {
        omega0,
        omega1,
        k1,
        k2,
        k_par_pump: target,
        residual,
        regime,
    })
}

/// Grating that lets the pump excite an SPP at `ω0` directly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GratingDesign<T> {
    pub grating: GratingSpec<T>,
    /// `Re k_spp(ω0)`.
    pub k_spp: T,
    pub k_par_pump: T,
    /// `|k_spp - n k_a - k_par_pump| / k_par_pump` after folding.
    pub round_trip_residual: T,
}

/// Period `a = 2π n / (Re k_spp(ω0) - k_par_pump)` for diffraction order `n`.
pub fn design_grating_period<T: Real, D: Dispersion<T> + ?Sized>(
    omega0: T,
    k_par_pump: T,
    dispersion: &D,
    order: u32,
) -> Result<GratingDesign<T>, MatchError> {
    if order == 0 {
        return Err(MatchError::Invalid("grating order must be at least 1".into()));
    }
    let k_spp = dispersion.mode(omega0)?.k.re;
    let deficit = k_spp - k_par_pump;
    if !(deficit > T::zero()) {
        return Err(MatchError::GratingUnnecessary {
            deficit: deficit.to_f64_lossy(),
        });
    }
    let n = T::from_u32(order).expect("order");
    let k_a = deficit / n;
    let grating = GratingSpec::new(T::lit(2.0) * T::PI() / k_a, order as i32)?;
    let folded = fold_wavevector(k_spp, &grating, order)
        .into_iter()
        .find(|(m, _)| *m == order as i32)
        .map(|(_, k)| k)
        .expect("requested order is folded");
    Ok(GratingDesign {
        grating,
        k_spp,
        k_par_pump,
        round_trip_residual: (folded - k_par_pump).abs() / k_par_pump,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::vacuum_wavenumber;
    use crate::scalar::Cx;

    fn constant_index(n: f64) -> impl Fn(f64) -> Result<SppMode<f64>, SppError> + Sync {
        move |w: f64| Ok(SppMode::from_index(Cx::new(n, 0.0), wavelength_from_omega(w)))
    }

    #[test]
    fn toy_constant_index_degenerate() {
        let omega0 = omega_from_wavelength(0.5e-6);
        let (angle, sol) = degenerate_match(omega0, 1.5, &constant_index(1.2)).unwrap();
        assert!((angle.phi_from_plane - 0.8_f64.acos()).abs() < 1e-14);
        assert!((angle.phi_from_plane.to_degrees() - 36.8699).abs() < 1e-4);
        let expected_k = omega0 / 2.0 / c0::<f64>() * 1.2;
        assert!((sol.k1 - expected_k).abs() < 1e-9 * expected_k);
        assert_eq!(sol.k1, sol.k2);
        assert_eq!(sol.omega1, omega0 / 2.0);
        assert_eq!(sol.omega2(), omega0 / 2.0);
        assert_eq!(sol.regime, Regime::Degenerate);
    }

    #[test]
    fn air_prism_cannot_couple_to_silver() {
        let silver = InterfaceDispersion::new(Material::silver(), Material::vacuum());
        let omega0 = omega_from_wavelength(0.5e-6);
        assert!(matches!(
            degenerate_match(omega0, 1.0, &silver),
            Err(MatchError::Spp(SppError::NoPrismCoupling { .. }))
        ));
    }

    #[test]
    fn regime_classification() {
        let phi0 = 0.83;
        assert_eq!(classify_regime(phi0, phi0), Regime::Degenerate);
        assert_eq!(classify_regime(phi0 + 0.01, phi0), Regime::SuperluminalNoSpdc);
        assert_eq!(classify_regime(phi0 - 0.01, phi0), Regime::Nondegenerate);
    }

    #[test]
    fn beyond_degenerate_angle_is_rejected() {
        let omega0 = omega_from_wavelength(0.5e-6);
        let disp = |w: f64| Ok(SppMode::from_index(Cx::new(1.0 + 1e-17 * w, 0.0), wavelength_from_omega(w)));
        let (phi0, _) = degenerate_match(omega0, 1.5, &disp).unwrap();
        assert!(matches!(
            nondegenerate_match(omega0, 1.5, phi0.phi_from_plane + 0.01, &disp),
            Err(MatchError::Regime { .. })
        ));
    }

    #[test]
    fn flat_dispersion_has_no_nondegenerate_solution() {
        let omega0 = omega_from_wavelength(0.5e-6);
        let (phi0, _) = degenerate_match(omega0, 1.5, &constant_index(1.2)).unwrap();
        assert!(matches!(
            nondegenerate_match(omega0, 1.5, phi0.phi_from_plane - 0.05, &constant_index(1.2)),
            Err(MatchError::Unmatchable(_))
        ));
    }

    #[test]
    fn grating_period_arithmetic() {
        // constant deficit of 2π·1e6 1/m over the pump line
        let omega0 = omega_from_wavelength(0.5e-6);
        let k_spp = 1.1 * vacuum_wavenumber(0.5e-6);
        let k_par = k_spp - 2.0 * std::f64::consts::PI * 1e6;
        let disp = constant_index(1.1);
        let one = design_grating_period(omega0, k_par, &disp, 1).unwrap();
        assert!((one.grating.period() - 1.0e-6).abs() < 1e-15);
        let two = design_grating_period(omega0, k_par, &disp, 2).unwrap();
        assert!((two.grating.period() - 2.0e-6).abs() < 1e-15);
        assert!(one.round_trip_residual < 1e-12);
        assert!(two.round_trip_residual < 1e-12);
        assert!(matches!(
            design_grating_period(omega0, k_spp * 1.01, &disp, 1),
            Err(MatchError::GratingUnnecessary { .. })
        ));
        assert!(matches!(
            design_grating_period(omega0, k_par, &disp, 0),
            Err(MatchError::Invalid(_))
        ));
    }

    #[test]
    fn silver_degenerate_angle() {
        let silver = InterfaceDispersion::new(Material::silver(), Material::vacuum());
        let omega1: f64 = omega_from_wavelength(1e-6);
        let (angle, sol) = degenerate_match(2.0 * omega1, 1.5, &silver).unwrap();
        assert!((omega1 - 1.88e15).abs() < 0.01e15);
        assert!((angle.phi_from_plane.to_degrees() - 47.68).abs() < 0.05, "{}", angle.phi_from_plane.to_degrees());
        assert!(sol.residual <= 1e-9 * sol.k_par_pump);
    }
}
