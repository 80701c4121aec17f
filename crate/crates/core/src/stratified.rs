//! Plane-wave transfer matrices for planar multilayers.
//!
//! Fields are tracked through their tangential components `(u, v)`:
//! `u` is the tangential electric field (`E_x` for p, `E_y` for s) and `v`
//! the tangential magnetic field, both normalised so that a single plane
//! wave in medium `j` has `v = Y_j u` with the reduced admittance
//!
//! * s polarisation: `Y = k_z / k_0`
//! * p polarisation: `Y = ε k_0 / k_z`
//!
//! A layer of thickness `d` maps the fields on its exit face to its entry
//! face through the Abelès matrix
//!
//! ```text
//! [ cos δ        -i sin δ / Y ]
//! [ -i Y sin δ    cos δ       ],   δ = k_z d
//! ```
//!
//! `k_z = sqrt(ε k_0² - k_par²)` is taken on the branch with `Im k_z ≥ 0`
//! (ties broken by `Re k_z ≥ 0`).
//!
//! Reflection `r` and transmission `t` are ratios of *tangential electric*
//! amplitudes. With this choice the p-wave reflection at normal incidence
//! from `n1` into `n2` is `(n1 - n2) / (n1 + n2)`, identical to s.
//!
//! Angles here are measured from the surface normal.

use rayon::prelude::*;
use thiserror::Error;

use crate::constants::vacuum_wavenumber;
use crate::materials::{Material, MaterialError};
use crate::scalar::{sinc, sqrt_upper, Cx, Real};
use crate::search::{golden_section_max, scan_min};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StackError {
    #[error(transparent)]
    Material(#[from] MaterialError),
    #[error("incidence angle {0} rad outside [0, pi/2)")]
    Angle(f64),
    #[error("entry medium must be a lossless constant-index dielectric")]
    LossyEntry,
    #[error("layer thickness must be finite and non-negative, got {0} m")]
    Thickness(f64),
    #[error("wavelength must be positive and finite, got {0} m")]
    Wavelength(f64),
    #[error("layer index {index} out of bounds for a stack of {len} layers")]
    LayerIndex { index: usize, len: usize },
    #[error("empty or inverted search range [{lo}, {hi}]")]
    Range { lo: f64, hi: f64 },
    #[error("numerical failure: {0}")]
    Numerical(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarization {
    /// TM: electric field in the plane of incidence.
    P,
    /// TE: electric field normal to the plane of incidence.
    S,
}

/// A finite slab. Zero thickness is allowed and acts as the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct Layer<T> {
    pub material: Material<T>,
    pub thickness: T,
}

impl<T: Real> Layer<T> {
    pub fn new(material: Material<T>, thickness: T) -> Result<Self, StackError> {
        if !(thickness.is_finite() && thickness >= T::zero()) {
            return Err(StackError::Thickness(thickness.to_f64_lossy()));
        }
        Ok(Self { material, thickness })
    }
}

/// Semi-infinite entry medium, finite layers, semi-infinite exit medium.
#[derive(Debug, Clone, PartialEq)]
pub struct LayerStack<T> {
    entry: Material<T>,
    layers: Vec<Layer<T>>,
    exit: Material<T>,
}

impl<T: Real> LayerStack<T> {
    pub fn new(entry: Material<T>, layers: Vec<Layer<T>>, exit: Material<T>) -> Result<Self, StackError> {
        if !entry.is_lossless() {
            return Err(StackError::LossyEntry);
        }
        for layer in &layers {
            if !(layer.thickness.is_finite() && layer.thickness >= T::zero()) {
                return Err(StackError::Thickness(layer.thickness.to_f64_lossy()));
            }
        }
        Ok(Self { entry, layers, exit })
    }

    /// Prism / metal film / exit medium.
    pub fn kretschmann(
        prism_index: T,
        film: Material<T>,
        thickness: T,
        exit: Material<T>,
    ) -> Result<Self, StackError> {
        let entry = Material::constant(prism_index)?;
        Self::new(entry, vec![Layer::new(film, thickness)?], exit)
    }

    pub fn entry(&self) -> &Material<T> {
        &self.entry
    }

    pub fn layers(&self) -> &[Layer<T>] {
        &self.layers
    }

    pub fn exit(&self) -> &Material<T> {
        &self.exit
    }

    pub fn entry_index(&self) -> T {
        self.entry.real_index().expect("entry medium is lossless")
    }

    /// Copy of the stack with layer `index` resized.
    pub fn with_thickness(&self, index: usize, thickness: T) -> Result<Self, StackError> {
        if index >= self.layers.len() {
            return Err(StackError::LayerIndex {
                index,
                len: self.layers.len(),
            });
        }
        let mut out = self.clone();
        out.layers[index] = Layer::new(out.layers[index].material.clone(), thickness)?;
        Ok(out)
    }

    pub fn with_entry_index(&self, prism_index: T) -> Result<Self, StackError> {
        Self::new(
            Material::constant(prism_index)?,
            self.layers.clone(),
            self.exit.clone(),
        )
    }
}

/// Illumination: vacuum wavelength, polarisation and angle from the normal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneWaveContext<T> {
    wavelength: T,
    polarization: Polarization,
    angle: T,
}

impl<T: Real> PlaneWaveContext<T> {
    pub fn new(wavelength: T, polarization: Polarization, angle_from_normal: T) -> Result<Self, StackError> {
        if !(wavelength.is_finite() && wavelength > T::zero()) {
            return Err(StackError::Wavelength(wavelength.to_f64_lossy()));
        }
        if !(angle_from_normal >= T::zero() && angle_from_normal < T::FRAC_PI_2()) {
            return Err(StackError::Angle(angle_from_normal.to_f64_lossy()));
        }
        Ok(Self {
            wavelength,
            polarization,
            angle: angle_from_normal,
        })
    }

    pub fn wavelength(&self) -> T {
        self.wavelength
    }

    pub fn polarization(&self) -> Polarization {
        self.polarization
    }

    pub fn angle_from_normal(&self) -> T {
        self.angle
    }

    /// Complement of the normal angle, measured from the interface plane.
    pub fn angle_from_plane(&self) -> T {
        T::FRAC_PI_2() - self.angle
    }

    /// In-plane wavenumber `k_0 n_entry sin θ`.
    pub fn k_parallel(&self, entry_index: T) -> T {
        vacuum_wavenumber(self.wavelength) * entry_index * self.angle.sin()
    }
}

/// 2×2 complex characteristic matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CharacteristicMatrix<T>(pub [[Cx<T>; 2]; 2]);

impl<T: Real> CharacteristicMatrix<T> {
    pub fn identity() -> Self {
        let (one, zero) = (Cx::new(T::one(), T::zero()), Cx::new(T::zero(), T::zero()));
        Self([[one, zero], [zero, one]])
    }

    pub fn det(&self) -> Cx<T> {
        let m = &self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let (a, b) = (&self.0, &rhs.0);
        let mut out = [[Cx::new(T::zero(), T::zero()); 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Self(out)
    }
}

/// Normal wavenumber in a medium of permittivity `eps`, in units of `k_0`.
fn normal_wavenumber<T: Real>(eps: Cx<T>, k_par_reduced: T) -> Cx<T> {
    sqrt_upper(eps - Cx::new(k_par_reduced * k_par_reduced, T::zero()))
}

fn admittance<T: Real>(eps: Cx<T>, q: Cx<T>, pol: Polarization) -> Cx<T> {
    match pol {
        Polarization::S => q,
        Polarization::P => eps / q,
    }
}

/// Characteristic matrix of one layer for in-plane wavenumber `k_par` (1/m).
pub fn characteristic_matrix<T: Real>(
    layer: &Layer<T>,
    context: &PlaneWaveContext<T>,
    k_par: T,
) -> Result<CharacteristicMatrix<T>, StackError> {
    let eps = layer.material.permittivity(context.wavelength)?;
    let k0 = vacuum_wavenumber(context.wavelength);
    Ok(layer_matrix(eps, k0, k_par / k0, layer.thickness, context.polarization))
}

fn layer_matrix<T: Real>(eps: Cx<T>, k0: T, kp: T, thickness: T, pol: Polarization) -> CharacteristicMatrix<T> {
    let q = normal_wavenumber(eps, kp);
    let k0d = k0 * thickness;
    let delta = q * k0d;
    let cos = delta.cos();
    let sin = delta.sin();
    // sin δ / q, finite as q → 0
    let sin_over_q = sinc(delta) * k0d;
    let minus_i = Cx::new(T::zero(), -T::one());
    let (m12, m21) = match pol {
        Polarization::S => (minus_i * sin_over_q, minus_i * q * sin),
        Polarization::P => (minus_i * q * sin / eps, minus_i * eps * sin_over_q),
    };
    CharacteristicMatrix([[cos, m12], [m21, cos]])
}

/// Reflection/transmission of a stack plus the exit-side field enhancement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StackResponse<T> {
    /// Tangential-E amplitude reflection coefficient.
    pub r: Cx<T>,
    /// Tangential-E amplitude transmission coefficient.
    pub t: Cx<T>,
    pub reflectance: T,
    pub transmittance: T,
    /// `|E|` just inside the exit medium per unit incident `|E|`.
    pub eta: T,
}

/// Solves the stack for one plane wave.
pub fn stack_response<T: Real>(
    stack: &LayerStack<T>,
    context: &PlaneWaveContext<T>,
) -> Result<StackResponse<T>, StackError> {
    let lambda = context.wavelength;
    let pol = context.polarization;
    let k0 = vacuum_wavenumber(lambda);
    let n0 = stack.entry_index();
    let kp = n0 * context.angle.sin();

    let eps0 = Cx::new(n0 * n0, T::zero());
    let q0 = normal_wavenumber(eps0, kp);
    let y0 = admittance(eps0, q0, pol);

    let eps_exit = stack.exit.permittivity(lambda)?;
    let q_exit = normal_wavenumber(eps_exit, kp);
    let y_exit = admittance(eps_exit, q_exit, pol);

    let mut total = CharacteristicMatrix::identity();
    for layer in &stack.layers {
        let eps = layer.material.permittivity(lambda)?;
        total = total.mul(&layer_matrix(eps, k0, kp, layer.thickness, pol));
    }
    let m = &total.0;
    let b = m[0][0] + m[0][1] * y_exit;
    let c = m[1][0] + m[1][1] * y_exit;
    let denom = y0 * b + c;
    let r = (y0 * b - c) / denom;
    let t = (y0 * Cx::new(T::lit(2.0), T::zero())) / denom;

    let reflectance = r.norm_sqr();
    let transmittance = y_exit.re * t.norm_sqr() / y0.re;
    let eta = match pol {
        Polarization::S => t.norm(),
        Polarization::P => {
            // |E| = |E_x| sqrt(1 + |k_par / k_z|²) in the exit medium; the
            // incident tangential component is cos θ of the full amplitude.
            let ratio = kp / q_exit.norm();
            t.norm() * context.angle.cos() * (T::one() + ratio * ratio).sqrt()
        }
    };
    if !(reflectance.is_finite() && eta.is_finite()) {
        return Err(StackError::Numerical(format!(
            "non-finite response at lambda={} m, angle={} rad",
            lambda.to_f64_lossy(),
            context.angle.to_f64_lossy()
        )));
    }
    Ok(StackResponse {
        r,
        t,
        reflectance,
        transmittance,
        eta,
    })
}

/// `η(λ)` at a fixed angle (from the normal), one entry per grid point in
/// grid order. Points are evaluated in parallel.
pub fn enhancement_spectrum<T: Real>(
    stack: &LayerStack<T>,
    polarization: Polarization,
    angle_from_normal: T,
    lambda_grid: &[T],
) -> Result<Vec<(T, T)>, StackError> {
    lambda_grid
        .par_iter()
        .map(|&lambda| {
            let ctx = PlaneWaveContext::new(lambda, polarization, angle_from_normal)?;
            Ok((lambda, stack_response(stack, &ctx)?.eta))
        })
        .collect()
}

const RESONANCE_SCAN_POINTS: usize = 20_001;

/// Angle from the normal of the deepest p-polarised reflectance minimum in
/// `[lo, hi]`: a dense scan followed by golden-section refinement.
pub fn resonance_angle_in<T: Real>(stack: &LayerStack<T>, lambda: T, lo: T, hi: T) -> Result<T, StackError> {
    if !(lo >= T::zero() && hi < T::FRAC_PI_2() && lo < hi) {
        return Err(StackError::Range {
            lo: lo.to_f64_lossy(),
            hi: hi.to_f64_lossy(),
        });
    }
    let reflectance = |theta: T| -> Result<T, StackError> {
        let ctx = PlaneWaveContext::new(lambda, Polarization::P, theta)?;
        Ok(stack_response(stack, &ctx)?.reflectance)
    };
    let (best, xs, _) = scan_min(reflectance, lo, hi, RESONANCE_SCAN_POINTS)?;
    let a = xs[best.saturating_sub(1)];
    let b = xs[(best + 1).min(xs.len() - 1)];
    let refined = golden_section_max(|theta| reflectance(theta).map(|r| -r), a, b, T::lit(1e-12))?;
    Ok(refined.x)
}

/// [`resonance_angle_in`] over the whole range of propagating entry angles.
pub fn resonance_angle<T: Real>(stack: &LayerStack<T>, lambda: T) -> Result<T, StackError> {
    resonance_angle_in(stack, lambda, T::zero(), T::FRAC_PI_2() - T::lit(1e-6))
}

/// How the incidence angle follows the film thickness during optimisation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AngleRule<T> {
    /// Re-locate the reflectance dip for every trial thickness.
    Resonant,
    /// Keep this angle from the normal.
    Fixed(T),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThicknessOptimum<T> {
    pub thickness: T,
    pub eta: T,
    pub angle_from_normal: T,
}

/// `η` for a given thickness of layer `layer_index` under `rule`.
pub fn eta_for_thickness<T: Real>(
    template: &LayerStack<T>,
    layer_index: usize,
    polarization: Polarization,
    lambda: T,
    rule: AngleRule<T>,
    thickness: T,
) -> Result<ThicknessOptimum<T>, StackError> {
    let stack = template.with_thickness(layer_index, thickness)?;
    let angle = match rule {
        AngleRule::Resonant => resonance_angle(&stack, lambda)?,
        AngleRule::Fixed(a) => a,
    };
    let ctx = PlaneWaveContext::new(lambda, polarization, angle)?;
    Ok(ThicknessOptimum {
        thickness,
        eta: stack_response(&stack, &ctx)?.eta,
        angle_from_normal: angle,
    })
}

/// Golden-section search over the thickness of layer `layer_index` for the
/// largest `η`.
pub fn optimize_thickness<T: Real>(
    template: &LayerStack<T>,
    layer_index: usize,
    polarization: Polarization,
    lambda: T,
    rule: AngleRule<T>,
    range: (T, T),
    tolerance: T,
) -> Result<ThicknessOptimum<T>, StackError> {
    let (lo, hi) = range;
    if !(lo > T::zero() && hi.is_finite() && lo <= hi) {
        return Err(StackError::Range {
            lo: lo.to_f64_lossy(),
            hi: hi.to_f64_lossy(),
        });
    }
    let best = golden_section_max(
        |d| eta_for_thickness(template, layer_index, polarization, lambda, rule, d).map(|o| o.eta),
        lo,
        hi,
        tolerance,
    )?;
    eta_for_thickness(template, layer_index, polarization, lambda, rule, best.x)
}
