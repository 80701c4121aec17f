//! Independent oracles shared by the integration and acceptance tests.
#![allow(dead_code)]

use std::f64::consts::PI;
use std::ops::{Div, Mul};

use num_complex::Complex64;
use plasmon_spdc::constants::{wavelength_from_omega, SPEED_OF_LIGHT};
use plasmon_spdc::spp::{SppError, SppMode};

// ---- entanglement ------------------------------------------------------

/// `|⟨a(s) ⊗ a(i)|ψ⟩|²` by explicit contraction over the 2×2 amplitude grid.
pub fn brute_coincidence(amps: &[Complex64; 4], s: f64, i: f64) -> f64 {
    let a = [s.cos(), s.sin()];
    let b = [i.cos(), i.sin()];
    let mut acc = Complex64::new(0.0, 0.0);
    for p in 0..2 {
        for q in 0..2 {
            acc += amps[2 * p + q] * (a[p] * b[q]);
        }
    }
    acc.norm_sqr()
}

pub fn brute_correlation(amps: &[Complex64; 4], a: f64, b: f64) -> f64 {
    let h = PI / 2.0;
    brute_coincidence(amps, a, b) + brute_coincidence(amps, a + h, b + h)
        - brute_coincidence(amps, a, b + h)
        - brute_coincidence(amps, a + h, b)
}

pub fn brute_chsh(amps: &[Complex64; 4], x: [f64; 4]) -> f64 {
    let [a, ap, b, bp] = x;
    (brute_correlation(amps, a, b) - brute_correlation(amps, a, bp)
        + brute_correlation(amps, ap, b)
        + brute_correlation(amps, ap, bp))
    .abs()
}

/// Maximum CHSH value over analyser angles: coarse grid over `[0, π)^4`
/// followed by a shrinking-step compass search from the best grid point.
pub fn chsh_search(amps: &[Complex64; 4], grid: usize) -> (f64, [f64; 4]) {
    let step = PI / grid as f64;
    let mut best = (f64::NEG_INFINITY, [0.0; 4]);
    for i in 0..grid {
        for j in 0..grid {
            for k in 0..grid {
                for l in 0..grid {
                    let x = [i, j, k, l].map(|n| n as f64 * step);
                    let s = brute_chsh(amps, x);
                    if s > best.0 {
                        best = (s, x);
                    }
                }
            }
        }
    }
    let (mut s, mut x) = best;
    let mut h = step;
    while h > 1e-9 {
        let mut improved = false;
        for d in 0..4 {
            for sign in [1.0, -1.0] {
                let mut y = x;
                y[d] += sign * h;
                let v = brute_chsh(amps, y);
                if v > s {
                    s = v;
                    x = y;
                    improved = true;
                }
            }
        }
        if !improved {
            h *= 0.5;
        }
    }
    (s, x)
}

// ---- phase matching ----------------------------------------------------

/// Toy dispersion `n_sp(ω) = a + b ω`, lossless.
#[derive(Debug, Clone, Copy)]
pub struct LinearDispersion {
    pub a: f64,
    pub b: f64,
}

impl LinearDispersion {
    pub fn k(&self, omega: f64) -> f64 {
        omega / SPEED_OF_LIGHT * (self.a + self.b * omega)
    }

    pub fn as_fn(self) -> impl Fn(f64) -> Result<SppMode<f64>, SppError> + Sync {
        move |w: f64| {
            Ok(SppMode::from_index(
                Complex64::new(self.a + self.b * w, 0.0),
                wavelength_from_omega(w),
            ))
        }
    }

    /// Closed-form signal frequency `ω1 ≤ ω0/2` with `k(ω1) + k(ω0 - ω1) = target`.
    ///
    /// `c·target = a ω0 + b (ω1² + ω2²)`, so `ω1 = (ω0 - sqrt(2R - ω0²)) / 2`
    /// with `R = (c·target - a ω0) / b`. `None` when no positive root exists.
    pub fn signal_frequency(&self, omega0: f64, target: f64) -> Option<f64> {
        let r = (SPEED_OF_LIGHT * target - self.a * omega0) / self.b;
        let disc = 2.0 * r - omega0 * omega0;
        if disc < 0.0 {
            return None;
        }
        let w1 = (omega0 - disc.sqrt()) / 2.0;
        (w1 > 0.0).then_some(w1)
    }
}

// ---- dimensional analysis ----------------------------------------------

/// Value tagged with SI exponents `[m, s, kg, A]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quantity {
    pub value: f64,
    pub dim: [i32; 4],
}

pub const METRE: [i32; 4] = [1, 0, 0, 0];
pub const PER_SECOND: [i32; 4] = [0, -1, 0, 0];
pub const VOLT: [i32; 4] = [2, -3, 1, -1];
pub const OHM: [i32; 4] = [2, -3, 1, -2];
pub const JOULE_SECOND: [i32; 4] = [2, -1, 1, 0];
pub const METRE_PER_SECOND: [i32; 4] = [1, -1, 0, 0];
pub const METRE_PER_VOLT: [i32; 4] = [-1, 3, -1, 1];
pub const VOLT_PER_METRE: [i32; 4] = [1, -3, 1, -1];
pub const DIMENSIONLESS: [i32; 4] = [0, 0, 0, 0];

impl Quantity {
    pub fn new(value: f64, dim: [i32; 4]) -> Self {
        Self { value, dim }
    }

    pub fn scalar(value: f64) -> Self {
        Self::new(value, DIMENSIONLESS)
    }

    pub fn powi(self, n: i32) -> Self {
        Self::new(self.value.powi(n), self.dim.map(|d| d * n))
    }
}

impl Mul for Quantity {
    type Output = Quantity;
    fn mul(self, rhs: Quantity) -> Quantity {
        let mut dim = self.dim;
        for (d, r) in dim.iter_mut().zip(rhs.dim) {
            *d += r;
        }
        Quantity::new(self.value * rhs.value, dim)
    }
}

impl Div for Quantity {
    type Output = Quantity;
    fn div(self, rhs: Quantity) -> Quantity {
        self * rhs.powi(-1)
    }
}

/// Transformation coefficient evaluated on tagged quantities.
pub fn tagged_f(omega1: Quantity, omega2: Quantity, chi2: Quantity, e0: Quantity, l: Quantity) -> Quantity {
    let c = Quantity::new(SPEED_OF_LIGHT, METRE_PER_SECOND);
    Quantity::scalar(4.0 * PI * PI) * (omega1 / c) * (omega2 / c) * (chi2 * e0).powi(2) * l.powi(2)
}

/// Yield κ evaluated on tagged quantities.
pub fn tagged_kappa(alpha: f64, gain: f64, omega0: Quantity, chi2: Quantity, l: Quantity) -> Quantity {
    let c = Quantity::new(SPEED_OF_LIGHT, METRE_PER_SECOND);
    let hbar = Quantity::new(1.054_571_817e-34, JOULE_SECOND);
    let z0 = Quantity::new(376.7, OHM);
    let lambda = Quantity::scalar(4.0 * PI) * c / omega0;
    Quantity::scalar(alpha * gain) * hbar * omega0.powi(2) * z0 * l.powi(2) * chi2.powi(2) / lambda.powi(4)
}

pub fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}
