//! Polarisation state of the emitted pair and its analyser statistics.
//!
//! Amplitudes are indexed by detection channel (signal, idler) over the
//! ordered basis `yy, yz, zy, zz`. A linear analyser at angle `θ` from `y`
//! passes `a(θ) = cos θ·y + sin θ·z`.
//!
//! The emitted state for the surface tensor pair `χ_{y,yz}`, `χ_{y,zy}` is
//! `(|yz⟩ + |zy⟩)/√2`. A bare prefactor of ½ would leave it unnormalised, so
//! `1/√2` is used throughout.

use thiserror::Error;

use crate::scalar::{Cx, Real};
use crate::spdc::{Axis, TensorComponent};

/// Tolerance on `Σ|c|² = 1` accepted by [`TwoPhotonState::new`].
pub const NORM_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EntangleError {
    #[error("degenerate state: all amplitudes are zero")]
    Degenerate,
    #[error("state is not normalised: sum of |c|^2 = {norm}")]
    Unnormalized { norm: f64 },
    #[error("invalid amplitude: {0}")]
    Invalid(String),
}

/// Basis index of a (signal, idler) polarisation pair.
fn basis_index(signal: Axis, idler: Axis) -> usize {
    let bit = |a: Axis| match a {
        Axis::Y => 0,
        Axis::Z => 1,
    };
    2 * bit(signal) + bit(idler)
}

/// Normalised pure two-photon polarisation state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoPhotonState<T> {
    amps: [Cx<T>; 4],
}

impl<T: Real> TwoPhotonState<T> {
    /// Accepts amplitudes that are already normalised.
    pub fn new(amps: [Cx<T>; 4]) -> Result<Self, EntangleError> {
        check_finite(&amps)?;
        let norm = norm_sqr(&amps);
        if norm == T::zero() {
            return Err(EntangleError::Degenerate);
        }
        if (norm - T::one()).abs() > T::lit(NORM_TOL) {
            return Err(EntangleError::Unnormalized {
                norm: norm.to_f64_lossy(),
            });
        }
        Ok(Self { amps })
    }

    /// Rescales arbitrary amplitudes to unit norm.
    pub fn normalized(amps: [Cx<T>; 4]) -> Result<Self, EntangleError> {
        check_finite(&amps)?;
        let norm = norm_sqr(&amps);
        if norm == T::zero() {
            return Err(EntangleError::Degenerate);
        }
        let s = norm.sqrt().recip();
        Ok(Self {
            amps: amps.map(|c| c * s),
        })
    }

    /// Product state `a(θs) ⊗ a(θi)`.
    pub fn product(signal: Analyzer<T>, idler: Analyzer<T>) -> Self {
        let (s, i) = (signal.vector(), idler.vector());
        Self {
            amps: [
                Cx::from(s[0] * i[0]),
                Cx::from(s[0] * i[1]),
                Cx::from(s[1] * i[0]),
                Cx::from(s[1] * i[1]),
            ],
        }
    }

    pub fn amplitudes(&self) -> [Cx<T>; 4] {
        self.amps
    }

    pub fn amplitude(&self, signal: Axis, idler: Axis) -> Cx<T> {
        self.amps[basis_index(signal, idler)]
    }

    /// Determinant of the amplitude matrix (rows signal, columns idler).
    pub fn determinant(&self) -> Cx<T> {
        self.amps[0] * self.amps[3] - self.amps[1] * self.amps[2]
    }
}

fn norm_sqr<T: Real>(amps: &[Cx<T>; 4]) -> T {
    amps.iter().fold(T::zero(), |acc, c| acc + c.norm_sqr())
}

fn check_finite<T: Real>(amps: &[Cx<T>; 4]) -> Result<(), EntangleError> {
    match amps.iter().find(|c| !(c.re.is_finite() && c.im.is_finite())) {
        Some(c) => Err(EntangleError::Invalid(format!(
            "{}{:+}i",
            c.re.to_f64_lossy(),
            c.im.to_f64_lossy()
        ))),
        None => Ok(()),
    }
}

/// State generated by the given tensor components, each with unit weight.
pub fn emitted_state<T: Real>(components: &[TensorComponent]) -> Result<TwoPhotonState<T>, EntangleError> {
    let weighted: Vec<_> = components.iter().map(|&c| (c, Cx::from(T::one()))).collect();
    emitted_state_weighted(&weighted)
}

/// State generated by tensor components with complex weights; weights on the
/// same (signal, idler) pair add coherently.
pub fn emitted_state_weighted<T: Real>(
    components: &[(TensorComponent, Cx<T>)],
) -> Result<TwoPhotonState<T>, EntangleError> {
    let mut amps = [Cx::from(T::zero()); 4];
    for (c, w) in components {
        amps[basis_index(c.signal, c.idler)] = amps[basis_index(c.signal, c.idler)] + w;
    }
    TwoPhotonState::normalized(amps)
}

/// `(|yz⟩ + e^{iφ}|zy⟩)/√2`; `φ = 0` gives the default emitted state.
pub fn emitted_state_with_phase<T: Real>(relative_phase: T) -> TwoPhotonState<T> {
    let h = T::FRAC_1_SQRT_2();
    let zero = Cx::from(T::zero());
    TwoPhotonState {
        amps: [zero, Cx::from(h), Cx::from_polar(h, relative_phase), zero],
    }
}

/// Default emitted state `(|yz⟩ + |zy⟩)/√2`.
pub fn default_state<T: Real>() -> TwoPhotonState<T> {
    emitted_state_with_phase(T::zero())
}

/// Linear polariser; the axis angle from `y` is kept in `[0, π)`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct Analyzer<T> {
    angle: T,
}

impl<T: Real> Analyzer<T> {
    pub fn new(angle: T) -> Self {
        let pi = T::PI();
        let mut a = angle % pi;
        if a < T::zero() {
            a = a + pi;
        }
        if a >= pi {
            a = T::zero();
        }
        Self { angle: a }
    }

    pub fn angle(&self) -> T {
        self.angle
    }

    /// Analyser passing the orthogonal polarisation.
    pub fn orthogonal(&self) -> Self {
        Self::new(self.angle + T::FRAC_PI_2())
    }

    /// Pass axis `(cos θ, sin θ)` in the `(y, z)` basis.
    pub fn vector(&self) -> [T; 2] {
        [self.angle.cos(), self.angle.sin()]
    }
}

/// Probability that both photons pass: `|⟨a(θs) ⊗ a(θi)|ψ⟩|²`.
pub fn coincidence_probability<T: Real>(state: &TwoPhotonState<T>, signal: Analyzer<T>, idler: Analyzer<T>) -> T {
    let (s, i) = (signal.vector(), idler.vector());
    let a = &state.amps;
    let overlap = a[0] * (s[0] * i[0]) + a[1] * (s[0] * i[1]) + a[2] * (s[1] * i[0]) + a[3] * (s[1] * i[1]);
    overlap.norm_sqr()
}

/// Probability that the signal photon alone passes its analyser.
pub fn signal_marginal<T: Real>(state: &TwoPhotonState<T>, signal: Analyzer<T>) -> T {
    let y = Analyzer::new(T::zero());
    coincidence_probability(state, signal, y) + coincidence_probability(state, signal, y.orthogonal())
}

/// Probability that the idler photon alone passes its analyser.
pub fn idler_marginal<T: Real>(state: &TwoPhotonState<T>, idler: Analyzer<T>) -> T {
    let y = Analyzer::new(T::zero());
    coincidence_probability(state, y, idler) + coincidence_probability(state, y.orthogonal(), idler)
}

/// Rank-one test on the amplitude matrix: `|det| ≤ tolerance`.
pub fn is_separable<T: Real>(state: &TwoPhotonState<T>, tolerance: T) -> bool {
    state.determinant().norm() <= tolerance
}

/// Polarisation correlation `E(a, b) ∈ [-1, 1]`.
pub fn correlation<T: Real>(state: &TwoPhotonState<T>, a: Analyzer<T>, b: Analyzer<T>) -> T {
    let (ao, bo) = (a.orthogonal(), b.orthogonal());
    coincidence_probability(state, a, b) + coincidence_probability(state, ao, bo)
        - coincidence_probability(state, a, bo)
        - coincidence_probability(state, ao, b)
}

/// Analyser angles `a, a′` (signal) and `b, b′` (idler).
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct ChshAngles<T> {
    pub a: T,
    pub a_prime: T,
    pub b: T,
    pub b_prime: T,
}

impl<T: Real> ChshAngles<T> {
    pub fn new(a: T, a_prime: T, b: T, b_prime: T) -> Self {
        Self { a, a_prime, b, b_prime }
    }
}

/// `S = |E(a,b) − E(a,b′) + E(a′,b) + E(a′,b′)|`.
pub fn chsh_value<T: Real>(state: &TwoPhotonState<T>, angles: ChshAngles<T>) -> T {
    let an = Analyzer::new;
    let (a, ap, b, bp) = (an(angles.a), an(angles.a_prime), an(angles.b), an(angles.b_prime));
    (correlation(state, a, b) - correlation(state, a, bp) + correlation(state, ap, b) + correlation(state, ap, bp)).abs()
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct ChshOptimum<T> {
    pub s: T,
    pub angles: ChshAngles<T>,
}

/// Correlation matrix `M_ij = ⟨σ_i ⊗ σ_j⟩` for `i, j ∈ {z, x}`, the two
/// Pauli directions reachable by linear analysers (`y ↦ +z`).
pub fn linear_correlation_matrix<T: Real>(state: &TwoPhotonState<T>) -> [[T; 2]; 2] {
    // E(a,b) = u(a)ᵀ M u(b) with u(θ) = (cos 2θ, sin 2θ)
    let c = |a: T, b: T| correlation(state, Analyzer::new(a), Analyzer::new(b));
    let q = T::FRAC_PI_4();
    [[c(T::zero(), T::zero()), c(T::zero(), q)], [c(q, T::zero()), c(q, q)]]
}

/// Largest CHSH value over linear analysers, `2 ‖M‖_F`, and angles that
/// attain it.
pub fn chsh_optimum<T: Real>(state: &TwoPhotonState<T>) -> ChshOptimum<T> {
    let m = linear_correlation_matrix(state);
    let two = T::lit(2.0);
    // right singular vectors: eigenvectors of MᵀM
    let p = m[0][0] * m[0][0] + m[1][0] * m[1][0];
    let r = m[0][1] * m[0][1] + m[1][1] * m[1][1];
    let q = m[0][0] * m[0][1] + m[1][0] * m[1][1];
    let phi = (two * q).atan2(p - r) / two;
    let v1 = [phi.cos(), phi.sin()];
    let v2 = [-phi.sin(), phi.cos()];
    let apply = |v: [T; 2]| [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]];
    let (mv1, mv2) = (apply(v1), apply(v2));
    let s1 = mv1[0].hypot(mv1[1]);
    let s2 = mv2[0].hypot(mv2[1]);
    let t = s2.atan2(s1);
    let dir = |w: [T; 2], fallback: [T; 2]| if w[0] == T::zero() && w[1] == T::zero() { fallback } else { w };
    // a′ ∥ M v1, a ∥ M v2, b = cos t v1 + sin t v2, b′ = cos t v1 − sin t v2
    let half_angle = |w: [T; 2]| w[1].atan2(w[0]) / two;
    let (ct, st) = (t.cos(), t.sin());
    let angles = ChshAngles::new(
        half_angle(dir(mv2, v2)),
        half_angle(dir(mv1, v1)),
        half_angle([ct * v1[0] + st * v2[0], ct * v1[1] + st * v2[1]]),
        half_angle([ct * v1[0] - st * v2[0], ct * v1[1] - st * v2[1]]),
    );
    ChshOptimum {
        s: two * (s1 * s1 + s2 * s2).sqrt(),
        angles: ChshAngles::new(
            Analyzer::new(angles.a).angle(),
            Analyzer::new(angles.a_prime).angle(),
            Analyzer::new(angles.b).angle(),
            Analyzer::new(angles.b_prime).angle(),
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4, PI, SQRT_2};

    fn c(x: f64) -> Cx<f64> {
        Cx::new(x, 0.0)
    }

    fn an(x: f64) -> Analyzer<f64> {
        Analyzer::new(x)
    }

    #[test]
    fn default_amplitudes() {
        let s = default_state::<f64>();
        let a = s.amplitudes();
        assert_eq!(a[0], c(0.0));
        assert_eq!(a[3], c(0.0));
        assert_eq!(a[1], c(FRAC_1_SQRT_2));
        assert_eq!(a[2], c(FRAC_1_SQRT_2));
        let from_tensor = emitted_state::<f64>(&[TensorComponent::Y_YZ, TensorComponent::Y_ZY]).unwrap();
        for (x, y) in from_tensor.amplitudes().iter().zip(a) {
            assert!((x - y).norm() < 1e-15);
        }
    }

    #[test]
    fn single_component_is_product() {
        let s = emitted_state::<f64>(&[TensorComponent::Y_YZ]).unwrap();
        assert_eq!(s.amplitudes(), [c(0.0), c(1.0), c(0.0), c(0.0)]);
        assert!(is_separable(&s, 1e-12));
    }

    #[test]
    fn degenerate_and_unnormalised() {
        assert_eq!(emitted_state::<f64>(&[]), Err(EntangleError::Degenerate));
        let zero = [c(0.0); 4];
        assert_eq!(TwoPhotonState::normalized(zero), Err(EntangleError::Degenerate));
        assert!(matches!(
            TwoPhotonState::new([c(0.0), c(0.5), c(0.5), c(0.0)]),
            Err(EntangleError::Unnormalized { .. })
        ));
        let anti = TwoPhotonState::new([c(0.0), c(FRAC_1_SQRT_2), c(-FRAC_1_SQRT_2), c(0.0)]).unwrap();
        assert!(!is_separable(&anti, 1e-12));
        assert!(TwoPhotonState::new([c(f64::NAN), c(1.0), c(0.0), c(0.0)]).is_err());
    }

    #[test]
    fn coincidences() {
        let s = default_state::<f64>();
        assert!(coincidence_probability(&s, an(0.0), an(0.0)) < 1e-12);
        assert!(coincidence_probability(&s, an(FRAC_PI_2), an(FRAC_PI_2)) < 1e-12);
        assert!((coincidence_probability(&s, an(0.0), an(FRAC_PI_2)) - 0.5).abs() < 1e-12);
        // brute contraction at π/4, π/4: a = (1,1)/√2 ⊗ (1,1)/√2, overlap = 2 · ½ · 1/√2
        let ov = 0.5 * FRAC_1_SQRT_2 + 0.5 * FRAC_1_SQRT_2;
        assert!((coincidence_probability(&s, an(FRAC_PI_4), an(FRAC_PI_4)) - ov * ov).abs() < 1e-12);
    }

    #[test]
    fn determinants() {
        assert!((default_state::<f64>().determinant() - c(-0.5)).norm() < 1e-15);
        let ghz = TwoPhotonState::normalized([c(1.0), c(0.0), c(0.0), c(1.0)]).unwrap();
        assert!((ghz.determinant() - c(0.5)).norm() < 1e-15);
        assert!(!is_separable(&default_state::<f64>(), 1e-12));
    }

    #[test]
    fn analyzer_reduction() {
        assert!((an(PI + 0.3).angle() - 0.3).abs() < 1e-15);
        assert!((an(-0.3).angle() - (PI - 0.3)).abs() < 1e-15);
        assert_eq!(an(PI).angle(), 0.0);
        assert!((an(0.2).orthogonal().angle() - (0.2 + FRAC_PI_2)).abs() < 1e-15);
    }

    #[test]
    fn equal_angles_bound() {
        let s = default_state::<f64>();
        for k in 0..50 {
            let x = k as f64 * 0.07;
            let v = chsh_value(&s, ChshAngles::new(x, x, x, x));
            assert!((v - 2.0 * correlation(&s, an(x), an(x)).abs()).abs() < 1e-12);
            assert!(v <= 2.0 + 1e-12);
        }
    }

    #[test]
    fn optimum_default_state() {
        let s = default_state::<f64>();
        let opt = chsh_optimum(&s);
        assert!((opt.s - 2.0 * SQRT_2).abs() < 1e-12, "{}", opt.s);
        assert!((chsh_value(&s, opt.angles) - opt.s).abs() < 1e-12);
    }

    #[test]
    fn optimum_product_and_phase() {
        let p = TwoPhotonState::product(an(0.3), an(1.1));
        let opt = chsh_optimum(&p);
        assert!(opt.s <= 2.0 + 1e-12);
        assert!((chsh_value(&p, opt.angles) - opt.s).abs() < 1e-12);
        // relative phase π/2 moves weight into σ_y ⊗ σ_y, out of reach of linear analysers
        let s = emitted_state_with_phase(FRAC_PI_2);
        let opt = chsh_optimum(&s);
        assert!((opt.s - 2.0).abs() < 1e-12, "{}", opt.s);
        assert!((chsh_value(&s, opt.angles) - opt.s).abs() < 1e-12);
    }

    #[test]
    fn f32_state() {
        let s = default_state::<f32>();
        let p = coincidence_probability(&s, Analyzer::new(0.0), Analyzer::new(std::f32::consts::FRAC_PI_2));
        assert!((p - 0.5).abs() < 1e-6);
    }
}
