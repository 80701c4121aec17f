//! Scalar abstraction shared by every numerical module.
//!
//! All physics is written against [`Real`], so the same code runs in `f32`
//! for quick sweeps and `f64` for reference numbers.

use std::fmt::{Debug, Display};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating-point scalar usable by the solvers.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal into `Self`.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Complex number over a [`Real`] scalar.
pub type Cx<T> = Complex<T>;

/// Square root on the branch with non-negative imaginary part, ties
/// (purely real results) broken towards a non-negative real part.
pub fn sqrt_upper<T: Real>(z: Cx<T>) -> Cx<T> {
    let mut w = z.sqrt();
    if w.im < T::zero() || (w.im == T::zero() && w.re < T::zero()) {
        w = -w;
    }
    // principal sqrt may return -0.0 imaginary parts; normalise the sign
    if w.im == T::zero() {
        w.im = T::zero();
    }
    w
}

/// `sin(x) / x`, finite at the origin.
pub fn sinc<T: Real>(x: Cx<T>) -> Cx<T> {
    if x.norm() < T::lit(1e-4) {
        let x2 = x * x;
        Cx::new(T::one(), T::zero()) - x2 / T::lit(6.0) + x2 * x2 / T::lit(120.0)
    } else {
        x.sin() / x
    }
}

/// Relative difference `|a - b| / max(|a|, |b|)`, zero when both are zero.
pub fn rel_diff<T: Real>(a: T, b: T) -> T {
    let scale = a.abs().max(b.abs());
    if scale == T::zero() {
        T::zero()
    } else {
        (a - b).abs() / scale
    }
}
