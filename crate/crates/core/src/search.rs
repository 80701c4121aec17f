//! One-dimensional search primitives: golden-section maximisation,
//! bracketed bisection and grid scans.

use crate::scalar::Real;

/// Result of a one-dimensional maximisation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremum<T> {
    pub x: T,
    pub value: T,
    pub evaluations: usize,
}

/// Golden-section search for the maximum of a unimodal `f` on `[lo, hi]`.
///
/// Stops when the bracket is narrower than `tol`. The endpoints are also
/// compared, so a monotone `f` returns the better boundary.
pub fn golden_section_max<T, F, E>(mut f: F, lo: T, hi: T, tol: T) -> Result<Extremum<T>, E>
where
    T: Real,
    F: FnMut(T) -> Result<T, E>,
{
    let inv_phi = (T::lit(5.0).sqrt() - T::one()) / T::lit(2.0);
    let mut evaluations = 0;
    let mut eval = |x: T, n: &mut usize| {
        *n += 1;
        f(x)
    };
    if hi <= lo {
        let value = eval(lo, &mut evaluations)?;
        return Ok(Extremum { x: lo, value, evaluations });
    }
    let f_lo = eval(lo, &mut evaluations)?;
    let f_hi = eval(hi, &mut evaluations)?;

    let (mut a, mut b) = (lo, hi);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = eval(c, &mut evaluations)?;
    let mut fd = eval(d, &mut evaluations)?;
    let tol = tol.max(T::epsilon() * (lo.abs() + hi.abs()));
    while (b - a) > tol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = eval(c, &mut evaluations)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = eval(d, &mut evaluations)?;
        }
    }
    let (mut x, mut value) = if fc >= fd { (c, fc) } else { (d, fd) };
    if f_lo > value {
        x = lo;
        value = f_lo;
    }
    if f_hi > value {
        x = hi;
        value = f_hi;
    }
    Ok(Extremum { x, value, evaluations })
}

/// Evaluates `f` on `n` evenly spaced points in `[lo, hi]` and returns the
/// index and abscissa of the smallest value together with all abscissae.
pub fn scan_min<T, F, E>(mut f: F, lo: T, hi: T, n: usize) -> Result<(usize, Vec<T>, Vec<T>), E>
where
    T: Real,
    F: FnMut(T) -> Result<T, E>,
{
    let n = n.max(2);
    let step = (hi - lo) / T::from_usize(n - 1).expect("grid size");
    let xs: Vec<T> = (0..n)
        .map(|i| lo + step * T::from_usize(i).expect("grid index"))
        .collect();
    let mut ys = Vec::with_capacity(n);
    for &x in &xs {
        ys.push(f(x)?);
    }
    let mut best = 0;
    for (i, y) in ys.iter().enumerate() {
        if *y < ys[best] {
            best = i;
        }
    }
    Ok((best, xs, ys))
}

/// Outcome of [`bisect`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root<T> {
    pub x: T,
    pub residual: T,
    pub iterations: usize,
}

/// Bisection for a sign change of `f` on `[lo, hi]`, stopping once the
/// bracket is narrower than `xtol`. Returns `None` when the endpoint values
/// share a strict sign.
pub fn bisect<T, F, E>(mut f: F, lo: T, hi: T, xtol: T) -> Result<Option<Root<T>>, E>
where
    T: Real,
    F: FnMut(T) -> Result<T, E>,
{
    let (mut a, mut b) = (lo, hi);
    let mut fa = f(a)?;
    let mut fb = f(b)?;
    if fa == T::zero() {
        return Ok(Some(Root { x: a, residual: fa, iterations: 0 }));
    }
    if fb == T::zero() {
        return Ok(Some(Root { x: b, residual: fb, iterations: 0 }));
    }
    if fa.signum() == fb.signum() {
        return Ok(None);
    }
    let mut iterations = 0;
    while (b - a) > xtol && iterations < 400 {
        let m = a + (b - a) / T::lit(2.0);
        if m <= a || m >= b {
            break;
        }
        let fm = f(m)?;
        iterations += 1;
        if fm == T::zero() {
            return Ok(Some(Root { x: m, residual: fm, iterations }));
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
            fb = fm;
        }
    }
    let (x, residual) = if fa.abs() <= fb.abs() { (a, fa) } else { (b, fb) };
    Ok(Some(Root { x, residual, iterations }))
}
