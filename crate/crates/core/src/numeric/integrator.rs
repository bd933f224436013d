//! Fourth-order Magnus integrator for `ψ'' = (V - E)ψ`.
//!
//! One step over `[x, x + h]` uses the two Gauss nodes and the exponential of
//! `Ω = (h/2)(M₁ + M₂) + (√3/12)h²[M₂, M₁]`. `Ω` is traceless, so
//! `exp Ω = cosh(s)·I + sinh(s)/s·Ω` with `s² = -det Ω`, and every step has
//! unit determinant: Wronskians are preserved to rounding.

use num_complex::Complex;

use super::Potential;
use crate::scalar::{from_usize, lit, Real};

pub(crate) type Mat2<T> = [[Complex<T>; 2]; 2];

/// Renormalization threshold for the overflow guard.
pub const RESCALE_AT: f64 = 1e150;

/// Offsets of the two Gauss nodes in units of the step.
pub(crate) fn gauss_offsets<T: Real>() -> (T, T) {
    let half = lit::<T>(0.5);
    let d = lit::<T>(3.0).sqrt() / lit(6.0);
    (half - d, half + d)
}

/// `(cosh s, sinh s / s)` as functions of `s²`.
pub(crate) fn cosh_sinhc<T: Real>(s2: Complex<T>) -> (Complex<T>, Complex<T>) {
    if s2.norm() < lit(0.5) {
        let mut c = Complex::new(T::one(), T::zero());
        let mut s = Complex::new(T::one(), T::zero());
        let mut tc = c;
        let mut ts = s;
        for j in 1..14usize {
            let jf = from_usize::<T>(2 * j);
            tc = tc * s2 / (jf * (jf - T::one()));
            ts = ts * s2 / (jf * (jf + T::one()));
            c = c + tc;
            s = s + ts;
        }
        (c, s)
    } else {
        let r = s2.sqrt();
        (r.cosh(), r.sinh() / r)
    }
}

/// `exp(Ω)` for traceless `Ω = [[a, b], [c, -a]]`.
pub(crate) fn expm_traceless<T: Real>(a: Complex<T>, b: Complex<T>, c: Complex<T>) -> Mat2<T> {
    let (ch, sh) = cosh_sinhc(a * a + b * c);
    [[ch + sh * a, sh * b], [sh * c, ch - sh * a]]
}

/// One step in the `(ψ, ψ')` picture; `w = V - E` at the first and second
/// node along the direction of travel, `h` signed.
#[inline]
pub(crate) fn step_matrix<T: Real>(w1: Complex<T>, w2: Complex<T>, h: T) -> Mat2<T> {
    let c = lit::<T>(3.0).sqrt() / lit(12.0);
    let a = (w1 - w2) * (c * h * h);
    let lower = (w1 + w2) * (h * lit(0.5));
    expm_traceless(a, Complex::new(h, T::zero()), lower)
}

#[inline]
pub(crate) fn apply<T: Real>(m: &Mat2<T>, y: [Complex<T>; 2]) -> [Complex<T>; 2] {
    [m[0][0] * y[0] + m[0][1] * y[1], m[1][0] * y[0] + m[1][1] * y[1]]
}

#[inline]
pub(crate) fn matmul<T: Real>(a: &Mat2<T>, b: &Mat2<T>) -> Mat2<T> {
    [
        [a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]],
        [a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]],
    ]
}

/// State `(ψ, ψ')` reached by [`integrate`]; the true solution is
/// `e^{log_scale}·(y, dy)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integration<T> {
    pub y: Complex<T>,
    pub dy: Complex<T>,
    pub log_scale: T,
    pub steps: usize,
}

impl<T: Real> Integration<T> {
    pub fn value(&self) -> Complex<T> {
        self.y * self.log_scale.exp()
    }

    pub fn derivative(&self) -> Complex<T> {
        self.dy * self.log_scale.exp()
    }
}

/// Divides `y` by its largest component modulus once that exceeds
/// [`RESCALE_AT`], accumulating the logarithm.
#[inline]
pub(crate) fn guard<T: Real>(y: &mut [Complex<T>; 2], log_scale: &mut T) {
    let m = y[0].norm().max(y[1].norm());
    if m > lit(RESCALE_AT) {
        y[0] = y[0] / m;
        y[1] = y[1] / m;
        *log_scale = *log_scale + m.ln();
    }
}

/// Integrates `ψ'' = (V - E)ψ` from `from` to `to` with steps of at most `h`
/// (shortened so they divide the interval exactly).
pub fn integrate<T: Real, P: Potential<T> + ?Sized>(
    pot: &P,
    energy: Complex<T>,
    from: T,
    to: T,
    h: T,
    y0: Complex<T>,
    dy0: Complex<T>,
) -> Integration<T> {
    let span = to - from;
    let n = (span.abs() / h.abs()).ceil().to_usize().unwrap_or(1).max(1);
    let step = span / from_usize::<T>(n);
    let (o1, o2) = gauss_offsets::<T>();
    let mut y = [y0, dy0];
    let mut log_scale = T::zero();
    for i in 0..n {
        let x = from + from_usize::<T>(i) * step;
        let w1 = pot.value(x + o1 * step) - energy;
        let w2 = pot.value(x + o2 * step) - energy;
        y = apply(&step_matrix(w1, w2, step), y);
        guard(&mut y, &mut log_scale);
    }
    Integration { y: y[0], dy: y[1], log_scale, steps: n }
}
