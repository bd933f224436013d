//! Muller's method for complex roots.

use num_complex::Complex;

use crate::scalar::{lit, Real};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MullerResult<T> {
    pub root: Complex<T>,
    /// `|ΔE|` of the final step.
    pub last_step: T,
    pub iterations: usize,
    pub converged: bool,
}

/// Iterates the parabola through the last three points, taking the root
/// nearest the newest point, until the step falls below `tol`.
pub fn muller<T: Real, F>(
    mut f: F,
    x0: Complex<T>,
    x1: Complex<T>,
    x2: Complex<T>,
    tol: T,
    max_iter: usize,
) -> MullerResult<T>
where
    F: FnMut(Complex<T>) -> Complex<T>,
{
    let (mut x0, mut x1, mut x2) = (x0, x1, x2);
    let (mut f0, mut f1, mut f2) = (f(x0), f(x1), f(x2));
    let two = lit::<T>(2.0);
    let four = lit::<T>(4.0);
    let mut last = T::infinity();
    for it in 1..=max_iter {
        if f2.norm() == T::zero() {
            return MullerResult { root: x2, last_step: T::zero(), iterations: it - 1, converged: true };
        }
        let h1 = x1 - x0;
        let h2 = x2 - x1;
        let d1 = (f1 - f0) / h1;
        let d2 = (f2 - f1) / h2;
        let a = (d2 - d1) / (h2 + h1);
        let b = a * h2 + d2;
        let disc = (b * b - a * f2 * four).sqrt();
        let den = if (b + disc).norm() >= (b - disc).norm() { b + disc } else { b - disc };
        let dx = if den.norm() > T::zero() {
            -(f2 * two) / den
        } else {
            // flat parabola: nudge
            (x2 - x1) * lit::<T>(0.5)
        };
        let x3 = x2 + dx;
        last = dx.norm();
        if !(x3.re.is_finite() && x3.im.is_finite()) {
            return MullerResult { root: x2, last_step: last, iterations: it, converged: false };
        }
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = f2;
        x2 = x3;
        f2 = f(x2);
        if last <= tol {
            return MullerResult { root: x2, last_step: last, iterations: it, converged: true };
        }
    }
    MullerResult { root: x2, last_step: last, iterations: max_iter, converged: false }
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Complex<f64>;

    #[test]
    fn finds_complex_roots_from_real_starts() {
        // z² + 1: roots ±i
        let r = muller(|z: C| z * z + 1.0, C::new(0.5, 0.0), C::new(1.0, 0.0), C::new(1.5, 0.0), 1e-13, 60);
        assert!(r.converged);
        assert!((r.root.norm() - 1.0).abs() < 1e-12 && r.root.re.abs() < 1e-12);
    }

    #[test]
    fn real_root_of_transcendental() {
        let r = muller(|z: C| z.cos() - z, C::new(0.0, 0.0), C::new(0.5, 0.0), C::new(1.0, 0.0), 1e-14, 60);
        assert!(r.converged);
        assert!((r.root.re - 0.739_085_133_215_160_6).abs() < 1e-14);
    }

    #[test]
    fn reports_non_convergence() {
        let r = muller(|z: C| z.exp(), C::new(0.0, 0.0), C::new(1.0, 0.0), C::new(2.0, 0.0), 1e-14, 5);
        assert!(!r.converged);
    }
}
