//! Finite square well `V = -V₀` for `|x| < a`, `a = width/2`.

use num_complex::Complex;

use super::{Potential, Side};
use crate::scalar::{lit, Real};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SquareWell<T> {
    pub depth: T,
    pub width: T,
}

impl<T: Real> SquareWell<T> {
    pub fn new(depth: T, width: T) -> Self {
        Self { depth, width }
    }

    pub fn half_width(&self) -> T {
        self.width * lit(0.5)
    }
}

impl<T: Real> Potential<T> for SquareWell<T> {
    fn value(&self, x: T) -> Complex<T> {
        if x.abs() < self.half_width() {
            Complex::new(-self.depth, T::zero())
        } else {
            Complex::new(T::zero(), T::zero())
        }
    }

    fn tail_coefficients(&self, _side: Side, terms: usize) -> Vec<Complex<T>> {
        vec![Complex::new(T::zero(), T::zero()); terms]
    }

    fn tail_start(&self) -> T {
        self.half_width()
    }

    fn scan_floor(&self) -> T {
        -self.depth
    }
}

fn bisect<T: Real, F: Fn(T) -> T>(f: F, mut lo: T, mut hi: T) -> T {
    let mut flo = f(lo);
    for _ in 0..200 {
        let mid = (lo + hi) * lit(0.5);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == T::zero() {
            return mid;
        }
        if (fm > T::zero()) == (flo > T::zero()) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    (lo + hi) * lit(0.5)
}

/// Bound states by bisection on the matching conditions in `z = ka`,
/// `z₀ = a√V₀`: even `z sin z = √(z₀² - z²) cos z`, odd
/// `z cos z = -√(z₀² - z²) sin z`; `E = z²/a² - V₀`, ascending.
pub fn square_well_reference<T: Real>(depth: T, width: T) -> Vec<T> {
    if !(depth > T::zero() && width > T::zero()) {
        return Vec::new();
    }
    let a = width * lit(0.5);
    let z0 = a * depth.sqrt();
    let root = |z: T| (z0 * z0 - z * z).max(T::zero()).sqrt();
    let f_even = |z: T| z * z.sin() - root(z) * z.cos();
    let f_odd = |z: T| z * z.cos() + root(z) * z.sin();
    let half_pi = T::FRAC_PI_2();
    let mut zs = Vec::new();
    let mut j = 0usize;
    loop {
        let lo = half_pi * lit::<T>(j as f64);
        if lo >= z0 {
            break;
        }
        let hi = (lo + half_pi).min(z0);
        let z = if j.is_multiple_of(2) { bisect(f_even, lo, hi) } else { bisect(f_odd, lo, hi) };
        zs.push(z);
        j += 1;
    }
    let mut e: Vec<T> = zs.into_iter().map(|z| z * z / (a * a) - depth).collect();
    e.sort_by(|x, y| x.partial_cmp(y).unwrap_or(std::cmp::Ordering::Equal));
    e
}

/// Closed-form `(t, r)` for a plane wave incident from the left at `E > 0`.
pub fn square_well_amplitudes<T: Real>(well: &SquareWell<T>, energy: T) -> (Complex<T>, Complex<T>) {
    square_well_amplitudes_at(well, Complex::new(energy.sqrt(), T::zero()))
}

/// `(t, r)` continued to complex wavenumber `k`; below threshold `k = iκ`
/// and both have poles at the bound states.
pub fn square_well_amplitudes_at<T: Real>(well: &SquareWell<T>, k: Complex<T>) -> (Complex<T>, Complex<T>) {
    let q = (k * k + well.depth).sqrt();
    let a2 = well.width;
    let i = Complex::<T>::i();
    let phase = (-i * k * a2).exp();
    let (s, c) = ((q * a2).sin(), (q * a2).cos());
    let two_kq = k * q * lit::<T>(2.0);
    let den = c - i * ((k * k + q * q) / two_kq * s);
    let t = phase / den;
    let r = i * ((q * q - k * k) / two_kq * s) * phase / den;
    (t, r)
}
