//! Jost solutions `f₊ ~ e^{-κx}` (`x → +∞`) and `f₋ ~ e^{κx}` (`x → -∞`),
//! `κ = √(-E)` with `Re κ > 0`, and their Wronskian, which vanishes exactly
//! at bound-state energies.

use num_complex::Complex;

use super::integrator::{apply, gauss_offsets, guard, step_matrix};
use super::{Potential, Side, TailSeries, TAIL_TERMS};
use crate::scalar::{from_usize, lit, Real};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JostConfig<T> {
    /// The solutions are started from their exact tail expansions at `±l`.
    pub l: T,
    /// Step for refinement and reported values.
    pub h: T,
    /// Coarser step for the energy scan.
    pub scan_h: T,
    /// Energy spacing of the real-axis scan.
    pub scan_step: T,
    /// Muller stops once `|ΔE|` falls below this.
    pub tol: T,
    pub max_iter: usize,
    /// Roots with `Re E > -threshold` are near-threshold candidates.
    pub threshold: T,
}

impl<T: Real> Default for JostConfig<T> {
    fn default() -> Self {
        Self {
            l: lit(10.0),
            h: lit(1e-3),
            scan_h: lit(5e-3),
            scan_step: lit(0.01),
            tol: lit(1e-10),
            max_iter: 60,
            threshold: lit(1e-4),
        }
    }
}

impl<T: Real> JostConfig<T> {
    pub fn with_h(mut self, h: T) -> Self {
        self.h = h;
        self
    }

    pub fn with_l(mut self, l: T) -> Self {
        self.l = l;
        self
    }
}

/// A Jost solution at the matching point: the true solution is
/// `e^{log_scale - κl}·(y, dy)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JostValue<T> {
    pub y: Complex<T>,
    pub dy: Complex<T>,
    pub log_scale: T,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WronskianValue<T> {
    /// `f₋f₊' - f₋'f₊` of the true Jost solutions; analytic in `E`.
    pub value: Complex<T>,
    /// `|W|` over the product of the lengths of `(κf, f')` for both
    /// solutions: the sine of the angle between them, in `[0, 1]`.
    pub normalized: T,
}

/// Integrates the Jost solutions on a fixed grid `x_i = -l + i·h` with the
/// potential pre-sampled at the Gauss nodes.
pub struct JostSolver<'a, T: Real, P: Potential<T> + ?Sized> {
    pot: &'a P,
    l: T,
    h: T,
    nodes: Vec<[Complex<T>; 2]>,
    v_left: Vec<Complex<T>>,
    v_right: Vec<Complex<T>>,
}

impl<'a, T: Real, P: Potential<T> + ?Sized> JostSolver<'a, T, P> {
    /// `h` is shrunk so that `2l/h` is an integer.
    pub fn new(pot: &'a P, l: T, h: T) -> Self {
        let l = l.max(pot.tail_start() + h);
        let n = ((l + l) / h).ceil().to_usize().unwrap_or(2).max(2);
        let h = (l + l) / from_usize::<T>(n);
        let (o1, o2) = gauss_offsets::<T>();
        let nodes = (0..n)
            .map(|i| {
                let x = -l + from_usize::<T>(i) * h;
                [pot.value(x + o1 * h), pot.value(x + o2 * h)]
            })
            .collect();
        Self {
            pot,
            l,
            h,
            nodes,
            v_left: pot.tail_coefficients(Side::Left, TAIL_TERMS),
            v_right: pot.tail_coefficients(Side::Right, TAIL_TERMS),
        }
    }

    pub fn from_config(pot: &'a P, cfg: &JostConfig<T>) -> Self {
        Self::new(pot, cfg.l, cfg.h)
    }

    pub fn potential(&self) -> &P {
        self.pot
    }

    pub fn half_width(&self) -> T {
        self.l
    }

    pub fn step(&self) -> T {
        self.h
    }

    fn index_of(&self, x: T) -> usize {
        let i = ((x + self.l) / self.h).round().to_usize().unwrap_or(0);
        i.min(self.nodes.len())
    }

    /// `f₊` integrated from `+l` down to the grid point nearest `x_m`.
    pub fn jost_right(&self, energy: Complex<T>, x_m: T) -> JostValue<T> {
        let kappa = (-energy).sqrt();
        let ser = TailSeries::new(&self.v_right, Side::Right, -kappa);
        let (s, ds) = ser.eval(self.l);
        let one = Complex::new(T::one(), T::zero());
        let mut y = [one + s, -kappa * (one + s) + ds];
        let mut log_scale = T::zero();
        let stop = self.index_of(x_m);
        for i in (stop..self.nodes.len()).rev() {
            let [v1, v2] = self.nodes[i];
            y = apply(&step_matrix(v2 - energy, v1 - energy, -self.h), y);
            guard(&mut y, &mut log_scale);
        }
        JostValue { y: y[0], dy: y[1], log_scale }
    }

    /// `f₋` integrated from `-l` up to the grid point nearest `x_m`.
    pub fn jost_left(&self, energy: Complex<T>, x_m: T) -> JostValue<T> {
        let kappa = (-energy).sqrt();
        let ser = TailSeries::new(&self.v_left, Side::Left, kappa);
        let (s, ds) = ser.eval(-self.l);
        let one = Complex::new(T::one(), T::zero());
        let mut y = [one + s, kappa * (one + s) + ds];
        let mut log_scale = T::zero();
        let stop = self.index_of(x_m);
        for i in 0..stop {
            let [v1, v2] = self.nodes[i];
            y = apply(&step_matrix(v1 - energy, v2 - energy, self.h), y);
            guard(&mut y, &mut log_scale);
        }
        JostValue { y: y[0], dy: y[1], log_scale }
    }

    pub fn wronskian_at(&self, energy: Complex<T>, x_m: T) -> WronskianValue<T> {
        let plus = self.jost_right(energy, x_m);
        let minus = self.jost_left(energy, x_m);
        let w = minus.y * plus.dy - minus.dy * plus.y;
        let kappa = (-energy).sqrt();
        let k = kappa.norm().max(lit(1e-3));
        let len = |v: &JostValue<T>| (v.y.norm_sqr() * k * k + v.dy.norm_sqr()).sqrt();
        let scale = len(&minus) * len(&plus) / k;
        let factor = (Complex::new(plus.log_scale + minus.log_scale, T::zero()) - kappa * (self.l + self.l)).exp();
        let normalized = if scale > T::zero() { w.norm() / scale } else { T::one() };
        WronskianValue { value: w * factor, normalized }
    }

    pub fn wronskian(&self, energy: Complex<T>) -> WronskianValue<T> {
        self.wronskian_at(energy, T::zero())
    }
}

/// `W(E)` at `x = 0` with the default configuration.
pub fn wronskian<T: Real, P: Potential<T> + ?Sized>(pot: &P, energy: Complex<T>) -> WronskianValue<T> {
    let cfg = JostConfig::default();
    JostSolver::from_config(pot, &cfg).wronskian(energy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::spectrum;
    use crate::eigenfunctions::Eigenstate;
    use crate::numeric::FreeParticle;
    use crate::potential::ScarfParams;

    type C = Complex<f64>;

    fn fig1() -> ScarfParams<f64> {
        ScarfParams::new(C::new(2.7, 0.0), C::new(1.2, 1.4))
    }

    #[test]
    fn vanishes_at_eigenvalue() {
        let p = fig1();
        let w = wronskian(&p, C::new(-7.29, 0.0));
        assert!(w.normalized < 1e-10, "{}", w.normalized);
        let w = wronskian(&p, C::new(-5.0, 0.0));
        assert!(w.normalized > 1e-2);
        let free = wronskian(&FreeParticle, C::new(-1.0, 0.0));
        // f₋ = e^{x}, f₊ = e^{-x}: W = -2
        assert!((free.value - C::new(-2.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn matching_point_independence() {
        let p = fig1();
        let s = JostSolver::new(&p, 10.0, 1e-3);
        let e = C::new(-4.0, 0.5);
        let w0 = s.wronskian_at(e, 0.0).value;
        for xm in [-1.0, 1.0] {
            let w = s.wronskian_at(e, xm).value;
            assert!((w - w0).norm() <= 1e-9 * w0.norm());
        }
    }

    #[test]
    fn proportional_to_closed_form() {
        let p = fig1();
        let st = spectrum(&p).unwrap().states[0];
        let e = Eigenstate::from_bound(&st);
        let s = JostSolver::new(&p, 10.0, 1e-3);
        let ratios: Vec<C> = [0.0, -2.0, 1.5]
            .iter()
            .map(|&x| {
                let j = s.jost_right(C::new(st.energy, 0.0), x);
                j.y / e.eval(x).unwrap()
            })
            .collect();
        for r in &ratios[1..] {
            assert!((r - ratios[0]).norm() <= 1e-6 * ratios[0].norm());
        }
    }

    #[test]
    fn independent_of_start_distance() {
        let p = fig1();
        let e = C::new(-2.0, 0.1);
        let a = JostSolver::new(&p, 8.0, 1e-3).wronskian(e).value;
        let b = JostSolver::new(&p, 14.0, 1e-3).wronskian(e).value;
        assert!((a - b).norm() <= 1e-9 * a.norm(), "{a} {b}");
    }
}

