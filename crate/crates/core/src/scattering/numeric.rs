//! ODE backend for `E > 0`.
//!
//! Writing `ψ = a e^{ikx} + b e^{-ikx}`, `ψ' = ik(a e^{ikx} - b e^{-ikx})`
//! gives `(a, b)' = (V/2ik)[[1, e^{-2ikx}], [-e^{2ikx}, -1]](a, b)`, which is
//! propagated across `[-l, l]` with the fourth-order Magnus scheme. Outside
//! `[-l, l]` the exact Jost solutions come from the tail series, so small
//! reflection amplitudes keep their relative accuracy.

use num_complex::Complex;

use super::{ScatterError, ScatterPoint};
use crate::numeric::integrator::{expm_traceless, gauss_offsets, matmul, Mat2};
use crate::numeric::{Potential, Side, TailSeries, TAIL_TERMS};
use crate::scalar::{from_usize, lit, Real};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatterConfig<T> {
    pub l: T,
    pub h: T,
}

impl<T: Real> Default for ScatterConfig<T> {
    fn default() -> Self {
        Self { l: lit(12.0), h: lit(1e-3) }
    }
}

/// Pre-samples the potential at the Gauss nodes of a fixed grid.
pub struct ScatterSolver<'a, T: Real, P: Potential<T> + ?Sized> {
    pot: &'a P,
    l: T,
    h: T,
    nodes: Vec<[(T, Complex<T>); 2]>,
    v_left: Vec<Complex<T>>,
    v_right: Vec<Complex<T>>,
}

type Vec2<T> = [Complex<T>; 2];

fn det<T: Real>(u: Vec2<T>, v: Vec2<T>) -> Complex<T> {
    u[0] * v[1] - u[1] * v[0]
}

impl<'a, T: Real, P: Potential<T> + ?Sized> ScatterSolver<'a, T, P> {
    pub fn new(pot: &'a P, cfg: &ScatterConfig<T>) -> Self {
        let l = cfg.l.max(pot.tail_start() + cfg.h);
        let n = ((l + l) / cfg.h).ceil().to_usize().unwrap_or(2).max(2);
        let h = (l + l) / from_usize::<T>(n);
        let (o1, o2) = gauss_offsets::<T>();
        let nodes = (0..n)
            .map(|i| {
                let x = -l + from_usize::<T>(i) * h;
                let (x1, x2) = (x + o1 * h, x + o2 * h);
                [(x1, pot.value(x1)), (x2, pot.value(x2))]
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

    pub fn potential(&self) -> &P {
        self.pot
    }

    /// `(a, b)` at `x` of the Jost solution `e^{λx}(1 + s)`, `λ = ±ik`.
    fn jost_ab(&self, k: T, x: T, side: Side, outgoing_plus: bool) -> Vec2<T> {
        let i = Complex::<T>::i();
        let ik = i * k;
        let lambda = if outgoing_plus { ik } else { -ik };
        let v = match side {
            Side::Left => &self.v_left,
            Side::Right => &self.v_right,
        };
        let (s, ds) = TailSeries::new(v, side, lambda).eval(x);
        let one = Complex::new(T::one(), T::zero());
        let two_ik = ik * lit::<T>(2.0);
        let phase = (ik * (x + x)).exp();
        if outgoing_plus {
            [one + s + ds / two_ik, -ds * phase / two_ik]
        } else {
            [ds / (phase * two_ik), one + s - ds / two_ik]
        }
    }

    /// Propagator of `(a, b)` from `-l` to `l`.
    fn monodromy(&self, k: T) -> Mat2<T> {
        let i = Complex::<T>::i();
        let two_ik = i * (k + k);
        let c = lit::<T>(3.0).sqrt() / lit(12.0);
        let half_h = self.h * lit(0.5);
        let coupling = |x: T, v: Complex<T>| -> Mat2<T> {
            let g = v / two_ik;
            let e = (i * (k + k) * x).exp();
            [[g, g / e], [-g * e, -g]]
        };
        let mut u: Mat2<T> = [
            [Complex::new(T::one(), T::zero()), Complex::new(T::zero(), T::zero())],
            [Complex::new(T::zero(), T::zero()), Complex::new(T::one(), T::zero())],
        ];
        for [(x1, v1), (x2, v2)] in &self.nodes {
            let m1 = coupling(*x1, *v1);
            let m2 = coupling(*x2, *v2);
            let p21 = matmul(&m2, &m1);
            let p12 = matmul(&m1, &m2);
            let ch2 = c * self.h * self.h;
            let a = (m1[0][0] + m2[0][0]) * half_h + (p21[0][0] - p12[0][0]) * ch2;
            let b = (m1[0][1] + m2[0][1]) * half_h + (p21[0][1] - p12[0][1]) * ch2;
            let cc = (m1[1][0] + m2[1][0]) * half_h + (p21[1][0] - p12[1][0]) * ch2;
            let step = expm_traceless(a, b, cc);
            u = matmul(&step, &u);
        }
        u
    }

    pub fn scatter(&self, energy: T) -> Result<ScatterPoint<T>, ScatterError> {
        if !(energy > T::zero()) {
            return Err(ScatterError::NonPositiveEnergy(energy.to_f64().unwrap_or(f64::NAN)));
        }
        let k = energy.sqrt();
        let u = self.monodromy(k);
        let l = self.l;
        let f_plus = self.jost_ab(k, l, Side::Right, true);
        let f_minus = self.jost_ab(k, l, Side::Right, false);
        let g_plus = self.jost_ab(k, -l, Side::Left, true);
        let g_minus = self.jost_ab(k, -l, Side::Left, false);

        // left incidence: pure outgoing on the right, carried back to -l
        let back = [
            u[1][1] * f_plus[0] - u[0][1] * f_plus[1],
            -u[1][0] * f_plus[0] + u[0][0] * f_plus[1],
        ];
        let wg = det(g_plus, g_minus);
        let alpha = det(back, g_minus) / wg;
        let beta = det(g_plus, back) / wg;
        let t = alpha.inv();
        let r_left = beta / alpha;

        // right incidence: pure outgoing on the left, carried to +l
        let fwd = [
            u[0][0] * g_minus[0] + u[0][1] * g_minus[1],
            u[1][0] * g_minus[0] + u[1][1] * g_minus[1],
        ];
        let wf = det(f_minus, f_plus);
        let alpha_r = det(fwd, f_plus) / wf;
        let beta_r = det(f_minus, fwd) / wf;
        let t_right = alpha_r.inv();
        let r_right = beta_r / alpha_r;

        let finite = |z: Complex<T>| z.re.is_finite() && z.im.is_finite();
        let singular = ![t, t_right, r_left, r_right].iter().all(|z| finite(*z));
        Ok(ScatterPoint { energy, t, t_right, r_left, r_right, singular })
    }
}

pub fn scatter_numeric<T: Real, P: Potential<T> + ?Sized>(pot: &P, energy: T) -> Result<ScatterPoint<T>, ScatterError> {
    ScatterSolver::new(pot, &ScatterConfig::default()).scatter(energy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::square_well::square_well_amplitudes;
    use crate::numeric::{FreeParticle, SquareWell};
    use crate::potential::ScarfParams;
    use crate::scattering::scatter_analytic;

    type C = Complex<f64>;

    fn rel(a: C, b: C) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn free_particle() {
        let s = scatter_numeric(&FreeParticle, 2.0).unwrap();
        assert!((s.t - C::new(1.0, 0.0)).norm() < 1e-14);
        assert!(s.r_left.norm() < 1e-14 && s.r_right.norm() < 1e-14);
        assert!(scatter_numeric(&FreeParticle, 0.0f64).is_err());
    }

    #[test]
    fn square_well_matches_closed_form() {
        let w = SquareWell::new(5.0, 4.0);
        let solver = ScatterSolver::new(&w, &ScatterConfig::default());
        for e in [0.05, 0.8, 3.0, 20.0] {
            let s = solver.scatter(e).unwrap();
            let (t, r) = square_well_amplitudes(&w, e);
            assert!(rel(s.t, t) < 1e-9, "E={e}");
            assert!(rel(s.r_left, r) < 1e-8, "E={e} {} {}", s.r_left, r);
            assert!((s.transmission() + s.reflection_left() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn matches_analytic_backend() {
        let p = ScarfParams::new(C::new(2.7, 0.0), C::new(1.2, 1.4));
        let solver = ScatterSolver::new(&p, &ScatterConfig::default());
        for e in [0.05, 4.0, 50.0] {
            let n = solver.scatter(e).unwrap();
            let a = scatter_analytic(&p, e).unwrap();
            assert!(rel(n.t, a.t) < 1e-6, "E={e}");
            assert!(rel(n.r_left, a.r_left) < 1e-6, "E={e} {} {}", n.r_left, a.r_left);
            assert!(rel(n.r_right, a.r_right) < 1e-6, "E={e} {} {}", n.r_right, a.r_right);
            assert!((n.transmission() - n.transmission_right()).abs() <= 1e-10 * n.transmission());
        }
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(24))]

        #[test]
        fn transmission_is_reciprocal(ar in -2.5f64..2.5, ai in -2.5f64..2.5, br in -2.5f64..2.5, bi in -2.5f64..2.5, e in 0.1f64..25.0) {
            let p = ScarfParams::new(C::new(ar, ai), C::new(br, bi));
            let s = scatter_numeric(&p, e).unwrap();
            let t = s.transmission();
            proptest::prop_assert!((t - s.transmission_right()).abs() <= 1e-10 * t.max(1.0));
        }
    }
}
