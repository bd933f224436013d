//! Gamma-function form of the amplitudes. With `s = -ik`,
//!
//! `t = Γ(s-A)Γ(1+A+s)Γ(1/2-B+s)Γ(1/2+B+s) / [Γ(s)Γ(1+s)Γ(1/2+s)²]`,
//! `r_L/t = X/sin πs + iY/cos πs`, `r_R/t = X/sin πs - iY/cos πs`,
//!
//! where `X = sin πA cos πB`, `Y = cos πA sin πB`. Below threshold `s = κ`.
//! The reciprocals are built from `1/Γ`, which is entire, so they can be
//! root-searched straight through the poles of the amplitudes.

use num_complex::Complex;

use super::{Coefficient, ScatterError, ScatterPoint};
use crate::potential::ScarfParams;
use crate::scalar::{lit, Real};
use crate::specfun::{complex_gamma, recip_gamma};

/// `k(E)`: `√E` on the positive real axis, `i√(-E)` elsewhere.
pub fn wavenumber<T: Real>(energy: Complex<T>) -> Complex<T> {
    if energy.im == T::zero() && energy.re > T::zero() {
        Complex::new(energy.re.sqrt(), T::zero())
    } else {
        Complex::<T>::i() * (-energy).sqrt()
    }
}

fn xy<T: Real>(p: &ScarfParams<T>) -> (Complex<T>, Complex<T>) {
    let pi = T::PI();
    let (a, b) = (p.a() * pi, p.b() * pi);
    (a.sin() * b.cos(), a.cos() * b.sin())
}

/// `1/t(s)`.
fn inv_t<T: Real>(p: &ScarfParams<T>, s: Complex<T>) -> Complex<T> {
    let one = Complex::new(T::one(), T::zero());
    let half = Complex::new(lit::<T>(0.5), T::zero());
    let (a, b) = (p.a(), p.b());
    let g = |z: Complex<T>| complex_gamma(z).unwrap_or_else(|_| Complex::new(T::infinity(), T::zero()));
    let gh = g(half + s);
    g(s) * g(one + s) * gh * gh
        * recip_gamma(s - a)
        * recip_gamma(one + a + s)
        * recip_gamma(half - b + s)
        * recip_gamma(half + b + s)
}

/// Reciprocal of the amplitude `which` as an analytic function of `s = -ik`.
pub fn reciprocal<T: Real>(p: &ScarfParams<T>, s: Complex<T>, which: Coefficient) -> Complex<T> {
    let it = inv_t(p, s);
    if which == Coefficient::T {
        return it;
    }
    let (x, y) = xy(p);
    let ps = s * T::PI();
    let (sn, cs) = (ps.sin(), ps.cos());
    let i = Complex::<T>::i();
    let den = match which {
        Coefficient::RLeft => x * cs + i * y * sn,
        _ => x * cs - i * y * sn,
    };
    it * sn * cs / den
}

/// `|r_L/t|²` and `|r_R/t|²` at `s`.
pub fn reflection_ratios<T: Real>(p: &ScarfParams<T>, s: Complex<T>) -> (T, T) {
    let (x, y) = xy(p);
    let ps = s * T::PI();
    let i = Complex::<T>::i();
    let u = x / ps.sin();
    let v = i * y / ps.cos();
    ((u + v).norm_sqr(), (u - v).norm_sqr())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Amplitudes<T> {
    pub k: Complex<T>,
    pub t: Complex<T>,
    pub r_left: Complex<T>,
    pub r_right: Complex<T>,
    pub singular: bool,
}

/// Amplitudes at complex wavenumber `k ≠ 0`.
pub fn analytic_amplitudes<T: Real>(p: &ScarfParams<T>, k: Complex<T>) -> Result<Amplitudes<T>, ScatterError> {
    if k.norm() == T::zero() {
        return Err(ScatterError::Threshold);
    }
    let s = -Complex::<T>::i() * k;
    let it = inv_t(p, s);
    let t = it.inv();
    let (x, y) = xy(p);
    let ps = s * T::PI();
    let u = x / ps.sin();
    let v = Complex::<T>::i() * y / ps.cos();
    let r_left = t * (u + v);
    let r_right = t * (u - v);
    let finite = |z: Complex<T>| z.re.is_finite() && z.im.is_finite();
    let singular = !(finite(t) && finite(r_left) && finite(r_right));
    Ok(Amplitudes { k, t, r_left, r_right, singular })
}

/// Real energy of either sign.
pub fn scatter_analytic<T: Real>(p: &ScarfParams<T>, energy: T) -> Result<ScatterPoint<T>, ScatterError> {
    let amp = analytic_amplitudes(p, wavenumber(Complex::new(energy, T::zero())))?;
    Ok(ScatterPoint {
        energy,
        t: amp.t,
        t_right: amp.t,
        r_left: amp.r_left,
        r_right: amp.r_right,
        singular: amp.singular,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Complex<f64>;

    #[test]
    fn free_particle_is_transparent() {
        let p = ScarfParams::new(C::new(0.0, 0.0), C::new(0.0, 0.0));
        for e in [0.1, 2.0, 40.0] {
            let s = scatter_analytic(&p, e).unwrap();
            assert!((s.t - C::new(1.0, 0.0)).norm() < 1e-12);
            assert!(s.r_left.norm() < 1e-12 && s.r_right.norm() < 1e-12);
        }
    }

    #[test]
    fn hermitian_unitarity() {
        let p = ScarfParams::hermitian(1.3f64, 0.8);
        for e in [0.05, 0.7, 5.0, 30.0] {
            let s = scatter_analytic(&p, e).unwrap();
            assert!((s.transmission() + s.reflection_left() - 1.0).abs() < 1e-10, "E={e}");
            assert!((s.reflection_left() - s.reflection_right()).abs() < 1e-10);
        }
    }

    #[test]
    fn transmission_poles_at_bound_states() {
        let p = ScarfParams::new(C::new(2.7, 0.0), C::new(1.2, 1.4));
        for e in [-7.29f64, -2.89, -0.49] {
            let s = C::new((-e).sqrt(), 0.0);
            assert!(reciprocal(&p, s, Coefficient::T).norm() < 1e-12);
        }
        assert!(reciprocal(&p, C::new(2.0, 0.0), Coefficient::T).norm() > 1e-3);
    }

    #[test]
    fn wavenumber_branches() {
        assert_eq!(wavenumber(C::new(4.0, 0.0)), C::new(2.0, 0.0));
        assert!((wavenumber(C::new(-4.0, 0.0)) - C::new(0.0, 2.0)).norm() < 1e-15);
        let k = wavenumber(C::new(-1.0, 0.5));
        assert!(k.im > 0.0);
    }

    proptest::proptest! {
        #[test]
        fn hermitian_limit_is_unitary(a in 0.0f64..3.0, b in -3.0f64..3.0, e in 0.05f64..30.0) {
            let s = scatter_analytic(&ScarfParams::hermitian(a, b), e).unwrap();
            proptest::prop_assert!((s.transmission() + s.reflection_left() - 1.0).abs() <= 1e-10);
            proptest::prop_assert!((s.reflection_left() - s.reflection_right()).abs() <= 1e-10);
        }
    }
}
