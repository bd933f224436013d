//! Special functions with complex arguments: Jacobi polynomials, the
//! Gudermannian `tan⁻¹(sinh x)`, and Γ.

use num_complex::Complex;

use crate::scalar::{from_usize, lit, Real};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpecfunError {
    #[error("Gamma pole at non-positive integer {0}")]
    GammaPole(f64),
    #[error("Jacobi recurrence degenerates at degree {degree}: 2n+α+β hits a non-positive integer")]
    DegenerateJacobi { degree: usize },
}

/// Degree and (complex) superscripts of `P_n^{(α, β)}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiParams<T> {
    pub alpha: Complex<T>,
    pub beta: Complex<T>,
    pub n: usize,
}

impl<T: Real> JacobiParams<T> {
    pub fn new(n: usize, alpha: Complex<T>, beta: Complex<T>) -> Self {
        Self { alpha, beta, n }
    }
}

/// `P_n^{(α, β)}(z)` by the three-term recurrence in the degree.
pub fn jacobi<T: Real>(jp: JacobiParams<T>, z: Complex<T>) -> Result<Complex<T>, SpecfunError> {
    let one = Complex::new(T::one(), T::zero());
    let two = lit::<T>(2.0);
    let (a, b) = (jp.alpha, jp.beta);
    if jp.n == 0 {
        return Ok(one);
    }
    let mut prev = one;
    let mut cur = (a - b) / two + (one + (a + b) / two) * z;
    let tiny = lit::<T>(1e-300).max(T::min_positive_value());
    let ab2 = a * a - b * b;
    for k in 2..=jp.n {
        let kf = from_usize::<T>(k);
        let s = a + b + kf * two; // 2k + α + β
        let denom = (a + b + kf) * (s - two) * (kf * two);
        if denom.norm() < tiny || (s - two).norm() < tiny {
            return Err(SpecfunError::DegenerateJacobi { degree: k });
        }
        let c1 = (s - one) * (s * (s - two) * z + ab2);
        let c2 = (a + kf - one) * (b + kf - one) * s * two;
        let next = (c1 * cur - c2 * prev) / denom;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// `gd(x) = tan⁻¹(sinh x)`, odd and monotone with range `(-π/2, π/2)`.
pub fn gudermannian<T: Real>(x: T) -> T {
    x.sinh().atan()
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Lanczos sum for `Re s ≥ 1/2`.
fn gamma_right<T: Real>(s: Complex<T>) -> Complex<T> {
    let one = Complex::new(T::one(), T::zero());
    let z = s - one;
    let mut acc = Complex::new(lit::<T>(LANCZOS_COEF[0]), T::zero());
    for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc = acc + Complex::new(lit::<T>(c), T::zero()) / (z + from_usize::<T>(i));
    }
    let half = lit::<T>(0.5);
    let t = z + lit::<T>(LANCZOS_G) + half;
    let sqrt_2pi = (T::PI() * lit(2.0)).sqrt();
    // t^(z+1/2) e^{-t} as a single exponential
    ((z + half) * t.ln() - t).exp() * acc * sqrt_2pi
}

fn nonpositive_integer<T: Real>(s: Complex<T>) -> Option<T> {
    let m = s.re.round();
    if m <= T::zero() && (s - Complex::new(m, T::zero())).norm() < lit(1e-14) {
        Some(m)
    } else {
        None
    }
}

/// `Γ(s)` for complex `s` (Lanczos, g = 7, nine terms; reflection for `Re s < 1/2`).
pub fn complex_gamma<T: Real>(s: Complex<T>) -> Result<Complex<T>, SpecfunError> {
    if let Some(m) = nonpositive_integer(s) {
        return Err(SpecfunError::GammaPole(m.to_f64().unwrap_or(f64::NAN)));
    }
    if s.re < lit(0.5) {
        let one = Complex::new(T::one(), T::zero());
        let pi = T::PI();
        Ok(Complex::new(pi, T::zero()) / ((s * pi).sin() * gamma_right(one - s)))
    } else {
        Ok(gamma_right(s))
    }
}

/// `1/Γ(s)`, entire; exactly zero at the poles of Γ.
pub fn recip_gamma<T: Real>(s: Complex<T>) -> Complex<T> {
    if nonpositive_integer(s).is_some() {
        return Complex::new(T::zero(), T::zero());
    }
    if s.re < lit(0.5) {
        let one = Complex::new(T::one(), T::zero());
        let pi = T::PI();
        (s * pi).sin() * gamma_right(one - s) / pi
    } else {
        gamma_right(s).inv()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type C = Complex<f64>;

    fn rel(a: C, b: C) -> f64 {
        (a - b).norm() / a.norm().max(b.norm()).max(1e-300)
    }

    /// Explicit finite sum
    /// `Σ_s C(n+α, n-s) C(n+β, s) ((z-1)/2)^s ((z+1)/2)^{n-s}`.
    fn jacobi_sum(n: usize, a: C, b: C, z: C) -> C {
        fn binom(w: C, m: usize) -> C {
            let mut acc = C::new(1.0, 0.0);
            for j in 0..m {
                acc *= (w - j as f64) / (j as f64 + 1.0);
            }
            acc
        }
        let mut total = C::new(0.0, 0.0);
        let zm = (z - 1.0) / 2.0;
        let zp = (z + 1.0) / 2.0;
        for s in 0..=n {
            total += binom(a + n as f64, n - s) * binom(b + n as f64, s) * zm.powu(s as u32) * zp.powu((n - s) as u32);
        }
        total
    }

    #[test]
    fn jacobi_low_degrees() {
        let z = C::new(0.3, 0.0);
        let zero = C::new(0.0, 0.0);
        assert_eq!(jacobi(JacobiParams::new(0, C::new(1.3, 2.0), C::new(-0.5, 0.1)), C::new(4.0, 1.0)).unwrap(), C::new(1.0, 0.0));
        let p1 = jacobi(JacobiParams::new(1, zero, zero), z).unwrap();
        assert!((p1 - z).norm() < 1e-15);
        // Legendre P₂(0.3) = (3·0.09 - 1)/2
        let p2 = jacobi(JacobiParams::new(2, zero, zero), z).unwrap();
        assert!((p2.re - (-0.365)).abs() < 1e-15);
    }

    #[test]
    fn jacobi_matches_finite_sum_example() {
        let a = C::new(1.0, 1.0);
        let b = C::new(-0.5, 0.0);
        let z = C::new(0.0, 0.7);
        let rec = jacobi(JacobiParams::new(2, a, b), z).unwrap();
        let sum = jacobi_sum(2, a, b, z);
        assert!(rel(rec, sum) < 1e-14, "{rec} vs {sum}");
    }

    #[test]
    fn jacobi_degenerate_parameters() {
        // α + β = -3: the degree-3 step divides by (n + α + β) = 0
        let err = jacobi(JacobiParams::new(3, C::new(-1.0, 0.0), C::new(-2.0, 0.0)), C::new(0.2, 0.0));
        assert!(matches!(err, Err(SpecfunError::DegenerateJacobi { degree: 3 })));
    }

    #[test]
    fn gudermannian_values() {
        assert_eq!(gudermannian(0.0f64), 0.0);
        assert!((gudermannian(30.0f64) - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
        assert!(gudermannian(1.0f64) > 0.0 && gudermannian(1.0f64) < gudermannian(2.0f64));
    }

    #[test]
    fn gamma_values() {
        let one = complex_gamma(C::new(1.0, 0.0)).unwrap();
        assert!(rel(one, C::new(1.0, 0.0)) < 1e-14);
        let half = complex_gamma(C::new(0.5, 0.0)).unwrap();
        assert!((half.re - std::f64::consts::PI.sqrt()).abs() < 1e-12);
        let gi = complex_gamma(C::new(0.0, 1.0)).unwrap();
        let pi = std::f64::consts::PI;
        assert!((gi.norm_sqr() - pi / pi.sinh()).abs() < 1e-12);
        let g5 = complex_gamma(C::new(5.0, 0.0)).unwrap();
        assert!(rel(g5, C::new(24.0, 0.0)) < 1e-13);
        let gneg = complex_gamma(C::new(-0.5, 0.0)).unwrap();
        assert!(rel(gneg, C::new(-2.0 * pi.sqrt(), 0.0)) < 1e-13);
    }

    #[test]
    fn gamma_poles() {
        for m in [0.0, -1.0, -7.0] {
            assert!(matches!(complex_gamma(C::new(m, 0.0)), Err(SpecfunError::GammaPole(_))));
            assert_eq!(recip_gamma(C::new(m, 0.0)), C::new(0.0, 0.0));
        }
        assert!(complex_gamma(C::new(-1.0, 1e-6)).is_ok());
    }

    #[test]
    fn gamma_against_factorials_and_large_arguments() {
        let mut fact = 1.0f64;
        for n in 1..20usize {
            let g = complex_gamma(C::new(n as f64, 0.0)).unwrap();
            assert!(rel(g, C::new(fact, 0.0)) < 1e-13, "n={n}");
            fact *= n as f64;
        }
        // |Γ(1/2 + iy)|² = π / cosh(πy)
        for y in [0.5, 3.0, 12.0, 19.0] {
            let g = complex_gamma(C::new(0.5, y)).unwrap();
            let pi = std::f64::consts::PI;
            let expected = pi / (pi * y).cosh();
            assert!((g.norm_sqr() - expected).abs() / expected < 1e-12, "y={y}");
        }
    }

    fn cplx(r: f64) -> impl Strategy<Value = C> {
        (-r..r, -r..r).prop_map(|(a, b)| C::new(a, b))
    }

    proptest! {
        #[test]
        fn jacobi_recurrence_vs_sum(n in 0usize..=12, a in cplx(3.0), b in cplx(3.0), z in cplx(3.0)) {
            let rec = jacobi(JacobiParams::new(n, a, b), z);
            prop_assume!(rec.is_ok());
            let rec = rec.unwrap();
            let sum = jacobi_sum(n, a, b, z);
            // cancellation scale: sum of term magnitudes
            prop_assume!(sum.norm() > 1e-6);
            prop_assert!(rel(rec, sum) <= 1e-10, "n={} a={} b={} z={} rec={} sum={}", n, a, b, z, rec, sum);
        }

        #[test]
        fn jacobi_parity(n in 0usize..=10, a in cplx(3.0), b in cplx(3.0), z in cplx(2.0)) {
            let lhs = jacobi(JacobiParams::new(n, a, b), -z);
            let rhs = jacobi(JacobiParams::new(n, b, a), z);
            prop_assume!(lhs.is_ok() && rhs.is_ok());
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let (l, r) = (lhs.unwrap(), rhs.unwrap() * sign);
            prop_assume!(l.norm() > 1e-8);
            prop_assert!(rel(l, r) <= 1e-9);
        }

        #[test]
        fn gamma_functional_equation(s in cplx(10.0)) {
            let s1 = s + 1.0;
            prop_assume!((s - s.re.round()).norm() > 1e-3 || s.re > 0.5);
            let lhs = complex_gamma(s1).unwrap();
            let rhs = complex_gamma(s).unwrap() * s;
            prop_assert!(rel(lhs, rhs) <= 1e-11, "s={} {} {}", s, lhs, rhs);
        }

        #[test]
        fn gudermannian_is_odd(x in -40.0f64..40.0) {
            prop_assert!((gudermannian(-x) + gudermannian(x)).abs() <= 1e-15);
            prop_assert!(gudermannian(x).abs() < std::f64::consts::FRAC_PI_2 + 1e-15);
        }
    }
}
