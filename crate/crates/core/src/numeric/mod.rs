//! Numerical Schrödinger machinery used as an independent check on the
//! closed forms: a fourth-order Magnus integrator, Jost solutions and their
//! Wronskian, Muller refinement, quadrature and a square-well reference.

pub mod integrator;
pub mod jost;
pub mod muller;
pub mod quadrature;
pub mod search;
pub mod square_well;

use num_complex::Complex;

use crate::potential::ScarfParams;
use crate::scalar::{from_usize, lit, Real};

pub use integrator::{integrate, Integration};
pub use jost::{JostConfig, JostSolver, JostValue, WronskianValue};
pub use muller::{muller, MullerResult};
pub use quadrature::{appendix_identity, orthogonality_matrix, simpson, OrthogonalityMatrix, QuadratureError};
pub use search::{find_bound_states, NumericLevel, NumericSpectrum};
pub use square_well::{square_well_amplitudes, square_well_amplitudes_at, square_well_reference, SquareWell};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `x → -∞`, expansion variable `u = e^{x}`.
    Left,
    /// `x → +∞`, expansion variable `u = e^{-x}`.
    Right,
}

/// A one-dimensional potential together with an exact description of its
/// tails, `V(x) = Σ_{m≥1} v_m e^{-m|x|}` for `|x| ≥ tail_start()`.
pub trait Potential<T: Real>: Sync {
    fn value(&self, x: T) -> Complex<T>;

    /// `v_1, …, v_terms` on the given side.
    fn tail_coefficients(&self, side: Side, terms: usize) -> Vec<Complex<T>>;

    /// Distance beyond which [`Potential::tail_coefficients`] is exact.
    fn tail_start(&self) -> T {
        T::zero()
    }

    /// A lower bound suggestion for bound-state energy scans.
    fn scan_floor(&self) -> T;
}

impl<T: Real> Potential<T> for ScarfParams<T> {
    fn value(&self, x: T) -> Complex<T> {
        self.eval(x)
    }

    /// `sech² = 4Σ(-1)ⁿ(n+1)u^{2n+2}`, `sech·tanh = ±2Σ(-1)ⁿ(2n+1)u^{2n+1}`.
    fn tail_coefficients(&self, side: Side, terms: usize) -> Vec<Complex<T>> {
        let q = match side {
            Side::Right => self.q(),
            Side::Left => -self.q(),
        };
        let mut v = vec![Complex::new(T::zero(), T::zero()); terms];
        for (idx, slot) in v.iter_mut().enumerate() {
            let m = idx + 1;
            let n = (m - 1) / 2;
            let sign = if n % 2 == 0 { T::one() } else { -T::one() };
            *slot = if m % 2 == 0 {
                self.p() * (lit::<T>(4.0) * sign * from_usize::<T>(n + 1))
            } else {
                q * (lit::<T>(2.0) * sign * from_usize::<T>(2 * n + 1))
            };
        }
        v
    }

    /// `-(|A| + |B| + 1)²`.
    fn scan_floor(&self) -> T {
        let s = self.a().norm() + self.b().norm() + T::one();
        -(s * s)
    }
}

/// `V ≡ 0`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct FreeParticle;

impl<T: Real> Potential<T> for FreeParticle {
    fn value(&self, _x: T) -> Complex<T> {
        Complex::new(T::zero(), T::zero())
    }

    fn tail_coefficients(&self, _side: Side, terms: usize) -> Vec<Complex<T>> {
        vec![Complex::new(T::zero(), T::zero()); terms]
    }

    fn scan_floor(&self) -> T {
        -T::one()
    }
}

/// Solution `e^{λx}(1 + s(x))` of `ψ'' = (V - E)ψ`, `λ² = -E`, with
/// `s = Σ_{j≥1} a_j u^j` built from the tail series.
#[derive(Debug, Clone)]
pub(crate) struct TailSeries<T> {
    coef: Vec<Complex<T>>,
    side: Side,
}

pub(crate) const TAIL_TERMS: usize = 48;

impl<T: Real> TailSeries<T> {
    /// `v` are the tail coefficients of the side; `lambda` the exponent.
    pub(crate) fn new(v: &[Complex<T>], side: Side, lambda: Complex<T>) -> Self {
        // right: a_j j(j - 2λ) = Σ v_m a_{j-m}; left: b_j j(j + 2λ) = Σ v_m b_{j-m}
        let mu = match side {
            Side::Right => lambda,
            Side::Left => -lambda,
        };
        let mut coef = vec![Complex::new(T::one(), T::zero())];
        for j in 1..=v.len() {
            let jf = from_usize::<T>(j);
            let mut acc = Complex::new(T::zero(), T::zero());
            for m in 1..=j {
                acc = acc + v[m - 1] * coef[j - m];
            }
            let denom = (Complex::new(jf, T::zero()) - mu * lit::<T>(2.0)) * jf;
            coef.push(acc / denom);
        }
        Self { coef, side }
    }

    /// `(s, s')` at `x`.
    pub(crate) fn eval(&self, x: T) -> (Complex<T>, Complex<T>) {
        let u = match self.side {
            Side::Right => (-x).exp(),
            Side::Left => x.exp(),
        };
        let mut s = Complex::new(T::zero(), T::zero());
        let mut ds = Complex::new(T::zero(), T::zero());
        let mut pow = T::one();
        let eps = lit::<T>(1e-18);
        for (j, c) in self.coef.iter().enumerate().skip(1) {
            pow = pow * u;
            let term = c * pow;
            s = s + term;
            ds = ds + term * from_usize::<T>(j);
            if term.norm() * from_usize::<T>(j) <= eps * (T::one() + s.norm()) && j > 2 {
                break;
            }
        }
        if self.side == Side::Right {
            ds = -ds;
        }
        (s, ds)
    }
}
