//! The Scarf II potential `V(x) = P sech²x + Q sech x tanh x` and its
//! parametrizations.
//!
//! Every instance is built from the pair `(A, B)` with
//! `P = -(B² + A² + A)` and `Q = iB(2A + 1)`. The real Hermitian form
//! `P = b² - a² - a, Q = b(2a + 1)` corresponds to `A = a, B = -ib`, the
//! PT-symmetric form `P = -(b² + a² + a), Q = ib(2a + 1)` to `A = a, B = b`.

use num_complex::Complex;

use crate::scalar::{lit, Real};

/// Absolute tolerance on imaginary (or real) parts when deciding whether a
/// parameter is real (or purely imaginary).
pub const REAL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SymmetryClass {
    /// `P` and `Q` both real.
    HermitianScarf,
    /// `P` real and `Q` purely imaginary: `V(-x)* = V(x)`.
    PtSymmetric,
    /// `A` real and positive, `B` non-real.
    Case1,
    /// `A` real and negative, `B` non-real.
    Case2,
    /// `B` real, `A` non-real.
    Case3,
    /// Anything else; no real-spectrum formula is claimed.
    Generic,
}

impl SymmetryClass {
    pub fn label(self) -> &'static str {
        match self {
            SymmetryClass::HermitianScarf => "hermitian",
            SymmetryClass::PtSymmetric => "pt-symmetric",
            SymmetryClass::Case1 => "case1",
            SymmetryClass::Case2 => "case2",
            SymmetryClass::Case3 => "case3",
            SymmetryClass::Generic => "generic",
        }
    }
}

/// The `P = -V₁, Q = iV₂` parametrization, whose PT phase is unbroken for
/// `|V₂| ≤ V₁ + 1/4`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct V1V2Params<T> {
    v1: T,
    v2: T,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ParamError {
    #[error("V1 must be positive and finite, got {0}")]
    NonPositiveV1(f64),
    #[error("parameters must be finite")]
    NonFinite,
}

impl<T: Real> V1V2Params<T> {
    pub fn new(v1: T, v2: T) -> Result<Self, ParamError> {
        if !v1.is_finite() || !v2.is_finite() {
            return Err(ParamError::NonFinite);
        }
        if v1 <= T::zero() {
            return Err(ParamError::NonPositiveV1(v1.to_f64().unwrap_or(f64::NAN)));
        }
        Ok(Self { v1, v2 })
    }

    pub fn v1(&self) -> T {
        self.v1
    }

    pub fn v2(&self) -> T {
        self.v2
    }

    /// Exceptional point `V_c = V₁ + 1/4`.
    pub fn critical(&self) -> T {
        self.v1 + lit(0.25)
    }

    pub fn is_unbroken(&self) -> bool {
        self.v2.abs() <= self.critical()
    }
}

/// How a [`ScarfParams`] was constructed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Parametrization<T> {
    General,
    Hermitian { a: T, b: T },
    PtSymmetric { a: T, b: T },
    V1V2(V1V2Params<T>),
}

/// One Scarf II instance: `(A, B)`, the derived `(P, Q)`, and its class.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScarfParams<T> {
    a: Complex<T>,
    b: Complex<T>,
    p: Complex<T>,
    q: Complex<T>,
    class: SymmetryClass,
    origin: Parametrization<T>,
}

fn derived<T: Real>(a: Complex<T>, b: Complex<T>) -> (Complex<T>, Complex<T>) {
    let one = Complex::new(T::one(), T::zero());
    let p = -(b * b + a * a + a);
    let q = Complex::<T>::i() * b * (a * lit::<T>(2.0) + one);
    (p, q)
}

impl<T: Real> ScarfParams<T> {
    /// General complex `(A, B)`; the class is inferred from the values.
    pub fn new(a: Complex<T>, b: Complex<T>) -> Self {
        let (p, q) = derived(a, b);
        let class = classify_values(a, b, p, q);
        Self { a, b, p, q, class, origin: Parametrization::General }
    }

    /// Real Hermitian Scarf II: `P = b² - a² - a`, `Q = b(2a + 1)`.
    pub fn hermitian(a: T, b: T) -> Self {
        let a_c = Complex::new(a, T::zero());
        let b_c = Complex::new(T::zero(), -b);
        let (p, q) = derived(a_c, b_c);
        Self {
            a: a_c,
            b: b_c,
            p,
            q,
            class: SymmetryClass::HermitianScarf,
            origin: Parametrization::Hermitian { a, b },
        }
    }

    /// Complex PT-symmetric Scarf II: `P = -(b² + a² + a)`, `Q = ib(2a + 1)`.
    pub fn pt_symmetric(a: T, b: T) -> Self {
        let a_c = Complex::new(a, T::zero());
        let b_c = Complex::new(b, T::zero());
        let (p, q) = derived(a_c, b_c);
        Self {
            a: a_c,
            b: b_c,
            p,
            q,
            class: SymmetryClass::PtSymmetric,
            origin: Parametrization::PtSymmetric { a, b },
        }
    }

    /// `P = -V₁`, `Q = iV₂`. `(A, B)` are recovered from
    /// `(A + 1/2 ± B)² = V_c ± V₂`; above the exceptional point they are complex.
    pub fn from_v1v2(v: V1V2Params<T>) -> Self {
        let vc = Complex::new(v.critical(), T::zero());
        let v2 = Complex::new(v.v2, T::zero());
        let s_plus = (vc + v2).sqrt();
        let s_minus = (vc - v2).sqrt();
        let half = lit::<T>(0.5);
        let u = (s_plus + s_minus) * half;
        let b = (s_plus - s_minus) * half;
        let a = u - half;
        let (p, q) = derived(a, b);
        let class = classify_values(a, b, p, q);
        Self { a, b, p, q, class, origin: Parametrization::V1V2(v) }
    }

    pub fn a(&self) -> Complex<T> {
        self.a
    }

    pub fn b(&self) -> Complex<T> {
        self.b
    }

    pub fn p(&self) -> Complex<T> {
        self.p
    }

    pub fn q(&self) -> Complex<T> {
        self.q
    }

    pub fn class(&self) -> SymmetryClass {
        self.class
    }

    pub fn origin(&self) -> Parametrization<T> {
        self.origin
    }

    /// `V_c = V₁ + 1/4` when built from [`V1V2Params`].
    pub fn exceptional_point(&self) -> Option<T> {
        match self.origin {
            Parametrization::V1V2(v) => Some(v.critical()),
            _ => None,
        }
    }

    /// The mirror potential `V(x, -B) = V(-x, B)`; flips the sign of `Q`.
    pub fn with_b_negated(&self) -> Self {
        match self.origin {
            Parametrization::Hermitian { a, b } => Self::hermitian(a, -b),
            Parametrization::PtSymmetric { a, b } => Self::pt_symmetric(a, -b),
            _ => Self::new(self.a, -self.b),
        }
    }

    pub fn a_is_real(&self) -> bool {
        is_real(self.a)
    }

    pub fn b_is_real(&self) -> bool {
        is_real(self.b)
    }

    /// `P sech²x + Q sech x tanh x`.
    pub fn eval(&self, x: T) -> Complex<T> {
        let sech = x.cosh().recip();
        let th = x.tanh();
        self.p * (sech * sech) + self.q * (sech * th)
    }

    /// `|P| + |Q|`, a scale for the potential strength.
    pub fn strength(&self) -> T {
        self.p.norm() + self.q.norm()
    }
}

pub fn make_params<T: Real>(a: Complex<T>, b: Complex<T>) -> ScarfParams<T> {
    ScarfParams::new(a, b)
}

pub fn make_params_hermitian<T: Real>(a: T, b: T) -> ScarfParams<T> {
    ScarfParams::hermitian(a, b)
}

pub fn make_params_pt<T: Real>(a: T, b: T) -> ScarfParams<T> {
    ScarfParams::pt_symmetric(a, b)
}

pub fn make_params_v1v2<T: Real>(v: V1V2Params<T>) -> ScarfParams<T> {
    ScarfParams::from_v1v2(v)
}

pub fn eval_potential<T: Real>(p: &ScarfParams<T>, x: T) -> Complex<T> {
    p.eval(x)
}

pub fn classify<T: Real>(p: &ScarfParams<T>) -> SymmetryClass {
    p.class
}

pub(crate) fn is_real<T: Real>(z: Complex<T>) -> bool {
    z.im.abs() <= lit(REAL_TOL)
}

fn is_imaginary<T: Real>(z: Complex<T>) -> bool {
    z.re.abs() <= lit(REAL_TOL)
}

/// Potential-level symmetry first (Hermitian, then PT), then the `A`/`B`
/// realness cases.
pub fn classify_values<T: Real>(
    a: Complex<T>,
    b: Complex<T>,
    p: Complex<T>,
    q: Complex<T>,
) -> SymmetryClass {
    if is_real(p) && is_real(q) {
        return SymmetryClass::HermitianScarf;
    }
    if is_real(p) && is_imaginary(q) {
        return SymmetryClass::PtSymmetric;
    }
    match (is_real(a), is_real(b)) {
        (true, false) if a.re > T::zero() => SymmetryClass::Case1,
        (true, false) if a.re < T::zero() => SymmetryClass::Case2,
        (false, true) => SymmetryClass::Case3,
        _ => SymmetryClass::Generic,
    }
}
