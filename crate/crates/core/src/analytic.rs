//! Closed-form bound-state spectra and the `p`/`q` branch algebra.
//!
//! Writing `ψ = (1 - iz)^p (1 + iz)^q f(z)` with `z = sinh x` turns the
//! Schrödinger equation into a hypergeometric one, with
//! `p² + p/2 + (P + iQ)/4 = 0` and `q² + q/2 + (P - iQ)/4 = 0`.
//! Each branch `(p, q)` carries two candidate solutions `ψ₁`, `ψ₂`; a
//! candidate of degree `n` decays like `sech^{c - n}` where `c` is its
//! decay exponent, and has energy `E = -(c - n)²`.

use num_complex::Complex;

use crate::potential::{is_real, ScarfParams, SymmetryClass};
use crate::scalar::{from_usize, lit, Real};

/// Guard for snapping a level-count limit onto an integer.
pub const INTEGER_SNAP: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    /// `p = (A + B)/2`, `q = (A - B)/2`.
    Upper,
    /// `p = -1/2 - (A + B)/2`, `q = -1/2 - (A - B)/2`.
    Lower,
}

/// Which of the two solutions attached to a branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Solution {
    /// `sech^{p+q} · e^{-i(p-q)gd} · P_n^{(-2p-1/2, -2q-1/2)}(-i sinh x)`.
    Psi1,
    /// `sech^{q-p-1/2} · e^{i(p+q+1/2)gd} · P_n^{(2p+1/2, -2q-1/2)}(-i sinh x)`.
    Psi2,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchPQ<T> {
    pub p: Complex<T>,
    pub q: Complex<T>,
    pub branch: Branch,
}

impl<T: Real> BranchPQ<T> {
    pub fn new(params: &ScarfParams<T>, branch: Branch) -> Self {
        let half = lit::<T>(0.5);
        let (a, b) = (params.a(), params.b());
        let (p, q) = match branch {
            Branch::Upper => ((a + b) * half, (a - b) * half),
            Branch::Lower => (-(a + b) * half - half, -(a - b) * half - half),
        };
        Self { p, q, branch }
    }

    /// Residuals of the two indicial equations for the given potential.
    pub fn residuals(&self, params: &ScarfParams<T>) -> (Complex<T>, Complex<T>) {
        let (half, quarter) = (lit::<T>(0.5), lit::<T>(0.25));
        let iq = Complex::<T>::i() * params.q();
        let rp = self.p * self.p + self.p * half + (params.p() + iq) * quarter;
        let rq = self.q * self.q + self.q * half + (params.p() - iq) * quarter;
        (rp, rq)
    }

    /// Asymptotic decay exponent `c` of the degree-0 solution.
    pub fn exponent(&self, which: Solution) -> Complex<T> {
        match which {
            Solution::Psi1 => self.p + self.q,
            Solution::Psi2 => self.q - self.p - lit::<T>(0.5),
        }
    }

    /// `E = -(c - n)²`.
    pub fn energy(&self, which: Solution, n: usize) -> Complex<T> {
        let d = self.exponent(which) - from_usize::<T>(n);
        -(d * d)
    }

    /// `Re c - n > 0`: the solution of degree `n` is square integrable.
    pub fn is_normalizable(&self, which: Solution, n: usize) -> bool {
        self.exponent(which).re - from_usize::<T>(n) > T::zero()
    }
}

/// Upper and lower sign choices.
pub fn branches<T: Real>(params: &ScarfParams<T>) -> (BranchPQ<T>, BranchPQ<T>) {
    (BranchPQ::new(params, Branch::Upper), BranchPQ::new(params, Branch::Lower))
}

/// Closed-form family a real level belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StateFamily {
    /// `E = -(n - A)²`, `n < A`.
    Case1,
    /// `E = -(n - (-A - 1))²`, `n < -A - 1`.
    Case2,
    /// `E = -(n - |B| + 1/2)²`, `n < |B| - 1/2`.
    Case3,
}

impl StateFamily {
    pub fn label(self) -> &'static str {
        match self {
            StateFamily::Case1 => "case1",
            StateFamily::Case2 => "case2",
            StateFamily::Case3 => "case3",
        }
    }

    /// Quasi-parity branch tag used for the two PT families.
    pub fn quasi_parity(self) -> u8 {
        match self {
            StateFamily::Case1 | StateFamily::Case2 => 1,
            StateFamily::Case3 => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundState<T> {
    pub family: StateFamily,
    pub n: usize,
    pub energy: T,
    pub branch: BranchPQ<T>,
    pub solution: Solution,
    pub params: ScarfParams<T>,
}

impl<T: Real> BoundState<T> {
    /// `κ = √(-E)`.
    pub fn kappa(&self) -> T {
        (-self.energy).sqrt()
    }

    pub fn quasi_parity(&self) -> u8 {
        self.family.quasi_parity()
    }
}

/// A level excluded because it sits exactly at the threshold `E = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ThresholdState {
    pub family: StateFamily,
    pub n: usize,
}

/// A normalizable solution whose energy is not real.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexLevel<T> {
    pub n: usize,
    pub energy: Complex<T>,
    pub branch: BranchPQ<T>,
    pub solution: Solution,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum<T> {
    pub class: SymmetryClass,
    /// Ordered by family, then ascending `n`.
    pub states: Vec<BoundState<T>>,
    pub threshold: Vec<ThresholdState>,
    /// Other square-integrable solutions, with complex energies.
    pub complex_levels: Vec<ComplexLevel<T>>,
}

impl<T: Real> Spectrum<T> {
    pub fn energies(&self) -> Vec<T> {
        self.states.iter().map(|s| s.energy).collect()
    }

    pub fn family(&self, family: StateFamily) -> Vec<BoundState<T>> {
        self.states.iter().filter(|s| s.family == family).copied().collect()
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// All energies sorted ascending.
    pub fn sorted_energies(&self) -> Vec<T> {
        let mut e = self.energies();
        e.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
        e
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AnalyticError {
    #[error("{family} spectrum needs {requirement}")]
    Precondition { family: &'static str, requirement: &'static str },
    #[error("both A and B are non-real (generic class): no real-spectrum formula applies")]
    GenericClass,
    #[error("parameters must be finite")]
    NonFinite,
}

/// Number of integers `n ≥ 0` with `n < limit`, and whether `limit` is itself
/// an integer (to within [`INTEGER_SNAP`]), i.e. a state sits at `E = 0`.
pub fn level_count<T: Real>(limit: T) -> (usize, bool) {
    let snapped = limit.round();
    let on_integer = (limit - snapped).abs() <= lit(INTEGER_SNAP);
    let eff = if on_integer { snapped } else { limit };
    if eff <= T::zero() {
        return (0, on_integer && snapped == T::zero());
    }
    let count = eff.ceil().to_usize().unwrap_or(0);
    (count, on_integer)
}

fn family_states<T: Real>(
    params: ScarfParams<T>,
    family: StateFamily,
    limit: T,
    out: &mut Spectrum<T>,
) {
    let (upper, lower) = branches(&params);
    let (branch, solution) = match family {
        StateFamily::Case1 => (upper, Solution::Psi1),
        StateFamily::Case2 => (lower, Solution::Psi1),
        StateFamily::Case3 if params.b().re >= T::zero() => (lower, Solution::Psi2),
        StateFamily::Case3 => (upper, Solution::Psi2),
    };
    let (count, at_threshold) = level_count(limit);
    for n in 0..count {
        let d = from_usize::<T>(n) - limit;
        out.states.push(BoundState { family, n, energy: -(d * d), branch, solution, params });
    }
    if at_threshold {
        out.threshold.push(ThresholdState { family, n: count });
    }
}

fn empty<T: Real>(class: SymmetryClass) -> Spectrum<T> {
    Spectrum { class, states: Vec::new(), threshold: Vec::new(), complex_levels: Vec::new() }
}

fn check_finite<T: Real>(z: Complex<T>) -> Result<(), AnalyticError> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(AnalyticError::NonFinite)
    }
}

/// `E_n = -(n - A)²` for `0 ≤ n < A`.
pub fn spectrum_case1<T: Real>(a: T, b: Complex<T>) -> Result<Spectrum<T>, AnalyticError> {
    check_finite(b)?;
    if !(a > T::zero()) {
        return Err(AnalyticError::Precondition { family: "case1", requirement: "real A > 0" });
    }
    let params = ScarfParams::new(Complex::new(a, T::zero()), b);
    let mut s = empty(params.class());
    family_states(params, StateFamily::Case1, a, &mut s);
    Ok(s)
}

/// `E_n = -(n - (-A - 1))²` for `0 ≤ n < -A - 1`.
pub fn spectrum_case2<T: Real>(a: T, b: Complex<T>) -> Result<Spectrum<T>, AnalyticError> {
    check_finite(b)?;
    if !(a < T::zero()) {
        return Err(AnalyticError::Precondition { family: "case2", requirement: "real A < 0" });
    }
    let params = ScarfParams::new(Complex::new(a, T::zero()), b);
    let mut s = empty(params.class());
    family_states(params, StateFamily::Case2, -a - T::one(), &mut s);
    Ok(s)
}

/// `E_n = -(n - |B| + 1/2)²` for `0 ≤ n < |B| - 1/2`; even in `B`.
pub fn spectrum_case3<T: Real>(a: Complex<T>, b: T) -> Result<Spectrum<T>, AnalyticError> {
    check_finite(a)?;
    if !b.is_finite() {
        return Err(AnalyticError::NonFinite);
    }
    let params = ScarfParams::new(a, Complex::new(b, T::zero()));
    let mut s = empty(params.class());
    family_states(params, StateFamily::Case3, b.abs() - lit(0.5), &mut s);
    Ok(s)
}

/// Both real: branch 1 (`Case1` for `A > 0`, `Case2` for `A < 0`) and
/// branch 2 (`Case3`).
pub fn spectrum_pt<T: Real>(a: T, b: T) -> Result<Spectrum<T>, AnalyticError> {
    if !a.is_finite() || !b.is_finite() {
        return Err(AnalyticError::NonFinite);
    }
    let params = ScarfParams::new(Complex::new(a, T::zero()), Complex::new(b, T::zero()));
    Ok(pt_spectrum(params, a, b))
}

fn pt_spectrum<T: Real>(params: ScarfParams<T>, a: T, b: T) -> Spectrum<T> {
    let mut s = empty(params.class());
    if a >= T::zero() {
        family_states(params, StateFamily::Case1, a, &mut s);
    } else {
        family_states(params, StateFamily::Case2, -a - T::one(), &mut s);
    }
    family_states(params, StateFamily::Case3, b.abs() - lit(0.5), &mut s);
    s
}

/// Every square-integrable candidate `(branch, ψ₁/ψ₂, n)`, real energies included.
pub fn normalizable_levels<T: Real>(params: &ScarfParams<T>) -> Vec<ComplexLevel<T>> {
    let (upper, lower) = branches(params);
    let mut out = Vec::new();
    for br in [upper, lower] {
        for which in [Solution::Psi1, Solution::Psi2] {
            let mut n = 0;
            while br.is_normalizable(which, n) {
                out.push(ComplexLevel { n, energy: br.energy(which, n), branch: br, solution: which });
                n += 1;
            }
        }
    }
    out
}

/// Spectrum of any non-generic instance, dispatched on the realness of `A`
/// and `B`. Normalizable solutions with non-real energy are attached as
/// `complex_levels`. A symmetric potential with both `A` and `B` non-real
/// (broken PT phase) has no real family and only complex levels.
pub fn spectrum<T: Real>(params: &ScarfParams<T>) -> Result<Spectrum<T>, AnalyticError> {
    let (a, b) = (params.a(), params.b());
    check_finite(a)?;
    check_finite(b)?;
    let mut s = match (is_real(a), is_real(b)) {
        (true, true) => pt_spectrum(*params, a.re, b.re),
        (true, false) => {
            let mut s = empty(params.class());
            if a.re >= T::zero() {
                family_states(*params, StateFamily::Case1, a.re, &mut s);
            } else {
                family_states(*params, StateFamily::Case2, -a.re - T::one(), &mut s);
            }
            s
        }
        (false, true) => {
            let mut s = empty(params.class());
            family_states(*params, StateFamily::Case3, b.re.abs() - lit(0.5), &mut s);
            s
        }
        (false, false) if params.class() == SymmetryClass::Generic => return Err(AnalyticError::GenericClass),
        (false, false) => empty(params.class()),
    };
    let tol = lit::<T>(1e-9);
    s.complex_levels = normalizable_levels(params)
        .into_iter()
        .filter(|l| l.energy.im.abs() > tol * (T::one() + l.energy.norm()))
        .collect();
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type C = Complex<f64>;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    fn assert_levels(got: &[f64], want: &[f64], tol: f64) {
        assert_eq!(got.len(), want.len(), "{got:?} vs {want:?}");
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() <= tol, "{got:?} vs {want:?}");
        }
    }

    #[test]
    fn branch_values() {
        let p = ScarfParams::new(c(2.7, 0.0), c(1.2, 1.4));
        let (up, lo) = branches(&p);
        assert!((up.p - c(1.95, 0.7)).norm() < 1e-14);
        assert!((up.p + lo.p - c(-0.5, 0.0)).norm() < 1e-14);
        assert!((up.q + lo.q - c(-0.5, 0.0)).norm() < 1e-14);
        let zero = ScarfParams::new(c(0.0, 0.0), c(0.0, 0.0));
        let (up, _) = branches(&zero);
        assert_eq!((up.p, up.q), (c(0.0, 0.0), c(0.0, 0.0)));
    }

    #[test]
    fn case1_levels() {
        let s = spectrum_case1(2.7, c(1.2, 1.4)).unwrap();
        assert_levels(&s.energies(), &[-7.29, -2.89, -0.49], 1e-12);
        assert!(s.threshold.is_empty());
        assert_levels(&spectrum_case1(0.5, c(0.0, 3.0)).unwrap().energies(), &[-0.25], 0.0);
        let s = spectrum_case1(3.0, c(1.0, 1.0)).unwrap();
        assert_levels(&s.energies(), &[-9.0, -4.0, -1.0], 0.0);
        assert_eq!(s.threshold, vec![ThresholdState { family: StateFamily::Case1, n: 3 }]);
        assert_eq!(spectrum_case1(3.0 + 1e-13, c(1.0, 1.0)).unwrap().len(), 3);
        assert!(spectrum_case1(-1.0, c(1.0, 1.0)).is_err());
    }

    #[test]
    fn case2_levels() {
        let s = spectrum_case2(-2.7, c(1.2, 1.4)).unwrap();
        assert_levels(&s.energies(), &[-2.89, -0.49], 1e-12);
        assert!(spectrum_case2(-0.5, c(1.0, 1.0)).unwrap().is_empty());
        assert_eq!(spectrum_case1(2.7, c(1.2, 1.4)).unwrap().len(), s.len() + 1);
        assert!(spectrum_case2(0.5, c(1.0, 1.0)).is_err());
    }

    #[test]
    fn case3_levels() {
        let s = spectrum_case3(c(-2.3, 1.1), 3.1).unwrap();
        assert_levels(&s.energies(), &[-6.76, -2.56, -0.36], 1e-12);
        let m = spectrum_case3(c(-2.3, 1.1), -3.1).unwrap();
        assert_eq!(s.energies(), m.energies());
        assert!(spectrum_case3(c(-2.3, 1.1), 0.4).unwrap().is_empty());
    }

    #[test]
    fn pt_two_branches() {
        let s = spectrum_pt(1.9, 1.2).unwrap();
        let b1: Vec<f64> = s.family(StateFamily::Case1).iter().map(|x| x.energy).collect();
        let b2: Vec<f64> = s.family(StateFamily::Case3).iter().map(|x| x.energy).collect();
        assert_levels(&b1, &[-3.61, -0.81], 1e-12);
        assert_levels(&b2, &[-0.49], 1e-12);
        assert!(s.states.iter().all(|x| x.quasi_parity() == if x.family == StateFamily::Case3 { 2 } else { 1 }));
        assert!(spectrum_pt(2.0, 0.0).unwrap().family(StateFamily::Case3).is_empty());
        let small = spectrum_pt(0.3, 0.3).unwrap();
        assert_levels(&small.energies(), &[-0.09], 1e-15);
    }

    #[test]
    fn dispatch_and_refusal() {
        let f1 = ScarfParams::new(c(2.7, 0.0), c(1.2, 1.4));
        let s = spectrum(&f1).unwrap();
        assert_eq!(s.len(), 3);
        // lower-branch ψ₂ converges with E = -(B - 1/2)²
        assert_eq!(s.complex_levels.len(), 1);
        assert!((s.complex_levels[0].energy - c(1.47, -1.96)).norm() < 1e-12);
        let f3 = ScarfParams::new(c(-2.3, 1.1), c(3.1, 0.0));
        let s3 = spectrum(&f3).unwrap();
        assert_levels(&s3.energies(), &[-6.76, -2.56, -0.36], 1e-12);
        assert!(s3.complex_levels.iter().any(|l| (l.energy - c(-0.48, 2.86)).norm() < 1e-12));
        let generic = ScarfParams::new(c(1.0, 1.0), c(1.0, 1.0));
        assert_eq!(spectrum(&generic), Err(AnalyticError::GenericClass));
        let herm = ScarfParams::hermitian(2.0, 1.0);
        assert_levels(&spectrum(&herm).unwrap().energies(), &[-4.0, -1.0], 1e-15);
    }

    #[test]
    fn broken_phase_has_only_conjugate_levels() {
        let p = ScarfParams::from_v1v2(crate::potential::V1V2Params::new(6.0, 7.0).unwrap());
        let s = spectrum(&p).unwrap();
        assert!(s.is_empty());
        let e: Vec<C> = s.complex_levels.iter().map(|l| l.energy).collect();
        let target = c(-1.554973, 1.143177);
        assert!(e.iter().any(|z| (z - target).norm() < 1e-5), "{e:?}");
        assert!(e.iter().any(|z| (z - target.conj()).norm() < 1e-5), "{e:?}");
    }

    #[test]
    fn family_solution_exponents_match_formulas() {
        let f1 = ScarfParams::new(c(2.7, 0.0), c(1.2, 1.4));
        for st in spectrum(&f1).unwrap().states {
            let e = st.branch.energy(st.solution, st.n);
            assert!((e - c(st.energy, 0.0)).norm() < 1e-12);
        }
        for b in [3.1, -3.1] {
            let p = ScarfParams::new(c(-2.3, 1.1), c(b, 0.0));
            for st in spectrum(&p).unwrap().states {
                let e = st.branch.energy(st.solution, st.n);
                assert!((e - c(st.energy, 0.0)).norm() < 1e-12);
                assert!(st.branch.is_normalizable(st.solution, st.n));
            }
        }
    }

    fn brute(limit: f64) -> usize {
        (0..100).filter(|&n| (n as f64) < limit).count()
    }

    proptest! {
        #[test]
        fn indicial_residuals(ar in -4.0f64..4.0, ai in -4.0f64..4.0, br in -4.0f64..4.0, bi in -4.0f64..4.0) {
            let p = ScarfParams::new(c(ar, ai), c(br, bi));
            let (up, lo) = branches(&p);
            for b in [up, lo] {
                let (rp, rq) = b.residuals(&p);
                prop_assert!(rp.norm() <= 1e-12 && rq.norm() <= 1e-12);
            }
        }

        #[test]
        fn count_laws(a in 0.001f64..12.0) {
            let n1 = spectrum_case1(a, c(1.0, 0.5)).unwrap().len();
            prop_assert_eq!(n1, ((a - 1.0).ceil() + 1.0) as usize);
            prop_assert_eq!(n1, brute(a));
            let n2 = spectrum_case2(-a, c(1.0, 0.5)).unwrap().len();
            prop_assert_eq!(n2, ((a - 2.0).ceil() + 1.0).max(0.0) as usize);
            prop_assert_eq!(n2, brute(a - 1.0));
        }

        #[test]
        fn levels_negative_and_distinct(a in -8.0f64..8.0, b in -8.0f64..8.0) {
            let s = spectrum_pt(a, b).unwrap();
            for fam in [StateFamily::Case1, StateFamily::Case2, StateFamily::Case3] {
                let e: Vec<f64> = s.family(fam).iter().map(|x| x.energy).collect();
                for w in e.windows(2) {
                    prop_assert!(w[0] < w[1]);
                }
                prop_assert!(e.iter().all(|&x| x < 0.0));
            }
        }

        #[test]
        fn case3_even_in_b(ar in -4.0f64..4.0, ai in 0.1f64..4.0, b in -8.0f64..8.0) {
            let s = spectrum_case3(c(ar, ai), b).unwrap();
            let m = spectrum_case3(c(ar, ai), -b).unwrap();
            prop_assert_eq!(s.energies(), m.energies());
        }
    }

    proptest! {
        #[test]
        fn branch_roots_sum_to_minus_half(ar in -5.0f64..5.0, ai in -5.0f64..5.0, br in -5.0f64..5.0, bi in -5.0f64..5.0) {
            let (up, lo) = branches(&ScarfParams::new(c(ar, ai), c(br, bi)));
            prop_assert!((up.p + lo.p + 0.5).norm() <= 1e-12);
            prop_assert!((up.q + lo.q + 0.5).norm() <= 1e-12);
        }
    }
}
