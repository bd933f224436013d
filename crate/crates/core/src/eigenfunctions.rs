//! Closed-form eigenfunctions, grid sampling and normalization.
//!
//! All solutions have the shape
//! `sech^c(x) · exp(iφ·gd(x)) · P_n^{(α, β)}(-i sinh x)`, with `gd` the
//! Gudermannian. The complex power is taken as `exp(c · ln sech x)` with a
//! real logarithm, so it is single valued on the real line.

use num_complex::Complex;
use rayon::prelude::*;

use crate::analytic::{BoundState, BranchPQ, ComplexLevel, Solution};
use crate::numeric::quadrature::simpson;
use crate::numeric::Potential;
use crate::potential::ScarfParams;
use crate::scalar::{from_usize, lit, Real};
use crate::specfun::{gudermannian, jacobi, JacobiParams, SpecfunError};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EigenError {
    #[error("n = {n} is outside the admissible range n < {limit}")]
    OutOfRange { n: usize, limit: f64 },
    #[error("{0}")]
    Precondition(&'static str),
    #[error(transparent)]
    Jacobi(#[from] SpecfunError),
    #[error("grid needs L > 0 and 0 < h < L, got L = {l}, h = {h}")]
    BadGrid { l: f64, h: f64 },
}

/// `ln sech x`, without overflow for large `|x|`.
pub fn ln_sech<T: Real>(x: T) -> T {
    let ax = x.abs();
    lit::<T>(2.0).ln() - ax - (-(ax + ax)).exp().ln_1p()
}

fn shape<T: Real>(
    c: Complex<T>,
    phase: Complex<T>,
    jp: JacobiParams<T>,
    x: T,
) -> Result<Complex<T>, SpecfunError> {
    let z = Complex::new(T::zero(), -x.sinh());
    let poly = jacobi(jp, z)?;
    let gd = gudermannian(x);
    let expo = c * ln_sech(x) + Complex::<T>::i() * phase * gd;
    Ok(expo.exp() * poly)
}

fn check_n<T: Real>(n: usize, limit: T) -> Result<(), EigenError> {
    if from_usize::<T>(n) < limit {
        Ok(())
    } else {
        Err(EigenError::OutOfRange { n, limit: limit.to_f64().unwrap_or(f64::NAN) })
    }
}

fn cr<T: Real>(x: T) -> Complex<T> {
    Complex::new(x, T::zero())
}

/// Case 1 (`A > 0`):
/// `sech^A x · e^{-iB gd x} · P_n^{(-A-B-1/2, -A+B-1/2)}(-i sinh x)`.
pub fn psi_case1<T: Real>(a: T, b: Complex<T>, n: usize, x: T) -> Result<Complex<T>, EigenError> {
    if !(a > T::zero()) {
        return Err(EigenError::Precondition("case 1 needs A > 0"));
    }
    check_n(n, a)?;
    let half = cr(lit::<T>(0.5));
    let a_c = cr(a);
    let jp = JacobiParams::new(n, -a_c - b - half, -a_c + b - half);
    Ok(shape(a_c, -b, jp, x)?)
}

/// Case 2 (`A < 0`):
/// `sech^{-A-1} x · e^{iB gd x} · P_n^{(A+B+1/2, A-B+1/2)}(-i sinh x)`.
pub fn psi_case2<T: Real>(a: T, b: Complex<T>, n: usize, x: T) -> Result<Complex<T>, EigenError> {
    if !(a < T::zero()) {
        return Err(EigenError::Precondition("case 2 needs A < 0"));
    }
    check_n(n, -a - T::one())?;
    let half = cr(lit::<T>(0.5));
    let a_c = cr(a);
    let jp = JacobiParams::new(n, a_c + b + half, a_c - b + half);
    Ok(shape(-a_c - cr(T::one()), b, jp, x)?)
}

/// Case 3 (`B` real), `B ≥ 0`:
/// `sech^{B-1/2} x · e^{-i(A+1/2) gd x} · P_n^{(-A-B-1/2, A-B+1/2)}(-i sinh x)`;
/// for `B < 0` the mirror image `(-1)^n ψ_{|B|}(-x)`.
pub fn psi_case3<T: Real>(a: Complex<T>, b: T, n: usize, x: T) -> Result<Complex<T>, EigenError> {
    let half = cr(lit::<T>(0.5));
    check_n(n, b.abs() - lit(0.5))?;
    let b_c = cr(b);
    if b >= T::zero() {
        let jp = JacobiParams::new(n, -a - b_c - half, a - b_c + half);
        Ok(shape(b_c - half, -(a + half), jp, x)?)
    } else {
        let jp = JacobiParams::new(n, a + b_c + half, -a + b_c - half);
        Ok(shape(-b_c - half, a + half, jp, x)?)
    }
}

/// Value of `ψ₁` or `ψ₂` together with whether that solution is square
/// integrable for the given `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneralValue<T> {
    pub value: Complex<T>,
    pub divergent: bool,
}

/// `ψ₁ = sech^{p+q} · e^{-i(p-q) gd} · P_n^{(-2p-1/2, -2q-1/2)}(-i sinh x)`,
/// `ψ₂ = sech^{q-p-1/2} · e^{i(p+q+1/2) gd} · P_n^{(2p+1/2, -2q-1/2)}(-i sinh x)`.
pub fn psi_general<T: Real>(
    branch: &BranchPQ<T>,
    n: usize,
    x: T,
    which: Solution,
) -> Result<GeneralValue<T>, EigenError> {
    let half = cr(lit::<T>(0.5));
    let two = lit::<T>(2.0);
    let (p, q) = (branch.p, branch.q);
    let value = match which {
        Solution::Psi1 => {
            let jp = JacobiParams::new(n, -p * two - half, -q * two - half);
            shape(p + q, -(p - q), jp, x)?
        }
        Solution::Psi2 => {
            let jp = JacobiParams::new(n, p * two + half, -q * two - half);
            shape(q - p - half, p + q + half, jp, x)?
        }
    };
    Ok(GeneralValue { value, divergent: !branch.is_normalizable(which, n) })
}

/// A closed-form solution ready for evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigenstate<T> {
    pub params: ScarfParams<T>,
    pub branch: BranchPQ<T>,
    pub solution: Solution,
    pub n: usize,
    pub energy: Complex<T>,
}

impl<T: Real> Eigenstate<T> {
    pub fn from_bound(state: &BoundState<T>) -> Self {
        Self {
            params: state.params,
            branch: state.branch,
            solution: state.solution,
            n: state.n,
            energy: cr(state.energy),
        }
    }

    pub fn from_level(params: &ScarfParams<T>, level: &ComplexLevel<T>) -> Self {
        Self {
            params: *params,
            branch: level.branch,
            solution: level.solution,
            n: level.n,
            energy: level.energy,
        }
    }

    pub fn eval(&self, x: T) -> Result<Complex<T>, EigenError> {
        Ok(psi_general(&self.branch, self.n, x, self.solution)?.value)
    }

    pub fn is_normalizable(&self) -> bool {
        self.branch.is_normalizable(self.solution, self.n)
    }

    /// `Re c - n`: the tails fall off like `e^{-rate·|x|}`.
    pub fn decay_rate(&self) -> T {
        self.branch.exponent(self.solution).re - from_usize::<T>(self.n)
    }

    /// Smallest half-width (at least 15, on a 0.5 grid) at which both tail
    /// samples are below `ratio` times the peak modulus.
    pub fn recommended_half_width(&self, ratio: T) -> T {
        let rate = self.decay_rate();
        if rate <= T::zero() {
            return T::infinity();
        }
        let start = (-ratio.ln() / rate).max(lit(15.0));
        let mag = |x: T| self.eval(x).map(|z| z.norm()).unwrap_or_else(|_| T::nan());
        let step = lit::<T>(0.05);
        let n = (start / step).ceil().to_usize().unwrap_or(0);
        let peak = (0..=2 * n)
            .map(|i| mag(-start + from_usize::<T>(i) * step))
            .fold(T::zero(), |a, b| a.max(b));
        if !(peak > T::zero()) {
            return start;
        }
        let mut l = (start * lit(2.0)).ceil() * lit(0.5);
        for _ in 0..2000 {
            if mag(l).max(mag(-l)) <= ratio * peak {
                return l;
            }
            l = l + lit(0.5);
        }
        l
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormMode {
    /// `∫ψ² dx = 1` (no conjugation, principal root).
    SelfProductUnit,
    /// The sample of largest modulus is exactly `1`.
    MaxAbsUnit,
}

/// Samples on `x_i = -L + i·h`, `i = 0..=N` with `N` even.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveGrid<T> {
    pub l: T,
    pub h: T,
    pub x: Vec<T>,
    pub psi: Vec<Complex<T>>,
    /// Normalization actually applied.
    pub norm_mode: NormMode,
    /// `SelfProductUnit` was requested but `|∫ψ²|` was too small.
    pub fell_back: bool,
    /// The raw samples were divided by this.
    pub scale: Complex<T>,
    pub state: Eigenstate<T>,
}

/// Threshold on `|∫ψ²| / ∫|ψ|²` below which the self-product is not used.
pub const SELF_PRODUCT_FLOOR: f64 = 1e-8;

/// Number of intervals for `[-L, L]`: the smallest even `N ≥ 2L/h`.
pub fn grid_intervals<T: Real>(l: T, h: T) -> Result<usize, EigenError> {
    if !(l > T::zero() && h > T::zero() && h < l && l.is_finite()) {
        return Err(EigenError::BadGrid {
            l: l.to_f64().unwrap_or(f64::NAN),
            h: h.to_f64().unwrap_or(f64::NAN),
        });
    }
    let raw = ((l + l) / h - lit(1e-9)).ceil().to_usize().unwrap_or(2).max(2);
    Ok(raw + raw % 2)
}

/// Samples `state` on `[-L, L]`; `h` is shrunk if needed so the number of
/// samples is odd.
pub fn sample<T: Real>(state: &Eigenstate<T>, l: T, h: T, mode: NormMode) -> Result<WaveGrid<T>, EigenError> {
    let n = grid_intervals(l, h)?;
    let h = (l + l) / from_usize::<T>(n);
    let x: Vec<T> = (0..=n).map(|i| -l + from_usize::<T>(i) * h).collect();
    let psi: Vec<Complex<T>> = x
        .par_iter()
        .map(|&xi| state.eval(xi))
        .collect::<Result<Vec<_>, _>>()?;
    let mut grid = WaveGrid {
        l,
        h,
        x,
        psi,
        norm_mode: mode,
        fell_back: false,
        scale: cr(T::one()),
        state: *state,
    };
    grid.normalize(mode);
    Ok(grid)
}

impl<T: Real> WaveGrid<T> {
    fn normalize(&mut self, mode: NormMode) {
        let scale = match mode {
            NormMode::SelfProductUnit => {
                let sq: Vec<Complex<T>> = self.psi.iter().map(|z| z * z).collect();
                let abs: Vec<Complex<T>> = self.psi.iter().map(|z| cr(z.norm_sqr())).collect();
                let ip = simpson(&sq, self.h);
                let mass = simpson(&abs, self.h).re;
                if ip.norm() < lit::<T>(SELF_PRODUCT_FLOOR) * mass {
                    self.fell_back = true;
                    self.norm_mode = NormMode::MaxAbsUnit;
                    self.peak_value()
                } else {
                    self.norm_mode = NormMode::SelfProductUnit;
                    ip.sqrt()
                }
            }
            NormMode::MaxAbsUnit => {
                self.norm_mode = NormMode::MaxAbsUnit;
                self.peak_value()
            }
        };
        for z in self.psi.iter_mut() {
            *z = *z / scale;
        }
        self.scale = self.scale * scale;
    }

    fn peak_value(&self) -> Complex<T> {
        self.psi[self.peak_index()]
    }

    pub fn peak_index(&self) -> usize {
        let mut best = 0;
        for (i, z) in self.psi.iter().enumerate() {
            if z.norm() > self.psi[best].norm() {
                best = i;
            }
        }
        best
    }

    pub fn len(&self) -> usize {
        self.psi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.psi.is_empty()
    }

    pub fn max_abs(&self) -> T {
        self.psi.iter().fold(T::zero(), |m, z| m.max(z.norm()))
    }

    /// `max(|ψ(-L)|, |ψ(L)|) / max|ψ|`.
    pub fn tail_ratio(&self) -> T {
        let first = self.psi[0].norm();
        let last = self.psi[self.psi.len() - 1].norm();
        first.max(last) / self.max_abs()
    }

    /// `∫ψ² dx` by Simpson's rule.
    pub fn self_product(&self) -> Complex<T> {
        let sq: Vec<Complex<T>> = self.psi.iter().map(|z| z * z).collect();
        simpson(&sq, self.h)
    }
}

/// `max|ψ'' + (E - V)ψ| / max|ψ|` on the grid `x_lo..x_hi` with step `h`,
/// with five-point second differences.
pub fn residual<T: Real>(state: &Eigenstate<T>, x_lo: T, x_hi: T, h: T) -> Result<T, EigenError> {
    residual_in(state, &state.params, x_lo, x_hi, h)
}

/// [`residual`] against an arbitrary potential `V`.
pub fn residual_in<T: Real, P: Potential<T> + ?Sized>(
    state: &Eigenstate<T>,
    pot: &P,
    x_lo: T,
    x_hi: T,
    h: T,
) -> Result<T, EigenError> {
    let n = ((x_hi - x_lo) / h).round().to_usize().unwrap_or(0);
    let vals: Vec<Complex<T>> = (0..=n)
        .into_par_iter()
        .map(|i| state.eval(x_lo + from_usize::<T>(i) * h))
        .collect::<Result<Vec<_>, _>>()?;
    let h2 = h * h * lit(12.0);
    let mut worst = T::zero();
    let mut peak = T::zero();
    for (i, v) in vals.iter().enumerate() {
        peak = peak.max(v.norm());
        if i < 2 || i + 2 > n {
            continue;
        }
        let xi = x_lo + from_usize::<T>(i) * h;
        let d2 = (-vals[i - 2] + vals[i - 1] * lit::<T>(16.0) - vals[i] * lit::<T>(30.0)
            + vals[i + 1] * lit::<T>(16.0)
            - vals[i + 2])
            / h2;
        let r = d2 + (state.energy - pot.value(xi)) * vals[i];
        worst = worst.max(r.norm());
    }
    Ok(worst / peak)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::{branches, spectrum, Branch};
    use proptest::prelude::*;

    type C = Complex<f64>;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    fn fig1() -> ScarfParams<f64> {
        ScarfParams::new(c(2.7, 0.0), c(1.2, 1.4))
    }
    fn fig2() -> ScarfParams<f64> {
        ScarfParams::new(c(-2.7, 0.0), c(1.2, 1.4))
    }
    fn fig3(b: f64) -> ScarfParams<f64> {
        ScarfParams::new(c(-2.3, 1.1), c(b, 0.0))
    }

    #[test]
    fn unit_at_origin() {
        assert_eq!(psi_case1(2.7, c(1.2, 1.4), 0, 0.0).unwrap(), c(1.0, 0.0));
        assert_eq!(psi_case2(-2.7, c(1.2, 1.4), 0, 0.0).unwrap(), c(1.0, 0.0));
        assert_eq!(psi_case3(c(-2.3, 1.1), 3.1, 0, 0.0).unwrap(), c(1.0, 0.0));
        assert!(psi_case1(2.7, c(1.2, 1.4), 3, 0.0).is_err());
        assert!(psi_case2(-2.7, c(1.2, 1.4), 2, 0.0).is_err());
    }

    #[test]
    fn residuals_of_figure_states() {
        for p in [fig1(), fig2(), fig3(3.1), fig3(-3.1), ScarfParams::pt_symmetric(1.9, 1.2)] {
            for st in spectrum(&p).unwrap().states {
                let e = Eigenstate::from_bound(&st);
                let r = residual(&e, -12.0, 12.0, 1e-3).unwrap();
                assert!(r <= 1e-5, "{:?} n={} r={r}", st.family, st.n);
            }
        }
    }

    #[test]
    fn case_formulas_match_general() {
        let f1 = fig1();
        let (up, lo) = branches(&f1);
        let f2 = fig2();
        let (up2, lo2) = branches(&f2);
        for x in [-6.0, -1.3, 0.0, 0.4, 3.3, 9.0] {
            for n in 0..3 {
                let a = psi_case1(2.7, f1.b(), n, x).unwrap();
                let g = psi_general(&up, n, x, Solution::Psi1).unwrap();
                assert!((a - g.value).norm() <= 1e-12 * a.norm().max(1e-300));
                assert!(!g.divergent);
            }
            for n in 0..2 {
                let a = psi_case2(-2.7, f2.b(), n, x).unwrap();
                let g = psi_general(&lo2, n, x, Solution::Psi1).unwrap();
                assert!((a - g.value).norm() <= 1e-12 * a.norm().max(1e-300));
            }
            for b in [3.1, -3.1] {
                let p = fig3(b);
                let (u, l) = branches(&p);
                let br = if b > 0.0 { l } else { u };
                for n in 0..3 {
                    let a = psi_case3(p.a(), b, n, x).unwrap();
                    let g = psi_general(&br, n, x, Solution::Psi2).unwrap();
                    assert!((a - g.value).norm() <= 1e-12 * a.norm().max(1e-300));
                }
            }
        }
        // the companion solution of the case-1 branch diverges
        assert!(psi_general(&up, 0, 0.5, Solution::Psi2).unwrap().divergent);
        assert!(psi_general(&lo, 0, 0.5, Solution::Psi1).unwrap().divergent);
        assert!(psi_general(&up2, 0, 0.5, Solution::Psi1).unwrap().divergent);
        assert_eq!(up.branch, Branch::Upper);
    }

    #[test]
    fn case3_reflection() {
        let a = c(-2.3, 1.1);
        for n in 0..3 {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            for x in [-4.0, -0.7, 0.0, 1.1, 5.0] {
                let pos = psi_case3(a, 3.1, n, x).unwrap();
                let neg = psi_case3(a, -3.1, n, -x).unwrap();
                assert!((neg - pos * sign).norm() <= 1e-12 * pos.norm().max(1e-300), "n={n} x={x}");
            }
        }
    }

    fn interior_minima(g: &WaveGrid<f64>) -> usize {
        let mags: Vec<f64> = g.psi.iter().map(|z| z.norm()).collect();
        (1..mags.len() - 1).filter(|&i| mags[i] < mags[i - 1] && mags[i] < mags[i + 1]).count()
    }

    #[test]
    fn case2_first_excited_has_one_node() {
        let sp = spectrum(&fig2()).unwrap();
        let g0 = sample(&Eigenstate::from_bound(&sp.states[0]), 8.0, 1e-2, NormMode::MaxAbsUnit).unwrap();
        let g1 = sample(&Eigenstate::from_bound(&sp.states[1]), 8.0, 1e-2, NormMode::MaxAbsUnit).unwrap();
        assert_eq!(interior_minima(&g0), 0);
        assert_eq!(interior_minima(&g1), 1);
    }

    #[test]
    fn sampling_and_normalization() {
        let st = spectrum(&fig1()).unwrap().states[0];
        let e = Eigenstate::from_bound(&st);
        let g = sample(&e, 15.0, 1e-3, NormMode::SelfProductUnit).unwrap();
        assert_eq!(g.len() % 2, 1);
        assert!(!g.fell_back);
        assert!(g.tail_ratio() <= 1e-8);
        assert!((g.self_product() - c(1.0, 0.0)).norm() < 1e-12);
        let coarse = sample(&e, 15.0, 2e-3, NormMode::MaxAbsUnit).unwrap();
        let fine = sample(&e, 15.0, 1e-3, NormMode::MaxAbsUnit).unwrap();
        let (sc, sf) = (coarse.self_product(), fine.self_product());
        assert!((sc - sf).norm() <= 1e-10 * sf.norm());
        assert_eq!(fine.psi[fine.peak_index()], c(1.0, 0.0));
        assert!((fine.max_abs() - 1.0).abs() == 0.0);
    }

    #[test]
    fn shallow_state_needs_wider_grid() {
        // κ = 0.7: e^{-0.7·15} ≈ 3e-5 is still visible at L = 15
        let st = spectrum(&fig1()).unwrap().states[2];
        let e = Eigenstate::from_bound(&st);
        let g = sample(&e, 15.0, 1e-2, NormMode::MaxAbsUnit).unwrap();
        assert!(g.tail_ratio() > 1e-8);
        let l = e.recommended_half_width(1e-8);
        let g = sample(&e, l, 1e-2, NormMode::MaxAbsUnit).unwrap();
        assert!(g.tail_ratio() <= 1e-8, "L={l} ratio={}", g.tail_ratio());
    }

    #[test]
    fn grid_validation() {
        assert!(grid_intervals(0.0, 0.1).is_err());
        assert!(grid_intervals(1.0, 2.0).is_err());
        assert_eq!(grid_intervals(1.0, 0.1).unwrap(), 20);
        assert_eq!(grid_intervals(1.0, 0.3).unwrap(), 8);
    }

    #[test]
    fn ln_sech_stable() {
        assert!((ln_sech(0.7f64) - (1.0 / 0.7f64.cosh()).ln()).abs() < 1e-15);
        assert!((ln_sech(1000.0f64) - (2.0f64.ln() - 1000.0)).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn phase_factor_bounded(re in -5.0f64..5.0, im in -5.0f64..5.0, x in -50.0f64..50.0) {
            let c_ = c(re, im);
            let m = (C::i() * c_ * gudermannian(x)).exp().norm();
            prop_assert!(m <= (im.abs() * std::f64::consts::FRAC_PI_2).exp() * (1.0 + 1e-12));
        }

        #[test]
        fn case1_reflection_in_b(br in -2.0f64..2.0, bi in -2.0f64..2.0, x in -6.0f64..6.0, n in 0usize..3) {
            // ψ_{-B}(x) = (-1)^n ψ_B(-x)
            let a = 3.4;
            let b = c(br, bi);
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let l = psi_case1(a, -b, n, x).unwrap();
            let r = psi_case1(a, b, n, -x).unwrap() * sign;
            prop_assert!((l - r).norm() <= 1e-10 * l.norm().max(1e-200));
        }
    }
}
