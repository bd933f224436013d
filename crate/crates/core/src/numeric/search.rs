//! Bound-state search: real-axis scan of the Jost Wronskian followed by
//! Muller refinement in the complex energy plane.

use num_complex::Complex;
use rayon::prelude::*;

use super::jost::{JostConfig, JostSolver};
use super::muller::muller;
use super::Potential;
use crate::scalar::{from_usize, lit, Real};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericLevel<T> {
    pub energy: Complex<T>,
    /// Normalized Wronskian at `energy`.
    pub residual: T,
    pub converged: bool,
    pub iterations: usize,
    /// Index into the analytic list this level was matched to.
    pub matched: Option<usize>,
}

impl<T: Real> NumericLevel<T> {
    pub fn is_real(&self, im_tol: T) -> bool {
        self.energy.im.abs() <= im_tol
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NumericSpectrum<T> {
    /// Sorted by `Re E`.
    pub levels: Vec<NumericLevel<T>>,
    /// Roots inside the threshold zone `Re E > -threshold`, `|E|` small.
    pub near_threshold: Vec<NumericLevel<T>>,
    pub emin: T,
    pub scan_step: T,
}

impl<T: Real> NumericSpectrum<T> {
    pub fn real_levels(&self, im_tol: T) -> Vec<NumericLevel<T>> {
        self.levels.iter().filter(|l| l.converged && l.is_real(im_tol)).copied().collect()
    }

    pub fn complex_levels(&self, im_tol: T) -> Vec<NumericLevel<T>> {
        self.levels.iter().filter(|l| !l.is_real(im_tol)).copied().collect()
    }

    pub fn unconverged(&self) -> Vec<NumericLevel<T>> {
        self.levels.iter().filter(|l| !l.converged).copied().collect()
    }

    /// Attaches to every level the index of the closest `reference` energy
    /// within `tol`.
    pub fn match_to(&mut self, reference: &[Complex<T>], tol: T) {
        for level in self.levels.iter_mut() {
            level.matched = reference
                .iter()
                .enumerate()
                .map(|(i, e)| (i, (level.energy - e).norm()))
                .filter(|(_, d)| *d <= tol)
                .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(std::cmp::Ordering::Equal))
                .map(|(i, _)| i);
        }
    }
}

/// Scans `E ∈ [emin, -threshold]` with step `scan_step` using the default
/// [`JostConfig`] otherwise.
pub fn find_bound_states<T: Real, P: Potential<T> + ?Sized>(
    pot: &P,
    emin: T,
    scan_step: T,
) -> NumericSpectrum<T> {
    let cfg = JostConfig { scan_step, ..JostConfig::default() };
    find_bound_states_with(pot, emin, &cfg)
}

pub fn find_bound_states_with<T: Real, P: Potential<T> + ?Sized>(
    pot: &P,
    emin: T,
    cfg: &JostConfig<T>,
) -> NumericSpectrum<T> {
    let coarse = JostSolver::new(pot, cfg.l, cfg.scan_h);
    let fine = JostSolver::new(pot, cfg.l, cfg.h);
    let emax = -cfg.threshold;
    let count = ((emax - emin) / cfg.scan_step).floor().to_usize().unwrap_or(0) + 1;
    let grid: Vec<T> = (0..count).map(|i| emin + from_usize::<T>(i) * cfg.scan_step).collect();
    let values: Vec<(T, T)> = grid
        .par_iter()
        .map(|&e| {
            let w = coarse.wronskian(Complex::new(e, T::zero()));
            (w.normalized, w.value.norm())
        })
        .collect();
    let is_min = |f: &dyn Fn(usize) -> T, i: usize| f(i) < f(i - 1) && f(i) <= f(i + 1);
    let minima: Vec<usize> = (1..count.saturating_sub(1))
        .filter(|&i| is_min(&|j| values[j].0, i) || is_min(&|j| values[j].1, i))
        .collect();

    let refine = |a: Complex<T>, b: Complex<T>, c: Complex<T>| {
        let r = muller(|e| fine.wronskian(e).value, a, b, c, cfg.tol, cfg.max_iter);
        NumericLevel {
            energy: r.root,
            residual: fine.wronskian(r.root).normalized,
            converged: r.converged,
            iterations: r.iterations,
            matched: None,
        }
    };
    let step = Complex::new(cfg.scan_step, T::zero());
    let mut found: Vec<NumericLevel<T>> = minima
        .par_iter()
        .flat_map_iter(|&i| {
            let e = Complex::new(grid[i], T::zero());
            let first = refine(e - step, e, e + step);
            let mut out = vec![first];
            if first.converged && first.energy.im.abs() > lit::<T>(1e-6) * (T::one() + first.energy.norm()) {
                let c = first.energy.conj();
                out.push(refine(c - step, c, c + step));
            }
            out
        })
        .collect();

    found.sort_by(|a, b| {
        (a.energy.re, a.energy.im)
            .partial_cmp(&(b.energy.re, b.energy.im))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let merge_tol = lit::<T>(1e-7);
    let mut levels: Vec<NumericLevel<T>> = Vec::new();
    for lv in found {
        if let Some(prev) = levels
            .iter_mut()
            .find(|p| (p.energy - lv.energy).norm() <= merge_tol * (T::one() + lv.energy.norm()))
        {
            if lv.converged && (!prev.converged || lv.residual < prev.residual) {
                *prev = lv;
            }
            continue;
        }
        levels.push(lv);
    }
    let (near_threshold, levels): (Vec<_>, Vec<_>) = levels
        .into_iter()
        .partition(|l| l.converged && l.energy.norm() < cfg.threshold);
    NumericSpectrum { levels, near_threshold, emin, scan_step: cfg.scan_step }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::SquareWell;
    use crate::potential::ScarfParams;

    type C = Complex<f64>;

    #[test]
    fn hermitian_well_levels() {
        // sech² well with A = 2, B = 0: E = -4, -1
        let p = ScarfParams::pt_symmetric(2.0, 0.0);
        let s = find_bound_states(&p, -9.0, 0.01);
        let e: Vec<f64> = s.real_levels(1e-8).iter().map(|l| l.energy.re).collect();
        assert_eq!(e.len(), 2, "{e:?}");
        assert!((e[0] + 4.0).abs() < 1e-9 && (e[1] + 1.0).abs() < 1e-9);
        // the n = 2 state sits at the threshold and is not reported
        assert!(s.levels.iter().all(|l| l.energy.re < -0.5));
    }

    #[test]
    fn square_well_shallow() {
        let w = SquareWell::new(0.01, 4.0);
        let s = find_bound_states(&w, -0.011, 1e-4);
        assert!(s.levels.len() + s.near_threshold.len() >= 1);
    }

    #[test]
    fn matching() {
        let p = ScarfParams::pt_symmetric(2.0, 0.0);
        let mut s = find_bound_states(&p, -9.0, 0.01);
        s.match_to(&[C::new(-1.0, 0.0), C::new(-4.0, 0.0)], 1e-6);
        assert_eq!(s.levels[0].matched, Some(1));
        assert_eq!(s.levels[1].matched, Some(0));
    }
}
