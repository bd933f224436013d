//! Negative-energy poles of `T`, `R_L`, `R_R`, and the positive-energy
//! spectral-singularity scan.
//!
//! Poles are found as zeros of the analytic reciprocals in `κ = √(-E)`:
//! local minima on an energy grid seed Muller iterations, and only roots
//! that land on the real `κ` axis are kept.
//!
//! At a pole of `T` both `r_L = t·(r_L/t)` and `r_R = t·(r_R/t)` are
//! singular as well unless the ratio vanishes; the ratios `|r/t|²` weigh the
//! reflection poles against the transmission pole. A reflection coefficient
//! is reported as sharing a transmission pole when its weight is at least
//! `min_relative_strength`.

use num_complex::Complex;
use rayon::prelude::*;

use super::analytic::{reciprocal, reflection_ratios};
use super::{Coefficient, PoleReport};
use crate::analytic::spectrum;
use crate::numeric::muller;
use crate::potential::ScarfParams;
use crate::scalar::{from_usize, lit, Real};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoleScanConfig<T> {
    pub e_step: T,
    pub e_max: T,
    pub coincidence_tol: T,
    pub min_relative_strength: T,
}

impl<T: Real> Default for PoleScanConfig<T> {
    fn default() -> Self {
        Self {
            e_step: lit(1e-3),
            e_max: lit(-1e-3),
            coincidence_tol: lit(1e-6),
            min_relative_strength: lit(1e-2),
        }
    }
}

fn local_minima<T: Real>(v: &[T]) -> Vec<usize> {
    (1..v.len().saturating_sub(1))
        .filter(|&i| v[i] <= v[i - 1] && v[i] < v[i + 1])
        .collect()
}

/// Real zeros in `κ` of the reciprocal of `which` for `E ∈ [emin, e_max]`.
fn real_zeros<T: Real>(p: &ScarfParams<T>, which: Coefficient, emin: T, cfg: &PoleScanConfig<T>) -> Vec<T> {
    let n = ((cfg.e_max - emin) / cfg.e_step).floor().to_usize().unwrap_or(0) + 1;
    let kappas: Vec<T> = (0..n).map(|i| (-(emin + from_usize::<T>(i) * cfg.e_step)).sqrt()).collect();
    let vals: Vec<T> = kappas
        .par_iter()
        .map(|&k| reciprocal(p, Complex::new(k, T::zero()), which).norm())
        .collect();
    let mut roots: Vec<T> = local_minima(&vals)
        .par_iter()
        .filter_map(|&i| {
            let c = |j: usize| Complex::new(kappas[j], T::zero());
            let r = muller(|s| reciprocal(p, s, which), c(i - 1), c(i), c(i + 1), lit(1e-13), 80);
            let s = r.root;
            let on_axis = s.im.abs() <= lit::<T>(1e-9) * (T::one() + s.re.abs());
            let e = -s.re * s.re;
            let in_range = e >= emin - cfg.e_step && e <= cfg.e_max + cfg.e_step;
            (r.converged && on_axis && s.re > T::zero() && in_range).then_some(e)
        })
        .collect();
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    roots.dedup_by(|a, b| (*a - *b).abs() <= lit::<T>(1e-9) * (T::one() + b.abs()));
    roots
}

pub fn pole_scan<T: Real>(p: &ScarfParams<T>, emin: T) -> Vec<PoleReport<T>> {
    pole_scan_with(p, emin, &PoleScanConfig::default())
}

/// Poles in `[emin, cfg.e_max]`, grouped by location and sorted by energy.
pub fn pole_scan_with<T: Real>(p: &ScarfParams<T>, emin: T, cfg: &PoleScanConfig<T>) -> Vec<PoleReport<T>> {
    let mut all: Vec<(T, Coefficient)> = Vec::new();
    for c in [Coefficient::T, Coefficient::RLeft, Coefficient::RRight] {
        all.extend(real_zeros(p, c, emin, cfg).into_iter().map(|e| (e, c)));
    }
    all.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal));

    let bound: Vec<T> = spectrum(p).map(|s| s.sorted_energies()).unwrap_or_default();
    let mut reports = Vec::new();
    let mut i = 0;
    while i < all.len() {
        let mut j = i + 1;
        while j < all.len() && (all[j].0 - all[i].0).abs() <= cfg.coincidence_tol {
            j += 1;
        }
        let group = &all[i..j];
        let t_pole = group.iter().find(|(_, c)| *c == Coefficient::T).map(|g| g.0);
        let energy = t_pole.unwrap_or(group[0].0);
        let mut which: Vec<Coefficient> = Vec::new();
        let (mut strength_left, mut strength_right) = (None, None);
        let mut matched = None;
        if let Some(e) = t_pole {
            which.push(Coefficient::T);
            let (rl, rr) = reflection_ratios(p, Complex::new((-e).sqrt(), T::zero()));
            strength_left = Some(rl);
            strength_right = Some(rr);
            for (c, rho) in [(Coefficient::RLeft, rl), (Coefficient::RRight, rr)] {
                if group.iter().any(|g| g.1 == c) && !(rho < cfg.min_relative_strength) {
                    which.push(c);
                }
            }
            matched = bound.iter().position(|b| (*b - e).abs() <= cfg.coincidence_tol);
        } else {
            for (_, c) in group {
                if !which.contains(c) {
                    which.push(*c);
                }
            }
        }
        which.sort();
        reports.push(PoleReport {
            energy,
            which,
            matched_bound_state: matched,
            coincidence_tol: cfg.coincidence_tol,
            strength_left,
            strength_right,
        });
        i = j;
    }
    reports
}

/// Real energies in `(0, emax]` where `1/t` vanishes.
pub fn spectral_singularity_scan<T: Real>(p: &ScarfParams<T>, emax: T) -> Vec<T> {
    if !(emax > T::zero()) {
        return Vec::new();
    }
    let kmax = emax.sqrt();
    let dk = lit::<T>(1e-3);
    let n = (kmax / dk).ceil().to_usize().unwrap_or(1).max(2);
    let ks: Vec<T> = (1..=n).map(|i| kmax * from_usize::<T>(i) / from_usize::<T>(n)).collect();
    let i = Complex::<T>::i();
    let f = |k: Complex<T>| reciprocal(p, -i * k, Coefficient::T);
    let vals: Vec<T> = ks.par_iter().map(|&k| f(Complex::new(k, T::zero())).norm()).collect();
    let mut found: Vec<T> = local_minima(&vals)
        .par_iter()
        .filter_map(|&j| {
            let c = |m: usize| Complex::new(ks[m], T::zero());
            let r = muller(f, c(j - 1), c(j), c(j + 1), lit(1e-13), 80);
            let k = r.root;
            let on_axis = k.im.abs() <= lit::<T>(1e-8) * (T::one() + k.re.abs());
            let e = k.re * k.re;
            (r.converged && on_axis && k.re > T::zero() && e <= emax).then_some(e)
        })
        .collect();
    found.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    found.dedup_by(|a, b| (*a - *b).abs() <= lit::<T>(1e-9) * (T::one() + b.abs()));
    found
}
