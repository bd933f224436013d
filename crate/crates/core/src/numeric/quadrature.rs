//! Simpson quadrature, the bilinear orthogonality matrix and the
//! finite-interval orthogonality identity
//! `(E_m - E_n)∫ψ_mψ_n dx = [ψ_mψ_n' - ψ_nψ_m']`.

use num_complex::Complex;

use crate::eigenfunctions::WaveGrid;
use crate::scalar::{lit, Real};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum QuadratureError {
    #[error("wave grids differ in extent or spacing")]
    GridMismatch,
    #[error("grid too short: {0} samples")]
    TooShort(usize),
}

/// Composite Simpson rule on equally spaced samples. An even number of
/// samples is closed with the 3/8 rule on the last four.
pub fn simpson<T: Real>(f: &[Complex<T>], h: T) -> Complex<T> {
    let n = f.len();
    let zero = Complex::new(T::zero(), T::zero());
    match n {
        0 | 1 => return zero,
        2 => return (f[0] + f[1]) * (h * lit(0.5)),
        3 => return (f[0] + f[1] * lit::<T>(4.0) + f[2]) * (h / lit(3.0)),
        _ => {}
    }
    let (body, tail) = if n % 2 == 1 { (n, None) } else { (n - 3, Some(n - 4)) };
    let mut odd = zero;
    let mut even = zero;
    for (i, v) in f[1..body - 1].iter().enumerate() {
        if i % 2 == 0 {
            odd = odd + v;
        } else {
            even = even + v;
        }
    }
    let mut total = (f[0] + f[body - 1] + odd * lit::<T>(4.0) + even * lit::<T>(2.0)) * (h / lit(3.0));
    if let Some(s) = tail {
        total = total + (f[s] + (f[s + 1] + f[s + 2]) * lit::<T>(3.0) + f[s + 3]) * (h * lit(3.0) / lit(8.0));
    }
    total
}

fn same_grid<T: Real>(a: &WaveGrid<T>, b: &WaveGrid<T>) -> bool {
    a.len() == b.len() && (a.h - b.h).abs() <= lit::<T>(1e-14) * a.h && (a.l - b.l).abs() <= lit::<T>(1e-12) * a.l
}

/// `∫ψ_mψ_n dx` (no conjugation) together with `∫|ψ_m||ψ_n| dx` for scale.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthogonalityMatrix<T> {
    pub overlap: Vec<Vec<Complex<T>>>,
    pub magnitude: Vec<Vec<T>>,
}

impl<T: Real> OrthogonalityMatrix<T> {
    /// `max_{m≠n} |∫ψ_mψ_n| / ∫|ψ_m||ψ_n|`.
    pub fn max_off_diagonal(&self) -> T {
        let mut worst = T::zero();
        for (m, row) in self.overlap.iter().enumerate() {
            for (n, v) in row.iter().enumerate() {
                if m != n {
                    worst = worst.max(v.norm() / self.magnitude[m][n]);
                }
            }
        }
        worst
    }
}

pub fn orthogonality_matrix<T: Real>(states: &[WaveGrid<T>]) -> Result<OrthogonalityMatrix<T>, QuadratureError> {
    if let Some(first) = states.first() {
        if states.iter().any(|s| !same_grid(first, s)) {
            return Err(QuadratureError::GridMismatch);
        }
    }
    let k = states.len();
    let mut overlap = vec![vec![Complex::new(T::zero(), T::zero()); k]; k];
    let mut magnitude = vec![vec![T::zero(); k]; k];
    for m in 0..k {
        for n in m..k {
            let (a, b) = (&states[m], &states[n]);
            let prod: Vec<Complex<T>> = a.psi.iter().zip(&b.psi).map(|(x, y)| x * y).collect();
            let mag: Vec<Complex<T>> = a
                .psi
                .iter()
                .zip(&b.psi)
                .map(|(x, y)| Complex::new(x.norm() * y.norm(), T::zero()))
                .collect();
            let v = simpson(&prod, a.h);
            let s = simpson(&mag, a.h).re;
            overlap[m][n] = v;
            overlap[n][m] = v;
            magnitude[m][n] = s;
            magnitude[n][m] = s;
        }
    }
    Ok(OrthogonalityMatrix { overlap, magnitude })
}

/// Both sides of the finite-interval identity on `[-L + 2h, L - 2h]`, with
/// five-point derivatives at the ends.
pub fn appendix_identity<T: Real>(
    psi_m: &WaveGrid<T>,
    psi_n: &WaveGrid<T>,
    e_m: Complex<T>,
    e_n: Complex<T>,
) -> Result<(Complex<T>, Complex<T>), QuadratureError> {
    if !same_grid(psi_m, psi_n) {
        return Err(QuadratureError::GridMismatch);
    }
    let len = psi_m.len();
    if len < 9 {
        return Err(QuadratureError::TooShort(len));
    }
    let (lo, hi) = (2, len - 3);
    let prod: Vec<Complex<T>> = psi_m.psi[lo..=hi].iter().zip(&psi_n.psi[lo..=hi]).map(|(a, b)| a * b).collect();
    let lhs = (e_m - e_n) * simpson(&prod, psi_m.h);
    let d = |f: &[Complex<T>], i: usize| {
        (f[i - 2] - f[i + 2] + (f[i + 1] - f[i - 1]) * lit::<T>(8.0)) / (psi_m.h * lit(12.0))
    };
    let bracket = |i: usize| psi_m.psi[i] * d(&psi_n.psi, i) - psi_n.psi[i] * d(&psi_m.psi, i);
    let rhs = bracket(hi) - bracket(lo);
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Complex<f64>;

    #[test]
    fn simpson_polynomials() {
        let h = 0.1;
        for n in [5usize, 6, 11, 12] {
            let f: Vec<C> = (0..n).map(|i| C::new((i as f64 * h).powi(3), 0.0)).collect();
            let b = (n - 1) as f64 * h;
            assert!((simpson(&f, h).re - b.powi(4) / 4.0).abs() < 1e-12, "n={n}");
        }
        assert_eq!(simpson::<f64>(&[], 0.1), C::new(0.0, 0.0));
    }

    #[test]
    fn simpson_gaussian() {
        let h = 1e-2;
        let f: Vec<C> = (0..=2000).map(|i| {
            let x = -10.0 + i as f64 * h;
            C::new((-x * x).exp(), 0.0)
        }).collect();
        assert!((simpson(&f, h).re - std::f64::consts::PI.sqrt()).abs() < 1e-12);
    }
}
