//! Transmission and reflection amplitudes.
//!
//! Conventions, with `k = √E`:
//! left incidence is `e^{ikx} + r_L e^{-ikx}` at `x → -∞` and `t e^{ikx}`
//! at `x → +∞`; right incidence is `e^{-ikx} + r_R e^{ikx}` at `+∞` and
//! `t e^{-ikx}` at `-∞`. Below threshold `k = iκ`.

pub mod analytic;
pub mod numeric;
pub mod poles;

use num_complex::Complex;

use crate::scalar::Real;

pub use analytic::{analytic_amplitudes, reciprocal, scatter_analytic, Amplitudes};
pub use numeric::{scatter_numeric, ScatterConfig, ScatterSolver};
pub use poles::{pole_scan, pole_scan_with, spectral_singularity_scan, PoleScanConfig};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ScatterError {
    #[error("the numeric backend needs E > 0, got {0}")]
    NonPositiveEnergy(f64),
    #[error("the analytic backend is undefined at E = 0")]
    Threshold,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coefficient {
    T,
    RLeft,
    RRight,
}

impl Coefficient {
    pub fn label(self) -> &'static str {
        match self {
            Coefficient::T => "T",
            Coefficient::RLeft => "RLeft",
            Coefficient::RRight => "RRight",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatterPoint<T> {
    pub energy: T,
    /// Transmission amplitude for left incidence.
    pub t: Complex<T>,
    /// Transmission amplitude for right incidence.
    pub t_right: Complex<T>,
    pub r_left: Complex<T>,
    pub r_right: Complex<T>,
    /// An amplitude is infinite or not finite here.
    pub singular: bool,
}

impl<T: Real> ScatterPoint<T> {
    pub fn transmission(&self) -> T {
        self.t.norm_sqr()
    }

    pub fn transmission_right(&self) -> T {
        self.t_right.norm_sqr()
    }

    pub fn reflection_left(&self) -> T {
        self.r_left.norm_sqr()
    }

    pub fn reflection_right(&self) -> T {
        self.r_right.norm_sqr()
    }

    pub fn coefficient(&self, c: Coefficient) -> T {
        match c {
            Coefficient::T => self.transmission(),
            Coefficient::RLeft => self.reflection_left(),
            Coefficient::RRight => self.reflection_right(),
        }
    }
}

/// A negative-energy pole and the coefficients that share it.
#[derive(Debug, Clone, PartialEq)]
pub struct PoleReport<T> {
    pub energy: T,
    /// Sorted, non-empty.
    pub which: Vec<Coefficient>,
    /// Index into the ascending analytic bound-state energies.
    pub matched_bound_state: Option<usize>,
    pub coincidence_tol: T,
    /// `|r_L/t|²` and `|r_R/t|²` at a transmission pole: the weight of the
    /// reflection poles relative to the transmission pole.
    pub strength_left: Option<T>,
    pub strength_right: Option<T>,
}

impl<T: Real> PoleReport<T> {
    pub fn has(&self, c: Coefficient) -> bool {
        self.which.contains(&c)
    }
}
