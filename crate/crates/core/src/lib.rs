//! Closed-form bound states of the complex Scarf II potential
//! `V(x) = P sech²x + Q sech x tanh x` with `P = -(B² + A² + A)`, `Q = iB(2A + 1)`,
//! together with the numerical machinery used to check them independently:
//! a Magnus-type Schrödinger integrator, Jost-Wronskian eigenvalue search,
//! bilinear orthogonality quadrature, and reflection/transmission amplitudes
//! from both an ODE backend and a Gamma-function backend.
//!
//! Units are fixed at `2μ = ħ² = 1`.
//!
//! The core is generic over the scalar type (see [`Real`]); the `*64` aliases
//! below are the double-precision instantiations used by the CLI and the tests.

pub mod analytic;
pub mod eigenfunctions;
pub mod numeric;
pub mod potential;
mod scalar;
pub mod scattering;
pub mod specfun;

pub use num_complex::Complex;
pub use scalar::Real;

pub use analytic::{BoundState, BranchPQ, Spectrum, StateFamily};
pub use eigenfunctions::{Eigenstate, NormMode, WaveGrid};
pub use numeric::{JostConfig, JostSolver, NumericSpectrum, Potential, SquareWell};
pub use potential::{ScarfParams, SymmetryClass, V1V2Params};
pub use scattering::{Coefficient, PoleReport, ScatterPoint};

pub type Complex64 = Complex<f64>;
pub type ScarfParams64 = ScarfParams<f64>;
pub type V1V2Params64 = V1V2Params<f64>;
pub type BoundState64 = BoundState<f64>;
pub type Spectrum64 = Spectrum<f64>;
pub type Eigenstate64 = Eigenstate<f64>;
pub type WaveGrid64 = WaveGrid<f64>;
pub type NumericSpectrum64 = NumericSpectrum<f64>;
pub type ScatterPoint64 = ScatterPoint<f64>;
pub type PoleReport64 = PoleReport<f64>;
pub type SquareWell64 = SquareWell<f64>;
