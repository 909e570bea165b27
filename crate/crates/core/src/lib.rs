//! Semiclassical bound-state toolkit for relativistic two-particle
//! potentials.
//!
//! The crate solves the quantization condition of a reduced radial wave
//! equation in which the squared momentum
//! `p^2(r) = (E - V)^2 - m^2 - (l + 1/2)^2 / r^2` (vector coupling) or
//! `p^2(r) = E_eff^2 - (m + S)^2 - (l + 1/2)^2 / r^2` (scalar coupling)
//! is integrated between classical turning points and pinned to
//! `pi (n_r + 1/2)`. Supported potential shapes are the pure Coulomb term,
//! the pure linear term, and their sum (the funnel).
//!
//! What lives where:
//!
//! - [`model`]: potential/coupling specification, quantum numbers,
//!   effective squared momentum.
//! - [`phase`]: turning points, the radial phase integral on the real
//!   axis, its contour form for the linear potential, and the angular
//!   integral.
//! - [`quantize`]: numeric eigenvalue solver on the quantization
//!   condition, closed-form dispatch, angular eigenvalues.
//! - [`closed`]: closed-form spectra (relativistic Coulomb for both
//!   couplings, linear and funnel squared-mass laws, fine structure,
//!   hydrogen-like reference table).
//! - [`oracle`]: an independent Numerov shooting solver for the radial
//!   Schrodinger and Klein-Gordon equations, used to cross-check the
//!   semiclassical results.
//! - [`wavefn`]: semiclassical radial wavefunctions and the scalar-Coulomb
//!   standing-wave form.
//! - [`regge`]: orbital-trajectory generation and the inverse fit from
//!   meson masses to string parameters.
//! - [`numerics`]: quadrature and root bracketing shared by the above.

// Guards written as `!(x > 0.0)` are deliberate: they must reject NaN,
// which every direct comparison would silently accept.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod closed;
pub mod error;
pub mod model;
pub mod numerics;
pub mod oracle;
pub mod phase;
pub mod quantize;
pub mod regge;
pub mod wavefn;

pub use closed::SpectrumRow;
pub use error::{Error, Result};
pub use model::{
    AngularEigenvalue, CoulombAux, Coupling, PotentialFamily, PotentialSpec, QuantumNumbers,
};
pub use oracle::{GridSpacing, RadialGrid};
pub use phase::{
    angular_phase_integral, contour_phase_linear, find_turning_points, radial_phase_integral,
    PhaseIntegralReport, TurningPoints,
};
pub use quantize::{
    angular_eigenvalues, closed_form_eigenvalue, solve_radial_eigenvalue,
    solve_radial_eigenvalue_with, EigenvalueResult, Method, SolveOptions,
};
pub use regge::{
    fit_regge, read_meson_csv, read_meson_csv_path, regge_trajectory, MesonRecord, ReggeFit,
};
pub use wavefn::{small_r_exponent, standing_wave, wkb_radial_wavefunction, WkbWavefunction};
