//! Numerical laboratory for weighted Hardy–Leray inequalities and
//! Trudinger–Moser functionals on the unit disk of ℝ².
//!
//! The central object is the deficit
//!
//! ```text
//!   ℐ_μ(u) = ∫_{B₁} |∇u|² dx + μ ∫_{B₁} u² / (|x| ln(1/|x|))² dx ,
//! ```
//!
//! nonnegative for μ ≥ −1/4, together with the family of remainder weights,
//! gauge substitutions, extremal sequences and sharp exponents that surround
//! it. Everything reduces to one-dimensional radial integrals; the library
//! evaluates those with controlled error even where the integrands blow up,
//! estimates the sharp constants by Rayleigh-quotient minimization, and runs
//! the concentration experiments that certify the critical Trudinger–Moser
//! exponents empirically.
//!
//! Module map:
//!
//! * [`weights`] — the singular potentials (Leray weight, remainder weights,
//!   iterated-log series, comparison potentials).
//! * [`transforms`] — gauge/coordinate substitutions that regularize the
//!   deficit, plus the spectral constants τ₀, σ_μ, m_μ, ν_μ.
//! * [`profiles`] — explicit trial and extremal families as radial profiles
//!   with closed-form derivatives.
//! * [`quadrature`] — adaptive panel integration, log-domain evaluation of
//!   exponential functionals, the Maz'ya ℬ-constant, remainder ratios.
//! * [`spectral`] — piecewise-linear discretizations of the quadratic forms
//!   and generalized Rayleigh-quotient minimization.
//! * [`symmetry`] — symmetric decreasing rearrangement and angular mode
//!   decomposition.
//! * [`sweeps`] — orchestrated experiments: critical-exponent detection,
//!   blow-up demonstrations, randomized inequality stress tests.

pub mod config;
pub mod error;
pub mod quadrature;
pub mod rng;
pub mod spectral;
pub mod sweeps;
pub mod symmetry;
pub mod transforms;
pub mod weights;

pub mod profiles;

pub use config::LabConfig;
pub use error::LabError;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, LabError>;
