//! Exact and numerical treatment of a radial oscillator with an
//! inverse-square core and a rational bump,
//!
//!   V(r) = B²/r² + ω²r² + 2g(r² − a²)/(r² + a²)²,
//!
//! in d ≥ 2 dimensions. On the line g = 2, ωa² = k + ½ (with k the
//! effective centrifugal index) the model is exactly solvable: the crate
//! provides the closed-form spectrum and normalized wavefunctions, the
//! factorization (ladder-operator) machinery that produces them, and an
//! independent finite-difference eigensolver to check every claim against.
//!
//! Modules:
//! - [`model`]: parameters, radial reduction, the solvability gate;
//! - [`susy`]: superpotential, partner potentials, A/A† maps;
//! - [`exact`]: closed-form spectra and wavefunctions, three independent
//!   construction routes;
//! - [`numeric`]: grid discretizations (including a power-branch scheme
//!   that handles non-principal and critical origin behavior),
//!   deterministic tridiagonal eigensolver, adaptive quadrature;
//! - [`specfun`]: the small special-function kernel behind the closed forms;
//! - [`verify`]: the cross-check sweep the CLI's `verify` subcommand runs.
//!
//! Everything numerical is generic over the scalar type through
//! [`scalar::Real`]; the `*64` aliases fix f64, the choice all stated
//! tolerances assume.

pub mod exact;
pub mod model;
pub mod numeric;
pub mod scalar;
pub mod specfun;
pub mod susy;
pub mod verify;

pub use scalar::Real;

pub type PotentialParams64 = model::PotentialParams<f64>;
pub type EffectiveParams64 = model::EffectiveParams<f64>;
pub type SuperpotentialAnsatz64 = susy::SuperpotentialAnsatz<f64>;
pub type RadialFunction64 = susy::RadialFunction<f64>;
pub type ExactState64 = exact::ExactState<f64>;
pub type GkParams64 = exact::GkParams<f64>;
pub type RadialGrid64 = numeric::RadialGrid<f64>;
pub type NumericSpectrum64 = numeric::NumericSpectrum<f64>;
