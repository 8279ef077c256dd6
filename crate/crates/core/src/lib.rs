//! Bound-state spectra and spinor components of the s-wave Dirac equation
//! with the deformed generalized Pöschl-Teller potential under exact spin
//! symmetry (`Δ(r) = V(r) − S(r) = C`).
//!
//! The upper component obeys a Schrödinger-like equation
//! `−F″ + (M + E − C) V_q(r) F = Ẽ F` with `Ẽ = E² − M² + C(M − E)`, and the
//! deformation `q` selects one of three quantization procedures:
//!
//! * `q ≥ 1`: the potential has an impenetrable wall at `r₀ = ln(q)/(2α)` and
//!   the levels follow from polynomial termination ([`solvers::solve_q_ge_1`]);
//! * `0 < q < 1`: the potential is regular on `r ≥ 0` and the levels are the
//!   zeros of a Gauss hypergeometric function at a fixed argument
//!   ([`solvers::solve_q_lt_1`]);
//! * `q = 0`: the Morse limit, quantized by a zero of Kummer's function
//!   ([`solvers::solve_morse_exact`]) or by its large-depth asymptote
//!   ([`solvers::solve_morse_asymptotic`]).
//!
//! Every analytic result can be cross-checked against [`oracle`], a
//! Numerov shooting solver that knows nothing about hypergeometric functions.
//!
//! The pure-math layers ([`deformed`], [`special`], [`effective`]) are generic
//! over the floating-point type through [`Real`]; the solvers work in `f64`.
//! Aliases for the `f64` instantiations live at the crate root.

// `!(x > 0)` is used on purpose: it also rejects NaN. Reference constants keep
// their published digits.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod deformed;
pub mod effective;
pub mod error;
mod fd;
pub mod oracle;
mod roots;
pub mod scalar;
pub mod solvers;
pub mod special;
pub mod wavefunction;

pub use error::{Error, Result};
pub use scalar::Real;

pub use deformed::Regime;
pub use solvers::{EnergyLevel, Method, SolverConfig, Spectrum};
pub use wavefunction::WavefunctionGrid;

/// Potential parameters in double precision.
pub type PotentialParams = deformed::PotentialParams<f64>;
/// Mass and spin-symmetry constant in double precision.
pub type DiracConstants = effective::DiracConstants<f64>;
/// Energy-dependent effective parameters in double precision.
pub type EffectiveParams = effective::EffectiveParams<f64>;
/// Hypergeometric parameter set in double precision.
pub type HypergeometricParams = special::HypergeometricParams<f64>;
