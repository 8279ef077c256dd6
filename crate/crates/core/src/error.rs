use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("{function}: argument {value} outside the domain")]
    Domain { function: &'static str, value: f64 },

    #[error("{function}: parameter pole at {value}")]
    ParameterPole { function: &'static str, value: f64 },

    #[error("{function}: series did not converge after {terms} terms")]
    NonConvergence { function: &'static str, terms: usize },

    #[error("{function}: argument z = {z} not supported for non-terminating series")]
    UnsupportedArgument { function: &'static str, z: f64 },

    #[error("empty bound-state window: C = {c_spin} >= 2M = {two_m}")]
    EmptyWindow { c_spin: f64, two_m: f64 },

    #[error("non-binding energy E = {energy}: M + E - C = {prefactor} <= 0")]
    NonBinding { energy: f64, prefactor: f64 },

    #[error("effective eigenvalue {e_tilde} is not negative at E = {energy}")]
    NotBound { energy: f64, e_tilde: f64 },

    #[error("negative discriminant {value} for the centrifugal exponent (complex lambda)")]
    Discriminant { value: f64 },

    #[error("level n_r = {n_r} not found ({found} sign change(s) in the window)")]
    NoRoot { n_r: usize, found: usize },

    #[error("radial grid too small: {reason}")]
    GridTooSmall { reason: String },

    #[error("wavefunction has zero norm")]
    ZeroNorm,

    #[error("lower component undefined: M + E - C = {prefactor} is too close to zero")]
    SingularLowerComponent { prefactor: f64 },
}
