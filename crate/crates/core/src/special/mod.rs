//! Special functions behind the quantization conditions: `ln Γ`, the Gauss
//! hypergeometric function `₂F₁`, Kummer's function `₁F₁` and Jacobi
//! polynomials. Real arguments and parameters only.

mod gamma;
mod hyp1f1;
mod hyp2f1;
mod jacobi;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

pub use gamma::ln_gamma;
pub use hyp1f1::kummer_1f1;
pub use hyp2f1::gauss_2f1;
pub use jacobi::jacobi_p;

pub(crate) use gamma::is_non_positive_integer;
pub(crate) use hyp1f1::kummer_1f1_scaled;
pub(crate) use hyp2f1::gauss_2f1_scaled_with_complement;

/// Parameters and argument of `₂F₁(a, b; c; z)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HypergeometricParams<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub z: T,
}

impl<T: Real> HypergeometricParams<T> {
    pub fn new(a: T, b: T, c: T, z: T) -> Self {
        Self { a, b, c, z }
    }

    /// Degree of the polynomial when `a` or `b` is a non-positive integer.
    pub fn terminating_degree(&self) -> Option<usize> {
        let degree = |x: T| {
            if is_non_positive_integer(x) {
                (-x).to_usize()
            } else {
                None
            }
        };
        match (degree(self.a), degree(self.b)) {
            (Some(m), Some(n)) => Some(m.min(n)),
            (m, n) => m.or(n),
        }
    }

    /// Rejects `c` at a pole that the series does not terminate before.
    pub fn validate(&self) -> Result<()> {
        if is_non_positive_integer(self.c) {
            let pole = (-self.c).to_usize().unwrap_or(usize::MAX);
            match self.terminating_degree() {
                Some(n) if n <= pole => {}
                _ => {
                    return Err(Error::ParameterPole {
                        function: "gauss_2f1",
                        value: self.c.as_f64(),
                    })
                }
            }
        }
        Ok(())
    }

    pub fn eval(&self) -> Result<T> {
        gauss_2f1(self.a, self.b, self.c, self.z)
    }
}

/// `|₂F₁(α, β; γ; z/β) − ₁F₁(α; γ; z)|`; tends to zero as `β → ∞`.
pub fn confluent_limit_residual<T: Real>(alpha: T, gamma: T, z: T, beta: T) -> Result<T> {
    let gauss = gauss_2f1(alpha, beta, gamma, z / beta)?;
    let kummer = kummer_1f1(alpha, gamma, z)?;
    Ok((gauss - kummer).abs())
}

/// A value stored as `mantissa · e^{log_scale}`, for results that would
/// overflow a plain float (quantization functions only need the sign).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scaled<T> {
    pub mantissa: T,
    pub log_scale: T,
}

impl<T: Real> Scaled<T> {
    pub fn plain(value: T) -> Self {
        Self {
            mantissa: value,
            log_scale: T::zero(),
        }
    }

    pub fn value(&self) -> T {
        self.mantissa * self.log_scale.exp()
    }

    pub fn signum(&self) -> T {
        if self.mantissa == T::zero() {
            T::zero()
        } else {
            self.mantissa.signum()
        }
    }

    /// `ln|value|`, `−∞` for zero.
    pub fn ln_abs(&self) -> T {
        self.mantissa.abs().ln() + self.log_scale
    }

    pub fn mul_exp(self, log_factor: T) -> Self {
        Self {
            log_scale: self.log_scale + log_factor,
            ..self
        }
    }

    pub fn scale(self, factor: T) -> Self {
        Self {
            mantissa: self.mantissa * factor,
            ..self
        }
    }

    /// Expresses the value relative to `e^{log_scale}`.
    pub fn rescaled_to(&self, log_scale: T) -> T {
        if self.mantissa == T::zero() {
            return T::zero();
        }
        self.mantissa * (self.log_scale - log_scale).exp()
    }

    /// Weighted sum `Σ wᵢ xᵢ` aligned to the largest scale.
    pub fn combine(terms: &[(T, Scaled<T>)]) -> Self {
        let top = terms
            .iter()
            .filter(|(w, s)| *w != T::zero() && s.mantissa != T::zero())
            .map(|(w, s)| s.log_scale + w.abs().ln() + s.mantissa.abs().ln())
            .fold(T::neg_infinity(), T::max);
        if top == T::neg_infinity() {
            return Self::plain(T::zero());
        }
        let mut sum = T::zero();
        for (w, s) in terms {
            if *w != T::zero() {
                sum = sum + *w * s.rescaled_to(top);
            }
        }
        Self {
            mantissa: sum,
            log_scale: top,
        }
    }
}

const RESCALE_ABOVE: f64 = 1e150;
pub(crate) const MAX_TERMS: usize = 100_000;

/// Sums `1 + t₁ + t₂ + …` where `t_{k+1} = t_k · ratio(k)`, with compensated
/// accumulation and rescaling against overflow.
///
/// Stops when three consecutive terms fall below `ε · |sum|` while the ratio
/// is below one, or when a term is exactly zero (terminating series).
pub(crate) fn sum_series<T: Real>(
    function: &'static str,
    mut ratio: impl FnMut(usize) -> T,
) -> Result<Scaled<T>> {
    let rescale_above = T::lit(RESCALE_ABOVE);
    let ln_rescale = rescale_above.ln();
    let eps = T::epsilon() * T::lit(0.5);
    let mut term = T::one();
    let mut sum = T::one();
    let mut comp = T::zero();
    let mut log_scale = T::zero();
    let mut small_run = 0;
    for k in 0..MAX_TERMS {
        let r = ratio(k);
        term = term * r;
        if term == T::zero() {
            return Ok(Scaled {
                mantissa: sum,
                log_scale,
            });
        }
        if !term.is_finite() {
            return Err(Error::NonConvergence { function, terms: k });
        }
        // Kahan summation; alternating Pochhammer terms cancel heavily.
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if term.abs() > rescale_above || sum.abs() > rescale_above {
            term = term / rescale_above;
            sum = sum / rescale_above;
            comp = comp / rescale_above;
            log_scale = log_scale + ln_rescale;
        }
        if term.abs() <= eps * sum.abs() && r.abs() < T::one() {
            small_run += 1;
            if small_run >= 3 {
                return Ok(Scaled {
                    mantissa: sum,
                    log_scale,
                });
            }
        } else {
            small_run = 0;
        }
    }
    Err(Error::NonConvergence {
        function,
        terms: MAX_TERMS,
    })
}
