//! Deformed hyperbolic functions and the deformed generalized Pöschl-Teller
//! potential.
//!
//! The deformed functions are `sinh_q(x) = (eˣ − q e⁻ˣ)/2` and
//! `cosh_q(x) = (eˣ + q e⁻ˣ)/2`. For `q > 0` they are shifted and rescaled
//! ordinary hyperbolic functions, `sinh_q(x) = √q sinh(x − ln(q)/2)`, so the
//! potential is singular where `sinh_q(αr)` vanishes: `r₀ = ln(q)/(2α)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// `(eˣ − q e⁻ˣ)/2`.
pub fn sinh_q<T: Real>(x: T, q: T) -> T {
    T::lit(0.5) * (x.exp() - deformed_tail(x, q))
}

/// `(eˣ + q e⁻ˣ)/2`.
pub fn cosh_q<T: Real>(x: T, q: T) -> T {
    T::lit(0.5) * (x.exp() + deformed_tail(x, q))
}

/// `q e⁻ˣ`, exactly zero for `q = 0` even where `e⁻ˣ` overflows.
fn deformed_tail<T: Real>(x: T, q: T) -> T {
    if q == T::zero() {
        T::zero()
    } else {
        q * (-x).exp()
    }
}

/// `sinh_q(x)/cosh_q(x)`; fails where `cosh_q` vanishes (only possible for `q < 0`).
pub fn tanh_q<T: Real>(x: T, q: T) -> Result<T> {
    // Ratio of the factored forms; the e^|x| prefactors cancel.
    let (num, den) = if x >= T::zero() {
        let w = q * (-(x + x)).exp();
        (T::one() - w, T::one() + w)
    } else {
        let w = (x + x).exp();
        (w - q, w + q)
    };
    if den == T::zero() {
        return Err(Error::Domain {
            function: "tanh_q",
            value: x.as_f64(),
        });
    }
    Ok(num / den)
}

/// Which quantization procedure a deformation selects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// `q = 0`: radial Morse potential.
    Morse,
    /// `0 < q < 1`: potential regular on the whole half-line.
    Regular,
    /// `q ≥ 1`: impenetrable wall at `r₀ = ln(q)/(2α)`.
    Singular,
}

/// `V_q(r) = (V₁ − V₂ cosh_q(αr)) / sinh_q²(αr)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PotentialParams<T> {
    pub v1: T,
    pub v2: T,
    pub alpha: T,
    pub q: T,
}

impl<T: Real> PotentialParams<T> {
    /// Validates `V₁ > V₂ > 0`, `α > 0` and `q ≥ 0`.
    pub fn new(v1: T, v2: T, alpha: T, q: T) -> Result<Self> {
        let p = Self { v1, v2, alpha, q };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |name, reason: &str| {
            Err(Error::InvalidParameter {
                name,
                reason: reason.to_string(),
            })
        };
        if !(self.v2 > T::zero()) {
            return bad("v2", "must be positive");
        }
        if !(self.v1 > self.v2) {
            return bad("v1", "must exceed v2");
        }
        if !(self.alpha > T::zero()) {
            return bad("alpha", "must be positive");
        }
        if !(self.q >= T::zero()) || !self.q.is_finite() {
            return bad("q", "must be finite and non-negative");
        }
        Ok(())
    }

    pub fn regime(&self) -> Regime {
        if self.q == T::zero() {
            Regime::Morse
        } else if self.q < T::one() {
            Regime::Regular
        } else {
            Regime::Singular
        }
    }

    /// The same strengths and screening with a different deformation.
    pub fn with_q(&self, q: T) -> Self {
        Self { q, ..*self }
    }

    /// Both strengths multiplied by `factor`.
    pub fn scaled(&self, factor: T) -> Self {
        Self {
            v1: self.v1 * factor,
            v2: self.v2 * factor,
            ..*self
        }
    }

    /// Left edge of the physical domain: `r₀` for `q ≥ 1`, otherwise 0.
    pub fn left_boundary(&self) -> T {
        singularity_radius(self).unwrap_or_else(T::zero)
    }
}

/// `r₀ = ln(q)/(2α)` for `q ≥ 1`; `None` when the potential is regular on `r > 0`.
pub fn singularity_radius<T: Real>(p: &PotentialParams<T>) -> Option<T> {
    if p.q >= T::one() {
        Some(p.q.ln() / (p.alpha + p.alpha))
    } else {
        None
    }
}

/// Value of the deformed potential at radius `r`.
///
/// Written as `[4V₁e^{−2x} − 2V₂e^{−x}(1 + q e^{−2x})] / (1 − q e^{−2x})²`
/// with `x = αr`, which never overflows and reduces to the Morse form at
/// `q = 0`.
pub fn potential_value<T: Real>(r: T, p: &PotentialParams<T>) -> Result<T> {
    if p.q == T::zero() {
        return Ok(morse_value(r, p.v1, p.v2, p.alpha));
    }
    let inside = match singularity_radius(p) {
        Some(r0) => !(r > r0),
        None => !(r >= T::zero()),
    };
    if inside {
        return Err(Error::Domain {
            function: "potential_value",
            value: r.as_f64(),
        });
    }
    let x = p.alpha * r;
    let e1 = (-x).exp();
    let e2 = e1 * e1;
    let gap = T::one() - p.q * e2;
    let four = T::lit(4.0);
    let two = T::lit(2.0);
    Ok((four * p.v1 * e2 - two * p.v2 * e1 * (T::one() + p.q * e2)) / (gap * gap))
}

/// Value of the potential at distance `s > 0` from the left boundary
/// (`r₀` for `q ≥ 1`, otherwise 0).
///
/// Near the wall `1 − q e^{−2αr}` is computed as `−expm1(−2αs)`, which keeps
/// full relative precision for tiny `s` where the absolute radius cannot.
pub fn potential_at_offset<T: Real>(s: T, p: &PotentialParams<T>) -> Result<T> {
    if p.q < T::one() {
        return potential_value(s, p);
    }
    if !(s > T::zero()) {
        return Err(Error::Domain {
            function: "potential_at_offset",
            value: s.as_f64(),
        });
    }
    let sq = p.q.sqrt();
    let e1 = (-p.alpha * s).exp();
    let e2 = e1 * e1;
    let gap = -(-(p.alpha + p.alpha) * s).exp_m1();
    let four = T::lit(4.0);
    let two = T::lit(2.0);
    Ok((four * p.v1 * e2 / p.q - two * p.v2 * e1 / sq * (T::one() + e2)) / (gap * gap))
}

/// `4V₁e^{−2αr} − 2V₂e^{−αr}`.
pub fn morse_value<T: Real>(r: T, v1: T, v2: T, alpha: T) -> T {
    let e1 = (-alpha * r).exp();
    T::lit(4.0) * v1 * e1 * e1 - T::lit(2.0) * v2 * e1
}

/// Strengths `(V₁, V₂)` of a Morse well with depth `De` at equilibrium `re`.
pub fn morse_from_physical<T: Real>(de: T, re: T, alpha: T) -> Result<(T, T)> {
    if !(de > T::zero()) {
        return Err(Error::InvalidParameter {
            name: "de",
            reason: "well depth must be positive".into(),
        });
    }
    let e = (alpha * re).exp();
    Ok((de / T::lit(4.0) * e * e, de * e))
}
