//! Reduction of the spin-symmetric Dirac problem to the effective
//! Schrödinger-like problem `−F″ + (M + E − C) V_q(r) F = Ẽ F`.
//!
//! Every quantity here is a function of the trial energy `E`; nothing is
//! cached, so the root finders can evaluate them at arbitrary points.

use serde::{Deserialize, Serialize};

use crate::deformed::PotentialParams;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Mass `M` and the spin-symmetry constant `C = V(r) − S(r)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiracConstants<T> {
    pub m: T,
    pub c_spin: T,
}

impl<T: Real> DiracConstants<T> {
    pub fn new(m: T, c_spin: T) -> Result<Self> {
        let dc = Self { m, c_spin };
        dc.validate()?;
        Ok(dc)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.m > T::zero()) || !self.m.is_finite() {
            return Err(Error::InvalidParameter {
                name: "m",
                reason: "mass must be positive and finite".into(),
            });
        }
        if !self.c_spin.is_finite() {
            return Err(Error::InvalidParameter {
                name: "c_spin",
                reason: "must be finite".into(),
            });
        }
        Ok(())
    }

    /// `M + E − C`, the factor multiplying the potential.
    pub fn coupling(&self, energy: T) -> T {
        self.m + energy - self.c_spin
    }
}

/// All energy-dependent parameters of the effective problem.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EffectiveParams<T> {
    pub e_tilde: T,
    pub v1_tilde: T,
    pub v2_tilde: T,
    pub lambda: T,
    pub eta: T,
    /// Only meaningful for `0 < q < 1`.
    pub a: T,
    pub b: T,
    pub c: T,
}

/// `Ẽ = E² − M² + C(M − E)`, evaluated in the factored form `(E − M)(E + M − C)`.
pub fn effective_eigenvalue<T: Real>(energy: T, dc: &DiracConstants<T>) -> T {
    (energy - dc.m) * dc.coupling(energy)
}

/// `(Ṽ₁, Ṽ₂) = (M + E − C)(V₁, V₂)`; the well is attractive only while the
/// coupling is positive.
pub fn effective_strengths<T: Real>(
    energy: T,
    dc: &DiracConstants<T>,
    p: &PotentialParams<T>,
) -> Result<(T, T)> {
    let k = dc.coupling(energy);
    if !(k > T::zero()) {
        return Err(Error::NonBinding {
            energy: energy.as_f64(),
            prefactor: k.as_f64(),
        });
    }
    Ok((k * p.v1, k * p.v2))
}

/// `1 + (4/α²)(Ṽ₁/q − Ṽ₂/√q)`, the discriminant fixing the exponent at the
/// singular point (or at `z = 1` for `q < 1`).
pub fn lambda_discriminant<T: Real>(v1t: T, v2t: T, p: &PotentialParams<T>) -> T {
    let four = T::lit(4.0);
    T::one() + four / (p.alpha * p.alpha) * (v1t / p.q - v2t / p.q.sqrt())
}

/// `√(1 + (4/α²)(Ṽ₁/q + Ṽ₂/√q))`.
pub fn attractive_root<T: Real>(v1t: T, v2t: T, p: &PotentialParams<T>) -> T {
    let four = T::lit(4.0);
    (T::one() + four / (p.alpha * p.alpha) * (v1t / p.q + v2t / p.q.sqrt())).sqrt()
}

/// `η = √(−Ẽ)/α`, requiring `Ẽ < 0`.
pub fn decay_exponent<T: Real>(energy: T, dc: &DiracConstants<T>, alpha: T) -> Result<T> {
    let e_tilde = effective_eigenvalue(energy, dc);
    if !(e_tilde < T::zero()) {
        return Err(Error::NotBound {
            energy: energy.as_f64(),
            e_tilde: e_tilde.as_f64(),
        });
    }
    Ok((-e_tilde).sqrt() / alpha)
}

/// `(λ, η)` with `λ = ¼(1 + √(1 + (4/α²)(Ṽ₁/q − Ṽ₂/√q)))` and `η = √(−Ẽ)/α`.
///
/// Needs `q > 0`; the principal root is taken and a negative discriminant is
/// an error rather than being clipped.
pub fn shape_params<T: Real>(
    energy: T,
    dc: &DiracConstants<T>,
    p: &PotentialParams<T>,
) -> Result<(T, T)> {
    if !(p.q > T::zero()) {
        return Err(Error::InvalidParameter {
            name: "q",
            reason: "shape parameters need q > 0".into(),
        });
    }
    let (v1t, v2t) = effective_strengths(energy, dc, p)?;
    let eta = decay_exponent(energy, dc, p.alpha)?;
    let disc = lambda_discriminant(v1t, v2t, p);
    if disc < T::zero() {
        return Err(Error::Discriminant { value: disc.as_f64() });
    }
    let quarter = T::lit(0.25);
    Ok((quarter * (T::one() + disc.sqrt()), eta))
}

/// `(a, b, c)` of the `0 < q < 1` solution:
/// `a, b = η + λ + ¼(1 ∓ √(1 + (4/(α²q))(Ṽ₁ + Ṽ₂√q)))`, `c = 2η + 1`.
pub fn hypergeometric_abc<T: Real>(
    energy: T,
    dc: &DiracConstants<T>,
    p: &PotentialParams<T>,
) -> Result<(T, T, T)> {
    let (lambda, eta) = shape_params(energy, dc, p)?;
    let (v1t, v2t) = effective_strengths(energy, dc, p)?;
    let root = attractive_root(v1t, v2t, p);
    let quarter = T::lit(0.25);
    let base = eta + lambda;
    Ok((
        base + quarter * (T::one() - root),
        base + quarter * (T::one() + root),
        eta + eta + T::one(),
    ))
}

/// Everything at once; `a, b, c` are filled for any `q > 0`.
pub fn effective_params<T: Real>(
    energy: T,
    dc: &DiracConstants<T>,
    p: &PotentialParams<T>,
) -> Result<EffectiveParams<T>> {
    let (v1_tilde, v2_tilde) = effective_strengths(energy, dc, p)?;
    let (lambda, eta) = shape_params(energy, dc, p)?;
    let (a, b, c) = hypergeometric_abc(energy, dc, p)?;
    Ok(EffectiveParams {
        e_tilde: effective_eigenvalue(energy, dc),
        v1_tilde,
        v2_tilde,
        lambda,
        eta,
        a,
        b,
        c,
    })
}

/// `(C − M, M)`: the only energies with `Ẽ < 0` and `M + E − C > 0`.
pub fn bound_window<T: Real>(dc: &DiracConstants<T>) -> Result<(T, T)> {
    let two_m = dc.m + dc.m;
    if !(dc.c_spin < two_m) {
        return Err(Error::EmptyWindow {
            c_spin: dc.c_spin.as_f64(),
            two_m: two_m.as_f64(),
        });
    }
    Ok((dc.c_spin - dc.m, dc.m))
}

/// `Ṽ₂/(2α√Ṽ₁)`, the Morse well parameter appearing in the `q → 0` limit.
pub fn morse_well_parameter<T: Real>(v1t: T, v2t: T, alpha: T) -> T {
    v2t / ((alpha + alpha) * v1t.sqrt())
}

/// Small-`q` asymptotes of `λ`, `a` and `b`:
/// `λ ≈ ¼(1 − Ṽ₂/(α√Ṽ₁) + 2√Ṽ₁/(α√q))`, `a ≈ ½ + η − Ṽ₂/(2α√Ṽ₁)`,
/// `b ≈ √Ṽ₁/(α√q)`. At `q = 0` the first and last are infinite.
pub fn morse_limit_params<T: Real>(
    energy: T,
    dc: &DiracConstants<T>,
    p: &PotentialParams<T>,
) -> Result<(T, T, T)> {
    let (v1t, v2t) = effective_strengths(energy, dc, p)?;
    let eta = decay_exponent(energy, dc, p.alpha)?;
    let kappa = morse_well_parameter(v1t, v2t, p.alpha);
    let growth = v1t.sqrt() / (p.alpha * p.q.sqrt());
    let half = T::lit(0.5);
    let lambda = T::lit(0.25) * (T::one() - kappa - kappa + growth + growth);
    Ok((lambda, half + eta - kappa, growth))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dc(m: f64, c: f64) -> DiracConstants<f64> {
        DiracConstants::new(m, c).unwrap()
    }

    fn pot(v1: f64, v2: f64, alpha: f64, q: f64) -> PotentialParams<f64> {
        PotentialParams::new(v1, v2, alpha, q).unwrap()
    }

    #[test]
    fn effective_eigenvalue_examples() {
        assert_eq!(effective_eigenvalue(1.3, &dc(1.3, 0.4)), 0.0);
        assert_eq!(effective_eigenvalue(0.4 - 1.3, &dc(1.3, 0.4)), 0.0);
        assert!((effective_eigenvalue(0.5, &dc(1.0, 0.0)) + 0.75).abs() < 1e-16);
    }

    #[test]
    fn effective_strength_examples() {
        let p = pot(4.0, 1.0, 1.0, 2.0);
        let d = dc(1.0, 0.3);
        let (a, b) = effective_strengths(0.3 - 1.0 + 1.0, &d, &p).unwrap();
        assert!((a - 4.0).abs() < 1e-15 && (b - 1.0).abs() < 1e-15);
        assert!(matches!(
            effective_strengths(-0.75, &d, &p),
            Err(Error::NonBinding { .. })
        ));
        let (a, b) = effective_strengths(0.8, &dc(1.0, 0.2), &pot(3.0, 1.0, 1.0, 2.0)).unwrap();
        assert!((a - 4.8).abs() < 1e-14 && (b - 1.6).abs() < 1e-15);
    }

    #[test]
    fn shape_param_examples() {
        // Ṽ₁/q = Ṽ₂/√q collapses the discriminant: q = 4, V₁ = 2V₂.
        let d = dc(1.0, 0.0);
        let (lambda, _) = shape_params(0.2, &d, &pot(2.0, 1.0, 1.0, 4.0)).unwrap();
        assert!((lambda - 0.5).abs() < 1e-15);
        // Ẽ = −α²: α = 1, M = 1, C = 0 gives E = 0.
        let (_, eta) = shape_params(0.0, &d, &pot(4.0, 1.0, 1.0, 2.0)).unwrap();
        assert!((eta - 1.0).abs() < 1e-15);
        // q = 2, α = 1, Ṽ₁ = 4, Ṽ₂ = 1: prefactor 1 at E = 0 with M = 1, C = 0.
        let (lambda, _) = shape_params(0.0, &d, &pot(4.0, 1.0, 1.0, 2.0)).unwrap();
        assert!((lambda - 0.871_066_264_341_707_03).abs() < 1e-15);
    }

    #[test]
    fn shape_param_errors() {
        let d = dc(1.0, 0.0);
        assert!(matches!(
            shape_params(0.9, &d, &pot(30.0, 29.0, 0.5, 10.0)),
            Err(Error::Discriminant { .. })
        ));
        assert!(matches!(shape_params(1.0, &d, &pot(4.0, 1.0, 1.0, 2.0)), Err(Error::NotBound { .. })));
        assert!(shape_params(0.0, &d, &pot(4.0, 1.0, 1.0, 0.0)).is_err());
    }

    #[test]
    fn abc_examples() {
        let d = dc(1.0, 0.0);
        let p = pot(4.0, 1.0, 1.0, 0.3);
        let (a, b, c) = hypergeometric_abc(0.5, &d, &p).unwrap();
        // chain evaluated at 40 digits
        assert!((a - 1.061_033_786_877_765_78).abs() < 1e-14);
        assert!((b - 5.855_677_964_241_277_97).abs() < 1e-14);
        assert!((c - 2.732_050_807_568_877_29).abs() < 1e-14);
        // η = ½ ⇒ c = 2: Ẽ = −¼ at α = 1.
        let e_half = 0.75f64.sqrt(); // E² − 1 = −¼
        let (_, _, c) = hypergeometric_abc(e_half, &d, &p).unwrap();
        assert!((c - 2.0).abs() < 1e-14);
    }

    #[test]
    fn window_examples() {
        assert_eq!(bound_window(&dc(1.0, 0.0)).unwrap(), (-1.0, 1.0));
        assert_eq!(bound_window(&dc(5.0, 3.0)).unwrap(), (-2.0, 5.0));
        assert!(matches!(bound_window(&dc(1.0, 2.0)), Err(Error::EmptyWindow { .. })));
        assert!(DiracConstants::new(0.0, 0.0).is_err());
    }

    #[test]
    fn morse_limit_examples() {
        // a = ½ + η − Ṽ₂/(2α√Ṽ₁) with η = ½ and the well parameter ¼
        let d = dc(1.0, 0.0);
        let e = 0.75f64.sqrt();
        // Ṽ₂/(2√Ṽ₁) = ¼ with coupling k: k V₂ / (2√(k V₁)) = ¼
        let k = d.coupling(e);
        let v1 = 4.0;
        let v2 = 0.5 * (k * v1).sqrt() / k;
        let p = PotentialParams { v1, v2, alpha: 1.0, q: 1e-6 };
        let (_, a_lim, b) = morse_limit_params(e, &d, &p).unwrap();
        assert!((a_lim - 0.75).abs() < 1e-14);
        assert!((b * p.q.sqrt() - (k * v1).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn morse_asymptotes_track_exact_parameters() {
        let d = dc(1.0, 0.0);
        let p = pot(4.0, 3.0, 1.0, 1e-6);
        let (lambda_lim, a_lim, b_lim) = morse_limit_params(0.6, &d, &p).unwrap();
        let (lambda, _) = shape_params(0.6, &d, &p).unwrap();
        let (a, b, _) = hypergeometric_abc(0.6, &d, &p).unwrap();
        assert!((b - b_lim).abs() / b_lim < 1e-2);
        assert!((lambda - lambda_lim).abs() / lambda_lim < 1e-2);
        assert!((a - a_lim).abs() < 1e-2);
    }

    proptest! {
        #[test]
        fn factorization_identity(e in -10.0f64..10.0, m in 0.1f64..10.0, c in -5.0f64..5.0) {
            let d = DiracConstants { m, c_spin: c };
            let expanded = e * e - m * m + c * (m - e);
            let scale = e * e + m * m + (c * m).abs() + (c * e).abs();
            prop_assert!((effective_eigenvalue(e, &d) - expanded).abs() <= 4.0 * f64::EPSILON * scale);
        }

        #[test]
        fn window_interior_binds(m in 0.1f64..5.0, frac in 0.0f64..1.9, t in 1e-6f64..0.999_999) {
            let d = DiracConstants { m, c_spin: frac * m };
            let (lo, hi) = bound_window(&d).unwrap();
            let e = lo + t * (hi - lo);
            prop_assert!(effective_eigenvalue(e, &d) < 0.0);
            prop_assert!(d.coupling(e) > 0.0);
            prop_assert!(effective_eigenvalue(lo, &d).abs() <= 1e-15 * m * m);
            prop_assert!(effective_eigenvalue(hi, &d).abs() <= 1e-15 * m * m);
        }

        #[test]
        fn abc_identities(
            t in 0.01f64..0.99, v1 in 1.0f64..30.0, r in 0.01f64..0.99,
            alpha in 0.3f64..3.0, q in 0.01f64..0.99, c_spin in 0.0f64..0.5
        ) {
            let d = DiracConstants { m: 1.0, c_spin };
            let p = PotentialParams { v1, v2: r * v1, alpha, q };
            let (lo, hi) = bound_window(&d).unwrap();
            let e = lo + t * (hi - lo);
            let (lambda, eta) = shape_params(e, &d, &p).unwrap();
            let (a, b, c) = hypergeometric_abc(e, &d, &p).unwrap();
            let tol = 8.0 * f64::EPSILON * (a.abs() + b.abs());
            prop_assert!((a + b - (2.0 * (eta + lambda) + 0.5)).abs() <= tol);
            prop_assert!((c - (2.0 * eta + 1.0)).abs() <= 4.0 * f64::EPSILON * c);
            prop_assert!(b - a > 0.0);
            prop_assert!(lambda > 0.0 && eta > 0.0);
        }
    }
}
