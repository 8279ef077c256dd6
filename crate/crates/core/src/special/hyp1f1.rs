//! Kummer's confluent hypergeometric function `₁F₁(a; c; z)`.
//!
//! Positive arguments use the defining series with rescaling, which stays
//! finite far beyond `e^{709}`; negative arguments go through Kummer's
//! transformation `₁F₁(a; c; z) = eᶻ ₁F₁(c − a; c; −z)` so the summed series
//! never alternates because of `z`.

use super::gamma::is_non_positive_integer;
use super::{sum_series, Scaled};
use crate::error::{Error, Result};
use crate::scalar::Real;

const FN: &str = "kummer_1f1";

/// `₁F₁(a; c; z)`.
pub fn kummer_1f1<T: Real>(a: T, c: T, z: T) -> Result<T> {
    let v = kummer_1f1_scaled(a, c, z)?.value();
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonConvergence { function: FN, terms: 0 })
    }
}

pub(crate) fn kummer_1f1_scaled<T: Real>(a: T, c: T, z: T) -> Result<Scaled<T>> {
    let terminating = is_non_positive_integer(a);
    if is_non_positive_integer(c) {
        let fine = terminating && (-a) <= (-c);
        if !fine {
            return Err(Error::ParameterPole {
                function: FN,
                value: c.as_f64(),
            });
        }
    }
    if !z.is_finite() {
        return Err(Error::Domain {
            function: FN,
            value: z.as_f64(),
        });
    }
    if z == T::zero() {
        return Ok(Scaled::plain(T::one()));
    }
    if z < T::zero() && !terminating {
        return Ok(series(c - a, c, -z)?.mul_exp(z));
    }
    series(a, c, z)
}

fn series<T: Real>(a: T, c: T, z: T) -> Result<Scaled<T>> {
    sum_series(FN, |k| {
        let k = T::from_usize_lossy(k);
        if a + k == T::zero() {
            return T::zero();
        }
        (a + k) / ((c + k) * (k + T::one())) * z
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn reference_values() {
        assert_eq!(kummer_1f1(0.3f64, 1.7, 0.0).unwrap(), 1.0);
        assert!(rel(kummer_1f1(1.0f64, 1.0, 2.5).unwrap(), 2.5f64.exp()) < 1e-15);
        // 1 − 2·(3/1.5) + 2·9/(1.5·2.5·2) = −0.6
        assert!(rel(kummer_1f1(-2.0f64, 1.5, 3.0).unwrap(), -0.6) < 1e-14);
    }

    #[test]
    fn closed_forms() {
        // ₁F₁(1; 2; z) = (eᶻ − 1)/z
        for &z in &[-30.0f64, -2.0, 0.5, 7.0, 40.0] {
            let exact = z.exp_m1() / z;
            assert!(rel(kummer_1f1(1.0, 2.0, z).unwrap(), exact) < 1e-12, "z = {z}");
        }
        // Laguerre: ₁F₁(−n; 1; z) = Lₙ(z); L₃(z) = (−z³ + 9z² − 18z + 6)/6
        for &z in &[0.3f64, 2.0, 11.0] {
            let exact = (-z * z * z + 9.0 * z * z - 18.0 * z + 6.0) / 6.0;
            assert!(rel(kummer_1f1(-3.0, 1.0, z).unwrap(), exact) < 1e-13);
        }
    }

    #[test]
    fn huge_argument_is_scaled() {
        // ₁F₁(a; a; z) = eᶻ well past the f64 range
        let s = kummer_1f1_scaled(2.5f64, 2.5, 900.0).unwrap();
        assert!((s.ln_abs() - 900.0).abs() < 1e-10);
        assert!(kummer_1f1(2.5f64, 2.5, 900.0).is_err());
        // Leading asymptote Γ(c)/Γ(a) eᶻ z^{a−c}
        let (a, c, z) = (0.7f64, 2.9, 600.0);
        let s = kummer_1f1_scaled(a, c, z).unwrap();
        let lead = super::super::ln_gamma(c).unwrap() - super::super::ln_gamma(a).unwrap() + z + (a - c) * z.ln();
        assert!((s.ln_abs() - lead).abs() < 1e-2);
    }

    #[test]
    fn sign_change_across_negative_integer_parameter() {
        // Near a = −n the large-z value flips sign with a + n.
        let z = 200.0f64;
        let below = kummer_1f1_scaled(-2.0 - 1e-3, 3.2, z).unwrap().signum();
        let above = kummer_1f1_scaled(-2.0 + 1e-3, 3.2, z).unwrap().signum();
        assert_ne!(below, above);
    }

    #[test]
    fn pole() {
        assert!(kummer_1f1(1.0f64, -2.0, 1.0).is_err());
        assert!(kummer_1f1(-1.0f64, -2.0, 1.0).is_ok());
    }

    proptest! {
        #[test]
        fn kummer_reflection(a in -4.0f64..4.0, c in 0.2f64..5.0, z in -15.0f64..15.0) {
            let lhs = kummer_1f1(a, c, z).unwrap();
            // Evaluate the right side through the plain series route.
            let rhs = z.exp() * series(c - a, c, -z).unwrap().value();
            let scale = lhs.abs().max(rhs.abs());
            // The alternating side loses about ε·(largest term)·eᶻ.
            let mut big = 1.0f64;
            let mut t = 1.0f64;
            for k in 0..200 {
                let k = k as f64;
                t *= (c - a + k) / ((c + k) * (k + 1.0)) * (-z);
                big = big.max(t.abs());
            }
            prop_assert!((lhs - rhs).abs() <= 1e-9 * scale + 1e-13 * big * z.exp());
        }
    }
}
