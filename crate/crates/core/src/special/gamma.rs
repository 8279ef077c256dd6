use crate::error::{Error, Result};
use crate::scalar::Real;

// Lanczos g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Natural logarithm of `Γ(x)` for `x > 0`.
pub fn ln_gamma<T: Real>(x: T) -> Result<T> {
    if !(x > T::zero()) || !x.is_finite() {
        return Err(Error::Domain {
            function: "ln_gamma",
            value: x.as_f64(),
        });
    }
    Ok(ln_gamma_positive(x))
}

fn ln_gamma_positive<T: Real>(x: T) -> T {
    if x < T::lit(0.5) {
        // Γ(x) = Γ(x + 1)/x keeps the Lanczos sum in its accurate range.
        return ln_gamma_positive(x + T::one()) - x.ln();
    }
    let xm = x - T::one();
    let mut sum = T::lit(LANCZOS[0]);
    for (i, &coef) in LANCZOS.iter().enumerate().skip(1) {
        sum = sum + T::lit(coef) / (xm + T::from_usize_lossy(i));
    }
    let t = xm + T::lit(LANCZOS_G + 0.5);
    let half_ln_two_pi = T::lit(0.918_938_533_204_672_7);
    half_ln_two_pi + (xm + T::lit(0.5)) * t.ln() - t + sum.ln()
}

/// `sin(πx)` with the argument reduced to `[−½, ½]` first.
pub(crate) fn sin_pi<T: Real>(x: T) -> T {
    let n = x.round();
    let r = x - n;
    let s = (T::PI() * r).sin();
    let odd = n.to_i64().map(|k| k & 1 == 1).unwrap_or(false);
    if odd {
        -s
    } else {
        s
    }
}

/// `(ln|Γ(x)|, sign Γ(x))` for any real `x`. At the poles `x = 0, −1, −2, …`
/// the sign is zero and the logarithm is `+∞`, so `sign · exp(−ln)` gives the
/// reciprocal gamma function exactly.
pub(crate) fn ln_gamma_signed<T: Real>(x: T) -> (T, T) {
    if x > T::zero() {
        return (ln_gamma_positive(x), T::one());
    }
    if x == x.floor() {
        return (T::infinity(), T::zero());
    }
    // Reflection: Γ(x) Γ(1 − x) = π / sin(πx), with 1 − x > 1.
    let s = sin_pi(x);
    let ln_abs = T::PI().ln() - s.abs().ln() - ln_gamma_positive(T::one() - x);
    (ln_abs, s.signum())
}

/// `true` when `x` is zero or a negative integer.
pub(crate) fn is_non_positive_integer<T: Real>(x: T) -> bool {
    x <= T::zero() && x == x.floor()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_values() {
        assert!(ln_gamma(1.0f64).unwrap().abs() < 1e-15);
        assert!(ln_gamma(2.0f64).unwrap().abs() < 1e-15);
        let half = ln_gamma(0.5f64).unwrap();
        assert!((half - 0.5 * std::f64::consts::PI.ln()).abs() < 1e-14);
        let ten = ln_gamma(10.0f64).unwrap();
        assert!(((ten - 362_880.0f64.ln()) / ten).abs() < 1e-14);
    }

    #[test]
    fn factorials_to_relative_1e13() {
        let mut ln_fact = 0.0f64;
        for n in 1..170usize {
            let v = ln_gamma(n as f64 + 1.0).unwrap();
            if n >= 2 {
                assert!(((v - ln_fact) / ln_fact).abs() < 1e-13, "n = {n}");
            }
            ln_fact += (n as f64 + 1.0).ln();
        }
    }

    #[test]
    fn half_integers_via_duplication() {
        // Γ(n + ½) = (2n)! √π / (4ⁿ n!)
        for n in 1..60usize {
            let x = n as f64 + 0.5;
            let mut expected = 0.5 * std::f64::consts::PI.ln() - (n as f64) * 4f64.ln();
            for k in (n + 1)..=(2 * n) {
                expected += (k as f64).ln();
            }
            let got = ln_gamma(x).unwrap();
            assert!(((got - expected) / expected).abs() < 1e-13, "x = {x}");
        }
    }

    #[test]
    fn small_arguments() {
        // Γ(x) ≈ 1/x − γ for tiny x
        let x = 1e-8f64;
        let expected = (1.0 / x - 0.577_215_664_901_532_9).ln();
        assert!((ln_gamma(x).unwrap() - expected).abs() < 1e-12);
    }

    #[test]
    fn domain_errors() {
        assert!(ln_gamma(0.0f64).is_err());
        assert!(ln_gamma(-1.5f64).is_err());
        assert!(ln_gamma(f64::NAN).is_err());
    }

    #[test]
    fn signed_log_gamma_for_negative_arguments() {
        // Γ(−½) = −2√π, Γ(−3/2) = 4√π/3
        let sqrt_pi = std::f64::consts::PI.sqrt();
        let (l, s) = ln_gamma_signed(-0.5f64);
        assert_eq!(s, -1.0);
        assert!((l - (2.0 * sqrt_pi).ln()).abs() < 1e-14);
        let (l, s) = ln_gamma_signed(-1.5f64);
        assert_eq!(s, 1.0);
        assert!((l - (4.0 * sqrt_pi / 3.0).ln()).abs() < 1e-14);
        let (l, s) = ln_gamma_signed(-3.0f64);
        assert_eq!(s, 0.0);
        assert!(l.is_infinite());
    }

    #[test]
    fn single_precision() {
        let v = ln_gamma(10.0f32).unwrap();
        assert!((v - 12.801_827).abs() < 1e-5);
    }
}
