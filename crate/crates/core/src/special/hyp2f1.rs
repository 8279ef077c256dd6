//! Gauss hypergeometric function `₂F₁(a, b; c; z)` for real `z ≤ 1`.
//!
//! * terminating series (`a` or `b` a non-positive integer): summed exactly;
//! * `|z| ≤ ½`: direct series;
//! * `z < −½`: Pfaff transformation onto `z/(z − 1) ∈ (⅓, 1)`;
//! * `½ < z < 1`: connection formula in `1 − z`. When `c − a − b` sits near an
//!   integer the two terms have cancelling poles; there the value is
//!   interpolated in `c` from four points a safe distance from the
//!   degenerate line.

use super::gamma::ln_gamma_signed;
use super::{sum_series, HypergeometricParams, Scaled};
use crate::error::{Error, Result};
use crate::scalar::Real;

const FN: &str = "gauss_2f1";
/// Half-width of the band around integer `c − a − b` handled by interpolation.
const DEGENERATE_BAND: f64 = 1e-3;

/// `₂F₁(a, b; c; z)`.
pub fn gauss_2f1<T: Real>(a: T, b: T, c: T, z: T) -> Result<T> {
    let one_minus_z = T::one() - z;
    let v = gauss_2f1_scaled_with_complement(a, b, c, z, one_minus_z)?.value();
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonConvergence { function: FN, terms: 0 })
    }
}

/// Scaled evaluation with `1 − z` supplied separately, so callers that know
/// the complement in closed form do not lose it to cancellation near `z = 1`.
pub(crate) fn gauss_2f1_scaled_with_complement<T: Real>(
    a: T,
    b: T,
    c: T,
    z: T,
    one_minus_z: T,
) -> Result<Scaled<T>> {
    let params = HypergeometricParams::new(a, b, c, z);
    params.validate()?;
    if z == T::zero() {
        return Ok(Scaled::plain(T::one()));
    }
    if params.terminating_degree().is_some() {
        return series(a, b, c, z);
    }
    if z > T::one() || !z.is_finite() {
        return Err(Error::UnsupportedArgument {
            function: FN,
            z: z.as_f64(),
        });
    }
    if one_minus_z == T::zero() {
        return gauss_sum_at_one(a, b, c).map(Scaled::plain);
    }
    let half = T::lit(0.5);
    if z < -half {
        // Pfaff: (1 − z)^{−a} ₂F₁(a, c − b; c; z/(z − 1))
        let zt = z / (z - T::one());
        let wt = T::one() / one_minus_z;
        let inner = gauss_2f1_scaled_with_complement(a, c - b, c, zt, wt)?;
        return Ok(inner.mul_exp(-a * one_minus_z.ln()));
    }
    if z <= half {
        return series(a, b, c, z);
    }
    connection(a, b, c, one_minus_z)
}

fn series<T: Real>(a: T, b: T, c: T, z: T) -> Result<Scaled<T>> {
    sum_series(FN, |k| {
        let k = T::from_usize_lossy(k);
        let num = (a + k) * (b + k);
        if num == T::zero() {
            return T::zero();
        }
        num / ((c + k) * (k + T::one())) * z
    })
}

/// Gauss's summation theorem, valid for `c − a − b > 0`.
fn gauss_sum_at_one<T: Real>(a: T, b: T, c: T) -> Result<T> {
    let s = c - a - b;
    if !(s > T::zero()) {
        return Err(Error::Domain {
            function: FN,
            value: 1.0,
        });
    }
    let (l1, s1) = ln_gamma_signed(c);
    let (l2, s2) = ln_gamma_signed(s);
    let (l3, s3) = ln_gamma_signed(c - a);
    let (l4, s4) = ln_gamma_signed(c - b);
    if s3 == T::zero() || s4 == T::zero() {
        return Ok(T::zero());
    }
    Ok(s1 * s2 * s3 * s4 * (l1 + l2 - l3 - l4).exp())
}

fn connection<T: Real>(a: T, b: T, c: T, w: T) -> Result<Scaled<T>> {
    let m = c - a - b;
    let eps = m - m.round();
    let band = T::lit(DEGENERATE_BAND);
    if eps.abs() >= band {
        return connection_generic(a, b, c, w);
    }
    // Four-point Lagrange interpolation in the offset from the degenerate
    // line, sampling at ±band and ±2·band.
    let nodes = [-band - band, -band, band, band + band];
    let mut samples = [Scaled::plain(T::zero()); 4];
    for (slot, &d) in samples.iter_mut().zip(nodes.iter()) {
        *slot = connection_generic(a, b, c + (d - eps), w)?;
    }
    let mut weighted = [(T::zero(), Scaled::plain(T::zero())); 4];
    for i in 0..4 {
        let mut weight = T::one();
        for j in 0..4 {
            if i != j {
                weight = weight * (eps - nodes[j]) / (nodes[i] - nodes[j]);
            }
        }
        weighted[i] = (weight, samples[i]);
    }
    Ok(Scaled::combine(&weighted))
}

/// Connection formula for non-integer `c − a − b`:
///
/// `₂F₁(a,b;c;z) = Γ(c)Γ(c−a−b)/(Γ(c−a)Γ(c−b)) ₂F₁(a,b;a+b−c+1;w)
///              + wᶜ⁻ᵃ⁻ᵇ Γ(c)Γ(a+b−c)/(Γ(a)Γ(b)) ₂F₁(c−a,c−b;c−a−b+1;w)`, `w = 1 − z`.
fn connection_generic<T: Real>(a: T, b: T, c: T, w: T) -> Result<Scaled<T>> {
    let m = c - a - b;
    let z = T::one() - w;
    let (lc, sc) = ln_gamma_signed(c);

    let (lm, sm) = ln_gamma_signed(m);
    let (lca, sca) = ln_gamma_signed(c - a);
    let (lcb, scb) = ln_gamma_signed(c - b);
    let first = if sca == T::zero() || scb == T::zero() {
        Scaled::plain(T::zero())
    } else {
        gauss_2f1_scaled_with_complement(a, b, a + b - c + T::one(), w, z)?
            .scale(sc * sm * sca * scb)
            .mul_exp(lc + lm - lca - lcb)
    };

    let (lnm, snm) = ln_gamma_signed(-m);
    let (la, sa) = ln_gamma_signed(a);
    let (lb, sb) = ln_gamma_signed(b);
    let second = if sa == T::zero() || sb == T::zero() {
        Scaled::plain(T::zero())
    } else {
        gauss_2f1_scaled_with_complement(c - a, c - b, m + T::one(), w, z)?
            .scale(sc * snm * sa * sb)
            .mul_exp(lc + lnm - la - lb + m * w.ln())
    };

    Ok(Scaled::combine(&[(T::one(), first), (T::one(), second)]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Direct Pochhammer sum in pairs of f64 (double-double), independent of
    /// the evaluator above. Only for terminating or rapidly convergent input.
    fn brute_force(a: f64, b: f64, c: f64, z: f64, terms: usize) -> f64 {
        let mut term = DD::one();
        let mut sum = DD::one();
        for k in 0..terms {
            let k = k as f64;
            term = term.mul(a + k).mul(b + k).mul(z).div((c + k) * (k + 1.0));
            if term.hi == 0.0 {
                break;
            }
            sum = sum.add(term);
        }
        sum.hi + sum.lo
    }

    #[derive(Clone, Copy)]
    struct DD {
        hi: f64,
        lo: f64,
    }

    impl DD {
        fn one() -> Self {
            DD { hi: 1.0, lo: 0.0 }
        }
        fn two_sum(a: f64, b: f64) -> (f64, f64) {
            let s = a + b;
            let bb = s - a;
            (s, (a - (s - bb)) + (b - bb))
        }
        fn add(self, o: DD) -> DD {
            let (s, e) = Self::two_sum(self.hi, o.hi);
            let e = e + self.lo + o.lo;
            let (hi, lo) = Self::two_sum(s, e);
            DD { hi, lo }
        }
        fn mul(self, x: f64) -> DD {
            let p = self.hi * x;
            let e = self.hi.mul_add(x, -p);
            let (hi, lo) = Self::two_sum(p, e + self.lo * x);
            DD { hi, lo }
        }
        fn div(self, x: f64) -> DD {
            let q1 = self.hi / x;
            let r = self.add(DD { hi: -q1 * x, lo: -q1.mul_add(x, -(q1 * x)) });
            let q2 = r.hi / x;
            let (hi, lo) = Self::two_sum(q1, q2);
            DD { hi, lo }
        }
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    fn gamma(x: f64) -> f64 {
        let (l, s) = ln_gamma_signed(x);
        s * l.exp()
    }

    #[test]
    fn reference_values() {
        assert_eq!(gauss_2f1(0.3, -1.7, 2.2, 0.0).unwrap(), 1.0);
        assert!(rel(gauss_2f1(1.0, 2.0, 2.0, 0.4).unwrap(), 5.0 / 3.0) < 1e-15);
        // Degree-3 polynomial, 40-digit reference.
        assert!(rel(gauss_2f1(-3.0, 2.7, 1.4, 0.9).unwrap(), 0.021_554_884_453_781_512_6) < 1e-13);
        assert!(rel(gauss_2f1(-3.0, 2.7, 1.4, 0.9).unwrap(), brute_force(-3.0, 2.7, 1.4, 0.9, 10)) < 1e-13);
    }

    #[test]
    fn elementary_closed_forms() {
        // ₂F₁(1,1;2;z) = −ln(1−z)/z, across both evaluation paths; c − a − b = 0 is degenerate.
        for &z in &[0.1, 0.45, 0.6, 0.9, 0.999, -0.3, -0.9, -5.0] {
            let exact = -(1.0f64 - z).ln() / z;
            assert!(rel(gauss_2f1(1.0, 1.0, 2.0, z).unwrap(), exact) < 1e-10, "z = {z}");
        }
        // ₂F₁(a,b;b;z) = (1−z)^{−a}
        for &z in &[0.3, 0.7, 0.95, -2.0] {
            let exact = (1.0f64 - z).powf(-0.37);
            assert!(rel(gauss_2f1(0.37, 1.9, 1.9, z).unwrap(), exact) < 1e-10, "z = {z}");
        }
        // ₂F₁(½,½;3/2;z²) = asin(z)/z
        for &x in &[0.2f64, 0.8, 0.99] {
            let exact = x.asin() / x;
            assert!(rel(gauss_2f1(0.5, 0.5, 1.5, x * x).unwrap(), exact) < 1e-10, "x = {x}");
        }
    }

    #[test]
    fn degenerate_connection_is_continuous() {
        // c − a − b = −2 + d for shrinking d, against the brute-force series.
        let (a, b, z) = (1.3, 2.1, 0.8);
        for &d in &[1e-2, 5e-3, 2e-3, 1e-3, 5e-4, 1e-6, 0.0, -3e-4] {
            let c = a + b - 2.0 + d;
            let reference = brute_force(a, b, c, z, 4000);
            assert!(rel(gauss_2f1(a, b, c, z).unwrap(), reference) < 1e-10, "d = {d}");
        }
    }

    #[test]
    fn extreme_complement_stays_finite() {
        let (a, b, c) = (0.31, 4.7, 1.9);
        let w = 6.25e-14;
        let s = gauss_2f1_scaled_with_complement(a, b, c, 1.0 - w, w).unwrap();
        // Leading singular behaviour Γ(c)Γ(a+b−c)/(Γ(a)Γ(b)) w^{c−a−b}
        let lead = gamma(c) * gamma(a + b - c) / (gamma(a) * gamma(b));
        let expected = lead.ln() + (c - a - b) * w.ln();
        assert!((s.ln_abs() - expected).abs() < 1e-6);
    }

    #[test]
    fn gauss_value_at_one() {
        let (a, b, c) = (0.4, 0.7, 2.3);
        let exact = gamma(c) * gamma(c - a - b) / (gamma(c - a) * gamma(c - b));
        assert!(rel(gauss_2f1(a, b, c, 1.0).unwrap(), exact) < 1e-13);
        let near = gauss_2f1(a, b, c, 1.0 - 1e-12).unwrap();
        assert!(rel(near, exact) < 1e-9);
        assert!(gauss_2f1(1.0, 2.0, 2.5, 1.0).is_err());
    }

    #[test]
    fn poles_and_domain() {
        assert!(matches!(gauss_2f1(1.0, 2.0, -1.0, 0.3), Err(Error::ParameterPole { .. })));
        assert!(gauss_2f1(-1.0, 2.0, -1.0, 0.3).is_ok());
        assert!(matches!(gauss_2f1(0.5, 0.5, 1.5, 1.5), Err(Error::UnsupportedArgument { .. })));
        // Terminating series are polynomials and accept any z.
        assert!(rel(gauss_2f1(-1.0, 2.0, 4.0, 3.0).unwrap(), 1.0 - 1.5) < 1e-15);
    }

    #[test]
    fn single_precision() {
        let v = gauss_2f1(1.0f32, 2.0, 2.0, 0.4).unwrap();
        assert!((v - 5.0 / 3.0).abs() < 1e-6);
    }

    proptest! {
        #[test]
        fn terminating_series_match_brute_force(
            n in 0usize..=20, b in 0.01f64..6.0, c in 0.05f64..6.0, z in 0.0f64..1.0
        ) {
            let a = -(n as f64);
            let got = gauss_2f1(a, b, c, z).unwrap();
            let reference = brute_force(a, b, c, z, 30);
            // cancellation can shrink the polynomial well below its largest term
            let mut scale = 1.0f64;
            let mut term = 1.0f64;
            for k in 0..n {
                let k = k as f64;
                term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
                scale = scale.max(term.abs());
            }
            prop_assert!((got - reference).abs() <= 1e-12 * reference.abs().max(1e-3 * scale));
        }

        #[test]
        fn euler_transformation(
            a in -2.5f64..2.5, b in -2.5f64..2.5, c in 0.3f64..4.0, z in -0.9f64..0.97
        ) {
            let m = c - a - b;
            prop_assume!((m - m.round()).abs() > 0.05);
            prop_assume!((a - a.round()).abs() > 0.05 && (b - b.round()).abs() > 0.05);
            let lhs = gauss_2f1(a, b, c, z).unwrap();
            let rhs = (1.0 - z).powf(m) * gauss_2f1(c - a, c - b, c, z).unwrap();
            prop_assert!((lhs - rhs).abs() <= 1e-9 * lhs.abs().max(rhs.abs()).max(1e-6));
        }

        #[test]
        fn series_and_connection_agree_at_half(
            a in -2.5f64..2.5, b in -2.5f64..2.5, c in 0.3f64..4.0
        ) {
            prop_assume!((a - a.round()).abs() > 0.05 && (b - b.round()).abs() > 0.05);
            let below = gauss_2f1(a, b, c, 0.5).unwrap();
            let above = connection(a, b, c, 0.5).unwrap().value();
            prop_assert!((below - above).abs() <= 1e-10 * below.abs().max(1e-3));
        }
    }
}
