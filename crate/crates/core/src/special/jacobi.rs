use crate::error::{Error, Result};
use crate::scalar::Real;

/// Jacobi polynomial `P_n^{(α,β)}(x)` by the three-term recurrence in `n`.
///
/// The hypergeometric form `Γ(n+α+1)/(n! Γ(α+1)) ₂F₁(−n, n+α+β+1; α+1; (1−x)/2)`
/// is equivalent but cancels badly once `(1 − x)/2` approaches one.
pub fn jacobi_p<T: Real>(n: usize, alpha: T, beta: T, x: T) -> Result<T> {
    let minus_one = -T::one();
    if !(alpha > minus_one) || !(beta > minus_one) {
        return Err(Error::InvalidParameter {
            name: if alpha > minus_one { "beta" } else { "alpha" },
            reason: "Jacobi parameters must exceed -1".into(),
        });
    }
    let one = T::one();
    let two = T::lit(2.0);
    let mut p0 = one;
    if n == 0 {
        return Ok(p0);
    }
    let ab = alpha + beta;
    let mut p1 = (alpha + one) + (ab + two) * (x - one) / two;
    for k in 2..=n {
        let k = T::from_usize_lossy(k);
        let s = two * k + ab;
        let c1 = two * k * (k + ab) * (s - two);
        let c2 = (s - one) * (s * (s - two) * x + alpha * alpha - beta * beta);
        let c3 = two * (k + alpha - one) * (k + beta - one) * s;
        let p2 = (c2 * p1 - c3 * p0) / c1;
        p0 = p1;
        p1 = p2;
    }
    Ok(p1)
}
