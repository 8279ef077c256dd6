//! Sign-change scanning and bisection shared by the spectrum solvers.

use rayon::prelude::*;

use crate::error::{Error, Result};

/// A cell `[lo, hi]` over which the scanned function changes sign.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub sign_lo: f64,
}

#[derive(Debug, Clone, Default)]
pub(crate) struct Scan {
    pub brackets: Vec<Bracket>,
    /// Scan points where the function could not be evaluated.
    pub skipped: usize,
}

/// Evaluates the sign of `f` on `points + 1` uniformly spaced abscissae and
/// records every sign change. Failed evaluations are skipped; a bracket then
/// spans the gap. Adjacent bracketing cells are rescanned at ten times the
/// resolution so that closely spaced root pairs are not merged.
pub(crate) fn scan<F>(lo: f64, hi: f64, points: usize, f: &F) -> Scan
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    let coarse = scan_uniform(lo, hi, points, f);
    let mut brackets: Vec<Bracket> = Vec::with_capacity(coarse.brackets.len());
    let mut skipped = coarse.skipped;
    let cell = (hi - lo) / points as f64;
    let mut i = 0;
    while i < coarse.brackets.len() {
        let b = coarse.brackets[i];
        let adjacent = coarse
            .brackets
            .get(i + 1)
            .map(|n| (n.lo - b.hi).abs() <= 1e-9 * cell)
            .unwrap_or(false);
        if adjacent {
            let n = coarse.brackets[i + 1];
            let fine = scan_uniform(b.lo, n.hi, 20, f);
            skipped += fine.skipped;
            brackets.extend(fine.brackets);
            i += 2;
        } else {
            brackets.push(b);
            i += 1;
        }
    }
    Scan { brackets, skipped }
}

fn scan_uniform<F>(lo: f64, hi: f64, points: usize, f: &F) -> Scan
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    let step = (hi - lo) / points as f64;
    let samples: Vec<(f64, Option<f64>)> = (0..=points)
        .into_par_iter()
        .map(|i| {
            let x = if i == points { hi } else { lo + step * i as f64 };
            let s = f(x).ok().filter(|v| !v.is_nan()).map(sign_of);
            (x, s)
        })
        .collect();
    let skipped = samples.iter().filter(|(_, s)| s.is_none()).count();
    let mut brackets = Vec::new();
    let mut last: Option<(f64, f64)> = None;
    for (x, s) in samples {
        let Some(s) = s else { continue };
        if s == 0.0 {
            // exact hit: a degenerate bracket around the point
            brackets.push(Bracket {
                lo: x,
                hi: x,
                sign_lo: 0.0,
            });
            last = None;
            continue;
        }
        if let Some((xl, sl)) = last {
            if sl != s {
                brackets.push(Bracket {
                    lo: xl,
                    hi: x,
                    sign_lo: sl,
                });
            }
        }
        last = Some((x, s));
    }
    Scan { brackets, skipped }
}

pub(crate) fn sign_of(v: f64) -> f64 {
    if v == 0.0 {
        0.0
    } else {
        v.signum()
    }
}

/// Bisects a bracket down to width `tol`; returns the midpoint of the final
/// cell. A failed evaluation is retried slightly off the midpoint.
pub(crate) fn bisect<F>(bracket: Bracket, tol: f64, f: &F) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let Bracket {
        mut lo,
        mut hi,
        sign_lo,
    } = bracket;
    if sign_lo == 0.0 {
        return Ok(lo);
    }
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let value = f(mid).or_else(|_| f(mid + 0.01 * (hi - lo)))?;
        let s = sign_of(value);
        if s == 0.0 {
            return Ok(mid);
        }
        if s.is_nan() {
            return Err(Error::NonConvergence {
                function: "bisect",
                terms: 0,
            });
        }
        if s == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Bisection on a monotone predicate: the smallest `x` in `[lo, hi]` with
/// `above(x)`, given `!above(lo)` and `above(hi)`.
pub(crate) fn bisect_predicate<P>(mut lo: f64, mut hi: f64, tol: f64, above: P) -> Result<f64>
where
    P: Fn(f64) -> Result<bool>,
{
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if above(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_all_roots_of_a_polynomial() {
        let f = |x: f64| Ok((x - 0.1) * (x - 0.5) * (x + 0.7));
        let s = scan(-1.0, 1.0, 100, &f);
        assert_eq!(s.brackets.len(), 3);
        let roots: Vec<f64> = s
            .brackets
            .iter()
            .map(|b| bisect(*b, 1e-13, &f).unwrap())
            .collect();
        for (r, e) in roots.iter().zip([-0.7, 0.1, 0.5]) {
            assert!((r - e).abs() < 1e-12);
        }
    }

    #[test]
    fn close_pair_in_adjacent_cells_is_resolved() {
        // one root in [0.49, 0.5] and three in [0.5, 0.51]
        let f = |x: f64| Ok((x - 0.498) * (x - 0.5012) * (x - 0.5025) * (x - 0.5037));
        assert_eq!(scan_uniform(0.0, 1.0, 100, &f).brackets.len(), 2);
        let s = scan(0.0, 1.0, 100, &f);
        assert_eq!(s.brackets.len(), 4);
    }

    #[test]
    fn failed_points_are_skipped() {
        let f = |x: f64| {
            if (0.3..0.35).contains(&x) {
                Err(Error::ZeroNorm)
            } else {
                Ok(x - 0.6)
            }
        };
        let s = scan(0.0, 1.0, 100, &f);
        assert_eq!(s.brackets.len(), 1);
        assert!(s.skipped >= 4);
    }

    #[test]
    fn predicate_bisection() {
        let x = bisect_predicate(0.0, 1.0, 1e-14, |x| Ok(x * x > 0.5)).unwrap();
        assert!((x - 0.5f64.sqrt()).abs() < 1e-13);
    }
}
