//! Bound-state energies for the three deformation regimes.
//!
//! All solvers share one strategy: scan the sign of a quantization residual
//! over the bound window `(C − M + ε, M − ε)`, then bisect each sign change.
//! The top scan cell is rescanned on a geometric grid in `M − E`, where
//! weakly bound levels pile up.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::deformed::{PotentialParams, Regime};
use crate::effective::{
    attractive_root, bound_window, decay_exponent, effective_eigenvalue, effective_strengths,
    hypergeometric_abc, lambda_discriminant, morse_well_parameter, shape_params, DiracConstants,
};
use crate::error::{Error, Result};
use crate::roots::{self, sign_of, Bracket, Scan};
use crate::special::{gauss_2f1_scaled_with_complement, kummer_1f1_scaled};

/// Relative offset of the scan interval from the window edges.
const EDGE: f64 = 1e-8;
/// Extra scan points used on the geometric rescan of the top cell.
const TOP_POINTS: usize = 80;

/// Which quantization condition produced a level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "closed-form-q>=1")]
    ClosedForm,
    #[serde(rename = "transcendental-q<1")]
    Transcendental,
    #[serde(rename = "morse-exact")]
    MorseExact,
    #[serde(rename = "morse-asymptotic")]
    MorseAsymptotic,
    #[serde(rename = "oracle")]
    Oracle,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::ClosedForm => "closed-form-q>=1",
            Method::Transcendental => "transcendental-q<1",
            Method::MorseExact => "morse-exact",
            Method::MorseAsymptotic => "morse-asymptotic",
            Method::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One bound level.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyLevel {
    pub n_r: usize,
    pub energy: f64,
    pub e_tilde: f64,
    pub method: Method,
}

impl EnergyLevel {
    pub(crate) fn new(n_r: usize, energy: f64, dc: &DiracConstants<f64>, method: Method) -> Self {
        Self {
            n_r,
            energy,
            e_tilde: effective_eigenvalue(energy, dc),
            method,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverConfig {
    /// Uniform scan points over the bound window.
    pub scan_points: usize,
    /// Bisection tolerance, in units of `M`.
    pub tol_e: f64,
    /// Upper bound on the number of returned levels.
    pub max_levels: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            scan_points: 2000,
            tol_e: 1e-10,
            max_levels: 200,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if self.scan_points < 100 {
            return Err(Error::InvalidParameter {
                name: "scan_points",
                reason: format!("must be at least 100, got {}", self.scan_points),
            });
        }
        if !(self.tol_e > 0.0) || !self.tol_e.is_finite() {
            return Err(Error::InvalidParameter {
                name: "tol_e",
                reason: "must be positive and finite".into(),
            });
        }
        if self.max_levels == 0 {
            return Err(Error::InvalidParameter {
                name: "max_levels",
                reason: "must be at least 1".into(),
            });
        }
        Ok(())
    }
}

/// Levels in increasing energy plus the number of scan points at which the
/// residual could not be evaluated.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub levels: Vec<EnergyLevel>,
    pub skipped_points: usize,
}

impl Spectrum {
    pub fn energies(&self) -> Vec<f64> {
        self.levels.iter().map(|l| l.energy).collect()
    }
}

fn scan_interval(dc: &DiracConstants<f64>) -> Result<(f64, f64)> {
    let (lo, hi) = bound_window(dc)?;
    let eps = EDGE * dc.m;
    Ok((lo + eps, hi - eps))
}

/// Scan of the whole window plus a geometric rescan of the top cell.
fn scan_window<F>(lo: f64, hi: f64, cfg: &SolverConfig, f: &F) -> Scan
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    let cell = (hi - lo) / cfg.scan_points as f64;
    let top_lo = hi - cell;
    let mut out = roots::scan(lo, top_lo, cfg.scan_points - 1, f);

    // distances to `hi` from `cell` down to `hi·EDGE`-ish, geometric
    let d_max = cell;
    let d_min = (EDGE * hi.abs().max(1.0)).min(d_max * 1e-3);
    let ratio = (d_min / d_max).powf(1.0 / TOP_POINTS as f64);
    let mut last: Option<(f64, f64)> = f(top_lo).ok().filter(|v| !v.is_nan()).map(|v| (top_lo, v.signum()));
    let mut d = d_max;
    for _ in 0..TOP_POINTS {
        d *= ratio;
        let x = hi - d;
        let Some(s) = f(x).ok().filter(|v| !v.is_nan()).map(f64::signum) else {
            out.skipped += 1;
            continue;
        };
        if let Some((xl, sl)) = last {
            if sl != s && sl != 0.0 {
                out.brackets.push(Bracket {
                    lo: xl,
                    hi: x,
                    sign_lo: sl,
                });
            }
        }
        last = Some((x, s));
    }
    out
}

fn refine<F>(scan: &Scan, tol: f64, max_levels: usize, f: &F) -> Result<Vec<f64>>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    use rayon::prelude::*;
    let mut energies: Vec<f64> = scan
        .brackets
        .par_iter()
        .take(max_levels)
        .map(|b| roots::bisect(*b, tol, f))
        .collect::<Result<_>>()?;
    energies.sort_by(|a, b| a.total_cmp(b));
    energies.dedup_by(|a, b| (*a - *b).abs() <= tol);
    Ok(energies)
}

fn require_regime(p: &PotentialParams<f64>, wanted: Regime) -> Result<()> {
    if p.regime() == wanted {
        return Ok(());
    }
    let reason = match wanted {
        Regime::Singular => "this solver needs q >= 1",
        Regime::Regular => "this solver needs 0 < q < 1",
        Regime::Morse => "this solver needs q = 0",
    };
    Err(Error::InvalidParameter {
        name: "q",
        reason: reason.into(),
    })
}

/// `λ + η + ¼(1 − D₊) + n_r`, whose zero is level `n_r` for `q ≥ 1`.
pub fn closed_form_residual(
    n_r: usize,
    energy: f64,
    dc: &DiracConstants<f64>,
    p: &PotentialParams<f64>,
) -> Result<f64> {
    let (lambda, eta) = shape_params(energy, dc, p)?;
    let (v1t, v2t) = effective_strengths(energy, dc, p)?;
    let root = attractive_root(v1t, v2t, p);
    Ok(lambda + eta + 0.25 * (1.0 - root) + n_r as f64)
}

/// The discriminant grows or shrinks monotonically with `M + E − C`, so its
/// value at the strongest coupling decides whether `λ` is real on the whole
/// window.
fn check_discriminant(dc: &DiracConstants<f64>, p: &PotentialParams<f64>) -> Result<()> {
    let (v1t, v2t) = effective_strengths(dc.m, dc, p)?;
    let disc = lambda_discriminant(v1t, v2t, p);
    if disc < 0.0 {
        return Err(Error::Discriminant { value: disc });
    }
    Ok(())
}

/// Level `n_r` for `q ≥ 1`. Fails with [`Error::NoRoot`] when the well holds
/// fewer than `n_r + 1` states.
pub fn solve_q_ge_1(
    n_r: usize,
    dc: &DiracConstants<f64>,
    p: &PotentialParams<f64>,
    cfg: &SolverConfig,
) -> Result<EnergyLevel> {
    p.validate()?;
    dc.validate()?;
    cfg.validate()?;
    require_regime(p, Regime::Singular)?;
    check_discriminant(dc, p)?;
    let (lo, hi) = scan_interval(dc)?;
    let f = |e: f64| closed_form_residual(n_r, e, dc, p);
    let scan = scan_window(lo, hi, cfg, &f);
    let Some(bracket) = scan.brackets.first() else {
        return Err(Error::NoRoot { n_r, found: 0 });
    };
    let energy = roots::bisect(*bracket, cfg.tol_e * dc.m, &f)?;
    Ok(EnergyLevel::new(n_r, energy, dc, Method::ClosedForm))
}

/// All levels for `q ≥ 1`, in increasing `n_r` until the first missing one.
pub fn spectrum_q_ge_1(
    dc: &DiracConstants<f64>,
    p: &PotentialParams<f64>,
    cfg: &SolverConfig,
) -> Result<Spectrum> {
    let mut levels = Vec::new();
    for n_r in 0..cfg.max_levels {
        match solve_q_ge_1(n_r, dc, p, cfg) {
            Ok(level) => levels.push(level),
            Err(Error::NoRoot { .. }) => break,
            Err(e) => return Err(e),
        }
    }
    Ok(Spectrum {
        levels,
        skipped_points: 0,
    })
}

/// `1 − z₀` for `z₀ = 4√q/(1 + √q)²`, written without cancellation.
pub fn boundary_complement(q: f64) -> f64 {
    let s = q.sqrt();
    let t = (1.0 - s) / (1.0 + s);
    t * t
}

/// The argument `z₀ = 4√q/(1 + √q)²` of the `0 < q < 1` quantization condition.
pub fn boundary_argument(q: f64) -> f64 {
    let s = q.sqrt();
    4.0 * s / ((1.0 + s) * (1.0 + s))
}

/// Sign-carrying residual `₂F₁(a, b; c; z₀)` for `0 < q < 1`; only its sign
/// is meaningful when the value would overflow.
pub fn transcendental_residual(
    energy: f64,
    dc: &DiracConstants<f64>,
    p: &PotentialParams<f64>,
) -> Result<f64> {
    let (a, b, c) = hypergeometric_abc(energy, dc, p)?;
    let s = gauss_2f1_scaled_with_complement(
        a,
        b,
        c,
        boundary_argument(p.q),
        boundary_complement(p.q),
    )?;
    Ok(clamp_scaled(s.mantissa, s.log_scale))
}

fn clamp_scaled(mantissa: f64, log_scale: f64) -> f64 {
    let v = mantissa * log_scale.min(700.0).exp();
    if v == 0.0 && mantissa != 0.0 {
        mantissa.signum() * f64::MIN_POSITIVE
    } else {
        v
    }
}

/// Every level for `0 < q < 1`, indexed by increasing energy.
pub fn solve_q_lt_1(
    dc: &DiracConstants<f64>,
    p: &PotentialParams<f64>,
    cfg: &SolverConfig,
) -> Result<Spectrum> {
    p.validate()?;
    dc.validate()?;
    cfg.validate()?;
    require_regime(p, Regime::Regular)?;
    let (lo, hi) = scan_interval(dc)?;
    let f = |e: f64| transcendental_residual(e, dc, p);
    let scan = scan_window(lo, hi, cfg, &f);
    let energies = refine(&scan, cfg.tol_e * dc.m, cfg.max_levels, &f)?;
    Ok(Spectrum {
        levels: energies
            .into_iter()
            .enumerate()
            .map(|(n, e)| EnergyLevel::new(n, e, dc, Method::Transcendental))
            .collect(),
        skipped_points: scan.skipped,
    })
}

/// Kummer-function parameters `(a, c, y₀)` of the Morse problem at energy `E`:
/// `a = ½ − Ṽ₂/(2α√Ṽ₁) + η`, `c = 2η + 1`, `y₀ = 4√Ṽ₁/α`.
pub fn morse_kummer_params(
    energy: f64,
    dc: &DiracConstants<f64>,
    p: &PotentialParams<f64>,
) -> Result<(f64, f64, f64)> {
    let (v1t, v2t) = effective_strengths(energy, dc, p)?;
    let eta = decay_exponent(energy, dc, p.alpha)?;
    let kappa = morse_well_parameter(v1t, v2t, p.alpha);
    Ok((0.5 - kappa + eta, 2.0 * eta + 1.0, 4.0 * v1t.sqrt() / p.alpha))
}

/// Sign-carrying residual `₁F₁(a; c; y₀)` of the exact Morse condition.
pub fn morse_exact_residual(
    energy: f64,
    dc: &DiracConstants<f64>,
    p: &PotentialParams<f64>,
) -> Result<f64> {
    let (a, c, y0) = morse_kummer_params(energy, dc, p)?;
    let s = kummer_1f1_scaled(a, c, y0)?;
    Ok(clamp_scaled(s.mantissa, s.log_scale))
}

/// Every level of the Morse well (`q = 0`) from the exact condition.
pub fn solve_morse_exact(
    dc: &DiracConstants<f64>,
    p: &PotentialParams<f64>,
    cfg: &SolverConfig,
) -> Result<Spectrum> {
    p.validate()?;
    dc.validate()?;
    cfg.validate()?;
    require_regime(p, Regime::Morse)?;
    let (lo, hi) = scan_interval(dc)?;
    let f = |e: f64| morse_exact_residual(e, dc, p);
    let scan = scan_window(lo, hi, cfg, &f);
    let energies = refine(&scan, cfg.tol_e * dc.m, cfg.max_levels, &f)?;
    Ok(Spectrum {
        levels: energies
            .into_iter()
            .enumerate()
            .map(|(n, e)| EnergyLevel::new(n, e, dc, Method::MorseExact))
            .collect(),
        skipped_points: scan.skipped,
    })
}

/// `η + ½ − Ṽ₂/(2α√Ṽ₁) + n_r`; its zero is the large-depth Morse level.
pub fn morse_asymptotic_residual(
    n_r: usize,
    energy: f64,
    dc: &DiracConstants<f64>,
    p: &PotentialParams<f64>,
) -> Result<f64> {
    let (a, _, _) = morse_kummer_params(energy, dc, p)?;
    Ok(a + n_r as f64)
}

/// Level `n_r` of the Morse well from the terminating-series condition.
pub fn solve_morse_asymptotic(
    n_r: usize,
    dc: &DiracConstants<f64>,
    p: &PotentialParams<f64>,
    cfg: &SolverConfig,
) -> Result<EnergyLevel> {
    p.validate()?;
    dc.validate()?;
    cfg.validate()?;
    require_regime(p, Regime::Morse)?;
    let (lo, hi) = scan_interval(dc)?;
    let f = |e: f64| morse_asymptotic_residual(n_r, e, dc, p);
    let scan = scan_window(lo, hi, cfg, &f);
    let Some(bracket) = scan.brackets.first() else {
        return Err(Error::NoRoot { n_r, found: 0 });
    };
    let energy = roots::bisect(*bracket, cfg.tol_e * dc.m, &f)?;
    Ok(EnergyLevel::new(n_r, energy, dc, Method::MorseAsymptotic))
}

/// All asymptotic Morse levels, in increasing `n_r` until the first missing one.
pub fn spectrum_morse_asymptotic(
    dc: &DiracConstants<f64>,
    p: &PotentialParams<f64>,
    cfg: &SolverConfig,
) -> Result<Spectrum> {
    let mut levels = Vec::new();
    for n_r in 0..cfg.max_levels {
        match solve_morse_asymptotic(n_r, dc, p, cfg) {
            Ok(level) => levels.push(level),
            Err(Error::NoRoot { .. }) => break,
            Err(e) => return Err(e),
        }
    }
    Ok(Spectrum {
        levels,
        skipped_points: 0,
    })
}

/// Re-solves `level` to machine precision from its own residual. Levels of
/// the polynomial-type conditions are returned unchanged.
pub fn polish(
    level: &EnergyLevel,
    dc: &DiracConstants<f64>,
    p: &PotentialParams<f64>,
) -> Result<EnergyLevel> {
    let f = |e: f64| match level.method {
        Method::Transcendental => transcendental_residual(e, dc, p),
        _ => morse_exact_residual(e, dc, p),
    };
    if !matches!(level.method, Method::Transcendental | Method::MorseExact) {
        return Ok(*level);
    }
    let (lo, hi) = bound_window(dc)?;
    let e0 = level.energy;
    let s0 = sign_of(f(e0)?);
    if s0 == 0.0 {
        return Ok(*level);
    }
    let mut d = 1e-13 * dc.m.max(e0.abs());
    while d < 1e-4 * dc.m {
        for x in [e0 - d, e0 + d] {
            if x <= lo || x >= hi {
                continue;
            }
            let Ok(v) = f(x) else { continue };
            let s = sign_of(v);
            if s != s0 && !s.is_nan() {
                let bracket = if x < e0 {
                    Bracket { lo: x, hi: e0, sign_lo: s }
                } else {
                    Bracket { lo: e0, hi: x, sign_lo: s0 }
                };
                let energy = roots::bisect(bracket, 0.0, &f)?;
                return Ok(EnergyLevel::new(level.n_r, energy, dc, level.method));
            }
        }
        d *= 4.0;
    }
    Ok(*level)
}

/// Dispatches on the regime of `p`.
pub fn spectrum(
    dc: &DiracConstants<f64>,
    p: &PotentialParams<f64>,
    cfg: &SolverConfig,
) -> Result<Spectrum> {
    match p.regime() {
        Regime::Singular => spectrum_q_ge_1(dc, p, cfg),
        Regime::Regular => solve_q_lt_1(dc, p, cfg),
        Regime::Morse => solve_morse_exact(dc, p, cfg),
    }
}

/// The `q ≥ 1` closed-form condition applied as if it held for `0 < q < 1`.
///
/// This ignores the boundary condition at `r = 0` and is known to give
/// wrong energies there; it exists for side-by-side comparison only.
pub fn disputed_closed_form(
    dc: &DiracConstants<f64>,
    p: &PotentialParams<f64>,
    cfg: &SolverConfig,
) -> Result<Vec<f64>> {
    p.validate()?;
    dc.validate()?;
    cfg.validate()?;
    if !(p.q > 0.0) {
        return Err(Error::InvalidParameter {
            name: "q",
            reason: "the closed form needs q > 0".into(),
        });
    }
    let (lo, hi) = scan_interval(dc)?;
    let mut out = Vec::new();
    for n_r in 0..cfg.max_levels {
        let f = |e: f64| closed_form_residual(n_r, e, dc, p);
        let scan = scan_window(lo, hi, cfg, &f);
        let Some(bracket) = scan.brackets.first() else {
            break;
        };
        out.push(roots::bisect(*bracket, cfg.tol_e * dc.m, &f)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dc() -> DiracConstants<f64> {
        DiracConstants::new(1.0, 0.0).unwrap()
    }

    fn params(v1: f64, v2: f64, alpha: f64, q: f64) -> PotentialParams<f64> {
        PotentialParams::new(v1, v2, alpha, q).unwrap()
    }

    #[test]
    fn method_tags_round_trip() {
        for m in [
            Method::ClosedForm,
            Method::Transcendental,
            Method::MorseExact,
            Method::MorseAsymptotic,
            Method::Oracle,
        ] {
            let s = serde_json::to_string(&m).unwrap();
            assert_eq!(s, format!("\"{}\"", m.as_str()));
            assert_eq!(serde_json::from_str::<Method>(&s).unwrap(), m);
        }
    }

    #[test]
    fn config_validation() {
        assert!(SolverConfig::default().validate().is_ok());
        let bad = SolverConfig {
            scan_points: 99,
            ..Default::default()
        };
        assert!(matches!(
            bad.validate(),
            Err(Error::InvalidParameter { name: "scan_points", .. })
        ));
        let bad = SolverConfig {
            tol_e: 0.0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn boundary_argument_values() {
        assert_eq!(boundary_argument(1.0), 1.0);
        assert_eq!(boundary_complement(1.0), 0.0);
        assert!((boundary_argument(0.3) - 0.914_606_732_707_885).abs() < 1e-14);
        let q = 1.0 - 1e-6;
        // 1 − z₀ ≈ (1e-6/4)² without cancellation
        assert!((boundary_complement(q) / 6.25e-14 - 1.0).abs() < 1e-5);
    }

    #[test]
    fn closed_form_endpoint_behaviour() {
        // At E → M the decay exponent vanishes.
        let (dc, p) = (dc(), params(4.0, 1.0, 1.0, 2.0));
        let e = 1.0 - 1e-14;
        let (lambda, _) = shape_params(e, &dc, &p).unwrap();
        let (v1t, v2t) = effective_strengths(e, &dc, &p).unwrap();
        let expected = lambda + 0.25 * (1.0 - attractive_root(v1t, v2t, &p));
        assert!((closed_form_residual(0, e, &dc, &p).unwrap() - expected).abs() < 1e-6);
    }

    #[test]
    fn example_sets_from_the_docs_are_empty() {
        // V₁ = 4, V₂ = 1 with α = 1 is too shallow at q = 2 and q = 0.3.
        let cfg = SolverConfig::default();
        assert!(matches!(
            solve_q_ge_1(0, &dc(), &params(4.0, 1.0, 1.0, 2.0), &cfg),
            Err(Error::NoRoot { n_r: 0, found: 0 })
        ));
        assert!(solve_q_lt_1(&dc(), &params(4.0, 1.0, 1.0, 0.3), &cfg)
            .unwrap()
            .levels
            .is_empty());
    }

    #[test]
    fn q_lt_1_reference_levels() {
        let s = solve_q_lt_1(&dc(), &params(10.0, 8.0, 0.5, 0.3), &SolverConfig::default()).unwrap();
        let e = s.energies();
        assert_eq!(e.len(), 4, "{e:?}");
        let expected = [-0.0749, 0.5242, 0.8557, 0.99652];
        for (got, want) in e.iter().zip(expected) {
            assert!((got - want).abs() < 1e-3, "{got} vs {want}");
        }
        for w in s.levels.windows(2) {
            assert!(w[1].energy > w[0].energy);
            assert_eq!(w[1].n_r, w[0].n_r + 1);
        }
        for l in &s.levels {
            assert!(l.e_tilde < 0.0);
            assert_eq!(l.method, Method::Transcendental);
            let r = transcendental_residual(l.energy + 1e-9, &dc(), &params(10.0, 8.0, 0.5, 0.3)).unwrap()
                * transcendental_residual(l.energy - 1e-9, &dc(), &params(10.0, 8.0, 0.5, 0.3)).unwrap();
            assert!(r < 0.0);
        }
    }

    #[test]
    fn q_ge_1_levels_are_ordered() {
        let p = params(20.0, 12.0, 0.8, 2.0);
        let s = spectrum(&dc(), &p, &SolverConfig::default()).unwrap();
        assert!(s.levels.len() >= 2);
        for (n, l) in s.levels.iter().enumerate() {
            assert_eq!(l.n_r, n);
            assert_eq!(l.method, Method::ClosedForm);
            assert!(closed_form_residual(n, l.energy, &dc(), &p).unwrap().abs() < 1e-6);
        }
        for w in s.levels.windows(2) {
            assert!(w[1].energy > w[0].energy);
        }
    }

    #[test]
    fn wrong_regime_is_rejected() {
        let cfg = SolverConfig::default();
        assert!(solve_q_ge_1(0, &dc(), &params(4.0, 1.0, 1.0, 0.3), &cfg).is_err());
        assert!(solve_q_lt_1(&dc(), &params(4.0, 1.0, 1.0, 2.0), &cfg).is_err());
        assert!(solve_morse_exact(&dc(), &params(4.0, 1.0, 1.0, 0.5), &cfg).is_err());
    }

    #[test]
    fn complex_lambda_is_reported() {
        // V₁/q < V₂/√q with a strong coupling
        let p = params(10.0, 9.0, 0.5, 9.0);
        assert!(matches!(
            solve_q_ge_1(0, &dc(), &p, &SolverConfig::default()),
            Err(Error::Discriminant { .. })
        ));
    }

    #[test]
    fn morse_dispatch_and_asymptotic_count() {
        let p = params(25.0, 10.0, 1.0, 0.0);
        let cfg = SolverConfig::default();
        let exact = spectrum(&dc(), &p, &cfg).unwrap();
        assert!(!exact.levels.is_empty());
        assert!(exact.levels.iter().all(|l| l.method == Method::MorseExact));
        let asym = spectrum_morse_asymptotic(&dc(), &p, &cfg).unwrap();
        assert!(!asym.levels.is_empty());
        for l in &asym.levels {
            assert!(morse_asymptotic_residual(l.n_r, l.energy, &dc(), &p).unwrap().abs() < 1e-8);
        }
    }

    #[test]
    fn morse_threshold_parameter_one_half_has_no_levels() {
        // Ṽ₂/(2α√Ṽ₁) stays below ½ on the whole window: 2√(M+E)·... ≤ ½
        let p = params(16.0, 1.0, 1.0, 0.0);
        let s = spectrum_morse_asymptotic(&dc(), &p, &SolverConfig::default()).unwrap();
        assert!(s.levels.is_empty());
    }

    #[test]
    fn shrinking_wells_empty_out() {
        let cfg = SolverConfig::default();
        for q in [0.0, 0.3, 2.0] {
            let p = params(30.0, 20.0, 0.7, q).scaled(1e-3);
            assert!(spectrum(&dc(), &p, &cfg).unwrap().levels.is_empty(), "q = {q}");
        }
    }
}
