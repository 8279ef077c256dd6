//! Analytic upper components `F`, the lower component `G` and normalization.
//!
//! All three regimes are written in the variable `u = α(r − r₀)/2` with
//! `r₀ = ln(q)/(2α)`, which turns the deformed functions into ordinary ones:
//! `tanh_{√q}(αr/2) = tanh u` and `q^{1/4}/cosh_{√q}(αr/2) = 1/cosh u`.
//! For `q < 1` the point `r₀` is negative and the physical domain starts at
//! `u₀ = −ln(q)/4`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::deformed::{cosh_q, potential_at_offset, tanh_q, PotentialParams, Regime};
use crate::effective::{
    decay_exponent, effective_eigenvalue, effective_strengths, hypergeometric_abc, morse_well_parameter,
    shape_params, DiracConstants,
};
use crate::error::{Error, Result};
use crate::fd;
use crate::solvers::{self, EnergyLevel};
use crate::special::{gauss_2f1_scaled_with_complement, jacobi_p, kummer_1f1_scaled};

/// Samples of both spinor components.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WavefunctionGrid {
    pub radii: Vec<f64>,
    pub f_values: Vec<f64>,
    pub g_values: Vec<f64>,
    /// Factor that multiplies the analytic expression to give the stored `F`.
    pub norm_constant: f64,
}

impl WavefunctionGrid {
    /// `∫(F² + G²) dr` by composite Simpson on the (possibly uneven) radii.
    pub fn norm_squared(&self) -> f64 {
        let dens: Vec<f64> = self
            .f_values
            .iter()
            .zip(&self.g_values)
            .map(|(f, g)| f * f + g * g)
            .collect();
        simpson(&self.radii, &dens)
    }

    /// `∫(F·F′ + G·G′) dr` against another grid on the same radii.
    pub fn overlap(&self, other: &WavefunctionGrid) -> Result<f64> {
        if self.radii != other.radii {
            return Err(Error::InvalidParameter {
                name: "radii",
                reason: "overlap needs identical grids".into(),
            });
        }
        let dens: Vec<f64> = (0..self.radii.len())
            .map(|i| self.f_values[i] * other.f_values[i] + self.g_values[i] * other.g_values[i])
            .collect();
        Ok(simpson(&self.radii, &dens))
    }

    /// Samples with `lo ≤ r ≤ hi`.
    pub fn restrict(&self, lo: f64, hi: f64) -> WavefunctionGrid {
        let keep: Vec<usize> = (0..self.radii.len())
            .filter(|&i| self.radii[i] >= lo && self.radii[i] <= hi)
            .collect();
        WavefunctionGrid {
            radii: keep.iter().map(|&i| self.radii[i]).collect(),
            f_values: keep.iter().map(|&i| self.f_values[i]).collect(),
            g_values: keep.iter().map(|&i| self.g_values[i]).collect(),
            norm_constant: self.norm_constant,
        }
    }

    /// `max |F|`.
    pub fn peak(&self) -> f64 {
        self.f_values.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    /// Sign changes of `F`, ignoring samples below `10⁻¹²` of the peak.
    pub fn node_count(&self) -> usize {
        let floor = 1e-12 * self.peak();
        let mut last = 0.0;
        let mut nodes = 0;
        for &f in &self.f_values {
            if f.abs() <= floor {
                continue;
            }
            let s = f.signum();
            if last != 0.0 && s != last {
                nodes += 1;
            }
            last = s;
        }
        nodes
    }
}

/// Composite Simpson rule on sorted, unevenly spaced abscissae; an odd
/// trailing interval is closed with the parabola through the last three
/// points.
pub fn simpson(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len();
    match n {
        0 | 1 => return 0.0,
        2 => return 0.5 * (xs[1] - xs[0]) * (ys[0] + ys[1]),
        _ => {}
    }
    let mut sum = 0.0;
    let mut i = 0;
    while i + 2 < n {
        let h0 = xs[i + 1] - xs[i];
        let h1 = xs[i + 2] - xs[i + 1];
        let hs = h0 + h1;
        sum += hs / 6.0
            * ((2.0 - h1 / h0) * ys[i] + hs * hs / (h0 * h1) * ys[i + 1] + (2.0 - h0 / h1) * ys[i + 2]);
        i += 2;
    }
    if i + 1 < n {
        let h0 = xs[i] - xs[i - 1];
        let h1 = xs[i + 1] - xs[i];
        let a = (2.0 * h1 * h1 + 3.0 * h0 * h1) / (6.0 * (h0 + h1));
        let b = (h1 * h1 + 3.0 * h0 * h1) / (6.0 * h0);
        let c = h1 * h1 * h1 / (6.0 * h0 * (h0 + h1));
        sum += a * ys[i + 1] + b * ys[i] - c * ys[i - 1];
    }
    sum
}

/// Unnormalized `F` for `q ≥ 1`:
/// `(q^{1/4}/cosh_{√q}(αr/2))^{2η} tanh_{√q}^{2λ}(αr/2) P_{n_r}^{(2λ−½, 2η)}(1 − 2tanh²_{√q}(αr/2))`.
pub fn upper_q_ge_1(
    r: f64,
    n_r: usize,
    energy: f64,
    dc: &DiracConstants<f64>,
    p: &PotentialParams<f64>,
) -> Result<f64> {
    require(p, Regime::Singular)?;
    let r0 = p.left_boundary();
    if !(r > r0) {
        return Err(Error::Domain {
            function: "upper_q_ge_1",
            value: r,
        });
    }
    let (lambda, eta) = shape_params(energy, dc, p)?;
    let sq = p.q.sqrt();
    let x = 0.5 * p.alpha * r;
    let th = tanh_q(x, sq)?;
    let envelope = (p.q.powf(0.25) / cosh_q(x, sq)).powf(2.0 * eta);
    let poly = jacobi_p(n_r, 2.0 * lambda - 0.5, 2.0 * eta, 1.0 - 2.0 * th * th)?;
    Ok(envelope * th.powf(2.0 * lambda) * poly)
}

/// The same function written with a terminating `₂F₁` in `tanh²`, which
/// differs from [`upper_q_ge_1`] by the constant `(2λ + ½)_{n_r}/n_r!`.
pub fn upper_q_ge_1_hypergeometric(
    r: f64,
    n_r: usize,
    energy: f64,
    dc: &DiracConstants<f64>,
    p: &PotentialParams<f64>,
) -> Result<f64> {
    require(p, Regime::Singular)?;
    let s = r - p.left_boundary();
    if !(s > 0.0) {
        return Err(Error::Domain {
            function: "upper_q_ge_1_hypergeometric",
            value: r,
        });
    }
    let (lambda, eta) = shape_params(energy, dc, p)?;
    let u = 0.5 * p.alpha * s;
    let y = u.tanh().powi(2);
    let n = n_r as f64;
    let hyp = crate::special::gauss_2f1(-n, n + 2.0 * lambda + 2.0 * eta + 0.5, 2.0 * lambda + 0.5, y)?;
    Ok(u.cosh().powf(-2.0 * eta) * u.tanh().powf(2.0 * lambda) * hyp)
}

/// Unnormalized `F` for `0 < q < 1`: `z^η (1 − z)^λ ₂F₁(a, b; c; z)` with
/// `z = √q/cosh²_{√q}(αr/2)`.
pub fn upper_q_lt_1(
    r: f64,
    energy: f64,
    dc: &DiracConstants<f64>,
    p: &PotentialParams<f64>,
) -> Result<f64> {
    require(p, Regime::Regular)?;
    if !(r >= 0.0) {
        return Err(Error::Domain {
            function: "upper_q_lt_1",
            value: r,
        });
    }
    let shape = Shape::new(0, energy, dc, p)?;
    let (sign, ln) = shape.ln_upper(r)?;
    Ok(sign * ln.exp())
}

/// Unnormalized Morse `F`: `y^η e^{−y/2} ₁F₁(½ − Ṽ₂/(2α√Ṽ₁) + η; 2η + 1; y)`
/// with `y = (4√Ṽ₁/α) e^{−αr}`.
pub fn upper_morse(
    r: f64,
    energy: f64,
    dc: &DiracConstants<f64>,
    p: &PotentialParams<f64>,
) -> Result<f64> {
    require(p, Regime::Morse)?;
    let shape = Shape::new(0, energy, dc, p)?;
    let (sign, ln) = shape.ln_upper(r)?;
    Ok(sign * ln.exp())
}

fn require(p: &PotentialParams<f64>, regime: Regime) -> Result<()> {
    if p.regime() != regime {
        return Err(Error::InvalidParameter {
            name: "q",
            reason: format!("wavefunction form for {regime:?} used with q = {}", p.q),
        });
    }
    Ok(())
}

/// Energy-dependent constants of one eigenfunction.
#[derive(Debug, Clone, Copy)]
enum Shape {
    Singular {
        n_r: usize,
        lambda: f64,
        eta: f64,
        half_alpha: f64,
        origin: f64,
    },
    Regular {
        lambda: f64,
        eta: f64,
        a: f64,
        b: f64,
        c: f64,
        half_alpha: f64,
        r0: f64,
    },
    Morse {
        eta: f64,
        a: f64,
        c: f64,
        y0: f64,
        alpha: f64,
    },
}

impl Shape {
    fn new(n_r: usize, energy: f64, dc: &DiracConstants<f64>, p: &PotentialParams<f64>) -> Result<Self> {
        Ok(match p.regime() {
            Regime::Singular => {
                let (lambda, eta) = shape_params(energy, dc, p)?;
                Shape::Singular {
                    n_r,
                    lambda,
                    eta,
                    half_alpha: 0.5 * p.alpha,
                    origin: p.left_boundary(),
                }
            }
            Regime::Regular => {
                let (lambda, eta) = shape_params(energy, dc, p)?;
                let (a, b, c) = hypergeometric_abc(energy, dc, p)?;
                Shape::Regular {
                    lambda,
                    eta,
                    a,
                    b,
                    c,
                    half_alpha: 0.5 * p.alpha,
                    r0: p.q.ln() / (2.0 * p.alpha),
                }
            }
            Regime::Morse => {
                let (v1t, v2t) = effective_strengths(energy, dc, p)?;
                let eta = decay_exponent(energy, dc, p.alpha)?;
                let kappa = morse_well_parameter(v1t, v2t, p.alpha);
                Shape::Morse {
                    eta,
                    a: 0.5 - kappa + eta,
                    c: 2.0 * eta + 1.0,
                    y0: 4.0 * v1t.sqrt() / p.alpha,
                    alpha: p.alpha,
                }
            }
        })
    }

    /// `(sign, ln|F|)` at radius `r`.
    fn ln_upper(&self, r: f64) -> Result<(f64, f64)> {
        match *self {
            Shape::Singular {
                n_r,
                lambda,
                eta,
                half_alpha,
                origin,
            } => {
                let u = half_alpha * (r - origin);
                if !(u > 0.0) {
                    return Ok((0.0, f64::NEG_INFINITY));
                }
                let th = u.tanh();
                let poly = jacobi_p(n_r, 2.0 * lambda - 0.5, 2.0 * eta, 1.0 - 2.0 * th * th)?;
                let ln = -2.0 * eta * ln_cosh(u) + 2.0 * lambda * ln_tanh(u) + poly.abs().ln();
                Ok((poly.signum(), ln))
            }
            Shape::Regular {
                lambda,
                eta,
                a,
                b,
                c,
                half_alpha,
                r0,
            } => {
                let u = half_alpha * (r - r0);
                let ln_z = -2.0 * ln_cosh(u);
                let ln_w = 2.0 * ln_tanh(u);
                let hyp = gauss_2f1_scaled_with_complement(a, b, c, ln_z.exp(), ln_w.exp())?;
                Ok((hyp.signum(), eta * ln_z + lambda * ln_w + hyp.ln_abs()))
            }
            Shape::Morse { eta, a, c, y0, alpha } => {
                let y = y0 * (-alpha * r).exp();
                let hyp = kummer_1f1_scaled(a, c, y)?;
                Ok((hyp.signum(), eta * y.ln() - 0.5 * y + hyp.ln_abs()))
            }
        }
    }
}

fn ln_cosh(u: f64) -> f64 {
    let a = u.abs();
    a + (-2.0 * a).exp().ln_1p() - std::f64::consts::LN_2
}

fn ln_tanh(u: f64) -> f64 {
    (-(-2.0 * u).exp_m1()).ln() - (-2.0 * u).exp().ln_1p()
}

/// `G = (F′ − F/r)/(M + E − C)` with `F′` from five-point differences. At
/// `r = 0` the ratio `F/r` is replaced by its limit `F′`.
pub fn lower_component(
    radii: &[f64],
    f_values: &[f64],
    energy: f64,
    dc: &DiracConstants<f64>,
) -> Result<Vec<f64>> {
    let k = dc.coupling(energy);
    if k.abs() < 1e-12 * dc.m {
        return Err(Error::SingularLowerComponent { prefactor: k });
    }
    if radii.len() != f_values.len() || radii.len() < 5 {
        return Err(Error::GridTooSmall {
            reason: format!("{} radii for {} samples, need at least 5", radii.len(), f_values.len()),
        });
    }
    let df = fd::derivative(radii, f_values, 1);
    Ok(radii
        .iter()
        .zip(f_values)
        .zip(&df)
        .map(|((&r, &f), &d)| {
            let ratio = if r == 0.0 { d } else { f / r };
            (d - ratio) / k
        })
        .collect())
}

/// Rescales `F` and `G` by one constant so that `∫(F² + G²) dr = 1`.
pub fn normalize(wf: &WavefunctionGrid) -> Result<WavefunctionGrid> {
    let norm = wf.norm_squared();
    if !(norm > 0.0) || !norm.is_finite() {
        return Err(Error::ZeroNorm);
    }
    let c = norm.sqrt().recip();
    Ok(WavefunctionGrid {
        radii: wf.radii.clone(),
        f_values: wf.f_values.iter().map(|v| v * c).collect(),
        g_values: wf.g_values.iter().map(|v| v * c).collect(),
        norm_constant: wf.norm_constant * c,
    })
}

/// Target `h·√|Q|` of the generated meshes.
const RESOLUTION: f64 = 0.02;

/// Radial mesh adequate for every level in `levels`: logarithmic next to a
/// `q ≥ 1` wall, uniform through the well, coarser in the exponential tail.
/// The tail reaches 36 decay lengths of the most weakly bound level.
pub fn mesh_for(levels: &[EnergyLevel], dc: &DiracConstants<f64>, p: &PotentialParams<f64>) -> Result<Vec<f64>> {
    if levels.is_empty() {
        return Err(Error::InvalidParameter {
            name: "levels",
            reason: "no levels to build a mesh for".into(),
        });
    }
    let origin = p.left_boundary();
    let k_max = levels
        .iter()
        .map(|l| dc.coupling(l.energy))
        .fold(0.0f64, f64::max);
    let kappa_min = levels
        .iter()
        .map(|l| (-effective_eigenvalue(l.energy, dc)).sqrt())
        .fold(f64::INFINITY, f64::min);
    let e_max = levels
        .iter()
        .map(|l| -effective_eigenvalue(l.energy, dc))
        .fold(0.0f64, f64::max);
    let v = |s: f64| potential_at_offset(s, p);
    let q_abs = |s: f64| -> Result<f64> { Ok(k_max * v(s)?.abs() + e_max) };

    // End of the well: the potential is a small fraction of κ_min².
    let mut s_b = 4.0 / p.alpha;
    while k_max * v(s_b)?.abs() > 1e-3 * kappa_min * kappa_min {
        s_b += 0.25 / p.alpha;
    }
    let s_max = s_b + 36.0 / kappa_min;

    let mut radii = Vec::new();
    if p.regime() == Regime::Singular {
        // r = origin + ρ ln(1 + eᵗ), uniform in t
        let rho = 1.0 / p.alpha;
        let delta = 1e-12 / p.alpha;
        let t0 = (delta / rho).exp_m1().ln();
        let t1 = (s_b / rho).exp_m1().ln();
        let probe = 4000;
        let mut worst: f64 = 0.0;
        for i in 0..=probe {
            let t = t0 + (t1 - t0) * i as f64 / probe as f64;
            let s = rho * t.exp().ln_1p();
            let jac = rho / (1.0 + (-t).exp());
            worst = worst.max(jac * q_abs(s)?.sqrt());
        }
        let n = (((t1 - t0) * worst / RESOLUTION).ceil() as usize).max(200);
        for i in 0..=n {
            let t = t0 + (t1 - t0) * i as f64 / n as f64;
            radii.push(origin + rho * t.exp().ln_1p());
        }
    } else {
        let probe = 4000;
        let mut worst: f64 = 0.0;
        for i in 0..=probe {
            let s = s_b * i as f64 / probe as f64;
            worst = worst.max(q_abs(s)?.sqrt());
        }
        let n = ((s_b * worst / RESOLUTION).ceil() as usize).max(200);
        for i in 0..=n {
            radii.push(origin + s_b * i as f64 / n as f64);
        }
    }
    // tail: Q is close to κ² there
    let mut worst_tail: f64 = 0.0;
    for i in 0..=200 {
        let s = s_b + (s_max - s_b) * i as f64 / 200.0;
        worst_tail = worst_tail.max(q_abs(s)?.sqrt());
    }
    let n_tail = (((s_max - s_b) * worst_tail / RESOLUTION).ceil() as usize).max(50);
    let last = *radii.last().unwrap();
    for i in 1..=n_tail {
        radii.push(last + (origin + s_max - last) * i as f64 / n_tail as f64);
    }
    Ok(radii)
}

/// Normalized eigenfunction of `level` sampled on `radii`.
pub fn eigenfunction_on(
    level: &EnergyLevel,
    dc: &DiracConstants<f64>,
    p: &PotentialParams<f64>,
    radii: &[f64],
) -> Result<WavefunctionGrid> {
    let level = solvers::polish(level, dc, p)?;
    let shape = Shape::new(level.n_r, level.energy, dc, p)?;
    let logs: Vec<(f64, f64)> = radii
        .par_iter()
        .map(|&r| shape.ln_upper(r))
        .collect::<Result<_>>()?;
    let top = logs
        .iter()
        .filter(|(s, _)| *s != 0.0)
        .map(|l| l.1)
        .fold(f64::NEG_INFINITY, f64::max);
    if !top.is_finite() {
        return Err(Error::ZeroNorm);
    }
    let f_values: Vec<f64> = logs
        .iter()
        .map(|&(s, l)| if s == 0.0 { 0.0 } else { s * (l - top).exp() })
        .collect();
    let g_values = lower_component(radii, &f_values, level.energy, dc)?;
    let raw = WavefunctionGrid {
        radii: radii.to_vec(),
        f_values,
        g_values,
        norm_constant: 1.0,
    };
    let mut wf = normalize(&raw)?;
    wf.norm_constant = (wf.norm_constant.ln() - top).exp();
    Ok(wf)
}

/// Normalized eigenfunction of `level` on its own mesh.
pub fn eigenfunction(
    level: &EnergyLevel,
    dc: &DiracConstants<f64>,
    p: &PotentialParams<f64>,
) -> Result<WavefunctionGrid> {
    let radii = mesh_for(std::slice::from_ref(level), dc, p)?;
    eigenfunction_on(level, dc, p, &radii)
}
