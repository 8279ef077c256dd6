//! Numerov shooting on the effective radial equation
//! `u″ = [(M + E − C)V(r) − Ẽ] u`, independent of any special function.
//!
//! The radius is mapped as `r = r_start₀ + ρ·ln(1 + eᵗ)` with `t` uniform:
//! logarithmic next to the left boundary (where the `q ≥ 1` wall sits),
//! uniform far out. Writing `u = √(dr/dt)·w` removes the first derivative,
//! `w_tt = [(dr/dt)²((M + E − C)V − Ẽ) + ¼(1 − σ²)] w` with `σ = 1/(1 + e⁻ᵗ)`,
//! so Numerov applies unchanged on the `t` grid.
//!
//! Levels are located with the counting function
//! `N(E) = nodes(E) + [D(E)·(−1)^{nodes} < 0]`, where
//! `D = u_N − u_{N−1}e^{−κΔr}` measures the growing exponential at the last
//! grid point. `N` jumps by one at each eigenvalue.

use rayon::prelude::*;

use crate::deformed::{potential_at_offset, PotentialParams};
use crate::effective::{bound_window, effective_eigenvalue, DiracConstants};
use crate::error::{Error, Result};
use crate::fd;
use crate::roots;
use crate::solvers::{EnergyLevel, Method};
use crate::wavefunction::WavefunctionGrid;

const RENORMALIZE: f64 = 1e150;

/// Knobs for [`RadialGrid::with_options`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridOptions {
    /// Left offset from the boundary, in units of `1/α`.
    pub delta: f64,
    /// Right cutoff; `None` picks it from the potential tail.
    pub r_end: Option<f64>,
    /// Target `h·√max|Q|` on the `t` grid.
    pub resolution: f64,
    /// Tail threshold on `(M + E − C)|V|`, in units of `M²`.
    pub tail: f64,
}

impl Default for GridOptions {
    fn default() -> Self {
        Self {
            delta: 1e-12,
            r_end: None,
            resolution: 0.01,
            tail: 1e-14,
        }
    }
}

/// Shooting grid with the potential tabulated once.
#[derive(Debug, Clone)]
pub struct RadialGrid {
    pub origin: f64,
    pub r_start: f64,
    pub r_end: f64,
    pub n_points: usize,
    /// Step of the uniform `t` grid.
    pub spacing: f64,
    /// Length scale `ρ` of the mapping.
    pub rho: f64,
    dc: DiracConstants<f64>,
    p: PotentialParams<f64>,
    radius: Vec<f64>,
    jac2_v: Vec<f64>,
    jac2: Vec<f64>,
    schwarz: Vec<f64>,
    sqrt_jac: Vec<f64>,
}

/// Result of one outward integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Shot {
    /// `u′/u` at `r_end`.
    pub log_derivative: f64,
    /// Interior sign changes of `u`.
    pub node_count: usize,
    /// `u_N − u_{N−1}e^{−κΔr}`, in units of the last sample.
    pub mismatch: f64,
}

fn softplus(t: f64) -> f64 {
    if t > 30.0 {
        t + (-t).exp()
    } else {
        t.exp().ln_1p()
    }
}

fn sigmoid(t: f64) -> f64 {
    1.0 / (1.0 + (-t).exp())
}

impl RadialGrid {
    pub fn new(dc: &DiracConstants<f64>, p: &PotentialParams<f64>) -> Result<Self> {
        Self::with_options(dc, p, GridOptions::default())
    }

    pub fn with_options(
        dc: &DiracConstants<f64>,
        p: &PotentialParams<f64>,
        opts: GridOptions,
    ) -> Result<Self> {
        p.validate()?;
        dc.validate()?;
        bound_window(dc)?;
        if !(opts.delta > 0.0) || !(opts.resolution > 0.0) || !(opts.tail > 0.0) {
            return Err(Error::InvalidParameter {
                name: "grid options",
                reason: "delta, resolution and tail must be positive".into(),
            });
        }
        let origin = p.left_boundary();
        let rho = 1.0 / p.alpha;
        let k_max = 2.0 * dc.m - dc.c_spin;
        let e_max = 0.25 * k_max * k_max;
        let v = |s: f64| potential_at_offset(s, p);

        let span = match opts.r_end {
            Some(r) => {
                if !(r > origin) {
                    return Err(Error::GridTooSmall {
                        reason: format!("r_end = {r} does not exceed the left boundary {origin}"),
                    });
                }
                r - origin
            }
            None => {
                let floor = opts.tail * dc.m * dc.m;
                let mut s = 10.0 / p.alpha;
                while k_max * v(s)?.abs() >= floor {
                    s += 0.5 / p.alpha;
                    if s > 1e4 / p.alpha {
                        return Err(Error::GridTooSmall {
                            reason: "potential tail never falls below threshold".into(),
                        });
                    }
                }
                s
            }
        };

        let delta = opts.delta / p.alpha;
        let t_start = (delta / rho).exp_m1().ln();
        let t_end = if span / rho > 30.0 {
            span / rho
        } else {
            (span / rho).exp_m1().ln()
        };

        // First pass on a coarse grid to size the step.
        let coarse = 4000;
        let mut q_max: f64 = 0.25;
        for i in 0..=coarse {
            let t = t_start + (t_end - t_start) * i as f64 / coarse as f64;
            let s = rho * softplus(t);
            let jac = rho * sigmoid(t);
            let q = jac * jac * (k_max * v(s)?.abs() + e_max) + 0.25;
            q_max = q_max.max(q);
        }
        let target = opts.resolution / q_max.sqrt();
        let n_points = (((t_end - t_start) / target).ceil() as usize + 1).max(1000);
        let spacing = (t_end - t_start) / (n_points - 1) as f64;

        let mut radius = Vec::with_capacity(n_points);
        let mut jac2_v = Vec::with_capacity(n_points);
        let mut jac2 = Vec::with_capacity(n_points);
        let mut schwarz = Vec::with_capacity(n_points);
        let mut sqrt_jac = Vec::with_capacity(n_points);
        for i in 0..n_points {
            let t = t_start + spacing * i as f64;
            let s = rho * softplus(t);
            let sig = sigmoid(t);
            let jac = rho * sig;
            radius.push(origin + s);
            jac2.push(jac * jac);
            jac2_v.push(jac * jac * v(s)?);
            schwarz.push(0.25 * (1.0 - sig * sig));
            sqrt_jac.push(jac.sqrt());
        }
        Ok(Self {
            origin,
            r_start: origin + delta,
            r_end: origin + span,
            n_points,
            spacing,
            rho,
            dc: *dc,
            p: *p,
            radius,
            jac2_v,
            jac2,
            schwarz,
            sqrt_jac,
        })
    }

    pub fn constants(&self) -> &DiracConstants<f64> {
        &self.dc
    }

    pub fn params(&self) -> &PotentialParams<f64> {
        &self.p
    }

    pub fn radii(&self) -> &[f64] {
        &self.radius
    }

    /// The energy interval searched for levels, `(C − M, M)` shrunk by `10⁻⁸M`.
    pub fn search_window(&self) -> Result<(f64, f64)> {
        let (lo, hi) = bound_window(&self.dc)?;
        let eps = 1e-8 * self.dc.m;
        Ok((lo + eps, hi - eps))
    }

    /// Outward Numerov sweep; when `keep` is given the samples of `u` are
    /// stored there, with one common (arbitrary) scale.
    fn sweep(&self, energy: f64, mut keep: Option<&mut Vec<f64>>) -> Result<Shot> {
        let k = self.dc.coupling(energy);
        let e_tilde = effective_eigenvalue(energy, &self.dc);
        if !(k > 0.0) || !(e_tilde < 0.0) {
            return Err(Error::NotBound { energy, e_tilde });
        }
        let h2 = self.spacing * self.spacing / 12.0;
        let f = |i: usize| 1.0 - h2 * (k * self.jac2_v[i] - e_tilde * self.jac2[i] + self.schwarz[i]);
        let n = self.n_points;
        let mut w0 = 0.0;
        let mut w1 = self.spacing;
        let (mut f0, mut f1) = (f(0), f(1));
        let mut nodes = 0;
        let mut sign = 1.0;
        let mut scale_log = 0.0;
        let mut samples: Vec<(f64, f64)> = Vec::new();
        if let Some(buf) = keep.as_deref_mut() {
            buf.clear();
            samples.reserve(n);
            samples.push((w0, 0.0));
            samples.push((w1, 0.0));
        }
        let mut w_prev2 = 0.0;
        for i in 1..n - 1 {
            let f2 = f(i + 1);
            let w2 = ((12.0 - 10.0 * f1) * w1 - f0 * w0) / f2;
            if w2 != 0.0 && w2.signum() != sign {
                nodes += 1;
                sign = w2.signum();
            }
            w_prev2 = w0;
            w0 = w1;
            w1 = w2;
            f0 = f1;
            f1 = f2;
            if w1.abs() > RENORMALIZE {
                w0 /= RENORMALIZE;
                w1 /= RENORMALIZE;
                w_prev2 /= RENORMALIZE;
                scale_log += RENORMALIZE.ln();
            }
            if keep.is_some() {
                samples.push((w1, scale_log));
            }
        }
        if !w1.is_finite() {
            return Err(Error::NonConvergence {
                function: "integrate_radial",
                terms: n,
            });
        }
        let kappa = (-e_tilde).sqrt();
        let u_n = self.sqrt_jac[n - 1] * w1;
        let u_m = self.sqrt_jac[n - 2] * w0;
        let dr = self.radius[n - 1] - self.radius[n - 2];
        let mismatch = (u_n - u_m * (-kappa * dr).exp()) / u_n.abs().max(f64::MIN_POSITIVE);
        let sig = (self.sqrt_jac[n - 1].powi(2) / self.rho).min(1.0);
        let w_t = (3.0 * w1 - 4.0 * w0 + w_prev2) / (2.0 * self.spacing);
        let log_derivative = (w_t / w1 + 0.5 * (1.0 - sig)) / (self.rho * sig);
        if let Some(buf) = keep {
            let top = samples.last().map(|s| s.1).unwrap_or(0.0);
            buf.extend(
                samples
                    .iter()
                    .zip(&self.sqrt_jac)
                    .map(|(&(w, l), sj)| sj * w * (l - top).exp()),
            );
        }
        Ok(Shot {
            log_derivative,
            node_count: nodes,
            mismatch,
        })
    }

    /// Inward Numerov sweep from `u = e^{−κr}` at the right end, scaled so
    /// its largest sample is 1.
    fn inward(&self, energy: f64) -> Result<Vec<f64>> {
        let k = self.dc.coupling(energy);
        let e_tilde = effective_eigenvalue(energy, &self.dc);
        if !(k > 0.0) || !(e_tilde < 0.0) {
            return Err(Error::NotBound { energy, e_tilde });
        }
        let kappa = (-e_tilde).sqrt();
        let h2 = self.spacing * self.spacing / 12.0;
        let f = |i: usize| 1.0 - h2 * (k * self.jac2_v[i] - e_tilde * self.jac2[i] + self.schwarz[i]);
        let n = self.n_points;
        let mut w = vec![0.0; n];
        let mut logs = vec![0.0; n];
        let dr = self.radius[n - 1] - self.radius[n - 2];
        w[n - 1] = 1.0 / self.sqrt_jac[n - 1];
        w[n - 2] = (kappa * dr).exp() / self.sqrt_jac[n - 2];
        let mut scale_log = 0.0;
        for i in (1..n - 1).rev() {
            w[i - 1] = ((12.0 - 10.0 * f(i)) * w[i] - f(i + 1) * w[i + 1]) / f(i - 1);
            if w[i - 1].abs() > RENORMALIZE {
                w[i - 1] /= RENORMALIZE;
                w[i] /= RENORMALIZE;
                scale_log += RENORMALIZE.ln();
                logs[i] = scale_log;
            }
            logs[i - 1] = scale_log;
        }
        let top = scale_log;
        let u: Vec<f64> = (0..n)
            .map(|i| self.sqrt_jac[i] * w[i] * (logs[i] - top).exp())
            .collect();
        if u.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonConvergence {
                function: "inward sweep",
                terms: n,
            });
        }
        Ok(u)
    }

    /// Number of levels below `energy`.
    pub fn count_below(&self, energy: f64) -> Result<usize> {
        let shot = self.sweep(energy, None)?;
        let parity = if shot.node_count % 2 == 0 { 1.0 } else { -1.0 };
        Ok(shot.node_count + usize::from(shot.mismatch * parity < 0.0))
    }
}

/// One outward integration at `energy`.
pub fn integrate_radial(energy: f64, grid: &RadialGrid) -> Result<Shot> {
    grid.sweep(energy, None)
}

/// Oracle levels `n_r = 0..=n_max` (fewer if the well holds fewer), each
/// bisected to `10⁻¹³M` on the counting function.
pub fn shoot_eigenvalues(grid: &RadialGrid, n_max: usize) -> Result<Vec<EnergyLevel>> {
    let (lo, hi) = grid.search_window()?;
    let below = grid.count_below(lo)?;
    if below > 0 {
        return Err(Error::GridTooSmall {
            reason: format!("{below} level(s) counted below the bound window"),
        });
    }
    let total = grid.count_below(hi)?;
    let wanted = total.min(n_max.saturating_add(1));
    let tol = 1e-13 * grid.dc.m;
    (0..wanted)
        .into_par_iter()
        .map(|n| {
            let e = roots::bisect_predicate(lo, hi, tol, |e| Ok(grid.count_below(e)? > n))?;
            Ok(EnergyLevel::new(n, e, &grid.dc, Method::Oracle))
        })
        .collect()
}

/// Every oracle level in the window.
pub fn oracle_spectrum(dc: &DiracConstants<f64>, p: &PotentialParams<f64>) -> Result<Vec<EnergyLevel>> {
    let grid = RadialGrid::new(dc, p)?;
    shoot_eigenvalues(&grid, usize::MAX)
}

/// The solution at `energy` on the grid radii, scaled to unit peak: the
/// outward sweep up to the crest of its outermost lobe, joined there to an
/// inward sweep that starts from the decaying exponential at `r_end`. Away
/// from an eigenvalue the join leaves a kink.
pub fn sample_solution(energy: f64, grid: &RadialGrid) -> Result<(Vec<f64>, Vec<f64>)> {
    let mut outward = Vec::new();
    grid.sweep(energy, Some(&mut outward))?;
    let inward = grid.inward(energy)?;
    let n = outward.len();

    // crest of the outermost lobe of the outward solution, before any
    // growing tail takes over
    let mut cut = n;
    for i in (1..n - 1).rev() {
        let a = outward[i].abs();
        if a <= outward[i - 1].abs() && a <= outward[i + 1].abs() {
            if outward[n - 1].abs() > 10.0 * a {
                cut = i;
            }
            break;
        }
    }
    let last_node = (1..cut)
        .rev()
        .find(|&i| outward[i] * outward[i - 1] < 0.0)
        .unwrap_or(0);
    let join = (last_node..cut)
        .max_by(|&a, &b| outward[a].abs().total_cmp(&outward[b].abs()))
        .unwrap_or(0);
    if outward[join] == 0.0 || inward[join] == 0.0 {
        return Err(Error::ZeroNorm);
    }
    let scale = outward[join] / inward[join];
    let u: Vec<f64> = outward[..join]
        .iter()
        .copied()
        .chain(inward[join..].iter().map(|v| v * scale))
        .collect();
    let peak = u.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    Ok((grid.radius.clone(), u.into_iter().map(|v| v / peak).collect()))
}

/// `max |F″ − [(M + E − C)V − Ẽ]F| / max|F|` over the interior samples, with
/// `F″` from five-point differences. Zero for a vanishing `F`.
pub fn ode_residual(
    wf: &WavefunctionGrid,
    energy: f64,
    dc: &DiracConstants<f64>,
    p: &PotentialParams<f64>,
) -> Result<f64> {
    let n = wf.radii.len();
    if n < 5 {
        return Err(Error::GridTooSmall {
            reason: format!("{n} samples, need at least 5"),
        });
    }
    let peak = wf.f_values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if peak == 0.0 {
        return Ok(0.0);
    }
    let k = dc.coupling(energy);
    let e_tilde = effective_eigenvalue(energy, dc);
    let origin = p.left_boundary();
    let mut worst: f64 = 0.0;
    for i in 2..n - 2 {
        let w = fd::weights(wf.radii[i], &wf.radii[i - 2..=i + 2], 2);
        let f2: f64 = w[2].iter().zip(&wf.f_values[i - 2..=i + 2]).map(|(a, b)| a * b).sum();
        let v = potential_at_offset(wf.radii[i] - origin, p)?;
        let res = (f2 - (k * v - e_tilde) * wf.f_values[i]).abs();
        worst = worst.max(res);
    }
    Ok(worst / peak)
}
