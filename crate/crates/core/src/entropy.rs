//! Fields indexed by a finite parameter set `T`, the `CL(p)` norm
//! `sup_t |f(·, t)|_p`, the moment distances feeding the chaining functional
//! `ν_p(Z)`, and envelopes built from it.

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::envelope::{EnvelopeFn, EnvelopeKind, EnvelopeOptions, MomentEnvelope};
use crate::error::{Error, Result};
use crate::grid::{check_exponent, weighted_lp, GridMeasureSpace};

/// `ξ(x, t, ω)` on `X × T × Ω` with `Ω` a probability grid; `x` varies fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct IndexedField {
    x: GridMeasureSpace,
    nt: usize,
    omega: GridMeasureSpace,
    values: Vec<f64>,
}

impl IndexedField {
    pub fn new(x: GridMeasureSpace, nt: usize, omega: GridMeasureSpace, values: Vec<f64>) -> Result<Self> {
        if nt == 0 {
            return Err(Error::InvalidSpace("empty parameter set".into()));
        }
        if (omega.total_mass() - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidSpace("Ω must be a probability grid".into()));
        }
        let expected = x.len() * nt * omega.len();
        if values.len() != expected {
            return Err(Error::DimensionMismatch { expected, actual: values.len() });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Precondition("field values must be finite".into()));
        }
        let f = Self { x, nt, omega, values };
        for t in 0..f.nt {
            for xi in 0..f.x.len() {
                let mean: f64 = (0..f.omega.len()).map(|o| f.omega.weights()[o] * f.at(xi, t, o)).sum();
                let scale = (0..f.omega.len()).fold(1.0_f64, |m, o| m.max(f.at(xi, t, o).abs()));
                if mean.abs() > 1e-12 * scale {
                    return Err(Error::Precondition(format!("field is not centered at x={xi}, t={t} (mean {mean})")));
                }
            }
        }
        Ok(f)
    }

    pub fn from_fn(
        x: GridMeasureSpace,
        nt: usize,
        omega: GridMeasureSpace,
        f: impl Fn(usize, usize, usize) -> f64,
    ) -> Result<Self> {
        let (nx, no) = (x.len(), omega.len());
        let mut values = Vec::with_capacity(nx * nt * no);
        for o in 0..no {
            for t in 0..nt {
                for xi in 0..nx {
                    values.push(f(xi, t, o));
                }
            }
        }
        Self::new(x, nt, omega, values)
    }

    pub fn x(&self) -> &GridMeasureSpace {
        &self.x
    }

    pub fn nt(&self) -> usize {
        self.nt
    }

    pub fn omega(&self) -> &GridMeasureSpace {
        &self.omega
    }

    pub fn at(&self, x: usize, t: usize, o: usize) -> f64 {
        self.values[x + self.x.len() * (t + self.nt * o)]
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self { values: self.values.iter().map(|v| c * v).collect(), ..self.clone() }
    }

    fn column(&self, x: usize, t: usize) -> Vec<f64> {
        (0..self.omega.len()).map(|o| self.at(x, t, o)).collect()
    }

    /// `ρ_{v,x}(t, s) = (E|ξ(x,t) - ξ(x,s)|^v)^{1/v}` for every `x`.
    pub fn moment_distance_rho(&self, t: usize, s: usize, v: f64) -> Result<Vec<f64>> {
        check_exponent(v)?;
        self.check_index(t)?;
        self.check_index(s)?;
        Ok((0..self.x.len())
            .map(|x| {
                let diff: Vec<f64> = (0..self.omega.len()).map(|o| self.at(x, t, o) - self.at(x, s, o)).collect();
                weighted_lp(&diff, self.omega.weights(), v)
            })
            .collect())
    }

    /// `W_γ(x) = sup_t (E|ξ(x,t)|^γ)^{1/γ}`.
    pub fn w_gamma(&self, gamma: f64) -> Result<Vec<f64>> {
        check_exponent(gamma)?;
        Ok((0..self.x.len())
            .map(|x| (0..self.nt).map(|t| weighted_lp(&self.column(x, t), self.omega.weights(), gamma)).fold(0.0, f64::max))
            .collect())
    }

    /// `J(t,s;p,Z;α,β) = ∫ W^{p-1}_{(p-1)βZ}(x)·ρ_{αZ,x}(t,s) μ(dx)` with `β = α/(α-1)`.
    pub fn j_functional(&self, t: usize, s: usize, p: f64, z: f64, alpha: f64) -> Result<f64> {
        let beta = conjugate(alpha)?;
        let w = self.w_gamma((p - 1.0) * beta * z)?;
        let rho = self.moment_distance_rho(t, s, alpha * z)?;
        Ok(self.x.weights().iter().zip(w.iter().zip(&rho)).map(|(m, (w, r))| m * w.powf(p - 1.0) * r).sum())
    }

    /// `σ̄_{p,Z} = sup_t ∫ (E|ξ(x,t)|^{pZ})^{1/Z} μ(dx)`.
    pub fn sigma_bar(&self, p: f64, z: f64) -> Result<f64> {
        check_pz(p, z)?;
        Ok((0..self.nt)
            .map(|t| {
                (0..self.x.len())
                    .map(|x| self.x.weights()[x] * weighted_lp(&self.column(x, t), self.omega.weights(), p * z).powf(p))
                    .sum::<f64>()
            })
            .fold(0.0, f64::max))
    }

    /// `σ̂_{p,Z} = K_R^p(pZ)·σ̄_{p,Z}`.
    pub fn sigma_hat(&self, p: f64, z: f64, options: &EnvelopeOptions) -> Result<f64> {
        Ok(options.rosenthal(p * z).powf(p) * self.sigma_bar(p, z)?)
    }

    fn check_index(&self, t: usize) -> Result<()> {
        if t >= self.nt {
            return Err(Error::DimensionMismatch { expected: self.nt, actual: t + 1 });
        }
        Ok(())
    }
}

/// `{x_weights, nt, omega_weights, values}` with `x` fastest, then `t`, then `ω`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndexedFieldJson {
    pub x_weights: Vec<f64>,
    pub nt: usize,
    pub omega_weights: Vec<f64>,
    pub values: Vec<f64>,
}

impl TryFrom<IndexedFieldJson> for IndexedField {
    type Error = Error;
    fn try_from(j: IndexedFieldJson) -> Result<Self> {
        IndexedField::new(GridMeasureSpace::new(j.x_weights)?, j.nt, GridMeasureSpace::new(j.omega_weights)?, j.values)
    }
}

impl From<&IndexedField> for IndexedFieldJson {
    fn from(f: &IndexedField) -> Self {
        IndexedFieldJson {
            x_weights: f.x.weights().to_vec(),
            nt: f.nt,
            omega_weights: f.omega.weights().to_vec(),
            values: f.values.clone(),
        }
    }
}

fn conjugate(alpha: f64) -> Result<f64> {
    if !(alpha > 1.0 && alpha.is_finite()) {
        return Err(Error::Domain { what: "Hölder exponent α (needs α > 1)", value: alpha });
    }
    Ok(alpha / (alpha - 1.0))
}

fn check_pz(p: f64, z: f64) -> Result<()> {
    if !(p >= 2.0 && p.is_finite()) {
        return Err(Error::Domain { what: "chaining exponent p (needs p >= 2)", value: p });
    }
    if !(z >= 1.0 && z.is_finite()) {
        return Err(Error::Domain { what: "chaining moment Z (needs Z >= 1)", value: z });
    }
    Ok(())
}

/// `sup_t (Σ_x μ_x |f(x,t)|^p)^{1/p}` for values laid out with `x` fastest.
pub fn cl_norm(values: &[f64], x_weights: &[f64], p: f64) -> Result<f64> {
    check_exponent(p)?;
    let nx = x_weights.len();
    if nx == 0 || values.len() % nx != 0 {
        return Err(Error::DimensionMismatch { expected: nx, actual: values.len() });
    }
    Ok(values.chunks_exact(nx).map(|col| weighted_lp(col, x_weights, p)).fold(0.0, f64::max))
}

/// `p|x-y|(|x|^{p-1} + |y|^{p-1}) - ||x|^p - |y|^p|`, non-negative for `p >= 1`.
pub fn power_difference_slack(x: f64, y: f64, p: f64) -> f64 {
    p * (x - y).abs() * (x.abs().powf(p - 1.0) + y.abs().powf(p - 1.0)) - (x.abs().powf(p) - y.abs().powf(p)).abs()
}

/// Tuning of the chaining functional.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainingParams {
    /// Candidate `α`; `β = α/(α-1)`.
    pub alphas: Vec<f64>,
    /// Candidate `θ ∈ (0, 1)`.
    pub thetas: Vec<f64>,
    #[serde(default)]
    pub options: EnvelopeOptions,
}

impl Default for ChainingParams {
    fn default() -> Self {
        Self {
            alphas: vec![1.25, 1.5, 2.0, 3.0, 5.0],
            thetas: (1..=19).map(|i| i as f64 * 0.05).collect(),
            options: EnvelopeOptions::default(),
        }
    }
}

/// `r_{p,Z}(t,s) = 2p·inf_{α,β} K_R(αZ)·K_R^{p-1}((p-1)βZ)·J(t,s;p,Z;α,β)`.
///
/// Only pairs with `αZ >= 2` and `(p-1)βZ >= 2` are used: below moment
/// order 2 the Rosenthal estimate does not bound the normalized sums.
pub fn distance_r(field: &IndexedField, t: usize, s: usize, p: f64, z: f64, params: &ChainingParams) -> Result<f64> {
    check_pz(p, z)?;
    if params.alphas.is_empty() {
        return Err(Error::Precondition("empty α grid".into()));
    }
    let k = &params.options;
    let mut best = f64::INFINITY;
    let mut usable = false;
    for &alpha in &params.alphas {
        let beta = conjugate(alpha)?;
        if alpha * z < 2.0 || (p - 1.0) * beta * z < 2.0 {
            continue;
        }
        usable = true;
        let j = field.j_functional(t, s, p, z, alpha)?;
        let r = 2.0 * p * k.rosenthal(alpha * z) * k.rosenthal((p - 1.0) * beta * z).powf(p - 1.0) * j;
        best = best.min(r);
    }
    if !usable {
        return Err(Error::Precondition(format!("no α in the grid has αZ >= 2 and (p-1)βZ >= 2 at p = {p}, Z = {z}")));
    }
    Ok(best)
}

/// Symmetric matrix of `r_{p,Z}` over all pairs, row-major.
pub fn distance_matrix(field: &IndexedField, p: f64, z: f64, params: &ChainingParams) -> Result<Vec<f64>> {
    let n = field.nt();
    let upper: Vec<(usize, usize, f64)> = (0..n)
        .into_par_iter()
        .flat_map_iter(|t| ((t + 1)..n).map(move |s| (t, s)))
        .map(|(t, s)| distance_r(field, t, s, p, z, params).map(|r| (t, s, r)))
        .collect::<Result<_>>()?;
    let mut m = vec![0.0; n * n];
    for (t, s, r) in upper {
        m[t * n + s] = r;
        m[s * n + t] = r;
    }
    Ok(m)
}

/// How the covering numbers of `T` under `r̂_{p,Z}` are obtained.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CoveringSpec {
    /// `N(ε) = max(1, ⌈C_cov·D·ε^{-1/l}⌉)^d`.
    Analytic {
        #[serde(rename = "D")]
        diameter: f64,
        d: u32,
        l: f64,
        #[serde(rename = "C_cov")]
        c_cov: f64,
    },
    /// Greedy cover of the field's parameter grid.
    Empirical,
}

/// `ε ↦ N(T, r̂, ε)`.
#[derive(Debug, Clone, PartialEq)]
pub enum CoveringFunction {
    Analytic { diameter: f64, dim: u32, holder: f64, c_cov: f64 },
    /// `radii[m-1]` is the covering radius achieved by the first `m`
    /// farthest-point centers; non-increasing, ending at 0.
    Greedy { radii: Vec<f64> },
}

impl CoveringFunction {
    pub fn analytic(diameter: f64, dim: u32, holder: f64, c_cov: f64) -> Result<Self> {
        if !(diameter >= 0.0 && c_cov > 0.0 && holder > 0.0 && holder <= 1.0 && dim >= 1) {
            return Err(Error::Precondition("analytic covering needs D >= 0, C_cov > 0, 0 < l <= 1, d >= 1".into()));
        }
        Ok(CoveringFunction::Analytic { diameter, dim, holder, c_cov })
    }

    /// Farthest-point cover of `n` points under the distance matrix `dist`.
    pub fn greedy(dist: &[f64], n: usize) -> Result<Self> {
        if n == 0 || dist.len() != n * n {
            return Err(Error::DimensionMismatch { expected: n * n, actual: dist.len() });
        }
        let mut nearest: Vec<f64> = (0..n).map(|j| dist[j]).collect();
        let mut radii = Vec::with_capacity(n);
        loop {
            let (far, r) = nearest.iter().enumerate().fold((0, 0.0), |b, (j, &d)| if d > b.1 { (j, d) } else { b });
            radii.push(r);
            if r == 0.0 {
                break;
            }
            for (j, near) in nearest.iter_mut().enumerate() {
                *near = near.min(dist[far * n + j]);
            }
        }
        Ok(CoveringFunction::Greedy { radii })
    }

    pub fn count(&self, eps: f64) -> f64 {
        match self {
            CoveringFunction::Analytic { diameter, dim, holder, c_cov } => {
                if *diameter == 0.0 {
                    return 1.0;
                }
                let per_axis = (c_cov * diameter * eps.powf(-1.0 / holder)).ceil().max(1.0);
                per_axis.powi(*dim as i32)
            }
            CoveringFunction::Greedy { radii } => (radii.iter().position(|&r| r <= eps).unwrap() + 1) as f64,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThetaTerm {
    pub theta: f64,
    /// `Σ_k θ^{k-1} N^{1/Z}((θσ̂)^k)`; `None` when the series diverges.
    pub inner: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NuValue {
    /// `ν_p(Z)`; `+∞` when every candidate `θ` diverges.
    pub nu: f64,
    pub sigma_hat: f64,
    pub theta_star: Option<f64>,
    pub per_theta: Vec<ThetaTerm>,
    /// `σ̂ >= 1` forced the scan onto `θ < 1/σ̂`.
    pub theta_restricted: bool,
}

const MAX_CHAIN_TERMS: usize = 1_000_000;

/// Inner chaining series for one `θ`; radii `(θσ̂)^k` with `θσ̂ < 1`.
fn inner_sum(theta: f64, sigma_hat: f64, z: f64, cover: &CoveringFunction) -> Option<f64> {
    let rho = theta * sigma_hat;
    debug_assert!(rho < 1.0);
    let geometric_from = |k: i32, n: f64| n.powf(1.0 / z) * theta.powi(k - 1) / (1.0 - theta);
    match cover {
        CoveringFunction::Greedy { radii } => {
            let n_final = radii.len() as f64;
            let min_positive = if radii.len() > 1 { radii[radii.len() - 2] } else { f64::INFINITY };
            let mut sum = 0.0;
            let mut radius = 1.0;
            for k in 1.. {
                radius *= rho;
                if radius < min_positive || n_final == 1.0 {
                    return Some(sum + geometric_from(k, n_final));
                }
                sum += theta.powi(k - 1) * cover.count(radius).powf(1.0 / z);
            }
            unreachable!()
        }
        CoveringFunction::Analytic { diameter, dim, holder, c_cov } => {
            if *diameter == 0.0 {
                return Some(geometric_from(1, 1.0));
            }
            // Beyond block k, N_j <= (a_j + 1)^d with a_j = C_cov·D·ρ^{-j/l}
            // growing geometrically, so the remainder is a geometric series.
            let e = *dim as f64 / z;
            let q = theta * rho.powf(-e / holder);
            if q >= 1.0 {
                return None;
            }
            let a = |j: f64| c_cov * diameter * rho.powf(-j / holder);
            let mut sum = 0.0;
            for k in 1..=MAX_CHAIN_TERMS {
                let kf = k as f64;
                sum += theta.powi(k as i32 - 1) * cover.count(rho.powf(kf)).powf(1.0 / z);
                let a_next = a(kf + 1.0);
                let rest = (1.0 + 1.0 / a_next).powf(e) * (c_cov * diameter).powf(e) * q.powf(kf + 1.0) / (theta * (1.0 - q));
                if rest <= 1e-15 * sum || k == MAX_CHAIN_TERMS {
                    return Some(sum + rest);
                }
            }
            unreachable!()
        }
    }
}

/// `ν_p(Z) = (σ̂·inf_θ Σ_k θ^{k-1} N^{1/Z}(T, r̂, (θσ̂)^k))^{1/p}` over the `θ` grid.
pub fn nu_from_parts(sigma_hat: f64, p: f64, z: f64, cover: &CoveringFunction, thetas: &[f64]) -> Result<NuValue> {
    check_pz(p, z)?;
    if thetas.is_empty() || thetas.iter().any(|t| !(*t > 0.0 && *t < 1.0)) {
        return Err(Error::Precondition("θ grid must be non-empty and inside (0, 1)".into()));
    }
    if sigma_hat == 0.0 {
        return Ok(NuValue { nu: 0.0, sigma_hat, theta_star: None, per_theta: Vec::new(), theta_restricted: false });
    }
    let mut grid: Vec<f64> = thetas.to_vec();
    let mut restricted = false;
    if sigma_hat >= 1.0 {
        restricted = true;
        grid.retain(|t| t * sigma_hat < 1.0);
        if grid.is_empty() {
            grid = thetas.iter().map(|t| t / sigma_hat).collect();
        }
    }
    let per_theta: Vec<ThetaTerm> =
        grid.iter().map(|&theta| ThetaTerm { theta, inner: inner_sum(theta, sigma_hat, z, cover) }).collect();
    let best = per_theta
        .iter()
        .filter_map(|t| t.inner.map(|s| (t.theta, s)))
        .fold(None, |b: Option<(f64, f64)>, c| match b {
            Some(b) if b.1 <= c.1 => Some(b),
            _ => Some(c),
        });
    let (nu, theta_star) = match best {
        Some((theta, s)) => ((sigma_hat * s).powf(1.0 / p), Some(theta)),
        None => (f64::INFINITY, None),
    };
    Ok(NuValue { nu, sigma_hat, theta_star, per_theta, theta_restricted: restricted })
}

/// `ν_p(Z)` of a field, with covering numbers of `T` under `r̂ = r/σ̂`.
pub fn nu_p(field: &IndexedField, p: f64, z: f64, covering: &CoveringSpec, params: &ChainingParams) -> Result<NuValue> {
    let sigma_hat = field.sigma_hat(p, z, &params.options)?;
    if sigma_hat == 0.0 {
        return nu_from_parts(0.0, p, z, &CoveringFunction::Greedy { radii: vec![0.0] }, &params.thetas);
    }
    let cover = match covering {
        CoveringSpec::Analytic { diameter, d, l, c_cov } => CoveringFunction::analytic(*diameter, *d, *l, *c_cov)?,
        CoveringSpec::Empirical => {
            let mut dist = distance_matrix(field, p, z, params)?;
            dist.iter_mut().for_each(|r| *r /= sigma_hat);
            CoveringFunction::greedy(&dist, field.nt())?
        }
    };
    nu_from_parts(sigma_hat, p, z, &cover, &params.thetas)
}

/// `L ↦ doob(L)·ν_p(L/p)`, the envelope whose tail transform enters `Θ(u)`.
pub fn nu_envelope_from_field(
    field: &IndexedField,
    p: f64,
    covering: CoveringSpec,
    params: ChainingParams,
    l_grid: Option<Vec<f64>>,
) -> Result<MomentEnvelope> {
    check_pz(p, 1.0)?;
    let field = field.clone();
    let options = params.options;
    let g: EnvelopeFn = Arc::new(move |l| match nu_p(&field, p, l / p, &covering, &params) {
        Ok(v) => options.doob.at(l) * v.nu,
        Err(_) => f64::INFINITY,
    });
    MomentEnvelope::assemble(
        EnvelopeKind::Chained,
        Some(crate::grid::ExponentVector::scalar(p)?),
        p,
        f64::INFINITY,
        l_grid,
        g,
        None,
        options,
        true,
    )
}

/// Inputs of the Hölder-continuous example on `T ⊂ R^d` with diameter `D`:
/// `ρ_{v,x}(t,s) <= B_v(x)‖t-s‖^l`, `J(t,s;p,Z;2,2) <= C1·‖t-s‖^l·Z^b`,
/// `σ̄_{p,Z} = C2·Z^b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HolderExample {
    pub c1: f64,
    pub c2: f64,
    pub l: f64,
    pub b: f64,
    pub p: f64,
    pub dim: u32,
    pub diameter: f64,
}

impl HolderExample {
    /// Smallest admissible `Z` (exclusive): `2d/l`.
    pub fn z_min(&self) -> f64 {
        (2.0 * self.dim as f64 / self.l).max(1.0)
    }

    fn validate(&self) -> Result<()> {
        if !(self.l > 0.0 && self.l <= 1.0) {
            return Err(Error::Domain { what: "Hölder index l (needs 0 < l <= 1)", value: self.l });
        }
        if !(self.b <= 1.0) {
            return Err(Error::Domain { what: "moment growth b (needs b <= 1)", value: self.b });
        }
        if !(self.c1 > 0.0 && self.c2 > 0.0 && self.diameter >= 0.0 && self.dim >= 1) {
            return Err(Error::Precondition("Hölder example needs C1, C2 > 0, D >= 0, d >= 1".into()));
        }
        check_pz(self.p, 1.0)
    }

    /// Covering of `T` under `r̂_{p,Z}`: a ball of `r̂`-radius ε contains the
    /// Euclidean ball of radius `(ε/c)^{1/l}`, `c = r̂/‖t-s‖^l`, and a cube of
    /// side `D` is covered by `⌈√d·D/(2δ)⌉^d` balls of radius `δ`.
    pub fn covering(&self, z: f64, options: &EnvelopeOptions) -> Result<CoveringFunction> {
        let p = self.p;
        let c = 2.0 * p * options.rosenthal(2.0 * z) * options.rosenthal(2.0 * (p - 1.0) * z).powf(p - 1.0) * self.c1
            / (options.rosenthal(p * z).powf(p) * self.c2);
        let c_cov = (self.dim as f64).sqrt() / 2.0 * c.powf(1.0 / self.l);
        CoveringFunction::analytic(self.diameter, self.dim, self.l, c_cov)
    }

    pub fn sigma_hat(&self, z: f64, options: &EnvelopeOptions) -> f64 {
        options.rosenthal(self.p * z).powf(self.p) * self.c2 * z.powf(self.b)
    }

    pub fn nu(&self, z: f64, params: &ChainingParams) -> Result<NuValue> {
        self.validate()?;
        if !(z > self.z_min()) {
            return Err(Error::Domain { what: "Hölder example moment Z (needs Z > 2d/l)", value: z });
        }
        let cover = self.covering(z, &params.options)?;
        nu_from_parts(self.sigma_hat(z, &params.options), self.p, z, &cover, &params.thetas)
    }
}

/// `L ↦ doob(L)·ν_p(L/p)` for the Hölder example, on `L > p·2d/l`.
pub fn holder_example_envelope(ex: HolderExample, params: ChainingParams, l_grid: Option<Vec<f64>>) -> Result<MomentEnvelope> {
    ex.validate()?;
    let low = ex.p * ex.z_min() * (1.0 + 1e-9);
    let options = params.options;
    let g: EnvelopeFn = Arc::new(move |l| match ex.nu(l / ex.p, &params) {
        Ok(v) => options.doob.at(l) * v.nu,
        Err(_) => f64::INFINITY,
    });
    MomentEnvelope::assemble(
        EnvelopeKind::Chained,
        Some(crate::grid::ExponentVector::scalar(ex.p)?),
        low,
        f64::INFINITY,
        l_grid,
        g,
        None,
        options,
        true,
    )
}
