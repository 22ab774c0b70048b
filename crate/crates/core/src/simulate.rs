//! Monte Carlo trajectories `n ↦ ‖τ(n)‖`, empirical tails `Q̂(u)` with
//! Clopper-Pearson limits, and dominance checks against bound curves.
//!
//! Every trial draws from its own ChaCha8 stream (`seed`, stream = trial
//! index), so results do not depend on the worker count.

use std::io::{Read, Write};
use std::sync::Arc;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Exp1, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::function::beta::beta_reg;
use statrs::function::gamma::ln_gamma;

use crate::bounds::{validate_u_grid, TailBoundCurve};
use crate::envelope::{
    envelope_from_pointwise_moments, EnvelopeOptions, MomentEnvelope, MomentFamily, MomentForm, PointMomentFn,
};
use crate::error::{Error, Result};
use crate::grid::{product_from_axes, AxisJson, ExponentVector, GridMeasureSpace, ProductSpace};
use crate::partition::{norming_value, NormingSequence};
use crate::search::bisect;

/// Law of `ξ_j(x)` before the per-point scale.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Family {
    Rademacher,
    /// Uniform on `(-a, a)`.
    Uniform { a: f64 },
    /// `N(0, σ²)`.
    Gaussian { sigma: f64 },
    /// Random sign times `|ξ|` with `P(|ξ| > z) = exp(-z^β)`.
    Weibull { beta: f64 },
}

impl Family {
    fn validate(&self) -> Result<()> {
        let (what, value) = match *self {
            Family::Rademacher => return Ok(()),
            Family::Uniform { a } => ("uniform half-width a", a),
            Family::Gaussian { sigma } => ("gaussian σ", sigma),
            Family::Weibull { beta } => ("Weibull shape β", beta),
        };
        if !(value > 0.0 && value.is_finite()) {
            return Err(Error::Domain { what, value });
        }
        Ok(())
    }

    /// `(E|ξ|^L)^{1/L}`.
    pub fn moment(&self, l: f64) -> f64 {
        match *self {
            Family::Rademacher => 1.0,
            Family::Uniform { a } => a * (l + 1.0).powf(-1.0 / l),
            Family::Gaussian { sigma } => {
                sigma * ((0.5 * l * std::f64::consts::LN_2 + ln_gamma(0.5 * (l + 1.0)) - 0.5 * std::f64::consts::PI.ln()) / l).exp()
            }
            Family::Weibull { beta } => MomentFamily::Weibull { scale: 1.0, beta }.moment(l),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Dependence {
    #[default]
    Iid,
    /// `ξ_j(x) = y_j(x)·c(S_{j-1}(x))` with `y_j` symmetric and independent of
    /// the past, `c = 1` when `S_{j-1}(x) >= 0` and `1/2` otherwise.
    Martingale,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Coupling {
    /// Independent draws at every grid point.
    #[default]
    Independent,
    /// One draw per step shared by all grid points.
    Common,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum NormSpec {
    /// `L_p` over the product measure of all axes.
    Lp { p: f64 },
    /// Mixed norm, axis 0 innermost.
    Mixed { p: Vec<f64> },
    /// `sup_t |·|_p`, the last axis indexing `t`.
    Cl { p: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub family: Family,
    /// Per-point multiplier, flat with axis 0 fastest; all ones when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale: Option<Vec<f64>>,
    #[serde(default)]
    pub dependence: Dependence,
    #[serde(default)]
    pub coupling: Coupling,
    pub axes: Vec<AxisJson>,
    pub norm: NormSpec,
}

impl FieldSpec {
    pub fn space(&self) -> Result<ProductSpace> {
        product_from_axes(&self.axes)
    }

    fn scales(&self, n_points: usize) -> Result<Vec<f64>> {
        match &self.scale {
            None => Ok(vec![1.0; n_points]),
            Some(s) if s.len() != n_points => Err(Error::DimensionMismatch { expected: n_points, actual: s.len() }),
            Some(s) if s.iter().any(|c| !(*c >= 0.0 && c.is_finite())) => {
                Err(Error::Precondition("per-point scales must be finite and non-negative".into()))
            }
            Some(s) => Ok(s.clone()),
        }
    }

    /// `(x, L) ↦ (E|ξ(x)|^L)^{1/L}` for the i.i.d. law.
    pub fn point_moment(&self) -> Result<PointMomentFn> {
        self.family.validate()?;
        let scale = self.scales(self.space()?.len())?;
        let family = self.family;
        Ok(Arc::new(move |x, l| scale[x] * family.moment(l)))
    }

    /// Minkowski-form moment envelope for `lp` and `mixed` norms.
    pub fn envelope(&self, options: EnvelopeOptions, l_grid: Option<Vec<f64>>) -> Result<MomentEnvelope> {
        let space = self.space()?;
        let moment = self.point_moment()?;
        match &self.norm {
            NormSpec::Lp { p } => {
                let flat = ProductSpace::single(GridMeasureSpace::new(space.flat_weights())?);
                envelope_from_pointwise_moments(&flat, &ExponentVector::scalar(*p)?, moment, l_grid, options, MomentForm::Minkowski)
            }
            NormSpec::Mixed { p } => {
                envelope_from_pointwise_moments(&space, &ExponentVector::new(p.clone())?, moment, l_grid, options, MomentForm::Minkowski)
            }
            NormSpec::Cl { .. } => Err(Error::Precondition(
                "CL norms are bounded through the chaining envelope of an indexed field".into(),
            )),
        }
    }
}

/// `|x|^e` with integer fast paths.
#[inline]
fn pow_abs(x: f64, e: f64, ei: Option<i32>) -> f64 {
    match ei {
        Some(1) => x.abs(),
        Some(2) => x * x,
        Some(k) => x.abs().powi(k),
        None => x.abs().powf(e),
    }
}

fn int_exp(e: f64) -> Option<i32> {
    (e.fract() == 0.0 && (1.0..=64.0).contains(&e)).then_some(e as i32)
}

#[derive(Debug, Clone)]
enum CompiledNorm {
    Lp { weights: Vec<f64>, p: f64, pi: Option<i32> },
    /// Level `j` raises the previous level's powered norms to `p_j/p_{j-1}`.
    Mixed { dims: Vec<usize>, axis_weights: Vec<Vec<f64>>, p: Vec<f64>, ratio: Vec<(f64, Option<i32>)>, p0i: Option<i32> },
    Cl { weights: Vec<f64>, nt: usize, p: f64, pi: Option<i32> },
}

impl CompiledNorm {
    fn new(spec: &NormSpec, space: &ProductSpace) -> Result<Self> {
        let check = |p: f64| {
            if !(p >= 1.0 && p.is_finite()) {
                return Err(Error::InvalidExponent { value: p, reason: "norm exponents must be finite and >= 1" });
            }
            Ok(p)
        };
        Ok(match spec {
            NormSpec::Lp { p } => CompiledNorm::Lp { weights: space.flat_weights(), p: check(*p)?, pi: int_exp(*p) },
            NormSpec::Mixed { p } => {
                if p.len() != space.axes().len() {
                    return Err(Error::DimensionMismatch { expected: space.axes().len(), actual: p.len() });
                }
                for &e in p {
                    check(e)?;
                }
                let ratio = p.windows(2).map(|w| (w[1] / w[0], int_exp(w[1] / w[0]))).collect();
                CompiledNorm::Mixed {
                    dims: space.dims(),
                    axis_weights: space.axes().iter().map(|a| a.weights().to_vec()).collect(),
                    p: p.clone(),
                    ratio,
                    p0i: int_exp(p[0]),
                }
            }
            NormSpec::Cl { p } => {
                let axes = space.axes();
                if axes.len() < 2 {
                    return Err(Error::DimensionMismatch { expected: 2, actual: axes.len() });
                }
                let x = ProductSpace::new(axes[..axes.len() - 1].to_vec())?;
                CompiledNorm::Cl { weights: x.flat_weights(), nt: axes.last().unwrap().len(), p: check(*p)?, pi: int_exp(*p) }
            }
        })
    }

    /// Exponent `q` such that [`Self::powered`] returns `‖s‖^q`.
    fn outer(&self) -> f64 {
        match self {
            CompiledNorm::Lp { p, .. } | CompiledNorm::Cl { p, .. } => *p,
            CompiledNorm::Mixed { p, .. } => *p.last().unwrap(),
        }
    }

    #[inline]
    fn powered(&self, s: &[f64], scratch: &mut Vec<f64>) -> f64 {
        match self {
            CompiledNorm::Lp { weights, p, pi } => s.iter().zip(weights).map(|(v, w)| w * pow_abs(*v, *p, *pi)).sum(),
            CompiledNorm::Cl { weights, nt, p, pi } => {
                let nx = weights.len();
                (0..*nt)
                    .map(|t| s[t * nx..(t + 1) * nx].iter().zip(weights).map(|(v, w)| w * pow_abs(*v, *p, *pi)).sum::<f64>())
                    .fold(0.0, f64::max)
            }
            CompiledNorm::Mixed { dims, axis_weights, p, ratio, p0i } if dims.len() == 2 => {
                let (w0, w1) = (&axis_weights[0], &axis_weights[1]);
                let (e, ei) = ratio[0];
                s.chunks_exact(dims[0])
                    .zip(w1)
                    .map(|(c, wb)| wb * pow_abs(c.iter().zip(w0).map(|(v, w)| w * pow_abs(*v, p[0], *p0i)).sum::<f64>(), e, ei))
                    .sum()
            }
            CompiledNorm::Mixed { dims, axis_weights, p, ratio, p0i } => {
                scratch.clear();
                let w0 = &axis_weights[0];
                scratch.extend(s.chunks_exact(dims[0]).map(|c| c.iter().zip(w0).map(|(v, w)| w * pow_abs(*v, p[0], *p0i)).sum::<f64>()));
                let mut len = scratch.len();
                for (j, &(e, ei)) in ratio.iter().enumerate() {
                    let (d, w) = (dims[j + 1], &axis_weights[j + 1]);
                    let next = len / d;
                    for b in 0..next {
                        let mut acc = 0.0;
                        for i in 0..d {
                            acc += w[i] * pow_abs(scratch[b * d + i], e, ei);
                        }
                        scratch[b] = acc;
                    }
                    len = next;
                }
                scratch[0]
            }
        }
    }
}

/// A validated [`FieldSpec`] ready for sampling.
#[derive(Debug, Clone)]
struct Compiled {
    family: Family,
    scale: Vec<f64>,
    dependence: Dependence,
    coupling: Coupling,
    norm: CompiledNorm,
}

impl Compiled {
    fn new(spec: &FieldSpec) -> Result<Self> {
        spec.family.validate()?;
        let space = spec.space()?;
        Ok(Self {
            family: spec.family,
            scale: spec.scales(space.len())?,
            dependence: spec.dependence,
            coupling: spec.coupling,
            norm: CompiledNorm::new(&spec.norm, &space)?,
        })
    }
}

struct Sampler {
    rng: ChaCha8Rng,
    bits: u64,
    nbits: u32,
}

impl Sampler {
    fn new(seed: u64, trial: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial);
        Self { rng, bits: 0, nbits: 0 }
    }

    #[inline]
    fn sign(&mut self) -> f64 {
        if self.nbits == 0 {
            self.bits = self.rng.next_u64();
            self.nbits = 64;
        }
        let b = self.bits & 1;
        self.bits >>= 1;
        self.nbits -= 1;
        f64::from_bits(1.0_f64.to_bits() | (b << 63))
    }

    /// Adds one increment to the partial sums `s`, writing it to `xi`.
    #[inline]
    fn step<D: Draw>(&mut self, c: &Compiled, d: &D, s: &mut [f64], xi: &mut [f64]) {
        let common = match c.coupling {
            Coupling::Common => Some(d.draw(self)),
            Coupling::Independent => None,
        };
        for x in 0..s.len() {
            let y = match common {
                Some(y) => y,
                None => d.draw(self),
            };
            let mut inc = c.scale[x] * y;
            if c.dependence == Dependence::Martingale && s[x] < 0.0 {
                inc *= 0.5;
            }
            xi[x] = inc;
            s[x] += inc;
        }
    }
}

/// One sample of a [`Family`], monomorphized so the hot loop has no dispatch.
trait Draw: Sync {
    fn draw(&self, s: &mut Sampler) -> f64;
}

struct RademacherDraw;
struct UniformDraw(f64);
struct GaussianDraw(f64);
struct LaplaceDraw;
struct WeibullDraw(f64);

impl Draw for RademacherDraw {
    #[inline]
    fn draw(&self, s: &mut Sampler) -> f64 {
        s.sign()
    }
}

impl Draw for UniformDraw {
    #[inline]
    fn draw(&self, s: &mut Sampler) -> f64 {
        let u: f64 = s.rng.random();
        s.sign() * self.0 * u
    }
}

impl Draw for GaussianDraw {
    #[inline]
    fn draw(&self, s: &mut Sampler) -> f64 {
        let z: f64 = s.rng.sample(StandardNormal);
        self.0 * z
    }
}

impl Draw for LaplaceDraw {
    #[inline]
    fn draw(&self, s: &mut Sampler) -> f64 {
        let e: f64 = s.rng.sample(Exp1);
        s.sign() * e
    }
}

impl Draw for WeibullDraw {
    /// `Exp(1)^{1/β}` has tail `exp(-z^β)`.
    #[inline]
    fn draw(&self, s: &mut Sampler) -> f64 {
        let e: f64 = s.rng.sample(Exp1);
        s.sign() * e.powf(self.0)
    }
}

macro_rules! with_draw {
    ($family:expr, $d:ident => $body:expr) => {
        match $family {
            Family::Rademacher => {
                let $d = RademacherDraw;
                $body
            }
            Family::Uniform { a } => {
                let $d = UniformDraw(a);
                $body
            }
            Family::Gaussian { sigma } => {
                let $d = GaussianDraw(sigma);
                $body
            }
            Family::Weibull { beta } if beta == 1.0 => {
                let $d = LaplaceDraw;
                $body
            }
            Family::Weibull { beta } => {
                let $d = WeibullDraw(1.0 / beta);
                $body
            }
        }
    };
}

/// Per-trial suprema `sup_{n <= n_max} ‖τ(n)‖` for one norming exponent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryEnsemble {
    pub trials: usize,
    pub n_max: u64,
    pub seed: u64,
    pub r: f64,
    pub sup_values: Vec<f64>,
}

fn check_run(n_max: u64, trials: usize) -> Result<()> {
    if n_max == 0 {
        return Err(Error::Precondition("n_max must be at least 1".into()));
    }
    if trials == 0 {
        return Err(Error::Precondition("trials must be at least 1".into()));
    }
    Ok(())
}

/// `1/(√n·v_r(n))^q` for `n = 1..=n_max`.
fn inverse_denominators(r: f64, n_max: u64, q: f64) -> Result<Vec<f64>> {
    let v = NormingSequence::iterated_log(r)?;
    (1..=n_max).map(|n| Ok(((n as f64).sqrt() * norming_value(&v, n)?).powf(-q))).collect()
}

/// Per trial, `max_n ‖S(n)‖^q·inv[r][n]` mapped back to `sup ‖τ(n)‖` for each `r`.
fn run_trials<D: Draw>(c: &Compiled, d: &D, n_max: u64, trials: usize, seed: u64, inv: &[Vec<f64>], q: f64) -> Vec<Vec<f64>> {
    let n_points = c.scale.len();
    let nr = inv.len();
    // Row n holds the factors for every r, so the hot loop reads memory in order.
    let table: Vec<f64> = (0..n_max as usize).flat_map(|n| inv.iter().map(move |t| t[n])).collect();
    (0..trials as u64)
        .into_par_iter()
        .map(|trial| {
            let mut sampler = Sampler::new(seed, trial);
            let mut s = vec![0.0; n_points];
            let mut xi = vec![0.0; n_points];
            let mut scratch = Vec::with_capacity(n_points);
            let mut best = vec![0.0_f64; nr];
            for row in table.chunks_exact(nr) {
                sampler.step(c, d, &mut s, &mut xi);
                let np = c.norm.powered(&s, &mut scratch);
                for (b, inv) in best.iter_mut().zip(row) {
                    let ratio = np * inv;
                    if ratio > *b {
                        *b = ratio;
                    }
                }
            }
            best.into_iter().map(|b| b.powf(1.0 / q)).collect()
        })
        .collect()
}

/// One ensemble per norming exponent in `rs`, all driven by the same paths.
pub fn simulate_many(spec: &FieldSpec, n_max: u64, trials: usize, seed: u64, rs: &[f64]) -> Result<Vec<TrajectoryEnsemble>> {
    check_run(n_max, trials)?;
    let c = Compiled::new(spec)?;
    let q = c.norm.outer();
    let inv: Vec<Vec<f64>> = rs.iter().map(|&r| inverse_denominators(r, n_max, q)).collect::<Result<_>>()?;
    let per_trial = with_draw!(c.family, d => run_trials(&c, &d, n_max, trials, seed, &inv, q));
    Ok(rs
        .iter()
        .enumerate()
        .map(|(i, &r)| TrajectoryEnsemble {
            trials,
            n_max,
            seed,
            r,
            sup_values: per_trial.iter().map(|t| t[i]).collect(),
        })
        .collect())
}

pub fn simulate(spec: &FieldSpec, n_max: u64, trials: usize, seed: u64, r: f64) -> Result<TrajectoryEnsemble> {
    Ok(simulate_many(spec, n_max, trials, seed, &[r])?.pop().unwrap())
}

/// Increments `ξ_1, ..., ξ_n` of one trial, flat per step.
pub fn sample_increments(spec: &FieldSpec, n: u64, seed: u64, trial: u64) -> Result<Vec<Vec<f64>>> {
    let c = Compiled::new(spec)?;
    let mut sampler = Sampler::new(seed, trial);
    let mut s = vec![0.0; c.scale.len()];
    let mut xi = vec![0.0; c.scale.len()];
    Ok(with_draw!(c.family, d => (0..n)
        .map(|_| {
            sampler.step(&c, &d, &mut s, &mut xi);
            xi.clone()
        })
        .collect()))
}

/// Runs `f` on a dedicated pool of `threads` workers (0 = one per core).
pub fn with_threads<R: Send>(threads: usize, f: impl FnOnce() -> R + Send) -> Result<R> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Precondition(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(f))
}

/// One-sided upper confidence limit for a binomial proportion.
pub fn clopper_pearson_upper(successes: usize, trials: usize, level: f64) -> Result<f64> {
    if trials == 0 || successes > trials {
        return Err(Error::Precondition(format!("{successes} successes out of {trials} trials")));
    }
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::Domain { what: "confidence level", value: level });
    }
    let (k, n) = (successes as f64, trials as f64);
    if successes == trials {
        return Ok(1.0);
    }
    if successes == 0 {
        return Ok(1.0 - (1.0 - level).powf(1.0 / n));
    }
    // P(Bin(n, p) <= k) = 1 - I_p(k+1, n-k) falls to 1 - level at the limit.
    Ok(bisect(|p| beta_reg(k + 1.0, n - k, p) - level, k / n, 1.0, 200))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalRow {
    pub u: f64,
    pub q_hat: f64,
    pub cp_upper_99: f64,
    pub trials: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalCurve {
    pub rows: Vec<EmpiricalRow>,
}

impl EmpiricalCurve {
    pub fn u_grid(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.u).collect()
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for row in &self.rows {
            w.serialize(row)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_csv<R: Read>(input: R) -> Result<Self> {
        let rows = csv::Reader::from_reader(input).deserialize().collect::<std::result::Result<_, _>>()?;
        Ok(Self { rows })
    }
}

/// `Q̂(u)` = fraction of trials with `sup > u`, with 99% upper limits.
pub fn empirical_q(ens: &TrajectoryEnsemble, u_grid: &[f64]) -> Result<EmpiricalCurve> {
    validate_u_grid_loose(u_grid)?;
    let mut sorted = ens.sup_values.clone();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len();
    let rows = u_grid
        .iter()
        .map(|&u| {
            let exceed = n - sorted.partition_point(|s| *s <= u);
            Ok(EmpiricalRow {
                u,
                q_hat: exceed as f64 / n as f64,
                cp_upper_99: clopper_pearson_upper(exceed, n, 0.99)?,
                trials: n,
            })
        })
        .collect::<Result<_>>()?;
    Ok(EmpiricalCurve { rows })
}

fn validate_u_grid_loose(u_grid: &[f64]) -> Result<()> {
    if u_grid.is_empty() || u_grid.iter().any(|u| !u.is_finite()) || u_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Precondition("u grid must be non-empty, finite and strictly increasing".into()));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DominanceRow {
    pub u: f64,
    pub cp_upper_99: f64,
    pub bound: f64,
    pub vacuous: bool,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DominanceReport {
    pub rows: Vec<DominanceRow>,
    pub failures: Vec<f64>,
}

impl DominanceReport {
    pub fn all_pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// PASS at `u` iff the 99% upper limit is at most the bound or the bound is vacuous.
pub fn dominance_report(emp: &EmpiricalCurve, bound: &TailBoundCurve) -> Result<DominanceReport> {
    validate_u_grid(&bound.u_grid())?;
    if emp.rows.len() != bound.rows.len() {
        return Err(Error::GridMismatch(emp.rows.len().min(bound.rows.len())));
    }
    let mut rows = Vec::with_capacity(emp.rows.len());
    let mut failures = Vec::new();
    for (i, (e, b)) in emp.rows.iter().zip(&bound.rows).enumerate() {
        if (e.u - b.u).abs() > 1e-12 * e.u.abs().max(1.0) {
            return Err(Error::GridMismatch(i));
        }
        let vacuous = b.vacuous_flag || b.bound >= 1.0;
        let pass = vacuous || e.cp_upper_99 <= b.bound;
        if !pass {
            failures.push(e.u);
        }
        rows.push(DominanceRow { u: e.u, cp_upper_99: e.cp_upper_99, bound: b.bound, vacuous, pass });
    }
    Ok(DominanceReport { rows, failures })
}

/// How much the per-trial suprema grow when the horizon doubles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HorizonReport {
    pub n_max: u64,
    pub max_increment: f64,
    pub mean_increment: f64,
    /// Fraction of trials whose supremum changed.
    pub fraction_changed: f64,
}

pub fn horizon_doubling(spec: &FieldSpec, n_max: u64, trials: usize, seed: u64, r: f64) -> Result<HorizonReport> {
    let short = simulate(spec, n_max, trials, seed, r)?;
    let long = simulate(spec, 2 * n_max, trials, seed, r)?;
    let inc: Vec<f64> = long.sup_values.iter().zip(&short.sup_values).map(|(l, s)| l - s).collect();
    Ok(HorizonReport {
        n_max,
        max_increment: inc.iter().cloned().fold(0.0, f64::max),
        mean_increment: inc.iter().sum::<f64>() / trials as f64,
        fraction_changed: inc.iter().filter(|d| **d > 0.0).count() as f64 / trials as f64,
    })
}
