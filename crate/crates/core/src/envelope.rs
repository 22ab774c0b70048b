//! Moment envelopes `L ↦ g(L)` bounding the `L`-th moment of the maximal
//! normed sum uniformly in `n`, and their conversion to tail bounds
//! `h(z) = inf_L (g(L)/z)^L`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::constants::{doob_factor, rosenthal_upper};
use crate::error::{Error, Result};
use crate::grid::{mixed_norm, weighted_lp, ExponentVector, GridFunction, ProductSpace};
use crate::search::golden_section_min;

/// Maximal-inequality factor multiplied into `g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum DoobFactor {
    /// The constant 2, valid for every `L >= 2`.
    #[default]
    Two,
    /// `L/(L-1)`.
    Sharp,
    /// No maximal factor: `g` bounds the moments of a single normed sum only.
    Omit,
}

impl DoobFactor {
    pub fn at(self, l: f64) -> f64 {
        match self {
            DoobFactor::Two => 2.0,
            DoobFactor::Sharp => doob_factor(l).unwrap_or(2.0),
            DoobFactor::Omit => 1.0,
        }
    }
}

/// Which integrated moment of the summand enters `g` for a single-factor space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum MomentForm {
    /// `(∫ (E|ξ(x)|^L)^{p/L} dμ)^{1/p}`; a bound on `(E|ξ|_p^L)^{1/L}` for any measure.
    #[default]
    Minkowski,
    /// `(∫ E|ξ(x)|^L dμ)^{1/L}`; a bound only when `μ(X) <= 1`.
    Integrated,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeOptions {
    #[serde(default)]
    pub doob: DoobFactor,
    #[serde(default)]
    pub symmetric_rosenthal: bool,
    /// Multiplies `K_R`; values above 1 cover dependent (martingale-difference)
    /// summands, whose Rosenthal constant is only known up to a factor.
    #[serde(default = "one")]
    pub rosenthal_multiplier: f64,
}

fn one() -> f64 {
    1.0
}

impl Default for EnvelopeOptions {
    fn default() -> Self {
        Self { doob: DoobFactor::Two, symmetric_rosenthal: false, rosenthal_multiplier: 1.0 }
    }
}

impl EnvelopeOptions {
    /// `multiplier·K_R(L)`.
    pub fn rosenthal(&self, l: f64) -> f64 {
        self.rosenthal_multiplier * rosenthal_upper(l, self.symmetric_rosenthal).unwrap_or(f64::INFINITY)
    }

    /// `doob(L)·multiplier·K_R(L)`.
    pub fn prefactor(&self, l: f64) -> f64 {
        self.doob.at(l) * self.rosenthal(l)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnvelopeKind {
    /// Built from a field on a finite grid.
    Grid,
    /// Built from an analytic moment function.
    Analytic,
    /// Built from the chaining functional over a parameter set.
    Chained,
    /// Tabulated values only, interpolated log-log between grid points.
    Tabulated,
}

/// Analytic per-point moment families `L ↦ (E|ξ|^L)^{1/L}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum MomentFamily {
    /// `scale`.
    Constant { scale: f64 },
    /// `scale·L^exponent`.
    Power { scale: f64, exponent: f64 },
    /// `scale·Γ(1 + L/β)^{1/L}`: exact moments of `|ξ|` with tail `exp(-(z/scale)^β)`.
    Weibull { scale: f64, beta: f64 },
}

impl MomentFamily {
    pub fn moment(&self, l: f64) -> f64 {
        match *self {
            MomentFamily::Constant { scale } => scale,
            MomentFamily::Power { scale, exponent } => scale * l.powf(exponent),
            MomentFamily::Weibull { scale, beta } => scale * (ln_gamma(1.0 + l / beta) / l).exp(),
        }
    }
}

pub type EnvelopeFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// `L ↦ g(L)` on `[domain_low, l0)`, with cached values on an evaluation grid.
#[derive(Clone)]
pub struct MomentEnvelope {
    kind: EnvelopeKind,
    exponents: Option<ExponentVector>,
    domain_low: f64,
    l0: f64,
    l_grid: Vec<f64>,
    g_values: Vec<f64>,
    g: EnvelopeFn,
    family: Option<MomentFamily>,
    options: EnvelopeOptions,
    extrapolate: bool,
}

impl fmt::Debug for MomentEnvelope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MomentEnvelope")
            .field("kind", &self.kind)
            .field("exponents", &self.exponents)
            .field("domain_low", &self.domain_low)
            .field("l0", &self.l0)
            .field("l_grid", &self.l_grid)
            .field("g_values", &self.g_values)
            .finish()
    }
}

/// `n` log-spaced points from `a` to `b` inclusive.
pub fn log_grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    assert!(a > 0.0 && b >= a && n >= 1);
    if n == 1 {
        return vec![a];
    }
    let (la, lb) = (a.ln(), b.ln());
    (0..n)
        .map(|i| match i {
            0 => a,
            i if i == n - 1 => b,
            i => (la + (lb - la) * i as f64 / (n - 1) as f64).exp(),
        })
        .collect()
}

/// Default evaluation grid: 48 log-spaced points on `[low, 256·low]`,
/// clipped below a finite `l0`.
pub fn default_l_grid(low: f64, l0: f64) -> Vec<f64> {
    let high = if l0.is_finite() { (low * 256.0).min(low + (l0 - low) * 0.999) } else { low * 256.0 };
    log_grid(low, high, 48)
}

impl MomentEnvelope {
    /// Envelope from an arbitrary `g`. `l_grid` defaults to [`default_l_grid`].
    pub fn from_fn(
        kind: EnvelopeKind,
        domain_low: f64,
        l0: f64,
        l_grid: Option<Vec<f64>>,
        g: EnvelopeFn,
    ) -> Result<Self> {
        Self::assemble(kind, None, domain_low, l0, l_grid, g, None, EnvelopeOptions::default(), true)
    }

    #[allow(clippy::too_many_arguments)]
    pub(crate) fn assemble(
        kind: EnvelopeKind,
        exponents: Option<ExponentVector>,
        domain_low: f64,
        l0: f64,
        l_grid: Option<Vec<f64>>,
        g: EnvelopeFn,
        family: Option<MomentFamily>,
        options: EnvelopeOptions,
        extrapolate: bool,
    ) -> Result<Self> {
        if !(domain_low >= 1.0 && domain_low.is_finite()) {
            return Err(Error::Domain { what: "envelope lower domain end", value: domain_low });
        }
        if !(l0 > domain_low) {
            return Err(Error::Precondition(format!("L0 = {l0} must exceed the lower domain end {domain_low}")));
        }
        let l_grid = l_grid.unwrap_or_else(|| default_l_grid(domain_low, l0));
        validate_grid(&l_grid, domain_low, l0)?;
        let g_values = l_grid.iter().map(|&l| g(l)).collect();
        Ok(Self { kind, exponents, domain_low, l0, l_grid, g_values, g, family, options, extrapolate })
    }

    pub fn kind(&self) -> EnvelopeKind {
        self.kind
    }

    pub fn exponents(&self) -> Option<&ExponentVector> {
        self.exponents.as_ref()
    }

    pub fn domain_low(&self) -> f64 {
        self.domain_low
    }

    pub fn l0(&self) -> f64 {
        self.l0
    }

    pub fn l_grid(&self) -> &[f64] {
        &self.l_grid
    }

    pub fn g_values(&self) -> &[f64] {
        &self.g_values
    }

    pub fn family(&self) -> Option<&MomentFamily> {
        self.family.as_ref()
    }

    pub fn options(&self) -> &EnvelopeOptions {
        &self.options
    }

    /// `g(L)`; `+∞` outside the domain.
    pub fn g(&self, l: f64) -> f64 {
        if l < self.domain_low || l >= self.l0 {
            return f64::INFINITY;
        }
        (self.g)(l)
    }

    /// The envelope `c·g`.
    pub fn scaled(&self, c: f64) -> Self {
        let inner = self.g.clone();
        let mut out = self.clone();
        out.g = Arc::new(move |l| c * inner(l));
        out.g_values = self.g_values.iter().map(|v| c * v).collect();
        out.family = None;
        out
    }

    /// Same `g`, different evaluation grid.
    pub fn with_grid(&self, l_grid: Vec<f64>) -> Result<Self> {
        validate_grid(&l_grid, self.domain_low, self.l0)?;
        let mut out = self.clone();
        out.g_values = l_grid.iter().map(|&l| (self.g)(l)).collect();
        out.l_grid = l_grid;
        Ok(out)
    }

    pub fn to_json(&self) -> EnvelopeJson {
        let (p, p_vec) = match &self.exponents {
            Some(e) if e.len() == 1 => (Some(e.components()[0]), None),
            Some(e) => (None, Some(e.components().to_vec())),
            None => (None, None),
        };
        EnvelopeJson {
            kind: self.kind,
            p,
            p_vec,
            domain_low: Some(self.domain_low),
            l0: self.l0.is_finite().then_some(self.l0),
            l_grid: self.l_grid.clone(),
            g_values: self.g_values.clone(),
            family: self.family,
            options: Some(self.options),
        }
    }

    /// Rebuilds an envelope. With an analytic family `g` is exact; otherwise
    /// it is interpolated linearly in `(ln L, ln g)` and the search for the
    /// tail bound is confined to the tabulated range.
    pub fn from_json(j: &EnvelopeJson) -> Result<Self> {
        let exponents = match (&j.p, &j.p_vec) {
            (Some(p), None) => Some(ExponentVector::scalar(*p)?),
            (None, Some(v)) => Some(ExponentVector::new(v.clone())?),
            (None, None) => None,
            (Some(_), Some(_)) => return Err(Error::Precondition("give either p or p_vec, not both".into())),
        };
        let domain_low = j
            .domain_low
            .or_else(|| exponents.as_ref().map(ExponentVector::max))
            .ok_or_else(|| Error::Precondition("envelope needs p, p_vec or domain_low".into()))?;
        let l0 = j.l0.unwrap_or(f64::INFINITY);
        let options = j.options.unwrap_or_default();
        if let Some(family) = j.family {
            let g: EnvelopeFn = Arc::new(move |l| options.prefactor(l) * family.moment(l));
            return Self::assemble(j.kind, exponents, domain_low, l0, Some(j.l_grid.clone()), g, Some(family), options, true);
        }
        if j.l_grid.len() != j.g_values.len() || j.l_grid.is_empty() {
            return Err(Error::DimensionMismatch { expected: j.l_grid.len(), actual: j.g_values.len() });
        }
        validate_grid(&j.l_grid, domain_low, l0)?;
        let xs: Vec<f64> = j.l_grid.iter().map(|l| l.ln()).collect();
        let ys: Vec<f64> = j.g_values.iter().map(|g| g.ln()).collect();
        let (lo, hi) = (j.l_grid[0], *j.l_grid.last().unwrap());
        let g: EnvelopeFn = Arc::new(move |l| {
            if l < lo || l > hi {
                return f64::INFINITY;
            }
            let x = l.ln();
            let i = xs.partition_point(|&v| v <= x).clamp(1, xs.len().max(2) - 1);
            if xs.len() == 1 {
                return ys[0].exp();
            }
            let t = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
            (ys[i - 1] + t * (ys[i] - ys[i - 1])).exp()
        });
        let mut env = Self::assemble(j.kind, exponents, domain_low, l0, Some(j.l_grid.clone()), g, None, options, false)?;
        // Keep the tabulated numbers bit-exact.
        env.g_values = j.g_values.clone();
        Ok(env)
    }
}

fn validate_grid(grid: &[f64], low: f64, l0: f64) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::Precondition("empty L grid".into()));
    }
    if let Some(&l) = grid.iter().find(|&&l| !(l >= low && l < l0)) {
        return Err(Error::Domain { what: "L grid point outside [p, L0)", value: l });
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Precondition("L grid must be strictly increasing".into()));
    }
    Ok(())
}

/// Serialized envelope; the evaluation grid and cached `g` values are always present.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeJson {
    pub kind: EnvelopeKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_vec: Option<Vec<f64>>,
    #[serde(default)]
    pub domain_low: Option<f64>,
    /// `null` means `+∞`.
    #[serde(rename = "L0", default)]
    pub l0: Option<f64>,
    #[serde(rename = "L_grid")]
    pub l_grid: Vec<f64>,
    pub g_values: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<MomentFamily>,
    #[serde(default)]
    pub options: Option<EnvelopeOptions>,
}

pub type PointMomentFn = Arc<dyn Fn(usize, f64) -> f64 + Send + Sync>;

/// Envelope from per-point moments `m_L(x) = (E|ξ(x)|^L)^{1/L}` on a product grid:
/// `g(L) = doob·K_R(L)·|m_L|_{p⃗}` (or the integrated form for one factor).
pub fn envelope_from_pointwise_moments(
    space: &ProductSpace,
    p: &ExponentVector,
    moment: PointMomentFn,
    l_grid: Option<Vec<f64>>,
    options: EnvelopeOptions,
    form: MomentForm,
) -> Result<MomentEnvelope> {
    p.require_bound_range()?;
    if space.axes().len() != p.len() {
        return Err(Error::DimensionMismatch { expected: space.axes().len(), actual: p.len() });
    }
    if form == MomentForm::Integrated && p.len() != 1 {
        return Err(Error::Precondition("the integrated moment form needs a single-factor space".into()));
    }
    let space = space.clone();
    let n_points = space.len();
    let flat_weights = space.flat_weights();
    let pv = p.clone();
    let g: EnvelopeFn = Arc::new(move |l| {
        let m: Vec<f64> = (0..n_points).map(|x| moment(x, l)).collect();
        let norm = match form {
            MomentForm::Minkowski => {
                let f = GridFunction::new(space.clone(), m).expect("moments are finite");
                mixed_norm(&f, &pv).expect("dimensions checked")
            }
            MomentForm::Integrated => weighted_lp(&m, &flat_weights, l),
        };
        options.prefactor(l) * norm
    });
    MomentEnvelope::assemble(EnvelopeKind::Grid, Some(p.clone()), p.max(), f64::INFINITY, l_grid, g, None, options, true)
}

/// Splits a field on `X_1 × ... × X_l × Ω` into per-point sample vectors,
/// checking that `Ω` is a probability grid and that `ξ` is centered.
fn field_columns(xi: &GridFunction) -> Result<(ProductSpace, Vec<f64>, Arc<Vec<Vec<f64>>>)> {
    let axes = xi.space().axes();
    if axes.len() < 2 {
        return Err(Error::DimensionMismatch { expected: 2, actual: axes.len() });
    }
    let omega = axes.last().unwrap();
    if (omega.total_mass() - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidSpace("the last factor must be a probability grid".into()));
    }
    let x_space = ProductSpace::new(axes[..axes.len() - 1].to_vec())?;
    let nx = x_space.len();
    let mut columns = vec![Vec::with_capacity(omega.len()); nx];
    for (i, v) in xi.values().iter().enumerate() {
        columns[i % nx].push(*v);
    }
    for col in &columns {
        let mean: f64 = col.iter().zip(omega.weights()).map(|(v, w)| v * w).sum();
        let scale = col.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        if mean.abs() > 1e-12 * scale.max(1.0) {
            return Err(Error::Precondition(format!("field is not centered (mean {mean})")));
        }
    }
    Ok((x_space, omega.weights().to_vec(), Arc::new(columns)))
}

fn column_moments(columns: Arc<Vec<Vec<f64>>>, weights: Vec<f64>) -> PointMomentFn {
    Arc::new(move |x, l| weighted_lp(&columns[x], &weights, l))
}

/// `g_p(L)` for a field `ξ(x, ω)` on `X × Ω`.
pub fn envelope_from_field(
    xi: &GridFunction,
    p: f64,
    l_grid: Option<Vec<f64>>,
    options: EnvelopeOptions,
    form: MomentForm,
) -> Result<MomentEnvelope> {
    if xi.space().axes().len() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, actual: xi.space().axes().len() });
    }
    let (x_space, w, cols) = field_columns(xi)?;
    envelope_from_pointwise_moments(&x_space, &ExponentVector::scalar(p)?, column_moments(cols, w), l_grid, options, form)
}

/// `Γ_{p⃗}(L) = doob·K_R(L)·|(E|ξ(x⃗)|^L)^{1/L}|_{p⃗}` for a field on `X_1 × ... × X_l × Ω`.
pub fn mixed_envelope_from_field(
    xi: &GridFunction,
    p: &ExponentVector,
    l_grid: Option<Vec<f64>>,
    options: EnvelopeOptions,
) -> Result<MomentEnvelope> {
    p.require_bound_range()?;
    let (x_space, w, cols) = field_columns(xi)?;
    envelope_from_pointwise_moments(&x_space, p, column_moments(cols, w), l_grid, options, MomentForm::Minkowski)
}

/// `g(L) = doob·K_R(L)·moment(L)` for an analytically given integrated moment.
pub fn envelope_from_moments(
    moment: EnvelopeFn,
    p: &ExponentVector,
    l0: f64,
    l_grid: Option<Vec<f64>>,
    options: EnvelopeOptions,
) -> Result<MomentEnvelope> {
    p.require_bound_range()?;
    let g: EnvelopeFn = Arc::new(move |l| options.prefactor(l) * moment(l));
    MomentEnvelope::assemble(EnvelopeKind::Analytic, Some(p.clone()), p.max(), l0, l_grid, g, None, options, true)
}

/// [`envelope_from_moments`] for a serializable analytic family.
pub fn envelope_from_family(
    family: MomentFamily,
    p: &ExponentVector,
    l0: f64,
    l_grid: Option<Vec<f64>>,
    options: EnvelopeOptions,
) -> Result<MomentEnvelope> {
    let mut env = envelope_from_moments(Arc::new(move |l| family.moment(l)), p, l0, l_grid, options)?;
    env.family = Some(family);
    Ok(env)
}

/// Result of the Chebyshev-Markov optimization at one `z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailValue {
    /// `min(1, inf_L (g(L)/z)^L)`.
    pub value: f64,
    /// Minimizing `L` (the last one probed when the infimum is approached as `L → ∞`).
    pub l_star: f64,
    /// `ln` of the unclamped infimum.
    pub log_value: f64,
}

impl TailValue {
    pub fn is_vacuous(&self) -> bool {
        self.value >= 1.0
    }
}

const GOLDEN_ITERS: usize = 64;
const GOLDEN_REL_WIDTH: f64 = 1e-10;
/// Below this the bound underflows to zero in double precision.
const LN_UNDERFLOW: f64 = -745.2;

/// `h(z) = min(1, inf_{L ∈ (low, L0)} (g(L)/z)^L)`.
///
/// The evaluation grid is scanned first; the best grid point is then refined
/// by golden-section search in `ln L` over its bracketing interval. When the
/// best grid point is the last one the scan continues past the grid
/// (doubling `L` for `L0 = ∞`, halving the distance to a finite `L0`).
pub fn tail_from_envelope(env: &MomentEnvelope, z: f64) -> Result<TailValue> {
    if !(z > 1.0) {
        return Err(Error::Domain { what: "tail_from_envelope (needs z > 1)", value: z });
    }
    let ln_z = z.ln();
    let objective = |l: f64| -> f64 {
        let g = env.g(l);
        if g == 0.0 {
            f64::NEG_INFINITY
        } else if !g.is_finite() || g.is_nan() {
            f64::INFINITY
        } else {
            l * (g.ln() - ln_z)
        }
    };
    let done = |log_value: f64, l_star: f64| TailValue { value: clamp_exp(log_value), l_star, log_value };

    let mut pts: Vec<f64> = env.l_grid.clone();
    let mut vals: Vec<f64> = env
        .l_grid
        .iter()
        .zip(&env.g_values)
        .map(|(&l, &g)| if g == 0.0 { f64::NEG_INFINITY } else if g.is_finite() { l * (g.ln() - ln_z) } else { f64::INFINITY })
        .collect();
    if let Some(i) = vals.iter().position(|v| *v == f64::NEG_INFINITY) {
        return Ok(done(f64::NEG_INFINITY, pts[i]));
    }
    let mut best = argmin(&vals);

    if best == pts.len() - 1 && env.extrapolate {
        // Follow the decrease beyond the grid.
        for step in 0..200 {
            let last = *pts.last().unwrap();
            let next = if env.l0.is_finite() { last + 0.5 * (env.l0 - last) } else { last * 2.0 };
            if next <= last || (!env.l0.is_finite() && next > 1e15) {
                break;
            }
            let v = objective(next);
            pts.push(next);
            vals.push(v);
            if v == f64::NEG_INFINITY || v < LN_UNDERFLOW {
                return Ok(done(v, next));
            }
            if v >= vals[vals.len() - 2] || step == 199 {
                break;
            }
        }
        best = argmin(&vals);
    }

    let (mut best_l, mut best_v) = (pts[best], vals[best]);
    if !best_v.is_finite() {
        return Ok(done(best_v, best_l));
    }
    let lo = if best == 0 { env.domain_low.min(pts[0]) } else { pts[best - 1] };
    let hi = if best + 1 < pts.len() { pts[best + 1] } else { pts[best] };
    if hi > lo {
        let (x, v) = golden_section_min(|x| objective(x.exp()), lo.ln(), hi.ln(), GOLDEN_ITERS, GOLDEN_REL_WIDTH);
        if v < best_v {
            best_v = v;
            best_l = x.exp();
        }
    }
    Ok(done(best_v, best_l))
}

fn clamp_exp(log_value: f64) -> f64 {
    if log_value >= 0.0 {
        1.0
    } else {
        log_value.exp()
    }
}

fn argmin(v: &[f64]) -> usize {
    v.iter().enumerate().fold(0, |b, (i, x)| if *x < v[b] { i } else { b })
}

/// Tail class `P(|ξ| > z) <= exp(-z^{β1} (ln z)^{-β2})` and the exponents of
/// the resulting bound `exp(-C u^{β1/(β1+1)} (ln u)^{λ})` under norming `v_{r0}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailClass {
    pub beta1: f64,
    pub beta2: f64,
    /// `(β1 + 1)/β1`, and 1 for bounded summands.
    pub r0: f64,
    /// `β1/(β1 + 1)`.
    pub u_power: f64,
    /// `(-β2 - β1(β1 - 1))/(β1 + 1)`; 0 for bounded summands.
    pub log_power: f64,
}

pub fn classify_tail(beta1: f64, beta2: f64) -> Result<TailClass> {
    if !(beta1 > 0.0) || beta1.is_nan() {
        return Err(Error::Domain { what: "classify_tail (needs beta1 > 0)", value: beta1 });
    }
    if beta1.is_infinite() {
        return Ok(TailClass { beta1, beta2, r0: 1.0, u_power: 1.0, log_power: 0.0 });
    }
    Ok(TailClass {
        beta1,
        beta2,
        r0: (beta1 + 1.0) / beta1,
        u_power: beta1 / (beta1 + 1.0),
        log_power: (-beta2 - beta1 * (beta1 - 1.0)) / (beta1 + 1.0),
    })
}
