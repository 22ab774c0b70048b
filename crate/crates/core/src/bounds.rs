//! Upper bounds `Q(u) <= Σ_k h(u·v(A(k))/w)` for the normed-sum tail, their
//! optimization over geometric partitions, and the simple lower bounds.

use std::f64::consts::E;
use std::io::{Read, Write};

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::envelope::{tail_from_envelope, MomentEnvelope};
use crate::error::{Error, Result};
use crate::partition::{class_y_check, geometric_partition, NormingSequence, Partition, YMembership, E_POW_E};

/// How the block index enters the argument of `h`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BlockScaling {
    /// Block `k` uses `w_k = sqrt((A(k+1) - 1)/A(k))`, the factor by which the
    /// block's last index exceeds its first.
    Blockwise,
    /// One `w` for every block; the partition must lie in `Y(w)`.
    Uniform { w: f64 },
}

/// Which family of envelopes a curve was built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Theorem {
    /// Scalar-exponent envelope `g_p`.
    G,
    /// Mixed-norm envelope `Γ_{p⃗}`.
    F,
    /// Chaining envelope `ν_p(L/p)` over a parameter set.
    Theta,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesOptions {
    /// A term below `rel_tol` times the running sum ends direct summation.
    pub rel_tol: f64,
    /// Direct terms before switching to the condensation tail bound.
    pub max_direct: usize,
    /// Cap on the number of dyadic groups in the tail bound.
    pub max_groups: usize,
}

impl Default for SeriesOptions {
    fn default() -> Self {
        Self { rel_tol: 1e-16, max_direct: 256, max_groups: 1000 }
    }
}

/// One evaluation of the series bound at a single `u`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundEval {
    /// `min(1, raw_sum)`; 1 also when the series is divergent.
    pub value: f64,
    pub raw_sum: f64,
    /// Upper bound on the terms beyond `truncation_k`, included in `raw_sum`.
    pub tail_bound: f64,
    pub truncation_k: usize,
    pub vacuous: bool,
    /// The series does not converge at this `u`.
    pub divergent: bool,
}

impl BoundEval {
    fn vacuous(raw_sum: f64, tail_bound: f64, truncation_k: usize, divergent: bool) -> Self {
        Self { value: 1.0, raw_sum, tail_bound, truncation_k, vacuous: true, divergent }
    }
}

fn h_at(env: &MomentEnvelope, z: f64) -> Result<f64> {
    if z <= 1.0 {
        return Ok(1.0);
    }
    Ok(tail_from_envelope(env, z)?.value)
}

fn block_w(partition: &Partition, scaling: BlockScaling, k: usize) -> Result<f64> {
    match scaling {
        BlockScaling::Uniform { w } => Ok(w),
        BlockScaling::Blockwise => {
            partition.block_ratio(k).map(f64::sqrt).ok_or(Error::PartitionExhausted(k + 1))
        }
    }
}

/// `Σ_{k>=1} h(u·v(A(k))/w_k)` clamped to `[0, 1]`.
///
/// Terms are summed directly until one is non-increasing and below
/// `rel_tol` times the sum (or `max_direct` is reached). The remainder from
/// block `K` on is then bounded by dyadic condensation: for non-increasing
/// terms `Σ_{k>=K} t_k <= Σ_j K·2^j·t_{K·2^j}`, evaluated with the largest
/// `w` of the remaining blocks so the majorant terms are non-increasing.
pub fn series_bound(
    env: &MomentEnvelope,
    partition: &Partition,
    v: &NormingSequence,
    scaling: BlockScaling,
    u: f64,
    opts: &SeriesOptions,
) -> Result<BoundEval> {
    if !(u >= E) {
        return Err(Error::Domain { what: "tail bound argument (needs u >= e)", value: u });
    }
    if let BlockScaling::Uniform { w } = scaling {
        match class_y_check(partition, w, 64)? {
            YMembership::ViolatedAt(k) => return Err(Error::NotInClassY { w, k }),
            YMembership::Member | YMembership::Inconclusive => {}
        }
    }

    let mut sum = 0.0;
    let mut prev = f64::INFINITY;
    let mut k = 1usize;
    loop {
        let ln_s = partition.ln_shifted(k as f64).ok_or(Error::PartitionExhausted(k))?;
        let t = h_at(env, u * v.from_ln_shifted(ln_s) / block_w(partition, scaling, k)?)?;
        sum += t;
        if sum >= 1.0 {
            return Ok(BoundEval::vacuous(sum, 0.0, k, false));
        }
        if t == 0.0 {
            return Ok(BoundEval { value: sum, raw_sum: sum, tail_bound: 0.0, truncation_k: k, vacuous: false, divergent: false });
        }
        let small = t <= prev && t <= opts.rel_tol * sum;
        prev = t;
        if small || k >= opts.max_direct {
            break;
        }
        k += 1;
    }

    let start = k + 1;
    let w_tail = match scaling {
        BlockScaling::Uniform { w } => w,
        BlockScaling::Blockwise => {
            let last = start.max(partition.prefix().len());
            let mut w2: f64 = 0.0;
            for j in start..=last {
                w2 = w2.max(partition.block_ratio(j).ok_or(Error::PartitionExhausted(j + 1))?);
            }
            w2.sqrt()
        }
    };
    let mut tail = 0.0;
    let mut prev_c = f64::INFINITY;
    for j in 0..opts.max_groups {
        let kk = start as f64 * 2f64.powi(j as i32);
        if !kk.is_finite() || kk > 1e300 {
            break;
        }
        let ln_s = partition.ln_shifted(kk).ok_or(Error::PartitionExhausted(kk as usize))?;
        let c = kk * h_at(env, u * v.from_ln_shifted(ln_s) / w_tail)?;
        tail += c;
        if sum + tail >= 1.0 {
            return Ok(BoundEval::vacuous(sum + tail, tail, k, c >= prev_c));
        }
        if c == 0.0 || (c < prev_c && c <= opts.rel_tol * sum) {
            let raw = sum + tail;
            return Ok(BoundEval { value: raw, raw_sum: raw, tail_bound: tail, truncation_k: k, vacuous: false, divergent: false });
        }
        prev_c = c;
    }
    Ok(BoundEval::vacuous(sum + tail, tail, k, true))
}

/// `G(u)` for a scalar-exponent envelope `g_p`.
pub fn upper_bound_g(
    env: &MomentEnvelope,
    partition: &Partition,
    v: &NormingSequence,
    scaling: BlockScaling,
    u: f64,
) -> Result<BoundEval> {
    series_bound(env, partition, v, scaling, u, &SeriesOptions::default())
}

/// `F(u)` for a mixed-norm envelope `Γ_{p⃗}`; same series with `γ` in place of `h`.
pub fn upper_bound_f(
    env: &MomentEnvelope,
    partition: &Partition,
    v: &NormingSequence,
    scaling: BlockScaling,
    u: f64,
) -> Result<BoundEval> {
    series_bound(env, partition, v, scaling, u, &SeriesOptions::default())
}

/// `Θ(u)` for the envelope `L ↦ ν_p(L/p)` (times the maximal factor),
/// see [`crate::entropy::nu_envelope_from_field`].
pub fn upper_bound_theta(
    nu_env: &MomentEnvelope,
    partition: &Partition,
    v: &NormingSequence,
    scaling: BlockScaling,
    u: f64,
) -> Result<BoundEval> {
    series_bound(nu_env, partition, v, scaling, u, &SeriesOptions::default())
}

/// Scaling used for each member of the geometric family during optimization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum ScalingMode {
    #[default]
    Blockwise,
    /// `w = sqrt(d) - 1e-9`, the largest `w` with `A(k) = d^k - d + 1` in `Y(w)`.
    Uniform,
}

/// Margin below `sqrt(inf ratio)` used for the admissible `w`.
pub const W_MARGIN: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct FamilyMember {
    pub d: u64,
    pub w: f64,
    pub eval: BoundEval,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizedBound {
    pub value: f64,
    pub d: u64,
    pub w: f64,
    pub eval: BoundEval,
    pub vacuous: bool,
    /// Every member of the family in increasing `d`.
    pub table: Vec<FamilyMember>,
}

/// Bound for the geometric partition `d^k - d + 1` under the given mode.
pub fn geometric_member(env: &MomentEnvelope, v: &NormingSequence, d: u64, mode: ScalingMode, u: f64) -> Result<FamilyMember> {
    let partition = geometric_partition(d, 1)?;
    let w = (d as f64).sqrt() - W_MARGIN;
    let scaling = match mode {
        ScalingMode::Blockwise => BlockScaling::Blockwise,
        ScalingMode::Uniform => BlockScaling::Uniform { w },
    };
    let eval = series_bound(env, &partition, v, scaling, u, &SeriesOptions::default())?;
    Ok(FamilyMember { d, w, eval })
}

/// Minimum of the bound over `d ∈ [d_min, d_max]`; ties go to the smaller `d`.
pub fn optimize_bound(
    env: &MomentEnvelope,
    v: &NormingSequence,
    u: f64,
    d_min: u64,
    d_max: u64,
    mode: ScalingMode,
) -> Result<OptimizedBound> {
    if d_min < 2 || d_max < d_min {
        return Err(Error::Precondition(format!("invalid partition range {d_min}..={d_max}")));
    }
    let table = (d_min..=d_max)
        .into_par_iter()
        .map(|d| geometric_member(env, v, d, mode, u))
        .collect::<Result<Vec<_>>>()?;
    let best = table.iter().fold(&table[0], |b, m| if m.eval.value < b.eval.value { m } else { b });
    Ok(OptimizedBound {
        value: best.eval.value,
        d: best.d,
        w: best.w,
        eval: best.eval,
        vacuous: best.eval.vacuous,
        table: table.clone(),
    })
}

/// How each point of a curve is computed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CurvePlan {
    Optimize { d_min: u64, d_max: u64, mode: ScalingMode },
    Fixed { partition: Partition, scaling: BlockScaling },
}

impl Default for CurvePlan {
    fn default() -> Self {
        CurvePlan::Optimize { d_min: 2, d_max: 16, mode: ScalingMode::Blockwise }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundRow {
    pub u: f64,
    pub bound: f64,
    pub d: u64,
    pub w: f64,
    pub truncation_k: usize,
    pub vacuous_flag: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub theorem: Theorem,
    pub plan: CurvePlan,
    pub norming_r: Option<f64>,
    pub envelope_kind: Option<crate::envelope::EnvelopeKind>,
}

/// Bound values along an increasing `u` grid. Values are made non-increasing
/// by a running minimum, which stays valid because `Q` is non-increasing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TailBoundCurve {
    pub rows: Vec<BoundRow>,
    pub provenance: Option<Provenance>,
}

pub fn validate_u_grid(u_grid: &[f64]) -> Result<()> {
    if u_grid.is_empty() {
        return Err(Error::Precondition("empty u grid".into()));
    }
    if u_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Precondition("u grid must be strictly increasing".into()));
    }
    if u_grid[0] < E {
        return Err(Error::Domain { what: "u grid (needs u >= e)", value: u_grid[0] });
    }
    Ok(())
}

pub fn bound_curve(
    env: &MomentEnvelope,
    v: &NormingSequence,
    u_grid: &[f64],
    plan: &CurvePlan,
    theorem: Theorem,
) -> Result<TailBoundCurve> {
    validate_u_grid(u_grid)?;
    let raw = u_grid
        .par_iter()
        .map(|&u| -> Result<BoundRow> {
            let (eval, d, w) = match plan {
                CurvePlan::Optimize { d_min, d_max, mode } => {
                    let o = optimize_bound(env, v, u, *d_min, *d_max, *mode)?;
                    (o.eval, o.d, o.w)
                }
                CurvePlan::Fixed { partition, scaling } => {
                    let eval = series_bound(env, partition, v, *scaling, u, &SeriesOptions::default())?;
                    let w = match scaling {
                        BlockScaling::Uniform { w } => *w,
                        BlockScaling::Blockwise => partition.block_ratio(1).map(f64::sqrt).unwrap_or(f64::NAN),
                    };
                    (eval, partition.geometric_ratio().unwrap_or(0), w)
                }
            };
            Ok(BoundRow { u, bound: eval.value, d, w, truncation_k: eval.truncation_k, vacuous_flag: eval.vacuous })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut rows: Vec<BoundRow> = Vec::with_capacity(raw.len());
    for row in raw {
        match rows.last() {
            Some(prev) if prev.bound < row.bound => rows.push(BoundRow { u: row.u, ..*prev }),
            _ => rows.push(row),
        }
    }
    Ok(TailBoundCurve {
        rows,
        provenance: Some(Provenance { theorem, plan: plan.clone(), norming_r: v.r(), envelope_kind: Some(env.kind()) }),
    })
}

impl TailBoundCurve {
    pub fn u_grid(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.u).collect()
    }

    pub fn values(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.bound).collect()
    }

    /// CSV with header `u,bound,d,w,truncation_k,vacuous_flag`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for row in &self.rows {
            w.serialize(row)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_csv<R: Read>(input: R) -> Result<Self> {
        let mut r = csv::Reader::from_reader(input);
        let rows = r.deserialize().collect::<std::result::Result<Vec<BoundRow>, _>>()?;
        Ok(Self { rows, provenance: None })
    }
}

/// `(β1, β2, C)` with `value ≈ exp(-C u^{β1} (ln u)^{β2})`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShapeFit {
    pub beta1: f64,
    pub beta2: f64,
    pub c: f64,
    /// Root-mean-square residual of `ln(-ln value)`.
    pub residual: f64,
    pub points: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FitModel {
    /// Fit `β1`, `β2` and `C`.
    Full,
    /// Fit `β1` and `C` with `β2 = 0`.
    PowerOnly,
}

/// Least-squares fit of `ln(-ln value)` against `ln u` (and `ln ln u`).
///
/// Points with value 0 or 1 are skipped; at least five informative points
/// with `u > 1` (`u > e` for the full model) are required.
pub fn fit_bound_shape(u: &[f64], values: &[f64], model: FitModel) -> Result<ShapeFit> {
    if u.len() != values.len() {
        return Err(Error::DimensionMismatch { expected: u.len(), actual: values.len() });
    }
    let min_u = if model == FitModel::Full { E } else { 1.0 };
    let pts: Vec<(f64, f64)> = u
        .iter()
        .zip(values)
        .filter(|(&u, &y)| u > min_u && y > 0.0 && y < 1.0 && y.is_finite())
        .map(|(&u, &y)| (u, (-y.ln()).ln()))
        .collect();
    if pts.len() < 5 {
        return Err(Error::Unfittable(format!("{} informative points, need 5", pts.len())));
    }
    let cols = if model == FitModel::Full { 3 } else { 2 };
    let a = DMatrix::from_fn(pts.len(), cols, |i, j| match j {
        0 => 1.0,
        1 => pts[i].0.ln(),
        _ => pts[i].0.ln().ln(),
    });
    let b = DVector::from_iterator(pts.len(), pts.iter().map(|p| p.1));
    let coef = a
        .clone()
        .svd(true, true)
        .solve(&b, 1e-14)
        .map_err(|e| Error::Unfittable(e.to_string()))?;
    let resid = &a * &coef - &b;
    Ok(ShapeFit {
        beta1: coef[1],
        beta2: if cols == 3 { coef[2] } else { 0.0 },
        c: coef[0].exp(),
        residual: (resid.norm_squared() / pts.len() as f64).sqrt(),
        points: pts.len(),
    })
}

/// Lower bound for `Q(u)`: `P(‖ξ‖ > u)`, and with `small_ball_c = Some(C)` also
/// `exp(-C u² ln ln u)`, which applies to the `v_{1/2}` norming for `u > e^e`.
pub fn lower_bound_q(norm_tail: impl Fn(f64) -> f64, u: f64, lil_branch: bool, small_ball_c: Option<f64>) -> Result<f64> {
    let trivial = norm_tail(u).clamp(0.0, 1.0);
    if !lil_branch {
        return Ok(trivial);
    }
    let c = small_ball_c.ok_or_else(|| Error::Precondition("the iterated-log lower branch needs a constant C".into()))?;
    if !(c > 0.0) {
        return Err(Error::Domain { what: "lower-bound constant C", value: c });
    }
    if !(u > E_POW_E) {
        return Err(Error::Domain { what: "iterated-log lower branch (needs u > e^e)", value: u });
    }
    Ok(trivial.max((-c * u * u * u.ln().ln()).exp()))
}
