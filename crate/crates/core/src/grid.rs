//! Finite weighted grids standing in for measure spaces, functions on their
//! products, and ordinary / mixed Lebesgue-Riesz norms.
//!
//! Every integral is a finite weighted sum, so the integral inequalities the
//! bounds rest on (generalized Minkowski, permutation) can be checked exactly
//! up to floating-point rounding.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite measure space: `len()` atoms with strictly positive masses.
#[derive(Debug, Clone, PartialEq)]
pub struct GridMeasureSpace {
    weights: Vec<f64>,
}

impl GridMeasureSpace {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidSpace("index set is empty".into()));
        }
        if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w > 0.0)) {
            return Err(Error::InvalidSpace(format!("weight {w} is not a positive finite mass")));
        }
        Ok(Self { weights })
    }

    /// Counting measure on `n` points.
    pub fn counting(n: usize) -> Result<Self> {
        Self::new(vec![1.0; n])
    }

    /// Uniform probability on `n` points.
    pub fn uniform_probability(n: usize) -> Result<Self> {
        Self::new(vec![1.0 / n as f64; n])
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn total_mass(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// True when all atoms carry the same mass and the total mass is one.
    pub fn is_uniform_probability(&self) -> bool {
        let n = self.len() as f64;
        (self.total_mass() - 1.0).abs() <= 1e-12
            && self.weights.iter().all(|w| (w * n - 1.0).abs() <= 1e-12)
    }
}

/// Product of grid spaces. Axis 0 is the innermost (fastest varying) factor,
/// matching the integration order of the mixed norm.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductSpace {
    axes: Vec<GridMeasureSpace>,
}

impl ProductSpace {
    pub fn new(axes: Vec<GridMeasureSpace>) -> Result<Self> {
        if axes.is_empty() {
            return Err(Error::InvalidSpace("product of zero factors".into()));
        }
        Ok(Self { axes })
    }

    pub fn single(space: GridMeasureSpace) -> Self {
        Self { axes: vec![space] }
    }

    pub fn axes(&self) -> &[GridMeasureSpace] {
        &self.axes
    }

    pub fn dims(&self) -> Vec<usize> {
        self.axes.iter().map(GridMeasureSpace::len).collect()
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(GridMeasureSpace::len).product()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Product measure on the flattened index set.
    pub fn flat_weights(&self) -> Vec<f64> {
        let mut out = vec![1.0];
        for axis in &self.axes {
            let mut next = Vec::with_capacity(out.len() * axis.len());
            for &outer in axis.weights() {
                next.extend(out.iter().map(|w| w * outer));
            }
            out = next;
        }
        out
    }
}

/// Exponent vector `(p_1, ..., p_l)`, each component at least one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct ExponentVector(Vec<f64>);

impl ExponentVector {
    pub fn new(components: Vec<f64>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::DimensionMismatch { expected: 1, actual: 0 });
        }
        for &p in &components {
            check_exponent(p)?;
        }
        Ok(Self(components))
    }

    pub fn scalar(p: f64) -> Result<Self> {
        Self::new(vec![p])
    }

    pub fn components(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `p̄ = max_k p_k`.
    pub fn max(&self) -> f64 {
        self.0.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Tail bound constructions need `p̄ >= 2`.
    pub fn require_bound_range(&self) -> Result<()> {
        if self.max() < 2.0 {
            return Err(Error::InvalidExponent {
                value: self.max(),
                reason: "largest exponent must be at least 2 for the tail bounds",
            });
        }
        Ok(())
    }
}

impl TryFrom<Vec<f64>> for ExponentVector {
    type Error = Error;
    fn try_from(v: Vec<f64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<ExponentVector> for Vec<f64> {
    fn from(v: ExponentVector) -> Self {
        v.0
    }
}

pub(crate) fn check_exponent(p: f64) -> Result<()> {
    if !(p >= 1.0 && p.is_finite()) {
        return Err(Error::InvalidExponent { value: p, reason: "exponent must be a finite real >= 1" });
    }
    Ok(())
}

/// `(Σ w_i |v_i|^p)^{1/p}`, rescaled by `max |v_i|` so large exponents do not overflow.
pub(crate) fn weighted_lp(values: &[f64], weights: &[f64], p: f64) -> f64 {
    debug_assert_eq!(values.len(), weights.len());
    let scale = values.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    if scale == 0.0 || !scale.is_finite() {
        return scale;
    }
    let s: f64 = values.iter().zip(weights).map(|(v, w)| w * (v.abs() / scale).powf(p)).sum();
    scale * s.powf(1.0 / p)
}

/// Real-valued function on a product grid, stored row-major with axis 0 fastest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GridFunctionJson", into = "GridFunctionJson")]
pub struct GridFunction {
    space: ProductSpace,
    values: Vec<f64>,
}

impl GridFunction {
    pub fn new(space: ProductSpace, values: Vec<f64>) -> Result<Self> {
        if values.len() != space.len() {
            return Err(Error::DimensionMismatch { expected: space.len(), actual: values.len() });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidSpace("function values must be finite".into()));
        }
        Ok(Self { space, values })
    }

    /// Builds a function by evaluating `f` at every multi-index.
    pub fn from_fn(space: ProductSpace, mut f: impl FnMut(&[usize]) -> f64) -> Result<Self> {
        let dims = space.dims();
        let mut idx = vec![0usize; dims.len()];
        let mut values = Vec::with_capacity(space.len());
        for _ in 0..space.len() {
            values.push(f(&idx));
            for (i, d) in idx.iter_mut().zip(&dims) {
                *i += 1;
                if *i < *d {
                    break;
                }
                *i = 0;
            }
        }
        Self::new(space, values)
    }

    pub fn space(&self) -> &ProductSpace {
        &self.space
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self { space: self.space.clone(), values: self.values.iter().map(|v| c * v).collect() }
    }

    /// Reorders the axes: new axis `i` is old axis `order[i]`.
    pub fn permute_axes(&self, order: &[usize]) -> Result<Self> {
        let dims = self.space.dims();
        let mut seen = vec![false; dims.len()];
        if order.len() != dims.len() || order.iter().any(|&o| o >= dims.len() || std::mem::replace(&mut seen[o], true)) {
            return Err(Error::Precondition(format!("{order:?} is not a permutation of {} axes", dims.len())));
        }
        let mut strides = vec![1usize; dims.len()];
        for k in 1..dims.len() {
            strides[k] = strides[k - 1] * dims[k - 1];
        }
        let axes = order.iter().map(|&o| self.space.axes[o].clone()).collect();
        let space = ProductSpace::new(axes)?;
        let src = &self.values;
        Self::from_fn(space, |idx| {
            let flat: usize = idx.iter().zip(order).map(|(&i, &o)| i * strides[o]).sum();
            src[flat]
        })
    }

    /// The same values viewed as a function on the single product-measure space.
    pub fn flatten(&self) -> Self {
        let space = GridMeasureSpace::new(self.space.flat_weights()).expect("product of positive masses");
        Self { space: ProductSpace::single(space), values: self.values.clone() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxisJson {
    pub size: usize,
    pub weights: Vec<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GridFunctionJson {
    pub axes: Vec<AxisJson>,
    pub values: Vec<f64>,
}

impl TryFrom<GridFunctionJson> for GridFunction {
    type Error = Error;
    fn try_from(j: GridFunctionJson) -> Result<Self> {
        let space = product_from_axes(&j.axes)?;
        GridFunction::new(space, j.values)
    }
}

impl From<GridFunction> for GridFunctionJson {
    fn from(f: GridFunction) -> Self {
        let axes = f
            .space
            .axes
            .iter()
            .map(|a| AxisJson { size: a.len(), weights: a.weights().to_vec() })
            .collect();
        GridFunctionJson { axes, values: f.values }
    }
}

pub fn product_from_axes(axes: &[AxisJson]) -> Result<ProductSpace> {
    let axes = axes
        .iter()
        .map(|a| {
            if a.weights.len() != a.size {
                return Err(Error::DimensionMismatch { expected: a.size, actual: a.weights.len() });
            }
            GridMeasureSpace::new(a.weights.clone())
        })
        .collect::<Result<Vec<_>>>()?;
    ProductSpace::new(axes)
}

/// `|f|_p = (Σ_i μ_i |f_i|^p)^{1/p}` on a single-factor space.
pub fn lp_norm(f: &GridFunction, p: f64) -> Result<f64> {
    check_exponent(p)?;
    let axes = f.space.axes();
    if axes.len() != 1 {
        return Err(Error::DimensionMismatch { expected: 1, actual: axes.len() });
    }
    Ok(weighted_lp(&f.values, axes[0].weights(), p))
}

/// Mixed norm `|f|_{p_1, ..., p_l}`: the `p_1`-norm over axis 0 is taken first,
/// the `p_l`-norm over the last axis last.
pub fn mixed_norm(f: &GridFunction, p: &ExponentVector) -> Result<f64> {
    let axes = f.space.axes();
    if axes.len() != p.len() {
        return Err(Error::DimensionMismatch { expected: axes.len(), actual: p.len() });
    }
    let mut current = f.values.clone();
    for (axis, &pk) in axes.iter().zip(p.components()) {
        current = current.chunks_exact(axis.len()).map(|c| weighted_lp(c, axis.weights(), pk)).collect();
    }
    debug_assert_eq!(current.len(), 1);
    Ok(current[0])
}

/// `|ξ|_{pm,Ω; p,X} − |ξ|_{p,X; pm,Ω}` for `ξ` on `X × Ω`, `Ω` a uniform
/// probability grid. Non-negative up to rounding (generalized Minkowski).
pub fn minkowski_slack(f: &GridFunction, p: f64, m: f64) -> Result<f64> {
    check_exponent(p)?;
    if !(m >= 1.0 && m.is_finite()) {
        return Err(Error::InvalidExponent { value: m, reason: "moment multiplier m must be >= 1" });
    }
    let axes = f.space.axes();
    if axes.len() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, actual: axes.len() });
    }
    if !axes[1].is_uniform_probability() {
        return Err(Error::InvalidSpace("second factor must be a uniform probability grid".into()));
    }
    let lhs = mixed_norm(f, &ExponentVector::new(vec![p, p * m])?)?;
    let rhs = mixed_norm(&f.permute_axes(&[1, 0])?, &ExponentVector::new(vec![p * m, p])?)?;
    Ok(rhs - lhs)
}

/// `|φ|_{r,Z; p⃗,X⃗} − |φ|_{p⃗,X⃗; r,Z}` for `φ` on `X_1 × ... × X_l × Z`.
/// Requires `r >= p̄`; non-negative up to rounding (permutation inequality).
pub fn permutation_slack(f: &GridFunction, p: &ExponentVector, r: f64) -> Result<f64> {
    check_exponent(r)?;
    if r < p.max() {
        return Err(Error::Precondition(format!("outer exponent r = {r} is below max p = {}", p.max())));
    }
    let l = p.len();
    let axes = f.space.axes();
    if axes.len() != l + 1 {
        return Err(Error::DimensionMismatch { expected: l + 1, actual: axes.len() });
    }
    let mut inner_first = p.components().to_vec();
    inner_first.push(r);
    let lhs = mixed_norm(f, &ExponentVector::new(inner_first)?)?;

    let mut order = vec![l];
    order.extend(0..l);
    let mut outer_first = vec![r];
    outer_first.extend_from_slice(p.components());
    let rhs = mixed_norm(&f.permute_axes(&order)?, &ExponentVector::new(outer_first)?)?;
    Ok(rhs - lhs)
}
