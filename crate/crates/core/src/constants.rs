//! Closed-form constants: the Rosenthal constant estimate, the Doob maximal
//! factor and the mixingale Rosenthal coefficient.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Numerical constant of the Rosenthal estimate for centered i.i.d. summands.
pub const ROSENTHAL_C: f64 = 1.77638;
/// The same constant for symmetrically distributed summands.
pub const ROSENTHAL_C_SYMMETRIC: f64 = 1.53572;

/// Upper estimate `C_R·p / (e·ln p)` of the Rosenthal constant `K_R(p)`.
pub fn rosenthal_upper(p: f64, symmetric: bool) -> Result<f64> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(Error::Domain { what: "rosenthal_upper (needs p > 1)", value: p });
    }
    let c = if symmetric { ROSENTHAL_C_SYMMETRIC } else { ROSENTHAL_C };
    Ok(c * p / (std::f64::consts::E * p.ln()))
}

/// Doob maximal factor `L/(L-1)`; at most 2 on `L >= 2`.
pub fn doob_factor(l: f64) -> Result<f64> {
    if !(l >= 2.0) {
        return Err(Error::Domain { what: "doob_factor (needs L >= 2)", value: l });
    }
    Ok(l / (l - 1.0))
}

/// Behaviour of `β(k)` beyond the explicit prefix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MixingTail {
    /// `β(k) = 0` beyond the prefix.
    Zero,
    /// `β(k) = scale·q^k`.
    Geometric { scale: f64, q: f64 },
    /// `β(k) = scale·k^{-a}`.
    Power { scale: f64, a: f64 },
}

/// Superstrong mixing coefficients `β(1), β(2), ...` as an explicit prefix
/// followed by an analytic tail family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixingProfile {
    #[serde(default)]
    pub prefix: Vec<f64>,
    pub tail: MixingTail,
}

impl MixingProfile {
    pub fn new(prefix: Vec<f64>, tail: MixingTail) -> Result<Self> {
        if prefix.iter().any(|b| !(*b >= 0.0 && b.is_finite())) {
            return Err(Error::Precondition("mixing coefficients must be finite and non-negative".into()));
        }
        match tail {
            MixingTail::Zero => {}
            MixingTail::Geometric { scale, q } => {
                if !(scale >= 0.0 && (0.0..1.0).contains(&q)) {
                    return Err(Error::Precondition("geometric tail needs scale >= 0 and 0 <= q < 1".into()));
                }
            }
            MixingTail::Power { scale, a } => {
                if !(scale >= 0.0 && a > 0.0) {
                    return Err(Error::Precondition("power tail needs scale >= 0 and a > 0".into()));
                }
            }
        }
        Ok(Self { prefix, tail })
    }

    pub fn geometric(q: f64) -> Result<Self> {
        Self::new(Vec::new(), MixingTail::Geometric { scale: 1.0, q })
    }

    pub fn zero() -> Self {
        Self { prefix: Vec::new(), tail: MixingTail::Zero }
    }

    /// `β(k)` for `k >= 1`.
    pub fn beta(&self, k: usize) -> f64 {
        assert!(k >= 1);
        if k <= self.prefix.len() {
            return self.prefix[k - 1];
        }
        match self.tail {
            MixingTail::Zero => 0.0,
            MixingTail::Geometric { scale, q } => scale * q.powi(k as i32),
            MixingTail::Power { scale, a } => scale * (k as f64).powf(-a),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MixingaleValue {
    Finite(f64),
    /// The analytic tail makes the series diverge for this `m`.
    Divergent,
}

impl MixingaleValue {
    pub fn finite(self) -> Option<f64> {
        match self {
            MixingaleValue::Finite(v) => Some(v),
            MixingaleValue::Divergent => None,
        }
    }
}

const MAX_SERIES_TERMS: usize = 50_000_000;

/// Mixingale Rosenthal coefficient `K_M(m) = m·[Σ_{k>=1} β(k)(k+1)^{(m-2)/2}]^{1/m}`.
///
/// The prefix is summed exactly; the tail is summed term by term until its
/// closed-form remainder bound drops below `tail_tol` relative to the running
/// sum, and that remainder bound is added.
pub fn mixingale_coefficient(m: f64, profile: &MixingProfile, tail_tol: f64) -> Result<MixingaleValue> {
    if !(m >= 1.0 && m.is_finite()) {
        return Err(Error::Domain { what: "mixingale_coefficient (needs m >= 1)", value: m });
    }
    if !(tail_tol > 0.0) {
        return Err(Error::Domain { what: "mixingale_coefficient tail tolerance", value: tail_tol });
    }
    let s = (m - 2.0) / 2.0;
    let weight = |k: usize| ((k + 1) as f64).powf(s);
    let k0 = profile.prefix.len();
    let mut sum: f64 = profile.prefix.iter().enumerate().map(|(i, b)| b * weight(i + 1)).sum();

    match profile.tail {
        MixingTail::Zero => {}
        MixingTail::Geometric { scale, q } if scale > 0.0 && q > 0.0 => {
            if s == 0.0 {
                // Σ_{k>k0} scale·q^k in closed form.
                sum += scale * q.powi(k0 as i32 + 1) / (1.0 - q);
            } else {
                let mut k = k0 + 1;
                loop {
                    let term = scale * q.powi(k as i32) * weight(k);
                    sum += term;
                    // Consecutive-term ratio q·((k+2)/(k+1))^s is non-increasing in k
                    // for s >= 0 and bounded by q for s < 0.
                    let ratio = q * (((k + 2) as f64) / ((k + 1) as f64)).powf(s.max(0.0));
                    if ratio < 1.0 {
                        let rest = term * ratio / (1.0 - ratio);
                        if rest <= tail_tol * sum || k > MAX_SERIES_TERMS {
                            sum += rest;
                            break;
                        }
                    }
                    k += 1;
                }
            }
        }
        MixingTail::Geometric { .. } => {}
        MixingTail::Power { scale, a } if scale > 0.0 => {
            if s - a >= -1.0 {
                return Ok(MixingaleValue::Divergent);
            }
            let mut k = k0 + 1;
            loop {
                sum += scale * (k as f64).powf(-a) * weight(k);
                // Σ_{j>k} j^{-a}(j+1)^s <= c_s ∫_k^∞ x^{s-a} dx with c_s = (1+1/k)^{max(s,0)}.
                let c_s = (1.0 + 1.0 / k as f64).powf(s.max(0.0));
                let rest = scale * c_s * (k as f64).powf(s - a + 1.0) / (a - s - 1.0);
                if rest <= tail_tol * sum || k > MAX_SERIES_TERMS {
                    sum += rest;
                    break;
                }
                k += 1;
            }
        }
        MixingTail::Power { .. } => {}
    }
    Ok(MixingaleValue::Finite(m * sum.powf(1.0 / m)))
}
