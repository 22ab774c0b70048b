//! Partitions of the positive integers into blocks `[A(k), A(k+1))` and
//! norming sequences `v(n)`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `e^e`.
pub const E_POW_E: f64 = 15.154_262_241_479_26;

/// Partition `A(1) = 1 < A(2) < ...` with `A(k+1) >= A(k) + 2`.
///
/// Stored as an explicit prefix `A(1..=K)`, optionally continued by the
/// geometric recurrence `A(k+1) = d·A(k) + (d-1)^2`, which is exactly the
/// family `A(k) = d^k - d + 1` when started from `A(1) = 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PartitionJson", into = "PartitionJson")]
pub struct Partition {
    prefix: Vec<u64>,
    continuation: Option<u64>,
    geometric: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PartitionJson {
    Geometric {
        d: u64,
    },
    Explicit {
        #[serde(rename = "A")]
        a: Vec<u64>,
        #[serde(default)]
        continue_d: Option<u64>,
    },
}

impl TryFrom<PartitionJson> for Partition {
    type Error = Error;
    fn try_from(j: PartitionJson) -> Result<Self> {
        match j {
            PartitionJson::Geometric { d } => geometric_partition(d, 8),
            PartitionJson::Explicit { a, continue_d } => Partition::explicit(a, continue_d),
        }
    }
}

impl From<Partition> for PartitionJson {
    fn from(p: Partition) -> Self {
        match (p.geometric, p.continuation) {
            (true, Some(d)) => PartitionJson::Geometric { d },
            _ => PartitionJson::Explicit { a: p.prefix, continue_d: p.continuation },
        }
    }
}

/// `A(k) = d^k - d + 1`, with the first `k_prefix` values materialized.
pub fn geometric_partition(d: u64, k_prefix: usize) -> Result<Partition> {
    if d < 2 {
        return Err(Error::Domain { what: "geometric_partition (needs d >= 2)", value: d as f64 });
    }
    let mut prefix = vec![1u64];
    while prefix.len() < k_prefix.max(1) {
        let last = *prefix.last().unwrap();
        match last.checked_mul(d).and_then(|v| v.checked_add((d - 1) * (d - 1))) {
            Some(next) if next < (1u64 << 53) => prefix.push(next),
            _ => break,
        }
    }
    Ok(Partition { prefix, continuation: Some(d), geometric: true })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum YMembership {
    Member,
    /// The ratio condition fails at this block index.
    ViolatedAt(usize),
    /// Every checked block passes but the partition has no analytic tail.
    Inconclusive,
}

impl Partition {
    pub fn explicit(prefix: Vec<u64>, continue_d: Option<u64>) -> Result<Self> {
        if prefix.first() != Some(&1) {
            return Err(Error::Precondition("a partition must start at A(1) = 1".into()));
        }
        if let Some(k) = prefix.windows(2).position(|w| w[1] < w[0].saturating_add(2)) {
            return Err(Error::Precondition(format!("A({}) < A({}) + 2", k + 2, k + 1)));
        }
        if let Some(d) = continue_d {
            if d < 2 {
                return Err(Error::Domain { what: "partition continuation ratio", value: d as f64 });
            }
        }
        Ok(Self { prefix, continuation: continue_d, geometric: false })
    }

    pub fn prefix(&self) -> &[u64] {
        &self.prefix
    }

    /// Growth ratio of the analytic continuation, if any.
    pub fn continuation(&self) -> Option<u64> {
        self.continuation
    }

    /// `d` when this is the geometric family `d^k - d + 1`.
    pub fn geometric_ratio(&self) -> Option<u64> {
        if self.geometric {
            self.continuation
        } else {
            None
        }
    }

    /// `A(k)` as a double. `None` beyond the prefix without continuation.
    pub fn a(&self, k: usize) -> Option<f64> {
        assert!(k >= 1);
        if k <= self.prefix.len() {
            return Some(self.prefix[k - 1] as f64);
        }
        let d = self.continuation? as f64;
        let last = *self.prefix.last().unwrap() as f64;
        let steps = (k - self.prefix.len()) as i32;
        Some(d.powi(steps) * (last + d - 1.0) - (d - 1.0))
    }

    /// `ln(A(k) + e^e - 1)` for a possibly astronomically large real block
    /// index `k >= 1`, where `A(k)` itself would overflow.
    pub fn ln_shifted(&self, k: f64) -> Option<f64> {
        let kp = self.prefix.len() as f64;
        if k <= kp {
            let a = self.prefix[k as usize - 1] as f64;
            return Some((a + E_POW_E - 1.0).ln());
        }
        let d = self.continuation? as f64;
        let base = *self.prefix.last().unwrap() as f64 + d - 1.0;
        let log_scale = (k - kp) * d.ln() + base.ln();
        if log_scale < 700.0 {
            Some((log_scale.exp() - (d - 1.0) + E_POW_E - 1.0).ln())
        } else {
            Some(log_scale)
        }
    }

    /// Block ratio `(A(k+1) - 1) / A(k)`.
    pub fn block_ratio(&self, k: usize) -> Option<f64> {
        let ak = self.a(k)?;
        if let (Some(d), true) = (self.continuation, k >= self.prefix.len()) {
            // Beyond the prefix: A(k+1) - 1 = d·A(k) + d^2 - 2d.
            let d = d as f64;
            return Some(d + (d * d - 2.0 * d) / ak);
        }
        Some((self.a(k + 1)? - 1.0) / ak)
    }
}

/// Membership of `Δ` in `Y(w)`: `inf_k (A(k+1)-1)/A(k) >= w^2`.
///
/// Blocks up to `k_check` are tested directly. For a partition with a
/// geometric continuation the ratios beyond the prefix decrease to `d`, so
/// the infimum is known analytically.
pub fn class_y_check(partition: &Partition, w: f64, k_check: usize) -> Result<YMembership> {
    if !(w > 1.0 && w.is_finite()) {
        return Err(Error::Domain { what: "class_y_check (needs w > 1)", value: w });
    }
    // Tolerate rounding in w^2, so that w = sqrt(d) admits the ratio d.
    let w2 = w * w * (1.0 - 1e-12);
    let checked = match partition.continuation {
        Some(_) => partition.prefix.len().max(1),
        None => k_check.min(partition.prefix.len().saturating_sub(1)),
    };
    for k in 1..=checked {
        let ratio = partition.block_ratio(k).expect("within prefix or continued");
        if ratio < w2 {
            return Ok(YMembership::ViolatedAt(k));
        }
    }
    let Some(d) = partition.continuation else {
        return Ok(YMembership::Inconclusive);
    };
    let d = d as f64;
    if w2 <= d {
        return Ok(YMembership::Member);
    }
    // Ratios d + (d^2-2d)/A(k) decrease to d < w^2: find the first failing block.
    let mut k = checked + 1;
    loop {
        match partition.block_ratio(k) {
            Some(r) if r < w2 => return Ok(YMembership::ViolatedAt(k)),
            Some(r) if r.is_finite() => k += 1,
            _ => return Ok(YMembership::ViolatedAt(k)),
        }
    }
}

/// Norming sequence `v(n)` with `v(1) = 1`, increasing to infinity.
#[derive(Clone)]
pub enum NormingSequence {
    /// `v_r(n) = [ln ln(n + e^e - 1)]^r`, `r >= 1/2`.
    IteratedLog { r: f64 },
    /// Caller-supplied `n ↦ v(n)` (real argument); must satisfy `v(1) = 1`.
    Custom(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl fmt::Debug for NormingSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormingSequence::IteratedLog { r } => write!(f, "IteratedLog {{ r: {r} }}"),
            NormingSequence::Custom(_) => write!(f, "Custom(..)"),
        }
    }
}

impl NormingSequence {
    pub fn iterated_log(r: f64) -> Result<Self> {
        if !(r >= 0.5 && r.is_finite()) {
            return Err(Error::Domain { what: "iterated-log norming exponent (needs r >= 1/2)", value: r });
        }
        Ok(NormingSequence::IteratedLog { r })
    }

    pub fn r(&self) -> Option<f64> {
        match self {
            NormingSequence::IteratedLog { r } => Some(*r),
            NormingSequence::Custom(_) => None,
        }
    }

    /// `v` at the point whose shifted logarithm `ln(n + e^e - 1)` is given.
    pub(crate) fn from_ln_shifted(&self, ln_shifted: f64) -> f64 {
        match self {
            NormingSequence::IteratedLog { r } => ln_shifted.ln().powf(*r),
            NormingSequence::Custom(f) => {
                let n = (ln_shifted.exp() - E_POW_E + 1.0).max(1.0);
                f(n)
            }
        }
    }
}

/// `v(n)` for `n >= 1`; exactly 1 at `n = 1` for the iterated-log family.
pub fn norming_value(v: &NormingSequence, n: u64) -> Result<f64> {
    if n < 1 {
        return Err(Error::Domain { what: "norming_value (needs n >= 1)", value: n as f64 });
    }
    Ok(match v {
        NormingSequence::IteratedLog { r } => {
            if n == 1 {
                1.0
            } else {
                (n as f64 + E_POW_E - 1.0).ln().ln().powf(*r)
            }
        }
        NormingSequence::Custom(f) => f(n as f64),
    })
}
