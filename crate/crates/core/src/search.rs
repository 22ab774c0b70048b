//! One-dimensional minimization helpers.

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section search for a minimum of `f` on `[a, b]`.
///
/// Stops after `max_iter` iterations or once the bracket width falls below
/// `rel_tol·max(|a|, |b|, 1)`. Returns the best abscissa seen and its value.
pub(crate) fn golden_section_min(mut f: impl FnMut(f64) -> f64, a: f64, b: f64, max_iter: usize, rel_tol: f64) -> (f64, f64) {
    let (mut lo, mut hi) = if a <= b { (a, b) } else { (b, a) };
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..max_iter {
        if hi - lo <= rel_tol * lo.abs().max(hi.abs()).max(1.0) {
            break;
        }
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Bisection for the root of a monotone `f` on `[lo, hi]`, assuming a sign change.
pub(crate) fn bisect(mut f: impl FnMut(f64) -> f64, mut lo: f64, mut hi: f64, iters: usize) -> f64 {
    let f_lo_neg = f(lo) < 0.0;
    for _ in 0..iters {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if (f(mid) < 0.0) == f_lo_neg {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
