//! Exact measures of the sets that appear when boxes meet sheared boxes, and a
//! few one-dimensional numerical helpers shared by the norm evaluators.

use crate::scalar::{ramp, Scalar};

/// Length of `[l1,h1) ∩ [l2,h2)`.
#[inline]
pub fn interval_overlap<S: Scalar>(l1: S, h1: S, l2: S, h2: S) -> S {
    ramp(h1.min(h2) - l1.max(l2))
}

/// `∫_{x0}^{x1} ∫_{y0}^{y1} |[a_lo,a_hi) ∩ [b_lo+s, b_hi+s)| dy dx` with `s = αx + βy + c`.
///
/// The overlap is a piecewise linear function of `s`, so the inner integral is
/// exact by the trapezoid rule between kinks and the outer one is piecewise
/// quadratic, hence exact under Simpson's rule between its own kinks.
#[allow(clippy::too_many_arguments)]
pub fn sheared_overlap_integral<S: Scalar>(
    (x0, x1): (S, S),
    (y0, y1): (S, S),
    (a_lo, a_hi): (S, S),
    (b_lo, b_hi): (S, S),
    alpha: S,
    beta: S,
    c: S,
) -> S {
    if !(x1 > x0) || !(y1 > y0) {
        return S::zero();
    }
    let kinks = [a_lo - b_hi, a_lo - b_lo, a_hi - b_hi, a_hi - b_lo];
    let phi = |s: S| interval_overlap(a_lo, a_hi, b_lo + s, b_hi + s);
    let inner = |x: S| -> S {
        let mut ys = vec![y0, y1];
        if beta != S::zero() {
            for k in kinks {
                let y = (k - alpha * x - c) / beta;
                if y > y0 && y < y1 {
                    ys.push(y);
                }
            }
        }
        ys.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let s_at = |y: S| alpha * x + beta * y + c;
        ys.windows(2).map(|w| (w[1] - w[0]) * S::half() * (phi(s_at(w[0])) + phi(s_at(w[1])))).sum()
    };
    let mut xs = vec![x0, x1];
    if alpha != S::zero() {
        for k in kinks {
            for y in [y0, y1] {
                let x = (k - beta * y - c) / alpha;
                if x > x0 && x < x1 {
                    xs.push(x);
                }
            }
        }
    }
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    xs.dedup();
    let six = S::lit(6.0);
    let four = S::lit(4.0);
    xs.windows(2)
        .map(|w| {
            let m = S::half() * (w[0] + w[1]);
            (w[1] - w[0]) / six * (inner(w[0]) + four * inner(m) + inner(w[1]))
        })
        .sum()
}

/// Golden-section minimum of a unimodal function on `[lo, hi]`.
pub fn golden_min<S: Scalar, F: FnMut(S) -> S>(mut f: F, mut lo: S, mut hi: S, iters: usize) -> (S, S) {
    let inv_phi = S::lit(0.618_033_988_749_894_9);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..iters {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    let (fl, fh) = (f(lo), f(hi));
    [(x1, f1), (x2, f2), (lo, fl), (hi, fh)]
        .into_iter()
        .fold((x1, f1), |best, cur| if cur.1 < best.1 { cur } else { best })
}

/// Five-point Gauss–Legendre nodes and weights on `[-1, 1]`.
pub const GAUSS5: [(f64, f64); 5] = [
    (-0.906_179_845_938_664, 0.236_926_885_056_189_1),
    (-0.538_469_310_105_683_1, 0.478_628_670_499_366_5),
    (0.0, 0.568_888_888_888_888_9),
    (0.538_469_310_105_683_1, 0.478_628_670_499_366_5),
    (0.906_179_845_938_664, 0.236_926_885_056_189_1),
];
