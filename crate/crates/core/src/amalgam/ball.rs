//! Ball-form amalgam norms per group.
//!
//! Write `M(y) = ∫_{yB} |f|^q dλ`. On the real line `M` is a sliding overlap in
//! `y` and everything is exact. On the anisotropic plane `M` is a sliding
//! overlap in `y₂` for each fixed `y₁`; the `y₁` integral uses Gauss–Legendre
//! panels between the kinks. On the Heisenberg group the ball is sliced over
//! its `(b₁,b₂)` disk, each slice being an interval in `b₃` that slides with
//! `y₃`; the `(y₁,y₂)` and `(b₁,b₂)` integrals use midpoint rules.

use rayon::prelude::*;

use super::sliding::{PiecewiseLinear, SlideTerm, StepMax};
use crate::boxes::HalfOpenBox;
use crate::exponent::Exponent;
use crate::group::GroupKind;
use crate::measure::{interval_overlap, GAUSS5};
use crate::scalar::Scalar;
use crate::simplefn::SimpleFunction;

/// Default relative mesh (step / r) for the quadrature paths.
pub fn default_mesh<S: Scalar>(kind: GroupKind) -> S {
    match kind {
        GroupKind::RealLine => S::one(),
        GroupKind::AnisoPlane => S::lit(0.05),
        GroupKind::Heisenberg => S::lit(0.1),
    }
}

fn panels<S: Scalar>(lo: S, hi: S, h: S) -> usize {
    ((hi - lo) / h).ceil().to_usize().unwrap_or(1).max(1)
}

fn sorted_unique<S: Scalar>(mut v: Vec<S>) -> Vec<S> {
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v.dedup();
    v
}

fn finish<S: Scalar>(sum_or_max: S, q: Exponent<S>, p: Exponent<S>, measure_scale: S) -> S {
    match p {
        Exponent::Infinite => match q {
            Exponent::Finite(q) => sum_or_max.powf(q.recip()),
            Exponent::Infinite => sum_or_max,
        },
        Exponent::Finite(p) => (measure_scale * sum_or_max).powf(p.recip()),
    }
}

/// Value of `_B‖f‖_{q,p}`; radius and mesh must already be validated.
pub fn ball_norm_value<S: Scalar>(f: &SimpleFunction<S>, r: S, q: Exponent<S>, p: Exponent<S>, mesh: S) -> S {
    if f.is_zero() {
        return S::zero();
    }
    let raw = match f.group().kind {
        GroupKind::RealLine => real_line(f, r, q, p),
        GroupKind::AnisoPlane => aniso(f, r, q, p, mesh),
        GroupKind::Heisenberg => heisenberg(f, r, q, p, mesh),
    };
    finish(raw, q, p, f.group().measure_scale)
}

/// `∫ F^{p/q}` or `max F` for a sliding overlap, according to `p`.
fn reduce_linear<S: Scalar>(terms: &[SlideTerm<S>], q: S, p: Exponent<S>) -> S {
    let f = PiecewiseLinear::from_terms(terms);
    match p {
        Exponent::Infinite => f.max(),
        Exponent::Finite(p) => f.integral_pow(p / q),
    }
}

fn reduce_step<S: Scalar>(items: &[(S, S, S)], p: Exponent<S>) -> S {
    let f = StepMax::from_intervals(items);
    match p {
        Exponent::Infinite => f.max(),
        Exponent::Finite(p) => f.integral_pow(p),
    }
}

fn real_line<S: Scalar>(f: &SimpleFunction<S>, r: S, q: Exponent<S>, p: Exponent<S>) -> S {
    let sc = f.group().measure_scale;
    match q {
        Exponent::Finite(q) => {
            let terms: Vec<SlideTerm<S>> = f
                .pieces()
                .iter()
                .map(|pc| SlideTerm { weight: sc * pc.value.powf(q), a: (pc.cell.lo[0], pc.cell.hi[0]), b: (-r, r) })
                .collect();
            reduce_linear(&terms, q, p)
        }
        Exponent::Infinite => {
            let items: Vec<(S, S, S)> =
                f.pieces().iter().map(|pc| (pc.cell.lo[0] - r, pc.cell.hi[0] + r, pc.value)).collect();
            reduce_step(&items, p)
        }
    }
}

fn aniso<S: Scalar>(f: &SimpleFunction<S>, r: S, q: Exponent<S>, p: Exponent<S>, mesh: S) -> S {
    let sc = f.group().measure_scale;
    let r2 = r * r;
    let pieces = f.pieces();
    match q {
        Exponent::Finite(qv) => {
            let terms_at = |y1: S| -> Vec<SlideTerm<S>> {
                pieces
                    .iter()
                    .filter_map(|pc| {
                        let l1 = interval_overlap(pc.cell.lo[0], pc.cell.hi[0], y1 - r, y1 + r);
                        (l1 > S::zero()).then(|| SlideTerm {
                            weight: sc * pc.value.powf(qv) * l1,
                            a: (pc.cell.lo[1], pc.cell.hi[1]),
                            b: (-r2, r2),
                        })
                    })
                    .collect()
            };
            let kinks = sorted_unique(
                pieces
                    .iter()
                    .flat_map(|pc| [pc.cell.lo[0] - r, pc.cell.lo[0] + r, pc.cell.hi[0] - r, pc.cell.hi[0] + r])
                    .collect(),
            );
            match p {
                // bilinear between kink lines, so the maximum sits on them
                Exponent::Infinite => kinks
                    .par_iter()
                    .map(|&y1| PiecewiseLinear::from_terms(&terms_at(y1)).max())
                    .reduce(S::zero, S::max),
                Exponent::Finite(_) => {
                    let h = mesh * r;
                    kinks
                        .par_windows(2)
                        .map(|w| {
                            let n = panels(w[0], w[1], h);
                            let d = (w[1] - w[0]) / S::lit(n as f64);
                            let mut acc = S::zero();
                            for k in 0..n {
                                let mid = w[0] + (S::lit(k as f64) + S::half()) * d;
                                for (x, wt) in GAUSS5 {
                                    let y1 = mid + S::half() * d * S::lit(x);
                                    acc += S::half() * d * S::lit(wt) * reduce_linear(&terms_at(y1), qv, p);
                                }
                            }
                            acc
                        })
                        .collect::<Vec<S>>()
                        .into_iter()
                        .sum()
                }
            }
        }
        Exponent::Infinite => {
            if p.is_infinite() {
                return f.max_value();
            }
            let breaks = sorted_unique(
                pieces.iter().flat_map(|pc| [pc.cell.lo[0] - r, pc.cell.hi[0] + r]).collect(),
            );
            breaks
                .par_windows(2)
                .map(|w| {
                    let mid = S::half() * (w[0] + w[1]);
                    let items: Vec<(S, S, S)> = pieces
                        .iter()
                        .filter(|pc| pc.cell.lo[0] - r < mid && mid < pc.cell.hi[0] + r)
                        .map(|pc| (pc.cell.lo[1] - r2, pc.cell.hi[1] + r2, pc.value))
                        .collect();
                    (w[1] - w[0]) * reduce_step(&items, p)
                })
                .collect::<Vec<S>>()
                .into_iter()
                .sum()
        }
    }
}

/// Slices of `{b ∈ B(e,r) : y·b ∈ cell}` over a midpoint grid of the `(b₁,b₂)`
/// disk. Each slice contributes `weight·|(−τ,τ) ∩ (cell₃ − shear − y₃)|`, i.e. a
/// sliding term in `s = −y₃`.
pub(super) fn heisenberg_terms<S: Scalar>(
    cell: &HalfOpenBox<S>,
    y1: S,
    y2: S,
    r: S,
    mesh: S,
    weight: S,
    out: &mut Vec<SlideTerm<S>>,
) {
    let (lo1, hi1) = ((cell.lo[0] - y1).max(-r), (cell.hi[0] - y1).min(r));
    if !(hi1 > lo1) {
        return;
    }
    let h = mesh * r;
    let r4 = r.powi(4);
    let n1 = panels(lo1, hi1, h);
    let d1 = (hi1 - lo1) / S::lit(n1 as f64);
    for i in 0..n1 {
        let b1 = lo1 + (S::lit(i as f64) + S::half()) * d1;
        let chord = (r * r - b1 * b1).max(S::zero()).sqrt();
        let (lo2, hi2) = ((cell.lo[1] - y2).max(-chord), (cell.hi[1] - y2).min(chord));
        if !(hi2 > lo2) {
            continue;
        }
        let n2 = panels(lo2, hi2, h);
        let d2 = (hi2 - lo2) / S::lit(n2 as f64);
        for j in 0..n2 {
            let b2 = lo2 + (S::lit(j as f64) + S::half()) * d2;
            let rr = b1 * b1 + b2 * b2;
            let tau = (r4 - rr * rr).max(S::zero()).sqrt() * S::lit(0.25);
            if !(tau > S::zero()) {
                continue;
            }
            let shear = S::half() * (y1 * b2 - y2 * b1);
            out.push(SlideTerm {
                weight: weight * d1 * d2,
                a: (-tau, tau),
                b: (cell.lo[2] - shear, cell.hi[2] - shear),
            });
        }
    }
}

fn heisenberg<S: Scalar>(f: &SimpleFunction<S>, r: S, q: Exponent<S>, p: Exponent<S>, mesh: S) -> S {
    let sc = f.group().measure_scale;
    let support = f.support_box().expect("nonzero function has a support box");
    let h = mesh * r;
    let axis = |i: usize| {
        let (lo, hi) = (support.lo[i] - r, support.hi[i] + r);
        let n = panels(lo, hi, h);
        let d = (hi - lo) / S::lit(n as f64);
        ((0..n).map(|k| lo + (S::lit(k as f64) + S::half()) * d).collect::<Vec<S>>(), d)
    };
    let ((ys1, d1), (ys2, d2)) = (axis(0), axis(1));
    let nodes: Vec<(S, S)> = ys1.iter().flat_map(|&a| ys2.iter().map(move |&b| (a, b))).collect();
    let pieces = f.pieces();
    let per_node = |&(y1, y2): &(S, S)| -> S {
        let near = pieces.iter().filter(|pc| {
            pc.cell.lo[0] < y1 + r && y1 - r < pc.cell.hi[0] && pc.cell.lo[1] < y2 + r && y2 - r < pc.cell.hi[1]
        });
        let mut terms = Vec::new();
        match q {
            Exponent::Finite(qv) => {
                for pc in near {
                    heisenberg_terms(&pc.cell, y1, y2, r, mesh, sc * pc.value.powf(qv), &mut terms);
                }
                reduce_linear(&terms, qv, p)
            }
            Exponent::Infinite => {
                let mut items = Vec::new();
                for pc in near {
                    terms.clear();
                    heisenberg_terms(&pc.cell, y1, y2, r, mesh, S::one(), &mut terms);
                    items.extend(terms.iter().map(|t| (t.a.0 - t.b.1, t.a.1 - t.b.0, pc.value)));
                }
                reduce_step(&items, p)
            }
        }
    };
    match p {
        Exponent::Infinite => nodes.par_iter().map(per_node).reduce(S::zero, S::max),
        Exponent::Finite(_) => {
            let vals: Vec<S> = nodes.par_iter().map(per_node).collect();
            vals.into_iter().sum::<S>() * d1 * d2
        },
    }
}
