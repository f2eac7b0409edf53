//! One function per check family. Each returns its cases in a fixed order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::suite::{Check, GridSpec, HolderSplit, TripleSpec};
use super::{g_lemma_check, k_constant_check, InequalityCase, Relation};
use crate::amalgam::{ball_norm_value, conv_q_indicator, default_mesh, partition_norm};
use crate::boxes::HalfOpenBox;
use crate::counterexample::counterexample_report;
use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::fracmean::{
    divergence_diagnostic, fractional_norm_ball, fractional_norm_partition, Classification, ExponentTriple,
    RadiusGrid,
};
use crate::group::{GroupDescriptor, GroupKind, Point};
use crate::partition::{n_pi_bound, UniformPartition};
use crate::simplefn::{gen_random_simple, Combine, SimpleFunction};

const EXACT_TOL: f64 = 1e-12;
const LINE_TOL: f64 = 1e-9;
const QUADRATURE_TOL: f64 = 0.05;
const SLOPE_TOL: f64 = 0.05;

pub(super) fn run(criterion: &str, check: &Check, seed: u64) -> Vec<InequalityCase> {
    match check {
        Check::Diagonal { groups, exponents, radii, samples } => diagonal(criterion, groups, exponents, radii, *samples, seed),
        Check::Fubini { exponents, radii, samples } => fubini(criterion, exponents, radii, *samples, seed),
        Check::Equivalence { groups, pairs, radii, samples, mesh } => {
            equivalence(criterion, groups, pairs, radii, *samples, *mesh, seed)
        }
        Check::Embedding { groups, triples, samples } => embedding(criterion, groups, triples, *samples, seed),
        Check::Holder { groups, splittings, samples } => holder(criterion, groups, splittings, *samples, seed),
        Check::SandwichQ { groups, pairs, samples } => sandwich(criterion, groups, pairs, *samples, seed, false),
        Check::SandwichP { groups, pairs, samples } => sandwich(criterion, groups, pairs, *samples, seed, true),
        Check::Monotonicity { groups, chains, samples } => monotonicity(criterion, groups, chains, *samples, seed),
        Check::Kolmogorov { groups, pairs, samples } => kolmogorov(criterion, groups, pairs, *samples, seed),
        Check::WeakEmbedding { pairs, samples } => weak_embedding(criterion, pairs, *samples, seed),
        Check::Degeneracy { groups, triples, samples } => degeneracy(criterion, groups, triples, *samples, seed),
        Check::Counterexample { q, p, alpha, levels } => counterexample(criterion, *q, *p, *alpha, *levels),
        Check::Counting { groups, radius, translates } => counting(criterion, groups, *radius, *translates, seed),
        Check::Limit { groups, exponents, samples } => limit(criterion, groups, exponents, *samples, seed),
        Check::KConstant { groups, cases } => groups
            .iter()
            .flat_map(|&k| cases.iter().map(move |&c| (k, c)))
            .collect::<Vec<_>>()
            .par_iter()
            .map(|&(k, (theta, p, a))| {
                let g = GroupDescriptor::of_kind(k);
                let id = format!("{criterion}/k/{k}/theta={theta}/p={p}/a={a}");
                k_constant_check(theta, p, a, &g)
                    .map(|c| InequalityCase { id: id.clone(), ..c })
                    .unwrap_or_else(|err| lemma_misuse(&id, err))
            })
            .collect(),
        Check::GLemma { groups, cases } => groups
            .iter()
            .flat_map(|&k| cases.iter().map(move |&c| (k, c)))
            .collect::<Vec<_>>()
            .par_iter()
            .map(|&(k, (theta, p, q, eps, r))| {
                let g = GroupDescriptor::of_kind(k);
                let id = format!("{criterion}/g-lemma/{k}/theta={theta}/p={p}/q={q}/eps={eps}/r={r}");
                g_lemma_check(theta, p, q, eps, r, &g)
                    .map(|c| InequalityCase { id: id.clone(), ..c })
                    .unwrap_or_else(|err| lemma_misuse(&id, err))
            })
            .collect(),
    }
}

/// Out-of-range lemma parameters are misuse; anything else is a failure.
fn lemma_misuse(id: &str, err: Error) -> InequalityCase {
    match err {
        Error::InvalidExponent(_) | Error::Domain(_) => InequalityCase::misuse(id, err.to_string()),
        e => InequalityCase::error(id, &e, ""),
    }
}

/// Most cells allowed in a random function, by group.
fn max_cells(kind: GroupKind) -> usize {
    match kind {
        GroupKind::RealLine => 64,
        GroupKind::AnisoPlane => 32,
        GroupKind::Heisenberg => 12,
    }
}

fn unit_window(g: &GroupDescriptor) -> HalfOpenBox {
    HalfOpenBox::centered(&vec![0.0; g.dim()], &g.ball_half_extents(1.0)).expect("unit window")
}

/// Random simple function in the unit window with 1..=max_cells pieces.
pub(super) fn random_fn(g: &GroupDescriptor, seed: u64) -> SimpleFunction {
    let n = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15).gen_range(1..=max_cells(g.kind));
    gen_random_simple(g, seed, n, &unit_window(g))
}

fn second_seed(seed: u64, i: usize) -> u64 {
    seed.wrapping_add(1 << 32).wrapping_add(i as u64)
}

fn rel(x: f64, tol: f64) -> f64 {
    tol * x.abs().max(f64::MIN_POSITIVE)
}

/// Marks ball norms whose ess-sup over centres was taken as a max.
fn ess_sup_tag(p: Exponent) -> &'static str {
    if p.is_infinite() {
        " ess-sup=max"
    } else {
        ""
    }
}

fn grid_of(kind: GroupKind) -> RadiusGrid {
    GridSpec::default_for(kind).grid().expect("default grid is valid")
}

fn grid_ctx(grid: &RadiusGrid) -> String {
    format!("grid={}:{}:{}", grid.r_min, grid.r_max, grid.steps_per_octave)
}

/// Cartesian product of groups, parameters and sample indices.
fn tasks<T: Copy>(groups: &[GroupKind], params: &[T], samples: usize) -> Vec<(GroupKind, T, usize)> {
    let mut out = Vec::new();
    for &g in groups {
        for &p in params {
            for i in 0..samples {
                out.push((g, p, i));
            }
        }
    }
    out
}

fn or_error(id: String, ctx: &str, r: Result<InequalityCase>) -> InequalityCase {
    r.unwrap_or_else(|e| InequalityCase::error(id, &e, ctx))
}

fn diagonal(crit: &str, groups: &[GroupKind], exps: &[Exponent], radii: &[f64], samples: usize, seed: u64) -> Vec<InequalityCase> {
    let params: Vec<(Exponent, f64)> = exps.iter().flat_map(|&p| radii.iter().map(move |&r| (p, r))).collect();
    tasks(groups, &params, samples)
        .par_iter()
        .map(|&(k, (p, r), i)| {
            let g = GroupDescriptor::of_kind(k);
            let s = seed.wrapping_add(i as u64);
            let id = format!("{crit}/diagonal/{k}/p={p}/r={r}/seed={s}");
            let ctx = format!("group={k} seed={s} p={p} r={r}");
            or_error(id.clone(), &ctx, (|| {
                let f = random_fn(&g, s);
                let lhs = partition_norm(&f, &UniformPartition::global(&g, r)?, p, p)?;
                let rhs = f.lebesgue_norm(p);
                Ok(InequalityCase::new(id, Relation::Approx, lhs, rhs, 1.0, rel(rhs, EXACT_TOL), ctx.clone()))
            })())
        })
        .collect()
}

fn fubini(crit: &str, exps: &[Exponent], radii: &[f64], samples: usize, seed: u64) -> Vec<InequalityCase> {
    let g = GroupDescriptor::real_line();
    let params: Vec<(Exponent, f64)> = exps.iter().flat_map(|&q| radii.iter().map(move |&r| (q, r))).collect();
    tasks(&[GroupKind::RealLine], &params, samples)
        .par_iter()
        .map(|&(_, (q, r), i)| {
            let s = seed.wrapping_add(i as u64);
            let id = format!("{crit}/fubini/real-line/q={q}/r={r}/seed={s}");
            let f = random_fn(&g, s);
            let lhs = ball_norm_value(&f, r, q, q, 1.0);
            let rhs = f.lebesgue_norm(q);
            let c = r.powf(g.rho * q.recip());
            InequalityCase::new(id, Relation::Approx, lhs, rhs, c, rel(rhs * c, LINE_TOL), format!("seed={s} q={q} r={r}"))
        })
        .collect()
}

fn equivalence(
    crit: &str,
    groups: &[GroupKind],
    pairs: &[(Exponent, Exponent)],
    radii: &[f64],
    samples: usize,
    mesh: Option<f64>,
    seed: u64,
) -> Vec<InequalityCase> {
    let params: Vec<((Exponent, Exponent), f64)> =
        pairs.iter().flat_map(|&qp| radii.iter().map(move |&r| (qp, r))).collect();
    let mut cases: Vec<InequalityCase> = tasks(groups, &params, samples)
        .par_iter()
        .map(|&(k, ((q, p), r), i)| {
            let g = GroupDescriptor::of_kind(k);
            let s = seed.wrapping_add(i as u64);
            let id = format!("{crit}/equivalence/{k}/q={q}/p={p}/r={r}/seed={s}");
            let ctx = format!("group={k} seed={s} q={q} p={p} r={r}{}", ess_sup_tag(p));
            or_error(id.clone(), &ctx, (|| {
                let f = random_fn(&g, s);
                let m = mesh.unwrap_or_else(|| default_mesh(k));
                let ball = ball_norm_value(&f, r, q, p, m);
                let lhs = r.powf(-g.rho * p.recip()) * ball;
                let rhs = partition_norm(&f, &UniformPartition::global(&g, r)?, q, p)?;
                let (a, b) = shape_constants(&g);
                let c = a.powf(g.rho * q.recip()) * b.powf(g.rho * p.recip());
                let tol = if k == GroupKind::RealLine { LINE_TOL } else { QUADRATURE_TOL };
                Ok(InequalityCase::new(id, Relation::Le, lhs, rhs, c, rel(rhs * c, tol), format!("{ctx} ratio={:e}", lhs / rhs)))
            })())
        })
        .collect();
    // the lower side only needs a positive floor; report the smallest ratio per group and pair
    for &k in groups {
        for &(q, p) in pairs {
            let tag = format!("/equivalence/{k}/q={q}/p={p}/");
            let floor = cases
                .iter()
                .filter(|c| c.id.contains(&tag) && c.rhs > 0.0)
                .map(|c| c.lhs / c.rhs)
                .fold(f64::INFINITY, f64::min);
            cases.push(InequalityCase::new(
                format!("{crit}/equivalence-floor/{k}/q={q}/p={p}"),
                Relation::Lt,
                0.0,
                floor,
                1.0,
                0.0,
                format!("smallest ratio over {} functions x {} radii", samples, radii.len()),
            ));
        }
    }
    cases
}

/// `(4γ⁴+3γ², 4γ⁵+3γ³+2γ²)`.
fn shape_constants(g: &GroupDescriptor) -> (f64, f64) {
    let y = g.gamma;
    (4.0 * y.powi(4) + 3.0 * y * y, 4.0 * y.powi(5) + 3.0 * y.powi(3) + 2.0 * y * y)
}

fn frac(f: &SimpleFunction, t: &ExponentTriple, grid: &RadiusGrid) -> Result<f64> {
    Ok(fractional_norm_partition(f, t, grid)?.value)
}

fn embedding(crit: &str, groups: &[GroupKind], triples: &[TripleSpec], samples: usize, seed: u64) -> Vec<InequalityCase> {
    tasks(groups, triples, samples)
        .par_iter()
        .map(|&(k, ts, i)| {
            let g = GroupDescriptor::of_kind(k);
            let t = ts.triple();
            let s = seed.wrapping_add(i as u64);
            let id = format!("{crit}/embedding/{k}/t={t}/seed={s}");
            let grid = grid_of(k);
            let ctx = format!("group={k} seed={s} triple={t} {}", grid_ctx(&grid));
            if t.classify() != Classification::Nontrivial {
                return InequalityCase::misuse(id, format!("{ctx}; needs q <= alpha <= p"));
            }
            or_error(id.clone(), &ctx, (|| {
                let f = random_fn(&g, s);
                let lhs = frac(&f, &t, &grid)?;
                let rhs = f.lebesgue_norm(t.alpha);
                Ok(InequalityCase::new(id, Relation::Le, lhs, rhs, 1.0, LINE_TOL * rhs.max(1.0), ctx.clone()))
            })())
        })
        .collect()
}

fn product_triple(a: &ExponentTriple, b: &ExponentTriple) -> Result<ExponentTriple> {
    let sum = |x: Exponent, y: Exponent| Exponent::from_recip(x.recip() + y.recip());
    Ok(ExponentTriple::new(sum(a.q, b.q)?, sum(a.p, b.p)?, sum(a.alpha, b.alpha)?))
}

fn holder(crit: &str, groups: &[GroupKind], splits: &[HolderSplit], samples: usize, seed: u64) -> Vec<InequalityCase> {
    tasks(groups, splits, samples)
        .par_iter()
        .map(|&(k, sp, i)| {
            let g = GroupDescriptor::of_kind(k);
            let (t1, t2) = (sp.first.triple(), sp.second.triple());
            let s = seed.wrapping_add(i as u64);
            let s2 = second_seed(seed, i);
            let id = format!("{crit}/holder/{k}/{t1}x{t2}/seed={s}");
            let grid = grid_of(k);
            let ctx = format!("group={k} seeds={s},{s2} split={t1}x{t2} {}", grid_ctx(&grid));
            or_error(id.clone(), &ctx, (|| {
                let t = product_triple(&t1, &t2)?;
                if [t, t1, t2].iter().any(|x| x.classify() != Classification::Nontrivial) {
                    return Ok(InequalityCase::misuse(id.clone(), format!("{ctx}; product {t} or a factor is degenerate")));
                }
                let (f, h) = (random_fn(&g, s), random_fn(&g, s2));
                let fh = f.combine(&h, Combine::Product)?;
                let lhs = frac(&fh, &t, &grid)?;
                let rhs = frac(&f, &t1, &grid)? * frac(&h, &t2, &grid)?;
                Ok(InequalityCase::new(id.clone(), Relation::Le, lhs, rhs, 1.0, LINE_TOL * rhs.max(1.0), format!("{ctx} product={t}")))
            })())
        })
        .collect()
}

fn sandwich(
    crit: &str,
    groups: &[GroupKind],
    pairs: &[(Exponent, Exponent)],
    samples: usize,
    seed: u64,
    at_p: bool,
) -> Vec<InequalityCase> {
    let tag = if at_p { "alpha=p" } else { "alpha=q" };
    tasks(groups, pairs, samples)
        .par_iter()
        .flat_map_iter(|&(k, (q, p), i)| {
            let g = GroupDescriptor::of_kind(k);
            let s = seed.wrapping_add(i as u64);
            let alpha = if at_p { p } else { q };
            let t = ExponentTriple::new(q, p, alpha);
            // the lower bound at α = p is reached as r → 0, so the real line gets a finer end
            let grid = match (at_p, k) {
                (true, GroupKind::RealLine) => RadiusGrid { r_min: 2f64.powi(-10), ..grid_of(k) },
                _ => grid_of(k),
            };
            let base = format!("{crit}/sandwich-{tag}/{k}/q={q}/p={p}/seed={s}");
            let ctx = format!("group={k} seed={s} triple={t} {}", grid_ctx(&grid));
            if q > p {
                return vec![InequalityCase::misuse(base, format!("{ctx}; needs q <= p"))];
            }
            let (a, b) = shape_constants(&g);
            let c = if !at_p {
                a.powf(g.rho * (q.recip() - p.recip()))
            } else {
                a.powf(g.rho * q.recip()) * b.powf(g.rho * p.recip())
            };
            let f = random_fn(&g, s);
            match frac(&f, &t, &grid) {
                Err(e) => vec![InequalityCase::error(base, &e, &ctx)],
                Ok(n) => {
                    let norm = f.lebesgue_norm(alpha);
                    vec![
                        InequalityCase::new(format!("{base}/upper"), Relation::Le, n, norm, 1.0, LINE_TOL * norm.max(1.0), ctx.clone()),
                        InequalityCase::new(format!("{base}/lower"), Relation::Le, norm, n, c, LINE_TOL * norm.max(1.0), ctx),
                    ]
                }
            }
        })
        .collect()
}

fn monotonicity(crit: &str, groups: &[GroupKind], chains: &[[Exponent; 5]], samples: usize, seed: u64) -> Vec<InequalityCase> {
    tasks(groups, chains, samples)
        .par_iter()
        .map(|&(k, [q1, q2, alpha, p2, p1], i)| {
            let g = GroupDescriptor::of_kind(k);
            let s = seed.wrapping_add(i as u64);
            let id = format!("{crit}/monotonicity/{k}/chain=({q1},{q2},{alpha},{p2},{p1})/seed={s}");
            let grid = grid_of(k);
            let ctx = format!("group={k} seed={s} {}", grid_ctx(&grid));
            if !(q1 <= q2 && q2 <= alpha && alpha <= p2 && p2 <= p1) {
                return InequalityCase::misuse(id, format!("{ctx}; needs q1 <= q2 <= alpha <= p2 <= p1"));
            }
            or_error(id.clone(), &ctx, (|| {
                let f = random_fn(&g, s);
                let lhs = frac(&f, &ExponentTriple::new(q1, p1, alpha), &grid)?;
                let rhs = frac(&f, &ExponentTriple::new(q2, p2, alpha), &grid)?;
                let c = (2.0 * g.gamma).recip().powf(g.rho * (q1.recip() - q2.recip()));
                Ok(InequalityCase::new(id.clone(), Relation::Le, lhs, rhs, c, LINE_TOL * rhs.max(1.0), ctx.clone()))
            })())
        })
        .collect()
}

fn kolmogorov_constant(q: f64, alpha: f64) -> f64 {
    (alpha / (alpha - q)).powf(q.recip())
}

fn kolmogorov(crit: &str, groups: &[GroupKind], pairs: &[(f64, f64)], samples: usize, seed: u64) -> Vec<InequalityCase> {
    tasks(groups, pairs, samples)
        .par_iter()
        .map(|&(k, (q, alpha), i)| {
            let g = GroupDescriptor::of_kind(k);
            let s = seed.wrapping_add(i as u64);
            let id = format!("{crit}/kolmogorov/{k}/q={q}/alpha={alpha}/seed={s}");
            let ctx = format!("group={k} seed={s}");
            if !(1.0 <= q && q < alpha) || !k.is_abelian() {
                return InequalityCase::misuse(id, format!("{ctx}; needs 1 <= q < alpha on an abelian instance"));
            }
            or_error(id.clone(), &ctx, (|| {
                let f = random_fn(&g, s);
                let weak = f.lorentz_norm(Exponent::of(alpha), Exponent::inf())?;
                let c = kolmogorov_constant(q, alpha);
                let sb = f.support_box().expect("random functions are nonzero");
                let axes: Vec<Vec<f64>> = (0..g.dim())
                    .map(|a| {
                        let (lo, hi) = (sb.lo[a] - 0.25, sb.hi[a] + 0.25);
                        (0..9).map(|j| lo + (hi - lo) * j as f64 / 8.0).collect()
                    })
                    .collect();
                let centres: Vec<Vec<f64>> = axes.iter().fold(vec![vec![]], |acc, ax| {
                    acc.iter().flat_map(|c| ax.iter().map(move |&x| [c.clone(), vec![x]].concat())).collect()
                });
                let mut worst: Option<(f64, f64, f64, String)> = None;
                for j in -6..=2 {
                    let r = 2f64.powi(j);
                    let rhs = weak * g.ball_measure(r)?.powf(q.recip() - alpha.recip());
                    for x in &centres {
                        let lhs = conv_q_indicator(&f, Exponent::of(q), r, &Point::new(x.clone())?)?.powf(q.recip());
                        let ratio = lhs / (rhs * c);
                        if worst.as_ref().map_or(true, |w| ratio > w.0) {
                            worst = Some((ratio, lhs, rhs, format!("x={x:?} r={r}")));
                        }
                    }
                }
                let (_, lhs, rhs, ball) = worst.expect("nonempty ball grid");
                Ok(InequalityCase::new(id.clone(), Relation::Le, lhs, rhs, c, rel(rhs * c, EXACT_TOL), format!("{ctx} worst ball {ball}")))
            })())
        })
        .collect()
}

fn weak_embedding(crit: &str, pairs: &[(f64, f64)], samples: usize, seed: u64) -> Vec<InequalityCase> {
    let g = GroupDescriptor::real_line();
    let grid = grid_of(GroupKind::RealLine);
    tasks(&[GroupKind::RealLine], pairs, samples)
        .par_iter()
        .map(|&(_, (q, alpha), i)| {
            let s = seed.wrapping_add(i as u64);
            let id = format!("{crit}/weak-embedding/real-line/q={q}/alpha={alpha}/seed={s}");
            let ctx = format!("seed={s} {}{}", grid_ctx(&grid), ess_sup_tag(Exponent::inf()));
            if !(1.0 <= q && q < alpha) {
                return InequalityCase::misuse(id, format!("{ctx}; needs 1 <= q < alpha"));
            }
            or_error(id.clone(), &ctx, (|| {
                let f = random_fn(&g, s);
                let t = ExponentTriple::new(Exponent::of(q), Exponent::inf(), Exponent::of(alpha));
                let lhs = fractional_norm_ball(&f, &t, &grid, 1.0)?.value;
                let rhs = f.lorentz_norm(Exponent::of(alpha), Exponent::inf())?;
                let c = kolmogorov_constant(q, alpha);
                Ok(InequalityCase::new(id.clone(), Relation::Le, lhs, rhs, c, rel(rhs * c, LINE_TOL), ctx.clone()))
            })())
        })
        .collect()
}

fn degeneracy(crit: &str, groups: &[GroupKind], triples: &[TripleSpec], samples: usize, seed: u64) -> Vec<InequalityCase> {
    tasks(groups, triples, samples)
        .par_iter()
        .map(|&(k, ts, i)| {
            let g = GroupDescriptor::of_kind(k);
            let t = ts.triple();
            let s = seed.wrapping_add(i as u64);
            let id = format!("{crit}/degeneracy/{k}/t={t}/seed={s}");
            let ctx = format!("group={k} seed={s} triple={t}");
            or_error(id.clone(), &ctx, (|| {
                let f = random_fn(&g, s);
                let ind = SimpleFunction::indicator(g.clone(), f.pieces().iter().map(|p| p.cell.clone()).collect(), 1.0)?;
                let d = 2.0 * ind.support_radius();
                let grid = match t.classify() {
                    Classification::Nontrivial => {
                        return Ok(InequalityCase::misuse(id.clone(), format!("{ctx}; triple is not degenerate")))
                    }
                    Classification::DegenerateLow => RadiusGrid::new(d * 64.0, d * 4096.0, 4)?,
                    Classification::DegenerateHigh => match k {
                        GroupKind::RealLine => RadiusGrid::new(2f64.powi(-14), 2f64.powi(-10), 4)?,
                        _ => return Err(Error::Unsupported("small-radius slopes are run on the real line".into())),
                    },
                };
                let rep = divergence_diagnostic(&ind, &t, &grid)?;
                Ok(InequalityCase::new(
                    id.clone(),
                    Relation::Approx,
                    rep.slope,
                    rep.theoretical,
                    1.0,
                    SLOPE_TOL * rep.theoretical.abs(),
                    format!("{ctx} end={:?} {}", rep.end, grid_ctx(&grid)),
                ))
            })())
        })
        .collect()
}

fn counterexample(crit: &str, q: f64, p: Exponent, alpha: f64, levels: u32) -> Vec<InequalityCase> {
    let base = format!("{crit}/counterexample/q={q}/p={p}/alpha={alpha}");
    let rows = match counterexample_report(q, p, alpha, levels) {
        Ok(r) => r,
        Err(e @ (Error::InvalidExponent(_) | Error::Domain(_))) => {
            return vec![InequalityCase::misuse(base, e.to_string())]
        }
        Err(e) => return vec![InequalityCase::error(base, &e, "")],
    };
    let mut out = Vec::new();
    let mut prev: Option<f64> = None;
    for row in &rows {
        let n = row.levels;
        let ctx = format!("N={n} argmax_r={} cross_level_enforced={}", row.argmax_r, row.cross_level_enforced);
        out.push(InequalityCase::new(
            format!("{base}/fractional/N={n}"),
            Relation::Le,
            row.fractional_norm,
            row.bound,
            1.0,
            0.0,
            ctx.clone(),
        ));
        if let Some(w) = prev {
            out.push(InequalityCase::new(format!("{base}/weak-increasing/N={n}"), Relation::Lt, w, row.weak_norm, 1.0, 0.0, ctx.clone()));
        }
        prev = Some(row.weak_norm);
        let violations = [row.separations.same_level, row.separations.disjoint].iter().filter(|ok| !**ok).count();
        out.push(InequalityCase::new(
            format!("{base}/separation/N={n}"),
            Relation::Approx,
            violations as f64,
            0.0,
            1.0,
            0.0,
            format!("{ctx} same_level_margin={}", row.separations.same_level_margin),
        ));
        if n == 4 && q == 1.0 && alpha == 2.0 {
            let expect = (4.0f64 + 15.0 / 32.0).sqrt();
            out.push(InequalityCase::new(format!("{base}/weak-value/N=4"), Relation::Approx, row.weak_norm, expect, 1.0, rel(expect, EXACT_TOL), ctx));
        }
    }
    out
}

fn counting(crit: &str, groups: &[GroupKind], radius: f64, translates: usize, seed: u64) -> Vec<InequalityCase> {
    groups
        .par_iter()
        .map(|&k| {
            let g = GroupDescriptor::of_kind(k);
            let id = format!("{crit}/counting/{k}/K={radius}");
            let ctx = format!("group={k} seed={seed} translates={translates}");
            or_error(id.clone(), &ctx, (|| {
                let part = UniformPartition::global(&g, 1.0)?;
                let bound = n_pi_bound(&g, part.u_radius(), part.v_radius(), radius)?;
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let points: Vec<Vec<f64>> =
                    (0..translates).map(|_| (0..g.dim()).map(|_| rng.gen_range(-3.0..3.0)).collect()).collect();
                let counts = points.par_iter().map(|a| part.count_translate_hits(radius, a)).collect::<Result<Vec<_>>>()?;
                let max = counts.iter().copied().max().unwrap_or(0);
                let min = counts.iter().copied().min().unwrap_or(0);
                Ok(InequalityCase::new(id.clone(), Relation::Le, max as f64, bound, 1.0, 0.0, format!("{ctx} min_hits={min}")))
            })())
        })
        .collect()
}

fn limit(crit: &str, groups: &[GroupKind], exps: &[Exponent], samples: usize, seed: u64) -> Vec<InequalityCase> {
    let radii: Vec<f64> = (-8..=6).map(|j| 2f64.powf(j as f64 / 2.0)).collect();
    tasks(groups, exps, samples)
        .par_iter()
        .flat_map_iter(|&(k, q, i)| {
            let g = GroupDescriptor::of_kind(k);
            let s = seed.wrapping_add(i as u64);
            let base = format!("{crit}/limit/{k}/q={q}/seed={s}");
            let ctx = format!("group={k} seed={s} radii=2^(-4)..2^3{}", ess_sup_tag(Exponent::inf()));
            if q.is_infinite() {
                return vec![InequalityCase::misuse(base, format!("{ctx}; needs finite q"))];
            }
            let f = random_fn(&g, s);
            let norm = f.lebesgue_norm(q);
            let vals: Vec<f64> =
                radii.iter().map(|&r| ball_norm_value(&f, r, q, Exponent::inf(), default_mesh(k))).collect();
            let drop = vals.windows(2).map(|w| w[0] - w[1]).fold(0.0, f64::max);
            let cover = 2.0 * f.support_radius();
            let covered: Vec<f64> = radii.iter().zip(&vals).filter(|(r, _)| **r >= cover).map(|(_, v)| *v).collect();
            let mut out = vec![InequalityCase::new(
                format!("{base}/nondecreasing"),
                Relation::Le,
                drop,
                0.0,
                1.0,
                rel(norm, EXACT_TOL),
                ctx.clone(),
            )];
            match covered.last() {
                Some(&v) => out.push(InequalityCase::new(
                    format!("{base}/covered"),
                    Relation::Approx,
                    v,
                    norm,
                    1.0,
                    rel(norm, LINE_TOL),
                    format!("{ctx} cover_radius={cover}"),
                )),
                None => out.push(InequalityCase::misuse(format!("{base}/covered"), format!("{ctx}; no grid radius covers the support"))),
            }
            out
        })
        .collect()
}
