//! A function in `(L^q,L^p)^α` outside `L^{α,∞}`: the indicator of a sparse union
//! of small balls, truncated after `N` levels.
//!
//! Level `n` has `⌊2^{ρ(n+1)}⌋ + 1` balls of radius `2^{−n−1}`, pairwise farther
//! apart than `s_n = γ(1+γ+2γ²)·2^{(n+1)q/(α−q)}`. Every level has measure
//! `1 + 2^{−n−1}`, so the weak `L^α` norm grows without bound while the
//! fractional norm stays below a geometric series in `n`.
//!
//! The cross-level condition asks for gaps of size `2γ²|D(n,k) − D(m,j)|` with
//! `D(n,k) = 2^{2^{ρ(n+1)}+1} + 2^{k−n} + 2^{−n−1}`. These exceed what binary64
//! can place exactly once `N ≥ 5`, and the argument only needs them to make the
//! balls disjoint. Centers therefore honour that condition when it is exactly
//! representable and otherwise fall back to same-level separation plus
//! disjointness; the spec records which placement was used.

use crate::boxes::HalfOpenBox;
use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::fracmean::{fractional_norm_ball, ExponentTriple, RadiusGrid};
use crate::group::{GroupDescriptor, GroupKind};
use crate::simplefn::SimpleFunction;

/// Largest power of two below which all placements are exact multiples of the grid unit.
const EXACT_BITS: i32 = 52;

#[derive(Debug, Clone, PartialEq)]
pub struct LevelSpec {
    pub n: u32,
    pub radius: f64,
    pub separation: f64,
    pub centers: Vec<f64>,
}

impl LevelSpec {
    pub fn count(&self) -> usize {
        self.centers.len()
    }

    /// `λ(E_n)`, the sum of the ball measures.
    pub fn measure(&self, g: &GroupDescriptor) -> f64 {
        self.count() as f64 * self.radius.powf(g.rho)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CrossLevel {
    /// Every pair satisfies the cross-level inequality.
    Enforced,
    /// Not representable; `required_log2` is `log₂` of the largest required gap.
    NotRepresentable { required_log2: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SparseUnionSpec {
    pub q: f64,
    pub alpha: f64,
    pub gamma: f64,
    pub rho: f64,
    pub levels: Vec<LevelSpec>,
    pub cross_level: CrossLevel,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeparationReport {
    pub same_level: bool,
    pub disjoint: bool,
    pub cross_level: bool,
    /// Smallest `gap / s_n − 1` over same-level pairs.
    pub same_level_margin: f64,
}

fn ball_count(rho: f64, n: u32) -> usize {
    (rho * (n as f64 + 1.0)).exp2().floor() as usize + 1
}

fn separation(gamma: f64, q: f64, alpha: f64, n: u32) -> f64 {
    gamma * (1.0 + gamma + 2.0 * gamma * gamma) * ((n as f64 + 1.0) * q / (alpha - q)).exp2()
}

/// `D(n,k)` of the cross-level condition (`k` is 1-based).
fn cross_anchor(rho: f64, n: u32, k: usize) -> f64 {
    let nf = n as f64;
    ((rho * (nf + 1.0)).exp2() + 1.0).exp2() + (k as f64 - nf).exp2() + (-nf - 1.0).exp2()
}

fn cross_bound(spec_gamma: f64, rho: f64, (n, k): (u32, usize), (m, j): (u32, usize)) -> f64 {
    2.0 * spec_gamma * spec_gamma * (cross_anchor(rho, n, k) - cross_anchor(rho, m, j)).abs()
}

fn required_gap(
    g: &GroupDescriptor,
    q: f64,
    alpha: f64,
    (n, k): (u32, usize),
    (m, j): (u32, usize),
    with_cross: bool,
) -> f64 {
    let disjoint = g.gamma * ((-(n as f64) - 1.0).exp2() + (-(m as f64) - 1.0).exp2());
    let mut gap = disjoint;
    if n == m {
        gap = gap.max(separation(g.gamma, q, alpha, n));
    }
    if with_cross {
        gap = gap.max(cross_bound(g.gamma, g.rho, (n, k), (m, j)));
    }
    gap
}

/// Greedy placement on the positive axis; `None` if it leaves the exact range.
fn place(g: &GroupDescriptor, q: f64, alpha: f64, levels: u32, with_cross: bool) -> Option<Vec<LevelSpec>> {
    let unit = (-(levels as f64) - 1.0).exp2();
    let limit = (EXACT_BITS as f64).exp2() * unit;
    let mut placed: Vec<(u32, usize, f64)> = Vec::new();
    let mut out = Vec::new();
    for n in 1..=levels {
        let mut centers = Vec::new();
        for k in 1..=ball_count(g.rho, n) {
            let mut c: f64 = 0.0;
            for &(m, j, x) in &placed {
                let need = required_gap(g, q, alpha, (n, k), (m, j), with_cross);
                if !need.is_finite() || need >= limit {
                    return None;
                }
                c = c.max(x + need);
            }
            // strictly past every bound, on the exact dyadic grid
            let c = ((c / unit).floor() + 1.0) * unit;
            if c >= limit {
                return None;
            }
            placed.push((n, k, c));
            centers.push(c);
        }
        out.push(LevelSpec {
            n,
            radius: (-(n as f64) - 1.0).exp2(),
            separation: separation(g.gamma, q, alpha, n),
            centers,
        });
    }
    Some(out)
}

/// Builds `E_N = ∪_{n ≤ N} E_n` and its indicator on the real line.
pub fn build_sparse_union(
    g: &GroupDescriptor,
    q: f64,
    alpha: f64,
    levels: u32,
) -> Result<(SparseUnionSpec, SimpleFunction)> {
    if g.kind != GroupKind::RealLine {
        return Err(Error::Unsupported(format!("sparse union is built on the real line, not {}", g.name())));
    }
    if !(q >= 1.0) || !(q < alpha) {
        return Err(Error::InvalidExponent(format!("need 1 <= q < alpha, got q={q}, alpha={alpha}")));
    }
    let (level_specs, cross_level) = match place(g, q, alpha, levels, true) {
        Some(l) => (l, CrossLevel::Enforced),
        None => {
            let l = place(g, q, alpha, levels, false).ok_or_else(|| {
                Error::Domain(format!("same-level separations for q={q}, alpha={alpha}, N={levels} exceed binary64"))
            })?;
            let n = levels;
            let required = cross_bound(g.gamma, g.rho, (n, ball_count(g.rho, n)), (n, 1));
            (l, CrossLevel::NotRepresentable { required_log2: required.log2() })
        }
    };
    let spec = SparseUnionSpec { q, alpha, gamma: g.gamma, rho: g.rho, levels: level_specs, cross_level };
    let f = indicator_of(&spec, g)?;
    Ok((spec, f))
}

fn indicator_of(spec: &SparseUnionSpec, g: &GroupDescriptor) -> Result<SimpleFunction> {
    let boxes = spec
        .levels
        .iter()
        .flat_map(|l| l.centers.iter().map(move |&c| HalfOpenBox::interval(c - l.radius, c + l.radius)))
        .collect::<Result<Vec<_>>>()?;
    SimpleFunction::indicator(g.clone(), boxes, 1.0)
}

/// Checks every separation condition pair by pair.
pub fn check_separations(spec: &SparseUnionSpec) -> SeparationReport {
    let all: Vec<(u32, usize, f64, f64)> = spec
        .levels
        .iter()
        .flat_map(|l| l.centers.iter().enumerate().map(move |(i, &c)| (l.n, i + 1, c, l.radius)))
        .collect();
    let mut rep = SeparationReport { same_level: true, disjoint: true, cross_level: true, same_level_margin: f64::INFINITY };
    for (a, &(n, k, x, rx)) in all.iter().enumerate() {
        for &(m, j, y, ry) in &all[a + 1..] {
            let d = (x - y).abs();
            if d < rx + ry {
                rep.disjoint = false;
            }
            if n == m {
                let s = separation(spec.gamma, spec.q, spec.alpha, n);
                rep.same_level &= d > s;
                rep.same_level_margin = rep.same_level_margin.min(d / s - 1.0);
            }
            if !(d > cross_bound(spec.gamma, spec.rho, (n, k), (m, j))) {
                rep.cross_level = false;
            }
        }
    }
    rep
}

/// `‖χ_{E_N}‖*_{α,∞} = λ(E_N)^{1/α}`.
pub fn weak_lorentz_of_union(f: &SimpleFunction, alpha: f64) -> Result<f64> {
    if f.pieces().iter().any(|p| p.value != 1.0) {
        return Err(Error::Domain("weak norm of a union expects an indicator".into()));
    }
    Ok(f.support_measure().powf(alpha.recip()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundConstants {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub c4: f64,
    /// Ratio `2^{−ρ(1/α−1/p)}` of the geometric series.
    pub ratio: f64,
    pub bound: f64,
}

/// The constants `C₁…C₄` and the bound `C₄·x/(1−x)` on the fractional norm of `χ_E`.
///
/// `p = ∞` is accepted with the `1/∞ = 0` convention.
pub fn fractional_bound_constant(q: f64, p: Exponent, alpha: f64, g: &GroupDescriptor) -> Result<BoundConstants> {
    let ip = p.recip();
    if !(q >= 1.0 && q < alpha && alpha.recip() > ip) {
        return Err(Error::InvalidExponent(format!("need 1 <= q < alpha < p, got ({q}, {p}, {alpha})")));
    }
    let (rho, gamma) = (g.rho, g.gamma);
    let (iq, ia) = (q.recip(), alpha.recip());
    let gp = gamma.powf(rho * ip);
    let c1 = ((1.0 + rho) * ip + rho * ip - rho * ia).exp2() * gp;
    let c2 = (gp * ((rho + 1.0) * ip + iq - rho * (ia - ip)).exp2()).max(c1);
    let c3 = c1.max(c2);
    let c4 = (-rho * (ia - iq - ip)).exp2() * c3;
    let ratio = (-rho * (ia - ip)).exp2();
    Ok(BoundConstants { c1, c2, c3, c4, ratio, bound: c4 * ratio / (1.0 - ratio) })
}

/// Radii from below the smallest ball to beyond the whole support.
pub fn union_grid(spec: &SparseUnionSpec, f: &SimpleFunction) -> RadiusGrid {
    let n = spec.levels.len() as f64;
    let span = f.support_box().map(|b| b.width(0)).unwrap_or(1.0);
    RadiusGrid { r_min: (-n - 3.0).exp2(), r_max: span.log2().ceil().exp2() * 4.0, steps_per_octave: 4 }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LevelReport {
    pub levels: u32,
    pub measure: f64,
    pub weak_norm: f64,
    pub fractional_norm: f64,
    pub argmax_r: f64,
    pub bound: f64,
    pub margin: f64,
    pub separations: SeparationReport,
    pub cross_level_enforced: bool,
}

/// Truncations `N = 1..=max_levels` with their weak and fractional norms.
pub fn counterexample_report(q: f64, p: Exponent, alpha: f64, max_levels: u32) -> Result<Vec<LevelReport>> {
    let g = GroupDescriptor::real_line();
    let constants = fractional_bound_constant(q, p, alpha, &g)?;
    let t = ExponentTriple::new(Exponent::new(q)?, p, Exponent::new(alpha)?);
    (1..=max_levels)
        .map(|levels| {
            let (spec, f) = build_sparse_union(&g, q, alpha, levels)?;
            let frac = fractional_norm_ball(&f, &t, &union_grid(&spec, &f), 1.0)?;
            Ok(LevelReport {
                levels,
                measure: f.support_measure(),
                weak_norm: weak_lorentz_of_union(&f, alpha)?,
                fractional_norm: frac.value,
                argmax_r: frac.argmax_r,
                bound: constants.bound,
                margin: constants.bound - frac.value,
                separations: check_separations(&spec),
                cross_level_enforced: spec.cross_level == CrossLevel::Enforced,
            })
        })
        .collect()
}
