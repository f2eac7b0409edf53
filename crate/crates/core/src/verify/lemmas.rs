//! The radial test functions `h(y) = |y|^{−ρ/θ′}` and `g(x) = (γ+γ|x|)^{−ρ/θ′}`,
//! the tail constant `k(θ;p;a) = ‖hχ_{G∖B(e,a)}‖_{p′}` and the local bound on `g`.
//!
//! Polar integration under `λ(B(e,r)) = r^ρ` gives
//! `∫_{a<|y|<b} |y|^{−s} dλ = ρ (a^{−d} − b^{−d}) / d` with `d = s − ρ`, so the
//! closed form uses `C₀ = ρ`. The numeric side integrates the discretised `h`
//! over actual gauge shells, which tests that constant independently.

use super::{InequalityCase, Relation};
use crate::amalgam::{ball_norm_value, default_mesh};
use crate::boxes::HalfOpenBox;
use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::group::{GroupDescriptor, GroupKind};
use crate::simplefn::SimpleFunction;

const K_CHECK_OCTAVES: i32 = 16;
const K_CHECK_TOLERANCE: f64 = 0.005;
const G_CHECK_OCTAVES: i32 = 14;
const G_CHECK_MESH: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadialKind {
    /// `|y|^{−ρ/θ′}`
    H,
    /// `(γ+γ|x|)^{−ρ/θ′}`
    GLemma,
}

/// One gauge shell `inner ≤ |x| < outer` with its constant value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Shell {
    pub inner: f64,
    pub outer: f64,
    pub value: f64,
    /// Sup-norm distance between the profile and `value` on the shell.
    pub oscillation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RadialFunction {
    pub kind: RadialKind,
    pub f: SimpleFunction,
    pub shells: Vec<Shell>,
}

impl RadialFunction {
    pub fn max_oscillation(&self) -> f64 {
        self.shells.iter().map(|s| s.oscillation).fold(0.0, f64::max)
    }

    pub fn max_relative_oscillation(&self) -> f64 {
        self.shells.iter().map(|s| s.oscillation / s.value).fold(0.0, f64::max)
    }

    /// Supremum of the profile over the truncation range.
    pub fn sup(&self) -> f64 {
        self.shells.iter().map(|s| s.value + s.oscillation).fold(0.0, f64::max)
    }
}

fn theta_prime(theta: f64) -> f64 {
    theta / (theta - 1.0)
}

fn profile(g: &GroupDescriptor, kind: RadialKind, s: f64) -> impl Fn(f64) -> f64 + '_ {
    move |r: f64| match kind {
        RadialKind::H => r.powf(-s),
        RadialKind::GLemma => (g.gamma + g.gamma * r).powf(-s),
    }
}

fn gauge_box(g: &GroupDescriptor, r: f64) -> Result<HalfOpenBox> {
    HalfOpenBox::centered(&vec![0.0; g.dim()], &g.ball_half_extents(r))
}

/// Piecewise-constant version of `h` or `g` on gauge shells between the truncation radii.
///
/// Shell widths are `mesh · max(r, 1)`, i.e. geometric away from the origin.
/// Gauge balls must be coordinate boxes, which rules out the Heisenberg group.
pub fn radial_power_fn(
    g: &GroupDescriptor,
    kind: RadialKind,
    theta: f64,
    truncation: (f64, f64),
    mesh: f64,
) -> Result<RadialFunction> {
    if g.kind == GroupKind::Heisenberg {
        return Err(Error::Unsupported("gauge shells of the Heisenberg group are not boxes".into()));
    }
    if !(theta > 1.0 && theta.is_finite()) {
        return Err(Error::InvalidExponent(format!("radial profile needs 1 < theta < inf, got {theta}")));
    }
    let (inner, outer) = truncation;
    let min_inner = if kind == RadialKind::H { f64::MIN_POSITIVE } else { 0.0 };
    if !(inner >= min_inner && inner < outer && outer.is_finite()) {
        return Err(Error::Domain(format!("bad truncation [{inner}, {outer})")));
    }
    if !(mesh > 0.0 && mesh <= 1.0) {
        return Err(Error::Domain(format!("radial mesh must lie in (0, 1], got {mesh}")));
    }
    let s = g.rho / theta_prime(theta);
    let phi = profile(g, kind, s);
    let scale = if kind == RadialKind::H { 0.0 } else { 1.0 };
    let mut shells = Vec::new();
    let mut cells = Vec::new();
    let mut r0 = inner;
    while r0 < outer {
        let r1 = (r0 + mesh * r0.max(scale)).min(outer);
        let value = phi(0.5 * (r0 + r1));
        let oscillation = (phi(r0) - value).max(value - phi(r1));
        shells.push(Shell { inner: r0, outer: r1, value, oscillation });
        let big = gauge_box(g, r1)?;
        let pieces = if r0 > 0.0 { big.difference(&gauge_box(g, r0)?) } else { vec![big] };
        cells.extend(pieces.into_iter().map(|b| (b, value)));
        r0 = r1;
    }
    Ok(RadialFunction { kind, f: SimpleFunction::new(g.clone(), cells)?, shells })
}

fn check_lemma_exponents(theta: f64, p: f64) -> Result<()> {
    if !(1.0 <= p && p < theta && theta.is_finite()) {
        return Err(Error::InvalidExponent(format!("need 1 <= p < theta < inf, got p={p}, theta={theta}")));
    }
    Ok(())
}

/// `k(θ;p;a)` in closed form with `C₀ = ρ`; `a^{−ρ/θ′}` when `p = 1`.
pub fn k_closed_form(theta: f64, p: f64, a: f64, rho: f64) -> Result<f64> {
    check_lemma_exponents(theta, p)?;
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::Domain(format!("k(theta;p;a) needs a > 0, got {a}")));
    }
    let tp = theta_prime(theta);
    if p == 1.0 {
        return Ok(a.powf(-rho / tp));
    }
    let pp = p / (p - 1.0);
    let d = rho * (pp / tp - 1.0);
    Ok((rho * a.powf(-d) / d).powf(pp.recip()))
}

/// Numeric `‖hχ_{G∖B(e,a)}‖_{p′}` against the closed form.
///
/// `h` is integrated over shells up to `a·2^16`; the analytic tail beyond is added back.
pub fn k_constant_check(theta: f64, p: f64, a: f64, g: &GroupDescriptor) -> Result<InequalityCase> {
    let closed = k_closed_form(theta, p, a, g.rho)?;
    let context = format!("group={} theta={theta} p={p} a={a} C0={}", g.name(), g.rho);
    let id = format!("k/{}/theta={theta}/p={p}/a={a}", g.name());
    if p == 1.0 {
        let h = radial_power_fn(g, RadialKind::H, theta, (a, 2.0 * a), 0.01)?;
        return Ok(InequalityCase::new(id, Relation::Approx, h.sup(), closed, 1.0, K_CHECK_TOLERANCE * closed, context));
    }
    let b = a * 2f64.powi(K_CHECK_OCTAVES);
    let mesh = if g.dim() == 1 { 0.002 } else { 0.005 };
    let h = radial_power_fn(g, RadialKind::H, theta, (a, b), mesh)?;
    let pp = p / (p - 1.0);
    let d = g.rho * (pp / theta_prime(theta) - 1.0);
    let body = h.f.lebesgue_norm(Exponent::of(pp)).powf(pp);
    let tail = g.rho * b.powf(-d) / d;
    let numeric = (body + tail).powf(pp.recip());
    Ok(InequalityCase::new(
        id,
        Relation::Approx,
        numeric,
        closed,
        1.0,
        K_CHECK_TOLERANCE * closed,
        format!("{context} truncation={b:e} tail={tail:e}"),
    ))
}

fn check_g_lemma_ranges(theta: f64, p: f64, eps: f64, r: f64, g: &GroupDescriptor) -> Result<()> {
    check_lemma_exponents(theta, p)?;
    if !(eps > 0.0 && eps < 2.0 * g.gamma) {
        return Err(Error::Domain(format!("need 0 < eps < 2 gamma, got {eps}")));
    }
    if !(r > 0.0 && r < eps / (2.0 * g.gamma)) {
        return Err(Error::Domain(format!("need 0 < r < eps/(2 gamma), got r={r}")));
    }
    Ok(())
}

/// `_{B(e,r)}‖gχ_{G∖B(e,ε)}‖_{q′,p′}` for the discretised `g`, with its relative
/// discretisation allowance.
pub fn g_lemma_lhs(theta: f64, p: f64, q: Exponent, eps: f64, r: f64, g: &GroupDescriptor) -> Result<(f64, f64)> {
    check_g_lemma_ranges(theta, p, eps, r, g)?;
    let outer = eps * 2f64.powi(G_CHECK_OCTAVES);
    let gf = radial_power_fn(g, RadialKind::GLemma, theta, (eps, outer), G_CHECK_MESH)?;
    let pp = Exponent::of(p).conjugate();
    let lhs = ball_norm_value(&gf.f, r, q.conjugate(), pp, default_mesh(g.kind));
    Ok((lhs, gf.max_relative_oscillation()))
}

/// The local bound `_{B(e,r)}‖gχ_{G∖B(e,ε)}‖_{q′,p′} ≤ k(θ;p;ε/2γ) λ(B(e,r))^{1/q′}`.
///
/// When `q = 1` the right side is `k(θ;p;ε/2γ)` alone.
pub fn g_lemma_check(
    theta: f64,
    p: f64,
    q: Exponent,
    eps: f64,
    r: f64,
    g: &GroupDescriptor,
) -> Result<InequalityCase> {
    let (lhs, allowance) = g_lemma_lhs(theta, p, q, eps, r, g)?;
    let k = k_closed_form(theta, p, eps / (2.0 * g.gamma), g.rho)?;
    let qq = q.conjugate();
    let rhs = k * g.ball_measure(r)?.powf(qq.recip());
    Ok(InequalityCase::new(
        format!("g-lemma/{}/theta={theta}/p={p}/q={q}/eps={eps}/r={r}", g.name()),
        Relation::Le,
        lhs,
        rhs,
        1.0,
        allowance * rhs,
        format!("group={} q'={qq} k={k:e} truncation={:e}", g.name(), eps * 2f64.powi(G_CHECK_OCTAVES)),
    ))
}
