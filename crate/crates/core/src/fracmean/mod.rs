//! Fractional-mean norms `‖f‖_{q,p,α}` over a finite radius grid.
//!
//! The partition form is `sup_r λ(B(e,r))^{1/α−1/q} ‖f‖^{π_r}_{q,p}` and the ball
//! form is `sup_r λ(B(e,r))^{1/α−1/q−1/p} _{B(e,r)}‖f‖_{q,p}`; here the sup runs
//! over a geometric grid of radii and `π_r` is the global partition anchored at
//! the identity.

use std::fmt;

use rayon::prelude::*;

use crate::amalgam::{ball_norm_value, partition_norm_at, Form};
use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::scalar::Scalar;
use crate::simplefn::SimpleFunction;

/// Values above this are reported as numerically divergent.
pub const DIVERGENCE_CAP: f64 = 1e12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    /// `q ≤ α ≤ p`
    Nontrivial,
    /// `α < q`: the space is `{0}`, weights blow up as `r → ∞`.
    DegenerateLow,
    /// `p < α`: the space is `{0}`, weights blow up as `r → 0`.
    DegenerateHigh,
}

impl Classification {
    pub fn name(self) -> &'static str {
        match self {
            Classification::Nontrivial => "nontrivial",
            Classification::DegenerateLow => "degenerate-low",
            Classification::DegenerateHigh => "degenerate-high",
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentTriple<S: Scalar = f64> {
    pub q: Exponent<S>,
    pub p: Exponent<S>,
    pub alpha: Exponent<S>,
}

impl<S: Scalar> ExponentTriple<S> {
    pub fn new(q: Exponent<S>, p: Exponent<S>, alpha: Exponent<S>) -> Self {
        Self { q, p, alpha }
    }

    /// Classification by reciprocals, so `∞` compares correctly.
    pub fn classify(&self) -> Classification {
        let (q, p, a) = (self.q.recip(), self.p.recip(), self.alpha.recip());
        if a > q {
            Classification::DegenerateLow
        } else if p > a {
            Classification::DegenerateHigh
        } else {
            Classification::Nontrivial
        }
    }

    /// `ρ(1/α − 1/q)`, the exponent of `r` in the partition-form weight.
    pub fn partition_weight_exponent(&self, rho: S) -> S {
        rho * (self.alpha.recip() - self.q.recip())
    }

    /// `ρ(1/α − 1/q − 1/p)`, the exponent of `r` in the ball-form weight.
    pub fn ball_weight_exponent(&self, rho: S) -> S {
        rho * (self.alpha.recip() - self.q.recip() - self.p.recip())
    }

    /// `q = ∞` with finite `α` relies on the `1/∞ = 0` convention.
    pub fn uses_infinite_q_convention(&self) -> bool {
        self.q.is_infinite() && self.alpha.is_finite()
    }
}

impl<S: Scalar> fmt::Display for ExponentTriple<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.q, self.p, self.alpha)
    }
}

/// The Hölder conjugate `x/(x−1)`.
pub fn conjugate<S: Scalar>(x: Exponent<S>) -> Exponent<S> {
    x.conjugate()
}

/// Radii `2^{k/m}` lying in `[r_min, r_max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadiusGrid<S: Scalar = f64> {
    pub r_min: S,
    pub r_max: S,
    pub steps_per_octave: u32,
}

impl<S: Scalar> RadiusGrid<S> {
    pub fn new(r_min: S, r_max: S, steps_per_octave: u32) -> Result<Self> {
        if !(r_min > S::zero()) || !r_max.is_finite() || !(r_min < r_max) {
            return Err(Error::Domain(format!("radius grid needs 0 < r_min < r_max, got [{r_min}, {r_max}]")));
        }
        if steps_per_octave == 0 {
            return Err(Error::Domain("radius grid needs at least one step per octave".into()));
        }
        Ok(Self { r_min, r_max, steps_per_octave })
    }

    /// Eight octaves centred on `2 · support_radius`, four steps per octave.
    pub fn default_for(f: &SimpleFunction<S>) -> Self {
        let d = S::two() * f.support_radius();
        let d = if d > S::zero() { d } else { S::one() };
        Self { r_min: d / S::lit(16.0), r_max: d * S::lit(16.0), steps_per_octave: 4 }
    }

    pub fn refined(&self) -> Self {
        Self { steps_per_octave: 2 * self.steps_per_octave, ..*self }
    }

    pub fn radii(&self) -> Vec<S> {
        let m = S::lit(self.steps_per_octave as f64);
        let k0 = (self.r_min.log2() * m - S::lit(1e-9)).ceil().to_i64().unwrap();
        let k1 = (self.r_max.log2() * m + S::lit(1e-9)).floor().to_i64().unwrap();
        (k0..=k1).map(|k| (S::lit(k as f64) / m).exp2()).collect()
    }
}

impl std::str::FromStr for RadiusGrid<f64> {
    type Err = Error;

    /// `rmin:rmax:steps`
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || Error::Domain(format!("radius grid must look like rmin:rmax:steps, got {s:?}"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let lo: f64 = parts[0].trim().parse().map_err(|_| bad())?;
        let hi: f64 = parts[1].trim().parse().map_err(|_| bad())?;
        let m: u32 = parts[2].trim().parse().map_err(|_| bad())?;
        Self::new(lo, hi, m)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FracResult<S: Scalar = f64> {
    pub value: S,
    pub argmax_r: S,
    pub form: Form,
    pub classification: Classification,
    /// `(r, weighted norm)` for every grid radius, ascending in `r`.
    pub profile: Vec<(S, S)>,
    pub divergent: bool,
    pub notes: Vec<String>,
}

fn reduce_profile<S: Scalar>(
    profile: Vec<(S, S)>,
    form: Form,
    t: &ExponentTriple<S>,
) -> FracResult<S> {
    let mut best = (profile.first().map(|x| x.0).unwrap_or_else(S::zero), S::zero());
    for &(r, v) in &profile {
        if v > best.1 {
            best = (r, v);
        }
    }
    let mut notes = Vec::new();
    if t.uses_infinite_q_convention() {
        notes.push("q = inf with finite alpha: weight uses 1/inf = 0".to_string());
    }
    if form == Form::Ball && t.p.is_infinite() {
        notes.push(crate::amalgam::ESS_SUP_NOTE.to_string());
    }
    let divergent = !best.1.is_finite() || best.1 > S::lit(DIVERGENCE_CAP);
    if divergent {
        notes.push(format!("numerically divergent: exceeds {DIVERGENCE_CAP:e}"));
    }
    FracResult {
        value: best.1,
        argmax_r: best.0,
        form,
        classification: t.classify(),
        profile,
        divergent,
        notes,
    }
}

/// Partition-form weighted norm at one radius.
pub fn weighted_partition_norm<S: Scalar>(f: &SimpleFunction<S>, t: &ExponentTriple<S>, r: S) -> Result<S> {
    let w = r.powf(t.partition_weight_exponent(f.group().rho));
    Ok(w * partition_norm_at(f, r, t.q, t.p)?)
}

/// Ball-form weighted norm at one radius.
pub fn weighted_ball_norm<S: Scalar>(f: &SimpleFunction<S>, t: &ExponentTriple<S>, r: S, mesh: S) -> S {
    let w = r.powf(t.ball_weight_exponent(f.group().rho));
    w * ball_norm_value(f, r, t.q, t.p, mesh)
}

pub fn fractional_norm_partition<S: Scalar>(
    f: &SimpleFunction<S>,
    t: &ExponentTriple<S>,
    grid: &RadiusGrid<S>,
) -> Result<FracResult<S>> {
    let profile = grid
        .radii()
        .par_iter()
        .map(|&r| weighted_partition_norm(f, t, r).map(|v| (r, v)))
        .collect::<Result<Vec<_>>>()?;
    Ok(reduce_profile(profile, Form::Partition, t))
}

pub fn fractional_norm_ball<S: Scalar>(
    f: &SimpleFunction<S>,
    t: &ExponentTriple<S>,
    grid: &RadiusGrid<S>,
    mesh: S,
) -> Result<FracResult<S>> {
    if !(mesh > S::zero()) {
        return Err(Error::Domain(format!("mesh must be positive, got {mesh}")));
    }
    let profile: Vec<(S, S)> =
        grid.radii().par_iter().map(|&r| (r, weighted_ball_norm(f, t, r, mesh))).collect();
    Ok(reduce_profile(profile, Form::Ball, t))
}

/// Change of the grid maximum when the grid is refined twofold.
#[derive(Debug, Clone, PartialEq)]
pub struct RefinementReport<S: Scalar = f64> {
    pub coarse: S,
    pub fine: S,
    pub relative_change: S,
}

pub fn grid_refinement<S: Scalar>(
    f: &SimpleFunction<S>,
    t: &ExponentTriple<S>,
    grid: &RadiusGrid<S>,
) -> Result<RefinementReport<S>> {
    let coarse = fractional_norm_partition(f, t, grid)?.value;
    let fine = fractional_norm_partition(f, t, &grid.refined())?.value;
    let relative_change = if fine > S::zero() { (fine - coarse).abs() / fine } else { S::zero() };
    Ok(RefinementReport { coarse, fine, relative_change })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DivergentEnd {
    LargeRadii,
    SmallRadii,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DivergenceReport<S: Scalar = f64> {
    pub end: DivergentEnd,
    /// Least-squares slope of `log(weighted norm)` against `log r` over the last octave.
    pub slope: S,
    /// `ρ(1/α−1/q)` at large radii, `ρ(1/α−1/p)` at small radii.
    pub theoretical: S,
    /// False when `f = 0`.
    pub diverges: bool,
}

/// Log-log growth of the partition-form weighted norm at the divergent end.
pub fn divergence_diagnostic<S: Scalar>(
    f: &SimpleFunction<S>,
    t: &ExponentTriple<S>,
    grid: &RadiusGrid<S>,
) -> Result<DivergenceReport<S>> {
    let rho = f.group().rho;
    let (end, theoretical) = match t.classify() {
        Classification::Nontrivial => {
            return Err(Error::Misuse(format!("divergence diagnostic needs a degenerate triple, got {t}")))
        }
        Classification::DegenerateLow => (DivergentEnd::LargeRadii, t.partition_weight_exponent(rho)),
        Classification::DegenerateHigh => (DivergentEnd::SmallRadii, rho * (t.alpha.recip() - t.p.recip())),
    };
    if f.is_zero() {
        return Ok(DivergenceReport { end, slope: S::zero(), theoretical, diverges: false });
    }
    let radii = grid.radii();
    let m = (grid.steps_per_octave as usize + 1).min(radii.len());
    let window: Vec<S> = match end {
        DivergentEnd::LargeRadii => radii[radii.len() - m..].to_vec(),
        DivergentEnd::SmallRadii => radii[..m].to_vec(),
    };
    let pts = window
        .iter()
        .map(|&r| weighted_partition_norm(f, t, r).map(|v| (r.ln(), v.ln())))
        .collect::<Result<Vec<_>>>()?;
    let n = S::lit(pts.len() as f64);
    let mx = pts.iter().map(|p| p.0).sum::<S>() / n;
    let my = pts.iter().map(|p| p.1).sum::<S>() / n;
    let sxy: S = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: S = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let slope = sxy / sxx;
    let diverges = match end {
        DivergentEnd::LargeRadii => slope > S::zero(),
        DivergentEnd::SmallRadii => slope < S::zero(),
    };
    Ok(DivergenceReport { end, slope, theoretical, diverges })
}

#[cfg(test)]
mod tests;
