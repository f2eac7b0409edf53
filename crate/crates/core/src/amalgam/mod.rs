//! Amalgam norms of simple functions: the partition form `‖f‖^π_{q,p}`, the
//! ball form `_B‖f‖_{q,p}`, and the local mass `(|f|^q ∗ χ_B)(x)`.

mod ball;
pub mod sliding;

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::group::{GroupKind, Point};
use crate::partition::{CellIndex, UniformPartition};
use crate::scalar::Scalar;
use crate::simplefn::SimpleFunction;

pub use ball::{ball_norm_value, default_mesh};

/// Attached to ball-form reports with `p = ∞`.
pub const ESS_SUP_NOTE: &str =
    "p = inf: the ess-sup over centres is computed as a max (exact on the real line, over mesh points elsewhere)";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Form {
    Partition,
    Ball,
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Form::Partition => "partition",
            Form::Ball => "ball",
        })
    }
}

/// How a value was obtained; `mesh` is relative to the ball radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Method<S: Scalar = f64> {
    Exact,
    Quadrature { mesh: S },
}

impl<S: Scalar> Method<S> {
    pub fn name(&self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::Quadrature { .. } => "quadrature",
        }
    }

    pub fn mesh(&self) -> Option<S> {
        match self {
            Method::Exact => None,
            Method::Quadrature { mesh } => Some(*mesh),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AmalgamResult<S: Scalar = f64> {
    pub value: S,
    pub form: Form,
    pub q: Exponent<S>,
    pub p: Exponent<S>,
    pub r: S,
    pub method: Method<S>,
}

/// Per-cell `‖fχ_E‖_q^q` (or `‖fχ_E‖_∞`), keyed by cell index.
fn cell_masses<S: Scalar>(
    f: &SimpleFunction<S>,
    part: &UniformPartition<S>,
    q: Exponent<S>,
) -> BTreeMap<CellIndex, S> {
    let mut acc: BTreeMap<CellIndex, S> = BTreeMap::new();
    for piece in f.pieces() {
        for idx in part.cells_meeting_box(&piece.cell) {
            let m = part.intersection_measure(&idx, &piece.cell);
            if m > S::zero() {
                let e = acc.entry(idx).or_insert_with(S::zero);
                match q {
                    Exponent::Finite(q) => *e += piece.value.powf(q) * m,
                    Exponent::Infinite => *e = e.max(piece.value),
                }
            }
        }
    }
    acc
}

/// `‖f‖^π_{q,p} = (Σ_E ‖fχ_E‖_q^p)^{1/p}`, exact.
pub fn partition_norm<S: Scalar>(
    f: &SimpleFunction<S>,
    part: &UniformPartition<S>,
    q: Exponent<S>,
    p: Exponent<S>,
) -> Result<S> {
    if f.group().kind != part.group().kind {
        return Err(Error::GroupMismatch(f.group().name().into(), part.group().name().into()));
    }
    if let (Some(w), Some(s)) = (part.window(), f.support_box()) {
        if !w.contains_box(&s) {
            return Err(Error::WindowEscape);
        }
    }
    let local = cell_masses(f, part, q).into_values().map(|m| match q {
        Exponent::Finite(q) => m.powf(q.recip()),
        Exponent::Infinite => m,
    });
    Ok(match p {
        Exponent::Infinite => local.fold(S::zero(), S::max),
        Exponent::Finite(p) => local.map(|x| x.powf(p)).sum::<S>().powf(p.recip()),
    })
}

/// `(|f|^q ∗ χ_{B(e,r)})(x) = ∫_{xB(e,r)} |f|^q dλ`.
pub fn conv_q_indicator<S: Scalar>(f: &SimpleFunction<S>, q: Exponent<S>, r: S, x: &Point<S>) -> Result<S> {
    conv_q_indicator_with_mesh(f, q, r, x, default_mesh(f.group().kind))
}

/// As [`conv_q_indicator`]; `mesh` only affects the Heisenberg quadrature.
pub fn conv_q_indicator_with_mesh<S: Scalar>(
    f: &SimpleFunction<S>,
    q: Exponent<S>,
    r: S,
    x: &Point<S>,
    mesh: S,
) -> Result<S> {
    let g = f.group();
    if x.dim() != g.dim() {
        return Err(Error::DimensionMismatch { expected: g.dim(), got: x.dim() });
    }
    check_radius_mesh(r, mesh)?;
    let q = match q {
        Exponent::Finite(q) => q,
        Exponent::Infinite => {
            return Err(Error::Unsupported("|f|^q * χ_B needs a finite q; q = ∞ is handled by ball_norm".into()))
        }
    };
    let x = &x.coords;
    Ok(match g.kind {
        GroupKind::Heisenberg => f
            .pieces()
            .iter()
            .map(|piece| {
                let mut terms = Vec::new();
                ball::heisenberg_terms(&piece.cell, x[0], x[1], r, mesh, piece.value.powf(q) * g.measure_scale, &mut terms);
                terms.iter().map(|t| t.eval(-x[2])).sum::<S>()
            })
            .sum(),
        _ => {
            let half = g.ball_half_extents(r);
            f.pieces()
                .iter()
                .map(|piece| {
                    let len = (0..x.len()).fold(g.measure_scale, |acc, i| {
                        acc * crate::measure::interval_overlap(
                            piece.cell.lo[i],
                            piece.cell.hi[i],
                            x[i] - half[i],
                            x[i] + half[i],
                        )
                    });
                    piece.value.powf(q) * len
                })
                .sum()
        }
    })
}

fn check_radius_mesh<S: Scalar>(r: S, mesh: S) -> Result<()> {
    if !(r > S::zero()) || !r.is_finite() {
        return Err(Error::Domain(format!("ball radius must be positive, got {r}")));
    }
    if !(mesh > S::zero()) || !mesh.is_finite() {
        return Err(Error::Domain(format!("mesh must be positive, got {mesh}")));
    }
    Ok(())
}

/// `_B‖f‖_{q,p}` with `B = B(e,r)`.
pub fn ball_norm<S: Scalar>(
    f: &SimpleFunction<S>,
    r: S,
    q: Exponent<S>,
    p: Exponent<S>,
    mesh: S,
) -> Result<AmalgamResult<S>> {
    check_radius_mesh(r, mesh)?;
    let value = ball_norm_value(f, r, q, p, mesh);
    let method = match f.group().kind {
        GroupKind::RealLine => Method::Exact,
        _ => Method::Quadrature { mesh },
    };
    Ok(AmalgamResult { value, form: Form::Ball, q, p, r, method })
}

/// Partition-form result wrapper for reporting.
pub fn partition_norm_result<S: Scalar>(
    f: &SimpleFunction<S>,
    part: &UniformPartition<S>,
    q: Exponent<S>,
    p: Exponent<S>,
) -> Result<AmalgamResult<S>> {
    Ok(AmalgamResult {
        value: partition_norm(f, part, q, p)?,
        form: Form::Partition,
        q,
        p,
        r: part.r(),
        method: Method::Exact,
    })
}

/// Convenience: the partition norm against the global `π_r`.
pub fn partition_norm_at<S: Scalar>(f: &SimpleFunction<S>, r: S, q: Exponent<S>, p: Exponent<S>) -> Result<S> {
    partition_norm(f, &UniformPartition::global(f.group(), r)?, q, p)
}
