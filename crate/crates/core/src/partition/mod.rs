//! Uniform `U`–`U²` partitions at scale `r`, with `U = B(e, r/(4γ²))`.
//!
//! Every cell is a left translate `c·Q` of one fundamental box `Q` centred at
//! the identity, by the elements `c` of a left coset of a lattice subgroup.
//! On the abelian instances these cells are ordinary coordinate boxes. On the
//! Heisenberg group `Q = [-u,u)² × [-u²/4, u²/4)` and the lattice is
//! `{(ms, ns, kh)}` with `s = 2u`, `h = u²/2`; it is closed under the group law
//! because `s²/2 = 4h`, and its translates of `Q` are sheared boxes.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::boxes::HalfOpenBox;
use crate::error::{Error, Result};
use crate::group::{GroupDescriptor, GroupKind};
use crate::measure::{golden_min, interval_overlap, sheared_overlap_integral};
use crate::scalar::Scalar;

/// Integer lattice coordinates of a cell.
pub type CellIndex = Vec<i64>;

/// One cell `anchor·Q` with its distinguished point `x_E`.
#[derive(Debug, Clone, PartialEq)]
pub struct Cell<S: Scalar = f64> {
    pub index: CellIndex,
    pub anchor: Vec<S>,
    pub base: Vec<S>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct UniformPartition<S: Scalar = f64> {
    group: GroupDescriptor<S>,
    r: S,
    u_radius: S,
    tile: HalfOpenBox<S>,
    steps: Vec<S>,
    origin: Vec<S>,
    base_shift: Vec<S>,
    window: Option<HalfOpenBox<S>>,
}

/// Outcome of [`UniformPartition::validate`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub cells_checked: usize,
    pub probes: usize,
    pub failures: Vec<String>,
}

const MAX_REPORTED_FAILURES: usize = 16;

impl<S: Scalar> UniformPartition<S> {
    /// The partition `π_r` tiling `window`, with cells aligned to its lower corner.
    pub fn build_pi_r(group: &GroupDescriptor<S>, r: S, window: &HalfOpenBox<S>) -> Result<Self> {
        let mut p = Self::global(group, r)?;
        if window.dim() != group.dim() {
            return Err(Error::DimensionMismatch { expected: group.dim(), got: window.dim() });
        }
        let slack = S::one() - S::lit(1e-12);
        if (0..group.dim()).any(|i| window.width(i) < p.steps[i] * slack) {
            return Err(Error::DegenerateWindow);
        }
        p.origin = window.lo.iter().zip(&p.tile.hi).map(|(l, h)| *l + *h).collect();
        p.window = Some(window.clone());
        Ok(p)
    }

    /// The partition `π_r` of the whole group, with a cell centred at the identity.
    pub fn global(group: &GroupDescriptor<S>, r: S) -> Result<Self> {
        if !(r > S::zero()) || !r.is_finite() {
            return Err(Error::Domain(format!("partition scale must be positive, got {r}")));
        }
        let u = r / (S::lit(4.0) * group.gamma * group.gamma);
        let (half, steps) = match group.kind {
            GroupKind::RealLine => (vec![u], vec![u + u]),
            GroupKind::AnisoPlane => (vec![u, u * u], vec![u + u, S::two() * u * u]),
            GroupKind::Heisenberg => {
                let q3 = u * u * S::lit(0.25);
                (vec![u, u, q3], vec![u + u, u + u, q3 + q3])
            }
        };
        let tile = HalfOpenBox::centered(&vec![S::zero(); half.len()], &half)?;
        Ok(Self {
            group: group.clone(),
            r,
            u_radius: u,
            tile,
            steps,
            origin: vec![S::zero(); group.dim()],
            base_shift: vec![S::zero(); group.dim()],
            window: None,
        })
    }

    /// Moves every base point to `anchor·shift`; used to exhibit invalid partitions.
    pub fn with_base_shift(mut self, shift: Vec<S>) -> Result<Self> {
        if shift.len() != self.group.dim() {
            return Err(Error::DimensionMismatch { expected: self.group.dim(), got: shift.len() });
        }
        self.base_shift = shift;
        Ok(self)
    }

    pub fn group(&self) -> &GroupDescriptor<S> {
        &self.group
    }

    pub fn r(&self) -> S {
        self.r
    }

    pub fn u_radius(&self) -> S {
        self.u_radius
    }

    /// Radius of a ball containing `V = U²`.
    pub fn v_radius(&self) -> S {
        S::two() * self.group.gamma * self.u_radius
    }

    pub fn tile(&self) -> &HalfOpenBox<S> {
        &self.tile
    }

    pub fn window(&self) -> Option<&HalfOpenBox<S>> {
        self.window.as_ref()
    }

    /// Haar measure shared by all cells.
    pub fn cell_measure(&self) -> S {
        self.group.box_measure(&self.tile.lo, &self.tile.hi)
    }

    pub fn anchor(&self, index: &[i64]) -> Vec<S> {
        let step: Vec<S> = index.iter().zip(&self.steps).map(|(k, s)| S::lit(*k as f64) * *s).collect();
        self.group.compose_raw(&self.origin, &step)
    }

    pub fn cell(&self, index: &[i64]) -> Cell<S> {
        let anchor = self.anchor(index);
        let base = self.group.compose_raw(&anchor, &self.base_shift);
        Cell { index: index.to_vec(), anchor, base }
    }

    fn to_tile_coords(&self, anchor: &[S], z: &[S]) -> Vec<S> {
        let inv: Vec<S> = anchor.iter().map(|c| -*c).collect();
        self.group.compose_raw(&inv, z)
    }

    /// Whether `z` lies in the cell with the given index.
    pub fn cell_contains(&self, index: &[i64], z: &[S]) -> bool {
        self.tile.contains(&self.to_tile_coords(&self.anchor(index), z))
    }

    /// Index of the unique cell containing `z`.
    pub fn locate(&self, z: &[S]) -> CellIndex {
        let w = self.to_tile_coords(&self.origin, z);
        let idx = |x: S, i: usize| ((x - self.tile.lo[i]) / self.steps[i]).floor().to_i64().unwrap_or(i64::MAX);
        match self.group.kind {
            GroupKind::Heisenberg => {
                let m = idx(w[0], 0);
                let n = idx(w[1], 1);
                let (ms, ns) = (S::lit(m as f64) * self.steps[0], S::lit(n as f64) * self.steps[1]);
                let t = w[2] - S::half() * (ms * w[1] - ns * w[0]);
                vec![m, n, idx(t, 2)]
            }
            _ => w.iter().enumerate().map(|(i, x)| idx(*x, i)).collect(),
        }
    }

    fn axis_range(&self, i: usize, origin: S, lo: S, hi: S) -> (i64, i64) {
        let step = self.steps[i];
        let kmin = ((lo - origin - self.tile.hi[i]) / step).floor() + S::one();
        let kmax = ((hi - origin - self.tile.lo[i]) / step).ceil() - S::one();
        (kmin.to_i64().unwrap_or(i64::MIN), kmax.to_i64().unwrap_or(i64::MAX))
    }

    /// Indices of all cells that may meet `b` (a superset; exact tests filter it).
    pub fn cells_meeting_box(&self, b: &HalfOpenBox<S>) -> Vec<CellIndex> {
        let d = self.group.dim();
        match self.group.kind {
            GroupKind::Heisenberg => {
                let (m0, m1) = self.axis_range(0, self.origin[0], b.lo[0], b.hi[0]);
                let (n0, n1) = self.axis_range(1, self.origin[1], b.lo[1], b.hi[1]);
                let mut out = Vec::new();
                for m in m0..=m1 {
                    for n in n0..=n1 {
                        let col = self.anchor(&[m, n, 0]);
                        let xs = (b.lo[0].max(col[0] + self.tile.lo[0]), b.hi[0].min(col[0] + self.tile.hi[0]));
                        let ys = (b.lo[1].max(col[1] + self.tile.lo[1]), b.hi[1].min(col[1] + self.tile.hi[1]));
                        if !(xs.1 > xs.0) || !(ys.1 > ys.0) {
                            continue;
                        }
                        // t-offset of the sheared cell over this rectangle
                        let shear = |x: S, y: S| S::half() * (col[0] * y - col[1] * x);
                        let corners = [shear(xs.0, ys.0), shear(xs.0, ys.1), shear(xs.1, ys.0), shear(xs.1, ys.1)];
                        let smin = corners.iter().copied().fold(S::infinity(), S::min);
                        let smax = corners.iter().copied().fold(S::neg_infinity(), S::max);
                        let (k0, k1) = (
                            ((b.lo[2] - col[2] - self.tile.hi[2] - smax) / self.steps[2]).floor(),
                            ((b.hi[2] - col[2] - self.tile.lo[2] - smin) / self.steps[2]).ceil(),
                        );
                        for k in k0.to_i64().unwrap()..=k1.to_i64().unwrap() {
                            out.push(vec![m, n, k]);
                        }
                    }
                }
                out
            }
            _ => {
                let ranges: Vec<(i64, i64)> =
                    (0..d).map(|i| self.axis_range(i, self.origin[i], b.lo[i], b.hi[i])).collect();
                let mut out: Vec<CellIndex> = vec![vec![]];
                for (lo, hi) in ranges {
                    out = out
                        .into_iter()
                        .flat_map(|prefix| {
                            (lo..=hi).map(move |k| {
                                let mut v = prefix.clone();
                                v.push(k);
                                v
                            })
                        })
                        .collect();
                }
                out
            }
        }
    }

    /// Exact Haar measure of `b ∩ E` for the cell `E` with the given index.
    pub fn intersection_measure(&self, index: &[i64], b: &HalfOpenBox<S>) -> S {
        let a = self.anchor(index);
        match self.group.kind {
            GroupKind::Heisenberg => {
                let xs = (b.lo[0].max(a[0] + self.tile.lo[0]), b.hi[0].min(a[0] + self.tile.hi[0]));
                let ys = (b.lo[1].max(a[1] + self.tile.lo[1]), b.hi[1].min(a[1] + self.tile.hi[1]));
                let vol = sheared_overlap_integral(
                    xs,
                    ys,
                    (b.lo[2], b.hi[2]),
                    (self.tile.lo[2], self.tile.hi[2]),
                    -S::half() * a[1],
                    S::half() * a[0],
                    a[2],
                );
                self.group.measure_scale * vol
            }
            _ => (0..a.len()).fold(self.group.measure_scale, |acc, i| {
                acc * interval_overlap(b.lo[i], b.hi[i], a[i] + self.tile.lo[i], a[i] + self.tile.hi[i])
            }),
        }
    }

    /// Cells with positive measure inside the window, in lexicographic index order.
    pub fn cells(&self) -> Vec<Cell<S>> {
        let w = self.probe_window();
        let mut idx: Vec<CellIndex> = self
            .cells_meeting_box(&w)
            .into_iter()
            .filter(|i| self.intersection_measure(i, &w) > S::zero())
            .collect();
        idx.sort();
        idx.iter().map(|i| self.cell(i)).collect()
    }

    /// The window, or a few cells around the identity for a global partition.
    fn probe_window(&self) -> HalfOpenBox<S> {
        match &self.window {
            Some(w) => w.clone(),
            None => {
                let half: Vec<S> = self.steps.iter().map(|s| *s * S::lit(2.5)).collect();
                HalfOpenBox::centered(&vec![S::zero(); half.len()], &half).expect("positive steps")
            }
        }
    }

    /// Whether `w` lies in `U² = U·U`.
    ///
    /// `w = (w/2)(w/2)` on all three instances, which certifies most points; a
    /// random search over `v ∈ U` with `v⁻¹w ∈ U` handles the rest.
    fn in_u_squared<R: Rng>(&self, w: &[S], rng: &mut R) -> bool {
        let u = self.u_radius;
        let half: Vec<S> = w.iter().map(|c| *c * S::half()).collect();
        if self.group.norm_raw(&half) < u {
            return true;
        }
        (0..256).any(|_| {
            let v = self.group.sample_ball(rng, u);
            let inv: Vec<S> = v.coords.iter().map(|c| -*c).collect();
            self.group.norm_raw(&self.group.compose_raw(&inv, w)) < u
        })
    }

    /// Probes disjointness, coverage and `x_E U ⊂ E ⊂ x_E U²` at random points.
    pub fn validate(&self, samples: usize) -> ValidationReport {
        self.validate_seeded(samples, 0x5eed)
    }

    pub fn validate_seeded(&self, samples: usize, seed: u64) -> ValidationReport {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut failures = Vec::new();
        let mut fail = |msg: String| {
            if failures.len() < MAX_REPORTED_FAILURES {
                failures.push(msg);
            }
        };
        let window = self.probe_window();
        let cells = self.cells();
        let known: HashSet<CellIndex> = cells.iter().map(|c| c.index.clone()).collect();
        let eps = S::lit(1e-9);
        let tiny = |z: &[S]| {
            let hi: Vec<S> = z.iter().map(|c| *c + eps * (S::one() + c.abs())).collect();
            HalfOpenBox::new(z.to_vec(), hi).expect("finite probe")
        };
        let owners = |z: &[S]| -> Vec<CellIndex> {
            self.cells_meeting_box(&tiny(z)).into_iter().filter(|i| self.cell_contains(i, z)).collect()
        };
        let mut probes = 0;
        for cell in &cells {
            let inv_base: Vec<S> = cell.base.iter().map(|c| -*c).collect();
            for _ in 0..samples {
                probes += 1;
                let v = self.group.sample_ball(&mut rng, self.u_radius);
                let z = self.group.compose_raw(&cell.base, &v.coords);
                if !self.cell_contains(&cell.index, &z) {
                    fail(format!("cell {:?}: x_E·U leaves the cell at {:?}", cell.index, z));
                }
                let q: Vec<S> = (0..self.tile.dim())
                    .map(|i| self.tile.lo[i] + self.tile.width(i) * S::lit(rng.gen::<f64>()))
                    .collect();
                let z = self.group.compose_raw(&cell.anchor, &q);
                let own = owners(&z);
                if own.len() != 1 || own[0] != cell.index {
                    fail(format!("cell {:?}: point {:?} owned by {:?}", cell.index, z, own));
                }
                let w = self.group.compose_raw(&inv_base, &z);
                if !self.in_u_squared(&w, &mut rng) {
                    fail(format!("cell {:?}: point {:?} outside x_E·U²", cell.index, z));
                }
                let z: Vec<S> = (0..window.dim())
                    .map(|i| window.lo[i] + window.width(i) * S::lit(rng.gen::<f64>()))
                    .collect();
                let own = owners(&z);
                if own.len() != 1 || !known.contains(&own[0]) {
                    fail(format!("window point {:?} covered by {:?}", z, own));
                }
            }
        }
        ValidationReport { valid: failures.is_empty(), cells_checked: cells.len(), probes, failures }
    }

    /// Number of cells meeting the open translate `a·B(e, k_radius)`.
    pub fn count_translate_hits(&self, k_radius: S, a: &[S]) -> Result<usize> {
        if a.len() != self.group.dim() {
            return Err(Error::DimensionMismatch { expected: self.group.dim(), got: a.len() });
        }
        if !(k_radius > S::zero()) {
            return Err(Error::Domain(format!("translate radius must be positive, got {k_radius}")));
        }
        let (lo, hi) = self.group.translate_ball_bounds(a, k_radius);
        let bounds = HalfOpenBox::new(lo, hi)?;
        if let Some(w) = &self.window {
            if !w.contains_box(&bounds) {
                return Err(Error::WindowEscape);
            }
        }
        Ok(self.cells_meeting_box(&bounds).iter().filter(|i| self.translate_hits_cell(i, k_radius, a)).count())
    }

    fn translate_hits_cell(&self, index: &[i64], k: S, a: &[S]) -> bool {
        let c = self.anchor(index);
        match self.group.kind {
            GroupKind::Heisenberg => {
                // min over the closed tile of N⁴(a⁻¹c·q); convex in q, exact in q₃
                let inv: Vec<S> = a.iter().map(|x| -*x).collect();
                let w = self.group.compose_raw(&inv, &c);
                let (t_lo, t_hi) = (self.tile.lo[2], self.tile.hi[2]);
                let k4 = k.powi(4);
                let sixteen = S::lit(16.0);
                let f = |q1: S, q2: S| {
                    let x = w[0] + q1;
                    let y = w[1] + q2;
                    let t0 = w[2] + S::half() * (w[0] * q2 - w[1] * q1);
                    let t = t0 + (-t0).max(t_lo).min(t_hi);
                    let rr = x * x + y * y;
                    rr * rr + sixteen * t * t
                };
                if f(S::zero(), S::zero()) < k4 {
                    return true;
                }
                let inner = |q1: S| golden_min(|q2| f(q1, q2), self.tile.lo[1], self.tile.hi[1], 40).1;
                golden_min(inner, self.tile.lo[0], self.tile.hi[0], 40).1 < k4
            }
            _ => {
                let half = self.group.ball_half_extents(k);
                (0..a.len()).all(|i| a[i] - half[i] < c[i] + self.tile.hi[i] && c[i] + self.tile.lo[i] < a[i] + half[i])
            }
        }
    }
}

/// Ball-containment evaluation of `n_π(K,L) = λ(L K⁻¹ U)/λ(U)`.
pub fn n_pi_bound<S: Scalar>(group: &GroupDescriptor<S>, u_radius: S, k_radius: S, l_radius: S) -> Result<S> {
    for (name, v) in [("U", u_radius), ("K", k_radius), ("L", l_radius)] {
        if !(v > S::zero()) || !v.is_finite() {
            return Err(Error::Domain(format!("{name} radius must be positive, got {v}")));
        }
    }
    let g = group.gamma;
    let outer = g * (g * (l_radius + k_radius) + u_radius);
    Ok(group.ball_measure(outer)? / group.ball_measure(u_radius)?)
}

#[cfg(test)]
mod tests;
