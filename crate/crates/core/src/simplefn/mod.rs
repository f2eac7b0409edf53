//! Simple functions: finitely many half-open boxes carrying constant values.
//!
//! Every Lebesgue quantity of a simple function is a finite sum, so norms,
//! distribution functions and rearrangements here are computed in closed
//! form. Only `|f|` enters any norm, so values are stored as nonnegative
//! moduli.

mod rearrange;
mod random;
mod spec;

pub use rearrange::StepProfile;
pub use random::gen_random_simple;
pub use spec::{CellSpec, FunctionSpec};

use crate::boxes::HalfOpenBox;
use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::group::GroupDescriptor;
use crate::scalar::Scalar;

/// One constant piece of a simple function.
#[derive(Debug, Clone, PartialEq)]
pub struct Piece<S: Scalar = f64> {
    pub cell: HalfOpenBox<S>,
    /// Haar measure of `cell`.
    pub measure: S,
    pub value: S,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimpleFunction<S: Scalar = f64> {
    group: GroupDescriptor<S>,
    pieces: Vec<Piece<S>>,
}

/// Pointwise operation for [`SimpleFunction::combine`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Combine<S: Scalar = f64> {
    Product,
    Sum,
    Scale(S),
}

impl<S: Scalar> SimpleFunction<S> {
    /// Builds a simple function from disjoint boxes; zero-valued boxes are dropped.
    pub fn new(group: GroupDescriptor<S>, cells: Vec<(HalfOpenBox<S>, S)>) -> Result<Self> {
        let mut pieces = Vec::with_capacity(cells.len());
        for (cell, value) in cells {
            if cell.dim() != group.dim() {
                return Err(Error::DimensionMismatch { expected: group.dim(), got: cell.dim() });
            }
            if !value.is_finite() || value < S::zero() {
                return Err(Error::Domain(format!("cell value must be finite and >= 0, got {value}")));
            }
            if value == S::zero() {
                continue;
            }
            let measure = group.box_measure(&cell.lo, &cell.hi);
            pieces.push(Piece { cell, measure, value });
        }
        if let Some((i, j)) = first_overlap(&pieces) {
            return Err(Error::Domain(format!("cells {i} and {j} overlap")));
        }
        Ok(Self { group, pieces })
    }

    pub fn zero(group: GroupDescriptor<S>) -> Self {
        Self { group, pieces: Vec::new() }
    }

    /// `value · χ_A` for a union `A` of disjoint boxes.
    pub fn indicator(group: GroupDescriptor<S>, boxes: Vec<HalfOpenBox<S>>, value: S) -> Result<Self> {
        Self::new(group, boxes.into_iter().map(|b| (b, value)).collect())
    }

    pub fn group(&self) -> &GroupDescriptor<S> {
        &self.group
    }

    pub fn pieces(&self) -> &[Piece<S>] {
        &self.pieces
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn support_measure(&self) -> S {
        self.pieces.iter().map(|p| p.measure).sum()
    }

    /// Bounding box of the support, `None` for the zero function.
    pub fn support_box(&self) -> Option<HalfOpenBox<S>> {
        let mut it = self.pieces.iter();
        let first = it.next()?.cell.clone();
        Some(it.fold(first, |acc, p| acc.hull(&p.cell)))
    }

    /// Largest homogeneous norm over the support's bounding box.
    pub fn support_radius(&self) -> S {
        self.support_box()
            .map(|b| b.corners().iter().map(|c| self.group.norm_raw(c)).fold(S::zero(), S::max))
            .unwrap_or_else(S::zero)
    }

    pub fn max_value(&self) -> S {
        self.pieces.iter().map(|p| p.value).fold(S::zero(), S::max)
    }

    /// `‖f‖_q`.
    pub fn lebesgue_norm(&self, q: Exponent<S>) -> S {
        match q {
            Exponent::Infinite => self.max_value(),
            Exponent::Finite(q) => {
                let s: S = self.pieces.iter().map(|p| p.measure * p.value.powf(q)).sum();
                s.powf(q.recip())
            }
        }
    }

    /// `λ_f(s) = λ{|f| > s}`.
    pub fn distribution_at(&self, s: S) -> S {
        self.pieces.iter().filter(|p| p.value > s).map(|p| p.measure).sum()
    }

    /// Decreasing rearrangement `f*` as a step profile.
    pub fn rearrangement(&self) -> StepProfile<S> {
        StepProfile::from_levels(self.pieces.iter().map(|p| (p.value, p.measure)))
    }

    /// `‖f‖*_{q,p}`.
    pub fn lorentz_norm(&self, q: Exponent<S>, p: Exponent<S>) -> Result<S> {
        self.rearrangement().lorentz_norm(q, p)
    }

    /// Exact pointwise product, sum or scalar multiple on the common refinement.
    pub fn combine(&self, other: &Self, op: Combine<S>) -> Result<Self> {
        if self.group.kind != other.group.kind {
            return Err(Error::GroupMismatch(self.group.name().into(), other.group.name().into()));
        }
        let cells = match op {
            Combine::Scale(c) => {
                if !c.is_finite() {
                    return Err(Error::Domain("non-finite scale".into()));
                }
                self.pieces.iter().map(|p| (p.cell.clone(), p.value * c.abs())).collect()
            }
            Combine::Product => {
                let mut out = Vec::new();
                for a in &self.pieces {
                    for b in &other.pieces {
                        if let Some(cell) = a.cell.intersect(&b.cell) {
                            out.push((cell, a.value * b.value));
                        }
                    }
                }
                out
            }
            Combine::Sum => {
                let mut out = Vec::new();
                for a in &self.pieces {
                    for b in &other.pieces {
                        if let Some(cell) = a.cell.intersect(&b.cell) {
                            out.push((cell, a.value + b.value));
                        }
                    }
                }
                out.extend(exclusive_parts(&self.pieces, &other.pieces));
                out.extend(exclusive_parts(&other.pieces, &self.pieces));
                out
            }
        };
        Self::new(self.group.clone(), cells)
    }

    pub fn scaled(&self, c: S) -> Self {
        let pieces = self
            .pieces
            .iter()
            .filter(|_| c != S::zero())
            .map(|p| Piece { value: p.value * c.abs(), ..p.clone() })
            .collect();
        Self { group: self.group.clone(), pieces }
    }
}

/// Parts of `pieces` not covered by any of `others`.
fn exclusive_parts<S: Scalar>(pieces: &[Piece<S>], others: &[Piece<S>]) -> Vec<(HalfOpenBox<S>, S)> {
    let mut out = Vec::new();
    for a in pieces {
        let mut rest = vec![a.cell.clone()];
        for b in others.iter().filter(|b| b.cell.overlaps(&a.cell)) {
            rest = rest.iter().flat_map(|r| r.difference(&b.cell)).collect();
        }
        out.extend(rest.into_iter().map(|r| (r, a.value)));
    }
    out
}

/// Sweep along the first axis; returns the first overlapping pair found.
fn first_overlap<S: Scalar>(pieces: &[Piece<S>]) -> Option<(usize, usize)> {
    let mut order: Vec<usize> = (0..pieces.len()).collect();
    order.sort_by(|&a, &b| pieces[a].cell.lo[0].partial_cmp(&pieces[b].cell.lo[0]).unwrap());
    let mut active: Vec<usize> = Vec::new();
    for &i in &order {
        let lo = pieces[i].cell.lo[0];
        active.retain(|&j| pieces[j].cell.hi[0] > lo);
        if let Some(&j) = active.iter().find(|&&j| pieces[j].cell.overlaps(&pieces[i].cell)) {
            return Some((j.min(i), j.max(i)));
        }
        active.push(i);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line() -> GroupDescriptor {
        GroupDescriptor::real_line()
    }

    fn iv(a: f64, b: f64) -> HalfOpenBox {
        HalfOpenBox::interval(a, b).unwrap()
    }

    /// cells of λ-measure 1 (value 3) and 2 (value 1) on the line
    fn two_cells() -> SimpleFunction {
        SimpleFunction::new(line(), vec![(iv(0.0, 2.0), 3.0), (iv(2.0, 6.0), 1.0)]).unwrap()
    }

    #[test]
    fn lebesgue_examples() {
        let one = SimpleFunction::new(line(), vec![(iv(0.0, 2.0), 1.0)]).unwrap();
        assert_eq!(one.lebesgue_norm(Exponent::of(2.0)), 1.0);
        let f = two_cells();
        assert_eq!(f.lebesgue_norm(Exponent::of(1.0)), 5.0);
        assert_eq!(f.lebesgue_norm(Exponent::inf()), 3.0);
    }

    #[test]
    fn distribution_examples() {
        let f = two_cells();
        assert_eq!(f.distribution_at(2.0), 1.0);
        assert_eq!(f.distribution_at(0.0), 3.0);
        assert_eq!(f.distribution_at(3.0), 0.0);
    }

    #[test]
    fn rejects_overlap_and_bad_values() {
        assert!(SimpleFunction::new(line(), vec![(iv(0.0, 2.0), 1.0), (iv(1.0, 3.0), 1.0)]).is_err());
        assert!(SimpleFunction::new(line(), vec![(iv(0.0, 2.0), -1.0)]).is_err());
        let plane = GroupDescriptor::aniso_plane();
        assert!(SimpleFunction::new(plane, vec![(iv(0.0, 1.0), 1.0)]).is_err());
        // touching half-open cells are disjoint
        assert!(SimpleFunction::new(line(), vec![(iv(0.0, 1.0), 1.0), (iv(1.0, 2.0), 1.0)]).is_ok());
    }

    #[test]
    fn combine_examples() {
        let f = two_cells();
        let zero = SimpleFunction::zero(line());
        assert!(f.combine(&zero, Combine::Product).unwrap().is_zero());

        let chi = SimpleFunction::indicator(line(), vec![iv(0.0, 1.0), iv(3.0, 4.0)], 1.0).unwrap();
        let sq = chi.combine(&chi, Combine::Product).unwrap();
        assert_eq!(sq.support_measure(), chi.support_measure());
        assert!(sq.pieces().iter().all(|p| p.value == 1.0));

        let cell = SimpleFunction::new(line(), vec![(iv(0.0, 1.0), 3.0)]).unwrap();
        let six = cell.combine(&cell, Combine::Scale(2.0)).unwrap();
        assert_eq!(six.pieces()[0].value, 6.0);
    }

    #[test]
    fn sum_on_common_refinement() {
        let f = SimpleFunction::new(line(), vec![(iv(0.0, 2.0), 1.0)]).unwrap();
        let g = SimpleFunction::new(line(), vec![(iv(1.0, 3.0), 2.0)]).unwrap();
        let h = f.combine(&g, Combine::Sum).unwrap();
        assert!((h.lebesgue_norm(Exponent::of(1.0)) - (1.0 + 2.0)).abs() < 1e-15);
        assert_eq!(h.max_value(), 3.0);
        assert_eq!(h.distribution_at(2.5), 0.5);
    }

    #[test]
    fn combine_rejects_group_mismatch() {
        let f = two_cells();
        let g = SimpleFunction::zero(GroupDescriptor::heisenberg());
        assert!(matches!(f.combine(&g, Combine::Sum), Err(Error::GroupMismatch(..))));
    }
}
