//! Half-open coordinate boxes `Π [lo_i, hi_i)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HalfOpenBox<S: Scalar = f64> {
    pub lo: Vec<S>,
    pub hi: Vec<S>,
}

impl<S: Scalar> HalfOpenBox<S> {
    pub fn new(lo: Vec<S>, hi: Vec<S>) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(Error::DimensionMismatch { expected: lo.len(), got: hi.len() });
        }
        for (a, b) in lo.iter().zip(&hi) {
            if !a.is_finite() || !b.is_finite() || !(a < b) {
                return Err(Error::Domain(format!("empty or non-finite box side [{a}, {b})")));
            }
        }
        Ok(Self { lo, hi })
    }

    pub fn interval(lo: S, hi: S) -> Result<Self> {
        Self::new(vec![lo], vec![hi])
    }

    /// Box centred at `center` with half side lengths `half`.
    pub fn centered(center: &[S], half: &[S]) -> Result<Self> {
        let lo = center.iter().zip(half).map(|(c, h)| *c - *h).collect();
        let hi = center.iter().zip(half).map(|(c, h)| *c + *h).collect();
        Self::new(lo, hi)
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn width(&self, axis: usize) -> S {
        self.hi[axis] - self.lo[axis]
    }

    pub fn volume(&self) -> S {
        (0..self.dim()).map(|i| self.width(i)).fold(S::one(), |a, b| a * b)
    }

    pub fn center(&self) -> Vec<S> {
        self.lo.iter().zip(&self.hi).map(|(a, b)| (*a + *b) * S::half()).collect()
    }

    pub fn contains(&self, x: &[S]) -> bool {
        x.len() == self.dim()
            && x.iter().zip(self.lo.iter().zip(&self.hi)).all(|(v, (a, b))| *a <= *v && *v < *b)
    }

    /// Whether `other` lies inside `self` (closure-wise on the upper faces).
    pub fn contains_box(&self, other: &Self) -> bool {
        (0..self.dim()).all(|i| self.lo[i] <= other.lo[i] && other.hi[i] <= self.hi[i])
    }

    pub fn intersect(&self, other: &Self) -> Option<Self> {
        let mut lo = Vec::with_capacity(self.dim());
        let mut hi = Vec::with_capacity(self.dim());
        for i in 0..self.dim() {
            let a = self.lo[i].max(other.lo[i]);
            let b = self.hi[i].min(other.hi[i]);
            if !(a < b) {
                return None;
            }
            lo.push(a);
            hi.push(b);
        }
        Some(Self { lo, hi })
    }

    pub fn overlaps(&self, other: &Self) -> bool {
        (0..self.dim()).all(|i| self.lo[i].max(other.lo[i]) < self.hi[i].min(other.hi[i]))
    }

    /// `self \ other` as at most `2·dim` disjoint boxes.
    pub fn difference(&self, other: &Self) -> Vec<Self> {
        let Some(mid) = self.intersect(other) else {
            return vec![self.clone()];
        };
        let mut out = Vec::new();
        let mut rest = self.clone();
        for i in 0..self.dim() {
            if rest.lo[i] < mid.lo[i] {
                let mut piece = rest.clone();
                piece.hi[i] = mid.lo[i];
                out.push(piece);
                rest.lo[i] = mid.lo[i];
            }
            if mid.hi[i] < rest.hi[i] {
                let mut piece = rest.clone();
                piece.lo[i] = mid.hi[i];
                out.push(piece);
                rest.hi[i] = mid.hi[i];
            }
        }
        out
    }

    /// Smallest box containing both.
    pub fn hull(&self, other: &Self) -> Self {
        Self {
            lo: self.lo.iter().zip(&other.lo).map(|(a, b)| a.min(*b)).collect(),
            hi: self.hi.iter().zip(&other.hi).map(|(a, b)| a.max(*b)).collect(),
        }
    }

    pub fn corners(&self) -> Vec<Vec<S>> {
        let d = self.dim();
        (0..1usize << d)
            .map(|mask| {
                (0..d)
                    .map(|i| if mask >> i & 1 == 1 { self.hi[i] } else { self.lo[i] })
                    .collect()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(lo: &[f64], hi: &[f64]) -> HalfOpenBox {
        HalfOpenBox::new(lo.to_vec(), hi.to_vec()).unwrap()
    }

    #[test]
    fn difference_partitions_the_box() {
        let a = b(&[0.0, 0.0], &[4.0, 3.0]);
        let c = b(&[1.0, 1.0], &[2.0, 5.0]);
        let parts = a.difference(&c);
        let vol: f64 = parts.iter().map(|p| p.volume()).sum();
        let cut = a.intersect(&c).unwrap().volume();
        assert!((vol + cut - a.volume()).abs() < 1e-12);
        for (i, p) in parts.iter().enumerate() {
            assert!(!p.overlaps(&c));
            for q in &parts[i + 1..] {
                assert!(!p.overlaps(q));
            }
        }
    }

    #[test]
    fn rejects_empty_side() {
        assert!(HalfOpenBox::new(vec![1.0], vec![1.0]).is_err());
        assert!(HalfOpenBox::new(vec![0.0, 0.0], vec![1.0]).is_err());
    }

    #[test]
    fn half_open_membership() {
        let a = b(&[0.0], &[1.0]);
        assert!(a.contains(&[0.0]));
        assert!(!a.contains(&[1.0]));
    }
}
