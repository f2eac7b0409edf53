//! Concrete homogeneous groups.
//!
//! Three instances are shipped:
//!
//! | name          | d | dilation exponents | ρ | γ | homogeneous norm                 |
//! |---------------|---|--------------------|---|---|----------------------------------|
//! | `real-line`   | 1 | (1)                | 1 | 1 | `|x|`                            |
//! | `aniso-plane` | 2 | (1, 2)             | 3 | 1 | `max(|x₁|, |x₂|^{1/2})`          |
//! | `heisenberg`  | 3 | (1, 1, 2)          | 4 | 1 | Korányi gauge `((x²+y²)²+16t²)^{1/4}` |
//!
//! Haar measure is coordinate volume times `measure_scale`, where the scale
//! is fixed so that every ball satisfies `λ(B(e,r)) = r^ρ`:
//! `½` on the line, `¼` on the anisotropic plane and `8/π²` on the
//! Heisenberg group (the Korányi unit ball has volume `π²/8`).
//!
//! The Heisenberg law in exponential coordinates is
//! `(x,y,t)·(x',y',t') = (x+x', y+y', t+t'+½(xy'−yx'))`.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroupKind {
    RealLine,
    AnisoPlane,
    Heisenberg,
}

impl GroupKind {
    pub const ALL: [GroupKind; 3] = [GroupKind::RealLine, GroupKind::AnisoPlane, GroupKind::Heisenberg];

    pub fn name(self) -> &'static str {
        match self {
            GroupKind::RealLine => "real-line",
            GroupKind::AnisoPlane => "aniso-plane",
            GroupKind::Heisenberg => "heisenberg",
        }
    }

    pub fn is_abelian(self) -> bool {
        !matches!(self, GroupKind::Heisenberg)
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GroupKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GroupKind::ALL
            .into_iter()
            .find(|k| k.name() == s.trim())
            .ok_or_else(|| Error::Spec(format!("unknown group `{s}`")))
    }
}

/// A point of `G` in exponential coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point<S: Scalar = f64> {
    pub coords: Vec<S>,
}

impl<S: Scalar> Point<S> {
    pub fn new(coords: Vec<S>) -> Result<Self> {
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::Domain("non-finite coordinate".into()));
        }
        Ok(Self { coords })
    }

    pub fn from_f64(coords: &[f64]) -> Self {
        Self { coords: coords.iter().map(|&c| S::lit(c)).collect() }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }
}

impl<S: Scalar> std::ops::Index<usize> for Point<S> {
    type Output = S;
    fn index(&self, i: usize) -> &S {
        &self.coords[i]
    }
}

/// Immutable description of a homogeneous group instance.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupDescriptor<S: Scalar = f64> {
    pub kind: GroupKind,
    pub dilation_exponents: Vec<S>,
    pub rho: S,
    pub gamma: S,
    pub measure_scale: S,
}

impl<S: Scalar> GroupDescriptor<S> {
    pub fn real_line() -> Self {
        Self {
            kind: GroupKind::RealLine,
            dilation_exponents: vec![S::one()],
            rho: S::one(),
            gamma: S::one(),
            measure_scale: S::half(),
        }
    }

    pub fn aniso_plane() -> Self {
        Self {
            kind: GroupKind::AnisoPlane,
            dilation_exponents: vec![S::one(), S::two()],
            rho: S::lit(3.0),
            gamma: S::one(),
            measure_scale: S::lit(0.25),
        }
    }

    pub fn heisenberg() -> Self {
        Self {
            kind: GroupKind::Heisenberg,
            dilation_exponents: vec![S::one(), S::one(), S::two()],
            rho: S::lit(4.0),
            gamma: S::one(),
            measure_scale: S::lit(8.0) / (S::PI() * S::PI()),
        }
    }

    pub fn of_kind(kind: GroupKind) -> Self {
        match kind {
            GroupKind::RealLine => Self::real_line(),
            GroupKind::AnisoPlane => Self::aniso_plane(),
            GroupKind::Heisenberg => Self::heisenberg(),
        }
    }

    pub fn by_name(name: &str) -> Result<Self> {
        Ok(Self::of_kind(name.parse()?))
    }

    pub fn name(&self) -> &'static str {
        self.kind.name()
    }

    /// Topological dimension.
    pub fn dim(&self) -> usize {
        self.dilation_exponents.len()
    }

    pub fn identity(&self) -> Point<S> {
        Point { coords: vec![S::zero(); self.dim()] }
    }

    fn check(&self, x: &Point<S>) -> Result<()> {
        if x.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: x.dim() });
        }
        Ok(())
    }

    pub fn compose(&self, x: &Point<S>, y: &Point<S>) -> Result<Point<S>> {
        self.check(x)?;
        self.check(y)?;
        Ok(Point { coords: self.compose_raw(&x.coords, &y.coords) })
    }

    /// Group law on raw coordinates; lengths are assumed valid.
    pub fn compose_raw(&self, x: &[S], y: &[S]) -> Vec<S> {
        let mut z: Vec<S> = x.iter().zip(y).map(|(a, b)| *a + *b).collect();
        if self.kind == GroupKind::Heisenberg {
            z[2] += S::half() * (x[0] * y[1] - x[1] * y[0]);
        }
        z
    }

    pub fn invert(&self, x: &Point<S>) -> Result<Point<S>> {
        self.check(x)?;
        Ok(Point { coords: x.coords.iter().map(|c| -*c).collect() })
    }

    pub fn hom_norm(&self, x: &Point<S>) -> Result<S> {
        self.check(x)?;
        Ok(self.norm_raw(&x.coords))
    }

    pub fn norm_raw(&self, x: &[S]) -> S {
        match self.kind {
            GroupKind::RealLine => x[0].abs(),
            GroupKind::AnisoPlane => x[0].abs().max(x[1].abs().sqrt()),
            GroupKind::Heisenberg => {
                let rho2 = x[0] * x[0] + x[1] * x[1];
                (rho2 * rho2 + S::lit(16.0) * x[2] * x[2]).sqrt().sqrt()
            }
        }
    }

    /// `|x⁻¹ y|`, the left-invariant quasi-distance.
    pub fn distance_raw(&self, x: &[S], y: &[S]) -> S {
        let xi: Vec<S> = x.iter().map(|c| -*c).collect();
        self.norm_raw(&self.compose_raw(&xi, y))
    }

    /// `λ(B(e,r)) = r^ρ`.
    pub fn ball_measure(&self, r: S) -> Result<S> {
        if !(r > S::zero()) || !r.is_finite() {
            return Err(Error::Domain(format!("ball radius must be positive, got {r}")));
        }
        Ok(r.powf(self.rho))
    }

    pub fn dilate(&self, r: S, x: &Point<S>) -> Result<Point<S>> {
        self.check(x)?;
        if !(r > S::zero()) || !r.is_finite() {
            return Err(Error::Domain(format!("dilation factor must be positive, got {r}")));
        }
        Ok(Point {
            coords: x.coords.iter().zip(&self.dilation_exponents).map(|(c, a)| *c * r.powf(*a)).collect(),
        })
    }

    /// Haar measure of a coordinate box.
    pub fn box_measure(&self, lo: &[S], hi: &[S]) -> S {
        lo.iter().zip(hi).map(|(a, b)| *b - *a).fold(self.measure_scale, |acc, w| acc * w)
    }

    /// Half side lengths of the smallest coordinate box containing `B(e,r)`.
    pub fn ball_half_extents(&self, r: S) -> Vec<S> {
        match self.kind {
            GroupKind::RealLine => vec![r],
            GroupKind::AnisoPlane => vec![r, r * r],
            GroupKind::Heisenberg => vec![r, r, r * r * S::lit(0.25)],
        }
    }

    /// Uniform sample from `B(e,r)` by rejection from its bounding box.
    pub fn sample_ball<R: Rng + ?Sized>(&self, rng: &mut R, r: S) -> Point<S> {
        let half = self.ball_half_extents(r);
        loop {
            let x: Vec<S> = half.iter().map(|h| *h * S::lit(rng.gen_range(-1.0..1.0))).collect();
            if self.norm_raw(&x) < r {
                return Point { coords: x };
            }
        }
    }

    /// Coordinate bounding box of `a·B(e,r)`, as (lo, hi).
    pub fn translate_ball_bounds(&self, a: &[S], r: S) -> (Vec<S>, Vec<S>) {
        let half = self.ball_half_extents(r);
        match self.kind {
            GroupKind::Heisenberg => {
                // t-coordinate of a·b is a₃ + b₃ + ½(a₁b₂ − a₂b₁); |b₁|,|b₂| < r
                let shear = S::half() * (a[0].abs() + a[1].abs()) * r;
                let lo = vec![a[0] - half[0], a[1] - half[1], a[2] - half[2] - shear];
                let hi = vec![a[0] + half[0], a[1] + half[1], a[2] + half[2] + shear];
                (lo, hi)
            }
            _ => (
                a.iter().zip(&half).map(|(c, h)| *c - *h).collect(),
                a.iter().zip(&half).map(|(c, h)| *c + *h).collect(),
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(c: &[f64]) -> Point {
        Point::from_f64(c)
    }

    #[test]
    fn real_line_basics() {
        let g = GroupDescriptor::<f64>::real_line();
        assert_eq!(g.compose(&p(&[2.0]), &p(&[3.0])).unwrap(), p(&[5.0]));
        assert_eq!(g.invert(&p(&[3.0])).unwrap(), p(&[-3.0]));
        assert_eq!(g.hom_norm(&p(&[-3.0])).unwrap(), 3.0);
        assert_eq!(g.ball_measure(2.0).unwrap(), 2.0);
        assert_eq!(g.dilate(2.0, &p(&[3.0])).unwrap(), p(&[6.0]));
    }

    #[test]
    fn heisenberg_law_and_gauge() {
        let g = GroupDescriptor::<f64>::heisenberg();
        let z = g.compose(&p(&[1.0, 0.0, 0.0]), &p(&[0.0, 1.0, 0.0])).unwrap();
        assert_eq!(z, p(&[1.0, 1.0, 0.5]));
        assert!((g.hom_norm(&p(&[0.0, 0.0, 1.0])).unwrap() - 2.0).abs() < 1e-15);
        assert_eq!(g.dilate(2.0, &p(&[1.0, 1.0, 1.0])).unwrap(), p(&[2.0, 2.0, 4.0]));
        assert_eq!(g.ball_measure(2.0).unwrap(), 16.0);
        let x = p(&[0.3, -1.2, 0.7]);
        let e = g.compose(&x, &g.invert(&x).unwrap()).unwrap();
        assert_eq!(e, g.identity());
    }

    #[test]
    fn identity_and_trivial_dilation() {
        for kind in GroupKind::ALL {
            let g = GroupDescriptor::<f64>::of_kind(kind);
            let x = Point::from_f64(&[0.4, -0.9, 1.3][..g.dim()]);
            assert_eq!(g.compose(&g.identity(), &x).unwrap(), x);
            assert_eq!(g.dilate(1.0, &x).unwrap(), x);
            assert_eq!(g.hom_norm(&g.identity()).unwrap(), 0.0);
            assert_eq!(g.ball_measure(1.0).unwrap(), 1.0);
            assert_eq!(g.invert(&g.identity()).unwrap(), g.identity());
        }
    }

    #[test]
    fn input_errors() {
        let g = GroupDescriptor::<f64>::heisenberg();
        assert!(matches!(
            g.compose(&p(&[1.0]), &p(&[0.0, 0.0, 0.0])),
            Err(Error::DimensionMismatch { expected: 3, got: 1 })
        ));
        assert!(g.ball_measure(0.0).is_err());
        assert!(g.ball_measure(-1.0).is_err());
        assert!(g.dilate(0.0, &g.identity()).is_err());
        assert!("sphere".parse::<GroupKind>().is_err());
    }

    #[test]
    fn names_round_trip() {
        for kind in GroupKind::ALL {
            assert_eq!(kind.name().parse::<GroupKind>().unwrap(), kind);
        }
    }

    #[test]
    fn translate_ball_bounds_contain_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for kind in GroupKind::ALL {
            let g = GroupDescriptor::<f64>::of_kind(kind);
            let a = Point::from_f64(&[2.0, -3.0, 0.5][..g.dim()]);
            let (lo, hi) = g.translate_ball_bounds(&a.coords, 0.7);
            for _ in 0..2000 {
                let b = g.sample_ball(&mut rng, 0.7);
                let z = g.compose_raw(&a.coords, &b.coords);
                for i in 0..g.dim() {
                    assert!(lo[i] <= z[i] && z[i] <= hi[i]);
                }
            }
        }
    }
}
