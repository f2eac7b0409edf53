//! One-dimensional sliding overlaps `F(s) = Σ w·|A ∩ (B + s)|`.
//!
//! `F` is continuous and piecewise linear, so powers of it integrate in closed
//! form segment by segment and its maximum sits at a breakpoint.

use std::collections::BTreeMap;

use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlideTerm<S: Scalar = f64> {
    pub weight: S,
    pub a: (S, S),
    pub b: (S, S),
}

impl<S: Scalar> SlideTerm<S> {
    pub fn eval(&self, s: S) -> S {
        self.weight * crate::measure::interval_overlap(self.a.0, self.a.1, self.b.0 + s, self.b.1 + s)
    }
}

/// Continuous piecewise linear function, zero outside `[xs[0], xs[last]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseLinear<S: Scalar = f64> {
    xs: Vec<S>,
    vals: Vec<S>,
}

impl<S: Scalar> PiecewiseLinear<S> {
    pub fn from_terms(terms: &[SlideTerm<S>]) -> Self {
        let mut events: Vec<(S, S)> = Vec::with_capacity(4 * terms.len());
        for t in terms {
            if !(t.weight > S::zero()) || !(t.a.1 > t.a.0) || !(t.b.1 > t.b.0) {
                continue;
            }
            let (al, ah, bl, bh) = (t.a.0, t.a.1, t.b.0, t.b.1);
            let (m1, m2) = ((al - bl).min(ah - bh), (al - bl).max(ah - bh));
            events.push((al - bh, t.weight));
            events.push((m1, -t.weight));
            events.push((m2, -t.weight));
            events.push((ah - bl, t.weight));
        }
        events.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
        let mut xs = Vec::new();
        let mut vals = Vec::new();
        let (mut slope, mut val) = (S::zero(), S::zero());
        let mut i = 0;
        while i < events.len() {
            let x = events[i].0;
            if let Some(&prev) = xs.last() {
                val = (val + slope * (x - prev)).max(S::zero());
            }
            xs.push(x);
            vals.push(val);
            while i < events.len() && events[i].0 == x {
                slope += events[i].1;
                i += 1;
            }
        }
        if let Some(v) = vals.last_mut() {
            *v = S::zero();
        }
        Self { xs, vals }
    }

    pub fn breakpoints(&self) -> &[S] {
        &self.xs
    }

    pub fn eval(&self, s: S) -> S {
        if self.xs.is_empty() || s <= self.xs[0] || s >= *self.xs.last().unwrap() {
            return S::zero();
        }
        let j = self.xs.partition_point(|&x| x <= s);
        let (x0, x1, v0, v1) = (self.xs[j - 1], self.xs[j], self.vals[j - 1], self.vals[j]);
        v0 + (v1 - v0) * (s - x0) / (x1 - x0)
    }

    pub fn max(&self) -> S {
        self.vals.iter().copied().fold(S::zero(), S::max)
    }

    /// `∫ F(s)^k ds` for `k > 0`, exact on every linear segment.
    pub fn integral_pow(&self, k: S) -> S {
        self.xs
            .windows(2)
            .zip(self.vals.windows(2))
            .map(|(x, v)| (x[1] - x[0]) * mean_power(v[0], v[1], k))
            .sum()
    }
}

/// `∫₀¹ ((1-s)a + s b)^k ds` for `a, b ≥ 0`.
pub fn mean_power<S: Scalar>(a: S, b: S, k: S) -> S {
    let m = S::half() * (a + b);
    if m <= S::zero() {
        return S::zero();
    }
    let d = b - a;
    let x = d / m;
    if x.abs() < S::lit(1e-4) {
        // Taylor expansion in (b-a)/(a+b) around the midpoint
        let x2 = x * x;
        let c2 = k * (k - S::one()) / S::lit(24.0);
        let c4 = k * (k - S::one()) * (k - S::two()) * (k - S::lit(3.0)) / S::lit(1920.0);
        return m.powf(k) * (S::one() + c2 * x2 + c4 * x2 * x2);
    }
    let k1 = k + S::one();
    (b.powf(k1) - a.powf(k1)) / (k1 * d)
}

/// Pointwise maximum of values carried by open intervals; zero elsewhere.
#[derive(Debug, Clone, PartialEq)]
pub struct StepMax<S: Scalar = f64> {
    xs: Vec<S>,
    vals: Vec<S>,
}

impl<S: Scalar> StepMax<S> {
    pub fn from_intervals(items: &[(S, S, S)]) -> Self {
        let mut events: Vec<(S, bool, S)> = Vec::with_capacity(2 * items.len());
        for &(lo, hi, v) in items {
            if hi > lo && v > S::zero() {
                events.push((lo, true, v));
                events.push((hi, false, v));
            }
        }
        events.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
        let mut active: BTreeMap<u64, (S, usize)> = BTreeMap::new();
        let (mut xs, mut vals) = (Vec::new(), Vec::new());
        let mut i = 0;
        while i < events.len() {
            let x = events[i].0;
            while i < events.len() && events[i].0 == x {
                let (_, open, v) = events[i];
                let key = v.to_f64_lossy().to_bits();
                if open {
                    active.entry(key).or_insert((v, 0)).1 += 1;
                } else if let Some(e) = active.get_mut(&key) {
                    e.1 -= 1;
                    if e.1 == 0 {
                        active.remove(&key);
                    }
                }
                i += 1;
            }
            xs.push(x);
            vals.push(active.values().next_back().map(|e| e.0).unwrap_or_else(S::zero));
        }
        Self { xs, vals }
    }

    /// Value on `[xs[i], xs[i+1])`, sampled at a point strictly inside.
    pub fn eval(&self, s: S) -> S {
        let j = self.xs.partition_point(|&x| x <= s);
        if j == 0 {
            S::zero()
        } else {
            self.vals[j - 1]
        }
    }

    pub fn max(&self) -> S {
        self.vals.iter().copied().fold(S::zero(), S::max)
    }

    pub fn integral_pow(&self, k: S) -> S {
        self.xs.windows(2).zip(&self.vals).map(|(x, v)| (x[1] - x[0]) * v.powf(k)).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_terms(rng: &mut ChaCha8Rng, n: usize) -> Vec<SlideTerm> {
        (0..n)
            .map(|_| {
                let al = rng.gen_range(-2.0..2.0);
                let bl = rng.gen_range(-1.0..1.0);
                SlideTerm {
                    weight: rng.gen_range(0.1..3.0),
                    a: (al, al + rng.gen_range(0.05..2.0)),
                    b: (bl, bl + rng.gen_range(0.05..1.0)),
                }
            })
            .collect()
    }

    #[test]
    fn matches_direct_evaluation() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let terms = random_terms(&mut rng, 30);
        let f = PiecewiseLinear::from_terms(&terms);
        for _ in 0..500 {
            let s = rng.gen_range(-5.0..5.0);
            let direct: f64 = terms.iter().map(|t| t.eval(s)).sum();
            assert!((f.eval(s) - direct).abs() < 1e-12, "{s}");
        }
    }

    #[test]
    fn integrals_match_fine_midpoint_rule() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let terms = random_terms(&mut rng, 10);
        let f = PiecewiseLinear::from_terms(&terms);
        let n = 400_000;
        let (lo, hi) = (-6.0, 6.0);
        let h = (hi - lo) / n as f64;
        for k in [0.5, 1.0, 2.0, 3.7] {
            let mid: f64 = (0..n)
                .map(|i| terms.iter().map(|t| t.eval(lo + (i as f64 + 0.5) * h)).sum::<f64>().powf(k) * h)
                .sum();
            let exact = f.integral_pow(k);
            assert!((exact - mid).abs() < 1e-6 * mid.max(1.0), "k={k}: {exact} vs {mid}");
        }
        // ∫F = Σ w|A||B|
        let mass: f64 = terms.iter().map(|t| t.weight * (t.a.1 - t.a.0) * (t.b.1 - t.b.0)).sum();
        assert!((f.integral_pow(1.0) - mass).abs() < 1e-12 * mass);
    }

    #[test]
    fn mean_power_series_agrees_with_closed_form() {
        for k in [0.3f64, 1.0, 2.5, 7.0] {
            let a = 2.0f64;
            for b in [2.0f64 + 1e-3, 2.0 + 1e-5, 2.0] {
                let series = mean_power(a, b, k);
                let reference = if b == a { a.powf(k) } else { (b.powf(k + 1.0) - a.powf(k + 1.0)) / ((k + 1.0) * (b - a)) };
                assert!((series - reference).abs() < 1e-9 * reference);
            }
        }
        assert_eq!(mean_power(0.0, 0.0, 2.0), 0.0);
        assert!((mean_power(0.0f64, 1.0, 1.0) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn max_over_breakpoints() {
        let t = [
            SlideTerm { weight: 1.0f64, a: (0.0, 1.0), b: (-0.25, 0.25) },
            SlideTerm { weight: 2.0, a: (3.0, 3.1), b: (-0.25, 0.25) },
        ];
        let f = PiecewiseLinear::from_terms(&t);
        assert!((f.max() - 0.5).abs() < 1e-15);
        assert_eq!(PiecewiseLinear::<f64>::from_terms(&[]).max(), 0.0);
    }

    #[test]
    fn step_max_sweep() {
        let s = StepMax::from_intervals(&[(0.0f64, 2.0, 1.0), (1.0, 3.0, 5.0), (1.5, 4.0, 2.0)]);
        assert_eq!(s.eval(0.5), 1.0);
        assert_eq!(s.eval(2.5), 5.0);
        assert_eq!(s.eval(3.5), 2.0);
        assert_eq!(s.eval(4.5), 0.0);
        assert_eq!(s.max(), 5.0);
        assert!((s.integral_pow(1.0) - (1.0 + 2.0 * 5.0 + 1.0 * 2.0)).abs() < 1e-14);
    }
}
