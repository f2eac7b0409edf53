use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::scalar::Scalar;

/// The decreasing rearrangement `f*` of a simple function: value `values[i]`
/// on `[breakpoints[i], breakpoints[i+1])`, zero past the last breakpoint.
#[derive(Debug, Clone, PartialEq)]
pub struct StepProfile<S: Scalar = f64> {
    breakpoints: Vec<S>,
    lengths: Vec<S>,
    values: Vec<S>,
}

impl<S: Scalar> StepProfile<S> {
    /// Canonical profile from `(value, measure)` level pieces; equal values merge.
    pub fn from_levels<I: IntoIterator<Item = (S, S)>>(levels: I) -> Self {
        let mut lv: Vec<(S, S)> = levels.into_iter().filter(|(v, m)| *v > S::zero() && *m > S::zero()).collect();
        lv.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
        let mut values: Vec<S> = Vec::new();
        let mut lengths: Vec<S> = Vec::new();
        for (v, m) in lv {
            match values.last() {
                Some(&last) if last == v => *lengths.last_mut().unwrap() += m,
                _ => {
                    values.push(v);
                    lengths.push(m);
                }
            }
        }
        let mut breakpoints = Vec::with_capacity(values.len() + 1);
        breakpoints.push(S::zero());
        let mut t = S::zero();
        for m in &lengths {
            t += *m;
            breakpoints.push(t);
        }
        Self { breakpoints, lengths, values }
    }

    pub fn breakpoints(&self) -> &[S] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn total_measure(&self) -> S {
        *self.breakpoints.last().unwrap()
    }

    /// `f*(t)`.
    pub fn eval(&self, t: S) -> S {
        let i = self.breakpoints[1..].partition_point(|&b| b <= t);
        self.values.get(i).copied().unwrap_or_else(S::zero)
    }

    /// Distribution function of the profile itself.
    pub fn distribution_at(&self, s: S) -> S {
        let k = self.values.partition_point(|&v| v > s);
        self.breakpoints[k]
    }

    /// `‖f‖*_{q,p}` in closed form over the steps.
    pub fn lorentz_norm(&self, q: Exponent<S>, p: Exponent<S>) -> Result<S> {
        match (q, p) {
            (Exponent::Infinite, Exponent::Infinite) => Ok(self.values.first().copied().unwrap_or_else(S::zero)),
            (Exponent::Infinite, Exponent::Finite(_)) => Err(Error::InvalidExponent(
                "Lorentz (inf, p) with p finite is not defined".into(),
            )),
            (Exponent::Finite(q), Exponent::Infinite) => Ok(self
                .values
                .iter()
                .zip(&self.breakpoints[1..])
                .map(|(v, t)| *v * t.powf(q.recip()))
                .fold(S::zero(), S::max)),
            (Exponent::Finite(q), Exponent::Finite(p)) => {
                let k = p / q;
                let mut sum = S::zero();
                for i in 0..self.values.len() {
                    let a = self.breakpoints[i];
                    let m = self.lengths[i];
                    // t_i^k − t_{i−1}^k without cancellation
                    let inc = if a == S::zero() {
                        m.powf(k)
                    } else {
                        a.powf(k) * (k * (m / a).ln_1p()).exp_m1()
                    };
                    sum += self.values[i].powf(p) * inc;
                }
                Ok(sum.powf(p.recip()))
            }
        }
    }
}
