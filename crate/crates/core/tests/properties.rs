//! Randomised properties of the fractional and Lorentz norms on the real line.

use amalgam_core::amalgam::ball_norm_value;
use amalgam_core::boxes::HalfOpenBox;
use amalgam_core::exponent::Exponent;
use amalgam_core::fracmean::{fractional_norm_ball, fractional_norm_partition, ExponentTriple, RadiusGrid};
use amalgam_core::group::GroupDescriptor;
use amalgam_core::simplefn::{Combine, SimpleFunction};
use proptest::prelude::*;

const TOL: f64 = 1e-9;

fn e(x: f64) -> Exponent {
    if x.is_infinite() {
        Exponent::inf()
    } else {
        Exponent::of(x)
    }
}

/// Disjoint intervals laid out left to right from gaps, lengths and values.
fn line_fn() -> impl Strategy<Value = SimpleFunction> {
    prop::collection::vec((0.0..0.5f64, 0.01..0.6f64, 0.05..4.0f64), 1..10).prop_map(|pieces| {
        let mut x = -1.0;
        let cells = pieces
            .into_iter()
            .map(|(gap, len, v)| {
                let lo = x + gap;
                x = lo + len;
                (HalfOpenBox::interval(lo, x).unwrap(), v)
            })
            .collect();
        SimpleFunction::new(GroupDescriptor::real_line(), cells).unwrap()
    })
}

fn grid() -> RadiusGrid {
    RadiusGrid::new(2f64.powi(-7), 32.0, 3).unwrap()
}

fn frac(f: &SimpleFunction, q: f64, p: f64, alpha: f64) -> f64 {
    fractional_norm_partition(f, &ExponentTriple::new(e(q), e(p), e(alpha)), &grid()).unwrap().value
}

fn leq(a: f64, b: f64) -> bool {
    a <= b + TOL * b.abs().max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn holder_product(f in line_fn(), g in line_fn()) {
        let fg = f.combine(&g, Combine::Product).unwrap();
        let lhs = frac(&fg, 1.0, 2.0, 1.5);
        let rhs = frac(&f, 2.0, 4.0, 3.0) * frac(&g, 2.0, 4.0, 3.0);
        prop_assert!(leq(lhs, rhs), "{lhs} > {rhs}");
    }

    #[test]
    fn sandwich_at_alpha_q(f in line_fn(), (q, p) in prop_oneof![Just((1.0, 2.0)), Just((2.0, 4.0)), Just((1.5, f64::INFINITY))]) {
        let n = frac(&f, q, p, q);
        let lq = f.lebesgue_norm(e(q));
        prop_assert!(leq(n, lq));
        // γ = 1 and ρ = 1 on the line, so the lower constant is 7^{1/q − 1/p}
        let c = 7f64.powf(1.0 / q - if p.is_finite() { 1.0 / p } else { 0.0 });
        prop_assert!(leq(lq, c * n), "{lq} > {c}·{n}");
    }

    #[test]
    fn monotone_in_q_and_p(f in line_fn()) {
        // q₁ = 1 ≤ q₂ = 2 ≤ α = 3 ≤ p₂ = 4 ≤ p₁ = 6
        let small = frac(&f, 1.0, 6.0, 3.0);
        let big = frac(&f, 2.0, 4.0, 3.0);
        prop_assert!(leq(small, 0.5f64.powf(0.5) * big), "{small} vs {big}");
    }

    #[test]
    fn embedding_in_lebesgue(f in line_fn(), (q, p, a) in prop_oneof![Just((1.0, 4.0, 2.0)), Just((2.0, f64::INFINITY, 3.0))]) {
        prop_assert!(leq(frac(&f, q, p, a), f.lebesgue_norm(e(a))));
    }

    #[test]
    fn ball_norm_limit(f in line_fn(), q in prop_oneof![Just(1.0), Just(2.0), Just(3.5)]) {
        let q = e(q);
        let radii: Vec<f64> = (-6..=8).map(|j| 2f64.powf(j as f64 / 2.0)).collect();
        let vals: Vec<f64> = radii.iter().map(|&r| ball_norm_value(&f, r, q, Exponent::inf(), 1.0)).collect();
        for w in vals.windows(2) {
            prop_assert!(leq(w[0], w[1]), "{vals:?}");
        }
        let sb = f.support_box().unwrap();
        let norm = f.lebesgue_norm(q);
        for (&r, &v) in radii.iter().zip(&vals) {
            // the ball [x−r, x+r) covers the support once 2r exceeds its length
            if 2.0 * r >= sb.width(0) {
                prop_assert!((v - norm).abs() <= 1e-12 * norm.max(1.0), "r={r}: {v} vs {norm}");
            }
        }
    }

    #[test]
    fn kolmogorov_on_balls(f in line_fn(), c in -1.5..3.0f64, r in 0.01..4.0f64, (q, a) in prop_oneof![Just((1.0, 2.0)), Just((2.0, 3.0))]) {
        let line = GroupDescriptor::real_line();
        let ball = SimpleFunction::indicator(line.clone(), vec![HalfOpenBox::interval(c - r, c + r).unwrap()], 1.0).unwrap();
        let lhs = f.combine(&ball, Combine::Product).unwrap().lebesgue_norm(e(q));
        let weak = f.lorentz_norm(e(a), Exponent::inf()).unwrap();
        let k = (a / (a - q)).powf(1.0 / q);
        let rhs = k * weak * line.ball_measure(r).unwrap().powf(1.0 / q - 1.0 / a);
        prop_assert!(leq(lhs, rhs), "{lhs} > {rhs}");
    }

    #[test]
    fn weak_lorentz_embedding(f in line_fn()) {
        let t = ExponentTriple::new(e(1.0), Exponent::inf(), e(2.0));
        let lhs = fractional_norm_ball(&f, &t, &grid(), 1.0).unwrap().value;
        let rhs = 2f64 * f.lorentz_norm(e(2.0), Exponent::inf()).unwrap();
        prop_assert!(leq(lhs, rhs), "{lhs} > {rhs}");
    }

    #[test]
    fn lorentz_triangle_when_p_below_q(f in line_fn(), g in line_fn(), (q, p) in prop_oneof![Just((2.0, 1.0)), Just((3.0, 2.0)), Just((2.0, 2.0))]) {
        let s = f.combine(&g, Combine::Sum).unwrap();
        let n = |h: &SimpleFunction| h.lorentz_norm(e(q), e(p)).unwrap();
        prop_assert!(leq(n(&s), n(&f) + n(&g)));
    }
}
