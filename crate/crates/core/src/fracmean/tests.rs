use super::*;
use crate::boxes::HalfOpenBox;
use crate::group::GroupDescriptor;
use crate::simplefn::gen_random_simple;

fn ex(x: f64) -> Exponent {
    Exponent::of(x)
}

fn inf() -> Exponent {
    Exponent::inf()
}

fn triple(q: Exponent, p: Exponent, a: Exponent) -> ExponentTriple {
    ExponentTriple::new(q, p, a)
}

fn unit_mass_indicator() -> SimpleFunction {
    SimpleFunction::indicator(GroupDescriptor::real_line(), vec![HalfOpenBox::interval(0.0, 2.0).unwrap()], 1.0)
        .unwrap()
}

#[test]
fn conjugates() {
    assert_eq!(conjugate(ex(2.0)), ex(2.0));
    assert_eq!(conjugate(ex(1.0)), inf());
    assert_eq!(conjugate(inf()), ex(1.0));
    assert!((conjugate(ex(4.0)).value() - 4.0 / 3.0).abs() < 1e-15);
}

#[test]
fn classification() {
    assert_eq!(triple(ex(1.0), ex(4.0), ex(2.0)).classify(), Classification::Nontrivial);
    assert_eq!(triple(ex(3.0), ex(4.0), ex(2.0)).classify(), Classification::DegenerateLow);
    assert_eq!(triple(ex(1.0), ex(2.0), ex(3.0)).classify(), Classification::DegenerateHigh);
    assert_eq!(triple(ex(2.0), inf(), inf()).classify(), Classification::Nontrivial);
    assert!(triple(inf(), inf(), ex(3.0)).uses_infinite_q_convention());
}

#[test]
fn grid_radii_and_parsing() {
    let g = RadiusGrid::<f64>::new(0.5, 4.0, 2).unwrap();
    let r = g.radii();
    assert_eq!(r.len(), 7);
    assert!((r[0] - 0.5).abs() < 1e-15 && (r[6] - 4.0).abs() < 1e-14);
    let parsed: RadiusGrid = "0.5:4:2".parse().unwrap();
    assert_eq!(parsed, g);
    assert!("1:0.5:2".parse::<RadiusGrid>().is_err());
    assert!("1:2".parse::<RadiusGrid>().is_err());
    assert!(RadiusGrid::new(1.0, 2.0, 0).is_err());
}

#[test]
fn diagonal_triple_is_the_lebesgue_norm() {
    for g in [GroupDescriptor::real_line(), GroupDescriptor::aniso_plane()] {
        let w = HalfOpenBox::centered(&vec![0.0; g.dim()], &g.ball_half_extents(1.0)).unwrap();
        let f = gen_random_simple(&g, 4, 12, &w);
        for q in [1.0, 2.0, 3.0] {
            let t = triple(ex(q), ex(q), ex(q));
            let grid = RadiusGrid::new(0.1, 10.0, 3).unwrap();
            let v = fractional_norm_partition(&f, &t, &grid).unwrap().value;
            assert!((v - f.lebesgue_norm(ex(q))).abs() < 1e-12 * v);
            let b = fractional_norm_ball(&f, &t, &grid, 0.05).unwrap();
            assert!((b.value - f.lebesgue_norm(ex(q))).abs() < 1e-9 * b.value);
            // every radius gives the same value
            assert!(b.profile.iter().all(|(_, v)| (v - b.value).abs() < 1e-9 * b.value));
        }
    }
}

#[test]
fn partition_example_against_interval_oracle() {
    let f = unit_mass_indicator();
    let alpha = 2.0;
    let t = triple(ex(1.0), inf(), ex(alpha));
    let grid = RadiusGrid::new(0.25, 32.0, 8).unwrap();
    let res = fractional_norm_partition(&f, &t, &grid).unwrap();
    for &(r, v) in &res.profile {
        // cells [(k-1/2)r/2, (k+1/2)r/2); Haar measure is half the length
        let len = r / 2.0;
        let best = (-200..200)
            .map(|k| {
                let lo = (k as f64 - 0.5) * len;
                (lo + len).min(2.0) - lo.max(0.0)
            })
            .fold(0.0, f64::max)
            * 0.5;
        let oracle = r.powf(1.0 / alpha - 1.0) * best;
        assert!((v - oracle).abs() < 1e-12, "r={r}: {v} vs {oracle}");
    }
    assert!(res.argmax_r > 1.0 && res.argmax_r < 4.0, "{}", res.argmax_r);
    assert_eq!(res.classification, Classification::Nontrivial);
}

#[test]
fn ball_example_unit_mass_indicator() {
    // sup_y λ(f ∩ yB) = min(r, 1), weight r^{-1/2}: peak 1 at r = 1
    let f = unit_mass_indicator();
    let t = triple(ex(1.0), inf(), ex(2.0));
    let grid = RadiusGrid::new(1.0 / 16.0, 16.0, 4).unwrap();
    let res = fractional_norm_ball(&f, &t, &grid, 1.0).unwrap();
    assert!((res.value - 1.0).abs() < 1e-12);
    assert!((res.argmax_r - 1.0).abs() < 1e-12);
    for &(r, v) in &res.profile {
        assert!((v - r.min(1.0) / r.sqrt()).abs() < 1e-12);
    }
}

#[test]
fn zero_function() {
    let z = SimpleFunction::zero(GroupDescriptor::real_line());
    let t = triple(ex(1.0), ex(4.0), ex(2.0));
    let grid = RadiusGrid::new(0.5, 2.0, 1).unwrap();
    assert_eq!(fractional_norm_partition(&z, &t, &grid).unwrap().value, 0.0);
    assert_eq!(fractional_norm_ball(&z, &t, &grid, 1.0).unwrap().value, 0.0);
    let d = divergence_diagnostic(&z, &triple(ex(2.0), inf(), ex(1.0)), &grid).unwrap();
    assert!(!d.diverges && d.slope == 0.0);
}

#[test]
fn divergence_examples() {
    let f = SimpleFunction::indicator(GroupDescriptor::real_line(), vec![HalfOpenBox::interval(-0.5, 0.5).unwrap()], 1.0)
        .unwrap();
    let grid = RadiusGrid::new(1.0 / 16.0, 64.0, 4).unwrap();
    let low = divergence_diagnostic(&f, &triple(ex(2.0), inf(), ex(1.0)), &grid).unwrap();
    assert_eq!(low.end, DivergentEnd::LargeRadii);
    assert!(low.diverges && (low.slope - 0.5).abs() < 1e-9 && (low.theoretical - 0.5).abs() < 1e-15);
    let high = divergence_diagnostic(&f, &triple(ex(1.0), ex(1.0), ex(2.0)), &grid).unwrap();
    assert_eq!(high.end, DivergentEnd::SmallRadii);
    assert!(high.diverges && (high.slope + 0.5).abs() < 1e-9 && (high.theoretical + 0.5).abs() < 1e-15);
    let err = divergence_diagnostic(&f, &triple(ex(1.0), ex(4.0), ex(2.0)), &grid).unwrap_err();
    assert!(matches!(err, Error::Misuse(_)));
}

#[test]
fn divergent_values_are_flagged() {
    let f = SimpleFunction::indicator(GroupDescriptor::real_line(), vec![HalfOpenBox::interval(-0.5, 0.5).unwrap()], 1.0)
        .unwrap();
    let grid = RadiusGrid::new(1.0, 1e30, 1).unwrap();
    let res = fractional_norm_partition(&f, &triple(ex(2.0), inf(), ex(1.0)), &grid).unwrap();
    assert!(res.divergent && !res.notes.is_empty());
}

#[test]
fn embedding_into_lebesgue_alpha() {
    for g in [GroupDescriptor::real_line(), GroupDescriptor::aniso_plane()] {
        let w = HalfOpenBox::centered(&vec![0.0; g.dim()], &g.ball_half_extents(1.0)).unwrap();
        for seed in 0..20 {
            let f = gen_random_simple(&g, seed, 16, &w);
            for (q, p, a) in [(1.0, 4.0, 2.0), (1.0, f64::INFINITY, 3.0), (2.0, 2.0, 2.0), (1.5, 6.0, 6.0)] {
                let p = if p.is_finite() { ex(p) } else { inf() };
                let t = triple(ex(q), p, ex(a));
                let v = fractional_norm_partition(&f, &t, &RadiusGrid::default_for(&f)).unwrap().value;
                assert!(v <= f.lebesgue_norm(ex(a)) + 1e-9, "{} {t}: {v}", g.name());
            }
        }
    }
}

#[test]
fn refinement_report() {
    let f = unit_mass_indicator();
    let rep = grid_refinement(&f, &triple(ex(1.0), inf(), ex(2.0)), &RadiusGrid::new(0.25, 8.0, 4).unwrap()).unwrap();
    assert!(rep.fine >= rep.coarse && rep.relative_change < 0.1);
}
