use super::*;
use crate::group::GroupKind;

fn line() -> GroupDescriptor {
    GroupDescriptor::real_line()
}

fn window(lo: &[f64], hi: &[f64]) -> HalfOpenBox {
    HalfOpenBox::new(lo.to_vec(), hi.to_vec()).unwrap()
}

fn square_window(g: &GroupDescriptor, half: f64) -> HalfOpenBox {
    let h = g.ball_half_extents(half);
    HalfOpenBox::centered(&vec![0.0; h.len()], &h).unwrap()
}

#[test]
fn real_line_cells_have_length_half_r() {
    let p = UniformPartition::build_pi_r(&line(), 1.0, &window(&[-2.0], &[2.0])).unwrap();
    let cells = p.cells();
    assert_eq!(cells.len(), 8);
    for c in &cells {
        let lo = c.anchor[0] + p.tile().lo[0];
        let hi = c.anchor[0] + p.tile().hi[0];
        assert!((hi - lo - 0.5).abs() < 1e-15);
        // x_E + (-1/4, 1/4) ⊂ E ⊂ x_E + (-1/2, 1/2)
        assert!(c.base[0] - 0.25 >= lo - 1e-15 && c.base[0] + 0.25 <= hi + 1e-15);
        assert!(c.base[0] - 0.5 < lo && hi < c.base[0] + 0.5);
    }
    assert_eq!(p.u_radius(), 0.25);
}

#[test]
fn window_of_eight_unit_cells() {
    let p = UniformPartition::build_pi_r(&line(), 2.0, &window(&[-4.0], &[4.0])).unwrap();
    let cells = p.cells();
    assert_eq!(cells.len(), 8);
    assert_eq!(cells[0].anchor[0] + p.tile().lo[0], -4.0);
    assert_eq!(cells[7].anchor[0] + p.tile().hi[0], 4.0);
}

#[test]
fn degenerate_window_is_rejected() {
    let err = UniformPartition::build_pi_r(&line(), 2.0, &window(&[0.0], &[0.5])).unwrap_err();
    assert_eq!(err, Error::DegenerateWindow);
    assert!(UniformPartition::build_pi_r(&line(), 0.0, &window(&[0.0], &[1.0])).is_err());
}

#[test]
fn dilation_covariance() {
    for g in [GroupDescriptor::aniso_plane(), GroupDescriptor::heisenberg()] {
        let w1 = square_window(&g, 1.0);
        let w3 = square_window(&g, 3.0);
        let p1 = UniformPartition::build_pi_r(&g, 1.0, &w1).unwrap();
        let p3 = UniformPartition::build_pi_r(&g, 3.0, &w3).unwrap();
        let (c1, c3) = (p1.cells(), p3.cells());
        assert_eq!(c1.len(), c3.len());
        for (a, b) in c1.iter().zip(&c3) {
            let scaled = g.dilate(3.0, &crate::group::Point::new(a.anchor.clone()).unwrap()).unwrap();
            for (x, y) in scaled.coords.iter().zip(&b.anchor) {
                assert!((x - y).abs() < 1e-12 * (1.0 + y.abs()));
            }
        }
    }
}

#[test]
fn built_partitions_validate_over_six_octaves() {
    for kind in GroupKind::ALL {
        let g = GroupDescriptor::of_kind(kind);
        for k in -3..3 {
            let r = 2f64.powi(k);
            let w = square_window(&g, r);
            let p = UniformPartition::build_pi_r(&g, r, &w).unwrap();
            let report = p.validate(4);
            assert!(report.valid, "{kind} r={r}: {:?}", report.failures);
            assert!(report.cells_checked > 0);
        }
    }
}

#[test]
fn base_point_at_corner_fails_validation() {
    let p = UniformPartition::build_pi_r(&line(), 1.0, &window(&[-1.0], &[1.0]))
        .unwrap()
        .with_base_shift(vec![-0.25])
        .unwrap();
    assert!(!p.validate(16).valid);
}

#[test]
fn single_cell_window_validates() {
    let p = UniformPartition::build_pi_r(&line(), 1.0, &window(&[0.0], &[0.5])).unwrap();
    assert_eq!(p.cells().len(), 1);
    assert!(p.validate(32).valid);
}

#[test]
fn cells_tile_the_window_by_measure() {
    for kind in GroupKind::ALL {
        let g = GroupDescriptor::of_kind(kind);
        let w = square_window(&g, 1.3);
        let p = UniformPartition::build_pi_r(&g, 0.7, &w).unwrap();
        let total: f64 = p.cells().iter().map(|c| p.intersection_measure(&c.index, &w)).sum();
        let expect = g.box_measure(&w.lo, &w.hi);
        assert!((total - expect).abs() < 1e-10 * expect, "{kind}: {total} vs {expect}");
    }
}

#[test]
fn locate_agrees_with_membership() {
    let g = GroupDescriptor::heisenberg();
    let p = UniformPartition::global(&g, 1.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..2000 {
        let z: Vec<f64> = (0..3).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let idx = p.locate(&z);
        assert!(p.cell_contains(&idx, &z));
    }
}

#[test]
fn heisenberg_intersection_matches_sampling() {
    let g = GroupDescriptor::heisenberg();
    let p = UniformPartition::global(&g, 1.0).unwrap();
    let b = window(&[-0.3, -0.2, -0.1], &[0.6, 0.5, 0.2]);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let n = 200_000;
    let cand = p.cells_meeting_box(&b);
    let mut hits = std::collections::HashMap::new();
    for _ in 0..n {
        let z: Vec<f64> = (0..3).map(|i| rng.gen_range(b.lo[i]..b.hi[i])).collect();
        *hits.entry(p.locate(&z)).or_insert(0usize) += 1;
    }
    let vol = g.box_measure(&b.lo, &b.hi);
    let mut total = 0.0;
    for idx in cand {
        let exact = p.intersection_measure(&idx, &b);
        total += exact;
        let mc = *hits.get(&idx).unwrap_or(&0) as f64 / n as f64 * vol;
        assert!((exact - mc).abs() < 0.01 * vol, "{idx:?}: {exact} vs {mc}");
    }
    assert!((total - vol).abs() < 1e-12);
}

#[test]
fn n_pi_bound_examples() {
    let g = line();
    let r = 1.0;
    assert!((n_pi_bound(&g, r / 4.0, r, r).unwrap() - 9.0).abs() < 1e-12);
    for g in [line(), GroupDescriptor::aniso_plane(), GroupDescriptor::heisenberg()] {
        let b = n_pi_bound(&g, 0.3, 0.3, 0.3).unwrap();
        assert!((b - 3f64.powf(g.rho)).abs() < 1e-9 * b);
        let gam = g.gamma;
        let spec = n_pi_bound(&g, r / (4.0 * gam * gam), r / (2.0 * gam), r).unwrap();
        assert!(spec <= (4.0 * gam.powi(4) + 3.0 * gam * gam).powf(g.rho) * (1.0 + 1e-12));
    }
    assert!(n_pi_bound(&g, 0.0, 1.0, 1.0).is_err());
}

#[test]
fn translate_hit_examples() {
    let p = UniformPartition::build_pi_r(&line(), 1.0, &window(&[-4.0], &[4.0])).unwrap();
    assert_eq!(p.count_translate_hits(0.25, &[0.25]).unwrap(), 1);
    assert_eq!(p.count_translate_hits(1e-9, &[0.1]).unwrap(), 1);
    let bound = n_pi_bound(&line(), p.u_radius(), p.v_radius(), 1.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..500 {
        let a = rng.gen_range(-2.0..2.0);
        let n = p.count_translate_hits(1.0, &[a]).unwrap();
        // oracle: half-open cells [k/2, (k+1)/2) meeting (a-1, a+1)
        let oracle = (-16..16).filter(|k| (*k as f64) / 2.0 < a + 1.0 && a - 1.0 < (*k as f64 + 1.0) / 2.0).count();
        assert_eq!(n, oracle);
        assert!(n <= 5 && (n as f64) <= bound);
    }
    assert_eq!(p.count_translate_hits(1.0, &[3.5]).unwrap_err(), Error::WindowEscape);
}

#[test]
fn translate_hits_respect_bound_everywhere() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for kind in GroupKind::ALL {
        let g = GroupDescriptor::of_kind(kind);
        let p = UniformPartition::global(&g, 1.0).unwrap();
        let bound = n_pi_bound(&g, p.u_radius(), p.v_radius(), 1.0).unwrap();
        let trials = if kind == GroupKind::Heisenberg { 100 } else { 1000 };
        for _ in 0..trials {
            let a: Vec<f64> = (0..g.dim()).map(|_| rng.gen_range(-3.0..3.0)).collect();
            let n = p.count_translate_hits(1.0, &a).unwrap();
            assert!(n >= 1 && (n as f64) <= bound, "{kind}: {n} > {bound}");
        }
    }
}

#[test]
fn heisenberg_hits_agree_with_in_cell_sampling() {
    let g = GroupDescriptor::heisenberg();
    let p = UniformPartition::global(&g, 1.0).unwrap();
    let k = 0.6;
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..3 {
        let a: Vec<f64> = (0..3).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let inv: Vec<f64> = a.iter().map(|x| -x).collect();
        let (lo, hi) = g.translate_ball_bounds(&a, k);
        let mut hits = 0;
        for idx in p.cells_meeting_box(&HalfOpenBox::new(lo, hi).unwrap()) {
            let c = p.anchor(&idx);
            // smallest gauge of a⁻¹z over sampled z in the cell
            let min = (0..4000)
                .map(|_| {
                    let q: Vec<f64> =
                        (0..3).map(|i| rng.gen_range(p.tile().lo[i]..p.tile().hi[i])).collect();
                    g.norm_raw(&g.compose_raw(&inv, &g.compose_raw(&c, &q)))
                })
                .fold(f64::INFINITY, f64::min);
            let hit = p.translate_hits_cell(&idx, k, &a);
            hits += hit as usize;
            if hit {
                assert!(min < k * 1.05, "{idx:?}: claimed hit, sampled min {min}");
            } else {
                assert!(min >= k, "{idx:?}: missed hit, sampled min {min}");
            }
        }
        assert_eq!(hits, p.count_translate_hits(k, &a).unwrap());
    }
}

#[test]
fn f32_partition_builds() {
    let g = GroupDescriptor::<f32>::real_line();
    let p = UniformPartition::build_pi_r(&g, 2.0f32, &HalfOpenBox::new(vec![-4.0f32], vec![4.0]).unwrap()).unwrap();
    assert_eq!(p.cells().len(), 8);
}
