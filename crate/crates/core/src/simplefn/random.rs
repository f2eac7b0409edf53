use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::SimpleFunction;
use crate::boxes::HalfOpenBox;
use crate::group::GroupDescriptor;
use crate::scalar::Scalar;

const MAX_LEVEL: u32 = 7;
const ATTEMPTS_PER_CELL: usize = 200;

/// Deterministic random simple function inside `window`.
///
/// Cells are dyadic sub-cubes of the window (same level on every axis), so two
/// candidates are either nested or disjoint and rejection keeps them disjoint.
/// Values are log-uniform on `[10⁻³, 10]`. Fewer than `cells` pieces come back
/// only when the window is too crowded at the finest level.
pub fn gen_random_simple<S: Scalar>(
    group: &GroupDescriptor<S>,
    seed: u64,
    cells: usize,
    window: &HalfOpenBox<S>,
) -> SimpleFunction<S> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut chosen: Vec<(HalfOpenBox<S>, S)> = Vec::with_capacity(cells);
    let (lv_lo, lv_hi) = (1e-3f64.ln(), 10f64.ln());
    let mut attempts = 0;
    while chosen.len() < cells.max(1) && attempts < ATTEMPTS_PER_CELL * cells.max(1) {
        attempts += 1;
        let level = rng.gen_range(1..=MAX_LEVEL);
        let n = 1u64 << level;
        let (lo, hi): (Vec<S>, Vec<S>) = (0..window.dim())
            .map(|i| {
                let k = rng.gen_range(0..n);
                let w = window.width(i) / S::lit(n as f64);
                let a = window.lo[i] + w * S::lit(k as f64);
                (a, a + w)
            })
            .unzip();
        let cand = HalfOpenBox::new(lo, hi).expect("dyadic cell of a valid window");
        if chosen.iter().any(|(b, _)| b.overlaps(&cand)) {
            continue;
        }
        let v = S::lit(rng.gen_range(lv_lo..=lv_hi).exp());
        chosen.push((cand, v));
    }
    SimpleFunction::new(group.clone(), chosen).expect("disjoint positive cells")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_disjoint_and_inside() {
        let g = GroupDescriptor::<f64>::aniso_plane();
        let w = HalfOpenBox::new(vec![-1.0, -2.0], vec![3.0, 2.0]).unwrap();
        let a = gen_random_simple(&g, 42, 20, &w);
        let b = gen_random_simple(&g, 42, 20, &w);
        assert_eq!(a, b);
        assert_eq!(a.pieces().len(), 20);
        for p in a.pieces() {
            assert!(w.contains_box(&p.cell));
            assert!(p.value > 0.0 && p.value <= 10.0);
        }
        assert_ne!(gen_random_simple(&g, 43, 20, &w), a);
    }

    #[test]
    fn one_cell_is_a_scaled_indicator() {
        let g = GroupDescriptor::<f64>::real_line();
        let w = HalfOpenBox::interval(0.0, 1.0).unwrap();
        let f = gen_random_simple(&g, 7, 1, &w);
        assert_eq!(f.pieces().len(), 1);
    }
}
