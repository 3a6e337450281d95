mod common;

use common::*;
use inversive::{
    affine_reflect, invert_point, is_projective_frame, isotropic_frame, map_pair_to_pair, reflect, reflect_point,
    CycleMatrix, InversiveWord, Matrix, Reflection, Sampler, Space, VPoint,
};
use proptest::prelude::*;

fn space(i: usize) -> Space {
    let ss = test_spaces();
    ss[i % ss.len()].clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn line_mirrors_act_affinely(seed in any::<u64>(), i in 0usize..24) {
        let s = space(i);
        let mut g = Sampler::new(s.field(), seed);
        let l = g.line(&s);
        let v = g.point(&s);
        prop_assert_eq!(reflect_point(&l, &v).unwrap(), affine_reflect(&l, &v).unwrap());
    }

    #[test]
    fn circle_mirrors_invert(seed in any::<u64>(), i in 0usize..24) {
        let s = space(i);
        let mut g = Sampler::new(s.field(), seed);
        let p = g.proper_circle(&s);
        let v = g.point(&s);
        prop_assert_eq!(reflect_point(&p, &v).unwrap(), invert_point(&p, &v).unwrap());
    }

    #[test]
    fn circles_through_the_center_become_lines(seed in any::<u64>(), i in 0usize..24, force in any::<bool>()) {
        let s = space(i);
        let mut g = Sampler::new(s.field(), seed);
        let p = g.proper_circle(&s);
        let center = p.center_and_size().unwrap().center;
        let x = loop {
            let mut x = g.circle(&s);
            if force {
                let shift = x.evaluate(&center).unwrap();
                x = inversive::Cycle::new(&s, x.a().clone(), x.b().clone(), x.c() - shift).unwrap();
            }
            if !x.is_isotropic() {
                break x;
            }
        };
        let through = x.evaluate(&center).unwrap().is_zero();
        prop_assert_eq!(reflect(&p, &x).unwrap().is_line(), through);
    }

    #[test]
    fn reflections_are_involutions(seed in any::<u64>(), i in 0usize..24) {
        let s = space(i);
        let mut g = Sampler::new(s.field(), seed);
        let p = g.mirror(&s);
        let x = g.cycle(&s);
        prop_assert_eq!(reflect(&p, &reflect(&p, &x).unwrap()).unwrap(), x);
        let v = g.point(&s);
        prop_assert_eq!(reflect_point(&p, &reflect_point(&p, &v).unwrap()).unwrap(), v);
    }

    #[test]
    fn reflections_preserve_pairing(seed in any::<u64>(), i in 0usize..24) {
        let s = space(i);
        let mut g = Sampler::new(s.field(), seed);
        let r = Reflection::new(g.mirror(&s)).unwrap();
        let (x, y) = (g.cycle(&s), g.cycle(&s));
        let (rx, ry) = (r.apply(&x).unwrap(), r.apply(&y).unwrap());
        prop_assert_eq!(rx.pairing(&ry).unwrap(), x.pairing(&y).unwrap());
        prop_assert!(r.matrix().preserves_pairing());
        prop_assert_eq!(r.matrix().apply(&x).unwrap(), rx);
    }

    #[test]
    fn zero_sets_map_to_zero_sets(seed in any::<u64>(), i in 0usize..24) {
        let s = space(i);
        let mut g = Sampler::new(s.field(), seed);
        let p = g.mirror(&s);
        let v = g.point(&s);
        let x = cycle_through(&mut g, &s, &v);
        prop_assert!(x.on_zero_set(&v).unwrap());
        let image = reflect(&p, &x).unwrap();
        prop_assert!(image.on_zero_set(&reflect_point(&p, &v).unwrap()).unwrap());
    }

    #[test]
    fn words_act_as_their_matrices(seed in any::<u64>(), i in 0usize..24, len in 0usize..5) {
        let s = space(i);
        let mut g = Sampler::new(s.field(), seed);
        let mirrors: Vec<_> = (0..len).map(|_| g.mirror(&s)).collect();
        let w = InversiveWord::from_mirrors(&s, &mirrors).unwrap();
        let m = w.as_matrix();
        prop_assert!(m.preserves_pairing());
        let x = g.cycle(&s);
        prop_assert_eq!(m.apply(&x).unwrap(), w.apply(&x).unwrap());
        let v = g.point(&s);
        prop_assert_eq!(m.apply_point(&v).unwrap(), w.apply_point(&v).unwrap());
        prop_assert_eq!(w.inverse().apply_point(&w.apply_point(&v).unwrap()).unwrap(), v);
    }

    #[test]
    fn pairs_map_to_pairs(seed in any::<u64>(), i in 0usize..24) {
        let s = space(i);
        let mut g = Sampler::new(s.field(), seed);
        let (u, w) = g.point_pair(&s);
        let (u2, w2) = g.point_pair(&s);
        let word = map_pair_to_pair(&u, &w, &u2, &w2, &s).unwrap();
        prop_assert!(word.len() <= 4);
        prop_assert_eq!(word.apply_point(&u).unwrap(), u2);
        prop_assert_eq!(word.apply_point(&w).unwrap(), w2);
    }

    /// An orthogonal map scaling each frame cycle by a sign fixes the frame
    /// points; it must then fix every point.
    #[test]
    fn frame_fixing_maps_are_trivial(seed in any::<u64>(), i in 0usize..24) {
        let s = space(i);
        let f = s.field();
        let mut g = Sampler::new(f, seed);
        let frame: Vec<_> = isotropic_frame(&s).iter().map(|v| v.embed(&s).unwrap()).collect();
        let k = s.dim() + 2;
        let basis = Matrix::from_columns(f, frame[..k].iter().map(|c| c.coords()).collect());
        let signs: Vec<_> = (0..k).map(|_| if g.coin(1, 2) { f.one() } else { -f.one() }).collect();
        let mut diag = Matrix::zeros(f, k, k);
        for (j, sgn) in signs.iter().enumerate() {
            diag[(j, j)] = sgn.clone();
        }
        let m = &(&basis * &diag) * &basis.inverse().unwrap();
        let cm = CycleMatrix::new(&s, m).unwrap();
        if cm.preserves_pairing() {
            for v in isotropic_frame(&s) {
                prop_assert_eq!(cm.apply_point(&v).unwrap(), v);
            }
            for _ in 0..50 {
                let v = g.point(&s);
                prop_assert_eq!(cm.apply_point(&v).unwrap(), v);
            }
        }
        prop_assert_eq!(cm.preserves_pairing(), signs.iter().all(|x| x == &signs[0]));
    }
}

#[test]
fn frame_is_projective_frame() {
    for s in test_spaces() {
        let frame: Vec<_> = isotropic_frame(&s).iter().map(|v| v.embed(&s).unwrap()).collect();
        assert_eq!(frame.len(), s.dim() + 3);
        assert!(is_projective_frame(&frame), "{s}");
    }
}

#[test]
fn map_pair_to_pair_rejects_equal_points() {
    let s = std_space(q(), 2);
    let v = VPoint::Infinity;
    let w = finite(&[s.field().one(), s.field().zero()]);
    assert!(map_pair_to_pair(&v, &v, &v, &w, &s).is_err());
}
