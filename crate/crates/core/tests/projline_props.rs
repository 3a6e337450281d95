mod common;

use common::*;
use inversive::projline::pencil_mirror;
use inversive::{
    desargues_condition, desargues_involution, polar_involution, reflect_point, word_to_moebius, BinaryQuadric,
    Field, InversiveWord, QuadSpace, Sampler, Space,
};
use proptest::prelude::*;

fn field(i: usize) -> Field {
    [q(), fp(7), fp(11), fp(13)][i % 4]
}

fn line_space(i: usize) -> Space {
    let f = field(i);
    let d = if i / 4 % 2 == 0 { 1 } else { 3 };
    QuadSpace::from_i64(f, &[d]).unwrap()
}

fn regular_pencil(g: &mut Sampler) -> (BinaryQuadric, BinaryQuadric) {
    loop {
        let (q0, q1) = (g.quadric(), g.quadric());
        if desargues_condition(&q0, &q1) {
            return (q0, q1);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polar_involution_is_a_reflection(seed in any::<u64>(), i in 0usize..8) {
        let s = line_space(i);
        let mut g = Sampler::new(s.field(), seed);
        let quad = g.proper_quadric();
        let mirror = quad.to_cycle(&s).unwrap();
        prop_assert!(!mirror.is_isotropic());
        let inv = polar_involution(&quad).unwrap();
        prop_assert!(inv.is_involution());
        for _ in 0..10 {
            let x = g.point(&s);
            prop_assert_eq!(inv.apply(&x).unwrap(), reflect_point(&mirror, &x).unwrap());
        }
    }

    #[test]
    fn desargues_is_the_mirror_polar(seed in any::<u64>(), i in 0usize..4) {
        let mut g = Sampler::new(field(i), seed);
        let (q0, q1) = regular_pencil(&mut g);
        let mirror = pencil_mirror(&q0, &q1).unwrap();
        prop_assert_eq!(desargues_involution(&q0, &q1).unwrap(), polar_involution(&mirror).unwrap());
    }

    #[test]
    fn desargues_swaps_member_roots(seed in any::<u64>(), i in 0usize..4) {
        let f = field(i);
        let mut g = Sampler::new(f, seed);
        let (q0, q1) = regular_pencil(&mut g);
        let inv = desargues_involution(&q0, &q1).unwrap();
        for _ in 0..10 {
            let member = q0.scale(&g.element()).add(&q1.scale(&g.element()));
            if member.is_zero() {
                continue;
            }
            let roots = member.isotropic_points();
            if roots.len() == 2 {
                prop_assert_eq!(inv.apply(&roots[0]).unwrap(), roots[1].clone());
                prop_assert_eq!(inv.apply(&roots[1]).unwrap(), roots[0].clone());
            }
        }
    }

    #[test]
    fn moebius_of_words_composes(seed in any::<u64>(), i in 0usize..8, l1 in 0usize..4, l2 in 0usize..4) {
        let s = line_space(i);
        let mut g = Sampler::new(s.field(), seed);
        let mut word = |n: usize| {
            let ms: Vec<_> = (0..n).map(|_| g.mirror(&s)).collect();
            InversiveWord::from_mirrors(&s, &ms).unwrap()
        };
        let (w1, w2) = (word(l1), word(l2));
        let m1 = word_to_moebius(&w1).unwrap();
        let m2 = word_to_moebius(&w2).unwrap();
        let m12 = word_to_moebius(&w1.concat(&w2)).unwrap();
        prop_assert_eq!(m12.clone(), m1.then(&m2));
        for _ in 0..10 {
            let x = g.point(&s);
            prop_assert_eq!(m12.apply(&x).unwrap(), w1.concat(&w2).apply_point(&x).unwrap());
            prop_assert_eq!(m12.apply(&x).unwrap(), m2.apply(&m1.apply(&x).unwrap()).unwrap());
        }
    }

    #[test]
    fn quadric_pairing_matches_cycles(seed in any::<u64>(), i in 0usize..8) {
        let s = line_space(i);
        let mut g = Sampler::new(s.field(), seed);
        let (p, r) = (g.cycle(&s), g.cycle(&s));
        let (fp_, fr) = (BinaryQuadric::from_cycle(&p).unwrap(), BinaryQuadric::from_cycle(&r).unwrap());
        let d = &s.diag()[0];
        prop_assert_eq!(fp_.pairing(&fr), p.pairing(&r).unwrap() * d);
        prop_assert_eq!(fp_.to_cycle(&s).unwrap(), p);
    }
}
