use inversive::{Field, QuadSpace, Sampler, Space};
use inversive_cli::parse;
use inversive_cli::scene::{run_scene, Object};
use proptest::prelude::*;

fn spaces() -> Vec<(Field, Space)> {
    let q = Field::rationals();
    let f7 = Field::prime(7).unwrap();
    let s2 = Field::quad_ext(2).unwrap();
    vec![
        (q, QuadSpace::standard(q, 2).unwrap()),
        (q, QuadSpace::from_i64(q, &[1, 2, 3]).unwrap()),
        (q, QuadSpace::standard(q, 1).unwrap()),
        (f7, QuadSpace::norm_form(f7).unwrap()),
        (s2, QuadSpace::standard(s2, 2).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn printed_scenes_reparse_to_equal_objects(seed in any::<u64>(), i in 0usize..5) {
        let (field, space) = spaces()[i].clone();
        let mut g = Sampler::new(field, seed);
        let diag: Vec<String> = space.diag().iter().map(ToString::to_string).collect();
        let mut text = format!("field {field}\nspace diag {}\n", diag.join(" "));
        let mut expected = Vec::new();
        for k in 0..4 {
            let c = g.cycle(&space);
            text.push_str(&format!("cycle c{k} = {c}\n"));
            expected.push((format!("c{k}"), Object::Cycle(c)));
            let p = g.point(&space);
            text.push_str(&format!("point p{k} = {p}\n"));
            expected.push((format!("p{k}"), Object::Point(p)));
        }
        let first = run_scene(&text).unwrap();
        prop_assert_eq!(&first.objects, &expected);
        let second = run_scene(&first.declarations()).unwrap();
        prop_assert_eq!(&second.objects, &first.objects);
        prop_assert_eq!(second.space.diag(), space.diag());
    }

    #[test]
    fn lorentz_literals_round_trip(seed in any::<u64>(), i in 0usize..5) {
        let (field, space) = spaces()[i].clone();
        let mut g = Sampler::new(field, seed);
        let v = g.lorentz(&space);
        prop_assert_eq!(parse::lorentz(&space, &v.to_string()).unwrap(), v);
    }
}
