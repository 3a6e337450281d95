#![allow(dead_code)]

use inversive::{Cycle, EVector, Field, FieldElement, QuadSpace, Sampler, Space, VPoint};

pub fn q() -> Field {
    Field::rationals()
}

pub fn fp(p: u64) -> Field {
    Field::prime(p).unwrap()
}

pub fn std_space(f: Field, n: usize) -> Space {
    QuadSpace::standard(f, n).unwrap()
}

/// Anisotropic spaces used when a check is required "per field".
pub fn field_spaces() -> Vec<Space> {
    vec![
        std_space(q(), 2),
        QuadSpace::from_i64(q(), &[1, 2, 3]).unwrap(),
        std_space(fp(7), 2),
        std_space(fp(11), 2),
        std_space(Field::quad_ext(2).unwrap(), 2),
    ]
}

pub fn diag_norm(space: &Space, x: &[FieldElement]) -> FieldElement {
    let f = space.field();
    x.iter()
        .zip(space.diag())
        .fold(f.zero(), |acc, (xi, di)| acc + di * xi * xi)
}

/// Center and size of a circle by completing the square: with
/// `m = -b / 2a`, `p / a = h(X - m) - (h(m) - c / a)`.
pub fn complete_square(p: &Cycle) -> (Vec<FieldElement>, FieldElement) {
    let space = p.space();
    let f = space.field();
    let a = p.a();
    let two_a = a * f.from_i64(2);
    let center: Vec<FieldElement> = p.b().coords().iter().map(|b| -(b / &two_a)).collect();
    let size = diag_norm(space, &center) - p.c() / a;
    (center, size)
}

/// A random nonzero combination of the given cycles.
pub fn combination(g: &mut Sampler, basis: &[Cycle]) -> Cycle {
    let space = basis[0].space().clone();
    loop {
        let mut acc = Cycle::from_parts(&space, g.field().zero(), EVector::zero(g.field(), space.dim()), g.field().zero())
            .unwrap();
        for b in basis {
            acc = acc.add(&b.scale(&g.element()));
        }
        if !acc.is_zero() {
            return acc;
        }
    }
}

pub fn finite(x: &[FieldElement]) -> VPoint {
    VPoint::Finite(EVector::new(x.to_vec()))
}

/// Every element of a finite field, as a vector.
pub fn elements(f: Field) -> Vec<FieldElement> {
    f.elements().expect("finite field").collect()
}

/// Every point of `F_p^n` plus infinity.
pub fn all_points(space: &Space) -> Vec<VPoint> {
    let els = elements(space.field());
    let mut out: Vec<Vec<FieldElement>> = vec![vec![]];
    for _ in 0..space.dim() {
        out = out
            .into_iter()
            .flat_map(|v| {
                els.iter().map(move |e| {
                    let mut w = v.clone();
                    w.push(e.clone());
                    w
                })
            })
            .collect();
    }
    let mut pts: Vec<VPoint> = out.into_iter().map(|v| VPoint::Finite(EVector::new(v))).collect();
    pts.push(VPoint::Infinity);
    pts
}

/// One representative of every projective class of nonzero cycles over a
/// finite field: the first nonzero coordinate is 1.
pub fn all_cycle_classes(space: &Space) -> Vec<Cycle> {
    let f = space.field();
    let els = elements(f);
    let len = space.dim() + 2;
    let mut out = Vec::new();
    for lead in 0..len {
        let free = len - lead - 1;
        let total = els.len().pow(free as u32);
        for mut idx in 0..total {
            let mut coords = vec![f.zero(); len];
            coords[lead] = f.one();
            for slot in coords.iter_mut().skip(lead + 1) {
                *slot = els[idx % els.len()].clone();
                idx /= els.len();
            }
            out.push(Cycle::from_coords(space, &coords).unwrap());
        }
    }
    out
}

/// Fields exercised by the property tests.
pub fn test_fields() -> Vec<Field> {
    vec![
        q(),
        fp(3),
        fp(7),
        fp(11),
        fp(13),
        Field::quad_ext(2).unwrap(),
        Field::quad_ext(-3).unwrap(),
    ]
}

/// Anisotropic spaces of dimension one to three over several fields.
pub fn test_spaces() -> Vec<Space> {
    let qs2 = Field::quad_ext(2).unwrap();
    vec![
        std_space(q(), 1),
        std_space(q(), 2),
        std_space(q(), 3),
        QuadSpace::from_i64(q(), &[2, 3]).unwrap(),
        QuadSpace::from_i64(q(), &[-1, -5]).unwrap(),
        std_space(fp(3), 2),
        std_space(fp(7), 1),
        std_space(fp(7), 2),
        QuadSpace::norm_form(fp(7)).unwrap(),
        std_space(fp(11), 2),
        QuadSpace::norm_form(fp(13)).unwrap(),
        std_space(qs2, 2),
    ]
}

/// A random cycle vanishing at `v`.
pub fn cycle_through(g: &mut Sampler, space: &Space, v: &VPoint) -> Cycle {
    match v {
        VPoint::Infinity => g.line(space),
        VPoint::Finite(x) => loop {
            let c = g.cycle(space);
            let shift = c.evaluate(x).unwrap();
            let moved = Cycle::from_parts(space, c.a().clone(), c.b().clone(), c.c() - shift).unwrap();
            if !moved.is_zero() {
                return moved;
            }
        },
    }
}
