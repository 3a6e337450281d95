//! Dimension one: binary quadrics `A u^2 + B uv + C v^2` on the projective
//! line, fractional linear maps, and involutions as reflections.
//!
//! The point `x` of `k` is `(x : 1)` and `∞` is `(1 : 0)`. A cycle
//! `a x.x + b.x + c` on the line with form `d x^2` is the quadric with
//! `A = a d`, `B = b d`, `C = c`; this rescales the pairing by `1/d` and
//! leaves every reflection unchanged.

use std::fmt;

use crate::cycle::{Cycle, VPoint};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::linalg::Matrix;
use crate::space::{EVector, Space};
use crate::transform::InversiveWord;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryQuadric {
    pub a: FieldElement,
    pub b: FieldElement,
    pub c: FieldElement,
}

impl BinaryQuadric {
    pub fn new(a: FieldElement, b: FieldElement, c: FieldElement) -> Result<BinaryQuadric> {
        if a.field() != b.field() || b.field() != c.field() {
            return Err(Error::FieldMismatch);
        }
        if a.is_zero() && b.is_zero() && c.is_zero() {
            return Err(Error::ZeroFunction);
        }
        Ok(BinaryQuadric { a, b, c })
    }

    pub fn from_i64(field: Field, a: i64, b: i64, c: i64) -> Result<BinaryQuadric> {
        BinaryQuadric::new(field.from_i64(a), field.from_i64(b), field.from_i64(c))
    }

    /// From the symmetric-matrix convention `A u^2 + 2B' uv + C v^2`.
    pub fn from_matrix_form(a: FieldElement, b_half: FieldElement, c: FieldElement) -> Result<BinaryQuadric> {
        let b = b_half.double();
        BinaryQuadric::new(a, b, c)
    }

    /// `(A, B/2, C)`, the entries of `[[A, B/2], [B/2, C]]`.
    pub fn matrix_form(&self) -> (FieldElement, FieldElement, FieldElement) {
        let half = self.field().from_i64(2).inv();
        (self.a.clone(), &self.b * half, self.c.clone())
    }

    pub fn from_cycle(p: &Cycle) -> Result<BinaryQuadric> {
        let space = p.space();
        if space.dim() != 1 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                got: space.dim(),
            });
        }
        let d = &space.diag()[0];
        BinaryQuadric::new(p.a() * d, &p.b().coords()[0] * d, p.c().clone())
    }

    pub fn to_cycle(&self, space: &Space) -> Result<Cycle> {
        if space.dim() != 1 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                got: space.dim(),
            });
        }
        let dinv = space.diag()[0].inv();
        Cycle::new(
            space,
            &self.a * &dinv,
            EVector::scalar(&self.b * &dinv),
            self.c.clone(),
        )
    }

    pub fn field(&self) -> Field {
        self.a.field()
    }

    /// `B b' - 2 A C' - 2 C A'`.
    pub fn pairing(&self, other: &BinaryQuadric) -> FieldElement {
        &self.b * &other.b - (&self.a * &other.c).double() - (&self.c * &other.a).double()
    }

    /// `B^2 - 4AC`, which is `-4` times the determinant.
    pub fn norm(&self) -> FieldElement {
        self.pairing(self)
    }

    pub fn det(&self) -> FieldElement {
        let (a, h, c) = self.matrix_form();
        a * c - h.square()
    }

    pub fn is_proper(&self) -> bool {
        !self.norm().is_zero()
    }

    pub fn evaluate(&self, u: &FieldElement, v: &FieldElement) -> FieldElement {
        &self.a * u.square() + &self.b * u * v + &self.c * v.square()
    }

    pub fn vanishes_at(&self, x: &VPoint) -> Result<bool> {
        let (u, v) = homogeneous(self.field(), x)?;
        Ok(self.evaluate(&u, &v).is_zero())
    }

    /// The zeros on `k ∪ {∞}`.
    pub fn isotropic_points(&self) -> Vec<VPoint> {
        let f = self.field();
        let mut out = Vec::new();
        if self.a.is_zero() {
            out.push(VPoint::Infinity);
            if !self.b.is_zero() {
                out.push(scalar_point(-(&self.c / &self.b)));
            }
            return out;
        }
        let disc = self.norm();
        if let Some(r) = f.sqrt(&disc) {
            let two_a = self.a.double();
            out.push(scalar_point((-&self.b - &r) / &two_a));
            if !r.is_zero() {
                out.push(scalar_point((-&self.b + &r) / &two_a));
            }
        }
        out
    }

    pub fn scale(&self, s: &FieldElement) -> BinaryQuadric {
        BinaryQuadric {
            a: &self.a * s,
            b: &self.b * s,
            c: &self.c * s,
        }
    }

    pub fn add(&self, other: &BinaryQuadric) -> BinaryQuadric {
        BinaryQuadric {
            a: &self.a + &other.a,
            b: &self.b + &other.b,
            c: &self.c + &other.c,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero()
    }

    pub fn proj_equiv(&self, other: &BinaryQuadric) -> bool {
        proportional(
            &[self.a.clone(), self.b.clone(), self.c.clone()],
            &[other.a.clone(), other.b.clone(), other.c.clone()],
        )
    }

    fn coeffs(&self) -> Vec<FieldElement> {
        vec![self.a.clone(), self.b.clone(), self.c.clone()]
    }

    /// The degenerate quadric `(u - x v)^2`, or `v^2` at infinity.
    pub fn point_quadric(field: Field, x: &VPoint) -> Result<BinaryQuadric> {
        match x {
            VPoint::Infinity => BinaryQuadric::new(field.zero(), field.zero(), field.one()),
            VPoint::Finite(w) => {
                let x = scalar_of(w)?;
                BinaryQuadric::new(field.one(), -x.double(), x.square())
            }
        }
    }
}

impl fmt::Display for BinaryQuadric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} u^2 + {} uv + {} v^2", self.a, self.b, self.c)
    }
}

pub fn line_pairing(f: &BinaryQuadric, g: &BinaryQuadric) -> FieldElement {
    f.pairing(g)
}

fn scalar_point(x: FieldElement) -> VPoint {
    VPoint::Finite(EVector::scalar(x))
}

fn scalar_of(w: &EVector) -> Result<FieldElement> {
    if w.len() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            got: w.len(),
        });
    }
    Ok(w.coords()[0].clone())
}

fn homogeneous(field: Field, x: &VPoint) -> Result<(FieldElement, FieldElement)> {
    match x {
        VPoint::Infinity => Ok((field.one(), field.zero())),
        VPoint::Finite(w) => Ok((scalar_of(w)?, field.one())),
    }
}

fn dehomogenize(u: FieldElement, v: FieldElement) -> VPoint {
    if v.is_zero() {
        VPoint::Infinity
    } else {
        scalar_point(u / v)
    }
}

// All 2x2 minors vanish.
fn proportional(x: &[FieldElement], y: &[FieldElement]) -> bool {
    let zero_x = x.iter().all(FieldElement::is_zero);
    let zero_y = y.iter().all(FieldElement::is_zero);
    if zero_x || zero_y {
        return zero_x && zero_y;
    }
    (0..x.len()).all(|i| (i + 1..x.len()).all(|j| (&x[i] * &y[j] - &x[j] * &y[i]).is_zero()))
}

/// `x -> (a x + b) / (c x + d)` with `ad - bc != 0`.
#[derive(Clone, Debug)]
pub struct Moebius {
    pub a: FieldElement,
    pub b: FieldElement,
    pub c: FieldElement,
    pub d: FieldElement,
}

/// Projective equality: the two matrices are proportional.
impl PartialEq for Moebius {
    fn eq(&self, other: &Moebius) -> bool {
        proportional(&self.entries(), &other.entries())
    }
}

impl Eq for Moebius {}

impl Moebius {
    pub fn new(a: FieldElement, b: FieldElement, c: FieldElement, d: FieldElement) -> Result<Moebius> {
        let m = Moebius { a, b, c, d };
        if m.det().is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(m)
    }

    pub fn from_i64(field: Field, a: i64, b: i64, c: i64, d: i64) -> Result<Moebius> {
        Moebius::new(field.from_i64(a), field.from_i64(b), field.from_i64(c), field.from_i64(d))
    }

    pub fn identity(field: Field) -> Moebius {
        Moebius::new(field.one(), field.zero(), field.zero(), field.one()).expect("identity")
    }

    pub fn field(&self) -> Field {
        self.a.field()
    }

    pub fn entries(&self) -> Vec<FieldElement> {
        vec![self.a.clone(), self.b.clone(), self.c.clone(), self.d.clone()]
    }

    pub fn det(&self) -> FieldElement {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn apply(&self, x: &VPoint) -> Result<VPoint> {
        let (u, v) = homogeneous(self.field(), x)?;
        Ok(dehomogenize(&self.a * &u + &self.b * &v, &self.c * &u + &self.d * &v))
    }

    /// `other` after `self`.
    pub fn then(&self, other: &Moebius) -> Moebius {
        Moebius {
            a: &other.a * &self.a + &other.b * &self.c,
            b: &other.a * &self.b + &other.b * &self.d,
            c: &other.c * &self.a + &other.d * &self.c,
            d: &other.c * &self.b + &other.d * &self.d,
        }
    }

    pub fn is_involution(&self) -> bool {
        self.then(self) == Moebius::identity(self.field())
    }

    /// The map sending each `from[i]` to `to[i]`, for three distinct sources
    /// and three distinct targets.
    pub fn through_three_points(from: &[VPoint; 3], to: &[VPoint; 3]) -> Result<Moebius> {
        let field = field_of(from).or_else(|| field_of(to)).ok_or(Error::DegenerateInput(
            "three-point interpolation needs a finite point",
        ))?;
        let mut rows = Vec::new();
        for (x, y) in from.iter().zip(to) {
            let (u, v) = homogeneous(field, x)?;
            let (s, t) = homogeneous(field, y)?;
            // s (c u + d v) - t (a u + b v) = 0
            rows.push(vec![-(&t * &u), -(&t * &v), &s * &u, &s * &v]);
        }
        let kernel = Matrix::from_rows(field, rows).kernel();
        if kernel.len() != 1 {
            return Err(Error::DegenerateInput("interpolation points are not distinct"));
        }
        let k = &kernel[0];
        Moebius::new(k[0].clone(), k[1].clone(), k[2].clone(), k[3].clone())
    }
}

fn field_of(pts: &[VPoint]) -> Option<Field> {
    pts.iter().find_map(|p| p.finite().map(EVector::field))
}

impl fmt::Display for Moebius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

pub fn moebius_apply(m: &Moebius, x: &VPoint) -> Result<VPoint> {
    m.apply(x)
}

/// The fractional linear map of a word on the line, first reflection
/// acting first. A line `Bx + C` gives `[[-1, -2C/B], [0, 1]]`; a circle of
/// center `m` gives `[[m, s' - m^2], [1, -m]]`, with `s'` the size divided
/// by the form coefficient.
pub fn word_to_moebius(w: &InversiveWord) -> Result<Moebius> {
    let space = w.space();
    if space.dim() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            got: space.dim(),
        });
    }
    let f = space.field();
    let d = &space.diag()[0];
    let mut acc = Moebius::identity(f);
    for r in w.reflections() {
        let p = r.mirror();
        let step = if p.is_line() {
            let q = BinaryQuadric::from_cycle(p)?;
            Moebius::new(-f.one(), -(q.c.double() / &q.b), f.zero(), f.one())?
        } else {
            let cs = p.center_and_size()?;
            let m = scalar_of(&cs.center)?;
            let s = cs.size / d;
            Moebius::new(m.clone(), s - m.square(), f.one(), -m)?
        };
        acc = acc.then(&step);
    }
    Ok(acc)
}

/// `(u : v) -> (u* : v*)` with `b((u, v), (u*, v*)) = 0`, that is
/// `x -> (-(B/2) x - C) / (A x + B/2)`.
pub fn polar_involution(q: &BinaryQuadric) -> Result<Moebius> {
    if !q.is_proper() {
        return Err(Error::DegenerateQuadric);
    }
    let (a, h, c) = q.matrix_form();
    Moebius::new(-&h, -c, a, h)
}

pub fn pencil_gram(q0: &BinaryQuadric, q1: &BinaryQuadric) -> Matrix {
    let x = q0.pairing(q1);
    Matrix::from_rows(q0.field(), vec![vec![q0.norm(), x.clone()], vec![x, q1.norm()]])
}

/// Whether the pencil spanned by `q0`, `q1` is regular for the pairing.
pub fn desargues_condition(q0: &BinaryQuadric, q1: &BinaryQuadric) -> bool {
    !pencil_gram(q0, q1).det().is_zero()
}

/// The quadric orthogonal to both `q0` and `q1`.
pub fn pencil_mirror(q0: &BinaryQuadric, q1: &BinaryQuadric) -> Result<BinaryQuadric> {
    let f = q0.field();
    let g = Matrix::from_rows(
        f,
        vec![
            vec![f.zero(), f.zero(), f.from_i64(-2)],
            vec![f.zero(), f.one(), f.zero()],
            vec![f.from_i64(-2), f.zero(), f.zero()],
        ],
    );
    let rows = Matrix::from_rows(f, vec![q0.coeffs(), q1.coeffs()]);
    let kernel = (&rows * &g).kernel();
    if kernel.len() != 1 {
        return Err(Error::DependentCycles);
    }
    let k = &kernel[0];
    BinaryQuadric::new(k[0].clone(), k[1].clone(), k[2].clone())
}

/// The involution of a regular pencil: the reflection in its orthogonal
/// complement, read off from its action on three points.
pub fn desargues_involution(q0: &BinaryQuadric, q1: &BinaryQuadric) -> Result<Moebius> {
    if !desargues_condition(q0, q1) {
        return Err(Error::SingularPencil);
    }
    let f = q0.field();
    let mirror = pencil_mirror(q0, q1)?;
    let norm = mirror.norm();
    let reflect = |x: &VPoint| -> Result<VPoint> {
        let pq = BinaryQuadric::point_quadric(f, x)?;
        let k = mirror.pairing(&pq).double() / &norm;
        let img = pq.add(&mirror.scale(&-k));
        degenerate_point(&img)
    };
    let from = [VPoint::Infinity, scalar_point(f.zero()), scalar_point(f.one())];
    let to = [reflect(&from[0])?, reflect(&from[1])?, reflect(&from[2])?];
    Moebius::through_three_points(&from, &to)
}

// The single point of a degenerate quadric A u^2 + B uv + C v^2.
fn degenerate_point(q: &BinaryQuadric) -> Result<VPoint> {
    if q.is_zero() || q.is_proper() {
        return Err(Error::NotIsotropic);
    }
    if q.a.is_zero() {
        return Ok(VPoint::Infinity);
    }
    Ok(scalar_point(-(&q.b / q.a.double())))
}
