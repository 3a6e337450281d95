//! Orthocentric quadruples in the affine plane over any field, the pencil of
//! conics through them, the conic of poles of a line, and the nine-point
//! circle.
//!
//! Points are `(u, v, 1)` in homogeneous coordinates; the plane carries the
//! standard product `uu' + vv'`, which need not be anisotropic.

use std::fmt;

use crate::cycle::Cycle;
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::linalg::Matrix;
use crate::projline::{desargues_condition, BinaryQuadric};
use crate::space::{search_candidates, EVector, QuadSpace};

/// Parameter values tried when sampling a pencil.
pub const PENCIL_PARAMETER_BUDGET: u64 = 64;

// Over an infinite field five poles fix the conic and the rest only check it.
const ENOUGH_SAMPLES: usize = 9;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlanePoint {
    pub u: FieldElement,
    pub v: FieldElement,
}

impl PlanePoint {
    pub fn new(u: FieldElement, v: FieldElement) -> PlanePoint {
        assert_eq!(u.field(), v.field(), "coordinates from different fields");
        PlanePoint { u, v }
    }

    pub fn from_i64(field: Field, u: i64, v: i64) -> PlanePoint {
        PlanePoint::new(field.from_i64(u), field.from_i64(v))
    }

    pub fn field(&self) -> Field {
        self.u.field()
    }

    pub fn homogeneous(&self) -> [FieldElement; 3] {
        [self.u.clone(), self.v.clone(), self.field().one()]
    }

    /// `None` for a point at infinity.
    pub fn from_homogeneous(x: &[FieldElement; 3]) -> Option<PlanePoint> {
        if x[2].is_zero() {
            return None;
        }
        let w = x[2].inv();
        Some(PlanePoint::new(&x[0] * &w, &x[1] * &w))
    }

    pub fn midpoint(&self, other: &PlanePoint) -> PlanePoint {
        let half = self.field().from_i64(2).inv();
        PlanePoint::new((&self.u + &other.u) * &half, (&self.v + &other.v) * &half)
    }

    pub fn sub(&self, other: &PlanePoint) -> (FieldElement, FieldElement) {
        (&self.u - &other.u, &self.v - &other.v)
    }
}

impl fmt::Display for PlanePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.u, self.v)
    }
}

fn cross(x: &[FieldElement; 3], y: &[FieldElement; 3]) -> [FieldElement; 3] {
    [
        &x[1] * &y[2] - &x[2] * &y[1],
        &x[2] * &y[0] - &x[0] * &y[2],
        &x[0] * &y[1] - &x[1] * &y[0],
    ]
}

fn dot3(x: &[FieldElement; 3], y: &[FieldElement; 3]) -> FieldElement {
    &x[0] * &y[0] + &x[1] * &y[1] + &x[2] * &y[2]
}

fn is_zero3(x: &[FieldElement; 3]) -> bool {
    x.iter().all(FieldElement::is_zero)
}

/// The representative with first nonzero coordinate 1.
fn normalize3(x: [FieldElement; 3]) -> [FieldElement; 3] {
    match x.iter().find(|e| !e.is_zero()).map(FieldElement::inv) {
        Some(s) => x.map(|e| e * &s),
        None => x,
    }
}

/// The line `a u + b v + c w = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line(pub [FieldElement; 3]);

impl Line {
    pub fn new(a: FieldElement, b: FieldElement, c: FieldElement) -> Result<Line> {
        if a.is_zero() && b.is_zero() && c.is_zero() {
            return Err(Error::ZeroFunction);
        }
        Ok(Line([a, b, c]))
    }

    /// `w = 0`.
    pub fn at_infinity(field: Field) -> Line {
        Line([field.zero(), field.zero(), field.one()])
    }

    pub fn through(p: &PlanePoint, q: &PlanePoint) -> Result<Line> {
        let l = cross(&p.homogeneous(), &q.homogeneous());
        if is_zero3(&l) {
            return Err(Error::DegenerateInput("a line through two equal points"));
        }
        Ok(Line(l))
    }

    pub fn contains(&self, p: &PlanePoint) -> bool {
        dot3(&self.0, &p.homogeneous()).is_zero()
    }

    pub fn contains_homogeneous(&self, x: &[FieldElement; 3]) -> bool {
        dot3(&self.0, x).is_zero()
    }

    /// `None` when the lines meet at infinity. Panics on equal lines.
    pub fn meet(&self, other: &Line) -> Option<PlanePoint> {
        let x = cross(&self.0, &other.0);
        assert!(!is_zero3(&x), "meet of a line with itself");
        PlanePoint::from_homogeneous(&x)
    }

    /// Two homogeneous points spanning the line.
    pub fn basis(&self) -> [[FieldElement; 3]; 2] {
        let f = self.0[0].field();
        let k = Matrix::from_rows(f, vec![self.0.to_vec()]).kernel();
        let to3 = |v: &Vec<FieldElement>| [v[0].clone(), v[1].clone(), v[2].clone()];
        [to3(&k[0]), to3(&k[1])]
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} u + {} v + {} w = 0", self.0[0], self.0[1], self.0[2])
    }
}

/// `A u^2 + B uv + C v^2 + D uw + E vw + F w^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conic(pub [FieldElement; 6]);

impl Conic {
    pub fn new(coeffs: [FieldElement; 6]) -> Result<Conic> {
        if coeffs.iter().all(FieldElement::is_zero) {
            return Err(Error::ZeroFunction);
        }
        Ok(Conic(coeffs))
    }

    pub fn field(&self) -> Field {
        self.0[0].field()
    }

    /// The product of two line equations.
    pub fn line_pair(l: &Line, m: &Line) -> Conic {
        let [a, b, c] = &l.0;
        let [d, e, f] = &m.0;
        Conic([
            a * d,
            a * e + b * d,
            b * e,
            a * f + c * d,
            b * f + c * e,
            c * f,
        ])
    }

    pub fn matrix(&self) -> Matrix {
        let f = self.field();
        let half = f.from_i64(2).inv();
        let [a, b, c, d, e, g] = &self.0;
        let (b, d, e) = (b * &half, d * &half, e * &half);
        Matrix::from_rows(
            f,
            vec![
                vec![a.clone(), b.clone(), d.clone()],
                vec![b, c.clone(), e.clone()],
                vec![d, e, g.clone()],
            ],
        )
    }

    pub fn evaluate_homogeneous(&self, x: &[FieldElement; 3]) -> FieldElement {
        let [a, b, c, d, e, g] = &self.0;
        let [u, v, w] = x;
        a * u * u + b * u * v + c * v * v + d * u * w + e * v * w + g * w * w
    }

    pub fn contains(&self, p: &PlanePoint) -> bool {
        self.evaluate_homogeneous(&p.homogeneous()).is_zero()
    }

    pub fn is_degenerate(&self) -> bool {
        self.matrix().det().is_zero()
    }

    pub fn add(&self, other: &Conic) -> Conic {
        Conic(std::array::from_fn(|i| &self.0[i] + &other.0[i]))
    }

    pub fn scale(&self, s: &FieldElement) -> Conic {
        Conic(std::array::from_fn(|i| &self.0[i] * s))
    }

    /// Equal `u^2`, `v^2` coefficients and no `uv` term.
    pub fn is_circle_shaped(&self) -> bool {
        !self.0[0].is_zero() && self.0[0] == self.0[2] && self.0[1].is_zero()
    }

    /// The binary quadric cut on `line`, in the coordinates of
    /// [`Line::basis`]. On `w = 0` this is `A u^2 + B uv + C v^2`.
    pub fn restrict(&self, line: &Line) -> BinaryQuadric {
        let [p0, p1] = line.basis();
        let m = self.matrix();
        let bil = |x: &[FieldElement; 3], y: &[FieldElement; 3]| dot3(x, &to3(&m.mul_vec(y)));
        BinaryQuadric {
            a: bil(&p0, &p0),
            b: bil(&p0, &p1).double(),
            c: bil(&p1, &p1),
        }
    }

    /// A circle-shaped conic as the cycle `A (u^2 + v^2) + (D, E).(u, v) + F`
    /// over the standard plane.
    pub fn to_cycle(&self) -> Result<Cycle> {
        if !self.is_circle_shaped() {
            return Err(Error::NotCircular);
        }
        let f = self.field();
        let space = QuadSpace::standard(f, 2)?;
        let [a, _, _, d, e, g] = &self.0;
        Cycle::new(&space, a.clone(), EVector::new(vec![d.clone(), e.clone()]), g.clone())
    }
}

fn to3(v: &[FieldElement]) -> [FieldElement; 3] {
    [v[0].clone(), v[1].clone(), v[2].clone()]
}

impl fmt::Display for Conic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["u^2", "uv", "v^2", "uw", "vw", "w^2"];
        let terms: Vec<String> = self.0.iter().zip(names).map(|(c, n)| format!("{c} {n}")).collect();
        write!(f, "{}", terms.join(" + "))
    }
}

fn standard_dot(x: &(FieldElement, FieldElement), y: &(FieldElement, FieldElement)) -> FieldElement {
    &x.0 * &y.0 + &x.1 * &y.1
}

fn collinear(m: &PlanePoint, n: &PlanePoint, p: &PlanePoint) -> bool {
    dot3(&cross(&m.homogeneous(), &n.homogeneous()), &p.homogeneous()).is_zero()
}

/// The line through `vertex` orthogonal to the side `a b`.
fn altitude(vertex: &PlanePoint, a: &PlanePoint, b: &PlanePoint) -> Result<Line> {
    let d = b.sub(a);
    if standard_dot(&d, &d).is_zero() {
        return Err(Error::DegenerateAltitudes);
    }
    let c = -standard_dot(&d, &(vertex.u.clone(), vertex.v.clone()));
    Line::new(d.0, d.1, c)
}

pub fn orthocenter(m: &PlanePoint, n: &PlanePoint, p: &PlanePoint) -> Result<PlanePoint> {
    if collinear(m, n, p) {
        return Err(Error::Collinear);
    }
    let am = altitude(m, n, p)?;
    let an = altitude(n, p, m)?;
    let ap = altitude(p, m, n)?;
    let t = am.meet(&an).ok_or(Error::DegenerateAltitudes)?;
    if !ap.contains(&t) {
        return Err(Error::DegenerateAltitudes);
    }
    Ok(t)
}

/// A triangle with its orthocenter, which lies on none of the sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthoConfig {
    pub m: PlanePoint,
    pub n: PlanePoint,
    pub p: PlanePoint,
    pub t: PlanePoint,
}

impl OrthoConfig {
    pub fn new(m: PlanePoint, n: PlanePoint, p: PlanePoint) -> Result<OrthoConfig> {
        let t = orthocenter(&m, &n, &p)?;
        for (a, b) in [(&m, &n), (&n, &p), (&p, &m)] {
            if Line::through(a, b)?.contains(&t) {
                return Err(Error::OrthocenterOnSide);
            }
        }
        Ok(OrthoConfig { m, n, p, t })
    }

    pub fn field(&self) -> Field {
        self.m.field()
    }

    pub fn points(&self) -> [&PlanePoint; 4] {
        [&self.m, &self.n, &self.p, &self.t]
    }
}

/// `MT * NP` and `NT * MP`.
pub fn orthic_pencil(cfg: &OrthoConfig) -> Result<(Conic, Conic)> {
    let (m, n, p, t) = (&cfg.m, &cfg.n, &cfg.p, &cfg.t);
    let q0 = Conic::line_pair(&Line::through(m, t)?, &Line::through(n, p)?);
    let q1 = Conic::line_pair(&Line::through(n, t)?, &Line::through(m, p)?);
    Ok((q0, q1))
}

/// `C^{-1} l`, the pole of `line` for a nondegenerate conic.
pub fn pole_of_line(conic: &Conic, line: &Line) -> Result<[FieldElement; 3]> {
    let inv = conic.matrix().inverse().ok_or(Error::DegenerateConic)?;
    Ok(to3(&inv.mul_vec(&line.0)))
}

/// The polar line of a homogeneous point.
pub fn polar_of_point(conic: &Conic, x: &[FieldElement; 3]) -> Result<Line> {
    let l = to3(&conic.matrix().mul_vec(x));
    Line::new(l[0].clone(), l[1].clone(), l[2].clone())
}

fn monomials(x: &[FieldElement; 3]) -> Vec<FieldElement> {
    let [u, v, w] = x;
    vec![u * u, u * v, v * v, u * w, v * w, w * w]
}

/// The conic through the poles of `line` for the members of the pencil
/// `q0 + t q1`. Poles of nondegenerate members are interpolated, topped up
/// by `adj(C) l` for degenerate members, and every sample beyond the five
/// used is checked to lie on the result.
pub fn eleven_point_conic(q0: &Conic, q1: &Conic, line: &Line) -> Result<Conic> {
    if !desargues_condition(&q0.restrict(line), &q1.restrict(line)) {
        return Err(Error::SingularRestriction);
    }
    let f = q0.field();
    let mut members: Vec<Conic> = vec![q1.clone()];
    members.extend(
        search_candidates(f, PENCIL_PARAMETER_BUDGET)
            .iter()
            .map(|t| q0.add(&q1.scale(t))),
    );
    let mut samples: Vec<[FieldElement; 3]> = Vec::new();
    let mut limits: Vec<[FieldElement; 3]> = Vec::new();
    let add = |samples: &mut Vec<[FieldElement; 3]>, x: [FieldElement; 3]| {
        let x = normalize3(x);
        if !samples.iter().any(|y| is_zero3(&cross(&x, y))) {
            samples.push(x);
        }
    };
    for c in &members {
        if !f.is_finite() && samples.len() >= ENOUGH_SAMPLES {
            break;
        }
        // adj(M) l is proportional to the pole when M is invertible
        let m = c.matrix();
        let x = to3(&m.adjugate().mul_vec(&line.0));
        if !m.det().is_zero() {
            add(&mut samples, x);
        } else if !is_zero3(&x) {
            limits.push(x);
        }
    }
    for x in limits {
        add(&mut samples, x);
    }
    const NEEDED: usize = 6;
    if samples.len() < NEEDED {
        return Err(Error::NotEnoughSamples {
            found: samples.len(),
            needed: NEEDED,
        });
    }
    // grow a rank-five subsystem, then check the rest
    let mut chosen: Vec<Vec<FieldElement>> = Vec::new();
    // echelon rows with their pivot columns, for independence tests
    let mut echelon: Vec<(usize, Vec<FieldElement>)> = Vec::new();
    let mut rest = Vec::new();
    for x in &samples {
        let row = monomials(x);
        if chosen.len() < 5 {
            let mut r = row.clone();
            for (piv, e) in &echelon {
                if !r[*piv].is_zero() {
                    let k = r[*piv].clone();
                    for (ri, ei) in r.iter_mut().zip(e) {
                        *ri = &*ri - &(&k * ei);
                    }
                }
            }
            if let Some(piv) = r.iter().position(|e| !e.is_zero()) {
                let s = r[piv].inv();
                echelon.push((piv, r.into_iter().map(|e| e * &s).collect()));
                chosen.push(row);
                continue;
            }
        }
        rest.push(x.clone());
    }
    if chosen.len() < 5 || rest.is_empty() {
        return Err(Error::NotEnoughSamples {
            found: chosen.len() + rest.len().min(1),
            needed: NEEDED,
        });
    }
    // back substitution: each echelon row is zero at earlier pivots
    let mut coeffs: [Option<FieldElement>; 6] = Default::default();
    let free = (0..6).find(|c| echelon.iter().all(|(p, _)| p != c)).expect("rank five");
    coeffs[free] = Some(f.one());
    for (piv, row) in echelon.iter().rev() {
        let sum = (0..6)
            .filter(|c| c != piv)
            .filter_map(|c| coeffs[c].as_ref().map(|x| &row[c] * x))
            .fold(f.zero(), |a, b| a + b);
        coeffs[*piv] = Some(-sum);
    }
    let conic = Conic::new(coeffs.map(|x| x.unwrap_or_else(|| f.zero())))?;
    if rest.iter().any(|x| !conic.evaluate_homogeneous(x).is_zero()) {
        return Err(Error::PoleLocusMismatch);
    }
    Ok(conic)
}

/// Six midpoints (MN, PT, MP, NT, MT, NP) and the three diagonal points
/// (MN ∩ PT, MP ∩ NT, MT ∩ NP); a diagonal pair meeting at infinity is `None`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NinePoints {
    pub midpoints: [PlanePoint; 6],
    pub diagonal: [Option<PlanePoint>; 3],
}

impl NinePoints {
    pub fn affine_points(&self) -> Vec<PlanePoint> {
        self.midpoints
            .iter()
            .cloned()
            .chain(self.diagonal.iter().flatten().cloned())
            .collect()
    }

    pub fn has_parallel_pair(&self) -> bool {
        self.diagonal.iter().any(Option::is_none)
    }
}

pub fn nine_points(cfg: &OrthoConfig) -> Result<NinePoints> {
    let (m, n, p, t) = (&cfg.m, &cfg.n, &cfg.p, &cfg.t);
    let pairs = [(m, n), (p, t), (m, p), (n, t), (m, t), (n, p)];
    let midpoints = pairs.map(|(a, b)| a.midpoint(b));
    let diag = |a: (&PlanePoint, &PlanePoint), b: (&PlanePoint, &PlanePoint)| -> Result<Option<PlanePoint>> {
        Ok(Line::through(a.0, a.1)?.meet(&Line::through(b.0, b.1)?))
    };
    let diagonal = [
        diag((m, n), (p, t))?,
        diag((m, p), (n, t))?,
        diag((m, t), (n, p))?,
    ];
    Ok(NinePoints { midpoints, diagonal })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NinePointCircle {
    pub conic: Conic,
    pub cycle: Cycle,
    pub points: NinePoints,
}

impl NinePointCircle {
    /// Every affine one of the nine points lies on the circle.
    pub fn all_incident(&self) -> bool {
        self.points.affine_points().iter().all(|x| self.conic.contains(x))
    }
}

/// The conic of poles of the line at infinity for the orthic pencil, as a
/// cycle of the standard plane.
pub fn nine_point_circle(cfg: &OrthoConfig) -> Result<NinePointCircle> {
    let (q0, q1) = orthic_pencil(cfg)?;
    let conic = eleven_point_conic(&q0, &q1, &Line::at_infinity(cfg.field()))?;
    let cycle = conic.to_cycle()?;
    let points = nine_points(cfg)?;
    Ok(NinePointCircle { conic, cycle, points })
}
