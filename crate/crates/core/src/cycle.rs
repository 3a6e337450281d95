//! Cycles `p(X) = a X.X + b.X + c` on a quadratic space, the cycle pairing,
//! and the isotropic variety `V = E ∪ {∞}`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::space::{EVector, QuadSpace, Representation, Space};

/// Default candidate budget for zero-set searches.
pub const DEFAULT_SEARCH_BUDGET: u64 = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CycleClass {
    Constant,
    Line,
    Circle { zero_size: bool },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterSize {
    pub center: EVector,
    pub size: FieldElement,
}

/// A point of `V`: a vector of `E` or the exceptional point.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum VPoint {
    Infinity,
    Finite(EVector),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ZeroSetVerdict {
    Yes(VPoint),
    No,
    Unknown,
}

/// An element of the cycle space. Coefficients are kept as given, never
/// rescaled.
#[derive(Clone, Debug)]
pub struct Cycle {
    space: Space,
    a: FieldElement,
    b: EVector,
    c: FieldElement,
}

impl PartialEq for Cycle {
    fn eq(&self, other: &Cycle) -> bool {
        same_space(&self.space, &other.space) && self.a == other.a && self.b == other.b && self.c == other.c
    }
}

impl Eq for Cycle {}

pub(crate) fn same_space(s: &Space, t: &Space) -> bool {
    Arc::ptr_eq(s, t) || **s == **t
}

impl Cycle {
    /// Rejects the zero function and coefficients from another space.
    pub fn new(space: &Space, a: FieldElement, b: EVector, c: FieldElement) -> Result<Cycle> {
        let p = Cycle::from_parts(space, a, b, c)?;
        if p.is_zero() {
            return Err(Error::ZeroFunction);
        }
        Ok(p)
    }

    /// Like [`Cycle::new`] but accepts the zero function, which linear
    /// combinations can produce.
    pub fn from_parts(space: &Space, a: FieldElement, b: EVector, c: FieldElement) -> Result<Cycle> {
        space.check_vector(&b)?;
        if a.field() != space.field() || c.field() != space.field() {
            return Err(Error::FieldMismatch);
        }
        Ok(Cycle {
            space: Arc::clone(space),
            a,
            b,
            c,
        })
    }

    /// From coordinates `(a, b_1, ..., b_n, c)`; zero allowed.
    pub fn from_coords(space: &Space, coords: &[FieldElement]) -> Result<Cycle> {
        let n = space.dim();
        if coords.len() != n + 2 {
            return Err(Error::DimensionMismatch {
                expected: n + 2,
                got: coords.len(),
            });
        }
        Cycle::from_parts(
            space,
            coords[0].clone(),
            EVector::new(coords[1..=n].to_vec()),
            coords[n + 1].clone(),
        )
    }

    pub fn from_i64(space: &Space, a: i64, b: &[i64], c: i64) -> Result<Cycle> {
        let f = space.field();
        Cycle::new(space, f.from_i64(a), EVector::from_i64(f, b), f.from_i64(c))
    }

    /// The nonzero constant `c`.
    pub fn constant(space: &Space, c: FieldElement) -> Result<Cycle> {
        let n = space.dim();
        Cycle::new(space, space.field().zero(), EVector::zero(space.field(), n), c)
    }

    /// The linear function `b.X + c`.
    pub fn line(space: &Space, b: EVector, c: FieldElement) -> Result<Cycle> {
        Cycle::new(space, space.field().zero(), b, c)
    }

    /// `(X - m).(X - m) - s`.
    pub fn from_center_size(space: &Space, center: &EVector, size: &FieldElement) -> Result<Cycle> {
        space.check_vector(center)?;
        let f = space.field();
        let c = space.dot_unchecked(center, center) - size;
        Cycle::new(space, f.one(), center.scale(&f.from_i64(-2)), c)
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn a(&self) -> &FieldElement {
        &self.a
    }

    pub fn b(&self) -> &EVector {
        &self.b
    }

    pub fn c(&self) -> &FieldElement {
        &self.c
    }

    /// `(a, b_1, ..., b_n, c)`.
    pub fn coords(&self) -> Vec<FieldElement> {
        let mut v = Vec::with_capacity(self.b.len() + 2);
        v.push(self.a.clone());
        v.extend(self.b.coords().iter().cloned());
        v.push(self.c.clone());
        v
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero()
    }

    fn check_same(&self, other: &Cycle) -> Result<()> {
        if same_space(&self.space, &other.space) {
            Ok(())
        } else {
            Err(Error::SpaceMismatch)
        }
    }

    /// `<p, q> = b.b' - 2ac' - 2a'c`.
    pub fn pairing(&self, other: &Cycle) -> Result<FieldElement> {
        self.check_same(other)?;
        Ok(self.pairing_unchecked(other))
    }

    pub(crate) fn pairing_unchecked(&self, other: &Cycle) -> FieldElement {
        let bb = self.space.dot_unchecked(&self.b, &other.b);
        bb - (&self.a * &other.c).double() - (&other.a * &self.c).double()
    }

    /// `<p, p>`.
    pub fn norm(&self) -> FieldElement {
        self.pairing_unchecked(self)
    }

    pub fn is_isotropic(&self) -> bool {
        self.norm().is_zero()
    }

    pub fn classify(&self) -> Result<CycleClass> {
        if !self.a.is_zero() {
            return Ok(CycleClass::Circle {
                zero_size: self.is_isotropic(),
            });
        }
        if !self.b.is_zero() {
            return Ok(CycleClass::Line);
        }
        if !self.c.is_zero() {
            return Ok(CycleClass::Constant);
        }
        Err(Error::ZeroFunction)
    }

    pub fn is_circle(&self) -> bool {
        !self.a.is_zero()
    }

    pub fn is_line(&self) -> bool {
        self.a.is_zero() && !self.b.is_zero()
    }

    /// Center `-b/2a` and size `<p,p>/4a^2`, so that
    /// `p(X) = a (X - center).(X - center) - a s`.
    pub fn center_and_size(&self) -> Result<CenterSize> {
        if self.a.is_zero() {
            return Err(Error::NotACircle);
        }
        let two_a = self.a.double();
        let center = self.b.scale(&(-two_a.inv()));
        let size = self.norm() / two_a.square();
        Ok(CenterSize { center, size })
    }

    pub fn evaluate(&self, x: &EVector) -> Result<FieldElement> {
        self.space.check_vector(x)?;
        let s = &self.space;
        Ok(&self.a * s.dot_unchecked(x, x) + s.dot_unchecked(&self.b, x) + &self.c)
    }

    /// Whether `v` is a zero of `p`, with `∞` a zero of every line and
    /// constant. Agrees with `<p, embed(v)> = 0`.
    pub fn on_zero_set(&self, v: &VPoint) -> Result<bool> {
        match v {
            VPoint::Infinity => Ok(self.a.is_zero()),
            VPoint::Finite(w) => Ok(self.evaluate(w)?.is_zero()),
        }
    }

    /// Decides whether a circle has a finite zero, i.e. whether its size is
    /// represented by the form.
    pub fn zero_set_nonempty(&self, budget: u64) -> Result<ZeroSetVerdict> {
        let CenterSize { center, size } = self.center_and_size()?;
        Ok(match self.space.represent(&size, budget) {
            Representation::Found(y) => ZeroSetVerdict::Yes(VPoint::Finite(center.add(&y))),
            Representation::Impossible => ZeroSetVerdict::No,
            Representation::Unknown => ZeroSetVerdict::Unknown,
        })
    }

    /// The point of `V` represented by an isotropic cycle.
    pub fn extract_point(&self) -> Result<VPoint> {
        if self.is_zero() || !self.is_isotropic() {
            return Err(Error::NotIsotropic);
        }
        if self.a.is_zero() {
            if !self.b.is_zero() {
                return Err(Error::IsotropicVectorEncountered(self.b.to_string()));
            }
            return Ok(VPoint::Infinity);
        }
        Ok(VPoint::Finite(self.center_and_size()?.center))
    }

    /// Scaled so the first nonzero coordinate is one.
    pub fn normalized(&self) -> Cycle {
        match self.coords().iter().find(|x| !x.is_zero()) {
            Some(lead) => self.scale(&lead.inv()),
            None => self.clone(),
        }
    }

    /// `q = u p` for some nonzero scalar `u`.
    pub fn proj_equiv(&self, other: &Cycle) -> bool {
        if !same_space(&self.space, &other.space) || self.is_zero() || other.is_zero() {
            return false;
        }
        self.normalized() == other.normalized()
    }

    pub fn add(&self, other: &Cycle) -> Cycle {
        assert!(same_space(&self.space, &other.space), "cycles over different spaces");
        Cycle {
            space: Arc::clone(&self.space),
            a: &self.a + &other.a,
            b: self.b.add(&other.b),
            c: &self.c + &other.c,
        }
    }

    pub fn sub(&self, other: &Cycle) -> Cycle {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &FieldElement) -> Cycle {
        Cycle {
            space: Arc::clone(&self.space),
            a: &self.a * s,
            b: self.b.scale(s),
            c: &self.c * s,
        }
    }

    pub fn neg(&self) -> Cycle {
        self.scale(&-self.space.field().one())
    }

    /// `alpha p + beta q`.
    pub fn combine(alpha: &FieldElement, p: &Cycle, beta: &FieldElement, q: &Cycle) -> Cycle {
        p.scale(alpha).add(&q.scale(beta))
    }
}

/// `a | b_1 ... b_n | c`, the scene-file syntax.
impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b: Vec<String> = self.b.coords().iter().map(ToString::to_string).collect();
        write!(f, "{} | {} | {}", self.a, b.join(" "), self.c)
    }
}

impl VPoint {
    /// `∞` goes to the constant one, `w` to the zero circle `(X - w).(X - w)`.
    pub fn embed(&self, space: &Space) -> Result<Cycle> {
        let f = space.field();
        match self {
            VPoint::Infinity => Cycle::constant(space, f.one()),
            VPoint::Finite(w) => Cycle::from_center_size(space, w, &f.zero()),
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, VPoint::Infinity)
    }

    pub fn finite(&self) -> Option<&EVector> {
        match self {
            VPoint::Finite(w) => Some(w),
            VPoint::Infinity => None,
        }
    }

    pub fn check_space(&self, space: &QuadSpace) -> Result<()> {
        match self {
            VPoint::Infinity => Ok(()),
            VPoint::Finite(w) => space.check_vector(w),
        }
    }
}

/// `inf` or comma-separated coordinates.
impl fmt::Display for VPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VPoint::Infinity => write!(f, "inf"),
            VPoint::Finite(w) => write!(f, "{w}"),
        }
    }
}

impl fmt::Display for CycleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CycleClass::Constant => write!(f, "constant"),
            CycleClass::Line => write!(f, "line"),
            CycleClass::Circle { zero_size: true } => write!(f, "zero circle"),
            CycleClass::Circle { zero_size: false } => write!(f, "circle"),
        }
    }
}
