//! The Lorentz space `k + E + k` with `<t, t'> = y.y' + x x' - z z'`, and the
//! generalized stereographic projection onto the cycle space.

use std::fmt;
use std::sync::Arc;

use crate::cycle::{same_space, Cycle, VPoint};
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::space::{EVector, Space};

#[derive(Clone, Debug)]
pub struct LorentzVec {
    space: Space,
    pub x: FieldElement,
    pub y: EVector,
    pub z: FieldElement,
}

impl PartialEq for LorentzVec {
    fn eq(&self, other: &LorentzVec) -> bool {
        same_space(&self.space, &other.space) && self.x == other.x && self.y == other.y && self.z == other.z
    }
}

impl Eq for LorentzVec {}

impl LorentzVec {
    pub fn new(space: &Space, x: FieldElement, y: EVector, z: FieldElement) -> Result<LorentzVec> {
        space.check_vector(&y)?;
        if x.field() != space.field() || z.field() != space.field() {
            return Err(Error::FieldMismatch);
        }
        Ok(LorentzVec {
            space: Arc::clone(space),
            x,
            y,
            z,
        })
    }

    pub fn from_i64(space: &Space, x: i64, y: &[i64], z: i64) -> Result<LorentzVec> {
        let f = space.field();
        LorentzVec::new(space, f.from_i64(x), EVector::from_i64(f, y), f.from_i64(z))
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn product(&self, other: &LorentzVec) -> Result<FieldElement> {
        if !same_space(&self.space, &other.space) {
            return Err(Error::SpaceMismatch);
        }
        Ok(self.space.dot_unchecked(&self.y, &other.y) + &self.x * &other.x - &self.z * &other.z)
    }

    pub fn add(&self, other: &LorentzVec) -> LorentzVec {
        assert!(same_space(&self.space, &other.space), "vectors over different spaces");
        LorentzVec {
            space: Arc::clone(&self.space),
            x: &self.x + &other.x,
            y: self.y.add(&other.y),
            z: &self.z + &other.z,
        }
    }

    pub fn scale(&self, s: &FieldElement) -> LorentzVec {
        LorentzVec {
            space: Arc::clone(&self.space),
            x: &self.x * s,
            y: self.y.scale(s),
            z: &self.z * s,
        }
    }

    /// `(x, y, z) -> ((z - x)/2) X.X - y.X + (z + x)/2`.
    pub fn to_cycle(&self) -> Result<Cycle> {
        if self.is_zero() {
            return Err(Error::ZeroVector);
        }
        let half = self.space.field().from_i64(2).inv();
        Cycle::new(
            &self.space,
            (&self.z - &self.x) * &half,
            self.y.neg(),
            (&self.z + &self.x) * &half,
        )
    }

    /// Inverse of [`LorentzVec::to_cycle`]: `x = c - a`, `y = -b`, `z = a + c`.
    pub fn from_cycle(p: &Cycle) -> LorentzVec {
        LorentzVec {
            space: Arc::clone(p.space()),
            x: p.c() - p.a(),
            y: p.b().neg(),
            z: p.a() + p.c(),
        }
    }

    /// An isotropic vector's point: `∞` on the `(1, 0, 1)` line, otherwise
    /// `y / (z - x)`.
    pub fn to_point(&self) -> Result<VPoint> {
        if self.is_zero() {
            return Err(Error::ZeroVector);
        }
        if !self.product(self)?.is_zero() {
            return Err(Error::NotIsotropic);
        }
        let gap = &self.z - &self.x;
        if gap.is_zero() {
            if !self.y.is_zero() {
                return Err(Error::IsotropicVectorEncountered(self.y.to_string()));
            }
            return Ok(VPoint::Infinity);
        }
        Ok(VPoint::Finite(self.y.scale(&gap.inv())))
    }
}

impl fmt::Display for LorentzVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; {}; {})", self.x, self.y, self.z)
    }
}

pub fn lorentz_product(t: &LorentzVec, u: &LorentzVec) -> Result<FieldElement> {
    t.product(u)
}

pub fn stereo_to_cycle(t: &LorentzVec) -> Result<Cycle> {
    t.to_cycle()
}

pub fn stereo_from_cycle(p: &Cycle) -> LorentzVec {
    LorentzVec::from_cycle(p)
}

pub fn u_to_v(t: &LorentzVec) -> Result<VPoint> {
    t.to_point()
}
