//! Deterministic generators of geometric objects, seeded per stream.

use crate::cycle::{Cycle, VPoint};
use crate::error::Result;
use crate::field::{ElementStream, Field, FieldElement};
use crate::lorentz::LorentzVec;
use crate::ninepoint::{OrthoConfig, PlanePoint};
use crate::projline::BinaryQuadric;
use crate::space::{EVector, Space};

pub struct Sampler {
    stream: ElementStream,
}

impl Sampler {
    pub fn new(field: Field, seed: u64) -> Sampler {
        Sampler {
            stream: field.sample_stream(seed),
        }
    }

    pub fn field(&self) -> Field {
        self.stream.field()
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.stream.below(n)
    }

    pub fn coin(&mut self, numer: u64, denom: u64) -> bool {
        self.stream.coin(numer, denom)
    }

    pub fn element(&mut self) -> FieldElement {
        self.stream.element()
    }

    pub fn nonzero(&mut self) -> FieldElement {
        self.stream.nonzero()
    }

    /// An integer in `[-bound, bound]` as a field element.
    pub fn small_int(&mut self, bound: u64) -> FieldElement {
        self.stream.small_int(bound)
    }

    pub fn vector(&mut self, space: &Space) -> EVector {
        EVector::new((0..space.dim()).map(|_| self.element()).collect())
    }

    pub fn nonzero_vector(&mut self, space: &Space) -> EVector {
        loop {
            let v = self.vector(space);
            if !v.is_zero() {
                return v;
            }
        }
    }

    pub fn point(&mut self, space: &Space) -> VPoint {
        if self.coin(1, 10) {
            VPoint::Infinity
        } else {
            VPoint::Finite(self.vector(space))
        }
    }

    /// Two different points.
    pub fn point_pair(&mut self, space: &Space) -> (VPoint, VPoint) {
        let u = self.point(space);
        loop {
            let w = self.point(space);
            if w != u {
                return (u, w);
            }
        }
    }

    /// Constants, lines, zero circles and general circles, each scaled by a
    /// random nonzero factor.
    pub fn cycle(&mut self, space: &Space) -> Cycle {
        let f = self.field();
        let k = self.nonzero();
        let p = match self.below(10) {
            0 => Cycle::constant(space, f.one()).expect("nonzero"),
            1 | 2 => self.line(space),
            3 => VPoint::Finite(self.vector(space)).embed(space).expect("embed"),
            _ => self.circle(space),
        };
        p.scale(&k)
    }

    pub fn line(&mut self, space: &Space) -> Cycle {
        let b = self.nonzero_vector(space);
        let c = self.element();
        Cycle::line(space, b, c).expect("nonzero normal")
    }

    /// `a != 0`, any size.
    pub fn circle(&mut self, space: &Space) -> Cycle {
        let a = self.nonzero();
        let b = self.vector(space);
        let c = self.element();
        Cycle::new(space, a, b, c).expect("a != 0")
    }

    /// A circle of nonzero size.
    pub fn proper_circle(&mut self, space: &Space) -> Cycle {
        loop {
            let p = self.circle(space);
            if !p.is_isotropic() {
                return p;
            }
        }
    }

    /// Any cycle with `<p, p> != 0`.
    pub fn mirror(&mut self, space: &Space) -> Cycle {
        loop {
            let p = self.cycle(space);
            if !p.is_isotropic() {
                return p;
            }
        }
    }

    pub fn lorentz(&mut self, space: &Space) -> LorentzVec {
        let x = self.element();
        let y = self.vector(space);
        let z = self.element();
        LorentzVec::new(space, x, y, z).expect("same space")
    }

    pub fn quadric(&mut self) -> BinaryQuadric {
        loop {
            let (a, b, c) = (self.element(), self.element(), self.element());
            if let Ok(q) = BinaryQuadric::new(a, b, c) {
                return q;
            }
        }
    }

    pub fn proper_quadric(&mut self) -> BinaryQuadric {
        loop {
            let q = self.quadric();
            if q.is_proper() {
                return q;
            }
        }
    }

    pub fn plane_point(&mut self) -> PlanePoint {
        PlanePoint::new(self.element(), self.element())
    }

    /// One attempt at a valid configuration; the error says why the sampled
    /// triangle was rejected.
    pub fn ortho_config(&mut self) -> Result<OrthoConfig> {
        let (m, n, p) = (self.plane_point(), self.plane_point(), self.plane_point());
        OrthoConfig::new(m, n, p)
    }
}
