//! Reflections of the cycle space in non-isotropic cycles, their action on
//! `V`, the direct affine reflection and inversion formulas, and words of
//! reflections as inversive maps.

use std::fmt;
use std::sync::Arc;

use crate::cycle::{same_space, Cycle, VPoint};
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::linalg::Matrix;
use crate::space::{EVector, Space};

/// The reflection `x -> x - 2 <x,p>/<p,p> p` in a non-isotropic mirror `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reflection {
    mirror: Cycle,
    norm: FieldElement,
}

impl Reflection {
    pub fn new(mirror: Cycle) -> Result<Reflection> {
        let norm = mirror.norm();
        if norm.is_zero() {
            return Err(Error::IsotropicMirror);
        }
        Ok(Reflection { mirror, norm })
    }

    pub fn mirror(&self) -> &Cycle {
        &self.mirror
    }

    pub fn space(&self) -> &Space {
        self.mirror.space()
    }

    pub fn apply(&self, x: &Cycle) -> Result<Cycle> {
        let k = self.mirror.pairing(x)?.double() / &self.norm;
        Ok(x.sub(&self.mirror.scale(&k)))
    }

    pub fn apply_point(&self, v: &VPoint) -> Result<VPoint> {
        v.check_space(self.space())?;
        self.apply(&v.embed(self.space())?)?.extract_point()
    }

    /// Columns are the images of the coordinate cycles.
    pub fn matrix(&self) -> CycleMatrix {
        let space = self.space();
        let f = space.field();
        let k = space.dim() + 2;
        let cols = (0..k)
            .map(|j| {
                let mut e = vec![f.zero(); k];
                e[j] = f.one();
                let basis = Cycle::from_coords(space, &e).expect("coordinate cycle");
                self.apply(&basis).expect("same space").coords()
            })
            .collect();
        CycleMatrix::new(space, Matrix::from_columns(f, cols)).expect("reflections are invertible")
    }
}

pub fn reflect(mirror: &Cycle, x: &Cycle) -> Result<Cycle> {
    Reflection::new(mirror.clone())?.apply(x)
}

pub fn reflect_point(mirror: &Cycle, v: &VPoint) -> Result<VPoint> {
    Reflection::new(mirror.clone())?.apply_point(v)
}

/// `x -> x - 2 b L(x) / b.b` for the line `L = b.X + c`; fixes `∞`.
pub fn affine_reflect(line: &Cycle, v: &VPoint) -> Result<VPoint> {
    if !line.is_line() {
        return Err(Error::NotALine);
    }
    let space = line.space();
    v.check_space(space)?;
    let VPoint::Finite(x) = v else {
        return Ok(VPoint::Infinity);
    };
    let bb = space.nonzero_norm(line.b())?;
    let k = line.evaluate(x)?.double() / bb;
    Ok(VPoint::Finite(x.sub(&line.b().scale(&k))))
}

/// Inversion in a circle of center `m` and size `s != 0`:
/// `x' - m = (x - m) s / h(x - m)`, exchanging `m` and `∞`.
pub fn invert_point(circle: &Cycle, v: &VPoint) -> Result<VPoint> {
    let cs = circle.center_and_size()?;
    if cs.size.is_zero() {
        return Err(Error::ZeroSizeCircle);
    }
    let space = circle.space();
    v.check_space(space)?;
    let VPoint::Finite(x) = v else {
        return Ok(VPoint::Finite(cs.center));
    };
    let d = x.sub(&cs.center);
    if d.is_zero() {
        return Ok(VPoint::Infinity);
    }
    let h = space.nonzero_norm(&d)?;
    Ok(VPoint::Finite(cs.center.add(&d.scale(&(cs.size / h)))))
}

/// The Gram matrix of the cycle pairing in coordinates `(a, b_1..b_n, c)`.
pub fn cycle_gram(space: &Space) -> Matrix {
    let f = space.field();
    let n = space.dim();
    let mut g = Matrix::zeros(f, n + 2, n + 2);
    g[(0, n + 1)] = f.from_i64(-2);
    g[(n + 1, 0)] = f.from_i64(-2);
    for (i, d) in space.diag().iter().enumerate() {
        g[(i + 1, i + 1)] = d.clone();
    }
    g
}

/// An invertible linear map of the cycle space, acting on coordinate columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleMatrix {
    space: Space,
    matrix: Matrix,
    orthogonal: bool,
}

impl CycleMatrix {
    pub fn new(space: &Space, matrix: Matrix) -> Result<CycleMatrix> {
        let k = space.dim() + 2;
        if matrix.rows() != k || matrix.cols() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                got: matrix.rows().max(matrix.cols()),
            });
        }
        if matrix.field() != space.field() {
            return Err(Error::FieldMismatch);
        }
        if matrix.det().is_zero() {
            return Err(Error::SingularMatrix);
        }
        let g = cycle_gram(space);
        let orthogonal = &(&matrix.transpose() * &g) * &matrix == g;
        Ok(CycleMatrix {
            space: Arc::clone(space),
            matrix,
            orthogonal,
        })
    }

    pub fn identity(space: &Space) -> CycleMatrix {
        CycleMatrix::new(space, Matrix::identity(space.field(), space.dim() + 2)).expect("identity")
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    /// Whether `<Mx, My> = <x, y>` on the coordinate basis.
    pub fn preserves_pairing(&self) -> bool {
        self.orthogonal
    }

    pub fn apply(&self, x: &Cycle) -> Result<Cycle> {
        if !same_space(&self.space, x.space()) {
            return Err(Error::SpaceMismatch);
        }
        Cycle::from_coords(&self.space, &self.matrix.mul_vec(&x.coords()))
    }

    pub fn apply_point(&self, v: &VPoint) -> Result<VPoint> {
        v.check_space(&self.space)?;
        self.apply(&v.embed(&self.space)?)?.extract_point()
    }

    /// `other` after `self`.
    pub fn then(&self, other: &CycleMatrix) -> Result<CycleMatrix> {
        if !same_space(&self.space, &other.space) {
            return Err(Error::SpaceMismatch);
        }
        CycleMatrix::new(&self.space, &other.matrix * &self.matrix)
    }
}

impl fmt::Display for CycleMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.matrix)
    }
}

/// A composite of reflections; the first entry acts first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InversiveWord {
    space: Space,
    reflections: Vec<Reflection>,
}

impl InversiveWord {
    pub fn identity(space: &Space) -> InversiveWord {
        InversiveWord {
            space: Arc::clone(space),
            reflections: Vec::new(),
        }
    }

    pub fn new(space: &Space, reflections: Vec<Reflection>) -> Result<InversiveWord> {
        if reflections.iter().any(|r| !same_space(space, r.space())) {
            return Err(Error::SpaceMismatch);
        }
        Ok(InversiveWord {
            space: Arc::clone(space),
            reflections,
        })
    }

    pub fn from_mirrors(space: &Space, mirrors: &[Cycle]) -> Result<InversiveWord> {
        let rs = mirrors
            .iter()
            .map(|m| Reflection::new(m.clone()))
            .collect::<Result<Vec<_>>>()?;
        InversiveWord::new(space, rs)
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn reflections(&self) -> &[Reflection] {
        &self.reflections
    }

    pub fn len(&self) -> usize {
        self.reflections.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reflections.is_empty()
    }

    pub fn push(&mut self, r: Reflection) {
        assert!(same_space(&self.space, r.space()), "reflection over another space");
        self.reflections.push(r);
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &InversiveWord) -> InversiveWord {
        let mut w = self.clone();
        for r in &other.reflections {
            w.push(r.clone());
        }
        w
    }

    pub fn inverse(&self) -> InversiveWord {
        let mut w = self.clone();
        w.reflections.reverse();
        w
    }

    pub fn apply(&self, x: &Cycle) -> Result<Cycle> {
        self.reflections.iter().try_fold(x.clone(), |acc, r| r.apply(&acc))
    }

    pub fn apply_point(&self, v: &VPoint) -> Result<VPoint> {
        v.check_space(&self.space)?;
        self.reflections.iter().try_fold(v.clone(), |acc, r| r.apply_point(&acc))
    }

    /// `M_k ... M_1`.
    pub fn as_matrix(&self) -> CycleMatrix {
        self.reflections
            .iter()
            .fold(CycleMatrix::identity(&self.space), |acc, r| {
                acc.then(&r.matrix()).expect("same space")
            })
    }
}

/// A word sending `u -> u2` and `w -> w2`, of length at most four.
pub fn map_pair_to_pair(u: &VPoint, w: &VPoint, u2: &VPoint, w2: &VPoint, space: &Space) -> Result<InversiveWord> {
    for v in [u, w, u2, w2] {
        v.check_space(space)?;
    }
    if u == w || u2 == w2 {
        return Err(Error::DegenerateInput("a pair of equal points"));
    }
    let to_standard = normalize_pair(space, u, w)?;
    let from_standard = normalize_pair(space, u2, w2)?.inverse();
    Ok(to_standard.concat(&from_standard))
}

// Sends (u, w) to (0, ∞) with at most two reflections.
fn normalize_pair(space: &Space, u: &VPoint, w: &VPoint) -> Result<InversiveWord> {
    let f = space.field();
    let mut word = InversiveWord::identity(space);
    let mut u = u.clone();
    if let VPoint::Finite(wv) = w {
        let circle = Cycle::from_center_size(space, wv, &f.one())?;
        let r = Reflection::new(circle)?;
        u = r.apply_point(&u)?;
        word.push(r);
        let VPoint::Finite(uv) = &u else {
            unreachable!("only the center is sent to infinity");
        };
        if !uv.is_zero() {
            // perpendicular bisector of u and 0
            let h = space.nonzero_norm(uv)?;
            let bisector = Cycle::line(space, uv.clone(), -(h / f.from_i64(2)))?;
            word.push(Reflection::new(bisector)?);
        }
        return Ok(word);
    }
    let VPoint::Finite(uv) = &u else {
        unreachable!("u differs from w = ∞");
    };
    if !uv.is_zero() {
        // two parallel hyperplanes u.X = 0 and u.X + h(u)/2 = 0 translate by -u
        let h = space.nonzero_norm(uv)?;
        word.push(Reflection::new(Cycle::line(space, uv.clone(), f.zero())?)?);
        word.push(Reflection::new(Cycle::line(space, uv.clone(), h / f.from_i64(2))?)?);
    }
    Ok(word)
}

/// `{0, u_1, ..., u_n, ∞, 2u_1 + u_2 + ... + u_n}`.
pub fn isotropic_frame(space: &Space) -> Vec<VPoint> {
    let f = space.field();
    let n = space.dim();
    let mut pts = vec![VPoint::Finite(EVector::zero(f, n))];
    pts.extend((0..n).map(|i| VPoint::Finite(EVector::basis(f, n, i))));
    pts.push(VPoint::Infinity);
    let mut z = vec![f.one(); n];
    z[0] = f.from_i64(2);
    pts.push(VPoint::Finite(EVector::new(z)));
    pts
}

/// Whether every `k - 1` of the `k` cycles are linearly independent, `k - 1`
/// being the dimension of the cycle space.
pub fn is_projective_frame(cycles: &[Cycle]) -> bool {
    let Some(first) = cycles.first() else {
        return false;
    };
    let space = first.space();
    let k = space.dim() + 2;
    if cycles.len() != k + 1 {
        return false;
    }
    (0..cycles.len()).all(|skip| {
        let cols: Vec<Vec<FieldElement>> = cycles
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .map(|(_, c)| c.coords())
            .collect();
        !Matrix::from_columns(space.field(), cols).det().is_zero()
    })
}
