//! Pencils (two-dimensional subspaces) of the cycle space, orthogonal
//! complements, and conjugate points.

use std::sync::Arc;

use crate::cycle::{same_space, Cycle, VPoint};
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::linalg::Matrix;
use crate::space::{search_candidates, Space};
use crate::transform::{cycle_gram, reflect_point};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PencilClass {
    Singular,
    RegularAnisotropic,
    RegularArtinian,
}

/// Points of `V` found on a projective subspace, and whether the search
/// was exhaustive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommonZeros {
    pub points: Vec<VPoint>,
    pub complete: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pencil {
    p: Cycle,
    q: Cycle,
}

impl Pencil {
    pub fn new(p: Cycle, q: Cycle) -> Result<Pencil> {
        if !same_space(p.space(), q.space()) {
            return Err(Error::SpaceMismatch);
        }
        if p.is_zero() || q.is_zero() {
            return Err(Error::ZeroFunction);
        }
        let m = Matrix::from_rows(p.space().field(), vec![p.coords(), q.coords()]);
        if m.rank() < 2 {
            return Err(Error::DependentCycles);
        }
        Ok(Pencil { p, q })
    }

    pub fn p(&self) -> &Cycle {
        &self.p
    }

    pub fn q(&self) -> &Cycle {
        &self.q
    }

    pub fn space(&self) -> &Space {
        self.p.space()
    }

    /// `alpha p + beta q`.
    pub fn member(&self, alpha: &FieldElement, beta: &FieldElement) -> Cycle {
        Cycle::combine(alpha, &self.p, beta, &self.q)
    }

    pub fn contains(&self, x: &Cycle) -> bool {
        if !same_space(self.space(), x.space()) {
            return false;
        }
        let m = Matrix::from_rows(
            self.space().field(),
            vec![self.p.coords(), self.q.coords(), x.coords()],
        );
        m.rank() == 2
    }

    pub fn gram2(&self) -> Matrix {
        let pq = self.p.pairing_unchecked(&self.q);
        Matrix::from_rows(
            self.space().field(),
            vec![vec![self.p.norm(), pq.clone()], vec![pq, self.q.norm()]],
        )
    }

    /// Singular when the Gram determinant `D` vanishes, Artinian when `-D`
    /// is a square.
    pub fn classify(&self) -> PencilClass {
        let d = self.gram2().det();
        if d.is_zero() {
            PencilClass::Singular
        } else if self.space().field().is_square(&-d) {
            PencilClass::RegularArtinian
        } else {
            PencilClass::RegularAnisotropic
        }
    }

    /// The isotropic members up to scalar: the radical of a singular pencil,
    /// or the two roots of `<p + t q, p + t q> = 0` of an Artinian one,
    /// the root with `-sqrt(-D)` first.
    pub fn isotropic_members(&self) -> Result<Vec<Cycle>> {
        let f = self.space().field();
        let g = self.gram2();
        match self.classify() {
            PencilClass::Singular => {
                let k = g.kernel();
                let r = &k[0];
                Ok(vec![self.member(&r[0], &r[1])])
            }
            PencilClass::RegularAnisotropic => Err(Error::NoRationalMembers),
            PencilClass::RegularArtinian => {
                let (pp, pq, qq) = (&g[(0, 0)], &g[(0, 1)], &g[(1, 1)]);
                let one = f.one();
                if qq.is_zero() {
                    // linear in t, q itself is the root at infinity
                    let t = -(pp / pq.double());
                    return Ok(vec![self.member(&one, &t), self.q.clone()]);
                }
                let root = f.sqrt(&-g.det()).expect("Artinian discriminant is a square");
                let t1 = (-pq - &root) / qq;
                let t2 = (-pq + &root) / qq;
                Ok(vec![self.member(&one, &t1), self.member(&one, &t2)])
            }
        }
    }

    /// Where the pencil meets `V`. For a regular anisotropic pencil these
    /// are the isotropic points of the orthogonal complement, found by
    /// [`isotropic_points`].
    pub fn common_zeros(&self, budget: u64) -> Result<CommonZeros> {
        match self.classify() {
            PencilClass::RegularAnisotropic => {
                let comp = orthocomplement(self.space(), &[self.p.clone(), self.q.clone()])?;
                isotropic_points(self.space(), &comp, budget)
            }
            _ => {
                let points = self
                    .isotropic_members()?
                    .iter()
                    .map(Cycle::extract_point)
                    .collect::<Result<Vec<_>>>()?;
                Ok(CommonZeros {
                    points,
                    complete: true,
                })
            }
        }
    }
}

/// A basis of the cycles orthogonal to every cycle in `cycles`.
pub fn orthocomplement(space: &Space, cycles: &[Cycle]) -> Result<Vec<Cycle>> {
    let f = space.field();
    let k = space.dim() + 2;
    if cycles.iter().any(|c| !same_space(space, c.space())) {
        return Err(Error::SpaceMismatch);
    }
    let kernel = if cycles.is_empty() {
        let id = Matrix::identity(f, k);
        (0..k).map(|i| id.row(i).to_vec()).collect()
    } else {
        let g = cycle_gram(space);
        let rows = Matrix::from_rows(f, cycles.iter().map(Cycle::coords).collect());
        (&rows * &g).kernel()
    };
    kernel.iter().map(|v| Cycle::from_coords(space, v)).collect()
}

/// The points of `V` in the projective span of `basis`: nonzero isotropic
/// combinations `sum t_i k_i` up to scalar. The search normalizes the first
/// nonzero `t_i` to one, ranges over at most `budget` choices of the middle
/// coordinates and solves the last one exactly, so spans of dimension at most
/// two (and everything over a small finite field) are searched completely.
pub fn isotropic_points(space: &Space, basis: &[Cycle], budget: u64) -> Result<CommonZeros> {
    let f = space.field();
    let m = basis.len();
    let gram: Vec<Vec<FieldElement>> = basis
        .iter()
        .map(|x| basis.iter().map(|y| x.pairing_unchecked(y)).collect())
        .collect();
    let quad = |t: &[FieldElement]| -> FieldElement {
        let mut acc = f.zero();
        for i in 0..t.len() {
            for j in 0..t.len() {
                acc = acc + &gram[i][j] * &t[i] * &t[j];
            }
        }
        acc
    };
    let mut points: Vec<VPoint> = Vec::new();
    let mut complete = true;
    let mut record = |t: &[FieldElement]| -> Result<()> {
        let mut c = Cycle::from_coords(space, &vec![f.zero(); space.dim() + 2])?;
        for (ti, k) in t.iter().zip(basis) {
            c = c.add(&k.scale(ti));
        }
        let v = c.extract_point()?;
        if !points.contains(&v) {
            points.push(v);
        }
        Ok(())
    };
    for lead in 0..m {
        let mut t = vec![f.zero(); m];
        t[lead] = f.one();
        if lead == m - 1 {
            if gram[m - 1][m - 1].is_zero() {
                record(&t)?;
            }
            continue;
        }
        let free = m - 2 - lead;
        let per = if free == 0 {
            1
        } else {
            ((budget as f64).powf(1.0 / free as f64).floor() as u64).max(2)
        };
        let candidates = search_candidates(f, per);
        if free > 0 && f.order().is_none_or(|q| q > candidates.len() as u64) {
            complete = false;
        }
        let mut idx = vec![0usize; free];
        loop {
            for (i, &c) in idx.iter().enumerate() {
                t[lead + 1 + i] = candidates[c].clone();
            }
            // a s^2 + 2 b s + c for the last coordinate s
            t[m - 1] = f.zero();
            let a = &gram[m - 1][m - 1];
            let b = (0..m - 1).fold(f.zero(), |acc, i| acc + &gram[i][m - 1] * &t[i]);
            let c = quad(&t);
            let mut roots = Vec::new();
            if a.is_zero() {
                if !b.is_zero() {
                    roots.push(-(c / b.double()));
                } else if c.is_zero() {
                    roots.push(f.zero());
                }
            } else if let Some(r) = f.sqrt(&(b.square() - a * &c)) {
                roots.push((-&b - &r) / a);
                if !r.is_zero() {
                    roots.push((-&b + &r) / a);
                }
            }
            for s in roots {
                t[m - 1] = s;
                record(&t)?;
            }
            let mut k = 0;
            loop {
                if k == free {
                    break;
                }
                idx[k] += 1;
                if idx[k] < candidates.len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == free {
                break;
            }
        }
    }
    Ok(CommonZeros { points, complete })
}

/// The conjugate of `m` in a non-isotropic cycle, with coefficients
/// `(alpha, beta)` such that `p = alpha embed(m) + beta embed(m')` whenever
/// the two points differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conjugate {
    pub image: VPoint,
    pub certificate: Option<(FieldElement, FieldElement)>,
}

pub fn conjugate(p: &Cycle, m: &VPoint) -> Result<Conjugate> {
    let image = reflect_point(p, m)?;
    if &image == m {
        return Ok(Conjugate {
            image,
            certificate: None,
        });
    }
    let space = p.space();
    let qm = m.embed(space)?;
    let qi = image.embed(space)?;
    let system = Matrix::from_columns(space.field(), vec![qm.coords(), qi.coords()]);
    let sol = system
        .solve(&p.coords())
        .ok_or(Error::DegenerateInput("mirror outside the span of the zero circles"))?;
    Ok(Conjugate {
        image,
        certificate: Some((sol[0].clone(), sol[1].clone())),
    })
}

impl Conjugate {
    /// Checks `p = alpha embed(m) + beta embed(image)` exactly.
    pub fn verify(&self, p: &Cycle, m: &VPoint) -> Result<bool> {
        let Some((alpha, beta)) = &self.certificate else {
            return Ok(&self.image == m);
        };
        let space = Arc::clone(p.space());
        let rebuilt = Cycle::combine(alpha, &m.embed(&space)?, beta, &self.image.embed(&space)?);
        Ok(&rebuilt == p)
    }
}
