//! The quadratic space `E`: a diagonal form `h(x) = sum d_i x_i^2` over a field,
//! together with the bookkeeping of whether it is known to be anisotropic.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement, FieldKind};

/// Shared handle to a quadratic space; every geometric object holds one.
pub type Space = Arc<QuadSpace>;

/// Candidate budget used when a space is constructed.
pub const DEFAULT_ANISOTROPY_BUDGET: u64 = 10_000;

/// A vector of `E` in the diagonal basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EVector(Vec<FieldElement>);

impl EVector {
    /// Panics on an empty coordinate list.
    pub fn new(coords: Vec<FieldElement>) -> EVector {
        assert!(!coords.is_empty(), "vectors of E have at least one coordinate");
        EVector(coords)
    }

    pub fn zero(field: Field, n: usize) -> EVector {
        EVector::new(vec![field.zero(); n])
    }

    /// The `i`-th basis vector `u_i`.
    pub fn basis(field: Field, n: usize, i: usize) -> EVector {
        let mut v = vec![field.zero(); n];
        v[i] = field.one();
        EVector::new(v)
    }

    pub fn scalar(x: FieldElement) -> EVector {
        EVector::new(vec![x])
    }

    pub fn from_i64(field: Field, coords: &[i64]) -> EVector {
        EVector::new(coords.iter().map(|&x| field.from_i64(x)).collect())
    }

    pub fn coords(&self) -> &[FieldElement] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<FieldElement> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn field(&self) -> Field {
        self.0[0].field()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(FieldElement::is_zero)
    }

    pub fn add(&self, other: &EVector) -> EVector {
        assert_eq!(self.len(), other.len(), "dimension mismatch");
        EVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &EVector) -> EVector {
        assert_eq!(self.len(), other.len(), "dimension mismatch");
        EVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, s: &FieldElement) -> EVector {
        EVector(self.0.iter().map(|a| a * s).collect())
    }

    pub fn neg(&self) -> EVector {
        EVector(self.0.iter().map(|a| -a).collect())
    }
}

/// Comma-separated coordinates, e.g. `2,-1/3`.
impl fmt::Display for EVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Anisotropy {
    Proven,
    AssumedByUser,
    Refuted(EVector),
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnisotropyVerdict {
    Proven,
    Refuted(EVector),
    Unknown,
}

#[derive(Clone, Debug)]
pub struct QuadSpace {
    field: Field,
    diag: Vec<FieldElement>,
    status: Anisotropy,
}

impl PartialEq for QuadSpace {
    fn eq(&self, other: &QuadSpace) -> bool {
        self.field == other.field && self.diag == other.diag
    }
}

impl Eq for QuadSpace {}

impl QuadSpace {
    /// Builds the space with Gram matrix `diag(d_1, ..., d_n)` and records
    /// the outcome of [`QuadSpace::verify_anisotropic`] with the default budget.
    pub fn new(field: Field, diag: Vec<FieldElement>) -> Result<Space> {
        if diag.is_empty() {
            return Err(Error::EmptySpace);
        }
        if diag.iter().any(|d| d.field() != field) {
            return Err(Error::FieldMismatch);
        }
        if let Some(i) = diag.iter().position(FieldElement::is_zero) {
            return Err(Error::ZeroDiagonal(i));
        }
        if field.is_finite() && diag.len() > 2 {
            return Err(Error::NoAnisotropicForm(diag.len()));
        }
        let mut space = QuadSpace {
            field,
            diag,
            status: Anisotropy::Unknown,
        };
        space.status = match space.verify_anisotropic(DEFAULT_ANISOTROPY_BUDGET) {
            AnisotropyVerdict::Proven => Anisotropy::Proven,
            AnisotropyVerdict::Refuted(w) => Anisotropy::Refuted(w),
            AnisotropyVerdict::Unknown => Anisotropy::Unknown,
        };
        Ok(Arc::new(space))
    }

    /// Like [`QuadSpace::new`], but an undecided form is recorded as
    /// anisotropic on the caller's word. A refuted form stays refuted.
    pub fn assume_anisotropic(field: Field, diag: Vec<FieldElement>) -> Result<Space> {
        let space = QuadSpace::new(field, diag)?;
        if space.status != Anisotropy::Unknown {
            return Ok(space);
        }
        let mut s = (*space).clone();
        s.status = Anisotropy::AssumedByUser;
        Ok(Arc::new(s))
    }

    /// The standard form `x_1^2 + ... + x_n^2`.
    pub fn standard(field: Field, n: usize) -> Result<Space> {
        QuadSpace::new(field, vec![field.one(); n])
    }

    pub fn from_i64(field: Field, diag: &[i64]) -> Result<Space> {
        QuadSpace::new(field, diag.iter().map(|&d| field.from_i64(d)).collect())
    }

    /// The anisotropic binary norm form `x^2 - e y^2` of a finite field,
    /// `e` its least non-square. `None` for infinite fields.
    pub fn norm_form(field: Field) -> Option<Space> {
        let e = field.least_non_square()?;
        QuadSpace::new(field, vec![field.one(), -e]).ok()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[FieldElement] {
        &self.diag
    }

    pub fn status(&self) -> &Anisotropy {
        &self.status
    }

    pub fn is_anisotropic(&self) -> bool {
        matches!(self.status, Anisotropy::Proven | Anisotropy::AssumedByUser)
    }

    pub fn check_vector(&self, x: &EVector) -> Result<()> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: x.len(),
            });
        }
        if x.field() != self.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    /// `x . y = sum d_i x_i y_i`.
    pub fn dot(&self, x: &EVector, y: &EVector) -> Result<FieldElement> {
        self.check_vector(x)?;
        self.check_vector(y)?;
        Ok(self.dot_unchecked(x, y))
    }

    pub(crate) fn dot_unchecked(&self, x: &EVector, y: &EVector) -> FieldElement {
        self.diag
            .iter()
            .zip(x.coords().iter().zip(y.coords()))
            .fold(self.field.zero(), |acc, (d, (a, b))| acc + d * a * b)
    }

    /// `h(x) = x . x`.
    pub fn norm(&self, x: &EVector) -> Result<FieldElement> {
        self.dot(x, x)
    }

    /// `h(x)` that fails when a nonzero `x` has `h(x) = 0`.
    pub(crate) fn nonzero_norm(&self, x: &EVector) -> Result<FieldElement> {
        let h = self.norm(x)?;
        if h.is_zero() {
            return Err(Error::IsotropicVectorEncountered(x.to_string()));
        }
        Ok(h)
    }

    /// Decides anisotropy where a criterion is available:
    /// dimension one; over `Q` (and real `Q(sqrt d)` with rational
    /// coefficients) a definite diagonal; over `F_p` in dimension two the
    /// discriminant `-d_1 d_2` being a non-square, and over `Q(sqrt d)` in
    /// dimension two `-d_2 / d_1` being a non-square, which also decides
    /// isotropy there. Otherwise searches for an
    /// isotropic witness among at most `budget` candidates.
    pub fn verify_anisotropic(&self, budget: u64) -> AnisotropyVerdict {
        let n = self.dim();
        if n == 1 {
            return AnisotropyVerdict::Proven;
        }
        match self.field.kind() {
            FieldKind::Rationals => {
                if self.definite_over_reals() {
                    return AnisotropyVerdict::Proven;
                }
            }
            FieldKind::QuadExt(_) if n == 2 => {
                // d1 x^2 + d2 y^2 vanishes off zero iff -d2/d1 is a square
                let ratio = -(&self.diag[1] / &self.diag[0]);
                return match self.field.sqrt(&ratio) {
                    Some(x) => AnisotropyVerdict::Refuted(EVector::new(vec![x, self.field.one()])),
                    None => AnisotropyVerdict::Proven,
                };
            }
            FieldKind::QuadExt(d) if d > 0 => {
                if self.diag.iter().all(|x| x.as_rational().is_some()) && self.definite_over_reals() {
                    return AnisotropyVerdict::Proven;
                }
            }
            FieldKind::PrimeField(_) if n == 2 => {
                let disc = -(&self.diag[0] * &self.diag[1]);
                if !self.field.is_square(&disc) {
                    return AnisotropyVerdict::Proven;
                }
            }
            _ => {}
        }
        match self.search_isotropic(budget) {
            Some(w) => AnisotropyVerdict::Refuted(w),
            None => AnisotropyVerdict::Unknown,
        }
    }

    fn definite_over_reals(&self) -> bool {
        let signs: Vec<bool> = self
            .diag
            .iter()
            .map(|d| {
                use num_traits::Signed;
                d.as_rational().expect("rational coefficient").is_positive()
            })
            .collect();
        signs.iter().all(|&s| s) || signs.iter().all(|&s| !s)
    }

    /// Looks for `y` with `h(y) = value`. Over finite fields the search is
    /// exhaustive within `budget`; over `Q` a definite form rules out values
    /// of the wrong sign.
    pub fn represent(&self, value: &FieldElement, budget: u64) -> Representation {
        let n = self.dim();
        if value.is_zero() {
            return Representation::Found(EVector::zero(self.field, n));
        }
        if n == 1 {
            return match self.field.sqrt(&(value / &self.diag[0])) {
                Some(y) => Representation::Found(EVector::scalar(y)),
                None => Representation::Impossible,
            };
        }
        if let (Some(sv), Some(sd)) = (self.field.sign(value), self.field.sign(&self.diag[0])) {
            if self.definite_over_reals() && sv != sd {
                return Representation::Impossible;
            }
        }
        let free = n - 1;
        let per_coord = ((budget as f64).powf(1.0 / free as f64).floor() as u64).max(2);
        let candidates = search_candidates(self.field, per_coord);
        let exhaustive = self.field.order().is_some_and(|q| q <= candidates.len() as u64);
        let found = for_each_prefix(&candidates, free, |prefix| {
            let mut rest = value.clone();
            for (k, x) in prefix.iter().enumerate() {
                rest = rest - &self.diag[k] * x.square();
            }
            let last = self.field.sqrt(&(rest / &self.diag[free]))?;
            let mut coords = prefix.to_vec();
            coords.push(last);
            Some(EVector::new(coords))
        });
        match found {
            Some(y) => Representation::Found(y),
            None if exhaustive => Representation::Impossible,
            None => Representation::Unknown,
        }
    }

    // Enumerates x_1..x_{n-1} over a candidate list and solves for x_n exactly.
    fn search_isotropic(&self, budget: u64) -> Option<EVector> {
        let n = self.dim();
        let free = n - 1;
        let per_coord = ((budget as f64).powf(1.0 / free as f64).floor() as u64).max(2);
        let candidates = search_candidates(self.field, per_coord);
        for_each_prefix(&candidates, free, |prefix| {
            if prefix.iter().all(FieldElement::is_zero) {
                return None;
            }
            let mut rest = self.field.zero();
            for (k, x) in prefix.iter().enumerate() {
                rest = rest - &self.diag[k] * x.square();
            }
            let last = self.field.sqrt(&(rest / &self.diag[free]))?;
            let mut coords = prefix.to_vec();
            coords.push(last);
            Some(EVector::new(coords))
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Representation {
    Found(EVector),
    Impossible,
    Unknown,
}

// Runs `f` on every tuple of `len` candidates until it returns `Some`.
fn for_each_prefix<T>(
    candidates: &[FieldElement],
    len: usize,
    mut f: impl FnMut(&[FieldElement]) -> Option<T>,
) -> Option<T> {
    let m = candidates.len();
    let mut idx = vec![0usize; len];
    let mut buf: Vec<FieldElement> = vec![candidates[0].clone(); len];
    loop {
        for (b, &i) in buf.iter_mut().zip(&idx) {
            *b = candidates[i].clone();
        }
        if let Some(t) = f(&buf) {
            return Some(t);
        }
        let mut k = 0;
        loop {
            if k == len {
                return None;
            }
            idx[k] += 1;
            if idx[k] < m {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Small elements by increasing height, zero first. Over a finite field this
/// is the first `count` residues.
pub(crate) fn search_candidates(field: Field, count: u64) -> Vec<FieldElement> {
    if let Some(it) = field.elements() {
        return it.take(count as usize).collect();
    }
    let mut out = vec![field.zero()];
    let sqrt = field.sqrt_generator();
    let mut h = 1i64;
    while (out.len() as u64) < count {
        for d in 1..=h {
            for n in [h, -h] {
                if num_integer::gcd(n, d) == 1 {
                    out.push(field.from_ratio(n, d).expect("nonzero denominator"));
                }
            }
            if d < h && num_integer::gcd(h, d) == 1 {
                for dn in [d, -d] {
                    // numerator below the height, denominator at it
                    out.push(field.from_ratio(dn, h).expect("nonzero denominator"));
                }
            }
        }
        if let Some(s) = &sqrt {
            out.push(s * field.from_i64(h));
            out.push(field.from_i64(h) + s);
            out.push(field.from_i64(-h) + s);
        }
        h += 1;
    }
    out.truncate(count as usize);
    out
}

impl fmt::Display for QuadSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.diag.iter().map(ToString::to_string).collect();
        write!(f, "{} diag {}", self.field, parts.join(" "))
    }
}
