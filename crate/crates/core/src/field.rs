//! Exact scalar fields of characteristic different from 2.
//!
//! Three families are supported: the rationals, prime fields `F_p` with `p`
//! an odd prime, and quadratic extensions `Q(sqrt d)` with `d` a square-free
//! integer other than 0 and 1. Every element is stored in canonical form
//! (reduced fractions, residues in `[0, p)`), so structural equality is
//! field equality.
//!
//! Arithmetic operators panic when the two operands come from different
//! fields; every higher-level object checks field agreement at construction.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// The parameters selecting a field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rationals,
    /// `F_p` for an odd prime `p`.
    PrimeField(u64),
    /// `Q(sqrt d)` for a square-free integer `d` that is not a square.
    QuadExt(i64),
}

/// A validated field handle. Cheap to copy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Field {
    kind: FieldKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Rat(BigRational),
    Mod { v: u64, p: u64 },
    Quad { x: BigRational, y: BigRational, d: i64 },
}

/// An element of one of the supported fields, always in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement(Repr);

impl Field {
    /// Validates `kind` and returns the field.
    pub fn new(kind: FieldKind) -> Result<Field> {
        match kind {
            FieldKind::Rationals => {}
            FieldKind::PrimeField(p) => {
                if p == 2 {
                    return Err(Error::CharTwo);
                }
                if !is_prime(p) {
                    return Err(Error::NotPrime(p));
                }
            }
            FieldKind::QuadExt(d) => {
                if d >= 0 && (d as u64).sqrt().pow(2) == d as u64 {
                    return Err(Error::IsSquare(d));
                }
                if !is_square_free(d.unsigned_abs()) {
                    return Err(Error::NotSquareFree(d));
                }
            }
        }
        Ok(Field { kind })
    }

    pub fn rationals() -> Field {
        Field {
            kind: FieldKind::Rationals,
        }
    }

    pub fn prime(p: u64) -> Result<Field> {
        Field::new(FieldKind::PrimeField(p))
    }

    pub fn quad_ext(d: i64) -> Result<Field> {
        Field::new(FieldKind::QuadExt(d))
    }

    /// Parses a descriptor: `Q`, `Fp:7` or `Qsqrt:5`.
    pub fn parse(desc: &str) -> Result<Field> {
        let bad = || Error::Parse {
            what: "field descriptor",
            input: desc.to_string(),
        };
        let desc = desc.trim();
        if desc == "Q" {
            return Ok(Field::rationals());
        }
        if let Some(p) = desc.strip_prefix("Fp:") {
            return Field::prime(p.parse().map_err(|_| bad())?);
        }
        if let Some(d) = desc.strip_prefix("Qsqrt:") {
            return Field::quad_ext(d.parse().map_err(|_| bad())?);
        }
        Err(bad())
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    /// 0 for the infinite fields.
    pub fn characteristic(&self) -> u64 {
        match self.kind {
            FieldKind::PrimeField(p) => p,
            _ => 0,
        }
    }

    /// Number of elements, `None` when infinite.
    pub fn order(&self) -> Option<u64> {
        match self.kind {
            FieldKind::PrimeField(p) => Some(p),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.order().is_some()
    }

    pub fn zero(&self) -> FieldElement {
        self.from_i64(0)
    }

    pub fn one(&self) -> FieldElement {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> FieldElement {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> FieldElement {
        match self.kind {
            FieldKind::Rationals => FieldElement(Repr::Rat(BigRational::from_integer(n.clone()))),
            FieldKind::PrimeField(p) => {
                FieldElement(Repr::Mod {
                    v: residue_of(n, p),
                    p,
                })
            }
            FieldKind::QuadExt(d) => FieldElement(Repr::Quad {
                x: BigRational::from_integer(n.clone()),
                y: BigRational::zero(),
                d,
            }),
        }
    }

    /// The image of a rational number. Fails in `F_p` when `p` divides the denominator.
    pub fn from_rational(&self, r: &BigRational) -> Result<FieldElement> {
        let num = self.from_bigint(r.numer());
        let den = self.from_bigint(r.denom());
        num.checked_div(&den).ok_or(Error::DivisionByZero)
    }

    pub fn from_ratio(&self, n: i64, d: i64) -> Result<FieldElement> {
        if d == 0 {
            return Err(Error::DivisionByZero);
        }
        self.from_rational(&BigRational::new(n.into(), d.into()))
    }

    /// `x + y sqrt(d)` in `Q(sqrt d)`; in other fields `y` must be zero.
    pub fn quad_element(&self, x: BigRational, y: BigRational) -> Result<FieldElement> {
        match self.kind {
            FieldKind::QuadExt(d) => Ok(FieldElement(Repr::Quad { x, y, d })),
            _ if y.is_zero() => self.from_rational(&x),
            _ => Err(Error::FieldMismatch),
        }
    }

    /// The generator `sqrt(d)` of a quadratic extension.
    pub fn sqrt_generator(&self) -> Option<FieldElement> {
        match self.kind {
            FieldKind::QuadExt(d) => Some(FieldElement(Repr::Quad {
                x: BigRational::zero(),
                y: BigRational::one(),
                d,
            })),
            _ => None,
        }
    }

    /// Parses an element literal such as `3`, `-1/2`, or for `Q(sqrt 5)`
    /// `1/2+3*sqrt(5)`, `-sqrt(5)`.
    pub fn parse_element(&self, s: &str) -> Result<FieldElement> {
        let bad = || Error::Parse {
            what: "field element",
            input: s.to_string(),
        };
        let s = s.trim();
        let FieldKind::QuadExt(d) = self.kind else {
            let r = parse_rational(s).ok_or_else(bad)?;
            return self.from_rational(&r);
        };
        let suffix = format!("sqrt({d})");
        let Some(prefix) = s.strip_suffix(suffix.as_str()) else {
            let r = parse_rational(s).ok_or_else(bad)?;
            return self.from_rational(&r);
        };
        let prefix = prefix.strip_suffix('*').unwrap_or(prefix);
        let split = prefix
            .char_indices()
            .skip(1)
            .filter(|&(i, c)| (c == '+' || c == '-') && !prefix[..i].ends_with('/'))
            .map(|(i, _)| i)
            .last();
        let (re, im) = match split {
            Some(i) => (parse_rational(&prefix[..i]).ok_or_else(bad)?, &prefix[i..]),
            None => (BigRational::zero(), prefix),
        };
        let im = match im {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            other => parse_rational(other).ok_or_else(bad)?,
        };
        self.quad_element(re, im)
    }

    /// Whether `e` is a square in this field.
    pub fn is_square(&self, e: &FieldElement) -> bool {
        self.check(e);
        match &e.0 {
            Repr::Rat(r) => rat_sqrt(r).is_some(),
            Repr::Mod { v, p } => *v == 0 || mod_pow(*v, (p - 1) / 2, *p) == 1,
            Repr::Quad { .. } => self.sqrt(e).is_some(),
        }
    }

    /// A square root of `e` when one exists. The root is the nonnegative one
    /// over `Q`, the least residue over `F_p`, and over `Q(sqrt d)` the root
    /// `a + b sqrt(d)` with `a > 0`, or `a = 0, b > 0`.
    pub fn sqrt(&self, e: &FieldElement) -> Option<FieldElement> {
        self.check(e);
        match &e.0 {
            Repr::Rat(r) => rat_sqrt(r).map(|s| FieldElement(Repr::Rat(s))),
            Repr::Mod { v, p } => {
                let r = mod_sqrt(*v, *p)?;
                Some(FieldElement(Repr::Mod {
                    v: r.min(p - r),
                    p: *p,
                }))
            }
            Repr::Quad { x, y, d } => quad_sqrt(x, y, *d).map(|(a, b)| {
                FieldElement(Repr::Quad { x: a, y: b, d: *d })
            }),
        }
    }

    /// The sign of `e` under the ordering of `Q`: `Some(-1 | 0 | 1)`.
    /// `None` for fields without an implemented ordering.
    pub fn sign(&self, e: &FieldElement) -> Option<i8> {
        self.check(e);
        match &e.0 {
            Repr::Rat(r) => Some(if r.is_zero() {
                0
            } else if r.is_positive() {
                1
            } else {
                -1
            }),
            _ => None,
        }
    }

    pub fn is_ordered(&self) -> bool {
        matches!(self.kind, FieldKind::Rationals)
    }

    /// All elements of a finite field in increasing residue order.
    pub fn elements(&self) -> Option<FiniteElements> {
        self.order().map(|p| FiniteElements { p, next: 0 })
    }

    /// The least non-square of a finite field.
    pub fn least_non_square(&self) -> Option<FieldElement> {
        let mut it = self.elements()?;
        it.find(|e| !self.is_square(e))
    }

    /// Deterministic pseudo-random elements; see [`ElementStream`].
    pub fn sample_stream(&self, seed: u64) -> ElementStream {
        ElementStream::new(*self, seed)
    }

    fn check(&self, e: &FieldElement) {
        assert_eq!(&e.field(), self, "element used with the wrong field");
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FieldKind::Rationals => write!(f, "Q"),
            FieldKind::PrimeField(p) => write!(f, "Fp:{p}"),
            FieldKind::QuadExt(d) => write!(f, "Qsqrt:{d}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;
    fn from_str(s: &str) -> Result<Field> {
        Field::parse(s)
    }
}

pub struct FiniteElements {
    p: u64,
    next: u64,
}

impl Iterator for FiniteElements {
    type Item = FieldElement;
    fn next(&mut self) -> Option<FieldElement> {
        if self.next >= self.p {
            return None;
        }
        let v = self.next;
        self.next += 1;
        Some(FieldElement(Repr::Mod { v, p: self.p }))
    }
}

impl FieldElement {
    pub fn field(&self) -> Field {
        let kind = match &self.0 {
            Repr::Rat(_) => FieldKind::Rationals,
            Repr::Mod { p, .. } => FieldKind::PrimeField(*p),
            Repr::Quad { d, .. } => FieldKind::QuadExt(*d),
        };
        Field { kind }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Rat(r) => r.is_zero(),
            Repr::Mod { v, .. } => *v == 0,
            Repr::Quad { x, y, .. } => x.is_zero() && y.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Rat(r) => r.is_one(),
            Repr::Mod { v, .. } => *v == 1,
            Repr::Quad { x, y, .. } => x.is_one() && y.is_zero(),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.0 {
            Repr::Rat(r) => Some(r),
            Repr::Quad { x, y, .. } if y.is_zero() => Some(x),
            _ => None,
        }
    }

    pub fn residue(&self) -> Option<u64> {
        match &self.0 {
            Repr::Mod { v, .. } => Some(*v),
            _ => None,
        }
    }

    /// `(x, y)` for `x + y sqrt(d)`.
    pub fn quad_parts(&self) -> Option<(&BigRational, &BigRational)> {
        match &self.0 {
            Repr::Quad { x, y, .. } => Some((x, y)),
            _ => None,
        }
    }

    /// Float approximation for display. `None` over `F_p` and over
    /// imaginary quadratic fields.
    pub fn to_f64(&self) -> Option<f64> {
        match &self.0 {
            Repr::Rat(r) => r.to_f64(),
            Repr::Mod { .. } => None,
            Repr::Quad { x, y, d } => {
                if y.is_zero() {
                    x.to_f64()
                } else if *d > 0 {
                    Some(x.to_f64()? + y.to_f64()? * (*d as f64).sqrt())
                } else {
                    None
                }
            }
        }
    }

    /// Height-like size measure used to keep sampled inputs small.
    pub fn height(&self) -> u64 {
        fn h(r: &BigRational) -> u64 {
            let n = r.numer().abs().to_u64().unwrap_or(u64::MAX);
            let d = r.denom().to_u64().unwrap_or(u64::MAX);
            n.max(d)
        }
        match &self.0 {
            Repr::Rat(r) => h(r),
            Repr::Mod { v, .. } => *v,
            Repr::Quad { x, y, .. } => h(x).max(h(y)),
        }
    }

    pub fn checked_inv(&self) -> Option<FieldElement> {
        if self.is_zero() {
            return None;
        }
        Some(match &self.0 {
            Repr::Rat(r) => FieldElement(Repr::Rat(r.recip())),
            Repr::Mod { v, p } => FieldElement(Repr::Mod {
                v: mod_pow(*v, p - 2, *p),
                p: *p,
            }),
            Repr::Quad { x, y, d } => {
                let n = x * x - y * y * BigRational::from_integer((*d).into());
                FieldElement(Repr::Quad {
                    x: x / &n,
                    y: -y / &n,
                    d: *d,
                })
            }
        })
    }

    /// Panics on zero.
    pub fn inv(&self) -> FieldElement {
        self.checked_inv().expect("inverse of zero")
    }

    pub fn checked_div(&self, rhs: &FieldElement) -> Option<FieldElement> {
        rhs.checked_inv().map(|r| self * &r)
    }

    pub fn pow(&self, mut e: u64) -> FieldElement {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn square(&self) -> FieldElement {
        self * self
    }

    pub fn double(&self) -> FieldElement {
        self + self
    }

    fn add_ref(&self, rhs: &FieldElement) -> FieldElement {
        FieldElement(match (&self.0, &rhs.0) {
            (Repr::Rat(a), Repr::Rat(b)) => Repr::Rat(a + b),
            (Repr::Mod { v: a, p }, Repr::Mod { v: b, p: q }) if p == q => Repr::Mod {
                v: ((*a as u128 + *b as u128) % *p as u128) as u64,
                p: *p,
            },
            (Repr::Quad { x: a, y: b, d }, Repr::Quad { x: c, y: e, d: d2 }) if d == d2 => {
                Repr::Quad {
                    x: a + c,
                    y: b + e,
                    d: *d,
                }
            }
            _ => panic!("arithmetic on elements of different fields"),
        })
    }

    fn mul_ref(&self, rhs: &FieldElement) -> FieldElement {
        FieldElement(match (&self.0, &rhs.0) {
            (Repr::Rat(a), Repr::Rat(b)) => Repr::Rat(a * b),
            (Repr::Mod { v: a, p }, Repr::Mod { v: b, p: q }) if p == q => Repr::Mod {
                v: mod_mul(*a, *b, *p),
                p: *p,
            },
            (Repr::Quad { x: a, y: b, d }, Repr::Quad { x: c, y: e, d: d2 }) if d == d2 => {
                let dd = BigRational::from_integer((*d).into());
                Repr::Quad {
                    x: a * c + b * e * dd,
                    y: a * e + b * c,
                    d: *d,
                }
            }
            _ => panic!("arithmetic on elements of different fields"),
        })
    }

    fn neg_ref(&self) -> FieldElement {
        FieldElement(match &self.0 {
            Repr::Rat(a) => Repr::Rat(-a),
            Repr::Mod { v, p } => Repr::Mod {
                v: if *v == 0 { 0 } else { p - v },
                p: *p,
            },
            Repr::Quad { x, y, d } => Repr::Quad {
                x: -x,
                y: -y,
                d: *d,
            },
        })
    }

    fn sub_ref(&self, rhs: &FieldElement) -> FieldElement {
        self.add_ref(&rhs.neg_ref())
    }

    fn div_ref(&self, rhs: &FieldElement) -> FieldElement {
        self.checked_div(rhs).expect("division by zero")
    }
}

macro_rules! forward_binop {
    ($Trait:ident, $method:ident, $imp:ident) => {
        impl<'a, 'b> $Trait<&'b FieldElement> for &'a FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &'b FieldElement) -> FieldElement {
                self.$imp(rhs)
            }
        }
        impl<'b> $Trait<&'b FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &'b FieldElement) -> FieldElement {
                (&self).$imp(rhs)
            }
        }
        impl<'a> $Trait<FieldElement> for &'a FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                self.$imp(&rhs)
            }
        }
        impl $Trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$imp(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);
forward_binop!(Div, div, div_ref);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Rat(r) => write!(f, "{r}"),
            Repr::Mod { v, .. } => write!(f, "{v}"),
            Repr::Quad { x, y, d } => {
                if y.is_zero() {
                    return write!(f, "{x}");
                }
                if !x.is_zero() {
                    write!(f, "{x}")?;
                    if y.is_positive() {
                        write!(f, "+")?;
                    }
                }
                if y.is_one() {
                    write!(f, "sqrt({d})")
                } else if (-y).is_one() {
                    write!(f, "-sqrt({d})")
                } else {
                    write!(f, "{y}*sqrt({d})")
                }
            }
        }
    }
}

/// A reproducible stream of pseudo-random field elements.
///
/// Over `Q` the elements are fractions `n/d` with `|n| <= 12` and
/// `1 <= d <= 12`; over `F_p` residues are uniform on `[0, p)`; over
/// `Q(sqrt d)` both components are fractions of height at most 6.
/// Zero is not excluded.
pub struct ElementStream {
    field: Field,
    rng: ChaCha8Rng,
}

pub const SAMPLE_HEIGHT: u64 = 12;
const QUAD_SAMPLE_HEIGHT: u64 = 6;

impl ElementStream {
    pub fn new(field: Field, seed: u64) -> ElementStream {
        ElementStream {
            field,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Uniform integer in `[0, n)`.
    pub fn below(&mut self, n: u64) -> u64 {
        self.rng.next_u64() % n
    }

    pub fn coin(&mut self, numer: u64, denom: u64) -> bool {
        self.below(denom) < numer
    }

    fn fraction(&mut self, height: u64) -> BigRational {
        let n = self.below(2 * height + 1) as i64 - height as i64;
        let d = self.below(height) as i64 + 1;
        BigRational::new(n.into(), d.into())
    }

    pub fn element(&mut self) -> FieldElement {
        match self.field.kind {
            FieldKind::Rationals => FieldElement(Repr::Rat(self.fraction(SAMPLE_HEIGHT))),
            FieldKind::PrimeField(p) => FieldElement(Repr::Mod {
                v: self.below(p),
                p,
            }),
            FieldKind::QuadExt(d) => FieldElement(Repr::Quad {
                x: self.fraction(QUAD_SAMPLE_HEIGHT),
                y: self.fraction(QUAD_SAMPLE_HEIGHT),
                d,
            }),
        }
    }

    pub fn nonzero(&mut self) -> FieldElement {
        loop {
            let e = self.element();
            if !e.is_zero() {
                return e;
            }
        }
    }

    /// A small integer in `[-bound, bound]` mapped into the field.
    pub fn small_int(&mut self, bound: u64) -> FieldElement {
        let n = self.below(2 * bound + 1) as i64 - bound as i64;
        self.field.from_i64(n)
    }
}

impl Iterator for ElementStream {
    type Item = FieldElement;
    fn next(&mut self) -> Option<FieldElement> {
        Some(self.element())
    }
}

fn residue_of(n: &BigInt, p: u64) -> u64 {
    use num_integer::Integer;
    n.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits")
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let s = s.strip_prefix('+').unwrap_or(s);
    if s.is_empty() {
        return None;
    }
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().ok()?;
            let d: BigInt = d.parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

fn int_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

fn rat_sqrt(r: &BigRational) -> Option<BigRational> {
    Some(BigRational::new(int_sqrt(r.numer())?, int_sqrt(r.denom())?))
}

// (a + b sqrt d)^2 = (a^2 + d b^2) + 2ab sqrt d. With n = a^2 - d b^2 we get
// n^2 = x^2 - d y^2 and a^2 = (x + n)/2, so both signs of sqrt(N) are tried.
fn quad_sqrt(x: &BigRational, y: &BigRational, d: i64) -> Option<(BigRational, BigRational)> {
    let dd = BigRational::from_integer(d.into());
    let two = BigRational::from_integer(2.into());
    if y.is_zero() {
        if let Some(a) = rat_sqrt(x) {
            return Some((a, BigRational::zero()));
        }
        return rat_sqrt(&(x / &dd)).map(|b| (BigRational::zero(), b));
    }
    let n0 = rat_sqrt(&(x * x - y * y * &dd))?;
    for n in [n0.clone(), -n0] {
        let Some(a) = rat_sqrt(&((x + &n) / &two)) else {
            continue;
        };
        if a.is_zero() {
            continue;
        }
        let b = y / (&two * &a);
        if &a * &a + &dd * &b * &b == *x {
            return Some((a, b));
        }
    }
    None
}

fn mod_mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mod_mul(acc, b, p);
        }
        b = mod_mul(b, b, p);
        e >>= 1;
    }
    acc
}

// Tonelli-Shanks.
fn mod_sqrt(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if mod_pow(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(mod_pow(a, (p + 1) / 4, p));
    }
    let mut q = p - 1;
    let mut s = 0u32;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = (2..p)
        .find(|&z| mod_pow(z, (p - 1) / 2, p) == p - 1)
        .expect("non-residue exists");
    let mut m = s;
    let mut c = mod_pow(z, q, p);
    let mut t = mod_pow(a, q, p);
    let mut r = mod_pow(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0u32;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mod_mul(t2, t2, p);
            i += 1;
        }
        let b = mod_pow(c, 1u64 << (m - i - 1), p);
        m = i;
        c = mod_mul(b, b, p);
        t = mod_mul(t, c, p);
        r = mod_mul(r, b, p);
    }
    Some(r)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mod_mul(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn is_square_free(n: u64) -> bool {
    if n == 0 {
        return false;
    }
    let mut m = n;
    let mut f = 2u64;
    while f.saturating_mul(f) <= m {
        if m % f == 0 {
            m /= f;
            if m % f == 0 {
                return false;
            }
        }
        f += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> FieldElement {
        Field::rationals().from_ratio(n, d).unwrap()
    }

    #[test]
    fn make_field_validates() {
        assert_eq!(Field::prime(2), Err(Error::CharTwo));
        assert_eq!(Field::prime(9), Err(Error::NotPrime(9)));
        assert_eq!(Field::prime(1), Err(Error::NotPrime(1)));
        assert!(Field::prime(7).is_ok());
        assert_eq!(Field::quad_ext(12), Err(Error::NotSquareFree(12)));
        assert_eq!(Field::quad_ext(4), Err(Error::IsSquare(4)));
        assert_eq!(Field::quad_ext(1), Err(Error::IsSquare(1)));
        assert_eq!(Field::quad_ext(0), Err(Error::IsSquare(0)));
        assert!(Field::quad_ext(-1).is_ok());
        assert!(Field::quad_ext(5).is_ok());
    }

    #[test]
    fn descriptors() {
        assert_eq!(Field::parse("Q").unwrap(), Field::rationals());
        assert_eq!(Field::parse("Fp:7").unwrap().order(), Some(7));
        assert_eq!(
            Field::parse("Qsqrt:5").unwrap().kind(),
            FieldKind::QuadExt(5)
        );
        assert!(Field::parse("R").is_err());
        assert_eq!(Field::parse("Fp:2"), Err(Error::CharTwo));
        for f in ["Q", "Fp:11", "Qsqrt:-3"] {
            assert_eq!(Field::parse(f).unwrap().to_string(), f);
        }
    }

    #[test]
    fn is_square_examples() {
        let f7 = Field::prime(7).unwrap();
        assert!(Field::rationals().is_square(&q(4, 9)));
        assert!(!f7.is_square(&f7.from_i64(3)));
        assert!(f7.is_square(&f7.zero()));
        assert!(Field::rationals().is_square(&q(0, 1)));
        assert!(!Field::rationals().is_square(&q(-4, 9)));
    }

    #[test]
    fn sqrt_examples() {
        let f7 = Field::prime(7).unwrap();
        assert_eq!(Field::rationals().sqrt(&q(9, 4)), Some(q(3, 2)));
        assert_eq!(f7.sqrt(&f7.from_i64(2)), Some(f7.from_i64(3)));
        assert_eq!(Field::rationals().sqrt(&q(2, 1)), None);
    }

    #[test]
    fn sqrt_mod_p_matches_brute_force() {
        for p in [3u64, 5, 7, 11, 13, 17, 97, 101, 257] {
            let f = Field::prime(p).unwrap();
            for a in 0..p {
                let brute = (0..p).find(|x| x * x % p == a);
                let e = f.from_i64(a as i64);
                assert_eq!(f.sqrt(&e).and_then(|r| r.residue()), brute, "p={p} a={a}");
                assert_eq!(f.is_square(&e), brute.is_some());
            }
        }
    }

    #[test]
    fn quad_ext_sqrt_matches_brute_force() {
        // Squares of all small elements are recognised, and non-squares
        // found by exhaustive small-height search agree with the test.
        for d in [-1i64, 2, 3, 5, -7] {
            let f = Field::quad_ext(d).unwrap();
            let mut small = Vec::new();
            for xn in -3i64..=3 {
                for xd in 1..=2 {
                    for yn in -3i64..=3 {
                        for yd in 1..=2 {
                            small.push(
                                f.quad_element(
                                    BigRational::new(xn.into(), xd.into()),
                                    BigRational::new(yn.into(), yd.into()),
                                )
                                .unwrap(),
                            );
                        }
                    }
                }
            }
            for e in &small {
                let sq = e.square();
                let r = f.sqrt(&sq).expect("square recognised");
                assert_eq!(r.square(), sq);
                assert!(&r == e || r == -e);
            }
            let squares: std::collections::HashSet<_> = small.iter().map(|e| e.square()).collect();
            for e in &small {
                if f.is_square(e) {
                    assert_eq!(f.sqrt(e).unwrap().square(), *e);
                } else {
                    assert!(!squares.contains(e));
                }
            }
        }
    }

    #[test]
    fn quad_ext_arithmetic() {
        let f = Field::quad_ext(5).unwrap();
        let s = f.sqrt_generator().unwrap();
        assert_eq!(s.square(), f.from_i64(5));
        let e = f.parse_element("1/2+3*sqrt(5)").unwrap();
        assert_eq!(e.to_string(), "1/2+3*sqrt(5)");
        assert_eq!(&e * &e.inv(), f.one());
        assert_eq!(f.parse_element("-sqrt(5)").unwrap(), -s.clone());
        assert_eq!(f.parse_element("2-sqrt(5)").unwrap().to_string(), "2-sqrt(5)");
        assert_eq!(f.parse_element("-1/3*sqrt(5)").unwrap().to_string(), "-1/3*sqrt(5)");
        assert_eq!(f.parse_element("-7/2").unwrap(), f.from_ratio(-7, 2).unwrap());
        // sqrt(5) is not a square, 6 + 2 sqrt 5 = (1 + sqrt 5)^2 is
        assert!(!f.is_square(&s));
        let t = f.parse_element("6+2*sqrt(5)").unwrap();
        assert_eq!(f.sqrt(&t).unwrap().to_string(), "1+sqrt(5)");
    }

    #[test]
    fn prime_field_parsing_reduces() {
        let f7 = Field::prime(7).unwrap();
        assert_eq!(f7.parse_element("-1").unwrap().residue(), Some(6));
        assert_eq!(f7.parse_element("1/2").unwrap().residue(), Some(4));
        assert_eq!(f7.parse_element("1/7"), Err(Error::DivisionByZero));
        assert_eq!(f7.parse_element("15").unwrap().residue(), Some(1));
    }

    #[test]
    fn ordering_on_q_only() {
        let f = Field::rationals();
        assert_eq!(f.sign(&q(-1, 3)), Some(-1));
        assert_eq!(f.sign(&q(0, 3)), Some(0));
        let f7 = Field::prime(7).unwrap();
        assert_eq!(f7.sign(&f7.one()), None);
    }

    #[test]
    fn stream_golden_values() {
        let f7 = Field::prime(7).unwrap();
        let first: Vec<u64> = f7
            .sample_stream(1)
            .take(3)
            .map(|e| e.residue().unwrap())
            .collect();
        // frozen from the ChaCha8 stream
        let golden: Vec<u64> = include_str!("../tests/golden/stream_f7_seed1.txt")
            .split_whitespace()
            .map(|t| t.parse().unwrap())
            .collect();
        assert_eq!(first, golden);
        let a: Vec<_> = Field::rationals().sample_stream(1).take(16).collect();
        let b: Vec<_> = Field::rationals().sample_stream(1).take(16).collect();
        let c: Vec<_> = Field::rationals().sample_stream(2).take(16).collect();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn large_prime() {
        let p = 1_000_000_007u64;
        let f = Field::prime(p).unwrap();
        let e = f.from_i64(123_456_789);
        let r = f.sqrt(&e.square()).unwrap();
        assert_eq!(r.square(), e.square());
        assert_eq!(Field::prime(1_000_000_007 * 3), Err(Error::NotPrime(3_000_000_021)));
    }
}
