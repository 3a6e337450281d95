//! Text forms of fields, spaces, cycles and points. Each parser accepts
//! what the matching `Display` implementation prints.

use inversive::{
    BinaryQuadric, Cycle, EVector, Field, FieldElement, LorentzVec, PlanePoint, QuadSpace, Space, VPoint,
};

pub type ParseResult<T> = std::result::Result<T, String>;

pub fn field(s: &str) -> ParseResult<Field> {
    Field::parse(s).map_err(|e| e.to_string())
}

pub fn element(f: Field, s: &str) -> ParseResult<FieldElement> {
    f.parse_element(s).map_err(|e| e.to_string())
}

pub fn elements(f: Field, s: &str) -> ParseResult<Vec<FieldElement>> {
    s.split_whitespace().map(|t| element(f, t)).collect()
}

/// `std N`, `diag d1 d2 ...` or a bare list of diagonal coefficients.
pub fn space(f: Field, s: &str) -> ParseResult<Space> {
    let s = s.trim();
    let built = if let Some(n) = s.strip_prefix("std") {
        let n: usize = n.trim().parse().map_err(|_| format!("bad dimension in {s:?}"))?;
        QuadSpace::standard(f, n)
    } else {
        let list = s.strip_prefix("diag").unwrap_or(s);
        QuadSpace::new(f, elements(f, list)?)
    };
    built.map_err(|e| e.to_string())
}

/// `a | b1 b2 ... | c`.
pub fn cycle(space: &Space, s: &str) -> ParseResult<Cycle> {
    let f = space.field();
    let parts: Vec<&str> = s.split('|').collect();
    let [a, b, c] = parts.as_slice() else {
        return Err(format!("expected `a | b1 .. bn | c`, got {s:?}"));
    };
    let b = elements(f, b)?;
    if b.len() != space.dim() {
        return Err(format!("cycle {s:?} has {} linear coefficients, the space has dimension {}", b.len(), space.dim()));
    }
    Cycle::new(space, element(f, a)?, EVector::new(b), element(f, c)?).map_err(|e| e.to_string())
}

/// Comma-separated coordinates.
pub fn vector(f: Field, s: &str) -> ParseResult<EVector> {
    let coords = s.split(',').map(|t| element(f, t)).collect::<ParseResult<Vec<_>>>()?;
    Ok(EVector::new(coords))
}

/// `inf` or comma-separated coordinates.
pub fn point(space: &Space, s: &str) -> ParseResult<VPoint> {
    let s = s.trim();
    if s == "inf" {
        return Ok(VPoint::Infinity);
    }
    let v = vector(space.field(), s)?;
    if v.len() != space.dim() {
        return Err(format!("point {s:?} has {} coordinates, the space has dimension {}", v.len(), space.dim()));
    }
    Ok(VPoint::Finite(v))
}

pub fn plane_point(f: Field, s: &str) -> ParseResult<PlanePoint> {
    let v = vector(f, s)?;
    match v.coords() {
        [u, w] => Ok(PlanePoint::new(u.clone(), w.clone())),
        _ => Err(format!("expected a plane point `u,v`, got {s:?}")),
    }
}

/// `(x; y1,...,yn; z)`, parentheses optional.
pub fn lorentz(space: &Space, s: &str) -> ParseResult<LorentzVec> {
    let f = space.field();
    let s = s.trim();
    let inner = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(s);
    let parts: Vec<&str> = inner.split(';').collect();
    let [x, y, z] = parts.as_slice() else {
        return Err(format!("expected `x; y; z`, got {s:?}"));
    };
    LorentzVec::new(space, element(f, x)?, vector(f, y)?, element(f, z)?).map_err(|e| e.to_string())
}

/// `A B C` for `A u^2 + B uv + C v^2`.
pub fn quadric(f: Field, s: &str) -> ParseResult<BinaryQuadric> {
    match elements(f, s)?.as_slice() {
        [a, b, c] => BinaryQuadric::new(a.clone(), b.clone(), c.clone()).map_err(|e| e.to_string()),
        _ => Err(format!("expected three coefficients, got {s:?}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals() {
        let f = field("Q").unwrap();
        let s = space(f, "diag 1 1").unwrap();
        assert_eq!(s, space(f, "std 2").unwrap());
        let c = cycle(&s, "1 | 0 -2 | 1/2").unwrap();
        assert_eq!(c, Cycle::new(&s, f.one(), EVector::from_i64(f, &[0, -2]), f.from_ratio(1, 2).unwrap()).unwrap());
        assert_eq!(point(&s, "inf").unwrap(), VPoint::Infinity);
        assert!(point(&s, "1").is_err());
        assert!(cycle(&s, "1 | 0 | 1").is_err());
        assert!(cycle(&s, "0 | 0 0 | 0").is_err());
        assert!(space(f, "diag 1 x").is_err());
    }
}
