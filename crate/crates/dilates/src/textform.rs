//! Text formats: polynomials in the variable `t` with rational coefficients,
//! point-set files (one whitespace-separated integer vector per line), and
//! nested integer lists for matrices.

use crate::error::{Error, Result};
use crate::numfield::{BasisProvenance, DilateSystem, FieldElement, IntegralBasis, NumberField};
use crate::poly::UPoly;
use crate::rat::Rat;
use crate::sumset::PointSet;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::str::FromStr;

/// Parse a polynomial in `t`, e.g. "t^2-2", "1/2*t", "-t^3 + 2/3*t - 1".
pub fn parse_poly(input: &str) -> Result<UPoly> {
    let mut p = Parser {
        chars: input.chars().collect(),
        pos: 0,
    };
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos != p.chars.len() {
        return Err(Error::Parse(format!(
            "unexpected trailing input at position {}: {:?}",
            p.pos, input
        )));
    }
    Ok(poly)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<UPoly> {
        let mut acc = UPoly::zero();
        let mut negate = false;
        if let Some(c) = self.peek() {
            if c == '-' {
                self.pos += 1;
                negate = true;
            } else if c == '+' {
                self.pos += 1;
            }
        }
        loop {
            let term = self.term()?;
            acc = if negate { acc.sub(&term) } else { acc.add(&term) };
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    negate = false;
                }
                Some('-') => {
                    self.pos += 1;
                    negate = true;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<UPoly> {
        let mut acc = self.factor()?;
        while let Some(c) = self.peek() {
            if c == '*' {
                self.pos += 1;
                let f = self.factor()?;
                acc = acc.mul(&f);
            } else if c == 't' || c == '(' {
                // implicit multiplication like "2t" or "2(t+1)"
                let f = self.factor()?;
                acc = acc.mul(&f);
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<UPoly> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(Error::Parse("expected ')'".into()));
                }
                self.pos += 1;
                self.maybe_power(inner)
            }
            Some('t') => {
                self.pos += 1;
                self.maybe_power(UPoly::monomial(Rat::one(), 1))
            }
            Some(c) if c.is_ascii_digit() => {
                let r = self.rational()?;
                Ok(UPoly::constant(r))
            }
            Some('-') => {
                self.pos += 1;
                Ok(self.factor()?.neg())
            }
            other => Err(Error::Parse(format!("unexpected token {:?}", other))),
        }
    }

    fn maybe_power(&mut self, base: UPoly) -> Result<UPoly> {
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.uint()?;
            let mut acc = UPoly::one();
            for _ in 0..e {
                acc = acc.mul(&base);
            }
            Ok(acc)
        } else {
            Ok(base)
        }
    }

    fn rational(&mut self) -> Result<Rat> {
        let n = self.uint_big()?;
        if self.peek() == Some('/') {
            self.pos += 1;
            let d = self.uint_big()?;
            if d.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            Ok(Rat::new(n, d))
        } else {
            Ok(Rat::from_integer(n))
        }
    }

    fn uint(&mut self) -> Result<u32> {
        let b = self.uint_big()?;
        use num_traits::ToPrimitive;
        b.to_u32().ok_or_else(|| Error::Parse("exponent too large".into()))
    }

    fn uint_big(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Parse("expected a number".into()));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        BigInt::from_str(&s).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Build a number field from its CLI string; "rational"/"q" (or a degree-1
/// polynomial) selects Q.
pub fn parse_field(input: &str) -> Result<NumberField> {
    let trimmed = input.trim();
    if trimmed.eq_ignore_ascii_case("rational")
        || trimmed.eq_ignore_ascii_case("rationals")
        || trimmed.eq_ignore_ascii_case("q")
    {
        return Ok(NumberField::rationals());
    }
    NumberField::new(parse_poly(trimmed)?)
}

/// Parse a field element given as a polynomial in t (reduced mod f).
pub fn parse_element(field: &NumberField, input: &str) -> Result<FieldElement> {
    Ok(field.reduce(&parse_poly(input)?))
}

pub fn parse_system(field_str: &str, dilate_strs: &[String]) -> Result<DilateSystem> {
    let field = parse_field(field_str)?;
    let dilates = dilate_strs
        .iter()
        .map(|s| parse_element(&field, s))
        .collect::<Result<Vec<_>>>()?;
    DilateSystem::new(field, dilates)
}

/// Basis spec: "quadratic:m", "monogenic", or "rational".
pub fn parse_basis(spec: &str, field: &NumberField) -> Result<IntegralBasis> {
    let spec = spec.trim();
    if let Some(m) = spec.strip_prefix("quadratic:") {
        let m: i64 = m
            .trim()
            .parse()
            .map_err(|_| Error::Parse("quadratic:<m> expects an integer".into()))?;
        let (qfield, basis) = IntegralBasis::quadratic(m)?;
        if &qfield != field {
            return Err(Error::Invalid(
                "quadratic catalog basis does not match the field".into(),
            ));
        }
        return Ok(basis);
    }
    match spec.to_ascii_lowercase().as_str() {
        "monogenic" => IntegralBasis::monogenic(field.clone()),
        "rational" | "rationals" | "q" => {
            if field.degree() != 1 {
                return Err(Error::Invalid("rational basis needs a degree-1 field".into()));
            }
            IntegralBasis::new(field.clone(), vec![field.one()], BasisProvenance::Catalog)
        }
        _ => Err(Error::Parse(format!("unknown basis spec {:?}", spec))),
    }
}

/// Point set file: one whitespace-separated integer vector per line.
pub fn parse_points(content: &str) -> Result<PointSet> {
    let mut pts: Vec<Vec<i64>> = vec![];
    for line in content.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let v: Vec<i64> = line
            .split_whitespace()
            .map(|w| w.parse().map_err(|_| Error::Parse(format!("bad integer {:?}", w))))
            .collect::<Result<_>>()?;
        pts.push(v);
    }
    if pts.is_empty() {
        return Err(Error::Parse("empty point set".into()));
    }
    let dim = pts[0].len();
    if pts.iter().any(|p| p.len() != dim) {
        return Err(Error::Parse("inconsistent vector lengths".into()));
    }
    Ok(PointSet::new(dim, pts))
}

pub fn format_points(ps: &PointSet) -> String {
    let mut out = String::new();
    for p in &ps.points {
        let words: Vec<String> = p.iter().map(|x| x.to_string()).collect();
        out.push_str(&words.join(" "));
        out.push('\n');
    }
    out
}

/// Nested integer lists (JSON syntax) to a list of matrices; a single matrix
/// is promoted to a one-element list.
pub fn parse_matrices(content: &str) -> Result<Vec<Vec<Vec<i64>>>> {
    let v: serde_json::Value =
        serde_json::from_str(content).map_err(|e| Error::Parse(e.to_string()))?;
    let as_matrix = |m: &serde_json::Value| -> Result<Vec<Vec<i64>>> {
        let rows = m
            .as_array()
            .ok_or_else(|| Error::Parse("matrix must be a list of rows".into()))?;
        rows.iter()
            .map(|r| {
                r.as_array()
                    .ok_or_else(|| Error::Parse("row must be a list".into()))?
                    .iter()
                    .map(|x| {
                        x.as_i64()
                            .ok_or_else(|| Error::Parse("matrix entries must be integers".into()))
                    })
                    .collect()
            })
            .collect()
    };
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Parse("expected a JSON list".into()))?;
    if arr.is_empty() {
        return Err(Error::Parse("empty matrix list".into()));
    }
    if arr[0].is_array() && arr[0].as_array().map_or(false, |r| r.first().map_or(false, |x| x.is_array())) {
        arr.iter().map(as_matrix).collect()
    } else {
        Ok(vec![as_matrix(&v)?])
    }
}

/// Rational in "p/q" or integer form.
pub fn parse_rational(s: &str) -> Result<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| Error::Parse("bad numerator".into()))?;
            let d: BigInt = d.trim().parse().map_err(|_| Error::Parse("bad denominator".into()))?;
            if d.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            Ok(Rat::new(n, d))
        }
        None => {
            if let Ok(n) = s.parse::<BigInt>() {
                return Ok(Rat::from_integer(n));
            }
            let f: f64 = s.parse().map_err(|_| Error::Parse(format!("bad rational {:?}", s)))?;
            Rat::from_float(f).ok_or_else(|| Error::Parse("non-finite value".into()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    #[test]
    fn parses_defining_polys() {
        assert_eq!(parse_poly("t^2-2").unwrap(), UPoly::from_int_coeffs(&[-2, 0, 1]));
        assert_eq!(parse_poly("2t^2 - 1").unwrap(), UPoly::from_int_coeffs(&[-1, 0, 2]));
        assert_eq!(
            parse_poly("1/2*t").unwrap(),
            UPoly::new(vec![Rat::zero(), rat(1, 2)])
        );
        assert_eq!(
            parse_poly("-t^3 + 2/3").unwrap(),
            UPoly::new(vec![rat(2, 3), rat_int(0), rat_int(0), rat_int(-1)])
        );
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_poly("t^").is_err());
        assert!(parse_poly("1/0").is_err());
        assert!(parse_poly("t + $").is_err());
    }

    #[test]
    fn roundtrip_points() {
        let ps = PointSet::new(2, vec![vec![1, -2], vec![0, 5]]);
        let txt = format_points(&ps);
        assert_eq!(parse_points(&txt).unwrap(), ps);
    }

    #[test]
    fn parses_matrix_lists() {
        let ms = parse_matrices("[[[1,0],[0,1]],[[0,2],[1,0]]]").unwrap();
        assert_eq!(ms.len(), 2);
        assert_eq!(ms[1], vec![vec![0, 2], vec![1, 0]]);
        let single = parse_matrices("[[1,0],[0,1]]").unwrap();
        assert_eq!(single.len(), 1);
    }

    #[test]
    fn builds_system_from_text() {
        let sys = parse_system("t^2-2", &["1/2*t".into()]).unwrap();
        assert_eq!(sys.field.degree(), 2);
        assert_eq!(sys.dilates[0].coeffs, vec![Rat::zero(), rat(1, 2)]);
    }
}
