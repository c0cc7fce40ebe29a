//! Text syntax for Laurent polynomials and system matrices.
//!
//! ```text
//! poly   := ws term (ws ('+'|'-') ws term)* ws
//! term   := coeff ('*' mono)? | mono
//! mono   := factor ('*' factor)*
//! factor := var ('^' sint)?
//! var    := 'X' digits?
//! coeff  := sint | sint '/' digits | decimal
//! sint   := ['-'] digits
//! ```
//!
//! A bare `X` is accepted only in rank 1; otherwise variables are `X1`..`Xr`.
//! A `-` directly before a monomial negates it (`-X^2`). Decimal
//! coefficients are accepted only by the float field. Error positions are
//! 0-based byte offsets.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, FieldDescriptor, Floats, PrimeField, Rationals};
use crate::laurent::{LaurentPoly, PolyMatrix};
use crate::system::System;
use crate::terms::{Exponent, TermMap};

struct Parser<'a, K: Field> {
    src: &'a [u8],
    pos: usize,
    rank: usize,
    field: &'a K,
}

impl<'a, K: Field> Parser<'a, K> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn peek_at(&self, offset: usize) -> Option<u8> {
        self.src.get(self.pos + offset).copied()
    }

    fn err(&self, expected: &str) -> Error {
        Error::Syntax {
            pos: self.pos,
            expected: expected.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            None
        } else {
            // ASCII digits are valid UTF-8
            Some(std::str::from_utf8(&self.src[start..self.pos]).unwrap())
        }
    }

    fn poly(&mut self) -> Result<TermMap<K>> {
        let mut out = TermMap::zero(self.field.clone(), self.rank)?;
        self.skip_ws();
        self.term(false, &mut out)?;
        loop {
            self.skip_ws();
            let negate = match self.peek() {
                None => break,
                Some(b'+') => false,
                Some(b'-') => true,
                Some(_) => return Err(self.err("'+', '-' or end of input")),
            };
            self.pos += 1;
            self.skip_ws();
            self.term(negate, &mut out)?;
        }
        Ok(out)
    }

    fn term(&mut self, negate: bool, out: &mut TermMap<K>) -> Result<()> {
        let start = self.pos;
        let minus = self.peek() == Some(b'-');
        let (coeff, has_coeff) = match (minus, self.peek_at(minus as usize)) {
            (_, Some(b)) if b.is_ascii_digit() => (self.coeff()?, true),
            (_, Some(b'X')) => {
                self.pos += minus as usize;
                let one = self.field.one();
                (if minus { self.field.neg(&one) } else { one }, false)
            }
            _ => {
                self.pos = start + minus as usize;
                return Err(self.err("coefficient or variable"));
            }
        };
        let exponent = if !has_coeff {
            self.mono()?
        } else if self.peek() == Some(b'*') {
            self.pos += 1;
            self.mono()?
        } else {
            Exponent::zero(self.rank)
        };
        let coeff = if negate {
            self.field.neg(&coeff)
        } else {
            coeff
        };
        out.accumulate(exponent, &coeff);
        Ok(())
    }

    fn coeff(&mut self) -> Result<K::Elem> {
        let start = self.pos;
        let negative = self.peek() == Some(b'-');
        if negative {
            self.pos += 1;
        }
        let int_digits = self.digits().ok_or_else(|| self.err("digits"))?;
        match self.peek() {
            Some(b'/') => {
                self.pos += 1;
                let den_pos = self.pos;
                let den = self
                    .digits()
                    .ok_or_else(|| self.err("denominator digits"))?;
                let den: BigInt = den.parse().unwrap();
                if den == BigInt::from(0) {
                    return Err(Error::ZeroDenominator { pos: den_pos });
                }
                let mut num: BigInt = int_digits.parse().unwrap();
                if negative {
                    num = -num;
                }
                self.field
                    .from_fraction(&num, &den)
                    .map_err(|_| Error::ZeroDenominator { pos: den_pos })
            }
            Some(b'.') => {
                self.pos += 1;
                self.digits().ok_or_else(|| self.err("fractional digits"))?;
                let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                self.field
                    .from_decimal(text)
                    .ok_or(Error::DecimalInExactField { pos: start })
            }
            _ => {
                let mut n: BigInt = int_digits.parse().unwrap();
                if negative {
                    n = -n;
                }
                Ok(self.field.from_integer(&n))
            }
        }
    }

    fn mono(&mut self) -> Result<Exponent> {
        let mut exponent = vec![0i64; self.rank];
        loop {
            let (axis, power) = self.factor()?;
            exponent[axis] = exponent[axis]
                .checked_add(power)
                .ok_or_else(|| self.err("exponent within the 64-bit range"))?;
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                return Ok(Exponent::new(exponent));
            }
        }
    }

    fn factor(&mut self) -> Result<(usize, i64)> {
        if self.peek() != Some(b'X') {
            return Err(self.err("variable"));
        }
        let var_pos = self.pos;
        self.pos += 1;
        let axis = match self.digits() {
            None if self.rank == 1 => 0,
            None => return Err(self.err(&format!("variable index 1..={}", self.rank))),
            Some(d) => {
                let index = d.parse::<u64>().unwrap_or(u64::MAX);
                if index == 0 || index > self.rank as u64 {
                    return Err(Error::VariableIndexOutOfRange {
                        pos: var_pos,
                        index,
                        rank: self.rank,
                    });
                }
                (index - 1) as usize
            }
        };
        if self.peek() != Some(b'^') {
            return Ok((axis, 1));
        }
        self.pos += 1;
        let start = self.pos;
        if self.peek() == Some(b'-') {
            self.pos += 1;
        }
        self.digits().ok_or_else(|| self.err("integer exponent"))?;
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let power = text.parse::<i64>().map_err(|_| Error::Syntax {
            pos: start,
            expected: "exponent within the 64-bit range".into(),
        })?;
        Ok((axis, power))
    }
}

/// Parses a polynomial in `rank` variables over `field`.
pub fn parse_poly<K: Field>(text: &str, rank: usize, field: &K) -> Result<LaurentPoly<K>> {
    if rank == 0 {
        return Err(Error::ZeroRank);
    }
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        rank,
        field,
    };
    Ok(LaurentPoly { inner: p.poly()? })
}

/// Parses a single coefficient token (`sint`, `sint/digits` or a decimal),
/// surrounding whitespace allowed.
pub fn parse_value<K: Field>(text: &str, field: &K) -> Result<K::Elem> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        rank: 1,
        field,
    };
    p.skip_ws();
    if !matches!(p.peek(), Some(b) if b.is_ascii_digit() || b == b'-') {
        return Err(p.err("number"));
    }
    let v = p.coeff()?;
    p.skip_ws();
    if p.peek().is_some() {
        return Err(p.err("end of value"));
    }
    Ok(v)
}

fn format_mono(e: &Exponent) -> String {
    let rank = e.rank();
    let factors: Vec<String> = e
        .components()
        .iter()
        .enumerate()
        .filter(|(_, &k)| k != 0)
        .map(|(i, &k)| {
            let var = if rank == 1 {
                "X".to_string()
            } else {
                format!("X{}", i + 1)
            };
            if k == 1 {
                var
            } else {
                format!("{var}^{k}")
            }
        })
        .collect();
    factors.join("*")
}

/// Deterministic text form: terms in ascending lexicographic exponent order,
/// unit coefficients omitted. `parse_poly(format_poly(d)) == d`.
pub fn format_poly<K: Field>(d: &LaurentPoly<K>) -> String {
    let f = d.field();
    let mut out = String::new();
    for (i, (e, c)) in d.terms().enumerate() {
        let negative = f.is_negative(c);
        let magnitude = if negative { f.neg(c) } else { c.clone() };
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let coeff = f.format(&magnitude);
        let mono = format_mono(e);
        match (mono.is_empty(), coeff == "1") {
            (true, _) => out.push_str(&coeff),
            (false, true) => out.push_str(&mono),
            (false, false) => {
                out.push_str(&coeff);
                out.push('*');
                out.push_str(&mono);
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// JSON description of a system matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemDocument {
    pub rank: usize,
    pub field: String,
    pub k: usize,
    pub l: usize,
    pub entries: Vec<Vec<String>>,
}

impl SystemDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: SystemDocument =
            serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        if doc.rank == 0 {
            return Err(Error::Schema("rank must be at least 1".into()));
        }
        if doc.k == 0 || doc.l == 0 {
            return Err(Error::Schema("k and l must be at least 1".into()));
        }
        if doc.entries.len() != doc.k {
            return Err(Error::Schema(format!(
                "expected {} rows of entries, found {}",
                doc.k,
                doc.entries.len()
            )));
        }
        if let Some((i, row)) = doc
            .entries
            .iter()
            .enumerate()
            .find(|(_, r)| r.len() != doc.l)
        {
            return Err(Error::Schema(format!(
                "row {i} has {} entries, expected {}",
                row.len(),
                doc.l
            )));
        }
        Ok(doc)
    }

    pub fn descriptor(&self) -> Result<FieldDescriptor> {
        self.field
            .parse()
            .map_err(|e: Error| Error::Schema(e.to_string()))
    }

    /// Parses the entries over `field`, which must match the document's
    /// field string.
    pub fn build<K: Field>(&self, field: &K) -> Result<System<K>> {
        let declared = self.descriptor()?;
        if declared != field.descriptor() {
            return Err(Error::MixedField {
                left: declared.to_string(),
                right: field.descriptor().to_string(),
            });
        }
        let grid = self
            .entries
            .iter()
            .enumerate()
            .map(|(row, cells)| {
                cells
                    .iter()
                    .enumerate()
                    .map(|(col, text)| {
                        parse_poly(text, self.rank, field).map_err(|e| Error::Entry {
                            row,
                            col,
                            source: Box::new(e),
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(System::new(PolyMatrix::new(grid)?))
    }
}

/// A parsed system over whichever field its document names.
#[derive(Clone, Debug, PartialEq)]
pub enum AnySystem {
    Rational(System<Rationals>),
    Prime(System<PrimeField>),
    Float(System<Floats>),
}

/// Parses a JSON system document.
pub fn parse_system(text: &str) -> Result<AnySystem> {
    let doc = SystemDocument::from_json(text)?;
    Ok(match doc.descriptor()? {
        FieldDescriptor::Rational => AnySystem::Rational(doc.build(&Rationals)?),
        FieldDescriptor::Prime(p) => AnySystem::Prime(doc.build(&PrimeField::new(p)?)?),
        FieldDescriptor::Float(t) => AnySystem::Float(doc.build(&Floats::new(t)?)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(text: &str) -> LaurentPoly<Rationals> {
        parse_poly(text, 1, &Rationals).unwrap()
    }

    fn ints(rank: usize, terms: &[(Vec<i64>, i64)]) -> LaurentPoly<Rationals> {
        LaurentPoly::from_ints(Rationals, rank, terms.iter().map(|(e, c)| (e.clone(), *c))).unwrap()
    }

    #[test]
    fn example_polynomials() {
        assert_eq!(
            q("5*X^-1 - 3*X^2"),
            ints(1, &[(vec![-1], 5), (vec![2], -3)])
        );
        assert_eq!(
            parse_poly("X1^-1*X2 + 3*X1^2*X2^-2", 2, &Rationals).unwrap(),
            ints(2, &[(vec![-1, 1], 1), (vec![2, -2], 3)])
        );
        assert!(q("X - X").is_zero());
    }

    #[test]
    fn grammar_details() {
        assert_eq!(q("-X^2"), ints(1, &[(vec![2], -1)]));
        assert_eq!(q("  X  +  1 "), ints(1, &[(vec![1], 1), (vec![0], 1)]));
        assert_eq!(q("X*X^-3*X"), ints(1, &[(vec![-1], 1)]));
        assert_eq!(q("X - -2"), ints(1, &[(vec![1], 1), (vec![0], 2)]));
        assert_eq!(q("X1^2"), ints(1, &[(vec![2], 1)]));
        assert_eq!(q("0"), LaurentPoly::zero(Rationals, 1).unwrap());
        let half = q("1/2*X + -3/6");
        assert_eq!(
            half.coeff(&[1].into()).unwrap(),
            BigRational::new(1.into(), 2.into())
        );
        assert_eq!(
            half.coeff(&[0].into()).unwrap(),
            BigRational::new((-1).into(), 2.into())
        );
        assert_eq!(
            parse_poly("X2*X1", 2, &Rationals).unwrap(),
            ints(2, &[(vec![1, 1], 1)])
        );
    }

    #[test]
    fn prime_and_float_coefficients() {
        let gf = PrimeField::new(7).unwrap();
        let p = parse_poly("-1 + 10*X + 3/2*X^2", 1, &gf).unwrap();
        assert_eq!(p.coeff(&[0].into()).unwrap(), 6);
        assert_eq!(p.coeff(&[1].into()).unwrap(), 3);
        assert_eq!(p.coeff(&[2].into()).unwrap(), 5); // 3 * 4

        let f = Floats::default();
        let k = parse_poly("0.5*X^-1 + 0.5*X", 1, &f).unwrap();
        assert_eq!(k.coeff(&[-1].into()).unwrap(), 0.5);
    }

    #[test]
    fn errors_carry_positions() {
        let err = |s: &str, rank: usize| parse_poly(s, rank, &Rationals).unwrap_err();
        assert!(matches!(
            err("0.5*X", 1),
            Error::DecimalInExactField { pos: 0 }
        ));
        assert!(matches!(
            err("X + 1/0", 1),
            Error::ZeroDenominator { pos: 6 }
        ));
        assert!(matches!(
            err("X3", 2),
            Error::VariableIndexOutOfRange {
                pos: 0,
                index: 3,
                rank: 2
            }
        ));
        assert!(matches!(
            err("X0", 2),
            Error::VariableIndexOutOfRange { index: 0, .. }
        ));
        assert!(matches!(err("X", 2), Error::Syntax { pos: 1, .. }));
        assert!(matches!(err("", 1), Error::Syntax { pos: 0, .. }));
        assert!(matches!(err("X +", 1), Error::Syntax { pos: 3, .. }));
        assert!(matches!(err("X^", 1), Error::Syntax { pos: 2, .. }));
        assert!(matches!(err("2 X", 1), Error::Syntax { pos: 2, .. }));
        assert!(matches!(err("(X)", 1), Error::Syntax { pos: 0, .. }));
        assert!(matches!(
            err("X^99999999999999999999", 1),
            Error::Syntax { pos: 2, .. }
        ));
        assert!(matches!(err("3*", 1), Error::Syntax { pos: 2, .. }));
        let gf = PrimeField::new(5).unwrap();
        assert!(matches!(
            parse_poly("1/5", 1, &gf).unwrap_err(),
            Error::ZeroDenominator { pos: 2 }
        ));
        let msg = err("X ? 1", 1).to_string();
        assert!(msg.contains("byte 2"), "{msg}");
    }

    #[test]
    fn formatting() {
        assert_eq!(
            format_poly(&ints(1, &[(vec![-1], 5), (vec![2], -3)])),
            "5*X^-1 - 3*X^2"
        );
        assert_eq!(format_poly(&LaurentPoly::zero(Rationals, 2).unwrap()), "0");
        assert_eq!(format_poly(&q("-X^-1 + 1 - X")), "-X^-1 + 1 - X");
        assert_eq!(format_poly(&q("-3/4")), "-3/4");
        assert_eq!(
            format_poly(&parse_poly("X1^-1*X2 + 3*X1^2*X2^-2", 2, &Rationals).unwrap()),
            "X1^-1*X2 + 3*X1^2*X2^-2"
        );
        let gf = PrimeField::new(7).unwrap();
        assert_eq!(format_poly(&parse_poly("-X", 1, &gf).unwrap()), "6*X");
        let f = Floats::default();
        assert_eq!(
            format_poly(&parse_poly("0.5*X^-1 - 0.25*X", 1, &f).unwrap()),
            "0.5*X^-1 - 0.25*X"
        );
    }

    #[test]
    fn values() {
        assert_eq!(
            parse_value(" 3/6 ", &Rationals).unwrap(),
            BigRational::new(1.into(), 2.into())
        );
        assert!(matches!(
            parse_value("0.5", &Rationals),
            Err(Error::DecimalInExactField { .. })
        ));
        assert_eq!(parse_value("-0.5", &Floats::default()).unwrap(), -0.5);
        assert!(parse_value("X", &Rationals).is_err());
        assert!(parse_value("1 2", &Rationals).is_err());
        assert!(parse_value("", &Rationals).is_err());
    }

    #[test]
    fn system_documents() {
        let two = r#"{"rank":1,"field":"rational","k":2,"l":2,"entries":[["X + X^-1","1"],["0","X^-1 - 1"]]}"#;
        let AnySystem::Rational(s) = parse_system(two).unwrap() else {
            panic!()
        };
        assert_eq!((s.equations(), s.components()), (2, 2));
        assert_eq!(*s.matrix().entry(0, 0), q("X^-1 + X"));
        assert_eq!(*s.matrix().entry(1, 1), q("X^-1 - 1"));
        assert!(s.matrix().entry(1, 0).is_zero());

        let diff = r#"{"rank":1,"field":"gf:2","k":1,"l":1,"entries":[["X - X^-1"]]}"#;
        let AnySystem::Prime(s) = parse_system(diff).unwrap() else {
            panic!()
        };
        assert_eq!(s.field().modulus(), 2);

        let ragged = r#"{"rank":1,"field":"rational","k":2,"l":2,"entries":[["1","0"],["0"]]}"#;
        assert!(matches!(parse_system(ragged), Err(Error::Schema(_))));
        let wrong_k = r#"{"rank":1,"field":"rational","k":3,"l":1,"entries":[["1"]]}"#;
        assert!(matches!(parse_system(wrong_k), Err(Error::Schema(_))));
        let bad_field = r#"{"rank":1,"field":"gf:4","k":1,"l":1,"entries":[["1"]]}"#;
        assert!(matches!(parse_system(bad_field), Err(Error::Schema(_))));
        assert!(matches!(parse_system("not json"), Err(Error::Schema(_))));
        let bad_entry = r#"{"rank":1,"field":"rational","k":1,"l":2,"entries":[["1","X^"]]}"#;
        assert!(matches!(
            parse_system(bad_entry),
            Err(Error::Entry { row: 0, col: 1, .. })
        ));
    }
}
