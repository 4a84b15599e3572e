//! Parser for the display grammar of polynomials and rational functions.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := ('+' | '-') unary | power
//! power := atom ('^' digits)?
//! atom  := digits | name | 'sqrt(-3)' | '(' expr ')'
//! ```
//!
//! A single variable name is allowed per expression. `sqrt(-3)` only parses
//! over a base field that contains it.

use crate::error::{Error, Result};
use crate::exactnum::{Field, Rational};

use super::RatFunc;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    var: Option<String>,
}

fn err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse(msg.into()))
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr<F: Field>(&mut self) -> Result<RatFunc<F>> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term<F: Field>(&mut self) -> Result<RatFunc<F>> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat(b'/') {
                acc = acc.div(&self.unary()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary<F: Field>(&mut self) -> Result<RatFunc<F>> {
        if self.eat(b'-') {
            return Ok(self.unary::<F>()?.neg());
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power<F: Field>(&mut self) -> Result<RatFunc<F>> {
        let base = self.atom()?;
        if self.eat(b'^') {
            self.skip_ws();
            let digits = self.digits();
            if digits.is_empty() {
                return err("expected exponent after '^'");
            }
            let e: i32 = digits.parse().map_err(|_| Error::Parse("exponent too large".into()))?;
            return base.pow(e);
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom<F: Field>(&mut self) -> Result<RatFunc<F>> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return err(format!("expected ')' at offset {}", self.pos));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits();
                let r: Rational = d.parse()?;
                Ok(RatFunc::constant(F::from_rational(r)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = String::from_utf8_lossy(&self.src[start..self.pos]).into_owned();
                if name == "sqrt" {
                    return self.sqrt_neg3();
                }
                match &self.var {
                    Some(v) if *v != name => {
                        return err(format!("unexpected second variable {name:?} (already using {v:?})"))
                    }
                    _ => self.var = Some(name),
                }
                Ok(RatFunc::from_poly(super::Poly::x()))
            }
            Some(c) => err(format!("unexpected character {:?} at offset {}", c as char, self.pos)),
            None => err("unexpected end of input"),
        }
    }

    fn sqrt_neg3<F: Field>(&mut self) -> Result<RatFunc<F>> {
        let ok = self.eat(b'(') && self.eat(b'-') && {
            self.skip_ws();
            self.digits() == "3"
        } && self.eat(b')');
        if !ok {
            return err("only sqrt(-3) is supported");
        }
        match F::sqrt_neg3() {
            Some(r) => Ok(RatFunc::constant(r)),
            None => err("sqrt(-3) is not in the base field"),
        }
    }
}

/// Parses a rational function. When `var` is given, any variable in the
/// input must carry that name.
pub fn parse_ratfunc<F: Field>(s: &str, var: Option<&str>) -> Result<RatFunc<F>> {
    let mut p = Parser { src: s.as_bytes(), pos: 0, var: var.map(str::to_string) };
    let r = p.expr()?;
    if p.peek().is_some() {
        return err(format!("trailing input at offset {}", p.pos));
    }
    Ok(r)
}

/// Splits `(x, y)` into its two coordinate strings at the top-level comma.
pub fn split_pair(s: &str) -> Result<(&str, &str)> {
    let s = s.trim();
    let inner = s
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("expected (x, y), got {s:?}")))?;
    let mut depth = 0i32;
    for (i, c) in inner.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return Ok((inner[..i].trim(), inner[i + 1..].trim())),
            _ => {}
        }
    }
    err(format!("expected a comma in {s:?}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::QuadExt;
    use crate::funcfield::Poly;

    fn q(n: i64, d: i64) -> Rational {
        Rational::normalize(n, d).unwrap()
    }

    #[test]
    fn parses_display_forms() {
        let r: RatFunc<Rational> = parse_ratfunc("(3/2)*t^2 - 1", None).unwrap();
        assert_eq!(r, RatFunc::from_poly(Poly::new(vec![q(-1, 1), q(0, 1), q(3, 2)])));
        let r: RatFunc<Rational> = parse_ratfunc("(t^6 + 1)/t^3", Some("t")).unwrap();
        assert_eq!(r.to_string(), "(t^6 + 1)/t^3");
        assert!(parse_ratfunc::<Rational>("s + t", None).is_err());
        assert!(parse_ratfunc::<Rational>("s", Some("t")).is_err());
        assert!(parse_ratfunc::<Rational>("1/(t - t)", None).is_err());
        assert!(parse_ratfunc::<Rational>("1.5", None).is_err());
    }

    #[test]
    fn sqrt_neg3_only_over_extension() {
        assert!(parse_ratfunc::<Rational>("sqrt(-3)", None).is_err());
        let r: RatFunc<QuadExt> = parse_ratfunc("(-1/2 + 1/2*sqrt(-3))*t", None).unwrap();
        assert_eq!(r, RatFunc::from_poly(Poly::x()).scale(&QuadExt::omega()));
    }

    #[test]
    fn pair_split() {
        assert_eq!(split_pair("(-2*s, 3*s)").unwrap(), ("-2*s", "3*s"));
        assert_eq!(split_pair("((t + 1)/t, 1)").unwrap(), ("(t + 1)/t", "1"));
        assert!(split_pair("t, 1").is_err());
    }
}
