use alloc::format;
use alloc::string::{String, ToString};

use dashu_int::{IBig, UBig};

use super::{MultiPoly, VarList};
use crate::error::{Error, Result};
use crate::numeric::Rational;

// Exponents beyond this are almost certainly typos and would blow up memory.
const MAX_EXPONENT: u32 = 4096;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a VarList,
}

fn syntax(offset: usize, message: &str) -> Error {
    Error::Syntax {
        offset,
        message: message.to_string(),
    }
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

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MultiPoly> {
        let base = self.base()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let at = self.pos;
            let e = self.uint()?;
            let e: u32 = u32::try_from(&e)
                .ok()
                .filter(|&e| e <= MAX_EXPONENT)
                .ok_or_else(|| syntax(at, "exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<MultiPoly> {
        let at = match self.peek() {
            None => return Err(syntax(self.pos, "unexpected end of input")),
            Some(_) => self.pos,
        };
        let c = self.src[at];
        if c == b'(' {
            self.pos += 1;
            let inner = self.expr()?;
            if self.peek() != Some(b')') {
                return Err(syntax(self.pos, "expected `)`"));
            }
            self.pos += 1;
            return Ok(inner);
        }
        if c.is_ascii_alphabetic() {
            let start = self.pos;
            while self.pos < self.src.len()
                && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
            {
                self.pos += 1;
            }
            let name = core::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
            return match self.vars.index_of(name) {
                Some(i) => Ok(MultiPoly::var(self.vars, i)),
                None => Err(Error::UndeclaredVariable {
                    name: String::from(name),
                    offset: start,
                }),
            };
        }
        let negative_literal =
            c == b'-' && self.src.get(at + 1).is_some_and(|d| d.is_ascii_digit());
        if c.is_ascii_digit() || negative_literal {
            return self.rational().map(|q| MultiPoly::constant(self.vars, q));
        }
        Err(syntax(at, "expected variable, number or `(`"))
    }

    fn uint(&mut self) -> Result<UBig> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(syntax(start, "expected unsigned integer"));
        }
        let digits = core::str::from_utf8(&self.src[start..self.pos]).unwrap_or("0");
        UBig::from_str_radix(digits, 10).map_err(|_| syntax(start, "bad integer literal"))
    }

    fn rational(&mut self) -> Result<Rational> {
        let negative = self.src[self.pos] == b'-';
        if negative {
            self.pos += 1;
        }
        let num = IBig::from(self.uint()?);
        let num = if negative { -num } else { num };
        if self.peek() == Some(b'/') {
            self.pos += 1;
            self.skip_ws();
            let at = self.pos;
            let den = self.uint()?;
            if den.is_zero() {
                return Err(syntax(at, "zero denominator"));
            }
            return Ok(Rational::from_parts(num, den));
        }
        Ok(Rational::from(num))
    }
}

/// Parse `text` as a polynomial in `vars`.
///
/// ```text
/// expr   := term (('+'|'-') term)*
/// term   := factor ('*' factor)*
/// factor := base ('^' uint)?
/// base   := var | rational | '(' expr ')'
/// rational := int ('/' uint)?
/// ```
///
/// `int` may carry a leading `-` glued to its digits, which is how a
/// negative leading coefficient is rendered.
pub fn parse_polynomial(text: &str, vars: &VarList) -> Result<MultiPoly> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        vars,
    };
    let out = p.expr()?;
    if let Some(c) = p.peek() {
        return Err(syntax(p.pos, &format!("unexpected `{}`", c as char)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v() -> VarList {
        VarList::new(["Y", "x"]).unwrap()
    }

    #[test]
    fn syntax_error_offsets() {
        assert_eq!(
            parse_polynomial("x*^2", &v()),
            Err(Error::Syntax {
                offset: 2,
                message: "expected variable, number or `(`".into()
            })
        );
        assert!(matches!(
            parse_polynomial("x + z", &v()),
            Err(Error::UndeclaredVariable { offset: 4, .. })
        ));
        assert!(matches!(parse_polynomial("(x + 1", &v()), Err(Error::Syntax { offset: 6, .. })));
        assert!(matches!(parse_polynomial("x 1", &v()), Err(Error::Syntax { offset: 2, .. })));
        assert!(matches!(parse_polynomial("1/0", &v()), Err(Error::Syntax { offset: 2, .. })));
        assert!(matches!(parse_polynomial("", &v()), Err(Error::Syntax { offset: 0, .. })));
    }

    #[test]
    fn literals_and_powers() {
        let q = parse_polynomial("-3/2*Y^2 + (x - 1)^2", &v()).unwrap();
        assert_eq!(q.to_string(), "-3/2*Y^2 + x^2 - 2*x + 1");
        let r = parse_polynomial("2^3 - 8", &v()).unwrap();
        assert!(r.is_zero());
        assert_eq!(parse_polynomial("4/6", &v()).unwrap().to_string(), "2/3");
        assert!(parse_polynomial("x^99999", &v()).is_err());
    }
}
