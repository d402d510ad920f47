//! A small expression reader for exact values written in the notation the
//! renderer produces: integers, `/`, `+`, `-`, `*`, parentheses, `√2`,
//! `√3`, `√5`, `ζ_n`, `ζ_n^k`, `i`, with implicit multiplication
//! (`2√3`, `(1+2ζ_4)(3+2√3)`). ASCII spellings `sqrt3`, `z_n`, `zeta_n`
//! are accepted too.

use super::{CycNum, ExactError};

pub fn parse(input: &str) -> Result<CycNum, ExactError> {
    let mut p = Parser { src: input, pos: 0 };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != input.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> ExactError {
        ExactError::Parse { input: self.src.to_string(), pos: self.pos, msg: msg.to_string() }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.rest().chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<CycNum, ExactError> {
        let mut acc = self.term()?;
        loop {
            if self.eat("+") {
                acc = acc.checked_add(&self.term()?)?;
            } else if self.eat("-") {
                acc = acc.checked_sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<CycNum, ExactError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat("*") || self.eat("·") {
                acc = acc.checked_mul(&self.unary()?)?;
            } else if self.eat("/") {
                acc = acc.checked_div(&self.unary()?)?;
            } else if self.starts_atom() {
                acc = acc.checked_mul(&self.power()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_atom(&mut self) -> bool {
        match self.peek() {
            Some(c) => c == '(' || c == '√' || c == 'ζ' || c.is_ascii_alphanumeric(),
            None => false,
        }
    }

    fn unary(&mut self) -> Result<CycNum, ExactError> {
        if self.eat("-") {
            return Ok(-self.unary()?);
        }
        if self.eat("+") {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<CycNum, ExactError> {
        let base = self.atom()?;
        if self.eat("^") {
            let e = self.signed_int()?;
            return base.pow(e);
        }
        Ok(base)
    }

    fn signed_int(&mut self) -> Result<i64, ExactError> {
        let neg = if self.eat("(") {
            let neg = self.eat("-");
            let v = self.uint()?;
            if !self.eat(")") {
                return Err(self.err("expected `)`"));
            }
            return Ok(if neg { -(v as i64) } else { v as i64 });
        } else {
            self.eat("-")
        };
        let v = self.uint()? as i64;
        Ok(if neg { -v } else { v })
    }

    fn uint(&mut self) -> Result<u64, ExactError> {
        self.skip_ws();
        let digits: String = self.rest().chars().take_while(|c| c.is_ascii_digit()).collect();
        if digits.is_empty() {
            return Err(self.err("expected an integer"));
        }
        self.pos += digits.len();
        digits.parse().map_err(|_| self.err("integer out of range"))
    }

    fn atom(&mut self) -> Result<CycNum, ExactError> {
        if self.eat("(") {
            let v = self.expr()?;
            if !self.eat(")") {
                return Err(self.err("expected `)`"));
            }
            return Ok(v);
        }
        if self.eat("√") || self.eat("sqrt") {
            let paren = self.eat("(");
            let d = self.uint()?;
            if paren && !self.eat(")") {
                return Err(self.err("expected `)`"));
            }
            return CycNum::sqrt(d as u32);
        }
        if self.eat("ζ_") || self.eat("zeta_") || self.eat("z_") {
            let n = self.uint()?;
            return CycNum::root_of_unity(super::field::check_order(n)?, 1);
        }
        if self.eat("i") {
            return CycNum::root_of_unity(4, 1);
        }
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let v = self.uint()?;
                i64::try_from(v).map(CycNum::from_int).map_err(|_| self.err("integer out of range"))
            }
            _ => Err(self.err("expected a value")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rendered_forms() {
        assert_eq!(parse("3+2√3").unwrap(), CycNum::quadratic(3, 2, 3).unwrap());
        assert_eq!(parse("ζ_3^2").unwrap(), CycNum::root_of_unity(3, 2).unwrap());
        assert_eq!(parse("-1").unwrap(), CycNum::from_int(-1));
        assert_eq!(parse("1/2+√3/2").unwrap().scale_int(2), CycNum::quadratic(1, 1, 3).unwrap());
    }

    #[test]
    fn implicit_products() {
        let a = parse("-(1+2ζ_4)(3+2√3)").unwrap();
        let b = parse("-(1 + 2*i) * (3 + 2*sqrt3)").unwrap();
        assert_eq!(a, b);
        assert_eq!(parse("2(1+(3+2√3))").unwrap(), CycNum::quadratic(8, 4, 3).unwrap());
    }

    #[test]
    fn negative_exponents() {
        assert_eq!(parse("ζ_8^(-1)").unwrap(), CycNum::root_of_unity(8, 7).unwrap());
        assert_eq!(parse("ζ_8^-3").unwrap(), CycNum::root_of_unity(8, 5).unwrap());
    }

    #[test]
    fn rejects_garbage() {
        assert!(matches!(parse("3+"), Err(ExactError::Parse { .. })));
        assert!(matches!(parse("(1"), Err(ExactError::Parse { .. })));
        assert!(matches!(parse("1)"), Err(ExactError::Parse { .. })));
    }
}
