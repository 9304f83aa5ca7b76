//! Reads polynomial and fraction expressions such as `u*t/(u+1)` over a
//! fixed list of variable names.

use num_bigint::BigInt;

use super::fraction::Fraction;
use super::polynomial::Polynomial;
use super::scalar::Scalar;
use crate::error::{Error, Result};

struct Reader<'a> {
    src: &'a [u8],
    pos: usize,
    names: &'a [String],
}

impl Reader<'_> {
    fn ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.src.get(self.pos).copied()
    }

    fn err(&self, what: &str) -> Error {
        Error::Invalid(format!("{what} at offset {}", self.pos))
    }

    fn expr(&mut self) -> Result<Fraction> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                let t = self.term()?;
                Fraction::new(-&t.num, t.den)
            }
            _ => self.term()?,
        };
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            let num = if op == b'+' {
                &(&acc.num * &t.den) + &(&t.num * &acc.den)
            } else {
                &(&acc.num * &t.den) - &(&t.num * &acc.den)
            };
            acc = Fraction::new(num, &acc.den * &t.den);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Fraction> {
        let mut acc = self.power()?;
        while let Some(op @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let f = self.power()?;
            acc = if op == b'*' {
                Fraction::new(&acc.num * &f.num, &acc.den * &f.den)
            } else {
                if f.num.is_zero() {
                    return Err(self.err("division by zero"));
                }
                Fraction::new(&acc.num * &f.den, &acc.den * &f.num)
            };
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Fraction> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let e: u32 = std::str::from_utf8(&self.src[start..self.pos])
                .unwrap()
                .parse()
                .map_err(|_| self.err("expected exponent"))?;
            return Ok(Fraction::new(base.num.pow(e), base.den.pow(e)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Fraction> {
        let n = self.names.len();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let v: BigInt = std::str::from_utf8(&self.src[start..self.pos]).unwrap().parse().unwrap();
                Ok(Fraction::poly(Polynomial::constant(n, Scalar::from_integer(v))))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || matches!(self.src[self.pos], b'_' | b'\''))
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let i = self
                    .names
                    .iter()
                    .position(|v| v == name)
                    .ok_or_else(|| Error::Invalid(format!("unknown variable {name}")))?;
                Ok(Fraction::var(n, i))
            }
            _ => Err(self.err("expected an operand")),
        }
    }
}

/// Reads a rational expression over `names`.
pub fn read_fraction<S: AsRef<str>>(text: &str, names: &[S]) -> Result<Fraction> {
    let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
    let mut r = Reader { src: text.as_bytes(), pos: 0, names: &names };
    let f = r.expr()?;
    if r.peek().is_some() {
        return Err(r.err("trailing input"));
    }
    Ok(f)
}

/// Reads a polynomial expression; fails if a non-constant denominator
/// remains.
pub fn read_polynomial<S: AsRef<str>>(text: &str, names: &[S]) -> Result<Polynomial> {
    let f = read_fraction(text, names)?;
    if f.den.is_one() {
        return Ok(f.num);
    }
    let f = f.normalized(None)?;
    f.as_polynomial().ok_or_else(|| Error::Invalid(format!("{text} is not a polynomial")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_expressions() {
        let names = ["u", "t"];
        let f = read_fraction("u*t/(u+1)", &names).unwrap();
        assert_eq!(f.format(&["u".to_string(), "t".to_string()]), "u*t/(u+1)");
        let p = read_polynomial("(u - t)^2 - u^2", &names).unwrap();
        assert_eq!(p.format(&["u".to_string(), "t".to_string()]), "-2*u*t+t^2");
        assert!(read_polynomial("1/u", &names).is_err());
        assert!(read_fraction("u +", &names).is_err());
        assert!(read_fraction("w", &names).is_err());
        assert_eq!(read_polynomial("6/4*u", &names).unwrap().terms()[0].1, Scalar::new(3.into(), 2.into()));
    }
}
