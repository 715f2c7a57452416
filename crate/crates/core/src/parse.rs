//! Plain-text polynomial syntax.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*        division only by constants
//! unary  := '-' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | identifier | '(' expr ')'
//! ```
//!
//! Identifiers are resolved by the caller to variables or constants, so
//! `3/2*x1^2*z - 1` and `lam1*y*dy + z*dz` go through the same parser.

use crate::error::{Error, Result};
use crate::jet::Poly;
use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq)]
pub enum Symbol<F> {
    Var(usize),
    Const(F),
}

/// Parse `src` into a polynomial in `nvars` variables.
pub fn parse_poly<F: Field>(
    src: &str,
    nvars: usize,
    resolve: &dyn Fn(&str) -> Option<Symbol<F>>,
) -> Result<Poly<F>> {
    let mut p = Parser {
        src,
        pos: 0,
        nvars,
        resolve,
    };
    p.skip_ws();
    let out = p.expr()?;
    p.skip_ws();
    if p.pos < src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(out)
}

/// Resolver for the default names `x1..xn`.
pub fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

struct Parser<'a, F> {
    src: &'a str,
    pos: usize,
    nvars: usize,
    resolve: &'a dyn Fn(&str) -> Option<Symbol<F>>,
}

impl<F: Field> Parser<'_, F> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse {
            column: self.pos + 1,
            message: msg.to_string(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Poly<F>> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.add(&self.term()?.neg());
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly<F>> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat('/') {
                let at = self.pos;
                let d = self.unary()?;
                let c = d.as_constant().ok_or(Error::Parse {
                    column: at + 1,
                    message: "division by a non-constant".into(),
                })?;
                let inv = c.inv().ok_or(Error::Parse {
                    column: at + 1,
                    message: "division by zero".into(),
                })?;
                acc = acc.mul(&Poly::constant(self.nvars, inv));
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Poly<F>> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Poly<F>> {
        let base = self.atom()?;
        if self.eat('^') {
            self.skip_ws();
            let start = self.pos;
            let digits = self.take_while(|c| c.is_ascii_digit());
            let k: u32 = digits.parse().map_err(|_| Error::Parse {
                column: start + 1,
                message: "expected a nonnegative integer exponent".into(),
            })?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> &str {
        let start = self.pos;
        while let Some(c) = self.peek() {
            if pred(c) {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
        &self.src[start..self.pos]
    }

    fn atom(&mut self) -> Result<Poly<F>> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.take_while(|c| c.is_ascii_digit()).to_string();
                let v = F::parse_literal(&digits).ok_or(Error::Parse {
                    column: start + 1,
                    message: format!("bad number '{digits}'"),
                })?;
                Ok(Poly::constant(self.nvars, v))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let name = self
                    .take_while(|c| c.is_alphanumeric() || c == '_')
                    .to_string();
                match (self.resolve)(&name) {
                    Some(Symbol::Var(i)) if i < self.nvars => Ok(Poly::var(self.nvars, i)),
                    Some(Symbol::Var(_)) => Err(Error::Parse {
                        column: start + 1,
                        message: format!("variable '{name}' out of range"),
                    }),
                    Some(Symbol::Const(c)) => Ok(Poly::constant(self.nvars, c)),
                    None => Err(Error::Parse {
                        column: start + 1,
                        message: format!("unknown symbol '{name}'"),
                    }),
                }
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

/// Resolver over a list of variable names plus named constants.
pub fn resolver<'a, F: Field>(
    vars: &'a [String],
    consts: &'a [(String, F)],
) -> impl Fn(&str) -> Option<Symbol<F>> + 'a {
    move |name: &str| {
        if let Some(i) = vars.iter().position(|v| v == name) {
            return Some(Symbol::Var(i));
        }
        consts
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, c)| Symbol::Const(c.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::{GermContext, Jet};
    use crate::scalar::{int, ratio, Rat};

    fn parse(src: &str, vars: &[&str]) -> Result<Poly<Rat>> {
        let names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let consts = vec![("lam".to_string(), ratio::<Rat>(3, 2))];
        let res = resolver(&names, &consts);
        parse_poly(src, names.len(), &res)
    }

    #[test]
    fn parses_rational_monomials() {
        let p = parse("3/2*x1^2*z - 1", &["x1", "z"]).unwrap();
        assert_eq!(p.terms().get(&vec![2, 1]), Some(&ratio(3, 2)));
        assert_eq!(p.terms().get(&vec![0, 0]), Some(&int(-1)));
    }

    #[test]
    fn parses_products_and_constants() {
        let p = parse("(1 + x)*(1 - x) + lam*y", &["x", "y"]).unwrap();
        let ctx = GermContext::smooth(2, 0, 4).unwrap();
        let j = Jet::normal_form(&p, ctx).unwrap();
        assert_eq!(j.coeff(&[2, 0]), int(-1));
        assert_eq!(j.coeff(&[0, 1]), ratio(3, 2));
        assert_eq!(j.coeff(&[0, 0]), int(1));
    }

    #[test]
    fn reports_columns() {
        match parse("x + * y", &["x", "y"]) {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 5),
            other => panic!("unexpected {other:?}"),
        }
        match parse("x + w", &["x"]) {
            Err(Error::Parse { column, message }) => {
                assert_eq!(column, 5);
                assert!(message.contains("unknown symbol"));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse("x / y", &["x", "y"]).is_err());
        assert!(parse("(x", &["x"]).is_err());
    }
}
