//! Plain-text polynomials in `x0, x1, x2` with coefficients in a quadratic
//! field: integers, `+ - * / ^`, parentheses, implicit products (`2x0x1`),
//! `sqrt(d)` and `zeta` for `(-1 + sqrt(-3))/2`.

use num_bigint::BigInt;

use super::poly::{ProjPoint, TernaryForm};
use super::CurveError;
use crate::exact::{QuadExt, Rational};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(usize),
    Sqrt,
    Zeta,
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>, CurveError> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Tok::Num(text.parse().expect("digits")));
        } else if c == 'x' {
            match chars.get(i + 1).and_then(|d| d.to_digit(10)) {
                Some(k) if k < 3 => out.push(Tok::Var(k as usize)),
                _ => return Err(CurveError::Parse(format!("bad variable at offset {i}"))),
            }
            i += 2;
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphabetic() {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            match word.as_str() {
                "sqrt" => out.push(Tok::Sqrt),
                "zeta" => out.push(Tok::Zeta),
                _ => return Err(CurveError::Parse(format!("unknown name `{word}`"))),
            }
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(CurveError::Parse(format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), CurveError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(CurveError::Parse(format!("expected `{c}`")))
        }
    }

    fn expr(&mut self) -> Result<TernaryForm, CurveError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_primary(&self) -> bool {
        matches!(self.peek(), Some(Tok::Num(_) | Tok::Var(_) | Tok::Sqrt | Tok::Zeta | Tok::Op('(')))
    }

    fn term(&mut self) -> Result<TernaryForm, CurveError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat('/') {
                let d = self.unary()?;
                let c = d
                    .as_constant()
                    .ok_or_else(|| CurveError::Parse("division by a non-constant".into()))?;
                acc = acc.scale(&c.inverse()?);
            } else if self.starts_primary() {
                acc = acc.mul(&self.power()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<TernaryForm, CurveError> {
        if self.eat('-') {
            Ok(self.unary()?.scale(&QuadExt::from_int(-1)))
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<TernaryForm, CurveError> {
        let base = self.primary()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n.try_into().map_err(|_| CurveError::Parse("exponent too large".into()))?;
                    Ok(base.pow(e))
                }
                _ => Err(CurveError::Parse("expected a nonnegative integer exponent".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn primary(&mut self) -> Result<TernaryForm, CurveError> {
        let tok = self.peek().cloned().ok_or_else(|| CurveError::Parse("unexpected end of input".into()))?;
        self.pos += 1;
        match tok {
            Tok::Num(n) => Ok(TernaryForm::constant(QuadExt::rational(Rational::from_integer(n)))),
            Tok::Var(i) => Ok(TernaryForm::var(i)),
            Tok::Zeta => Ok(TernaryForm::constant(QuadExt::zeta3())),
            Tok::Sqrt => {
                self.expect('(')?;
                let neg = self.eat('-');
                let n = match self.peek().cloned() {
                    Some(Tok::Num(n)) => n,
                    _ => return Err(CurveError::Parse("sqrt takes an integer".into())),
                };
                self.pos += 1;
                self.expect(')')?;
                let n: i64 = n.try_into().map_err(|_| CurveError::Parse("sqrt argument too large".into()))?;
                Ok(TernaryForm::constant(QuadExt::sqrt(if neg { -n } else { n })?))
            }
            Tok::Op('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Op(c) => Err(CurveError::Parse(format!("unexpected `{c}`"))),
        }
    }
}

/// Every `sqrt(n)` and `zeta` has to name the same field, so that the
/// arithmetic below never mixes fields.
fn check_single_field(toks: &[Tok]) -> Result<(), CurveError> {
    let mut seen: Option<i64> = None;
    for (i, t) in toks.iter().enumerate() {
        let d = match t {
            Tok::Zeta => -3,
            Tok::Sqrt => {
                let neg = toks.get(i + 2) == Some(&Tok::Op('-'));
                let k = if neg { i + 3 } else { i + 2 };
                match toks.get(k) {
                    Some(Tok::Num(n)) => {
                        let n: i64 = n.try_into().map_err(|_| CurveError::Parse("sqrt argument too large".into()))?;
                        if neg { -n } else { n }
                    }
                    _ => continue,
                }
            }
            _ => continue,
        };
        match seen {
            Some(e) if e != d => return Err(CurveError::Parse(format!("mixed fields sqrt({e}) and sqrt({d})"))),
            _ => seen = Some(d),
        }
    }
    Ok(())
}

/// Parse a polynomial; mixing two different quadratic fields is an error.
pub fn parse_polynomial(s: &str) -> Result<TernaryForm, CurveError> {
    let toks = tokenize(s)?;
    check_single_field(&toks)?;
    let mut p = Parser { toks, pos: 0 };
    let f = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(CurveError::Parse(format!("trailing input at token {}", p.pos)));
    }
    Ok(f)
}

pub fn parse_constant(s: &str) -> Result<QuadExt, CurveError> {
    parse_polynomial(s)?
        .as_constant()
        .ok_or_else(|| CurveError::Parse(format!("`{s}` is not a constant")))
}

/// `"a:b:c"`, optionally wrapped in parentheses.
pub fn parse_point(s: &str) -> Result<ProjPoint, CurveError> {
    let t = s.trim();
    let t = t.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(t);
    let parts: Vec<&str> = t.split(':').collect();
    if parts.len() != 3 {
        return Err(CurveError::Parse(format!("point `{s}` needs three coordinates")));
    }
    let c = [parse_constant(parts[0])?, parse_constant(parts[1])?, parse_constant(parts[2])?];
    ProjPoint::new(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn implicit_products_and_powers() {
        let a = parse_polynomial("2x0x1^2 - x2^3").unwrap();
        let b = parse_polynomial("2*x0*x1*x1 - x2*x2*x2").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.degree(), Some(3));
    }

    #[test]
    fn constants() {
        assert_eq!(parse_constant("(1+sqrt(-3))/2 - 1").unwrap(), QuadExt::zeta3());
        assert_eq!(parse_constant("3/4").unwrap(), QuadExt::rational(rat(3, 4)));
        assert_eq!(parse_constant("zeta^3").unwrap(), QuadExt::one());
    }

    #[test]
    fn errors() {
        assert!(parse_polynomial("x3").is_err());
        assert!(parse_polynomial("x0/x1").is_err());
        assert!(parse_polynomial("(x0").is_err());
        assert!(parse_polynomial("sqrt(2) + sqrt(3)").is_err());
        assert!(parse_point("1:0").is_err());
    }

    #[test]
    fn points() {
        let p = parse_point("(2:4:sqrt(-3))").unwrap();
        assert_eq!(p.coords()[1], QuadExt::from_int(2));
    }
}
