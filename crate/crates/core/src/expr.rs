//! Parsing of rational expressions in x, y, z and of factored
//! denominators.
//!
//! Grammar: integers, the variables `x y z`, binary `+ - * /`, unary `-`,
//! `^` with a nonnegative integer exponent, parentheses. Juxtaposition is
//! rejected, so `2x` must be written `2*x`. The Unicode minus sign is
//! accepted as `-`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::arith::factor::{factor, is_certified_irreducible, Factor, Factorization};
use crate::arith::gcd::gcd;
use crate::arith::{MPoly, Rat, RatFun, Var};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(Var),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<(usize, char)> = s.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().map(|p| p.1).collect();
                out.push((pos, Tok::Int(text.parse().expect("digits"))));
            }
            'x' => {
                out.push((pos, Tok::Var(Var::X)));
                i += 1;
            }
            'y' => {
                out.push((pos, Tok::Var(Var::Y)));
                i += 1;
            }
            'z' => {
                out.push((pos, Tok::Var(Var::Z)));
                i += 1;
            }
            '+' | '-' | '*' | '/' | '^' | '(' | ')' => {
                out.push((pos, Tok::Op(c)));
                i += 1;
            }
            '\u{2212}' => {
                out.push((pos, Tok::Op('-')));
                i += 1;
            }
            _ => return Err(Error::Parse { pos, msg: format!("unexpected character {c:?}") }),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    i: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map(|t| t.0).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos(), msg: msg.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RatFun> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RatFun> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.peek() == Some(&Tok::Op('/')) {
                let pos = self.pos();
                self.i += 1;
                let d = self.unary()?;
                if d.is_zero() {
                    return Err(Error::Parse { pos, msg: "division by zero".into() });
                }
                acc = &acc / &d;
            } else {
                match self.peek() {
                    Some(Tok::Int(_)) | Some(Tok::Var(_)) | Some(Tok::Op('(')) => return self.err("expected an operator; write '*' between factors"),
                    _ => return Ok(acc),
                }
            }
        }
    }

    fn unary(&mut self) -> Result<RatFun> {
        if self.eat('-') {
            return Ok(-&self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFun> {
        let base = self.atom()?;
        if self.eat('^') {
            let e = match self.peek().cloned() {
                Some(Tok::Int(n)) => {
                    self.i += 1;
                    n.to_u32().filter(|&e| e <= 10_000)
                }
                _ => None,
            };
            return match e {
                Some(e) => Ok(base.pow(e)),
                None => self.err("expected a nonnegative integer exponent"),
            };
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RatFun> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.i += 1;
                Ok(RatFun::constant(Rat::from_integer(n)))
            }
            Some(Tok::Var(v)) => {
                self.i += 1;
                Ok(RatFun::from_poly(MPoly::var(v)))
            }
            Some(Tok::Op('(')) => {
                self.i += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(e)
            }
            Some(_) => self.err("expected a number, a variable or '('"),
            None => self.err("unexpected end of input"),
        }
    }
}

fn parser(text: &str) -> Result<Parser> {
    Ok(Parser { toks: tokenize(text)?, i: 0, end: text.len() })
}

pub fn parse_expression(text: &str) -> Result<RatFun> {
    let mut p = parser(text)?;
    if p.toks.is_empty() {
        return p.err("empty expression");
    }
    let e = p.expr()?;
    if p.i != p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

pub fn parse_polynomial(text: &str) -> Result<MPoly> {
    let f = parse_expression(text)?;
    if !f.is_poly() {
        return Err(Error::Parse { pos: 0, msg: "expected a polynomial".into() });
    }
    Ok(f.into_parts().0)
}

/// Splits a top-level product `p1^e1 * p2^e2 * ...` into its factors.
fn split_product(text: &str) -> Result<Vec<(MPoly, u32)>> {
    let mut p = parser(text)?;
    let mut out = Vec::new();
    loop {
        let base = p.atom()?;
        let mut e = 1u32;
        if p.eat('^') {
            match p.peek().cloned() {
                Some(Tok::Int(n)) => {
                    p.i += 1;
                    e = match n.to_u32() {
                        Some(e) => e,
                        None => return p.err("exponent too large"),
                    };
                }
                _ => return p.err("expected an exponent"),
            }
        }
        if !base.is_poly() {
            return p.err("factors must be polynomials");
        }
        out.push((base.into_parts().0, e));
        if p.i == p.toks.len() {
            return Ok(out);
        }
        if !p.eat('*') {
            return p.err("expected '*' between factors");
        }
    }
}

/// Factorization of `den` from a user-supplied product. Constant factors
/// join the unit; factors not certified irreducible are refined.
pub fn parse_factored_den(text: &str, den: &MPoly) -> Result<Factorization> {
    let parts = split_product(text)?;
    let mut unit = Rat::from_integer(1.into());
    let mut bases: Vec<(MPoly, u32)> = Vec::new();
    for (b, e) in parts {
        if e == 0 {
            continue;
        }
        if b.is_zero() {
            return Err(Error::InvalidFactorization("zero factor".into()));
        }
        if let Some(c) = b.constant_value() {
            unit *= num_traits::pow::pow(c, e as usize);
            continue;
        }
        let (s, p) = b.integer_normalize();
        unit *= num_traits::pow::pow(s, e as usize);
        match bases.iter_mut().find(|(q, _)| *q == p) {
            Some(entry) => entry.1 += e,
            None => bases.push((p, e)),
        }
    }
    for (i, (a, _)) in bases.iter().enumerate() {
        if !crate::arith::factor::yun(a, pick_var(a)).iter().all(|(_, m)| *m == 1) {
            return Err(Error::InvalidFactorization(format!("factor {a} is not square-free")));
        }
        for (b, _) in &bases[i + 1..] {
            if !gcd(a, b).is_constant() {
                return Err(Error::InvalidFactorization(format!("factors {a} and {b} are not coprime")));
            }
        }
    }
    let mut fz = Factorization { unit: unit.clone(), factors: Vec::new() };
    for (b, e) in bases {
        if is_certified_irreducible(&b) {
            fz.factors.push(Factor { base: b, mult: e, certified: true });
        } else {
            let inner = factor(&b);
            fz.unit *= num_traits::pow::pow(inner.unit.clone(), e as usize);
            for f in inner.factors {
                fz.factors.push(Factor { base: f.base, mult: f.mult * e, certified: f.certified });
            }
        }
    }
    // the claimed product may differ from den by a constant only
    let prod = fz.expand();
    let (sd, pd) = den.integer_normalize();
    let (sp, pp) = prod.integer_normalize();
    if pd != pp {
        return Err(Error::InvalidFactorization("product of factors differs from the denominator".into()));
    }
    fz.unit = fz.unit * sp.recip() * sd.recip();
    fz.factors.sort_by(|a, b| (a.base.deg(Var::Z), a.base.deg(Var::Y), a.base.total_degree(), &a.base).cmp(&(b.base.deg(Var::Z), b.base.deg(Var::Y), b.base.total_degree(), &b.base)));
    debug_assert_eq!(fz.expand(), *den);
    Ok(fz)
}

fn pick_var(p: &MPoly) -> Var {
    [Var::Z, Var::Y, Var::X].into_iter().find(|&v| p.has_var(v)).unwrap_or(Var::X)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_examples() {
        let f3 = parse_expression("1/(x−y+z)").unwrap();
        assert_eq!(f3, RatFun::new(MPoly::one(), MPoly::linear(1, -1, 1, 0)));
        let f1 = parse_expression("(x^2*z+1)/((x+y)*(x+z)^2+1)").unwrap();
        assert_eq!(f1.den().total_degree(), 3);
        assert!(parse_expression("0").unwrap().is_zero());
        assert_eq!(parse_expression("-x^2").unwrap(), RatFun::from_poly(-&MPoly::var(Var::X).pow(2)));
    }

    #[test]
    fn rejects_bad_input() {
        for bad in ["2x", "x+", "(x", "x^-1", "1/0", "x ? y", "", "x)"] {
            assert!(matches!(parse_expression(bad), Err(Error::Parse { .. })), "{bad}");
        }
        match parse_expression("x + 2y") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn round_trip() {
        for s in ["(x^2*z+1)/((x+y)*(x+z)^2+1)", "x/2 - 1/3*y", "-(x+1)/(-3*y+z)", "2/(3*x)"] {
            let f = parse_expression(s).unwrap();
            assert_eq!(parse_expression(&f.to_string()).unwrap(), f, "{s} -> {f}");
        }
    }

    #[test]
    fn factored_denominators() {
        let f = parse_expression("1/((x+y)*(x+y+3)*((x+2*y+3*z)^2+1))").unwrap();
        let fz = parse_factored_den("(x+y)*(x+y+3)*((x+2*y+3*z)^2+1)", f.den()).unwrap();
        assert_eq!(fz.expand(), *f.den());
        assert_eq!(fz.factors.len(), 3);
        assert!(parse_factored_den("(x+y)*(x+y)", &MPoly::linear(1, 1, 0, 0).pow(2)).is_ok());
        assert!(parse_factored_den("(x+y)*(2*x+2*y)", &MPoly::linear(1, 1, 0, 0).pow(2)).is_ok());
        assert!(parse_factored_den("(x+y)", &MPoly::linear(1, 1, 0, 1)).is_err());
        assert!(parse_factored_den("(x^2-y^2)*(x+y)", &(&MPoly::linear(1, 1, 0, 0).pow(2) * &MPoly::linear(1, -1, 0, 0))).is_err());
    }
}
