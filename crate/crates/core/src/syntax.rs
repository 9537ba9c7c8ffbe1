//! Expression syntax: a recursive-descent parser and plain or LaTeX printers.
//!
//! Grammar (whitespace is ignored):
//!
//! ```text
//! expr  := term (("+" | "-") term)*
//! term  := unary (("*" | "/") unary)*
//! unary := ("+" | "-") unary | power
//! power := atom ("^" exponent)?
//! exponent := integer | "-" integer | "(" ("-")? integer ")"
//! atom  := integer | name | "(" expr ")"
//! ```
//!
//! Names are constant parameters, generator names, and `i` when the tower
//! adjoins the imaginary unit. The plain printer emits this grammar.

use num_traits::{One, Signed, Zero};

use crate::elem::{Elem, Poly};
use crate::error::{Error, Result};
use crate::num::Gq;
use crate::tower::Tower;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(String),
    Name(String),
    Op(char),
}

struct Lexed {
    toks: Vec<(Tok, usize, usize)>,
    end: (usize, usize),
}

fn lex(text: &str) -> Result<Lexed> {
    let mut toks = Vec::new();
    let (mut line, mut col) = (1, 1);
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let mut s = String::new();
            while i < chars.len() && chars[i].is_ascii_digit() {
                s.push(chars[i]);
                i += 1;
                col += 1;
            }
            toks.push((Tok::Int(s), l0, c0));
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let mut s = String::new();
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                s.push(chars[i]);
                i += 1;
                col += 1;
            }
            toks.push((Tok::Name(s), l0, c0));
            continue;
        }
        let op = match c {
            '\u{2212}' => '-',
            '+' | '-' | '*' | '/' | '^' | '(' | ')' => c,
            _ => return Err(Error::Parse { line, col, msg: format!("unexpected character '{}'", c) }),
        };
        toks.push((Tok::Op(op), l0, c0));
        i += 1;
        col += 1;
    }
    Ok(Lexed { toks, end: (line, col) })
}

struct Parser<'a> {
    tower: &'a Tower,
    lx: Lexed,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.lx.toks.get(self.pos).map(|t| &t.0)
    }

    fn here(&self) -> (usize, usize) {
        self.lx.toks.get(self.pos).map_or(self.lx.end, |t| (t.1, t.2))
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        let (line, col) = self.here();
        Err(Error::Parse { line, col, msg: msg.into() })
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Elem> {
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

    fn term(&mut self) -> Result<Elem> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.peek() == Some(&Tok::Op('/')) {
                let at = self.here();
                self.pos += 1;
                let d = self.unary()?;
                if d.is_zero() {
                    return Err(Error::Parse { line: at.0, col: at.1, msg: "division by zero".into() });
                }
                acc = &acc / &d;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Elem> {
        if self.eat('-') {
            return Ok(-&self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn integer(&mut self) -> Result<i64> {
        match self.peek().cloned() {
            Some(Tok::Int(s)) => {
                self.pos += 1;
                s.parse::<i64>().or_else(|_| self.err("exponent too large"))
            }
            _ => self.err("expected an integer exponent"),
        }
    }

    fn exponent(&mut self) -> Result<i64> {
        if self.eat('(') {
            let neg = self.eat('-');
            let k = self.integer()?;
            if !self.eat(')') {
                return self.err("expected ')'");
            }
            return Ok(if neg { -k } else { k });
        }
        let neg = self.eat('-');
        let k = self.integer()?;
        Ok(if neg { -k } else { k })
    }

    fn power(&mut self) -> Result<Elem> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Op('^')) {
            self.pos += 1;
            let at = self.here();
            let k = self.exponent()?;
            if k < 0 && base.is_zero() {
                return Err(Error::Parse { line: at.0, col: at.1, msg: "negative power of zero".into() });
            }
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Elem> {
        match self.peek().cloned() {
            Some(Tok::Int(s)) => {
                self.pos += 1;
                let n: num_bigint::BigInt = s.parse().expect("digits");
                Ok(Elem::Num(Gq::from_big(n)))
            }
            Some(Tok::Name(s)) => {
                if let Some(k) = self.tower.params.iter().position(|p| *p == s) {
                    self.pos += 1;
                    return Ok(self.tower.param(k));
                }
                if let Some(l) = self.tower.gens.iter().position(|g| g.name == s) {
                    self.pos += 1;
                    return Ok(self.tower.gen(l + 1));
                }
                if s == "i" && self.tower.gaussian_i {
                    self.pos += 1;
                    return Ok(Elem::i());
                }
                self.err(format!("unknown symbol '{}'", s))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(e)
            }
            Some(Tok::Op(c)) => self.err(format!("unexpected '{}'", c)),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses an expression over the tower.
pub fn parse(text: &str, tower: &Tower) -> Result<Elem> {
    let lx = lex(text)?;
    let mut p = Parser { tower, lx, pos: 0 };
    if p.lx.toks.is_empty() {
        return p.err("empty expression");
    }
    let e = p.expr()?;
    if p.pos < p.lx.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Format {
    Plain,
    Latex,
}

/// Binding strength of a printed fragment.
const SUM: u8 = 0;
const PRODUCT: u8 = 1;
const ATOM: u8 = 2;

/// A printed fragment `(-)body`.
struct Frag {
    neg: bool,
    body: String,
    prec: u8,
}

impl Frag {
    fn render(&self, fmt: Format) -> String {
        if !self.neg {
            return self.body.clone();
        }
        if self.prec == SUM {
            format!("-{}", paren(&self.body, fmt))
        } else {
            format!("-{}", self.body)
        }
    }

    /// Fragment usable where at least `need` binding is required.
    fn at_least(&self, need: u8, fmt: Format) -> String {
        if self.neg {
            return paren(&self.render(fmt), fmt);
        }
        if self.prec >= need {
            self.body.clone()
        } else {
            paren(&self.body, fmt)
        }
    }
}

fn paren(s: &str, fmt: Format) -> String {
    match fmt {
        Format::Plain => format!("({})", s),
        Format::Latex => format!("\\left({}\\right)", s),
    }
}

struct Printer<'a> {
    tower: &'a Tower,
    fmt: Format,
}

impl<'a> Printer<'a> {
    fn rat(&self, q: &num_rational::BigRational) -> Frag {
        let neg = q.is_negative();
        let a = q.abs();
        if a.denom().is_one() {
            return Frag { neg, body: a.numer().to_string(), prec: ATOM };
        }
        match self.fmt {
            Format::Plain => Frag { neg, body: format!("{}/{}", a.numer(), a.denom()), prec: PRODUCT },
            Format::Latex => Frag { neg, body: format!("\\frac{{{}}}{{{}}}", a.numer(), a.denom()), prec: ATOM },
        }
    }

    fn imag_unit(&self) -> &'static str {
        match self.fmt {
            Format::Plain => "i",
            Format::Latex => "\\mathrm{i}",
        }
    }

    fn num(&self, q: &Gq) -> Frag {
        if q.im.is_zero() {
            return self.rat(&q.re);
        }
        let imf = {
            let m = self.rat(&q.im);
            if q.im.abs().is_one() {
                Frag { neg: m.neg, body: self.imag_unit().to_string(), prec: ATOM }
            } else {
                let sep = if self.fmt == Format::Plain { "*" } else { " " };
                Frag { neg: m.neg, body: format!("{}{}{}", m.body, sep, self.imag_unit()), prec: PRODUCT }
            }
        };
        if q.re.is_zero() {
            return imf;
        }
        let re = self.rat(&q.re);
        let op = if imf.neg { " - " } else { " + " };
        Frag { neg: false, body: format!("{}{}{}", re.render(self.fmt), op, imf.body), prec: SUM }
    }

    fn mono(&self, var: usize, k: usize) -> String {
        let name = self.tower.name_of_var(var);
        match (k, self.fmt) {
            (1, _) => name.to_string(),
            (_, Format::Plain) => format!("{}^{}", name, k),
            (_, Format::Latex) => format!("{}^{{{}}}", name, k),
        }
    }

    fn term(&self, c: &Elem, var: usize, k: usize) -> Frag {
        if k == 0 {
            return self.elem(c);
        }
        let m = self.mono(var, k);
        if c.is_one() {
            return Frag { neg: false, body: m, prec: ATOM };
        }
        let cf = self.elem(c);
        if !cf.neg && cf.body == "1" {
            return Frag { neg: false, body: m, prec: ATOM };
        }
        if cf.neg && cf.body == "1" {
            return Frag { neg: true, body: m, prec: ATOM };
        }
        let cs = if cf.prec >= PRODUCT { cf.body.clone() } else { paren(&cf.body, self.fmt) };
        let sep = if self.fmt == Format::Plain { "*" } else { " " };
        Frag { neg: cf.neg, body: format!("{}{}{}", cs, sep, m), prec: PRODUCT }
    }

    fn poly(&self, p: &Poly, var: usize) -> Frag {
        let terms: Vec<Frag> = (0..p.coeffs().len())
            .rev()
            .filter(|&k| !p.coeffs()[k].is_zero())
            .map(|k| self.term(&p.coeffs()[k], var, k))
            .collect();
        if terms.is_empty() {
            return Frag { neg: false, body: "0".into(), prec: ATOM };
        }
        if terms.len() == 1 {
            return terms.into_iter().next().unwrap();
        }
        let mut s = terms[0].render(self.fmt);
        for t in &terms[1..] {
            if t.neg {
                s.push_str(" - ");
                s.push_str(&if t.prec == SUM { paren(&t.body, self.fmt) } else { t.body.clone() });
            } else if let Some(rest) = t.body.strip_prefix('-') {
                s.push_str(" - ");
                s.push_str(rest);
            } else {
                s.push_str(" + ");
                s.push_str(&t.body);
            }
        }
        Frag { neg: false, body: s, prec: SUM }
    }

    fn elem(&self, e: &Elem) -> Frag {
        match e {
            Elem::Num(q) => self.num(q),
            Elem::Frac(f) => {
                let n = self.poly(&f.num, f.var);
                if f.den.is_one() {
                    return n;
                }
                let d = self.poly(&f.den, f.var);
                match self.fmt {
                    Format::Plain => {
                        let ns = if n.prec >= PRODUCT { n.body.clone() } else { paren(&n.body, self.fmt) };
                        Frag { neg: n.neg, body: format!("{}/{}", ns, d.at_least(ATOM, self.fmt)), prec: PRODUCT }
                    }
                    Format::Latex => Frag {
                        neg: n.neg,
                        body: format!("\\frac{{{}}}{{{}}}", n.body, d.render(self.fmt)),
                        prec: ATOM,
                    },
                }
            }
        }
    }
}

/// Prints an element in the given format.
pub fn print_as(e: &Elem, tower: &Tower, fmt: Format) -> String {
    Printer { tower, fmt }.elem(e).render(fmt)
}

/// Prints an element in the plain grammar accepted by [`parse`].
pub fn print(e: &Elem, tower: &Tower) -> String {
    print_as(e, tower, Format::Plain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tower::Kind;

    fn tower() -> Tower {
        let mut t = Tower::new(&["k"], true);
        let x = t.push("x", Kind::Prim, Elem::one()).unwrap();
        t.push("t", Kind::Prim, x.inv()).unwrap();
        t
    }

    #[test]
    fn parses_and_prints() {
        let t = tower();
        let e = parse("(x*t^3+1)/(x*t)", &t).unwrap();
        assert_eq!(print(&e, &t), "(t^3 + 1/x)/t");
        assert_eq!(parse("0", &t).unwrap(), Elem::zero());
        let z = parse("-3/2*i*k + x^-2", &t).unwrap();
        assert_eq!(parse(&print(&z, &t), &t).unwrap(), z);
    }

    #[test]
    fn reports_positions() {
        let t = tower();
        match parse("x + \n y", &t) {
            Err(Error::Parse { line, col, .. }) => assert_eq!((line, col), (2, 2)),
            other => panic!("unexpected {:?}", other),
        }
        assert!(parse("x/0", &t).is_err());
        assert!(parse("x +", &t).is_err());
    }
}
