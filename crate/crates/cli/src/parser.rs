//! Text format for mappings:
//!
//! ```text
//! ring Q[x, y, z];
//! map f: (x, x*y + x*z)
//! ```
//!
//! Products need an explicit `*`, powers are `^` with a non-negative integer
//! exponent, and coefficients are integers or `a/b` rationals. The `ratmap`
//! keyword admits `/` between arbitrary expressions; each component is then
//! brought to a single fraction.

use std::fmt;

use ltv_core::poly::MAX_EXPONENT;
use ltv_core::rational_ext::RationalMap;
use ltv_core::{PolyMap, Polynomial, Rational, Ring};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InputMap {
    Polynomial(PolyMap),
    Rational(RationalMap),
}

/// A parsed input file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapSource {
    pub name: String,
    pub map: InputMap,
}

impl MapSource {
    pub fn ring(&self) -> &Ring {
        match &self.map {
            InputMap::Polynomial(f) => f.ring(),
            InputMap::Rational(r) => r.ring(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(String),
    Sym(char),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(s) => write!(f, "`{s}`"),
            Tok::Sym(c) => write!(f, "`{c}`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l, col) = (line, column);
        if c == '\n' {
            chars.next();
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            column += 1;
            continue;
        }
        let tok = if c.is_ascii_alphabetic() {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_ascii_alphanumeric() || d == '_' {
                    s.push(d);
                    chars.next();
                    column += 1;
                } else {
                    break;
                }
            }
            Tok::Ident(s)
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_ascii_digit() {
                    s.push(d);
                    chars.next();
                    column += 1;
                } else {
                    break;
                }
            }
            if chars.peek() == Some(&'.') {
                return Err(ParseError { line, column, message: "decimal numbers are not allowed; write a/b".into() });
            }
            Tok::Int(s)
        } else if ";,[]():+-*^/".contains(c) {
            chars.next();
            column += 1;
            Tok::Sym(c)
        } else {
            return Err(ParseError { line: l, column: col, message: format!("unexpected character `{c}`") });
        };
        out.push(Token { tok, line: l, column: col });
    }
    out.push(Token { tok: Tok::End, line, column });
    Ok(out)
}

/// `num / den`, with `den` kept as 1 whenever it is constant.
#[derive(Clone)]
struct Frac {
    num: Polynomial,
    den: Polynomial,
}

impl Frac {
    fn poly(p: Polynomial) -> Self {
        let den = Polynomial::one(p.ring());
        Frac { num: p, den }
    }

    fn normalize(self) -> Self {
        if self.num.is_zero() {
            return Frac::poly(self.num);
        }
        if self.den.is_constant() {
            let c = self.den.constant_term();
            return Frac::poly(self.num.scale(&c.recip()));
        }
        self
    }

    fn add(&self, o: &Frac) -> Frac {
        if self.den == o.den {
            return Frac { num: &self.num + &o.num, den: self.den.clone() }.normalize();
        }
        let num = &(&self.num * &o.den) + &(&o.num * &self.den);
        Frac { num, den: &self.den * &o.den }.normalize()
    }

    fn neg(&self) -> Frac {
        Frac { num: -&self.num, den: self.den.clone() }
    }

    fn mul(&self, o: &Frac) -> Frac {
        Frac { num: &self.num * &o.num, den: &self.den * &o.den }.normalize()
    }
}

struct Parser<'a> {
    toks: &'a [Token],
    pos: usize,
    ring: Ring,
    rational: bool,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error_at(t: &Token, message: impl Into<String>) -> ParseError {
        ParseError { line: t.line, column: t.column, message: message.into() }
    }

    fn expect_sym(&mut self, c: char) -> Result<Token, ParseError> {
        let t = self.bump();
        if t.tok == Tok::Sym(c) {
            Ok(t)
        } else {
            Err(Self::error_at(&t, format!("expected `{c}`, found {}", t.tok)))
        }
    }

    fn expect_ident(&mut self, what: &str) -> Result<(String, Token), ParseError> {
        let t = self.bump();
        match &t.tok {
            Tok::Ident(s) => Ok((s.clone(), t.clone())),
            other => Err(Self::error_at(&t, format!("expected {what}, found {other}"))),
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<Token, ParseError> {
        let t = self.bump();
        match &t.tok {
            Tok::Ident(s) if s == kw => Ok(t),
            other => Err(Self::error_at(&t, format!("expected `{kw}`, found {other}"))),
        }
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.peek().tok == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Frac, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat_sym('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat_sym('-') {
                acc = acc.add(&self.term()?.neg());
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Frac, ParseError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat_sym('*') {
                acc = acc.mul(&self.factor()?);
            } else if self.peek().tok == Tok::Sym('/') {
                let slash = self.bump();
                if !self.rational {
                    return Err(Self::error_at(&slash, "division is only allowed in coefficients a/b (use `ratmap` for rational maps)"));
                }
                let at = self.peek().clone();
                let d = self.factor()?;
                if d.num.is_zero() {
                    return Err(Self::error_at(&at, "division by zero"));
                }
                acc = acc.mul(&Frac { num: d.den, den: d.num }.normalize());
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Frac, ParseError> {
        if self.eat_sym('-') {
            return Ok(self.factor()?.neg());
        }
        let base = self.base()?;
        if !self.eat_sym('^') {
            return Ok(base);
        }
        let t = self.bump();
        let e = match &t.tok {
            Tok::Int(s) => s.parse::<u32>().ok().filter(|e| *e <= MAX_EXPONENT),
            other => return Err(Self::error_at(&t, format!("exponent must be a non-negative integer, found {other}"))),
        };
        let Some(e) = e else {
            return Err(Self::error_at(&t, "exponent too large"));
        };
        let pow = |p: &Polynomial| p.try_pow(e).map_err(|err| Self::error_at(&t, err.to_string()));
        Ok(Frac { num: pow(&base.num)?, den: pow(&base.den)? })
    }

    fn base(&mut self) -> Result<Frac, ParseError> {
        let t = self.bump();
        match &t.tok {
            Tok::Ident(name) => match self.ring.index_of(name) {
                Some(i) => Ok(Frac::poly(Polynomial::var(&self.ring, i).expect("index from ring"))),
                None => Err(Self::error_at(&t, format!("unknown variable `{name}`"))),
            },
            Tok::Int(s) => {
                let mut q: Rational = s.parse().expect("digits");
                // `a/b` is a coefficient even in the polynomial grammar.
                if self.peek().tok == Tok::Sym('/') && matches!(self.toks.get(self.pos + 1).map(|t| &t.tok), Some(Tok::Int(_))) {
                    self.bump();
                    let dt = self.bump();
                    let Tok::Int(d) = &dt.tok else { unreachable!() };
                    let d: Rational = d.parse().expect("digits");
                    if d == Rational::from_integer(0.into()) {
                        return Err(Self::error_at(&dt, "division by zero"));
                    }
                    q /= d;
                }
                Ok(Frac::poly(Polynomial::constant(&self.ring, q)))
            }
            Tok::Sym('(') => {
                let e = self.expr()?;
                self.expect_sym(')')?;
                Ok(e)
            }
            other => Err(Self::error_at(&t, format!("expected a variable, number or `(`, found {other}"))),
        }
    }
}

/// Parses a `map` or `ratmap` file.
pub fn parse_source(text: &str) -> Result<MapSource, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks: &toks, pos: 0, ring: Ring::new(Vec::<String>::new()), rational: false };

    p.expect_keyword("ring")?;
    p.expect_keyword("Q")?;
    p.expect_sym('[')?;
    let mut names: Vec<String> = Vec::new();
    loop {
        let (name, t) = p.expect_ident("a variable name")?;
        if names.contains(&name) {
            return Err(Parser::error_at(&t, format!("variable `{name}` declared twice")));
        }
        names.push(name);
        if !p.eat_sym(',') {
            break;
        }
    }
    p.expect_sym(']')?;
    p.expect_sym(';')?;
    p.ring = Ring::new(names);

    let kw = p.bump();
    p.rational = match &kw.tok {
        Tok::Ident(s) if s == "map" => false,
        Tok::Ident(s) if s == "ratmap" => true,
        other => return Err(Parser::error_at(&kw, format!("expected `map` or `ratmap`, found {other}"))),
    };
    let (name, _) = p.expect_ident("a map name")?;
    p.expect_sym(':')?;
    let open = p.expect_sym('(')?;
    if p.peek().tok == Tok::Sym(')') {
        return Err(Parser::error_at(p.peek(), "a mapping needs at least one component"));
    }
    let mut comps = vec![p.expr()?];
    while p.eat_sym(',') {
        comps.push(p.expr()?);
    }
    p.expect_sym(')')?;
    p.eat_sym(';');
    let end = p.bump();
    if end.tok != Tok::End {
        return Err(Parser::error_at(&end, format!("unexpected {} after the map declaration", end.tok)));
    }

    let ring = p.ring.clone();
    let wrap = |e: ltv_core::Error| Parser::error_at(&open, e.to_string());
    let map = if p.rational {
        let (nums, dens): (Vec<_>, Vec<_>) = comps.into_iter().map(|f| (f.num, f.den)).unzip();
        InputMap::Rational(RationalMap::new(&ring, nums, dens).map_err(wrap)?)
    } else {
        InputMap::Polynomial(PolyMap::new(&ring, comps.into_iter().map(|f| f.num).collect()).map_err(wrap)?)
    };
    Ok(MapSource { name, map })
}

/// Parses a polynomial `map` file.
pub fn parse_mapping(text: &str) -> Result<PolyMap, ParseError> {
    match parse_source(text)?.map {
        InputMap::Polynomial(f) => Ok(f),
        InputMap::Rational(_) => Err(ParseError { line: 1, column: 1, message: "expected a polynomial `map`, found `ratmap`".into() }),
    }
}

/// Parses a `ratmap` file; a polynomial `map` is accepted with unit
/// denominators.
pub fn parse_ratmap(text: &str) -> Result<RationalMap, ParseError> {
    Ok(match parse_source(text)?.map {
        InputMap::Polynomial(f) => RationalMap::from_polymap(&f),
        InputMap::Rational(r) => r,
    })
}

pub fn print_polynomial(p: &Polynomial) -> String {
    p.to_string()
}

fn print_ring(ring: &Ring) -> String {
    format!("ring Q[{}];", ring.names().join(", "))
}

/// The input file of a polynomial mapping, parseable by [`parse_mapping`].
pub fn print_mapping(name: &str, f: &PolyMap) -> String {
    let comps: Vec<String> = f.components().iter().map(print_polynomial).collect();
    format!("{}\nmap {name}: ({})\n", print_ring(f.ring()), comps.join(", "))
}

/// One component of a rational map, as `num` or `(num)/(den)`.
pub fn print_fraction(num: &Polynomial, den: &Polynomial) -> String {
    if den.is_constant() && den.constant_term() == Rational::from_integer(1.into()) {
        print_polynomial(num)
    } else {
        format!("({})/({})", print_polynomial(num), print_polynomial(den))
    }
}

pub fn print_ratmap(name: &str, r: &RationalMap) -> String {
    let comps: Vec<String> = r.numerators().iter().zip(r.denominators()).map(|(a, b)| print_fraction(a, b)).collect();
    format!("{}\nratmap {name}: ({})\n", print_ring(r.ring()), comps.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_example() {
        let f = parse_mapping("ring Q[x,y,z]; map f: (x, x*y + x*z)").unwrap();
        assert_eq!(f.domain_dim(), 3);
        let comps: Vec<String> = f.components().iter().map(print_polynomial).collect();
        assert_eq!(comps, ["x", "x*y + x*z"]);
    }

    #[test]
    fn coefficients_and_signs() {
        let f = parse_mapping("ring Q[x,y]; map g: (3/2*x - -y^2, -x^2 + 2^3, (x - y)^2)").unwrap();
        let comps: Vec<String> = f.components().iter().map(print_polynomial).collect();
        assert_eq!(comps, ["y^2 + 3/2*x", "-x^2 + 8", "x^2 - 2*x*y + y^2"]);
    }

    #[test]
    fn printing_edge_cases() {
        let f = parse_mapping("ring Q[x,y]; map f: (x^2 - y^2, 0, 3/2*x)").unwrap();
        let comps: Vec<String> = f.components().iter().map(print_polynomial).collect();
        assert_eq!(comps, ["x^2 - y^2", "0", "3/2*x"]);
    }

    fn err(text: &str) -> ParseError {
        parse_source(text).unwrap_err()
    }

    #[test]
    fn errors_carry_positions() {
        let e = err("ring Q[x]; map f: ()");
        assert_eq!((e.line, e.column), (1, 20));
        assert!(e.message.contains("at least one component"));

        let e = err("ring Q[x,y];\nmap f: (x + w)");
        assert_eq!((e.line, e.column), (2, 13));
        assert!(e.message.contains("unknown variable `w`"));

        let e = err("ring Q[x]; map f: ((x + 1)");
        assert!(e.message.contains("expected `)`"), "{e}");

        assert!(err("ring Q[x]; map f: (x^y)").message.contains("exponent"));
        assert!(err("ring Q[x]; map f: (x^-1)").message.contains("exponent"));
        assert!(err("ring Q[x]; map f: (x/2)").message.contains("division"));
        assert!(err("ring Q[x]; map f: (0.5*x)").message.contains("decimal"));
        assert!(err("ring Q[x]; map f: (2x)").message.contains("expected `)`"));
        assert!(err("ring Q[x,x]; map f: (x)").message.contains("twice"));
        assert!(err("ring Q[x]; map f: (1/0)").message.contains("division by zero"));
        assert!(err("ring Q[x]; map f: (x) x").message.contains("after the map"));
    }

    #[test]
    fn rational_components_become_single_fractions() {
        let r = parse_ratmap("ring Q[x,y]; ratmap f: (y - 1/(1 + x^2))").unwrap();
        assert_eq!(print_polynomial(&r.numerators()[0]), "x^2*y + y - 1");
        assert_eq!(print_polynomial(&r.denominators()[0]), "x^2 + 1");
        let printed = print_ratmap("f", &r);
        assert_eq!(parse_ratmap(&printed).unwrap(), r);
        assert!(err("ring Q[x]; ratmap f: (1/(x - x))").message.contains("division by zero"));
    }

    #[test]
    fn ratmap_is_not_a_polynomial_map() {
        assert!(parse_mapping("ring Q[x]; ratmap f: (1/x)").is_err());
        let r = parse_ratmap("ring Q[x]; map f: (x^2)").unwrap();
        assert!(r.as_polymap().is_some());
    }
}
