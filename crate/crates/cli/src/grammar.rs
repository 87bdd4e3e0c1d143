//! Text syntax for rings, polynomials and maps.
//!
//! ```text
//! ring    = base [ "[t]/(t^" int ")" ] ;
//! base    = "ZZ" | "Z" | "QQ" | "Q" | "GF(" int ")" ;
//! map     = "(" poly "," poly ")" ;
//! poly    = [ sign ] term { sign term } ;
//! sign    = "+" | "-" ;
//! term    = power { [ "*" ] power } ;
//! power   = atom [ "^" int ] ;
//! atom    = number | "X" | "Y" | "t" | "(" poly ")" ;
//! number  = int [ "/" int ] ;
//! ```
//!
//! Whitespace is insignificant. `t` is the nilpotent generator and is only
//! accepted over truncated rings.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use tame2::{AutoMap, Coeff, Poly2, Ring};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, CliError> {
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut chars = text.chars().peekable();
    while let Some(&ch) = chars.peek() {
        let (l, c) = (line, column);
        if ch == '\n' {
            chars.next();
            line += 1;
            column = 1;
            continue;
        }
        if ch.is_whitespace() {
            chars.next();
            column += 1;
            continue;
        }
        if ch.is_ascii_digit() {
            let mut digits = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                digits.push(d);
                chars.next();
                column += 1;
            }
            out.push(Token {
                tok: Tok::Int(digits.parse().expect("decimal digits")),
                line: l,
                column: c,
            });
            continue;
        }
        if ch.is_ascii_alphabetic() {
            let mut word = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_alphanumeric()) {
                word.push(d);
                chars.next();
                column += 1;
            }
            out.push(Token {
                tok: Tok::Ident(word),
                line: l,
                column: c,
            });
            continue;
        }
        if "+-*/^(),[]".contains(ch) {
            chars.next();
            column += 1;
            out.push(Token {
                tok: Tok::Sym(ch),
                line: l,
                column: c,
            });
            continue;
        }
        return Err(CliError::Syntax {
            line: l,
            column: c,
            message: format!("unexpected character '{ch}'"),
        });
    }
    out.push(Token {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

struct Parser<'r> {
    tokens: Vec<Token>,
    pos: usize,
    ring: Option<&'r Ring>,
}

impl<'r> Parser<'r> {
    fn new(text: &str, ring: Option<&'r Ring>) -> Result<Self, CliError> {
        Ok(Self {
            tokens: lex(text)?,
            pos: 0,
            ring,
        })
    }

    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn here(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Tok {
        let t = self.tokens[self.pos].tok.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: impl Into<String>) -> CliError {
        let t = self.here();
        CliError::Syntax {
            line: t.line,
            column: t.column,
            message: message.into(),
        }
    }

    fn describe(tok: &Tok) -> String {
        match tok {
            Tok::Int(n) => format!("'{n}'"),
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Sym(c) => format!("'{c}'"),
            Tok::End => "end of input".into(),
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<(), CliError> {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.error(format!(
                "expected '{c}', found {}",
                Self::describe(self.peek())
            )))
        }
    }

    fn expect_int(&mut self) -> Result<BigInt, CliError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(n)
            }
            other => Err(self.error(format!(
                "expected an integer, found {}",
                Self::describe(&other)
            ))),
        }
    }

    fn expect_end(&mut self) -> Result<(), CliError> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            Err(self.error(format!("unexpected {}", Self::describe(self.peek()))))
        }
    }

    fn ring(&self) -> &'r Ring {
        self.ring.expect("polynomial parsing needs a ring")
    }

    fn ring_expr(&mut self) -> Result<Ring, CliError> {
        let start = self.here().clone();
        let name = match self.bump() {
            Tok::Ident(s) => s,
            other => {
                return Err(CliError::Syntax {
                    line: start.line,
                    column: start.column,
                    message: format!("expected a ring name, found {}", Self::describe(&other)),
                })
            }
        };
        let base = match name.as_str() {
            "ZZ" | "Z" => Ring::integers(),
            "QQ" | "Q" => Ring::rationals(),
            "GF" => {
                self.expect_sym('(')?;
                let p = self.expect_int()?;
                self.expect_sym(')')?;
                Ring::prime_field(p)?
            }
            _ => return Err(CliError::UnknownRing(name)),
        };
        if *self.peek() != Tok::Sym('[') {
            return Ok(base);
        }
        self.bump();
        self.expect_ident("t")?;
        self.expect_sym(']')?;
        self.expect_sym('/')?;
        self.expect_sym('(')?;
        self.expect_ident("t")?;
        self.expect_sym('^')?;
        let m = self.expect_int()?;
        self.expect_sym(')')?;
        let m = m
            .to_usize()
            .filter(|&m| m >= 1)
            .ok_or_else(|| CliError::UnknownRing(format!("truncation length {m}")))?;
        Ok(Ring::truncated(&base, m)?)
    }

    fn expect_ident(&mut self, word: &str) -> Result<(), CliError> {
        if *self.peek() == Tok::Ident(word.into()) {
            self.bump();
            Ok(())
        } else {
            Err(self.error(format!(
                "expected '{word}', found {}",
                Self::describe(self.peek())
            )))
        }
    }

    fn poly(&mut self) -> Result<Poly2, CliError> {
        let ring = self.ring();
        let mut acc = Poly2::zero(ring);
        let mut negate = false;
        match self.peek() {
            Tok::Sym('-') => {
                self.bump();
                negate = true;
            }
            Tok::Sym('+') => {
                self.bump();
            }
            _ => {}
        }
        loop {
            let term = self.term()?;
            acc = if negate { &acc - &term } else { &acc + &term };
            match self.peek() {
                Tok::Sym('+') => negate = false,
                Tok::Sym('-') => negate = true,
                _ => return Ok(acc),
            }
            self.bump();
        }
    }

    fn term(&mut self) -> Result<Poly2, CliError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Tok::Sym('*') => {
                    self.bump();
                }
                Tok::Int(_) | Tok::Ident(_) | Tok::Sym('(') => {}
                _ => return Ok(acc),
            }
            let rhs = self.power()?;
            acc = &acc * &rhs;
        }
    }

    fn power(&mut self) -> Result<Poly2, CliError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Sym('^') {
            return Ok(base);
        }
        self.bump();
        let e = self.expect_int()?;
        let e = e
            .to_u32()
            .ok_or_else(|| self.error(format!("exponent {e} is too large")))?;
        Ok(base.pow(e))
    }

    fn atom(&mut self) -> Result<Poly2, CliError> {
        let ring = self.ring();
        let start = self.here().clone();
        match self.bump() {
            Tok::Int(n) => {
                let value = if *self.peek() == Tok::Sym('/') {
                    self.bump();
                    let d = self.expect_int()?;
                    if d.is_zero() {
                        return Err(CliError::Syntax {
                            line: start.line,
                            column: start.column,
                            message: "zero denominator".into(),
                        });
                    }
                    BigRational::new(n, d)
                } else {
                    BigRational::from_integer(n)
                };
                Ok(Poly2::constant(ring, ring.from_rational(&value)?))
            }
            Tok::Ident(name) => match name.as_str() {
                "X" => Ok(Poly2::x(ring)),
                "Y" => Ok(Poly2::y(ring)),
                "t" => {
                    if !ring.is_truncated() {
                        return Err(CliError::Syntax {
                            line: start.line,
                            column: start.column,
                            message: format!("'t' is not available over {ring}"),
                        });
                    }
                    Ok(Poly2::constant(ring, ring.generator()?))
                }
                _ => Err(CliError::Syntax {
                    line: start.line,
                    column: start.column,
                    message: format!("unknown symbol '{name}'"),
                }),
            },
            Tok::Sym('(') => {
                let inner = self.poly()?;
                self.expect_sym(')')?;
                Ok(inner)
            }
            other => Err(CliError::Syntax {
                line: start.line,
                column: start.column,
                message: format!(
                    "expected a number, X, Y, t or '(', found {}",
                    Self::describe(&other)
                ),
            }),
        }
    }

    /// A constant polynomial, as a ring element.
    fn element(&mut self) -> Result<Coeff, CliError> {
        let start = self.here().clone();
        let p = self.poly()?;
        if !p.is_constant() {
            return Err(CliError::Syntax {
                line: start.line,
                column: start.column,
                message: format!("expected a constant, found {p}"),
            });
        }
        Ok(p.constant_term())
    }
}

pub fn parse_ring(text: &str) -> Result<Ring, CliError> {
    let mut p = Parser::new(text, None)?;
    let ring = p.ring_expr()?;
    p.expect_end()?;
    Ok(ring)
}

pub fn parse_poly(text: &str, ring: &Ring) -> Result<Poly2, CliError> {
    let mut p = Parser::new(text, Some(ring))?;
    let poly = p.poly()?;
    p.expect_end()?;
    Ok(poly)
}

pub fn parse_map(text: &str, ring: &Ring) -> Result<AutoMap, CliError> {
    let mut p = Parser::new(text, Some(ring))?;
    p.expect_sym('(')?;
    let f = p.poly()?;
    p.expect_sym(',')?;
    let g = p.poly()?;
    p.expect_sym(')')?;
    p.expect_end()?;
    Ok(AutoMap::new(f, g)?)
}

/// `[a, b]`.
pub fn parse_pair(text: &str, ring: &Ring) -> Result<[Coeff; 2], CliError> {
    let mut p = Parser::new(text, Some(ring))?;
    p.expect_sym('[')?;
    let a = p.element()?;
    p.expect_sym(',')?;
    let b = p.element()?;
    p.expect_sym(']')?;
    p.expect_end()?;
    Ok([a, b])
}

/// `[[a, b], [c, d]]`.
pub fn parse_matrix(text: &str, ring: &Ring) -> Result<[[Coeff; 2]; 2], CliError> {
    let mut p = Parser::new(text, Some(ring))?;
    p.expect_sym('[')?;
    let mut rows = Vec::new();
    for i in 0..2 {
        if i == 1 {
            p.expect_sym(',')?;
        }
        p.expect_sym('[')?;
        let a = p.element()?;
        p.expect_sym(',')?;
        let b = p.element()?;
        p.expect_sym(']')?;
        rows.push([a, b]);
    }
    p.expect_sym(']')?;
    p.expect_end()?;
    let second = rows.pop().expect("two rows");
    let first = rows.pop().expect("two rows");
    Ok([first, second])
}

pub fn format_ring(ring: &Ring) -> String {
    ring.to_string()
}

pub fn format_poly(p: &Poly2) -> String {
    p.to_string()
}

pub fn format_map(m: &AutoMap) -> String {
    m.to_string()
}
