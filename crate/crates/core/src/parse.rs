//! Polynomial expression parser.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' INT)?
//! atom    := INT | NAME | '(' expr ')'
//! ```
//!
//! Juxtaposition is not multiplication. The right operand of `/` must be a
//! nonzero constant, which is how `a/b` coefficients in canonical renderings
//! read back.

use num_bigint::BigInt;

use crate::error::{ParseError, ParseErrorKind};
use crate::poly::{Polynomial, Ring};
use crate::scalar::Field;

const MAX_EXPONENT: u32 = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(String),
    Name(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(s) => format!("number '{s}'"),
            Tok::Name(s) => format!("name '{s}'"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::End => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut line, mut column) = (1usize, 1usize);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, column);
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            i += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Spanned {
                tok,
                line: l0,
                column: c0,
            });
            i += 1;
            column += 1;
            continue;
        }
        let start = i;
        if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i < chars.len() && (chars[i] == '.' || chars[i].is_alphabetic() || chars[i] == '_') {
                return Err(ParseError {
                    line: l0,
                    column: column + (i - start),
                    kind: ParseErrorKind::UnexpectedChar(chars[i]),
                });
            }
            let s: String = chars[start..i].iter().collect();
            column += i - start;
            out.push(Spanned {
                tok: Tok::Int(s),
                line: l0,
                column: c0,
            });
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            column += i - start;
            out.push(Spanned {
                tok: Tok::Name(s),
                line: l0,
                column: c0,
            });
            continue;
        }
        return Err(ParseError {
            line: l0,
            column: c0,
            kind: ParseErrorKind::UnexpectedChar(c),
        });
    }
    out.push(Spanned {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    names: &'a [String],
    ring: Ring,
}

impl Parser<'_> {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_at(t: &Spanned, kind: ParseErrorKind) -> ParseError {
        ParseError {
            line: t.line,
            column: t.column,
            kind,
        }
    }

    fn unexpected(t: &Spanned, expected: &'static str) -> ParseError {
        Self::error_at(
            t,
            ParseErrorKind::Unexpected {
                found: t.tok.describe(),
                expected,
            },
        )
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek().tok {
                Tok::Star => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Tok::Slash => {
                    let at = self.bump();
                    let d = self.unary()?;
                    if !d.is_unit() {
                        return Err(Self::error_at(&at, ParseErrorKind::BadDivision));
                    }
                    let inv = self.ring.field.inv(&d.constant_term());
                    acc = acc.scale(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial, ParseError> {
        if self.peek().tok == Tok::Minus {
            self.bump();
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let t = self.bump();
        match &t.tok {
            Tok::Int(s) => {
                let e: u32 = s
                    .parse()
                    .ok()
                    .filter(|e| *e <= MAX_EXPONENT)
                    .ok_or_else(|| Self::error_at(&t, ParseErrorKind::ExponentTooLarge(s.clone())))?;
                Ok(base.pow(e))
            }
            _ => Err(Self::error_at(&t, ParseErrorKind::BadExponent)),
        }
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        let t = self.bump();
        match &t.tok {
            Tok::Int(s) => {
                let n: BigInt = s.parse().expect("lexed digits");
                Ok(self.ring.constant(self.ring.field.from_bigint(&n)))
            }
            Tok::Name(s) => match self.names.iter().position(|n| n == s) {
                Some(i) => Ok(self.ring.var(i)),
                None => Err(Self::error_at(&t, ParseErrorKind::UnknownVariable(s.clone()))),
            },
            Tok::LParen => {
                let inner = self.expr()?;
                let close = self.bump();
                if close.tok != Tok::RParen {
                    return Err(Self::unexpected(&close, "')'"));
                }
                Ok(inner)
            }
            _ => Err(Self::unexpected(&t, "a number, a variable or '('")),
        }
    }
}

/// Parses `text` into a polynomial over `field` in the variables `names`.
pub fn parse_expression(text: &str, names: &[String], field: Field) -> Result<Polynomial, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        names,
        ring: Ring::new(names.len(), field),
    };
    let out = p.expr()?;
    let end = p.peek().clone();
    if end.tok != Tok::End {
        return Err(Parser::unexpected(&end, "an operator or end of input"));
    }
    Ok(out)
}

/// True for ASCII identifiers: a letter or `_`, then letters, digits, `_`.
pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}
