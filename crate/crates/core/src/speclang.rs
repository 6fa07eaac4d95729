//! The group-expression language and cycle notation.
//!
//! ```text
//! expr  := name "(" args ")"
//! args  := arg ("," arg)*
//! arg   := expr | integer | keyword
//! perm  := "perm" "(" integer [";" gen ("," gen)*] ")"
//! gen   := "id" | cycle+
//! cycle := "(" integer* ")"
//! ```
//!
//! Names are case-insensitive: `AS(p,m)`, `AGL(m,p)`, `ASL(m,p)`, `Sym(n)`,
//! `Alt(n)`, `Cyc(n)`, `Wr(G,W[,imprimitive|product])`, `ProdWr(G,W)`,
//! `Disjoint(G,H)` and `Perm(n; …)`. Points in cycle notation are 1-based.

use alloc::borrow::ToOwned;
use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::catalog::{self, AffineVariant, WreathAction};
use crate::perm::{is_prime, Permutation, MAX_DEGREE};
use crate::{Error, Limits, PermGroup, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    /// Malformed input.
    Syntax,
    /// A point outside `1..=degree`.
    Range,
    /// A point listed twice in one cycle product.
    Repeat,
    /// A parameter outside the supported range.
    Cap,
}

/// Parse failure with the byte offset where it was detected.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{kind:?} error at position {position}: {message}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub position: usize,
    pub message: String,
    /// Tokens that would have been accepted, for syntax errors.
    pub expected: Vec<String>,
}

impl ParseError {
    fn syntax(position: usize, expected: &[&str], found: &Token) -> Self {
        ParseError {
            kind: ParseErrorKind::Syntax,
            position,
            message: format!("expected {}, found {found}", expected.join(" or ")),
            expected: expected.iter().map(|s| (*s).to_owned()).collect(),
        }
    }

    fn other(kind: ParseErrorKind, position: usize, message: String) -> Self {
        ParseError {
            kind,
            position,
            message,
            expected: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    Int(u64),
    LParen,
    RParen,
    Comma,
    Semi,
    End,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Ident(s) => write!(f, "'{s}'"),
            Token::Int(n) => write!(f, "{n}"),
            Token::LParen => f.write_str("'('"),
            Token::RParen => f.write_str("')'"),
            Token::Comma => f.write_str("','"),
            Token::Semi => f.write_str("';'"),
            Token::End => f.write_str("end of input"),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'(' => out.push((start, Token::LParen)),
            b')' => out.push((start, Token::RParen)),
            b',' => out.push((start, Token::Comma)),
            b';' => out.push((start, Token::Semi)),
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n = text[start..i].parse::<u64>().map_err(|_| {
                    ParseError::other(
                        ParseErrorKind::Cap,
                        start,
                        format!("integer {} too large", &text[start..i]),
                    )
                })?;
                out.push((start, Token::Int(n)));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Token::Ident(text[start..i].to_ascii_lowercase())));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap();
                return Err(ParseError::other(
                    ParseErrorKind::Syntax,
                    start,
                    format!("unexpected character {ch:?}"),
                ));
            }
        }
        i += 1;
    }
    out.push((text.len(), Token::End));
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos].1
    }

    fn offset(&self) -> usize {
        self.tokens[self.pos].0
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].1.clone();
        if t != Token::End {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Token, name: &str) -> Result<(), ParseError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(ParseError::syntax(self.offset(), &[name], self.peek()))
        }
    }

    fn int(&mut self) -> Result<(usize, u64), ParseError> {
        let at = self.offset();
        match self.peek().clone() {
            Token::Int(n) => {
                self.bump();
                Ok((at, n))
            }
            other => Err(ParseError::syntax(at, &["integer"], &other)),
        }
    }

    fn expr(&mut self) -> Result<GroupExpr, ParseError> {
        let at = self.offset();
        let name = match self.peek().clone() {
            Token::Ident(s) => s,
            other => return Err(ParseError::syntax(at, &["group name"], &other)),
        };
        self.bump();
        self.expect(Token::LParen, "'('")?;
        let expr = match name.as_str() {
            "as" | "agl" | "asl" => {
                let (pa, a) = self.int()?;
                self.expect(Token::Comma, "','")?;
                let (pb, b) = self.int()?;
                let (p, m, pp) = if name == "as" { (a, b, pa) } else { (b, a, pb) };
                if !is_prime(p) {
                    return Err(ParseError::other(
                        ParseErrorKind::Cap,
                        pp,
                        format!("{p} is not prime"),
                    ));
                }
                if m == 0
                    || p.checked_pow(m as u32)
                        .is_none_or(|q| q > MAX_DEGREE as u64)
                {
                    let pm = if name == "as" { pb } else { pa };
                    return Err(ParseError::other(
                        ParseErrorKind::Cap,
                        pm,
                        format!("{p}^{m} out of range"),
                    ));
                }
                let (p, m) = (p as u32, m as u32);
                match name.as_str() {
                    "as" => GroupExpr::As { p, m },
                    "agl" => GroupExpr::Agl { m, p },
                    _ => GroupExpr::Asl { m, p },
                }
            }
            "sym" | "alt" | "cyc" => {
                let (pn, n) = self.int()?;
                if n == 0 || n > MAX_DEGREE as u64 {
                    return Err(ParseError::other(
                        ParseErrorKind::Cap,
                        pn,
                        format!("degree {n} out of range"),
                    ));
                }
                let n = n as usize;
                match name.as_str() {
                    "sym" => GroupExpr::Sym(n),
                    "alt" => GroupExpr::Alt(n),
                    _ => GroupExpr::Cyc(n),
                }
            }
            "wr" => {
                let inner = self.expr()?;
                self.expect(Token::Comma, "','")?;
                let outer = self.expr()?;
                let action = if *self.peek() == Token::Comma {
                    self.bump();
                    let kat = self.offset();
                    match self.bump() {
                        Token::Ident(k) if k == "imprimitive" => WreathAction::Imprimitive,
                        Token::Ident(k) if k == "product" => WreathAction::Product,
                        other => {
                            return Err(ParseError::syntax(
                                kat,
                                &["'imprimitive'", "'product'"],
                                &other,
                            ))
                        }
                    }
                } else {
                    WreathAction::Imprimitive
                };
                GroupExpr::Wr {
                    inner: Box::new(inner),
                    outer: Box::new(outer),
                    action,
                }
            }
            "prodwr" | "disjoint" => {
                let a = self.expr()?;
                self.expect(Token::Comma, "','")?;
                let b = self.expr()?;
                if name == "prodwr" {
                    GroupExpr::Wr {
                        inner: Box::new(a),
                        outer: Box::new(b),
                        action: WreathAction::Product,
                    }
                } else {
                    GroupExpr::Disjoint(Box::new(a), Box::new(b))
                }
            }
            "perm" => {
                let (pn, n) = self.int()?;
                if n == 0 || n > MAX_DEGREE as u64 {
                    return Err(ParseError::other(
                        ParseErrorKind::Cap,
                        pn,
                        format!("degree {n} out of range"),
                    ));
                }
                let degree = n as usize;
                let mut generators = Vec::new();
                if *self.peek() == Token::Semi {
                    self.bump();
                    generators.push(self.generator(degree)?);
                    while *self.peek() == Token::Comma {
                        self.bump();
                        generators.push(self.generator(degree)?);
                    }
                }
                GroupExpr::Explicit { degree, generators }
            }
            _ => {
                return Err(ParseError::syntax(
                    at,
                    &[
                        "as", "agl", "asl", "sym", "alt", "cyc", "wr", "prodwr", "disjoint", "perm",
                    ],
                    &Token::Ident(name),
                ))
            }
        };
        self.expect(Token::RParen, "')'")?;
        Ok(expr)
    }

    /// `"id" | cycle+`, stopping before `,`, `)` or end of input.
    fn generator(&mut self, degree: usize) -> Result<Permutation, ParseError> {
        let at = self.offset();
        if let Token::Ident(s) = self.peek() {
            if s == "id" {
                self.bump();
                return Ok(Permutation::identity(degree));
            }
        }
        if *self.peek() != Token::LParen {
            return Err(ParseError::syntax(at, &["'id'", "'('"], self.peek()));
        }
        let mut images: Vec<usize> = (0..degree).collect();
        let mut seen = vec![false; degree];
        while *self.peek() == Token::LParen {
            self.bump();
            let mut cycle = Vec::new();
            loop {
                match self.peek().clone() {
                    Token::Int(x) => {
                        let pat = self.offset();
                        self.bump();
                        if x == 0 || x > degree as u64 {
                            return Err(ParseError::other(
                                ParseErrorKind::Range,
                                pat,
                                format!("point {x} outside 1..={degree}"),
                            ));
                        }
                        let p = x as usize - 1;
                        if seen[p] {
                            return Err(ParseError::other(
                                ParseErrorKind::Repeat,
                                pat,
                                format!("point {x} repeated"),
                            ));
                        }
                        seen[p] = true;
                        cycle.push(p);
                    }
                    Token::RParen => {
                        self.bump();
                        break;
                    }
                    other => {
                        return Err(ParseError::syntax(
                            self.offset(),
                            &["integer", "')'"],
                            &other,
                        ))
                    }
                }
            }
            for (i, &p) in cycle.iter().enumerate() {
                images[p] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Permutation::from_images(&images).expect("disjoint cycles form a permutation"))
    }
}

/// Parsed group expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupExpr {
    As {
        p: u32,
        m: u32,
    },
    Agl {
        m: u32,
        p: u32,
    },
    Asl {
        m: u32,
        p: u32,
    },
    Sym(usize),
    Alt(usize),
    Cyc(usize),
    Wr {
        inner: Box<GroupExpr>,
        outer: Box<GroupExpr>,
        action: WreathAction,
    },
    Disjoint(Box<GroupExpr>, Box<GroupExpr>),
    Explicit {
        degree: usize,
        generators: Vec<Permutation>,
    },
}

impl GroupExpr {
    /// Degree of the group the expression denotes, or `None` on overflow.
    pub fn degree(&self) -> Option<usize> {
        match self {
            GroupExpr::As { p, m } | GroupExpr::Agl { m, p } | GroupExpr::Asl { m, p } => {
                (*p as usize).checked_pow(*m)
            }
            GroupExpr::Sym(n) | GroupExpr::Alt(n) | GroupExpr::Cyc(n) => Some(*n),
            GroupExpr::Wr {
                inner,
                outer,
                action,
            } => {
                let (a, n) = (inner.degree()?, outer.degree()?);
                match action {
                    WreathAction::Imprimitive => a.checked_mul(n),
                    WreathAction::Product => a.checked_pow(u32::try_from(n).ok()?),
                }
            }
            GroupExpr::Disjoint(a, b) => a.degree()?.checked_add(b.degree()?),
            GroupExpr::Explicit { degree, .. } => Some(*degree),
        }
    }

    /// Builds the group through the catalog.
    pub fn eval(&self, limits: &Limits) -> Result<PermGroup> {
        let degree = self.degree().ok_or(Error::DegreeCapExceeded {
            degree: usize::MAX,
            cap: limits.degree_cap,
        })?;
        limits.check_degree(degree)?;
        match self {
            GroupExpr::As { p, m } => catalog::affine_semilinear(*p, *m),
            GroupExpr::Agl { m, p } => catalog::affine_linear(*m, *p, AffineVariant::General),
            GroupExpr::Asl { m, p } => catalog::affine_linear(*m, *p, AffineVariant::Special),
            GroupExpr::Sym(n) => catalog::symmetric(*n),
            GroupExpr::Alt(n) => catalog::alternating(*n),
            GroupExpr::Cyc(n) => catalog::cyclic(*n),
            GroupExpr::Wr {
                inner,
                outer,
                action,
            } => catalog::wreath(&inner.eval(limits)?, &outer.eval(limits)?, *action),
            GroupExpr::Disjoint(a, b) => {
                catalog::disjoint_product(&a.eval(limits)?, &b.eval(limits)?)
            }
            GroupExpr::Explicit { degree, generators } => {
                PermGroup::new(*degree, generators.clone())
            }
        }
    }
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupExpr::As { p, m } => write!(f, "AS({p},{m})"),
            GroupExpr::Agl { m, p } => write!(f, "AGL({m},{p})"),
            GroupExpr::Asl { m, p } => write!(f, "ASL({m},{p})"),
            GroupExpr::Sym(n) => write!(f, "Sym({n})"),
            GroupExpr::Alt(n) => write!(f, "Alt({n})"),
            GroupExpr::Cyc(n) => write!(f, "Cyc({n})"),
            GroupExpr::Wr {
                inner,
                outer,
                action: WreathAction::Imprimitive,
            } => write!(f, "wr({inner},{outer})"),
            GroupExpr::Wr {
                inner,
                outer,
                action: WreathAction::Product,
            } => write!(f, "prodwr({inner},{outer})"),
            GroupExpr::Disjoint(a, b) => write!(f, "disjoint({a},{b})"),
            GroupExpr::Explicit { degree, generators } => {
                write!(f, "perm({degree}")?;
                for (i, g) in generators.iter().enumerate() {
                    let text = if g.is_identity() {
                        "id".to_string()
                    } else {
                        g.to_string()
                    };
                    write!(f, "{}{text}", if i == 0 { "; " } else { ", " })?;
                }
                f.write_str(")")
            }
        }
    }
}

/// Parses a group expression.
pub fn parse_group_spec(text: &str) -> Result<GroupExpr, ParseError> {
    let mut parser = Parser {
        tokens: tokenize(text)?,
        pos: 0,
    };
    let expr = parser.expr()?;
    if *parser.peek() != Token::End {
        return Err(ParseError::syntax(
            parser.offset(),
            &["end of input"],
            parser.peek(),
        ));
    }
    Ok(expr)
}

/// Parses and builds a group in one step.
pub fn build_group_spec(text: &str, limits: &Limits) -> Result<PermGroup> {
    parse_group_spec(text)?.eval(limits)
}

/// Parses 1-based disjoint-cycle notation such as `(1 2 3)(4 5)`; `id` and
/// `()` denote the identity.
pub fn parse_cycle_notation(text: &str, degree: usize) -> Result<Permutation, ParseError> {
    if degree == 0 || degree > MAX_DEGREE {
        return Err(ParseError::other(
            ParseErrorKind::Cap,
            0,
            format!("degree {degree} out of range"),
        ));
    }
    let mut parser = Parser {
        tokens: tokenize(text)?,
        pos: 0,
    };
    let g = parser.generator(degree)?;
    if *parser.peek() != Token::End {
        return Err(ParseError::syntax(
            parser.offset(),
            &["'('", "end of input"],
            parser.peek(),
        ));
    }
    Ok(g)
}

/// Canonical cycle notation; the inverse of [`parse_cycle_notation`].
pub fn format_cycles(g: &Permutation) -> String {
    g.to_string()
}
