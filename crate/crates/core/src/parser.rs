//! Polynomial expressions, session scripts, and canonical rendering.
//!
//! Polynomial grammar (explicit `*` between factors, `^` binds tightest):
//!
//! ```text
//! expr   := ['+' | '-'] term { ('+' | '-') term }
//! term   := factor { ('*' | '/') factor }
//! factor := atom [ '^' integer ]
//! atom   := integer | variable | '(' expr ')'
//! ```
//!
//! Division is only by nonzero constants. A session is a sequence of
//! `;`-terminated statements; `--` starts a comment that runs to end of line.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::freemod::PolyMatrix;
use crate::polyring::{Monomial, MonomialOrder, Polynomial, Rational, Ring};

/// 1-based line and column of a character in the source.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Position {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{pos}: {message}")]
pub struct ParseError {
    pub pos: Position,
    pub message: String,
}

fn err<T>(pos: Position, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        pos,
        message: message.into(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TokenKind {
    Ident(String),
    Int(BigInt),
    Op(char),
    Punct(char),
    Arrow,
    Eof,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub lexeme: String,
    pub pos: Position,
    /// Byte offsets of the lexeme in the source.
    pub start: usize,
    pub end: usize,
}

pub fn tokenize(src: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let (mut line, mut col) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let (off, c) = chars[i];
        let pos = Position { line, col };
        let advance = |n: usize, col: &mut usize| *col += n;
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            advance(1, &mut col);
            i += 1;
            continue;
        }
        if c == '-' && matches!(chars.get(i + 1), Some((_, '-'))) {
            while i < chars.len() && chars[i].1 != '\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        let kind = if c.is_ascii_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].1.is_ascii_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            TokenKind::Ident(String::new())
        } else if c.is_ascii_digit() {
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            TokenKind::Int(BigInt::zero())
        } else if c == '-' && matches!(chars.get(i + 1), Some((_, '>'))) {
            i += 2;
            TokenKind::Arrow
        } else if "+-*^/".contains(c) {
            i += 1;
            TokenKind::Op(c)
        } else if "(){},;=:".contains(c) {
            i += 1;
            TokenKind::Punct(c)
        } else {
            return err(pos, format!("unexpected character `{c}`"));
        };
        let end = chars.get(i).map(|(o, _)| *o).unwrap_or(src.len());
        let lexeme = src[off..end].to_string();
        let kind = match kind {
            TokenKind::Ident(_) => TokenKind::Ident(lexeme.clone()),
            TokenKind::Int(_) => TokenKind::Int(lexeme.parse().expect("digits")),
            k => k,
        };
        col += i - start;
        out.push(Token {
            kind,
            lexeme,
            pos,
            start: off,
            end,
        });
    }
    out.push(Token {
        kind: TokenKind::Eof,
        lexeme: String::new(),
        pos: Position { line, col },
        start: src.len(),
        end: src.len(),
    });
    Ok(out)
}

struct Cursor<'a> {
    toks: &'a [Token],
    i: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> &'a Token {
        &self.toks[self.i]
    }

    fn peek_at(&self, k: usize) -> &'a Token {
        &self.toks[(self.i + k).min(self.toks.len() - 1)]
    }

    fn next(&mut self) -> &'a Token {
        let t = &self.toks[self.i];
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn is_op(&self, c: char) -> bool {
        self.peek().kind == TokenKind::Op(c)
    }

    fn is_punct(&self, c: char) -> bool {
        self.peek().kind == TokenKind::Punct(c)
    }

    fn expect_punct(&mut self, c: char) -> Result<&'a Token, ParseError> {
        let t = self.peek();
        if t.kind == TokenKind::Punct(c) {
            Ok(self.next())
        } else {
            err(t.pos, format!("expected `{c}`, found {}", describe(t)))
        }
    }

    fn expect_ident(&mut self) -> Result<&'a Token, ParseError> {
        let t = self.peek();
        match t.kind {
            TokenKind::Ident(_) => Ok(self.next()),
            _ => err(t.pos, format!("expected a name, found {}", describe(t))),
        }
    }
}

fn describe(t: &Token) -> String {
    match t.kind {
        TokenKind::Eof => "end of input".into(),
        _ => format!("`{}`", t.lexeme),
    }
}

struct PolyParser<'r> {
    ring: &'r Arc<Ring>,
}

impl PolyParser<'_> {
    fn expr(&self, cur: &mut Cursor) -> Result<Polynomial, ParseError> {
        let mut negate = false;
        if cur.is_op('-') {
            cur.next();
            negate = true;
        } else if cur.is_op('+') {
            cur.next();
        }
        let mut acc = self.term(cur)?;
        if negate {
            acc = -&acc;
        }
        loop {
            if cur.is_op('+') {
                cur.next();
                acc = &acc + &self.term(cur)?;
            } else if cur.is_op('-') {
                cur.next();
                acc = &acc - &self.term(cur)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&self, cur: &mut Cursor) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor(cur)?;
        loop {
            if cur.is_op('*') {
                cur.next();
                acc = &acc * &self.factor(cur)?;
            } else if cur.is_op('/') {
                let slash = cur.next();
                let d = self.factor(cur)?;
                if !d.is_constant() || d.is_zero() {
                    return err(slash.pos, "division is only allowed by a nonzero constant");
                }
                acc = acc.scale(&d.constant_term().recip());
            } else if let TokenKind::Ident(_) | TokenKind::Int(_) = cur.peek().kind {
                let t = cur.peek();
                return err(t.pos, format!("missing `*` before {}", describe(t)));
            } else if cur.is_punct('(') {
                let t = cur.peek();
                return err(t.pos, "missing `*` before `(`");
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&self, cur: &mut Cursor) -> Result<Polynomial, ParseError> {
        let base = self.atom(cur)?;
        if cur.is_op('^') {
            cur.next();
            let t = cur.next();
            match &t.kind {
                TokenKind::Int(e) => {
                    let e: u32 = e
                        .try_into()
                        .map_err(|_| ParseError {
                            pos: t.pos,
                            message: "exponent too large".into(),
                        })?;
                    Ok(base.pow(e))
                }
                TokenKind::Op('-') => err(t.pos, "negative exponents are not allowed"),
                _ => err(t.pos, format!("expected an exponent, found {}", describe(t))),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&self, cur: &mut Cursor) -> Result<Polynomial, ParseError> {
        let t = cur.next();
        match &t.kind {
            TokenKind::Int(n) => Ok(Polynomial::constant(
                self.ring,
                Rational::from_integer(n.clone()),
            )),
            TokenKind::Ident(name) => match self.ring.var_index(name) {
                Some(i) => Ok(Polynomial::var(self.ring, i).expect("index from ring")),
                None => err(t.pos, format!("unknown variable `{name}`")),
            },
            TokenKind::Punct('(') => {
                let inner = self.expr(cur)?;
                cur.expect_punct(')')?;
                Ok(inner)
            }
            _ => err(t.pos, format!("expected a polynomial, found {}", describe(t))),
        }
    }
}

pub fn parse_polynomial(src: &str, ring: &Arc<Ring>) -> Result<Polynomial, ParseError> {
    let toks = tokenize(src)?;
    let mut cur = Cursor { toks: &toks, i: 0 };
    let p = PolyParser { ring }.expr(&mut cur)?;
    let t = cur.peek();
    if t.kind != TokenKind::Eof {
        return err(t.pos, format!("unexpected {}", describe(t)));
    }
    Ok(p)
}

fn format_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn format_monomial(m: &Monomial, ring: &Ring) -> String {
    let parts: Vec<String> = m
        .exponents()
        .iter()
        .zip(ring.vars())
        .filter(|(&e, _)| e > 0)
        .map(|(&e, v)| if e == 1 { v.clone() } else { format!("{v}^{e}") })
        .collect();
    parts.join("*")
}

/// Canonical text: terms in decreasing ambient order, `" + "`/`" - "` between
/// terms, `*` between factors, rational coefficients as `p/q`.
pub fn format_polynomial(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().iter().enumerate() {
        let neg = c.is_negative();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let abs = c.abs();
        let mono = format_monomial(m, p.ring());
        if mono.is_empty() {
            out.push_str(&format_rational(&abs));
        } else if abs.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format_rational(&abs));
            out.push('*');
            out.push_str(&mono);
        }
    }
    out
}

/// One parsed session statement.
#[derive(Clone, Debug, PartialEq)]
pub enum Command {
    /// The declared ring, with the order chosen at parse time.
    Ring {
        ring: Arc<Ring>,
    },
    Ideal {
        name: String,
        generators: Vec<Polynomial>,
    },
    Matrix {
        name: String,
        matrix: PolyMatrix,
    },
    /// Complex assembled from named differentials `phi_1, ..., phi_N`.
    Complex {
        name: String,
        maps: Vec<String>,
    },
    /// Chain map given explicitly by named matrices `a_0, ..., a_m`.
    Chain {
        name: String,
        source: String,
        target: String,
        maps: Vec<String>,
    },
    Res {
        name: Option<String>,
        ideal: String,
    },
    Koszul {
        name: Option<String>,
        ideal: String,
    },
    Lift {
        name: Option<String>,
        source: String,
        target: String,
        base: Option<String>,
    },
    Homotopy {
        name: Option<String>,
        first: String,
        second: String,
    },
    CheckExact {
        name: Option<String>,
        complex: String,
    },
    CheckCm {
        name: Option<String>,
        ideal: String,
    },
    Fitting {
        name: Option<String>,
        complex: String,
        k: usize,
    },
    Dim {
        name: Option<String>,
        ideal: String,
    },
    ResidueReport {
        name: Option<String>,
        tuple: String,
        target: String,
    },
    JacobianTest {
        name: Option<String>,
        tuple: TupleArg,
    },
    Print {
        name: String,
    },
}

/// Inline polynomials, or the generators of a bound ideal.
#[derive(Clone, Debug, PartialEq)]
pub enum TupleArg {
    Inline(Vec<Polynomial>),
    Ideal(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct SessionCommand {
    pub command: Command,
    pub pos: Position,
    /// Statement source text, whitespace-normalized, without the `;`.
    pub text: String,
}

impl SessionCommand {
    pub fn verb(&self) -> &'static str {
        match self.command {
            Command::Ring { .. } => "ring",
            Command::Ideal { .. } => "ideal",
            Command::Matrix { .. } => "matrix",
            Command::Complex { .. } => "complex",
            Command::Chain { .. } => "chain",
            Command::Res { .. } => "res",
            Command::Koszul { .. } => "koszul",
            Command::Lift { .. } => "lift",
            Command::Homotopy { .. } => "homotopy",
            Command::CheckExact { .. } => "check-exact",
            Command::CheckCm { .. } => "check-cm",
            Command::Fitting { .. } => "fitting",
            Command::Dim { .. } => "dim",
            Command::ResidueReport { .. } => "residue-report",
            Command::JacobianTest { .. } => "jacobian-test",
            Command::Print { .. } => "print",
        }
    }

    /// The name this command binds, if any.
    pub fn binding(&self) -> Option<&str> {
        match &self.command {
            Command::Ring { .. } | Command::Print { .. } => None,
            Command::Ideal { name, .. }
            | Command::Matrix { name, .. }
            | Command::Complex { name, .. }
            | Command::Chain { name, .. } => Some(name),
            Command::Res { name, .. }
            | Command::Koszul { name, .. }
            | Command::Lift { name, .. }
            | Command::Homotopy { name, .. }
            | Command::CheckExact { name, .. }
            | Command::CheckCm { name, .. }
            | Command::Fitting { name, .. }
            | Command::Dim { name, .. }
            | Command::ResidueReport { name, .. }
            | Command::JacobianTest { name, .. } => name.as_deref(),
        }
    }
}

const VERBS: &[&str] = &[
    "ring",
    "ideal",
    "matrix",
    "complex",
    "chain",
    "res",
    "koszul",
    "lift",
    "homotopy",
    "check-exact",
    "check-cm",
    "fitting",
    "dim",
    "residue-report",
    "jacobian-test",
    "print",
];

struct SessionParser<'s> {
    src: &'s str,
    order: MonomialOrder,
    ring: Option<Arc<Ring>>,
    bound: HashMap<String, Position>,
}

pub fn parse_session(src: &str) -> Result<Vec<SessionCommand>, ParseError> {
    parse_session_with(src, MonomialOrder::default())
}

/// Parses a session; `order` becomes the ambient order of the declared ring.
pub fn parse_session_with(src: &str, order: MonomialOrder) -> Result<Vec<SessionCommand>, ParseError> {
    let toks = tokenize(src)?;
    let mut cur = Cursor { toks: &toks, i: 0 };
    let mut p = SessionParser {
        src,
        order,
        ring: None,
        bound: HashMap::new(),
    };
    let mut out = Vec::new();
    while cur.peek().kind != TokenKind::Eof {
        out.push(p.statement(&mut cur)?);
    }
    Ok(out)
}

impl SessionParser<'_> {
    /// Reads a possibly hyphenated keyword such as `check-exact`; the pieces
    /// must be adjacent in the source.
    fn keyword(&self, cur: &mut Cursor) -> Option<(String, Position)> {
        let t = cur.peek();
        let TokenKind::Ident(first) = &t.kind else {
            return None;
        };
        let mut word = first.clone();
        let mut k = 1;
        let mut end = t.end;
        while cur.peek_at(k).kind == TokenKind::Op('-') && cur.peek_at(k).start == end {
            let next = cur.peek_at(k + 1);
            match &next.kind {
                TokenKind::Ident(s) if next.start == end + 1 => {
                    word.push('-');
                    word.push_str(s);
                    end = next.end;
                    k += 2;
                }
                _ => break,
            }
        }
        if VERBS.contains(&word.as_str()) {
            for _ in 0..k {
                cur.next();
            }
            Some((word, t.pos))
        } else {
            None
        }
    }

    fn ring(&self, pos: Position) -> Result<&Arc<Ring>, ParseError> {
        self.ring
            .as_ref()
            .ok_or(ParseError {
                pos,
                message: "no ring declared; start the session with `ring x, y, ...;`".into(),
            })
    }

    fn reference(&self, cur: &mut Cursor) -> Result<String, ParseError> {
        let t = cur.expect_ident()?;
        if !self.bound.contains_key(&t.lexeme) {
            return err(t.pos, format!("undefined name `{}`", t.lexeme));
        }
        Ok(t.lexeme.clone())
    }

    fn new_name(&mut self, t: &Token) -> Result<String, ParseError> {
        let name = t.lexeme.clone();
        if VERBS.contains(&name.as_str()) || name == "via" || name == "with" {
            return err(t.pos, format!("`{name}` is a keyword"));
        }
        if let Some(r) = &self.ring {
            if r.var_index(&name).is_some() {
                return err(t.pos, format!("`{name}` is a ring variable"));
            }
        }
        if let Some(prev) = self.bound.get(&name) {
            return err(t.pos, format!("`{name}` is already bound at {prev}"));
        }
        self.bound.insert(name.clone(), t.pos);
        Ok(name)
    }

    fn end(&self, cur: &mut Cursor) -> Result<(), ParseError> {
        let t = cur.peek();
        if t.kind == TokenKind::Punct(';') {
            cur.next();
            Ok(())
        } else {
            err(t.pos, format!("expected `;`, found {} (too many arguments?)", describe(t)))
        }
    }

    fn poly_list(&self, cur: &mut Cursor, pos: Position) -> Result<Vec<Polynomial>, ParseError> {
        let ring = self.ring(pos)?.clone();
        let pp = PolyParser { ring: &ring };
        let mut out = vec![pp.expr(cur)?];
        while cur.is_punct(',') {
            cur.next();
            out.push(pp.expr(cur)?);
        }
        Ok(out)
    }

    fn name_list(&self, cur: &mut Cursor) -> Result<Vec<String>, ParseError> {
        let mut out = vec![self.reference(cur)?];
        while cur.is_punct(',') {
            cur.next();
            out.push(self.reference(cur)?);
        }
        Ok(out)
    }

    fn matrix_literal(&self, cur: &mut Cursor, pos: Position) -> Result<PolyMatrix, ParseError> {
        let ring = self.ring(pos)?.clone();
        let open = cur.expect_punct('{')?;
        let mut rows = Vec::new();
        loop {
            let row_tok = cur.expect_punct('{')?;
            let row = self.poly_list(cur, row_tok.pos)?;
            cur.expect_punct('}')?;
            if let Some(first) = rows.first() {
                let first: &Vec<Polynomial> = first;
                if first.len() != row.len() {
                    return err(
                        row_tok.pos,
                        format!("row has {} entries, expected {}", row.len(), first.len()),
                    );
                }
            }
            rows.push(row);
            if cur.is_punct(',') {
                cur.next();
            } else {
                break;
            }
        }
        cur.expect_punct('}')?;
        PolyMatrix::from_rows(&ring, rows).map_err(|e| ParseError {
            pos: open.pos,
            message: e.to_string(),
        })
    }

    fn statement(&mut self, cur: &mut Cursor) -> Result<SessionCommand, ParseError> {
        let first = cur.peek();
        let start = first.start;
        let pos = first.pos;

        // `name = verb ...` binding form
        let mut binding: Option<&Token> = None;
        if matches!(first.kind, TokenKind::Ident(_)) && cur.peek_at(1).kind == TokenKind::Punct('=')
        {
            binding = Some(cur.next());
            cur.next();
        }

        let Some((verb, vpos)) = self.keyword(cur) else {
            let t = cur.peek();
            return err(t.pos, format!("expected a command, found {}", describe(t)));
        };

        let declaring = matches!(verb.as_str(), "ring" | "ideal" | "matrix" | "print");
        if declaring {
            if let Some(b) = binding {
                return err(b.pos, format!("`{verb}` cannot be bound with `=`"));
            }
        } else if matches!(verb.as_str(), "complex" | "chain") && binding.is_none() {
            return err(vpos, format!("`{verb}` needs a name: `NAME = {verb} ...;`"));
        }
        if verb != "ring" && self.ring.is_none() {
            return err(vpos, "no ring declared; start the session with `ring x, y, ...;`");
        }

        let command = match verb.as_str() {
            "ring" => {
                if self.ring.is_some() {
                    return err(vpos, "only one ring per session");
                }
                let mut vars = Vec::new();
                loop {
                    let t = cur.expect_ident()?;
                    if vars.contains(&t.lexeme) {
                        return err(t.pos, format!("duplicate variable `{}`", t.lexeme));
                    }
                    vars.push(t.lexeme.clone());
                    if cur.is_punct(',') {
                        cur.next();
                    } else {
                        break;
                    }
                }
                let ring = Ring::new(vars.clone(), self.order.clone()).map_err(|e| ParseError {
                    pos: vpos,
                    message: e.to_string(),
                })?;
                self.ring = Some(ring.clone());
                Command::Ring { ring }
            }
            "ideal" => {
                let t = cur.expect_ident()?;
                cur.expect_punct('=')?;
                let generators = self.poly_list(cur, t.pos)?;
                let name = self.new_name(t)?;
                Command::Ideal { name, generators }
            }
            "matrix" => {
                let t = cur.expect_ident()?;
                cur.expect_punct('=')?;
                let matrix = self.matrix_literal(cur, t.pos)?;
                let name = self.new_name(t)?;
                Command::Matrix { name, matrix }
            }
            "print" => Command::Print {
                name: self.reference(cur)?,
            },
            _ => {
                let command = self.computed(&verb, cur)?;
                let name = match binding {
                    Some(b) => Some(self.new_name(b)?),
                    None => None,
                };
                with_binding(command, name)
            }
        };
        let end = cur.peek().start;
        self.end(cur)?;
        let text = self.src[start..end].split_whitespace().collect::<Vec<_>>().join(" ");
        Ok(SessionCommand { command, pos, text })
    }

    fn computed(&mut self, verb: &str, cur: &mut Cursor) -> Result<Command, ParseError> {
        Ok(match verb {
            "complex" => Command::Complex {
                name: String::new(),
                maps: self.name_list(cur)?,
            },
            "chain" => {
                let source = self.reference(cur)?;
                arrow(cur)?;
                let target = self.reference(cur)?;
                expect_word(cur, "with")?;
                Command::Chain {
                    name: String::new(),
                    source,
                    target,
                    maps: self.name_list(cur)?,
                }
            }
            "res" => Command::Res {
                name: None,
                ideal: self.reference(cur)?,
            },
            "koszul" => Command::Koszul {
                name: None,
                ideal: self.reference(cur)?,
            },
            "lift" => {
                let source = self.reference(cur)?;
                arrow(cur)?;
                let target = self.reference(cur)?;
                let base = if is_word(cur, "via") {
                    cur.next();
                    Some(self.reference(cur)?)
                } else {
                    None
                };
                Command::Lift {
                    name: None,
                    source,
                    target,
                    base,
                }
            }
            "homotopy" => {
                let first = self.reference(cur)?;
                cur.expect_punct(',')?;
                let second = self.reference(cur)?;
                Command::Homotopy {
                    name: None,
                    first,
                    second,
                }
            }
            "check-exact" => Command::CheckExact {
                name: None,
                complex: self.reference(cur)?,
            },
            "check-cm" => Command::CheckCm {
                name: None,
                ideal: self.reference(cur)?,
            },
            "fitting" => {
                let complex = self.reference(cur)?;
                let t = cur.next();
                let k = match &t.kind {
                    TokenKind::Int(n) => usize::try_from(n).ok(),
                    _ => None,
                };
                let Some(k) = k else {
                    return err(t.pos, format!("expected a degree, found {}", describe(t)));
                };
                Command::Fitting {
                    name: None,
                    complex,
                    k,
                }
            }
            "dim" => Command::Dim {
                name: None,
                ideal: self.reference(cur)?,
            },
            "residue-report" => {
                let tuple = self.reference(cur)?;
                arrow(cur)?;
                let target = self.reference(cur)?;
                Command::ResidueReport {
                    name: None,
                    tuple,
                    target,
                }
            }
            "jacobian-test" => {
                let t = cur.peek();
                let single_name = matches!(&t.kind, TokenKind::Ident(s)
                    if self.bound.contains_key(s)
                        && self.ring.as_ref().and_then(|r| r.var_index(s)).is_none())
                    && cur.peek_at(1).kind == TokenKind::Punct(';');
                let tuple = if single_name {
                    TupleArg::Ideal(cur.next().lexeme.clone())
                } else {
                    TupleArg::Inline(self.poly_list(cur, t.pos)?)
                };
                Command::JacobianTest { name: None, tuple }
            }
            _ => unreachable!("verb list"),
        })
    }
}

fn is_word(cur: &Cursor, w: &str) -> bool {
    matches!(&cur.peek().kind, TokenKind::Ident(s) if s == w)
}

fn expect_word(cur: &mut Cursor, w: &str) -> Result<(), ParseError> {
    if is_word(cur, w) {
        cur.next();
        Ok(())
    } else {
        let t = cur.peek();
        err(t.pos, format!("expected `{w}`, found {}", describe(t)))
    }
}

fn arrow(cur: &mut Cursor) -> Result<(), ParseError> {
    let t = cur.peek();
    if t.kind == TokenKind::Arrow {
        cur.next();
        Ok(())
    } else {
        err(t.pos, format!("expected `->`, found {}", describe(t)))
    }
}

fn with_binding(c: Command, name: Option<String>) -> Command {
    match c {
        Command::Complex { maps, .. } => Command::Complex {
            name: name.expect("checked"),
            maps,
        },
        Command::Chain {
            source,
            target,
            maps,
            ..
        } => Command::Chain {
            name: name.expect("checked"),
            source,
            target,
            maps,
        },
        Command::Res { ideal, .. } => Command::Res { name, ideal },
        Command::Koszul { ideal, .. } => Command::Koszul { name, ideal },
        Command::Lift {
            source,
            target,
            base,
            ..
        } => Command::Lift {
            name,
            source,
            target,
            base,
        },
        Command::Homotopy { first, second, .. } => Command::Homotopy {
            name,
            first,
            second,
        },
        Command::CheckExact { complex, .. } => Command::CheckExact { name, complex },
        Command::CheckCm { ideal, .. } => Command::CheckCm { name, ideal },
        Command::Fitting { complex, k, .. } => Command::Fitting { name, complex, k },
        Command::Dim { ideal, .. } => Command::Dim { name, ideal },
        Command::ResidueReport { tuple, target, .. } => Command::ResidueReport {
            name,
            tuple,
            target,
        },
        Command::JacobianTest { tuple, .. } => Command::JacobianTest { name, tuple },
        other => other,
    }
}
