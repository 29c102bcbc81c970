//! Concrete syntax.
//!
//! ```text
//! formula  := iff
//! iff      := impl ("<->" impl)*                 left associative
//! impl     := or ("->" impl)?                    right associative
//! or       := and ("|" and)*
//! and      := unary ("&" unary)*
//! unary    := "~" unary | "[]" unary | "<>" unary
//!           | TENSE unary | TENSE ident "." formula      sugar: E- x. A == E- ex x. A
//!           | ("all" | "ex") ident "." formula
//!           | ("allp" | "exp") ident "." formula
//!           | primary
//! primary  := "(" formula ")" | "Pos" "(" pterm ")" | "Ess" "(" pterm "," term ")"
//!           | ident "(" term ("," term)* ")" | "(" "~" pterm ")" "(" term ")" | ident
//! pterm    := "~" pterm | ident
//! TENSE    := "A-" | "A+" | "E-" | "E+"
//! ```
//!
//! A quantifier body extends as far right as possible. `ident(t)` with a single
//! argument is a property application; with two or more it is a predicate.
//! `A` or `E` directly followed by `->` lexes as an identifier and an arrow.
//! `#` starts a comment running to the end of the line.

use super::{Formula, IndTerm, Mode, PropTerm, Tense, VarKind, NAMED_PROPERTIES};
use crate::signature::Signature;
use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    /// Unexpected token; `expected` lists what would have been accepted.
    Syntax { found: String, expected: Vec<String> },
    /// A free name not declared in the signature.
    Unbound(String),
    /// A name used at a kind that disagrees with its binder or other uses.
    KindMismatch { name: String, expected: VarKind },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: ", self.line, self.column)?;
        match &self.kind {
            ParseErrorKind::Syntax { found, expected } => {
                write!(f, "syntax error: found {found}, expected one of {{{}}}", expected.join(", "))
            }
            ParseErrorKind::Unbound(n) => write!(f, "unbound variable `{n}`"),
            ParseErrorKind::KindMismatch { name, expected } => {
                let k = match expected {
                    VarKind::Individual => "an individual",
                    VarKind::Property => "a property",
                };
                write!(f, "`{name}` is used where {k} is required")
            }
        }
    }
}

impl core::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Not,
    And,
    Or,
    Implies,
    Iff,
    Box,
    Dia,
    Tense(Tense, Mode),
    LParen,
    RParen,
    Comma,
    Dot,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Eof => "end of input".to_string(),
            other => format!("`{}`", tok_text(other)),
        }
    }
}

fn tok_text(t: &Tok) -> &'static str {
    match t {
        Tok::Not => "~",
        Tok::And => "&",
        Tok::Or => "|",
        Tok::Implies => "->",
        Tok::Iff => "<->",
        Tok::Box => "[]",
        Tok::Dia => "<>",
        Tok::Tense(Tense::Past, Mode::Universal) => "A-",
        Tok::Tense(Tense::Future, Mode::Universal) => "A+",
        Tok::Tense(Tense::Past, Mode::Existential) => "E-",
        Tok::Tense(Tense::Future, Mode::Existential) => "E+",
        Tok::LParen => "(",
        Tok::RParen => ")",
        Tok::Comma => ",",
        Tok::Dot => ".",
        Tok::Ident(_) => "identifier",
        Tok::Eof => "end of input",
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    let peek = |i: usize| chars.get(i).copied();
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let mut push = |tok: Tok, width: usize, i: &mut usize, col: &mut usize| {
            out.push(Spanned { tok, line: l0, column: c0 });
            *i += width;
            *col += width;
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                i += 1;
                col += 1;
            }
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '~' => push(Tok::Not, 1, &mut i, &mut col),
            '&' => push(Tok::And, 1, &mut i, &mut col),
            '|' => push(Tok::Or, 1, &mut i, &mut col),
            '(' => push(Tok::LParen, 1, &mut i, &mut col),
            ')' => push(Tok::RParen, 1, &mut i, &mut col),
            ',' => push(Tok::Comma, 1, &mut i, &mut col),
            '.' => push(Tok::Dot, 1, &mut i, &mut col),
            '-' if peek(i + 1) == Some('>') => push(Tok::Implies, 2, &mut i, &mut col),
            '[' if peek(i + 1) == Some(']') => push(Tok::Box, 2, &mut i, &mut col),
            '<' if peek(i + 1) == Some('-') && peek(i + 2) == Some('>') => push(Tok::Iff, 3, &mut i, &mut col),
            '<' if peek(i + 1) == Some('>') => push(Tok::Dia, 2, &mut i, &mut col),
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                col += i - start;
                let tense = match (word.as_str(), peek(i), peek(i + 1)) {
                    ("A", Some('+'), _) => Some((Tense::Future, Mode::Universal)),
                    ("E", Some('+'), _) => Some((Tense::Future, Mode::Existential)),
                    ("A", Some('-'), next) if next != Some('>') => Some((Tense::Past, Mode::Universal)),
                    ("E", Some('-'), next) if next != Some('>') => Some((Tense::Past, Mode::Existential)),
                    _ => None,
                };
                match tense {
                    Some((t, m)) => {
                        i += 1;
                        col += 1;
                        out.push(Spanned { tok: Tok::Tense(t, m), line: l0, column: c0 });
                    }
                    None => out.push(Spanned { tok: Tok::Ident(word), line: l0, column: c0 }),
                }
            }
            other => {
                return Err(ParseError {
                    line,
                    column: col,
                    kind: ParseErrorKind::Syntax {
                        found: format!("`{other}`"),
                        expected: alloc::vec!["formula".to_string()],
                    },
                })
            }
        }
    }
    out.push(Spanned { tok: Tok::Eof, line, column: col });
    Ok(out)
}

const KEYWORDS: [&str; 6] = ["all", "ex", "allp", "exp", "Pos", "Ess"];

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    scope: Vec<(String, VarKind)>,
    /// Kinds of free names seen so far, so one name is not used at two kinds.
    free_kinds: BTreeMap<String, VarKind>,
    sig: Option<&'a Signature>,
}

/// Parses a formula. Free names become free variables; `G` and `NE` are the
/// registered named properties.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    run(text, None)
}

/// Parses against a signature: free individual names must be declared
/// constants, atoms and predicates must be declared, and the signature's named
/// properties join `G` and `NE`. Free property names are still variables.
pub fn parse_with(text: &str, sig: &Signature) -> Result<Formula, ParseError> {
    run(text, Some(sig))
}

fn run(text: &str, sig: Option<&Signature>) -> Result<Formula, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, scope: Vec::new(), free_kinds: BTreeMap::new(), sig };
    let f = p.formula()?;
    p.expect(Tok::Eof, &["end of input", "&", "|", "->", "<->"])?;
    Ok(f)
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err_here(&self, kind: ParseErrorKind) -> ParseError {
        let s = &self.toks[self.pos];
        ParseError { line: s.line, column: s.column, kind }
    }

    fn unexpected(&self, expected: &[&str]) -> ParseError {
        self.err_here(ParseErrorKind::Syntax {
            found: self.peek().describe(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        })
    }

    fn expect(&mut self, t: Tok, expected: &[&str]) -> Result<(), ParseError> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(expected))
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.implication()?;
        while *self.peek() == Tok::Iff {
            self.bump();
            let rhs = self.implication()?;
            lhs = Formula::iff(lhs, rhs);
        }
        Ok(lhs)
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if *self.peek() == Tok::Implies {
            self.bump();
            let rhs = self.implication()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.conjunction()?;
        while *self.peek() == Tok::Or {
            self.bump();
            let rhs = self.conjunction()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn binder_name(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(n) if !KEYWORDS.contains(&n.as_str()) => {
                self.bump();
                Ok(n)
            }
            _ => Err(self.unexpected(&["variable name"])),
        }
    }

    fn quantified(&mut self, kind: VarKind, mode: Mode) -> Result<Formula, ParseError> {
        let var = self.binder_name()?;
        if kind == VarKind::Property && NAMED_PROPERTIES.contains(&var.as_str()) {
            return Err(self.err_here(ParseErrorKind::KindMismatch { name: var, expected: kind }));
        }
        self.expect(Tok::Dot, &["."])?;
        self.scope.push((var.clone(), kind));
        let body = self.formula();
        self.scope.pop();
        let body = Box::new(body?);
        Ok(match kind {
            VarKind::Individual => Formula::IQuant(mode, var, body),
            VarKind::Property => Formula::PQuant(mode, var, body),
        })
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Not => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Box => {
                self.bump();
                Ok(Formula::necessary(self.unary()?))
            }
            Tok::Dia => {
                self.bump();
                Ok(Formula::possible(self.unary()?))
            }
            Tok::Tense(t, m) => {
                self.bump();
                let sugar = matches!(self.peek(), Tok::Ident(n) if !KEYWORDS.contains(&n.as_str()))
                    && *self.peek_at(1) == Tok::Dot;
                let body = if sugar { self.quantified(VarKind::Individual, m)? } else { self.unary()? };
                Ok(Formula::temporal(t, m, body))
            }
            Tok::Ident(kw) if kw == "all" || kw == "ex" => {
                self.bump();
                let m = if kw == "all" { Mode::Universal } else { Mode::Existential };
                self.quantified(VarKind::Individual, m)
            }
            Tok::Ident(kw) if kw == "allp" || kw == "exp" => {
                self.bump();
                let m = if kw == "allp" { Mode::Universal } else { Mode::Existential };
                self.quantified(VarKind::Property, m)
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::LParen if self.negated_application_ahead() => {
                // `(~F)(x)`
                self.bump();
                let t = self.prop_term()?;
                self.expect(Tok::RParen, &[")"])?;
                self.expect(Tok::LParen, &["("])?;
                let x = self.ind_term()?;
                self.expect(Tok::RParen, &[")"])?;
                Ok(Formula::Apply(t, x))
            }
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen, &[")", "&", "|", "->", "<->"])?;
                Ok(f)
            }
            Tok::Ident(kw) if kw == "Pos" && *self.peek_at(1) == Tok::LParen => {
                self.bump();
                self.bump();
                let t = self.prop_term()?;
                self.expect(Tok::RParen, &[")"])?;
                Ok(Formula::Positive(t))
            }
            Tok::Ident(kw) if kw == "Ess" && *self.peek_at(1) == Tok::LParen => {
                self.bump();
                self.bump();
                let t = self.prop_term()?;
                self.expect(Tok::Comma, &[","])?;
                let x = self.ind_term()?;
                self.expect(Tok::RParen, &[")"])?;
                Ok(Formula::Essence(t, x))
            }
            Tok::Ident(name) if !KEYWORDS.contains(&name.as_str()) => {
                if *self.peek_at(1) == Tok::LParen {
                    let name_pos = self.pos;
                    self.bump();
                    self.bump();
                    let mut args = alloc::vec![self.ind_term()?];
                    while *self.peek() == Tok::Comma {
                        self.bump();
                        args.push(self.ind_term()?);
                    }
                    self.expect(Tok::RParen, &[")", ","])?;
                    if args.len() == 1 {
                        let t = self.resolve_prop(&name, name_pos)?;
                        Ok(Formula::Apply(t, args.pop().unwrap()))
                    } else {
                        self.check_predicate(&name, args.len(), name_pos)?;
                        Ok(Formula::Atom(name, args))
                    }
                } else {
                    if let Some(kind) = self.bound_kind(&name) {
                        return Err(self.err_here(ParseErrorKind::KindMismatch {
                            name,
                            expected: if kind == VarKind::Individual { VarKind::Property } else { VarKind::Individual },
                        }));
                    }
                    if let Some(sig) = self.sig {
                        if !sig.atoms.contains(&name) {
                            return Err(self.err_here(ParseErrorKind::Unbound(name)));
                        }
                    }
                    self.bump();
                    Ok(Formula::Atom(name, Vec::new()))
                }
            }
            _ => {
                Err(self
                    .unexpected(&["formula", "(", "~", "[]", "<>", "A-", "A+", "E-", "E+", "all", "ex", "allp", "exp"]))
            }
        }
    }

    fn negated_application_ahead(&self) -> bool {
        let mut k = 1;
        if *self.peek_at(k) != Tok::Not {
            return false;
        }
        while *self.peek_at(k) == Tok::Not {
            k += 1;
        }
        matches!(self.peek_at(k), Tok::Ident(n) if !KEYWORDS.contains(&n.as_str()))
            && *self.peek_at(k + 1) == Tok::RParen
            && *self.peek_at(k + 2) == Tok::LParen
    }

    fn bound_kind(&self, name: &str) -> Option<VarKind> {
        self.scope.iter().rev().find(|(n, _)| n == name).map(|(_, k)| *k)
    }

    fn note_free(&mut self, name: &str, kind: VarKind, at: usize) -> Result<(), ParseError> {
        match self.free_kinds.get(name) {
            Some(k) if *k != kind => {
                let s = &self.toks[at];
                Err(ParseError {
                    line: s.line,
                    column: s.column,
                    kind: ParseErrorKind::KindMismatch { name: name.to_string(), expected: *k },
                })
            }
            _ => {
                self.free_kinds.insert(name.to_string(), kind);
                Ok(())
            }
        }
    }

    fn is_named(&self, name: &str) -> bool {
        NAMED_PROPERTIES.contains(&name) || self.sig.is_some_and(|s| s.named_properties.contains(name))
    }

    fn resolve_prop(&mut self, name: &str, at: usize) -> Result<PropTerm, ParseError> {
        match self.bound_kind(name) {
            Some(VarKind::Property) => Ok(PropTerm::var(name)),
            Some(VarKind::Individual) => {
                let s = &self.toks[at];
                Err(ParseError {
                    line: s.line,
                    column: s.column,
                    kind: ParseErrorKind::KindMismatch { name: name.to_string(), expected: VarKind::Property },
                })
            }
            None if self.is_named(name) => Ok(PropTerm::named(name)),
            None => {
                self.note_free(name, VarKind::Property, at)?;
                Ok(PropTerm::var(name))
            }
        }
    }

    fn check_predicate(&self, name: &str, arity: usize, at: usize) -> Result<(), ParseError> {
        if let Some(sig) = self.sig {
            if !sig.predicates.contains(&(name.to_string(), arity)) {
                let s = &self.toks[at];
                return Err(ParseError {
                    line: s.line,
                    column: s.column,
                    kind: ParseErrorKind::Unbound(format!("{name}/{arity}")),
                });
            }
        }
        Ok(())
    }

    fn prop_term(&mut self) -> Result<PropTerm, ParseError> {
        if *self.peek() == Tok::Not {
            self.bump();
            return Ok(self.prop_term()?.negate());
        }
        let at = self.pos;
        match self.peek().clone() {
            Tok::Ident(n) if !KEYWORDS.contains(&n.as_str()) => {
                self.bump();
                self.resolve_prop(&n, at)
            }
            _ => Err(self.unexpected(&["property", "~"])),
        }
    }

    fn ind_term(&mut self) -> Result<IndTerm, ParseError> {
        let at = self.pos;
        match self.peek().clone() {
            Tok::Ident(n) if !KEYWORDS.contains(&n.as_str()) => {
                self.bump();
                match self.bound_kind(&n) {
                    Some(VarKind::Individual) => Ok(IndTerm::Var(n)),
                    Some(VarKind::Property) => {
                        let s = &self.toks[at];
                        Err(ParseError {
                            line: s.line,
                            column: s.column,
                            kind: ParseErrorKind::KindMismatch { name: n, expected: VarKind::Individual },
                        })
                    }
                    None => match self.sig {
                        Some(sig) if sig.constants.contains(&n) => Ok(IndTerm::Const(n)),
                        Some(_) => {
                            let s = &self.toks[at];
                            Err(ParseError { line: s.line, column: s.column, kind: ParseErrorKind::Unbound(n) })
                        }
                        None => {
                            self.note_free(&n, VarKind::Individual, at)?;
                            Ok(IndTerm::Var(n))
                        }
                    },
                }
            }
            _ => Err(self.unexpected(&["individual"])),
        }
    }
}
