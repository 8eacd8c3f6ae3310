use std::fmt;

use super::StreamKind;
use crate::coordalg::{Group, GroupKind};
use crate::error::{Error, Result};

/// Syntax tree of a module expression.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ModuleExpr {
    Triv,
    Natural,
    DetPow(i64),
    Regular(u32),
    Tensor(Box<ModuleExpr>, Box<ModuleExpr>),
    Sum(Box<ModuleExpr>, Box<ModuleExpr>),
    Dual(Box<ModuleExpr>),
    Twist(u32, Box<ModuleExpr>),
    Sym(u32, Box<ModuleExpr>),
    Stream(StreamKind),
}

impl ModuleExpr {
    pub fn is_stream(&self) -> bool {
        matches!(self, ModuleExpr::Stream(_))
    }
}

impl fmt::Display for ModuleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleExpr::Triv => f.write_str("triv"),
            ModuleExpr::Natural => f.write_str("natural"),
            ModuleExpr::DetPow(s) => write!(f, "detpow({s})"),
            ModuleExpr::Regular(n) => write!(f, "regular({n})"),
            ModuleExpr::Tensor(a, b) => write!(f, "tensor({a},{b})"),
            ModuleExpr::Sum(a, b) => write!(f, "sum({a},{b})"),
            ModuleExpr::Dual(a) => write!(f, "dual({a})"),
            ModuleExpr::Twist(r, a) => write!(f, "twist({r},{a})"),
            ModuleExpr::Sym(n, a) => write!(f, "sym({n},{a})"),
            ModuleExpr::Stream(k) => write!(f, "{k}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    Open,
    Close,
    Comma,
    End,
}

struct Parser<'a> {
    toks: Vec<(usize, Tok, &'a str)>,
    pos: usize,
    group: &'a Group,
}

fn err(offset: usize, token: &str, message: impl Into<String>) -> Error {
    Error::Parse {
        offset,
        token: token.to_string(),
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok, &str)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            b'(' => {
                i += 1;
                Tok::Open
            }
            b')' => {
                i += 1;
                Tok::Close
            }
            b',' => {
                i += 1;
                Tok::Comma
            }
            b'-' | b'0'..=b'9' => {
                i += 1;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let s = &text[start..i];
                Tok::Int(s.parse().map_err(|_| err(start, s, "expected an integer"))?)
            }
            b'a'..=b'z' | b'A'..=b'Z' => {
                while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                Tok::Ident(text[start..i].to_string())
            }
            _ => {
                let end = text[start..]
                    .chars()
                    .next()
                    .map_or(start + 1, |ch| start + ch.len_utf8());
                return Err(err(start, &text[start..end], "unexpected character"));
            }
        };
        out.push((start, tok, &text[start..i]));
    }
    out.push((text.len(), Tok::End, ""));
    Ok(out)
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &(usize, Tok, &'a str) {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> (usize, Tok, &'a str) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        let (off, tok, s) = self.next();
        if tok == want {
            Ok(())
        } else {
            Err(err(
                off,
                if s.is_empty() { "<end>" } else { s },
                format!("expected {what}"),
            ))
        }
    }

    fn int(&mut self, what: &str) -> Result<(usize, i64)> {
        match self.next() {
            (off, Tok::Int(v), _) => Ok((off, v)),
            (off, _, s) => Err(err(
                off,
                if s.is_empty() { "<end>" } else { s },
                format!("expected {what}"),
            )),
        }
    }

    fn count(&mut self, what: &str) -> Result<u32> {
        let (off, v) = self.int(what)?;
        u32::try_from(v).map_err(|_| err(off, &v.to_string(), format!("{what} must be a non-negative integer")))
    }

    fn unsupported(&self, off: usize, name: &str, why: &str) -> Error {
        err(off, name, format!("{name} is not available over {}: {why}", self.group))
    }

    fn expr(&mut self, top: bool) -> Result<ModuleExpr> {
        let (off, tok, s) = self.next();
        let Tok::Ident(name) = tok else {
            return Err(err(
                off,
                if s.is_empty() { "<end>" } else { s },
                "expected a module constructor",
            ));
        };
        let kind = self.group.kind();
        let has_args = matches!(self.peek().1, Tok::Open);
        let e = match (name.as_str(), has_args) {
            ("triv", false) => ModuleExpr::Triv,
            ("natural", false) => ModuleExpr::Natural,
            ("primitives", false) | ("translationinvariants", false) => {
                if kind != GroupKind::Ga {
                    return Err(self.unsupported(off, &name, "defined only for Ga"));
                }
                ModuleExpr::Stream(if name == "primitives" {
                    StreamKind::Primitives
                } else {
                    StreamKind::TranslationInvariants
                })
            }
            ("regular", false) => ModuleExpr::Stream(StreamKind::Regular),
            ("detpow", true) => {
                if !kind.has_inverse_det() {
                    return Err(self.unsupported(off, &name, "needs an inverted determinant (GL or Gm)"));
                }
                self.expect(Tok::Open, "`(`")?;
                let (_, s) = self.int("an exponent")?;
                self.expect(Tok::Close, "`)`")?;
                ModuleExpr::DetPow(s)
            }
            ("regular", true) => {
                self.expect(Tok::Open, "`(`")?;
                let n = self.count("a degree")?;
                self.expect(Tok::Close, "`)`")?;
                ModuleExpr::Regular(n)
            }
            ("polyaffine", true) => {
                if kind != GroupKind::Ga {
                    return Err(self.unsupported(off, &name, "defined only for Ga"));
                }
                self.expect(Tok::Open, "`(`")?;
                let at = self.peek().0;
                let m = self.count("a number of variables")?;
                if m == 0 {
                    return Err(err(at, "0", "polyaffine needs at least one variable"));
                }
                self.expect(Tok::Close, "`)`")?;
                ModuleExpr::Stream(StreamKind::PolyAffine(m as usize))
            }
            ("twiststream", true) => {
                self.expect(Tok::Open, "`(`")?;
                let e = self.count("an exponent")?;
                self.expect(Tok::Close, "`)`")?;
                ModuleExpr::Stream(StreamKind::TwistStream(e))
            }
            ("tensor", true) | ("sum", true) => {
                self.expect(Tok::Open, "`(`")?;
                let a = self.expr(false)?;
                self.expect(Tok::Comma, "`,`")?;
                let b = self.expr(false)?;
                self.expect(Tok::Close, "`)`")?;
                if name == "tensor" {
                    ModuleExpr::Tensor(Box::new(a), Box::new(b))
                } else {
                    ModuleExpr::Sum(Box::new(a), Box::new(b))
                }
            }
            ("dual", true) => {
                if !kind.has_antipode() {
                    return Err(self.unsupported(off, &name, "a monoid has no antipode"));
                }
                self.expect(Tok::Open, "`(`")?;
                let a = self.expr(false)?;
                self.expect(Tok::Close, "`)`")?;
                ModuleExpr::Dual(Box::new(a))
            }
            ("twist", true) | ("sym", true) => {
                self.expect(Tok::Open, "`(`")?;
                let n = self.count(if name == "twist" {
                    "a twist exponent"
                } else {
                    "a degree"
                })?;
                self.expect(Tok::Comma, "`,`")?;
                let a = self.expr(false)?;
                self.expect(Tok::Close, "`)`")?;
                if name == "twist" {
                    ModuleExpr::Twist(n, Box::new(a))
                } else {
                    ModuleExpr::Sym(n, Box::new(a))
                }
            }
            ("triv" | "natural" | "primitives" | "translationinvariants", true) => {
                let (o, _, s) = self.peek().clone();
                return Err(err(o, s, format!("{name} takes no arguments")));
            }
            ("detpow" | "polyaffine" | "twiststream" | "tensor" | "sum" | "dual" | "twist" | "sym", false) => {
                let (o, _, s) = self.peek().clone();
                return Err(err(
                    o,
                    if s.is_empty() { "<end>" } else { s },
                    format!("{name} expects `(`"),
                ));
            }
            _ => return Err(err(off, &name, "unknown module constructor")),
        };
        if e.is_stream() && !top {
            return Err(err(off, &name, "streams cannot be nested inside other constructors"));
        }
        Ok(e)
    }
}

/// Parses a module expression for `group`, checking constructor/group
/// compatibility. Whitespace is ignored; errors carry byte offsets.
pub fn parse_module(text: &str, group: &Group) -> Result<ModuleExpr> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        group,
    };
    let e = p.expr(true)?;
    let (off, tok, s) = p.next();
    if tok != Tok::End {
        return Err(err(off, s, "trailing input"));
    }
    Ok(e)
}
