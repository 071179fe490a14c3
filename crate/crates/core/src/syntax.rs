//! Parser for the cell expression grammar.
//!
//! ```text
//! expr   := vchain
//! vchain := hchain ('.' hchain)*
//! hchain := atom ('*' atom)*
//! atom   := NAME | 'i[' NAME ']' | '(' expr ')'
//! ```
//! Both operators associate to the left and `*` binds tighter than `.`.

use crate::error::{Error, Result};
use crate::freegg::CellExpr;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Name(String),
    FIdOpen,
    Close,
    LParen,
    RParen,
    Dot,
    Star,
    End,
}

struct Lexer<'a> {
    chars: Vec<char>,
    pos: usize,
    src: &'a str,
}

fn is_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '+' | '-')
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { chars: src.chars().collect(), pos: 0, src }
    }

    fn line_col(&self, pos: usize) -> (usize, usize) {
        let mut line = 1;
        let mut col = 1;
        for c in self.src.chars().take(pos) {
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        }
        (line, col)
    }

    fn error(&self, pos: usize, message: impl Into<String>) -> Error {
        let (line, column) = self.line_col(pos);
        Error::Syntax { line, column, message: message.into() }
    }

    fn tokens(mut self) -> Result<(Vec<(Tok, usize)>, Self)> {
        let mut out = Vec::new();
        while self.pos < self.chars.len() {
            let c = self.chars[self.pos];
            let start = self.pos;
            if c.is_whitespace() {
                self.pos += 1;
                continue;
            }
            let tok = match c {
                '.' => Tok::Dot,
                '*' => Tok::Star,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                ']' => Tok::Close,
                c if is_name_char(c) => {
                    let mut end = self.pos;
                    while end < self.chars.len() && is_name_char(self.chars[end]) {
                        end += 1;
                    }
                    let name: String = self.chars[self.pos..end].iter().collect();
                    if name == "i" && self.chars.get(end) == Some(&'[') {
                        self.pos = end + 1;
                        out.push((Tok::FIdOpen, start));
                        continue;
                    }
                    self.pos = end;
                    out.push((Tok::Name(name), start));
                    continue;
                }
                other => return Err(self.error(start, format!("unexpected character `{other}`"))),
            };
            self.pos += 1;
            out.push((tok, start));
        }
        out.push((Tok::End, self.chars.len()));
        Ok((out, self))
    }
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    lexer: Lexer<'a>,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.at].clone();
        if t.0 != Tok::End {
            self.at += 1;
        }
        t
    }

    fn fail(&self, message: &str) -> Error {
        let pos = self.toks[self.at].1;
        let found = match self.peek() {
            Tok::End => "end of input".to_string(),
            Tok::Name(n) => format!("`{n}`"),
            Tok::FIdOpen => "`i[`".into(),
            Tok::Close => "`]`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Star => "`*`".into(),
        };
        self.lexer.error(pos, format!("{message}, found {found}"))
    }

    fn vchain(&mut self) -> Result<CellExpr> {
        let mut e = self.hchain()?;
        while *self.peek() == Tok::Dot {
            self.bump();
            e = CellExpr::v(e, self.hchain()?);
        }
        Ok(e)
    }

    fn hchain(&mut self) -> Result<CellExpr> {
        let mut e = self.atom()?;
        while *self.peek() == Tok::Star {
            self.bump();
            e = CellExpr::h(e, self.atom()?);
        }
        Ok(e)
    }

    fn atom(&mut self) -> Result<CellExpr> {
        match self.peek().clone() {
            Tok::Name(n) => {
                self.bump();
                Ok(CellExpr::Gen(n))
            }
            Tok::FIdOpen => {
                self.bump();
                let Tok::Name(n) = self.peek().clone() else {
                    return Err(self.fail("expected a vertical morphism name after `i[`"));
                };
                self.bump();
                if *self.peek() != Tok::Close {
                    return Err(self.fail("expected `]`"));
                }
                self.bump();
                Ok(CellExpr::FId(n))
            }
            Tok::LParen => {
                self.bump();
                let e = self.vchain()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.fail("expected `)`"));
                }
                self.bump();
                Ok(e)
            }
            _ => Err(self.fail("expected a name, `i[` or `(`")),
        }
    }
}

/// Parses an expression. Names are not resolved here.
pub fn parse_expr(src: &str) -> Result<CellExpr> {
    let (toks, lexer) = Lexer::new(src).tokens()?;
    let mut p = Parser { toks, at: 0, lexer };
    let e = p.vchain()?;
    if *p.peek() != Tok::End {
        return Err(p.fail("expected `.`, `*` or end of input"));
    }
    Ok(e)
}
