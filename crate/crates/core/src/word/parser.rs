//! Recursive-descent parser for words and equations.
//!
//! ```text
//! equation := word '=' word
//! word     := term ('*' term)*                 left-associative
//! term     := atom ('^' exponent)*             postfix, binds tighter than '*'
//! exponent := '-'? INT                         power ("^-1" is inversion)
//!           | atom                             conjugation u^v = v⁻¹uv
//! atom     := 'x' INT                          variable, 1-based
//!           | IDENT | '#' NAME                 named constant / element literal
//!           | '1'                              identity
//!           | '(' word ')'
//!           | '[' word ',' word (',' word)* ']'   left-normed commutator
//!           | '[' word ',' word ';' INT ']'       Engel commutator [u,_n v]
//! ```

use super::ast::{Equation, Word};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Var(usize),
    Ident(String),
    Literal(String),
    Int(i64),
    Sym(char),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = vec![];
    let mut i = 0;
    let err = |pos: usize, msg: String| Error::Syntax { pos, msg };
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if "()[],;*^-=".contains(c) {
            out.push((pos, Tok::Sym(c)));
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|p| p.1).collect();
            let v = s.parse().map_err(|_| err(pos, format!("integer {s} out of range")))?;
            out.push((pos, Tok::Int(v)));
        } else if c == '#' {
            i += 1;
            let start = i;
            while i < chars.len() && (chars[i].1.is_alphanumeric() || "_.-".contains(chars[i].1)) {
                i += 1;
            }
            if start == i {
                return Err(err(pos, "empty element literal after '#'".into()));
            }
            let s: String = chars[start..i].iter().map(|p| p.1).collect();
            out.push((pos, Tok::Literal(format!("#{s}"))));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|p| p.1).collect();
            let var = s.strip_prefix('x').filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()));
            match var {
                Some(d) => {
                    let n: usize = d.parse().map_err(|_| err(pos, format!("bad variable {s}")))?;
                    if n == 0 {
                        return Err(err(pos, "variables are numbered from x1".into()));
                    }
                    out.push((pos, Tok::Var(n - 1)));
                }
                None => out.push((pos, Tok::Ident(s))),
            }
        } else {
            return Err(err(pos, format!("unexpected character {c:?}")));
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
        self.toks.get(self.i).map_or(self.end, |t| t.0)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos(), msg: msg.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn word(&mut self) -> Result<Word> {
        let mut w = self.term()?;
        while self.eat('*') {
            w = w.mul(self.term()?);
        }
        Ok(w)
    }

    fn term(&mut self) -> Result<Word> {
        let mut w = self.atom()?;
        while self.eat('^') {
            w = match self.peek() {
                Some(Tok::Sym('-')) => {
                    self.i += 1;
                    match self.peek().cloned() {
                        Some(Tok::Int(1)) => {
                            self.i += 1;
                            w.inv()
                        }
                        Some(Tok::Int(k)) => {
                            self.i += 1;
                            w.pow(-k)
                        }
                        _ => return self.err("expected integer after '^-'"),
                    }
                }
                Some(Tok::Int(k)) => {
                    let k = *k;
                    self.i += 1;
                    w.pow(k)
                }
                _ => w.conj(self.atom()?),
            };
        }
        Ok(w)
    }

    fn atom(&mut self) -> Result<Word> {
        match self.peek().cloned() {
            Some(Tok::Var(i)) => {
                self.i += 1;
                Ok(Word::Var(i))
            }
            Some(Tok::Ident(s)) | Some(Tok::Literal(s)) => {
                self.i += 1;
                Ok(Word::Const(s))
            }
            Some(Tok::Int(1)) => {
                self.i += 1;
                Ok(Word::Identity)
            }
            Some(Tok::Int(k)) => self.err(format!("integer {k} is not a word (only 1 denotes the identity)")),
            Some(Tok::Sym('(')) => {
                self.i += 1;
                let w = self.word()?;
                self.expect(')')?;
                Ok(w)
            }
            Some(Tok::Sym('[')) => {
                self.i += 1;
                let mut parts = vec![self.word()?];
                self.expect(',')?;
                parts.push(self.word()?);
                if self.eat(';') {
                    let n = match self.peek() {
                        Some(Tok::Int(n)) if *n >= 1 && *n <= u32::MAX as i64 => *n as u32,
                        _ => return self.err("Engel length must be a positive integer"),
                    };
                    self.i += 1;
                    self.expect(']')?;
                    let b = parts.pop().unwrap();
                    let a = parts.pop().unwrap();
                    return Ok(Word::engel(a, b, n));
                }
                while self.eat(',') {
                    parts.push(self.word()?);
                }
                self.expect(']')?;
                Ok(Word::left_normed(parts))
            }
            Some(t) => self.err(format!("unexpected {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }

    fn finish(&self) -> Result<()> {
        if self.i < self.toks.len() {
            return self.err("trailing input");
        }
        Ok(())
    }
}

fn parser(text: &str) -> Result<Parser> {
    Ok(Parser { toks: lex(text)?, i: 0, end: text.len() })
}

pub fn parse_word(text: &str) -> Result<Word> {
    let mut p = parser(text)?;
    let w = p.word()?;
    p.finish()?;
    Ok(w)
}

/// Parse `<word> = <word>`.
pub fn parse_equation(text: &str) -> Result<Equation> {
    let mut p = parser(text)?;
    let lhs = p.word()?;
    p.expect('=')?;
    let rhs = p.word()?;
    p.finish()?;
    Ok(Equation::new(lhs, rhs))
}
