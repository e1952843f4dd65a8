//! Recursive-descent parser.
//!
//! ```text
//! or    := and ('|' and)*
//! and   := until ('&' until)*
//! until := unary (('U' | 'R') until)?
//! unary := ('!' | 'X' | 'N' | 'F' | 'G') unary | '(' or ')' | 'true' | 'false' | atom
//! atom  := 'p' INT '=' SYMBOL
//! ```

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::Ltlf;
use crate::alphabet::ProductAlphabet;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    LParen,
    RParen,
    Not,
    And,
    Or,
    Op(char),
    True,
    False,
    Atom { channel: usize, symbol: usize },
    End,
}

fn syntax(offset: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        offset,
        message: message.into(),
    }
}

fn is_symbol_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

fn lex(text: &str, alphabet: &ProductAlphabet) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (off, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let simple = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '!' => Some(Tok::Not),
            '&' => Some(Tok::And),
            '|' => Some(Tok::Or),
            'X' | 'N' | 'F' | 'G' | 'U' | 'R' => Some(Tok::Op(c)),
            _ => None,
        };
        if let Some(t) = simple {
            out.push((off, t));
            i += 1;
            continue;
        }
        if c == 'p' && chars.get(i + 1).is_some_and(|(_, d)| d.is_ascii_digit()) {
            let mut j = i + 1;
            while j < chars.len() && chars[j].1.is_ascii_digit() {
                j += 1;
            }
            let digits: String = chars[i + 1..j].iter().map(|(_, d)| d).collect();
            let channel: usize = digits
                .parse()
                .map_err(|_| syntax(chars[i + 1].0, "channel index too large"))?;
            while j < chars.len() && chars[j].1.is_whitespace() {
                j += 1;
            }
            if chars.get(j).map(|(_, d)| *d) != Some('=') {
                let at = chars.get(j).map_or(text.len(), |(o, _)| *o);
                return Err(syntax(at, "expected `=` after channel"));
            }
            j += 1;
            while j < chars.len() && chars[j].1.is_whitespace() {
                j += 1;
            }
            let start = j;
            while j < chars.len() && is_symbol_char(chars[j].1) {
                j += 1;
            }
            if start == j {
                let at = chars.get(j).map_or(text.len(), |(o, _)| *o);
                return Err(syntax(at, "expected a symbol"));
            }
            let name: String = chars[start..j].iter().map(|(_, d)| d).collect();
            if channel >= alphabet.num_channels() {
                return Err(Error::UnknownAtom(format!(
                    "p{channel}={name}: no channel {channel}"
                )));
            }
            let symbol = alphabet.symbol_index(channel, &name).ok_or_else(|| {
                Error::UnknownAtom(format!("p{channel}={name}: no symbol `{name}` in channel {channel}"))
            })?;
            out.push((off, Tok::Atom { channel, symbol }));
            i = j;
            continue;
        }
        if is_symbol_char(c) {
            let mut j = i;
            while j < chars.len() && is_symbol_char(chars[j].1) {
                j += 1;
            }
            let word: String = chars[i..j].iter().map(|(_, d)| d).collect();
            let tok = match word.as_str() {
                "true" => Tok::True,
                "false" => Tok::False,
                _ => return Err(syntax(off, format!("unexpected `{word}`"))),
            };
            out.push((off, tok));
            i = j;
            continue;
        }
        return Err(syntax(off, format!("unexpected character `{c}`")));
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn or(&mut self) -> Result<Ltlf> {
        let mut lhs = self.and()?;
        while *self.peek() == Tok::Or {
            self.bump();
            lhs = Ltlf::or(lhs, self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Ltlf> {
        let mut lhs = self.until()?;
        while *self.peek() == Tok::And {
            self.bump();
            lhs = Ltlf::and(lhs, self.until()?);
        }
        Ok(lhs)
    }

    fn until(&mut self) -> Result<Ltlf> {
        let lhs = self.unary()?;
        match self.peek() {
            Tok::Op('U') => {
                self.bump();
                Ok(Ltlf::until(lhs, self.until()?))
            }
            Tok::Op('R') => {
                self.bump();
                Ok(Ltlf::release(lhs, self.until()?))
            }
            _ => Ok(lhs),
        }
    }

    fn unary(&mut self) -> Result<Ltlf> {
        let at = self.offset();
        match self.bump() {
            Tok::Not => Ok(Ltlf::not(self.unary()?)),
            Tok::Op('X') => Ok(Ltlf::next(self.unary()?)),
            Tok::Op('N') => Ok(Ltlf::weak_next(self.unary()?)),
            Tok::Op('F') => Ok(Ltlf::eventually(self.unary()?)),
            Tok::Op('G') => Ok(Ltlf::always(self.unary()?)),
            Tok::True => Ok(Ltlf::True),
            Tok::False => Ok(Ltlf::False),
            Tok::Atom { channel, symbol } => Ok(Ltlf::Atom { channel, symbol }),
            Tok::LParen => {
                let inner = self.or()?;
                let close = self.offset();
                match self.bump() {
                    Tok::RParen => Ok(inner),
                    Tok::End => Err(syntax(close, "unexpected end of input, expected `)`")),
                    _ => Err(syntax(close, "expected `)`")),
                }
            }
            Tok::End => Err(syntax(at, "unexpected end of input")),
            t => Err(syntax(at, format!("unexpected {}", describe(&t)))),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::RParen => "`)`".into(),
        Tok::And => "`&`".into(),
        Tok::Or => "`|`".into(),
        Tok::Op(c) => format!("`{c}`"),
        other => format!("{other:?}").to_string(),
    }
}

/// Parses `text`, resolving atoms against `alphabet`.
pub fn parse(text: &str, alphabet: &ProductAlphabet) -> Result<Ltlf> {
    let mut p = Parser {
        toks: lex(text, alphabet)?,
        pos: 0,
    };
    let f = p.or()?;
    if *p.peek() != Tok::End {
        return Err(syntax(p.offset(), format!("trailing {}", describe(p.peek()))));
    }
    Ok(f)
}
