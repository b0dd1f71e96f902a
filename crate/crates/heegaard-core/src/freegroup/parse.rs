use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{Basis, Letter, Word};
use crate::{Error, Result};

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    basis: &'a Basis,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn word(&mut self, depth: usize) -> Result<Vec<Letter>> {
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                None => {
                    if depth > 0 {
                        return Err(Error::UnbalancedParentheses);
                    }
                    return Ok(out);
                }
                Some(')') => {
                    if depth == 0 {
                        return Err(Error::UnbalancedParentheses);
                    }
                    return Ok(out);
                }
                Some(_) => {
                    let t = self.term(depth)?;
                    out.extend(t);
                }
            }
        }
    }

    fn term(&mut self, depth: usize) -> Result<Vec<Letter>> {
        let atom = match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.word(depth + 1)?;
                self.skip_ws();
                if self.peek() != Some(')') {
                    return Err(Error::UnbalancedParentheses);
                }
                self.pos += 1;
                inner
            }
            Some(c) if c == '^' || c == '-' => return Err(Error::UnexpectedToken(c.to_string())),
            _ => {
                let start = self.pos;
                while let Some(c) = self.peek() {
                    if c.is_whitespace() || super::RESERVED.contains(&c) {
                        break;
                    }
                    self.pos += c.len_utf8();
                }
                let name = &self.src[start..self.pos];
                let g = self.basis.index_of(name).ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
                alloc::vec![Letter::pos(g)]
            }
        };
        self.skip_ws();
        if self.peek() != Some('^') {
            return Ok(atom);
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some('-') {
            self.pos += 1;
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        let text = &self.src[start..self.pos];
        let n: i64 = text.parse().map_err(|_| {
            let end = self.src[self.pos..].chars().next().map_or(self.pos, |c| self.pos + c.len_utf8());
            Error::MalformedExponent(String::from(&self.src[start.saturating_sub(1)..end]))
        })?;
        Ok(Word::from_letters(atom).power(n).letters().to_vec())
    }
}

pub(super) fn parse_word(text: &str, basis: &Basis) -> Result<Word> {
    let mut p = Parser { src: text, pos: 0, basis };
    let letters = p.word(0)?;
    Ok(Word::from_letters(letters))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b() -> Basis {
        Basis::new(["x", "y", "z"]).unwrap()
    }

    #[test]
    fn powers_and_groups() {
        let w = parse_word("(x^-1 y)^2 (x y^-1) (x z^-1)^2 (x^-1 z)", &b()).unwrap();
        assert_eq!(w.format(&b()), "x^-1 y x^-1 y x y^-1 x z^-1 x z^-1 x^-1 z");
        assert_eq!(w.len(), 12);
        assert!(parse_word("(x y)^0", &b()).unwrap().is_empty());
        assert_eq!(parse_word("x x^-1 y", &b()).unwrap().format(&b()), "y");
        assert_eq!(parse_word("x^ -3", &b()).unwrap().format(&b()), "x^-1 x^-1 x^-1");
        assert!(parse_word("", &b()).unwrap().is_empty());
    }

    #[test]
    fn errors() {
        assert_eq!(parse_word("w", &b()), Err(Error::UnknownGenerator("w".into())));
        assert!(matches!(parse_word("x^a", &b()), Err(Error::MalformedExponent(_))));
        assert!(matches!(parse_word("x^", &b()), Err(Error::MalformedExponent(_))));
        assert_eq!(parse_word("(x y", &b()), Err(Error::UnbalancedParentheses));
        assert_eq!(parse_word("x y)", &b()), Err(Error::UnbalancedParentheses));
        assert!(parse_word("-x", &b()).is_err());
    }
}
