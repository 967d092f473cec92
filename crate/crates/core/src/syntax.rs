//! Tokenizer and recursive-descent parser for the word syntax.
//!
//! A word is a sequence of terms separated by whitespace or `*`. A term is an
//! atom with an optional nonzero integer exponent (`x^3`, `x^-2`). Besides
//! identifiers, atoms may be parenthesised words `(x y)^2` or commutators
//! `[u, v]`, which expand to `u v u^-1 v^-1` without reduction.

use crate::error::{Error, Result};
use crate::word::{Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Int(i64),
    Caret,
    Star,
    Comma,
    Semi,
    Pipe,
    Equals,
    LBracket,
    RBracket,
    LParen,
    RParen,
}

#[derive(Debug, Clone)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

pub(crate) fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    for (line_idx, line) in text.lines().enumerate() {
        let line_no = line_idx + 1;
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let column = i + 1;
            let push = |out: &mut Vec<Token>, tok| {
                out.push(Token {
                    tok,
                    line: line_no,
                    column,
                })
            };
            if c == '#' {
                break;
            }
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if c.is_alphabetic() {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                push(&mut out, Tok::Ident(chars[start..i].iter().collect()));
                continue;
            }
            if c.is_ascii_digit()
                || (c == '-' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit()))
            {
                let start = i;
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                let value = digits.parse::<i64>().map_err(|_| Error::Syntax {
                    line: line_no,
                    column,
                    message: format!("integer `{digits}` out of range"),
                })?;
                push(&mut out, Tok::Int(value));
                continue;
            }
            let tok = match c {
                '^' => Tok::Caret,
                '*' => Tok::Star,
                ',' => Tok::Comma,
                ';' => Tok::Semi,
                '|' => Tok::Pipe,
                '=' => Tok::Equals,
                '[' => Tok::LBracket,
                ']' => Tok::RBracket,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                other => {
                    return Err(Error::Syntax {
                        line: line_no,
                        column,
                        message: format!("unexpected character `{other}`"),
                    })
                }
            };
            push(&mut out, tok);
            i += 1;
        }
    }
    Ok(out)
}

pub(crate) struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
    generators: &'a [String],
}

impl<'a> Parser<'a> {
    pub fn new(tokens: &'a [Token], generators: &'a [String]) -> Self {
        Parser {
            tokens,
            pos: 0,
            generators,
        }
    }

    pub fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    pub fn cursor(&self) -> usize {
        self.pos
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.tokens.len()
    }

    pub fn bump(&mut self) -> Option<&Token> {
        let t = self.tokens.get(self.pos);
        self.pos += 1;
        t
    }

    /// Line and column of the next token, or just past the last one.
    pub fn location(&self) -> (usize, usize) {
        match self.tokens.get(self.pos) {
            Some(t) => (t.line, t.column),
            None => self
                .tokens
                .last()
                .map(|t| (t.line, t.column + 1))
                .unwrap_or((1, 1)),
        }
    }

    pub fn error(&self, message: impl Into<String>) -> Error {
        let (line, column) = self.location();
        Error::Syntax {
            line,
            column,
            message: message.into(),
        }
    }

    pub fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Ident(_)) | Some(Tok::LBracket) | Some(Tok::LParen)
        )
    }

    /// Parses one word; returns the empty word when no term starts here.
    pub fn word(&mut self) -> Result<Word> {
        let mut letters: Vec<Letter> = Vec::new();
        loop {
            if self.peek() == Some(&Tok::Star) {
                if letters.is_empty() {
                    return Err(self.error("`*` must separate two terms"));
                }
                self.pos += 1;
                if !self.starts_atom() {
                    return Err(self.error("expected a term after `*`"));
                }
            }
            if !self.starts_atom() {
                break;
            }
            let term = self.term()?;
            letters.extend_from_slice(term.letters());
        }
        Ok(Word::new(letters))
    }

    fn term(&mut self) -> Result<Word> {
        let atom = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.bump().map(|t| t.tok.clone()) {
                Some(Tok::Int(0)) => {
                    self.pos -= 1;
                    Err(self.error("exponent must be nonzero"))
                }
                Some(Tok::Int(e)) => Ok(atom.power(e)),
                _ => {
                    self.pos -= 1;
                    Err(self.error("expected an integer exponent"))
                }
            }
        } else {
            Ok(atom)
        }
    }

    fn atom(&mut self) -> Result<Word> {
        let (line, column) = self.location();
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let g = self
                    .generators
                    .iter()
                    .position(|n| *n == name)
                    .ok_or(Error::UndeclaredGenerator { name, line, column })?;
                Ok(Word::new(vec![Letter::pos(g)]))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.nonempty_word()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Some(Tok::LBracket) => {
                self.pos += 1;
                let a = self.nonempty_word()?;
                self.expect(Tok::Comma, "`,` inside commutator")?;
                let b = self.nonempty_word()?;
                self.expect(Tok::RBracket, "`]`")?;
                Ok(Word::commutator(&a, &b))
            }
            _ => Err(self.error("expected a generator")),
        }
    }

    fn nonempty_word(&mut self) -> Result<Word> {
        let w = self.word()?;
        if w.is_empty() {
            Err(self.error("expected a word"))
        } else {
            Ok(w)
        }
    }
}

/// Parses a single word over the given generator names.
pub fn parse_word(text: &str, generators: &[String]) -> Result<Word> {
    let tokens = tokenize(text)?;
    let mut p = Parser::new(&tokens, generators);
    let w = p.word()?;
    if !p.at_end() {
        return Err(p.error("unexpected token"));
    }
    Ok(w)
}
