// SPDX-License-Identifier: Apache-2.0

use super::QasmError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    Identifier,
    Number,
    Symbol,
    String,
    Keyword,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Token<'a> {
    pub kind: TokenKind,
    /// Source slice; string tokens exclude their quotes.
    pub text: &'a str,
    pub line: u32,
    pub col: u32,
}

const KEYWORDS: &[&str] = &[
    "OPENQASM", "include", "qreg", "creg", "gate", "opaque", "measure", "barrier", "reset", "if",
];

/// Streaming tokenizer; `//` comments and whitespace are skipped.
pub struct Lexer<'a> {
    src: &'a str,
    pos: usize,
    line: u32,
    col: u32,
}

impl<'a> Lexer<'a> {
    pub fn new(src: &'a str) -> Self {
        Lexer {
            src,
            pos: 0,
            line: 1,
            col: 1,
        }
    }

    fn bump(&mut self, n: usize) {
        self.pos += n;
        self.col += n as u32;
    }

    fn skip_trivia(&mut self) {
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() {
            match bytes[self.pos] {
                b'\n' => {
                    self.pos += 1;
                    self.line += 1;
                    self.col = 1;
                }
                b' ' | b'\t' | b'\r' => self.bump(1),
                b'/' if bytes.get(self.pos + 1) == Some(&b'/') => {
                    while self.pos < bytes.len() && bytes[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                _ => break,
            }
        }
    }

    pub fn next_token(&mut self) -> Result<Option<Token<'a>>, QasmError> {
        self.skip_trivia();
        let bytes = self.src.as_bytes();
        if self.pos >= bytes.len() {
            return Ok(None);
        }
        let (start, line, col) = (self.pos, self.line, self.col);
        let b = bytes[start];
        let make = |kind, end: usize| Token {
            kind,
            text: &self.src[start..end],
            line,
            col,
        };
        let token = if b.is_ascii_alphabetic() || b == b'_' {
            let mut end = start + 1;
            while end < bytes.len() && (bytes[end].is_ascii_alphanumeric() || bytes[end] == b'_') {
                end += 1;
            }
            let text = &self.src[start..end];
            let kind = if KEYWORDS.contains(&text) {
                TokenKind::Keyword
            } else {
                TokenKind::Identifier
            };
            let t = make(kind, end);
            self.bump(end - start);
            t
        } else if b.is_ascii_digit() || (b == b'.' && bytes.get(start + 1).is_some_and(u8::is_ascii_digit)) {
            let mut end = start;
            while end < bytes.len() && bytes[end].is_ascii_digit() {
                end += 1;
            }
            if end < bytes.len() && bytes[end] == b'.' {
                end += 1;
                while end < bytes.len() && bytes[end].is_ascii_digit() {
                    end += 1;
                }
            }
            if end < bytes.len() && (bytes[end] == b'e' || bytes[end] == b'E') {
                let mut exp = end + 1;
                if exp < bytes.len() && (bytes[exp] == b'+' || bytes[exp] == b'-') {
                    exp += 1;
                }
                if exp < bytes.len() && bytes[exp].is_ascii_digit() {
                    while exp < bytes.len() && bytes[exp].is_ascii_digit() {
                        exp += 1;
                    }
                    end = exp;
                }
            }
            let t = make(TokenKind::Number, end);
            self.bump(end - start);
            t
        } else if b == b'"' {
            let close = self.src[start + 1..]
                .find(['"', '\n'])
                .map(|i| start + 1 + i)
                .filter(|&i| bytes[i] == b'"')
                .ok_or(QasmError::Lex {
                    line,
                    col,
                    message: "unterminated string".into(),
                })?;
            let t = Token {
                kind: TokenKind::String,
                text: &self.src[start + 1..close],
                line,
                col,
            };
            self.bump(close + 1 - start);
            t
        } else {
            let two = bytes.get(start + 1).copied();
            let len = match (b, two) {
                (b'-', Some(b'>')) | (b'=', Some(b'=')) => 2,
                (
                    b';' | b',' | b'(' | b')' | b'{' | b'}' | b'[' | b']' | b'=' | b'*' | b'/' | b'+' | b'-' | b'^',
                    _,
                ) => 1,
                _ => {
                    let ch = self.src[start..].chars().next().unwrap_or('?');
                    return Err(QasmError::Lex {
                        line,
                        col,
                        message: format!("illegal character {ch:?}"),
                    });
                }
            };
            let t = make(TokenKind::Symbol, start + len);
            self.bump(len);
            t
        };
        Ok(Some(token))
    }
}

/// Tokenizes a whole source text.
pub fn tokenize(source: &str) -> Result<Vec<Token<'_>>, QasmError> {
    let mut lexer = Lexer::new(source);
    let mut out = Vec::new();
    while let Some(t) = lexer.next_token()? {
        out.push(t);
    }
    Ok(out)
}
