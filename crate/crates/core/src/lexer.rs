//! Maximal-munch tokenizer for reaction statements.
//!
//! At each position the longest matching rule wins. On a length tie the
//! fixed tokens (`-->`, `;`, `(`, `)`, `<`, `>`, `+`, `-`, `CC`) beat
//! PARTICLE, so a lone `+` is PLUS while `E+` is one PARTICLE and `(` glued
//! to a name (as in `nu(tau)`) stays part of that name.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TokenKind {
    Arrow,
    End,
    Lp,
    Rp,
    Lc,
    Rc,
    Plus,
    Minus,
    Cc,
    Particle,
}

impl TokenKind {
    pub fn describe(self) -> &'static str {
        match self {
            TokenKind::Arrow => "`-->`",
            TokenKind::End => "`;`",
            TokenKind::Lp => "`(`",
            TokenKind::Rp => "`)`",
            TokenKind::Lc => "`<`",
            TokenKind::Rc => "`>`",
            TokenKind::Plus => "`+`",
            TokenKind::Minus => "`-`",
            TokenKind::Cc => "`CC`",
            TokenKind::Particle => "particle name",
        }
    }
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.describe())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Token<'a> {
    pub kind: TokenKind,
    pub text: &'a str,
    /// Byte offset of the lexeme in the input.
    pub offset: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unexpected character {found:?} at offset {offset}")]
pub struct LexError {
    pub found: char,
    pub offset: usize,
}

/// Characters allowed in a PARTICLE lexeme.
pub fn is_particle_char(b: u8) -> bool {
    b.is_ascii_alphanumeric()
        || matches!(
            b,
            b'+' | b'-' | b':' | b'"' | b'.' | b'*' | b'=' | b'%' | b'_' | b'(' | b')' | b'/'
        )
}

fn is_space(b: u8) -> bool {
    matches!(b, b' ' | b'\t' | b'\n' | b'\r')
}

/// Longest fixed token starting at the beginning of `rest`.
fn fixed_token(rest: &[u8]) -> Option<(TokenKind, usize)> {
    if rest.starts_with(b"-->") {
        return Some((TokenKind::Arrow, 3));
    }
    if rest.starts_with(b"CC") {
        return Some((TokenKind::Cc, 2));
    }
    let kind = match rest.first()? {
        b';' => TokenKind::End,
        b'(' => TokenKind::Lp,
        b')' => TokenKind::Rp,
        b'<' => TokenKind::Lc,
        b'>' => TokenKind::Rc,
        b'+' => TokenKind::Plus,
        b'-' => TokenKind::Minus,
        _ => return None,
    };
    Some((kind, 1))
}

pub fn tokenize(text: &str) -> Result<Vec<Token<'_>>, LexError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        if is_space(bytes[pos]) {
            pos += 1;
            continue;
        }
        let rest = &bytes[pos..];
        let particle_len = rest.iter().take_while(|&&b| is_particle_char(b)).count();
        let (kind, len) = match fixed_token(rest) {
            Some((kind, len)) if len >= particle_len => (kind, len),
            _ if particle_len > 0 => (TokenKind::Particle, particle_len),
            _ => {
                return Err(LexError {
                    found: text[pos..].chars().next().unwrap_or('\0'),
                    offset: pos,
                })
            }
        };
        tokens.push(Token {
            kind,
            text: &text[pos..pos + len],
            offset: pos,
        });
        pos += len;
    }
    Ok(tokens)
}
