//! Recursive-descent parser for reaction statements.
//!
//! ```text
//! reaction      := initial_state ARROW final_state END
//! initial_state := PARTICLE PARTICLE*
//! final_state   := decay_group (("+" | "-") decay_group)* ("+" CC)*
//! decay_group   := particle*
//! particle      := PARTICLE | PARTICLE "<" final_state ">" | "(" final_state ")"
//! ```
//!
//! The charge-conjugate suffix is accepted on the reaction's own final state
//! only. A parenthesised final state becomes a [`COMPO_NAME`] node.
//!
//! [`COMPO_NAME`]: crate::model::COMPO_NAME

use std::fmt;

use thiserror::Error;

use crate::lexer::{tokenize, LexError, Token, TokenKind};
use crate::model::{FinalState, GroupNode, ParticleNode, ParticleSequence, Reaction};

/// Deepest bracket nesting accepted before parsing gives up.
pub const MAX_NESTING: usize = 128;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at offset {offset}{}", ExpectedList(expected))]
pub struct ParseError {
    pub message: String,
    pub offset: usize,
    pub expected: Vec<TokenKind>,
}

struct ExpectedList<'a>(&'a [TokenKind]);

impl fmt::Display for ExpectedList<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, kind) in self.0.iter().enumerate() {
            f.write_str(if i == 0 { " (expected " } else { ", " })?;
            write!(f, "{kind}")?;
        }
        if !self.0.is_empty() {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl From<LexError> for ParseError {
    fn from(err: LexError) -> Self {
        ParseError {
            message: format!("unexpected character {:?}", err.found),
            offset: err.offset,
            expected: Vec::new(),
        }
    }
}

/// Parses one statement, which must end with `;`.
pub fn parse_reaction(text: &str) -> Result<Reaction, ParseError> {
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        tokens: &tokens,
        pos: 0,
        eof: text.len(),
        depth: 0,
    };
    let reaction = parser.reaction()?;
    if let Some(tok) = parser.peek() {
        return Err(ParseError {
            message: format!("unexpected `{}` after end of statement", tok.text),
            offset: tok.offset,
            expected: Vec::new(),
        });
    }
    Ok(reaction)
}

/// Parses every `;`-terminated statement in `text`. A statement that fails
/// to parse is skipped up to its terminator and reported in place, so one
/// bad statement never hides the ones after it. Trailing text without a
/// terminator yields a final error.
pub fn parse_statements(text: &str) -> Vec<Result<Reaction, ParseError>> {
    let mut results = Vec::new();
    let mut start = 0;
    for (end, _) in text.match_indices(';') {
        results.push(parse_reaction(&text[start..=end]).map_err(|e| shift(e, start)));
        start = end + 1;
    }
    let rest = &text[start..];
    if !rest.trim().is_empty() {
        let mut err = parse_reaction(rest)
            .err()
            .unwrap_or_else(|| unreachable!("statement without `;` cannot parse"));
        err = shift(err, start);
        results.push(Err(err));
    }
    results
}

fn shift(mut err: ParseError, by: usize) -> ParseError {
    err.offset += by;
    err
}

struct Parser<'t, 'a> {
    tokens: &'t [Token<'a>],
    pos: usize,
    eof: usize,
    depth: usize,
}

impl<'a> Parser<'_, 'a> {
    fn peek(&self) -> Option<&Token<'a>> {
        self.tokens.get(self.pos)
    }

    fn peek_kind(&self) -> Option<TokenKind> {
        self.peek().map(|t| t.kind)
    }

    fn peek_kind_at(&self, ahead: usize) -> Option<TokenKind> {
        self.tokens.get(self.pos + ahead).map(|t| t.kind)
    }

    fn error(&self, expected: &[TokenKind]) -> ParseError {
        match self.peek() {
            Some(tok) => ParseError {
                message: format!("unexpected `{}`", tok.text),
                offset: tok.offset,
                expected: expected.to_vec(),
            },
            None => ParseError {
                message: "unexpected end of statement".into(),
                offset: self.eof,
                expected: expected.to_vec(),
            },
        }
    }

    fn expect(&mut self, kind: TokenKind, expected: &[TokenKind]) -> Result<Token<'a>, ParseError> {
        match self.peek() {
            Some(tok) if tok.kind == kind => {
                let tok = *tok;
                self.pos += 1;
                Ok(tok)
            }
            _ => Err(self.error(expected)),
        }
    }

    fn reaction(&mut self) -> Result<Reaction, ParseError> {
        use TokenKind::*;
        let beam = self.expect(Particle, &[Particle])?;
        let mut initial = vec![ParticleNode::new(beam.text)];
        while let Some(tok) = self.peek().filter(|t| t.kind == Particle) {
            initial.push(ParticleNode::new(tok.text));
            self.pos += 1;
        }
        self.expect(Arrow, &[Particle, Arrow])?;
        let final_state = self.final_state(true)?;
        self.expect(End, &[Particle, Lp, Plus, Minus, End])?;
        Ok(Reaction::new(initial, final_state))
    }

    fn final_state(&mut self, top_level: bool) -> Result<FinalState, ParseError> {
        use TokenKind::*;
        if self.peek_kind() == Some(Minus) {
            let mut err = self.error(&[Particle, Lp, Plus]);
            err.message = "a final state cannot start with `-`".into();
            return Err(err);
        }
        let mut groups = vec![GroupNode::plus(self.decay_group()?)];
        let mut cc = false;
        loop {
            match self.peek_kind() {
                Some(Plus) if self.peek_kind_at(1) == Some(Cc) => {
                    if !top_level {
                        self.pos += 1;
                        let mut err = self.error(&[]);
                        err.message =
                            "charge-conjugate marker is only allowed on the reaction's final state"
                                .into();
                        return Err(err);
                    }
                    self.pos += 2;
                    cc = true;
                }
                Some(Plus) if cc => {
                    self.pos += 1;
                    return Err(self.error(&[Cc]));
                }
                Some(Minus) if cc => return Err(self.error(&[Plus, End])),
                Some(Plus) => {
                    self.pos += 1;
                    groups.push(GroupNode::plus(self.decay_group()?));
                }
                Some(Minus) => {
                    self.pos += 1;
                    groups.push(GroupNode::minus(self.decay_group()?));
                }
                _ => break,
            }
        }
        Ok(FinalState { groups, cc })
    }

    fn decay_group(&mut self) -> Result<ParticleSequence, ParseError> {
        let mut seq = Vec::new();
        while let Some(kind) = self.peek_kind() {
            match kind {
                TokenKind::Particle => seq.push(self.named_particle()?),
                TokenKind::Lp => seq.push(self.grouping()?),
                _ => break,
            }
        }
        Ok(seq)
    }

    fn enter(&mut self) -> Result<(), ParseError> {
        self.depth += 1;
        if self.depth > MAX_NESTING {
            let mut err = self.error(&[]);
            err.message = format!("brackets nested deeper than {MAX_NESTING} levels");
            return Err(err);
        }
        Ok(())
    }

    fn named_particle(&mut self) -> Result<ParticleNode, ParseError> {
        use TokenKind::*;
        let name = self.tokens[self.pos].text;
        self.pos += 1;
        if self.peek_kind() != Some(Lc) {
            return Ok(ParticleNode::new(name));
        }
        self.pos += 1;
        self.enter()?;
        let decay = self.final_state(false)?;
        self.expect(Rc, &[Particle, Lp, Plus, Minus, Rc])?;
        self.depth -= 1;
        Ok(ParticleNode::with_decay(name, decay))
    }

    fn grouping(&mut self) -> Result<ParticleNode, ParseError> {
        use TokenKind::*;
        self.pos += 1;
        self.enter()?;
        let alternatives = self.final_state(false)?;
        self.expect(Rp, &[Particle, Lp, Plus, Minus, Rp])?;
        self.depth -= 1;
        Ok(ParticleNode::compo(alternatives))
    }
}
