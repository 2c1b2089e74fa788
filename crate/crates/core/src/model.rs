//! In-memory reaction tree.
//!
//! A [`Reaction`] holds an initial-state particle sequence and a
//! [`FinalState`]. A final state is a list of signed alternative
//! [`GroupNode`]s, each holding an ordered particle sequence. Any particle may
//! carry a decay description, which is itself a final state. Parenthesised
//! grouping brackets are represented by a synthetic node named
//! [`COMPO_NAME`] with count 0 whose decay holds the grouped alternatives.
//!
//! Deep copies are plain [`Clone`]s and structural equality is [`PartialEq`]:
//! both compare node-for-node, including order, signs, counts, names and the
//! charge-conjugate flag.

use std::fmt;
use std::ops::Mul;

use thiserror::Error;

use crate::lexer::is_particle_char;

/// Name of the synthetic node standing for a parenthesised group.
pub const COMPO_NAME: &str = "?compo";

/// Sign attached to an alternative group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn factor(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_factor(factor: i32) -> Option<Sign> {
        match factor {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// One particle species occurrence in a sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ParticleNode {
    pub name: String,
    pub count: u32,
    pub decay: Option<FinalState>,
}

/// Particles of one group, in order.
pub type ParticleSequence = Vec<ParticleNode>;

/// A signed alternative: one possible outcome of a final state or decay.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupNode {
    pub sign: Sign,
    pub particles: ParticleSequence,
}

/// An ordered, non-empty list of alternative groups.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinalState {
    pub groups: Vec<GroupNode>,
    /// Trailing `+ CC` marker. Only meaningful on a reaction's top-level
    /// final state.
    pub cc: bool,
}

/// Initial state (beam followed by targets) plus final state.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Reaction {
    pub initial: ParticleSequence,
    pub final_state: FinalState,
}

impl ParticleNode {
    pub fn new(name: impl Into<String>) -> Self {
        ParticleNode {
            name: name.into(),
            count: 1,
            decay: None,
        }
    }

    pub fn with_decay(name: impl Into<String>, decay: FinalState) -> Self {
        ParticleNode {
            name: name.into(),
            count: 1,
            decay: Some(decay),
        }
    }

    /// Synthetic grouping node holding `alternatives`.
    pub fn compo(alternatives: FinalState) -> Self {
        ParticleNode {
            name: COMPO_NAME.to_string(),
            count: 0,
            decay: Some(alternatives),
        }
    }

    pub fn is_compo(&self) -> bool {
        self.name == COMPO_NAME
    }
}

impl GroupNode {
    pub fn new(sign: Sign, particles: ParticleSequence) -> Self {
        GroupNode { sign, particles }
    }

    pub fn plus(particles: ParticleSequence) -> Self {
        GroupNode::new(Sign::Plus, particles)
    }

    pub fn minus(particles: ParticleSequence) -> Self {
        GroupNode::new(Sign::Minus, particles)
    }
}

impl FinalState {
    pub fn new(groups: Vec<GroupNode>) -> Self {
        FinalState { groups, cc: false }
    }

    /// A final state with a single positive group.
    pub fn single(particles: ParticleSequence) -> Self {
        FinalState::new(vec![GroupNode::plus(particles)])
    }

    pub fn with_cc(mut self, cc: bool) -> Self {
        self.cc = cc;
        self
    }
}

impl Reaction {
    pub fn new(initial: ParticleSequence, final_state: FinalState) -> Self {
        Reaction {
            initial,
            final_state,
        }
    }

    /// Independent copy of the whole tree.
    pub fn deep_copy(&self) -> Reaction {
        self.clone()
    }

    /// Node-for-node equality, including order, signs, counts and flags.
    pub fn structural_equal(&self, other: &Reaction) -> bool {
        self == other
    }

    /// Rewrites every node with count `k > 1` into `k` adjacent count-1
    /// nodes, mirroring how such nodes are rendered.
    pub fn expand_counts(&self) -> Reaction {
        Reaction {
            initial: expand_seq_counts(&self.initial),
            final_state: expand_fs_counts(&self.final_state),
        }
    }

    /// Checks every type invariant of the tree.
    pub fn validate(&self) -> Result<(), ModelError> {
        if self.initial.is_empty() {
            return Err(ModelError::EmptyInitialState);
        }
        for node in &self.initial {
            if node.is_compo() {
                return Err(ModelError::CompoInInitialState);
            }
            if node.decay.is_some() {
                return Err(ModelError::DecayInInitialState(node.name.clone()));
            }
            validate_node(node)?;
        }
        validate_fs(&self.final_state, true)
    }

    /// Visits every particle name in the tree, depth first, left to right.
    pub fn for_each_name<'a>(&'a self, mut visit: impl FnMut(&'a str)) {
        for node in &self.initial {
            visit_node(node, &mut visit);
        }
        visit_fs(&self.final_state, &mut visit);
    }

    /// Whether any grouping node remains anywhere in the tree.
    pub fn contains_compo(&self) -> bool {
        let mut found = false;
        self.for_each_name(|name| found |= name == COMPO_NAME);
        found
    }
}

fn visit_node<'a>(node: &'a ParticleNode, visit: &mut impl FnMut(&'a str)) {
    visit(&node.name);
    if let Some(decay) = &node.decay {
        visit_fs(decay, visit);
    }
}

fn visit_fs<'a>(fs: &'a FinalState, visit: &mut impl FnMut(&'a str)) {
    for group in &fs.groups {
        for node in &group.particles {
            visit_node(node, visit);
        }
    }
}

fn expand_seq_counts(seq: &[ParticleNode]) -> ParticleSequence {
    let mut out = Vec::with_capacity(seq.len());
    for node in seq {
        let decay = node.decay.as_ref().map(expand_fs_counts);
        let copies = node.count.max(1);
        let count = if node.is_compo() { 0 } else { 1 };
        for _ in 0..copies {
            out.push(ParticleNode {
                name: node.name.clone(),
                count,
                decay: decay.clone(),
            });
        }
    }
    out
}

fn expand_fs_counts(fs: &FinalState) -> FinalState {
    FinalState {
        groups: fs
            .groups
            .iter()
            .map(|g| GroupNode::new(g.sign, expand_seq_counts(&g.particles)))
            .collect(),
        cc: fs.cc,
    }
}

/// Invariant violations in a hand-built or transformed tree.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("initial state has no beam particle")]
    EmptyInitialState,
    #[error("grouping brackets are not allowed in the initial state")]
    CompoInInitialState,
    #[error("initial-state particle `{0}` carries a decay")]
    DecayInInitialState(String),
    #[error("invalid particle name `{0}`")]
    InvalidName(String),
    #[error("particle `{name}` has count {count}")]
    BadCount { name: String, count: u32 },
    #[error("grouping node without alternatives")]
    EmptyCompo,
    #[error("final state without groups")]
    NoGroups,
    #[error("charge-conjugate marker below the top level")]
    NestedCc,
}

/// Whether `name` would lex back as a single PARTICLE token.
pub fn is_valid_particle_name(name: &str) -> bool {
    !name.is_empty()
        && name.bytes().all(is_particle_char)
        && !matches!(name, "+" | "-" | "(" | ")" | "CC")
}

fn validate_node(node: &ParticleNode) -> Result<(), ModelError> {
    if node.is_compo() {
        if node.count != 0 {
            return Err(ModelError::BadCount {
                name: node.name.clone(),
                count: node.count,
            });
        }
        return match &node.decay {
            Some(alts) if !alts.groups.is_empty() => validate_fs(alts, false),
            _ => Err(ModelError::EmptyCompo),
        };
    }
    if !is_valid_particle_name(&node.name) {
        return Err(ModelError::InvalidName(node.name.clone()));
    }
    if node.count == 0 {
        return Err(ModelError::BadCount {
            name: node.name.clone(),
            count: 0,
        });
    }
    match &node.decay {
        Some(decay) => validate_fs(decay, false),
        None => Ok(()),
    }
}

fn validate_fs(fs: &FinalState, top_level: bool) -> Result<(), ModelError> {
    if fs.groups.is_empty() {
        return Err(ModelError::NoGroups);
    }
    if fs.cc && !top_level {
        return Err(ModelError::NestedCc);
    }
    fs.groups
        .iter()
        .flat_map(|g| &g.particles)
        .try_for_each(validate_node)
}
