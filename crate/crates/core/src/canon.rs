//! Canonical form of a reaction.
//!
//! [`canonicalize`] runs four passes in order: synonym resolution, grouping
//! bracket distribution, duplicate merging and sorting. The result is a
//! fixed point of the pipeline and does not depend on the order of sibling
//! particles or sibling groups in the input.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::model::{FinalState, GroupNode, ParticleNode, ParticleSequence, Reaction};
use crate::tables::Dictionary;

/// How particle names are ordered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum OrderingMode {
    /// Bytewise lexicographic order of the names.
    TrueLex,
    /// Line order of the dictionary; unlisted names go last.
    #[default]
    Dict,
}

impl fmt::Display for OrderingMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrderingMode::TrueLex => "lex",
            OrderingMode::Dict => "dict",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown ordering mode `{0}` (expected `lex` or `dict`)")]
pub struct UnknownOrderingMode(pub String);

impl FromStr for OrderingMode {
    type Err = UnknownOrderingMode;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lex" | "true-lex" => Ok(OrderingMode::TrueLex),
            "dict" => Ok(OrderingMode::Dict),
            _ => Err(UnknownOrderingMode(s.to_string())),
        }
    }
}

/// Replaces every listed name with its dictionary key.
pub fn resolve_synonyms(r: &Reaction, dict: &Dictionary) -> Reaction {
    Reaction {
        initial: r.initial.iter().map(|n| resolve_node(n, dict)).collect(),
        final_state: resolve_fs(&r.final_state, dict),
    }
}

fn resolve_node(node: &ParticleNode, dict: &Dictionary) -> ParticleNode {
    ParticleNode {
        name: if node.is_compo() {
            node.name.clone()
        } else {
            dict.resolve(&node.name).to_string()
        },
        count: node.count,
        decay: node.decay.as_ref().map(|d| resolve_fs(d, dict)),
    }
}

fn resolve_fs(fs: &FinalState, dict: &Dictionary) -> FinalState {
    map_groups(fs, |seq| {
        seq.iter().map(|n| resolve_node(n, dict)).collect()
    })
}

fn map_groups(
    fs: &FinalState,
    mut f: impl FnMut(&[ParticleNode]) -> ParticleSequence,
) -> FinalState {
    FinalState {
        groups: fs
            .groups
            .iter()
            .map(|g| GroupNode::new(g.sign, f(&g.particles)))
            .collect(),
        cc: fs.cc,
    }
}

/// Distributes every grouping node over its alternatives, so that
/// `( E+ + MU+ ) X` becomes `E+ X + MU+ X`.
///
/// Each alternative's sign multiplies into the sign of the group it lands
/// in. Several grouping nodes in one group expand to their cross product,
/// with the leftmost varying slowest. Decays are expanded too.
pub fn expand_groups(fs: &FinalState) -> FinalState {
    FinalState {
        groups: fs.groups.iter().flat_map(expand_group).collect(),
        cc: fs.cc,
    }
}

fn expand_group(group: &GroupNode) -> Vec<GroupNode> {
    let mut partial = vec![GroupNode::new(group.sign, Vec::new())];
    for node in &group.particles {
        if node.is_compo() {
            let alternatives = node
                .decay
                .as_ref()
                .map(expand_groups)
                .map(|fs| fs.groups)
                .unwrap_or_default();
            partial = partial
                .iter()
                .flat_map(|prefix| {
                    alternatives.iter().map(move |alt| {
                        let mut particles = prefix.particles.clone();
                        particles.extend(alt.particles.iter().cloned());
                        GroupNode::new(prefix.sign * alt.sign, particles)
                    })
                })
                .collect();
        } else {
            let node = ParticleNode {
                name: node.name.clone(),
                count: node.count,
                decay: node.decay.as_ref().map(expand_groups),
            };
            for prefix in &mut partial {
                prefix.particles.push(node.clone());
            }
        }
    }
    partial
}

/// Folds decay-free nodes sharing a name into one node carrying the summed
/// count. Nodes with decays are left alone.
pub fn merge_duplicates(r: &Reaction) -> Reaction {
    Reaction {
        initial: merge_seq(&r.initial),
        final_state: merge_fs(&r.final_state),
    }
}

fn merge_seq(seq: &[ParticleNode]) -> ParticleSequence {
    let mut out: ParticleSequence = Vec::with_capacity(seq.len());
    for node in seq {
        if node.decay.is_none() && !node.is_compo() {
            if let Some(prev) = out
                .iter_mut()
                .find(|p| p.decay.is_none() && p.name == node.name)
            {
                prev.count += node.count;
                continue;
            }
        }
        out.push(ParticleNode {
            name: node.name.clone(),
            count: node.count,
            decay: node.decay.as_ref().map(merge_fs),
        });
    }
    out
}

fn merge_fs(fs: &FinalState) -> FinalState {
    map_groups(fs, merge_seq)
}

/// Total order on particle names under `mode`.
///
/// In dictionary mode, synonyms of one group share a rank; they fall back to
/// byte order so the relation stays antisymmetric.
pub fn compare_names(a: &str, b: &str, mode: OrderingMode, dict: &Dictionary) -> Ordering {
    match mode {
        OrderingMode::TrueLex => a.as_bytes().cmp(b.as_bytes()),
        OrderingMode::Dict => match (dict.rank(a), dict.rank(b)) {
            (Some(x), Some(y)) => x.cmp(&y).then_with(|| a.as_bytes().cmp(b.as_bytes())),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => a.as_bytes().cmp(b.as_bytes()),
        },
    }
}

/// Comparison context for whole subtrees.
#[derive(Clone, Copy)]
struct Order<'d> {
    mode: OrderingMode,
    dict: &'d Dictionary,
}

impl Order<'_> {
    /// Name first; then decay-free before decaying; then decay contents;
    /// then count.
    fn node(&self, a: &ParticleNode, b: &ParticleNode) -> Ordering {
        compare_names(&a.name, &b.name, self.mode, self.dict)
            .then_with(|| match (&a.decay, &b.decay) {
                (None, None) => Ordering::Equal,
                (None, Some(_)) => Ordering::Less,
                (Some(_), None) => Ordering::Greater,
                (Some(x), Some(y)) => self.final_state(x, y),
            })
            .then_with(|| a.count.cmp(&b.count))
    }

    /// Elementwise; a proper prefix orders first.
    fn sequence(&self, a: &[ParticleNode], b: &[ParticleNode]) -> Ordering {
        a.iter()
            .zip(b)
            .map(|(x, y)| self.node(x, y))
            .find(|o| o.is_ne())
            .unwrap_or_else(|| a.len().cmp(&b.len()))
    }

    /// Positive groups before negative ones, then by particle sequence.
    fn group(&self, a: &GroupNode, b: &GroupNode) -> Ordering {
        a.sign
            .cmp(&b.sign)
            .then_with(|| self.sequence(&a.particles, &b.particles))
    }

    fn final_state(&self, a: &FinalState, b: &FinalState) -> Ordering {
        a.groups
            .iter()
            .zip(&b.groups)
            .map(|(x, y)| self.group(x, y))
            .find(|o| o.is_ne())
            .unwrap_or_else(|| a.groups.len().cmp(&b.groups.len()))
            .then_with(|| a.cc.cmp(&b.cc))
    }

    fn sort_seq(&self, seq: &[ParticleNode]) -> ParticleSequence {
        let mut out: ParticleSequence = seq
            .iter()
            .map(|n| ParticleNode {
                name: n.name.clone(),
                count: n.count,
                decay: n.decay.as_ref().map(|d| self.sort_fs(d)),
            })
            .collect();
        out.sort_by(|a, b| self.node(a, b));
        out
    }

    fn sort_fs(&self, fs: &FinalState) -> FinalState {
        let mut sorted = map_groups(fs, |seq| self.sort_seq(seq));
        sorted.groups.sort_by(|a, b| self.group(a, b));
        sorted
    }
}

/// Sorts particles within every sequence and groups within every final
/// state, innermost decays first. Sorting is stable.
pub fn sort_reaction(r: &Reaction, mode: OrderingMode, dict: &Dictionary) -> Reaction {
    let order = Order { mode, dict };
    Reaction {
        initial: order.sort_seq(&r.initial),
        final_state: order.sort_fs(&r.final_state),
    }
}

/// Synonym resolution, bracket expansion, duplicate merging, then sorting.
pub fn canonicalize(r: &Reaction, mode: OrderingMode, dict: &Dictionary) -> Reaction {
    let resolved = resolve_synonyms(r, dict);
    let expanded = Reaction {
        initial: resolved.initial,
        final_state: expand_groups(&resolved.final_state),
    };
    sort_reaction(&merge_duplicates(&expanded), mode, dict)
}
