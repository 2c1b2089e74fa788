//! Conservation-law checks over canonical reactions.
//!
//! Every top-level alternative group is checked against the initial state on
//! its own, since alternatives describe distinct outcomes. Every decaying
//! particle is then checked against each of its decay groups, recursively.
//! A particle's own quantum numbers enter the enclosing sum; its decay
//! products do not. Group signs and the charge-conjugate flag do not affect
//! the checks.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::model::{FinalState, ParticleNode, Reaction};
use crate::tables::{Component, PropertyTable};

/// How the initial-state sum must relate to the final-state sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    /// initial == final
    Equal,
    /// initial <= final
    AtMost,
    /// initial >= final
    AtLeast,
}

impl Relation {
    /// `0`, `-1` or `+1`.
    pub fn code(self) -> i32 {
        match self {
            Relation::Equal => 0,
            Relation::AtMost => -1,
            Relation::AtLeast => 1,
        }
    }

    pub fn from_code(code: i32) -> Option<Relation> {
        match code {
            0 => Some(Relation::Equal),
            -1 => Some(Relation::AtMost),
            1 => Some(Relation::AtLeast),
            _ => None,
        }
    }

    pub fn holds(self, initial: i64, final_: i64) -> bool {
        match self {
            Relation::Equal => initial == final_,
            Relation::AtMost => initial <= final_,
            Relation::AtLeast => initial >= final_,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Relation::Equal => "==",
            Relation::AtMost => "<=",
            Relation::AtLeast => ">=",
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Equal => "eq",
            Relation::AtMost => "le",
            Relation::AtLeast => "ge",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown relation `{0}` (expected eq, le or ge)")]
pub struct UnknownRelation(pub String);

impl FromStr for Relation {
    type Err = UnknownRelation;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "eq" => Ok(Relation::Equal),
            "le" => Ok(Relation::AtMost),
            "ge" => Ok(Relation::AtLeast),
            _ => Err(UnknownRelation(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Law {
    pub name: String,
    pub component: Component,
    pub relation: Relation,
}

impl Law {
    pub fn new(component: Component, relation: Relation) -> Law {
        Law {
            name: component.law_name().to_string(),
            component,
            relation,
        }
    }

    /// All nine components as equalities.
    pub fn defaults() -> Vec<Law> {
        Component::ALL
            .into_iter()
            .map(|c| Law::new(c, Relation::Equal))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Accept,
    Reject,
    Unknown,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Accept => "ACCEPT",
            Status::Reject => "REJECT",
            Status::Unknown => "UNKNOWN",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub law: String,
    pub relation: Relation,
    /// Where the failing comparison sits, e.g. `final[0].W+.decay[2]`.
    pub location: String,
    pub initial_sum: i64,
    pub final_sum: i64,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} at {}: {} {} {} fails",
            self.law,
            self.location,
            self.initial_sum,
            self.relation.symbol(),
            self.final_sum
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown particle `{0}`")]
pub struct UnknownParticle(pub String);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub status: Status,
    pub violations: Vec<Violation>,
    pub unknown_names: Vec<String>,
}

impl Verdict {
    pub fn is_accept(&self) -> bool {
        self.status == Status::Accept
    }

    /// Distinct law names with at least one violation, in first-seen order.
    pub fn violated_laws(&self) -> Vec<&str> {
        let mut laws: Vec<&str> = Vec::new();
        for v in &self.violations {
            if !laws.contains(&v.law.as_str()) {
                laws.push(&v.law);
            }
        }
        laws
    }
}

/// Sum of `count * component` over the sequence. Decays are ignored.
pub fn state_sum(
    seq: &[ParticleNode],
    component: Component,
    table: &PropertyTable,
) -> Result<i64, UnknownParticle> {
    seq.iter().try_fold(0i64, |acc, node| {
        let qv = table
            .get(&node.name)
            .ok_or_else(|| UnknownParticle(node.name.clone()))?;
        Ok(acc + i64::from(node.count) * i64::from(qv.get(component)))
    })
}

/// Violations of one law anywhere in the reaction. Fails on the first
/// particle missing from the table.
pub fn test_reaction(
    r: &Reaction,
    law: &Law,
    table: &PropertyTable,
) -> Result<Vec<Violation>, UnknownParticle> {
    let mut violations = Vec::new();
    let initial = state_sum(&r.initial, law.component, table)?;
    check_final_state(
        &r.final_state,
        initial,
        "final",
        law,
        table,
        &mut violations,
    )?;
    Ok(violations)
}

fn check_final_state(
    fs: &FinalState,
    parent_sum: i64,
    path: &str,
    law: &Law,
    table: &PropertyTable,
    out: &mut Vec<Violation>,
) -> Result<(), UnknownParticle> {
    for (i, group) in fs.groups.iter().enumerate() {
        let location = format!("{path}[{i}]");
        let sum = state_sum(&group.particles, law.component, table)?;
        if !law.relation.holds(parent_sum, sum) {
            out.push(Violation {
                law: law.name.clone(),
                relation: law.relation,
                location: location.clone(),
                initial_sum: parent_sum,
                final_sum: sum,
            });
        }
        for node in &group.particles {
            if let Some(decay) = &node.decay {
                let own = table
                    .get(&node.name)
                    .map(|qv| i64::from(qv.get(law.component)))
                    .ok_or_else(|| UnknownParticle(node.name.clone()))?;
                let decay_path = format!("{location}.{}.decay", node.name);
                check_final_state(decay, own, &decay_path, law, table, out)?;
            }
        }
    }
    Ok(())
}

/// Runs every law. Evaluation stops at the first unknown particle.
pub fn check_all_laws(r: &Reaction, laws: &[Law], table: &PropertyTable) -> Verdict {
    let mut violations = Vec::new();
    for law in laws {
        match test_reaction(r, law, table) {
            Ok(v) => violations.extend(v),
            Err(UnknownParticle(name)) => {
                return Verdict {
                    status: Status::Unknown,
                    violations,
                    unknown_names: vec![name],
                }
            }
        }
    }
    Verdict {
        status: if violations.is_empty() {
            Status::Accept
        } else {
            Status::Reject
        },
        violations,
        unknown_names: Vec::new(),
    }
}
