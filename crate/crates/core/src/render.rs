//! Renders reaction trees back to statement text.
//!
//! Every token is separated by exactly one space, so the output of the
//! canonical example reads
//! `e+ e- --> W+ < e+ nu(e) + mu+ nu(mu) + nu(tau) tau+ > W- < QUARK QUARKBAR > ;`.
//! Nodes with count `k > 1` are written as `k` repeated names because the
//! notation has no multiplicity syntax.

use std::fmt;

use crate::model::{FinalState, ParticleNode, Reaction, Sign};

pub fn render_reaction(r: &Reaction) -> String {
    let mut tokens = Vec::new();
    for node in &r.initial {
        push_node(node, &mut tokens);
    }
    tokens.push("-->");
    push_final_state(&r.final_state, &mut tokens);
    tokens.push(";");
    tokens.join(" ")
}

/// Renders a final state without the surrounding statement.
pub fn render_final_state(fs: &FinalState) -> String {
    let mut tokens = Vec::new();
    push_final_state(fs, &mut tokens);
    tokens.join(" ")
}

fn push_final_state<'a>(fs: &'a FinalState, out: &mut Vec<&'a str>) {
    for (i, group) in fs.groups.iter().enumerate() {
        if i > 0 {
            out.push(match group.sign {
                Sign::Plus => "+",
                Sign::Minus => "-",
            });
        }
        // A bare leading `-` does not parse; an empty grouping stands in
        // for the empty first alternative.
        if i == 0
            && group.particles.is_empty()
            && fs.groups.get(1).is_some_and(|g| g.sign == Sign::Minus)
        {
            out.extend(["(", ")"]);
        }
        for node in &group.particles {
            push_node(node, out);
        }
    }
    if fs.cc {
        out.extend(["+", "CC"]);
    }
}

fn push_node<'a>(node: &'a ParticleNode, out: &mut Vec<&'a str>) {
    if node.is_compo() {
        out.push("(");
        if let Some(alts) = &node.decay {
            push_final_state(alts, out);
        }
        out.push(")");
        return;
    }
    for _ in 0..node.count.max(1) {
        out.push(&node.name);
        if let Some(decay) = &node.decay {
            out.push("<");
            push_final_state(decay, out);
            out.push(">");
        }
    }
}

impl fmt::Display for Reaction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_reaction(self))
    }
}
