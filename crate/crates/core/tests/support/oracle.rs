//! Brute-force meaning of a final state with grouping brackets.
//!
//! Every grouping node offers a list of options; a group's outcomes are all
//! index tuples over those options, enumerated with a mixed-radix counter.
//! Each outcome is a sign and a sorted multiset of particle keys, where a
//! decaying particle's key embeds the oracle result of its decay.

use reacproc::model::{FinalState, GroupNode, ParticleNode};

pub type Outcome = (i32, Vec<String>);

/// Sorted multiset of outcomes.
pub fn outcomes(fs: &FinalState) -> Vec<Outcome> {
    let mut out: Vec<Outcome> = fs.groups.iter().flat_map(group_outcomes).collect();
    out.sort();
    out
}

fn node_options(node: &ParticleNode) -> Vec<Outcome> {
    if node.is_compo() {
        return outcomes(node.decay.as_ref().unwrap());
    }
    let key = match &node.decay {
        None => node.name.clone(),
        Some(decay) => format!("{}<{:?}>", node.name, outcomes(decay)),
    };
    vec![(1, vec![key; node.count.max(1) as usize])]
}

fn group_outcomes(group: &GroupNode) -> Vec<Outcome> {
    let options: Vec<Vec<Outcome>> = group.particles.iter().map(node_options).collect();
    let total: usize = options.iter().map(Vec::len).product();
    let mut out = Vec::with_capacity(total);
    for mut index in 0..total {
        let mut sign = group.sign.factor();
        let mut names = Vec::new();
        for opts in options.iter().rev() {
            let (s, n) = &opts[index % opts.len()];
            index /= opts.len();
            sign *= s;
            names.extend(n.iter().cloned());
        }
        names.sort();
        out.push((sign, names));
    }
    out
}
