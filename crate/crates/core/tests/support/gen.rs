//! Seeded random reaction trees for property and acceptance tests.

use rand::seq::SliceRandom;
use rand::Rng;

use reacproc::model::{FinalState, GroupNode, ParticleNode, Reaction, Sign};

/// Key names present in the bundled property table.
pub const TABLE_NAMES: &[&str] = &[
    "gamma",
    "e+",
    "e-",
    "mu+",
    "mu-",
    "tau+",
    "tau-",
    "nu(e)",
    "nu(e)bar",
    "nu(mu)",
    "nu(mu)bar",
    "nu(tau)",
    "nu(tau)bar",
    "W+",
    "W-",
    "Z0",
    "pi+",
    "pi-",
    "pi0",
    "K+",
    "K-",
    "K0",
    "K0bar",
    "p",
    "pbar",
    "n",
    "nbar",
    "Lambda",
    "Sigma+",
    "Sigma-",
    "Xi-",
    "D0",
    "D+",
    "B0",
    "u",
    "dbar",
    "s",
];

/// Mix of keys, synonyms and names absent from every table.
pub const MIXED_NAMES: &[&str] = &[
    "e+", "E+", "POSITRON", "e-", "E-", "mu+", "MU+", "MU-", "TAU+", "NUTAU", "nu(tau)", "NUE",
    "NUMU", "W+", "W-", "Z", "gamma", "GAMMA", "PI+", "pi-", "p", "P", "n", "K+", "QUARK",
    "QUARKBAR", "X", "Y2", "a.b", "q:r/s",
];

#[derive(Debug, Clone, Copy)]
pub struct GenConfig {
    pub names: &'static [&'static str],
    pub max_depth: usize,
    pub max_alternatives: usize,
    pub max_group_len: usize,
    pub max_initial: usize,
    /// Upper bound on particle nodes per reaction.
    pub budget: usize,
    pub compos: bool,
    pub decays: bool,
    pub minus: bool,
    pub cc: bool,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            names: MIXED_NAMES,
            max_depth: 3,
            max_alternatives: 4,
            max_group_len: 6,
            max_initial: 3,
            budget: 30,
            compos: true,
            decays: true,
            minus: true,
            cc: true,
        }
    }
}

struct Gen<'r, R: Rng> {
    rng: &'r mut R,
    cfg: GenConfig,
    budget: usize,
}

impl<R: Rng> Gen<'_, R> {
    fn name(&mut self) -> String {
        self.cfg.names.choose(self.rng).unwrap().to_string()
    }

    fn node(&mut self, depth: usize) -> ParticleNode {
        self.budget = self.budget.saturating_sub(1);
        let nested = depth < self.cfg.max_depth && self.budget > 2;
        let roll: f64 = self.rng.gen();
        if nested && self.cfg.compos && roll < 0.2 {
            ParticleNode::compo(self.final_state(depth + 1, false))
        } else if nested && self.cfg.decays && roll < 0.35 {
            let name = self.name();
            ParticleNode::with_decay(name, self.final_state(depth + 1, false))
        } else {
            ParticleNode::new(self.name())
        }
    }

    fn group(&mut self, depth: usize, sign: Sign) -> GroupNode {
        let len = self
            .rng
            .gen_range(0..=self.cfg.max_group_len)
            .min(self.budget);
        let particles = (0..len).map(|_| self.node(depth)).collect();
        GroupNode::new(sign, particles)
    }

    fn final_state(&mut self, depth: usize, top: bool) -> FinalState {
        let n = self.rng.gen_range(1..=self.cfg.max_alternatives);
        let groups = (0..n)
            .map(|i| {
                let sign = if i > 0 && self.cfg.minus && self.rng.gen_bool(0.3) {
                    Sign::Minus
                } else {
                    Sign::Plus
                };
                self.group(depth, sign)
            })
            .collect();
        FinalState {
            groups,
            cc: top && self.cfg.cc && self.rng.gen_bool(0.1),
        }
    }
}

/// A well-formed reaction whose surface form parses back to the same tree.
pub fn reaction<R: Rng>(rng: &mut R, cfg: &GenConfig) -> Reaction {
    let mut gen = Gen {
        rng,
        cfg: *cfg,
        budget: cfg.budget,
    };
    let n = gen.rng.gen_range(1..=cfg.max_initial);
    let initial = (0..n).map(|_| ParticleNode::new(gen.name())).collect();
    let final_state = gen.final_state(0, true);
    Reaction::new(initial, final_state)
}

/// A final state with no charge-conjugate marker, for expansion tests.
pub fn final_state<R: Rng>(rng: &mut R, cfg: &GenConfig) -> FinalState {
    let mut gen = Gen {
        rng,
        cfg: *cfg,
        budget: cfg.budget,
    };
    gen.final_state(0, false)
}

/// Shuffles every sibling list in the tree: particles of each sequence and
/// groups of each final state.
pub fn shuffle_siblings<R: Rng>(r: &Reaction, rng: &mut R) -> Reaction {
    let mut initial = r.initial.clone();
    initial.shuffle(rng);
    Reaction::new(initial, shuffle_fs(&r.final_state, rng))
}

fn shuffle_fs<R: Rng>(fs: &FinalState, rng: &mut R) -> FinalState {
    let mut groups: Vec<GroupNode> = fs
        .groups
        .iter()
        .map(|g| {
            let mut particles: Vec<ParticleNode> = g
                .particles
                .iter()
                .map(|n| ParticleNode {
                    name: n.name.clone(),
                    count: n.count,
                    decay: n.decay.as_ref().map(|d| shuffle_fs(d, rng)),
                })
                .collect();
            particles.shuffle(rng);
            GroupNode::new(g.sign, particles)
        })
        .collect();
    groups.shuffle(rng);
    FinalState { groups, cc: fs.cc }
}

/// Every sibling list in the tree, addressed by a path of child indices.
/// Used to enumerate all orderings of one list at a time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SiblingList {
    Initial,
    /// Groups of the final state reached by `path`.
    Groups(Vec<Step>),
    /// Particles of group `group` in the final state reached by `path`.
    Particles(Vec<Step>, usize),
}

/// `(group, particle)` descending into that particle's decay.
pub type Step = (usize, usize);

pub fn sibling_lists(r: &Reaction) -> Vec<SiblingList> {
    let mut out = vec![SiblingList::Initial];
    collect_lists(&r.final_state, &mut Vec::new(), &mut out);
    out
}

fn collect_lists(fs: &FinalState, path: &mut Vec<Step>, out: &mut Vec<SiblingList>) {
    out.push(SiblingList::Groups(path.clone()));
    for (gi, g) in fs.groups.iter().enumerate() {
        out.push(SiblingList::Particles(path.clone(), gi));
        for (pi, n) in g.particles.iter().enumerate() {
            if let Some(d) = &n.decay {
                path.push((gi, pi));
                collect_lists(d, path, out);
                path.pop();
            }
        }
    }
}

fn fs_at<'a>(fs: &'a mut FinalState, path: &[Step]) -> &'a mut FinalState {
    path.iter().fold(fs, |fs, &(g, p)| {
        fs.groups[g].particles[p].decay.as_mut().unwrap()
    })
}

pub fn list_len(r: &Reaction, list: &SiblingList) -> usize {
    let mut r = r.clone();
    match list {
        SiblingList::Initial => r.initial.len(),
        SiblingList::Groups(path) => fs_at(&mut r.final_state, path).groups.len(),
        SiblingList::Particles(path, g) => {
            fs_at(&mut r.final_state, path).groups[*g].particles.len()
        }
    }
}

/// Reorders one sibling list by `order` (a permutation of its indices).
pub fn permute_list(r: &Reaction, list: &SiblingList, order: &[usize]) -> Reaction {
    fn apply<T: Clone>(v: &mut Vec<T>, order: &[usize]) {
        let old = v.clone();
        *v = order.iter().map(|&i| old[i].clone()).collect();
    }
    let mut r = r.clone();
    match list {
        SiblingList::Initial => apply(&mut r.initial, order),
        SiblingList::Groups(path) => apply(&mut fs_at(&mut r.final_state, path).groups, order),
        SiblingList::Particles(path, g) => apply(
            &mut fs_at(&mut r.final_state, path).groups[*g].particles,
            order,
        ),
    }
    r
}

/// All permutations of `0..n` (Heap's algorithm).
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut items: Vec<usize> = (0..n).collect();
    let mut out = vec![items.clone()];
    let mut c = vec![0; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                items.swap(0, i);
            } else {
                items.swap(c[i], i);
            }
            out.push(items.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}
