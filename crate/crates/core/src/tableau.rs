//! Labeled tableaux for K, T, S4 and S5 over the propositional-modal fragment.
//!
//! K, T and S4 build a tree of worlds depth first. Each world is saturated
//! under the non-branching rules, then disjunctions are split in node order,
//! then one successor is created per diamond. S4 successors inherit boxes
//! and are replaced by a link when an ancestor already holds their label.
//! S5 works on a single cluster where every world sees every other.

use crate::formula::Formula;
use crate::kripke::{eval, Assignment, KripkeModel, ModalSystem};
use crate::nnf::{Nnf, Node};
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

type Label = BTreeSet<usize>;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TableauStats {
    pub nodes_expanded: usize,
    pub worlds_created: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Sat,
    Unsat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableauResult {
    pub verdict: Verdict,
    /// Present iff the verdict is `Sat`; the input holds at world 0.
    pub model: Option<KripkeModel>,
    pub stats: TableauStats,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Validity {
    Valid,
    /// The formula fails at world 0 of the model.
    Countermodel(KripkeModel),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidityResult {
    pub validity: Validity,
    pub stats: TableauStats,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TableauError {
    /// A quantifier, tense operator or ontological construct.
    Unsupported(Formula),
    /// The extracted model failed re-evaluation.
    Unverified(String),
}

impl fmt::Display for TableauError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableauError::Unsupported(g) => write!(f, "unsupported construct in tableau input: `{g}`"),
            TableauError::Unverified(s) => {
                write!(f, "internal error: extracted model does not satisfy the input ({s})")
            }
        }
    }
}

impl core::error::Error for TableauError {}

pub fn decide_sat(f: &Formula, sys: ModalSystem) -> Result<TableauResult, TableauError> {
    let (nnf, root) = Nnf::build(f).map_err(TableauError::Unsupported)?;
    let mut search = Search { nnf: &nnf, sys, stats: TableauStats::default(), memo: BTreeMap::new() };
    let init: Label = [root].into_iter().collect();
    let model = match sys {
        ModalSystem::S5 => {
            search.stats.worlds_created += 1;
            search.cluster(alloc::vec![init]).map(|ws| cluster_model(&nnf, &ws))
        }
        _ => {
            let mut ancestors = Vec::new();
            search.world(init, &mut ancestors).map(|t| tree_model(&nnf, &t, sys))
        }
    };
    let stats = search.stats;
    match model {
        None => Ok(TableauResult { verdict: Verdict::Unsat, model: None, stats }),
        Some(m) => {
            match eval(&m, 0, f, &Assignment::default()) {
                Ok(true) => {}
                Ok(false) => return Err(TableauError::Unverified(format!("{f} is false at the root"))),
                Err(e) => return Err(TableauError::Unverified(format!("{e}"))),
            }
            Ok(TableauResult { verdict: Verdict::Sat, model: Some(m), stats })
        }
    }
}

pub fn decide_valid(f: &Formula, sys: ModalSystem) -> Result<ValidityResult, TableauError> {
    let r = decide_sat(&Formula::not(f.clone()), sys)?;
    let validity = match r.model {
        Some(m) => Validity::Countermodel(m),
        None => Validity::Valid,
    };
    Ok(ValidityResult { validity, stats: r.stats })
}

#[derive(Clone, Debug)]
struct WorldTree {
    label: Label,
    children: Vec<Child>,
}

#[derive(Clone, Debug)]
enum Child {
    New(WorldTree),
    /// Back edge to the ancestor at this depth (S4 only).
    Link(usize),
}

struct Search<'a> {
    nnf: &'a Nnf,
    sys: ModalSystem,
    stats: TableauStats,
    memo: BTreeMap<Label, Option<WorldTree>>,
}

impl Search<'_> {
    /// Closes `set` under conjunction and, outside K, the reflexivity rule.
    /// `None` on a clash.
    fn saturate(&self, mut set: Label) -> Option<Label> {
        let reflexive = self.sys != ModalSystem::K;
        loop {
            let mut add = Vec::new();
            for &i in &set {
                match self.nnf.nodes[i] {
                    Node::And(x, y) => add.extend([x, y]),
                    Node::Box(x) if reflexive => add.push(x),
                    _ => {}
                }
            }
            let before = set.len();
            set.extend(add);
            if set.len() == before {
                break;
            }
        }
        let clash = set.iter().any(|&i| match self.nnf.nodes[i] {
            Node::Lit(a, true) => set.iter().any(|&j| self.nnf.nodes[j] == Node::Lit(a, false)),
            _ => false,
        });
        (!clash).then_some(set)
    }

    fn open_disjunction(&self, set: &Label) -> Option<(usize, usize)> {
        set.iter().find_map(|&i| match self.nnf.nodes[i] {
            Node::Or(x, y) if !set.contains(&x) && !set.contains(&y) => Some((x, y)),
            _ => None,
        })
    }

    fn boxes(&self, set: &Label) -> Vec<(usize, usize)> {
        set.iter()
            .filter_map(|&i| match self.nnf.nodes[i] {
                Node::Box(x) => Some((i, x)),
                _ => None,
            })
            .collect()
    }

    fn world(&mut self, init: Label, ancestors: &mut Vec<Label>) -> Option<WorldTree> {
        if self.sys != ModalSystem::S4 {
            if let Some(hit) = self.memo.get(&init) {
                return hit.clone();
            }
        }
        self.stats.worlds_created += 1;
        let r = self.expand(init.clone(), ancestors);
        if self.sys != ModalSystem::S4 {
            self.memo.insert(init, r.clone());
        }
        r
    }

    fn expand(&mut self, set: Label, ancestors: &mut Vec<Label>) -> Option<WorldTree> {
        self.stats.nodes_expanded += 1;
        let set = self.saturate(set)?;
        if let Some((x, y)) = self.open_disjunction(&set) {
            for choice in [x, y] {
                let mut next = set.clone();
                next.insert(choice);
                if let Some(t) = self.expand(next, ancestors) {
                    return Some(t);
                }
            }
            return None;
        }
        let boxes = self.boxes(&set);
        let dias: Vec<usize> = set
            .iter()
            .filter_map(|&i| match self.nnf.nodes[i] {
                Node::Dia(x) => Some(x),
                _ => None,
            })
            .collect();
        ancestors.push(set.clone());
        let mut children = Vec::new();
        for c in dias {
            let mut init: Label = [c].into_iter().collect();
            for &(b, x) in &boxes {
                init.insert(x);
                if self.sys == ModalSystem::S4 {
                    init.insert(b);
                }
            }
            if self.sys == ModalSystem::S4 {
                if let Some(d) = ancestors.iter().position(|a| init.is_subset(a)) {
                    children.push(Child::Link(d));
                    continue;
                }
            }
            match self.world(init, ancestors) {
                Some(t) => children.push(Child::New(t)),
                None => {
                    ancestors.pop();
                    return None;
                }
            }
        }
        ancestors.pop();
        Some(WorldTree { label: set, children })
    }

    fn cluster(&mut self, mut worlds: Vec<Label>) -> Option<Vec<Label>> {
        loop {
            self.stats.nodes_expanded += 1;
            // Saturate every world and share boxes across the cluster.
            loop {
                let mut shared = BTreeSet::new();
                for w in worlds.iter_mut() {
                    *w = self.saturate(core::mem::take(w))?;
                    for (b, x) in self.boxes(w) {
                        shared.insert(b);
                        shared.insert(x);
                    }
                }
                let mut grew = false;
                for w in worlds.iter_mut() {
                    let before = w.len();
                    w.extend(shared.iter().copied());
                    grew |= w.len() != before;
                }
                if !grew {
                    break;
                }
            }
            if let Some((k, (x, y))) =
                worlds.iter().enumerate().find_map(|(k, w)| self.open_disjunction(w).map(|d| (k, d)))
            {
                for choice in [x, y] {
                    let mut next = worlds.clone();
                    next[k].insert(choice);
                    if let Some(ws) = self.cluster(next) {
                        return Some(ws);
                    }
                }
                return None;
            }
            let missing = worlds.iter().find_map(|w| {
                w.iter().find_map(|&i| match self.nnf.nodes[i] {
                    Node::Dia(x) if !worlds.iter().any(|v| v.contains(&x)) => Some(x),
                    _ => None,
                })
            });
            match missing {
                Some(x) => {
                    // Existing worlds first, then a fresh one.
                    for k in 0..worlds.len() {
                        let mut next = worlds.clone();
                        next[k].insert(x);
                        if let Some(ws) = self.cluster(next) {
                            return Some(ws);
                        }
                    }
                    let mut fresh: Label = [x].into_iter().collect();
                    for (b, y) in self.boxes(&worlds[0]) {
                        fresh.insert(b);
                        fresh.insert(y);
                    }
                    self.stats.worlds_created += 1;
                    worlds.push(fresh);
                }
                None => return Some(worlds),
            }
        }
    }
}

fn name(i: usize) -> String {
    format!("w{}", i + 1)
}

fn valuate(nnf: &Nnf, m: &mut KripkeModel, w: usize, label: &Label) {
    for &i in label {
        if let Node::Lit(a, true) = nnf.nodes[i] {
            m.set_atom(w, &nnf.atoms[a]);
        }
    }
}

fn tree_model(nnf: &Nnf, root: &WorldTree, sys: ModalSystem) -> KripkeModel {
    let mut labels = Vec::new();
    let mut edges = Vec::new();
    let mut stack = Vec::new();
    flatten(root, &mut labels, &mut edges, &mut stack);
    let n = labels.len();
    let mut m = KripkeModel::new((0..n).map(name));
    for (a, b) in edges {
        m.add_access(a, b);
    }
    if sys != ModalSystem::K {
        for w in 0..n {
            m.add_access(w, w);
        }
    }
    if sys == ModalSystem::S4 {
        transitive_closure(&mut m);
    }
    for (w, l) in labels.iter().enumerate() {
        valuate(nnf, &mut m, w, l);
    }
    m
}

fn flatten(t: &WorldTree, labels: &mut Vec<Label>, edges: &mut Vec<(usize, usize)>, stack: &mut Vec<usize>) -> usize {
    let id = labels.len();
    labels.push(t.label.clone());
    stack.push(id);
    for c in &t.children {
        match c {
            Child::New(sub) => {
                let cid = flatten(sub, labels, edges, stack);
                edges.push((id, cid));
            }
            Child::Link(depth) => edges.push((id, stack[*depth])),
        }
    }
    stack.pop();
    id
}

fn transitive_closure(m: &mut KripkeModel) {
    let n = m.len();
    let mut reach: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| m.accesses(i, j)).collect()).collect();
    for k in 0..n {
        for i in 0..n {
            if reach[i][k] {
                for j in 0..n {
                    if reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
    }
    for (i, row) in reach.iter().enumerate() {
        for (j, &r) in row.iter().enumerate() {
            if r {
                m.add_access(i, j);
            }
        }
    }
}

fn cluster_model(nnf: &Nnf, worlds: &[Label]) -> KripkeModel {
    let n = worlds.len();
    let mut m = KripkeModel::new((0..n).map(name));
    for i in 0..n {
        for j in 0..n {
            m.add_access(i, j);
        }
    }
    for (w, l) in worlds.iter().enumerate() {
        valuate(nnf, &mut m, w, l);
    }
    m
}
