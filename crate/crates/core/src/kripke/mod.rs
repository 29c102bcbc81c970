//! Finite Kripke models, frame classes and brute-force semantic oracles.

mod bruteforce;
mod elimination;
mod enumerate;
mod eval;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

pub use bruteforce::{bruteforce_validity, bruteforce_validity_with, BruteBounds, BruteError, BruteVerdict};
pub use elimination::{elimination_sat, EliminationError};
pub use enumerate::{
    canonical_frames, enumerate_frames, enumerate_models, EnumerateError, ModelStream, MAX_ENUM_WORLDS,
};
pub use eval::{eval, eval_with, Assignment, EvalError, EvalOptions};

/// Set of domain elements at one world, bit `i` for element `i`.
pub type DomainMask = u64;

/// A property extension: one domain mask per world.
pub type Extension = Vec<DomainMask>;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KripkeModel {
    pub worlds: Vec<String>,
    /// Successor lists, sorted and duplicate-free.
    pub access: Vec<Vec<usize>>,
    /// Worlds from earliest to latest, when the model carries a time line.
    pub time: Option<Vec<usize>>,
    pub domain: Vec<String>,
    /// Facts `(world, predicate, arguments)`; an atom has no arguments.
    pub valuation: BTreeSet<(usize, String, Vec<usize>)>,
    pub extensions: BTreeMap<String, Extension>,
    /// Per world, the extensions that count as positive there.
    pub positivity: Option<Vec<BTreeSet<Extension>>>,
}

impl KripkeModel {
    pub fn new<S: Into<String>>(worlds: impl IntoIterator<Item = S>) -> Self {
        let worlds: Vec<String> = worlds.into_iter().map(Into::into).collect();
        let n = worlds.len();
        KripkeModel { worlds, access: alloc::vec![Vec::new(); n], ..Default::default() }
    }

    pub fn len(&self) -> usize {
        self.worlds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.worlds.is_empty()
    }

    pub fn world(&self, name: &str) -> Option<usize> {
        self.worlds.iter().position(|w| w == name)
    }

    pub fn individual(&self, name: &str) -> Option<usize> {
        self.domain.iter().position(|d| d == name)
    }

    pub fn add_access(&mut self, from: usize, to: usize) {
        let succ = &mut self.access[from];
        if let Err(i) = succ.binary_search(&to) {
            succ.insert(i, to);
        }
    }

    pub fn accesses(&self, from: usize, to: usize) -> bool {
        self.access[from].binary_search(&to).is_ok()
    }

    pub fn set_atom(&mut self, world: usize, atom: &str) {
        self.valuation.insert((world, atom.into(), Vec::new()));
    }

    pub fn atom_holds(&self, world: usize, atom: &str) -> bool {
        self.fact_holds(world, atom, &[])
    }

    pub fn fact_holds(&self, world: usize, pred: &str, args: &[usize]) -> bool {
        self.valuation
            .range((world, String::new(), Vec::new())..)
            .take_while(|(w, _, _)| *w == world)
            .any(|(_, p, a)| p == pred && a == args)
    }

    /// The relation as a list of pairs in lexicographic order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.access.iter().enumerate().flat_map(|(i, s)| s.iter().map(move |&j| (i, j))).collect()
    }

    pub fn full_domain_mask(&self) -> DomainMask {
        if self.domain.len() >= 64 {
            u64::MAX
        } else {
            (1u64 << self.domain.len()) - 1
        }
    }

    /// Frame properties of the accessibility relation and the time line.
    pub fn frame_properties(&self) -> BTreeSet<FrameProperty> {
        check_frame_class(self)
    }
}

/// Structural properties reported by [`check_frame_class`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FrameProperty {
    Reflexive,
    Symmetric,
    Transitive,
    Serial,
    Euclidean,
    Equivalence,
    /// The time line is a strict linear order over all worlds.
    LinearTimeValid,
}

impl fmt::Display for FrameProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FrameProperty::Reflexive => "reflexive",
            FrameProperty::Symmetric => "symmetric",
            FrameProperty::Transitive => "transitive",
            FrameProperty::Serial => "serial",
            FrameProperty::Euclidean => "euclidean",
            FrameProperty::Equivalence => "equivalence",
            FrameProperty::LinearTimeValid => "linear-time-valid",
        })
    }
}

pub fn check_frame_class(m: &KripkeModel) -> BTreeSet<FrameProperty> {
    let n = m.len();
    let r = |i: usize, j: usize| m.accesses(i, j);
    let all = |p: &dyn Fn(usize, usize, usize) -> bool| (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| p(i, j, k))));
    let mut out = BTreeSet::new();
    let reflexive = (0..n).all(|i| r(i, i));
    let symmetric = all(&|i, j, _| !r(i, j) || r(j, i));
    let transitive = all(&|i, j, k| !(r(i, j) && r(j, k)) || r(i, k));
    let serial = (0..n).all(|i| !m.access[i].is_empty());
    let euclidean = all(&|i, j, k| !(r(i, j) && r(i, k)) || r(j, k));
    for (flag, p) in [
        (reflexive, FrameProperty::Reflexive),
        (symmetric, FrameProperty::Symmetric),
        (transitive, FrameProperty::Transitive),
        (serial, FrameProperty::Serial),
        (euclidean, FrameProperty::Euclidean),
        (reflexive && symmetric && transitive, FrameProperty::Equivalence),
    ] {
        if flag {
            out.insert(p);
        }
    }
    if let Some(t) = &m.time {
        let mut seen: Vec<usize> = t.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() == t.len() && t.len() == n && t.iter().all(|&w| w < n) {
            out.insert(FrameProperty::LinearTimeValid);
        }
    }
    out
}

/// Frame classes matching the systems K, T, S4 and S5.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FrameClass {
    All,
    Reflexive,
    Preorder,
    Equivalence,
}

impl FrameClass {
    /// Whether the relation given as `n` successor masks belongs to the class.
    pub fn admits_masks(self, succ: &[u64]) -> bool {
        let n = succ.len();
        let r = |i: usize, j: usize| succ[i] >> j & 1 == 1;
        let reflexive = || (0..n).all(|i| r(i, i));
        let transitive = || (0..n).all(|i| (0..n).filter(|&j| r(i, j)).all(|j| succ[j] & !succ[i] == 0));
        let symmetric = || (0..n).all(|i| (0..n).all(|j| !r(i, j) || r(j, i)));
        match self {
            FrameClass::All => true,
            FrameClass::Reflexive => reflexive(),
            FrameClass::Preorder => reflexive() && transitive(),
            FrameClass::Equivalence => reflexive() && transitive() && symmetric(),
        }
    }

    pub fn admits(self, m: &KripkeModel) -> bool {
        let succ: Vec<u64> = m.access.iter().map(|s| s.iter().fold(0, |acc, &j| acc | 1 << j)).collect();
        m.len() <= 64 && self.admits_masks(&succ)
    }
}

/// The normal modal systems the semantic and tableau layers decide.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ModalSystem {
    K,
    T,
    S4,
    S5,
}

impl ModalSystem {
    pub const ALL: [ModalSystem; 4] = [ModalSystem::K, ModalSystem::T, ModalSystem::S4, ModalSystem::S5];

    pub fn frame_class(self) -> FrameClass {
        match self {
            ModalSystem::K => FrameClass::All,
            ModalSystem::T => FrameClass::Reflexive,
            ModalSystem::S4 => FrameClass::Preorder,
            ModalSystem::S5 => FrameClass::Equivalence,
        }
    }
}

impl fmt::Display for ModalSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModalSystem::K => "K",
            ModalSystem::T => "T",
            ModalSystem::S4 => "S4",
            ModalSystem::S5 => "S5",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnknownSystem(pub String);

impl fmt::Display for UnknownSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown modal system `{}` (expected K, T, S4 or S5)", self.0)
    }
}

impl core::error::Error for UnknownSystem {}

impl FromStr for ModalSystem {
    type Err = UnknownSystem;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "K" => Ok(ModalSystem::K),
            "T" => Ok(ModalSystem::T),
            "S4" => Ok(ModalSystem::S4),
            "S5" => Ok(ModalSystem::S5),
            other => Err(UnknownSystem(other.into())),
        }
    }
}

/// A world count that suffices for a model of `f` in the system, when `f`
/// is satisfiable at all; `None` outside the propositional-modal fragment.
///
/// With `k` distinct diamonds and `b` distinct boxes in the negation normal
/// form and modal depth `d`: K and T need trees of depth `d` and branching
/// `k`; S4 needs depth `(b + 1) * k`; S5 needs one cluster of `k + 1` worlds.
pub fn small_model_bound(f: &crate::formula::Formula, sys: ModalSystem) -> Option<usize> {
    use crate::nnf::{Nnf, Node};
    let (nnf, _) = Nnf::build(f).ok()?;
    let k = nnf.nodes.iter().filter(|n| matches!(n, Node::Dia(_))).count();
    let b = nnf.nodes.iter().filter(|n| matches!(n, Node::Box(_))).count();
    let tree = |depth: usize| {
        let mut total = 0usize;
        let mut level = 1usize;
        for _ in 0..=depth {
            total = total.saturating_add(level);
            level = level.saturating_mul(k);
        }
        total
    };
    Some(match sys {
        ModalSystem::K | ModalSystem::T => tree(f.modal_depth()),
        ModalSystem::S4 => tree((b + 1).saturating_mul(k)),
        ModalSystem::S5 => k + 1,
    })
}
