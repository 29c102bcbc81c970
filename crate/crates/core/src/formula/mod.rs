//! The formula language shared by every other module.
//!
//! Formulas cover propositional connectives, the alethic modalities, Prior-style
//! sentential tense operators, first-order quantification over individuals and
//! second-order quantification over properties, together with the positivity
//! predicate `Pos(F)`, application `F(x)` and essence `Ess(F,x)`.
//!
//! Values are immutable once built; all operations return fresh trees.

mod normalize;
mod parse;
mod render;
mod subst;

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub use normalize::normalize;
pub use parse::{parse, parse_with, ParseError, ParseErrorKind};
pub use render::{render, render_sugared};
pub use subst::{alpha_equal, fresh_name, substitute_atom, substitute_individual, substitute_property, SubstError};

/// Property names with a fixed meaning: God-likeness and necessary existence.
pub const NAMED_PROPERTIES: [&str; 2] = ["G", "NE"];

/// Direction of a tense operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tense {
    Past,
    Future,
}

impl Tense {
    pub fn reversed(self) -> Tense {
        match self {
            Tense::Past => Tense::Future,
            Tense::Future => Tense::Past,
        }
    }
}

/// Universal or existential reading of a quantifier or tense operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mode {
    Universal,
    Existential,
}

impl Mode {
    pub fn dual(self) -> Mode {
        match self {
            Mode::Universal => Mode::Existential,
            Mode::Existential => Mode::Universal,
        }
    }
}

/// A term denoting an individual.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum IndTerm {
    Var(String),
    Const(String),
}

impl IndTerm {
    pub fn var(name: impl Into<String>) -> Self {
        IndTerm::Var(name.into())
    }

    pub fn name(&self) -> &str {
        match self {
            IndTerm::Var(n) | IndTerm::Const(n) => n,
        }
    }
}

/// The base of a property term: a registered name or a property variable.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PropBase {
    Named(String),
    Var(String),
}

/// A property term. Negation is a flag, so a doubly negated term cannot exist.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PropTerm {
    pub base: PropBase,
    pub negated: bool,
}

impl PropTerm {
    pub fn named(name: impl Into<String>) -> Self {
        PropTerm { base: PropBase::Named(name.into()), negated: false }
    }

    pub fn var(name: impl Into<String>) -> Self {
        PropTerm { base: PropBase::Var(name.into()), negated: false }
    }

    /// `~t`, collapsing `~~t` to `t`.
    pub fn negate(mut self) -> Self {
        self.negated = !self.negated;
        self
    }

    pub fn base_name(&self) -> &str {
        match &self.base {
            PropBase::Named(n) | PropBase::Var(n) => n,
        }
    }

    pub fn var_name(&self) -> Option<&str> {
        match &self.base {
            PropBase::Var(n) => Some(n),
            PropBase::Named(_) => None,
        }
    }
}

/// Binder kinds. Individual and property variables share one namespace but a
/// name is never used at both kinds within a well-formed formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarKind {
    Individual,
    Property,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    /// Propositional atom (no arguments) or predicate.
    Atom(String, Vec<IndTerm>),
    /// `Pos(F)`.
    Positive(PropTerm),
    /// `F(x)`.
    Apply(PropTerm, IndTerm),
    /// `Ess(F,x)`.
    Essence(PropTerm, IndTerm),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Necessary(Box<Formula>),
    Possible(Box<Formula>),
    Temporal(Tense, Mode, Box<Formula>),
    IQuant(Mode, String, Box<Formula>),
    PQuant(Mode, String, Box<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Self {
        Formula::Atom(name.into(), Vec::new())
    }

    pub fn pred(name: impl Into<String>, args: Vec<IndTerm>) -> Self {
        Formula::Atom(name.into(), args)
    }

    pub fn positive(t: PropTerm) -> Self {
        Formula::Positive(t)
    }

    pub fn apply(t: PropTerm, x: IndTerm) -> Self {
        Formula::Apply(t, x)
    }

    pub fn essence(t: PropTerm, x: IndTerm) -> Self {
        Formula::Essence(t, x)
    }

    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Self {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn necessary(f: Formula) -> Self {
        Formula::Necessary(Box::new(f))
    }

    pub fn possible(f: Formula) -> Self {
        Formula::Possible(Box::new(f))
    }

    pub fn temporal(tense: Tense, mode: Mode, f: Formula) -> Self {
        Formula::Temporal(tense, mode, Box::new(f))
    }

    pub fn forall(var: impl Into<String>, f: Formula) -> Self {
        Formula::IQuant(Mode::Universal, var.into(), Box::new(f))
    }

    pub fn exists(var: impl Into<String>, f: Formula) -> Self {
        Formula::IQuant(Mode::Existential, var.into(), Box::new(f))
    }

    pub fn forall_prop(var: impl Into<String>, f: Formula) -> Self {
        Formula::PQuant(Mode::Universal, var.into(), Box::new(f))
    }

    pub fn exists_prop(var: impl Into<String>, f: Formula) -> Self {
        Formula::PQuant(Mode::Existential, var.into(), Box::new(f))
    }

    /// Immediate subformulas, left to right.
    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Atom(..) | Formula::Positive(_) | Formula::Apply(..) | Formula::Essence(..) => Vec::new(),
            Formula::Not(a)
            | Formula::Necessary(a)
            | Formula::Possible(a)
            | Formula::Temporal(_, _, a)
            | Formula::IQuant(_, _, a)
            | Formula::PQuant(_, _, a) => alloc::vec![a.as_ref()],
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                alloc::vec![a.as_ref(), b.as_ref()]
            }
        }
    }

    /// Rebuilds this node with each immediate subformula mapped through `f`.
    pub fn map_children(&self, mut f: impl FnMut(&Formula) -> Formula) -> Formula {
        let b = |x: Formula| Box::new(x);
        match self {
            Formula::Atom(..) | Formula::Positive(_) | Formula::Apply(..) | Formula::Essence(..) => self.clone(),
            Formula::Not(a) => Formula::Not(b(f(a))),
            Formula::Necessary(a) => Formula::Necessary(b(f(a))),
            Formula::Possible(a) => Formula::Possible(b(f(a))),
            Formula::Temporal(t, m, a) => Formula::Temporal(*t, *m, b(f(a))),
            Formula::IQuant(m, v, a) => Formula::IQuant(*m, v.clone(), b(f(a))),
            Formula::PQuant(m, v, a) => Formula::PQuant(*m, v.clone(), b(f(a))),
            Formula::And(x, y) => {
                let x = f(x);
                Formula::And(b(x), b(f(y)))
            }
            Formula::Or(x, y) => {
                let x = f(x);
                Formula::Or(b(x), b(f(y)))
            }
            Formula::Implies(x, y) => {
                let x = f(x);
                Formula::Implies(b(x), b(f(y)))
            }
            Formula::Iff(x, y) => {
                let x = f(x);
                Formula::Iff(b(x), b(f(y)))
            }
        }
    }

    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    /// Nesting depth of `[]`/`<>`.
    pub fn modal_depth(&self) -> usize {
        let inner = self.children().iter().map(|c| c.modal_depth()).max().unwrap_or(0);
        match self {
            Formula::Necessary(_) | Formula::Possible(_) => inner + 1,
            _ => inner,
        }
    }

    /// Free individual variables.
    pub fn free_individuals(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        collect_free(self, &mut Vec::new(), &mut out, VarKind::Individual);
        out
    }

    /// Free property variables.
    pub fn free_properties(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        collect_free(self, &mut Vec::new(), &mut out, VarKind::Property);
        out
    }

    /// Free variables of both kinds.
    pub fn free_variables(&self) -> BTreeSet<String> {
        let mut out = self.free_individuals();
        out.extend(self.free_properties());
        out
    }

    pub fn is_closed(&self) -> bool {
        self.free_individuals().is_empty() && self.free_properties().is_empty()
    }

    /// Every binder name used anywhere in the formula.
    pub fn bound_names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.walk(&mut |f| {
            if let Formula::IQuant(_, v, _) | Formula::PQuant(_, v, _) = f {
                out.insert(v.clone());
            }
        });
        out
    }

    /// Names of zero-argument atoms.
    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.walk(&mut |f| {
            if let Formula::Atom(n, args) = f {
                if args.is_empty() {
                    out.insert(n.clone());
                }
            }
        });
        out
    }

    /// Pre-order traversal.
    pub fn walk(&self, visit: &mut impl FnMut(&Formula)) {
        visit(self);
        for c in self.children() {
            c.walk(visit);
        }
    }

    /// True when the formula uses only atoms, connectives, `[]` and `<>`.
    pub fn is_propositional_modal(&self) -> bool {
        self.find_non_modal().is_none()
    }

    /// The first subformula (pre-order) outside the propositional-modal fragment.
    pub fn find_non_modal(&self) -> Option<&Formula> {
        match self {
            Formula::Atom(_, args) if args.is_empty() => None,
            Formula::Atom(..)
            | Formula::Positive(_)
            | Formula::Apply(..)
            | Formula::Essence(..)
            | Formula::Temporal(..)
            | Formula::IQuant(..)
            | Formula::PQuant(..) => Some(self),
            _ => self.children().into_iter().find_map(|c| c.find_non_modal()),
        }
    }

    pub fn has_temporal(&self) -> bool {
        let mut found = false;
        self.walk(&mut |f| found |= matches!(f, Formula::Temporal(..)));
        found
    }
}

fn collect_free(f: &Formula, bound: &mut Vec<(String, VarKind)>, out: &mut BTreeSet<String>, kind: VarKind) {
    let is_bound = |bound: &Vec<(String, VarKind)>, n: &str, k: VarKind| bound.iter().any(|(b, bk)| b == n && *bk == k);
    let ind = |t: &IndTerm, bound: &Vec<(String, VarKind)>, out: &mut BTreeSet<String>| {
        if kind == VarKind::Individual {
            if let IndTerm::Var(n) = t {
                if !is_bound(bound, n, VarKind::Individual) {
                    out.insert(n.clone());
                }
            }
        }
    };
    let prop = |t: &PropTerm, bound: &Vec<(String, VarKind)>, out: &mut BTreeSet<String>| {
        if kind == VarKind::Property {
            if let PropBase::Var(n) = &t.base {
                if !is_bound(bound, n, VarKind::Property) {
                    out.insert(n.clone());
                }
            }
        }
    };
    match f {
        Formula::Atom(_, args) => args.iter().for_each(|a| ind(a, bound, out)),
        Formula::Positive(t) => prop(t, bound, out),
        Formula::Apply(t, x) | Formula::Essence(t, x) => {
            prop(t, bound, out);
            ind(x, bound, out);
        }
        Formula::IQuant(_, v, body) => {
            bound.push((v.clone(), VarKind::Individual));
            collect_free(body, bound, out, kind);
            bound.pop();
        }
        Formula::PQuant(_, v, body) => {
            bound.push((v.clone(), VarKind::Property));
            collect_free(body, bound, out, kind);
            bound.pop();
        }
        _ => {
            for c in f.children() {
                collect_free(c, bound, out, kind);
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self))
    }
}

impl fmt::Display for PropTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            f.write_str("~")?;
        }
        f.write_str(self.base_name())
    }
}

impl fmt::Display for IndTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn double_negation_collapses() {
        let t = PropTerm::var("phi").negate().negate();
        assert_eq!(t, PropTerm::var("phi"));
        assert!(PropTerm::named("G").negate().negated);
    }

    #[test]
    fn free_variables_respect_kind() {
        let f = parse("allp F. Pos(F) -> F(x)").unwrap();
        assert_eq!(f.free_individuals().into_iter().collect::<Vec<_>>(), ["x"]);
        assert!(f.free_properties().is_empty());
        let g = parse("ex x. phi(x) & psi(y)").unwrap();
        assert_eq!(g.free_properties().len(), 2);
        assert_eq!(g.free_individuals().into_iter().collect::<Vec<_>>(), ["y"]);
    }

    #[test]
    fn fragment_detection() {
        assert!(parse("[]p -> <>(q & ~r)").unwrap().is_propositional_modal());
        let f = parse("p & A- q").unwrap();
        assert!(matches!(f.find_non_modal(), Some(Formula::Temporal(..))));
        assert_eq!(parse("[][]p | <>q").unwrap().modal_depth(), 2);
    }
}
