//! Quantifier axioms, checked by code rather than by pattern.
//!
//! Individual quantifiers are described by templates so that a system whose
//! formulas have been rewritten by a transformation keeps a working quantifier
//! logic: the template for `all x. A` in the original system is the formula
//! itself, and a transformation maps it along with every axiom.

use super::pattern::prop_term;
use super::{BindingValue, Bindings};
use crate::formula::{
    alpha_equal, parse, substitute_individual, substitute_property, Formula, IndTerm, Mode, PropBase, PropTerm,
};
use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::mem::discriminant;

/// Placeholder binder of a quantifier template.
pub const BOUND: &str = "x";
/// Placeholder body of a quantifier template.
pub const BODY: &str = "BODY";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quantifiers {
    pub universal: Formula,
    pub existential: Formula,
}

impl Default for Quantifiers {
    fn default() -> Self {
        Quantifiers {
            universal: parse("all x. BODY").expect("template"),
            existential: parse("ex x. BODY").expect("template"),
        }
    }
}

impl Quantifiers {
    pub fn map(&self, f: impl Fn(&Formula) -> Formula) -> Quantifiers {
        Quantifiers { universal: f(&self.universal), existential: f(&self.existential) }
    }

    pub fn universal(&self, x: &str, body: &Formula) -> Formula {
        fill(&self.universal, x, body)
    }

    pub fn existential(&self, x: &str, body: &Formula) -> Formula {
        fill(&self.existential, x, body)
    }

    fn split_universal(&self, f: &Formula) -> Option<(String, Formula)> {
        split(&self.universal, f)
    }

    fn split_existential(&self, f: &Formula) -> Option<(String, Formula)> {
        split(&self.existential, f)
    }
}

/// Instantiates a template. The body is placed under the template's binders
/// on purpose.
fn fill(template: &Formula, x: &str, body: &Formula) -> Formula {
    match template {
        Formula::Atom(n, xs) if n == BODY && xs.is_empty() => body.clone(),
        Formula::IQuant(m, v, b) if v == BOUND => Formula::IQuant(*m, x.into(), Box::new(fill(b, x, body))),
        _ => template.map_children(|c| fill(c, x, body)),
    }
}

fn split(template: &Formula, f: &Formula) -> Option<(String, Formula)> {
    let (x, body) = locate(template, f, None)?;
    alpha_equal(&fill(template, &x, &body), f).then_some((x, body))
}

fn locate(t: &Formula, f: &Formula, x: Option<&str>) -> Option<(String, Formula)> {
    match (t, f) {
        (Formula::Atom(n, xs), _) if n == BODY && xs.is_empty() => Some((x?.into(), f.clone())),
        (Formula::IQuant(m1, v, tb), Formula::IQuant(m2, y, fb)) if v == BOUND => {
            if m1 != m2 {
                return None;
            }
            locate(tb, fb, Some(y))
        }
        _ if discriminant(t) == discriminant(f) => {
            if let (Formula::Temporal(t1, m1, _), Formula::Temporal(t2, m2, _)) = (t, f) {
                if t1 != t2 || m1 != m2 {
                    return None;
                }
            }
            let (tc, fc) = (t.children(), f.children());
            if tc.len() != fc.len() {
                return None;
            }
            tc.into_iter().zip(fc).find_map(|(a, b)| locate(a, b, x))
        }
        _ => None,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum QuantRule {
    /// `all x. A -> A[x:=t]`
    Instantiate,
    /// `A[x:=t] -> ex x. A`
    Generalize,
    /// `all x. (A -> B) -> (A -> all x. B)` with `x` not free in `A`
    Distribute,
    /// `all x. (A -> C) -> (ex x. A -> C)` with `x` not free in `C`
    Eliminate,
    InstantiateProp,
    GeneralizeProp,
    DistributeProp,
    EliminateProp,
}

impl QuantRule {
    pub const ALL: [QuantRule; 8] = [
        QuantRule::Instantiate,
        QuantRule::Generalize,
        QuantRule::Distribute,
        QuantRule::Eliminate,
        QuantRule::InstantiateProp,
        QuantRule::GeneralizeProp,
        QuantRule::DistributeProp,
        QuantRule::EliminateProp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            QuantRule::Instantiate => "UI",
            QuantRule::Generalize => "EG",
            QuantRule::Distribute => "QDIST",
            QuantRule::Eliminate => "EXE",
            QuantRule::InstantiateProp => "UIP",
            QuantRule::GeneralizeProp => "EGP",
            QuantRule::DistributeProp => "QDISTP",
            QuantRule::EliminateProp => "EXEP",
        }
    }

    pub fn from_name(s: &str) -> Option<QuantRule> {
        QuantRule::ALL.into_iter().find(|r| r.name() == s)
    }

    /// Checks that `f` is an instance, given optional bindings of the
    /// quantified variable.
    pub fn check(self, q: &Quantifiers, f: &Formula, bindings: &Bindings) -> Result<(), QuantError> {
        let Formula::Implies(l, r) = f else { return Err(shape("not an implication")) };
        match self {
            QuantRule::Instantiate => {
                let (x, a) = q.split_universal(l).ok_or_else(|| shape("antecedent is not universally quantified"))?;
                let t = ind_binding(bindings, &x)?.or_else(|| find_ind(&a, r, &x)).unwrap_or(IndTerm::var(&*x));
                let inst = substitute_individual(&a, &x, &t).map_err(|e| shape(&format!("{e}")))?;
                expect(&inst, r, "consequent is not the instance")
            }
            QuantRule::Generalize => {
                let (x, a) =
                    q.split_existential(r).ok_or_else(|| shape("consequent is not existentially quantified"))?;
                let t = ind_binding(bindings, &x)?.or_else(|| find_ind(&a, l, &x)).unwrap_or(IndTerm::var(&*x));
                let inst = substitute_individual(&a, &x, &t).map_err(|e| shape(&format!("{e}")))?;
                expect(&inst, l, "antecedent is not the instance")
            }
            QuantRule::Distribute => {
                no_bindings(bindings)?;
                let (x, body) =
                    q.split_universal(l).ok_or_else(|| shape("antecedent is not universally quantified"))?;
                let (Formula::Implies(a1, b), Formula::Implies(a, r2)) = (&body, &**r) else {
                    return Err(shape("expected implications"));
                };
                expect(a1, a, "hypotheses differ")?;
                if a.free_individuals().contains(&x) {
                    return Err(QuantError::SideCondition(format!("`{x}` is free in `{a}`")));
                }
                expect(&q.universal(&x, b), r2, "conclusion is not the quantified consequent")
            }
            QuantRule::Eliminate => {
                no_bindings(bindings)?;
                let (x, body) =
                    q.split_universal(l).ok_or_else(|| shape("antecedent is not universally quantified"))?;
                let (Formula::Implies(a, c1), Formula::Implies(ea, c)) = (&body, &**r) else {
                    return Err(shape("expected implications"));
                };
                expect(c1, c, "conclusions differ")?;
                if c.free_individuals().contains(&x) {
                    return Err(QuantError::SideCondition(format!("`{x}` is free in `{c}`")));
                }
                expect(&q.existential(&x, a), ea, "hypothesis is not the quantified antecedent")
            }
            QuantRule::InstantiateProp => {
                let Formula::PQuant(Mode::Universal, v, a) = &**l else {
                    return Err(shape("antecedent is not a universal property quantification"));
                };
                let t = prop_binding(bindings, v)?.or_else(|| find_prop(a, r, v)).unwrap_or(PropTerm::var(&**v));
                let inst = substitute_property(a, v, &t).map_err(|e| shape(&format!("{e}")))?;
                expect(&inst, r, "consequent is not the instance")
            }
            QuantRule::GeneralizeProp => {
                let Formula::PQuant(Mode::Existential, v, a) = &**r else {
                    return Err(shape("consequent is not an existential property quantification"));
                };
                let t = prop_binding(bindings, v)?.or_else(|| find_prop(a, l, v)).unwrap_or(PropTerm::var(&**v));
                let inst = substitute_property(a, v, &t).map_err(|e| shape(&format!("{e}")))?;
                expect(&inst, l, "antecedent is not the instance")
            }
            QuantRule::DistributeProp => {
                no_bindings(bindings)?;
                let (Formula::PQuant(Mode::Universal, v, body), Formula::Implies(a, r2)) = (&**l, &**r) else {
                    return Err(shape("expected a universal property quantification"));
                };
                let Formula::Implies(a1, b) = &**body else { return Err(shape("expected an implication")) };
                expect(a1, a, "hypotheses differ")?;
                if a.free_properties().contains(v) {
                    return Err(QuantError::SideCondition(format!("`{v}` is free in `{a}`")));
                }
                expect(
                    &Formula::forall_prop(v.clone(), (**b).clone()),
                    r2,
                    "conclusion is not the quantified consequent",
                )
            }
            QuantRule::EliminateProp => {
                no_bindings(bindings)?;
                let (Formula::PQuant(Mode::Universal, v, body), Formula::Implies(ea, c)) = (&**l, &**r) else {
                    return Err(shape("expected a universal property quantification"));
                };
                let Formula::Implies(a, c1) = &**body else { return Err(shape("expected an implication")) };
                expect(c1, c, "conclusions differ")?;
                if c.free_properties().contains(v) {
                    return Err(QuantError::SideCondition(format!("`{v}` is free in `{c}`")));
                }
                expect(
                    &Formula::exists_prop(v.clone(), (**a).clone()),
                    ea,
                    "hypothesis is not the quantified antecedent",
                )
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuantError {
    Shape(String),
    /// A variable occurs free where the rule forbids it.
    SideCondition(String),
}

impl fmt::Display for QuantError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuantError::Shape(s) | QuantError::SideCondition(s) => f.write_str(s),
        }
    }
}

fn shape(s: &str) -> QuantError {
    QuantError::Shape(s.into())
}

fn expect(got: &Formula, want: &Formula, msg: &str) -> Result<(), QuantError> {
    if alpha_equal(got, want) {
        Ok(())
    } else {
        Err(shape(msg))
    }
}

fn no_bindings(b: &Bindings) -> Result<(), QuantError> {
    if b.is_empty() {
        Ok(())
    } else {
        Err(shape("this schema takes no bindings"))
    }
}

fn single<'a>(b: &'a Bindings, var: &str) -> Result<Option<&'a BindingValue>, QuantError> {
    match b.len() {
        0 => Ok(None),
        1 => b.get(var).map(Some).ok_or_else(|| shape(&format!("the quantifier binds `{var}`"))),
        _ => Err(shape("at most one binding")),
    }
}

fn ind_binding(b: &Bindings, var: &str) -> Result<Option<IndTerm>, QuantError> {
    match single(b, var)? {
        None => Ok(None),
        Some(BindingValue::Name { name, negated: false }) => Ok(Some(IndTerm::var(name.clone()))),
        Some(_) => Err(shape("expected an individual term")),
    }
}

fn prop_binding(b: &Bindings, var: &str) -> Result<Option<PropTerm>, QuantError> {
    match single(b, var)? {
        None => Ok(None),
        Some(BindingValue::Name { name, negated }) => Ok(Some(prop_term(name, *negated))),
        Some(_) => Err(shape("expected a property term")),
    }
}

fn same_shape<'a>(a: &'a Formula, b: &'a Formula) -> Option<Vec<(&'a Formula, &'a Formula)>> {
    if discriminant(a) != discriminant(b) {
        return None;
    }
    let (x, y) = (a.children(), b.children());
    (x.len() == y.len()).then(|| x.into_iter().zip(y).collect())
}

/// The term standing where `a` has a free `x`, reading `r` as `a[x:=t]`.
fn find_ind(a: &Formula, r: &Formula, x: &str) -> Option<IndTerm> {
    let hit = |s: &IndTerm, t: &IndTerm| matches!(s, IndTerm::Var(v) if v == x).then(|| t.clone());
    match (a, r) {
        (Formula::Atom(_, xs), Formula::Atom(_, ys)) => xs.iter().zip(ys).find_map(|(s, t)| hit(s, t)),
        (Formula::Apply(_, s), Formula::Apply(_, t)) | (Formula::Essence(_, s), Formula::Essence(_, t)) => hit(s, t),
        (Formula::IQuant(_, v, _), _) if v == x => None,
        _ => same_shape(a, r)?.into_iter().find_map(|(p, q)| find_ind(p, q, x)),
    }
}

fn find_prop(a: &Formula, r: &Formula, v: &str) -> Option<PropTerm> {
    let hit = |s: &PropTerm, t: &PropTerm| match &s.base {
        PropBase::Var(n) if n == v => Some(if s.negated { t.clone().negate() } else { t.clone() }),
        _ => None,
    };
    match (a, r) {
        (Formula::Positive(s), Formula::Positive(t)) => hit(s, t),
        (Formula::Apply(s, _), Formula::Apply(t, _)) | (Formula::Essence(s, _), Formula::Essence(t, _)) => hit(s, t),
        (Formula::PQuant(_, w, _), _) if w == v => None,
        _ => same_shape(a, r)?.into_iter().find_map(|(p, q)| find_prop(p, q, v)),
    }
}
