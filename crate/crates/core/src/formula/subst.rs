//! Capture-avoiding substitution and alpha-equivalence.

use super::{Formula, IndTerm, PropBase, PropTerm, VarKind};
use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubstError {
    /// The variable occurs free at the other kind.
    KindMismatch { var: String, expected: VarKind },
}

impl fmt::Display for SubstError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubstError::KindMismatch { var, expected } => {
                write!(f, "`{var}` occurs free but not as {expected:?} variable")
            }
        }
    }
}

impl core::error::Error for SubstError {}

/// A variant of `base` not in `avoid`: trailing digits are replaced by the
/// smallest counter that is free.
pub fn fresh_name(base: &str, avoid: &BTreeSet<String>) -> String {
    if !avoid.contains(base) {
        return base.into();
    }
    let stem = base.trim_end_matches(|c: char| c.is_ascii_digit());
    let stem = if stem.is_empty() { "v" } else { stem };
    (1..).map(|i| format!("{stem}{i}")).find(|n| !avoid.contains(n)).expect("unbounded counter")
}

fn avoid_set(body: &Formula, extra: &[&str]) -> BTreeSet<String> {
    let mut avoid = body.free_variables();
    avoid.extend(body.bound_names());
    avoid.extend(extra.iter().map(|s| String::from(*s)));
    avoid
}

fn rename_ind_binder(body: &Formula, old: &str, new: &str) -> Formula {
    ind_rec(body, old, &IndTerm::Var(new.into()))
}

fn rename_prop_binder(body: &Formula, old: &str, new: &str) -> Formula {
    prop_rec(body, old, &PropTerm::var(new))
}

/// Replaces free occurrences of the individual variable `var` by `t`.
pub fn substitute_individual(f: &Formula, var: &str, t: &IndTerm) -> Result<Formula, SubstError> {
    if f.free_properties().contains(var) {
        return Err(SubstError::KindMismatch { var: var.into(), expected: VarKind::Individual });
    }
    Ok(ind_rec(f, var, t))
}

fn ind_rec(f: &Formula, var: &str, t: &IndTerm) -> Formula {
    let sub = |x: &IndTerm| match x {
        IndTerm::Var(n) if n == var => t.clone(),
        other => other.clone(),
    };
    match f {
        Formula::Atom(n, xs) => Formula::Atom(n.clone(), xs.iter().map(sub).collect()),
        Formula::Apply(p, x) => Formula::Apply(p.clone(), sub(x)),
        Formula::Essence(p, x) => Formula::Essence(p.clone(), sub(x)),
        Formula::Positive(_) => f.clone(),
        Formula::IQuant(m, y, body) => {
            if y == var || !body.free_individuals().contains(var) {
                return f.clone();
            }
            match t {
                IndTerm::Var(tn) if tn == y => {
                    let y2 = fresh_name(y, &avoid_set(body, &[var, tn]));
                    let renamed = rename_ind_binder(body, y, &y2);
                    Formula::IQuant(*m, y2, Box::new(ind_rec(&renamed, var, t)))
                }
                _ => Formula::IQuant(*m, y.clone(), Box::new(ind_rec(body, var, t))),
            }
        }
        _ => f.map_children(|c| ind_rec(c, var, t)),
    }
}

/// Replaces free occurrences of the property variable `var` by `t`; an
/// occurrence `~var` becomes the negation of `t`.
pub fn substitute_property(f: &Formula, var: &str, t: &PropTerm) -> Result<Formula, SubstError> {
    if f.free_individuals().contains(var) {
        return Err(SubstError::KindMismatch { var: var.into(), expected: VarKind::Property });
    }
    Ok(prop_rec(f, var, t))
}

fn prop_rec(f: &Formula, var: &str, t: &PropTerm) -> Formula {
    let sub = |p: &PropTerm| match &p.base {
        PropBase::Var(n) if n == var => {
            if p.negated {
                t.clone().negate()
            } else {
                t.clone()
            }
        }
        _ => p.clone(),
    };
    match f {
        Formula::Positive(p) => Formula::Positive(sub(p)),
        Formula::Apply(p, x) => Formula::Apply(sub(p), x.clone()),
        Formula::Essence(p, x) => Formula::Essence(sub(p), x.clone()),
        Formula::Atom(..) => f.clone(),
        Formula::PQuant(m, g, body) => {
            if g == var || !body.free_properties().contains(var) {
                return f.clone();
            }
            match t.var_name() {
                Some(tn) if tn == g => {
                    let g2 = fresh_name(g, &avoid_set(body, &[var, tn]));
                    let renamed = rename_prop_binder(body, g, &g2);
                    Formula::PQuant(*m, g2, Box::new(prop_rec(&renamed, var, t)))
                }
                _ => Formula::PQuant(*m, g.clone(), Box::new(prop_rec(body, var, t))),
            }
        }
        _ => f.map_children(|c| prop_rec(c, var, t)),
    }
}

/// Replaces every zero-argument atom `name` by `g`, renaming binders of `f`
/// that would capture free variables of `g`.
pub fn substitute_atom(f: &Formula, name: &str, g: &Formula) -> Formula {
    let gi = g.free_individuals();
    let gp = g.free_properties();
    atom_rec(f, name, g, &gi, &gp)
}

fn mentions_atom(f: &Formula, name: &str) -> bool {
    let mut hit = false;
    f.walk(&mut |h| hit |= matches!(h, Formula::Atom(n, xs) if n == name && xs.is_empty()));
    hit
}

fn atom_rec(f: &Formula, name: &str, g: &Formula, gi: &BTreeSet<String>, gp: &BTreeSet<String>) -> Formula {
    match f {
        Formula::Atom(n, xs) if n == name && xs.is_empty() => g.clone(),
        Formula::IQuant(m, y, body) if gi.contains(y) && mentions_atom(body, name) => {
            let mut avoid = avoid_set(body, &[]);
            avoid.extend(g.free_variables());
            let y2 = fresh_name(y, &avoid);
            let renamed = rename_ind_binder(body, y, &y2);
            Formula::IQuant(*m, y2, Box::new(atom_rec(&renamed, name, g, gi, gp)))
        }
        Formula::PQuant(m, y, body) if gp.contains(y) && mentions_atom(body, name) => {
            let mut avoid = avoid_set(body, &[]);
            avoid.extend(g.free_variables());
            let y2 = fresh_name(y, &avoid);
            let renamed = rename_prop_binder(body, y, &y2);
            Formula::PQuant(*m, y2, Box::new(atom_rec(&renamed, name, g, gi, gp)))
        }
        _ => f.map_children(|c| atom_rec(c, name, g, gi, gp)),
    }
}

/// Structural equality up to consistent renaming of bound variables.
pub fn alpha_equal(a: &Formula, b: &Formula) -> bool {
    let mut env = Env::default();
    alpha(a, b, &mut env)
}

#[derive(Default)]
struct Env {
    ind: Vec<(String, String)>,
    prop: Vec<(String, String)>,
}

fn lookup(stack: &[(String, String)], name: &str, left: bool) -> Option<usize> {
    stack.iter().rev().position(|(l, r)| if left { l == name } else { r == name })
}

fn same_var(stack: &[(String, String)], a: &str, b: &str) -> bool {
    match (lookup(stack, a, true), lookup(stack, b, false)) {
        (None, None) => a == b,
        (Some(i), Some(j)) => i == j,
        _ => false,
    }
}

fn ind_eq(env: &Env, a: &IndTerm, b: &IndTerm) -> bool {
    match (a, b) {
        (IndTerm::Var(x), IndTerm::Var(y)) => same_var(&env.ind, x, y),
        (IndTerm::Const(x), IndTerm::Const(y)) => x == y,
        _ => false,
    }
}

fn prop_eq(env: &Env, a: &PropTerm, b: &PropTerm) -> bool {
    a.negated == b.negated
        && match (&a.base, &b.base) {
            (PropBase::Var(x), PropBase::Var(y)) => same_var(&env.prop, x, y),
            (PropBase::Named(x), PropBase::Named(y)) => x == y,
            _ => false,
        }
}

fn alpha(a: &Formula, b: &Formula, env: &mut Env) -> bool {
    use Formula::*;
    match (a, b) {
        (Atom(n, xs), Atom(m, ys)) => {
            n == m && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| ind_eq(env, x, y))
        }
        (Positive(p), Positive(q)) => prop_eq(env, p, q),
        (Apply(p, x), Apply(q, y)) | (Essence(p, x), Essence(q, y)) => prop_eq(env, p, q) && ind_eq(env, x, y),
        (Not(x), Not(y)) | (Necessary(x), Necessary(y)) | (Possible(x), Possible(y)) => alpha(x, y, env),
        (Temporal(t1, m1, x), Temporal(t2, m2, y)) => t1 == t2 && m1 == m2 && alpha(x, y, env),
        (And(a1, b1), And(a2, b2))
        | (Or(a1, b1), Or(a2, b2))
        | (Implies(a1, b1), Implies(a2, b2))
        | (Iff(a1, b1), Iff(a2, b2)) => alpha(a1, a2, env) && alpha(b1, b2, env),
        (IQuant(m1, v1, x), IQuant(m2, v2, y)) => {
            if m1 != m2 {
                return false;
            }
            env.ind.push((v1.clone(), v2.clone()));
            let r = alpha(x, y, env);
            env.ind.pop();
            r
        }
        (PQuant(m1, v1, x), PQuant(m2, v2, y)) => {
            if m1 != m2 {
                return false;
            }
            env.prop.push((v1.clone(), v2.clone()));
            let r = alpha(x, y, env);
            env.prop.pop();
            r
        }
        _ => false,
    }
}
