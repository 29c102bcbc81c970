//! Instantiating schema patterns and recovering bindings from instances.

use super::{describe_kind, BindingValue, Bindings, MetaKind};
use crate::formula::{
    alpha_equal, substitute_atom, substitute_individual, substitute_property, Formula, IndTerm, PropBase, PropTerm,
    NAMED_PROPERTIES,
};
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InstantiationError {
    Missing(String),
    Unknown(String),
    WrongKind {
        var: String,
        expected: MetaKind,
    },
    /// The formula is not an instance of the pattern.
    NoMatch,
}

impl fmt::Display for InstantiationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InstantiationError::Missing(v) => write!(f, "no binding for metavariable `{v}`"),
            InstantiationError::Unknown(v) => write!(f, "`{v}` is not a metavariable of the schema"),
            InstantiationError::WrongKind { var, expected } => {
                write!(f, "`{var}` must be bound to a {}", describe_kind(*expected))
            }
            InstantiationError::NoMatch => write!(f, "formula is not an instance of the schema"),
        }
    }
}

impl core::error::Error for InstantiationError {}

pub(crate) fn prop_term(name: &str, negated: bool) -> PropTerm {
    let t = if NAMED_PROPERTIES.contains(&name) { PropTerm::named(name) } else { PropTerm::var(name) };
    if negated {
        t.negate()
    } else {
        t
    }
}

fn placeholder(i: usize) -> String {
    format!("\u{1}{i}")
}

/// Substitutes `bindings` into `pattern` simultaneously and without capture.
pub fn instantiate_schema(
    pattern: &Formula,
    metavars: &[(String, MetaKind)],
    bindings: &Bindings,
) -> Result<Formula, InstantiationError> {
    if let Some(k) = bindings.keys().find(|k| !metavars.iter().any(|(n, _)| n == *k)) {
        return Err(InstantiationError::Unknown(k.clone()));
    }
    let mut f = pattern.clone();
    for (i, (name, kind)) in metavars.iter().enumerate() {
        let p = placeholder(i);
        f = match kind {
            MetaKind::Formula => substitute_atom(&f, name, &Formula::atom(p)),
            MetaKind::Property => substitute_property(&f, name, &PropTerm::var(p)).map_err(|_| wrong(name, *kind))?,
            MetaKind::Individual => {
                substitute_individual(&f, name, &IndTerm::var(p)).map_err(|_| wrong(name, *kind))?
            }
        };
    }
    for (i, (name, kind)) in metavars.iter().enumerate() {
        let p = placeholder(i);
        let v = bindings.get(name).ok_or_else(|| InstantiationError::Missing(name.clone()))?;
        f = match (kind, v) {
            (MetaKind::Formula, BindingValue::Formula(g)) => substitute_atom(&f, &p, g),
            (MetaKind::Property, BindingValue::Name { name: n, negated }) => {
                substitute_property(&f, &p, &prop_term(n, *negated)).map_err(|_| wrong(name, *kind))?
            }
            (MetaKind::Individual, BindingValue::Name { name: n, negated: false }) => {
                substitute_individual(&f, &p, &IndTerm::var(n.clone())).map_err(|_| wrong(name, *kind))?
            }
            _ => return Err(wrong(name, *kind)),
        };
    }
    Ok(f)
}

fn wrong(var: &str, expected: MetaKind) -> InstantiationError {
    InstantiationError::WrongKind { var: var.into(), expected }
}

/// Checks that `target` is the instance of `pattern` under `given` bindings,
/// completed by matching. Returns the full bindings.
pub fn match_schema(
    pattern: &Formula,
    metavars: &[(String, MetaKind)],
    given: &Bindings,
    target: &Formula,
) -> Result<Bindings, InstantiationError> {
    let mut merged = infer(pattern, metavars, target).unwrap_or_default();
    for (k, v) in given {
        merged.insert(k.clone(), v.clone());
    }
    if let Some((missing, _)) = metavars.iter().find(|(n, _)| !merged.contains_key(n)) {
        return Err(if given.is_empty() {
            InstantiationError::NoMatch
        } else {
            InstantiationError::Missing(missing.clone())
        });
    }
    let inst = instantiate_schema(pattern, metavars, &merged)?;
    if alpha_equal(&inst, target) {
        Ok(merged)
    } else {
        Err(InstantiationError::NoMatch)
    }
}

/// One-way matching of `pattern` against `target`. The result is only a
/// candidate; callers confirm it by instantiation.
pub(crate) fn infer(pattern: &Formula, metavars: &[(String, MetaKind)], target: &Formula) -> Option<Bindings> {
    let mut m =
        Matcher { kinds: metavars.iter().cloned().collect(), out: BTreeMap::new(), ind: Vec::new(), prop: Vec::new() };
    if !m.formula(pattern, target) {
        return None;
    }
    Some(
        m.out
            .into_iter()
            .map(|(k, v)| {
                let b = match v {
                    Val::Formula(f) => BindingValue::Formula(f),
                    Val::Prop(t) => BindingValue::Name { name: t.base_name().into(), negated: t.negated },
                    Val::Ind(t) => BindingValue::Name { name: t.name().into(), negated: false },
                };
                (k, b)
            })
            .collect(),
    )
}

enum Val {
    Formula(Formula),
    Prop(PropTerm),
    Ind(IndTerm),
}

struct Matcher {
    kinds: BTreeMap<String, MetaKind>,
    out: BTreeMap<String, Val>,
    ind: Vec<(String, String)>,
    prop: Vec<(String, String)>,
}

fn position(stack: &[(String, String)], name: &str, left: bool) -> Option<usize> {
    stack.iter().rev().position(|(l, r)| if left { l == name } else { r == name })
}

impl Matcher {
    fn captured(&self, f: &Formula) -> bool {
        let fi = f.free_individuals();
        let fp = f.free_properties();
        self.ind.iter().any(|(_, r)| fi.contains(r)) || self.prop.iter().any(|(_, r)| fp.contains(r))
    }

    fn formula(&mut self, p: &Formula, t: &Formula) -> bool {
        use Formula::*;
        match (p, t) {
            (Atom(n, xs), _) if xs.is_empty() && self.kinds.get(n) == Some(&MetaKind::Formula) => {
                if self.captured(t) {
                    return false;
                }
                match self.out.get(n) {
                    Some(Val::Formula(g)) => alpha_equal(g, t),
                    Some(_) => false,
                    None => {
                        self.out.insert(n.clone(), Val::Formula(t.clone()));
                        true
                    }
                }
            }
            (Atom(n, xs), Atom(m, ys)) => {
                n == m && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| self.ind_term(x, y))
            }
            (Positive(a), Positive(b)) => self.prop_term(a, b),
            (Apply(a, x), Apply(b, y)) | (Essence(a, x), Essence(b, y)) => self.prop_term(a, b) && self.ind_term(x, y),
            (Not(a), Not(b)) | (Necessary(a), Necessary(b)) | (Possible(a), Possible(b)) => self.formula(a, b),
            (Temporal(t1, m1, a), Temporal(t2, m2, b)) => t1 == t2 && m1 == m2 && self.formula(a, b),
            (And(a1, b1), And(a2, b2))
            | (Or(a1, b1), Or(a2, b2))
            | (Implies(a1, b1), Implies(a2, b2))
            | (Iff(a1, b1), Iff(a2, b2)) => self.formula(a1, a2) && self.formula(b1, b2),
            (IQuant(m1, v1, a), IQuant(m2, v2, b)) if m1 == m2 => {
                self.ind.push((v1.clone(), v2.clone()));
                let r = self.formula(a, b);
                self.ind.pop();
                r
            }
            (PQuant(m1, v1, a), PQuant(m2, v2, b)) if m1 == m2 => {
                self.prop.push((v1.clone(), v2.clone()));
                let r = self.formula(a, b);
                self.prop.pop();
                r
            }
            _ => false,
        }
    }

    fn ind_term(&mut self, p: &IndTerm, t: &IndTerm) -> bool {
        let bound_t = match t {
            IndTerm::Var(w) => position(&self.ind, w, false),
            IndTerm::Const(_) => None,
        };
        match p {
            IndTerm::Var(v) => {
                if let Some(i) = position(&self.ind, v, true) {
                    return bound_t == Some(i);
                }
                if bound_t.is_some() {
                    return false;
                }
                if self.kinds.get(v) != Some(&MetaKind::Individual) {
                    return p == t;
                }
                match self.out.get(v) {
                    Some(Val::Ind(s)) => s == t,
                    Some(_) => false,
                    None => {
                        self.out.insert(v.clone(), Val::Ind(t.clone()));
                        true
                    }
                }
            }
            IndTerm::Const(_) => p == t,
        }
    }

    fn prop_term(&mut self, p: &PropTerm, t: &PropTerm) -> bool {
        let bound_t = match &t.base {
            PropBase::Var(w) => position(&self.prop, w, false),
            PropBase::Named(_) => None,
        };
        match &p.base {
            PropBase::Var(v) => {
                if let Some(i) = position(&self.prop, v, true) {
                    return bound_t == Some(i) && p.negated == t.negated;
                }
                if bound_t.is_some() {
                    return false;
                }
                if self.kinds.get(v) != Some(&MetaKind::Property) {
                    return p == t;
                }
                let val = if p.negated { t.clone().negate() } else { t.clone() };
                match self.out.get(v) {
                    Some(Val::Prop(s)) => *s == val,
                    Some(_) => false,
                    None => {
                        self.out.insert(v.clone(), Val::Prop(val));
                        true
                    }
                }
            }
            PropBase::Named(_) => p == t && bound_t.is_none(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;
    use alloc::string::ToString;

    fn vars(v: &[(&str, MetaKind)]) -> Vec<(String, MetaKind)> {
        v.iter().map(|(n, k)| (n.to_string(), *k)).collect()
    }

    fn f(s: &str) -> Formula {
        parse(s).unwrap()
    }

    #[test]
    fn simultaneous() {
        let mv = vars(&[("phi", MetaKind::Formula), ("psi", MetaKind::Formula)]);
        let mut b = Bindings::new();
        b.insert("phi".into(), BindingValue::Formula(f("psi")));
        b.insert("psi".into(), BindingValue::Formula(f("phi")));
        let g = instantiate_schema(&f("[](phi -> psi)"), &mv, &b).unwrap();
        assert_eq!(g, f("[](psi -> phi)"));
    }

    #[test]
    fn property_negation_folds() {
        let mv = vars(&[("phi", MetaKind::Property)]);
        let pat = f("Pos(~phi) <-> ~Pos(phi)");
        let got = match_schema(&pat, &mv, &Bindings::new(), &f("Pos(G) <-> ~Pos(~G)")).unwrap();
        assert_eq!(got["phi"], BindingValue::Name { name: "G".into(), negated: true });
    }

    #[test]
    fn binders_are_respected() {
        let mv = vars(&[("phi", MetaKind::Property), ("psi", MetaKind::Property)]);
        let pat = f("Pos(phi) & all x. (phi(x) -> psi(x)) -> Pos(psi)");
        let ok = f("Pos(G) & all z. (G(z) -> (~G)(z)) -> Pos(~G)");
        assert!(match_schema(&pat, &mv, &Bindings::new(), &ok).is_ok());
        let bad = f("Pos(G) & all z. (G(z) -> (~G)(y)) -> Pos(~G)");
        assert_eq!(match_schema(&pat, &mv, &Bindings::new(), &bad), Err(InstantiationError::NoMatch));
    }

    #[test]
    fn wrong_kind_and_unknown() {
        let mv = vars(&[("phi", MetaKind::Formula)]);
        let mut b = Bindings::new();
        b.insert("phi".into(), BindingValue::Name { name: "G".into(), negated: false });
        assert!(matches!(instantiate_schema(&f("[]phi -> phi"), &mv, &b), Err(InstantiationError::WrongKind { .. })));
        let mut b = Bindings::new();
        b.insert("chi".into(), BindingValue::Formula(f("p")));
        assert_eq!(instantiate_schema(&f("[]phi"), &mv, &b), Err(InstantiationError::Unknown("chi".into())));
    }

    #[test]
    fn formula_capture_is_avoided() {
        let mv = vars(&[("x", MetaKind::Individual)]);
        let pat = f("allp F. (Pos(F) -> F(x))");
        let mut b = Bindings::new();
        b.insert("x".into(), BindingValue::Name { name: "y".into(), negated: false });
        let g = instantiate_schema(&pat, &mv, &b).unwrap();
        assert!(alpha_equal(&g, &f("allp H. (Pos(H) -> H(y))")));
    }
}
