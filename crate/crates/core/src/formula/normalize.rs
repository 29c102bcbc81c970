use super::{render, Formula, IndTerm, PropBase, PropTerm};
use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

/// Canonical representative of the alpha-class of `f`.
///
/// Bound variables are renamed by nesting level (`v1`, `v2`, ... for
/// individuals, `F1`, `F2`, ... for properties) and chains of `&` and `|` are
/// flattened, sorted and rebuilt left-nested. Duplicate operands are kept.
pub fn normalize(f: &Formula) -> Formula {
    let mut names = f.free_variables();
    f.walk(&mut |g| {
        if let Formula::Atom(n, _) = g {
            names.insert(n.clone());
        }
    });
    let ip = prefix("v", &names);
    let pp = prefix("F", &names);
    let mut n = Norm { ip, pp, ind: Vec::new(), prop: Vec::new() };
    n.go(f)
}

fn clashes(p: &str, names: &BTreeSet<String>) -> bool {
    names
        .iter()
        .any(|n| n.strip_prefix(p).is_some_and(|rest| !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit())))
}

fn prefix(base: &str, names: &BTreeSet<String>) -> String {
    let mut p = String::from(base);
    while clashes(&p, names) {
        p.push('_');
    }
    p
}

struct Norm {
    ip: String,
    pp: String,
    ind: Vec<(String, String)>,
    prop: Vec<(String, String)>,
}

fn look(env: &[(String, String)], n: &str) -> Option<String> {
    env.iter().rev().find(|(o, _)| o == n).map(|(_, m)| m.clone())
}

impl Norm {
    fn ind_term(&self, t: &IndTerm) -> IndTerm {
        match t {
            IndTerm::Var(n) => IndTerm::Var(look(&self.ind, n).unwrap_or_else(|| n.clone())),
            c => c.clone(),
        }
    }

    fn prop_term(&self, t: &PropTerm) -> PropTerm {
        match &t.base {
            PropBase::Var(n) => {
                PropTerm { base: PropBase::Var(look(&self.prop, n).unwrap_or_else(|| n.clone())), negated: t.negated }
            }
            _ => t.clone(),
        }
    }

    fn go(&mut self, f: &Formula) -> Formula {
        match f {
            Formula::Atom(n, xs) => Formula::Atom(n.clone(), xs.iter().map(|x| self.ind_term(x)).collect()),
            Formula::Positive(t) => Formula::Positive(self.prop_term(t)),
            Formula::Apply(t, x) => Formula::Apply(self.prop_term(t), self.ind_term(x)),
            Formula::Essence(t, x) => Formula::Essence(self.prop_term(t), self.ind_term(x)),
            Formula::IQuant(m, v, body) => {
                let new = format!("{}{}", self.ip, self.ind.len() + 1);
                self.ind.push((v.clone(), new.clone()));
                let b = self.go(body);
                self.ind.pop();
                Formula::IQuant(*m, new, Box::new(b))
            }
            Formula::PQuant(m, v, body) => {
                let new = format!("{}{}", self.pp, self.prop.len() + 1);
                self.prop.push((v.clone(), new.clone()));
                let b = self.go(body);
                self.prop.pop();
                Formula::PQuant(*m, new, Box::new(b))
            }
            Formula::And(..) => self.chain(f, true),
            Formula::Or(..) => self.chain(f, false),
            _ => f.map_children(|c| self.go(c)),
        }
    }

    fn chain(&mut self, f: &Formula, conj: bool) -> Formula {
        let mut parts = Vec::new();
        flatten(f, conj, &mut parts);
        let mut done: Vec<(String, Formula)> = parts
            .into_iter()
            .map(|p| {
                let g = self.go(p);
                (render(&g), g)
            })
            .collect();
        done.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
        let mut it = done.into_iter().map(|(_, g)| g);
        let first = it.next().expect("chain has operands");
        it.fold(first, |acc, g| if conj { Formula::and(acc, g) } else { Formula::or(acc, g) })
    }
}

fn flatten<'a>(f: &'a Formula, conj: bool, out: &mut Vec<&'a Formula>) {
    match f {
        Formula::And(a, b) if conj => {
            flatten(a, conj, out);
            flatten(b, conj, out);
        }
        Formula::Or(a, b) if !conj => {
            flatten(a, conj, out);
            flatten(b, conj, out);
        }
        _ => out.push(f),
    }
}

#[cfg(test)]
mod tests {
    use super::super::{alpha_equal, parse};
    use super::*;

    #[test]
    fn alpha_variants_coincide() {
        let a = normalize(&parse("ex x. G(x) & p").unwrap());
        let b = normalize(&parse("ex y. p & G(y)").unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn chains_are_sorted_and_kept() {
        let f = normalize(&parse("r & (q & p) & q").unwrap());
        assert_eq!(render(&f), "p & q & q & r");
    }

    #[test]
    fn avoids_free_names() {
        let f = parse("all x. R(x,v1)").unwrap();
        let n = normalize(&f);
        assert!(alpha_equal(&f, &n));
        assert_eq!(render(&n), "all v_1. R(v_1,v1)");
    }

    #[test]
    fn idempotent() {
        let f = parse("allp F. (ex z. F(z) | q) & all y. (F(y) & Pos(F))").unwrap();
        let n = normalize(&f);
        assert_eq!(normalize(&n), n);
    }
}
