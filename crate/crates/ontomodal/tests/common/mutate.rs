//! Single-connective mutations of formulas and proofs.
#![allow(dead_code)]

use ontomodal_core::formula::{Formula, Mode};
use ontomodal_core::kernel::Proof;

fn flip(m: Mode) -> Mode {
    match m {
        Mode::Universal => Mode::Existential,
        Mode::Existential => Mode::Universal,
    }
}

fn at_root(f: &Formula) -> Vec<Formula> {
    use Formula::*;
    let bin = |a: &Formula, b: &Formula, skip: usize| {
        let (a, b) = (Box::new(a.clone()), Box::new(b.clone()));
        let all = [And(a.clone(), b.clone()), Or(a.clone(), b.clone()), Implies(a.clone(), b.clone()), Iff(a, b)];
        all.into_iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, g)| g).collect()
    };
    match f {
        And(a, b) => bin(a, b, 0),
        Or(a, b) => bin(a, b, 1),
        Implies(a, b) => bin(a, b, 2),
        Iff(a, b) => bin(a, b, 3),
        Not(a) => vec![(**a).clone()],
        Necessary(a) => vec![Possible(a.clone())],
        Possible(a) => vec![Necessary(a.clone())],
        Temporal(t, m, a) => vec![Temporal(t.reversed(), *m, a.clone()), Temporal(*t, flip(*m), a.clone())],
        IQuant(m, v, a) => vec![IQuant(flip(*m), v.clone(), a.clone())],
        PQuant(m, v, a) => vec![PQuant(flip(*m), v.clone(), a.clone())],
        Atom(..) | Positive(_) | Apply(..) | Essence(..) => Vec::new(),
    }
}

/// Every formula obtained by changing one connective, quantifier or modal
/// operator of `f`, or by dropping one negation.
pub fn mutants(f: &Formula) -> Vec<Formula> {
    let mut out = at_root(f);
    let kids: Vec<Formula> = f.children().into_iter().cloned().collect();
    for (i, k) in kids.iter().enumerate() {
        for m in mutants(k) {
            let mut j = 0;
            out.push(f.map_children(|c| {
                let r = if j == i { m.clone() } else { c.clone() };
                j += 1;
                r
            }));
        }
    }
    out
}

pub fn without_step(p: &Proof, index: usize) -> Proof {
    let mut q = p.clone();
    q.steps.remove(index);
    q
}

pub fn with_formula(p: &Proof, index: usize, f: Formula) -> Proof {
    let mut q = p.clone();
    q.steps[index].formula = f;
    q
}
