//! Negation normal form of propositional-modal formulas, as a hash-consed
//! DAG whose nodes are numbered children-first.

use crate::formula::Formula;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Node {
    Lit(usize, bool),
    And(usize, usize),
    Or(usize, usize),
    Box(usize),
    Dia(usize),
}

#[derive(Clone, Debug, Default)]
pub struct Nnf {
    pub nodes: Vec<Node>,
    pub atoms: Vec<String>,
    index: BTreeMap<Node, usize>,
}

impl Nnf {
    /// Converts `f`, returning the first subformula outside the fragment on
    /// failure.
    pub fn build(f: &Formula) -> Result<(Nnf, usize), Formula> {
        if let Some(bad) = f.find_non_modal() {
            return Err(bad.clone());
        }
        let mut n = Nnf { atoms: f.atoms().into_iter().collect(), ..Default::default() };
        let root = n.add(f, true);
        Ok((n, root))
    }

    /// Adds another formula over the same atoms.
    pub fn add(&mut self, f: &Formula, pos: bool) -> usize {
        match f {
            Formula::Atom(a, _) => {
                let i = match self.atoms.iter().position(|x| x == a) {
                    Some(i) => i,
                    None => {
                        self.atoms.push(a.clone());
                        self.atoms.len() - 1
                    }
                };
                self.intern(Node::Lit(i, pos))
            }
            Formula::Not(a) => self.add(a, !pos),
            Formula::And(a, b) | Formula::Or(a, b) => {
                let x = self.add(a, pos);
                let y = self.add(b, pos);
                let conj = matches!(f, Formula::And(..)) == pos;
                self.intern(if conj { Node::And(x, y) } else { Node::Or(x, y) })
            }
            Formula::Implies(a, b) => {
                let x = self.add(a, !pos);
                let y = self.add(b, pos);
                self.intern(if pos { Node::Or(x, y) } else { Node::And(x, y) })
            }
            Formula::Iff(a, b) => {
                let ap = self.add(a, true);
                let an = self.add(a, false);
                let bp = self.add(b, pos);
                let bn = self.add(b, !pos);
                let l = self.intern(Node::And(ap, bp));
                let r = self.intern(Node::And(an, bn));
                self.intern(Node::Or(l, r))
            }
            Formula::Necessary(a) | Formula::Possible(a) => {
                let x = self.add(a, pos);
                let boxed = matches!(f, Formula::Necessary(_)) == pos;
                self.intern(if boxed { Node::Box(x) } else { Node::Dia(x) })
            }
            other => unreachable!("outside the propositional-modal fragment: {other:?}"),
        }
    }

    fn intern(&mut self, n: Node) -> usize {
        if let Some(&i) = self.index.get(&n) {
            return i;
        }
        self.nodes.push(n);
        self.index.insert(n, self.nodes.len() - 1);
        self.nodes.len() - 1
    }

    pub fn to_formula(&self, i: usize) -> Formula {
        match self.nodes[i] {
            Node::Lit(a, true) => Formula::atom(self.atoms[a].clone()),
            Node::Lit(a, false) => Formula::not(Formula::atom(self.atoms[a].clone())),
            Node::And(x, y) => Formula::and(self.to_formula(x), self.to_formula(y)),
            Node::Or(x, y) => Formula::or(self.to_formula(x), self.to_formula(y)),
            Node::Box(x) => Formula::necessary(self.to_formula(x)),
            Node::Dia(x) => Formula::possible(self.to_formula(x)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{parse, render};

    #[test]
    fn pushes_negation_inward() {
        let (n, r) = Nnf::build(&parse("~([]p -> <>(q & ~p))").unwrap()).unwrap();
        assert_eq!(render(&n.to_formula(r)), "[]p & [](~q | p)");
    }

    #[test]
    fn shares_subterms() {
        let (n, _) = Nnf::build(&parse("[]p & []p | []p").unwrap()).unwrap();
        assert_eq!(n.nodes.len(), 4);
    }

    #[test]
    fn rejects_quantifiers() {
        let e = Nnf::build(&parse("p & ex x. G(x)").unwrap()).unwrap_err();
        assert!(matches!(e, Formula::IQuant(..)));
    }
}
