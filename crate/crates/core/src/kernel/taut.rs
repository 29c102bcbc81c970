//! Tautology checking on the propositional skeleton.
//!
//! Maximal subformulas whose main operator is not a connective become
//! propositional variables, identified up to renaming of bound variables.
//! `(~F)(x)` is read as `~F(x)`.

use crate::formula::{alpha_equal, Formula};
use alloc::boxed::Box;
use alloc::vec::Vec;

pub const MAX_TAUT_ATOMS: usize = 12;

enum Prop {
    Var(usize),
    Not(Box<Prop>),
    And(Box<Prop>, Box<Prop>),
    Or(Box<Prop>, Box<Prop>),
    Implies(Box<Prop>, Box<Prop>),
    Iff(Box<Prop>, Box<Prop>),
}

fn skeleton(f: &Formula, atoms: &mut Vec<Formula>) -> Prop {
    let bin = |a: &Formula, b: &Formula, atoms: &mut Vec<Formula>| {
        (Box::new(skeleton(a, atoms)), Box::new(skeleton(b, atoms)))
    };
    match f {
        Formula::Not(a) => Prop::Not(Box::new(skeleton(a, atoms))),
        Formula::And(a, b) => {
            let (x, y) = bin(a, b, atoms);
            Prop::And(x, y)
        }
        Formula::Or(a, b) => {
            let (x, y) = bin(a, b, atoms);
            Prop::Or(x, y)
        }
        Formula::Implies(a, b) => {
            let (x, y) = bin(a, b, atoms);
            Prop::Implies(x, y)
        }
        Formula::Iff(a, b) => {
            let (x, y) = bin(a, b, atoms);
            Prop::Iff(x, y)
        }
        Formula::Apply(t, x) if t.negated => {
            let plain = Formula::apply(t.clone().negate(), x.clone());
            Prop::Not(Box::new(skeleton(&plain, atoms)))
        }
        other => match atoms.iter().position(|a| alpha_equal(a, other)) {
            Some(i) => Prop::Var(i),
            None => {
                atoms.push(other.clone());
                Prop::Var(atoms.len() - 1)
            }
        },
    }
}

fn eval(p: &Prop, v: u32) -> bool {
    match p {
        Prop::Var(i) => v >> i & 1 == 1,
        Prop::Not(a) => !eval(a, v),
        Prop::And(a, b) => eval(a, v) && eval(b, v),
        Prop::Or(a, b) => eval(a, v) || eval(b, v),
        Prop::Implies(a, b) => !eval(a, v) || eval(b, v),
        Prop::Iff(a, b) => eval(a, v) == eval(b, v),
    }
}

/// The distinct skeleton atoms of `f`, in order of first occurrence.
pub fn skeleton_atoms(f: &Formula) -> Vec<Formula> {
    let mut atoms = Vec::new();
    skeleton(f, &mut atoms);
    atoms
}

/// Whether `f` is an instance of a propositional tautology. Fails with the
/// atom count when it exceeds [`MAX_TAUT_ATOMS`].
pub fn is_tautology(f: &Formula) -> Result<bool, usize> {
    let mut atoms = Vec::new();
    let p = skeleton(f, &mut atoms);
    if atoms.len() > MAX_TAUT_ATOMS {
        return Err(atoms.len());
    }
    Ok((0..1u32 << atoms.len()).all(|v| eval(&p, v)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    fn taut(s: &str) -> bool {
        is_tautology(&parse(s).unwrap()).unwrap()
    }

    #[test]
    fn classical() {
        assert!(taut("p | ~p"));
        assert!(taut("(p -> q) -> (~q -> ~p)"));
        assert!(!taut("(p -> q) -> (q -> p)"));
        assert!(taut("[]p -> []p"));
        assert!(!taut("[]p -> p"));
    }

    #[test]
    fn bound_variables_and_negated_terms() {
        assert!(taut("(ex x. G(x)) -> ex y. G(y)"));
        assert!(taut("phi(x) -> ~(~phi)(x)"));
        assert!(!taut("(ex x. G(x)) -> ex y. NE(y)"));
    }

    #[test]
    fn too_many_atoms() {
        let s = (0..13).map(|i| alloc::format!("p{i}")).collect::<Vec<_>>().join(" | ");
        assert_eq!(is_tautology(&parse(&s).unwrap()), Err(13));
    }
}
