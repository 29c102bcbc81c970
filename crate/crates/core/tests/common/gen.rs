//! Random formula generators shared by the integration and acceptance tests.
#![allow(dead_code)]

use ontomodal_core::formula::{Formula, IndTerm, Mode, PropTerm, Tense};
use rand::seq::SliceRandom;
use rand::Rng;

const ATOMS: [&str; 3] = ["p", "q", "r"];
const INDIVIDUALS: [&str; 3] = ["x", "y", "z"];
const PROPERTY_VARS: [&str; 4] = ["F", "H", "phi", "psi"];

/// A propositional-modal formula over `atoms` atoms with modal depth at most
/// `depth` and at most `size` connectives.
pub fn modal<R: Rng>(rng: &mut R, atoms: usize, depth: usize, size: usize) -> Formula {
    if size == 0 || rng.gen_ratio(1, 5) {
        return Formula::atom(ATOMS[rng.gen_range(0..atoms)]);
    }
    let choice = if depth == 0 { rng.gen_range(0..5) } else { rng.gen_range(0..8) };
    match choice {
        0 => Formula::not(modal(rng, atoms, depth, size - 1)),
        1..=4 => {
            let left = rng.gen_range(0..size);
            let a = modal(rng, atoms, depth, left);
            let b = modal(rng, atoms, depth, size - 1 - left);
            match choice {
                1 => Formula::and(a, b),
                2 => Formula::or(a, b),
                3 => Formula::implies(a, b),
                _ => Formula::iff(a, b),
            }
        }
        5 | 6 => {
            let inner = modal(rng, atoms, depth - 1, size - 1);
            if choice == 5 {
                Formula::necessary(inner)
            } else {
                Formula::possible(inner)
            }
        }
        _ => Formula::not(Formula::possible(modal(rng, atoms, depth - 1, size - 1))),
    }
}

fn mode<R: Rng>(rng: &mut R) -> Mode {
    if rng.gen() {
        Mode::Universal
    } else {
        Mode::Existential
    }
}

fn prop_term<R: Rng>(rng: &mut R) -> PropTerm {
    let t = match rng.gen_range(0..3) {
        0 => PropTerm::named(*["G", "NE"].choose(rng).unwrap()),
        _ => PropTerm::var(*PROPERTY_VARS.choose(rng).unwrap()),
    };
    if rng.gen_ratio(1, 3) {
        t.negate()
    } else {
        t
    }
}

fn individual<R: Rng>(rng: &mut R) -> IndTerm {
    IndTerm::var(*INDIVIDUALS.choose(rng).unwrap())
}

/// Any formula the grammar can express, with up to `size` inner nodes.
pub fn any<R: Rng>(rng: &mut R, size: usize) -> Formula {
    if size == 0 {
        return match rng.gen_range(0..6) {
            0 | 1 => Formula::atom(*ATOMS.choose(rng).unwrap()),
            2 => Formula::pred(*["R", "S"].choose(rng).unwrap(), vec![individual(rng), individual(rng)]),
            3 => Formula::positive(prop_term(rng)),
            4 => Formula::apply(prop_term(rng), individual(rng)),
            _ => Formula::essence(prop_term(rng), individual(rng)),
        };
    }
    match rng.gen_range(0..12) {
        0 => Formula::not(any(rng, size - 1)),
        1..=4 => {
            let left = rng.gen_range(0..size);
            let a = any(rng, left);
            let b = any(rng, size - 1 - left);
            match rng.gen_range(0..4) {
                0 => Formula::and(a, b),
                1 => Formula::or(a, b),
                2 => Formula::implies(a, b),
                _ => Formula::iff(a, b),
            }
        }
        5 => Formula::necessary(any(rng, size - 1)),
        6 => Formula::possible(any(rng, size - 1)),
        7 | 8 => {
            let t = if rng.gen() { Tense::Past } else { Tense::Future };
            Formula::temporal(t, mode(rng), any(rng, size - 1))
        }
        9 | 10 => {
            Formula::IQuant(mode(rng), INDIVIDUALS.choose(rng).unwrap().to_string(), Box::new(any(rng, size - 1)))
        }
        _ => Formula::PQuant(mode(rng), PROPERTY_VARS.choose(rng).unwrap().to_string(), Box::new(any(rng, size - 1))),
    }
}

/// A random axiom for a random formal system: a closed-ish formula in which
/// quantifiers, tenses and the ontological constructs all occur.
pub fn axiom<R: Rng>(rng: &mut R) -> Formula {
    let size = rng.gen_range(1..8);
    any(rng, size)
}

fn literal<R: Rng>(rng: &mut R, atoms: usize, depth: usize) -> Formula {
    let choice = if depth == 0 { 0 } else { rng.gen_range(0..4) };
    match choice {
        0 | 1 => {
            let a = Formula::atom(ATOMS[rng.gen_range(0..atoms)]);
            if rng.gen() {
                a
            } else {
                Formula::not(a)
            }
        }
        2 => Formula::necessary(clause(rng, atoms, depth - 1)),
        _ => Formula::possible(clause(rng, atoms, depth - 1)),
    }
}

fn clause<R: Rng>(rng: &mut R, atoms: usize, depth: usize) -> Formula {
    let n = if rng.gen_ratio(1, 4) { 2 } else { 1 };
    (1..n).fold(literal(rng, atoms, depth), |acc, _| Formula::or(acc, literal(rng, atoms, depth)))
}

/// A conjunction of `clauses` modal clauses. Roughly half of these are
/// unsatisfiable for four to six clauses, unlike [`modal`].
pub fn clausal<R: Rng>(rng: &mut R, atoms: usize, depth: usize, clauses: usize) -> Formula {
    let first = clause(rng, atoms, depth);
    (1..clauses).fold(first, |acc, _| {
        let d = rng.gen_range(0..=depth);
        let c = literal(rng, atoms, d);
        Formula::and(acc, Formula::or(c, literal(rng, atoms, d.saturating_sub(1))))
    })
}
