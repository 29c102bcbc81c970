//! Satisfiability by elimination of Hintikka types.
//!
//! A type commits to a set of atoms and modal subformulas of the negation
//! normal form. Types whose diamonds have no admissible witness are removed
//! until nothing changes; the formula is satisfiable iff a surviving type
//! makes it true. Shares no code with the tableau.

use super::ModalSystem;
use crate::formula::Formula;
use crate::nnf::{Nnf, Node};
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

const MAX_BASE: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EliminationError {
    Unsupported(String),
    TooLarge(usize),
}

impl fmt::Display for EliminationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EliminationError::Unsupported(s) => write!(f, "unsupported subformula `{s}`"),
            EliminationError::TooLarge(b) => write!(f, "{b} base formulas exceed the limit of {MAX_BASE}"),
        }
    }
}

impl core::error::Error for EliminationError {}

type Bits = Vec<u64>;

fn and_into(a: &mut Bits, b: &Bits) {
    a.iter_mut().zip(b).for_each(|(x, y)| *x &= y);
}

fn nonempty_and(a: &Bits, b: &Bits) -> bool {
    a.iter().zip(b).any(|(x, y)| x & y != 0)
}

fn get(b: &Bits, t: usize) -> bool {
    b[t / 64] >> (t % 64) & 1 == 1
}

fn clear(b: &mut Bits, t: usize) {
    b[t / 64] &= !(1 << (t % 64));
}

/// Whether `f` is satisfiable in the system.
pub fn elimination_sat(f: &Formula, sys: ModalSystem) -> Result<bool, EliminationError> {
    let (nnf, root) = Nnf::build(f).map_err(|bad| EliminationError::Unsupported(format!("{bad}")))?;
    let k = nnf.atoms.len();
    let modal: Vec<usize> =
        (0..nnf.nodes.len()).filter(|&i| matches!(nnf.nodes[i], Node::Box(_) | Node::Dia(_))).collect();
    let b = k + modal.len();
    if b > MAX_BASE {
        return Err(EliminationError::TooLarge(b));
    }
    let total = 1usize << b;
    let words = total.div_ceil(64);
    let tail = if total % 64 == 0 { u64::MAX } else { (1u64 << (total % 64)) - 1 };
    let pattern = |bit: usize| -> Bits {
        let mut out = vec![0u64; words];
        if bit < 6 {
            let mut pat = 0u64;
            for j in 0..64 {
                if j >> bit & 1 == 1 {
                    pat |= 1 << j;
                }
            }
            out.iter_mut().for_each(|x| *x = pat);
        } else {
            for (w, x) in out.iter_mut().enumerate() {
                if w >> (bit - 6) & 1 == 1 {
                    *x = u64::MAX;
                }
            }
        }
        *out.last_mut().expect("nonempty") &= tail;
        out
    };
    let complement = |a: &Bits| -> Bits {
        let mut out: Bits = a.iter().map(|x| !x).collect();
        *out.last_mut().expect("nonempty") &= tail;
        out
    };
    let bit_of: BTreeMap<usize, usize> = modal.iter().enumerate().map(|(j, &i)| (i, k + j)).collect();

    // Truth of every node over all types, children first.
    let mut truth: Vec<Bits> = Vec::with_capacity(nnf.nodes.len());
    for (i, node) in nnf.nodes.iter().enumerate() {
        let t = match *node {
            Node::Lit(a, true) => pattern(a),
            Node::Lit(a, false) => complement(&pattern(a)),
            Node::And(x, y) => truth[x].iter().zip(&truth[y]).map(|(p, q)| p & q).collect(),
            Node::Or(x, y) => truth[x].iter().zip(&truth[y]).map(|(p, q)| p | q).collect(),
            Node::Box(_) | Node::Dia(_) => pattern(bit_of[&i]),
        };
        truth.push(t);
    }

    let mut alive = complement(&vec![0u64; words]);
    if sys != ModalSystem::K {
        for &i in &modal {
            if let Node::Box(c) = nnf.nodes[i] {
                let ok: Bits = complement(&truth[i]).iter().zip(&truth[c]).map(|(p, q)| p | q).collect();
                and_into(&mut alive, &ok);
            }
        }
    }

    let mut key_mask = 0usize;
    for &i in &modal {
        if matches!(nnf.nodes[i], Node::Box(_)) || sys == ModalSystem::S5 {
            key_mask |= 1 << bit_of[&i];
        }
    }
    let dias: Vec<(usize, usize)> = modal
        .iter()
        .filter_map(|&i| match nnf.nodes[i] {
            Node::Dia(c) => Some((bit_of[&i], c)),
            _ => None,
        })
        .collect();

    loop {
        let mut witnesses: BTreeMap<usize, Vec<bool>> = BTreeMap::new();
        let mut doomed = Vec::new();
        for t in 0..total {
            if !get(&alive, t) {
                continue;
            }
            let claimed: Vec<usize> =
                dias.iter().enumerate().filter(|(_, d)| t >> d.0 & 1 == 1).map(|(j, _)| j).collect();
            if claimed.is_empty() {
                continue;
            }
            let key = t & key_mask;
            let has = witnesses.entry(key).or_insert_with(|| {
                let allowed = successors(sys, key, &modal, &nnf, &bit_of, &truth, &alive, &complement);
                dias.iter().map(|&(_, c)| nonempty_and(&allowed, &truth[c])).collect()
            });
            if claimed.iter().any(|&j| !has[j]) {
                doomed.push(t);
            }
        }
        if doomed.is_empty() {
            break;
        }
        for t in doomed {
            clear(&mut alive, t);
        }
    }
    Ok(nonempty_and(&alive, &truth[root]))
}

#[allow(clippy::too_many_arguments)]
fn successors(
    sys: ModalSystem,
    key: usize,
    modal: &[usize],
    nnf: &Nnf,
    bit_of: &BTreeMap<usize, usize>,
    truth: &[Bits],
    alive: &Bits,
    complement: &dyn Fn(&Bits) -> Bits,
) -> Bits {
    let mut allowed = alive.clone();
    for &i in modal {
        let bit = bit_of[&i];
        let claimed = key >> bit & 1 == 1;
        match (sys, nnf.nodes[i]) {
            (ModalSystem::K | ModalSystem::T, Node::Box(c)) if claimed => and_into(&mut allowed, &truth[c]),
            (ModalSystem::S4, Node::Box(_)) if claimed => and_into(&mut allowed, &truth[i]),
            (ModalSystem::S5, _) => {
                if claimed {
                    and_into(&mut allowed, &truth[i]);
                } else {
                    and_into(&mut allowed, &complement(&truth[i]));
                }
            }
            _ => {}
        }
    }
    allowed
}
