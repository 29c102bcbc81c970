use super::enumerate::{canonical_frames, enumerate_models, EnumerateError};
use super::eval::{eval_with, Assignment, EvalError, EvalOptions};
use super::{FrameClass, KripkeModel};
use crate::formula::Formula;
use crate::signature::Signature;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

const MAX_FAST_BITS: usize = 22;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BruteVerdict {
    Valid,
    /// A model and a world where the formula fails.
    Countermodel(KripkeModel, usize),
}

impl BruteVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, BruteVerdict::Valid)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BruteBounds {
    pub worlds: usize,
    pub domain: usize,
    pub prop_bound: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BruteError {
    Enumerate(EnumerateError),
    Eval(EvalError),
    /// The formula leaves the propositional-modal fragment and no domain bound was given.
    NeedsDomainBound(String),
    TooManyAtoms(usize),
}

impl fmt::Display for BruteError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BruteError::Enumerate(e) => e.fmt(f),
            BruteError::Eval(e) => e.fmt(f),
            BruteError::NeedsDomainBound(s) => {
                write!(f, "`{s}` is outside the propositional-modal fragment; a domain bound is required")
            }
            BruteError::TooManyAtoms(n) => write!(f, "{n} atoms is too many for exhaustive enumeration"),
        }
    }
}

impl core::error::Error for BruteError {}

impl From<EnumerateError> for BruteError {
    fn from(e: EnumerateError) -> Self {
        BruteError::Enumerate(e)
    }
}

impl From<EvalError> for BruteError {
    fn from(e: EvalError) -> Self {
        BruteError::Eval(e)
    }
}

/// Checks a propositional-modal formula on every model over frames of the
/// class with up to `max_worlds` worlds.
pub fn bruteforce_validity(f: &Formula, fc: FrameClass, max_worlds: usize) -> Result<BruteVerdict, BruteError> {
    if let Some(bad) = f.find_non_modal() {
        return Err(BruteError::NeedsDomainBound(format!("{bad}")));
    }
    fast(f, fc, max_worlds)
}

/// As [`bruteforce_validity`], for any formula. Free variables are read
/// universally.
pub fn bruteforce_validity_with(f: &Formula, fc: FrameClass, bounds: BruteBounds) -> Result<BruteVerdict, BruteError> {
    if f.is_propositional_modal() {
        return fast(f, fc, bounds.worlds);
    }
    let mut closed = f.clone();
    for v in f.free_properties() {
        closed = Formula::forall_prop(v, closed);
    }
    for v in f.free_individuals() {
        closed = Formula::forall(v, closed);
    }
    let sig = Signature::of(&closed);
    let opts = EvalOptions { prop_bound: bounds.prop_bound };
    let env = Assignment::default();
    for m in enumerate_models(&sig, bounds.worlds, bounds.domain, fc)? {
        for w in 0..m.len() {
            if !eval_with(&m, w, &closed, &env, &opts)? {
                return Ok(BruteVerdict::Countermodel(m, w));
            }
        }
    }
    Ok(BruteVerdict::Valid)
}

type Bits = Vec<u64>;

struct Space {
    n: usize,
    atoms: Vec<String>,
    words: usize,
    tail: u64,
}

impl Space {
    fn ones(&self) -> Bits {
        let mut b = vec![u64::MAX; self.words];
        *b.last_mut().expect("nonempty") &= self.tail;
        b
    }

    fn atom(&self, i: usize, w: usize) -> Bits {
        let bit = i * self.n + w;
        let mut out = vec![0u64; self.words];
        if bit < 6 {
            let mut pat = 0u64;
            for j in 0..64 {
                if j >> bit & 1 == 1 {
                    pat |= 1 << j;
                }
            }
            out.iter_mut().for_each(|x| *x = pat);
        } else {
            for (k, x) in out.iter_mut().enumerate() {
                if k >> (bit - 6) & 1 == 1 {
                    *x = u64::MAX;
                }
            }
        }
        *out.last_mut().expect("nonempty") &= self.tail;
        out
    }

    /// Truth of `f` at each world, as a bit set over valuations.
    fn truth(&self, f: &Formula, frame: &[u64]) -> Vec<Bits> {
        let n = self.n;
        let zip = |a: Vec<Bits>, b: Vec<Bits>, op: fn(u64, u64) -> u64| -> Vec<Bits> {
            a.into_iter().zip(b).map(|(x, y)| x.into_iter().zip(y).map(|(p, q)| op(p, q)).collect()).collect()
        };
        let tail = self.tail;
        let neg = move |a: Vec<Bits>| -> Vec<Bits> {
            a.into_iter()
                .map(|x| {
                    let mut y: Bits = x.into_iter().map(|p| !p).collect();
                    *y.last_mut().expect("nonempty") &= tail;
                    y
                })
                .collect()
        };
        match f {
            Formula::Atom(name, _) => {
                let i = self.atoms.iter().position(|a| a == name).expect("atom indexed");
                (0..n).map(|w| self.atom(i, w)).collect()
            }
            Formula::Not(a) => neg(self.truth(a, frame)),
            Formula::And(a, b) => zip(self.truth(a, frame), self.truth(b, frame), |p, q| p & q),
            Formula::Or(a, b) => zip(self.truth(a, frame), self.truth(b, frame), |p, q| p | q),
            Formula::Implies(a, b) => zip(neg(self.truth(a, frame)), self.truth(b, frame), |p, q| p | q),
            Formula::Iff(a, b) => {
                let x = zip(self.truth(a, frame), self.truth(b, frame), |p, q| p ^ q);
                neg(x)
            }
            Formula::Necessary(a) | Formula::Possible(a) => {
                let inner = self.truth(a, frame);
                let boxed = matches!(f, Formula::Necessary(_));
                (0..n)
                    .map(|w| {
                        let mut acc = if boxed { self.ones() } else { vec![0; self.words] };
                        for (v, t) in inner.iter().enumerate() {
                            if frame[w] >> v & 1 == 1 {
                                for (x, y) in acc.iter_mut().zip(t) {
                                    if boxed {
                                        *x &= y;
                                    } else {
                                        *x |= y;
                                    }
                                }
                            }
                        }
                        acc
                    })
                    .collect()
            }
            _ => unreachable!("fragment checked by caller"),
        }
    }
}

fn fast(f: &Formula, fc: FrameClass, max_worlds: usize) -> Result<BruteVerdict, BruteError> {
    let atoms: Vec<String> = f.atoms().into_iter().collect();
    for n in 1..=max_worlds {
        let frames = canonical_frames(n, fc)?;
        let bits = atoms.len() * n;
        if bits > MAX_FAST_BITS {
            return Err(BruteError::TooManyAtoms(atoms.len()));
        }
        let total = 1u64 << bits;
        let words = total.div_ceil(64) as usize;
        let tail = if total % 64 == 0 { u64::MAX } else { (1u64 << (total % 64)) - 1 };
        let space = Space { n, atoms: atoms.clone(), words, tail };
        for frame in frames {
            let truth = space.truth(f, &frame);
            let mut fails = vec![0u64; words];
            for t in &truth {
                for (x, y) in fails.iter_mut().zip(t) {
                    *x |= !y;
                }
            }
            *fails.last_mut().expect("nonempty") &= tail;
            if let Some((k, word)) = fails.iter().enumerate().find(|(_, x)| **x != 0) {
                let v = k as u64 * 64 + word.trailing_zeros() as u64;
                let world = (0..n).find(|&w| truth[w][(v / 64) as usize] >> (v % 64) & 1 == 0).expect("failing world");
                return Ok(BruteVerdict::Countermodel(build(&atoms, &frame, v), world));
            }
        }
    }
    Ok(BruteVerdict::Valid)
}

fn build(atoms: &[String], frame: &[u64], v: u64) -> KripkeModel {
    let n = frame.len();
    let mut m = KripkeModel::new((1..=n).map(|i| format!("w{i}")));
    m.domain = vec![String::from("d1")];
    for (i, &s) in frame.iter().enumerate() {
        for j in 0..n {
            if s >> j & 1 == 1 {
                m.add_access(i, j);
            }
        }
    }
    for (i, a) in atoms.iter().enumerate() {
        for w in 0..n {
            if v >> (i * n + w) & 1 == 1 {
                m.set_atom(w, a);
            }
        }
    }
    m
}
