use super::{FrameClass, KripkeModel};
use crate::signature::Signature;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Largest world count the enumerators accept.
pub const MAX_ENUM_WORLDS: usize = 4;
const MAX_VALUATION_BITS: usize = 30;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EnumerateError {
    TooManyWorlds { requested: usize, max: usize },
    TooManyValuationBits { bits: usize, max: usize },
    DomainTooLarge(usize),
}

impl fmt::Display for EnumerateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EnumerateError::TooManyWorlds { requested, max } => {
                write!(f, "enumeration limited to {max} worlds, {requested} requested")
            }
            EnumerateError::TooManyValuationBits { bits, max } => {
                write!(f, "valuation space of 2^{bits} exceeds 2^{max}")
            }
            EnumerateError::DomainTooLarge(d) => write!(f, "domain size {d} too large to enumerate"),
        }
    }
}

impl core::error::Error for EnumerateError {}

fn check_worlds(n: usize) -> Result<(), EnumerateError> {
    if n > MAX_ENUM_WORLDS {
        Err(EnumerateError::TooManyWorlds { requested: n, max: MAX_ENUM_WORLDS })
    } else {
        Ok(())
    }
}

fn code(frame: &[u64]) -> u64 {
    let n = frame.len();
    let mut c = 0;
    for (i, &s) in frame.iter().enumerate() {
        c |= s << (i * n);
    }
    c
}

fn decode(c: u64, n: usize) -> Vec<u64> {
    let row = (1u64 << n) - 1;
    (0..n).map(|i| (c >> (i * n)) & row).collect()
}

pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    heap_permute(n, &mut cur, &mut out);
    out.sort();
    out
}

fn heap_permute(k: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(a.clone());
        return;
    }
    for i in 0..k - 1 {
        heap_permute(k - 1, a, out);
        if k % 2 == 0 {
            a.swap(i, k - 1);
        } else {
            a.swap(0, k - 1);
        }
    }
    heap_permute(k - 1, a, out);
}

fn permute_frame(frame: &[u64], p: &[usize]) -> Vec<u64> {
    let n = frame.len();
    let mut out = alloc::vec![0u64; n];
    for i in 0..n {
        for j in 0..n {
            if frame[i] >> j & 1 == 1 {
                out[p[i]] |= 1 << p[j];
            }
        }
    }
    out
}

/// Every relation on `n` labeled worlds in the class, as successor masks, in
/// increasing order of their bit encoding.
pub fn enumerate_frames(n: usize, fc: FrameClass) -> Result<Vec<Vec<u64>>, EnumerateError> {
    check_worlds(n)?;
    let total = 1u64 << (n * n);
    Ok((0..total).map(|c| decode(c, n)).filter(|f| fc.admits_masks(f)).collect())
}

/// One representative (the smallest encoding) per isomorphism class.
pub fn canonical_frames(n: usize, fc: FrameClass) -> Result<Vec<Vec<u64>>, EnumerateError> {
    let perms = permutations(n);
    Ok(enumerate_frames(n, fc)?
        .into_iter()
        .filter(|f| {
            let c = code(f);
            perms.iter().all(|p| code(&permute_frame(f, p)) >= c)
        })
        .collect())
}

fn automorphisms(frame: &[u64]) -> Vec<Vec<usize>> {
    permutations(frame.len()).into_iter().filter(|p| permute_frame(frame, p) == frame).collect()
}

/// Vocabulary enumerated by [`enumerate_models`]. `G` and `NE` are left to
/// their definitions.
#[derive(Clone, Debug)]
struct Vocabulary {
    atoms: Vec<String>,
    predicates: Vec<(String, usize)>,
    properties: Vec<String>,
}

impl Vocabulary {
    fn of(sig: &Signature) -> Self {
        Vocabulary {
            atoms: sig.atoms.iter().cloned().collect(),
            predicates: sig.predicates.iter().cloned().collect(),
            properties: sig
                .named_properties
                .iter()
                .filter(|p| !crate::formula::NAMED_PROPERTIES.contains(&p.as_str()))
                .cloned()
                .collect(),
        }
    }

    fn bits(&self, n: usize, d: usize) -> usize {
        let preds: usize = self.predicates.iter().map(|(_, k)| d.pow(*k as u32) * n).sum();
        self.atoms.len() * n + preds + self.properties.len() * n * d
    }
}

/// Position of every valuation bit after renaming worlds by `p` and domain
/// elements by `q`.
fn bit_map(v: &Vocabulary, n: usize, d: usize, p: &[usize], q: &[usize]) -> Vec<usize> {
    let mut map = Vec::new();
    for i in 0..v.atoms.len() {
        for w in 0..n {
            map.push(i * n + p[w]);
        }
    }
    let mut off = v.atoms.len() * n;
    for (_, k) in &v.predicates {
        let tuples = d.pow(*k as u32);
        for t in 0..tuples {
            let args = tuple(t, *k, d);
            let moved = args.iter().fold(0, |acc, &a| acc * d + q[a]);
            for w in 0..n {
                map.push(off + moved * n + p[w]);
            }
        }
        off += tuples * n;
    }
    for _ in &v.properties {
        for w in 0..n {
            for x in 0..d {
                map.push(off + p[w] * d + q[x]);
            }
        }
        off += n * d;
    }
    map
}

fn tuple(mut t: usize, k: usize, d: usize) -> Vec<usize> {
    let mut out = alloc::vec![0; k];
    for slot in out.iter_mut().rev() {
        *slot = t % d;
        t /= d;
    }
    out
}

fn apply_map(map: &[usize], v: u64) -> u64 {
    let mut out = 0;
    for (i, &to) in map.iter().enumerate() {
        out |= (v >> i & 1) << to;
    }
    out
}

/// Lazily generated models, one per isomorphism class.
pub struct ModelStream {
    vocab: Vocabulary,
    configs: Vec<(usize, usize, Vec<u64>)>,
    next_config: usize,
    current: Option<Current>,
}

struct Current {
    n: usize,
    d: usize,
    frame: Vec<u64>,
    maps: Vec<Vec<usize>>,
    limit: u64,
    next: u64,
}

impl ModelStream {
    fn advance(&mut self) -> bool {
        let Some((n, d, frame)) = self.configs.get(self.next_config).cloned() else {
            return false;
        };
        self.next_config += 1;
        let bits = self.vocab.bits(n, d);
        let doms = permutations(d);
        let mut maps = Vec::new();
        for p in automorphisms(&frame) {
            for q in &doms {
                let is_identity =
                    p.iter().enumerate().all(|(i, &x)| i == x) && q.iter().enumerate().all(|(i, &x)| i == x);
                if !is_identity {
                    maps.push(bit_map(&self.vocab, n, d, &p, q));
                }
            }
        }
        self.current = Some(Current { n, d, frame, maps, limit: 1u64 << bits, next: 0 });
        true
    }

    fn build(&self, c: &Current, v: u64) -> KripkeModel {
        let mut m = KripkeModel::new((1..=c.n).map(|i| format!("w{i}")));
        m.domain = (1..=c.d).map(|i| format!("d{i}")).collect();
        for (i, &s) in c.frame.iter().enumerate() {
            for j in 0..c.n {
                if s >> j & 1 == 1 {
                    m.add_access(i, j);
                }
            }
        }
        let mut bit = 0;
        for a in &self.vocab.atoms {
            for w in 0..c.n {
                if v >> bit & 1 == 1 {
                    m.set_atom(w, a);
                }
                bit += 1;
            }
        }
        for (name, k) in &self.vocab.predicates {
            for t in 0..c.d.pow(*k as u32) {
                for w in 0..c.n {
                    if v >> bit & 1 == 1 {
                        m.valuation.insert((w, name.clone(), tuple(t, *k, c.d)));
                    }
                    bit += 1;
                }
            }
        }
        for name in &self.vocab.properties {
            let mut ext = alloc::vec![0u64; c.n];
            for slot in ext.iter_mut() {
                for x in 0..c.d {
                    if v >> bit & 1 == 1 {
                        *slot |= 1 << x;
                    }
                    bit += 1;
                }
            }
            m.extensions.insert(name.clone(), ext);
        }
        m
    }
}

impl Iterator for ModelStream {
    type Item = KripkeModel;

    fn next(&mut self) -> Option<KripkeModel> {
        loop {
            if let Some(c) = &mut self.current {
                while c.next < c.limit {
                    let v = c.next;
                    c.next += 1;
                    if c.maps.iter().all(|m| apply_map(m, v) >= v) {
                        let c = self.current.as_ref().expect("current config");
                        return Some(self.build(c, v));
                    }
                }
            }
            if !self.advance() {
                return None;
            }
        }
    }
}

/// Every model over `sig` with at most `max_worlds` worlds and between one
/// and `max_domain` individuals whose frame lies in `fc`. Models that differ
/// only by renaming worlds or individuals are produced once.
pub fn enumerate_models(
    sig: &Signature,
    max_worlds: usize,
    max_domain: usize,
    fc: FrameClass,
) -> Result<ModelStream, EnumerateError> {
    check_worlds(max_worlds)?;
    if max_domain > 4 {
        return Err(EnumerateError::DomainTooLarge(max_domain));
    }
    let vocab = Vocabulary::of(sig);
    let mut configs = Vec::new();
    for n in 1..=max_worlds {
        let frames = canonical_frames(n, fc)?;
        for d in 1..=max_domain.max(1) {
            let bits = vocab.bits(n, d);
            if bits > MAX_VALUATION_BITS {
                return Err(EnumerateError::TooManyValuationBits { bits, max: MAX_VALUATION_BITS });
            }
            for f in &frames {
                configs.push((n, d, f.clone()));
            }
        }
    }
    Ok(ModelStream { vocab, configs, next_config: 0, current: None })
}
