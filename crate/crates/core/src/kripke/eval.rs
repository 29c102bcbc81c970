use super::{DomainMask, Extension, KripkeModel};
use crate::formula::{Formula, IndTerm, Mode, PropBase, PropTerm, Tense};
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EvalOptions {
    /// Largest `domain * worlds` for which property quantifiers are evaluated.
    pub prop_bound: usize,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions { prop_bound: 6 }
    }
}

/// Values of free variables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Assignment {
    pub individuals: BTreeMap<String, usize>,
    pub properties: BTreeMap<String, Extension>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvalError {
    MissingTimeOrder,
    BoundExceeded { cells: usize, bound: usize },
    Uninterpreted(String),
    UnboundVariable(String),
    UnknownIndividual(String),
    NoSuchWorld(usize),
    DomainTooLarge(usize),
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::MissingTimeOrder => f.write_str("temporal operator evaluated in a model without a time line"),
            EvalError::BoundExceeded { cells, bound } => {
                write!(f, "property quantification needs domain*worlds <= {bound}, model has {cells}")
            }
            EvalError::Uninterpreted(s) => write!(f, "uninterpreted symbol `{s}`"),
            EvalError::UnboundVariable(v) => write!(f, "variable `{v}` has no value"),
            EvalError::UnknownIndividual(c) => write!(f, "constant `{c}` is not in the domain"),
            EvalError::NoSuchWorld(w) => write!(f, "world index {w} out of range"),
            EvalError::DomainTooLarge(n) => write!(f, "domain of {n} elements exceeds 64"),
        }
    }
}

impl core::error::Error for EvalError {}

pub fn eval(m: &KripkeModel, w: usize, f: &Formula, env: &Assignment) -> Result<bool, EvalError> {
    eval_with(m, w, f, env, &EvalOptions::default())
}

pub fn eval_with(
    m: &KripkeModel,
    w: usize,
    f: &Formula,
    env: &Assignment,
    opts: &EvalOptions,
) -> Result<bool, EvalError> {
    if w >= m.len() {
        return Err(EvalError::NoSuchWorld(w));
    }
    if m.domain.len() > 64 {
        return Err(EvalError::DomainTooLarge(m.domain.len()));
    }
    let mut ev = Evaluator { m, opts: *opts, env: env.clone() };
    ev.holds(w, f)
}

struct Evaluator<'a> {
    m: &'a KripkeModel,
    opts: EvalOptions,
    env: Assignment,
}

impl Evaluator<'_> {
    fn individual(&self, t: &IndTerm) -> Result<usize, EvalError> {
        match t {
            IndTerm::Var(v) => {
                self.env.individuals.get(v).copied().ok_or_else(|| EvalError::UnboundVariable(v.clone()))
            }
            IndTerm::Const(c) => self.m.individual(c).ok_or_else(|| EvalError::UnknownIndividual(c.clone())),
        }
    }

    fn extension_count(&self) -> Result<u64, EvalError> {
        let cells = self.m.domain.len() * self.m.len();
        if cells > self.opts.prop_bound || cells > 63 {
            return Err(EvalError::BoundExceeded { cells, bound: self.opts.prop_bound });
        }
        Ok(1u64 << cells)
    }

    fn nth_extension(&self, k: u64) -> Extension {
        let d = self.m.domain.len();
        let mask = self.m.full_domain_mask();
        (0..self.m.len()).map(|w| (k >> (w * d)) & mask).collect()
    }

    fn all_extensions(&self) -> Result<impl Iterator<Item = Extension> + '_, EvalError> {
        let n = self.extension_count()?;
        Ok((0..n).map(move |k| self.nth_extension(k)))
    }

    fn extension(&mut self, t: &PropTerm) -> Result<Extension, EvalError> {
        let base = match &t.base {
            PropBase::Var(v) => {
                self.env.properties.get(v).cloned().ok_or_else(|| EvalError::UnboundVariable(v.clone()))?
            }
            PropBase::Named(n) => match self.m.extensions.get(n) {
                Some(e) => e.clone(),
                None => self.defined_extension(n)?,
            },
        };
        if t.negated {
            let full = self.m.full_domain_mask();
            Ok(base.iter().map(|e| !e & full).collect())
        } else {
            Ok(base)
        }
    }

    /// Extension of `G` or `NE` computed from their definitions.
    fn defined_extension(&mut self, name: &str) -> Result<Extension, EvalError> {
        let mut out = Vec::with_capacity(self.m.len());
        for w in 0..self.m.len() {
            let mut mask: DomainMask = 0;
            for x in 0..self.m.domain.len() {
                let holds = match name {
                    "G" => self.god_like(w, x)?,
                    "NE" => self.necessary_existence(w, x)?,
                    other => return Err(EvalError::Uninterpreted(other.into())),
                };
                if holds {
                    mask |= 1 << x;
                }
            }
            out.push(mask);
        }
        Ok(out)
    }

    fn positive(&self, w: usize, e: &Extension) -> Result<bool, EvalError> {
        let pos = self.m.positivity.as_ref().ok_or_else(|| EvalError::Uninterpreted("Pos".into()))?;
        Ok(pos.get(w).is_some_and(|set| set.contains(e)))
    }

    fn god_like(&mut self, w: usize, x: usize) -> Result<bool, EvalError> {
        for f in self.all_extensions()? {
            if self.positive(w, &f)? && f[w] >> x & 1 == 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn essence(&self, w: usize, phi: &Extension, x: usize) -> Result<bool, EvalError> {
        if phi[w] >> x & 1 == 0 {
            return Ok(false);
        }
        for f in self.all_extensions()? {
            if f[w] >> x & 1 == 1 && self.m.access[w].iter().any(|&v| phi[v] & !f[v] != 0) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn necessary_existence(&mut self, w: usize, x: usize) -> Result<bool, EvalError> {
        for f in self.all_extensions()? {
            if self.essence(w, &f, x)? && self.m.access[w].iter().any(|&v| f[v] == 0) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn timeline(&self, w: usize, tense: Tense) -> Result<Vec<usize>, EvalError> {
        let t = self.m.time.as_ref().ok_or(EvalError::MissingTimeOrder)?;
        let pos = t.iter().position(|&v| v == w).ok_or(EvalError::MissingTimeOrder)?;
        Ok(match tense {
            Tense::Past => t[..pos].to_vec(),
            Tense::Future => t[pos + 1..].to_vec(),
        })
    }

    fn holds(&mut self, w: usize, f: &Formula) -> Result<bool, EvalError> {
        match f {
            Formula::Atom(n, args) => {
                let mut idx = Vec::with_capacity(args.len());
                for a in args {
                    idx.push(self.individual(a)?);
                }
                Ok(self.m.fact_holds(w, n, &idx))
            }
            Formula::Positive(t) => {
                let e = self.extension(t)?;
                self.positive(w, &e)
            }
            Formula::Apply(t, x) => {
                let x = self.individual(x)?;
                Ok(self.extension(t)?[w] >> x & 1 == 1)
            }
            Formula::Essence(t, x) => {
                let x = self.individual(x)?;
                let e = self.extension(t)?;
                self.essence(w, &e, x)
            }
            Formula::Not(a) => Ok(!self.holds(w, a)?),
            Formula::And(a, b) => Ok(self.holds(w, a)? && self.holds(w, b)?),
            Formula::Or(a, b) => Ok(self.holds(w, a)? || self.holds(w, b)?),
            Formula::Implies(a, b) => Ok(!self.holds(w, a)? || self.holds(w, b)?),
            Formula::Iff(a, b) => Ok(self.holds(w, a)? == self.holds(w, b)?),
            Formula::Necessary(a) => {
                for &v in &self.m.access[w] {
                    if !self.holds(v, a)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Formula::Possible(a) => {
                for &v in &self.m.access[w] {
                    if self.holds(v, a)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
            Formula::Temporal(tense, mode, a) => {
                let span = self.timeline(w, *tense)?;
                self.quantify(*mode, span.into_iter(), |ev, v| ev.holds(v, a))
            }
            Formula::IQuant(mode, x, body) => {
                let saved = self.env.individuals.get(x).copied();
                let r = self.quantify(*mode, 0..self.m.domain.len(), |ev, d| {
                    ev.env.individuals.insert(x.clone(), d);
                    ev.holds(w, body)
                });
                match saved {
                    Some(d) => self.env.individuals.insert(x.clone(), d),
                    None => self.env.individuals.remove(x),
                };
                r
            }
            Formula::PQuant(mode, v, body) => {
                let n = self.extension_count()?;
                let saved = self.env.properties.get(v).cloned();
                let r = self.quantify(*mode, 0..n, |ev, k| {
                    let e = ev.nth_extension(k);
                    ev.env.properties.insert(v.clone(), e);
                    ev.holds(w, body)
                });
                match saved {
                    Some(e) => self.env.properties.insert(v.clone(), e),
                    None => self.env.properties.remove(v),
                };
                r
            }
        }
    }

    fn quantify<I, T>(
        &mut self,
        mode: Mode,
        items: I,
        mut body: impl FnMut(&mut Self, T) -> Result<bool, EvalError>,
    ) -> Result<bool, EvalError>
    where
        I: Iterator<Item = T>,
    {
        let want = mode == Mode::Existential;
        for it in items {
            if body(self, it)? == want {
                return Ok(want);
            }
        }
        Ok(!want)
    }
}
