use crate::formula::{Formula, IndTerm, PropBase, PropTerm, NAMED_PROPERTIES};
use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use core::fmt;

/// The non-logical vocabulary a formula or model is interpreted over.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    pub atoms: BTreeSet<String>,
    pub predicates: BTreeSet<(String, usize)>,
    pub named_properties: BTreeSet<String>,
    pub constants: BTreeSet<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SignatureError {
    UnknownAtom(String),
    UnknownPredicate(String, usize),
    UnknownProperty(String),
    UnknownConstant(String),
}

impl fmt::Display for SignatureError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SignatureError::UnknownAtom(a) => write!(f, "atom `{a}` is not in the signature"),
            SignatureError::UnknownPredicate(p, n) => {
                write!(f, "predicate `{p}/{n}` is not in the signature")
            }
            SignatureError::UnknownProperty(p) => write!(f, "property `{p}` is not in the signature"),
            SignatureError::UnknownConstant(c) => write!(f, "constant `{c}` is not in the signature"),
        }
    }
}

impl core::error::Error for SignatureError {}

impl Signature {
    /// The smallest signature containing every name used in `f`. `G` and `NE`
    /// are always included.
    pub fn of(f: &Formula) -> Signature {
        let mut sig = Signature::default();
        sig.absorb(f);
        sig
    }

    pub fn absorb(&mut self, f: &Formula) {
        for n in NAMED_PROPERTIES {
            self.named_properties.insert(n.to_string());
        }
        f.walk(&mut |g| match g {
            Formula::Atom(n, args) if args.is_empty() => {
                self.atoms.insert(n.clone());
            }
            Formula::Atom(n, args) => {
                self.predicates.insert((n.clone(), args.len()));
                for a in args {
                    if let IndTerm::Const(c) = a {
                        self.constants.insert(c.clone());
                    }
                }
            }
            Formula::Positive(t) => self.absorb_prop(t),
            Formula::Apply(t, x) | Formula::Essence(t, x) => {
                self.absorb_prop(t);
                if let IndTerm::Const(c) = x {
                    self.constants.insert(c.clone());
                }
            }
            _ => {}
        });
    }

    fn absorb_prop(&mut self, t: &PropTerm) {
        if let PropBase::Named(n) = &t.base {
            self.named_properties.insert(n.clone());
        }
    }

    /// Checks that every name in `f` is declared here.
    pub fn check(&self, f: &Formula) -> Result<(), SignatureError> {
        let mut err = None;
        let prop_ok = |t: &PropTerm| match &t.base {
            PropBase::Named(n) if !self.named_properties.contains(n) => {
                Some(SignatureError::UnknownProperty(n.clone()))
            }
            _ => None,
        };
        let const_ok = |x: &IndTerm| match x {
            IndTerm::Const(c) if !self.constants.contains(c) => Some(SignatureError::UnknownConstant(c.clone())),
            _ => None,
        };
        f.walk(&mut |g| {
            if err.is_some() {
                return;
            }
            err = match g {
                Formula::Atom(n, args) if args.is_empty() => {
                    (!self.atoms.contains(n)).then(|| SignatureError::UnknownAtom(n.clone()))
                }
                Formula::Atom(n, args) => {
                    if !self.predicates.contains(&(n.clone(), args.len())) {
                        Some(SignatureError::UnknownPredicate(n.clone(), args.len()))
                    } else {
                        args.iter().find_map(const_ok)
                    }
                }
                Formula::Positive(t) => prop_ok(t),
                Formula::Apply(t, x) | Formula::Essence(t, x) => prop_ok(t).or_else(|| const_ok(x)),
                _ => None,
            };
        });
        err.map_or(Ok(()), Err)
    }
}
