//! A Hilbert-style proof kernel.
//!
//! Systems are lists of axiom schemas, definitions and rules. A proof is a
//! numbered list of steps, each justified by a schema instance, a premise or
//! a rule applied to earlier steps; [`check_proof`] accepts or rejects it and
//! reports which premises the final step rests on.

mod check;
mod pattern;
mod quant;
mod taut;
mod unfold;

use crate::formula::{parse, Formula};
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use alloc::{format, vec};
use core::fmt;

pub use check::{check_proof, CheckReport, CheckVerdict, Failure, Reason};
pub use pattern::{instantiate_schema, match_schema, InstantiationError};
pub use quant::{QuantRule, Quantifiers, BODY, BOUND};
pub use taut::{is_tautology, skeleton_atoms, MAX_TAUT_ATOMS};
pub use unfold::{occurrences, unfold_at};

/// What a schema metavariable ranges over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MetaKind {
    /// Zero-argument atoms in the pattern stand for arbitrary formulas.
    Formula,
    /// Free property variables in the pattern stand for property terms.
    Property,
    /// Free individual variables stand for individual terms.
    Individual,
}

/// The value bound to a metavariable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BindingValue {
    Formula(Formula),
    /// A bare name, possibly negated; read as a property or individual term
    /// according to the metavariable it is bound to.
    Name {
        name: String,
        negated: bool,
    },
}

impl fmt::Display for BindingValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BindingValue::Formula(g) => write!(f, "{{{g}}}"),
            BindingValue::Name { name, negated } => write!(f, "{}{name}", if *negated { "~" } else { "" }),
        }
    }
}

pub type Bindings = BTreeMap<String, BindingValue>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SchemaBody {
    Pattern {
        pattern: Formula,
        metavars: Vec<(String, MetaKind)>,
    },
    /// Any instance of a propositional tautology.
    Tautology,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomSchema {
    pub name: String,
    pub body: SchemaBody,
}

impl AxiomSchema {
    /// A schema from pattern text; the kinds of metavariables are given by name.
    pub fn new(name: &str, pattern: &str, metavars: &[(&str, MetaKind)]) -> Self {
        let pattern = parse(pattern).unwrap_or_else(|e| panic!("schema {name}: {e}"));
        AxiomSchema {
            name: name.into(),
            body: SchemaBody::Pattern {
                pattern,
                metavars: metavars.iter().map(|(n, k)| (String::from(*n), *k)).collect(),
            },
        }
    }

    pub fn tautology() -> Self {
        AxiomSchema { name: "TAUT".into(), body: SchemaBody::Tautology }
    }

    pub fn pattern(&self) -> Option<&Formula> {
        match &self.body {
            SchemaBody::Pattern { pattern, .. } => Some(pattern),
            SchemaBody::Tautology => None,
        }
    }
}

/// `definiendum <-> definiens`, used by the unfold rule in either direction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Definition {
    pub name: String,
    pub definiendum: Formula,
    pub definiens: Formula,
    pub metavars: Vec<(String, MetaKind)>,
}

impl Definition {
    pub fn new(name: &str, definiendum: &str, definiens: &str, metavars: &[(&str, MetaKind)]) -> Self {
        Definition {
            name: name.into(),
            definiendum: parse(definiendum).unwrap_or_else(|e| panic!("definition {name}: {e}")),
            definiens: parse(definiens).unwrap_or_else(|e| panic!("definition {name}: {e}")),
            metavars: metavars.iter().map(|(n, k)| (String::from(*n), *k)).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    ModusPonens,
    Necessitation,
    GenIndividual,
    GenProperty,
    Unfold,
}

impl Rule {
    pub fn keyword(self) -> &'static str {
        match self {
            Rule::ModusPonens => "mp",
            Rule::Necessitation => "nec",
            Rule::GenIndividual => "geni",
            Rule::GenProperty => "genp",
            Rule::Unfold => "unfold",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalSystem {
    pub name: String,
    pub schemas: Vec<AxiomSchema>,
    pub definitions: Vec<Definition>,
    pub rules: BTreeSet<Rule>,
    /// First- and second-order quantifier logic, if the system has any.
    pub quantifiers: Option<Quantifiers>,
}

impl FormalSystem {
    pub fn schema(&self, name: &str) -> Option<&AxiomSchema> {
        self.schemas.iter().find(|s| s.name == name)
    }

    pub fn definition(&self, name: &str) -> Option<&Definition> {
        self.definitions.iter().find(|d| d.name == name)
    }

    /// Adds a schema, replacing one of the same name.
    pub fn with_schema(mut self, s: AxiomSchema) -> Self {
        match self.schemas.iter_mut().find(|x| x.name == s.name) {
            Some(slot) => *slot = s,
            None => self.schemas.push(s),
        }
        self
    }

    pub fn without_schema(mut self, name: &str) -> Self {
        self.schemas.retain(|s| s.name != name);
        self
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    Axiom { schema: String, bindings: Bindings },
    Premise(String),
    Mp { minor: usize, major: usize },
    Nec(usize),
    GenI { step: usize, var: String },
    GenP { step: usize, var: String },
    Unfold { step: usize, definition: String, occurrence: usize },
}

impl Justification {
    pub fn axiom(schema: &str) -> Self {
        Justification::Axiom { schema: schema.into(), bindings: Bindings::new() }
    }

    /// Step ids this justification refers to.
    pub fn references(&self) -> Vec<usize> {
        match self {
            Justification::Axiom { .. } | Justification::Premise(_) => vec![],
            Justification::Mp { minor, major } => vec![*minor, *major],
            Justification::Nec(i) | Justification::GenI { step: i, .. } | Justification::GenP { step: i, .. } => {
                vec![*i]
            }
            Justification::Unfold { step, .. } => vec![*step],
        }
    }

    pub fn map_references(&self, f: impl Fn(usize) -> usize) -> Justification {
        let mut j = self.clone();
        match &mut j {
            Justification::Axiom { .. } | Justification::Premise(_) => {}
            Justification::Mp { minor, major } => {
                *minor = f(*minor);
                *major = f(*major);
            }
            Justification::Nec(i)
            | Justification::GenI { step: i, .. }
            | Justification::GenP { step: i, .. }
            | Justification::Unfold { step: i, .. } => *i = f(*i),
        }
        j
    }
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Justification::Axiom { schema, bindings } => {
                write!(f, "axiom {schema}")?;
                for (k, v) in bindings {
                    write!(f, " {k}={v}")?;
                }
                Ok(())
            }
            Justification::Premise(n) => write!(f, "premise {n}"),
            Justification::Mp { minor, major } => write!(f, "mp {minor} {major}"),
            Justification::Nec(i) => write!(f, "nec {i}"),
            Justification::GenI { step, var } => write!(f, "geni {step} {var}"),
            Justification::GenP { step, var } => write!(f, "genp {step} {var}"),
            Justification::Unfold { step, definition, occurrence } => {
                write!(f, "unfold {step} {definition} {occurrence}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub id: usize,
    pub formula: Formula,
    pub justification: Justification,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Proof {
    pub steps: Vec<Step>,
}

impl Proof {
    pub fn step(&self, id: usize) -> Option<&Step> {
        self.steps.iter().find(|s| s.id == id)
    }

    pub fn last(&self) -> Option<&Step> {
        self.steps.last()
    }
}

fn formula_vars(names: &[&str]) -> Vec<(&'static str, MetaKind)> {
    names
        .iter()
        .map(|n| match *n {
            "phi" => ("phi", MetaKind::Formula),
            "psi" => ("psi", MetaKind::Formula),
            other => panic!("unexpected metavariable {other}"),
        })
        .collect()
}

fn modal(name: &str, pattern: &str) -> AxiomSchema {
    let mut vars = vec![];
    for v in ["phi", "psi"] {
        if pattern.contains(v) {
            vars.push(v);
        }
    }
    AxiomSchema::new(name, pattern, &formula_vars(&vars))
}

/// The modal schemas shared by every normal system, in order.
fn base_modal() -> Vec<AxiomSchema> {
    vec![
        modal("T", "[]phi -> phi"),
        modal("T-DIA", "phi -> <>phi"),
        modal("DUAL-BOX", "[]phi <-> ~<>~phi"),
        modal("DUAL-DIA", "<>phi <-> ~[]~phi"),
        modal("BOX-AND", "[](phi & psi) <-> []phi & []psi"),
        modal("DIA-OR", "<>(phi | psi) <-> <>phi | <>psi"),
        modal("BOX-OR", "[]phi | []psi -> [](phi | psi)"),
        modal("DIA-AND", "<>(phi & psi) -> <>phi & <>psi"),
        modal("K", "[](phi -> psi) -> []phi -> []psi"),
        modal("DIA-IMP", "(<>phi -> <>psi) -> <>(phi -> psi)"),
        AxiomSchema::tautology(),
    ]
}

pub fn past_d() -> AxiomSchema {
    modal("PAST-D", "A- phi -> E- phi")
}

pub fn fut_d() -> AxiomSchema {
    modal("FUT-D", "A+ phi -> E+ phi")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnknownSystem(pub String);

impl fmt::Display for UnknownSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown system `{}`", self.0)
    }
}

impl core::error::Error for UnknownSystem {}

/// The propositional systems `T`, `S4`, `S5` and the tense system `TMP`.
pub fn builtin_system(name: &str) -> Result<FormalSystem, UnknownSystem> {
    let rules = |rs: &[Rule]| rs.iter().copied().collect::<BTreeSet<_>>();
    let mut schemas = base_modal();
    match name {
        "T" => {}
        "S4" => {
            schemas.push(modal("BOX-BOX", "[][]phi <-> []phi"));
            schemas.push(modal("DIA-DIA", "<><>phi <-> <>phi"));
        }
        "S5" => {
            schemas.push(modal("BOX-BOX", "[][]phi <-> []phi"));
            schemas.push(modal("DIA-DIA", "<><>phi <-> <>phi"));
            schemas.push(modal("DIA-BOX", "<>[]phi -> []phi"));
        }
        "TMP" => {
            return Ok(FormalSystem {
                name: name.into(),
                schemas: vec![AxiomSchema::tautology(), past_d(), fut_d()],
                definitions: vec![],
                rules: rules(&[Rule::ModusPonens]),
                quantifiers: None,
            })
        }
        other => return Err(UnknownSystem(other.into())),
    }
    Ok(FormalSystem {
        name: name.into(),
        schemas,
        definitions: vec![],
        rules: rules(&[Rule::ModusPonens, Rule::Necessitation]),
        quantifiers: None,
    })
}

pub(crate) fn describe_kind(k: MetaKind) -> String {
    format!("{k:?}").to_lowercase()
}
