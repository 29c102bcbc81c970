//! Temporalization, time reversal and symmetry-breaking temporalization,
//! lifted from formulas to systems and to proofs.

use crate::formula::{alpha_equal, normalize, Formula, Mode, Tense};
use crate::kernel::{
    check_proof, fut_d, occurrences, past_d, unfold_at, AxiomSchema, CheckReport, CheckVerdict, Definition, Failure,
    FormalSystem, Justification, Proof, Reason, SchemaBody, Step,
};
use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Transformation {
    Temporalize,
    TimeReverse,
    Break,
}

impl Transformation {
    pub const ALL: [Transformation; 3] =
        [Transformation::Temporalize, Transformation::TimeReverse, Transformation::Break];

    pub fn name(self) -> &'static str {
        match self {
            Transformation::Temporalize => "temporalize",
            Transformation::TimeReverse => "time-reverse",
            Transformation::Break => "break",
        }
    }

    /// Suffix appended to the name of a transformed system.
    pub fn suffix(self) -> &'static str {
        match self {
            Transformation::Temporalize => "_T",
            Transformation::TimeReverse => "_R",
            Transformation::Break => "_TB",
        }
    }

    pub fn apply(self, f: &Formula) -> Formula {
        match self {
            Transformation::Temporalize => temporalize(f),
            Transformation::TimeReverse => time_reverse(f),
            Transformation::Break => break_temporalize(f),
        }
    }
}

impl fmt::Display for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnknownTransformation(pub String);

impl fmt::Display for UnknownTransformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown transformation `{}` (expected temporalize, time-reverse or break)", self.0)
    }
}

impl core::error::Error for UnknownTransformation {}

impl FromStr for Transformation {
    type Err = UnknownTransformation;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Transformation::ALL.into_iter().find(|t| t.name() == s).ok_or_else(|| UnknownTransformation(s.into()))
    }
}

fn tagged(tense: Tense, m: Mode, q: &Formula) -> Formula {
    Formula::temporal(tense, m, q.clone())
}

fn quantifiers(f: &Formula, split: &dyn Fn(Mode, &Formula) -> Formula) -> Formula {
    match f {
        Formula::IQuant(m, x, body) => {
            let q = Formula::IQuant(*m, x.clone(), Box::new(quantifiers(body, split)));
            split(*m, &q)
        }
        _ => f.map_children(|c| quantifiers(c, split)),
    }
}

/// Replaces each individual quantification by the conjunction of its past
/// and future copies.
pub fn temporalize(f: &Formula) -> Formula {
    quantifiers(f, &|m, q| Formula::and(tagged(Tense::Past, m, q), tagged(Tense::Future, m, q)))
}

/// Swaps past and future on every tense operator.
pub fn time_reverse(f: &Formula) -> Formula {
    match f {
        Formula::Temporal(t, m, body) => Formula::temporal(t.reversed(), *m, time_reverse(body)),
        _ => f.map_children(time_reverse),
    }
}

/// Like [`temporalize`], with an exclusive disjunction of the two copies.
pub fn break_temporalize(f: &Formula) -> Formula {
    quantifiers(f, &|m, q| {
        let past = tagged(Tense::Past, m, q);
        let future = tagged(Tense::Future, m, q);
        Formula::or(Formula::and(past.clone(), Formula::not(future.clone())), Formula::and(future, Formula::not(past)))
    })
}

fn transform_schema(s: &AxiomSchema, t: Transformation) -> AxiomSchema {
    let body = match &s.body {
        SchemaBody::Pattern { pattern, metavars } => {
            SchemaBody::Pattern { pattern: t.apply(pattern), metavars: metavars.clone() }
        }
        SchemaBody::Tautology => SchemaBody::Tautology,
    };
    AxiomSchema { name: s.name.clone(), body }
}

/// Applies `t` to every schema, definition and quantifier template, and adds
/// the seriality axioms of time.
pub fn transform_system(s: &FormalSystem, t: Transformation) -> FormalSystem {
    let mut out = FormalSystem {
        name: format!("{}{}", s.name, t.suffix()),
        schemas: s.schemas.iter().map(|a| transform_schema(a, t)).collect(),
        definitions: s
            .definitions
            .iter()
            .map(|d| Definition {
                name: d.name.clone(),
                definiendum: t.apply(&d.definiendum),
                definiens: t.apply(&d.definiens),
                metavars: d.metavars.clone(),
            })
            .collect(),
        rules: s.rules.clone(),
        quantifiers: s.quantifiers.as_ref().map(|q| q.map(|f| t.apply(f))),
    };
    for extra in [past_d(), fut_d()] {
        if out.schema(&extra.name).is_none() {
            out.schemas.push(extra);
        }
    }
    out
}

fn normalized_patterns(s: &FormalSystem) -> Vec<String> {
    let mut v: Vec<String> = s
        .schemas
        .iter()
        .map(|a| match a.pattern() {
            Some(p) => normalize(p).to_string(),
            None => a.name.clone(),
        })
        .chain(s.definitions.iter().map(|d| format!("{} := {}", normalize(&d.definiendum), normalize(&d.definiens))))
        .collect();
    v.sort();
    v
}

/// Whether time reversal maps the axioms and definitions of `s` onto
/// themselves, up to normalization.
pub fn time_reversal_invariant(s: &FormalSystem) -> bool {
    normalized_patterns(s) == normalized_patterns(&transform_system(s, Transformation::TimeReverse))
}

#[derive(Clone, Debug)]
pub struct Replay {
    pub proof: Proof,
    pub goal: Formula,
    pub premises: BTreeMap<String, Formula>,
    pub report: CheckReport,
}

const MAX_UNFOLD_CHAIN: usize = 8;

/// Successive single unfoldings leading from `from` to `to`, as
/// `(formula, occurrence)` pairs.
fn unfold_chain(def: &Definition, from: &Formula, to: &Formula) -> Option<Vec<(Formula, usize)>> {
    let (a, b) = (occurrences(def, from), occurrences(def, to));
    if a <= b || a - b > MAX_UNFOLD_CHAIN {
        return None;
    }
    fn go(def: &Definition, cur: &Formula, to: &Formula, left: usize, path: &mut Vec<(Formula, usize)>) -> bool {
        if left == 0 {
            return alpha_equal(cur, to);
        }
        for k in 1..=occurrences(def, cur) {
            let Some(next) = unfold_at(def, cur, k) else { continue };
            path.push((next.clone(), k));
            if go(def, &next, to, left - 1, path) {
                return true;
            }
            path.pop();
        }
        false
    }
    let mut path = Vec::new();
    go(def, from, to, a - b, &mut path).then_some(path)
}

/// Transforms every step of `proof` by `t` and checks the result in
/// `target`. An unfolding step may become several when the transformation
/// duplicated the unfolded occurrence.
pub fn replay_transformed(
    proof: &Proof,
    premises: &BTreeMap<String, Formula>,
    t: Transformation,
    target: &FormalSystem,
) -> Replay {
    let premises: BTreeMap<String, Formula> = premises.iter().map(|(k, v)| (k.clone(), t.apply(v))).collect();
    let goal = proof.last().map(|s| t.apply(&s.formula)).unwrap_or_else(|| Formula::atom("true"));
    let mut ids: BTreeMap<usize, usize> = BTreeMap::new();
    let mut steps: Vec<Step> = Vec::new();
    let mut formulas: BTreeMap<usize, Formula> = BTreeMap::new();
    for s in &proof.steps {
        let formula = t.apply(&s.formula);
        let next = steps.len() + 1;
        let remap = |i: usize| ids.get(&i).copied().unwrap_or(usize::MAX);
        match &s.justification {
            Justification::Unfold { step, definition, .. } => {
                let prev = remap(*step);
                let chain = target.definition(definition).zip(formulas.get(step)).and_then(|(d, p)| {
                    if let Some(c) = unfold_chain(d, p, &formula) {
                        return Some(c);
                    }
                    // Folding: unfold the new formula back to the old one and reverse.
                    let back = unfold_chain(d, &formula, p)?;
                    let mut forms: Vec<Formula> = back.iter().map(|(f, _)| f.clone()).collect();
                    forms.pop();
                    forms.reverse();
                    forms.push(formula.clone());
                    Some(forms.into_iter().zip(back.iter().rev().map(|(_, k)| *k)).collect())
                });
                let Some(chain) = chain else {
                    let report = CheckReport {
                        verdict: CheckVerdict::Reject,
                        failure: Some(Failure {
                            step: next,
                            reason: Reason::BadUnfold,
                            detail: format!("step {} does not replay under {t}", s.id),
                        }),
                        premises_used: Default::default(),
                        goal_matched: false,
                    };
                    return Replay { proof: Proof { steps }, goal, premises, report };
                };
                let mut prev = prev;
                let n = chain.len();
                for (i, (f, k)) in chain.into_iter().enumerate() {
                    let id = steps.len() + 1;
                    let f = if i + 1 == n { formula.clone() } else { f };
                    steps.push(Step {
                        id,
                        formula: f,
                        justification: Justification::Unfold {
                            step: prev,
                            definition: definition.clone(),
                            occurrence: k,
                        },
                    });
                    prev = id;
                }
            }
            Justification::Axiom { schema, bindings } => {
                let bindings = bindings
                    .iter()
                    .map(|(k, v)| {
                        let v = match v {
                            crate::kernel::BindingValue::Formula(g) => crate::kernel::BindingValue::Formula(t.apply(g)),
                            other => other.clone(),
                        };
                        (k.clone(), v)
                    })
                    .collect();
                steps.push(Step {
                    id: next,
                    formula: formula.clone(),
                    justification: Justification::Axiom { schema: schema.clone(), bindings },
                });
            }
            j => steps.push(Step { id: next, formula: formula.clone(), justification: j.map_references(remap) }),
        }
        ids.insert(s.id, steps.len());
        formulas.insert(s.id, formula);
    }
    let proof = Proof { steps };
    let report = check_proof(target, &proof, &goal, &premises);
    Replay { proof, goal, premises, report }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{parse, render};
    use crate::ontology::{system_O, system_by_name, SYSTEM_NAMES};

    fn p(s: &str) -> Formula {
        parse(s).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(render(&temporalize(&p("ex x. G(x)"))), "(E- ex x. G(x)) & (E+ ex x. G(x))");
        assert_eq!(temporalize(&p("p -> q")), p("p -> q"));
        assert_eq!(render(&temporalize(&p("[] ex x. G(x)"))), "[]((E- ex x. G(x)) & (E+ ex x. G(x)))");
        assert_eq!(time_reverse(&p("A- p")), p("A+ p"));
        assert_eq!(
            break_temporalize(&p("ex x. G(x)")),
            p("((E- ex x. G(x)) & ~(E+ ex x. G(x))) | ((E+ ex x. G(x)) & ~(E- ex x. G(x)))")
        );
        assert_eq!(
            break_temporalize(&p("all x. F(x)")),
            p("((A- all x. F(x)) & ~(A+ all x. F(x))) | ((A+ all x. F(x)) & ~(A- all x. F(x)))")
        );
        assert_eq!(temporalize(&p("allp F. Pos(F)")), p("allp F. Pos(F)"));
    }

    #[test]
    fn nested_quantifiers_are_transformed_inside_out() {
        let f = temporalize(&p("all x. ex y. R(x,y)"));
        let inner = "(E- ex y. R(x,y)) & (E+ ex y. R(x,y))";
        let want = format!("(A- all x. {inner}) & (A+ all x. {inner})");
        assert!(alpha_equal(&f, &p(&want)), "{f}");
    }

    #[test]
    fn systems() {
        let ot = transform_system(&system_O(), Transformation::Temporalize);
        assert_eq!(ot.name, "O_T");
        assert_eq!(ot.schema("POS-G").unwrap().pattern(), Some(&p("Pos(G)")));
        assert!(ot.schema("PAST-D").is_some() && ot.schema("FUT-D").is_some());
        for n in SYSTEM_NAMES {
            let s = transform_system(&system_by_name(n).unwrap(), Transformation::Temporalize);
            assert_eq!(time_reversal_invariant(&s), n != "O_TB+NFP", "{n}");
        }
    }

    #[test]
    fn replay_propositional_under_reversal() {
        let sys = system_by_name("T").unwrap();
        let steps = alloc::vec![
            Step { id: 1, formula: p("p -> p"), justification: Justification::axiom("TAUT") },
            Step { id: 2, formula: p("[](p -> p)"), justification: Justification::Nec(1) },
        ];
        let r = replay_transformed(&Proof { steps }, &BTreeMap::new(), Transformation::TimeReverse, &sys);
        assert!(r.report.accepted(), "{}", r.report);
    }
}
