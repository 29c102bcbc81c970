use super::quant::QuantError;
use super::{
    is_tautology, match_schema, unfold_at, FormalSystem, Justification, Proof, QuantRule, Rule, SchemaBody,
    MAX_TAUT_ATOMS,
};
use crate::formula::{alpha_equal, Formula};
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use core::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckVerdict {
    Accept,
    Reject,
}

impl fmt::Display for CheckVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckVerdict::Accept => "ACCEPT",
            CheckVerdict::Reject => "REJECT",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Reason {
    BadInstantiation,
    BadMp,
    BadNec,
    NecOnPremise,
    Capture,
    UnknownDependency,
    GoalMismatch,
    UnknownSchema,
    UnknownPremise,
    BadUnfold,
    BadGen,
    RuleNotAvailable,
    BadStepOrder,
}

impl Reason {
    pub fn code(self) -> &'static str {
        match self {
            Reason::BadInstantiation => "bad-instantiation",
            Reason::BadMp => "bad-mp",
            Reason::BadNec => "bad-nec",
            Reason::NecOnPremise => "nec-on-premise",
            Reason::Capture => "capture",
            Reason::UnknownDependency => "unknown-dependency",
            Reason::GoalMismatch => "goal-mismatch",
            Reason::UnknownSchema => "unknown-schema",
            Reason::UnknownPremise => "unknown-premise",
            Reason::BadUnfold => "bad-unfold",
            Reason::BadGen => "bad-gen",
            Reason::RuleNotAvailable => "rule-not-available",
            Reason::BadStepOrder => "bad-step-order",
        }
    }
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub step: usize,
    pub reason: Reason,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub verdict: CheckVerdict,
    pub failure: Option<Failure>,
    /// Premises the final step depends on.
    pub premises_used: BTreeSet<String>,
    pub goal_matched: bool,
}

impl CheckReport {
    pub fn accepted(&self) -> bool {
        self.verdict == CheckVerdict::Accept
    }
}

struct Checked<'a> {
    formula: &'a Formula,
    deps: BTreeSet<String>,
}

fn fail(step: usize, reason: Reason, detail: impl Into<String>) -> Failure {
    Failure { step, reason, detail: detail.into() }
}

/// Checks every step of `proof` in `sys` and that the last step is `goal`.
pub fn check_proof(
    sys: &FormalSystem,
    proof: &Proof,
    goal: &Formula,
    premises: &BTreeMap<String, Formula>,
) -> CheckReport {
    let goal_matched = proof.last().is_some_and(|s| alpha_equal(&s.formula, goal));
    let reject = |failure: Failure| CheckReport {
        verdict: CheckVerdict::Reject,
        failure: Some(failure),
        premises_used: BTreeSet::new(),
        goal_matched,
    };
    let mut done: BTreeMap<usize, Checked> = BTreeMap::new();
    let mut last_id = None;
    for step in &proof.steps {
        if last_id.is_some_and(|l| step.id <= l) {
            return reject(fail(step.id, Reason::BadStepOrder, "step numbers must increase"));
        }
        last_id = Some(step.id);
        for r in step.justification.references() {
            if r >= step.id {
                return reject(fail(step.id, Reason::BadStepOrder, format!("refers to later step {r}")));
            }
            if !done.contains_key(&r) {
                return reject(fail(step.id, Reason::UnknownDependency, format!("no step {r}")));
            }
        }
        match check_step(sys, step.id, &step.formula, &step.justification, &done, premises) {
            Ok(deps) => {
                done.insert(step.id, Checked { formula: &step.formula, deps });
            }
            Err(f) => return reject(f),
        }
    }
    let Some(last) = proof.last() else {
        return reject(fail(0, Reason::GoalMismatch, "empty proof"));
    };
    if !goal_matched {
        return reject(fail(last.id, Reason::GoalMismatch, format!("last step is not `{goal}`")));
    }
    CheckReport {
        verdict: CheckVerdict::Accept,
        failure: None,
        premises_used: done[&last.id].deps.clone(),
        goal_matched,
    }
}

fn needs(sys: &FormalSystem, id: usize, rule: Rule) -> Result<(), Failure> {
    if sys.rules.contains(&rule) {
        Ok(())
    } else {
        Err(fail(id, Reason::RuleNotAvailable, format!("{} has no rule `{}`", sys.name, rule.keyword())))
    }
}

fn check_step(
    sys: &FormalSystem,
    id: usize,
    this: &Formula,
    just: &Justification,
    done: &BTreeMap<usize, Checked>,
    premises: &BTreeMap<String, Formula>,
) -> Result<BTreeSet<String>, Failure> {
    let none = BTreeSet::new;
    match just {
        Justification::Axiom { schema, bindings } => {
            if let Some(rule) = QuantRule::from_name(schema) {
                let q = sys
                    .quantifiers
                    .as_ref()
                    .ok_or_else(|| fail(id, Reason::UnknownSchema, format!("{} has no quantifier logic", sys.name)))?;
                return match rule.check(q, this, bindings) {
                    Ok(()) => Ok(none()),
                    Err(QuantError::Shape(s)) => Err(fail(id, Reason::BadInstantiation, format!("{schema}: {s}"))),
                    Err(QuantError::SideCondition(s)) => Err(fail(id, Reason::Capture, format!("{schema}: {s}"))),
                };
            }
            let s = sys
                .schema(schema)
                .ok_or_else(|| fail(id, Reason::UnknownSchema, format!("{} has no schema `{schema}`", sys.name)))?;
            match &s.body {
                SchemaBody::Tautology => match is_tautology(this) {
                    _ if !bindings.is_empty() => Err(fail(id, Reason::BadInstantiation, "TAUT takes no bindings")),
                    Ok(true) => Ok(none()),
                    Ok(false) => Err(fail(id, Reason::BadInstantiation, "not a tautology")),
                    Err(n) => Err(fail(
                        id,
                        Reason::BadInstantiation,
                        format!("{n} skeleton atoms exceed the limit of {MAX_TAUT_ATOMS}"),
                    )),
                },
                SchemaBody::Pattern { pattern, metavars } => match match_schema(pattern, metavars, bindings, this) {
                    Ok(_) => Ok(none()),
                    Err(e) => Err(fail(id, Reason::BadInstantiation, format!("{schema}: {e}"))),
                },
            }
        }
        Justification::Premise(name) => {
            let p =
                premises.get(name).ok_or_else(|| fail(id, Reason::UnknownPremise, format!("no premise `{name}`")))?;
            if !alpha_equal(p, this) {
                return Err(fail(id, Reason::BadInstantiation, format!("premise `{name}` is `{p}`")));
            }
            Ok(BTreeSet::from([name.clone()]))
        }
        Justification::Mp { minor, major } => {
            needs(sys, id, Rule::ModusPonens)?;
            let (a, b) = (&done[minor], &done[major]);
            match b.formula {
                Formula::Implies(x, y) if alpha_equal(x, a.formula) && alpha_equal(y, this) => {
                    Ok(a.deps.union(&b.deps).cloned().collect())
                }
                _ => Err(fail(id, Reason::BadMp, format!("step {major} is not `{} -> {this}`", a.formula))),
            }
        }
        Justification::Nec(i) => {
            needs(sys, id, Rule::Necessitation)?;
            let a = &done[i];
            if !a.deps.is_empty() {
                let names: alloc::vec::Vec<_> = a.deps.iter().map(String::as_str).collect();
                return Err(fail(id, Reason::NecOnPremise, format!("step {i} depends on {}", names.join(", "))));
            }
            if !alpha_equal(this, &Formula::necessary(a.formula.clone())) {
                return Err(fail(id, Reason::BadNec, format!("expected `[]` applied to step {i}")));
            }
            Ok(none())
        }
        Justification::GenI { step, var } => {
            needs(sys, id, Rule::GenIndividual)?;
            let q = sys.quantifiers.as_ref().ok_or_else(|| fail(id, Reason::RuleNotAvailable, "no quantifiers"))?;
            let a = &done[step];
            if !alpha_equal(this, &q.universal(var, a.formula)) {
                return Err(fail(id, Reason::BadGen, format!("expected step {step} generalized over `{var}`")));
            }
            if let Some(p) = a.deps.iter().find(|p| premises[*p].free_individuals().contains(var)) {
                return Err(fail(id, Reason::Capture, format!("`{var}` is free in premise {p}")));
            }
            Ok(a.deps.clone())
        }
        Justification::GenP { step, var } => {
            needs(sys, id, Rule::GenProperty)?;
            let a = &done[step];
            if !alpha_equal(this, &Formula::forall_prop(var.clone(), a.formula.clone())) {
                return Err(fail(id, Reason::BadGen, format!("expected step {step} generalized over `{var}`")));
            }
            if let Some(p) = a.deps.iter().find(|p| premises[*p].free_properties().contains(var)) {
                return Err(fail(id, Reason::Capture, format!("`{var}` is free in premise {p}")));
            }
            Ok(a.deps.clone())
        }
        Justification::Unfold { step, definition, occurrence } => {
            needs(sys, id, Rule::Unfold)?;
            let d = sys
                .definition(definition)
                .ok_or_else(|| fail(id, Reason::BadUnfold, format!("{} has no definition `{definition}`", sys.name)))?;
            let a = &done[step];
            let forward = unfold_at(d, a.formula, *occurrence).is_some_and(|g| alpha_equal(&g, this));
            let backward = || unfold_at(d, this, *occurrence).is_some_and(|g| alpha_equal(&g, a.formula));
            if forward || backward() {
                Ok(a.deps.clone())
            } else {
                Err(fail(
                    id,
                    Reason::BadUnfold,
                    format!("not step {step} with occurrence {occurrence} of {definition} unfolded or folded"),
                ))
            }
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.verdict)?;
        if let Some(fl) = &self.failure {
            write!(f, " step {} {}: {}", fl.step, fl.reason, fl.detail)?;
        }
        let used: alloc::vec::Vec<String> = self.premises_used.iter().map(|s| s.to_string()).collect();
        write!(f, "\npremises used: {}", if used.is_empty() { "none".into() } else { used.join(", ") })?;
        write!(f, "\ngoal matched: {}", if self.goal_matched { "yes" } else { "no" })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;
    use crate::kernel::{builtin_system, BindingValue, Bindings, Step};
    use alloc::vec;
    use alloc::vec::Vec;

    fn step(id: usize, f: &str, j: Justification) -> Step {
        Step { id, formula: parse(f).unwrap(), justification: j }
    }

    fn t_proof() -> Vec<Step> {
        vec![
            step(1, "p -> p", Justification::axiom("TAUT")),
            step(2, "[](p -> p)", Justification::Nec(1)),
            step(3, "[](p -> p) -> (p -> p)", Justification::axiom("T")),
            step(4, "p -> p", Justification::Mp { minor: 2, major: 3 }),
        ]
    }

    fn run(steps: Vec<Step>, goal: &str) -> CheckReport {
        let sys = builtin_system("T").unwrap();
        let mut prem = BTreeMap::new();
        prem.insert("H".to_string(), parse("[]q").unwrap());
        check_proof(&sys, &Proof { steps }, &parse(goal).unwrap(), &prem)
    }

    #[test]
    fn accepts() {
        let r = run(t_proof(), "p -> p");
        assert!(r.accepted(), "{r}");
        assert!(r.premises_used.is_empty());
    }

    #[test]
    fn reasons() {
        let code = |r: CheckReport| r.failure.unwrap().reason;
        assert_eq!(code(run(t_proof(), "q")), Reason::GoalMismatch);
        let mut s = t_proof();
        s.remove(1);
        assert_eq!(code(run(s, "p -> p")), Reason::UnknownDependency);
        let mut s = t_proof();
        s[2].formula = parse("[](p -> p) -> (p -> q)").unwrap();
        assert_eq!(code(run(s, "p -> p")), Reason::BadInstantiation);
        let mut s = t_proof();
        s[3].justification = Justification::Mp { minor: 1, major: 3 };
        assert_eq!(code(run(s, "p -> p")), Reason::BadMp);
        let mut s = t_proof();
        s[2].justification = Justification::axiom("DIA-BOX");
        assert_eq!(code(run(s, "p -> p")), Reason::UnknownSchema);
        let mut s = t_proof();
        s[3].id = 3;
        assert_eq!(code(run(s, "p -> p")), Reason::BadStepOrder);
        let s = vec![step(1, "[]q", Justification::Premise("H".into())), step(2, "[][]q", Justification::Nec(1))];
        assert_eq!(code(run(s, "[][]q")), Reason::NecOnPremise);
        let s = vec![step(1, "[]q", Justification::Premise("J".into()))];
        assert_eq!(code(run(s, "[]q")), Reason::UnknownPremise);
        let s = vec![step(1, "all x. (G(x) -> G(x))", Justification::GenI { step: 1, var: "x".into() })];
        assert_eq!(code(run(s, "q")), Reason::BadStepOrder);
    }

    #[test]
    fn premises_are_reported() {
        let s = vec![
            step(1, "[]q", Justification::Premise("H".into())),
            step(2, "[]q -> q", Justification::axiom("T")),
            step(3, "q", Justification::Mp { minor: 1, major: 2 }),
        ];
        let r = run(s, "q");
        assert!(r.accepted());
        assert_eq!(r.premises_used, BTreeSet::from(["H".to_string()]));
    }

    #[test]
    fn bindings_are_checked() {
        let mut b = Bindings::new();
        b.insert("phi".into(), BindingValue::Formula(parse("p").unwrap()));
        let s = vec![step(1, "[]q -> q", Justification::Axiom { schema: "T".into(), bindings: b })];
        assert_eq!(run(s, "[]q -> q").failure.unwrap().reason, Reason::BadInstantiation);
    }
}
