mod common;

use common::mutate::{mutants, with_formula, without_step};
use ontomodal::script::{parse_script, render_script};
use ontomodal::shipped::{self, by_name, index, run_all};
use ontomodal_core::formula::{alpha_equal, parse};
use ontomodal_core::kernel::{check_proof, CheckVerdict, Justification, Reason};
use ontomodal_core::ontology::{system_O, system_by_name};
use ontomodal_core::temporal::{replay_transformed, Transformation};
use std::collections::BTreeSet;

#[test]
fn all_shipped_scripts_accept_with_documented_premises() {
    let rows = run_all();
    assert_eq!(rows.len(), 6);
    for r in &rows {
        assert!(r.as_expected, "{}: {}", r.entry.name, r.report);
        assert_eq!(r.report.verdict, CheckVerdict::Accept);
        assert!(r.report.goal_matched);
    }
    let used = |n: &str| rows.iter().find(|r| r.entry.name == n).unwrap().report.premises_used.clone();
    assert_eq!(used("theorem2"), BTreeSet::from(["LEMMA1-REPAIRED".to_string()]));
    assert_eq!(used("tb"), BTreeSet::from(["RIGID-TENSE".to_string()]));
    assert_eq!(used("gods_death"), BTreeSet::from(["BRIDGE".to_string()]));
    for n in ["theorem1", "main", "temporalized"] {
        assert!(used(n).is_empty(), "{n}");
    }
}

#[test]
fn scripts_survive_render_and_parse() {
    for e in index() {
        let s = shipped::script(&e);
        assert_eq!(parse_script(&render_script(&s)).unwrap(), s, "{}", e.name);
    }
}

#[test]
fn every_axiom_and_definition_of_o_is_cited() {
    let o = system_O();
    let mut cited = BTreeSet::new();
    for e in index() {
        for step in shipped::script(&e).proof.steps {
            match step.justification {
                Justification::Axiom { schema, .. } => cited.insert(schema),
                Justification::Unfold { definition, .. } => cited.insert(definition),
                _ => false,
            };
        }
    }
    for name in ["POS-NEG", "POS-MONO", "POS-G", "POS-NEC", "POS-NE", "NO-FUTURE-POS"] {
        assert!(cited.contains(name), "{name} never cited");
    }
    for d in &o.definitions {
        assert!(cited.contains(&d.name), "{} never unfolded", d.name);
    }
}

#[test]
fn main_theorem_goal_and_s5_step() {
    let (_, s) = by_name("main").unwrap();
    assert!(alpha_equal(&s.goal, &parse("[] ex x. G(x)").unwrap()));
    let dia_box = s
        .proof
        .steps
        .iter()
        .find(|st| matches!(&st.justification, Justification::Axiom { schema, .. } if schema == "DIA-BOX"));
    assert!(dia_box.is_some());
}

#[test]
fn citing_pos_ne_for_pos_g_is_a_bad_instantiation() {
    let (_, mut s) = by_name("main").unwrap();
    let step = s
        .proof
        .steps
        .iter_mut()
        .find(|st| matches!(&st.justification, Justification::Axiom { schema, .. } if schema == "POS-G"))
        .unwrap();
    step.justification = Justification::axiom("POS-NE");
    let id = step.id;
    let r = s.check().unwrap();
    assert_eq!(r.verdict, CheckVerdict::Reject);
    let f = r.failure.unwrap();
    assert_eq!((f.step, f.reason), (id, Reason::BadInstantiation));
}

#[test]
fn theorem1_needs_the_negated_instance() {
    let (_, s) = by_name("theorem1").unwrap();
    let i = s
        .proof
        .steps
        .iter()
        .position(|st| matches!(&st.justification, Justification::Axiom { schema, .. } if schema == "UIP"))
        .unwrap();
    let r = check_proof(&system_O(), &without_step(&s.proof, i), &s.goal, &s.premise_map());
    assert_eq!(r.failure.unwrap().reason, Reason::UnknownDependency);
}

#[test]
fn transformed_scripts_start_with_the_replayed_main_theorem() {
    let (_, main) = by_name("main").unwrap();
    for (name, t) in [
        ("temporalized", Transformation::Temporalize),
        ("tb", Transformation::Break),
        ("gods_death", Transformation::Break),
    ] {
        let (_, s) = by_name(name).unwrap();
        let target = system_by_name(&s.system).unwrap();
        let replay = replay_transformed(&main.proof, &main.premise_map(), t, &target);
        assert!(replay.report.accepted(), "{name}: {}", replay.report);
        let n = replay.proof.steps.len();
        assert_eq!(&s.proof.steps[..n], &replay.proof.steps[..], "{name}");
    }
}

#[test]
fn gods_death_needs_no_future_positivity() {
    let (_, s) = by_name("gods_death").unwrap();
    let r = check_proof(&system_by_name("O_TB").unwrap(), &s.proof, &s.goal, &s.premise_map());
    assert_eq!(r.failure.unwrap().reason, Reason::UnknownSchema);
}

#[test]
fn dropping_a_documented_premise_rejects() {
    for name in ["theorem2", "tb", "gods_death"] {
        let (_, mut s) = by_name(name).unwrap();
        s.premises.clear();
        let r = s.check().unwrap();
        assert_eq!(r.failure.unwrap().reason, Reason::UnknownPremise, "{name}");
    }
}

#[test]
fn every_single_step_deletion_rejects() {
    for e in index() {
        let s = shipped::script(&e);
        let sys = system_by_name(&s.system).unwrap();
        for i in 0..s.proof.steps.len() {
            let r = check_proof(&sys, &without_step(&s.proof, i), &s.goal, &s.premise_map());
            assert_eq!(r.verdict, CheckVerdict::Reject, "{} without step {}", e.name, i + 1);
        }
    }
}

#[test]
fn single_connective_mutations_reject() {
    let mut total = 0;
    let mut survivors = Vec::new();
    for e in index() {
        let s = shipped::script(&e);
        let sys = system_by_name(&s.system).unwrap();
        for (i, step) in s.proof.steps.iter().enumerate() {
            for m in mutants(&step.formula) {
                total += 1;
                let r = check_proof(&sys, &with_formula(&s.proof, i, m.clone()), &s.goal, &s.premise_map());
                if r.accepted() {
                    survivors.push(format!("{} step {}: {m}", e.name, step.id));
                }
            }
        }
    }
    assert!(total > 1000, "{total}");
    assert!(survivors.is_empty(), "{} of {total} mutants accepted:\n{}", survivors.len(), survivors.join("\n"));
}
