#[path = "common/gen.rs"]
mod gen;

use ontomodal_core::formula::Formula;
use ontomodal_core::kernel::{
    builtin_system, check_proof, BindingValue, Bindings, FormalSystem, Justification, MetaKind, Proof, SchemaBody, Step,
};
use ontomodal_core::kripke::{bruteforce_validity, ModalSystem};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

fn small(rng: &mut ChaCha8Rng) -> Formula {
    gen::modal(rng, 2, 1, 3)
}

/// A random premise-free proof built from schema instances, necessitation
/// and weakening through modus ponens.
fn random_proof(sys: &FormalSystem, rng: &mut ChaCha8Rng, len: usize) -> Proof {
    let schemas: Vec<_> = sys.schemas.iter().filter(|s| matches!(s.body, SchemaBody::Pattern { .. })).collect();
    let mut steps: Vec<Step> = Vec::new();
    while steps.len() < len {
        let id = steps.len() + 1;
        let choice = if steps.is_empty() { 0 } else { rng.gen_range(0..3) };
        match choice {
            0 => {
                let s = schemas.choose(rng).unwrap();
                let SchemaBody::Pattern { pattern, metavars } = &s.body else { unreachable!() };
                let mut b = Bindings::new();
                for (v, k) in metavars {
                    assert_eq!(*k, MetaKind::Formula);
                    b.insert(v.clone(), BindingValue::Formula(small(rng)));
                }
                let f = ontomodal_core::kernel::instantiate_schema(pattern, metavars, &b).unwrap();
                steps.push(Step {
                    id,
                    formula: f,
                    justification: Justification::Axiom { schema: s.name.clone(), bindings: b },
                });
            }
            1 => {
                let i = rng.gen_range(0..steps.len());
                let f = Formula::necessary(steps[i].formula.clone());
                steps.push(Step { id, formula: f, justification: Justification::Nec(steps[i].id) });
            }
            _ => {
                let i = rng.gen_range(0..steps.len());
                let a = steps[i].formula.clone();
                let b = small(rng);
                let weak = Formula::implies(a.clone(), Formula::implies(b.clone(), a.clone()));
                steps.push(Step { id, formula: weak, justification: Justification::axiom("TAUT") });
                steps.push(Step {
                    id: id + 1,
                    formula: Formula::implies(b, a),
                    justification: Justification::Mp { minor: steps[i].id, major: id },
                });
            }
        }
    }
    Proof { steps }
}

#[test]
fn accepted_propositional_proofs_are_valid_on_small_frames() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let empty = BTreeMap::new();
    for (name, sys) in [("T", ModalSystem::T), ("S4", ModalSystem::S4), ("S5", ModalSystem::S5)] {
        let fs = builtin_system(name).unwrap();
        for _ in 0..25 {
            let p = random_proof(&fs, &mut rng, 6);
            let goal = p.last().unwrap().formula.clone();
            let r = check_proof(&fs, &p, &goal, &empty);
            assert!(r.accepted(), "{name}: {r}");
            for s in &p.steps {
                let v = bruteforce_validity(&s.formula, sys.frame_class(), 3).unwrap();
                assert!(v.is_valid(), "{name} proves {} which fails on a small frame", s.formula);
            }
        }
    }
}

#[test]
fn acceptance_ignores_order_preserving_renumbering() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let empty = BTreeMap::new();
    let fs = builtin_system("S4").unwrap();
    for _ in 0..40 {
        let p = random_proof(&fs, &mut rng, 8);
        let goal = p.last().unwrap().formula.clone();
        let before = check_proof(&fs, &p, &goal, &empty);
        let renum = |i: usize| 3 * i + 7;
        let q = Proof {
            steps: p
                .steps
                .iter()
                .map(|s| Step {
                    id: renum(s.id),
                    formula: s.formula.clone(),
                    justification: s.justification.map_references(renum),
                })
                .collect(),
        };
        let after = check_proof(&fs, &q, &goal, &empty);
        assert_eq!(before.verdict, after.verdict);
        assert_eq!(before.premises_used, after.premises_used);
    }
}

#[test]
fn s5_schema_is_not_a_t_theorem() {
    let t = builtin_system("T").unwrap();
    let p = Proof {
        steps: vec![Step {
            id: 1,
            formula: ontomodal_core::formula::parse("<>[]p -> []p").unwrap(),
            justification: Justification::axiom("DIA-BOX"),
        }],
    };
    let goal = p.steps[0].formula.clone();
    assert!(!check_proof(&t, &p, &goal, &BTreeMap::new()).accepted());
}
