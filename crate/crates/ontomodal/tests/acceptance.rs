//! Acceptance run: one PASS/FAIL line per criterion.

mod common;

use common::gen;
use common::mutate::{mutants, with_formula, without_step};
use ontomodal::collapse::collapse_report;
use ontomodal::execute;
use ontomodal::model_text::parse_model;
use ontomodal::shipped::{self, index, run_all};
use ontomodal_core::formula::{parse, render, Formula};
use ontomodal_core::kernel::{
    builtin_system, check_proof, instantiate_schema, AxiomSchema, BindingValue, Bindings, Definition, FormalSystem,
    MetaKind, Rule, SchemaBody,
};
use ontomodal_core::kripke::{
    bruteforce_validity, check_frame_class, elimination_sat, eval, small_model_bound, Assignment, BruteVerdict,
    FrameClass, FrameProperty, ModalSystem, MAX_ENUM_WORLDS,
};
use ontomodal_core::ontology::system_O;
use ontomodal_core::tableau::{decide_sat, Verdict};
use ontomodal_core::temporal::{time_reversal_invariant, time_reverse, transform_system, Transformation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::time::Instant;

type Outcome = Result<String, String>;

fn ensure(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn axiom_soundness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let t = builtin_system("T").unwrap();
    let s4 = builtin_system("S4").unwrap();
    let s5 = builtin_system("S5").unwrap();
    let mut groups: Vec<(FrameClass, Vec<AxiomSchema>)> = vec![
        (FrameClass::Reflexive, t.schemas.iter().filter(|s| s.pattern().is_some()).cloned().collect()),
        (FrameClass::Preorder, s4.schemas.iter().filter(|s| t.schema(&s.name).is_none()).cloned().collect()),
        (FrameClass::Equivalence, s5.schemas.iter().filter(|s| s4.schema(&s.name).is_none()).cloned().collect()),
    ];
    let counts: Vec<usize> = groups.iter().map(|(_, v)| v.len()).collect();
    if counts != [10, 2, 1] {
        return Err(format!("schema groups have sizes {counts:?}"));
    }
    let mut checked = 0;
    for (fc, schemas) in groups.drain(..) {
        for s in schemas {
            let SchemaBody::Pattern { pattern, metavars } = &s.body else { unreachable!() };
            for _ in 0..50 {
                let mut b = Bindings::new();
                for (v, _) in metavars {
                    b.insert(v.clone(), BindingValue::Formula(gen::modal(&mut rng, 3, 2, 4)));
                }
                let f = instantiate_schema(pattern, metavars, &b).map_err(|e| e.to_string())?;
                match bruteforce_validity(&f, fc, 3).map_err(|e| e.to_string())? {
                    BruteVerdict::Valid => checked += 1,
                    BruteVerdict::Countermodel(..) => return Err(format!("{} instance `{f}` fails", s.name)),
                }
            }
        }
    }
    Ok(format!("{checked} instances valid on frames with at most 3 worlds"))
}

fn system_separation() -> Outcome {
    let f = parse("<>[]p -> []p").unwrap();
    let BruteVerdict::Countermodel(m, w) =
        bruteforce_validity(&f, FrameClass::Reflexive, 3).map_err(|e| e.to_string())?
    else {
        return Err("no countermodel over reflexive frames".into());
    };
    let props = check_frame_class(&m);
    let fails = !eval(&m, w, &f, &Assignment::default()).map_err(|e| e.to_string())?;
    let text = ontomodal::model_text::render_model(&m);
    let again = parse_model(&text).map_err(|e| e.to_string())?;
    let fails_again = !eval(&again, w, &f, &Assignment::default()).map_err(|e| e.to_string())?;
    ensure(
        props.contains(&FrameProperty::Reflexive)
            && !props.contains(&FrameProperty::Equivalence)
            && fails
            && fails_again,
        format!("{}-world reflexive, non-equivalence countermodel; fails at {}", m.len(), m.worlds[w]),
    )
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut enumerated, mut eliminated, mut skipped) = (0, 0, 0);
    for sys in ModalSystem::ALL {
        let mut checked = 0;
        let mut i = 0;
        while checked < 500 {
            i += 1;
            let f = if i % 2 == 0 { gen::modal(&mut rng, 3, 4, 10) } else { gen::clausal(&mut rng, 3, 4, 5) };
            let oracle = match small_model_bound(&f, sys) {
                Some(n) if n <= MAX_ENUM_WORLDS => {
                    enumerated += 1;
                    let v = bruteforce_validity(&Formula::not(f.clone()), sys.frame_class(), n)
                        .map_err(|e| e.to_string())?;
                    !v.is_valid()
                }
                _ => match elimination_sat(&f, sys) {
                    Ok(b) => {
                        eliminated += 1;
                        b
                    }
                    Err(_) => {
                        skipped += 1;
                        continue;
                    }
                },
            };
            checked += 1;
            let tab = decide_sat(&f, sys).map_err(|e| e.to_string())?.verdict == Verdict::Sat;
            if tab != oracle {
                return Err(format!("{sys}: tableau says {tab}, oracle says {oracle} for `{f}`"));
            }
        }
    }
    Ok(format!(
        "2000/2000 agree, 500 per system ({enumerated} by enumeration, {eliminated} by elimination, {skipped} too large for either oracle)"
    ))
}

fn proof_scripts() -> Outcome {
    let rows = run_all();
    let bad: Vec<String> =
        rows.iter().filter(|r| !r.as_expected).map(|r| format!("{}: {}", r.entry.name, r.report)).collect();
    let accepted = rows.iter().filter(|r| r.report.accepted()).count();
    ensure(
        rows.len() == 6 && bad.is_empty(),
        format!("{accepted}/{} accepted as indexed {}", rows.len(), bad.join("; ")),
    )
}

fn mutation_resistance() -> Outcome {
    let (mut deletions, mut deleted_rejected) = (0, 0);
    let (mut mutations, mut mutated_rejected) = (0, 0);
    for e in index() {
        let s = shipped::script(&e);
        let sys = ontomodal_core::ontology::system_by_name(&s.system).unwrap();
        let premises = s.premise_map();
        for i in 0..s.proof.steps.len() {
            deletions += 1;
            if !check_proof(&sys, &without_step(&s.proof, i), &s.goal, &premises).accepted() {
                deleted_rejected += 1;
            }
            for m in mutants(&s.proof.steps[i].formula) {
                mutations += 1;
                if !check_proof(&sys, &with_formula(&s.proof, i, m), &s.goal, &premises).accepted() {
                    mutated_rejected += 1;
                }
            }
        }
    }
    let rate = mutated_rejected as f64 / mutations as f64;
    ensure(
        deleted_rejected == deletions && rate >= 0.95,
        format!("deletions {deleted_rejected}/{deletions}, mutations {mutated_rejected}/{mutations}"),
    )
}

fn tense_free(rng: &mut ChaCha8Rng) -> Formula {
    loop {
        let f = gen::axiom(rng);
        if !f.has_temporal() {
            return f;
        }
    }
}

fn random_system(rng: &mut ChaCha8Rng, k: usize) -> FormalSystem {
    let schemas = (0..rng.gen_range(1..6))
        .map(|i| AxiomSchema {
            name: format!("A{i}"),
            body: SchemaBody::Pattern { pattern: tense_free(rng), metavars: Vec::new() },
        })
        .collect();
    let definitions = (0..rng.gen_range(0..3))
        .map(|i| Definition {
            name: format!("D{i}"),
            definiendum: parse(&format!("D{i}(x)")).unwrap(),
            definiens: tense_free(rng),
            metavars: vec![("x".into(), MetaKind::Individual)],
        })
        .collect();
    FormalSystem { name: format!("R{k}"), schemas, definitions, rules: [Rule::ModusPonens].into(), quantifiers: None }
}

fn eq38() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    if !time_reversal_invariant(&transform_system(&system_O(), Transformation::Temporalize)) {
        return Err("fails for the temporalized ontological system".into());
    }
    for k in 0..1000 {
        let s = random_system(&mut rng, k);
        if !time_reversal_invariant(&transform_system(&s, Transformation::Temporalize)) {
            return Err(format!("fails for random system {k}"));
        }
    }
    for _ in 0..1000 {
        let size = rng.gen_range(0..12);
        let f = gen::any(&mut rng, size);
        if time_reverse(&time_reverse(&f)) != f {
            return Err(format!("time reversal is not an involution on `{f}`"));
        }
    }
    Ok("holds for O and 1000 tense-free random systems; involution on 1000 formulas".into())
}

fn kind(f: &Formula) -> &'static str {
    match f {
        Formula::Atom(_, a) if a.is_empty() => "atom",
        Formula::Atom(..) => "predicate",
        Formula::Positive(_) => "pos",
        Formula::Apply(..) => "apply",
        Formula::Essence(..) => "ess",
        Formula::Not(_) => "not",
        Formula::And(..) => "and",
        Formula::Or(..) => "or",
        Formula::Implies(..) => "implies",
        Formula::Iff(..) => "iff",
        Formula::Necessary(_) => "box",
        Formula::Possible(_) => "dia",
        Formula::Temporal(..) => "tense",
        Formula::IQuant(..) => "iquant",
        Formula::PQuant(..) => "pquant",
    }
}

fn round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut kinds = BTreeSet::new();
    for _ in 0..10_000 {
        let size = rng.gen_range(0..16);
        let f = gen::any(&mut rng, size);
        f.walk(&mut |g| {
            kinds.insert(kind(g));
        });
        let text = render(&f);
        match parse(&text) {
            Ok(g) if g == f => {}
            Ok(g) => return Err(format!("`{text}` parses back as `{g}`")),
            Err(e) => return Err(format!("`{text}` does not parse: {e}")),
        }
    }
    ensure(kinds.len() == 15, format!("10000 formulas, {} constructors exercised", kinds.len()))
}

fn modal_collapse() -> Outcome {
    let r = execute(["valid", "--system", "S5", "--format", "full", "<>p -> []p"]);
    let worlds: usize = r
        .stdout
        .lines()
        .find_map(|l| l.strip_prefix("model-worlds: "))
        .and_then(|n| n.parse().ok())
        .ok_or("no countermodel reported")?;
    let report = collapse_report();
    ensure(
        r.status == 1 && worlds <= 2 && report.contains("derivation-status: not mechanized"),
        format!("countermodel with {worlds} worlds; collapse derivation marked not mechanized"),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("axiom soundness over small frames", axiom_soundness),
        ("system separation of T and S5", system_separation),
        ("tableau agrees with the oracles", oracle_equivalence),
        ("shipped proof scripts", proof_scripts),
        ("mutation resistance", mutation_resistance),
        ("time reversal of temporalized systems", eq38),
        ("parser round trip", round_trip),
        ("modal collapse demonstration", modal_collapse),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(d) => println!("PASS criterion {}: {name}: {d} [{secs:.1}s]", i + 1),
            Err(d) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {d} [{secs:.1}s]", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
