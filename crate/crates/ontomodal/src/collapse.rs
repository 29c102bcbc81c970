//! The modal collapse demonstration.
//!
//! Only the semantic side is checked here: `<>p -> []p` is not S5-valid,
//! so the collapse is a real strengthening, and each collapse instance
//! forces `p <-> []p` for its atom. No derivation of the collapse inside the
//! ontological system is attempted.

use crate::model_text::render_model;
use ontomodal_core::formula::{parse, render};
use ontomodal_core::kripke::{eval, Assignment, ModalSystem};
use ontomodal_core::tableau::{decide_valid, Validity};
use std::fmt::Write as _;

pub const THESIS: &str = "<>p -> []p";
pub const INSTANCE_IMPLICATION: &str = "(<>p -> []p) -> (p <-> []p)";
pub const DERIVATION_STATUS: &str = "not mechanized";

pub fn collapse_report() -> String {
    let mut out = String::new();
    let thesis = parse(THESIS).expect("thesis parses");
    writeln!(out, "report: modal collapse").unwrap();
    writeln!(out, "thesis: {}", render(&thesis)).unwrap();
    let r = decide_valid(&thesis, ModalSystem::S5).expect("propositional-modal input");
    match r.validity {
        Validity::Valid => writeln!(out, "s5-verdict: valid").unwrap(),
        Validity::Countermodel(m) => {
            writeln!(out, "s5-verdict: countermodel").unwrap();
            writeln!(out, "countermodel-worlds: {}", m.len()).unwrap();
            let fails = !eval(&m, 0, &thesis, &Assignment::default()).unwrap_or(true);
            writeln!(out, "countermodel-rechecked: {}", if fails { "yes" } else { "no" }).unwrap();
            writeln!(out, "countermodel:").unwrap();
            for line in render_model(&m).lines() {
                writeln!(out, "  {line}").unwrap();
            }
        }
    }
    let imp = parse(INSTANCE_IMPLICATION).expect("implication parses");
    let v = decide_valid(&imp, ModalSystem::S5).expect("propositional-modal input");
    writeln!(out, "instance-implication: {}", render(&imp)).unwrap();
    writeln!(out, "instance-implication-s5: {}", if v.validity == Validity::Valid { "valid" } else { "invalid" })
        .unwrap();
    writeln!(out, "derivation-status: {DERIVATION_STATUS}").unwrap();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model_text::parse_model;

    #[test]
    fn report_contents() {
        let r = collapse_report();
        assert!(r.contains("s5-verdict: countermodel"));
        assert!(r.contains("countermodel-worlds: 2"));
        assert!(r.contains("countermodel-rechecked: yes"));
        assert!(r.contains("instance-implication-s5: valid"));
        assert!(r.contains("derivation-status: not mechanized"));
        let model: String = r.lines().filter_map(|l| l.strip_prefix("  ")).map(|l| format!("{l}\n")).collect();
        let m = parse_model(&model).unwrap();
        let sat = parse("~(<>p -> []p)").unwrap();
        assert!(eval(&m, 0, &sat, &Assignment::default()).unwrap());
    }
}
