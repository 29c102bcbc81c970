//! The proof scripts shipped with the crate, embedded at build time.

use crate::script::{parse_script, Script};
use ontomodal_core::formula::{alpha_equal, parse};
use ontomodal_core::kernel::{CheckReport, CheckVerdict};
use std::collections::BTreeSet;

pub const VERSION: &str = "v1";
pub const INDEX: &str = include_str!("../scripts/v1/index.txt");

const SOURCES: [(&str, &str); 6] = [
    ("theorem1.proof", include_str!("../scripts/v1/theorem1.proof")),
    ("theorem2.proof", include_str!("../scripts/v1/theorem2.proof")),
    ("main.proof", include_str!("../scripts/v1/main.proof")),
    ("temporalized.proof", include_str!("../scripts/v1/temporalized.proof")),
    ("tb.proof", include_str!("../scripts/v1/tb.proof")),
    ("gods_death.proof", include_str!("../scripts/v1/gods_death.proof")),
];

/// One row of the index: `NAME SYSTEM FILE EXPECTED PREMISES GOAL`, where
/// PREMISES is a comma list or `-` and GOAL runs to the end of the line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub name: String,
    pub system: String,
    pub file: String,
    pub expected: CheckVerdict,
    pub premises: BTreeSet<String>,
    pub goal: String,
}

pub fn source(file: &str) -> Option<&'static str> {
    SOURCES.iter().find(|(f, _)| *f == file).map(|(_, s)| *s)
}

pub fn index() -> Vec<Entry> {
    INDEX
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let mut rest = l;
            let mut words = Vec::new();
            for _ in 0..5 {
                let r = rest.trim_start();
                let end = r.find(char::is_whitespace).unwrap_or_else(|| panic!("short index line `{l}`"));
                words.push(r[..end].to_string());
                rest = &r[end..];
            }
            let goal = rest.trim().to_string();
            let [name, system, file, expected, premises]: [String; 5] = words.try_into().expect("five columns");
            Entry {
                name,
                system,
                file,
                expected: match expected.as_str() {
                    "ACCEPT" => CheckVerdict::Accept,
                    "REJECT" => CheckVerdict::Reject,
                    other => panic!("bad expected verdict `{other}`"),
                },
                premises: if premises == "-" {
                    BTreeSet::new()
                } else {
                    premises.split(',').map(String::from).collect()
                },
                goal,
            }
        })
        .collect()
}

pub fn script(e: &Entry) -> Script {
    let text = source(&e.file).unwrap_or_else(|| panic!("{} is not embedded", e.file));
    parse_script(text).unwrap_or_else(|err| panic!("{}: {err}", e.file))
}

pub fn by_name(name: &str) -> Option<(Entry, Script)> {
    index().into_iter().find(|e| e.name == name).map(|e| {
        let s = script(&e);
        (e, s)
    })
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub entry: Entry,
    pub report: CheckReport,
    /// The index agrees with the script file and the report with the index.
    pub as_expected: bool,
}

pub fn run_all() -> Vec<Outcome> {
    index()
        .into_iter()
        .map(|entry| {
            let s = script(&entry);
            let report = s.check().unwrap_or_else(|e| panic!("{}: {e}", entry.file));
            let goal_agrees = parse(&entry.goal).is_ok_and(|g| alpha_equal(&g, &s.goal));
            let as_expected = goal_agrees
                && s.system == entry.system
                && report.verdict == entry.expected
                && report.premises_used == entry.premises;
            Outcome { entry, report, as_expected }
        })
        .collect()
}
