//! The proof-script text format.
//!
//! ```text
//! # comment
//! system O
//! goal Pos(phi) -> <> ex x. phi(x)
//! premise LEMMA allp psi. (G(x) & psi(x) -> Pos(psi))
//! 1 p -> p | axiom TAUT
//! 2 [](p -> p) | nec 1
//! 3 []q -> q | axiom T phi={q}
//! ```
//!
//! A step line is split at the last `|` followed by a justification keyword,
//! so formulas may contain disjunctions.

use ontomodal_core::formula::{parse, render, Formula, ParseError};
use ontomodal_core::kernel::{
    check_proof, BindingValue, Bindings, CheckReport, Justification, Proof, Step, UnknownSystem,
};
use ontomodal_core::ontology::system_by_name;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use thiserror::Error;

const KEYWORDS: [&str; 7] = ["axiom", "premise", "mp", "nec", "geni", "genp", "unfold"];

#[derive(Debug, Error)]
pub enum ScriptError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Formula { line: usize, source: ParseError },
    #[error("missing `{0}` line")]
    Missing(&'static str),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Script {
    pub system: String,
    pub goal: Formula,
    /// Declared premises, in order.
    pub premises: Vec<(String, Formula)>,
    pub proof: Proof,
}

impl Script {
    pub fn premise_map(&self) -> BTreeMap<String, Formula> {
        self.premises.iter().cloned().collect()
    }

    /// Checks the script in its declared system.
    pub fn check(&self) -> Result<CheckReport, UnknownSystem> {
        let sys = system_by_name(&self.system)?;
        Ok(check_proof(&sys, &self.proof, &self.goal, &self.premise_map()))
    }
}

fn syntax(line: usize, message: impl Into<String>) -> ScriptError {
    ScriptError::Syntax { line, message: message.into() }
}

fn formula(line: usize, text: &str) -> Result<Formula, ScriptError> {
    parse(text.trim()).map_err(|source| ScriptError::Formula { line, source })
}

fn split_step(text: &str) -> Option<(&str, &str)> {
    text.match_indices('|')
        .filter(|(i, _)| {
            let rest = text[i + 1..].trim_start();
            KEYWORDS
                .iter()
                .any(|k| rest.strip_prefix(k).is_some_and(|r| r.is_empty() || r.starts_with(char::is_whitespace)))
        })
        .last()
        .map(|(i, _)| (&text[..i], &text[i + 1..]))
}

fn number(line: usize, s: Option<&str>) -> Result<usize, ScriptError> {
    let s = s.ok_or_else(|| syntax(line, "missing step number"))?;
    s.parse().map_err(|_| syntax(line, format!("`{s}` is not a step number")))
}

fn bindings(line: usize, text: &str) -> Result<Bindings, ScriptError> {
    let mut out = Bindings::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let eq = rest.find('=').ok_or_else(|| syntax(line, format!("expected `name=value` in `{rest}`")))?;
        let key = rest[..eq].trim().to_string();
        if key.is_empty() || key.contains(char::is_whitespace) {
            return Err(syntax(line, format!("bad binding name `{key}`")));
        }
        let after = rest[eq + 1..].trim_start();
        let (value, next) = if let Some(body) = after.strip_prefix('{') {
            let mut depth = 1;
            let end = body
                .char_indices()
                .find(|&(_, c)| {
                    match c {
                        '{' => depth += 1,
                        '}' => depth -= 1,
                        _ => {}
                    }
                    depth == 0
                })
                .map(|(i, _)| i)
                .ok_or_else(|| syntax(line, "unclosed `{`"))?;
            (BindingValue::Formula(formula(line, &body[..end])?), &body[end + 1..])
        } else {
            let end = after.find(char::is_whitespace).unwrap_or(after.len());
            let word = &after[..end];
            let (negated, name) = match word.strip_prefix('~') {
                Some(n) => (true, n),
                None => (false, word),
            };
            if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return Err(syntax(line, format!("bad binding value `{word}`")));
            }
            (BindingValue::Name { name: name.into(), negated }, &after[end..])
        };
        if out.insert(key.clone(), value).is_some() {
            return Err(syntax(line, format!("`{key}` bound twice")));
        }
        rest = next.trim_start();
    }
    Ok(out)
}

fn justification(line: usize, text: &str) -> Result<Justification, ScriptError> {
    let text = text.trim();
    let (kw, rest) = text.split_once(char::is_whitespace).unwrap_or((text, ""));
    let mut words = rest.split_whitespace();
    let mut word = |what: &str| words.next().map(str::to_string).ok_or_else(|| syntax(line, format!("missing {what}")));
    let j = match kw {
        "axiom" => {
            let rest = rest.trim();
            let (name, b) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
            if name.is_empty() {
                return Err(syntax(line, "missing schema name"));
            }
            return Ok(Justification::Axiom { schema: name.into(), bindings: bindings(line, b)? });
        }
        "premise" => Justification::Premise(word("premise name")?),
        "mp" => {
            let minor = number(line, Some(&word("step")?))?;
            let major = number(line, Some(&word("step")?))?;
            Justification::Mp { minor, major }
        }
        "nec" => Justification::Nec(number(line, Some(&word("step")?))?),
        "geni" | "genp" => {
            let step = number(line, Some(&word("step")?))?;
            let var = word("variable")?;
            if kw == "geni" {
                Justification::GenI { step, var }
            } else {
                Justification::GenP { step, var }
            }
        }
        "unfold" => {
            let step = number(line, Some(&word("step")?))?;
            let definition = word("definition name")?;
            let occurrence = number(line, Some(&word("occurrence")?))?;
            Justification::Unfold { step, definition, occurrence }
        }
        other => return Err(syntax(line, format!("unknown justification `{other}`"))),
    };
    if let Some(extra) = words.next() {
        return Err(syntax(line, format!("unexpected `{extra}`")));
    }
    Ok(j)
}

pub fn parse_script(text: &str) -> Result<Script, ScriptError> {
    let mut system = None;
    let mut goal = None;
    let mut premises = Vec::new();
    let mut steps = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let (head, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        match head {
            "system" => system = Some(rest.trim().to_string()),
            "goal" => goal = Some(formula(line, rest)?),
            "premise" => {
                let rest = rest.trim();
                let (name, f) = rest
                    .split_once(char::is_whitespace)
                    .ok_or_else(|| syntax(line, "premise needs a name and a formula"))?;
                premises.push((name.to_string(), formula(line, f)?));
            }
            _ => {
                let id = number(line, Some(head))?;
                let (f, j) = split_step(rest).ok_or_else(|| syntax(line, "expected `formula | justification`"))?;
                steps.push(Step { id, formula: formula(line, f)?, justification: justification(line, j)? });
            }
        }
    }
    Ok(Script {
        system: system.ok_or(ScriptError::Missing("system"))?,
        goal: goal.ok_or(ScriptError::Missing("goal"))?,
        premises,
        proof: Proof { steps },
    })
}

pub fn render_script(s: &Script) -> String {
    let mut out = String::new();
    writeln!(out, "system {}", s.system).unwrap();
    writeln!(out, "goal {}", render(&s.goal)).unwrap();
    for (name, f) in &s.premises {
        writeln!(out, "premise {name} {}", render(f)).unwrap();
    }
    for step in &s.proof.steps {
        writeln!(out, "{} {} | {}", step.id, render(&step.formula), step.justification).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = "\
# excluded middle
system T
goal p | ~p
premise H []q
1 p | ~p | axiom TAUT
";

    #[test]
    fn parses_and_renders() {
        let s = parse_script(SMALL).unwrap();
        assert_eq!(s.proof.steps.len(), 1);
        assert_eq!(s.proof.steps[0].formula, parse("p | ~p").unwrap());
        let again = parse_script(&render_script(&s)).unwrap();
        assert_eq!(again, s);
        assert!(s.check().unwrap().accepted());
    }

    #[test]
    fn bindings_parse() {
        let j = justification(1, "axiom K phi={p | q} psi=~G").unwrap();
        let Justification::Axiom { bindings, .. } = j else { panic!() };
        assert_eq!(bindings["phi"], BindingValue::Formula(parse("p | q").unwrap()));
        assert_eq!(bindings["psi"], BindingValue::Name { name: "G".into(), negated: true });
    }

    #[test]
    fn errors_carry_lines() {
        let e = parse_script("system T\ngoal p\n1 p\n").unwrap_err();
        assert!(matches!(e, ScriptError::Syntax { line: 3, .. }));
        let e = parse_script("system T\ngoal p &\n").unwrap_err();
        assert!(matches!(e, ScriptError::Formula { line: 2, .. }));
        assert!(matches!(parse_script("goal p\n"), Err(ScriptError::Missing("system"))));
        assert!(justification(1, "mp 1").is_err());
        assert!(justification(1, "nec 1 2").is_err());
    }
}
