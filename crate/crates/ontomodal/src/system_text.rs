//! Text form of a formal system, as printed by `transform --system`.
//!
//! ```text
//! system O_T
//! rules mp nec geni genp unfold
//! quantifier all (A- all x. BODY) & (A+ all x. BODY)
//! quantifier ex (E- ex x. BODY) & (E+ ex x. BODY)
//! schema TAUT | tautology
//! schema T phi:formula | []phi -> phi
//! define G x:individual | G(x) := allp F. (Pos(F) -> F(x))
//! ```

use ontomodal_core::formula::{parse, render};
use ontomodal_core::kernel::{AxiomSchema, Definition, FormalSystem, MetaKind, Quantifiers, Rule, SchemaBody};
use std::collections::BTreeSet;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("system line {line}: {message}")]
pub struct SystemError {
    pub line: usize,
    pub message: String,
}

const RULES: [Rule; 5] = [Rule::ModusPonens, Rule::Necessitation, Rule::GenIndividual, Rule::GenProperty, Rule::Unfold];

fn kind_name(k: MetaKind) -> &'static str {
    match k {
        MetaKind::Formula => "formula",
        MetaKind::Property => "property",
        MetaKind::Individual => "individual",
    }
}

fn metavars_text(vs: &[(String, MetaKind)]) -> String {
    vs.iter().map(|(n, k)| format!(" {n}:{}", kind_name(*k))).collect()
}

pub fn render_system(s: &FormalSystem) -> String {
    let mut out = String::new();
    writeln!(out, "system {}", s.name).unwrap();
    let rules: Vec<&str> = s.rules.iter().map(|r| r.keyword()).collect();
    writeln!(out, "rules {}", rules.join(" ")).unwrap();
    if let Some(q) = &s.quantifiers {
        writeln!(out, "quantifier all {}", render(&q.universal)).unwrap();
        writeln!(out, "quantifier ex {}", render(&q.existential)).unwrap();
    }
    for sch in &s.schemas {
        match &sch.body {
            SchemaBody::Tautology => writeln!(out, "schema {} | tautology", sch.name).unwrap(),
            SchemaBody::Pattern { pattern, metavars } => {
                writeln!(out, "schema {}{} | {}", sch.name, metavars_text(metavars), render(pattern)).unwrap()
            }
        }
    }
    for d in &s.definitions {
        writeln!(
            out,
            "define {}{} | {} := {}",
            d.name,
            metavars_text(&d.metavars),
            render(&d.definiendum),
            render(&d.definiens)
        )
        .unwrap();
    }
    out
}

pub fn parse_system(text: &str) -> Result<FormalSystem, SystemError> {
    let mut s = FormalSystem {
        name: String::new(),
        schemas: Vec::new(),
        definitions: Vec::new(),
        rules: BTreeSet::new(),
        quantifiers: None,
    };
    let mut universal = None;
    let mut existential = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let e = |message: String| SystemError { line, message };
        let f = |t: &str| parse(t.trim()).map_err(|x| SystemError { line, message: x.to_string() });
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let (head, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        let rest = rest.trim();
        match head {
            "system" => s.name = rest.to_string(),
            "rules" => {
                for w in rest.split_whitespace() {
                    let r =
                        RULES.into_iter().find(|r| r.keyword() == w).ok_or_else(|| e(format!("unknown rule `{w}`")))?;
                    s.rules.insert(r);
                }
            }
            "quantifier" => match rest.split_once(char::is_whitespace) {
                Some(("all", t)) => universal = Some(f(t)?),
                Some(("ex", t)) => existential = Some(f(t)?),
                _ => return Err(e("expected `quantifier all|ex TEMPLATE`".into())),
            },
            "schema" | "define" => {
                let (decl, body) = rest.split_once('|').ok_or_else(|| e("missing `|`".into()))?;
                let mut words = decl.split_whitespace();
                let name = words.next().ok_or_else(|| e("missing name".into()))?.to_string();
                let mut metavars = Vec::new();
                for w in words {
                    let (v, k) = w.split_once(':').ok_or_else(|| e(format!("expected `var:kind`, got `{w}`")))?;
                    let kind = match k {
                        "formula" => MetaKind::Formula,
                        "property" => MetaKind::Property,
                        "individual" => MetaKind::Individual,
                        other => return Err(e(format!("unknown kind `{other}`"))),
                    };
                    metavars.push((v.to_string(), kind));
                }
                if head == "schema" {
                    let body = if body.trim() == "tautology" {
                        SchemaBody::Tautology
                    } else {
                        SchemaBody::Pattern { pattern: f(body)?, metavars }
                    };
                    s.schemas.push(AxiomSchema { name, body });
                } else {
                    let (dum, dens) = body.split_once(":=").ok_or_else(|| e("missing `:=`".into()))?;
                    s.definitions.push(Definition { name, definiendum: f(dum)?, definiens: f(dens)?, metavars });
                }
            }
            other => return Err(e(format!("unknown directive `{other}`"))),
        }
    }
    s.quantifiers = match (universal, existential) {
        (Some(universal), Some(existential)) => Some(Quantifiers { universal, existential }),
        (None, None) => None,
        _ => return Err(SystemError { line: 0, message: "both quantifier templates are needed".into() }),
    };
    if s.name.is_empty() {
        return Err(SystemError { line: 0, message: "missing `system` line".into() });
    }
    Ok(s)
}
