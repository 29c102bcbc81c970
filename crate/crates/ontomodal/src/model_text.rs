//! Line-oriented text format for Kripke models.
//!
//! ```text
//! # two worlds, one arrow
//! worlds: w1 w2
//! access: w1->w2 w2->w2
//! time: w1<w2
//! domain: a b
//! val: p @ w2
//! val: R(a,b) @ w1 w2
//! ext: F @ w1 = {a, b}
//! pos: F @ w1
//! ```
//!
//! Every directive may repeat; later lines add to earlier ones. `worlds:`
//! and `domain:` must come before any line naming a world or an element.
//! Names are runs of letters, digits and `_`. A `time:` line lists every
//! world once, earliest first. `ext:` gives a property's extension at the
//! listed worlds (empty elsewhere). `pos:` marks named extensions positive at
//! the listed worlds; once any `pos:` line appears, the model interprets `Pos`.

use ontomodal_core::kripke::{Extension, KripkeModel};
use ontomodal_core::tableau::TableauResult;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("model line {line}: {message}")]
pub struct ModelError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ModelError {
    ModelError { line, message: message.into() }
}

fn is_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_alphanumeric() || c == '_')
}

fn name(line: usize, s: &str) -> Result<String, ModelError> {
    let s = s.trim();
    if is_name(s) {
        Ok(s.to_string())
    } else {
        Err(err(line, format!("`{s}` is not a name")))
    }
}

struct Reader {
    m: KripkeModel,
    pos: Vec<(usize, String, Vec<usize>)>,
}

impl Reader {
    fn world(&self, line: usize, s: &str) -> Result<usize, ModelError> {
        self.m.world(s.trim()).ok_or_else(|| err(line, format!("unknown world `{}`", s.trim())))
    }

    fn worlds(&self, line: usize, s: &str) -> Result<Vec<usize>, ModelError> {
        let ws: Vec<usize> = s.split_whitespace().map(|w| self.world(line, w)).collect::<Result<_, _>>()?;
        if ws.is_empty() {
            return Err(err(line, "expected at least one world after `@`"));
        }
        Ok(ws)
    }

    fn element(&self, line: usize, s: &str) -> Result<usize, ModelError> {
        self.m.individual(s.trim()).ok_or_else(|| err(line, format!("unknown domain element `{}`", s.trim())))
    }

    fn directive(&mut self, line: usize, key: &str, rest: &str) -> Result<(), ModelError> {
        match key {
            "worlds" => {
                for w in rest.split_whitespace() {
                    let w = name(line, w)?;
                    if self.m.world(&w).is_some() {
                        return Err(err(line, format!("world `{w}` declared twice")));
                    }
                    self.m.worlds.push(w);
                    self.m.access.push(Vec::new());
                }
            }
            "domain" => {
                for d in rest.split_whitespace() {
                    let d = name(line, d)?;
                    if self.m.individual(&d).is_some() {
                        return Err(err(line, format!("element `{d}` declared twice")));
                    }
                    self.m.domain.push(d);
                }
                if self.m.domain.len() > 64 {
                    return Err(err(line, "at most 64 domain elements"));
                }
            }
            "access" => {
                for edge in rest.split_whitespace() {
                    let (a, b) =
                        edge.split_once("->").ok_or_else(|| err(line, format!("expected `u->v`, got `{edge}`")))?;
                    let (a, b) = (self.world(line, a)?, self.world(line, b)?);
                    self.m.add_access(a, b);
                }
            }
            "time" => {
                if self.m.time.is_some() {
                    return Err(err(line, "second `time:` line"));
                }
                let order: Vec<usize> = rest.split('<').map(|w| self.world(line, w)).collect::<Result<_, _>>()?;
                let distinct: BTreeSet<_> = order.iter().collect();
                if distinct.len() != order.len() || order.len() != self.m.len() {
                    return Err(err(line, "the time line must list every world exactly once"));
                }
                self.m.time = Some(order);
            }
            "val" => {
                let (fact, at) = rest.split_once('@').ok_or_else(|| err(line, "expected `FACT @ worlds`"))?;
                let fact = fact.trim();
                let (pred, args) = match fact.split_once('(') {
                    Some((p, a)) => {
                        let a = a.strip_suffix(')').ok_or_else(|| err(line, "unclosed `(`"))?;
                        let args = a.split(',').map(|x| self.element(line, x)).collect::<Result<Vec<_>, _>>()?;
                        (name(line, p)?, args)
                    }
                    None => (name(line, fact)?, Vec::new()),
                };
                for w in self.worlds(line, at)? {
                    self.m.valuation.insert((w, pred.clone(), args.clone()));
                }
            }
            "ext" => {
                let (head, set) = rest.split_once('=').ok_or_else(|| err(line, "expected `F @ worlds = {...}`"))?;
                let (prop, at) = head.split_once('@').ok_or_else(|| err(line, "expected `F @ worlds = {...}`"))?;
                let prop = name(line, prop)?;
                let set = set.trim();
                let inner = set
                    .strip_prefix('{')
                    .and_then(|s| s.strip_suffix('}'))
                    .ok_or_else(|| err(line, "extension must be written `{a, b}`"))?;
                let mut mask = 0u64;
                for e in inner.split(',').filter(|e| !e.trim().is_empty()) {
                    mask |= 1 << self.element(line, e)?;
                }
                let n = self.m.len();
                for w in self.worlds(line, at)? {
                    self.m.extensions.entry(prop.clone()).or_insert_with(|| vec![0; n])[w] = mask;
                }
            }
            "pos" => {
                let (props, at) = rest.split_once('@').ok_or_else(|| err(line, "expected `F ... @ worlds`"))?;
                let ws = self.worlds(line, at)?;
                for p in props.split_whitespace() {
                    self.pos.push((line, name(line, p)?, ws.clone()));
                }
            }
            other => return Err(err(line, format!("unknown directive `{other}:`"))),
        }
        Ok(())
    }
}

pub fn parse_model(text: &str) -> Result<KripkeModel, ModelError> {
    let mut r = Reader { m: KripkeModel::default(), pos: Vec::new() };
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, rest) =
            content.split_once(':').ok_or_else(|| err(i + 1, format!("expected `key: ...`, got `{content}`")))?;
        r.directive(i + 1, key.trim(), rest)?;
    }
    if r.m.is_empty() {
        return Err(err(0, "model has no worlds"));
    }
    if !r.pos.is_empty() {
        let mut positivity = vec![BTreeSet::new(); r.m.len()];
        for (line, prop, ws) in r.pos {
            let ext = r.m.extensions.get(&prop).ok_or_else(|| err(line, format!("`{prop}` has no `ext:` line")))?;
            for w in ws {
                positivity[w].insert(ext.clone());
            }
        }
        r.m.positivity = Some(positivity);
    }
    Ok(r.m)
}

fn set_text(m: &KripkeModel, mask: u64) -> String {
    let names: Vec<&str> = (0..m.domain.len()).filter(|i| mask >> i & 1 == 1).map(|i| m.domain[i].as_str()).collect();
    format!("{{{}}}", names.join(", "))
}

/// Renders in the format read by [`parse_model`]. Positive extensions that
/// carry no name are written under fresh names `_pos1`, `_pos2`, ...
pub fn render_model(m: &KripkeModel) -> String {
    let mut out = String::new();
    let w = |i: usize| m.worlds[i].as_str();
    writeln!(out, "worlds: {}", m.worlds.join(" ")).unwrap();
    let edges: Vec<String> = m.pairs().into_iter().map(|(a, b)| format!("{}->{}", w(a), w(b))).collect();
    if !edges.is_empty() {
        writeln!(out, "access: {}", edges.join(" ")).unwrap();
    }
    if let Some(t) = &m.time {
        let names: Vec<&str> = t.iter().map(|&i| w(i)).collect();
        writeln!(out, "time: {}", names.join("<")).unwrap();
    }
    if !m.domain.is_empty() {
        writeln!(out, "domain: {}", m.domain.join(" ")).unwrap();
    }
    let mut facts: BTreeMap<(&str, &[usize]), Vec<&str>> = BTreeMap::new();
    for (world, pred, args) in &m.valuation {
        facts.entry((pred.as_str(), args.as_slice())).or_default().push(w(*world));
    }
    for ((pred, args), ws) in facts {
        if args.is_empty() {
            writeln!(out, "val: {pred} @ {}", ws.join(" ")).unwrap();
        } else {
            let args: Vec<&str> = args.iter().map(|&a| m.domain[a].as_str()).collect();
            writeln!(out, "val: {pred}({}) @ {}", args.join(","), ws.join(" ")).unwrap();
        }
    }
    let mut named: Vec<(String, Extension)> = m.extensions.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
    if let Some(pos) = &m.positivity {
        let mut fresh = 0;
        for e in pos.iter().flatten() {
            if !named.iter().any(|(_, v)| v == e) {
                fresh += 1;
                named.push((format!("_pos{fresh}"), e.clone()));
            }
        }
    }
    for (prop, ext) in &named {
        let mut by_mask: BTreeMap<u64, Vec<&str>> = BTreeMap::new();
        for (i, mask) in ext.iter().enumerate() {
            by_mask.entry(*mask).or_default().push(w(i));
        }
        for (mask, ws) in by_mask {
            writeln!(out, "ext: {prop} @ {} = {}", ws.join(" "), set_text(m, mask)).unwrap();
        }
    }
    if let Some(pos) = &m.positivity {
        for (i, exts) in pos.iter().enumerate() {
            let mut names: Vec<&str> = Vec::new();
            for e in exts {
                if let Some((n, _)) = named.iter().find(|(_, v)| v == e) {
                    names.push(n);
                }
            }
            if !names.is_empty() {
                writeln!(out, "pos: {} @ {}", names.join(" "), w(i)).unwrap();
            }
        }
    }
    out
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("no model to extract: the tableau closed")]
pub struct NoModel;

/// The model of a satisfiable tableau result, as text.
pub fn extract_countermodel(r: &TableauResult) -> Result<String, NoModel> {
    r.model.as_ref().map(render_model).ok_or(NoModel)
}
