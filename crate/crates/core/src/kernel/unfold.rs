//! Replacing one occurrence of a defined notion by its definiens.

use super::pattern::{infer, instantiate_schema};
use super::Definition;
use crate::formula::Formula;

fn instance(def: &Definition, f: &Formula) -> Option<Formula> {
    let b = infer(&def.definiendum, &def.metavars, f)?;
    instantiate_schema(&def.definiens, &def.metavars, &b).ok()
}

/// Number of occurrences of the definiendum in `f`.
pub fn occurrences(def: &Definition, f: &Formula) -> usize {
    let mut n = 0;
    f.walk(&mut |g| {
        if infer(&def.definiendum, &def.metavars, g).is_some() {
            n += 1;
        }
    });
    n
}

/// `f` with its `k`-th occurrence (from 1, in pre-order) of the definiendum
/// replaced by the definiens.
pub fn unfold_at(def: &Definition, f: &Formula, k: usize) -> Option<Formula> {
    let mut seen = 0;
    let out = rec(def, f, k, &mut seen);
    (seen >= k && k > 0).then_some(out)
}

fn rec(def: &Definition, f: &Formula, k: usize, seen: &mut usize) -> Formula {
    if *seen >= k {
        return f.clone();
    }
    if let Some(g) = instance(def, f) {
        *seen += 1;
        if *seen == k {
            return g;
        }
    }
    f.map_children(|c| rec(def, c, k, seen))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{alpha_equal, parse};
    use crate::kernel::MetaKind;

    fn g_def() -> Definition {
        Definition::new("G", "G(x)", "allp F. (Pos(F) -> F(x))", &[("x", MetaKind::Individual)])
    }

    #[test]
    fn counts_and_replaces_in_order() {
        let f = parse("G(a) -> all y. (G(y) & ~G(a))").unwrap();
        assert_eq!(occurrences(&g_def(), &f), 3);
        let g = unfold_at(&g_def(), &f, 2).unwrap();
        let want = parse("G(a) -> all y. ((allp F. (Pos(F) -> F(y))) & ~G(a))").unwrap();
        assert!(alpha_equal(&g, &want));
        assert!(unfold_at(&g_def(), &f, 4).is_none());
        assert!(unfold_at(&g_def(), &f, 0).is_none());
    }

    #[test]
    fn negated_terms_are_not_occurrences() {
        assert_eq!(occurrences(&g_def(), &parse("(~G)(a)").unwrap()), 0);
    }
}
