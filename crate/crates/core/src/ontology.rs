//! The ontological system: S5 with positivity axioms and the definitions of
//! God-likeness, essence and necessary existence.

use crate::kernel::{
    builtin_system, AxiomSchema, Definition, FormalSystem, MetaKind, Quantifiers, Rule, UnknownSystem,
};
use crate::temporal::{transform_system, Transformation};

const PROP: MetaKind = MetaKind::Property;
const IND: MetaKind = MetaKind::Individual;

pub fn positivity_axioms() -> [AxiomSchema; 5] {
    [
        AxiomSchema::new("POS-NEG", "Pos(~phi) <-> ~Pos(phi)", &[("phi", PROP)]),
        AxiomSchema::new(
            "POS-MONO",
            "Pos(phi) & (all x. (phi(x) -> psi(x))) -> Pos(psi)",
            &[("phi", PROP), ("psi", PROP)],
        ),
        AxiomSchema::new("POS-G", "Pos(G)", &[]),
        AxiomSchema::new("POS-NEC", "Pos(phi) -> []Pos(phi)", &[("phi", PROP)]),
        AxiomSchema::new("POS-NE", "Pos(NE)", &[]),
    ]
}

pub fn definitions() -> [Definition; 3] {
    [
        Definition::new("G", "G(x)", "allp F. (Pos(F) -> F(x))", &[("x", IND)]),
        Definition::new(
            "ESS",
            "Ess(phi,x)",
            "phi(x) & allp F. (F(x) -> [] all y. (phi(y) -> F(y)))",
            &[("phi", PROP), ("x", IND)],
        ),
        Definition::new("NE", "NE(x)", "allp F. (Ess(F,x) -> [] ex y. F(y))", &[("x", IND)]),
    ]
}

/// No positive property holds at any future time.
pub fn no_future_positivity() -> AxiomSchema {
    AxiomSchema::new("NO-FUTURE-POS", "[] A+ ~Pos(phi)", &[("phi", PROP)])
}

#[allow(non_snake_case)]
pub fn system_O() -> FormalSystem {
    let mut s = builtin_system("S5").expect("S5 is built in");
    s.name = "O".into();
    s.schemas.extend(positivity_axioms());
    s.definitions = definitions().into();
    s.rules = [Rule::ModusPonens, Rule::Necessitation, Rule::GenIndividual, Rule::GenProperty, Rule::Unfold].into();
    s.quantifiers = Some(Quantifiers::default());
    s
}

/// Names accepted by [`system_by_name`].
pub const SYSTEM_NAMES: [&str; 8] = ["T", "S4", "S5", "TMP", "O", "O_T", "O_TB", "O_TB+NFP"];

pub fn system_by_name(name: &str) -> Result<FormalSystem, UnknownSystem> {
    match name {
        "O" | "S5+O" => Ok(system_O()),
        "O_T" => Ok(transform_system(&system_O(), Transformation::Temporalize)),
        "O_TB" => Ok(transform_system(&system_O(), Transformation::Break)),
        "O_TB+NFP" => Ok(transform_system(&system_O(), Transformation::Break)
            .with_schema(no_future_positivity())
            .renamed("O_TB+NFP")),
        other => builtin_system(other),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        let o = system_O();
        let s5 = builtin_system("S5").unwrap();
        assert_eq!(o.schemas.len() + o.definitions.len(), s5.schemas.len() + 5 + 3);
        for n in SYSTEM_NAMES {
            assert_eq!(system_by_name(n).unwrap().name, n);
        }
        assert_eq!(system_by_name("O_TB+NFP").unwrap().schemas.len(), o.schemas.len() + 3);
    }
}
