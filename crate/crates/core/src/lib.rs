//! Modal, temporal and higher-order formulas with Kripke semantics, a
//! tableau prover and a Hilbert-style proof kernel.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod formula;
pub mod kernel;
pub mod kripke;
pub mod nnf;
pub mod ontology;
pub mod signature;
pub mod tableau;
pub mod temporal;
