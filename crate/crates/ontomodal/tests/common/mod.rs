#![allow(dead_code)]

#[path = "../../../core/tests/common/gen.rs"]
pub mod gen;
pub mod mutate;
