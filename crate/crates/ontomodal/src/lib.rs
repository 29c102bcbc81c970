//! File formats, the shipped derivations and the command-line front end
//! for `ontomodal-core`.

pub mod cli;
pub mod collapse;
pub mod model_text;
pub mod script;
pub mod shipped;
pub mod system_text;

pub use cli::{execute, CommandResult};
