//! Script language and report front end for torsionlab.

pub mod exec;
pub mod script;
