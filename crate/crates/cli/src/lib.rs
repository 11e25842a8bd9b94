//! Command-line front end for the `riordan` crate: an expression grammar
//! for series, pairs and sequences, OEIS b-file fixtures and the
//! reproduction catalogue run by `verify-paper`.

pub mod checks;
pub mod commands;
pub mod expr;
pub mod golden;
pub mod oeis;
