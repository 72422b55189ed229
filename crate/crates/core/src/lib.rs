//! A small intensional type theory kernel with W-types, dependent W-types,
//! well-founded predicates and inductively generated covers.

pub mod check;
pub mod cli;
pub mod cover;
pub mod encodings;
pub mod nbe;
pub mod parse;
pub mod pretty;
pub mod syntax;
