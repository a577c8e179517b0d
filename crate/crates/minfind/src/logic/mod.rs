//! Theory-language front end: abstract syntax, the SMT-LIB subset parser and
//! printer, PE/geometric classification, and fresh-constant size bounding.

mod ast;
mod bound;
mod classify;
mod parse;
mod print;

pub use ast::{
    Axiom, Bounding, FuncDecl, Formula, PredDecl, Profile, Provenance, Signature, Term, Theory,
    Var, Vocab, WellFormedError, RESERVED_PREFIX,
};
pub use bound::{bound_theory, bounding_const, BoundError};
pub use classify::{is_geometric, is_geometric_sentence, is_pe};
pub use parse::{parse_theory, ParseError};
pub use print::{print_formula, print_symbol, print_term, print_theory};

/// Serialize a theory to solver text; inverse of [`from_term_form`] up to
/// structural equality.
pub fn to_term_form(t: &Theory) -> String {
    print_theory(t)
}

/// Parse solver text back into a theory.
pub fn from_term_form(text: &str) -> Result<Theory, ParseError> {
    parse_theory(text)
}
