//! Find homomorphism-minimal finite models of bounded many-sorted
//! first-order theories by programming an external SMT-LIB solver.
//!
//! The pipeline: parse a theory ([`logic`]), bound its sorts with fresh
//! constants so every model element is nameable, hand it to a solver process
//! ([`solver`]), scrape complete finite models back out through get-value
//! queries ([`model`]), and minimize them in the embedding and
//! all-homomorphism preorders ([`hom`], [`minimize`]). The `minfind` binary
//! exposes the whole thing on the command line.

pub mod cli;
pub mod hom;
pub mod logic;
pub mod minimize;
pub mod model;
pub mod solver;

pub use logic::{Formula, Profile, Signature, Term, Theory};
pub use model::FiniteModel;

/// Umbrella error for the library surface.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] logic::ParseError),
    #[error(transparent)]
    WellFormed(#[from] logic::WellFormedError),
    #[error(transparent)]
    Bound(#[from] logic::BoundError),
    #[error(transparent)]
    Solver(#[from] solver::SolverError),
    #[error(transparent)]
    Model(#[from] model::ModelError),
    #[error(transparent)]
    Minimize(#[from] minimize::MinimizeError),
}

pub type Result<T> = std::result::Result<T, Error>;
