//! A tiny total-syntax object language with pairing, syntactic
//! comparison, and a built-in partial evaluator, together with the tower
//! built on top of it: fixpoint combinators, arithmetic, program
//! transformations, reflection with a self-interpreter and specializer,
//! self-referential programs and refutation witnesses, stateful process
//! simulation, and a translation between two presentations of the
//! language.

pub mod arith;
pub mod eval;
pub mod fixpoint;
pub mod isomap;
pub mod kernel;
pub mod metaprog;
pub mod named;
pub mod reflect;
pub mod selfref;
pub mod stateful;
pub mod objlang;

pub use eval::{eval, pev, run, Fuel, Outcome, StuckReason, DEFAULT_FUEL};
pub use objlang::{le, nth_term, parse, print, print_sugared, rank, Program, Term};
