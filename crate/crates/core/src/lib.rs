//! Superposition for clausal lambda-free higher-order logic.

pub mod calculus;
pub mod clause;
pub mod error;
pub mod floor;
pub mod frontend;
pub mod oracle;
pub mod orders;
pub mod saturation;
pub mod simplify;
pub mod subst;
pub mod term;
pub mod types;
pub mod unify;

pub use clause::{Clause, ClauseId, Fresh, Literal};
pub use error::{Error, Result};
pub use subst::Substitution;
pub use term::{GreenPos, Head, Term, Var};
pub use types::{Name, Signature, Type, TypeDecl};
