//! Native clausal input format.
//!
//! ```text
//! type nat.                          % nullary type constructor
//! type list 1.
//! val pow : pi a. nat > (a > a) > a > a.
//! clause f X != a | X = a.           % uppercase: variables
//! goal h<k> f != b.                  % negated conjecture
//! ```

mod driver;
mod encode;
mod lexer;
mod parser;

use std::fmt;

use crate::clause::{DisplayLits, Literal};
use crate::error::Result;
use crate::orders::Precedence;
use crate::types::{pretty_type, Name, Signature, TypeDecl};

pub use driver::{parse_order, parse_selection, run_job, status_line, Job};
pub use encode::{applicative_encode, fo_string, Encoded};
pub use parser::{parse_clause, parse_problem, parse_term};

#[derive(Clone, Debug, PartialEq)]
pub enum Item {
    Type(Name, usize),
    Val(Name, TypeDecl),
    Clause { lits: Vec<Literal>, goal: bool },
}

/// A parsed problem. Items keep their source order so that printing
/// reproduces the input up to layout.
#[derive(Clone, Debug, PartialEq)]
pub struct ProblemFile {
    pub sig: Signature,
    pub items: Vec<Item>,
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<ProblemFile> {
        parse_problem(text)
    }

    pub fn clauses(&self) -> impl Iterator<Item = (&[Literal], bool)> {
        self.items.iter().filter_map(|i| match i {
            Item::Clause { lits, goal } => Some((lits.as_slice(), *goal)),
            _ => None,
        })
    }

    pub fn input_clauses(&self) -> Vec<Vec<Literal>> {
        self.clauses().map(|(l, _)| l.to_vec()).collect()
    }

    /// Declared symbols in declaration order.
    pub fn symbols(&self) -> impl Iterator<Item = (&Name, &TypeDecl)> {
        self.items.iter().filter_map(|i| match i {
            Item::Val(n, d) => Some((n, d)),
            _ => None,
        })
    }

    /// Symbols with more arguments rank higher; among equal arities, later
    /// declarations rank higher.
    pub fn default_precedence(&self) -> Precedence {
        let mut syms: Vec<(usize, usize, &Name)> =
            self.symbols().enumerate().map(|(i, (n, d))| (d.body.split_all().0.len(), i, n)).collect();
        syms.sort_by_key(|s| std::cmp::Reverse((s.0, s.1)));
        let names: Vec<&str> = syms.iter().map(|s| &**s.2).collect();
        Precedence::from_list(&names)
    }
}

impl fmt::Display for ProblemFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for item in &self.items {
            match item {
                Item::Type(n, 0) => writeln!(f, "type {n}.")?,
                Item::Type(n, a) => writeln!(f, "type {n} {a}.")?,
                Item::Val(n, d) => {
                    if d.vars.is_empty() {
                        writeln!(f, "val {n} : {}.", pretty_type(&d.body))?
                    } else {
                        writeln!(f, "val {n} : pi {}. {}.", d.vars.join(","), pretty_type(&d.body))?
                    }
                }
                Item::Clause { lits, goal } => {
                    let kw = if *goal { "goal" } else { "clause" };
                    writeln!(f, "{kw} {}.", DisplayLits(lits))?
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::types::Type;

    #[test]
    fn elaborates_simple_clause() {
        let p = ProblemFile::parse("type k. val a : k. val f : k > k. clause f X != a | X = a.").unwrap();
        let cls = p.input_clauses();
        assert_eq!(cls.len(), 1);
        assert_eq!(DisplayLits(&cls[0]).to_string(), "f X != a | X = a");
        assert_eq!(cls[0][1].lhs.as_var().unwrap().ty, Type::base("k"));
    }

    #[test]
    fn polymorphic_declaration() {
        let p = ProblemFile::parse("type nat. val pow : pi a. nat > (a > a) > a > a.").unwrap();
        let d = p.sig.decl("pow").unwrap();
        assert_eq!(d.vars.len(), 1);
        assert_eq!(d.to_string(), "pi a. nat > (a > a) > a > a");
    }

    #[test]
    fn partial_application_is_well_typed() {
        let src = "type k. val b : k. val f : k > k. val h : (k > k) > k. clause h f = b.";
        let p = ProblemFile::parse(src).unwrap();
        assert_eq!(DisplayLits(&p.input_clauses()[0]).to_string(), "h f = b");
    }

    #[test]
    fn type_arguments_inferred_and_printed() {
        let src = "type k. val a : k. val id : pi a. a > a. val g : k > k. clause id g a = id a.";
        let p = ProblemFile::parse(src).unwrap();
        assert_eq!(DisplayLits(&p.input_clauses()[0]).to_string(), "id<k>k> g a = id<k> a");
    }

    #[test]
    fn explicit_type_arguments() {
        let src = "type k. val id : pi a. a > a. val f : k > k. clause id<k, k>k> = id<k>k>.";
        // two type arguments for a one-variable symbol
        assert!(matches!(ProblemFile::parse(src), Err(Error::Parse { .. })));
        let src = "type k. val id : pi a. a > a. val f : k > k. clause id<k>k> f = f.";
        let p = ProblemFile::parse(src).unwrap();
        assert_eq!(DisplayLits(&p.input_clauses()[0]).to_string(), "id<k>k> f = f");
    }

    #[test]
    fn leftover_type_variables_generalize() {
        let src = "type k. val id : pi a. a > a. clause id X = X.";
        let p = ProblemFile::parse(src).unwrap();
        let c = &p.input_clauses()[0];
        assert_eq!(DisplayLits(c).to_string(), "id<T1> X = X");
    }

    #[test]
    fn errors_carry_positions() {
        let e = ProblemFile::parse("type k.\nval a : k.\nclause a = b.").unwrap_err();
        assert_eq!(e, Error::Parse { line: 3, col: 12, msg: "unknown symbol `b`".into() });
        let e = ProblemFile::parse("type k.\nval a : k.\nclause a a = a.").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, col: 10, .. }), "{e}");
        let e = ProblemFile::parse("type k. val a : k. val f : k > k. clause f = a.").unwrap_err();
        assert!(e.to_string().contains("type mismatch"), "{e}");
        let e = ProblemFile::parse("type k. val a : list(k).").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, col: 17, .. }), "{e}");
    }

    #[test]
    fn round_trip() {
        let src = "\
type k.
type list 1.
val a : k.
val b : k.
val f : k > k.
val h : (k > k) > k.
val id : pi a. a > a.
val nil : pi a. list(a).
val cons : pi a. a > list(a) > list(a).
clause f X != a | X = a.
clause h f = b.
clause cons<k> (id<k> a) nil<k> = nil<k>.
clause id<(k>k)>k> h (id<k>k> f) = id<k> b.
clause Y (f a) = Y a | id X = X.
goal $false.
";
        let p = ProblemFile::parse(src).unwrap();
        let printed = p.to_string();
        assert_eq!(ProblemFile::parse(&printed).unwrap(), p);
        assert_eq!(ProblemFile::parse(&printed).unwrap().to_string(), printed);
    }

    #[test]
    fn default_precedence_prefers_arity() {
        let p = ProblemFile::parse("type k. val a : k. val f : k > k. val b : k. val g : k > k > k.").unwrap();
        assert_eq!(
            p.default_precedence().listed().iter().map(|n| n.to_string()).collect::<Vec<_>>(),
            ["g", "f", "b", "a"]
        );
    }
}
