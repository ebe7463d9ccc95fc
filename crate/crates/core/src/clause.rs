//! Literals and clauses. A clause is a multiset of literals; literal sides
//! are unordered.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::term::Term;
use crate::types::{Name, Type};

#[derive(Clone, Debug)]
pub struct Literal {
    pub lhs: Term,
    pub rhs: Term,
    pub positive: bool,
}

impl Literal {
    pub fn new(lhs: Term, rhs: Term, positive: bool) -> Result<Literal> {
        if lhs.ty() != rhs.ty() {
            return Err(Error::IllTyped(format!(
                "literal sides {lhs} : {} and {rhs} : {} differ in type",
                lhs.ty(),
                rhs.ty()
            )));
        }
        Ok(Literal { lhs, rhs, positive })
    }

    pub fn eq(lhs: Term, rhs: Term) -> Literal {
        Literal::new(lhs, rhs, true).expect("same-typed sides")
    }

    pub fn neq(lhs: Term, rhs: Term) -> Literal {
        Literal::new(lhs, rhs, false).expect("same-typed sides")
    }

    pub fn ty(&self) -> &Type {
        self.lhs.ty()
    }

    /// Sides with the smaller one (structurally) first.
    pub fn sorted_sides(&self) -> (&Term, &Term) {
        if self.lhs <= self.rhs {
            (&self.lhs, &self.rhs)
        } else {
            (&self.rhs, &self.lhs)
        }
    }

    /// Both orientations, deduplicated when the sides coincide.
    pub fn orientations(&self) -> Vec<(&Term, &Term)> {
        if self.lhs == self.rhs {
            vec![(&self.lhs, &self.rhs)]
        } else {
            vec![(&self.lhs, &self.rhs), (&self.rhs, &self.lhs)]
        }
    }

    pub fn map_sides(&self, mut f: impl FnMut(&Term) -> Result<Term>) -> Result<Literal> {
        Literal::new(f(&self.lhs)?, f(&self.rhs)?, self.positive)
    }

    pub fn is_ground(&self) -> bool {
        self.lhs.is_ground() && self.rhs.is_ground()
    }

    /// `x != y` with both sides bare variables (exempt from purification).
    pub fn is_var_disequation(&self) -> bool {
        !self.positive && self.lhs.is_var() && self.rhs.is_var()
    }

    pub fn complement_of(&self, other: &Literal) -> bool {
        self.positive != other.positive && self.sorted_sides() == other.sorted_sides()
    }

    pub fn weight(&self) -> usize {
        self.lhs.size() + self.rhs.size()
    }
}

impl PartialEq for Literal {
    fn eq(&self, other: &Literal) -> bool {
        self.positive == other.positive && self.sorted_sides() == other.sorted_sides()
    }
}

impl Eq for Literal {}

impl Hash for Literal {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.positive.hash(state);
        self.sorted_sides().hash(state);
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = if self.positive { "=" } else { "!=" };
        write!(f, "{} {op} {}", self.lhs, self.rhs)
    }
}

pub type ClauseId = usize;

/// Clause with bookkeeping. Equality ignores `id` and `ext_penalty`.
#[derive(Clone, Debug)]
pub struct Clause {
    pub lits: Vec<Literal>,
    pub id: ClauseId,
    pub ext_penalty: bool,
}

impl Clause {
    pub fn new(lits: Vec<Literal>) -> Clause {
        Clause { lits, id: 0, ext_penalty: false }
    }

    pub fn with_id(lits: Vec<Literal>, id: ClauseId) -> Clause {
        Clause { lits, id, ext_penalty: false }
    }

    pub fn is_empty(&self) -> bool {
        self.lits.is_empty()
    }

    pub fn len(&self) -> usize {
        self.lits.len()
    }

    pub fn weight(&self) -> usize {
        lits_weight(&self.lits)
    }

    pub fn is_ground(&self) -> bool {
        self.lits.iter().all(Literal::is_ground)
    }

    pub fn canonical(&self) -> Vec<(bool, &Term, &Term)> {
        canonical(&self.lits)
    }

    pub fn vars(&self) -> BTreeMap<Name, Type> {
        lits_vars(&self.lits)
    }

    pub fn type_vars(&self) -> BTreeSet<Name> {
        lits_type_vars(&self.lits)
    }
}

pub fn lits_weight(lits: &[Literal]) -> usize {
    lits.iter().map(Literal::weight).sum()
}

pub fn canonical(lits: &[Literal]) -> Vec<(bool, &Term, &Term)> {
    let mut v: Vec<(bool, &Term, &Term)> = lits
        .iter()
        .map(|l| {
            let (a, b) = l.sorted_sides();
            (l.positive, a, b)
        })
        .collect();
    v.sort();
    v
}

/// Multiset equality of literal lists, modulo side swaps.
pub fn same_multiset(a: &[Literal], b: &[Literal]) -> bool {
    a.len() == b.len() && canonical(a) == canonical(b)
}

pub fn lits_vars(lits: &[Literal]) -> BTreeMap<Name, Type> {
    let mut out = BTreeMap::new();
    for l in lits {
        l.lhs.collect_vars(&mut out);
        l.rhs.collect_vars(&mut out);
    }
    out
}

pub fn lits_type_vars(lits: &[Literal]) -> BTreeSet<Name> {
    let mut out = BTreeSet::new();
    for l in lits {
        l.lhs.collect_type_vars(&mut out);
        l.rhs.collect_type_vars(&mut out);
    }
    out
}

impl PartialEq for Clause {
    fn eq(&self, other: &Clause) -> bool {
        same_multiset(&self.lits, &other.lits)
    }
}

impl Eq for Clause {}

pub struct DisplayLits<'a>(pub &'a [Literal]);

impl fmt::Display for DisplayLits<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "$false");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " | ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", DisplayLits(&self.lits))
    }
}

/// Source of fresh variable and Skolem names (`x#n`, `sk#n`). Names are never
/// reused within one generator.
#[derive(Clone, Debug, Default)]
pub struct Fresh {
    next_var: u64,
    next_skolem: u64,
}

impl Fresh {
    pub fn new() -> Fresh {
        Fresh::default()
    }

    pub fn var_name(&mut self) -> Name {
        self.next_var += 1;
        Name::from(format!("x#{}", self.next_var))
    }

    pub fn type_var_name(&mut self) -> Name {
        self.next_var += 1;
        Name::from(format!("t#{}", self.next_var))
    }

    pub fn skolem_name(&mut self) -> Name {
        self.next_skolem += 1;
        Name::from(format!("sk#{}", self.next_skolem))
    }

    /// Moves the counters past every generated name occurring in `lits`.
    pub fn observe(&mut self, lits: &[Literal]) {
        let suffix = |n: &str, prefix: &str| n.strip_prefix(prefix).and_then(|r| r.parse::<u64>().ok());
        for v in lits_vars(lits).keys() {
            if let Some(i) = suffix(v, "x#") {
                self.next_var = self.next_var.max(i);
            }
        }
        for v in lits_type_vars(lits) {
            if let Some(i) = suffix(&v, "t#") {
                self.next_var = self.next_var.max(i);
            }
        }
        let mut syms = BTreeSet::new();
        for l in lits {
            l.lhs.collect_symbols(&mut syms);
            l.rhs.collect_symbols(&mut syms);
        }
        for s in syms {
            if let Some(i) = suffix(&s, "sk#") {
                self.next_skolem = self.next_skolem.max(i);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: &str) -> Term {
        Term::sym(n, vec![], Type::base("k"))
    }

    #[test]
    fn clause_equality_is_multiset_modulo_swap() {
        let l1 = Literal::eq(c("a"), c("b"));
        let l2 = Literal::neq(c("c"), c("d"));
        let a = Clause::new(vec![l1.clone(), l2.clone()]);
        let b = Clause::new(vec![Literal::neq(c("d"), c("c")), Literal::eq(c("b"), c("a"))]);
        assert_eq!(a, b);
        let dup = Clause::new(vec![l1.clone(), l1.clone()]);
        assert_ne!(Clause::new(vec![l1.clone()]), dup);
        assert_ne!(Literal::eq(c("a"), c("b")), Literal::neq(c("a"), c("b")));
    }

    #[test]
    fn sides_must_agree_in_type() {
        let f = Term::sym("f", vec![], Type::fun(Type::base("k"), Type::base("k")));
        assert!(Literal::new(f, c("a"), true).is_err());
    }

    #[test]
    fn fresh_names_are_unique() {
        let mut fr = Fresh::new();
        let a = fr.var_name();
        let b = fr.var_name();
        assert_ne!(a, b);
        assert_eq!(&*fr.skolem_name(), "sk#1");
    }

    #[test]
    fn observe_skips_used_names() {
        let k = Type::base("k");
        let x = Term::mk_var("x#7", k.clone());
        let sk = Term::sym("sk#3", vec![], k);
        let mut fr = Fresh::new();
        fr.observe(&[Literal::eq(x, sk)]);
        assert_eq!(&*fr.var_name(), "x#8");
        assert_eq!(&*fr.skolem_name(), "sk#4");
    }
}
