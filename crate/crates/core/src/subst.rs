//! Substitutions over type and term variables.

use std::collections::BTreeMap;
use std::fmt;

use crate::clause::Literal;
use crate::error::{Error, Result};
use crate::term::{Head, Term, Var};
use crate::types::{Name, Type};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Substitution {
    pub types: BTreeMap<Name, Type>,
    pub terms: BTreeMap<Name, Term>,
}

impl Substitution {
    pub fn new() -> Substitution {
        Substitution::default()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty() && self.terms.is_empty()
    }

    pub fn bind_type(&mut self, v: Name, t: Type) {
        self.types.insert(v, t);
    }

    pub fn bind(&mut self, v: Name, t: Term) {
        self.terms.insert(v, t);
    }

    pub fn apply_type(&self, t: &Type) -> Type {
        if self.types.is_empty() {
            return t.clone();
        }
        t.subst(&self.types)
    }

    /// Simultaneous application. Instantiated applied variables are merged
    /// back into spine form.
    pub fn apply(&self, t: &Term) -> Result<Term> {
        if self.is_empty() {
            return Ok(t.clone());
        }
        self.apply_with(t, false)
    }

    pub fn apply_lit(&self, l: &Literal) -> Result<Literal> {
        l.map_sides(|s| self.apply(s))
    }

    pub fn apply_lits(&self, lits: &[Literal]) -> Result<Vec<Literal>> {
        lits.iter().map(|l| self.apply_lit(l)).collect()
    }

    /// Application for triangular substitutions: bound values are themselves
    /// instantiated until no bound variable remains. Requires an acyclic
    /// substitution.
    pub(crate) fn apply_deep(&self, t: &Term) -> Result<Term> {
        self.apply_with(t, true)
    }

    pub(crate) fn apply_type_deep(&self, t: &Type) -> Type {
        match t {
            Type::Var(v) => match self.types.get(v) {
                Some(b) => self.apply_type_deep(b),
                None => t.clone(),
            },
            Type::App(c, args) => Type::App(c.clone(), args.iter().map(|a| self.apply_type_deep(a)).collect()),
        }
    }

    fn ty(&self, t: &Type, deep: bool) -> Type {
        if self.types.is_empty() {
            t.clone()
        } else if deep {
            self.apply_type_deep(t)
        } else {
            t.subst(&self.types)
        }
    }

    fn apply_with(&self, t: &Term, deep: bool) -> Result<Term> {
        let args: Vec<Term> = t.args().iter().map(|a| self.apply_with(a, deep)).collect::<Result<_>>()?;
        match t.head() {
            Head::Var(v) => match self.terms.get(&v.name) {
                Some(bound) => {
                    let bound = if deep { self.apply_with(bound, true)? } else { bound.clone() };
                    let want = self.ty(&v.ty, deep);
                    if *bound.ty() != want {
                        return Err(Error::IllTyped(format!(
                            "{} : {} bound to {bound} : {}",
                            v.name,
                            want,
                            bound.ty()
                        )));
                    }
                    bound.apply(&args)
                }
                None => {
                    let nv = Var { name: v.name.clone(), ty: self.ty(&v.ty, deep) };
                    Term::new(Head::Var(nv), args)
                }
            },
            Head::Sym { name, ty_args, ty } => {
                let h = Head::Sym {
                    name: name.clone(),
                    ty_args: ty_args.iter().map(|a| self.ty(a, deep)).collect(),
                    ty: self.ty(ty, deep),
                };
                Term::new(h, args)
            }
        }
    }

    /// Composition `self` then `other`: `t (self.compose(other)) = (t self) other`.
    pub fn compose(&self, other: &Substitution) -> Result<Substitution> {
        let mut out = Substitution::new();
        for (v, t) in &self.types {
            out.types.insert(v.clone(), other.apply_type(t));
        }
        for (v, t) in &other.types {
            out.types.entry(v.clone()).or_insert_with(|| t.clone());
        }
        for (v, t) in &self.terms {
            out.terms.insert(v.clone(), other.apply(t)?);
        }
        for (v, t) in &other.terms {
            out.terms.entry(v.clone()).or_insert_with(|| t.clone());
        }
        Ok(out)
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for (v, t) in &self.types {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "{v}->{t}")?;
        }
        for (v, t) in &self.terms {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "{v}->{t}")?;
        }
        write!(f, "}}")
    }
}
