//! Spine-form lambda-free higher-order terms and green positions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::types::{Name, Type};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Var {
    pub name: Name,
    pub ty: Type,
}

impl Var {
    pub fn new(name: &str, ty: Type) -> Var {
        Var { name: Arc::from(name), ty }
    }
}

/// Head of a term in spine form. Symbol heads carry their explicit type
/// arguments and the resulting instantiated type.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Head {
    Sym { name: Name, ty_args: Vec<Type>, ty: Type },
    Var(Var),
}

impl Head {
    pub fn ty(&self) -> &Type {
        match self {
            Head::Sym { ty, .. } => ty,
            Head::Var(v) => &v.ty,
        }
    }

    pub fn sym_name(&self) -> Option<&Name> {
        match self {
            Head::Sym { name, .. } => Some(name),
            Head::Var(_) => None,
        }
    }
}

#[derive(PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
struct TermData {
    head: Head,
    args: Vec<Term>,
    ty: Type,
}

/// Immutable, structurally shared term `head arg1 ... argn`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term(Arc<TermData>);

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Term {
    /// Builds `head args`, checking argument types against the head type.
    pub fn new(head: Head, args: Vec<Term>) -> Result<Term> {
        let ty = {
            let (doms, res) = head.ty().peel(args.len()).ok_or_else(|| {
                Error::IllTyped(format!("head of type {} applied to {} arguments", head.ty(), args.len()))
            })?;
            for (d, a) in doms.iter().zip(&args) {
                if *d != a.ty() {
                    return Err(Error::IllTyped(format!("argument {a} : {} where {d} expected", a.ty())));
                }
            }
            res.clone()
        };
        Ok(Term(Arc::new(TermData { head, args, ty })))
    }

    pub fn var(v: Var) -> Term {
        let ty = v.ty.clone();
        Term(Arc::new(TermData { head: Head::Var(v), args: Vec::new(), ty }))
    }

    pub fn mk_var(name: &str, ty: Type) -> Term {
        Term::var(Var::new(name, ty))
    }

    /// Nullary occurrence of a symbol whose instantiated type is `ty`.
    pub fn sym(name: &str, ty_args: Vec<Type>, ty: Type) -> Term {
        Term::head_only(Head::Sym { name: Arc::from(name), ty_args, ty })
    }

    pub fn head_only(head: Head) -> Term {
        let ty = head.ty().clone();
        Term(Arc::new(TermData { head, args: Vec::new(), ty }))
    }

    /// Spine merge: `(h a1..an) b1..bm = h a1..an b1..bm`.
    pub fn apply(&self, more: &[Term]) -> Result<Term> {
        if more.is_empty() {
            return Ok(self.clone());
        }
        let mut args = self.args().to_vec();
        args.extend_from_slice(more);
        Term::new(self.head().clone(), args)
    }

    /// Term with the last `n` arguments removed.
    pub fn strip(&self, n: usize) -> Term {
        let keep = self.args().len() - n;
        Term::new(self.head().clone(), self.args()[..keep].to_vec()).expect("prefix of a well-typed term")
    }

    /// The head applied to the first `k` arguments.
    pub fn prefix(&self, k: usize) -> Term {
        if k == self.args().len() {
            return self.clone();
        }
        Term::new(self.head().clone(), self.args()[..k].to_vec()).expect("prefix of a well-typed term")
    }

    pub fn head(&self) -> &Head {
        &self.0.head
    }

    pub fn args(&self) -> &[Term] {
        &self.0.args
    }

    pub fn ty(&self) -> &Type {
        &self.0.ty
    }

    /// The bare variable, if this term is one.
    pub fn as_var(&self) -> Option<&Var> {
        match self.head() {
            Head::Var(v) if self.args().is_empty() => Some(v),
            _ => None,
        }
    }

    pub fn is_var(&self) -> bool {
        self.as_var().is_some()
    }

    pub fn var_head(&self) -> Option<&Var> {
        match self.head() {
            Head::Var(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_ground(&self) -> bool {
        match self.head() {
            Head::Var(_) => false,
            Head::Sym { ty_args, .. } => ty_args.iter().all(Type::is_ground) && self.args().iter().all(Term::is_ground),
        }
    }

    /// Number of heads (symbols and variables) in the term.
    pub fn size(&self) -> usize {
        1 + self.args().iter().map(Term::size).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        self.args().iter().map(|a| a.depth() + 1).max().unwrap_or(0)
    }

    /// Term variables with their types (the first occurrence wins).
    pub fn collect_vars(&self, out: &mut BTreeMap<Name, Type>) {
        if let Head::Var(v) = self.head() {
            out.entry(v.name.clone()).or_insert_with(|| v.ty.clone());
        }
        self.args().iter().for_each(|a| a.collect_vars(out));
    }

    pub fn collect_type_vars(&self, out: &mut BTreeSet<Name>) {
        match self.head() {
            Head::Var(v) => v.ty.collect_vars(out),
            Head::Sym { ty_args, ty, .. } => {
                ty_args.iter().for_each(|t| t.collect_vars(out));
                ty.collect_vars(out);
            }
        }
        self.args().iter().for_each(|a| a.collect_type_vars(out));
    }

    pub fn collect_symbols(&self, out: &mut BTreeSet<Name>) {
        if let Head::Sym { name, .. } = self.head() {
            out.insert(name.clone());
        }
        self.args().iter().for_each(|a| a.collect_symbols(out));
    }

    pub fn has_var(&self, name: &str) -> bool {
        matches!(self.head(), Head::Var(v) if &*v.name == name) || self.args().iter().any(|a| a.has_var(name))
    }

    /// Visits every subterm occurrence of a variable-headed term
    /// (applied or not), including non-green ones.
    pub fn for_each_var_occurrence<'a>(&'a self, f: &mut impl FnMut(&'a Var, &'a [Term])) {
        if let Head::Var(v) = self.head() {
            f(v, self.args());
        }
        self.args().iter().for_each(|a| a.for_each_var_occurrence(f));
    }

    /// All green subterms, root first, in left-to-right preorder.
    pub fn green_subterms(&self) -> Vec<(GreenPos, Term)> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        self.green_rec(&mut path, &mut out);
        out
    }

    fn green_rec(&self, path: &mut Vec<usize>, out: &mut Vec<(GreenPos, Term)>) {
        out.push((GreenPos(path.clone()), self.clone()));
        let n = self.args().len();
        for (i, a) in self.args().iter().enumerate() {
            path.push(n - 1 - i);
            a.green_rec(path, out);
            path.pop();
        }
    }

    pub fn at(&self, pos: &GreenPos) -> Result<&Term> {
        let mut cur = self;
        for &off in &pos.0 {
            let n = cur.args().len();
            if off >= n {
                return Err(Error::InvalidPosition(pos.to_string()));
            }
            cur = &cur.args()[n - 1 - off];
        }
        Ok(cur)
    }

    /// `self` with the green subterm at `pos` replaced by `u` (same type).
    pub fn replace_green(&self, pos: &GreenPos, u: &Term) -> Result<Term> {
        self.replace_rec(&pos.0, u, pos)
    }

    fn replace_rec(&self, path: &[usize], u: &Term, pos: &GreenPos) -> Result<Term> {
        match path.split_first() {
            None => {
                if u.ty() != self.ty() {
                    return Err(Error::IllTyped(format!("replacement {u} : {} for {} : {}", u.ty(), self, self.ty())));
                }
                Ok(u.clone())
            }
            Some((&off, rest)) => {
                let n = self.args().len();
                if off >= n {
                    return Err(Error::InvalidPosition(pos.to_string()));
                }
                let i = n - 1 - off;
                let mut args = self.args().to_vec();
                args[i] = args[i].replace_rec(rest, u, pos)?;
                Ok(Term(Arc::new(TermData { head: self.head().clone(), args, ty: self.ty().clone() })))
            }
        }
    }
}

/// Position of a green subterm. Argument indices are stored counted from the
/// right so that they survive instantiation of applied variables; display and
/// construction from paths use the usual 1-based left-to-right numbering.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct GreenPos(pub Vec<usize>);

impl GreenPos {
    pub fn root() -> GreenPos {
        GreenPos(Vec::new())
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    /// From a 1-based left-to-right path, interpreted in `t`.
    pub fn from_path(t: &Term, path: &[usize]) -> Result<GreenPos> {
        let mut cur = t;
        let mut offs = Vec::with_capacity(path.len());
        for &i in path {
            let n = cur.args().len();
            if i == 0 || i > n {
                return Err(Error::InvalidPosition(format!("{path:?}")));
            }
            offs.push(n - i);
            cur = &cur.args()[i - 1];
        }
        Ok(GreenPos(offs))
    }

    /// 1-based left-to-right path of this position in `t`.
    pub fn to_path(&self, t: &Term) -> Result<Vec<usize>> {
        let mut cur = t;
        let mut path = Vec::with_capacity(self.0.len());
        for &off in &self.0 {
            let n = cur.args().len();
            if off >= n {
                return Err(Error::InvalidPosition(self.to_string()));
            }
            path.push(n - off);
            cur = &cur.args()[n - 1 - off];
        }
        Ok(path)
    }
}

impl fmt::Display for GreenPos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = self.0.iter().map(|o| format!("-{}", o + 1)).collect();
        write!(f, "{}", parts.join("."))
    }
}

fn fmt_head(h: &Head, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match h {
        Head::Var(v) => write!(f, "{}", v.name),
        Head::Sym { name, ty_args, .. } => {
            write!(f, "{name}")?;
            if !ty_args.is_empty() {
                write!(f, "<")?;
                for (i, t) in ty_args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{t}")?;
                }
                write!(f, ">")?;
            }
            Ok(())
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_head(self.head(), f)?;
        for a in self.args() {
            if a.args().is_empty() {
                write!(f, " {a}")?;
            } else {
                write!(f, " ({a})")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k() -> Type {
        Type::base("k")
    }

    fn c(n: &str) -> Term {
        Term::sym(n, vec![], k())
    }

    fn f2() -> Term {
        Term::sym("f", vec![], Type::arrows([k(), k()], k()))
    }

    fn g2() -> Term {
        Term::sym("g", vec![], Type::arrows([k(), k()], k()))
    }

    #[test]
    fn green_subterms_of_binary_application() {
        let t = f2().apply(&[c("a"), c("b")]).unwrap();
        let gs = t.green_subterms();
        let shown: Vec<(Vec<usize>, String)> =
            gs.iter().map(|(p, s)| (p.to_path(&t).unwrap(), s.to_string())).collect();
        assert_eq!(shown, vec![(vec![], "f a b".to_string()), (vec![1], "a".to_string()), (vec![2], "b".to_string())]);
    }

    #[test]
    fn green_subterms_recurse_into_arguments_only() {
        let f1 = Term::sym("f", vec![], Type::fun(k(), k()));
        let t = g2().apply(&[f1.apply(&[c("a")]).unwrap(), c("b")]).unwrap();
        let paths: Vec<Vec<usize>> = t.green_subterms().iter().map(|(p, _)| p.to_path(&t).unwrap()).collect();
        assert_eq!(paths, vec![vec![], vec![1], vec![1, 1], vec![2]]);
        let x = Term::mk_var("X", k());
        assert_eq!(x.green_subterms().len(), 1);
    }

    #[test]
    fn replace_green_examples() {
        let t = f2().apply(&[c("a"), c("b")]).unwrap();
        let p = GreenPos::from_path(&t, &[2]).unwrap();
        assert_eq!(t.replace_green(&p, &c("c")).unwrap().to_string(), "f a c");
        assert_eq!(t.replace_green(&GreenPos::root(), &c("c")).unwrap(), c("c"));
        let f1 = Term::sym("f", vec![], Type::fun(k(), k()));
        let t = g2().apply(&[f1.apply(&[c("a")]).unwrap(), c("b")]).unwrap();
        let p = GreenPos::from_path(&t, &[1, 1]).unwrap();
        assert_eq!(t.replace_green(&p, &c("b")).unwrap().to_string(), "g (f b) b");
        assert!(t.replace_green(&GreenPos(vec![5]), &c("b")).is_err());
        assert!(t.replace_green(&p, &f1).is_err());
    }

    #[test]
    fn ill_typed_application_rejected() {
        assert!(c("a").apply(&[c("b")]).is_err());
        let f1 = Term::sym("f", vec![], Type::fun(k(), k()));
        assert!(f2().apply(&[f1]).is_err());
    }

    #[test]
    fn right_anchored_positions_survive_spine_growth() {
        let xv = Term::mk_var("X", Type::fun(k(), k()));
        let t = xv.apply(&[c("a")]).unwrap();
        let p = GreenPos::from_path(&t, &[1]).unwrap();
        let inst = f2().apply(&[c("b"), c("a")]).unwrap();
        assert_eq!(inst.at(&p).unwrap(), &c("a"));
    }
}
