//! Unification and matching of lambda-free higher-order terms.
//!
//! Decomposition works on spines: to unify `x s1..sn` with `h t1..tm`
//! (m >= n) the variable is bound to the prefix `h t1..t(m-n)` and the
//! remaining arguments are unified pointwise. Most general unifiers are
//! unique up to renaming.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::clause::{lits_type_vars, lits_vars, Fresh, Literal};
use crate::subst::Substitution;
use crate::term::{Head, Term};
use crate::types::{Name, Type};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UnifyError {
    #[error("head clash")]
    Clash,
    #[error("occurs check")]
    Occurs,
    #[error("argument count mismatch")]
    Arity,
    #[error("type clash")]
    TypeClash,
    #[error("type occurs check")]
    TypeOccurs,
}

type UResult<T> = Result<T, UnifyError>;

/// Extends `sigma` so that both types become equal.
pub fn unify_types(a: &Type, b: &Type, sigma: &Substitution) -> UResult<Substitution> {
    let mut s = sigma.clone();
    unify_types_in(&mut s, a, b)?;
    Ok(s)
}

fn unify_types_in(s: &mut Substitution, a: &Type, b: &Type) -> UResult<()> {
    let a = s.apply_type_deep(a);
    let b = s.apply_type_deep(b);
    match (&a, &b) {
        _ if a == b => Ok(()),
        (Type::Var(v), t) | (t, Type::Var(v)) => {
            if t.occurs(v) {
                return Err(UnifyError::TypeOccurs);
            }
            s.bind_type(v.clone(), t.clone());
            Ok(())
        }
        (Type::App(c, xs), Type::App(d, ys)) => {
            if c != d || xs.len() != ys.len() {
                return Err(UnifyError::TypeClash);
            }
            xs.iter().zip(ys).try_for_each(|(x, y)| unify_types_in(s, x, y))
        }
    }
}

/// Makes a triangular substitution idempotent.
fn finish(s: Substitution) -> Substitution {
    let mut out = Substitution::new();
    for v in s.types.keys() {
        out.types.insert(v.clone(), s.apply_type_deep(&Type::Var(v.clone())));
    }
    for (v, t) in &s.terms {
        out.terms.insert(v.clone(), s.apply_deep(t).expect("unifier bindings are well-typed"));
    }
    out
}

/// Most general unifier of `s` and `t`, idempotent.
pub fn mgu(s: &Term, t: &Term) -> UResult<Substitution> {
    let mut sub = Substitution::new();
    unify_in(&mut sub, s, t)?;
    Ok(finish(sub))
}

/// Unifies several pairs simultaneously.
pub fn mgu_all(pairs: &[(Term, Term)]) -> UResult<Substitution> {
    let mut sub = Substitution::new();
    for (s, t) in pairs {
        unify_in(&mut sub, s, t)?;
    }
    Ok(finish(sub))
}

fn occurs(s: &Substitution, v: &str, t: &Term) -> bool {
    match t.head() {
        Head::Var(w) if &*w.name == v => return true,
        Head::Var(w) => {
            if let Some(b) = s.terms.get(&w.name) {
                if occurs(s, v, b) {
                    return true;
                }
            }
        }
        Head::Sym { .. } => {}
    }
    t.args().iter().any(|a| occurs(s, v, a))
}

fn bind_var(sub: &mut Substitution, x: &crate::term::Var, t: &Term) -> UResult<()> {
    if occurs(sub, &x.name, t) {
        return Err(UnifyError::Occurs);
    }
    sub.bind(x.name.clone(), t.clone());
    Ok(())
}

fn unify_in(sub: &mut Substitution, s: &Term, t: &Term) -> UResult<()> {
    unify_types_in(sub, s.ty(), t.ty())?;
    let s = sub.apply_deep(s).map_err(|_| UnifyError::TypeClash)?;
    let t = sub.apply_deep(t).map_err(|_| UnifyError::TypeClash)?;
    if s == t {
        return Ok(());
    }
    if let Some(x) = s.as_var() {
        return bind_var(sub, x, &t);
    }
    if let Some(y) = t.as_var() {
        return bind_var(sub, y, &s);
    }
    let (s, t) = if s.args().len() <= t.args().len() { (s, t) } else { (t, s) };
    let n = s.args().len();
    let k = t.args().len() - n;
    match (s.head(), t.head()) {
        (Head::Var(x), Head::Var(y)) if k == 0 => {
            if x.name != y.name {
                unify_types_in(sub, &x.ty, &y.ty)?;
                let (from, to) = if x.name < y.name { (x, y) } else { (y, x) };
                let to = Term::var(to.clone());
                bind_var(sub, from, &sub.apply_deep(&to).map_err(|_| UnifyError::TypeClash)?)?;
            }
        }
        (Head::Var(x), _) => {
            let prefix = t.prefix(k);
            unify_in(sub, &Term::var(x.clone()), &prefix)?;
        }
        (Head::Sym { .. }, _) if k > 0 => return Err(UnifyError::Arity),
        (Head::Sym { name: f, ty_args: fa, .. }, Head::Sym { name: g, ty_args: ga, .. }) => {
            if f != g || fa.len() != ga.len() {
                return Err(UnifyError::Clash);
            }
            for (a, b) in fa.iter().zip(ga) {
                unify_types_in(sub, a, b)?;
            }
        }
        (Head::Sym { .. }, Head::Var(y)) => {
            unify_in(sub, &Term::var(y.clone()), &Term::head_only(s.head().clone()))?;
        }
    }
    for i in 0..n {
        unify_in(sub, &s.args()[i], &t.args()[k + i])?;
    }
    Ok(())
}

fn match_type_in(sub: &mut Substitution, p: &Type, t: &Type) -> UResult<()> {
    match p {
        Type::Var(v) => match sub.types.get(v) {
            Some(b) if b == t => Ok(()),
            Some(_) => Err(UnifyError::TypeClash),
            None => {
                sub.bind_type(v.clone(), t.clone());
                Ok(())
            }
        },
        Type::App(c, xs) => match t {
            Type::App(d, ys) if c == d && xs.len() == ys.len() => {
                xs.iter().zip(ys).try_for_each(|(x, y)| match_type_in(sub, x, y))
            }
            _ => Err(UnifyError::TypeClash),
        },
    }
}

/// One-way matching: returns `sigma` with `pattern sigma = target`. Variables
/// of `target` (term and type) are treated as constants.
pub fn match_term(pattern: &Term, target: &Term) -> UResult<Substitution> {
    let mut sub = Substitution::new();
    match_in(&mut sub, pattern, target)?;
    Ok(sub)
}

/// Extends an existing matcher.
pub fn match_extend(sub: &Substitution, pattern: &Term, target: &Term) -> UResult<Substitution> {
    let mut s = sub.clone();
    match_in(&mut s, pattern, target)?;
    Ok(s)
}

pub(crate) fn match_in(sub: &mut Substitution, p: &Term, t: &Term) -> UResult<()> {
    if let Some(x) = p.as_var() {
        match_type_in(sub, &x.ty, t.ty())?;
        return match sub.terms.get(&x.name) {
            Some(b) if b == t => Ok(()),
            Some(_) => Err(UnifyError::Clash),
            None => {
                sub.bind(x.name.clone(), t.clone());
                Ok(())
            }
        };
    }
    let n = p.args().len();
    let m = t.args().len();
    if n > m {
        return Err(UnifyError::Arity);
    }
    let k = m - n;
    match p.head() {
        Head::Var(x) => {
            match_in(sub, &Term::var(x.clone()), &t.prefix(k))?;
        }
        Head::Sym { name: f, ty_args: fa, .. } => {
            if k > 0 {
                return Err(UnifyError::Arity);
            }
            match t.head() {
                Head::Sym { name: g, ty_args: ga, .. } if f == g && fa.len() == ga.len() => {
                    for (a, b) in fa.iter().zip(ga) {
                        match_type_in(sub, a, b)?;
                    }
                }
                _ => return Err(UnifyError::Clash),
            }
        }
    }
    for i in 0..n {
        match_in(sub, &p.args()[i], &t.args()[k + i])?;
    }
    Ok(())
}

/// Renaming of the given variables to fresh names.
pub fn renaming(term_vars: &BTreeMap<Name, Type>, type_vars: &BTreeSet<Name>, fresh: &mut Fresh) -> Substitution {
    let mut s = Substitution::new();
    for tv in type_vars {
        s.bind_type(tv.clone(), Type::Var(fresh.type_var_name()));
    }
    for (v, ty) in term_vars {
        let nty = s.apply_type(ty);
        s.bind(v.clone(), Term::mk_var(&fresh.var_name(), nty));
    }
    s
}

/// Renames the variables of `d` that also occur in `c`; returns the renamed
/// copy of `d` and the renaming used.
pub fn rename_apart(c: &[Literal], d: &[Literal], fresh: &mut Fresh) -> (Vec<Literal>, Substitution) {
    let cv = lits_vars(c);
    let ctv = lits_type_vars(c);
    let dv: BTreeMap<Name, Type> = lits_vars(d).into_iter().filter(|(v, _)| cv.contains_key(v)).collect();
    let dtv: BTreeSet<Name> = lits_type_vars(d).into_iter().filter(|v| ctv.contains(v)).collect();
    if dv.is_empty() && dtv.is_empty() {
        return (d.to_vec(), Substitution::new());
    }
    // Term variables whose type mentions a renamed type variable must be
    // rebound too, to keep the substitution well-typed.
    let mut dv = dv;
    for (v, ty) in lits_vars(d) {
        if ty.vars().iter().any(|tv| dtv.contains(tv)) {
            dv.entry(v).or_insert(ty);
        }
    }
    let s = renaming(&dv, &dtv, fresh);
    let mut s2 = s.clone();
    // unrenamed variables still need their types updated
    for (v, ty) in lits_vars(d) {
        if !s2.terms.contains_key(&v) {
            let nty = s.apply_type(&ty);
            if nty != ty {
                s2.bind(v.clone(), Term::mk_var(&v, nty));
            }
        }
    }
    let out = s2.apply_lits(d).expect("renaming is well-typed");
    (out, s2)
}

/// Renames all variables of `d` to fresh ones.
pub fn rename_all(d: &[Literal], fresh: &mut Fresh) -> Vec<Literal> {
    let s = renaming(&lits_vars(d), &lits_type_vars(d), fresh);
    s.apply_lits(d).expect("renaming is well-typed")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k() -> Type {
        Type::base("k")
    }
    fn kk() -> Type {
        Type::fun(k(), k())
    }
    fn c(n: &str) -> Term {
        Term::sym(n, vec![], k())
    }
    fn v(n: &str, t: Type) -> Term {
        Term::mk_var(n, t)
    }

    #[test]
    fn unify_types_examples() {
        let s = unify_types(&Type::var("A"), &k(), &Substitution::new()).unwrap();
        assert_eq!(s.types[&Name::from("A")], k());
        let a = Type::var("A");
        let lhs = Type::fun(a.clone(), a.clone());
        let rhs = Type::fun(k(), Type::var("B"));
        let s = finish(unify_types(&lhs, &rhs, &Substitution::new()).unwrap());
        assert_eq!(s.types[&Name::from("A")], k());
        assert_eq!(s.types[&Name::from("B")], k());
        assert_eq!(unify_types(&k(), &Type::base("k2"), &Substitution::new()), Err(UnifyError::TypeClash));
        assert_eq!(
            unify_types(&Type::var("A"), &Type::fun(Type::var("A"), k()), &Substitution::new()),
            Err(UnifyError::TypeOccurs)
        );
    }

    #[test]
    fn prefix_binding_example() {
        // mgu(x b z, f a y c) = {x -> f a, y -> b, z -> c}
        let f = Term::sym("f", vec![], Type::arrows([k(), k(), k()], k()));
        let x = v("X", Type::arrows([k(), k()], k()));
        let s = x.apply(&[c("b"), v("Z", k())]).unwrap();
        let t = f.apply(&[c("a"), v("Y", k()), c("c")]).unwrap();
        let u = mgu(&s, &t).unwrap();
        assert_eq!(u.terms.len(), 3);
        assert_eq!(u.terms[&Name::from("X")].to_string(), "f a");
        assert_eq!(u.terms[&Name::from("Y")], c("b"));
        assert_eq!(u.terms[&Name::from("Z")], c("c"));
        assert_eq!(u.apply(&s).unwrap(), u.apply(&t).unwrap());
    }

    #[test]
    fn applied_variable_against_nested_application() {
        // mgu(y (f a), f (y a)) = {y -> f}
        let f = Term::sym("f", vec![], kk());
        let y = v("Y", kk());
        let s = y.apply(&[f.apply(&[c("a")]).unwrap()]).unwrap();
        let t = f.apply(&[y.apply(&[c("a")]).unwrap()]).unwrap();
        let u = mgu(&s, &t).unwrap();
        assert_eq!(u.terms.len(), 1);
        assert_eq!(u.terms[&Name::from("Y")], f);
    }

    #[test]
    fn occurs_check_and_clashes() {
        let f = Term::sym("f", vec![], kk());
        let x = v("X", k());
        assert_eq!(mgu(&x, &f.apply(std::slice::from_ref(&x)).unwrap()), Err(UnifyError::Occurs));
        assert_eq!(mgu(&c("a"), &c("b")), Err(UnifyError::Clash));
        // x a = x b c is impossible: x would have to contain itself
        let x2 = v("X", Type::arrows([k(), k()], k()));
        let s = v("X", kk()).apply(&[c("a")]);
        let _ = s;
        let xb = x2.apply(&[c("b"), c("c")]).unwrap();
        let x1 = Term::mk_var("X", Type::arrows([k(), k()], k()));
        let g = Term::sym("g", vec![], Type::arrows([k(), k()], k()));
        assert!(mgu(&x1.apply(&[c("a")]).unwrap(), &g.apply(&[c("a")]).unwrap()).is_ok());
        assert!(mgu(&c("a"), &xb).is_err());
    }

    #[test]
    fn matching_examples() {
        let f = Term::sym("f", vec![], kk());
        let m = match_term(&f.apply(&[v("X", k())]).unwrap(), &f.apply(&[c("a")]).unwrap()).unwrap();
        assert_eq!(m.terms[&Name::from("X")], c("a"));
        let g = Term::sym("g", vec![], Type::arrows([k(), k()], k()));
        let pat = v("X", kk()).apply(&[c("a")]).unwrap();
        let tgt = g.apply(&[c("b"), c("a")]).unwrap();
        let m = match_term(&pat, &tgt).unwrap();
        assert_eq!(m.apply(&pat).unwrap(), tgt);
        assert_eq!(m.terms[&Name::from("X")].to_string(), "g b");
        assert!(match_term(&f.apply(&[c("a")]).unwrap(), &f.apply(&[c("b")]).unwrap()).is_err());
        // target variables are frozen
        assert!(match_term(&f.apply(&[c("a")]).unwrap(), &f.apply(&[v("Y", k())]).unwrap()).is_err());
    }

    #[test]
    fn polymorphic_heads_unify_type_arguments() {
        let a = Type::var("A");
        let id_a = Term::sym("id", vec![a.clone()], Type::fun(a.clone(), a.clone()));
        let id_k = Term::sym("id", vec![k()], kk());
        let s = id_a.apply(&[v("X", a.clone())]).unwrap();
        let t = id_k.apply(&[c("b")]).unwrap();
        let u = mgu(&s, &t).unwrap();
        assert_eq!(u.types[&Name::from("A")], k());
        assert_eq!(u.apply(&s).unwrap(), t);
    }

    #[test]
    fn rename_apart_renames_shared_term_and_type_vars() {
        let a = Type::var("A");
        let x = v("X", a.clone());
        let l = Literal::eq(x.clone(), x.clone());
        let (d2, _) = rename_apart(std::slice::from_ref(&l), std::slice::from_ref(&l), &mut Fresh::new());
        let shared_tv: Vec<_> =
            lits_type_vars(&d2).intersection(&lits_type_vars(std::slice::from_ref(&l))).cloned().collect();
        assert!(shared_tv.is_empty());
        assert!(lits_vars(&d2).keys().all(|n| &**n != "X"));
        let other = Literal::eq(v("Y", k()), c("a"));
        let (d3, s) = rename_apart(&[l], std::slice::from_ref(&other), &mut Fresh::new());
        assert!(s.is_empty());
        assert_eq!(d3, vec![other]);
    }
}
