//! Bounded enumeration of ground instances, and the exact (depth-bounded)
//! version of the superposition variable conditions.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::calculus::{jells, Calculus};
use crate::clause::{lits_type_vars, lits_vars, DisplayLits, Literal};
use crate::error::{Error, Result};
use crate::orders::{Comparison, OrderConfig};
use crate::subst::Substitution;
use crate::term::Term;
use crate::types::{Name, Signature, Type, TypeDecl};

/// Ground terms of bounded depth over a signature. Type variables range
/// over the nullary type constructors.
#[derive(Debug)]
pub struct GroundingSpace {
    symbols: Vec<(Name, TypeDecl)>,
    pub types: Vec<Type>,
    pub depth: usize,
    /// Upper bound on the number of instances of a single clause.
    pub limit: usize,
    cache: RefCell<HashMap<(Type, usize), Vec<Term>>>,
}

impl GroundingSpace {
    /// Uses the declared symbols, leaving out the built-in ones.
    pub fn new(sig: &Signature, depth: usize) -> GroundingSpace {
        let symbols = sig
            .symbols
            .iter()
            .filter(|(n, _)| !Signature::is_builtin_symbol(n))
            .map(|(n, d)| (n.clone(), d.clone()))
            .collect();
        GroundingSpace { symbols, types: sig.base_types(), depth, limit: 200_000, cache: RefCell::default() }
    }

    fn type_tuples(&self, n: usize) -> Vec<Vec<Type>> {
        let mut out = vec![Vec::new()];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|p| {
                    self.types.iter().map(move |t| {
                        let mut q = p.clone();
                        q.push(t.clone());
                        q
                    })
                })
                .collect();
        }
        out
    }

    /// Ground terms of type `ty` whose depth is at most `d`, including
    /// partial applications.
    pub fn terms_of_depth(&self, ty: &Type, d: usize) -> Vec<Term> {
        if let Some(ts) = self.cache.borrow().get(&(ty.clone(), d)) {
            return ts.clone();
        }
        let mut out = Vec::new();
        for (name, decl) in &self.symbols {
            for targs in self.type_tuples(decl.vars.len()) {
                let Ok(body) = decl.instantiate(&targs) else { continue };
                let max = body.split_all().0.len();
                let kmax = if d == 0 { 0 } else { max };
                for k in 0..=kmax {
                    let Some((doms, res)) = body.peel(k) else { continue };
                    if res != ty {
                        continue;
                    }
                    let head = Term::sym(name, targs.clone(), body.clone());
                    let mut tuples: Vec<Vec<Term>> = vec![Vec::new()];
                    for dom in doms {
                        let choices = self.terms_of_depth(dom, d - 1);
                        tuples = tuples
                            .into_iter()
                            .flat_map(|p| {
                                choices.iter().map(move |c| {
                                    let mut q = p.clone();
                                    q.push(c.clone());
                                    q
                                })
                            })
                            .collect();
                    }
                    out.extend(tuples.into_iter().map(|args| head.apply(&args).expect("well-typed")));
                }
            }
        }
        self.cache.borrow_mut().insert((ty.clone(), d), out.clone());
        out
    }

    pub fn terms(&self, ty: &Type) -> Vec<Term> {
        self.terms_of_depth(ty, self.depth)
    }

    /// All grounding substitutions for the type and term variables of
    /// `lits`.
    pub fn groundings(&self, lits: &[Literal]) -> Result<Vec<Substitution>> {
        let tvars: Vec<Name> = lits_type_vars(lits).into_iter().collect();
        let mut out = Vec::new();
        for targs in self.type_tuples(tvars.len()) {
            let mut base = Substitution::new();
            for (v, t) in tvars.iter().zip(targs) {
                base.bind_type(v.clone(), t);
            }
            let vars: BTreeMap<Name, Type> = lits_vars(lits);
            let mut partial = vec![base];
            for (v, ty) in vars {
                let choices = self.terms(&partial[0].apply_type(&ty));
                let v = &v;
                if partial.len().saturating_mul(choices.len()) + out.len() > self.limit {
                    return Err(Error::TooLarge(format!("groundings of {}", DisplayLits(lits))));
                }
                partial = partial
                    .into_iter()
                    .flat_map(|s| {
                        choices.iter().map(move |c| {
                            let mut s = s.clone();
                            s.bind(v.clone(), c.clone());
                            s
                        })
                    })
                    .collect();
            }
            out.extend(partial);
        }
        Ok(out)
    }
}

/// Every ground instance of `lits` within the space, without duplicates.
pub fn enumerate_groundings(space: &GroundingSpace, lits: &[Literal]) -> Result<Vec<Vec<Literal>>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for theta in space.groundings(lits)? {
        let inst = theta.apply_lits(lits)?;
        if seen.insert(DisplayLits(&inst).to_string()) {
            out.push(inst);
        }
    }
    Ok(out)
}

/// A requirement on a grounding.
#[derive(Clone, Debug)]
pub enum Constraint {
    TermGreater(Term, Term),
    ClauseLess(Vec<Literal>, Vec<Literal>),
}

impl Constraint {
    fn lits(&self) -> Vec<Literal> {
        match self {
            Constraint::TermGreater(s, t) => vec![Literal::eq(s.clone(), t.clone())],
            Constraint::ClauseLess(c, d) => c.iter().chain(d).cloned().collect(),
        }
    }

    fn holds(&self, theta: &Substitution, ord: &OrderConfig) -> Result<bool> {
        Ok(match self {
            Constraint::TermGreater(s, t) => ord.compare(&theta.apply(s)?, &theta.apply(t)?) == Comparison::Greater,
            Constraint::ClauseLess(c, d) => {
                ord.compare_clauses(&theta.apply_lits(c)?, &theta.apply_lits(d)?) == Comparison::Less
            }
        })
    }
}

/// Whether one grounding within the space satisfies all constraints at
/// once. Exact for the space.
pub fn exists_grounding_witness(space: &GroundingSpace, ord: &OrderConfig, constraints: &[Constraint]) -> Result<bool> {
    if constraints.is_empty() {
        return Ok(true);
    }
    let all: Vec<Literal> = constraints.iter().flat_map(Constraint::lits).collect();
    for theta in space.groundings(&all)? {
        let mut ok = true;
        for c in constraints {
            if !c.holds(&theta, ord)? {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(true);
        }
    }
    Ok(false)
}

/// The variable condition for superposing `t = t'` (literal `lit` of `d`)
/// into `u` in `c`, with the existential over groundings decided by search
/// in the space rather than approximated.
#[allow(clippy::too_many_arguments)]
pub fn exact_variable_condition(
    cal: &Calculus,
    space: &GroundingSpace,
    d: &[Literal],
    lit: usize,
    t: &Term,
    t2: &Term,
    c: &[Literal],
    u: &Term,
    sigma: &Substitution,
) -> Result<bool> {
    let witness = |x: &Name, replacement: &Term| -> Result<bool> {
        let cs = sigma.apply_lits(c)?;
        let mut s2 = sigma.clone();
        s2.bind(x.clone(), sigma.apply(replacement)?);
        let c2 = s2.apply_lits(c)?;
        let constraints = [Constraint::TermGreater(sigma.apply(t)?, sigma.apply(t2)?), Constraint::ClauseLess(cs, c2)];
        exists_grounding_witness(space, &cal.ord, &constraints)
    };
    match (cal.cfg.extensional, cal.cfg.purifying) {
        (false, false) => match u.as_var() {
            None => Ok(true),
            Some(x) => witness(&x.name, t2),
        },
        (true, false) => match u.var_head() {
            None => Ok(true),
            Some(x) => match jells(u, d, lit, t, t2) {
                None => Ok(true),
                Some((_, tt2)) => witness(&x.name, &tt2),
            },
        },
        (false, true) => Ok(!u.is_var()),
        (true, true) => Ok(u.var_head().is_none() || jells(u, d, lit, t, t2).is_none()),
    }
}
