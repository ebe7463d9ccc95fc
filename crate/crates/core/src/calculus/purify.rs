//! Purification: renaming problematic variable occurrences apart and linking
//! the copies with disequations `x' != x`. Literals of the shape `x != y`
//! are left alone.

use crate::clause::{Fresh, Literal};
use crate::term::{Head, Term, Var};

fn map_term(t: &Term, f: &mut impl FnMut(&Term) -> Option<Term>) -> Term {
    if let Some(r) = f(t) {
        return r;
    }
    if t.args().is_empty() {
        return t.clone();
    }
    let args: Vec<Term> = t.args().iter().map(|a| map_term(a, f)).collect();
    Term::new(t.head().clone(), args).expect("argument types unchanged")
}

fn map_lits(lits: &mut [Literal], mut f: impl FnMut(&Term) -> Option<Term>) {
    for l in lits.iter_mut().filter(|l| !l.is_var_disequation()) {
        l.lhs = map_term(&l.lhs, &mut f);
        l.rhs = map_term(&l.rhs, &mut f);
    }
}

fn occurrences(lits: &[Literal]) -> Vec<(Var, Vec<Term>)> {
    let mut out = Vec::new();
    for l in lits.iter().filter(|l| !l.is_var_disequation()) {
        for side in [&l.lhs, &l.rhs] {
            side.for_each_var_occurrence(&mut |v, args| out.push((v.clone(), args.to_vec())));
        }
    }
    out
}

/// Intensional purification: a variable occurring both applied and unapplied
/// has its unapplied occurrences renamed.
pub fn purify_int(lits: &[Literal], fresh: &mut Fresh) -> Vec<Literal> {
    let mut out = lits.to_vec();
    loop {
        let occ = occurrences(&out);
        let applied: Vec<&Var> = {
            let mut all = Vec::new();
            for l in &out {
                for side in [&l.lhs, &l.rhs] {
                    side.for_each_var_occurrence(&mut |v, args| {
                        if !args.is_empty() {
                            all.push(v.name.clone());
                        }
                    });
                }
            }
            occ.iter().filter(|(v, args)| args.is_empty() && all.contains(&v.name)).map(|(v, _)| v).collect()
        };
        let Some(x) = applied.first().map(|v| (*v).clone()) else {
            return out;
        };
        let x2 = Var { name: fresh.var_name(), ty: x.ty.clone() };
        let t2 = Term::var(x2.clone());
        map_lits(&mut out, |t| match t.as_var() {
            Some(v) if v.name == x.name => Some(t2.clone()),
            _ => None,
        });
        out.push(Literal::neq(Term::var(x2), Term::var(x)));
    }
}

/// Extensional purification: a variable occurring with two different
/// argument tuples keeps the first tuple; occurrences with the second one get
/// a fresh head.
pub fn purify_ext(lits: &[Literal], fresh: &mut Fresh) -> Vec<Literal> {
    let mut out = lits.to_vec();
    loop {
        let occ = occurrences(&out);
        let mut pick = None;
        'search: for (i, (v, u)) in occ.iter().enumerate() {
            for (w, vv) in &occ[i + 1..] {
                if w.name == v.name && vv != u {
                    pick = Some((v.clone(), vv.clone()));
                    break 'search;
                }
            }
        }
        let Some((x, vargs)) = pick else {
            return out;
        };
        let x2 = Var { name: fresh.var_name(), ty: x.ty.clone() };
        map_lits(&mut out, |t| match t.head() {
            Head::Var(v) if v.name == x.name && t.args() == vargs.as_slice() => {
                Some(Term::new(Head::Var(x2.clone()), vargs.clone()).expect("same head type"))
            }
            _ => None,
        });
        out.push(Literal::neq(Term::var(x2), Term::var(x)));
    }
}
