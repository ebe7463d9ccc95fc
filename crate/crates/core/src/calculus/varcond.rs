//! Variable conditions of the superposition rule.
//!
//! The nonpurifying calculi sometimes require superposition at (or into
//! applied) variables. Whether a grounding witnesses the order's
//! nonmonotonicity is overapproximated by three cheap checks: the variable
//! occurs with different argument tuples, the order may be nonmonotonic for
//! the pair, and the instantiated clause is not already above the replaced
//! one.

use crate::clause::Literal;
use crate::orders::OrderKind;
use crate::subst::Substitution;
use crate::term::{Term, Var};

use super::Calculus;

/// If `u = x s1..sn` jells with `t = t'` (literal `lit` of `d`), returns the
/// stripped sides `(t~, t~')`.
pub fn jells(u: &Term, d: &[Literal], lit: usize, t: &Term, t2: &Term) -> Option<(Term, Term)> {
    let n = u.args().len();
    if n == 0 {
        return Some((t.clone(), t2.clone()));
    }
    let (ta, t2a) = (t.args(), t2.args());
    if ta.len() < n || t2a.len() < n {
        return None;
    }
    let ys = &ta[ta.len() - n..];
    if ys != &t2a[t2a.len() - n..] {
        return None;
    }
    let mut names = Vec::with_capacity(n);
    for y in ys {
        let v = y.as_var()?;
        if names.contains(&v.name) {
            return None;
        }
        names.push(v.name.clone());
    }
    let (tt, tt2) = (t.strip(n), t2.strip(n));
    let elsewhere = names.iter().any(|y| {
        tt.has_var(y)
            || tt2.has_var(y)
            || d.iter().enumerate().any(|(j, l)| j != lit && (l.lhs.has_var(y) || l.rhs.has_var(y)))
    });
    if elsewhere {
        return None;
    }
    Some((tt, tt2))
}

fn distinct_arg_tuples(c: &[Literal], x: &Var) -> bool {
    let mut first: Option<Vec<Term>> = None;
    let mut differ = false;
    for l in c {
        for side in [&l.lhs, &l.rhs] {
            side.for_each_var_occurrence(&mut |v, args| {
                if v.name == x.name {
                    match &first {
                        None => first = Some(args.to_vec()),
                        Some(f) if f.as_slice() != args => differ = true,
                        _ => {}
                    }
                }
            });
        }
    }
    differ
}

impl Calculus {
    /// Overapproximates: some grounding makes `t σ` exceed `t' σ` while
    /// `C σ` is below `C{x -> t~'} σ`. `n` is the number of arguments
    /// stripped off `t` and `t'` to obtain `t~` and `t~'`.
    #[allow(clippy::too_many_arguments)]
    fn may_need_sup_at_var(
        &self,
        c: &[Literal],
        x: &Var,
        sigma: &Substitution,
        t: &Term,
        t2: &Term,
        tt2: &Term,
        n: usize,
    ) -> bool {
        if !distinct_arg_tuples(c, x) {
            return false;
        }
        let monotone = match self.ord.kind {
            OrderKind::Kbo => true,
            // The nonmonotonicity check assumes `t σ` above `t' σ`; with
            // stripped arguments that premise is unavailable.
            OrderKind::Lpo if n > 0 => false,
            OrderKind::Lpo => {
                let (Ok(ts), Ok(t2s)) = (sigma.apply(t), sigma.apply(t2)) else {
                    return true;
                };
                !self.ord.maybe_nonmonotonic(&ts, &t2s)
            }
        };
        if monotone {
            return false;
        }
        let (Ok(cs), Ok(tt2s)) = (sigma.apply_lits(c), sigma.apply(tt2)) else {
            return true;
        };
        let mut s2 = sigma.clone();
        s2.bind(x.name.clone(), tt2s);
        let Ok(c2) = s2.apply_lits(c) else {
            return true;
        };
        !self.ord.compare_clauses(&cs, &c2).is_ge()
    }

    /// Calculus-specific variable condition for superposing `t = t'`
    /// (literal `lit` of `d`) into the green subterm `u` of `c`.
    #[allow(clippy::too_many_arguments)]
    pub fn variable_condition(
        &self,
        d: &[Literal],
        lit: usize,
        t: &Term,
        t2: &Term,
        c: &[Literal],
        u: &Term,
        sigma: &Substitution,
    ) -> bool {
        match (self.cfg.extensional, self.cfg.purifying) {
            (false, false) => match u.as_var() {
                None => true,
                Some(x) => self.may_need_sup_at_var(c, x, sigma, t, t2, t2, 0),
            },
            (true, false) => match u.var_head() {
                None => true,
                Some(x) => match jells(u, d, lit, t, t2) {
                    None => true,
                    Some((_, tt2)) => self.may_need_sup_at_var(c, x, sigma, t, t2, &tt2, u.args().len()),
                },
            },
            (false, true) => !u.is_var(),
            (true, true) => u.var_head().is_none() || jells(u, d, lit, t, t2).is_none(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::CalculusConfig;
    use crate::orders::{OrderConfig, Precedence};
    use crate::types::Type;
    use crate::unify::mgu;

    fn k() -> Type {
        Type::base("k")
    }
    fn kk() -> Type {
        Type::fun(k(), k())
    }
    fn c(n: &str) -> Term {
        Term::sym(n, vec![], k())
    }
    fn s(n: &str, ty: Type) -> Term {
        Term::sym(n, vec![], ty)
    }
    fn v(n: &str, ty: Type) -> Term {
        Term::mk_var(n, ty)
    }
    fn ap(h: &Term, args: &[Term]) -> Term {
        h.apply(args).unwrap()
    }

    /// Verdicts of the four calculi, in the order int-nonpure, ext-nonpure,
    /// int-pure, ext-pure.
    fn verdicts(d: &[Literal], lit: usize, c: &[Literal], u: &Term) -> [bool; 4] {
        let ord = OrderConfig::lpo(Precedence::parse("h>g>f>c>b>a").unwrap());
        let (t, t2) = (&d[lit].lhs, &d[lit].rhs);
        let sigma = mgu(t, u).unwrap();
        let cfgs = [(false, false), (true, false), (false, true), (true, true)];
        cfgs.map(|(e, p)| {
            Calculus::new(CalculusConfig::new(e, p), ord.clone()).variable_condition(d, lit, t, t2, c, u, &sigma)
        })
    }

    #[test]
    fn table_row_one() {
        // h = g into f y = c
        let d = vec![Literal::eq(s("h", kk()), s("g", kk()))];
        let y = v("y", kk());
        let cl = vec![Literal::eq(ap(&s("f", Type::fun(kk(), k())), std::slice::from_ref(&y)), c("c"))];
        assert_eq!(verdicts(&d, 0, &cl, &y), [false; 4]);
    }

    #[test]
    fn table_row_two() {
        // f (h a) = h into g y = y b
        let f = s("f", Type::arrows([k(), k()], k()));
        let h = s("h", kk());
        let d = vec![Literal::eq(ap(&f, &[ap(&h, &[c("a")])]), h.clone())];
        let y = v("y", kk());
        let g = s("g", Type::fun(kk(), k()));
        let cl = vec![Literal::eq(ap(&g, std::slice::from_ref(&y)), ap(&y, &[c("b")]))];
        assert_eq!(verdicts(&d, 0, &cl, &y), [true, true, false, false]);
    }

    fn row_three_four(with_extra: bool) -> [bool; 4] {
        // [x = c |] h x = f x into g (y b) y = a
        let x = v("x", k());
        let (h, f) = (s("h", kk()), s("f", kk()));
        let mut d = Vec::new();
        if with_extra {
            d.push(Literal::eq(x.clone(), c("c")));
        }
        d.push(Literal::eq(ap(&h, std::slice::from_ref(&x)), ap(&f, &[x])));
        let y = v("y", kk());
        let g = s("g", Type::arrows([k(), kk()], k()));
        let yb = ap(&y, &[c("b")]);
        let cl = vec![Literal::eq(ap(&g, &[yb.clone(), y]), c("a"))];
        verdicts(&d, d.len() - 1, &cl, &yb)
    }

    #[test]
    fn table_row_three() {
        assert_eq!(row_three_four(false), [true, false, true, false]);
    }

    #[test]
    fn table_row_four() {
        assert_eq!(row_three_four(true), [true; 4]);
    }

    #[test]
    fn jell_examples() {
        let x = v("x", k());
        let (h, f) = (s("h", kk()), s("f", kk()));
        let t = ap(&h, std::slice::from_ref(&x));
        let t2 = ap(&f, std::slice::from_ref(&x));
        let yb = ap(&v("y", kk()), &[c("b")]);
        let d = vec![Literal::eq(t.clone(), t2.clone())];
        assert_eq!(jells(&yb, &d, 0, &t, &t2), Some((h.clone(), f.clone())));
        let d2 = vec![Literal::eq(x.clone(), c("c")), Literal::eq(t.clone(), t2.clone())];
        assert_eq!(jells(&yb, &d2, 1, &t, &t2), None);
        let bare = v("z", k());
        assert_eq!(jells(&bare, &d, 0, &t, &t2), Some((t.clone(), t2.clone())));
        // argument tuples differ
        let t3 = ap(&f, &[c("a")]);
        assert_eq!(jells(&yb, &[Literal::eq(t.clone(), t3.clone())], 0, &t, &t3), None);
    }

    #[test]
    fn first_order_degenerates_to_nonvariable_target() {
        let d = vec![Literal::eq(c("b"), c("a"))];
        let z = v("z", k());
        let f = s("f", kk());
        let cl = vec![Literal::eq(ap(&f, std::slice::from_ref(&z)), c("c"))];
        assert_eq!(verdicts(&d, 0, &cl, &z), [false; 4]);
        let fz = ap(&f, &[z]);
        let d2 = vec![Literal::eq(ap(&f, &[c("b")]), c("a"))];
        assert_eq!(verdicts(&d2, 0, &cl, &fz), [true; 4]);
    }
}
