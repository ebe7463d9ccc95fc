//! Candidate model of a ground clause set: the rewrite system produced by
//! walking the clauses in ascending order.

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::clause::Literal;
use crate::error::{Error, Result};
use crate::floor::{floor_encode, FoTerm};
use crate::orders::{Comparison, OrderConfig};

#[derive(Clone, Debug)]
pub struct RewriteRule {
    pub lhs: FoTerm,
    pub rhs: FoTerm,
    /// Index of the producing clause in the input.
    pub from: usize,
}

#[derive(Clone, Debug, Default)]
pub struct RewriteSystem {
    pub rules: Vec<RewriteRule>,
    index: HashMap<FoTerm, usize>,
}

impl RewriteSystem {
    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    fn push(&mut self, rule: RewriteRule) {
        self.index.insert(rule.lhs.clone(), self.rules.len());
        self.rules.push(rule);
    }

    pub fn rule_for(&self, lhs: &FoTerm) -> Option<&RewriteRule> {
        self.index.get(lhs).map(|&i| &self.rules[i])
    }

    pub fn is_reducible(&self, t: &FoTerm) -> bool {
        self.index.contains_key(t) || t.args().iter().any(|a| self.is_reducible(a))
    }

    /// Innermost normal form. Terminates because every rule decreases the
    /// term order.
    pub fn normalize(&self, t: &FoTerm) -> FoTerm {
        let args: Vec<FoTerm> = t.args().iter().map(|a| self.normalize(a)).collect();
        let t =
            if args.iter().zip(t.args()).all(|(a, b)| a == b) { t.clone() } else { FoTerm::new(t.sym().clone(), args) };
        match self.index.get(&t) {
            Some(&i) => self.normalize(&self.rules[i].rhs),
            None => t,
        }
    }

    pub fn eval_equation(&self, s: &FoTerm, t: &FoTerm) -> bool {
        self.normalize(s) == self.normalize(t)
    }

    pub fn eval_literal(&self, l: &Literal) -> Result<bool> {
        let (s, t) = (floor_encode(&l.lhs)?, floor_encode(&l.rhs)?);
        Ok(self.eval_equation(&s, &t) == l.positive)
    }

    /// The empty clause is false.
    pub fn eval_clause(&self, c: &[Literal]) -> Result<bool> {
        for l in c {
            if self.eval_literal(l)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

fn to_ordering(c: Comparison) -> Ordering {
    match c {
        Comparison::Greater => Ordering::Greater,
        Comparison::Less => Ordering::Less,
        _ => Ordering::Equal,
    }
}

/// Builds the rewrite system of a finite set of ground clauses. A clause
/// `C' | s = t` produces `s -> t` when the literal is strictly maximal,
/// `s > t`, `C'` is false in the rules produced so far and `s` is
/// irreducible by them.
pub fn construct_rn(n: &[Vec<Literal>], ord: &OrderConfig) -> Result<RewriteSystem> {
    if let Some(c) = n.iter().find(|c| !c.iter().all(Literal::is_ground)) {
        return Err(Error::NonGround(format!("clause {}", crate::clause::DisplayLits(c))));
    }
    let mut order: Vec<usize> = (0..n.len()).collect();
    order.sort_by(|&i, &j| to_ordering(ord.compare_clauses(&n[i], &n[j])));
    let mut r = RewriteSystem::default();
    for i in order {
        let c = &n[i];
        for (k, l) in c.iter().enumerate() {
            if !l.positive {
                continue;
            }
            let strictly_max =
                c.iter().enumerate().all(|(j, m)| j == k || ord.compare_lits(l, m) == Comparison::Greater);
            if !strictly_max {
                continue;
            }
            let (s, t) = match ord.compare(&l.lhs, &l.rhs) {
                Comparison::Greater => (&l.lhs, &l.rhs),
                Comparison::Less => (&l.rhs, &l.lhs),
                _ => continue,
            };
            let mut rest_false = true;
            for (j, m) in c.iter().enumerate() {
                if j != k && r.eval_literal(m)? {
                    rest_false = false;
                    break;
                }
            }
            let s = floor_encode(s)?;
            if rest_false && !r.is_reducible(&s) {
                r.push(RewriteRule { lhs: s, rhs: floor_encode(t)?, from: i });
            }
            // Only a strictly maximal literal can produce.
            break;
        }
    }
    Ok(r)
}

/// Whether every clause of `n` is true in `r`.
pub fn model_check(r: &RewriteSystem, n: &[Vec<Literal>]) -> Result<bool> {
    for c in n {
        if !r.eval_clause(c)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orders::Precedence;
    use crate::term::Term;
    use crate::types::Type;

    fn c(n: &str) -> Term {
        Term::sym(n, vec![], Type::base("k"))
    }

    fn fo(n: &str) -> FoTerm {
        floor_encode(&c(n)).unwrap()
    }

    fn ord() -> OrderConfig {
        OrderConfig::lpo(Precedence::parse("a>b>c").unwrap())
    }

    fn rules(r: &RewriteSystem) -> Vec<(String, String)> {
        r.rules.iter().map(|x| (x.lhs.to_string(), x.rhs.to_string())).collect()
    }

    #[test]
    fn single_equation() {
        let r = construct_rn(&[vec![Literal::eq(c("a"), c("b"))]], &ord()).unwrap();
        assert_eq!(rules(&r), [("a_0".into(), "b_0".into())]);
    }

    #[test]
    fn smaller_clause_produces_first() {
        let n = [vec![Literal::eq(c("a"), c("b"))], vec![Literal::eq(c("a"), c("c"))]];
        let r = construct_rn(&n, &ord()).unwrap();
        assert_eq!(rules(&r), [("a_0".into(), "c_0".into())]);
        assert_eq!(r.rules[0].from, 1);
        assert!(!r.eval_equation(&fo("a"), &fo("b")));
    }

    #[test]
    fn empty_set() {
        assert!(construct_rn(&[], &ord()).unwrap().is_empty());
    }

    #[test]
    fn evaluation() {
        let r = construct_rn(&[vec![Literal::eq(c("a"), c("c"))]], &ord()).unwrap();
        assert!(r.eval_equation(&fo("a"), &fo("c")));
        assert!(!r.eval_equation(&fo("b"), &fo("c")));
    }

    #[test]
    fn unsaturated_contradiction_is_not_modelled() {
        let n = [vec![Literal::eq(c("a"), c("b"))], vec![Literal::neq(c("a"), c("b"))]];
        let r = construct_rn(&n, &ord()).unwrap();
        assert_eq!(rules(&r), [("a_0".into(), "b_0".into())]);
        assert!(!model_check(&r, &n).unwrap());
    }

    #[test]
    fn empty_clause_is_false() {
        let r = RewriteSystem::default();
        assert!(!model_check(&r, &[vec![]]).unwrap());
    }

    #[test]
    fn nonground_input_is_rejected() {
        let x = Term::mk_var("X", Type::base("k"));
        assert!(construct_rn(&[vec![Literal::eq(x, c("a"))]], &ord()).is_err());
    }
}
