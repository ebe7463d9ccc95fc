//! Simplification and deletion compatible with the redundancy criterion:
//! rewriting happens in green contexts only.

use std::fmt;

use crate::clause::{ClauseId, Literal};
use crate::orders::{Comparison, OrderConfig};
use crate::subst::Substitution;
use crate::term::Term;
use crate::unify::match_extend;

/// Matches `c` onto a sub-multiset of `d`.
pub fn subsumes(c: &[Literal], d: &[Literal]) -> Option<Substitution> {
    if c.len() > d.len() {
        return None;
    }
    // heavy literals first: they fail fastest
    let mut order: Vec<usize> = (0..c.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(c[i].weight()));
    let mut used = vec![false; d.len()];
    subsume_from(c, d, &order, 0, &mut used, &Substitution::new())
}

fn subsume_from(
    c: &[Literal],
    d: &[Literal],
    order: &[usize],
    k: usize,
    used: &mut [bool],
    sigma: &Substitution,
) -> Option<Substitution> {
    let Some(&i) = order.get(k) else {
        return Some(sigma.clone());
    };
    let l = &c[i];
    for j in 0..d.len() {
        if used[j] || d[j].positive != l.positive {
            continue;
        }
        for (a, b) in [(&d[j].lhs, &d[j].rhs), (&d[j].rhs, &d[j].lhs)] {
            let Ok(s1) = match_extend(sigma, &l.lhs, a) else { continue };
            let Ok(s2) = match_extend(&s1, &l.rhs, b) else { continue };
            used[j] = true;
            let r = subsume_from(c, d, order, k + 1, used, &s2);
            used[j] = false;
            if r.is_some() {
                return r;
            }
        }
    }
    None
}

pub fn strictly_subsumes(c: &[Literal], d: &[Literal]) -> bool {
    subsumes(c, d).is_some() && subsumes(d, c).is_none()
}

/// Equal up to variable renaming (mutual subsumption of equal-sized
/// multisets).
pub fn variants(c: &[Literal], d: &[Literal]) -> bool {
    c.len() == d.len() && subsumes(c, d).is_some() && subsumes(d, c).is_some()
}

/// `t = t`, or a complementary pair.
pub fn is_tautology(c: &[Literal]) -> bool {
    c.iter().any(|l| l.positive && l.lhs == l.rhs)
        || c.iter().enumerate().any(|(i, l)| c[i + 1..].iter().any(|m| l.complement_of(m)))
}

pub fn delete_duplicates(c: &[Literal]) -> Vec<Literal> {
    let mut out: Vec<Literal> = Vec::with_capacity(c.len());
    for l in c {
        if !out.contains(l) {
            out.push(l.clone());
        }
    }
    out
}

/// Drops literals `t != t`.
pub fn delete_resolved(c: &[Literal]) -> Vec<Literal> {
    c.iter().filter(|l| l.positive || l.lhs != l.rhs).cloned().collect()
}

/// One demodulation step with the positive unit `unit` at the first
/// eligible green position of `c`.
pub fn demodulate(c: &[Literal], unit: &Literal, ord: &OrderConfig) -> Option<Vec<Literal>> {
    if !unit.positive {
        return None;
    }
    for (i, lit) in c.iter().enumerate() {
        for (side, s) in [&lit.lhs, &lit.rhs].into_iter().enumerate() {
            for (pos, u) in s.green_subterms() {
                for (l, r) in unit.orientations() {
                    if l.is_var() {
                        continue;
                    }
                    let Ok(sigma) = match_extend(&Substitution::new(), l, &u) else { continue };
                    let Ok(rs) = sigma.apply(r) else { continue };
                    if !ord.greater(&u, &rs) {
                        continue;
                    }
                    if lit.positive {
                        let inst = [Literal::eq(u.clone(), rs.clone())];
                        if ord.compare_clauses(&inst, c) != Comparison::Less {
                            continue;
                        }
                    }
                    let Ok(new_side) = s.replace_green(&pos, &rs) else { continue };
                    let mut out = c.to_vec();
                    if side == 0 {
                        out[i].lhs = new_side;
                    } else {
                        out[i].rhs = new_side;
                    }
                    return Some(out);
                }
            }
        }
    }
    None
}

/// Outermost green positions where `s` and `t` differ.
fn green_diffs<'a>(s: &'a Term, t: &'a Term, out: &mut Vec<(&'a Term, &'a Term)>) {
    if s == t {
        return;
    }
    if s.head() == t.head() && s.args().len() == t.args().len() {
        for (a, b) in s.args().iter().zip(t.args()) {
            green_diffs(a, b, out);
        }
    } else {
        out.push((s, t));
    }
}

/// `s` and `t` differ exactly at green positions holding instances
/// `l sigma` / `r sigma` (in either direction) of one substitution.
fn differ_by_unit(s: &Term, t: &Term, unit: &Literal) -> bool {
    let mut diffs = Vec::new();
    green_diffs(s, t, &mut diffs);
    if diffs.is_empty() {
        return false;
    }
    fn extend(diffs: &[(&Term, &Term)], unit: &Literal, sigma: &Substitution) -> bool {
        let Some(((a, b), rest)) = diffs.split_first() else { return true };
        unit.orientations().into_iter().any(|(l, r)| {
            match_extend(sigma, l, a).and_then(|s1| match_extend(&s1, r, b)).is_ok_and(|s2| extend(rest, unit, &s2))
        })
    }
    extend(&diffs, unit, &Substitution::new())
}

/// Positive simplify-reflect: with `l = r`, drop a literal
/// `s<l sigma> != s<r sigma>`.
pub fn simplify_reflect_pos(c: &[Literal], unit: &Literal) -> Option<Vec<Literal>> {
    if !unit.positive {
        return None;
    }
    let i = c.iter().position(|m| !m.positive && differ_by_unit(&m.lhs, &m.rhs, unit))?;
    let mut out = c.to_vec();
    out.remove(i);
    Some(out)
}

/// Negative simplify-reflect: with `l != r`, drop a literal `l sigma = r sigma`.
pub fn simplify_reflect_neg(c: &[Literal], unit: &Literal) -> Option<Vec<Literal>> {
    if unit.positive {
        return None;
    }
    let pattern = [Literal::eq(unit.lhs.clone(), unit.rhs.clone())];
    let i = c.iter().position(|m| m.positive && subsumes(&pattern, std::slice::from_ref(m)).is_some())?;
    let mut out = c.to_vec();
    out.remove(i);
    Some(out)
}

/// Equality subsumption: the positive unit makes a literal
/// `s<l sigma> = s<r sigma>` of `c` (differing below the root) true.
pub fn equality_subsumes(unit: &Literal, c: &[Literal]) -> bool {
    unit.positive
        && c.iter().any(|m| {
            m.positive
                && m.lhs.head() == m.rhs.head()
                && m.lhs.args().len() == m.rhs.args().len()
                && differ_by_unit(&m.lhs, &m.rhs, unit)
        })
}

/// A recorded simplification step; replaying the same sequence of ops on
/// the same premises reproduces the result.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SimpOp {
    Duplicates,
    Resolved,
    Demod(ClauseId),
    ReflectPos(ClauseId),
    ReflectNeg(ClauseId),
    Purify,
}

impl fmt::Display for SimpOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimpOp::Duplicates => write!(f, "dup"),
            SimpOp::Resolved => write!(f, "resolved"),
            SimpOp::Demod(u) => write!(f, "demod({u})"),
            SimpOp::ReflectPos(u) => write!(f, "reflect+({u})"),
            SimpOp::ReflectNeg(u) => write!(f, "reflect-({u})"),
            SimpOp::Purify => write!(f, "purify"),
        }
    }
}
