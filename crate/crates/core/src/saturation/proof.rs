use std::collections::BTreeMap;
use std::fmt;

use crate::calculus::{ext_axiom, Calculus, Inference, Rule};
use crate::clause::{Clause, ClauseId, DisplayLits, Fresh, Literal};
use crate::error::{Error, Result};
use crate::simplify::{
    delete_duplicates, delete_resolved, demodulate, simplify_reflect_neg, simplify_reflect_pos, variants, SimpOp,
};
use crate::subst::Substitution;
use crate::types::Name;

#[derive(Clone, Debug)]
pub enum Derivation {
    Input,
    /// The extensionality axiom.
    Axiom,
    Inference {
        rule: Rule,
        premises: Vec<ClauseId>,
        subst: Substitution,
        skolem: Option<Name>,
        /// Literal and index for an instance of an infinite ArgCong sequence.
        stream: Option<(usize, usize)>,
    },
    Simplified {
        from: ClauseId,
        ops: Vec<SimpOp>,
    },
}

impl Derivation {
    pub fn from_inference(inf: &Inference, stream: Option<(usize, usize)>) -> Derivation {
        Derivation::Inference {
            rule: inf.rule,
            premises: inf.premises.clone(),
            subst: inf.subst.clone(),
            skolem: inf.skolem.clone(),
            stream,
        }
    }

    /// Clauses this one was derived from.
    pub fn parents(&self) -> Vec<ClauseId> {
        match self {
            Derivation::Input | Derivation::Axiom => Vec::new(),
            Derivation::Inference { premises, .. } => premises.clone(),
            Derivation::Simplified { from, ops } => {
                let mut v = vec![*from];
                for op in ops {
                    if let SimpOp::Demod(u) | SimpOp::ReflectPos(u) | SimpOp::ReflectNeg(u) = op {
                        v.push(*u);
                    }
                }
                v
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct Step {
    pub id: ClauseId,
    pub lits: Vec<Literal>,
    pub derivation: Derivation,
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}. {} <-- ", self.id, DisplayLits(&self.lits))?;
        match &self.derivation {
            Derivation::Input => write!(f, "input"),
            Derivation::Axiom => write!(f, "ext_axiom"),
            Derivation::Inference { rule, premises, subst, skolem, stream } => {
                write!(f, "{}(", rule.name())?;
                for p in premises {
                    write!(f, "{p}, ")?;
                }
                write!(f, "sigma={subst}")?;
                if let Some(sk) = skolem {
                    write!(f, ", skolem={sk}")?;
                }
                if let Some((_, k)) = stream {
                    write!(f, ", k={k}")?;
                }
                write!(f, ")")
            }
            Derivation::Simplified { from, ops } => {
                write!(f, "simp({from}")?;
                for op in ops {
                    write!(f, ", {op}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// A refutation: steps in increasing id order, the last one deriving the
/// empty clause.
#[derive(Clone, Debug)]
pub struct Proof {
    pub steps: Vec<Step>,
    pub calculus: Calculus,
}

impl fmt::Display for Proof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

impl Proof {
    pub fn uses(&self, rule: Rule) -> bool {
        self.steps.iter().any(|s| matches!(&s.derivation, Derivation::Inference { rule: r, .. } if *r == rule))
    }

    pub fn demodulations(&self) -> usize {
        self.steps
            .iter()
            .map(|s| match &s.derivation {
                Derivation::Simplified { ops, .. } => ops.iter().filter(|o| matches!(o, SimpOp::Demod(_))).count(),
                _ => 0,
            })
            .sum()
    }

    /// Re-executes every recorded step and checks that it yields the
    /// recorded clause (up to renaming). Input steps are taken as given.
    pub fn replay(&self) -> Result<bool> {
        let Some(last) = self.steps.last() else {
            return Ok(false);
        };
        if !last.lits.is_empty() {
            return Ok(false);
        }
        let mut fresh = Fresh::new();
        for s in &self.steps {
            fresh.observe(&s.lits);
        }
        let mut known: BTreeMap<ClauseId, &Step> = BTreeMap::new();
        for s in &self.steps {
            let get = |id: &ClauseId| {
                known
                    .get(id)
                    .map(|p| Clause::with_id(p.lits.clone(), p.id))
                    .ok_or_else(|| Error::CorruptLog(format!("step {} refers to unknown clause {id}", s.id)))
            };
            let ok = match &s.derivation {
                Derivation::Input => true,
                Derivation::Axiom => variants(&s.lits, &ext_axiom()),
                Derivation::Inference { rule, premises, skolem, stream, .. } => {
                    let ps = premises.iter().map(get).collect::<Result<Vec<_>>>()?;
                    let cal = &self.calculus;
                    let arity = if *rule == Rule::Sup { 2 } else { 1 };
                    if ps.len() != arity {
                        return Err(Error::CorruptLog(format!("step {}: wrong number of premises", s.id)));
                    }
                    let infs = regenerate(cal, *rule, &ps, *stream, skolem.as_ref(), &mut fresh);
                    infs.iter().any(|i| variants(&i.conclusion, &s.lits))
                }
                Derivation::Simplified { from, ops } => {
                    let mut c = get(from)?.lits;
                    let mut ok = true;
                    for op in ops {
                        let next = match op {
                            SimpOp::Duplicates => Some(delete_duplicates(&c)),
                            SimpOp::Resolved => Some(delete_resolved(&c)),
                            SimpOp::Demod(u) => unit(&get(u)?).and_then(|l| demodulate(&c, l, &self.calculus.ord)),
                            SimpOp::ReflectPos(u) => unit(&get(u)?).and_then(|l| simplify_reflect_pos(&c, l)),
                            SimpOp::ReflectNeg(u) => unit(&get(u)?).and_then(|l| simplify_reflect_neg(&c, l)),
                            SimpOp::Purify => Some(self.calculus.purify(&c, &mut fresh)),
                        };
                        match next {
                            Some(n) => c = n,
                            None => {
                                ok = false;
                                break;
                            }
                        }
                    }
                    ok && variants(&c, &s.lits)
                }
            };
            if !ok {
                return Ok(false);
            }
            if known.insert(s.id, s).is_some() {
                return Err(Error::CorruptLog(format!("clause {} recorded twice", s.id)));
            }
        }
        Ok(true)
    }
}

/// All inferences of `rule` from the premises; the recorded stream index
/// and Skolem name pin down ArgCong and NegExt instances.
pub fn regenerate(
    cal: &Calculus,
    rule: Rule,
    ps: &[Clause],
    stream: Option<(usize, usize)>,
    skolem: Option<&Name>,
    fresh: &mut Fresh,
) -> Vec<Inference> {
    match (rule, stream) {
        (Rule::Sup, _) => cal.superposition(&ps[0], &ps[1], fresh),
        (Rule::ERes, _) => cal.equality_resolution(&ps[0], fresh),
        (Rule::EFact, _) => cal.equality_factoring(&ps[0], fresh),
        (Rule::ArgCong, None) => cal.arg_cong(&ps[0], fresh),
        (Rule::ArgCong, Some((j, k))) => cal.arg_cong_instance(&ps[0], j, k, fresh).into_iter().collect(),
        (Rule::PosExt, _) => cal.pos_ext(&ps[0], fresh),
        (Rule::NegExt, _) => cal.neg_ext(&ps[0], fresh, skolem),
    }
}

fn unit(c: &Clause) -> Option<&Literal> {
    match c.lits.as_slice() {
        [l] => Some(l),
        _ => None,
    }
}
