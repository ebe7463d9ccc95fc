//! Ground reasoning used to cross-check the prover: congruence closure,
//! the candidate-model construction, bounded grounding, and sampled
//! soundness checks of proof steps.

mod cc;
mod grounding;
mod rn;

use std::collections::{BTreeMap, BTreeSet};

pub use cc::{ground_entails, satisfiable, Congruence};
pub use grounding::{
    enumerate_groundings, exact_variable_condition, exists_grounding_witness, Constraint, GroundingSpace,
};
pub use rn::{construct_rn, model_check, RewriteRule, RewriteSystem};

use crate::calculus::{Inference, Rule};
use crate::clause::{lits_vars, Clause, ClauseId, Fresh, Literal};
use crate::error::{Error, Result};
use crate::floor::{floor_clause, FoLiteral, FoSym, FoTerm};
use crate::saturation::{regenerate, Derivation, Proof};
use crate::simplify::{variants, SimpOp};
use crate::subst::Substitution;
use crate::term::{Head, Term};
use crate::types::{Name, Type, DIFF};

/// Applicative image of a ground term: heads become constants and every
/// argument is passed through a binary `@`, so congruence closure provides
/// argument congruence.
pub fn app_encode(t: &Term) -> Result<FoTerm> {
    let Head::Sym { name, ty_args, ty } = t.head() else {
        return Err(Error::NonGround(t.to_string()));
    };
    let mut acc =
        FoTerm::new(FoSym { name: name.clone(), arity: 0, ty_args: ty_args.clone(), head_ty: ty.clone() }, vec![]);
    for (i, a) in t.args().iter().enumerate() {
        let res = t.prefix(i + 1).ty().clone();
        let at = FoSym { name: crate::types::name("@"), arity: 2, ty_args: vec![], head_ty: res };
        acc = FoTerm::new(at, vec![acc, app_encode(a)?]);
    }
    Ok(acc)
}

pub fn app_clause(lits: &[Literal]) -> Result<Vec<FoLiteral>> {
    lits.iter()
        .map(|l| Ok(FoLiteral { lhs: app_encode(&l.lhs)?, rhs: app_encode(&l.rhs)?, positive: l.positive }))
        .collect()
}

/// Outcome of checking sampled ground instances of proof steps.
#[derive(Clone, Debug, Default)]
pub struct SoundnessReport {
    /// Ground instances confirmed.
    pub checked: usize,
    /// Instances the oracle could not decide within its limits.
    pub skipped: usize,
    pub failures: Vec<String>,
}

impl SoundnessReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty() && self.checked > 0
    }
}

/// Evenly spaced picks, at most `n`.
fn sample<T: Clone>(all: &[T], n: usize) -> Vec<T> {
    if all.len() <= n {
        return all.to_vec();
    }
    (0..n).map(|i| all[i * all.len() / n].clone()).collect()
}

enum Verdict {
    Holds,
    Fails,
    Unknown,
}

fn entails(premises: Result<Vec<Vec<FoLiteral>>>, goal: Result<Vec<FoLiteral>>) -> Verdict {
    let (Ok(p), Ok(g)) = (premises, goal) else { return Verdict::Unknown };
    match ground_entails(&p, &g) {
        Ok(true) => Verdict::Holds,
        Ok(false) => Verdict::Fails,
        Err(_) => Verdict::Unknown,
    }
}

fn ground(theta: &Substitution, lits: &[Literal]) -> Result<Vec<Literal>> {
    theta.apply_lits(lits)
}

/// Sup, ERes and EFact instances hold in every first-order model of the
/// floor image; ArgCong needs argument congruence, checked on the
/// applicative image.
fn check_plain(inf: &Inference, space: &GroundingSpace, samples: usize, report: &mut RunCounter) -> Result<()> {
    let all: Vec<Literal> = inf.instances.iter().flatten().chain(&inf.conclusion).cloned().collect();
    let thetas = match space.groundings(&all) {
        Ok(t) => t,
        Err(Error::TooLarge(_)) => {
            report.unknown += 1;
            return Ok(());
        }
        Err(e) => return Err(e),
    };
    for theta in sample(&thetas, samples) {
        let prems: Result<Vec<Vec<Literal>>> = inf.instances.iter().map(|p| ground(&theta, p)).collect();
        let prems = prems?;
        let concl = ground(&theta, &inf.conclusion)?;
        let v = if inf.rule == Rule::ArgCong {
            entails(prems.iter().map(|p| app_clause(p)).collect(), app_clause(&concl))
        } else {
            entails(prems.iter().map(|p| floor_clause(p)).collect(), floor_clause(&concl))
        };
        report.record(v, &theta);
    }
    Ok(())
}

fn diff_term(s: &Term, s2: &Term) -> Result<Term> {
    let ty = s.ty().clone();
    let Some((a, b)) = ty.as_fun() else {
        return Err(Error::IllTyped(format!("{s} is not functional")));
    };
    let head = Term::sym(DIFF, vec![a.clone(), b.clone()], Type::arrows([ty.clone(), ty.clone()], a.clone()));
    head.apply(&[s.clone(), s2.clone()])
}

/// PosExt instances follow from the premise, instantiated at the
/// `diff` witnesses, together with the matching extensionality instances.
fn check_pos_ext(inf: &Inference, space: &GroundingSpace, samples: usize, report: &mut RunCounter) -> Result<()> {
    let prem = &inf.instances[0];
    let concl_vars = lits_vars(&inf.conclusion);
    let stripped: BTreeSet<Name> = lits_vars(prem).into_keys().filter(|v| !concl_vars.contains_key(v)).collect();
    let Some(j) = prem.iter().position(|l| l.positive && stripped.iter().any(|v| l.lhs.has_var(v))) else {
        report.failures.push("PosExt premise has no stripped literal".into());
        return Ok(());
    };
    let l = &prem[j];
    let n = l.lhs.args().iter().rev().take_while(|a| a.as_var().is_some_and(|x| stripped.contains(&x.name))).count();
    let (s, s2) = (l.lhs.strip(n), l.rhs.strip(n));
    let rest: Vec<Literal> = prem.iter().enumerate().filter(|(i, _)| *i != j).map(|(_, l)| l.clone()).collect();
    let mut all = inf.conclusion.clone();
    all.extend(rest);
    all.push(Literal::eq(s.clone(), s2.clone()));
    let thetas = match space.groundings(&all) {
        Ok(t) => t,
        Err(Error::TooLarge(_)) => {
            report.unknown += 1;
            return Ok(());
        }
        Err(e) => return Err(e),
    };
    for theta in sample(&thetas, samples) {
        let (mut a, mut b) = (theta.apply(&s)?, theta.apply(&s2)?);
        let mut th = theta.clone();
        let mut axioms = Vec::new();
        for arg in &l.lhs.args()[l.lhs.args().len() - n..] {
            let d = diff_term(&a, &b)?;
            let (ad, bd) = (a.apply(std::slice::from_ref(&d))?, b.apply(std::slice::from_ref(&d))?);
            axioms.push(vec![Literal::neq(ad.clone(), bd.clone()), Literal::eq(a, b)]);
            th.bind(arg.as_var().expect("stripped variable").name.clone(), d);
            (a, b) = (ad, bd);
        }
        let mut prems = vec![ground(&th, prem)?];
        prems.extend(axioms);
        let concl = ground(&th, &inf.conclusion)?;
        report.record(entails(prems.iter().map(|p| app_clause(p)).collect(), app_clause(&concl)), &theta);
    }
    Ok(())
}

/// The NegExt conclusion is not a consequence of its premise (the Skolem
/// term is new); what holds is the converse, which is checked instead.
fn check_neg_ext(inf: &Inference, space: &GroundingSpace, samples: usize, report: &mut RunCounter) -> Result<()> {
    let all: Vec<Literal> = inf.instances[0].iter().chain(&inf.conclusion).cloned().collect();
    let thetas = match space.groundings(&all) {
        Ok(t) => t,
        Err(Error::TooLarge(_)) => {
            report.unknown += 1;
            return Ok(());
        }
        Err(e) => return Err(e),
    };
    for theta in sample(&thetas, samples) {
        let prem = ground(&theta, &inf.instances[0])?;
        let concl = ground(&theta, &inf.conclusion)?;
        report.record(entails(Ok(vec![app_clause(&concl)?]), app_clause(&prem)), &theta);
    }
    Ok(())
}

/// Simplification ops without side premises are checked like inferences;
/// rewriting with units is left to proof replay.
fn check_simplified(
    from: &[Literal],
    ops: &[SimpOp],
    result: &[Literal],
    space: &GroundingSpace,
    samples: usize,
    report: &mut RunCounter,
) -> Result<()> {
    if ops.iter().any(|o| matches!(o, SimpOp::Demod(_) | SimpOp::ReflectPos(_) | SimpOp::ReflectNeg(_))) {
        return Ok(());
    }
    let all: Vec<Literal> = from.iter().chain(result).cloned().collect();
    let thetas = match space.groundings(&all) {
        Ok(t) => t,
        Err(Error::TooLarge(_)) => {
            report.unknown += 1;
            return Ok(());
        }
        Err(e) => return Err(e),
    };
    for theta in sample(&thetas, samples) {
        let (p, c) = (ground(&theta, from)?, ground(&theta, result)?);
        report.record(entails(Ok(vec![floor_clause(&p)?]), floor_clause(&c)), &theta);
    }
    Ok(())
}

struct RunCounter {
    step: ClauseId,
    checked: usize,
    unknown: usize,
    failures: Vec<String>,
}

impl RunCounter {
    fn record(&mut self, v: Verdict, theta: &Substitution) {
        match v {
            Verdict::Holds => self.checked += 1,
            Verdict::Unknown => self.unknown += 1,
            Verdict::Fails => self.failures.push(format!("step {} fails under {theta}", self.step)),
        }
    }
}

/// Checks up to `samples` ground instances of every step of the proof.
/// Steps whose sides are variable-free are checked once.
pub fn check_proof_soundness(proof: &Proof, space: &GroundingSpace, samples: usize) -> Result<SoundnessReport> {
    let mut known: BTreeMap<ClauseId, &[Literal]> = BTreeMap::new();
    let mut fresh = Fresh::new();
    for s in &proof.steps {
        fresh.observe(&s.lits);
    }
    let mut out = SoundnessReport::default();
    for s in &proof.steps {
        let mut rc = RunCounter { step: s.id, checked: 0, unknown: 0, failures: Vec::new() };
        match &s.derivation {
            Derivation::Input | Derivation::Axiom => {}
            Derivation::Inference { rule, premises, skolem, stream, .. } => {
                let ps = premises
                    .iter()
                    .map(|p| known.get(p).map(|l| Clause::with_id(l.to_vec(), *p)))
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| Error::CorruptLog(format!("step {} has an unknown premise", s.id)))?;
                let infs = regenerate(&proof.calculus, *rule, &ps, *stream, skolem.as_ref(), &mut fresh);
                match infs.iter().find(|i| variants(&i.conclusion, &s.lits)) {
                    None => rc.failures.push(format!("step {} is not a {} conclusion", s.id, rule.name())),
                    Some(inf) => match rule {
                        Rule::PosExt => check_pos_ext(inf, space, samples, &mut rc)?,
                        Rule::NegExt => check_neg_ext(inf, space, samples, &mut rc)?,
                        _ => check_plain(inf, space, samples, &mut rc)?,
                    },
                }
            }
            Derivation::Simplified { from, ops } => {
                let f = known.get(from).ok_or_else(|| Error::CorruptLog(format!("step {} has no source", s.id)))?;
                check_simplified(f, ops, &s.lits, space, samples, &mut rc)?;
            }
        }
        out.checked += rc.checked;
        out.skipped += rc.unknown;
        out.failures.extend(rc.failures);
        known.insert(s.id, &s.lits);
    }
    Ok(out)
}
