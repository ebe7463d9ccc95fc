//! Given-clause saturation in the DISCOUNT style: only active clauses take
//! part in inferences and simplification. Infinite ArgCong sequences live in
//! a separate scheduled set visited fairly alongside the passive clauses.

mod passive;
mod proof;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use crate::calculus::{ext_axiom, Calculus, CalculusConfig, Inference};
use crate::clause::{Clause, ClauseId, Fresh, Literal};
use crate::orders::OrderConfig;
use crate::simplify::{
    delete_duplicates, delete_resolved, demodulate, equality_subsumes, is_tautology, simplify_reflect_neg,
    simplify_reflect_pos, subsumes, SimpOp,
};

pub use passive::{Passive, Pick, ScheduledSet, Scheduler};
pub use proof::{regenerate, Derivation, Proof, Step};

#[derive(Clone, Debug)]
pub struct Budget {
    pub timeout: Duration,
    pub max_iterations: u64,
    pub max_clauses: usize,
}

impl Default for Budget {
    fn default() -> Budget {
        Budget { timeout: Duration::from_secs(30), max_iterations: 1_000_000, max_clauses: 1_000_000 }
    }
}

#[derive(Clone, Debug)]
pub struct ProverConfig {
    pub calculus: CalculusConfig,
    pub order: OrderConfig,
    pub budget: Budget,
    /// Clause picks per scheduled ArgCong pick.
    pub schedule_ratio: usize,
    /// Weight-based picks per age-based pick.
    pub weight_ratio: usize,
    /// Weight multiplier for descendants of the extensionality axiom.
    pub ext_penalty: usize,
    pub simplify: bool,
}

impl ProverConfig {
    pub fn new(calculus: CalculusConfig, order: OrderConfig) -> ProverConfig {
        ProverConfig {
            calculus,
            order,
            budget: Budget::default(),
            schedule_ratio: 4,
            weight_ratio: 4,
            ext_penalty: 5,
            simplify: true,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    pub iterations: u64,
    pub clauses: usize,
    pub scheduled_picks: u64,
    pub simplified: u64,
    pub deleted: u64,
}

#[derive(Clone, Debug)]
pub enum Outcome {
    Unsat(Proof),
    /// No inference left; the active set.
    Saturated(Vec<Clause>),
    ResourceOut(String),
}

#[derive(Clone, Debug)]
pub struct ProverResult {
    pub outcome: Outcome,
    pub stats: Stats,
}

impl ProverResult {
    pub fn is_unsat(&self) -> bool {
        matches!(self.outcome, Outcome::Unsat(_))
    }

    pub fn is_saturated(&self) -> bool {
        matches!(self.outcome, Outcome::Saturated(_))
    }

    pub fn proof(&self) -> Option<&Proof> {
        match &self.outcome {
            Outcome::Unsat(p) => Some(p),
            _ => None,
        }
    }
}

struct Entry {
    clause: Clause,
    derivation: Derivation,
}

struct Prover<'a> {
    cfg: &'a ProverConfig,
    calc: Calculus,
    fresh: Fresh,
    store: Vec<Entry>,
    active: Vec<ClauseId>,
    is_active: Vec<bool>,
    passive: Passive,
    scheduled: ScheduledSet,
    scheduler: Scheduler,
    stats: Stats,
    empty: Option<ClauseId>,
}

/// Runs the prover on `inputs`.
pub fn saturate(inputs: &[Vec<Literal>], cfg: &ProverConfig) -> ProverResult {
    let mut p = Prover {
        cfg,
        calc: Calculus::new(cfg.calculus, cfg.order.clone()),
        fresh: Fresh::new(),
        store: Vec::new(),
        active: Vec::new(),
        is_active: Vec::new(),
        passive: Passive::new(cfg.weight_ratio),
        scheduled: ScheduledSet::default(),
        scheduler: Scheduler::new(cfg.schedule_ratio),
        stats: Stats::default(),
        empty: None,
    };
    let outcome = p.run(inputs);
    p.stats.clauses = p.store.len();
    ProverResult { outcome, stats: p.stats }
}

impl Prover<'_> {
    fn add(&mut self, lits: Vec<Literal>, derivation: Derivation, ext_penalty: bool) -> ClauseId {
        let id = self.store.len();
        if lits.is_empty() && self.empty.is_none() {
            self.empty = Some(id);
        }
        let mut clause = Clause::with_id(lits, id);
        clause.ext_penalty = ext_penalty;
        self.store.push(Entry { clause, derivation });
        self.is_active.push(false);
        id
    }

    fn enqueue(&mut self, id: ClauseId) {
        let c = &self.store[id].clause;
        let w = c.weight() * if c.ext_penalty { self.cfg.ext_penalty } else { 1 };
        self.passive.push(id, w);
    }

    /// Stores an input (or axiom) clause, purified when required.
    fn add_initial(&mut self, lits: Vec<Literal>, derivation: Derivation, penalty: bool) {
        let mut id = self.add(lits, derivation, penalty);
        if self.cfg.calculus.purifying {
            let lits = &self.store[id].clause.lits;
            let pure = self.calc.purify(lits, &mut self.fresh);
            if pure != *lits {
                id = self.add(pure, Derivation::Simplified { from: id, ops: vec![SimpOp::Purify] }, penalty);
            }
        }
        self.enqueue(id);
    }

    fn run(&mut self, inputs: &[Vec<Literal>]) -> Outcome {
        let start = Instant::now();
        for l in inputs {
            self.fresh.observe(l);
        }
        for l in inputs {
            self.add_initial(l.clone(), Derivation::Input, false);
        }
        if self.cfg.calculus.ext_axiom {
            self.add_initial(ext_axiom(), Derivation::Axiom, true);
        }
        let budget = &self.cfg.budget;
        loop {
            if let Some(e) = self.empty {
                return Outcome::Unsat(self.extract_proof(e));
            }
            if self.stats.iterations >= budget.max_iterations {
                return Outcome::ResourceOut("iteration limit".into());
            }
            if self.store.len() >= budget.max_clauses {
                return Outcome::ResourceOut("clause limit".into());
            }
            if start.elapsed() >= budget.timeout {
                return Outcome::ResourceOut("time limit".into());
            }
            self.stats.iterations += 1;
            match self.scheduler.next(!self.passive.is_empty(), !self.scheduled.is_empty()) {
                None => {
                    let active = self.active.iter().map(|&i| self.store[i].clause.clone()).collect();
                    return Outcome::Saturated(active);
                }
                Some(Pick::Scheduled) => {
                    self.stats.scheduled_picks += 1;
                    let (cid, j, k) = self.scheduled.pop().expect("nonempty");
                    let c = &self.store[cid].clause;
                    if let Some(inf) = self.calc.arg_cong_instance(c, j, k, &mut self.fresh) {
                        self.record(inf, Some((j, k)));
                    }
                }
                Some(Pick::Clause) => {
                    let id = self.passive.pop().expect("nonempty");
                    self.process(id);
                }
            }
        }
    }

    fn record(&mut self, inf: Inference, stream: Option<(usize, usize)>) {
        if self.cfg.simplify && is_tautology(&inf.conclusion) {
            self.stats.deleted += 1;
            return;
        }
        let penalty = inf.premises.iter().any(|&p| self.store[p].clause.ext_penalty);
        let d = Derivation::from_inference(&inf, stream);
        let id = self.add(inf.conclusion, d, penalty);
        self.enqueue(id);
    }

    fn units(&self) -> Vec<ClauseId> {
        self.active.iter().copied().filter(|&a| self.store[a].clause.lits.len() == 1).collect()
    }

    /// Forward simplification; `None` if the clause is redundant.
    fn forward(&mut self, mut c: Vec<Literal>) -> Option<(Vec<Literal>, Vec<SimpOp>)> {
        let mut ops = Vec::new();
        let units = self.units();
        loop {
            let d = delete_duplicates(&c);
            if d.len() != c.len() {
                c = d;
                ops.push(SimpOp::Duplicates);
            }
            let r = delete_resolved(&c);
            if r.len() != c.len() {
                c = r;
                ops.push(SimpOp::Resolved);
            }
            if is_tautology(&c) {
                return None;
            }
            let mut changed = false;
            for &u in &units {
                let l = &self.store[u].clause.lits[0];
                let step = if let Some(n) = demodulate(&c, l, &self.calc.ord) {
                    Some((n, SimpOp::Demod(u)))
                } else if let Some(n) = simplify_reflect_pos(&c, l) {
                    Some((n, SimpOp::ReflectPos(u)))
                } else {
                    simplify_reflect_neg(&c, l).map(|n| (n, SimpOp::ReflectNeg(u)))
                };
                if let Some((n, op)) = step {
                    c = n;
                    ops.push(op);
                    changed = true;
                    break;
                }
            }
            if !changed {
                break;
            }
        }
        for &a in &self.active {
            let al = &self.store[a].clause.lits;
            if subsumes(al, &c).is_some() || (al.len() == 1 && equality_subsumes(&al[0], &c)) {
                return None;
            }
        }
        if self.cfg.calculus.purifying && !ops.is_empty() {
            let p = self.calc.purify(&c, &mut self.fresh);
            if p != c {
                c = p;
                ops.push(SimpOp::Purify);
            }
        }
        Some((c, ops))
    }

    fn deactivate(&mut self, id: ClauseId) {
        self.is_active[id] = false;
        self.active.retain(|&a| a != id);
        self.scheduled.remove_clause(id);
    }

    /// Simplifies the active set with the new clause `g`.
    fn backward(&mut self, g: ClauseId) {
        let gl = self.store[g].clause.lits.clone();
        for a in self.active.clone() {
            let al = &self.store[a].clause.lits;
            if subsumes(&gl, al).is_some() {
                self.deactivate(a);
                self.stats.deleted += 1;
                continue;
            }
            let [l] = gl.as_slice() else { continue };
            if equality_subsumes(l, al) {
                self.deactivate(a);
                self.stats.deleted += 1;
                continue;
            }
            let step = if let Some(n) = demodulate(al, l, &self.calc.ord) {
                Some((n, SimpOp::Demod(g)))
            } else if let Some(n) = simplify_reflect_pos(al, l) {
                Some((n, SimpOp::ReflectPos(g)))
            } else {
                simplify_reflect_neg(al, l).map(|n| (n, SimpOp::ReflectNeg(g)))
            };
            if let Some((n, op)) = step {
                let penalty = self.store[a].clause.ext_penalty;
                self.deactivate(a);
                self.stats.simplified += 1;
                let id = self.add(n, Derivation::Simplified { from: a, ops: vec![op] }, penalty);
                self.enqueue(id);
            }
        }
    }

    fn process(&mut self, id: ClauseId) {
        let mut g = id;
        if self.cfg.simplify {
            let lits = self.store[id].clause.lits.clone();
            match self.forward(lits) {
                None => {
                    self.stats.deleted += 1;
                    return;
                }
                Some((_, ops)) if ops.is_empty() => {}
                Some((lits, ops)) => {
                    self.stats.simplified += 1;
                    let penalty = self.store[id].clause.ext_penalty;
                    g = self.add(lits, Derivation::Simplified { from: id, ops }, penalty);
                }
            }
        }
        if self.store[g].clause.lits.is_empty() {
            return;
        }
        if self.cfg.simplify {
            self.backward(g);
        }
        self.active.push(g);
        self.is_active[g] = true;
        let given = &self.store[g].clause;
        let others: Vec<&Clause> = self.active.iter().map(|&a| &self.store[a].clause).collect();
        let mut infs = self.calc.generate(given, &others, &mut self.fresh);
        if self.cfg.calculus.neg_ext {
            infs.extend(self.calc.neg_ext(given, &mut self.fresh, None));
        }
        let streams = self.calc.arg_cong_streams(given);
        for inf in infs {
            self.record(inf, None);
        }
        for j in streams {
            self.scheduled.add(g, j);
        }
    }

    fn extract_proof(&self, empty: ClauseId) -> Proof {
        let mut need = BTreeSet::new();
        let mut todo = vec![empty];
        while let Some(id) = todo.pop() {
            if need.insert(id) {
                todo.extend(self.store[id].derivation.parents());
            }
        }
        let steps = need
            .into_iter()
            .map(|id| Step {
                id,
                lits: self.store[id].clause.lits.clone(),
                derivation: self.store[id].derivation.clone(),
            })
            .collect();
        Proof { steps, calculus: self.calc.clone() }
    }
}

/// Clause-level view of the active set, for printing.
pub fn show_clauses(cs: &[Clause]) -> String {
    cs.iter().map(|c| format!("{}. {c}\n", c.id)).collect()
}
