//! From a parsed problem and option strings to a prover run.

use std::time::Duration;

use crate::calculus::{CalculusConfig, Selection};
use crate::error::{Error, Result};
use crate::orders::{KboWeights, OrderConfig, OrderKind, Precedence};
use crate::saturation::{saturate, Outcome, ProverConfig, ProverResult};

use super::{applicative_encode, ProblemFile};

#[derive(Clone, Debug)]
pub struct Job {
    pub calculus: CalculusConfig,
    pub order: OrderKind,
    /// `"h>g>f"`; the default ranks symbols by arity, then declaration order.
    pub prec: Option<String>,
    pub status: String,
    pub kbo_weights: String,
    pub timeout: Duration,
    pub max_iterations: u64,
    pub encode_applicative: bool,
}

impl Job {
    pub fn new(calculus: CalculusConfig) -> Job {
        Job {
            calculus,
            order: OrderKind::Lpo,
            prec: None,
            status: String::new(),
            kbo_weights: String::new(),
            timeout: Duration::from_secs(30),
            max_iterations: 1_000_000,
            encode_applicative: false,
        }
    }

    pub fn with_prec(mut self, prec: &str) -> Job {
        self.prec = Some(prec.to_string());
        self
    }

    pub fn order_config(&self, p: &ProblemFile) -> Result<OrderConfig> {
        let mut prec = match &self.prec {
            Some(s) => Precedence::parse(s)?,
            None => p.default_precedence(),
        };
        prec.parse_status(&self.status)?;
        Ok(match self.order {
            OrderKind::Lpo => OrderConfig::lpo(prec),
            OrderKind::Kbo => OrderConfig::kbo(prec, KboWeights::parse(&self.kbo_weights)?),
        })
    }
}

pub fn parse_selection(s: &str) -> Result<Selection> {
    match s {
        "none" => Ok(Selection::None),
        "maximal-neg" => Ok(Selection::MaximalNegative),
        other => Err(Error::BadOption(format!("unknown selection `{other}`"))),
    }
}

pub fn parse_order(s: &str) -> Result<OrderKind> {
    match s {
        "lpo" => Ok(OrderKind::Lpo),
        "kbo" => Ok(OrderKind::Kbo),
        other => Err(Error::BadOption(format!("unknown order `{other}`"))),
    }
}

/// SZS-style status of a finished run.
pub fn status_line(r: &ProverResult, complete: bool) -> &'static str {
    match &r.outcome {
        Outcome::Unsat(_) => "Unsatisfiable",
        Outcome::Saturated(_) if complete => "Satisfiable",
        Outcome::Saturated(_) => "GaveUp",
        Outcome::ResourceOut(_) => "ResourceOut",
    }
}

/// Runs the prover. With the applicative encoding the problem is solved by
/// the first-order instance of the calculus; the extensionality axiom is
/// encoded along with the clauses when the chosen calculus would use it.
/// Returns the result and whether saturation means satisfiability.
pub fn run_job(p: &ProblemFile, job: &Job) -> Result<(ProverResult, bool)> {
    let order = job.order_config(p)?;
    let complete = job.calculus.is_complete();
    let (inputs, calculus) = if job.encode_applicative {
        let with_ext = job.calculus.ext_axiom;
        let enc = applicative_encode(p, with_ext);
        let mut cal = CalculusConfig::new(false, false);
        cal.selection = job.calculus.selection;
        (enc.problem.input_clauses(), cal)
    } else {
        (p.input_clauses(), job.calculus)
    };
    let mut cfg = ProverConfig::new(calculus, order);
    cfg.budget.timeout = job.timeout;
    cfg.budget.max_iterations = job.max_iterations;
    let r = saturate(&inputs, &cfg);
    Ok((r, complete))
}
