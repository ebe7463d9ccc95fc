//! Problem corpus under `problems/`: each file names its precedence (and
//! optional LPO status) in `% prec:` / `% status:` header comments.

#![allow(dead_code)]

use std::path::PathBuf;
use std::time::Duration;

use lfsup::calculus::CalculusConfig;
use lfsup::frontend::{run_job, Job, ProblemFile};
use lfsup::saturation::{Outcome, ProverResult};

pub struct Problem {
    pub name: &'static str,
    pub text: String,
    pub file: ProblemFile,
    pub prec: String,
    pub status: String,
}

pub fn problem(name: &'static str) -> Problem {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../problems").join(format!("{name}.p"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    let header = |key: &str| {
        text.lines()
            .find_map(|l| l.strip_prefix("% ")?.strip_prefix(key)?.strip_prefix(':').map(|s| s.trim().to_string()))
            .unwrap_or_default()
    };
    let (prec, status) = (header("prec"), header("status"));
    let file = ProblemFile::parse(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
    Problem { name, text, file, prec, status }
}

/// The refutable examples, plus one satisfiable set.
pub const CORPUS: [&str; 6] = ["applied_var", "pos_ext", "k_example", "neg_ext", "add3", "sat_ground"];

pub fn job(p: &Problem, cal: CalculusConfig) -> Job {
    let mut job = Job::new(cal);
    if !p.prec.is_empty() {
        job.prec = Some(p.prec.clone());
    }
    job.status = p.status.clone();
    job.timeout = Duration::from_secs(5);
    job
}

pub fn run(p: &Problem, cal: CalculusConfig) -> ProverResult {
    run_job(&p.file, &job(p, cal)).expect("valid options").0
}

pub fn run_encoded(p: &Problem, cal: CalculusConfig) -> ProverResult {
    let mut j = job(p, cal);
    j.encode_applicative = true;
    run_job(&p.file, &j).expect("valid options").0
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Unsat,
    Saturated,
    ResourceOut,
}

pub fn verdict(r: &ProverResult) -> Verdict {
    match r.outcome {
        Outcome::Unsat(_) => Verdict::Unsat,
        Outcome::Saturated(_) => Verdict::Saturated,
        Outcome::ResourceOut(_) => Verdict::ResourceOut,
    }
}

/// int-nonpure, int-pure, ext-nonpure, ext-pure.
pub fn calculi() -> [CalculusConfig; 4] {
    CalculusConfig::all()
}

/// Intensional calculus that is also given the extensionality axiom.
pub fn with_axiom(mut cal: CalculusConfig) -> CalculusConfig {
    cal.ext_axiom = true;
    cal
}

/// Extensional calculus with NegExt in place of the axiom.
pub fn neg_ext_only(mut cal: CalculusConfig) -> CalculusConfig {
    cal.ext_axiom = false;
    cal.neg_ext = true;
    cal
}
pub mod gen;
