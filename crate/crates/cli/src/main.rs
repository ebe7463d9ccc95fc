use std::io::{self, Write};
use std::panic;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::Parser;

use lfsup::calculus::CalculusConfig;
use lfsup::clause::DisplayLits;
use lfsup::error::Error;
use lfsup::frontend::{parse_order, parse_selection, run_job, status_line, Job, ProblemFile};
use lfsup::oracle::{construct_rn, model_check};
use lfsup::saturation::Outcome;

/// Superposition prover for clausal lambda-free higher-order logic.
#[derive(Parser, Debug)]
#[command(name = "prover", version)]
struct Args {
    /// Problem file.
    file: PathBuf,
    /// int-nonpure, int-pure, ext-nonpure or ext-pure.
    #[arg(short = 'c', long, default_value = "ext-nonpure")]
    calculus: String,
    /// lpo or kbo.
    #[arg(short = 'o', long, default_value = "lpo")]
    order: String,
    /// Symbol precedence, highest first: "h>g>f".
    #[arg(long)]
    prec: Option<String>,
    /// Per-symbol LPO argument order: "add_r:rl,add_l:lr".
    #[arg(long, default_value = "")]
    status: String,
    /// KBO symbol weights: "f=2,default=1".
    #[arg(long, default_value = "")]
    kbo_weights: String,
    /// Literal selection: none or maximal-neg.
    #[arg(long, default_value = "none")]
    select: String,
    /// Wall-clock limit in seconds.
    #[arg(long, default_value_t = 30.0)]
    timeout: f64,
    #[arg(long, default_value_t = 1_000_000)]
    max_iterations: u64,
    /// Solve the applicative encoding of the problem instead.
    #[arg(long)]
    encode_applicative: bool,
    /// Replace the extensionality axiom by the NegExt rule (incomplete).
    #[arg(long)]
    neg_ext: bool,
    /// Print the refutation.
    #[arg(long)]
    proof: bool,
    /// Print the candidate model of a ground problem and exit.
    #[arg(long)]
    oracle: bool,
}

/// Prints to stdout, ignoring a closed pipe.
macro_rules! out {
    ($($arg:tt)*) => {{
        let _ = writeln!(io::stdout(), $($arg)*);
    }};
}

fn input_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn run(args: Args) -> ExitCode {
    let text = match std::fs::read_to_string(&args.file) {
        Ok(t) => t,
        Err(e) => return input_error(format!("{}: {e}", args.file.display())),
    };
    let problem = match ProblemFile::parse(&text) {
        Ok(p) => p,
        Err(e) => return input_error(format!("{}:{e}", args.file.display())),
    };
    let job = match job(&args) {
        Ok(j) => j,
        Err(e) => return input_error(e),
    };
    if args.oracle {
        return oracle(&problem, &job);
    }
    let (result, complete) = match run_job(&problem, &job) {
        Ok(r) => r,
        Err(e) => return input_error(e),
    };
    out!("STATUS: {}", status_line(&result, complete));
    let s = &result.stats;
    out!("% iterations: {}, clauses: {}, scheduled: {}", s.iterations, s.clauses, s.scheduled_picks);
    match &result.outcome {
        Outcome::Unsat(proof) => {
            if args.proof {
                let _ = write!(io::stdout(), "{proof}");
            }
            ExitCode::SUCCESS
        }
        Outcome::ResourceOut(why) => {
            out!("% {why}");
            ExitCode::from(1)
        }
        Outcome::Saturated(_) => ExitCode::from(1),
    }
}

fn job(args: &Args) -> Result<Job, Error> {
    let mut cal = CalculusConfig::parse(&args.calculus)?;
    cal.selection = parse_selection(&args.select)?;
    if args.neg_ext {
        cal.neg_ext = true;
        cal.ext_axiom = false;
    }
    if !(args.timeout > 0.0 && args.timeout.is_finite()) {
        return Err(Error::BadOption(format!("timeout {}", args.timeout)));
    }
    let mut job = Job::new(cal);
    job.order = parse_order(&args.order)?;
    job.prec = args.prec.clone();
    job.status = args.status.clone();
    job.kbo_weights = args.kbo_weights.clone();
    job.timeout = Duration::from_secs_f64(args.timeout);
    job.max_iterations = args.max_iterations;
    job.encode_applicative = args.encode_applicative;
    Ok(job)
}

fn oracle(problem: &ProblemFile, job: &Job) -> ExitCode {
    let clauses = problem.input_clauses();
    let ord = match job.order_config(problem) {
        Ok(o) => o,
        Err(e) => return input_error(e),
    };
    let r = match construct_rn(&clauses, &ord) {
        Ok(r) => r,
        Err(e) => return input_error(e),
    };
    out!("% {} rules", r.len());
    for rule in &r.rules {
        out!("{} -> {}    % from {}", rule.lhs, rule.rhs, DisplayLits(&clauses[rule.from]));
    }
    match model_check(&r, &clauses) {
        Ok(true) => {
            out!("MODEL: yes");
            ExitCode::SUCCESS
        }
        Ok(false) => {
            out!("MODEL: no");
            ExitCode::from(1)
        }
        Err(e) => input_error(e),
    }
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(2),
            };
        }
    };
    match panic::catch_unwind(|| run(args)) {
        Ok(code) => code,
        Err(_) => {
            out!("STATUS: Error");
            ExitCode::from(3)
        }
    }
}
