use moufang_toric::loops::checks::{
    check_diassociativity, check_diassociativity_octonion, check_inversion_axioms, check_moufang, CheckReport,
    Samples,
};
use moufang_toric::loops::OctonionModel;
use serde::Serialize;

use crate::output::{usage, verdict, with_model, CmdResult, Out};

#[derive(clap::Args)]
pub struct Args {
    /// finite16 or oct-rational
    model: String,
    /// Every tuple of a finite model.
    #[arg(long)]
    exhaustive: bool,
    #[arg(long, default_value_t = 500)]
    samples: usize,
    /// Random pairs for the diassociativity check.
    #[arg(long, default_value_t = 50)]
    pairs: usize,
    /// Maximum word length for diassociativity.
    #[arg(long, default_value_t = 3)]
    depth: usize,
}

#[derive(Serialize)]
struct Line<'a> {
    model: &'a str,
    check: &'a str,
    cases: usize,
    failures: usize,
    passed: bool,
    informational: bool,
    counterexample: Option<&'a str>,
}

fn emit(out: &Out, report: &CheckReport) {
    for c in &report.checks {
        let line = Line {
            model: &report.model,
            check: &c.name,
            cases: c.cases,
            failures: c.failures,
            passed: c.passed(),
            informational: c.informational,
            counterexample: c.counterexample.as_deref(),
        };
        out.emit(&line, || {
            let status = match (c.passed(), c.informational) {
                (true, _) => "ok",
                (false, true) => "fails (informational)",
                (false, false) => "FAIL",
            };
            let mut s = format!("{:<14} {:<40} {:>8} cases  {status}", report.model, c.name, c.cases);
            if let Some(w) = &c.counterexample {
                s.push_str(&format!("\n    counterexample: {w}"));
            }
            s
        });
    }
}

pub fn run(out: &Out, args: Args) -> CmdResult {
    if args.depth == 0 {
        return Err(usage("--depth must be at least 1"));
    }
    let samples = if args.exhaustive {
        Samples::Exhaustive
    } else {
        Samples::Random {
            count: args.samples,
            seed: out.seed,
        }
    };
    let reports = with_model!(args.model.as_str(), m => {
        let diassoc = if args.model == "oct-rational" {
            check_diassociativity_octonion(&OctonionModel::default(), args.pairs, out.seed, args.depth)
        } else {
            let pair_samples = match samples {
                Samples::Exhaustive => Samples::Exhaustive,
                Samples::Random { seed, .. } => Samples::Random { count: args.pairs, seed },
            };
            check_diassociativity(&m, pair_samples, args.depth)
        };
        vec![check_inversion_axioms(&m, samples), check_moufang(&m, samples), diassoc]
    });
    for r in &reports {
        emit(out, r);
    }
    verdict(reports.iter().all(CheckReport::passed))
}
