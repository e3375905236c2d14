use clap::Subcommand;
use moufang_toric::toric::{
    blow_up, blowup_descendants, check_triangular, enumerate_cycles, format_cycle, is_fulton_cycle, parse_sequence,
    FultonCycle, TriangularReport,
};
use rayon::prelude::*;
use serde_json::json;

use crate::output::{usage, verdict, CmdResult, Failure, Out};

#[derive(Subcommand)]
pub enum Cmd {
    /// All cycles of length n with entries bounded by `bound`.
    Enum {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        bound: i64,
    },
    /// Whether the sequence closes up.
    Check {
        #[arg(long, allow_hyphen_values = true)]
        cycle: String,
    },
    /// Blow up between positions `at` and `at + 1`.
    Blowup {
        #[arg(long, allow_hyphen_values = true)]
        cycle: String,
        #[arg(long, default_value_t = 0)]
        at: usize,
    },
    /// Classify every partial product; exits 1 on a non-elementary one.
    Triangular {
        #[arg(long, allow_hyphen_values = true, required_unless_present = "sweep")]
        cycle: Option<String>,
        /// All cycles up to `--max-n`/`--bound` plus blow-up descendants of
        /// (-1,-1,-1) up to `--max-len`.
        #[arg(long, conflicts_with = "cycle")]
        sweep: bool,
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        #[arg(long, default_value_t = 3)]
        bound: i64,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
    },
}

pub fn parse_cycle(text: &str) -> Result<FultonCycle, Failure> {
    let seq = parse_sequence(text)?;
    if !is_fulton_cycle(&seq)? {
        return Err(usage(format!("({}) is not a Fulton cycle", format_cycle(&seq))));
    }
    Ok(FultonCycle::new(seq)?)
}

fn emit_arcs(out: &Out, report: &TriangularReport, only_bad: bool) {
    for arc in &report.arcs {
        if only_bad && arc.elementary {
            continue;
        }
        out.emit(arc, || {
            format!(
                "({}) A_{}{} = {}  {}",
                arc.cycle, arc.i, arc.j, arc.matrix, arc.classification
            )
        });
    }
}

pub fn run(out: &Out, cmd: Cmd) -> CmdResult {
    match cmd {
        Cmd::Enum { n, bound } => {
            if n < 3 {
                return Err(usage("--n must be at least 3"));
            }
            for c in enumerate_cycles(n, bound.abs()) {
                out.emit(&json!({"cycle": c.to_string(), "n": n}), || c.to_string());
            }
            Ok(())
        }
        Cmd::Check { cycle } => {
            let seq = parse_sequence(&cycle)?;
            let ok = is_fulton_cycle(&seq)?;
            out.emit(&json!({"cycle": format_cycle(&seq), "fulton": ok}), || ok.to_string());
            Ok(())
        }
        Cmd::Blowup { cycle, at } => {
            let c = parse_cycle(&cycle)?;
            if at >= c.len() {
                return Err(usage(format!("--at must be below {}", c.len())));
            }
            let b = blow_up(&c, at);
            out.emit(&json!({"cycle": b.to_string(), "from": c.to_string(), "at": at}), || b.to_string());
            Ok(())
        }
        Cmd::Triangular {
            cycle: Some(cycle), ..
        } => {
            let report = check_triangular(&parse_cycle(&cycle)?);
            emit_arcs(out, &report, false);
            if !out.json {
                let verdict = if report.holds() { "all elementary" } else { "NOT all elementary" };
                println!("{verdict}");
            }
            verdict(report.holds())
        }
        Cmd::Triangular {
            max_n, bound, max_len, ..
        } => {
            let mut cycles: Vec<FultonCycle> = (3..=max_n).flat_map(|n| enumerate_cycles(n, bound.abs())).collect();
            cycles.extend(blowup_descendants(&FultonCycle::parse("-1,-1,-1")?, max_len));
            let reports: Vec<TriangularReport> = cycles.par_iter().map(check_triangular).collect();
            let mut bad = 0;
            for r in &reports {
                emit_arcs(out, r, true);
                bad += r.counterexamples().count();
            }
            out.emit(
                &json!({"summary": true, "cycles": reports.len(), "non_elementary": bad}),
                || format!("{} cycles, {bad} non-elementary partial products", reports.len()),
            );
            verdict(bad == 0)
        }
    }
}
