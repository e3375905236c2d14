use clap::Subcommand;
use moufang_toric::lifting::{all_mock_liftings, mock_lifting, search_liftings, LiftConfig, MockLifting, NiceCycle, Sign};
use moufang_toric::loops::checks::Samples;

use crate::cycles::parse_cycle;
use crate::output::{usage, verdict, with_model, CmdResult, Out};

#[derive(Subcommand)]
pub enum Cmd {
    /// Search sign vectors for a nice cycle; exits 1 if none exists.
    Search {
        #[arg(long, allow_hyphen_values = true)]
        cycle: String,
        /// Print every sign vector that works, not just the first.
        #[arg(long)]
        all: bool,
        #[arg(long, default_value_t = 64)]
        samples: usize,
    },
    /// Mock liftings for one sign vector (`--eps +-`) or all of them.
    Mock {
        #[arg(long, allow_hyphen_values = true)]
        cycle: String,
        #[arg(long, allow_hyphen_values = true)]
        eps: Option<String>,
        #[arg(long, default_value = "oct-rational")]
        model: String,
        /// Random points per composite for the bracket comparison.
        #[arg(long, default_value_t = 100)]
        points: usize,
    },
}

pub fn human_nice(c: &NiceCycle) -> String {
    let eps: String = c.eps.iter().map(Sign::to_string).collect();
    let mut s = format!("nice cycle ({}) eps {eps}", moufang_toric::toric::format_cycle(&c.a));
    for arc in &c.arcs {
        let level = arc.level.map(|l| format!("{l:?}").to_lowercase()).unwrap_or_default();
        s.push_str(&format!("\n  M_{}{} = {}  [{level}]", arc.i, arc.j, arc.map));
    }
    s
}

fn human_mock(m: &MockLifting) -> String {
    let mut s = format!(
        "mock lifting eps {} over {}: {}",
        m.eps,
        m.model,
        if m.bracket_failures() == 0 { "bracket-independent" } else { "BRACKETS DISAGREE" }
    );
    for arc in &m.arcs {
        let chain: Vec<String> = arc.chain.iter().map(ToString::to_string).collect();
        s.push_str(&format!(
            "\n  M_{}{} = ({}, {})  from {}",
            arc.i,
            arc.j,
            arc.map[0],
            arc.map[1],
            chain.join(" then ")
        ));
    }
    s
}

pub fn run(out: &Out, cmd: Cmd) -> CmdResult {
    match cmd {
        Cmd::Search { cycle, all, samples } => {
            let c = parse_cycle(&cycle)?;
            let cfg = LiftConfig {
                samples,
                seed: out.seed,
                ..LiftConfig::default()
            };
            match search_liftings(c.entries(), &cfg) {
                Ok(found) => {
                    let shown = if all { &found[..] } else { &found[..1] };
                    for n in shown {
                        out.emit(n, || human_nice(n));
                    }
                    Ok(())
                }
                Err(f) => {
                    out.emit(&f, || format!("no lifting: {}", f.explanation));
                    verdict(false)
                }
            }
        }
        Cmd::Mock {
            cycle,
            eps,
            model,
            points,
        } => {
            let c = parse_cycle(&cycle)?;
            let moufang = Samples::Random {
                count: 200,
                seed: out.seed,
            };
            let lifts = with_model!(model.as_str(), m => match &eps {
                Some(e) => {
                    let signs = Sign::parse_vector(e)?;
                    if signs.len() + 1 != c.len() {
                        return Err(usage(format!("--eps needs {} signs", c.len() - 1)));
                    }
                    vec![mock_lifting(&c, &signs, &m, moufang, points, out.seed)?]
                }
                None => all_mock_liftings(&c, &m, moufang, points, out.seed)?,
            });
            for l in &lifts {
                out.emit(l, || human_mock(l));
            }
            verdict(lifts.iter().all(|l| l.bracket_failures() == 0))
        }
    }
}
