use std::collections::HashMap;

use clap::Subcommand;
use moufang_toric::loops::parse_affine;
use moufang_toric::term::{decide_equal, evaluate, normalize_traced, parse_term, DecideConfig, Verdict};
use serde_json::json;

use crate::output::{usage, verdict, with_model, CmdResult, Out};

#[derive(Subcommand)]
pub enum Cmd {
    /// Print the normal form.
    Normalize {
        term: String,
        /// Show each rewrite step.
        #[arg(long)]
        trace: bool,
    },
    /// Decide equality in all loops with the inversion property.
    Equal {
        lhs: String,
        rhs: String,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
        /// Octonion evaluations tried when no proof is found.
        #[arg(long, default_value_t = 64)]
        samples: usize,
    },
    /// Evaluate in a model; variables bound with `--let x=e1` (`0` is zero).
    Eval {
        term: String,
        #[arg(long, default_value = "finite16")]
        model: String,
        #[arg(long = "let", value_name = "VAR=VALUE")]
        bindings: Vec<String>,
    },
}

fn parse(text: &str) -> Result<moufang_toric::term::Term, crate::output::Failure> {
    parse_term(text).map_err(|e| usage(format!("in `{text}`: {e}")))
}

pub fn run(out: &Out, cmd: Cmd) -> CmdResult {
    match cmd {
        Cmd::Normalize { term, trace } => {
            let t = parse(&term)?;
            let (nf, steps) = normalize_traced(&t);
            out.emit(
                &json!({"term": t.to_string(), "normal_form": nf.to_string(), "trace": if trace { Some(&steps) } else { None }}),
                || {
                    let mut s = String::new();
                    if trace {
                        for step in &steps {
                            s.push_str(&format!("  {step}\n"));
                        }
                    }
                    s.push_str(&nf.to_string());
                    s
                },
            );
            Ok(())
        }
        Cmd::Equal {
            lhs,
            rhs,
            budget,
            samples,
        } => {
            let (t, u) = (parse(&lhs)?, parse(&rhs)?);
            let v = decide_equal(
                &t,
                &u,
                &DecideConfig {
                    budget,
                    samples,
                    seed: out.seed,
                },
            );
            out.emit(&v, || match &v {
                Verdict::ProvedEqual { trace } => {
                    let mut s = String::from("ProvedEqual");
                    for step in trace {
                        s.push_str(&format!("\n  {step}"));
                    }
                    s
                }
                Verdict::RefutedInModel {
                    model,
                    witness,
                    lhs,
                    rhs,
                } => {
                    let w: Vec<String> = witness.iter().map(|(k, v)| format!("{k} = {v}")).collect();
                    format!("RefutedInModel ({model})\n  {}\n  lhs = {lhs}\n  rhs = {rhs}", w.join("\n  "))
                }
                Verdict::Unknown {
                    explored,
                    samples_agreed,
                } => format!("Unknown ({explored} terms explored, {samples_agreed} samples agreed)"),
            });
            verdict(v.is_proved())
        }
        Cmd::Eval { term, model, bindings } => {
            let t = parse(&term)?;
            with_model!(model.as_str(), m => {
                let mut assignment = HashMap::new();
                for b in &bindings {
                    let (var, value) = b
                        .split_once('=')
                        .ok_or_else(|| usage(format!("binding `{b}` is not VAR=VALUE")))?;
                    assignment.insert(var.trim().to_string(), parse_affine(&m, value)?);
                }
                let value = evaluate(&t, &assignment, &m)?;
                out.emit(&json!({"term": t.to_string(), "model": model, "value": value.to_string()}), || value.to_string());
            });
            Ok(())
        }
    }
}
