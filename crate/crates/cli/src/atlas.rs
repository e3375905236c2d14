use clap::{Subcommand, ValueEnum};
use moufang_toric::atlas::{
    build_blowup_x1, build_from_lifting, build_hirzebruch, build_p1, build_p2, check_cocycles, enumerate_points, Atlas,
    CocycleMode, Spanning,
};
use moufang_toric::lifting::NiceCycle;
use moufang_toric::loops::parse_affine;
use moufang_toric::toric::{is_fulton_cycle, partial_product, FultonCycle};
use serde_json::json;

use crate::output::{usage, verdict, with_model, CmdResult, Failure, Out};

#[derive(Subcommand)]
pub enum Cmd {
    /// Print the atlas.
    Build {
        /// p1 | p2 | x1 | hirzebruch:A | lifting:FILE
        #[arg(long = "type", allow_hyphen_values = true)]
        kind: String,
    },
    /// Verify φ_ik = φ_jk∘φ_ij on every triple; exits 1 on failure.
    Cocycle {
        #[arg(long = "type", allow_hyphen_values = true)]
        kind: String,
        #[arg(long, value_enum, default_value_t = Mode::Symbolic)]
        mode: Mode,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value = "oct-rational")]
        model: String,
    },
    /// Count glued points over a finite model.
    Count {
        #[arg(long = "type", allow_hyphen_values = true)]
        kind: String,
        #[arg(long, default_value = "finite16")]
        model: String,
        /// Glue along φ_ij with i < j only.
        #[arg(long)]
        forward_only: bool,
    },
    /// Move a point from chart `--from` to chart `--to`.
    Transit {
        #[arg(long = "type", allow_hyphen_values = true)]
        kind: String,
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
        /// One per coordinate; `0` is the zero of A(L).
        #[arg(long = "coord", required = true, allow_hyphen_values = true)]
        coords: Vec<String>,
        #[arg(long, default_value = "finite16")]
        model: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Mode {
    Symbolic,
    Sampled,
}

fn load_lifting(path: &str) -> Result<NiceCycle, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{path}: {e}")))?;
    // accept a single record or the first line of json-lines output
    let first = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("");
    let nice: NiceCycle = serde_json::from_str(text.trim())
        .or_else(|_| serde_json::from_str(first))
        .map_err(|e| usage(format!("{path}: not a nice-cycle record: {e}")))?;
    if nice.a.len() != nice.n || !is_fulton_cycle(&nice.a)? {
        return Err(usage(format!("{path}: `a` is not a Fulton cycle of length n")));
    }
    let c = FultonCycle::new(nice.a.clone())?;
    for arc in &nice.arcs {
        if arc.i >= nice.n || arc.j >= nice.n || arc.map.matrix() != partial_product(&c, arc.i, arc.j) {
            return Err(usage(format!("{path}: arc ({}, {}) does not match the cycle", arc.i, arc.j)));
        }
    }
    Ok(nice)
}

pub fn parse_spec(spec: &str) -> Result<Atlas, Failure> {
    let (head, arg) = match spec.split_once(':') {
        Some((h, a)) => (h, Some(a)),
        None => (spec, None),
    };
    match (head, arg) {
        ("p1", None) => Ok(build_p1()),
        ("p2", None) => Ok(build_p2()),
        ("x1", None) => Ok(build_blowup_x1()),
        ("hirzebruch", Some(a)) => {
            let a: i64 = a.trim().parse().map_err(|_| usage(format!("bad parameter in `{spec}`")))?;
            if a <= 0 {
                eprintln!("note: hirzebruch:{a} is outside a > 0; building it anyway");
            }
            Ok(build_hirzebruch(a))
        }
        ("lifting", Some(path)) => Ok(build_from_lifting(&load_lifting(path)?)),
        _ => Err(usage(format!(
            "unknown atlas `{spec}` (expected p1, p2, x1, hirzebruch:A or lifting:FILE)"
        ))),
    }
}

pub fn run(out: &Out, cmd: Cmd) -> CmdResult {
    match cmd {
        Cmd::Build { kind } => {
            let at = parse_spec(&kind)?;
            out.emit(&at, || at.to_string().trim_end().to_string());
            Ok(())
        }
        Cmd::Cocycle {
            kind,
            mode,
            samples,
            model,
        } => {
            let at = parse_spec(&kind)?;
            let mode = match mode {
                Mode::Symbolic => CocycleMode::Symbolic,
                Mode::Sampled => CocycleMode::Sampled,
            };
            let report = with_model!(model.as_str(), m => check_cocycles(&at, mode, &m, samples, out.seed));
            for t in &report.triples {
                out.emit(t, || {
                    let mut s = format!(
                        "({},{},{}) {}  {}",
                        t.i,
                        t.j,
                        t.k,
                        if t.passed { "ok" } else { "FAIL" },
                        t.evidence
                    );
                    if let Some(w) = &t.witness {
                        s.push_str(&format!("\n    witness: {w}"));
                    }
                    s
                });
            }
            if !out.json {
                println!("{}: {} triples, {}", report.atlas, report.triples.len(), if report.passed() { "all verified" } else { "FAILED" });
            }
            verdict(report.passed())
        }
        Cmd::Count {
            kind,
            model,
            forward_only,
        } => {
            let at = parse_spec(&kind)?;
            let spanning = if forward_only { Spanning::Forward } else { Spanning::All };
            let census = with_model!(model.as_str(), m => enumerate_points(&at, &m, spanning)?);
            out.emit(&census, || {
                let mut s = format!("{}  (cells by first chart: {:?})", census.total, census.cells);
                if let Some(c) = &census.collision {
                    s.push_str(&format!("\ninconsistent gluing: {c}"));
                }
                s
            });
            verdict(census.consistent)
        }
        Cmd::Transit {
            kind,
            from,
            to,
            coords,
            model,
        } => {
            let at = parse_spec(&kind)?;
            with_model!(model.as_str(), m => {
                let pt = coords.iter().map(|c| parse_affine(&m, c)).collect::<Result<Vec<_>, _>>()?;
                let image = at.transition(from, to, &pt, &m)?;
                let shown: Vec<String> = image.iter().map(ToString::to_string).collect();
                out.emit(&json!({"from": from, "to": to, "point": coords, "image": shown}), || shown.join(" ; "));
            });
            Ok(())
        }
    }
}
