// SPDX-License-Identifier: Apache-2.0

//! Command-line surface. Every report embeds the manifest that produced it.
//!
//! Config flags fall back to environment variables (`LOPSIDED_FUEL`,
//! `LOPSIDED_ROUNDS`, `LOPSIDED_WINDOW`, `LOPSIDED_ORDER`, `LOPSIDED_SEED`,
//! `LOPSIDED_FORMAT`) and then to built-in defaults; an explicit flag
//! always wins.

use std::collections::BTreeMap;
use std::io::Write;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::baire::{Nat, Point};
use crate::borel::catalog::pair as catalog_pair;
use crate::borel::{compile_to_sentence, exact_oracle, member, CatalogSet, DeltaPrimePair, Verdict};
use crate::dsl::{parse_code, parse_point, parse_sentence, parse_sexpr, print_code, Reader, SpecText};
use crate::error::{Error, Result};
use crate::game::{adjudicate, diagonalize, run_game, Bob, GameConfig, GameMode};
use crate::guessing::{
    heuristic, heuristics, prefix_to_sentence_guesser, sentence_to_prefix_guesser, synthesize_mu_nu,
    unify_family, BitGuesser, FiniteStateGuesser, NatGuesser, SynthesisSpec,
};
use crate::logic::{evaluate_sentence, Signature, Truth};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_UNDECIDED: i32 = 2;
pub const EXIT_PARSE: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Debug, Args, Serialize)]
pub struct Config {
    /// Evaluator fuel.
    #[arg(long, global = true, env = "LOPSIDED_FUEL", default_value_t = 1000)]
    pub fuel: usize,
    /// Game horizon.
    #[arg(long, global = true, env = "LOPSIDED_ROUNDS", default_value_t = 1000)]
    pub rounds: usize,
    /// Stabilization window.
    #[arg(long, global = true, env = "LOPSIDED_WINDOW", default_value_t = 100)]
    pub window: usize,
    /// Order m: Δ′ pairs for Δ⁰ₘ₊₁ sets.
    #[arg(long, global = true, env = "LOPSIDED_ORDER", default_value_t = 1)]
    pub order: usize,
    #[arg(long, global = true, env = "LOPSIDED_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, env = "LOPSIDED_FORMAT", value_enum, default_value_t = Format::Json)]
    #[serde(skip)]
    pub format: Format,
}

#[derive(Debug, Parser)]
#[command(name = "lopsided", version, about = "Guessers and the guessing game over Baire space")]
pub struct Cli {
    #[command(flatten)]
    pub config: Config,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a sentence on a point.
    Eval {
        #[arg(long)]
        sentence: String,
        #[arg(long)]
        point: String,
    },
    /// Build the μ/ν guesser for a Δ′ spec and optionally run it on a point.
    Synthesize {
        /// Catalog shorthand (`exactly-zeros-1`), `(catalog …)` or `(spec …)`.
        #[arg(long)]
        spec: String,
        #[arg(long)]
        point: Option<String>,
        /// Listing sentences to print.
        #[arg(long, default_value_t = 16)]
        show: usize,
    },
    /// Play the guessing game.
    Play {
        /// Set Bob is guessing; supplies ground truth.
        #[arg(long)]
        spec: String,
        #[arg(long)]
        point: String,
        /// A bundled heuristic for the prefix game; without it the
        /// synthesized guesser plays the fact game.
        #[arg(long)]
        guesser: Option<String>,
        /// Write the JSON-lines trace here.
        #[arg(long)]
        trace: Option<std::path::PathBuf>,
    },
    /// Translate seeded finite-state guessers to fact guessers and back.
    Roundtrip {
        #[arg(long, default_value_t = 20)]
        machines: usize,
        #[arg(long, default_value_t = 100)]
        points: usize,
    },
    /// One family for both normal forms of a catalog set.
    Unify {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        point: Vec<String>,
    },
    /// Compile a code in normal form to a sentence.
    Compile {
        #[arg(long)]
        code: String,
        #[arg(long)]
        point: Option<String>,
    },
    /// Force flips out of a bundled heuristic.
    Adversary {
        #[arg(long)]
        guesser: String,
        #[arg(long, default_value = "eventually-zero")]
        target: String,
    },
}

/// What produced a report.
#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub config: ManifestConfig,
    pub version: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ManifestConfig {
    pub fuel: usize,
    pub rounds: usize,
    pub window: usize,
    pub order: usize,
    pub listing: String,
    pub seed: u64,
}

fn manifest(cmd: &Command, cfg: &Config, listing: &str) -> RunManifest {
    let mut inputs = BTreeMap::new();
    let mut put = |k: &str, v: &str| {
        inputs.insert(k.to_string(), v.to_string());
    };
    let name = match cmd {
        Command::Eval { sentence, point } => {
            put("sentence", sentence);
            put("point", point);
            "eval"
        }
        Command::Synthesize { spec, point, show } => {
            put("spec", spec);
            if let Some(p) = point {
                put("point", p);
            }
            put("show", &show.to_string());
            "synthesize"
        }
        Command::Play {
            spec,
            point,
            guesser,
            ..
        } => {
            put("spec", spec);
            put("point", point);
            if let Some(g) = guesser {
                put("guesser", g);
            }
            "play"
        }
        Command::Roundtrip { machines, points } => {
            put("machines", &machines.to_string());
            put("points", &points.to_string());
            "roundtrip"
        }
        Command::Unify { spec, point } => {
            put("spec", spec);
            put("points", &point.join(" "));
            "unify"
        }
        Command::Compile { code, point } => {
            put("code", code);
            if let Some(p) = point {
                put("point", p);
            }
            "compile"
        }
        Command::Adversary { guesser, target } => {
            put("guesser", guesser);
            put("target", target);
            "adversary"
        }
    };
    RunManifest {
        command: name.to_string(),
        inputs,
        config: ManifestConfig {
            fuel: cfg.fuel,
            rounds: cfg.rounds,
            window: cfg.window,
            order: cfg.order,
            listing: listing.to_string(),
            seed: cfg.seed,
        },
        version: env!("CARGO_PKG_VERSION").to_string(),
    }
}

/// `exactly-zeros-1` style shorthand, or DSL text.
pub fn parse_catalog_arg(text: &str) -> Result<CatalogSet> {
    let t = text.trim();
    if t.starts_with('(') {
        return Reader::default().catalog(&parse_sexpr(t)?);
    }
    let (name, num) = match t.rsplit_once('-') {
        Some((n, k)) if k.chars().all(|c| c.is_ascii_digit()) && !k.is_empty() => {
            (n, Some(k.parse::<Nat>().map_err(|e| Error::parse(1, 1, e.to_string()))?))
        }
        _ => (t, None),
    };
    CatalogSet::from_name(name, num, None).map_err(|e| Error::parse(1, 1, e.to_string()))
}

/// A catalog set or an explicit spec, with its Δ′ pair at `level`.
fn synthesis_input(sig: &Signature, text: &str, level: usize) -> Result<(Option<CatalogSet>, SynthesisSpec)> {
    let t = text.trim();
    if t.starts_with("(spec") {
        let spec: SpecText = Reader::new(sig).spec(&parse_sexpr(t)?)?;
        return Ok((None, spec.resolve(sig)?));
    }
    let set = parse_catalog_arg(t)?;
    let d = catalog_pair(&set)?;
    let d = if level == d.level {
        d
    } else {
        crate::borel::delta_to_delta_prime(&d.union_form, &d.intersection_form, level)?
    };
    Ok((Some(set), SynthesisSpec::new(d)))
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::In => "in",
        Verdict::Out => "out",
        Verdict::Unknown => "unknown",
    }
}

/// A command's report and exit code.
pub struct Outcome {
    pub report: Value,
    pub text: String,
    pub code: i32,
}

fn ok(report: Value, text: String) -> Result<Outcome> {
    Ok(Outcome {
        report,
        text,
        code: EXIT_OK,
    })
}

fn level_of(cfg: &Config) -> Result<usize> {
    match cfg.order {
        1 | 2 => Ok(cfg.order + 1),
        m => Err(Error::Guessing(format!("order {m} is outside the supported range 1..=2"))),
    }
}

pub fn execute(cli: &Cli) -> Result<(RunManifest, Outcome)> {
    let cfg = &cli.config;
    let mut sig = Signature::standard();
    let mut listing = "none".to_string();
    let outcome = match &cli.command {
        Command::Eval { sentence, point } => {
            let s = parse_sentence(&sig, sentence)?;
            let p = parse_point(point)?;
            let t = evaluate_sentence(&sig, &s, &p, cfg.fuel)?;
            let name = format!("{t:?}");
            Outcome {
                report: json!({ "sentence": s.to_string(), "point": p.to_string(), "truth": name }),
                text: name,
                code: if t == Truth::Unknown { EXIT_UNDECIDED } else { EXIT_OK },
            }
        }
        Command::Synthesize { spec, point, show } => {
            let (set, spec) = synthesis_input(&sig, spec, level_of(cfg)?)?;
            let g = synthesize_mu_nu(Arc::new(sig.clone()), &spec)?;
            listing = g.listing().kind_name().to_string();
            let sentences: Vec<String> = (0..*show).map(|i| g.listing().sentence(i).to_string()).collect();
            let mut report = json!({
                "level": spec.pair.level,
                "union": print_code(&spec.pair.union_form).ok(),
                "inter": print_code(&spec.pair.intersection_form).ok(),
                "listing": sentences,
            });
            let mut text = format!("mu-nu guesser over level {} pair", spec.pair.level);
            let mut code = EXIT_OK;
            if let Some(p) = point {
                let p = parse_point(p)?;
                match g.tail_certificate(g.listing(), &p)? {
                    Some((round, value)) => {
                        report["certificate"] = json!({ "round": round, "limit": u8::from(value) });
                        text += &format!("\nlimit {} from fact {round}", u8::from(value));
                    }
                    None => {
                        report["certificate"] = Value::Null;
                        text += "\nno certified limit";
                        code = EXIT_UNDECIDED;
                    }
                }
                if let Some(set) = &set {
                    report["oracle"] = json!(u8::from(exact_oracle(set, &p)));
                }
            }
            Outcome { report, text, code }
        }
        Command::Play {
            spec,
            point,
            guesser,
            trace,
        } => {
            let set = parse_catalog_arg(spec)?;
            let p = parse_point(point)?;
            let truth = exact_oracle(&set, &p);
            let (bob, mode) = match guesser {
                Some(name) => {
                    let h = heuristic(name).ok_or_else(|| Error::Guessing(format!("no bundled guesser `{name}`")))?;
                    listing = "moves".into();
                    (Bob::Moves(h), GameMode::Prefix)
                }
                None => {
                    let (_, spec) = synthesis_input(&sig, spec, level_of(cfg)?)?;
                    let g = synthesize_mu_nu(Arc::new(sig.clone()), &spec)?;
                    listing = g.listing().kind_name().to_string();
                    let l = Arc::clone(g.listing());
                    (Bob::Facts(g), GameMode::Fact(l))
                }
            };
            let gc = GameConfig::new(mode, cfg.rounds, cfg.window, cfg.fuel)?;
            let t = run_game(&p, &bob, &gc)?;
            let verdict = adjudicate(&t, truth);
            if let Some(path) = trace {
                std::fs::write(path, t.to_json_lines(Some(verdict)))
                    .map_err(|e| Error::Guessing(format!("writing trace: {e}")))?;
            }
            Outcome {
                report: json!({
                    "bob": bob.name(),
                    "truth": u8::from(truth),
                    "flips": t.flips,
                    "stabilizationIndex": t.stabilization_index,
                    "finalGuess": t.final_guess,
                    "verdict": verdict,
                    "aborted": t.aborted,
                    "note": "stabilization means a constant trailing run of at least `window` rounds",
                }),
                text: verdict.to_string(),
                code: if t.aborted.is_some() { EXIT_UNDECIDED } else { EXIT_OK },
            }
        }
        Command::Roundtrip { machines, points } => {
            listing = "atoms".into();
            let report = roundtrip(&sig, cfg.seed, *machines, *points, cfg.rounds)?;
            let text = format!("{}/{} limits preserved", report["agree"], report["total"]);
            ok(report, text)?
        }
        Command::Unify { spec, point } => {
            let set = parse_catalog_arg(spec)?;
            let d: DeltaPrimePair = catalog_pair(&set)?;
            let u = unify_family(Arc::new(sig.clone()), &d.union_form, &d.intersection_form, level_of(cfg)?)?;
            listing = u.guesser.listing().kind_name().to_string();
            let mut rows = Vec::new();
            for text in point {
                let p = parse_point(text)?;
                let a = member(&sig, &u.z.union_form, &p, cfg.fuel)?;
                let b = member(&sig, &u.z.intersection_form, &p, cfg.fuel)?;
                rows.push(json!({
                    "point": p.to_string(),
                    "oracle": u8::from(exact_oracle(&set, &p)),
                    "unionForm": verdict_name(a),
                    "intersectionForm": verdict_name(b),
                }));
            }
            let text = format!("{} points checked", rows.len());
            ok(json!({ "set": set.to_string(), "points": rows }), text)?
        }
        Command::Compile { code, point } => {
            let c = parse_code(&sig, code)?;
            let out = compile_to_sentence(&mut sig, &c)?;
            let mut report = json!({ "sentence": out.sentence.to_string(), "tau": out.tau, "ell": out.ell });
            let mut text = out.sentence.to_string();
            let mut exit = EXIT_OK;
            if let Some(p) = point {
                let p = parse_point(p)?;
                let t = evaluate_sentence(&sig, &out.sentence, &p, cfg.fuel)?;
                report["truth"] = json!(format!("{t:?}"));
                text += &format!("\n{t:?}");
                if t == Truth::Unknown {
                    exit = EXIT_UNDECIDED;
                }
            }
            Outcome {
                report,
                text,
                code: exit,
            }
        }
        Command::Adversary { guesser, target } => {
            let h = heuristic(guesser).ok_or_else(|| {
                let names: Vec<String> = heuristics().iter().map(|h| h.name()).collect();
                Error::Guessing(format!("no bundled guesser `{guesser}`; known: {}", names.join(", ")))
            })?;
            let target = parse_catalog_arg(target)?;
            listing = "moves".into();
            let r = diagonalize(h.as_ref(), &target, cfg.fuel)?;
            let text = format!("{} flips in {} moves", r.flips, r.fuel_spent);
            ok(serde_json::to_value(&r).expect("plain data serializes"), text)?
        }
    };
    Ok((manifest(&cli.command, cfg, &listing), outcome))
}

/// Seeded finite-state machines translated move→fact→move; agreement of
/// exact limits against the replayed translation at `horizon` moves.
fn roundtrip(sig: &Signature, seed: u64, machines: usize, points: usize, horizon: usize) -> Result<Value> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let corpus: Vec<Point> = (0..points)
        .map(|_| {
            let pre = (0..rng.gen_range(0..=4)).map(|_| rng.gen_range(0..=3)).collect();
            let per = (0..rng.gen_range(1..=3)).map(|_| rng.gen_range(0..=3)).collect();
            Point::new(pre, per).expect("nonempty period")
        })
        .collect();
    let sig = Arc::new(sig.clone());
    let (mut agree, mut total) = (0, 0);
    for m in 0..machines {
        let g0 = Arc::new(FiniteStateGuesser::random(&format!("fs{m}"), &mut rng, 4, 4));
        let (fwd, listing) = prefix_to_sentence_guesser(Arc::clone(&sig), g0.clone());
        let back = sentence_to_prefix_guesser(fwd, listing);
        for p in &corpus {
            let moves: Vec<Nat> = (0..horizon).map(|i| p.at(i)).collect();
            let mut s = back.session();
            let guesses: Vec<bool> = moves.iter().map(|&v| s.push(v)).collect();
            let tail = &guesses[horizon - horizon / 10..];
            let observed = tail.iter().all(|&b| b == tail[0]).then(|| tail[0]);
            total += 1;
            if observed == g0.limit_on(p) {
                agree += 1;
            }
        }
    }
    Ok(json!({ "agree": agree, "total": total, "horizon": horizon }))
}

/// Runs the CLI on `args`, writing the report to `out`; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(out, "{e}");
            return if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok((m, o)) => {
            let _ = match cli.config.format {
                Format::Json => writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&json!({ "manifest": m, "report": o.report }))
                        .expect("plain data serializes")
                ),
                Format::Text => writeln!(out, "{}", o.text),
            };
            o.code
        }
        Err(e) => {
            let _ = writeln!(out, "error ({}): {e}", e.origin());
            match e {
                Error::Parse { .. } => EXIT_PARSE,
                Error::Undecided(_) => EXIT_UNDECIDED,
                _ => EXIT_FAILURE,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_text(args: &[&str]) -> (i32, String) {
        let mut out = Vec::new();
        let code = run(std::iter::once("lopsided").chain(args.iter().copied()), &mut out);
        (code, String::from_utf8(out).unwrap())
    }

    #[test]
    fn eval_surjection_is_false() {
        let (code, out) = run_text(&[
            "eval",
            "--sentence",
            "(forall x (exists y (= (f y) x)))",
            "--point",
            "(point :per (0))",
            "--format",
            "text",
        ]);
        assert_eq!((code, out.trim()), (0, "False"));
    }

    #[test]
    fn play_exactly_one_zero() {
        let (code, out) = run_text(&[
            "play",
            "--spec",
            "exactly-zeros-1",
            "--point",
            "(point :pre (0) :per (7))",
            "--rounds",
            "1000",
            "--format",
            "text",
        ]);
        assert_eq!((code, out.trim()), (0, "CONSISTENT-WIN-BOB"));
    }

    #[test]
    fn adversary_last_is_zero() {
        let (code, out) = run_text(&["adversary", "--guesser", "last-is-zero", "--fuel", "1000"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert!(v["report"]["flips"].as_u64().unwrap() >= 10);
        assert_eq!(v["manifest"]["command"], "adversary");
        assert_eq!(v["manifest"]["config"]["fuel"], 1000);
    }

    #[test]
    fn exit_codes() {
        let (code, out) = run_text(&["eval", "--sentence", "(exists x", "--point", "(point :per (0))"]);
        assert_eq!(code, EXIT_PARSE, "{out}");
        let (code, _) = run_text(&[
            "eval",
            "--sentence",
            "(exists x (= (:fun add (f x) x) 1000000))",
            "--point",
            "(point :per (0))",
            "--fuel",
            "50",
        ]);
        assert_eq!(code, EXIT_UNDECIDED);
    }

    #[test]
    fn reports_replay_identically() {
        let args = ["roundtrip", "--machines", "2", "--points", "5", "--rounds", "300", "--seed", "9"];
        assert_eq!(run_text(&args), run_text(&args));
    }
}
