//! Argument parsing and subcommand dispatch.

use std::ffi::OsString;
use std::io::Write;
use std::ops::RangeInclusive;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use madic_core::conjugacy;
use madic_core::contraction::{self, Answer, NucleusOutcome};
use madic_core::spinal::{self, Validity, DEFAULT_DIRECTED_CAP};
use madic_core::tree::DEFAULT_PORTRAIT_CAP;
use madic_core::{quotient, PolyspinalGroup, Word};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::CliError;
use crate::render::{self, SCHEMA};
use crate::spec::{self, GroupSpec};
use crate::word::parse_element;

#[derive(Debug, Parser)]
#[command(name = "madic", version, about = "Polyspinal groups acting on the m-adic tree")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PortraitFormat {
    Text,
    Dot,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum RefuteMode {
    Spinal,
    Multiegs,
}

/// Group arguments accept `fixture:<name>`, an inline JSON object or a
/// path to a JSON file.
#[derive(Debug, Subcommand)]
enum Command {
    /// Check the defining conditions and report directed group orders.
    Validate {
        group: String,
        /// Bound on the order of each directed group.
        #[arg(long, default_value_t = DEFAULT_DIRECTED_CAP)]
        cap: usize,
        /// Also run the sampled reducing self-test.
        #[arg(long)]
        selftest: bool,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Deepest level searched by the self-test.
        #[arg(long, default_value_t = 6)]
        depth: usize,
        /// Longest sampled word.
        #[arg(long, default_value_t = 12)]
        max_len: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Print the labels of an element on levels below `--depth`.
    Portrait {
        group: String,
        word: String,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        #[arg(long, value_enum, default_value_t = PortraitFormat::Text)]
        format: PortraitFormat,
        /// Maximum number of labels.
        #[arg(long, default_value_t = DEFAULT_PORTRAIT_CAP)]
        cap: usize,
    },
    /// Print the section of an element at a vertex such as `01`.
    Section {
        group: String,
        word: String,
        vertex: String,
    },
    /// Print the syllable form and syllable length of an element.
    Reduce { group: String, word: String },
    /// Decide whether an element is trivial (exit 0 trivial, 1 nontrivial).
    Wordproblem {
        group: String,
        word: String,
        #[arg(long)]
        trace: bool,
    },
    /// Close the generators under sections, up to `--cap` elements.
    Nucleus {
        group: String,
        #[arg(long, default_value_t = 100)]
        cap: usize,
    },
    /// Level quotient orders and orbit profiles.
    Invariants {
        group: String,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        /// Maximum number of level points.
        #[arg(long, default_value_t = quotient::DEFAULT_POINT_CAP)]
        cap: usize,
    },
    /// Decide conjugacy of two multi-GGS groups.
    DecideMggs {
        a: String,
        b: String,
        #[arg(long, default_value_t = 6)]
        verify_depth: usize,
        #[arg(long)]
        no_verify: bool,
    },
    /// Run a necessary-condition refuter.
    Refute {
        a: String,
        b: String,
        #[arg(long, value_enum, default_value_t = RefuteMode::Spinal)]
        mode: RefuteMode,
        /// Levels examined by the spinal refuter, as `lo..hi` (inclusive).
        #[arg(long, default_value = "1..4")]
        window: String,
    },
    /// Conjugacy classes of all valid multi-GGS matrices of a given shape.
    Census {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        s: usize,
        #[arg(long, default_value_t = 8)]
        verify_depth: usize,
        #[arg(long)]
        no_verify: bool,
        /// Maximum number of matrices enumerated.
        #[arg(long, default_value_t = 100_000)]
        cap: usize,
    },
}

/// Parses `args` (including the program name), writes the report to `out`
/// and diagnostics to standard error, and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn group_of(spec: &GroupSpec) -> Result<Arc<PolyspinalGroup>, CliError> {
    Ok(PolyspinalGroup::new(spec.data.clone(), DEFAULT_DIRECTED_CAP)?)
}

fn load_group(arg: &str) -> Result<Arc<PolyspinalGroup>, CliError> {
    group_of(&spec::load(arg)?)
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes()).map_err(|e| CliError::Io(e.to_string()))
}

fn emit_json(out: &mut dyn Write, value: &Value) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value)?;
    emit(out, &text)?;
    emit(out, "\n")
}

pub fn parse_window(s: &str) -> Result<RangeInclusive<usize>, CliError> {
    let bad = || CliError::Argument(format!("window {s:?} is not of the form lo..hi"));
    let (lo, hi) = s.split_once("..").ok_or_else(bad)?;
    let hi = hi.strip_prefix('=').unwrap_or(hi);
    let lo: usize = lo.trim().parse().map_err(|_| bad())?;
    let hi: usize = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok(lo..=hi)
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Validate {
            group,
            cap,
            selftest,
            samples,
            depth,
            max_len,
            seed,
            json,
        } => {
            let spec = spec::load(&group)?;
            let report = spinal::validate(&spec.data, cap)?;
            let mut code = match report.validity {
                Validity::Valid => 0,
                Validity::Invalid(_) => 1,
                Validity::Inconclusive(_) => 2,
            };
            let test = if selftest && code == 0 {
                let g = group_of(&spec)?;
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let t = contraction::reducing_selftest(&g, samples, depth, max_len, &mut rng)?;
                if !t.all_passed() {
                    code = 1;
                }
                Some(t)
            } else {
                None
            };
            if json {
                let (validity, reasons) = match &report.validity {
                    Validity::Valid => ("valid", vec![]),
                    Validity::Invalid(r) => ("invalid", r.clone()),
                    Validity::Inconclusive(r) => ("inconclusive", vec![r.clone()]),
                };
                let mut v = json!({
                    "schema": SCHEMA,
                    "validity": validity,
                    "reasons": reasons,
                    "rank": report.rank,
                    "directed_orders": report.data.iter().map(|d| d.order).collect::<Vec<_>>(),
                    "intransitive_levels": report.intransitive_levels,
                    "rooted_transitive": report.rooted_transitive,
                    "warnings": report.warnings,
                });
                if let Some(t) = &test {
                    v["selftest"] = json!({
                        "seed": seed,
                        "samples": t.samples,
                        "passed": t.passed,
                        "first_level": t.first_level.iter().map(|(k, v)| (k.to_string(), json!(v))).collect::<serde_json::Map<_, _>>(),
                        "failures": t.failures,
                    });
                }
                emit_json(out, &v)?;
            } else {
                emit(out, &format!("{report}\n"))?;
                for w in &report.warnings {
                    emit(out, &format!("warning: {w}\n"))?;
                }
                if let Some(t) = &test {
                    let levels: Vec<String> = t.first_level.iter().map(|(n, c)| format!("n={n}: {c}")).collect();
                    emit(
                        out,
                        &format!("selftest: {}/{} passed ({})\n", t.passed, t.samples, levels.join(", ")),
                    )?;
                    for f in &t.failures {
                        emit(out, &format!("failure: {f}\n"))?;
                    }
                }
            }
            Ok(code)
        }
        Command::Portrait {
            group,
            word,
            depth,
            format,
            cap,
        } => {
            let g = load_group(&group)?;
            let p = parse_element(&g, &word)?.portrait_capped(depth, cap)?;
            let text = match format {
                PortraitFormat::Text => render::portrait_text(&p),
                PortraitFormat::Dot => render::portrait_dot(&p),
            };
            emit(out, &text)?;
            Ok(0)
        }
        Command::Section { group, word, vertex } => {
            let g = load_group(&group)?;
            let v = if vertex.is_empty() || vertex == "ε" {
                Word::root()
            } else {
                Word::parse(&vertex)?
            };
            let s = parse_element(&g, &word)?.section(&v)?;
            emit(out, &format!("{}\n", s.to_word_string()))?;
            Ok(0)
        }
        Command::Reduce { group, word } => {
            let g = load_group(&group)?;
            let form = contraction::to_syllable_form(&parse_element(&g, &word)?)?;
            emit(out, &format!("{form}\nsyllable length {}\n", form.len()))?;
            Ok(0)
        }
        Command::Wordproblem { group, word, trace } => {
            let g = load_group(&group)?;
            let report = contraction::solve_word_problem(&parse_element(&g, &word)?, trace)?;
            let (answer, code) = match &report.answer {
                Answer::Trivial => ("trivial", 0),
                Answer::Nontrivial(_) => ("nontrivial", 1),
                Answer::Inconclusive(_) => ("inconclusive", 2),
            };
            let mut v = json!({
                "schema": SCHEMA,
                "word": word,
                "answer": answer,
                "depth_used": report.depth_used,
                "states": report.states,
            });
            match &report.answer {
                Answer::Nontrivial(w) => v["vertex"] = json!(render::vertex_name(w)),
                Answer::Inconclusive(r) => v["reason"] = json!(r),
                Answer::Trivial => {}
            }
            if trace {
                v["trace"] = report
                    .trace
                    .iter()
                    .map(|s| json!({ "vertex": render::vertex_name(&s.vertex), "syllables": s.syllables, "note": s.note }))
                    .collect();
            }
            emit_json(out, &v)?;
            Ok(code)
        }
        Command::Nucleus { group, cap } => {
            let g = load_group(&group)?;
            let outcome = contraction::nucleus(&g, cap)?;
            let (name, code, reason) = match &outcome {
                NucleusOutcome::Closed(_) => ("closed", 0, None),
                NucleusOutcome::ExceedsCap(_) => ("exceeds_cap", 2, None),
                NucleusOutcome::Inconclusive(r, _) => ("inconclusive", 2, Some(r.clone())),
            };
            let elements = outcome
                .elements()
                .iter()
                .map(|e| {
                    Ok(json!({
                        "word": e.to_word_string(),
                        "portrait": render::portrait_json(&e.portrait(contraction::SELFTEST_PORTRAIT_DEPTH)?),
                    }))
                })
                .collect::<Result<Vec<Value>, CliError>>()?;
            let mut v = json!({ "schema": SCHEMA, "outcome": name, "size": elements.len(), "elements": elements });
            if let Some(r) = reason {
                v["reason"] = json!(r);
            }
            emit_json(out, &v)?;
            Ok(code)
        }
        Command::Invariants { group, depth, cap } => {
            let g = load_group(&group)?;
            let m = g.degree();
            let mut levels = Vec::new();
            let mut transitive_all = true;
            for n in 1..=depth {
                let gens = quotient::level_generators(&g, n, cap)?;
                let orbits = quotient::orbit_sizes(&gens, m.pow(n as u32));
                let order = quotient::permutation_group_order(&gens);
                transitive_all &= orbits.len() == 1;
                levels.push(json!({
                    "level": n,
                    "order": order.to_string(),
                    "orbits": orbits,
                    "transitive": orbits.len() == 1,
                }));
            }
            emit_json(
                out,
                &json!({ "schema": SCHEMA, "levels": levels, "spherically_transitive": transitive_all }),
            )?;
            Ok(0)
        }
        Command::DecideMggs {
            a,
            b,
            verify_depth,
            no_verify,
        } => {
            let a = spec::load(&a)?.as_multi_ggs()?;
            let b = spec::load(&b)?.as_multi_ggs()?;
            let verdict = conjugacy::decide_multi_ggs(&a, &b, (!no_verify).then_some(verify_depth))?;
            emit_json(out, &render::verdict_json(&verdict))?;
            Ok(render::verdict_exit(&verdict))
        }
        Command::Refute { a, b, mode, window } => {
            let a = spec::load(&a)?;
            let b = spec::load(&b)?;
            let verdict = match mode {
                RefuteMode::Spinal => conjugacy::refute_spinal_necessary(&a.data, &b.data, parse_window(&window)?)?,
                RefuteMode::Multiegs => conjugacy::refute_multi_egs_necessary(&a.data, &b.data)?,
            };
            emit_json(out, &render::verdict_json(&verdict))?;
            Ok(render::verdict_exit(&verdict))
        }
        Command::Census {
            m,
            s,
            verify_depth,
            no_verify,
            cap,
        } => {
            let classes = conjugacy::census(m, s, (!no_verify).then_some(verify_depth), cap)?;
            let valid: usize = classes.iter().map(|c| c.members.len()).sum();
            let classes: Vec<Value> = classes
                .iter()
                .map(|c| {
                    let members: Vec<Value> = c
                        .members
                        .iter()
                        .map(|(d, w)| {
                            let mut v = json!({ "E": spec::matrix_rows(d) });
                            if let Some(w) = w {
                                v["witness"] = render::witness_json(w);
                            }
                            v
                        })
                        .collect();
                    json!({ "size": members.len(), "members": members })
                })
                .collect();
            emit_json(
                out,
                &json!({ "schema": SCHEMA, "m": m, "s": s, "valid": valid, "class_count": classes.len(), "classes": classes }),
            )?;
            Ok(0)
        }
    }
}
