//! The `chern` command line.
//!
//! [`run`] parses arguments, reads inputs, and writes results to the given
//! streams, returning the process exit code: 0 on success, 1 for invalid
//! input, 2 for I/O failures.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use chern_core::{
    bundle_from_word, chern_number, curv, cyclic_shift_bundle, find_zero_nonpalindromes, glue, ind, survey,
    word_from_bundle, word_from_s_bundle, Alphabet, BundleJson, ChernError, ElementaryBundle, FiberKind,
    Rational, SBundleJson, Word, WordJson,
};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Parser)]
#[command(name = "chern", version, about = "Curvature of cyclic words and Chern numbers of circle bundles")]
struct Cli {
    /// Emit JSON instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    /// Write the result to a file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct WordArgs {
    /// Alphabet order, highest character first. Defaults to the word's
    /// characters in sorted order.
    #[arg(long)]
    alphabet: Option<String>,
    /// The word; read from standard input when omitted.
    word: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Index of a 2-character word.
    Ind(WordArgs),
    /// Curvature of a 3-character word.
    Curv(WordArgs),
    /// Delete every occurrence of the character of rank INDEX.
    Delta {
        #[arg(long)]
        alphabet: Option<String>,
        /// WORD INDEX, or just INDEX with the word on standard input.
        #[arg(num_args = 1..=2, value_names = ["WORD", "INDEX"], required = true)]
        args: Vec<String>,
    },
    /// Interval bundle (or circle bundle with --circle) of a word, as JSON.
    WordToBundle {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long)]
        circle: bool,
    },
    /// Shelling word of an interval bundle or cyclic word of a circle bundle.
    BundleToWord {
        /// Alphabet used to print ranks; defaults to a, b, c, ...
        #[arg(long)]
        alphabet: Option<String>,
        /// Bundle JSON file; standard input when omitted or "-".
        file: Option<PathBuf>,
    },
    /// Glue the ends of an interval bundle into a circle bundle.
    Glue { file: Option<PathBuf> },
    /// Move the first letter of a word to the end, or with --bundle the first
    /// cell of an interval bundle to the top.
    Shift {
        #[arg(long)]
        alphabet: Option<String>,
        /// Treat the input as a bundle JSON file.
        #[arg(long)]
        bundle: bool,
        input: Option<String>,
    },
    /// Chern number of a triangulated circle bundle over a closed surface.
    Chern { file: Option<PathBuf> },
    /// Curvature statistics over all rotation classes of 3-character words.
    Survey {
        #[arg(long, default_value_t = 3)]
        min: usize,
        #[arg(long)]
        max: usize,
    },
    /// Zero-curvature rotation classes that are not cyclic palindromes.
    PalindromeScan {
        #[arg(long)]
        max: usize,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{message}")]
    Invalid { kind: &'static str, message: String, details: Option<Value> },
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    fn invalid(kind: &'static str, message: impl ToString) -> Self {
        CliError::Invalid { kind, message: message.to_string(), details: None }
    }

    fn io(path: impl AsRef<Path>, source: std::io::Error) -> Self {
        CliError::Io { path: path.as_ref().display().to_string(), source }
    }

    fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid { .. } => 1,
            CliError::Io { .. } => 2,
        }
    }

    fn to_json(&self) -> Value {
        match self {
            CliError::Invalid { kind, message, details } => {
                json!({"error": {"kind": kind, "message": message, "details": details}})
            }
            CliError::Io { path, source } => {
                json!({"error": {"kind": "io", "message": source.to_string(), "details": {"path": path}}})
            }
        }
    }
}

impl From<ChernError> for CliError {
    fn from(e: ChernError) -> Self {
        let details = match &e {
            ChernError::InvalidCycle(report) => serde_json::to_value(report).ok(),
            _ => None,
        };
        CliError::Invalid { kind: "surface", message: e.to_string(), details }
    }
}

/// What a command produced: the main output plus warnings for stderr.
struct Output {
    text: String,
    warnings: Vec<String>,
}

impl Output {
    fn new(text: impl Into<String>) -> Self {
        Output { text: text.into(), warnings: Vec::new() }
    }
}

struct Context<'a> {
    json: bool,
    output: Option<PathBuf>,
    stdin: &'a mut dyn Read,
    out: &'a mut dyn Write,
}

/// Runs the command line `args` (program name first).
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    1
                }
            };
        }
    };
    let json = cli.json;
    let mut ctx = Context { json, output: cli.output, stdin, out };
    let result = dispatch(cli.command, &mut ctx).and_then(|o| {
        for w in &o.warnings {
            let _ = writeln!(err, "warning: {w}");
        }
        emit(&mut ctx, &o.text)
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            if json {
                let _ = writeln!(err, "{}", e.to_json());
            } else {
                let _ = writeln!(err, "error: {e}");
                if let CliError::Invalid { details: Some(d), .. } = &e {
                    let _ = writeln!(err, "{}", serde_json::to_string_pretty(d).unwrap_or_default());
                }
            }
            e.exit_code()
        }
    }
}

fn emit(ctx: &mut Context<'_>, text: &str) -> Result<(), CliError> {
    match &ctx.output {
        Some(path) => fs::write(path, format!("{text}\n")).map_err(|e| CliError::io(path, e)),
        None => writeln!(ctx.out, "{text}").map_err(|e| CliError::io("<stdout>", e)),
    }
}

fn dispatch(command: Command, ctx: &mut Context<'_>) -> Result<Output, CliError> {
    match command {
        Command::Ind(a) => evaluate(ctx, a, 2, |w| ind(w).map_err(|e| CliError::invalid("word", e))),
        Command::Curv(a) => evaluate(ctx, a, 3, |w| curv(w).map_err(|e| CliError::invalid("word", e))),
        Command::Delta { alphabet, args } => {
            let (word, index) = match args.as_slice() {
                [word, index] => (word.clone(), index),
                [index] => (read_stdin(ctx)?, index),
                _ => unreachable!("clap enforces one or two values"),
            };
            let index: usize =
                index.parse().map_err(|_| CliError::invalid("usage", format!("invalid index {index:?}")))?;
            let (w, alphabet) = parse_word(&word, alphabet.as_deref())?;
            if index >= alphabet.len() {
                return Err(CliError::invalid(
                    "usage",
                    format!("index {index} out of range for an alphabet of {} characters", alphabet.len()),
                ));
            }
            render_word(ctx, &w.delta(index), &alphabet.without(index))
        }
        Command::WordToBundle { word, circle } => {
            let text = word_or_stdin(ctx, word.word)?;
            let (w, _) = parse_word(&text, word.alphabet.as_deref())?;
            let mut b = bundle_from_word(&w).map_err(|e| CliError::invalid("word", e))?;
            let mut warnings = Vec::new();
            if circle {
                b = glue(&b).map_err(|e| CliError::invalid("bundle", e))?;
                warnings.extend(small_fiber_warning(&b));
            }
            Ok(Output { text: bundle_text(&b), warnings })
        }
        Command::BundleToWord { alphabet, file } => {
            let b = read_bundle(ctx, file.as_deref())?;
            let (w, cyclic) = match b.kind() {
                FiberKind::Interval => (word_from_bundle(&b), false),
                FiberKind::Circle => (word_from_s_bundle(&b).map(|cw| cw.into_rep()), true),
            };
            let w = w.map_err(|e| CliError::invalid("bundle", e))?;
            let alphabet = match alphabet {
                Some(a) => Alphabet::new(&a).map_err(|e| CliError::invalid("alphabet", e))?,
                None => Alphabet::latin(w.alphabet_size()),
            };
            let rendered = alphabet.render(&w).map_err(|e| CliError::invalid("alphabet", e))?;
            if ctx.json {
                Ok(Output::new(to_json(
                    &json!({"alphabet": alphabet.to_string(), "word": rendered, "cyclic": cyclic}),
                )))
            } else {
                Ok(Output::new(rendered))
            }
        }
        Command::Glue { file } => {
            let b = read_bundle(ctx, file.as_deref())?;
            let s = glue(&b).map_err(|e| CliError::invalid("bundle", e))?;
            Ok(Output { text: bundle_text(&s), warnings: small_fiber_warning(&s).into_iter().collect() })
        }
        Command::Shift { alphabet, bundle, input } => {
            if bundle {
                let b = read_bundle(ctx, input.as_deref().map(Path::new))?;
                let s = cyclic_shift_bundle(&b).map_err(|e| CliError::invalid("bundle", e))?;
                return Ok(Output::new(bundle_text(&s)));
            }
            let text = word_or_stdin(ctx, input)?;
            let (w, alphabet) = parse_word(&text, alphabet.as_deref())?;
            render_word(ctx, &w.cyclic_shift(), &alphabet)
        }
        Command::Chern { file } => {
            let text = read_input(ctx, file.as_deref())?;
            let parsed: SBundleJson = serde_json::from_str(&text)
                .map_err(|e| CliError::invalid("json", format!("surface file: {e}")))?;
            let tb = parsed.to_bundle()?;
            let c = chern_number(&tb)?;
            if ctx.json {
                Ok(Output::new(to_json(&json!({"chern": c, "triangles": tb.triangles().len()}))))
            } else {
                Ok(Output::new(c.to_string()))
            }
        }
        Command::Survey { min, max } => {
            if min < 3 || min > max {
                return Err(CliError::invalid("usage", "survey needs 3 <= --min <= --max"));
            }
            let report = survey(min, max);
            let json_text = report.to_json_pretty();
            if let Some(path) = ctx.output.take() {
                fs::write(&path, format!("{json_text}\n")).map_err(|e| CliError::io(&path, e))?;
            }
            let table = report.to_table();
            Ok(Output::new(if ctx.json { json_text } else { table.trim_end().to_string() }))
        }
        Command::PalindromeScan { max } => {
            if max < 3 {
                return Err(CliError::invalid("usage", "--max must be at least 3"));
            }
            let found: Vec<String> =
                find_zero_nonpalindromes(max).iter().map(|cw| cw.rep().to_latin()).collect();
            if ctx.json {
                Ok(Output::new(to_json(&json!({"max_length": max, "words": found}))))
            } else if found.is_empty() {
                Ok(Output::new(format!("no zero-curvature non-palindromes up to length {max}")))
            } else {
                Ok(Output::new(found.join("\n")))
            }
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("output serializes")
}

fn bundle_text(b: &ElementaryBundle) -> String {
    serde_json::to_string_pretty(&b.to_json()).expect("bundle serializes")
}

fn small_fiber_warning(b: &ElementaryBundle) -> Option<String> {
    let small = b.small_fibers();
    (!small.is_empty()).then(|| {
        format!("fibers over base vertices {small:?} are too small for a simplicial total space; it is a cell complex")
    })
}

fn evaluate(
    ctx: &mut Context<'_>,
    a: WordArgs,
    size: usize,
    f: impl Fn(&Word) -> Result<Rational, CliError>,
) -> Result<Output, CliError> {
    let text = word_or_stdin(ctx, a.word)?;
    let (w, alphabet) = parse_word(&text, a.alphabet.as_deref())?;
    if alphabet.len() != size {
        return Err(CliError::invalid(
            "alphabet",
            format!("expected an alphabet of {size} characters, found {:?}", alphabet.to_string()),
        ));
    }
    let value = f(&w)?;
    if ctx.json {
        Ok(Output::new(to_json(&json!({"alphabet": alphabet.to_string(), "word": text, "value": value}))))
    } else {
        Ok(Output::new(value.to_string()))
    }
}

fn render_word(ctx: &Context<'_>, w: &Word, alphabet: &Alphabet) -> Result<Output, CliError> {
    let j = WordJson::from_word(w, alphabet).map_err(|e| CliError::invalid("word", e))?;
    Ok(Output::new(if ctx.json { to_json(&j) } else { j.word }))
}

/// Parses `text` over `alphabet`, or over its own sorted characters.
fn parse_word(text: &str, alphabet: Option<&str>) -> Result<(Word, Alphabet), CliError> {
    let alphabet = match alphabet {
        Some(a) => a.to_string(),
        None => {
            let mut chars: Vec<char> = text.chars().collect();
            chars.sort();
            chars.dedup();
            chars.into_iter().collect()
        }
    };
    let alphabet = Alphabet::new(&alphabet).map_err(|e| CliError::invalid("alphabet", e))?;
    let w = alphabet.parse(text).map_err(|e| CliError::invalid("word", e))?;
    Ok((w, alphabet))
}

fn word_or_stdin(ctx: &mut Context<'_>, word: Option<String>) -> Result<String, CliError> {
    match word {
        Some(w) => Ok(w),
        None => read_stdin(ctx),
    }
}

fn read_stdin(ctx: &mut Context<'_>) -> Result<String, CliError> {
    let mut s = String::new();
    ctx.stdin.read_to_string(&mut s).map_err(|e| CliError::io("<stdin>", e))?;
    let s = s.trim().to_string();
    if s.is_empty() {
        return Err(CliError::invalid("usage", "no word given and standard input is empty"));
    }
    Ok(s)
}

fn read_input(ctx: &mut Context<'_>, file: Option<&Path>) -> Result<String, CliError> {
    match file {
        Some(p) if p != Path::new("-") => fs::read_to_string(p).map_err(|e| CliError::io(p, e)),
        _ => {
            let mut s = String::new();
            ctx.stdin.read_to_string(&mut s).map_err(|e| CliError::io("<stdin>", e))?;
            Ok(s)
        }
    }
}

fn read_bundle(ctx: &mut Context<'_>, file: Option<&Path>) -> Result<ElementaryBundle, CliError> {
    let text = read_input(ctx, file)?;
    let j: BundleJson =
        serde_json::from_str(&text).map_err(|e| CliError::invalid("json", format!("bundle file: {e}")))?;
    j.to_bundle().map_err(|e| CliError::invalid("bundle", e))
}
