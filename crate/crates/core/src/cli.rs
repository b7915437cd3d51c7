//! The `artin` command-line front end.
//!
//! [`run`] takes the full argument vector and two output sinks and returns the
//! process exit code, so the binary is a one-line wrapper and the whole
//! surface can be driven from tests.
//!
//! Exit codes: 0 success or "true", 1 "false" (not found, not dead, not
//! trivial), 2 search budget exhausted, 64 usage error, 66 unreadable or
//! malformed input file, 70 internal invariant violation.

use std::collections::hash_map::DefaultHasher;
use std::fs;
use std::hash::{Hash, Hasher};
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::cayley::{divisor_fragment, to_dot, traced_from, vertex_of, Trace};
use crate::monoid::{Monoid, MonoidError};
use crate::presentation::Presentation;
use crate::raag::{eliminate_infinity_with_stats, generate_01inf_derivation, random_right_angled, random_trivial_word, raag_word_problem};
use crate::reversing::{left_fraction, left_reverse, right_fraction, right_reverse, word_problem_spherical, Fraction, ReverseError};
use crate::rewrite::{apply_step, applicable_steps, check_derivation, Derivation, InsertionBound, Step, StepKind};
use crate::search::{bounded_derivation_search, dehn_derivation, is_dead, DehnError, SearchLimits, SearchOutcome, Strategy};
use crate::trace::{derivation_from_str, derivation_to_json, step_from_json, step_to_json, StepJson, TraceError, SCHEMA_VERSION};
use crate::word::{Gen, PositiveWord, Word};
use crate::worked;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_EXHAUSTED: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_FILE: i32 = 66;
pub const EXIT_INTERNAL: i32 = 70;

#[derive(Parser, Debug)]
#[command(name = "artin", version, about = "Special transformations on words of positive presentations")]
struct Cli {
    /// Presentation file, or the name of a bundled one (a2, i2_4, ra3, f2xf2, fig2).
    #[arg(short = 'p', long = "presentation", global = true)]
    presentation: Option<String>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for every randomized operation.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SideArg {
    Right,
    Left,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StrategyArg {
    Bfs,
    Iddfs,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a presentation and print its classification.
    Validate,
    /// List the special transformations applicable to a word.
    Steps {
        #[arg(short, long, allow_hyphen_values = true)]
        word: String,
        #[arg(long, default_value = "0,1,2")]
        kinds: String,
        /// Length bound for the word after an insertion; required with `inf`.
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// Apply one step, chosen by its index in `steps` or given as JSON.
    Apply {
        #[arg(short, long, allow_hyphen_values = true)]
        word: String,
        #[arg(long, conflicts_with = "step")]
        index: Option<usize>,
        #[arg(long)]
        step: Option<String>,
        #[arg(long, default_value = "0,1,2")]
        kinds: String,
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// Replay a JSON derivation trace and check its recorded end word.
    Replay {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Right or left subword reversing.
    Reverse {
        #[arg(short, long, allow_hyphen_values = true)]
        word: String,
        #[arg(long, value_enum, default_value = "right")]
        side: SideArg,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
    },
    /// Right fraction `N D⁻¹` or left fraction `D⁻¹ N` of a word.
    Fraction {
        #[arg(short, long, allow_hyphen_values = true)]
        word: String,
        #[arg(long, value_enum, default_value = "right")]
        side: SideArg,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
    },
    /// Word problem of a declared spherical presentation.
    WpSpherical {
        #[arg(short, long, allow_hyphen_values = true)]
        word: String,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
    },
    /// Word problem of a right-angled presentation.
    WpRaag {
        #[arg(short, long, allow_hyphen_values = true)]
        word: String,
    },
    /// Rewrite a {0,1,inf} derivation of a right-angled presentation into a {0,1,2} one.
    EliminateInf {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "out")]
        output: Option<PathBuf>,
    },
    /// Random right-angled presentations and trivial words, eliminated end to end.
    FuzzRaag {
        #[arg(long, default_value_t = 4)]
        gens: usize,
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long, default_value_t = 10)]
        max_len: usize,
    },
    /// Positive equivalence class of a positive word.
    Class {
        #[arg(short, long)]
        word: String,
    },
    /// Left or right divisors of a positive word.
    Divisors {
        #[arg(short, long)]
        word: String,
        #[arg(long, value_enum, default_value = "left")]
        side: SideArg,
    },
    /// Right lcm of two positive words.
    Lcm {
        #[arg(short, long)]
        u: String,
        #[arg(short, long)]
        v: String,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
    },
    /// Whether a positive word has no left divisor in S0.
    Minimal {
        #[arg(short, long)]
        word: String,
        #[arg(long)]
        s0: String,
    },
    /// Coset head decomposition `w = v·u` with `u` in the subgroup of S0.
    CosetHead {
        #[arg(short, long, allow_hyphen_values = true)]
        word: String,
        #[arg(long)]
        s0: String,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
    },
    /// Trace a word in the Cayley fragment of the left divisors of `g`.
    CayleyTrace {
        #[arg(short, long)]
        g: String,
        /// Start vertex, a positive word.
        #[arg(short, long, default_value = "")]
        v: String,
        #[arg(short, long, allow_hyphen_values = true)]
        word: String,
        /// Second word; when it is not traced, a non-reachability certificate is printed.
        #[arg(long, allow_hyphen_values = true)]
        w2: Option<String>,
        #[arg(long)]
        dot: bool,
    },
    /// Bounded search for a derivation between two words.
    Search {
        #[arg(short, long, allow_hyphen_values = true)]
        word: String,
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        target: String,
        #[arg(long, default_value = "0,1,2")]
        kinds: String,
        #[arg(long, default_value_t = 12)]
        max_steps: usize,
        #[arg(long, default_value_t = 16)]
        max_len: usize,
        #[arg(long, default_value_t = 0)]
        max_ins: usize,
        #[arg(long, default_value_t = 200_000)]
        max_visited: usize,
        #[arg(long, value_enum, default_value = "bfs")]
        strategy: StrategyArg,
    },
    /// Whether a word admits no step of the given kinds.
    Dead {
        #[arg(short, long, allow_hyphen_values = true)]
        word: String,
        #[arg(long, default_value = "0,1,2")]
        kinds: String,
    },
    /// Greedy Dehn algorithm, translated into special transformations.
    Dehn {
        #[arg(short, long, allow_hyphen_values = true)]
        word: String,
    },
    /// Replay the bundled worked examples and report each one.
    #[command(name = "paper-examples")]
    WorkedExamples,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    File(String),
    Internal(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::File(_) => EXIT_FILE,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::File(m) | CliError::Internal(m) => m,
        }
    }
}

fn usage(e: impl ToString) -> CliError {
    CliError::Usage(e.to_string())
}

fn internal(e: impl ToString) -> CliError {
    CliError::Internal(e.to_string())
}

fn monoid_err(e: MonoidError) -> CliError {
    match e {
        MonoidError::MinimalityViolation { .. } => internal(e),
        _ => usage(e),
    }
}

type CmdResult = Result<i32, CliError>;

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    let mut ctx = Ctx { json: cli.json, seed: cli.seed, out: Vec::new() };
    let result = dispatch(&cli, &mut ctx);
    let _ = out.write_all(&ctx.out);
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message());
            e.code()
        }
    }
}

struct Ctx {
    json: bool,
    seed: u64,
    out: Vec<u8>,
}

impl Ctx {
    fn line(&mut self, s: impl AsRef<str>) {
        self.out.extend_from_slice(s.as_ref().as_bytes());
        self.out.push(b'\n');
    }

    fn emit_json(&mut self, v: &Value) {
        let s = serde_json::to_string_pretty(v).expect("JSON value serializes");
        self.line(s);
    }
}

fn load_presentation(name: Option<&str>) -> Result<Presentation, CliError> {
    let name = name.ok_or_else(|| usage("this subcommand needs a presentation (-p FILE)"))?;
    let text = match fs::read_to_string(name) {
        Ok(t) => t,
        Err(e) => match worked::bundled_text(name) {
            Some(t) => t.to_string(),
            None => return Err(CliError::File(format!("cannot read `{name}`: {e}"))),
        },
    };
    Presentation::parse(&text).map_err(|e| CliError::File(format!("`{name}`: {e}")))
}

fn parse_word(p: &Presentation, text: &str) -> Result<Word, CliError> {
    p.parse_word(text).map_err(|e| usage(format!("word `{text}`: {e}")))
}

fn parse_positive(p: &Presentation, text: &str) -> Result<PositiveWord, CliError> {
    p.parse_positive(text).map_err(|e| usage(format!("word `{text}`: {e}")))
}

fn parse_kinds(text: &str) -> Result<Vec<StepKind>, CliError> {
    StepKind::parse_set(text).ok_or_else(|| usage(format!("bad step kind list `{text}`")))
}

fn parse_s0(p: &Presentation, text: &str) -> Result<Vec<Gen>, CliError> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| p.gen(t).ok_or_else(|| usage(format!("unknown generator `{t}` in --s0"))))
        .collect()
}

fn read_file(path: &PathBuf) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::File(format!("cannot read `{}`: {e}", path.display())))
}

fn derivation_value(p: &Presentation, d: &Derivation) -> Result<Value, CliError> {
    let j = derivation_to_json(p, d).map_err(|e| internal(format!("emitted derivation does not replay: {e}")))?;
    Ok(serde_json::to_value(j).expect("derivation JSON serializes"))
}

fn kind_label(k: StepKind) -> &'static str {
    match k {
        StepKind::Zero => "0",
        StepKind::One => "1",
        StepKind::TwoR => "2r",
        StepKind::TwoL => "2l",
        StepKind::Inf => "inf",
    }
}

fn describe_step(p: &Presentation, s: &Step) -> String {
    let j = step_to_json(p, s);
    let mut parts = vec![format!("{:<3}", j.kind), format!("pos={}", j.pos)];
    if let Some(r) = j.rel {
        let rel = &p.relations()[r];
        parts.push(format!("rel={r} ({} = {})", p.render_positive(&rel.lhs), p.render_positive(&rel.rhs)));
    }
    if let Some(o) = j.orient {
        parts.push(o);
    }
    if let Some(s) = j.split {
        parts.push(format!("split={s}"));
    }
    if let Some(l) = j.letter {
        parts.push(format!("letter={l}"));
    }
    if let Some(s) = j.sign {
        parts.push(format!("sign={s}"));
    }
    parts.join(" ")
}

fn print_derivation(ctx: &mut Ctx, p: &Presentation, d: &Derivation) -> Result<(), CliError> {
    let words = d.words(p).map_err(|e| internal(format!("emitted derivation does not replay: {e}")))?;
    ctx.line(format!("    {}", p.display(&words[0])));
    for (s, w) in d.steps.iter().zip(&words[1..]) {
        ctx.line(format!("  -> {}    [{}]", p.display(w), describe_step(p, s)));
    }
    Ok(())
}

fn emit_derivation(ctx: &mut Ctx, p: &Presentation, d: &Derivation) -> Result<(), CliError> {
    if ctx.json {
        let v = derivation_value(p, d)?;
        ctx.emit_json(&v);
        Ok(())
    } else {
        print_derivation(ctx, p, d)
    }
}

fn enumerate_steps(p: &Presentation, w: &Word, kinds: &[StepKind], max_len: Option<usize>) -> Result<Vec<Step>, CliError> {
    let bound = max_len.map(|max_len| InsertionBound { max_len });
    applicable_steps(p, w, kinds, bound).map_err(usage)
}

// Monoid memo persisted under ARTIN_CACHE_DIR, keyed by presentation text.
fn cache_path(p: &Presentation) -> Option<PathBuf> {
    let dir = std::env::var_os("ARTIN_CACHE_DIR")?;
    let mut h = DefaultHasher::new();
    p.to_text().hash(&mut h);
    Some(PathBuf::from(dir).join(format!("monoid-{:016x}.json", h.finish())))
}

fn open_monoid(p: Presentation) -> Monoid {
    let path = cache_path(&p);
    let m = Monoid::new(p);
    if let Some(path) = path {
        if let Ok(text) = fs::read_to_string(&path) {
            if let Ok(v) = serde_json::from_str::<Value>(&text) {
                if v["presentation"].as_str() == Some(m.presentation().to_text().as_str()) {
                    if let Ok(classes) = serde_json::from_value::<Vec<Vec<Vec<u32>>>>(v["classes"].clone()) {
                        let rank = m.presentation().rank() as u32;
                        let classes = classes.into_iter().filter(|c| c.iter().flatten().all(|&g| g < rank)).map(|c| {
                            c.into_iter().map(|w| PositiveWord::from_gens(w.into_iter().map(Gen).collect())).collect()
                        });
                        m.seed_classes(classes);
                    }
                }
            }
        }
    }
    m
}

fn save_monoid(m: &Monoid) {
    let Some(path) = cache_path(m.presentation()) else { return };
    let classes: Vec<Vec<Vec<u32>>> =
        m.cached_classes().iter().map(|c| c.iter().map(|w| w.gens().iter().map(|g| g.0).collect()).collect()).collect();
    let v = json!({ "schema": SCHEMA_VERSION, "presentation": m.presentation().to_text(), "classes": classes });
    if let Some(dir) = path.parent() {
        let _ = fs::create_dir_all(dir);
    }
    let tmp = path.with_extension("tmp");
    if fs::write(&tmp, v.to_string()).is_ok() {
        let _ = fs::rename(&tmp, &path);
    }
}

fn dispatch(cli: &Cli, ctx: &mut Ctx) -> CmdResult {
    let pres = || load_presentation(cli.presentation.as_deref());
    match &cli.command {
        Command::Validate => cmd_validate(ctx, &pres()?),
        Command::Steps { word, kinds, max_len } => cmd_steps(ctx, &pres()?, word, kinds, *max_len),
        Command::Apply { word, index, step, kinds, max_len } => {
            cmd_apply(ctx, &pres()?, word, *index, step.as_deref(), kinds, *max_len)
        }
        Command::Replay { input } => cmd_replay(ctx, &pres()?, input),
        Command::Reverse { word, side, budget } => cmd_reverse(ctx, &pres()?, word, *side, *budget),
        Command::Fraction { word, side, budget } => cmd_fraction(ctx, &pres()?, word, *side, *budget),
        Command::WpSpherical { word, budget } => cmd_wp_spherical(ctx, &pres()?, word, *budget),
        Command::WpRaag { word } => cmd_wp_raag(ctx, &pres()?, word),
        Command::EliminateInf { input, output } => cmd_eliminate(ctx, &pres()?, input, output.as_ref()),
        Command::FuzzRaag { gens, count, density, max_len } => cmd_fuzz(ctx, *gens, *count, *density, *max_len),
        Command::Class { word } => with_monoid(pres()?, |m| cmd_class(ctx, m, word)),
        Command::Divisors { word, side } => with_monoid(pres()?, |m| cmd_divisors(ctx, m, word, *side)),
        Command::Lcm { u, v, budget } => with_monoid(pres()?, |m| cmd_lcm(ctx, m, u, v, *budget)),
        Command::Minimal { word, s0 } => with_monoid(pres()?, |m| cmd_minimal(ctx, m, word, s0)),
        Command::CosetHead { word, s0, budget } => with_monoid(pres()?, |m| cmd_coset_head(ctx, m, word, s0, *budget)),
        Command::CayleyTrace { g, v, word, w2, dot } => {
            with_monoid(pres()?, |m| cmd_cayley(ctx, m, g, v, word, w2.as_deref(), *dot))
        }
        Command::Search { word, target, kinds, max_steps, max_len, max_ins, max_visited, strategy } => {
            let limits = SearchLimits {
                max_steps: *max_steps,
                max_word_length: *max_len,
                max_insertions: *max_ins,
                max_visited: *max_visited,
                strategy: match strategy {
                    StrategyArg::Bfs => Strategy::BreadthFirst,
                    StrategyArg::Iddfs => Strategy::IterativeDeepening,
                },
            };
            cmd_search(ctx, &pres()?, word, target, kinds, &limits)
        }
        Command::Dead { word, kinds } => cmd_dead(ctx, &pres()?, word, kinds),
        Command::Dehn { word } => cmd_dehn(ctx, &pres()?, word),
        Command::WorkedExamples => cmd_worked_examples(ctx),
    }
}

fn with_monoid(p: Presentation, f: impl FnOnce(&Monoid) -> CmdResult) -> CmdResult {
    let m = open_monoid(p);
    let r = f(&m);
    save_monoid(&m);
    r
}

fn yes_no(b: bool) -> &'static str {
    if b { "yes" } else { "no" }
}

fn cmd_validate(ctx: &mut Ctx, p: &Presentation) -> CmdResult {
    let c = p.classify();
    let rels: Vec<String> =
        p.relations().iter().map(|r| format!("{} = {}", p.render_positive(&r.lhs), p.render_positive(&r.rhs))).collect();
    if ctx.json {
        ctx.emit_json(&json!({
            "schema": SCHEMA_VERSION,
            "generators": p.names(),
            "relations": rels,
            "right_angled": c.right_angled,
            "length_preserving": c.length_preserving,
            "declared_spherical": c.declared_spherical,
            "relation_count": c.relation_count,
            "max_length_gap": c.max_length_gap,
        }));
    } else {
        ctx.line(format!("generators: {}", p.names().join(" ")));
        for (i, r) in rels.iter().enumerate() {
            ctx.line(format!("relation {i}: {r}"));
        }
        ctx.line(format!("right-angled: {}", yes_no(c.right_angled)));
        ctx.line(format!("length-preserving: {}", yes_no(c.length_preserving)));
        ctx.line(format!("declared spherical: {}", yes_no(c.declared_spherical)));
        ctx.line(format!("max length gap: {}", c.max_length_gap));
    }
    Ok(EXIT_OK)
}

fn cmd_steps(ctx: &mut Ctx, p: &Presentation, word: &str, kinds: &str, max_len: Option<usize>) -> CmdResult {
    let w = parse_word(p, word)?;
    let kinds = parse_kinds(kinds)?;
    let steps = enumerate_steps(p, &w, &kinds, max_len)?;
    let mut rows = Vec::new();
    for (i, s) in steps.iter().enumerate() {
        let next = apply_step(p, &w, s).map_err(|e| internal(format!("enumerated step {i} does not apply: {e}")))?;
        rows.push((s, next));
    }
    if ctx.json {
        let list: Vec<Value> = rows
            .iter()
            .map(|(s, next)| {
                let mut v = serde_json::to_value(step_to_json(p, s)).expect("step serializes");
                v["result"] = Value::String(p.render(next));
                v
            })
            .collect();
        ctx.emit_json(&json!({ "schema": SCHEMA_VERSION, "word": p.render(&w), "steps": list }));
    } else {
        ctx.line(format!("{} applicable step(s) on {}", rows.len(), p.display(&w)));
        for (i, (s, next)) in rows.iter().enumerate() {
            ctx.line(format!("{i:>4}  {}  -> {}", describe_step(p, s), p.display(next)));
        }
    }
    Ok(EXIT_OK)
}

fn cmd_apply(
    ctx: &mut Ctx,
    p: &Presentation,
    word: &str,
    index: Option<usize>,
    step: Option<&str>,
    kinds: &str,
    max_len: Option<usize>,
) -> CmdResult {
    let w = parse_word(p, word)?;
    let s = match (index, step) {
        (Some(i), None) => {
            let steps = enumerate_steps(p, &w, &parse_kinds(kinds)?, max_len)?;
            *steps.get(i).ok_or_else(|| usage(format!("only {} applicable step(s)", steps.len())))?
        }
        (None, Some(text)) => {
            let j: StepJson = serde_json::from_str(text).map_err(|e| usage(format!("--step: {e}")))?;
            step_from_json(p, &j, 0).map_err(usage)?
        }
        _ => return Err(usage("give exactly one of --index or --step")),
    };
    apply_step(p, &w, &s).map_err(|e| usage(format!("step does not apply: {e}")))?;
    let mut d = Derivation::new(w);
    d.push(s);
    emit_derivation(ctx, p, &d)?;
    Ok(EXIT_OK)
}

fn cmd_replay(ctx: &mut Ctx, p: &Presentation, input: &PathBuf) -> CmdResult {
    let text = read_file(input)?;
    match derivation_from_str(p, &text) {
        Ok(d) => {
            let end = check_derivation(p, &d).map_err(internal)?;
            if ctx.json {
                ctx.emit_json(&json!({ "schema": SCHEMA_VERSION, "valid": true, "steps": d.len(), "end": p.render(&end) }));
            } else {
                ctx.line(format!("valid derivation of {} step(s) ending at {}", d.len(), p.display(&end)));
            }
            Ok(EXIT_OK)
        }
        Err(TraceError::Json(e)) => Err(CliError::File(format!("`{}`: {e}", input.display()))),
        Err(e) => {
            if ctx.json {
                ctx.emit_json(&json!({ "schema": SCHEMA_VERSION, "valid": false, "error": e.to_string() }));
            } else {
                ctx.line(format!("invalid derivation: {e}"));
            }
            Ok(EXIT_FALSE)
        }
    }
}

fn reverse_err(e: ReverseError) -> CliError {
    usage(e)
}

fn cmd_reverse(ctx: &mut Ctx, p: &Presentation, word: &str, side: SideArg, budget: usize) -> CmdResult {
    let w = parse_word(p, word)?;
    let r = match side {
        SideArg::Right => right_reverse(p, &w, budget),
        SideArg::Left => left_reverse(p, &w, budget),
    };
    let r = match r {
        Ok(r) => r,
        Err(e @ ReverseError::Blocked { .. }) => {
            ctx.line(format!("blocked: {e}"));
            return Ok(EXIT_FALSE);
        }
        Err(e) => return Err(reverse_err(e)),
    };
    emit_derivation(ctx, p, &r.trace)?;
    if r.converged() {
        if !ctx.json {
            ctx.line(format!("converged after {} step(s): {}", r.steps(), p.display(r.word())));
        }
        Ok(EXIT_OK)
    } else {
        if !ctx.json {
            ctx.line(format!("budget exhausted after {} step(s) at {}", r.steps(), p.display(r.word())));
        }
        Ok(EXIT_EXHAUSTED)
    }
}

fn cmd_fraction(ctx: &mut Ctx, p: &Presentation, word: &str, side: SideArg, budget: usize) -> CmdResult {
    let w = parse_word(p, word)?;
    let f: Fraction = match side {
        SideArg::Right => right_fraction(p, &w, budget),
        SideArg::Left => left_fraction(p, &w, budget),
    }
    .map_err(reverse_err)?;
    if ctx.json {
        let v = derivation_value(p, &f.trace)?;
        ctx.emit_json(&v);
    } else {
        print_derivation(ctx, p, &f.trace)?;
        ctx.line(format!("numerator: {}", p.display(&f.numerator.to_word())));
        ctx.line(format!("denominator: {}", p.display(&f.denominator.to_word())));
    }
    Ok(EXIT_OK)
}

fn cmd_wp_spherical(ctx: &mut Ctx, p: &Presentation, word: &str, budget: usize) -> CmdResult {
    let w = parse_word(p, word)?;
    let (trivial, d) = word_problem_spherical(p, &w, budget).map_err(reverse_err)?;
    emit_derivation(ctx, p, &d)?;
    if !ctx.json {
        ctx.line(if trivial { "trivial" } else { "not trivial" });
    }
    Ok(if trivial { EXIT_OK } else { EXIT_FALSE })
}

fn cmd_wp_raag(ctx: &mut Ctx, p: &Presentation, word: &str) -> CmdResult {
    let w = parse_word(p, word)?;
    match raag_word_problem(p, &w).map_err(usage)? {
        Some(d) => {
            if !ctx.json {
                ctx.line(format!("found: derivation of {} step(s) to the empty word", d.len()));
            }
            emit_derivation(ctx, p, &d)?;
            Ok(EXIT_OK)
        }
        None => {
            if ctx.json {
                ctx.emit_json(&json!({ "schema": SCHEMA_VERSION, "start": p.render(&w), "trivial": false }));
            } else {
                ctx.line("not trivial");
            }
            Ok(EXIT_FALSE)
        }
    }
}

fn cmd_eliminate(ctx: &mut Ctx, p: &Presentation, input: &PathBuf, output: Option<&PathBuf>) -> CmdResult {
    let text = read_file(input)?;
    let d = derivation_from_str(p, &text).map_err(|e| CliError::File(format!("`{}`: {e}", input.display())))?;
    let (out, stats) = eliminate_infinity_with_stats(p, &d).map_err(usage)?;
    if !out.uses_only(&StepKind::FINITE) {
        return Err(internal("eliminated derivation still contains insertions"));
    }
    let v = derivation_value(p, &out)?;
    let body = serde_json::to_string_pretty(&v).expect("derivation JSON serializes");
    match output {
        Some(path) => {
            fs::write(path, format!("{body}\n"))
                .map_err(|e| CliError::File(format!("cannot write `{}`: {e}", path.display())))?;
            if ctx.json {
                ctx.emit_json(&json!({
                    "schema": SCHEMA_VERSION,
                    "input_steps": stats.input_steps,
                    "output_steps": stats.output_steps,
                    "max_index": stats.max_index,
                }));
            } else {
                ctx.line(format!(
                    "{} step(s) in, {} step(s) out, max index {}; written to {}",
                    stats.input_steps,
                    stats.output_steps,
                    stats.max_index,
                    path.display()
                ));
            }
        }
        None => ctx.line(body),
    }
    Ok(EXIT_OK)
}

fn cmd_fuzz(ctx: &mut Ctx, gens: usize, count: usize, density: f64, max_len: usize) -> CmdResult {
    if !(1..=26).contains(&gens) || !(0.0..=1.0).contains(&density) {
        return Err(usage("--gens must be in 1..=26 and --density in [0, 1]"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let mut cases = Vec::new();
    let mut failures = 0;
    for case in 0..count {
        let p = random_right_angled(gens, density, &mut rng);
        let w = random_trivial_word(&p, max_len, &mut rng);
        let outcome = generate_01inf_derivation(&p, &w)
            .map_err(|e| e.to_string())
            .and_then(|d| eliminate_infinity_with_stats(&p, &d).map(|r| (d, r)).map_err(|e| e.to_string()))
            .and_then(|(d, (e, stats))| {
                let end = check_derivation(&p, &e).map_err(|e| e.to_string())?;
                if e.start == d.start && end.is_empty() && e.uses_only(&StepKind::FINITE) {
                    Ok((d.len(), stats))
                } else {
                    Err("eliminated derivation has the wrong shape".to_string())
                }
            });
        let rels = p.relations().iter().filter_map(|r| r.commutation()).map(|(s, t)| format!("{}{}", p.name(s), p.name(t)));
        let rels: Vec<String> = rels.collect();
        let ok = outcome.is_ok();
        failures += usize::from(!ok);
        if ctx.json {
            let mut v = json!({ "case": case, "commuting": rels, "word": p.render(&w), "ok": ok });
            match &outcome {
                Ok((n, stats)) => {
                    v["input_steps"] = json!(n);
                    v["output_steps"] = json!(stats.output_steps);
                    v["max_index"] = json!(stats.max_index);
                }
                Err(e) => v["error"] = json!(e),
            }
            cases.push(v);
        } else {
            match &outcome {
                Ok((n, stats)) => ctx.line(format!(
                    "case {case}: ok  word={} commuting=[{}] {n} -> {} steps, max index {}",
                    p.display(&w),
                    rels.join(" "),
                    stats.output_steps,
                    stats.max_index
                )),
                Err(e) => ctx.line(format!("case {case}: FAILED word={} commuting=[{}]: {e}", p.display(&w), rels.join(" "))),
            }
        }
    }
    if ctx.json {
        ctx.emit_json(&json!({ "schema": SCHEMA_VERSION, "seed": ctx.seed, "failures": failures, "cases": cases }));
    } else {
        ctx.line(format!("{} case(s), {failures} failure(s)", count));
    }
    if failures == 0 {
        Ok(EXIT_OK)
    } else {
        Err(internal(format!("{failures} fuzz case(s) failed")))
    }
}

fn render_list(p: &Presentation, ws: &[PositiveWord]) -> Vec<String> {
    ws.iter().map(|w| p.render_positive(w)).collect()
}

fn cmd_class(ctx: &mut Ctx, m: &Monoid, word: &str) -> CmdResult {
    let p = m.presentation();
    let w = parse_positive(p, word)?;
    let class = m.equiv_class(&w).map_err(monoid_err)?;
    let words = render_list(p, &class);
    if ctx.json {
        ctx.emit_json(&json!({ "schema": SCHEMA_VERSION, "word": word, "canonical": words[0], "class": words }));
    } else {
        ctx.line(format!("class of {} ({} word(s)):", p.display(&w.to_word()), words.len()));
        for c in &words {
            ctx.line(format!("  {c}"));
        }
    }
    Ok(EXIT_OK)
}

fn cmd_divisors(ctx: &mut Ctx, m: &Monoid, word: &str, side: SideArg) -> CmdResult {
    let p = m.presentation();
    let w = parse_positive(p, word)?;
    let ds = match side {
        SideArg::Left => m.left_divisors(&w),
        SideArg::Right => m.right_divisors(&w),
    }
    .map_err(monoid_err)?;
    let words = render_list(p, &ds);
    if ctx.json {
        ctx.emit_json(&json!({ "schema": SCHEMA_VERSION, "word": word, "divisors": words }));
    } else {
        ctx.line(format!("{} divisor(s):", words.len()));
        for d in &words {
            ctx.line(format!("  {}", if d.is_empty() { "ε" } else { d }));
        }
    }
    Ok(EXIT_OK)
}

fn cmd_lcm(ctx: &mut Ctx, m: &Monoid, u: &str, v: &str, budget: usize) -> CmdResult {
    let p = m.presentation();
    let (a, b) = (parse_positive(p, u)?, parse_positive(p, v)?);
    let l = m.right_lcm(&a, &b, budget).map_err(monoid_err)?;
    let c = m.canonical(&l).map_err(monoid_err)?;
    if ctx.json {
        ctx.emit_json(&json!({ "schema": SCHEMA_VERSION, "u": u, "v": v, "lcm": p.render_positive(&c) }));
    } else {
        ctx.line(format!("right lcm: {}", p.display(&c.to_word())));
    }
    Ok(EXIT_OK)
}

fn cmd_minimal(ctx: &mut Ctx, m: &Monoid, word: &str, s0: &str) -> CmdResult {
    let p = m.presentation();
    let w = parse_positive(p, word)?;
    let s0 = parse_s0(p, s0)?;
    let minimal = m.is_s0_minimal(&w, &s0).map_err(monoid_err)?;
    let (head, tail) = m.strip_s0(&w, &s0).map_err(monoid_err)?;
    if ctx.json {
        ctx.emit_json(&json!({
            "schema": SCHEMA_VERSION,
            "word": word,
            "minimal": minimal,
            "head": p.render_positive(&head),
            "s0_tail": p.render_positive(&tail),
        }));
    } else {
        ctx.line(format!("S0-minimal: {}", yes_no(minimal)));
        ctx.line(format!("{} = {} · {}", p.display(&w.to_word()), p.display(&head.to_word()), p.display(&tail.to_word())));
    }
    Ok(if minimal { EXIT_OK } else { EXIT_FALSE })
}

fn cmd_coset_head(ctx: &mut Ctx, m: &Monoid, word: &str, s0: &str, budget: usize) -> CmdResult {
    let p = m.presentation();
    let w = parse_word(p, word)?;
    let s0 = parse_s0(p, s0)?;
    let h = m.coset_head_spherical(&w, &s0, budget).map_err(monoid_err)?;
    if ctx.json {
        let trace = derivation_value(p, &h.trace)?;
        ctx.emit_json(&json!({
            "schema": SCHEMA_VERSION,
            "word": p.render(&w),
            "head": p.render(&h.v),
            "tail": p.render(&h.u),
            "key": [h.key.0, h.key.1],
            "trace": trace,
        }));
    } else {
        ctx.line(format!("head: {}", p.display(&h.v)));
        ctx.line(format!("tail: {}", p.display(&h.u)));
        ctx.line(format!("left fraction sizes: |D| = {}, |N| = {}", h.key.0, h.key.1));
        print_derivation(ctx, p, &h.trace)?;
    }
    Ok(EXIT_OK)
}

fn trace_value(p: &Presentation, f: &crate::cayley::CayleyFragment, t: &Trace) -> Value {
    match t {
        Trace::Traced(path) => json!({ "traced": true, "path": path.iter().map(|&i| p.render_positive(&f.vertices[i])).collect::<Vec<_>>() }),
        Trace::LeavesAt(k) => json!({ "traced": false, "leaves_at": k }),
    }
}

fn cmd_cayley(ctx: &mut Ctx, m: &Monoid, g: &str, v: &str, word: &str, w2: Option<&str>, dot: bool) -> CmdResult {
    let p = m.presentation();
    let g = parse_positive(p, g)?;
    let f = divisor_fragment(m, &g).map_err(usage)?;
    if dot {
        ctx.out.extend_from_slice(to_dot(p, &f).as_bytes());
        return Ok(EXIT_OK);
    }
    let start = vertex_of(m, &f, &parse_positive(p, v)?).map_err(usage)?;
    let w = parse_word(p, word)?;
    let t = traced_from(&f, start, &w).map_err(usage)?;
    let t2 = match w2 {
        Some(text) => Some((parse_word(p, text)?, ())).map(|(w2, _)| traced_from(&f, start, &w2).map(|t| (w2, t))),
        None => None,
    }
    .transpose()
    .map_err(usage)?;
    let certified = t.is_traced() && t2.as_ref().is_some_and(|(_, t)| !t.is_traced());
    if ctx.json {
        let mut out = json!({
            "schema": SCHEMA_VERSION,
            "vertices": f.vertex_count(),
            "edges": f.edges.len(),
            "start": p.render_positive(&f.vertices[start]),
            "word": trace_value(p, &f, &t),
        });
        if let Some((_, t2)) = &t2 {
            out["second"] = trace_value(p, &f, t2);
            out["certificate"] = json!(certified);
        }
        ctx.emit_json(&out);
    } else {
        ctx.line(format!("fragment: {} vertices, {} edges", f.vertex_count(), f.edges.len()));
        let show = |t: &Trace| match t {
            Trace::Traced(path) => {
                let names: Vec<String> = path.iter().map(|&i| {
                    let s = p.render_positive(&f.vertices[i]);
                    if s.is_empty() { "1".to_string() } else { s }
                }).collect();
                format!("traced: {}", names.join(" -> "))
            }
            Trace::LeavesAt(k) => format!("not traced: letter {k} leaves the fragment"),
        };
        ctx.line(format!("{}: {}", p.display(&w), show(&t)));
        if let Some((w2, t2)) = &t2 {
            ctx.line(format!("{}: {}", p.display(w2), show(t2)));
            if certified {
                ctx.line(format!("certificate: {} cannot be derived from {} with steps of types 0, 1, 2", p.display(w2), p.display(&w)));
            }
        }
    }
    let ok = match &t2 {
        Some(_) => certified,
        None => t.is_traced(),
    };
    Ok(if ok { EXIT_OK } else { EXIT_FALSE })
}

fn cmd_search(ctx: &mut Ctx, p: &Presentation, word: &str, target: &str, kinds: &str, limits: &SearchLimits) -> CmdResult {
    let w = parse_word(p, word)?;
    let target = parse_word(p, target)?;
    let kinds = parse_kinds(kinds)?;
    let outcome = bounded_derivation_search(p, &w, &target, &kinds, limits);
    match outcome {
        SearchOutcome::Found(d) => {
            let end = check_derivation(p, &d).map_err(internal)?;
            if end != target {
                return Err(internal("search result does not reach the target"));
            }
            if !ctx.json {
                ctx.line(format!("found: {} step(s)", d.len()));
            }
            emit_derivation(ctx, p, &d)?;
            Ok(EXIT_OK)
        }
        SearchOutcome::Dead => {
            if ctx.json {
                ctx.emit_json(&json!({ "schema": SCHEMA_VERSION, "outcome": "dead" }));
            } else {
                ctx.line("dead: the start word admits no step");
            }
            Ok(EXIT_FALSE)
        }
        SearchOutcome::Exhausted(stats) => {
            if ctx.json {
                ctx.emit_json(&json!({
                    "schema": SCHEMA_VERSION,
                    "outcome": "exhausted",
                    "visited": stats.visited,
                    "depth_reached": stats.depth_reached,
                    "truncated": stats.truncated,
                }));
            } else {
                ctx.line(format!(
                    "exhausted: {} word(s) visited, depth {}{}",
                    stats.visited,
                    stats.depth_reached,
                    if stats.truncated { ", truncated" } else { "" }
                ));
            }
            Ok(EXIT_EXHAUSTED)
        }
    }
}

fn cmd_dead(ctx: &mut Ctx, p: &Presentation, word: &str, kinds: &str) -> CmdResult {
    let w = parse_word(p, word)?;
    let kinds = parse_kinds(kinds)?;
    let dead = is_dead(p, &w, &kinds).map_err(usage)?;
    let steps = applicable_steps(p, &w, &kinds, None).map_err(usage)?;
    if ctx.json {
        let kinds: Vec<&str> = kinds.iter().map(|k| kind_label(*k)).collect();
        let list: Vec<StepJson> = steps.iter().map(|s| step_to_json(p, s)).collect();
        ctx.emit_json(&json!({ "schema": SCHEMA_VERSION, "word": p.render(&w), "kinds": kinds, "dead": dead, "steps": list }));
    } else {
        ctx.line(format!("{}: {}", p.display(&w), if dead { "dead" } else { "not dead" }));
        for s in &steps {
            ctx.line(format!("  {}", describe_step(p, s)));
        }
    }
    Ok(if dead { EXIT_OK } else { EXIT_FALSE })
}

fn cmd_dehn(ctx: &mut Ctx, p: &Presentation, word: &str) -> CmdResult {
    let w = parse_word(p, word)?;
    let (end, d) = match dehn_derivation(p, &w) {
        Ok(r) => r,
        Err(e @ DehnError::LengthHypothesis(_)) => return Err(usage(e)),
        Err(e) => return Err(internal(e)),
    };
    if check_derivation(p, &d).map_err(internal)? != end {
        return Err(internal("translated Dehn run ends at a different word"));
    }
    emit_derivation(ctx, p, &d)?;
    if !ctx.json {
        ctx.line(format!("Dehn run ends at {}", p.display(&end)));
    }
    Ok(if end.is_empty() { EXIT_OK } else { EXIT_FALSE })
}

fn cmd_worked_examples(ctx: &mut Ctx) -> CmdResult {
    let reports = worked::run_all();
    let failed = reports.iter().filter(|r| !r.passed).count();
    if ctx.json {
        let list: Vec<Value> =
            reports.iter().map(|r| json!({ "name": r.name, "passed": r.passed, "detail": r.detail })).collect();
        ctx.emit_json(&json!({ "schema": SCHEMA_VERSION, "examples": list, "failed": failed }));
    } else {
        for r in &reports {
            ctx.line(format!("{} {}: {}", if r.passed { "PASS" } else { "FAIL" }, r.name, r.detail));
        }
        ctx.line(format!("{} of {} passed", reports.len() - failed, reports.len()));
    }
    Ok(if failed == 0 { EXIT_OK } else { EXIT_FALSE })
}
