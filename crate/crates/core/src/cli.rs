//! Command-line front end.
//!
//! Exit codes: 0 success, 1 negative check or failed verification, 2 bad input.

use std::io::Write;
use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::bcode::{bcode_decode, bcode_encode, BCode};
use crate::error::{Error, Result};
use crate::oracle::{distribution, verify_theorem1, verify_theorem2, OracleConfig, StatisticId};
use crate::qseries::{gf_bipartitional, gf_sorting};
use crate::relation::{
    is_essentially_bipartitional, parse_edge_list, satisfies_sor_conditions, to_ordered_bipartition,
    OrderedBipartition, Relation,
};
use crate::stats::{
    graphical_descents, graphical_inversions, graphical_major_index, maximal_chains_with_cap, sort_trace,
    TieRule, DEFAULT_CHAIN_CAP,
};
use crate::word::{parse_letters, render_letters, MultiplicityVector, Word, DEFAULT_MAX_CLASS};

const MAX_CLASS_VAR: &str = "MAHONIAN_MAX_CLASS";

#[derive(Debug, Parser)]
#[command(name = "mahonian", version, about = "Graphical Mahonian statistics on words")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Statistics of a single word.
    Stats(StatsArgs),
    /// Distribution of a statistic over a rearrangement class.
    Dist(DistArgs),
    /// Closed-form generating function from an ordered bipartition.
    Gf(GfArgs),
    /// Structural predicates on a relation.
    Check {
        #[command(subcommand)]
        what: CheckCommand,
    },
    /// Encode or decode b-codes.
    Bcode {
        #[command(subcommand)]
        what: BcodeCommand,
    },
    /// Exhaustive equidistribution sweep over every relation on 1..=n.
    Verify {
        #[command(subcommand)]
        theorem: VerifyCommand,
    },
    /// Word built from maximal chains.
    Chainword(ChainwordArgs),
}

#[derive(Debug, Args)]
struct RelationArgs {
    /// `natural`, `empty`, `full`, or `@path` to a JSON or edge-list file.
    #[arg(long, conflicts_with = "edges")]
    relation: Option<String>,
    /// Inline edge list such as "5 3;5 2".
    #[arg(long, allow_hyphen_values = true)]
    edges: Option<String>,
    /// Alphabet size, when it cannot be inferred.
    #[arg(long)]
    n: Option<usize>,
}

impl RelationArgs {
    fn given(&self) -> bool {
        self.relation.is_some() || self.edges.is_some()
    }

    /// Resolves the relation; `inferred` is the alphabet implied by other inputs.
    fn resolve(&self, inferred: Option<usize>) -> Result<Relation> {
        let n = self.n.or(inferred);
        let need_n = || n.ok_or_else(|| Error::InvalidArguments("alphabet size unknown; pass --n".into()));
        let u = match (&self.relation, &self.edges) {
            (_, Some(edges)) => parse_edge_list(edges, n)?,
            (Some(name), None) => match name.as_str() {
                "natural" => Relation::natural_order(need_n()?),
                "empty" => Relation::empty(need_n()?),
                "full" => Relation::full(need_n()?),
                other => match other.strip_prefix('@') {
                    Some(path) => {
                        let text = read_file(path)?;
                        if text.trim_start().starts_with('{') {
                            serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{path}: {e}")))?
                        } else {
                            parse_edge_list(&text, n)?
                        }
                    }
                    None => return Err(Error::Parse(format!("unknown relation {other:?}"))),
                },
            },
            (None, None) => Relation::natural_order(need_n()?),
        };
        match n {
            Some(n) if u.n() < n => Relation::from_edges(n, u.edges()),
            Some(n) if u.n() > n => Err(Error::AlphabetMismatch {
                letter: u.n() as u32,
                n,
            }),
            _ => Ok(u),
        }
    }
}

#[derive(Debug, Args)]
struct BipartitionArgs {
    /// Blocks such as "{5,4} > {3} > _{2,1}_" (underscores mark flagged blocks).
    #[arg(long, conflicts_with = "bipartition")]
    blocks: Option<String>,
    /// JSON bipartition, inline or `@path`.
    #[arg(long)]
    bipartition: Option<String>,
}

impl BipartitionArgs {
    fn resolve(&self) -> Result<Option<OrderedBipartition>> {
        if let Some(b) = &self.blocks {
            return b.parse().map(Some);
        }
        match &self.bipartition {
            Some(b) => {
                let text = inline_or_file(b)?;
                serde_json::from_str(&text).map(Some).map_err(|e| Error::Parse(e.to_string()))
            }
            None => Ok(None),
        }
    }
}

#[derive(Debug, Args)]
struct StatsArgs {
    #[arg(long)]
    word: String,
    #[command(flatten)]
    relation: RelationArgs,
    /// Print a single statistic: inv, des, maj or sor.
    #[arg(long)]
    stat: Option<String>,
    #[arg(long, default_value_t = TieRule::default())]
    tie_rule: TieRule,
    /// Print the selection-sort trace.
    #[arg(long)]
    trace: bool,
}

#[derive(Debug, Args)]
struct DistArgs {
    #[arg(long)]
    alpha: MultiplicityVector,
    #[command(flatten)]
    relation: RelationArgs,
    #[arg(long)]
    stat: StatisticId,
    #[arg(long, default_value_t = TieRule::default())]
    tie_rule: TieRule,
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Debug, Args)]
struct GfArgs {
    #[arg(long)]
    alpha: MultiplicityVector,
    #[command(flatten)]
    bipartition: BipartitionArgs,
    #[command(flatten)]
    relation: RelationArgs,
    /// inv, maj or sor.
    #[arg(long)]
    stat: StatisticId,
}

#[derive(Debug, Subcommand)]
enum CheckCommand {
    Bipartitional {
        #[command(flatten)]
        relation: RelationArgs,
    },
    Essential {
        #[command(flatten)]
        relation: RelationArgs,
        #[arg(long)]
        alpha: MultiplicityVector,
    },
    SorConditions {
        #[command(flatten)]
        relation: RelationArgs,
        #[arg(long)]
        alpha: MultiplicityVector,
    },
}

#[derive(Debug, Subcommand)]
enum BcodeCommand {
    Encode {
        #[arg(long)]
        word: String,
        #[command(flatten)]
        bipartition: BipartitionArgs,
    },
    Decode {
        /// JSON code, inline or `@path`.
        #[arg(long)]
        code: String,
        #[arg(long)]
        alpha: MultiplicityVector,
        #[command(flatten)]
        bipartition: BipartitionArgs,
    },
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    alpha: MultiplicityVector,
    #[arg(long, default_value_t = TieRule::default())]
    tie_rule: TieRule,
    #[arg(long)]
    jobs: Option<usize>,
    /// Largest alphabet accepted for a sweep.
    #[arg(long, default_value_t = 3)]
    max_n: usize,
}

#[derive(Debug, Subcommand)]
enum VerifyCommand {
    Thm1(VerifyArgs),
    Thm2(VerifyArgs),
}

#[derive(Debug, Args)]
struct ChainwordArgs {
    #[command(flatten)]
    relation: RelationArgs,
    #[arg(long)]
    alpha: MultiplicityVector,
    /// Largest word length searched.
    #[arg(long, default_value_t = DEFAULT_CHAIN_CAP)]
    cap: u64,
}

/// What a subcommand produced: text, JSON, and whether the answer was positive.
struct Outcome {
    text: String,
    json: String,
    ok: bool,
}

impl Outcome {
    fn ok(text: impl Into<String>, json: String) -> Self {
        Self {
            text: text.into(),
            json,
            ok: true,
        }
    }
}

fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    serde_json::to_string(value).expect("serializable value")
}

fn read_file(path: &str) -> Result<String> {
    std::fs::read_to_string(Path::new(path)).map_err(|e| Error::Parse(format!("{path}: {e}")))
}

fn inline_or_file(arg: &str) -> Result<String> {
    match arg.strip_prefix('@') {
        Some(path) => read_file(path),
        None => Ok(arg.to_string()),
    }
}

fn max_class() -> Result<u64> {
    match std::env::var(MAX_CLASS_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("{MAX_CLASS_VAR} must be a non-negative integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_MAX_CLASS),
    }
}

/// Runs the CLI on `args` (program name first) and returns the exit code.
pub fn run(args: Vec<String>, out: &mut impl Write, err: &mut impl Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{rendered}");
                    0
                }
                _ => {
                    let _ = write!(err, "{rendered}");
                    2
                }
            };
        }
    };
    match dispatch(cli.command) {
        Ok(outcome) => {
            let written = match cli.format {
                Format::Text => writeln!(out, "{}", outcome.text.trim_end()),
                Format::Json => writeln!(out, "{}", outcome.json),
            };
            if written.is_err() {
                return 2;
            }
            if outcome.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::ConditionsNotSatisfied(_) => 1,
                _ => 2,
            }
        }
    }
}

fn dispatch(command: Command) -> Result<Outcome> {
    match command {
        Command::Stats(a) => stats(a),
        Command::Dist(a) => dist(a),
        Command::Gf(a) => gf(a),
        Command::Check { what } => check(what),
        Command::Bcode { what } => bcode(what),
        Command::Verify { theorem } => verify(theorem),
        Command::Chainword(a) => chainword(a),
    }
}

fn stats(a: StatsArgs) -> Result<Outcome> {
    let letters = parse_letters(&a.word)?;
    let inferred = letters.iter().copied().max().unwrap_or(1).max(1) as usize;
    let u = a.relation.resolve(Some(a.relation.n.unwrap_or(inferred)))?;
    let w = Word::with_alphabet(letters, u.n())?;
    let trace = sort_trace(&u, &w, a.tie_rule)?;
    let values = [
        ("inv", graphical_inversions(&u, &w)?),
        ("des", graphical_descents(&u, &w)? as u64),
        ("maj", graphical_major_index(&u, &w)?),
        ("sor", trace.total()),
    ];
    let selected: Vec<(&str, u64)> = match &a.stat {
        Some(s) => {
            let name = s.trim_end_matches('\'').trim_end_matches("-graphical");
            let hit = values
                .iter()
                .find(|(k, _)| *k == name)
                .ok_or_else(|| Error::Parse(format!("unknown statistic {s:?}; expected inv, des, maj or sor")))?;
            vec![*hit]
        }
        None => values.to_vec(),
    };
    let mut text = if selected.len() == 1 && a.stat.is_some() {
        selected[0].1.to_string()
    } else {
        selected.iter().map(|(k, v)| format!("{k} {v}\n")).collect()
    };
    let mut json = serde_json::Map::new();
    json.insert("word".into(), json!(w.letters()));
    for (k, v) in &selected {
        json.insert((*k).into(), json!(v));
    }
    if a.trace {
        text.push_str("\nj\ti\tletter\tcontribution\n");
        for s in &trace.steps {
            text.push_str(&format!("{}\t{}\t{}\t{}\n", s.mover, s.target, s.letter, s.contribution));
        }
        json.insert("tie_rule".into(), json!(a.tie_rule));
        json.insert("trace".into(), json!(trace.steps));
    }
    Ok(Outcome::ok(text, to_json(&json)))
}

fn dist(a: DistArgs) -> Result<Outcome> {
    let u = a.relation.resolve(Some(a.relation.n.unwrap_or(a.alpha.n())))?;
    let cfg = OracleConfig {
        max_class: max_class()?,
        tie_rule: a.tie_rule,
        jobs: a.jobs,
        ..OracleConfig::default()
    };
    let p = distribution(a.stat.graphical(), &a.alpha, &u, &cfg)?;
    Ok(Outcome::ok(p.to_string(), to_json(&p)))
}

fn gf(a: GfArgs) -> Result<Outcome> {
    let stat = a.stat.graphical();
    let bp = match a.bipartition.resolve()? {
        Some(bp) => bp,
        None => {
            let u = a.relation.resolve(Some(a.relation.n.unwrap_or(a.alpha.n())))?;
            if stat == StatisticId::SorGraphical {
                let c = satisfies_sor_conditions(&u, &a.alpha);
                match c.bipartition {
                    Some(bp) if c.holds => bp,
                    _ => return Err(Error::ConditionsNotSatisfied(c.failures)),
                }
            } else {
                match to_ordered_bipartition(&u) {
                    Some(bp) => bp,
                    None => is_essentially_bipartitional(&u, &a.alpha)?
                        .map(|w| w.bipartition)
                        .ok_or_else(|| Error::InvalidBipartition(format!("{u} is not essentially bipartitional")))?,
                }
            }
        }
    };
    let p = match stat {
        StatisticId::SorGraphical => gf_sorting(&a.alpha, &bp)?,
        _ => gf_bipartitional(&a.alpha, &bp)?,
    };
    Ok(Outcome::ok(p.to_string(), to_json(&p)))
}

fn check(what: CheckCommand) -> Result<Outcome> {
    match what {
        CheckCommand::Bipartitional { relation } => {
            let u = relation.resolve(None)?;
            let bp = to_ordered_bipartition(&u);
            let text = match &bp {
                Some(bp) => format!("yes: {bp}"),
                None => "no".into(),
            };
            Ok(Outcome {
                text,
                json: json!({ "holds": bp.is_some(), "bipartition": bp }).to_string(),
                ok: bp.is_some(),
            })
        }
        CheckCommand::Essential { relation, alpha } => {
            let u = relation.resolve(Some(relation.n.unwrap_or(alpha.n())))?;
            let witness = is_essentially_bipartitional(&u, &alpha)?;
            let text = match &witness {
                Some(w) => {
                    let mut t = format!("yes: {}", w.bipartition);
                    let list = |s: &std::collections::BTreeSet<u32>| {
                        s.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
                    };
                    if !w.removed_loops.is_empty() {
                        t.push_str(&format!("\nremove loops: {}", list(&w.removed_loops)));
                    }
                    if !w.added_loops.is_empty() {
                        t.push_str(&format!("\nadd loops: {}", list(&w.added_loops)));
                    }
                    t
                }
                None => "no".into(),
            };
            Ok(Outcome {
                text,
                json: json!({ "holds": witness.is_some(), "witness": witness }).to_string(),
                ok: witness.is_some(),
            })
        }
        CheckCommand::SorConditions { relation, alpha } => {
            let u = relation.resolve(Some(relation.n.unwrap_or(alpha.n())))?;
            let c = satisfies_sor_conditions(&u, &alpha);
            let text = match (&c.bipartition, c.holds) {
                (Some(bp), true) => format!("yes: {bp}"),
                _ => std::iter::once("no".to_string()).chain(c.failures.iter().cloned()).collect::<Vec<_>>().join("\n"),
            };
            Ok(Outcome {
                text,
                json: to_json(&c),
                ok: c.holds,
            })
        }
    }
}

fn require_bipartition(b: &BipartitionArgs) -> Result<OrderedBipartition> {
    b.resolve()?
        .ok_or_else(|| Error::InvalidArguments("pass --blocks or --bipartition".into()))
}

fn bcode(what: BcodeCommand) -> Result<Outcome> {
    match what {
        BcodeCommand::Encode { word, bipartition } => {
            let bp = require_bipartition(&bipartition)?;
            let w = Word::with_alphabet(parse_letters(&word)?, bp.n())?;
            let alpha = w.class().clone();
            let code = bcode_encode(&w, &bp, &alpha)?;
            Ok(Outcome::ok(render_code(&code), to_json(&code)))
        }
        BcodeCommand::Decode {
            code,
            alpha,
            bipartition,
        } => {
            let bp = require_bipartition(&bipartition)?;
            let code: BCode =
                serde_json::from_str(&inline_or_file(&code)?).map_err(|e| Error::Parse(e.to_string()))?;
            let w = bcode_decode(&code, &bp, &alpha)?;
            Ok(Outcome::ok(
                render_letters(w.letters(), alpha.n()),
                json!({ "word": w.letters() }).to_string(),
            ))
        }
    }
}

/// `((4,2,1,1;1;0,0,0),(3,0,2))`: partitions separated by `;`, then markers.
fn render_code(code: &BCode) -> String {
    let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
    let parts: Vec<String> = code.partitions.iter().map(|p| join(p)).collect();
    format!("(({}),({}))", parts.join(";"), join(&code.markers))
}

fn verify(theorem: VerifyCommand) -> Result<Outcome> {
    let (a, thm2) = match theorem {
        VerifyCommand::Thm1(a) => (a, false),
        VerifyCommand::Thm2(a) => (a, true),
    };
    let cfg = OracleConfig {
        max_class: max_class()?,
        max_universe_n: a.max_n,
        tie_rule: a.tie_rule,
        jobs: a.jobs,
    };
    let report = if thm2 {
        verify_theorem2(a.n, &a.alpha, &cfg)?
    } else {
        verify_theorem1(a.n, &a.alpha, &cfg)?
    };
    Ok(Outcome {
        text: report.to_string(),
        json: to_json(&report),
        ok: report.is_clean(),
    })
}

fn chainword(a: ChainwordArgs) -> Result<Outcome> {
    let u = if a.relation.given() || a.relation.n.is_some() {
        a.relation.resolve(Some(a.relation.n.unwrap_or(a.alpha.n())))?
    } else {
        Relation::natural_order(a.alpha.n())
    };
    let chains = maximal_chains_with_cap(&u, &a.alpha, a.cap)?;
    let word: Vec<u32> = chains.iter().rev().flatten().copied().collect();
    let text = render_letters(&word, a.alpha.n());
    Ok(Outcome::ok(text, json!({ "chains": chains, "word": word }).to_string()))
}
