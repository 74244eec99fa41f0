use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use trailrpq::automata::{minimize, state_cap, to_dot, word_to_string, Dfa};
use trailrpq::classify::{build_hardness_gadget, extract_witness, parse_edp};
use trailrpq::enumerate::{all_trails_oracle, TrailEnumerator, DEFAULT_ORACLE_GUARD};
use trailrpq::graphdb::load_graph;
use trailrpq::trailquery::{solve_with, Constraints, SolveOptions};
use trailrpq::{classify, Engine, LabeledGraph, Language, MinimalDfa, NodeId, QueryResult, Trail};

#[derive(Parser)]
#[command(name = "trailrpq", version, about = "Regular path queries under trail semantics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a regular language.
    Classify {
        #[command(flatten)]
        lang: LangArgs,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// Shortest trail matching the language.
    Query {
        #[command(flatten)]
        query: QueryArgs,
        #[arg(long, default_value = "auto")]
        engine: Engine,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
        /// Also print search statistics.
        #[arg(long)]
        stats: bool,
    },
    /// Matching trails in order of length.
    Enumerate {
        #[command(flatten)]
        query: QueryArgs,
        #[arg(long, default_value = "auto")]
        engine: Engine,
        /// Stop after this many trails.
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Trail-query instance equivalent to an edge-disjoint-paths instance.
    Reduce {
        /// Instance file: a `pairs s1 t1 s2 t2` header, then `u label v` edges.
        #[arg(long)]
        edp: PathBuf,
        #[command(flatten)]
        lang: LangArgs,
        /// Write the graph here and only the `s t` line to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustive search, refused on graphs above the guard.
    Oracle {
        #[command(flatten)]
        query: QueryArgs,
        #[arg(long, default_value_t = DEFAULT_ORACLE_GUARD)]
        guard: usize,
        /// List every matching trail instead of the shortest.
        #[arg(long)]
        all: bool,
    },
    /// Minimal DFA in Graphviz format.
    DfaDump {
        #[command(flatten)]
        lang: LangArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct LangArgs {
    #[arg(long)]
    regex: Option<String>,
    /// DFA in text form: `alphabet`, `initial`, `final` lines and `p a q` transitions.
    #[arg(long)]
    dfa: Option<PathBuf>,
}

#[derive(Args)]
struct QueryArgs {
    #[arg(long)]
    graph: PathBuf,
    #[command(flatten)]
    lang: LangArgs,
    #[arg(long)]
    from: String,
    #[arg(long)]
    to: String,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Kv,
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

impl LangArgs {
    fn dfa(&self) -> anyhow::Result<MinimalDfa> {
        match (&self.regex, &self.dfa) {
            (Some(r), _) => Ok(MinimalDfa::from_regex(r, state_cap())?),
            (None, Some(path)) => {
                let dfa = Dfa::from_text(&read(path)?).with_context(|| format!("in {}", path.display()))?;
                Ok(minimize(&dfa))
            }
            (None, None) => bail!("one of --regex or --dfa is required"),
        }
    }
}

struct Instance {
    g: LabeledGraph,
    s: NodeId,
    t: NodeId,
    lang: Language,
}

impl QueryArgs {
    fn load(&self) -> anyhow::Result<Instance> {
        let (g, warnings) = load_graph(&read(&self.graph)?).with_context(|| format!("in {}", self.graph.display()))?;
        for w in warnings {
            eprintln!("warning: {w}");
        }
        let (s, t) = (g.node(&self.from)?, g.node(&self.to)?);
        Ok(Instance { g, s, t, lang: Language::new(self.lang.dfa()?) })
    }
}

fn print_query(g: &LabeledGraph, res: &QueryResult, format: Format, stats: bool) {
    match format {
        Format::Human => {
            match &res.trail {
                Some(t) => print!("{}", t.render(g)),
                None => println!("no trail"),
            }
            println!("engine={}", res.engine);
            if stats {
                println!("expanded={} summaries={}", res.stats.expanded, res.stats.summaries);
            }
        }
        Format::Kv => {
            println!("found={}", res.found());
            println!("engine={}", res.engine);
            if let Some(t) = &res.trail {
                let edges: Vec<String> = t.edges().iter().map(usize::to_string).collect();
                println!("length={}", t.len());
                println!("word={}", word_to_string(t.word()));
                println!("edges={}", edges.join(","));
            }
            if stats {
                println!("stats.expanded={}", res.stats.expanded);
                println!("stats.summaries={}", res.stats.summaries);
            }
        }
    }
}

fn print_trails(g: &LabeledGraph, trails: impl IntoIterator<Item = anyhow::Result<Trail>>) -> anyhow::Result<bool> {
    let mut out = std::io::stdout().lock();
    let mut any = false;
    for trail in trails {
        if any {
            writeln!(out)?;
        }
        write!(out, "{}", trail?.render(g))?;
        any = true;
    }
    Ok(any)
}

fn found_code(found: bool) -> ExitCode {
    if found {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Classify { lang, format } => {
            let report = classify(&lang.dfa()?)?;
            match format {
                Format::Human => {
                    println!("finite={} ttract={} trichotomy={}", report.finite, report.ttract, report.trichotomy);
                    for (k, v) in report.to_kv() {
                        if !["finite", "ttract", "trichotomy"].contains(&k.as_str()) {
                            println!("  {k}={v}");
                        }
                    }
                }
                Format::Kv => {
                    for (k, v) in report.to_kv() {
                        println!("{k}={v}");
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Query { query, engine, format, stats } => {
            let inst = query.load()?;
            let opts = SolveOptions { engine, ..SolveOptions::default() };
            let res = solve_with(&inst.g, inst.s, inst.t, &inst.lang, &opts, &Constraints::default())?;
            print_query(&inst.g, &res, format, stats);
            Ok(found_code(res.found()))
        }
        Command::Enumerate { query, engine, limit } => {
            let inst = query.load()?;
            let opts = SolveOptions { engine, ..SolveOptions::default() };
            let trails = TrailEnumerator::new(&inst.g, inst.s, inst.t, &inst.lang, opts)
                .take(limit.unwrap_or(usize::MAX))
                .map(|t| t.map_err(anyhow::Error::from));
            let any = print_trails(&inst.g, trails)?;
            if !any {
                println!("no trail");
            }
            Ok(found_code(any))
        }
        Command::Reduce { edp, lang, out } => {
            let instance = parse_edp(&read(&edp)?).with_context(|| format!("in {}", edp.display()))?;
            let dfa = lang.dfa()?;
            let witness = extract_witness(&dfa)?;
            let gadget = build_hardness_gadget(&dfa, &witness, &instance)?;
            let ends = format!("{} {}", gadget.graph.name(gadget.s), gadget.graph.name(gadget.t));
            match out {
                Some(path) => {
                    fs::write(&path, gadget.graph.to_text()).with_context(|| format!("cannot write {}", path.display()))?;
                    println!("{ends}");
                }
                None => {
                    print!("{}", gadget.graph.to_text());
                    println!("{ends}");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Oracle { query, guard, all } => {
            let inst = query.load()?;
            if all {
                let trails = all_trails_oracle(&inst.g, inst.s, inst.t, inst.lang.dfa(), guard)?;
                let any = print_trails(&inst.g, trails.into_iter().map(Ok))?;
                if !any {
                    println!("no trail");
                }
                Ok(found_code(any))
            } else {
                let opts = SolveOptions { engine: Engine::Brute, brute_guard: guard, ..SolveOptions::default() };
                let res = solve_with(&inst.g, inst.s, inst.t, &inst.lang, &opts, &Constraints::default())?;
                print_query(&inst.g, &res, Format::Human, false);
                Ok(found_code(res.found()))
            }
        }
        Command::DfaDump { lang, out } => {
            let dfa = lang.dfa()?;
            let report = classify(&dfa)?;
            let notes: Vec<(String, String)> =
                report.to_kv().into_iter().filter(|(k, _)| !k.starts_with("witness.")).collect();
            let dot = to_dot(&dfa, &notes);
            match out {
                Some(path) => fs::write(&path, dot).with_context(|| format!("cannot write {}", path.display()))?,
                None => print!("{dot}"),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
