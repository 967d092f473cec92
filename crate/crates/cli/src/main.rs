mod render;

/// Stdout writes that tolerate a closed pipe, e.g. `drtest ... | head`.
macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write as _;
        let _ = write!(std::io::stdout(), $($t)*);
    }};
}

macro_rules! outln {
    ($($t:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use drtest::adian::{generalized_left_graph, generalized_verdict};
use drtest::checker::check_verdict;
use drtest::corpus;
use drtest::dot;
use drtest::itest::{SearchConfig, DEFAULT_BUDGET};
use drtest::ivanov::perturbation_bound;
use drtest::linalg::null_space;
use drtest::log_tools::{initial_graph, terminal_graph};
use drtest::pipeline::{run_test, TestResult};
use drtest::rational::{self, Rational};
use drtest::whitehead::DEFAULT_CYCLE_CAP;
use drtest::{
    adian_verdict, build_tower, detect_adian, itest_fixed, left_graph, parse_log,
    parse_presentation, right_graph, run_pipeline, weight_test, whitehead_graph, Input,
    PipelineConfig, Presentation, Report, Verdict,
};

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(
    name = "drtest",
    version,
    about = "Asphericity and DR tests for group presentations"
)]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Keep running tests after the first DR verdict.
    #[arg(long, global = true)]
    all: bool,
    /// LP-call cap for the I-test search.
    #[arg(long, global = true, env = "DRTEST_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Cap on the number of simple cycles in the weight test.
    #[arg(long, global = true, default_value_t = DEFAULT_CYCLE_CAP)]
    cycle_cap: usize,
    /// Seed for generated instances.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every applicable test, cheapest first.
    Check { file: PathBuf },
    /// The I-test, searching for a vector unless one is given.
    Itest {
        file: PathBuf,
        /// Comma-separated rationals, e.g. "1,0,-1/2".
        #[arg(long)]
        vector: Option<String>,
    },
    /// Deforestation and weak deforestation of a LOG.
    Log { file: PathBuf },
    /// Left, right and generalized left graphs.
    Adian { file: PathBuf },
    /// The weight test on the Whitehead graph.
    Whitehead { file: PathBuf },
    /// Extreme points of the occurrence clouds of a one-relator presentation.
    Hull { file: PathBuf },
    /// The strong Dyck shape test for a two-generator one-relator presentation.
    Dyck { file: PathBuf },
    /// Both one-relator tests.
    Kervaire { file: PathBuf },
    /// Build the tower [w_n, [..., [w_1, [x, y]]]] and test it.
    Tower {
        /// Words in x and y separated by ';', innermost first.
        #[arg(long)]
        words: String,
    },
    /// Distinguished rotation and perturbation bound for an extra relator.
    Ivanov {
        /// Presentation of the base group.
        file: PathBuf,
        /// The extra relator, over the base generators and the extra one.
        #[arg(long)]
        relator: String,
        #[arg(long, default_value = "x")]
        extra_gen: String,
        /// 1-based index of the perturbing generator; defaults to the first
        /// with a nonzero coordinate.
        #[arg(long)]
        index: Option<usize>,
        /// Vector orthogonal to the base relators; defaults to a null space
        /// basis vector.
        #[arg(long)]
        vector: Option<String>,
    },
    /// Generate random instances.
    Gen {
        kind: GenKind,
        #[arg(long, default_value_t = 5)]
        size: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Write one file per instance into this directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check every file of a directory, in parallel, ordered by file name.
    Batch { dir: PathBuf },
    /// Graphviz output for a LOG or presentation.
    Dot {
        file: PathBuf,
        #[arg(long, value_enum)]
        graph: Option<GraphKind>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Lot,
    Tower,
    Adian,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphKind {
    Log,
    Initial,
    Terminal,
    Left,
    Right,
    Generalized,
    Whitehead,
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    version: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    #[serde(flatten)]
    body: &'a T,
}

fn read_input(path: &Path) -> Result<Input> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let parsed = if path.extension().is_some_and(|e| e == "log") {
        parse_log(&text).map(Input::Log)
    } else {
        parse_presentation(&text).map(Input::Presentation)
    };
    parsed.map_err(|e| anyhow!("{}:{e}", path.display()))
}

fn exit_code(v: Option<&Verdict>) -> u8 {
    match v {
        Some(Verdict::ProvenDr { .. }) => 10,
        Some(Verdict::ProvenAspherical { .. }) => 11,
        Some(Verdict::Inconclusive { .. }) => 20,
        Some(Verdict::Inapplicable { .. }) | None => 30,
    }
}

fn to_json<T: Serialize>(body: &T, seed: Option<u64>) -> Result<String> {
    Ok(serde_json::to_string_pretty(&Envelope {
        version: VERSION,
        seed,
        body,
    })?)
}

fn parse_vector(text: &str) -> Result<Vec<Rational>> {
    rational::parse_vector(text).map_err(|e| anyhow!("bad vector: {e}"))
}

struct App {
    cli: Cli,
}

impl App {
    fn config(&self) -> PipelineConfig {
        PipelineConfig {
            search: SearchConfig {
                budget: self.cli.budget,
                ..SearchConfig::default()
            },
            cycle_cap: self.cli.cycle_cap,
            all: self.cli.all,
            weight_test: true,
        }
    }

    fn print_report(&self, input: &Input, report: &Report) -> Result<u8> {
        if self.cli.json {
            outln!("{}", to_json(report, self.cli.seed)?);
        } else {
            out!("{}", render::report(&input.presentation(), report));
        }
        Ok(exit_code(report.strongest()))
    }

    /// A report over the named pipeline tests only.
    fn tests(&self, file: &Path, names: &[&str]) -> Result<u8> {
        let input = read_input(file)?;
        let config = self.config();
        let results = names
            .iter()
            .filter_map(|n| run_test(n, &input, &config))
            .collect();
        let report = report_of(file, results);
        self.print_report(&input, &report)
    }

    fn run(&self) -> Result<u8> {
        match &self.cli.command {
            Command::Check { file } => {
                let input = read_input(file)?;
                let report = run_pipeline(&file.display().to_string(), &input, &self.config());
                self.print_report(&input, &report)
            }
            Command::Itest { file, vector } => match vector {
                None => self.tests(file, &["itest", "blocks"]),
                Some(text) => {
                    let input = read_input(file)?;
                    let p = input.presentation();
                    let v = parse_vector(text)?;
                    let start = Instant::now();
                    let verdict = checked(&p, &input, itest_fixed(&p, &v)?);
                    let result = TestResult {
                        test: "itest",
                        verdict,
                        elapsed_ms: start.elapsed().as_millis(),
                    };
                    self.print_report(&input, &report_of(file, vec![result]))
                }
            },
            Command::Log { file } => {
                let input = read_input(file)?;
                if input.log().is_none() {
                    bail!("{}: expected a LOG (.log file)", file.display());
                }
                self.tests(file, &["log"])
            }
            Command::Adian { file } => self.adian(file),
            Command::Whitehead { file } => self.whitehead(file),
            Command::Hull { file } => self.tests(file, &["hull"]),
            Command::Dyck { file } => self.tests(file, &["dyck"]),
            Command::Kervaire { file } => self.tests(file, &["hull", "dyck"]),
            Command::Tower { words } => self.tower(words),
            Command::Ivanov {
                file,
                relator,
                extra_gen,
                index,
                vector,
            } => self.ivanov(file, relator, extra_gen, *index, vector.as_deref()),
            Command::Gen {
                kind,
                size,
                count,
                out,
            } => self.generate(*kind, *size, *count, out.as_deref()),
            Command::Batch { dir } => self.batch(dir),
            Command::Dot { file, graph } => self.dot(file, *graph),
        }
    }

    fn adian(&self, file: &Path) -> Result<u8> {
        let input = read_input(file)?;
        let p = input.presentation();
        let mut results = Vec::new();
        let start = Instant::now();
        let verdict = match detect_adian(&p) {
            Some(a) => adian_verdict(&a),
            None => Verdict::inapplicable("not an Adian presentation"),
        };
        results.push(TestResult {
            test: "adian",
            verdict: checked(&p, &input, verdict),
            elapsed_ms: start.elapsed().as_millis(),
        });
        let start = Instant::now();
        results.push(TestResult {
            test: "generalized_left_graph",
            verdict: checked(&p, &input, generalized_verdict(&p)),
            elapsed_ms: start.elapsed().as_millis(),
        });
        let report = report_of(file, results);
        if !self.cli.json {
            if let Some(a) = detect_adian(&p) {
                for (side, g) in [("L", left_graph(&a)), ("R", right_graph(&a))] {
                    outln!("{side}:");
                    for (e, edge) in g.edges.iter().enumerate() {
                        outln!(
                            "  e{} {} - {} labels {}",
                            e + 1,
                            g.vertices[edge.a],
                            g.vertices[edge.b],
                            drtest::adian::label_names(&g, e).join(",")
                        );
                    }
                }
            }
        }
        self.print_report(&input, &report)
    }

    fn whitehead(&self, file: &Path) -> Result<u8> {
        let p = read_input(file)?.presentation();
        let g = whitehead_graph(&p);
        let cycles = g.simple_cycles(self.cli.cycle_cap).map(|c| c.len());
        let result = weight_test(&p, self.cli.cycle_cap)?;
        if self.cli.json {
            #[derive(Serialize)]
            struct Out<'a> {
                input: String,
                vertices: usize,
                edges: usize,
                simple_cycles: Option<usize>,
                weight_test: &'a drtest::whitehead::WeightTest,
            }
            let out = Out {
                input: file.display().to_string(),
                vertices: g.num_vertices(),
                edges: g.edges().len(),
                simple_cycles: cycles,
                weight_test: &result,
            };
            outln!("{}", to_json(&out, self.cli.seed)?);
        } else {
            outln!("{}\n  {p}", file.display());
            outln!(
                "  Whitehead graph: {} vertices, {} edges, {} simple cycles",
                g.num_vertices(),
                g.edges().len(),
                cycles.map_or("too many".to_string(), |c| c.to_string())
            );
            out!("{}", render::weight_test(&result, p.num_relators()));
        }
        Ok(0)
    }

    fn tower(&self, words: &str) -> Result<u8> {
        let gens = vec!["x".to_string(), "y".to_string()];
        let ws = words
            .split(';')
            .filter(|w| !w.trim().is_empty())
            .map(|w| drtest::parse_word(w, &gens).map_err(|e| anyhow!("--words: {e}")))
            .collect::<Result<Vec<_>>>()?;
        let r = build_tower(&ws, true)?;
        let p = Presentation::new(gens, vec![r])?;
        let input = Input::Presentation(p);
        let report = run_pipeline("tower", &input, &self.config());
        self.print_report(&input, &report)
    }

    fn ivanov(
        &self,
        file: &Path,
        relator: &str,
        extra: &str,
        index: Option<usize>,
        vector: Option<&str>,
    ) -> Result<u8> {
        let q = read_input(file)?.presentation();
        let n = q.num_generators();
        let mut gens = q.generators().to_vec();
        gens.push(extra.to_string());
        let r = drtest::parse_word(relator, &gens).map_err(|e| anyhow!("--relator: {e}"))?;
        let v = match vector {
            Some(text) => parse_vector(text)?,
            None => {
                let rows: Vec<Vec<i64>> = q.abelianizations().into_iter().map(|a| a.0).collect();
                null_space(&rows, n)
                    .into_iter()
                    .next()
                    .ok_or_else(|| anyhow!("the base relators have no nonzero orthogonal vector"))?
            }
        };
        let i = match index {
            Some(0) => bail!("--index is 1-based"),
            Some(i) => i - 1,
            None => v
                .iter()
                .position(|x| *x != rational::int(0))
                .ok_or_else(|| anyhow!("the vector is zero"))?,
        };
        let pert = perturbation_bound(&q, &r, i, &v)?;
        let m0 = i64::try_from(pert.m0)?;
        let perturbed = pert.perturbed_relator(m0).display(&gens).to_string();
        if self.cli.json {
            #[derive(Serialize)]
            struct Out<'a> {
                rotation_word: String,
                perturbation: &'a drtest::ivanov::Perturbation,
                perturbed_relator: String,
            }
            let out = Out {
                rotation_word: pert.rotation.word.display(&gens).to_string(),
                perturbation: &pert,
                perturbed_relator: perturbed,
            };
            outln!("{}", to_json(&out, self.cli.seed)?);
        } else {
            let rot = &pert.rotation;
            outln!(
                "r' = {}{}",
                rot.word.display(&gens),
                if rot.inverted { " (from r^-1)" } else { "" }
            );
            outln!("  rotation {}, beta = {}", rot.rotation, pert.beta);
            outln!("  sequence {:?}", rot.sequence);
            outln!(
                "  weights at M = 0: {}",
                rational::format_vector(&pert.constants)
            );
            outln!(
                "  vector {}, perturbing {}",
                rational::format_vector(&v),
                gens[i]
            );
            outln!("  M0 = {}", pert.m0);
            outln!("  {}^M0 r' = {perturbed}", gens[i]);
        }
        Ok(0)
    }

    fn generate(&self, kind: GenKind, size: usize, count: usize, out: Option<&Path>) -> Result<u8> {
        let seed = self.cli.seed.unwrap_or(0);
        let mut rng = corpus::rng(seed);
        if count > 1 && out.is_none() {
            bail!("--count above 1 needs --out DIR");
        }
        for k in 1..=count {
            let (text, ext) = match kind {
                GenKind::Lot => (corpus::random_lot(&mut rng, size).to_string(), "log"),
                GenKind::Adian => (
                    format!("{}\n", corpus::random_adian(&mut rng, size, 4)),
                    "pres",
                ),
                GenKind::Tower => {
                    let (_, w) = corpus::random_tower(&mut rng, size, 4)?;
                    let p = Presentation::new(vec!["x".into(), "y".into()], vec![w])?;
                    (format!("{p}\n"), "pres")
                }
            };
            match out {
                None => out!("{text}"),
                Some(dir) => {
                    fs::create_dir_all(dir)?;
                    let name = format!("{}-{seed}-{k:04}.{ext}", kind_name(kind));
                    fs::write(dir.join(name), text)?;
                }
            }
        }
        Ok(0)
    }

    fn batch(&self, dir: &Path) -> Result<u8> {
        let mut files: Vec<PathBuf> = fs::read_dir(dir)
            .with_context(|| format!("cannot read {}", dir.display()))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.is_file())
            .collect();
        files.sort();
        let config = self.config();
        let entries: Vec<BatchEntry> = files
            .par_iter()
            .map(|f| match read_input(f) {
                Ok(input) => {
                    let report = run_pipeline(&f.display().to_string(), &input, &config);
                    BatchEntry::Report {
                        presentation: input.presentation(),
                        report,
                    }
                }
                Err(e) => BatchEntry::Error {
                    input: f.display().to_string(),
                    error: format!("{e:#}"),
                },
            })
            .collect();
        if self.cli.json {
            let body: Vec<serde_json::Value> = entries
                .iter()
                .map(|e| match e {
                    BatchEntry::Report { report, .. } => serde_json::to_value(report),
                    BatchEntry::Error { input, error } => {
                        Ok(serde_json::json!({ "input": input, "error": error }))
                    }
                })
                .collect::<Result<_, _>>()?;
            #[derive(Serialize)]
            struct Out {
                reports: Vec<serde_json::Value>,
            }
            outln!("{}", to_json(&Out { reports: body }, self.cli.seed)?);
        } else {
            for e in &entries {
                match e {
                    BatchEntry::Report { report, .. } => {
                        let by = report
                            .results
                            .iter()
                            .find(|r| r.verdict.is_proven())
                            .map_or("", |r| r.test);
                        outln!("{:<16} {by:<24} {}", report.status, report.input);
                    }
                    BatchEntry::Error { input, error } => {
                        outln!("{:<16} {:<24} {input}: {error}", "error", "")
                    }
                }
            }
        }
        Ok(0)
    }

    fn dot(&self, file: &Path, graph: Option<GraphKind>) -> Result<u8> {
        let input = read_input(file)?;
        let p = input.presentation();
        let kind = graph.unwrap_or(if input.log().is_some() {
            GraphKind::Log
        } else {
            GraphKind::Whitehead
        });
        let need_log = || {
            input
                .log()
                .ok_or_else(|| anyhow!("this graph needs a LOG (.log file)"))
        };
        let need_adian = || detect_adian(&p).ok_or_else(|| anyhow!("not an Adian presentation"));
        let text = match kind {
            GraphKind::Log => dot::log_dot(need_log()?),
            GraphKind::Initial => dot::undirected_dot(&initial_graph(need_log()?), "I"),
            GraphKind::Terminal => dot::undirected_dot(&terminal_graph(need_log()?), "T"),
            GraphKind::Left => dot::labeled_dot(&left_graph(&need_adian()?), "L"),
            GraphKind::Right => dot::labeled_dot(&right_graph(&need_adian()?), "R"),
            GraphKind::Generalized => dot::labeled_dot(
                &generalized_left_graph(&p).ok_or_else(|| anyhow!("no generalized left graph"))?,
                "L",
            ),
            GraphKind::Whitehead => dot::whitehead_dot(&whitehead_graph(&p)),
        };
        out!("{text}");
        Ok(0)
    }
}

enum BatchEntry {
    Report {
        #[allow(dead_code)]
        presentation: Presentation,
        report: Report,
    },
    Error {
        input: String,
        error: String,
    },
}

fn kind_name(kind: GenKind) -> &'static str {
    match kind {
        GenKind::Lot => "lot",
        GenKind::Tower => "tower",
        GenKind::Adian => "adian",
    }
}

/// Downgrades a verdict whose witness fails the independent check.
fn checked(p: &Presentation, input: &Input, v: Verdict) -> Verdict {
    match check_verdict(p, input.log(), &v) {
        Ok(()) => v,
        Err(e) => Verdict::not_satisfied(format!("witness failed the independent check: {e}")),
    }
}

fn report_of(file: &Path, results: Vec<TestResult>) -> Report {
    let status = results
        .iter()
        .map(|r| &r.verdict)
        .max_by_key(|v| v.strength())
        .map_or("Inapplicable", Verdict::status);
    Report {
        input: file.display().to_string(),
        results,
        weight_test: None,
        status,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let app = App { cli };
    match app.run() {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
