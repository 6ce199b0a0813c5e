mod report;

use std::io::{IsTerminal, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use multiserial::endalgebra::{verify_repdim_le_3, DEFAULT_BOUND};
use multiserial::fuzz::{fuzz_corpus, FuzzLimits};
use multiserial::pipeline::{auslander_generator, run_theorem1};
use multiserial::presentation::DEFAULT_MAX_LEN;
use multiserial::splitting::{embedding_witness, split, SplittingDatum};
use multiserial::{dsl, Error, Presentation};

use report::*;

macro_rules! outln {
    ($buf:expr, $($arg:tt)*) => {{
        $buf.push_str(&format!($($arg)*));
        $buf.push('\n');
    }};
}

#[derive(Parser)]
#[command(name = "msa", version, about = "Special multiserial algebras: bases, splitting, and repdim witnesses")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Admissibility, condition (S) and relation classification
    Check { file: PathBuf },
    /// Basis of nonzero paths
    Basis {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_LEN)]
        max_length: usize,
    },
    /// Apply a splitting datum at a vertex
    Split {
        file: PathBuf,
        #[arg(long)]
        vertex: String,
        /// JSON object with arrays "S1", "S2", "E1", "E2" of arrow names
        #[arg(long)]
        datum: String,
    },
    /// Split until every component is linear or cyclic
    Pipeline { file: PathBuf },
    /// Summands of the generator-cogenerator
    Generator { file: PathBuf },
    /// Check gldim End(M)^op <= 3 for the generator M
    Verify {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: usize,
        /// Factor out socles until the presentation is monomial
        #[arg(long)]
        via_socle: bool,
    },
    /// Print A/soc(A)
    Soclequotient { file: PathBuf },
    /// Random monomial special multiserial presentations
    Fuzz {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 8)]
        max_vertices: usize,
        #[arg(long, default_value_t = 14)]
        max_arrows: usize,
    },
}

#[derive(Deserialize)]
struct DatumArg {
    #[serde(alias = "s1", default)]
    #[serde(rename = "S1")]
    s1: Vec<String>,
    #[serde(alias = "s2", default)]
    #[serde(rename = "S2")]
    s2: Vec<String>,
    #[serde(alias = "e1", default)]
    #[serde(rename = "E1")]
    e1: Vec<String>,
    #[serde(alias = "e2", default)]
    #[serde(rename = "E2")]
    e2: Vec<String>,
}

struct Style {
    color: bool,
}

impl Style {
    fn detect() -> Self {
        let disabled = std::env::var("QS_COLOR").is_ok_and(|v| v == "0");
        Style {
            color: !disabled && std::io::stdout().is_terminal(),
        }
    }

    fn verdict(&self, ok: bool) -> String {
        let word = if ok { "yes" } else { "no" };
        if self.color {
            format!("\x1b[{}m{word}\x1b[0m", if ok { 32 } else { 31 })
        } else {
            word.to_string()
        }
    }
}

enum Outcome {
    Ok,
    VerdictFalse,
}

fn load(file: &PathBuf) -> Result<Presentation, Error> {
    let text = std::fs::read_to_string(file).map_err(|e| Error::Io(format!("{}: {e}", file.display())))?;
    dsl::parse(&text)
}

fn emit<T: Serialize>(buf: &mut String, command: &'static str, body: T) {
    let env = Envelope {
        schema: SCHEMA,
        command,
        body,
    };
    outln!(buf, "{}", serde_json::to_string_pretty(&env).expect("reports serialize"));
}

fn run(cli: &Cli, style: &Style, buf: &mut String) -> Result<Outcome, Error> {
    let json = cli.format == Format::Json;
    match &cli.command {
        Command::Check { file } => {
            let p = load(file)?;
            let adm = p.is_admissible(DEFAULT_MAX_LEN);
            let s = if adm.admissible { Some(p.check_condition_s()?) } else { None };
            let classes = if adm.admissible { Some(p.classify_relations()?) } else { None };
            let r = CheckReport::new(&p, &adm, s.as_ref(), classes.as_deref());
            let ok = r.special_multiserial;
            if json {
                emit(buf, "check", r);
            } else {
                outln!(buf, "algebra {}", r.name);
                match r.nilpotency_index {
                    Some(n) => outln!(buf, "admissible: {} (nilpotency index {n})", style.verdict(true)),
                    None => outln!(buf, "admissible: {} ({})", style.verdict(false), r.diagnostics.join("; ")),
                }
                outln!(buf, "monomial: {}", style.verdict(r.monomial));
                if let Some(holds) = r.condition_s {
                    outln!(buf, "condition (S): {}", style.verdict(holds));
                }
                for w in &r.witnesses {
                    outln!(buf, "  witness: {} has {} {} and {}", w.arrow, w.side, w.first, w.second);
                }
                for rel in &r.relations {
                    outln!(buf, "  relation {}: {}", rel.relation, rel.class);
                }
                outln!(buf, "special multiserial: {}", style.verdict(ok));
            }
            Ok(if ok { Outcome::Ok } else { Outcome::VerdictFalse })
        }
        Command::Basis { file, max_length } => {
            let p = load(file)?;
            let r = p.compute_basis(*max_length)?;
            let b = BasisJson::new(&p, &r);
            if json {
                emit(buf, "basis", b);
            } else {
                outln!(buf, "algebra {}", b.name);
                outln!(buf, "dimension {} (radical {}), nilpotency index {}", b.dimension, b.radical_dimension, b.nilpotency_index);
                for (len, level) in b.paths_by_length.iter().enumerate() {
                    outln!(buf, "  length {len}: {}", level.join(" "));
                }
            }
            Ok(Outcome::Ok)
        }
        Command::Split { file, vertex, datum } => {
            let p = load(file)?;
            let arg: DatumArg = serde_json::from_str(datum).map_err(|e| Error::Syntax {
                line: e.line(),
                column: e.column(),
                message: format!("--datum: {e}"),
            })?;
            let d = SplittingDatum::from_names(p.quiver(), vertex, &arg.s1, &arg.s2, &arg.e1, &arg.e2)?;
            let out = split(&p, &d)?;
            let w = embedding_witness(&p, &out, &d)?;
            if json {
                emit(buf, 
                    "split",
                    SplitJson {
                        name: p.name().to_string(),
                        datum: DatumJson::new(p.quiver(), &d),
                        witness: WitnessPairs::new(p.quiver(), out.quiver(), &w),
                        presentation: dsl::print(&out),
                    },
                );
            } else {
                outln!(buf, "# split {}", d.describe(p.quiver()));
                outln!(buf, "# radical dimension preserved: {}", w.radical_dimension());
                buf.push_str(&dsl::print(&out));
            }
            Ok(Outcome::Ok)
        }
        Command::Pipeline { file } => {
            let p = load(file)?;
            let t = run_theorem1(&p)?;
            let r = PipelineJson::new(&t);
            if json {
                emit(buf, "pipeline", r);
            } else {
                outln!(buf, "algebra {}: c = {}", r.name, r.initial_c);
                for (i, (s, step)) in r.trace.iter().zip(&t.steps).enumerate() {
                    outln!(buf, 
                        "step {}: split {} on the {} side, {}; c = {}",
                        i + 1,
                        s.vertex,
                        s.side,
                        step.datum.describe(step.before.quiver()),
                        s.c_after
                    );
                }
                outln!(buf, "final c = {}", r.final_c);
                buf.push_str(&r.target);
                outln!(buf, "components: {}", r.components.join(", "));
            }
            Ok(Outcome::Ok)
        }
        Command::Generator { file } => {
            let p = load(file)?;
            let g = auslander_generator(&p)?;
            let r = GeneratorJson::new(&p, &g);
            if json {
                emit(buf, "generator", r);
            } else {
                outln!(buf, "algebra {}: {} summands", r.name, r.summands.len());
                for s in &r.summands {
                    let dims: Vec<String> = s.module.dimension_vector.iter().map(usize::to_string).collect();
                    outln!(buf, "  {:<12} ({})", s.label, dims.join(","));
                }
            }
            Ok(Outcome::Ok)
        }
        Command::Verify { file, bound, via_socle } => {
            let p = load(file)?;
            let r = verify_repdim_le_3(&p, *bound, *via_socle)?;
            let v = VerifyJson::new(&p, &r);
            if json {
                emit(buf, "verify", v);
            } else {
                outln!(buf, "algebra {}", v.name);
                if v.socle_steps > 0 {
                    outln!(buf, "socle quotients taken: {}", v.socle_steps);
                }
                outln!(buf, "splitting steps: {}; components: {}", v.steps, v.components.join(", "));
                outln!(buf, "generator: {} summands: {}", v.summands.len(), v.summands.join(" "));
                outln!(buf, "dim End(M) = {}", v.end_dimension);
                outln!(buf, "gldim End(M)^op = {}", r.gldim.global_dimension);
                outln!(buf, "gldim <= 3: {}", style.verdict(true));
            }
            Ok(Outcome::Ok)
        }
        Command::Soclequotient { file } => {
            let p = load(file)?;
            let dim = p.dimension()?;
            let soc = p.right_socle()?.len();
            let out = p.socle_quotient()?;
            let qdim = out.dimension()?;
            if json {
                emit(buf, 
                    "soclequotient",
                    SocleQuotientJson {
                        name: p.name().to_string(),
                        dimension: dim,
                        socle_dimension: soc,
                        quotient_dimension: qdim,
                        presentation: dsl::print(&out),
                    },
                );
            } else {
                outln!(buf, "# dim A = {dim}, dim soc = {soc}, dim A/soc = {qdim}");
                buf.push_str(&dsl::print(&out));
            }
            Ok(Outcome::Ok)
        }
        Command::Fuzz {
            seed,
            count,
            max_vertices,
            max_arrows,
        } => {
            let limits = FuzzLimits {
                max_vertices: *max_vertices,
                max_arrows: *max_arrows,
            };
            let ps = fuzz_corpus(*seed, *count, limits)?;
            let texts: Vec<String> = ps.iter().map(dsl::print).collect();
            if json {
                emit(buf, 
                    "fuzz",
                    FuzzJson {
                        seed: *seed,
                        count: *count,
                        max_vertices: *max_vertices,
                        max_arrows: *max_arrows,
                        presentations: texts,
                    },
                );
            } else {
                buf.push_str(&texts.join("\n"));
            }
            Ok(Outcome::Ok)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let style = Style::detect();
    let mut buf = String::new();
    let code = match run(&cli, &style, &mut buf) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::VerdictFalse) => ExitCode::from(1),
        Err(e) => {
            if cli.format == Format::Json {
                emit(&mut buf, "error", ErrorReport::new(&e));
            }
            eprintln!("error: {e}");
            ExitCode::from(exit_code(e.class()) as u8)
        }
    };
    let mut stdout = std::io::stdout().lock();
    match stdout.write_all(buf.as_bytes()).and_then(|_| stdout.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        _ => code,
    }
}
