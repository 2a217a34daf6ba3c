use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mckay_core::chartab::CharacterTable;
use mckay_core::corpus::run_corpus;
use mckay_core::groups::catalog;
use mckay_core::{
    assemble_global, build_binary_polyhedral, char_minor_determinant, character_table,
    conjugacy_structure, mckay_graph, parse_group, parse_surface, verify_global, verify_local,
    AdeLabel, FiniteGroup, LocalModel, DEFAULT_SEED,
};
use serde::Serialize;
use serde_json::{json, Value};

const SCHEMA: u32 = 1;

#[derive(Parser)]
#[command(name = "mckay", version, about = "Exact checks of the multiplicative McKay correspondence")]
struct Cli {
    /// Seed for the randomized eigenspace splitting in character table computation.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect a group.
    Group {
        #[command(subcommand)]
        action: GroupAction,
    },
    /// Exact character table.
    Chartable(GroupSource),
    /// McKay graph of a finite subgroup of SL₂.
    Mckay {
        #[command(flatten)]
        source: GroupSource,
        #[arg(long, value_enum, default_value_t = GraphFormat::Json)]
        format: GraphFormat,
        /// Also write the Graphviz rendering to this path.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Verify the correspondence locally or on a surface model.
    Verify {
        #[command(subcommand)]
        scope: VerifyScope,
    },
    /// Determinant of the character table minor without the trivial row and identity column.
    Minor(GroupSource),
    /// Dump the structure constants of the local rings.
    Local {
        #[arg(long = "type", value_name = "ADE")]
        label: AdeLabel,
        #[arg(long)]
        dump_orbifold: bool,
        #[arg(long)]
        dump_resolution: bool,
        /// Dump the orbifold ring before taking invariants.
        #[arg(long)]
        full: bool,
    },
    /// Every ADE type in the standard suite plus the extra groups.
    Corpus,
}

#[derive(Subcommand)]
enum GroupAction {
    /// Order, exponent and conjugacy classes.
    Info {
        #[command(flatten)]
        source: GroupSource,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum VerifyScope {
    Local {
        #[arg(long = "type", value_name = "ADE")]
        label: AdeLabel,
    },
    Global {
        #[arg(long)]
        config: PathBuf,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct GroupSource {
    /// ADE type such as A4, D5 or E8.
    #[arg(long = "type", value_name = "ADE")]
    label: Option<AdeLabel>,
    /// JSON file with {"cayley": [[..]]} or {"generators": [..]}.
    #[arg(long = "group", value_name = "FILE")]
    file: Option<PathBuf>,
    /// Built-in group: S3, S4, Alt4, Dih8, Q8, Z<n>.
    #[arg(long)]
    name: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Dot,
    Json,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] mckay_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

type Outcome = Result<bool, CliError>;

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

struct Context {
    seed: u64,
    out: Option<PathBuf>,
    started: Instant,
}

impl Context {
    fn emit_text(&self, text: &str) -> Result<(), CliError> {
        match &self.out {
            Some(path) => write(path, text),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }

    /// Wrap a payload in the versioned envelope with its run manifest.
    fn emit(&self, command: &str, inputs: Value, pass: Option<bool>, payload: impl Serialize) -> Result<(), CliError> {
        let mut report = json!({
            "schema": SCHEMA,
            "manifest": {
                "command": command,
                "inputs": inputs,
                "seed": self.seed,
                "version": env!("CARGO_PKG_VERSION"),
                "timings_ms": { "total": self.started.elapsed().as_secs_f64() * 1e3 },
            },
        });
        if let Some(pass) = pass {
            report["pass"] = json!(pass);
        }
        report["result"] = serde_json::to_value(payload).expect("serializable payload");
        let mut text = serde_json::to_string_pretty(&report).expect("serializable report");
        text.push('\n');
        self.emit_text(&text)
    }
}

impl GroupSource {
    fn load(&self) -> Result<FiniteGroup, CliError> {
        if let Some(label) = self.label {
            return Ok(build_binary_polyhedral(label)?.with_name(label.to_string()));
        }
        if let Some(path) = &self.file {
            return Ok(parse_group(&read(path)?)?);
        }
        let name = self.name.as_deref().unwrap_or_default();
        Ok(catalog::named(name)?)
    }

    fn describe(&self) -> Value {
        match (&self.label, &self.file, &self.name) {
            (Some(l), _, _) => json!({ "type": l }),
            (_, Some(f), _) => json!({ "group": f.display().to_string() }),
            (_, _, n) => json!({ "name": n }),
        }
    }
}

fn group_summary(group: &FiniteGroup) -> Value {
    let cs = conjugacy_structure(group);
    json!({
        "name": group.name(),
        "order": group.order(),
        "exponent": group.exponent(),
        "classes": cs.len(),
        "class_sizes": cs.sizes(),
        "representatives": cs.representatives,
        "class_inverse": cs.class_inverse,
        "matrix_representation": group.matrices().is_some(),
    })
}

fn table_of(group: &FiniteGroup, seed: u64) -> Result<CharacterTable, CliError> {
    Ok(character_table(group, &conjugacy_structure(group), seed)?)
}

fn table_json(table: &CharacterTable) -> Value {
    json!({
        "group": table.group,
        "order": table.order,
        "prime": table.prime,
        "class_sizes": table.class_sizes,
        "class_orders": table.class_orders,
        "degrees": table.degrees,
        "rows": table.rows,
        "natural_character": table.natural_character,
    })
}

fn run(cli: Cli) -> Outcome {
    let ctx = Context {
        seed: cli.seed,
        out: cli.out,
        started: Instant::now(),
    };
    match cli.command {
        Command::Group {
            action: GroupAction::Info { source, json },
        } => {
            let group = source.load()?;
            let summary = group_summary(&group);
            if json {
                ctx.emit("group info", source.describe(), None, summary)?;
            } else {
                ctx.emit_text(&format!(
                    "group: {}\norder: {}\nexponent: {}\nclasses: {}\nclass sizes: {:?}\n",
                    group.name(),
                    summary["order"],
                    summary["exponent"],
                    summary["classes"],
                    conjugacy_structure(&group).sizes(),
                ))?;
            }
            Ok(true)
        }
        Command::Chartable(source) => {
            let group = source.load()?;
            let table = table_of(&group, ctx.seed)?;
            ctx.emit("chartable", source.describe(), None, table_json(&table))?;
            Ok(true)
        }
        Command::Mckay { source, format, dot } => {
            let group = source.load()?;
            let graph = mckay_graph(&table_of(&group, ctx.seed)?)?;
            let rendering = graph.to_dot(group.name());
            if let Some(path) = dot {
                write(&path, &rendering)?;
            }
            match format {
                GraphFormat::Dot => ctx.emit_text(&rendering)?,
                GraphFormat::Json => ctx.emit(
                    "mckay",
                    source.describe(),
                    None,
                    json!({
                        "affine": graph.affine_label(),
                        "finite": graph.finite_label(),
                        "adjacency": graph.adjacency,
                        "dims": graph.dims,
                        "trivial_vertex": graph.trivial_vertex,
                    }),
                )?,
            }
            Ok(true)
        }
        Command::Verify {
            scope: VerifyScope::Local { label },
        } => {
            let model = LocalModel::from_label(label, ctx.seed)?;
            let report = verify_local(&model);
            let pass = report.pass;
            ctx.emit(
                "verify local",
                json!({ "type": label }),
                Some(pass),
                json!({
                    "group": group_summary(&model.group),
                    "checks": report.checks,
                    "diagnostic": report.diagnostic,
                    "timings_ms": report.timings_ms,
                    "phi": model.map,
                }),
            )?;
            Ok(pass)
        }
        Command::Verify {
            scope: VerifyScope::Global { config },
        } => {
            let surface = parse_surface(&read(&config)?)?;
            let model = assemble_global(&surface, ctx.seed)?;
            let report = verify_global(&model);
            let pass = report.pass;
            ctx.emit(
                "verify global",
                json!({ "config": config.display().to_string() }),
                Some(pass),
                report,
            )?;
            Ok(pass)
        }
        Command::Minor(source) => {
            let group = source.load()?;
            let table = table_of(&group, ctx.seed)?;
            let det = char_minor_determinant(&table);
            let pass = !det.is_zero();
            ctx.emit(
                "minor",
                source.describe(),
                Some(pass),
                json!({
                    "group": group_summary(&group),
                    "minor": table.minor(),
                    "determinant": det,
                    "nonzero": pass,
                }),
            )?;
            Ok(pass)
        }
        Command::Local {
            label,
            dump_orbifold,
            dump_resolution,
            full,
        } => {
            let model = LocalModel::from_label(label, ctx.seed)?;
            // with neither flag, dump both
            let both = !dump_orbifold && !dump_resolution;
            let mut dumps = serde_json::Map::new();
            if dump_orbifold || both {
                let algebra = if full { &model.orbifold_full } else { &model.orbifold };
                dumps.insert("orbifold".into(), algebra.structure_constants_json());
            }
            if dump_resolution || both {
                dumps.insert("resolution".into(), model.resolution.structure_constants_json());
            }
            ctx.emit("local", json!({ "type": label, "full": full }), None, Value::Object(dumps))?;
            Ok(true)
        }
        Command::Corpus => {
            let report = run_corpus(ctx.seed)?;
            let pass = report.pass;
            ctx.emit("corpus", json!({}), Some(pass), report)?;
            Ok(pass)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
