//! The `.kg` text format, DOT export and the `kgraph` command line.
//!
//! Exit codes: 0 success, 1 a property or validation failed, 2 usage or
//! parse error.

mod dot;
mod format;

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

pub use dot::{style_for, to_dot};
pub use format::{
    parse, parse_parents, parse_partition, serialize, serialize_parents, serialize_split,
    GraphDocument, ParentMap, ParseError, ParseErrorKind, FORMAT_VERSION,
};

use crate::kp::{
    saturation, verify_corner, KpError, verify_diagonal, verify_kp_family, verify_swap_identity,
    VerifyReport,
};
use crate::limar::{is_paired, limar_split, LimarError, SplitResult, SplitSpec};
use crate::skeleton::{validate, BuildError, Color, EdgeId, KGraph};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}:{source}")]
    Parse { path: String, source: ParseError },
    #[error("{0}")]
    Usage(String),
    /// A property or hypothesis does not hold.
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Failed(_) => 1,
            _ => 2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "kgraph", version, about = "Finite k-graphs: validation, splitting and Kumjian-Pask checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the k-graph axioms.
    Validate { file: PathBuf },
    /// Source-freeness, sinks per color and pairedness.
    Props {
        file: PathBuf,
        /// Only report pairedness in this color.
        #[arg(long)]
        color: Option<String>,
    },
    /// Split the graph and write the split graph and its parent map.
    Split {
        file: PathBuf,
        #[arg(long, conflicts_with = "default_partition")]
        partition_file: Option<PathBuf>,
        /// Singleton blocks on the base set, one block elsewhere.
        #[arg(long)]
        default_partition: bool,
        /// Split color for --default-partition (defaults to the document's split line).
        #[arg(long, requires = "default_partition")]
        color: Option<String>,
        /// Base vertex for --default-partition (defaults to the document's split line).
        #[arg(long, requires = "default_partition")]
        base: Option<String>,
        #[arg(short, long)]
        output: PathBuf,
        /// Parent-map sidecar path [default: <OUTPUT>.parents]
        #[arg(long)]
        parents: Option<PathBuf>,
    },
    /// Is the graph paired in the given color? Exit 1 with a witness if not.
    Paired {
        file: PathBuf,
        #[arg(long)]
        color: String,
    },
    /// The saturation of a vertex set.
    Saturate {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        set: Vec<String>,
    },
    /// Check the Kumjian-Pask identities of the induced family on a split.
    KpVerify {
        file: PathBuf,
        #[arg(long)]
        split_output: PathBuf,
        #[arg(long)]
        parents: PathBuf,
        #[arg(long, default_value_t = 2)]
        max_len: u32,
    },
    /// Graphviz export.
    Dot {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// Runs the command line and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return e.exit_code();
        }
    };
    match execute(&cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn load_document(path: &Path) -> Result<GraphDocument, CliError> {
    parse(&read(path)?).map_err(|source| CliError::Parse {
        path: path.display().to_string(),
        source,
    })
}

fn build(path: &Path, doc: &GraphDocument) -> Result<KGraph, CliError> {
    doc.build().map_err(|e| match e {
        BuildError::Structural(e) => CliError::Usage(format!("{}: {e}", path.display())),
        BuildError::Invalid(report) => {
            CliError::Failed(format!("{} is not a k-graph:\n{report}", path.display()))
        }
    })
}

fn load_graph(path: &Path) -> Result<(GraphDocument, KGraph), CliError> {
    let doc = load_document(path)?;
    let g = build(path, &doc)?;
    Ok((doc, g))
}

fn color(g: &KGraph, name: &str) -> Result<Color, CliError> {
    g.skeleton()
        .color_by_name(name)
        .ok_or_else(|| CliError::Usage(format!("unknown color {name}")))
}

fn io(e: std::io::Error) -> CliError {
    CliError::Io {
        path: "<output>".into(),
        source: e,
    }
}

fn limar_failure(e: LimarError) -> CliError {
    match e {
        LimarError::BadParents(_) => CliError::Usage(e.to_string()),
        e => CliError::Failed(e.to_string()),
    }
}

fn execute(command: &Command, out: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Validate { file } => cmd_validate(file, out),
        Command::Props { file, color } => cmd_props(file, color.as_deref(), out),
        Command::Split {
            file,
            partition_file,
            default_partition,
            color,
            base,
            output,
            parents,
        } => {
            let (doc, g) = load_graph(file)?;
            let spec = if let Some(pf) = partition_file {
                parse_partition(&read(pf)?, &doc.skeleton).map_err(|source| CliError::Parse {
                    path: pf.display().to_string(),
                    source,
                })?
            } else if *default_partition {
                default_spec(&doc, &g, color.as_deref(), base.as_deref())?
            } else {
                doc.split.clone().ok_or_else(|| {
                    CliError::Usage(
                        "no split declaration: pass --partition-file or --default-partition".into(),
                    )
                })?
            };
            let parents = parents
                .clone()
                .unwrap_or_else(|| PathBuf::from(format!("{}.parents", output.display())));
            cmd_split(&g, &spec, output, &parents, out)
        }
        Command::Paired { file, color: c } => {
            let (_, g) = load_graph(file)?;
            let c = color(&g, c)?;
            let report = is_paired(&g, c).map_err(limar_failure)?;
            let name = g.skeleton().color_name(c);
            if report.paired {
                writeln!(out, "paired in {name}").map_err(io)?;
                Ok(0)
            } else {
                writeln!(out, "not paired in {name}").map_err(io)?;
                if let Some((e, w)) = &report.witness {
                    writeln!(out, "{}", witness_line(&g, *e, w)).map_err(io)?;
                }
                Ok(1)
            }
        }
        Command::Saturate { file, set } => {
            let (_, g) = load_graph(file)?;
            let sk = g.skeleton();
            let x = set
                .iter()
                .map(|v| {
                    sk.vertex(v.trim())
                        .ok_or_else(|| CliError::Usage(format!("unknown vertex {v}")))
                })
                .collect::<Result<BTreeSet<_>, _>>()?;
            let sat = saturation(&g, &x).map_err(|e| CliError::Failed(e.to_string()))?;
            for v in sat {
                writeln!(out, "{}", sk.vertex_name(v)).map_err(io)?;
            }
            Ok(0)
        }
        Command::KpVerify {
            file,
            split_output,
            parents,
            max_len,
        } => cmd_kp_verify(file, split_output, parents, *max_len, out),
        Command::Dot { file, output } => {
            let (_, g) = load_graph(file)?;
            let text = to_dot(&g);
            match output {
                Some(p) => write_file(p, &text)?,
                None => out.write_all(text.as_bytes()).map_err(io)?,
            }
            Ok(0)
        }
    }
}

fn witness_line(g: &KGraph, e: EdgeId, w: &BTreeSet<EdgeId>) -> String {
    let sk = g.skeleton();
    let names: Vec<&str> = w.iter().map(|x| sk.edge_name(*x)).collect();
    format!("{} : {{{}}}", sk.edge_name(e), names.join(", "))
}

fn cmd_validate(file: &Path, out: &mut dyn Write) -> Result<i32, CliError> {
    let doc = load_document(file)?;
    let sk = &doc.skeleton;
    writeln!(
        out,
        "{} colors, {} vertices, {} edges, {} squares",
        sk.k(),
        sk.vertex_count(),
        sk.edge_count(),
        doc.squares.len()
    )
    .map_err(io)?;
    let report = validate(sk, &doc.squares);
    write!(out, "{report}").map_err(io)?;
    if report.is_valid() {
        writeln!(out, "valid {}-graph", sk.k()).map_err(io)?;
        Ok(0)
    } else {
        writeln!(out, "not a k-graph").map_err(io)?;
        Ok(1)
    }
}

fn cmd_props(file: &Path, only: Option<&str>, out: &mut dyn Write) -> Result<i32, CliError> {
    let (_, g) = load_graph(file)?;
    let sk = g.skeleton();
    let names = |vs: &mut dyn Iterator<Item = String>| vs.collect::<Vec<_>>().join(", ");
    let sf = g.is_source_free();
    if sf.is_source_free() {
        writeln!(out, "source-free: yes").map_err(io)?;
    } else {
        let w = names(&mut sf.witnesses.iter().map(|(v, c)| {
            format!("{} receives no {} edge", sk.vertex_name(*v), sk.color_name(*c))
        }));
        writeln!(out, "source-free: no ({w})").map_err(io)?;
    }
    for c in (0..sk.k()).map(Color) {
        let sinks = g
            .degree_sinks(c)
            .map_err(|e| CliError::Failed(e.to_string()))?;
        let list = names(&mut sinks.iter().map(|v| sk.vertex_name(*v).to_string()));
        writeln!(out, "sinks {}: {{{list}}}", sk.color_name(c)).map_err(io)?;
    }
    let colors: Vec<Color> = match only {
        Some(name) => vec![color(&g, name)?],
        None => (0..sk.k()).map(Color).collect(),
    };
    for c in colors {
        let report = is_paired(&g, c).map_err(limar_failure)?;
        let name = sk.color_name(c);
        match &report.witness {
            None => writeln!(out, "paired {name}: yes"),
            Some((e, w)) => writeln!(out, "paired {name}: no, {}", witness_line(&g, *e, w)),
        }
        .map_err(io)?;
    }
    Ok(0)
}

fn default_spec(
    doc: &GraphDocument,
    g: &KGraph,
    color_name: Option<&str>,
    base: Option<&str>,
) -> Result<SplitSpec, CliError> {
    let c = match (color_name, &doc.split) {
        (Some(name), _) => color(g, name)?,
        (None, Some(s)) => s.color,
        (None, None) => return Err(CliError::Usage("--default-partition needs --color".into())),
    };
    let w = match (base, &doc.split) {
        (Some(name), _) => g
            .skeleton()
            .vertex(name)
            .ok_or_else(|| CliError::Usage(format!("unknown vertex {name}")))?,
        (None, Some(s)) => s.base,
        (None, None) => return Err(CliError::Usage("--default-partition needs --base".into())),
    };
    SplitSpec::with_default_partition(g, c, w).map_err(limar_failure)
}

fn cmd_split(
    g: &KGraph,
    spec: &SplitSpec,
    output: &Path,
    parents: &Path,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let result = limar_split(g, spec).map_err(limar_failure)?;
    let gamma = result.gamma();
    write_file(output, &serialize(&GraphDocument::from_graph(gamma)))?;
    let map = ParentMap {
        color: g.skeleton().color_name(spec.color).to_string(),
        parents: result.parent_lines(),
    };
    write_file(parents, &serialize_parents(&map))?;
    let gs = gamma.skeleton();
    writeln!(
        out,
        "wrote {} ({} vertices, {} edges, {} squares)",
        output.display(),
        gs.vertex_count(),
        gs.edge_count(),
        gamma.squares().len()
    )
    .map_err(io)?;
    writeln!(out, "wrote {}", parents.display()).map_err(io)?;
    Ok(0)
}

/// Rebuilds a split from a document pair and its parent map.
pub fn load_split(lambda: &Path, gamma: &Path, parents: &Path) -> Result<SplitResult, CliError> {
    let (_, lam) = load_graph(lambda)?;
    let (_, gam) = load_graph(gamma)?;
    let map = parse_parents(&read(parents)?).map_err(|source| CliError::Parse {
        path: parents.display().to_string(),
        source,
    })?;
    let c = color(&lam, &map.color)?;
    SplitResult::from_parts(lam, gam, c, &map.parents).map_err(limar_failure)
}

fn cmd_kp_verify(
    file: &Path,
    split_output: &Path,
    parents: &Path,
    max_len: u32,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let result = load_split(file, split_output, parents)?;
    let failed = |e: KpError| CliError::Failed(e.to_string());
    let reports: [(&str, VerifyReport); 4] = [
        ("Kumjian-Pask family", verify_kp_family(&result, max_len).map_err(failed)?),
        ("swap identity", verify_swap_identity(&result).map_err(failed)?),
        ("diagonal", verify_diagonal(&result, max_len).map_err(failed)?),
        ("corner", verify_corner(&result, max_len).map_err(failed)?),
    ];
    let mut ok = true;
    for (title, report) in &reports {
        writeln!(out, "== {title}").map_err(io)?;
        write!(out, "{report}").map_err(io)?;
        ok &= report.passed();
    }
    writeln!(out, "{}", if ok { "all identities hold" } else { "FAILED" }).map_err(io)?;
    Ok(if ok { 0 } else { 1 })
}
