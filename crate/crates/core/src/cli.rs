//! Command-line front end: argument parsing and the per-subcommand reports.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::error::Error;
use crate::object_set::ObjectSet;
use crate::report::{InputDigest, Item, Provenance, Report, Value};
use crate::rough::{
    approximate, enumerate_reducts, indiscernibility, positive_region, AttributeSubset,
};
use crate::search::{
    compare_decisions, learn_decision, spanning_search, Method, SearchConfig, SetObjective,
    SPAN_TIE_EPSILON,
};
use crate::span;
use crate::table::{
    decision_partition, parse_partition, parse_table, read_partition_blocks, ClassWeights,
    DecisionTable, Partition, SpanWeights,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("{0}")]
    Usage(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Exact,
    Local,
    Pso,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Exact => Method::Exact,
            MethodArg::Local => Method::Local,
            MethodArg::Pso => Method::Pso,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "roughspan",
    version,
    about = "Rough-set span measures and spanning-set search"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Weight of the lower approximation (defaults to 0.5, or 1 - w2).
    #[arg(long, global = true)]
    pub w1: Option<f64>,
    /// Weight of the boundary region (defaults to 0.5, or 1 - w1).
    #[arg(long, global = true)]
    pub w2: Option<f64>,
    /// Decision columns of the table. Defaults to columns named `D` or `D<digits>`.
    #[arg(long, global = true, value_delimiter = ',')]
    pub decision_columns: Option<Vec<String>>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the indiscernibility partition U/P.
    Indis {
        table: PathBuf,
        #[arg(long)]
        attrs: String,
    },
    /// Span of an object set, per attribute or under an expert partition.
    Span {
        /// Table (.csv) or partition (JSON array of arrays, or one block per line).
        input: PathBuf,
        #[arg(long)]
        set: String,
        /// Also report the mean of the per-attribute spans.
        #[arg(long)]
        complete: bool,
        /// Attributes for the joint span (defaults to all).
        #[arg(long)]
        attrs: Option<String>,
    },
    /// Decision span of one decision column, optionally class weighted.
    Dspan {
        table: PathBuf,
        #[arg(long)]
        decision: String,
        #[arg(long)]
        attrs: Option<String>,
        /// Per-class weights, `label=u,...`, summing to 1.
        #[arg(long)]
        class_weights: Option<String>,
    },
    /// All reducts and the decision span under each.
    Reducts {
        table: PathBuf,
        #[arg(long)]
        decision: String,
    },
    /// Maximal spanning set under must-cover and size constraints.
    Search {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::Exact)]
        method: MethodArg,
        #[arg(long)]
        max_size: Option<usize>,
        #[arg(long)]
        require: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Defaults to 500 for local and 100 for pso.
        #[arg(long)]
        iterations: Option<usize>,
        #[arg(long, default_value_t = 30)]
        swarm_size: usize,
    },
    /// Learn a decision column with the given number of classes.
    Learn {
        table: PathBuf,
        #[arg(long)]
        classes: usize,
        #[arg(long, value_enum, default_value_t = MethodArg::Exact)]
        method: MethodArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 500)]
        iterations: usize,
    },
    /// Rank decision columns by complete decision span.
    Compare {
        table: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        decisions: Vec<String>,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_from_args<I, T>(args: I) -> Result<(Report, Format), CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli =
        Cli::try_parse_from(&args).map_err(|e| CliError::Usage(first_line(&e.to_string())))?;
    let echo = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect::<Vec<_>>()
        .join(" ");
    let format = cli.format;
    Ok((run(&cli, echo)?, format))
}

pub fn first_line(message: &str) -> String {
    message
        .lines()
        .find(|l| !l.trim().is_empty())
        .unwrap_or("invalid arguments")
        .trim()
        .to_string()
}

pub fn weights(w1: Option<f64>, w2: Option<f64>) -> Result<SpanWeights, Error> {
    match (w1, w2) {
        (None, None) => Ok(SpanWeights::default()),
        (Some(a), None) => SpanWeights::new(a, 1.0 - a),
        (None, Some(b)) => SpanWeights::new(1.0 - b, b),
        (Some(a), Some(b)) => SpanWeights::new(a, b),
    }
}

fn split_list(list: &str) -> Vec<String> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::to_string)
        .collect()
}

struct Input {
    text: String,
    digest: InputDigest,
}

fn read_input(path: &Path) -> Result<Input, CliError> {
    let bytes = std::fs::read(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    let digest = InputDigest {
        path: path.display().to_string(),
        sha256: hex::encode(Sha256::digest(&bytes)),
    };
    let text = String::from_utf8(bytes).map_err(|_| CliError::Io {
        path: path.display().to_string(),
        message: "not valid UTF-8".into(),
    })?;
    Ok(Input { text, digest })
}

fn is_default_decision(name: &str) -> bool {
    name.strip_prefix('D')
        .is_some_and(|rest| rest.chars().all(|c| c.is_ascii_digit()))
}

/// Loads a table, treating `extra` columns as decisions on top of the
/// configured (or conventional) decision columns.
fn load_table(cli: &Cli, input: &Input, extra: &[String]) -> Result<DecisionTable, CliError> {
    let mut decisions: Vec<String> = match &cli.decision_columns {
        Some(columns) => columns.clone(),
        None => {
            let header = input.text.lines().next().unwrap_or_default();
            header
                .split(',')
                .skip(1)
                .map(str::trim)
                .filter(|h| is_default_decision(h))
                .map(str::to_string)
                .collect()
        }
    };
    for column in extra {
        if !decisions.contains(column) {
            decisions.push(column.clone());
        }
    }
    Ok(parse_table(&input.text, &decisions)?)
}

fn is_table_path(path: &Path) -> bool {
    path.extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("csv"))
}

/// Expert partition whose universe is every object named, in file order.
fn load_partition(input: &Input) -> Result<(Vec<String>, Partition), CliError> {
    let blocks = read_partition_blocks(&input.text)?;
    let mut universe: Vec<String> = Vec::new();
    for name in blocks.iter().flatten() {
        if !universe.contains(name) {
            universe.push(name.clone());
        }
    }
    if universe.is_empty() {
        return Err(Error::InvalidPartition("partition names no objects".into()).into());
    }
    let partition = parse_partition(&input.text, &universe)?;
    Ok((universe, partition))
}

fn names(universe: &[String], set: &ObjectSet) -> Vec<String> {
    set.iter().map(|i| universe[i].clone()).collect()
}

fn partition_names(universe: &[String], partition: &Partition) -> Vec<Vec<String>> {
    partition
        .blocks()
        .iter()
        .map(|b| names(universe, b))
        .collect()
}

fn attr_label(table: &DecisionTable, attrs: &AttributeSubset) -> String {
    attrs.names(table).join(",")
}

fn attrs_or_all(table: &DecisionTable, attrs: Option<&str>) -> Result<AttributeSubset, CliError> {
    match attrs {
        None => Ok(AttributeSubset::all(table)),
        Some(list) => {
            let list = split_list(list);
            if list.is_empty() {
                return Err(Error::EmptyAttributeSet.into());
            }
            Ok(AttributeSubset::from_names(table, &list)?)
        }
    }
}

fn set_span_item(
    label: String,
    universe: &[String],
    partition: &Partition,
    set: &ObjectSet,
    w: SpanWeights,
) -> Result<Item, CliError> {
    let apx = approximate(partition, set)?;
    Ok(Item::SetSpan {
        label,
        span: Value::new(span::set_span(partition, set, w)?),
        lower: names(universe, &apx.lower),
        boundary: names(universe, &apx.boundary),
    })
}

/// Runs an already parsed command.
pub fn run(cli: &Cli, echo: String) -> Result<Report, CliError> {
    let w = weights(cli.w1, cli.w2)?;
    let mut report = Report::new(echo);
    match &cli.command {
        Command::Indis { table, attrs } => {
            let input = read_input(table)?;
            report.inputs.push(input.digest.clone());
            let table = load_table(cli, &input, &[])?;
            let attrs = attrs_or_all(&table, Some(attrs))?;
            let partition = indiscernibility(&table, &attrs)?;
            report.push(Item::Partition {
                label: format!("U/{{{}}}", attr_label(&table, &attrs)),
                blocks: partition_names(table.object_names(), &partition),
            });
        }
        Command::Span {
            input,
            set,
            complete,
            attrs,
        } => {
            let path = input;
            let input = read_input(path)?;
            report.inputs.push(input.digest.clone());
            let members = split_list(set);
            if is_table_path(path) {
                let table = load_table(cli, &input, &[])?;
                let set = table.object_set(&members)?;
                let universe = table.object_names();
                let mut terms = Vec::new();
                for a in 0..table.num_attributes() {
                    let partition = indiscernibility(&table, &AttributeSubset::single(a))?;
                    let item = set_span_item(
                        table.attribute_names()[a].clone(),
                        universe,
                        &partition,
                        &set,
                        w,
                    )?;
                    if let Item::SetSpan { span, .. } = &item {
                        terms.push(span.value);
                    }
                    report.push(item);
                }
                let joint = attrs_or_all(&table, attrs.as_deref())?;
                let partition = indiscernibility(&table, &joint)?;
                report.push(set_span_item(
                    format!("U/{{{}}}", attr_label(&table, &joint)),
                    universe,
                    &partition,
                    &set,
                    w,
                )?);
                if *complete {
                    report.scalar("complete", span::complete_set_span(&table, &set, w)?);
                    report.note(format!(
                        "complete span = sum {:.4} / |R| {}",
                        terms.iter().sum::<f64>(),
                        terms.len()
                    ));
                }
            } else {
                if *complete || attrs.is_some() {
                    return Err(CliError::Usage(
                        "--complete and --attrs need a decision table input".into(),
                    ));
                }
                let (universe, partition) = load_partition(&input)?;
                let set = crate::table::object_set_by_name(&universe, &members)?;
                report.push(set_span_item(
                    "partition".into(),
                    &universe,
                    &partition,
                    &set,
                    w,
                )?);
            }
        }
        Command::Dspan {
            table,
            decision,
            attrs,
            class_weights,
        } => {
            let input = read_input(table)?;
            report.inputs.push(input.digest.clone());
            let table = load_table(cli, &input, std::slice::from_ref(decision))?;
            let attrs = attrs_or_all(&table, attrs.as_deref())?;
            let classes = decision_partition(&table, decision)?;
            report.push(Item::Partition {
                label: format!("U/{decision}"),
                blocks: partition_names(table.object_names(), &classes.partition),
            });
            let u = class_weights
                .as_deref()
                .map(str::parse::<ClassWeights>)
                .transpose()?;
            let (terms, joint, complete) = match &u {
                Some(u) => (
                    span::attribute_weighted_decision_spans(&table, &attrs, &classes, w, u)?,
                    span::weighted_decision_span(&table, &attrs, &classes, w, u)?,
                    span::complete_weighted_decision_span(&table, &attrs, &classes, w, u)?,
                ),
                None => (
                    span::attribute_decision_spans(&table, &attrs, &classes.partition, w)?,
                    span::decision_span(&table, &attrs, &classes.partition, w)?,
                    span::complete_decision_span(&table, &attrs, &classes.partition, w)?,
                ),
            };
            for (&a, value) in attrs.indices().iter().zip(&terms) {
                report.scalar(format!("delta[{}]", table.attribute_names()[a]), *value);
            }
            let sum: f64 = terms.iter().sum();
            report.scalar("sum", sum);
            report.push(Item::Count {
                label: "divisor".into(),
                count: terms.len(),
            });
            report.scalar("complete", complete);
            report.scalar(format!("delta[{}]", attr_label(&table, &attrs)), joint);
            report.note(format!(
                "complete span = sum {:.4} / |P| {} = {}",
                sum,
                terms.len(),
                Value::new(complete)
            ));
            if let Some(u) = &u {
                report.note(format!("class weights {u}"));
            }
        }
        Command::Reducts { table, decision } => {
            let input = read_input(table)?;
            report.inputs.push(input.digest.clone());
            let table = load_table(cli, &input, std::slice::from_ref(decision))?;
            let classes = decision_partition(&table, decision)?;
            let positive =
                positive_region(&table, &AttributeSubset::all(&table), &classes.partition)?;
            report.push(Item::Objects {
                label: "POS_R(D)".into(),
                objects: names(table.object_names(), &positive),
            });
            let reducts = enumerate_reducts(&table, &classes.partition)?;
            let mut spans = Vec::with_capacity(reducts.len());
            for reduct in &reducts {
                let value = span::decision_span(&table, reduct, &classes.partition, w)?;
                spans.push(value);
                report.push(Item::Reduct {
                    attributes: reduct.names(&table).iter().map(|s| s.to_string()).collect(),
                    span: Value::new(value),
                });
            }
            let spread = spans.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
                - spans.iter().cloned().fold(f64::INFINITY, f64::min);
            report.push(Item::Check {
                label: "reduct spans equal".into(),
                passed: spread <= SPAN_TIE_EPSILON,
            });
        }
        Command::Search {
            input,
            method,
            max_size,
            require,
            seed,
            iterations,
            swarm_size,
        } => {
            let path = input;
            let input = read_input(path)?;
            report.inputs.push(input.digest.clone());
            let (universe, objective) = if is_table_path(path) {
                let table = load_table(cli, &input, &[])?;
                (
                    table.object_names().to_vec(),
                    SetObjective::complete(&table, w),
                )
            } else {
                let (universe, partition) = load_partition(&input)?;
                (universe, SetObjective::partition(partition, w))
            };
            let method = Method::from(*method);
            let required = crate::table::object_set_by_name(
                &universe,
                &require.as_deref().map(split_list).unwrap_or_default(),
            )?;
            let mut config = SearchConfig::new(method)
                .with_seed(*seed)
                .with_swarm_size(*swarm_size)
                .with_required(required.iter())
                .with_iterations(iterations.unwrap_or(match method {
                    Method::Pso => 100,
                    _ => 500,
                }));
            config.max_size = *max_size;
            let result = spanning_search(&objective, &config)?;
            let best = result.best_set().expect("set search returns a set");
            report.push(Item::Objects {
                label: "best".into(),
                objects: names(&universe, best),
            });
            report.scalar("span", result.span);
            report.search = Some(Provenance::from(&result));
        }
        Command::Learn {
            table,
            classes,
            method,
            seed,
            iterations,
        } => {
            let input = read_input(table)?;
            report.inputs.push(input.digest.clone());
            let table = load_table(cli, &input, &[])?;
            let config = SearchConfig::new(Method::from(*method))
                .with_seed(*seed)
                .with_iterations(*iterations);
            let result = learn_decision(&table, *classes, w, &config)?;
            let labeling = result
                .best_labeling()
                .expect("labeling search returns a labeling");
            report.push(Item::Labeling {
                assignments: table
                    .object_names()
                    .iter()
                    .zip(labeling)
                    .map(|(o, c)| (o.clone(), format!("C{}", c + 1)))
                    .collect(),
            });
            let blocks = Partition::from_keys(labeling.iter().copied());
            report.push(Item::Partition {
                label: "U/learned".into(),
                blocks: partition_names(table.object_names(), &blocks),
            });
            report.scalar("span", result.span);
            report.search = Some(Provenance::from(&result));
        }
        Command::Compare { table, decisions } => {
            let input = read_input(table)?;
            report.inputs.push(input.digest.clone());
            let table = load_table(cli, &input, decisions)?;
            let ranked = compare_decisions(&table, decisions, w, &[])?;
            for (rank, (column, value)) in ranked.into_iter().enumerate() {
                report.push(Item::Rank {
                    rank: rank + 1,
                    column,
                    span: Value::new(value),
                });
            }
        }
    }
    Ok(report)
}
