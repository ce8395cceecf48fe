//! Command-line front end: complexity tables, bounds, fits, per-sequence path
//! counts, state-diagram export, and the verification suites.

pub mod error;
pub mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pathcx_core::complexity::{
    eval_approx, fit_factorial_exponential, lower_bound_table, upper_bound_table, FitConstants,
    MODIFIED_REFERENCE_FIT, STANDARD_REFERENCE_FIT,
};
use pathcx_core::verify::{self, VerifyConfig};
use pathcx_core::{
    count_paths_traced, effective_delete_multiplier, format_rational, path_table, ratio_2dp,
    stack_table, BigRational, BigUint, CountTable, DeleteVariant, MultiplierConvention, OpSequence,
    StateDiagram, Strategy, DEFAULT_STAGE_CAP,
};

pub use error::CliError;
pub use report::{Cell, Format, Report, Table};

/// Published approximation column for the standard-delete table, n = 1..=10.
pub const PUBLISHED_STANDARD_APPROX: [u64; 10] =
    [1, 3, 9, 42, 241, 1652, 13239, 121223, 1248696, 14291780];
/// Published approximation column for the modified-delete table, n = 1..=10.
pub const PUBLISHED_MODIFIED_APPROX: [u64; 10] =
    [1, 3, 9, 39, 217, 1439, 11116, 98108, 974097, 10746292];

#[derive(Debug, Parser)]
#[command(
    name = "pathcx",
    version,
    about = "Exact path complexity of the BST class"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format; defaults to text (dot for `graph`).
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write the artifact here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Worker threads for diagram construction and path counting.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    /// Largest stage (number of shapes) allowed.
    #[arg(long, global = true, env = "PATHCX_CAP")]
    pub cap: Option<u128>,
}

#[derive(Debug, Clone, Copy, Default, Args)]
pub struct RangeArgs {
    /// A single length.
    #[arg(long, conflicts_with = "n_max")]
    pub n: Option<usize>,
    /// Every length from 1 to this value.
    #[arg(long)]
    pub n_max: Option<usize>,
}

impl RangeArgs {
    fn lengths(&self, default_max: usize) -> Result<Vec<usize>, CliError> {
        let lengths: Vec<usize> = match (self.n, self.n_max) {
            (Some(n), _) => vec![n],
            (None, Some(max)) => (1..=max).collect(),
            (None, None) => (1..=default_max).collect(),
        };
        if lengths.is_empty() || lengths[0] == 0 {
            return Err(CliError::Usage("n must be at least 1".into()));
        }
        Ok(lengths)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Standard,
    Modified,
    Both,
}

impl VariantArg {
    fn variants(self) -> Vec<DeleteVariant> {
        match self {
            VariantArg::Standard => vec![DeleteVariant::Standard],
            VariantArg::Modified => vec![DeleteVariant::Modified],
            VariantArg::Both => DeleteVariant::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Stack path complexity P(n, k) and its totals.
    StackTable {
        #[command(flatten)]
        range: RangeArgs,
    },
    /// BST path complexity per length with approximations, ratio and bounds.
    BstTable {
        #[command(flatten)]
        range: RangeArgs,
        #[arg(long, value_enum, default_value = "both")]
        variant: VariantArg,
    },
    /// Execution paths of one operation sequence, e.g. `iid`.
    Paths {
        sequence: String,
        #[arg(long, value_enum, default_value = "standard")]
        variant: VariantArg,
        /// Also print the walk counts per shape after every operation.
        #[arg(long)]
        trace: bool,
    },
    /// State diagram in Graphviz DOT.
    Graph {
        #[command(flatten)]
        range: RangeArgs,
        #[arg(long, value_enum, default_value = "standard")]
        variant: VariantArg,
    },
    /// Lower and upper bound recurrences next to the exact counts.
    Bounds {
        #[command(flatten)]
        range: RangeArgs,
    },
    /// Factorial-exponential curve fits and the approximation columns.
    Fit {
        #[command(flatten)]
        range: RangeArgs,
        #[arg(long, value_enum, default_value = "both")]
        variant: VariantArg,
    },
    /// State counts and out-degrees per stage.
    Profile {
        #[command(flatten)]
        range: RangeArgs,
        #[arg(long, value_enum, default_value = "both")]
        variant: VariantArg,
    },
    /// Delete multipliers that make the p(n, k) row recurrence exact.
    Multipliers {
        #[command(flatten)]
        range: RangeArgs,
        #[arg(long, value_enum, default_value = "standard")]
        variant: VariantArg,
    },
    /// Run every invariant suite; exits nonzero on any failure.
    Verify {
        /// Smaller scale.
        #[arg(long)]
        quick: bool,
    },
}

/// Rendered artifact plus whether it represents a failed verification.
#[derive(Debug, Clone, PartialEq)]
pub struct Artifact {
    pub body: String,
    pub failure: Option<String>,
}

/// Runs the command on a pool of `--jobs` threads and renders the artifact.
pub fn run(cli: &Cli) -> Result<Artifact, CliError> {
    let jobs = match cli.jobs {
        Some(0) => return Err(CliError::Usage("--jobs must be at least 1".into())),
        Some(j) => j,
        None => 0,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {jobs} workers: {e}")))?;
    pool.install(|| dispatch(cli))
}

fn dispatch(cli: &Cli) -> Result<Artifact, CliError> {
    let cap = cli.cap.unwrap_or(DEFAULT_STAGE_CAP);
    let is_graph = matches!(cli.command, Command::Graph { .. });
    let format = cli
        .format
        .unwrap_or(if is_graph { Format::Dot } else { Format::Text });
    if is_graph != (format == Format::Dot) {
        return Err(CliError::Usage(if is_graph {
            "graph only writes --format dot".into()
        } else {
            "--format dot is only valid for graph".into()
        }));
    }
    let ok = |report: Report| {
        Ok(Artifact {
            body: report.render(format),
            failure: None,
        })
    };

    match &cli.command {
        Command::StackTable { range } => ok(cmd_stack_table(&range.lengths(10)?)),
        Command::BstTable { range, variant } => {
            ok(cmd_bst_table(&range.lengths(10)?, *variant, cap)?)
        }
        Command::Paths {
            sequence,
            variant,
            trace,
        } => ok(cmd_paths(sequence, *variant, *trace, cap)?),
        Command::Graph { range, variant } => {
            let top = *range.lengths(3)?.last().expect("nonempty");
            let variant = match variant {
                VariantArg::Standard => DeleteVariant::Standard,
                VariantArg::Modified => DeleteVariant::Modified,
                VariantArg::Both => {
                    return Err(CliError::Usage("graph takes one --variant".into()))
                }
            };
            Ok(Artifact {
                body: cmd_graph(top, variant, cap)?,
                failure: None,
            })
        }
        Command::Bounds { range } => ok(cmd_bounds(&range.lengths(10)?, cap)?),
        Command::Fit { range, variant } => ok(cmd_fit(&range.lengths(10)?, *variant, cap)?),
        Command::Profile { range, variant } => {
            let top = *range.lengths(8)?.last().expect("nonempty");
            ok(cmd_profile(top, *variant, cap)?)
        }
        Command::Multipliers { range, variant } => {
            ok(cmd_multipliers(&range.lengths(8)?, *variant, cap)?)
        }
        Command::Verify { quick } => {
            let config = if *quick {
                VerifyConfig::quick()
            } else {
                VerifyConfig::default()
            };
            let (report, passed, failed) = cmd_verify(&config)?;
            Ok(Artifact {
                body: report.render(format),
                failure: (!passed).then(|| format!("{failed} check(s) failed")),
            })
        }
    }
}

pub fn cmd_stack_table(lengths: &[usize]) -> Report {
    let max = *lengths.iter().max().expect("nonempty");
    let table = stack_table(max);
    let mut rows = Table::new("pnk", &["n", "k", "P_nk"]);
    let mut totals = Table::new("totals", &["n", "P"]);
    for &n in lengths {
        for (k, count) in table[n].iter().enumerate() {
            rows.push(vec![n.into(), k.into(), count.clone().into()]);
        }
        totals.push(vec![n.into(), table[n].iter().sum::<BigUint>().into()]);
    }
    Report::new("Stack path complexity")
        .table(rows)
        .table(totals)
}

fn build(top: usize, variants: &[DeleteVariant], cap: u128) -> Result<StateDiagram, CliError> {
    Ok(StateDiagram::build(top, variants, cap)?)
}

fn tables_for(
    diagram: &StateDiagram,
    top: usize,
    variants: &[DeleteVariant],
) -> Result<Vec<CountTable>, CliError> {
    variants
        .iter()
        .map(|&v| Ok(path_table(diagram, top, v, Strategy::SharedPrefix)?))
        .collect()
}

fn approx_count(fit: FitConstants, n: usize) -> Cell {
    let v = eval_approx(fit, n).round();
    v.to_string()
        .parse::<BigUint>()
        .map_or(Cell::Empty, Cell::Count)
}

fn reference_fit(variant: DeleteVariant) -> FitConstants {
    match variant {
        DeleteVariant::Standard => STANDARD_REFERENCE_FIT,
        DeleteVariant::Modified => MODIFIED_REFERENCE_FIT,
    }
}

fn column_prefix(variant: DeleteVariant) -> &'static str {
    match variant {
        DeleteVariant::Standard => "P1",
        DeleteVariant::Modified => "P2",
    }
}

pub fn cmd_bst_table(
    lengths: &[usize],
    variant: VariantArg,
    cap: u128,
) -> Result<Report, CliError> {
    let top = *lengths.iter().max().expect("nonempty");
    let variants = variant.variants();
    let diagram = build(top, &variants, cap)?;
    let tables = tables_for(&diagram, top, &variants)?;
    let lb = lower_bound_table(top);
    let ub = upper_bound_table(top, false);
    let ubc = upper_bound_table(top, true);

    let mut columns = vec!["n".to_string()];
    for &v in &variants {
        columns.push(column_prefix(v).into());
        columns.push(format!("{}_approx", column_prefix(v)));
    }
    if variants.len() == 2 {
        columns.push("ratio".into());
    }
    columns.extend(["P_LB", "P_UB_verbatim", "P_UB_clamped"].map(String::from));
    let column_refs: Vec<&str> = columns.iter().map(String::as_str).collect();
    let mut table = Table::new("bst", &column_refs);

    for &n in lengths {
        let mut row = vec![Cell::Index(n)];
        for (t, &v) in tables.iter().zip(&variants) {
            row.push(t.total(n).into());
            row.push(approx_count(reference_fit(v), n));
        }
        if tables.len() == 2 {
            row.push(ratio_2dp(&tables[0].total(n), &tables[1].total(n)).into());
        }
        row.push(format_rational(&lb.total(n)).into());
        row.push(ub.floor_total(n).into());
        row.push(ubc.floor_total(n).into());
        table.push(row);
    }
    Ok(Report::new("BST path complexity").table(table))
}

pub fn cmd_paths(
    sequence: &str,
    variant: VariantArg,
    trace: bool,
    cap: u128,
) -> Result<Report, CliError> {
    let seq: OpSequence = sequence.parse()?;
    seq.validate()?;
    let variants = variant.variants();
    let diagram = build(seq.peak_height(), &variants, cap)?;
    let mut counts = Table::new("paths", &["sequence", "variant", "paths"]);
    let mut steps = Table::new(
        "trace",
        &["variant", "step", "op", "stage", "shape", "walks"],
    );
    for &v in &variants {
        let traced = count_paths_traced(&diagram, &seq, v)?;
        counts.push(vec![
            seq.to_string().into(),
            v.to_string().into(),
            traced.paths.into(),
        ]);
        for (i, step) in traced.steps.into_iter().enumerate() {
            for (shape, walks) in step.weights {
                steps.push(vec![
                    v.to_string().into(),
                    (i + 1).into(),
                    step.op.to_string().into(),
                    step.stage.into(),
                    shape.into(),
                    walks.into(),
                ]);
            }
        }
    }
    let mut report = Report::new(format!("Execution paths of {seq}")).table(counts);
    if trace {
        report = report.table(steps);
    }
    Ok(report)
}

pub fn cmd_graph(top: usize, variant: DeleteVariant, cap: u128) -> Result<String, CliError> {
    let diagram = build(top, &[variant], cap)?;
    Ok(diagram.export_dot(variant)?)
}

pub fn cmd_bounds(lengths: &[usize], cap: u128) -> Result<Report, CliError> {
    let top = *lengths.iter().max().expect("nonempty");
    let diagram = build(top, &DeleteVariant::ALL, cap)?;
    let tables = tables_for(&diagram, top, &DeleteVariant::ALL)?;
    let (p1, p2) = (&tables[0], &tables[1]);
    let lb = lower_bound_table(top);
    let ub = upper_bound_table(top, false);
    let ubc = upper_bound_table(top, true);
    let exact = |v: BigUint| BigRational::from_integer(v.into());

    let mut table = Table::new(
        "bounds",
        &[
            "n",
            "P_LB",
            "P_LB_floor",
            "P_UB_verbatim",
            "P_UB_clamped",
            "P1",
            "P2",
            "LB_le_P1",
            "LB_le_P2",
            "UB_verbatim_ge_P1",
            "UB_clamped_ge_P1",
        ],
    );
    let mut anomalies = Table::new("anomalies", &["n", "bound", "value", "P1"]);
    for &n in lengths {
        let (t1, t2) = (p1.total(n), p2.total(n));
        let ub_ok = ub.total(n) >= exact(t1.clone());
        if !ub_ok {
            anomalies.push(vec![
                n.into(),
                "P_UB_verbatim".to_string().into(),
                ub.floor_total(n).into(),
                t1.clone().into(),
            ]);
        }
        table.push(vec![
            n.into(),
            format_rational(&lb.total(n)).into(),
            lb.floor_total(n).into(),
            ub.floor_total(n).into(),
            ubc.floor_total(n).into(),
            t1.clone().into(),
            t2.clone().into(),
            (lb.total(n) <= exact(t1.clone())).into(),
            (lb.total(n) <= exact(t2)).into(),
            ub_ok.into(),
            (ubc.total(n) >= exact(t1)).into(),
        ]);
    }
    let mut report = Report::new("Bounds on BST path complexity").table(table);
    if !anomalies.rows.is_empty() {
        report.note(
            "the verbatim upper recurrence multiplies by n-2k, which is 0 when a delete lands on stage 0, \
             so it falls below the exact count; P_UB_clamped uses max(1, n-2k)",
        );
        report = report.table(anomalies);
    }
    Ok(report)
}

pub fn cmd_fit(lengths: &[usize], variant: VariantArg, cap: u128) -> Result<Report, CliError> {
    let top = *lengths.iter().max().expect("nonempty");
    let variants = variant.variants();
    let diagram = build(top, &variants, cap)?;
    let tables = tables_for(&diagram, top, &variants)?;

    let mut fits = Table::new(
        "fit",
        &[
            "variant",
            "a",
            "b",
            "residual",
            "reference_a",
            "reference_b",
            "a_delta",
            "b_delta",
        ],
    );
    let mut approx = Table::new(
        "approx",
        &[
            "n",
            "variant",
            "count",
            "fitted",
            "reference",
            "published",
            "reference_rel_error",
            "rounded_match",
        ],
    );
    for (table, &v) in tables.iter().zip(&variants) {
        let points: Vec<(usize, f64)> = lengths
            .iter()
            .map(|&n| (n, to_f64(&table.total(n))))
            .collect();
        let fit = fit_factorial_exponential(&points)?;
        let reference = reference_fit(v);
        fits.push(vec![
            v.to_string().into(),
            fit.a.into(),
            fit.b.into(),
            fit.residual.into(),
            reference.a.into(),
            reference.b.into(),
            (fit.a - reference.a).into(),
            (fit.b - reference.b).into(),
        ]);
        let published = match v {
            DeleteVariant::Standard => PUBLISHED_STANDARD_APPROX,
            DeleteVariant::Modified => PUBLISHED_MODIFIED_APPROX,
        };
        for &n in lengths {
            let reference_value = eval_approx(reference, n);
            let (published_cell, rel, matched) = match published.get(n - 1) {
                Some(&p) => (
                    Cell::Count(BigUint::from(p)),
                    Cell::Float((reference_value - p as f64).abs() / p as f64),
                    Cell::Bool(reference_value.round() == p as f64),
                ),
                None => (Cell::Empty, Cell::Empty, Cell::Empty),
            };
            approx.push(vec![
                n.into(),
                v.to_string().into(),
                table.total(n).into(),
                fit.eval(n).into(),
                reference_value.into(),
                published_cell,
                rel,
                matched,
            ]);
        }
    }
    Ok(Report::new("Fits of a·exp(b·n)·n!")
        .table(fits)
        .table(approx))
}

fn to_f64(v: &BigUint) -> f64 {
    v.to_string().parse().expect("decimal digits parse as f64")
}

pub fn cmd_profile(top: usize, variant: VariantArg, cap: u128) -> Result<Report, CliError> {
    let diagram = build(top, &variant.variants(), cap)?;
    let mut stages = Table::new(
        "stages",
        &[
            "stage",
            "states",
            "insert_edges",
            "delete_edges_standard",
            "delete_edges_modified",
        ],
    );
    let mut degrees = Table::new(
        "degrees",
        &[
            "stage",
            "insert_min",
            "insert_max",
            "standard_min",
            "standard_max",
            "modified_min",
            "modified_max",
        ],
    );
    let count = |v: u64| Cell::Count(BigUint::from(v));
    for p in diagram.stage_profile() {
        let total = |d: Option<pathcx_core::DegreeStats>| d.map_or(Cell::Empty, |d| count(d.total));
        stages.push(vec![
            p.stage.into(),
            count(p.states),
            count(p.insert.total),
            total(p.delete_standard),
            total(p.delete_modified),
        ]);
        let min = |d: Option<pathcx_core::DegreeStats>| d.map_or(Cell::Empty, |d| count(d.min));
        let max = |d: Option<pathcx_core::DegreeStats>| d.map_or(Cell::Empty, |d| count(d.max));
        degrees.push(vec![
            p.stage.into(),
            count(p.insert.min),
            count(p.insert.max),
            min(p.delete_standard),
            max(p.delete_standard),
            min(p.delete_modified),
            max(p.delete_modified),
        ]);
    }
    Ok(Report::new("State diagram profile")
        .table(stages)
        .table(degrees))
}

pub fn cmd_multipliers(
    lengths: &[usize],
    variant: VariantArg,
    cap: u128,
) -> Result<Report, CliError> {
    let top = *lengths.iter().max().expect("nonempty");
    let variants = variant.variants();
    let diagram = build(top, &variants, cap)?;
    let tables = tables_for(&diagram, top, &variants)?;
    let mut out = Table::new(
        "multipliers",
        &["variant", "n", "k", "p_nk", "f_delete_row", "f_insert_row"],
    );
    for (table, &v) in tables.iter().zip(&variants) {
        for &n in lengths {
            for k in 1..=n / 2 {
                let f = |c| {
                    effective_delete_multiplier(table, n, k, c)
                        .map_or(Cell::Empty, |r| Cell::Text(format_rational(&r)))
                };
                out.push(vec![
                    v.to_string().into(),
                    n.into(),
                    k.into(),
                    table.get(n, k).into(),
                    f(MultiplierConvention::DeleteRow),
                    f(MultiplierConvention::InsertRow),
                ]);
            }
        }
    }
    Ok(Report::new("Effective delete multipliers").table(out))
}

/// Returns the report, whether every check passed, and the failure count.
pub fn cmd_verify(config: &VerifyConfig) -> Result<(Report, bool, usize), CliError> {
    let result = verify::run_all(config)?;
    let failed = result.failures().count();
    let mut summary = Table::new("summary", &["passed", "checks", "failed"]);
    summary.push(vec![
        result.passed().into(),
        result.checks.len().into(),
        failed.into(),
    ]);
    let mut checks = Table::new("checks", &["name", "passed", "detail"]);
    for c in &result.checks {
        checks.push(vec![
            c.name.clone().into(),
            c.passed.into(),
            c.detail.clone().into(),
        ]);
    }
    Ok((
        Report::new("Verification").table(summary).table(checks),
        result.passed(),
        failed,
    ))
}
