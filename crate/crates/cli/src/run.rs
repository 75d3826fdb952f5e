//! Command execution and exit codes.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use record_aging::numerics::{GridSpec, DEFAULT_GRID_POINTS};
use record_aging::orders::{check_aging_faster, check_drhr, check_hr, check_ifr, check_rh, check_st};
use record_aging::sim::sample_records;
use record_aging::theorems::{reproduce_example_with, verify_theorem, HypothesisResult, VerifyConfig};
use record_aging::{
    CurveSeries, DistributionModel, ExampleId, LimitMode, OrderVerdict, Overall, RecordKind, RecordLaw,
    SamplingMethod, Status, TheoremId, TheoremReport, Witness,
};
use thiserror::Error;

use crate::cli::{
    Cli, Command, CsvOrJson, ExampleArg, ExampleCommand, KindArg, MethodArg, OrderArg, OrderCheckArgs,
    OrderCommand, Quantity, RecordArgs, ReproduceArgs, SimulateArgs, SimulateCommand, TextOrJson, TheoremCommand,
    VerifyArgs,
};
use crate::emit::{
    curve_csv, samples_csv, to_json, CurveFile, CurveOutput, ExampleOutput, OrderOutput, TheoremOutput,
    SCHEMA_VERSION,
};
use crate::spec::{parse_dist_spec, SpecError};

/// Overrides the default number of grid points.
pub const GRID_POINTS_ENV: &str = "RECORD_ORDER_GRID_POINTS";

pub const EXIT_PASS: u8 = 0;
pub const EXIT_ERROR: u8 = 1;
pub const EXIT_VIOLATED: u8 = 2;
pub const EXIT_INCONCLUSIVE: u8 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid distribution: {}", error.diagnostic(text))]
    Spec { text: String, error: SpecError },
    #[error(transparent)]
    Model(#[from] record_aging::Error),
    #[error("{0}")]
    Usage(String),
    #[error("writing {path}: {error}")]
    Write { path: String, error: io::Error },
    #[error(transparent)]
    Stdout(#[from] io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub fn exit_code(status: Status) -> u8 {
    match status {
        Status::Holds => EXIT_PASS,
        Status::Violated => EXIT_VIOLATED,
        Status::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

pub fn overall_exit_code(overall: Overall) -> u8 {
    match overall {
        Overall::Pass => EXIT_PASS,
        Overall::HypothesisFailed | Overall::ConclusionRefuted => EXIT_VIOLATED,
        Overall::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

/// Runs a parsed command, writing primary output to `out`, and returns the
/// process exit code.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<u8, CliError> {
    match cli.command {
        Command::Order {
            action: OrderCommand::Check(args),
        } => order_check(&args, out),
        Command::Record(args) => record_curve(&args, out),
        Command::Theorem {
            action: TheoremCommand::Verify(args),
        } => theorem_verify(&args, out),
        Command::Example {
            action: ExampleCommand::Reproduce(args),
        } => example_reproduce(&args, out),
        Command::Simulate {
            action: SimulateCommand::Records(args),
        } => simulate(&args, out),
    }
}

fn dist(text: &str) -> Result<DistributionModel, CliError> {
    parse_dist_spec(text).map_err(|error| CliError::Spec {
        text: text.to_string(),
        error,
    })
}

/// Grid point count from the environment, or the default.
fn grid_points() -> Result<usize, CliError> {
    match std::env::var(GRID_POINTS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 2 => Ok(n),
            _ => Err(CliError::Usage(format!(
                "{GRID_POINTS_ENV} must be an integer of at least 2, got `{v}`"
            ))),
        },
        Err(_) => Ok(DEFAULT_GRID_POINTS),
    }
}

fn base_grid(explicit: Option<GridSpec>) -> Result<GridSpec, CliError> {
    match explicit {
        Some(g) => Ok(g),
        None => Ok(GridSpec::default_order_grid().with_count(grid_points()?)?),
    }
}

fn kind(k: KindArg) -> RecordKind {
    match k {
        KindArg::Upper => RecordKind::Upper,
        KindArg::Lower => RecordKind::Lower,
    }
}

fn kind_name(k: RecordKind) -> &'static str {
    match k {
        RecordKind::Upper => "upper",
        RecordKind::Lower => "lower",
    }
}

fn write_to(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|error| CliError::Write {
            path: p.display().to_string(),
            error,
        }),
        None => Ok(out.write_all(text.as_bytes())?),
    }
}

fn status_word(status: Status) -> &'static str {
    match status {
        Status::Holds => "holds",
        Status::Violated => "violated",
        Status::Inconclusive => "inconclusive",
    }
}

fn overall_word(overall: Overall) -> &'static str {
    match overall {
        Overall::Pass => "pass",
        Overall::HypothesisFailed => "hypothesis failed",
        Overall::ConclusionRefuted => "conclusion refuted",
        Overall::Inconclusive => "inconclusive",
    }
}

fn witness_text(w: &Witness) -> String {
    match w {
        Witness::Point { t } => format!("t = {t:e}"),
        Witness::Pair { t1, t2 } => format!("t1 = {t1:e}, t2 = {t2:e}"),
        Witness::Minor { x1, x2, y1, y2 } => format!("x = ({x1:e}, {x2:e}), y = ({y1:e}, {y2:e})"),
    }
}

fn verdict_lines(v: &OrderVerdict) -> String {
    let mut s = format!(
        "status: {}\nmargin: {:e}\npoints: {} evaluated, {} skipped\n",
        status_word(v.status),
        v.margin,
        v.evaluated,
        v.skipped
    );
    if let Some(w) = &v.witness {
        s.push_str(&format!("witness: {}\n", witness_text(w)));
    }
    s
}

fn ratio_range(x: &DistributionModel, y: &DistributionModel, mode: LimitMode, grid: &GridSpec) -> Option<[f64; 2]> {
    let ratios = grid.points().into_iter().filter_map(|t| {
        let r = mode.rate(x, t).ok()? / mode.rate(y, t).ok()?;
        (r.is_finite() && r > 0.0).then_some(r)
    });
    ratios.fold(None, |acc, r| match acc {
        None => Some([r, r]),
        Some([lo, hi]) => Some([lo.min(r), hi.max(r)]),
    })
}

fn order_check(args: &OrderCheckArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let x = dist(&args.x)?;
    let single = matches!(args.order, OrderArg::Ifr | OrderArg::Drhr);
    let y = match (&args.y, single) {
        (Some(text), false) => Some(dist(text)?),
        (None, false) => return Err(CliError::Usage("this order needs two distributions, X and Y".into())),
        (Some(_), true) => return Err(CliError::Usage("ifr and drhr take a single distribution".into())),
        (None, true) => None,
    };
    let models: Vec<&DistributionModel> = std::iter::once(&x).chain(y.as_ref()).collect();
    let grid = base_grid(args.grid)?.restrict_to_support(&models)?;
    let (name, verdict, range) = match (args.order, &y) {
        (OrderArg::St, Some(y)) => ("st", check_st(&x, y, &grid)?, None),
        (OrderArg::Hr, Some(y)) => ("hr", check_hr(&x, y, &grid)?, None),
        (OrderArg::Rh, Some(y)) => ("rh", check_rh(&x, y, &grid)?, None),
        (OrderArg::C, Some(y)) => (
            "c",
            check_aging_faster(&x, y, LimitMode::Hazard, &grid)?,
            ratio_range(&x, y, LimitMode::Hazard, &grid),
        ),
        (OrderArg::B, Some(y)) => (
            "b",
            check_aging_faster(&x, y, LimitMode::ReversedHazard, &grid)?,
            ratio_range(&x, y, LimitMode::ReversedHazard, &grid),
        ),
        (OrderArg::Ifr, None) => ("ifr", check_ifr(&x, &grid)?, None),
        (OrderArg::Drhr, None) => ("drhr", check_drhr(&x, &grid)?, None),
        _ => unreachable!("arity checked above"),
    };
    let code = exit_code(verdict.status);
    let output = OrderOutput {
        schema: SCHEMA_VERSION,
        command: "order check".into(),
        order: name.into(),
        x: x.to_string(),
        y: y.map(|y| y.to_string()),
        ratio_range: range,
        verdict,
    };
    let text = match args.format {
        TextOrJson::Json => to_json(&output)?,
        TextOrJson::Text => {
            let mut s = format!("order: {}\nx: {}\n", output.order, output.x);
            if let Some(y) = &output.y {
                s.push_str(&format!("y: {y}\n"));
            }
            s.push_str(&verdict_lines(&output.verdict));
            if let Some([lo, hi]) = output.ratio_range {
                s.push_str(&format!("ratio range: [{lo}, {hi}]\n"));
            }
            s
        }
    };
    out.write_all(text.as_bytes())?;
    Ok(code)
}

fn record_curve(args: &RecordArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let base = dist(&args.dist)?;
    let kind = kind(args.kind);
    let law = RecordLaw::new(base, args.n, kind)?;
    let grid = base_grid(args.grid)?.restrict_to_support(&[&base])?;
    let (label, eval): (&str, fn(&RecordLaw, f64) -> record_aging::Result<f64>) = match args.quantity {
        Quantity::Hazard => ("hazard", RecordLaw::hazard),
        Quantity::Rhr => ("rhr", RecordLaw::rev_hazard),
        Quantity::Pdf => ("pdf", RecordLaw::pdf),
        Quantity::Sf => ("sf", RecordLaw::sf),
        Quantity::Cdf => ("cdf", RecordLaw::cdf),
    };
    let mut xs = Vec::new();
    let mut values = Vec::new();
    for t in grid.points() {
        match eval(&law, t) {
            Ok(v) if v.is_finite() => {
                xs.push(t);
                values.push(v);
            }
            Ok(_) | Err(record_aging::Error::SupportExhausted(_)) => {}
            Err(e) => return Err(e.into()),
        }
    }
    let curve = CurveSeries {
        name: format!("{}_record_{label}", kind_name(kind)),
        x_label: "t".into(),
        xs,
        values,
        expected: None,
    };
    let text = match args.format {
        CsvOrJson::Csv => curve_csv(&curve),
        CsvOrJson::Json => to_json(&CurveOutput {
            schema: SCHEMA_VERSION,
            command: "record".into(),
            dist: base.to_string(),
            kind,
            n: args.n,
            quantity: label.into(),
            curve,
        })?,
    };
    write_to(args.out.as_deref(), &text, out)?;
    Ok(EXIT_PASS)
}

fn theorem_output(id: u8, report: TheoremReport) -> TheoremOutput {
    TheoremOutput {
        schema: SCHEMA_VERSION,
        command: "theorem verify".into(),
        theorem: id,
        overall: report.overall,
        sup: report.supremum().map(|s| s.value),
        c0: report.limits.as_ref().map(|l| l.at_zero),
        c1: report.limits.as_ref().map(|l| l.at_infinity),
        report,
    }
}

fn theorem_text(output: &TheoremOutput) -> String {
    let r = &output.report;
    let mut s = format!(
        "theorem {}: {}\nx: {} (m = {})\ny: {} (n = {})\n",
        output.theorem,
        overall_word(r.overall),
        r.x,
        r.m,
        r.y,
        r.n
    );
    if let (Some(c0), Some(c1)) = (output.c0, output.c1) {
        s.push_str(&format!("limits: c0 = {c0}, c1 = {c1}\n"));
    }
    for h in &r.hypothesis_checks {
        s.push_str(&format!("hypothesis {}: {}", h.name, status_word(h.status)));
        if let HypothesisResult::Supremum {
            report,
            bound,
            boundary_equality,
        } = &h.result
        {
            s.push_str(&format!(" (sup {} vs bound {bound}", report.value));
            if *boundary_equality {
                s.push_str(", equality");
            }
            s.push(')');
        }
        s.push('\n');
    }
    s.push_str(&format!("conclusion: {}\n", status_word(r.conclusion_check.status)));
    if let Some(w) = &r.conclusion_check.witness {
        s.push_str(&format!("conclusion witness: {}\n", witness_text(w)));
    }
    s
}

fn theorem_verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let x = dist(&args.x)?;
    let y = dist(&args.y)?;
    let id = TheoremId::from_number(args.id).ok_or_else(|| CliError::Usage(format!("no theorem {}", args.id)))?;
    let mut config = VerifyConfig {
        grid: base_grid(args.grid)?,
        ..VerifyConfig::default()
    };
    if let Some(points) = args.sup_grid_points {
        config.sup_grid_points = points;
    }
    let report = verify_theorem(id, &x, &y, args.m, args.n, &config)?;
    let code = overall_exit_code(report.overall);
    let output = theorem_output(args.id, report);
    let text = match args.format {
        TextOrJson::Json => to_json(&output)?,
        TextOrJson::Text => theorem_text(&output),
    };
    write_to(args.out.as_deref(), &text, out)?;
    Ok(code)
}

fn example_id(arg: ExampleArg) -> ExampleId {
    match arg {
        ExampleArg::Erlang => ExampleId::Erlang,
        ExampleArg::LomaxUpper => ExampleId::LomaxUpper,
        ExampleArg::InvweibullB => ExampleId::InvWeibullLower1,
        ExampleArg::InvweibullThm4 => ExampleId::InvWeibullLower2,
    }
}

fn theorem_number(id: TheoremId) -> u8 {
    match id {
        TheoremId::T1 => 1,
        TheoremId::T2 => 2,
        TheoremId::T3 => 3,
        TheoremId::T4 => 4,
    }
}

fn example_reproduce(args: &ReproduceArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let id = example_id(args.id);
    let config = VerifyConfig {
        grid: base_grid(None)?,
        ..VerifyConfig::default()
    };
    let bundle = reproduce_example_with(id, &config)?;
    fs::create_dir_all(&args.out_dir).map_err(|error| CliError::Write {
        path: args.out_dir.display().to_string(),
        error,
    })?;
    let slug = id.slug();
    let mut files = Vec::new();
    for curve in &bundle.curves {
        let file = format!("{slug}-{}.csv", curve.name);
        write_to(Some(&args.out_dir.join(&file)), &curve_csv(curve), out)?;
        files.push(CurveFile {
            name: curve.name.clone(),
            file,
            points: curve.values.len(),
            expected: curve.expected,
            check: bundle.curve_checks.iter().find(|c| c.curve == curve.name).cloned(),
        });
    }
    let passed = bundle.passed();
    let report_file = format!("{slug}-report.json");
    let output = ExampleOutput {
        schema: SCHEMA_VERSION,
        command: "example reproduce".into(),
        example: slug.into(),
        passed,
        curves: files,
        report: bundle.report,
    };
    write_to(Some(&args.out_dir.join(&report_file)), &to_json(&output)?, out)?;

    let mut s = format!("example {slug}\n");
    for f in &output.curves {
        s.push_str(&format!("wrote {} ({} points)", f.file, f.points));
        if let Some(c) = &f.check {
            let word = if c.passed { "pass" } else { "fail" };
            s.push_str(&format!(", {:?} check: {word}", c.direction).to_lowercase());
        }
        s.push('\n');
    }
    s.push_str(&format!("wrote {report_file}\n"));
    s.push_str(&format!(
        "theorem {}: {}\n",
        theorem_number(output.report.theorem),
        overall_word(output.report.overall)
    ));
    out.write_all(s.as_bytes())?;

    let code = if passed {
        EXIT_PASS
    } else if output.curves.iter().any(|f| f.check.as_ref().is_some_and(|c| !c.passed)) {
        EXIT_VIOLATED
    } else {
        overall_exit_code(output.report.overall)
    };
    Ok(code)
}

fn simulate(args: &SimulateArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let base = dist(&args.dist)?;
    let method = match args.method {
        MethodArg::Gamma => SamplingMethod::GammaTransform,
        MethodArg::Scan => SamplingMethod::SequentialScan,
    };
    let batch = sample_records(&base, args.n, kind(args.kind), args.count, args.seed, method)?;
    write_to(args.out.as_deref(), &samples_csv(&batch), out)?;
    Ok(EXIT_PASS)
}
