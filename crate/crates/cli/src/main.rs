use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use regclose_core::fintop::{canonical_form, enumerate_spaces, SpaceFile};
use regclose_core::subcat::resolve_space;
use regclose_cli::{
    ceiling_from_env, load_scenario, run_scenario, Args, Check, CheckResult, CliError, Context, Report, Result,
    Verdict,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "regclose", version, about = "Regular closure operators over finite topological spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Include per-check durations in the report.
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a space file (or named space) and print its canonical form.
    Validate { file: String },
    /// List the homeomorphism classes of spaces with exactly N points.
    Spaces {
        #[arg(long)]
        n: usize,
    },
    /// Regular closure of a subset.
    Closure {
        #[arg(long)]
        space: String,
        /// Comma separated point labels; may be empty.
        #[arg(long, allow_hyphen_values = true)]
        subset: String,
        #[arg(long)]
        subcat: String,
        #[arg(long, value_parser = ["formula", "brute", "both"])]
        method: Option<String>,
    },
    /// Compare the closure operators of two subcategories.
    Compare {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        max_points: Option<usize>,
    },
    /// Hull membership.
    Hull {
        #[arg(long, value_parser = ["s", "e", "d", "mono", "smallest", "largest"])]
        which: String,
        #[arg(long)]
        subcat: String,
        #[arg(long)]
        space: String,
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Whether the diagonal of a space is regular.
    Diagonal {
        #[arg(long)]
        space: String,
        #[arg(long)]
        subcat: String,
    },
    /// Closure-operator axioms over a universe.
    Axioms {
        #[arg(long)]
        subcat: String,
        #[arg(long)]
        max_points: Option<usize>,
    },
    /// Run a scenario file.
    Scenario { file: PathBuf },
}

fn single(kind: &str, args: Value, ctx: &Context) -> Result<Report> {
    let args: Args = serde_json::from_value(args).expect("argument objects");
    let args = args.into_iter().filter(|(_, v)| !v.is_null()).collect();
    let result = Check::prepare(kind, &args, ctx, None)?.run()?;
    Ok(Report::new(kind, vec![result]))
}

fn plain(check: &str, summary: String, details: Value) -> Report {
    let result = CheckResult {
        check: check.into(),
        verdict: Verdict::Pass,
        summary,
        bound: None,
        witnesses: Vec::new(),
        details,
        duration_ms: None,
    };
    Report::new(check, vec![result])
}

fn run(cli: &Cli) -> Result<Report> {
    let mut ctx = Context::new(".", ceiling_from_env()?);
    ctx.timings = cli.timings;
    match &cli.command {
        Command::Validate { file } => {
            let x = resolve_space(file, Path::new(".")).map_err(|e| CliError::field(file, e))?;
            let canonical = canonical_form(&x);
            let summary = format!("{} points, {} opens, canonical form {canonical}", x.len(), x.opens().len());
            let details = json!({
                "canonical": canonical,
                "space": SpaceFile::from_space(&x),
                "t0": x.is_t0(),
                "t1": x.is_t1(),
            });
            Ok(plain("validate", summary, details))
        }
        Command::Spaces { n } => {
            if *n > ctx.ceiling {
                return Err(CliError::field("--n", format!("{n} exceeds the ceiling {}", ctx.ceiling)));
            }
            let spaces = enumerate_spaces(*n)?;
            let listed: Vec<Value> = spaces
                .iter()
                .map(|x| json!({"canonical": canonical_form(x), "space": SpaceFile::from_space(x)}))
                .collect();
            Ok(plain("spaces", format!("{} classes of {n}-point spaces", spaces.len()), json!(listed)))
        }
        Command::Closure { space, subset, subcat, method } => single(
            "closure",
            json!({"space": space, "subset": subset, "subcat": subcat, "method": method}),
            &ctx,
        ),
        Command::Compare { a, b, max_points } => {
            single("compare", json!({"a": a, "b": b, "max_points": max_points}), &ctx)
        }
        Command::Hull { which, subcat, space, bound } => single(
            "hull",
            json!({"which": which, "subcat": subcat, "space": space, "bound": bound}),
            &ctx,
        ),
        Command::Diagonal { space, subcat } => single("diagonal", json!({"space": space, "subcat": subcat}), &ctx),
        Command::Axioms { subcat, max_points } => {
            single("axioms", json!({"subcat": subcat, "max_points": max_points}), &ctx)
        }
        Command::Scenario { file } => {
            let spec = load_scenario(file)?;
            ctx.base = file.parent().map(Path::to_path_buf).unwrap_or_default();
            run_scenario(&spec, &ctx)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            match cli.format {
                Format::Text => print!("{}", report.to_text()),
                Format::Json => print!("{}", report.to_json()),
            }
            ExitCode::from(report.exit_code())
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
