use clap::{Args, Parser, Subcommand, ValueEnum};
use sbc::blocks::{
    builtin_profile, derive_plan, generate_shall, render_plan_markdown, render_shall_markdown,
};
use sbc::catalog::{builtin_catalog, load_catalog, Catalog};
use sbc::linksim::{parse_scenario, run_simulation, ModelRef, ScenarioConfig};
use sbc::model::{
    builtin_model, decode_model, parse_model, to_dot, validate, Severity, SystemModel,
};
use sbc::report::{build_report, render_markdown as render_report_markdown};
use sbc::surface::{
    builtin_labels, coverage_warnings, enumerate_surfaces,
    render_markdown as render_surface_markdown,
};
use sbc::threatmap::{enumerate_threats, render_markdown as render_threats_markdown};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "sbc",
    version,
    about = "Secure-by-component engineering toolkit for satellite EO data systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a model against every invariant and list violations
    Validate(ModelArgs),
    /// Emit the mission decomposition as a Graphviz digraph
    Graph(ModelArgs),
    /// Enumerate the attack surface table
    Surface {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, value_enum, default_value_t = Format::Md)]
        format: Format,
        /// Write the table here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Match the technique catalog against a model
    Threats {
        #[command(flatten)]
        model: ModelArgs,
        /// Catalog document (defaults to the builtin catalog)
        #[arg(long)]
        catalog: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Md)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Derive the secure-block plan from the threat findings
    Plan {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        catalog: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Md)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate numbered shall statements
    Shall {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        catalog: Option<PathBuf>,
        /// `paper-eo` for the curated statement set, `none` for the full
        /// derivation. Defaults to `paper-eo` on the builtin single-leo
        /// model and `none` elsewhere.
        #[arg(long)]
        profile: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Md)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a link-segment attack scenario
    Simulate {
        /// Scenario document
        #[arg(long)]
        scenario: PathBuf,
        /// Override the scenario seed
        #[arg(long)]
        seed: Option<u64>,
        /// Write the event log here as JSON lines
        #[arg(long)]
        events: Option<PathBuf>,
        /// Write the metrics here as JSON
        #[arg(long)]
        metrics: Option<PathBuf>,
    },
    /// Run the full pipeline and emit one report
    Report {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        catalog: Option<PathBuf>,
        /// Also run this scenario and append the results
        #[arg(long)]
        scenario: Option<PathBuf>,
        #[arg(long)]
        profile: Option<String>,
        /// Pipeline steps to include, e.g. `3,4,7`
        #[arg(long, value_delimiter = ',', default_values_t = [1u8, 2, 3, 4, 5, 6, 7])]
        steps: Vec<u8>,
        #[arg(long, value_enum, default_value_t = Format::Md)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ModelArgs {
    /// Model document to analyze
    #[arg(long)]
    model: Option<PathBuf>,
    /// Builtin scenario name (`single-leo` or `leo-network`)
    #[arg(long)]
    builtin: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Md,
    Json,
    Dot,
}

/// Failure with the exit code it maps to: 1 validation, 2 parse/config,
/// 3 runtime.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn validation(message: impl Into<String>) -> Failure {
        Failure {
            code: 1,
            message: message.into(),
        }
    }
    fn config(message: impl Into<String>) -> Failure {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
    fn runtime(message: impl Into<String>) -> Failure {
        Failure {
            code: 3,
            message: message.into(),
        }
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::runtime(format!("cannot read {}: {e}", path.display())))
}

fn write_output(out: Option<&Path>, content: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| Failure::runtime(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

impl ModelArgs {
    fn is_builtin_single_leo(&self) -> bool {
        self.builtin.as_deref() == Some("single-leo")
    }

    /// Load, parse and validate the selected model. Validation warnings go
    /// to stderr; errors abort with exit code 1.
    fn load(&self) -> Result<SystemModel, Failure> {
        let model = match (&self.model, &self.builtin) {
            (Some(path), None) => {
                let text = read_file(path)?;
                parse_model(&text).map_err(|e| Failure::config(e.to_string()))?
            }
            (None, Some(name)) => {
                builtin_model(name).map_err(|e| Failure::config(e.to_string()))?
            }
            _ => unreachable!("clap enforces the group"),
        };
        let violations = validate(&model);
        let errors: Vec<_> = violations
            .iter()
            .filter(|v| v.severity == Severity::Error)
            .collect();
        if let Some(first) = errors.first() {
            return Err(Failure::validation(format!(
                "model has {} validation error(s); first: {} {}: {}",
                errors.len(),
                first.code,
                first.subject,
                first.message
            )));
        }
        for warning in violations
            .iter()
            .filter(|v| v.severity == Severity::Warning)
        {
            eprintln!(
                "warning: {} {}: {}",
                warning.code, warning.subject, warning.message
            );
        }
        Ok(model)
    }
}

fn load_catalog_arg(path: &Option<PathBuf>) -> Result<(Catalog, String), Failure> {
    match path {
        Some(path) => {
            let text = read_file(path)?;
            let catalog = load_catalog(&text).map_err(|e| Failure::config(e.to_string()))?;
            Ok((catalog, path.display().to_string()))
        }
        None => Ok((builtin_catalog(), "builtin".to_string())),
    }
}

fn resolve_profile(
    name: &Option<String>,
    model_args: &ModelArgs,
) -> Result<Option<sbc::blocks::Profile>, Failure> {
    let chosen = name.clone().unwrap_or_else(|| {
        if model_args.is_builtin_single_leo() {
            "paper-eo".to_string()
        } else {
            "none".to_string()
        }
    });
    match chosen.as_str() {
        "none" => Ok(None),
        "paper-eo" => Ok(Some(builtin_profile())),
        other => Err(Failure::config(format!("unknown profile `{other}`"))),
    }
}

fn load_scenario_config(path: &Path, seed: Option<u64>) -> Result<ScenarioConfig, Failure> {
    let text = read_file(path)?;
    let file = parse_scenario(&text).map_err(|e| Failure::config(e.to_string()))?;
    let model = match &file.model {
        ModelRef::Builtin { builtin } => {
            builtin_model(builtin).map_err(|e| Failure::config(e.to_string()))?
        }
        ModelRef::Path { path: model_path } => {
            let resolved = path
                .parent()
                .map(|dir| dir.join(model_path))
                .unwrap_or_else(|| PathBuf::from(model_path));
            parse_model(&read_file(&resolved)?).map_err(|e| Failure::config(e.to_string()))?
        }
    };
    let mut config = file.resolve(model);
    if let Some(seed) = seed {
        config.seed = seed;
    }
    Ok(config)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Validate(model_args) => {
            // Decode leniently so dangling references surface as violations
            // rather than parse errors.
            let model = match (&model_args.model, &model_args.builtin) {
                (Some(path), None) => {
                    decode_model(&read_file(path)?).map_err(|e| Failure::config(e.to_string()))?
                }
                (None, Some(name)) => {
                    builtin_model(name).map_err(|e| Failure::config(e.to_string()))?
                }
                _ => unreachable!("clap enforces the group"),
            };
            let violations = validate(&model);
            let mut errors = 0usize;
            for violation in &violations {
                match violation.severity {
                    Severity::Error => {
                        errors += 1;
                        println!(
                            "{} {}: {}",
                            violation.code, violation.subject, violation.message
                        );
                    }
                    Severity::Warning => {
                        eprintln!(
                            "warning: {} {}: {}",
                            violation.code, violation.subject, violation.message
                        );
                    }
                }
            }
            if errors > 0 {
                return Err(Failure::validation(format!("{errors} validation error(s)")));
            }
            println!("ok");
            Ok(())
        }
        Command::Graph(model_args) => {
            let model = model_args.load()?;
            print!("{}", to_dot(&model));
            Ok(())
        }
        Command::Surface { model, format, out } => {
            let model = model.load()?;
            let labels = builtin_labels();
            let entries =
                enumerate_surfaces(&model, &labels).map_err(|e| Failure::config(e.to_string()))?;
            for warning in
                coverage_warnings(&model, &labels).map_err(|e| Failure::config(e.to_string()))?
            {
                eprintln!("warning: {}", warning.message);
            }
            let content = match format {
                Format::Md => render_surface_markdown(&entries),
                Format::Json => to_json(&entries)?,
                Format::Dot => return Err(Failure::config("surface has no dot format")),
            };
            write_output(out.as_deref(), &content)
        }
        Command::Threats {
            model,
            catalog,
            format,
            out,
        } => {
            let model = model.load()?;
            let (catalog, _) = load_catalog_arg(&catalog)?;
            let report = enumerate_threats(&model, &catalog);
            let content = match format {
                Format::Md => render_threats_markdown(&report),
                Format::Json => to_json(&report)?,
                Format::Dot => return Err(Failure::config("threats has no dot format")),
            };
            write_output(out.as_deref(), &content)
        }
        Command::Plan {
            model,
            catalog,
            format,
            out,
        } => {
            let model = model.load()?;
            let (catalog, _) = load_catalog_arg(&catalog)?;
            let report = enumerate_threats(&model, &catalog);
            let plan = derive_plan(&report, &catalog, &model);
            let content = match format {
                Format::Md => render_plan_markdown(&plan),
                Format::Json => to_json(&plan)?,
                Format::Dot => return Err(Failure::config("plan has no dot format")),
            };
            write_output(out.as_deref(), &content)
        }
        Command::Shall {
            model,
            catalog,
            profile,
            format,
            out,
        } => {
            let profile = resolve_profile(&profile, &model)?;
            let model = model.load()?;
            let (catalog, _) = load_catalog_arg(&catalog)?;
            let report = enumerate_threats(&model, &catalog);
            let plan = derive_plan(&report, &catalog, &model);
            let statements = generate_shall(&plan, &catalog, profile.as_ref())
                .map_err(|e| Failure::config(e.to_string()))?;
            let content = match format {
                Format::Md => render_shall_markdown(&statements),
                Format::Json => to_json(&statements)?,
                Format::Dot => return Err(Failure::config("shall has no dot format")),
            };
            write_output(out.as_deref(), &content)
        }
        Command::Simulate {
            scenario,
            seed,
            events,
            metrics,
        } => {
            let config = load_scenario_config(&scenario, seed)?;
            let result = run_simulation(&config).map_err(|e| Failure::config(e.to_string()))?;
            if let Some(path) = events {
                let mut lines = String::new();
                for event in &result.events {
                    lines.push_str(&to_json_line(event)?);
                    lines.push('\n');
                }
                write_output(Some(&path), &lines)?;
            }
            let metrics_json = to_json(&result.metrics)?;
            if let Some(path) = metrics {
                write_output(Some(&path), &metrics_json)?;
            }
            print!("{metrics_json}");
            Ok(())
        }
        Command::Report {
            model,
            catalog,
            scenario,
            profile,
            steps,
            format,
            out,
        } => {
            let profile = resolve_profile(&profile, &model)?;
            let model = model.load()?;
            let (catalog, catalog_label) = load_catalog_arg(&catalog)?;
            let scenario = scenario
                .map(|path| load_scenario_config(&path, None))
                .transpose()?;
            let labels = builtin_labels();
            let report = build_report(
                &model,
                &catalog,
                &catalog_label,
                &labels,
                profile.as_ref(),
                &steps,
                scenario.as_ref(),
            )
            .map_err(|e| Failure::config(e.to_string()))?;
            let content = match format {
                Format::Md => render_report_markdown(&report),
                Format::Json => to_json(&report)?,
                Format::Dot => return Err(Failure::config("report has no dot format")),
            };
            write_output(out.as_deref(), &content)
        }
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String, Failure> {
    serde_json::to_string_pretty(value)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| Failure::runtime(e.to_string()))
}

fn to_json_line<T: serde::Serialize>(value: &T) -> Result<String, Failure> {
    serde_json::to_string(value).map_err(|e| Failure::runtime(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
