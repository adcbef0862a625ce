//! `deun` — command-line driver for directed expected-utility network
//! models: validation, decomposition, junction-tree display, utility
//! expansion, evaluation, ranking, and Monte Carlo cross-checks.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use deun_core::{
    build_junction_tree, is_decomposable, jtree_eu, monte_carlo_eu, parse_model_str_with_report,
    rank_decisions, serialize_model, theorem1_eu, utility_expansion, DecisionModel, DeunError,
    McReport, Method, Monomial,
};

#[derive(Parser)]
#[command(
    name = "deun",
    about = "Expected-utility evaluation for directed expected utility networks",
    version
)]
struct Cli {
    /// What to do with the model.
    #[arg(value_enum)]
    command: Command,
    /// Path to the model file (JSON).
    model_file: PathBuf,
    /// Decision label; defaults to all decisions where applicable.
    #[arg(long)]
    decision: Option<String>,
    /// Evaluation algorithm; defaults to jtree on decomposable
    /// networks, theorem1 otherwise.
    #[arg(long, value_enum)]
    method: Option<MethodArg>,
    /// Monte Carlo sample count (required by `oracle`).
    #[arg(long)]
    mc_samples: Option<u64>,
    /// Monte Carlo seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the report (or decomposed model) here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Emit the report as a JSON document with full-precision numbers.
    #[arg(long)]
    structured: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Command {
    /// Print the validation report; exit 0 only when clean.
    Validate,
    /// Write the decomposable closure of the model.
    Decompose,
    /// Print cliques, separators, tree edges and family assignment.
    Jtree,
    /// Print the corner-monomial expansion of the joint utility.
    Expand,
    /// Print expected utilities.
    Evaluate,
    /// Print decisions ordered by expected utility.
    Rank,
    /// Cross-check the closed form against a Monte Carlo estimate.
    Oracle,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Theorem1,
    Jtree,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

/// 1 = validation problem, 2 = computation failure, 3 = I/O failure.
fn exit_code(e: &DeunError) -> u8 {
    match e {
        DeunError::Io(_) => 3,
        DeunError::Parse(_)
        | DeunError::Validation(_)
        | DeunError::UnknownDecision(_)
        | DeunError::EmptyGraph
        | DeunError::SelfLoop(_)
        | DeunError::CycleDetected(_)
        | DeunError::OrderingViolated(_, _) => 1,
        _ => 2,
    }
}

fn run(cli: &Cli) -> Result<ExitCode, DeunError> {
    let text = std::fs::read_to_string(&cli.model_file)?;
    let (model, report) = parse_model_str_with_report(&text)?;

    if let Command::Validate = cli.command {
        let out = if cli.structured {
            let doc = serde_doc(vec![
                ("clean", Json::Bool(report.is_clean())),
                ("violations", Json::StrList(report.violations.clone())),
                ("warnings", Json::StrList(report.warnings.clone())),
            ]);
            doc
        } else {
            let mut s = String::new();
            if report.is_clean() {
                s.push_str("model is valid\n");
            } else {
                s.push_str(&format!("{} violation(s):\n", report.violations.len()));
                for v in &report.violations {
                    s.push_str(&format!("  - {v}\n"));
                }
            }
            for w in &report.warnings {
                s.push_str(&format!("warning: {w}\n"));
            }
            s
        };
        emit(cli, &out)?;
        return Ok(if report.is_clean() {
            ExitCode::SUCCESS
        } else {
            ExitCode::from(1)
        });
    }

    if !report.is_clean() {
        return Err(DeunError::Validation(report.violations));
    }

    match cli.command {
        Command::Validate => unreachable!("handled above"),
        Command::Decompose => {
            let decomposed = model.decompose();
            emit(cli, &serialize_model(&decomposed))?;
        }
        Command::Jtree => {
            let jt = build_junction_tree(&model.deun)?;
            let out = if cli.structured {
                let cs = &jt.clique_set;
                serde_doc(vec![
                    (
                        "cliques",
                        Json::NestedInts(
                            cs.cliques
                                .iter()
                                .map(|c| c.iter().map(|&v| v as u64).collect())
                                .collect(),
                        ),
                    ),
                    (
                        "separators",
                        Json::NestedInts(
                            cs.separators
                                .iter()
                                .map(|s| s.iter().map(|&v| v as u64).collect())
                                .collect(),
                        ),
                    ),
                    (
                        "edges",
                        Json::NestedInts(
                            jt.edges()
                                .iter()
                                .map(|&(a, b)| vec![a as u64, b as u64])
                                .collect(),
                        ),
                    ),
                    (
                        "family_assignment",
                        Json::Ints(jt.family_assignment.iter().map(|&c| c as u64).collect()),
                    ),
                ])
            } else {
                let mut s = String::new();
                for (i, c) in jt.clique_set.cliques.iter().enumerate() {
                    s.push_str(&format!(
                        "clique {i}: {}  separator: {}  parent: {}\n",
                        set_str(c.iter()),
                        set_str(jt.clique_set.separators[i].iter()),
                        jt.clique_set.rip_parent[i]
                            .map(|p| p.to_string())
                            .unwrap_or_else(|| "-".into()),
                    ));
                }
                for (a, b) in jt.edges() {
                    s.push_str(&format!("edge: clique {a} -> clique {b}\n"));
                }
                for (v, &c) in jt.family_assignment.iter().enumerate() {
                    s.push_str(&format!("attribute {} -> clique {c}\n", v + 1));
                }
                s
            };
            emit(cli, &out)?;
        }
        Command::Expand => {
            let monomials = utility_expansion(&model)?;
            let out = if cli.structured {
                structured_expansion(&monomials)
            } else {
                let mut s = String::new();
                for m in &monomials {
                    s.push_str(&format!(
                        "{}  weight {}  {}\n",
                        m.corner.key(),
                        sig6(m.weight),
                        factors_str(m)
                    ));
                }
                s
            };
            emit(cli, &out)?;
        }
        Command::Evaluate => {
            let method = pick_method(cli, &model);
            let labels = targets(cli, &model)?;
            let mut results = Vec::new();
            for label in &labels {
                let eu = eval(&model, label, method)?;
                results.push((label.clone(), eu));
            }
            emit_eus(cli, method, &results, "evaluate")?;
        }
        Command::Rank => {
            let method = pick_method(cli, &model);
            let ranked = rank_decisions(
                &model,
                match method {
                    MethodArg::Theorem1 => Method::Theorem1,
                    MethodArg::Jtree => Method::Jtree,
                },
            )?;
            emit_eus(cli, method, &ranked, "rank")?;
        }
        Command::Oracle => {
            let samples = cli.mc_samples.ok_or_else(|| {
                DeunError::Parse("oracle requires --mc-samples".to_string())
            })?;
            let method = pick_method(cli, &model);
            let labels = targets(cli, &model)?;
            let mut lines = Vec::new();
            let mut docs = Vec::new();
            for label in &labels {
                let closed = eval(&model, label, method)?;
                let mc = monte_carlo_eu(&model, label, samples, cli.seed)?;
                let z = if mc.std_error > 0.0 {
                    (closed - mc.estimate) / mc.std_error
                } else {
                    0.0
                };
                lines.push(format!(
                    "{label}: closed-form {} ({})  mc {} ± {}  z = {}  out-of-domain {}",
                    sig6(closed),
                    method_name(method),
                    sig6(mc.estimate),
                    sig6(mc.std_error),
                    sig6(z),
                    sig6(mc.out_of_domain_fraction),
                ));
                docs.push(oracle_doc(label, closed, method, &mc, z));
            }
            let out = if cli.structured {
                format!("{{\n  \"results\": [\n{}\n  ]\n}}\n", docs.join(",\n"))
            } else {
                lines.join("\n") + "\n"
            };
            emit(cli, &out)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn pick_method(cli: &Cli, model: &DecisionModel) -> MethodArg {
    cli.method.unwrap_or({
        if is_decomposable(&model.deun).is_ok() {
            MethodArg::Jtree
        } else {
            MethodArg::Theorem1
        }
    })
}

fn method_name(m: MethodArg) -> &'static str {
    match m {
        MethodArg::Theorem1 => "theorem1",
        MethodArg::Jtree => "jtree",
    }
}

fn eval(model: &DecisionModel, label: &str, method: MethodArg) -> Result<f64, DeunError> {
    match method {
        MethodArg::Theorem1 => theorem1_eu(model, label),
        MethodArg::Jtree => jtree_eu(model, label),
    }
}

fn targets(cli: &Cli, model: &DecisionModel) -> Result<Vec<String>, DeunError> {
    match &cli.decision {
        Some(label) => {
            model.decision_index(label)?;
            Ok(vec![label.clone()])
        }
        None => Ok(model.decisions.clone()),
    }
}

fn emit_eus(
    cli: &Cli,
    method: MethodArg,
    results: &[(String, f64)],
    kind: &str,
) -> Result<(), DeunError> {
    let out = if cli.structured {
        let entries: Vec<String> = results
            .iter()
            .map(|(label, eu)| {
                format!(
                    "    {{\"decision\": {}, \"eu\": {}}}",
                    quote(label),
                    full(*eu)
                )
            })
            .collect();
        format!(
            "{{\n  \"command\": {},\n  \"method\": {},\n  \"results\": [\n{}\n  ]\n}}\n",
            quote(kind),
            quote(method_name(method)),
            entries.join(",\n")
        )
    } else {
        let mut s = format!("method: {}\n", method_name(method));
        for (label, eu) in results {
            s.push_str(&format!("{label}: {}\n", sig6(*eu)));
        }
        s
    };
    emit(cli, &out)
}

fn oracle_doc(label: &str, closed: f64, method: MethodArg, mc: &McReport, z: f64) -> String {
    format!(
        "    {{\"decision\": {}, \"closed_form\": {}, \"method\": {}, \"mc_estimate\": {}, \
         \"mc_std_error\": {}, \"sample_count\": {}, \"seed\": {}, \"algorithm\": {}, \
         \"out_of_domain_fraction\": {}, \"clamped\": {}, \"z\": {}}}",
        quote(label),
        full(closed),
        quote(method_name(method)),
        full(mc.estimate),
        full(mc.std_error),
        mc.sample_count,
        mc.seed,
        quote(&mc.algorithm),
        full(mc.out_of_domain_fraction),
        mc.clamped,
        full(z)
    )
}

fn structured_expansion(monomials: &[Monomial]) -> String {
    let entries: Vec<String> = monomials
        .iter()
        .map(|m| {
            let factors: Vec<String> = m
                .factors
                .iter()
                .map(|f| {
                    format!(
                        "{{\"attr\": {}, \"kind\": {}, \"parent_corner\": {}}}",
                        f.attr,
                        quote(if f.starred { "u" } else { "disutility" }),
                        quote(&f.parent_corner.key())
                    )
                })
                .collect();
            format!(
                "    {{\"corner\": {}, \"weight\": {}, \"factors\": [{}]}}",
                quote(&m.corner.key()),
                full(m.weight),
                factors.join(", ")
            )
        })
        .collect();
    format!("{{\n  \"monomials\": [\n{}\n  ]\n}}\n", entries.join(",\n"))
}

fn factors_str(m: &Monomial) -> String {
    m.factors
        .iter()
        .map(|f| {
            let head = if f.starred { "u" } else { "û" };
            let parents = f
                .parent_corner
                .scope()
                .iter()
                .zip(f.parent_corner.stars())
                .map(|(p, &star)| format!("y{p}{}", if star { "*" } else { "⁰" }))
                .collect::<Vec<_>>()
                .join(",");
            if parents.is_empty() {
                format!("{head}(y{})", f.attr)
            } else {
                format!("{head}(y{}|{parents})", f.attr)
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn set_str<'a>(items: impl Iterator<Item = &'a u32>) -> String {
    format!(
        "{{{}}}",
        items.map(|v| v.to_string()).collect::<Vec<_>>().join(",")
    )
}

/// 6 significant digits for on-screen reports.
fn sig6(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let mag = v.abs().log10().floor() as i32;
    let decimals = (5 - mag).max(0) as usize;
    format!("{v:.decimals$}")
}

/// Full-precision rendering for structured output.
fn full(v: f64) -> String {
    format!("{v:.16e}")
}

fn quote(s: &str) -> String {
    let escaped = s.replace('\\', "\\\\").replace('"', "\\\"");
    format!("\"{escaped}\"")
}

/// A tiny structured-output helper for list-of-strings documents.
enum Json {
    Bool(bool),
    StrList(Vec<String>),
    Ints(Vec<u64>),
    NestedInts(Vec<Vec<u64>>),
}

fn serde_doc(fields: Vec<(&str, Json)>) -> String {
    let body: Vec<String> = fields
        .into_iter()
        .map(|(k, v)| {
            let val = match v {
                Json::Bool(b) => b.to_string(),
                Json::StrList(items) => format!(
                    "[{}]",
                    items.iter().map(|s| quote(s)).collect::<Vec<_>>().join(", ")
                ),
                Json::Ints(items) => format!(
                    "[{}]",
                    items.iter().map(u64::to_string).collect::<Vec<_>>().join(", ")
                ),
                Json::NestedInts(items) => format!(
                    "[{}]",
                    items
                        .iter()
                        .map(|inner| format!(
                            "[{}]",
                            inner.iter().map(u64::to_string).collect::<Vec<_>>().join(", ")
                        ))
                        .collect::<Vec<_>>()
                        .join(", ")
                ),
            };
            format!("  {}: {}", quote(k), val)
        })
        .collect();
    format!("{{\n{}\n}}\n", body.join(",\n"))
}

fn emit(cli: &Cli, out: &str) -> Result<(), DeunError> {
    match &cli.output {
        Some(path) => {
            if let Some(parent) = path.parent() {
                if !parent.as_os_str().is_empty() {
                    std::fs::create_dir_all(parent)?;
                }
            }
            std::fs::write(path, out)?;
        }
        None => print!("{out}"),
    }
    Ok(())
}
