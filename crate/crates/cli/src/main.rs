//! Command-line front end: load and inspect algebras given by structure
//! constants, solve their multiplier systems, browse the bundled catalog,
//! run the regression expectations, and cross-check with the exhaustive
//! counting oracles.

use clap::{Args, Parser, Subcommand};
use mulspace::algebra::Algebra;
use mulspace::catalog::{self, Params};
use mulspace::field::{Field, FieldSpec, Fp, FpCtx};
use mulspace::json::{self, AnyAlgebra};
use mulspace::multiplier::{solve_linear_full, solve_linear_weak};
use mulspace::oracle::{self, OracleConfig, OracleMode};
use mulspace::report;
use mulspace::Rational;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "mulspace",
    version,
    about = "Exact multiplier and weak-multiplier spaces of finite-dimensional algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonFlags {
    /// Target field: "rational" or "fp:<p>" (overrides the file header).
    #[arg(long)]
    field: Option<String>,
    /// Emit the machine-readable JSON report.
    #[arg(long)]
    json: bool,
    /// Permit characteristic 2 (needed only by the set-map oracle).
    #[arg(long = "allow-char-2")]
    allow_char2: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze an algebra file: flags, identities, annihilators, nihil
    /// decomposition, multiplier spaces, and the decomposition description.
    Analyze {
        input: PathBuf,
        /// Subspace file overriding the complement A1.
        #[arg(long)]
        a1: Option<PathBuf>,
        #[command(flatten)]
        common: CommonFlags,
    },
    /// Solve the weak and full multiplier systems of an algebra file.
    Solve {
        input: PathBuf,
        #[command(flatten)]
        common: CommonFlags,
    },
    /// Browse the bundled algebra catalog.
    #[command(subcommand)]
    Catalog(CatalogCommand),
    /// Run the bundled regression expectations (exit 0 iff all pass).
    VerifyPaper {
        /// Restrict to one entry.
        #[arg(long)]
        entry: Option<String>,
        /// Parameter assignment name=value (repeatable).
        #[arg(long = "param", value_parser = parse_param)]
        params: Vec<(String, String)>,
        #[command(flatten)]
        common: CommonFlags,
    },
    /// Exhaustively count (weak) multipliers of an algebra over F_p and
    /// compare with the solver predictions (exit 0 iff they match).
    Oracle {
        input: PathBuf,
        /// Oracle prime.
        #[arg(long)]
        p: u64,
        /// Enumerate arbitrary set maps instead of matrices.
        #[arg(long)]
        setmaps: bool,
        /// Enumeration guard.
        #[arg(long = "max-enum", default_value_t = oracle::DEFAULT_MAX_ENUMERATION)]
        max_enum: u128,
        #[command(flatten)]
        common: CommonFlags,
    },
}

#[derive(Subcommand)]
enum CatalogCommand {
    /// List all catalog entries.
    List {
        #[arg(long)]
        json: bool,
    },
    /// Show one entry: table, expected dimensions, flags.
    Show {
        name: String,
        #[arg(long = "param", value_parser = parse_param)]
        params: Vec<(String, String)>,
        #[command(flatten)]
        common: CommonFlags,
    },
    /// Emit an entry as an algebra file (stdout or --out).
    Get {
        name: String,
        #[arg(long = "param", value_parser = parse_param)]
        params: Vec<(String, String)>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: CommonFlags,
    },
}

fn parse_param(s: &str) -> Result<(String, String), String> {
    s.split_once('=')
        .map(|(k, v)| (k.trim().to_owned(), v.trim().to_owned()))
        .ok_or_else(|| format!("expected name=value, got {s:?}"))
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Analyze { input, a1, common } => {
            let alg = load_algebra(&input, &common)?;
            let value = match &alg {
                AnyAlgebra::Rational(a) => analyze_value(a, a1.as_deref())?,
                AnyAlgebra::Prime(a) => analyze_value(a, a1.as_deref())?,
            };
            emit(&value, common.json, human_analysis);
            Ok(ExitCode::SUCCESS)
        }
        Command::Solve { input, common } => {
            let alg = load_algebra(&input, &common)?;
            let value = match &alg {
                AnyAlgebra::Rational(a) => solve_value(a),
                AnyAlgebra::Prime(a) => solve_value(a),
            };
            emit(&value, common.json, human_solve);
            Ok(ExitCode::SUCCESS)
        }
        Command::Catalog(cmd) => run_catalog(cmd),
        Command::VerifyPaper {
            entry,
            params,
            common,
        } => run_verify(entry, params, common),
        Command::Oracle {
            input,
            p,
            setmaps,
            max_enum,
            common,
        } => run_oracle(input, p, setmaps, max_enum, common),
    }
}

fn load_algebra(input: &Path, common: &CommonFlags) -> Result<AnyAlgebra, String> {
    let text = std::fs::read_to_string(input)
        .map_err(|e| format!("cannot read {}: {e}", input.display()))?;
    let alg = json::parse_algebra(&text, common.allow_char2).map_err(|e| e.to_string())?;
    match &common.field {
        None => Ok(alg),
        Some(f) => {
            let spec = FieldSpec::parse(f, common.allow_char2).map_err(|e| e.to_string())?;
            json::retarget(&alg, spec).map_err(|e| e.to_string())
        }
    }
}

fn analyze_value<K: Field>(alg: &Algebra<K>, a1: Option<&Path>) -> Result<Value, String> {
    let a1_override = match a1 {
        None => None,
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            Some(json::parse_subspace_in::<K>(alg.ctx(), &text).map_err(|e| e.to_string())?)
        }
    };
    let nd = alg
        .nihil_decomposition(a1_override.as_ref())
        .map_err(|e| e.to_string())?;
    report::analysis_to_value(alg, &nd).map_err(|e| e.to_string())
}

fn solve_value<K: Field>(alg: &Algebra<K>) -> Value {
    let weak = solve_linear_weak(alg);
    let full = solve_linear_full(alg);
    json!({
        "field": K::spec(alg.ctx()).to_string(),
        "dim": alg.dim(),
        "weak": report::solution_to_value(&weak),
        "full": report::solution_to_value(&full),
    })
}

fn run_catalog(cmd: CatalogCommand) -> Result<ExitCode, String> {
    match cmd {
        CatalogCommand::List { json: as_json } => {
            let value = json!({
                "entries": catalog::entries().iter().map(|e| json!({
                    "name": e.name,
                    "family": e.family,
                    "parameters": e.parameters,
                })).collect::<Vec<_>>(),
            });
            if as_json {
                print_out(&report::to_pretty_string(&value));
            } else {
                let mut out = String::new();
                for e in catalog::entries() {
                    let params = if e.parameters.is_empty() {
                        String::new()
                    } else {
                        format!("({})", e.parameters.join(","))
                    };
                    out.push_str(&format!("{}{params}  [{}]\n", e.name, e.family));
                }
                print_out(&out);
            }
            Ok(ExitCode::SUCCESS)
        }
        CatalogCommand::Show {
            name,
            params,
            common,
        } => {
            let value = dispatch_field(&common, |ctx| match ctx {
                FieldCtxOf::Rational(ctx) => show_value::<Rational>(&ctx, &name, &params),
                FieldCtxOf::Prime(ctx) => show_value::<Fp>(&ctx, &name, &params),
            })??;
            emit(&value, common.json, human_show);
            Ok(ExitCode::SUCCESS)
        }
        CatalogCommand::Get {
            name,
            params,
            out,
            common,
        } => {
            let value = dispatch_field(&common, |ctx| match ctx {
                FieldCtxOf::Rational(ctx) => get_value::<Rational>(&ctx, &name, &params),
                FieldCtxOf::Prime(ctx) => get_value::<Fp>(&ctx, &name, &params),
            })??;
            let text = report::to_pretty_string(&value);
            match out {
                Some(path) => std::fs::write(&path, text)
                    .map_err(|e| format!("cannot write {}: {e}", path.display()))?,
                None => print_out(&text),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// Runtime field dispatch for commands that build algebras from scratch.
enum FieldCtxOf {
    Rational(()),
    Prime(FpCtx),
}

fn dispatch_field<T>(common: &CommonFlags, f: impl FnOnce(FieldCtxOf) -> T) -> Result<T, String> {
    let spec = match &common.field {
        None => FieldSpec::Rational,
        Some(text) => FieldSpec::parse(text, common.allow_char2).map_err(|e| e.to_string())?,
    };
    Ok(match spec {
        FieldSpec::Rational => f(FieldCtxOf::Rational(())),
        FieldSpec::Prime(_) => f(FieldCtxOf::Prime(
            FpCtx::new(spec).map_err(|e| e.to_string())?,
        )),
    })
}

fn typed_params<K: Field>(ctx: &K::Ctx, params: &[(String, String)]) -> Result<Params<K>, String> {
    let mut out: Params<K> = BTreeMap::new();
    for (k, v) in params {
        let scalar = K::parse(ctx, v).map_err(|e| e.to_string())?;
        out.insert(k.clone(), scalar);
    }
    Ok(out)
}

fn show_value<K: Field>(
    ctx: &K::Ctx,
    name: &str,
    params: &[(String, String)],
) -> Result<Value, String> {
    let entry = catalog::find(name).map_err(|e| e.to_string())?;
    let params = typed_params::<K>(ctx, params)?;
    let alg = catalog::get::<K>(ctx, name, &params).map_err(|e| e.to_string())?;
    let expected = catalog::expected::<K>(name, &params).map_err(|e| e.to_string())?;
    Ok(json!({
        "name": entry.name,
        "family": entry.family,
        "parameters": entry.parameters,
        "algebra": json::algebra_to_value(&alg),
        "expected": {
            "weak_dim": expected.weak_dim,
            "full_dim": expected.full_dim,
            "associative": expected.associative,
            "zeropotent": expected.zeropotent,
            "unital": expected.unital,
        },
    }))
}

fn get_value<K: Field>(
    ctx: &K::Ctx,
    name: &str,
    params: &[(String, String)],
) -> Result<Value, String> {
    let params = typed_params::<K>(ctx, params)?;
    let alg = catalog::get::<K>(ctx, name, &params).map_err(|e| e.to_string())?;
    Ok(json::algebra_to_value(&alg))
}

fn run_verify(
    entry: Option<String>,
    params: Vec<(String, String)>,
    common: CommonFlags,
) -> Result<ExitCode, String> {
    let spec = match &common.field {
        None => FieldSpec::Rational,
        Some(text) => FieldSpec::parse(text, common.allow_char2).map_err(|e| e.to_string())?,
    };

    let reports = match spec {
        FieldSpec::Rational => verify_over::<Rational>(&(), &entry, &params)?,
        FieldSpec::Prime(_) => {
            let ctx = FpCtx::new(spec).map_err(|e| e.to_string())?;
            verify_over::<Fp>(&ctx, &entry, &params)?
        }
    };

    let all_passed = reports.iter().all(|r| r.passed());
    let value = json!({
        "field": spec.to_string(),
        "all_passed": all_passed,
        "entries": reports.iter().map(report::entry_report_to_value).collect::<Vec<_>>(),
    });
    if common.json {
        print_out(&report::to_pretty_string(&value));
    } else {
        let mut out = String::new();
        for r in &reports {
            let status = if r.passed() { "PASS" } else { "FAIL" };
            out.push_str(&format!("{status}  {}\n", r.entry));
            for c in r.checks.iter().filter(|c| !c.passed) {
                out.push_str(&format!("      {}: {}\n", c.label, c.detail));
            }
        }
        out.push_str(&format!(
            "{} of {} entries passed\n",
            reports.iter().filter(|r| r.passed()).count(),
            reports.len()
        ));
        print_out(&out);
    }
    Ok(if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn verify_over<K: Field>(
    ctx: &K::Ctx,
    entry: &Option<String>,
    params: &[(String, String)],
) -> Result<Vec<catalog::EntryReport>, String> {
    match entry {
        Some(name) => {
            let typed = typed_params::<K>(ctx, params)?;
            Ok(vec![
                catalog::verify_entry::<K>(ctx, name, &typed).map_err(|e| e.to_string())?
            ])
        }
        None => catalog::default_verification_set()
            .into_iter()
            .map(|(name, assignments)| {
                let typed = catalog::int_params::<K>(ctx, &assignments);
                catalog::verify_entry::<K>(ctx, &name, &typed).map_err(|e| e.to_string())
            })
            .collect(),
    }
}

fn run_oracle(
    input: PathBuf,
    p: u64,
    setmaps: bool,
    max_enum: u128,
    common: CommonFlags,
) -> Result<ExitCode, String> {
    let spec = if common.allow_char2 {
        FieldSpec::prime_allowing_char2(p)
    } else {
        FieldSpec::prime(p)
    }
    .map_err(|e| e.to_string())?;
    let parsed = load_algebra(&input, &common)?;
    let alg = match json::retarget(&parsed, spec) {
        Ok(AnyAlgebra::Prime(a)) => a,
        Ok(AnyAlgebra::Rational(_)) => unreachable!("retargeted to a prime spec"),
        Err(e) => return Err(e.to_string()),
    };
    let config = OracleConfig {
        p,
        mode: if setmaps {
            OracleMode::SetMaps
        } else {
            OracleMode::LinearOnly
        },
        max_enumeration: max_enum,
    };
    let outcome = oracle::run(&alg, &config).map_err(|e| e.to_string())?;
    let value = report::oracle_to_value(&outcome);
    if common.json {
        print_out(&report::to_pretty_string(&value));
    } else {
        print_out(&format!(
            "p = {p}, mode = {}: weak {} (predicted {}), full {} (predicted {}) => {}\n",
            outcome.mode.as_str(),
            outcome.weak_count,
            outcome.weak_predicted,
            outcome.full_count,
            outcome.full_predicted,
            if outcome.matches() {
                "match"
            } else {
                "MISMATCH"
            }
        ));
    }
    Ok(if outcome.matches() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

/// Prints without panicking when the read end of the pipe is closed.
fn print_out(text: &str) {
    use std::io::Write;
    let _ = std::io::stdout().write_all(text.as_bytes());
}

fn emit(value: &Value, as_json: bool, human: impl Fn(&Value) -> String) {
    if as_json {
        print_out(&report::to_pretty_string(value));
    } else {
        print_out(&human(value));
    }
}

fn human_show(value: &Value) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{} [{}]\ntable:\n",
        value["name"].as_str().unwrap_or("?"),
        value["family"].as_str().unwrap_or("?")
    ));
    out.push_str(&human_table(&value["algebra"]));
    out.push_str(&format!(
        "expected dims: weak {}, full {}\n",
        value["expected"]["weak_dim"], value["expected"]["full_dim"]
    ));
    out.push_str(&format!(
        "flags: associative {}, zeropotent {}, unital {}\n",
        value["expected"]["associative"],
        value["expected"]["zeropotent"],
        value["expected"]["unital"]
    ));
    out
}

fn human_table(algebra: &Value) -> String {
    let mut out = String::new();
    let basis: Vec<String> = algebra["basis"]
        .as_array()
        .map(|a| {
            a.iter()
                .map(|v| v.as_str().unwrap_or("?").to_owned())
                .collect()
        })
        .unwrap_or_default();
    let Some(rows) = algebra["table"].as_array() else {
        return out;
    };
    for (i, row) in rows.iter().enumerate() {
        let Some(cells) = row.as_array() else {
            continue;
        };
        for (j, cell) in cells.iter().enumerate() {
            let coords: Vec<String> = cell
                .as_array()
                .map(|a| {
                    a.iter()
                        .map(|v| v.as_str().unwrap_or("0").to_owned())
                        .collect()
                })
                .unwrap_or_default();
            if coords.iter().all(|c| c == "0" || c.starts_with("0 mod")) {
                continue;
            }
            let term: Vec<String> = coords
                .iter()
                .zip(&basis)
                .filter(|(c, _)| c.as_str() != "0" && !c.starts_with("0 mod"))
                .map(|(c, b)| {
                    if c == "1" || c.starts_with("1 mod") {
                        b.clone()
                    } else {
                        format!("({c})*{b}")
                    }
                })
                .collect();
            out.push_str(&format!(
                "  {} {} = {}\n",
                basis.get(i).cloned().unwrap_or_default(),
                basis.get(j).cloned().unwrap_or_default(),
                term.join(" + ")
            ));
        }
    }
    out
}

fn human_general(label: &str, solution: &Value) -> String {
    let mut out = format!(
        "{label}: dim {}\n",
        solution["dimension"].as_u64().unwrap_or(0)
    );
    if let Some(rows) = solution["general_matrix"].as_array() {
        for row in rows {
            let cells: Vec<String> = row
                .as_array()
                .map(|a| {
                    a.iter()
                        .map(|v| v.as_str().unwrap_or("?").to_owned())
                        .collect()
                })
                .unwrap_or_default();
            out.push_str(&format!("    [{}]\n", cells.join(", ")));
        }
    }
    out
}

fn human_solve(value: &Value) -> String {
    let mut out = format!(
        "algebra over {} of dimension {}\n",
        value["field"].as_str().unwrap_or("?"),
        value["dim"]
    );
    out.push_str(&human_general("weak multipliers", &value["weak"]));
    out.push_str(&human_general("multipliers", &value["full"]));
    out
}

fn human_analysis(value: &Value) -> String {
    let alg = &value["algebra"];
    let mut out = format!(
        "algebra over {} of dimension {}\n",
        alg["field"].as_str().unwrap_or("?"),
        alg["dim"]
    );
    out.push_str(&human_table(alg));
    out.push_str(&format!(
        "flags: associative {}, zeropotent {}, commutative {}\n",
        value["flags"]["associative"], value["flags"]["zeropotent"], value["flags"]["commutative"]
    ));
    for (label, key) in [("left identity", "left"), ("right identity", "right")] {
        if !value["identities"][key].is_null() {
            out.push_str(&format!("{label}: {}\n", value["identities"][key]));
        }
    }
    out.push_str(&format!(
        "annihilators: left dim {}, right dim {}, two-sided dim {}\n",
        value["annihilators"]["left"]["dim"],
        value["annihilators"]["right"]["dim"],
        value["annihilators"]["two_sided"]["dim"]
    ));
    if !value["structural"].is_null() {
        out.push_str(&format!(
            "structural matrix rank: {}\n",
            value["structural"]["rank"]
        ));
    }
    out.push_str(&format!(
        "nihil decomposition: dim A0 = {}, A1 subalgebra: {}\n",
        value["nihil"]["a0"]["dim"], value["nihil"]["a1_is_subalgebra"]
    ));
    out.push_str(&human_general(
        "weak multipliers",
        &value["multipliers"]["weak"],
    ));
    out.push_str(&human_general("multipliers", &value["multipliers"]["full"]));
    out.push_str(&human_general(
        "weak multipliers restricted to A1",
        &value["multipliers"]["weak_restricted"],
    ));
    out
}
