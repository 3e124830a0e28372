use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use steinberg_core::spectral::{self, FiniteGroupTable, GeneratorSet, GroupFamily};
use steinberg_core::verify::{run_commutators, run_verify, Suite, VerifyConfig};
use steinberg_core::{builtin, Algebra, AlgebraSpec, Automorphism, Error, HermSpace, Status, Tkk, BUILTIN_NAMES};
use steinberg_core::{A2Group, C3Group, Pe3, RootGroup, ScalarMode, Weight};

const SEED_VAR: &str = "STEINBERG_LAB_SEED";

#[derive(Parser)]
#[command(name = "steinberg-lab", version, about = "Exact checks for Jordan pairs, TKK algebras and their root-graded groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification suites.
    Verify(VerifyArgs),
    /// Print the U-operator and triple product on basis elements.
    Table(TableArgs),
    /// Evaluate every commutator relation and print hashes of both sides.
    Commutators(CommutatorArgs),
    /// Print the TKK algebra: dimensions, root spaces and brackets.
    DumpTkk(DumpArgs),
    /// Enumerate a finite group and estimate its spectral gap.
    Spectral(SpectralArgs),
}

#[derive(Args)]
struct Source {
    /// Builtin name or path to a JSON algebra description.
    #[arg(long, default_value = "octonions")]
    algebra: String,
    /// Use integers mod m instead of rationals.
    #[arg(long = "mod", value_name = "M")]
    modulus: Option<u64>,
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write to this file instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Human,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    source: Source,
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value_t = 20)]
    trials: usize,
    /// Draws per root pair in the group grading sweep.
    #[arg(long, default_value_t = 1)]
    grading_trials: usize,
    /// Run only these suites (repeatable).
    #[arg(long = "suite", value_name = "NAME")]
    suites: Vec<String>,
    /// Bound on the strongness word search.
    #[arg(long, default_value_t = 20_000)]
    strong_cap: usize,
    /// Bound on the spectral suite's group enumeration.
    #[arg(long, default_value_t = 20_000)]
    cap: usize,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
}

#[derive(Args)]
struct TableArgs {
    #[command(flatten)]
    source: Source,
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct CommutatorArgs {
    #[command(flatten)]
    source: Source,
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value_t = 5)]
    trials: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct DumpArgs {
    #[command(flatten)]
    source: Source,
    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    A2,
    C3,
}

#[derive(Args)]
struct SpectralArgs {
    #[arg(long, default_value = "trivial")]
    algebra: String,
    #[arg(long = "mod", value_name = "M", default_value_t = 2)]
    modulus: u64,
    #[arg(long, value_enum, default_value_t = FamilyArg::A2)]
    family: FamilyArg,
    /// `unit`, `basis`, or a JSON file listing `{"root": ..., "param": [...]}`.
    #[arg(long, default_value = "unit")]
    generators: String,
    #[arg(long, default_value_t = spectral::DEFAULT_CAP)]
    cap: usize,
    /// Also probe these moduli with both builtin generator sets.
    #[arg(long, value_delimiter = ',')]
    sweep: Vec<u64>,
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

/// Failure with its exit code.
struct Exit(u8, anyhow::Error);

fn code_of(e: &Error) -> u8 {
    match e {
        Error::CapExceeded { .. } => 2,
        Error::Config(_) | Error::Unknown { .. } | Error::NotAField(_) => 3,
        _ => 1,
    }
}

impl From<Error> for Exit {
    fn from(e: Error) -> Self {
        Exit(code_of(&e), e.into())
    }
}

fn config(msg: impl Into<String>) -> Exit {
    Exit(3, anyhow::anyhow!(msg.into()))
}

fn io(e: anyhow::Error) -> Exit {
    Exit(1, e)
}

fn seed(flag: u64) -> Result<u64, Exit> {
    match std::env::var(SEED_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| config(format!("{SEED_VAR} is not an unsigned integer: `{v}`"))),
        Err(_) => Ok(flag),
    }
}

fn mode_of(modulus: Option<u64>) -> Result<ScalarMode, Exit> {
    match modulus {
        None => Ok(ScalarMode::Rational),
        Some(m) if m >= 2 => Ok(ScalarMode::Modular(m)),
        Some(m) => Err(config(format!("modulus must be at least 2, got {m}"))),
    }
}

fn load(src: &Source) -> Result<Algebra, Exit> {
    let mode = mode_of(src.modulus)?;
    if BUILTIN_NAMES.contains(&src.algebra.as_str()) {
        return Ok(builtin(&src.algebra, mode)?);
    }
    let path = PathBuf::from(&src.algebra);
    if !path.exists() {
        return Err(config(format!("`{}` is neither a builtin ({}) nor a file", src.algebra, BUILTIN_NAMES.join(", "))));
    }
    let text = std::fs::read_to_string(&path).with_context(|| format!("reading {}", path.display())).map_err(|e| Exit(3, e))?;
    let spec = AlgebraSpec::from_json(&text).map_err(|e| Exit(1, anyhow::anyhow!("cannot load {}: {e}", path.display())))?;
    if src.modulus.is_some() && spec.mode() != mode {
        return Err(config(format!("{} declares scalars {}, but --mod asks for {mode}", path.display(), spec.mode())));
    }
    Ok(std::sync::Arc::new(spec))
}

fn emit(common: &Common, text: &str) -> Result<(), Exit> {
    match &common.output {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())).map_err(io),
        None => {
            let mut out = std::io::stdout().lock();
            match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(io(anyhow::Error::new(e).context("writing stdout"))),
                _ => Ok(()),
            }
        }
    }
}

fn pretty(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn verify(a: VerifyArgs) -> Result<u8, Exit> {
    let alg = load(&a.source)?;
    let suites = a.suites.iter().map(|s| s.parse::<Suite>()).collect::<Result<Vec<_>, _>>()?;
    let cfg = VerifyConfig {
        seed: seed(a.common.seed)?,
        trials: a.trials,
        grading_trials: a.grading_trials,
        suites,
        strong_cap: a.strong_cap,
        spectral_cap: a.cap,
    };
    let (report, timings) = run_verify(&alg, &cfg)?;
    let text = match a.format {
        Format::Json => pretty(&report),
        Format::Human => {
            let mut s = format!("{} over {}, seed {}, {} trials; {}\n", report.algebra, report.scalars, report.seed, report.trials, report.convention);
            for suite in &report.suites {
                s.push_str(&format!("[{}]\n", suite.suite));
                for c in &suite.checks {
                    let status = format!("{:?}", c.status).to_uppercase();
                    s.push_str(&format!("  {status:<12} {}: {}", c.id, c.anchor));
                    if let Some(n) = &c.note {
                        s.push_str(&format!(" ({n})"));
                    }
                    s.push('\n');
                    if c.status != Status::Pass {
                        if let Some(w) = &c.witness {
                            s.push_str(&format!("               witness {w}\n"));
                        }
                    }
                }
            }
            s
        }
        Format::Csv => return Err(config("verify writes json or human")),
    };
    emit(&a.common, &text)?;
    let mut err = std::io::stderr().lock();
    for (suite, t) in &timings {
        let _ = writeln!(err, "timing {suite}: {:.3}s", t.as_secs_f64());
    }
    Ok(if report.failed() {
        1
    } else if report.capped() {
        2
    } else {
        0
    })
}

fn table(a: TableArgs) -> Result<u8, Exit> {
    let alg = load(&a.source)?;
    let h = HermSpace::new(&alg)?;
    let labels = h.labels();
    let dense = |v: &steinberg_core::SparseVec| {
        let mut out = h.zero_coords();
        for (k, s) in v.iter() {
            out[*k] = s.clone();
        }
        h.format_coords(&out)
    };
    let mut rows: Vec<[String; 5]> = Vec::new();
    for x in 0..h.dim() {
        for y in 0..h.dim() {
            let u = h.u_basis(x, y);
            if !u.is_zero() {
                rows.push(["U".into(), labels[x].clone(), labels[y].clone(), String::new(), dense(u)]);
            }
            for (z, v) in h.triple_basis_row(x, y) {
                rows.push(["T".into(), labels[x].clone(), labels[y].clone(), labels[*z].clone(), dense(v)]);
            }
        }
    }
    let text = match a.format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let fail = |e: csv::Error| io(e.into());
            w.write_record(["product", "x", "y", "z", "value"]).map_err(fail)?;
            for r in &rows {
                w.write_record(r).map_err(fail)?;
            }
            String::from_utf8(w.into_inner().map_err(|e| io(anyhow::anyhow!("{e}")))?).expect("utf-8")
        }
        Format::Json => pretty(
            &rows.iter().map(|r| json!({ "product": r[0], "x": r[1], "y": r[2], "z": r[3], "value": r[4] })).collect::<Vec<Value>>(),
        ),
        Format::Human => return Err(config("table writes csv or json")),
    };
    emit(&a.common, &text)?;
    Ok(0)
}

fn commutators(a: CommutatorArgs) -> Result<u8, Exit> {
    let alg = load(&a.source)?;
    let dump = run_commutators(&alg, seed(a.common.seed)?, a.trials)?;
    let text = match a.format {
        Format::Json => pretty(&dump),
        Format::Human => {
            let mut s = format!("{}\n", dump.convention);
            for r in &dump.records {
                s.push_str(&format!("{:<14} {} {} {}\n", r.relation, r.indices, if r.equal { "equal" } else { "DIFFERENT" }, &r.lhs_hash[..16]));
            }
            s
        }
        Format::Csv => return Err(config("commutators writes json or human")),
    };
    emit(&a.common, &text)?;
    Ok(0)
}

fn dump_tkk(a: DumpArgs) -> Result<u8, Exit> {
    let alg = load(&a.source)?;
    let k = Tkk::new(&HermSpace::new(&alg)?)?;
    emit(&a.common, &pretty(&k.to_json()))?;
    Ok(0)
}

fn generators_from_file(alg: &Algebra, family: GroupFamily, path: &str) -> Result<Vec<(String, Automorphism)>, Exit> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {path}")).map_err(|e| Exit(3, e))?;
    let items: Vec<Value> = serde_json::from_str(&text).map_err(|e| config(format!("{path}: {e}")))?;
    let group: Box<dyn RootGroup> = match family {
        GroupFamily::A2 => Box::new(A2Group::new(&Pe3::new(alg)?)),
        GroupFamily::C3 => Box::new(C3Group::new(&Tkk::new(&HermSpace::new(alg)?)?)),
    };
    let mut out = Vec::new();
    for item in items {
        let bad = || config(format!("{path}: each generator needs `root` and `param`: {item}"));
        let root: Weight = item["root"].as_str().ok_or_else(bad)?.parse()?;
        let param = item["param"]
            .as_array()
            .ok_or_else(bad)?
            .iter()
            .map(|v| match v {
                Value::String(s) => alg.mode().parse(s),
                Value::Number(n) => n.as_i64().map(|n| alg.mode().from_i64(n)).ok_or_else(|| Error::Config(format!("bad scalar {n}"))),
                other => Err(Error::Config(format!("bad scalar {other}"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let g = group.root_element(root, &param).map_err(|e| config(format!("{path}: generator {item}: {e}")))?;
        out.push((format!("G_{root}({})", param.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" ")), g));
    }
    Ok(out)
}

fn spectral_cmd(a: SpectralArgs) -> Result<u8, Exit> {
    let family = match a.family {
        FamilyArg::A2 => GroupFamily::A2,
        FamilyArg::C3 => GroupFamily::C3,
    };
    let mode = mode_of(Some(a.modulus))?;
    if !BUILTIN_NAMES.contains(&a.algebra.as_str()) {
        return Err(config(format!("spectral needs a builtin algebra, got `{}`", a.algebra)));
    }
    let alg = builtin(&a.algebra, mode)?;
    let gens = match a.generators.as_str() {
        "unit" | "default" => spectral::family_generators(&alg, family, GeneratorSet::Unit)?,
        "basis" => spectral::family_generators(&alg, family, GeneratorSet::Basis)?,
        path => generators_from_file(&alg, family, path)?,
    };
    let label = if a.generators == "default" { "unit" } else { a.generators.as_str() };
    let seed = seed(a.common.seed)?;
    let table = FiniteGroupTable::enumerate(&gens, a.cap)?;
    let mut report = spectral::spectral_gap(&table, seed);
    report.family = family.name().into();
    report.algebra = alg.name().into();
    report.modulus = a.modulus;
    report.generators = label.into();
    let sweep = (!a.sweep.is_empty()).then(|| spectral::generator_sweep(&a.algebra, family, &a.sweep, a.cap, seed));
    let text = match a.format {
        Format::Json => match &sweep {
            None => pretty(&report),
            Some(rows) => pretty(&json!({ "report": report, "sweep": rows })),
        },
        Format::Human => {
            let f = |x: Option<f64>| x.map_or("none".to_string(), |v| format!("{v:.12}"));
            let mut s = format!(
                "{}: {} over {} mod {}, {} generators\n  order {}\n  lambda {}\n  gap {}\n  residual {} after {} iterations\n",
                report.label, report.family, report.algebra, report.modulus, report.generators, report.order,
                f(report.lambda), f(report.gap), f(report.residual), report.iterations
            );
            if let Some(o) = &report.oracle {
                s.push_str(&format!("  dense oracle {:.12} ({})\n", o.lambda, if o.agrees { "agrees" } else { "DISAGREES" }));
            }
            if let Some(flag) = &report.flag {
                s.push_str(&format!("  flag {flag}\n"));
            }
            for row in sweep.iter().flatten() {
                match (&row.report, &row.error) {
                    (Some(r), _) => s.push_str(&format!("  sweep mod {} {}: order {}, gap {}\n", row.modulus, row.generators, r.order, f(r.gap))),
                    (None, e) => s.push_str(&format!("  sweep mod {} {}: {}\n", row.modulus, row.generators, e.as_deref().unwrap_or(""))),
                }
            }
            s
        }
        Format::Csv => return Err(config("spectral writes json or human")),
    };
    emit(&a.common, &text)?;
    let ok = report.gap.is_some() && report.oracle.as_ref().is_none_or(|o| o.agrees);
    Ok(if ok { 0 } else { 1 })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Verify(a) => verify(a),
        Command::Table(a) => table(a),
        Command::Commutators(a) => commutators(a),
        Command::DumpTkk(a) => dump_tkk(a),
        Command::Spectral(a) => spectral_cmd(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Exit(code, e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(code)
        }
    }
}
