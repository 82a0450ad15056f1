//! Command-line front end: component enumeration and classification reports,
//! seeded monad verification runs, and cohomology tables, in JSON or markdown.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or precondition
//! error. Identical invocations (including seeds) produce byte-identical
//! output.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use einmoduli::cohomology::{
    chi_twist, cohomology_table, h1_closed_form, h_all, stability_check, CohomologyRecord,
};
use einmoduli::moduli::{component_record, components_markdown, component_table, ComponentRecord};
use einmoduli::monad::{random_monad, EinParams, MonadDescriptor, DEFAULT_MAX_RETRIES};
use einmoduli::{seed, Error, PrimeField};

#[derive(Parser)]
#[command(
    name = "einmoduli",
    version,
    about = "Enumerate Ein moduli components of M(e, n) and verify monad cohomology over a prime field"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Table of all Ein components of M(e, n) for n up to a bound
    Enumerate(EnumerateArgs),
    /// Invariants and rationality status of a single component N(e, a, b, c)
    Classify(ClassifyArgs),
    /// Build seeded random monads and verify their cohomology identities
    VerifyMonad(VerifyArgs),
    /// Cohomology table h^i(E(m)) for one seeded monad
    CohomologyTable(TableArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Markdown,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format
    #[arg(long, value_enum, default_value = "markdown")]
    format: Format,
    /// Write to a file instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct EnumerateArgs {
    /// First Chern class, 0 or -1
    #[arg(long, allow_negative_numbers = true)]
    e: i64,
    /// Largest second Chern class to list
    #[arg(long = "n-max")]
    n_max: i64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct ParamArgs {
    /// First Chern class, 0 or -1
    #[arg(long, allow_negative_numbers = true)]
    e: i64,
    #[arg(long)]
    a: i64,
    #[arg(long)]
    b: i64,
    #[arg(long)]
    c: i64,
}

#[derive(Args)]
struct ClassifyArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Prime modulus (must exceed 4c)
    #[arg(long, env = "EIN_PRIME", default_value_t = PrimeField::DEFAULT_PRIME)]
    prime: u64,
    /// Master seed; trial i runs on the derived stream mix(seed, i)
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of independent trials; the verdict is the majority
    #[arg(long, default_value_t = 3)]
    trials: u32,
    /// Retry budget per trial for the random monad search
    #[arg(long, default_value_t = DEFAULT_MAX_RETRIES)]
    max_retries: u32,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct TableArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Prime modulus (must exceed 4c)
    #[arg(long, env = "EIN_PRIME", default_value_t = PrimeField::DEFAULT_PRIME)]
    prime: u64,
    /// Seed for the monad draw
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Smallest twist (default -c-4)
    #[arg(long = "m-min", allow_negative_numbers = true)]
    m_min: Option<i64>,
    /// Largest twist (default c)
    #[arg(long = "m-max", allow_negative_numbers = true)]
    m_max: Option<i64>,
    #[command(flatten)]
    out: OutputArgs,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Enumerate(args) => cmd_enumerate(args),
        Command::Classify(args) => cmd_classify(args),
        Command::VerifyMonad(args) => cmd_verify_monad(args),
        Command::CohomologyTable(args) => cmd_cohomology_table(args),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn emit(out: &OutputArgs, text: &str) -> Result<(), Error> {
    match &out.output {
        None => {
            print!("{text}");
            std::io::stdout().flush().ok();
        }
        Some(path) => std::fs::write(path, text).map_err(|err| {
            Error::InvalidParams(format!("cannot write {}: {err}", path.display()))
        })?,
    }
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializable report");
    text.push('\n');
    text
}

// ---------------------------------------------------------------------------
// enumerate
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct EnumerateReport {
    e: i64,
    n_max: i64,
    rows: Vec<EnumerateRow>,
}

#[derive(Serialize)]
struct EnumerateRow {
    n: i64,
    components: Vec<ComponentRecord>,
}

fn cmd_enumerate(args: EnumerateArgs) -> Result<ExitCode, Error> {
    let table = component_table(args.e, args.n_max)?;
    let text = match args.out.format {
        Format::Markdown => components_markdown(args.e, &table),
        Format::Json => to_json(&EnumerateReport {
            e: args.e,
            n_max: args.n_max,
            rows: table
                .into_iter()
                .map(|(n, components)| EnumerateRow { n, components })
                .collect(),
        }),
    };
    emit(&args.out, &text)?;
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------------
// classify
// ---------------------------------------------------------------------------

fn cmd_classify(args: ClassifyArgs) -> Result<ExitCode, Error> {
    let p = &args.params;
    let record = component_record(p.e, p.a, p.b, p.c)?;
    let text = match args.out.format {
        Format::Json => to_json(&record),
        Format::Markdown => {
            let inv = &record.invariants;
            format!(
                "N({}, {}, {}, {}): component of M({}, {}), dimension {}, {}\n\n\
                 | invariant | value |\n|:----------|------:|\n\
                 | t | {} |\n| delta | {} |\n| m | {} |\n| tau | {} |\n\
                 | dim R | {} |\n| dim Ext1 | {} |\n| dim T | {} |\n\
                 | rk A | {} |\n| dim U | {} |\n",
                record.e,
                record.a,
                record.b,
                record.c,
                record.e,
                record.n,
                record.dim,
                record.status.label(),
                inv.t,
                inv.delta,
                inv.m,
                inv.tau,
                inv.dim_r,
                inv.dim_ext1,
                inv.dim_t,
                inv.rk_a,
                inv.dim_u,
            )
        }
    };
    emit(&args.out, &text)?;
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------------
// verify-monad
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct VerifyReport {
    e: i64,
    a: i64,
    b: i64,
    c: i64,
    n: i64,
    prime: u64,
    seed: u64,
    trials: Vec<TrialReport>,
    majority_pass: bool,
    notes: Vec<String>,
}

#[derive(Serialize)]
struct TrialReport {
    trial: u32,
    trial_seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    retries: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    generation_error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    checks: Option<TrialChecks>,
    #[serde(skip_serializing_if = "Option::is_none")]
    monad: Option<MonadDescriptor>,
    pass: bool,
}

#[derive(Serialize)]
struct TrialChecks {
    h1_at_minus_c: bool,
    h1_closed_form: bool,
    stability: bool,
    chi_identity: bool,
}

fn run_trial(
    params: EinParams,
    ctx: PrimeField,
    trial: u32,
    master_seed: u64,
    max_retries: u32,
) -> TrialReport {
    let trial_seed = seed::mix(master_seed, trial as u64);
    let (monad, retries) = match random_monad(params, ctx, trial_seed, max_retries) {
        Ok(pair) => pair,
        Err(err) => {
            return TrialReport {
                trial,
                trial_seed,
                retries: None,
                generation_error: Some(err.to_string()),
                checks: None,
                monad: None,
                pass: false,
            }
        }
    };
    let c = params.c();
    let h1_at_minus_c = h_all(&monad, -c).map(|r| r.h1 == 1).unwrap_or(false);
    let h1_closed = (-c..=-1).all(|m| match (h_all(&monad, m), h1_closed_form(params, m)) {
        (Ok(rec), Ok(want)) => rec.h1 as i64 == want,
        _ => false,
    });
    let stability = stability_check(&monad, -3).unwrap_or(false);
    let chi_identity = (-c - 4..=c).all(|m| match h_all(&monad, m) {
        Ok(rec) => {
            rec.chi == chi_twist(params, m)
                && rec.chi == rec.h0 as i64 - rec.h1 as i64 + rec.h2 as i64 - rec.h3 as i64
        }
        Err(_) => false,
    });
    let pass = h1_at_minus_c && h1_closed && stability && chi_identity;
    TrialReport {
        trial,
        trial_seed,
        retries: Some(retries),
        generation_error: None,
        checks: Some(TrialChecks {
            h1_at_minus_c,
            h1_closed_form: h1_closed,
            stability,
            chi_identity,
        }),
        monad: Some(MonadDescriptor::new(&monad, trial_seed)),
        pass,
    }
}

fn ab_equal_note(params: EinParams) -> Option<String> {
    (params.a() == params.b() && params.b() > 0).then(|| {
        format!(
            "a = b = {}: h1(E(-b)) follows the general closed form \
             h0(O(c-b)) - h0(O(a-b)) - 1, one less than the b-specific formula",
            params.b()
        )
    })
}

fn cmd_verify_monad(args: VerifyArgs) -> Result<ExitCode, Error> {
    let p = &args.params;
    let params = EinParams::new(p.e, p.a, p.b, p.c)?;
    let ctx = PrimeField::new(args.prime)?;
    if ctx.modulus() <= (4 * params.c()) as u64 {
        return Err(Error::PrimeTooSmall {
            p: ctx.modulus(),
            bound: 4 * params.c(),
        });
    }
    let trials: Vec<TrialReport> = (0..args.trials)
        .map(|t| run_trial(params, ctx, t, args.seed, args.max_retries))
        .collect();
    let passes = trials.iter().filter(|t| t.pass).count();
    let majority_pass = 2 * passes > args.trials as usize;
    let mut notes = Vec::new();
    if let Some(note) = ab_equal_note(params) {
        notes.push(note);
    }
    let report = VerifyReport {
        e: p.e,
        a: p.a,
        b: p.b,
        c: p.c,
        n: params.n(),
        prime: args.prime,
        seed: args.seed,
        trials,
        majority_pass,
        notes,
    };
    let text = match args.out.format {
        Format::Json => to_json(&report),
        Format::Markdown => verify_markdown(&report),
    };
    emit(&args.out, &text)?;
    Ok(if majority_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn verify_markdown(report: &VerifyReport) -> String {
    let mut out = format!(
        "Monad verification for N({}, {}, {}, {}) in M({}, {}), p = {}, seed = {}\n\n\
         | trial | retries | h1(E(-c)) = 1 | h1 closed form | stability | chi identity | verdict |\n\
         |------:|--------:|:-------------:|:--------------:|:---------:|:------------:|:--------|\n",
        report.e, report.a, report.b, report.c, report.e, report.n, report.prime, report.seed
    );
    let mark = |b: bool| if b { "yes" } else { "NO" };
    for t in &report.trials {
        match (&t.checks, &t.generation_error) {
            (Some(c), _) => out.push_str(&format!(
                "| {} | {} | {} | {} | {} | {} | {} |\n",
                t.trial,
                t.retries.unwrap_or(0),
                mark(c.h1_at_minus_c),
                mark(c.h1_closed_form),
                mark(c.stability),
                mark(c.chi_identity),
                if t.pass { "pass" } else { "fail" },
            )),
            (None, Some(err)) => out.push_str(&format!(
                "| {} | — | — | — | — | — | fail ({err}) |\n",
                t.trial
            )),
            (None, None) => {}
        }
    }
    out.push_str(&format!(
        "\nmajority verdict: {}\n",
        if report.majority_pass { "PASS" } else { "FAIL" }
    ));
    for note in &report.notes {
        out.push_str(&format!("note: {note}\n"));
    }
    out
}

// ---------------------------------------------------------------------------
// cohomology-table
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct TableReport {
    e: i64,
    a: i64,
    b: i64,
    c: i64,
    prime: u64,
    seed: u64,
    retries: u32,
    records: Vec<CohomologyRecord>,
    notes: Vec<String>,
}

fn cmd_cohomology_table(args: TableArgs) -> Result<ExitCode, Error> {
    let p = &args.params;
    let params = EinParams::new(p.e, p.a, p.b, p.c)?;
    let ctx = PrimeField::new(args.prime)?;
    if ctx.modulus() <= (4 * params.c()) as u64 {
        return Err(Error::PrimeTooSmall {
            p: ctx.modulus(),
            bound: 4 * params.c(),
        });
    }
    let m_min = args.m_min.unwrap_or(-params.c() - 4);
    let m_max = args.m_max.unwrap_or(params.c());
    let (monad, retries) = random_monad(params, ctx, args.seed, DEFAULT_MAX_RETRIES)?;
    let records = cohomology_table(&monad, m_min, m_max)?;
    let mut notes = Vec::new();
    if let Some(note) = ab_equal_note(params) {
        notes.push(note);
    }
    let report = TableReport {
        e: p.e,
        a: p.a,
        b: p.b,
        c: p.c,
        prime: args.prime,
        seed: args.seed,
        retries,
        records,
        notes,
    };
    let text = match args.out.format {
        Format::Json => to_json(&report),
        Format::Markdown => table_markdown(&report),
    };
    emit(&args.out, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn table_markdown(report: &TableReport) -> String {
    let mut out = format!(
        "Cohomology of E(m) for N({}, {}, {}, {}), p = {}, seed = {}\n\n\
         |   m |  h0 |  h1 |  h2 |  h3 |  chi |\n\
         |----:|----:|----:|----:|----:|-----:|\n",
        report.e, report.a, report.b, report.c, report.prime, report.seed
    );
    for r in &report.records {
        out.push_str(&format!(
            "| {:>3} | {:>3} | {:>3} | {:>3} | {:>3} | {:>4} |\n",
            r.m, r.h0, r.h1, r.h2, r.h3, r.chi
        ));
    }
    for note in &report.notes {
        out.push_str(&format!("\nnote: {note}\n"));
    }
    out
}
