//! Command line front end: analyze, generate, and verify presentation
//! matrices from plain-text files.
//!
//! Exit codes: 0 when every evaluated claim held, 1 when a claim failed,
//! 2 for usage, parse, or out-of-scope inputs, 3 when a computation
//! budget was exhausted.

mod input;

use blowup_core::blowup::{check_gs_ideal, fitting_heights, max_gs, rees_ideal, ring_tower};
use blowup_core::field::FieldKind;
use blowup_core::report;
use blowup_core::theorem::{generate_generic, generate_instance, GenConfig};
use blowup_core::{classify, verify, VerifyOptions};
use blowup_core::{BlockRole, Budget, CaseKind, CoeffField, Error, LinearMatrix};
use clap::{Args, Parser, Subcommand};
use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "blowup",
    version,
    about = "Blow-up algebra analysis for ideals with an almost-square linear presentation"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Hypothesis checks and case classification only
    Analyze(CommonArgs),
    /// Minor ideal heights and the ladder condition table
    Gs(CommonArgs),
    /// Blow-up ideal generators and dimensions
    Rees(CommonArgs),
    /// Special fiber generators, initial degree, and analytic spread
    Fiber(CommonArgs),
    /// Jacobian dual matrix and its rank
    Dual(CommonArgs),
    /// Generate a random instance in the input file format
    Gen(GenArgs),
    /// Full verification with a structured report
    Verify(VerifyArgs),
    /// Generate and verify a batch of instances
    Batch(BatchArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Input matrix file
    file: PathBuf,
    /// Allow sizes beyond 4 variables or 7 generators
    #[arg(long)]
    force: bool,
    /// S-pair budget for basis computations
    #[arg(long, env = "BLOWUP_PAIR_CAP")]
    pair_cap: Option<usize>,
    /// Degree budget for basis computations
    #[arg(long, env = "BLOWUP_DEGREE_CAP")]
    degree_cap: Option<u32>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Seed for the specialization draws
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Cap on candidate points in the straightening search
    #[arg(long, env = "BLOWUP_POINT_CAP")]
    point_cap: Option<usize>,
    /// Cap on hyperplane draws in the specialization battery
    #[arg(long, env = "BLOWUP_RETRY_CAP")]
    retry_cap: Option<usize>,
    /// Append wall-clock timings to the report
    #[arg(long)]
    timings: bool,
}

#[derive(Args)]
struct GenArgs {
    /// Number of base variables
    #[arg(long)]
    dim: usize,
    /// Number of ideal generators
    #[arg(long)]
    gens: usize,
    /// Straightening index for a drop-case instance
    #[arg(long, conflicts_with = "generic")]
    index: Option<usize>,
    /// Generate a fully generic control instance instead
    #[arg(long)]
    generic: bool,
    /// Coefficient field: a prime, or `qq`
    #[arg(long, default_value = "32003")]
    field: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Rejection sampling attempts
    #[arg(long, default_value_t = 500)]
    attempts: usize,
    /// Allow sizes beyond 4 variables or 7 generators
    #[arg(long)]
    force: bool,
}

#[derive(Args)]
struct BatchArgs {
    /// Number of base variables
    #[arg(long)]
    dim: usize,
    /// Number of ideal generators
    #[arg(long)]
    gens: usize,
    /// Straightening index for drop-case instances
    #[arg(long, conflicts_with = "generic")]
    index: Option<usize>,
    /// Generate fully generic control instances instead
    #[arg(long)]
    generic: bool,
    /// Instances to generate and verify
    #[arg(long, default_value_t = 10)]
    count: usize,
    /// Coefficient field: a prime, or `qq`
    #[arg(long, default_value = "32003")]
    field: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Rejection sampling attempts per instance
    #[arg(long, default_value_t = 500)]
    attempts: usize,
    /// Allow sizes beyond 4 variables or 7 generators
    #[arg(long)]
    force: bool,
    /// S-pair budget for basis computations
    #[arg(long, env = "BLOWUP_PAIR_CAP")]
    pair_cap: Option<usize>,
    /// Degree budget for basis computations
    #[arg(long, env = "BLOWUP_DEGREE_CAP")]
    degree_cap: Option<u32>,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Engine(Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Engine(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Engine(e)
    }
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Engine(Error::BudgetExceeded { .. }) => 3,
            CliError::Engine(_) => 2,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match &cli.cmd {
        Cmd::Analyze(args) => cmd_analyze(args),
        Cmd::Gs(args) => cmd_gs(args),
        Cmd::Rees(args) => cmd_rees(args),
        Cmd::Fiber(args) => cmd_fiber(args),
        Cmd::Dual(args) => cmd_dual(args),
        Cmd::Gen(args) => cmd_gen(args),
        Cmd::Verify(args) => cmd_verify(args),
        Cmd::Batch(args) => cmd_batch(args),
    }
}

fn check_caps(d: usize, n: usize, force: bool) -> Result<(), CliError> {
    if !force && (d > 4 || n > 7) {
        return Err(CliError::Usage(format!(
            "{d} variables with {n} generators exceeds the default caps \
             (4 variables, 7 generators); pass --force to proceed"
        )));
    }
    Ok(())
}

fn load(common: &CommonArgs) -> Result<input::InputFile, CliError> {
    let text = std::fs::read_to_string(&common.file).map_err(|e| {
        CliError::Usage(format!("cannot read {}: {e}", common.file.display()))
    })?;
    let parsed = input::parse_input(&text).map_err(CliError::Usage)?;
    let d = parsed.phi.ring().role_vars(BlockRole::Base).len();
    check_caps(d, parsed.phi.rows(), common.force)?;
    Ok(parsed)
}

fn budget(pair_cap: Option<usize>, degree_cap: Option<u32>) -> Budget {
    let mut b = Budget::default();
    if let Some(p) = pair_cap {
        b.pair_cap = p;
    }
    if let Some(dc) = degree_cap {
        b.degree_cap = dc;
    }
    b
}

fn join<T: ToString>(items: &[T]) -> String {
    items
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn case_str(case: &CaseKind) -> &'static str {
    match case {
        CaseKind::ExpectedForm => "expected-form",
        CaseKind::HeightDrop => "height-drop",
        CaseKind::Rejected(_) => "rejected",
    }
}

fn field_token(field: &CoeffField) -> String {
    match field.kind() {
        FieldKind::Rationals => "qq".to_string(),
        FieldKind::Prime(p) => p.to_string(),
    }
}

fn cmd_analyze(args: &CommonArgs) -> Result<u8, CliError> {
    let parsed = load(args)?;
    let opts = VerifyOptions {
        budget: budget(args.pair_cap, args.degree_cap),
        declared_u: parsed.declared_u,
        ..VerifyOptions::default()
    };
    let report = classify(&parsed.phi, &opts)?;
    println!("input.hash={}", report::input_fingerprint(&parsed.phi));
    println!(
        "input.field={}",
        report::field_descriptor(parsed.phi.ring().field())
    );
    println!("case={}", case_str(&report.case));
    if let CaseKind::Rejected(reason) = &report.case {
        println!("case.reason={reason}");
    }
    println!("hypothesis.spans={}", report.spans);
    if let Some(h) = report.ideal_height {
        println!("hypothesis.ideal_height={h}");
    }
    if !report.heights.is_empty() {
        println!("hypothesis.heights={}", join(&report.heights));
    }
    for (s, ok) in &report.gs_levels {
        println!("hypothesis.gs.s{s}={ok}");
    }
    if !report.gs_levels.is_empty() {
        println!("hypothesis.max_gs={}", report.max_gs);
    }
    if let Some(u) = report.u {
        println!("instance.u={u}");
    }
    Ok(if matches!(report.case, CaseKind::Rejected(_)) {
        2
    } else {
        0
    })
}

fn cmd_gs(args: &CommonArgs) -> Result<u8, CliError> {
    let parsed = load(args)?;
    let b = budget(args.pair_cap, args.degree_cap);
    let heights = fitting_heights(&parsed.phi, &b)?;
    println!("heights={}", join(&heights.heights));
    let d = parsed.phi.ring().role_vars(BlockRole::Base).len();
    for s in 1..=d {
        let rep = check_gs_ideal(&heights, s);
        println!("gs.s{s}={}", rep.satisfied);
        if rep.checks.is_empty() {
            println!("gs.s{s}.window=empty");
        }
        for c in &rep.checks {
            println!("gs.s{s}.j{}=height:{},bound:{}", c.j, c.height, c.bound);
        }
    }
    println!("max_gs={}", max_gs(&heights, 1, d));
    Ok(0)
}

fn rees_package(
    phi: &LinearMatrix,
    b: &Budget,
) -> Result<blowup_core::blowup::ReesPresentation, CliError> {
    let tower = ring_tower(phi.ring(), phi.rows())?;
    Ok(rees_ideal(phi, &tower, b)?)
}

fn cmd_rees(args: &CommonArgs) -> Result<u8, CliError> {
    let parsed = load(args)?;
    let b = budget(args.pair_cap, args.degree_cap);
    let rp = rees_package(&parsed.phi, &b)?;
    println!("input.hash={}", report::input_fingerprint(&parsed.phi));
    for (i, g) in rp.generators().as_slice().iter().enumerate() {
        println!("ideal.gen.{}={g}", i + 1);
    }
    for (k, e) in rp.rees_gb().elements().iter().enumerate() {
        println!("rees.gb.{}={e}", k + 1);
    }
    println!("dims.sym={}", rp.sym_dim());
    println!("dims.rees={}", rp.rees_dim());
    println!("dims.spread={}", rp.analytic_spread());
    Ok(0)
}

fn cmd_fiber(args: &CommonArgs) -> Result<u8, CliError> {
    let parsed = load(args)?;
    let b = budget(args.pair_cap, args.degree_cap);
    let rp = rees_package(&parsed.phi, &b)?;
    let elements = rp.fiber_small_gb().elements();
    println!("fiber.size={}", elements.len());
    for (k, e) in elements.iter().enumerate() {
        println!("fiber.gb.{}={e}", k + 1);
    }
    if let Some(v) = rp.fiber_initial_degree() {
        println!("fiber.indeg={v}");
    }
    println!("dims.spread={}", rp.analytic_spread());
    Ok(0)
}

fn cmd_dual(args: &CommonArgs) -> Result<u8, CliError> {
    let parsed = load(args)?;
    let tower = ring_tower(parsed.phi.ring(), parsed.phi.rows())?;
    let dual = parsed.phi.jacobian_dual(&tower.rt)?;
    for i in 0..dual.rows() {
        let row: Vec<String> = (0..dual.cols())
            .map(|j| dual.entry(i, j).to_string())
            .collect();
        println!("dual.row.{}={}", i + 1, row.join(" | "));
    }
    println!("dual.rank={}", dual.rank_mod(None).rank);
    Ok(0)
}

fn print_instance_file(phi: &LinearMatrix, header: &str, declared_u: Option<usize>) {
    println!("# {header}");
    println!("field {}", field_token(phi.ring().field()));
    let vars: Vec<&str> = (0..phi.ring().nvars()).map(|i| phi.ring().name(i)).collect();
    println!("vars {}", vars.join(" "));
    for i in 0..phi.rows() {
        let row: Vec<String> = (0..phi.cols())
            .map(|j| phi.entry(i, j).to_string())
            .collect();
        println!("row {}", row.join(", "));
    }
    if let Some(u) = declared_u {
        println!("u {u}");
    }
}

fn cmd_gen(args: &GenArgs) -> Result<u8, CliError> {
    check_caps(args.dim, args.gens, args.force)?;
    let field = input::parse_field_token(&args.field).map_err(CliError::Usage)?;
    match (args.index, args.generic) {
        (None, false) => Err(CliError::Usage(
            "pass --index U for a drop-case instance or --generic for a control".into(),
        )),
        (Some(u), _) => {
            let cfg = GenConfig {
                d: args.dim,
                n: args.gens,
                u,
                field,
                seed: args.seed,
                max_attempts: args.attempts,
            };
            let inst = generate_instance(&cfg)?;
            let header = format!(
                "generated: dim={} gens={} index={u} seed={} attempts={}",
                args.dim, args.gens, args.seed, inst.attempts
            );
            print_instance_file(&inst.phi, &header, Some(u));
            Ok(0)
        }
        (None, true) => {
            let inst = generate_generic(args.dim, args.gens, field, args.seed, args.attempts)?;
            let header = format!(
                "generated control: dim={} gens={} seed={} attempts={}",
                args.dim, args.gens, args.seed, inst.attempts
            );
            print_instance_file(&inst.phi, &header, None);
            Ok(0)
        }
    }
}

fn cmd_verify(args: &VerifyArgs) -> Result<u8, CliError> {
    let t_start = Instant::now();
    let parsed = load(&args.common)?;
    let b = budget(args.common.pair_cap, args.common.degree_cap);
    let mut opts = VerifyOptions {
        budget: b,
        point: parsed.point.clone(),
        declared_u: parsed.declared_u,
        seed: args.seed,
        ..VerifyOptions::default()
    };
    if let Some(pc) = args.point_cap {
        opts.point_cap = pc;
    }
    if let Some(rc) = args.retry_cap {
        opts.spec_retry_cap = rc;
    }
    let t_verify = Instant::now();
    let report = verify(&parsed.phi, &opts)?;
    let verify_ms = t_verify.elapsed().as_millis();
    let mut meta = report::meta_for(&parsed.phi, args.seed, b.pair_cap, b.degree_cap);
    if args.timings {
        meta.timings = Some(vec![
            ("verify".to_string(), verify_ms),
            ("total".to_string(), t_start.elapsed().as_millis()),
        ]);
    }
    print!("{}", report::render(&report, &meta));
    Ok(match (&report.case, report.consistent) {
        (CaseKind::Rejected(_), _) => 2,
        (_, false) => 1,
        (_, true) => 0,
    })
}

fn cmd_batch(args: &BatchArgs) -> Result<u8, CliError> {
    check_caps(args.dim, args.gens, args.force)?;
    if args.index.is_none() && !args.generic {
        return Err(CliError::Usage(
            "pass --index U for drop-case instances or --generic for controls".into(),
        ));
    }
    let field = input::parse_field_token(&args.field).map_err(CliError::Usage)?;
    let b = budget(args.pair_cap, args.degree_cap);
    let mut all_ok = true;
    let mut passed = 0usize;
    for i in 0..args.count {
        let seed = args.seed.wrapping_add(i as u64);
        let inst = match args.index {
            Some(u) => generate_instance(&GenConfig {
                d: args.dim,
                n: args.gens,
                u,
                field,
                seed,
                max_attempts: args.attempts,
            })?,
            None => generate_generic(args.dim, args.gens, field, seed, args.attempts)?,
        };
        let opts = VerifyOptions {
            budget: b,
            seed,
            ..VerifyOptions::default()
        };
        let report = verify(&inst.phi, &opts)?;
        let hash = report::input_fingerprint(&inst.phi);
        println!("batch.{i}.hash={}", &hash[..12]);
        println!("batch.{i}.case={}", case_str(&report.case));
        println!("batch.{i}.consistent={}", report.consistent);
        if !report.violations.is_empty() {
            println!("batch.{i}.violations={}", report.violations.join(","));
        }
        if report.consistent && !matches!(report.case, CaseKind::Rejected(_)) {
            passed += 1;
        } else {
            all_ok = false;
        }
    }
    println!("batch.count={}", args.count);
    println!("batch.passed={passed}");
    Ok(if all_ok { 0 } else { 1 })
}
