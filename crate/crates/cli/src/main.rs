use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use diagideal::groebner::{is_groebner_basis, natural_generators};
use diagideal::ideal::MonomialIdeal;
use diagideal::linquot::{
    closed_form_colon_product, closed_form_colon_single, lemma_colon_brute, quotient_chain,
    verify_single_lemma, LemmaReport,
};
use diagideal::resolution::has_linear_resolution;
use diagideal::scan::{conjecture_scan, ScanBounds, ScanOutcome};
use diagideal::verify::{
    check_lemma1, check_remarks, check_theorem, exit_code, sample_sorted_chains,
    sorted_chains_up_to, sweep_lemma1, sweep_lemma2, sweep_theorem, Record,
};
use diagideal::{
    betti_table, buchberger, diagonal_ideal, enumerate_diagonals, mapping_cone_betti, regularity,
    verify_colon_lemma, Characteristic, Error, Execution, Field, GridMonomial, PrimeField,
    Rationals, Result, WindowChain,
};

mod config;

use config::{load_caps, ConfigFile, Format, Overrides, RunConfig};

/// Desk-scale sweep bounds used when `verify` gets no grid.
const LEMMA_MAX_ROWS: usize = 3;
const LEMMA_MAX_COLS: usize = 8;
const THEOREM_MAX_COLS: usize = 6;
const THEOREM_MAX_FACTORS: usize = 2;

#[derive(Parser, Debug)]
#[command(
    name = "diagideal",
    version,
    about = "Diagonal monomial ideals of a generic matrix"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Seed for sampled sweeps.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// TOML file overriding resource caps.
    #[arg(long, global = true)]
    caps: Option<PathBuf>,
    /// TOML run configuration; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Execution strategy for batch work.
    #[arg(long, global = true, value_enum)]
    exec: Option<ExecArg>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ExecArg {
    Sequential,
    Parallel,
}

#[derive(Args, Debug, Default, Clone)]
struct Grid {
    #[arg(long)]
    rows: Option<usize>,
    #[arg(long)]
    cols: Option<usize>,
    /// One window `k,l`.
    #[arg(long)]
    window: Option<String>,
    /// Sorted windows `k1,l1:k2,l2:...`.
    #[arg(long)]
    chain: Option<String>,
    /// Field characteristic: 0 or a prime.
    #[arg(long)]
    char: Option<u64>,
    /// Accept unsorted chains and use brute force only.
    #[arg(long)]
    force_brute: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Target {
    Lemma1,
    Lemma2,
    Theorem,
    Remarks,
    All,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the diagonal monomials of a window.
    Diagonals(Grid),
    /// Multiply the diagonal ideals of the windows and any extra ideals.
    IdealProduct {
        #[command(flatten)]
        grid: Grid,
        /// Extra ideals in `<g1, g2, ...>` form.
        ideals: Vec<String>,
    },
    /// Colon of an ideal by a monomial, or the prefix colon of a chain.
    Colon {
        #[command(flatten)]
        grid: Grid,
        /// Ideal to divide; defaults to the product over the windows.
        #[arg(long)]
        ideal: Option<String>,
        /// Monomial to divide by.
        #[arg(long)]
        by: Option<String>,
        /// Compute `(J, f_1..f_u : f_{u+1})` over the first window's diagonals.
        #[arg(long)]
        prefix: Option<usize>,
    },
    /// Compare closed-form colons with brute force, one line per step.
    LinquotVerify {
        #[command(flatten)]
        grid: Grid,
        /// Ignore the product size cap.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Graded Betti numbers from the homology oracle.
    Betti {
        #[command(flatten)]
        grid: Grid,
        #[arg(long)]
        ideal: Option<String>,
        /// Use the linear-quotient count instead of homology.
        #[arg(long)]
        mapping_cone: bool,
    },
    /// Castelnuovo-Mumford regularity.
    Reg {
        #[command(flatten)]
        grid: Grid,
        #[arg(long)]
        ideal: Option<String>,
    },
    /// Reduced Gröbner basis of the product of minor ideals.
    Groebner {
        #[command(flatten)]
        grid: Grid,
        /// Also confirm that every S-polynomial of the result reduces to zero.
        #[arg(long)]
        check: bool,
    },
    /// Compare initial ideals with diagonal products over all sorted chains.
    ConjectureScan {
        #[arg(long)]
        max_rows: usize,
        #[arg(long)]
        max_cols: usize,
        #[arg(long)]
        max_factors: usize,
        #[arg(long)]
        char: Option<u64>,
    },
    /// Run the lemma, theorem and counterexample checks.
    Verify {
        #[arg(long, value_enum)]
        target: Target,
        #[command(flatten)]
        grid: Grid,
        /// Ignore the product size cap in lemma2 checks.
        #[arg(long)]
        exhaustive: bool,
        /// Sampled three-window chains in the lemma2 sweep.
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    /// Recompute the stored worked examples and diff them.
    PaperReplay,
}

/// Output sink plus the exit status accumulated so far.
struct Out {
    sink: Box<dyn Write>,
    format: Format,
}

impl Out {
    fn line(&mut self, text: impl AsRef<str>) -> Result<()> {
        writeln!(self.sink, "{}", text.as_ref())
            .map_err(|e| Error::Resource(format!("write failed: {e}")))
    }

    fn json(&self) -> bool {
        self.format == Format::Json
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn grid_of(command: &Command) -> Grid {
    match command {
        Command::Diagonals(g)
        | Command::IdealProduct { grid: g, .. }
        | Command::Colon { grid: g, .. }
        | Command::LinquotVerify { grid: g, .. }
        | Command::Betti { grid: g, .. }
        | Command::Reg { grid: g, .. }
        | Command::Groebner { grid: g, .. }
        | Command::Verify { grid: g, .. } => g.clone(),
        Command::ConjectureScan { char, .. } => Grid {
            char: *char,
            ..Grid::default()
        },
        Command::PaperReplay => Grid::default(),
    }
}

fn run(cli: Cli) -> Result<u8> {
    let file = match &cli.config {
        Some(p) => ConfigFile::load(p)?,
        None => ConfigFile::default(),
    };
    let caps = cli.caps.as_deref().map(load_caps).transpose()?;
    let grid = grid_of(&cli.command);
    let default_char = match cli.command {
        Command::Groebner { .. } | Command::ConjectureScan { .. } => Characteristic::DEFAULT_PRIME,
        _ => Characteristic::RATIONAL,
    };
    let cfg = RunConfig::resolve(
        file,
        caps,
        Overrides {
            rows: grid.rows,
            cols: grid.cols,
            window: grid.window,
            chain: grid.chain,
            char: grid.char,
            format: cli.format,
            output: cli.output,
            seed: cli.seed,
            exec: cli.exec.map(|e| match e {
                ExecArg::Sequential => Execution::Sequential,
                ExecArg::Parallel => Execution::Parallel,
            }),
            force_brute: grid.force_brute,
        },
        default_char,
    )?;
    let sink: Box<dyn Write> = match &cfg.output {
        Some(path) => {
            Box::new(BufWriter::new(File::create(path).map_err(|e| {
                Error::Parse(format!("cannot create {}: {e}", path.display()))
            })?))
        }
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let mut out = Out {
        sink,
        format: cfg.format,
    };
    let code = match cli.command {
        Command::Diagonals(_) => cmd_diagonals(&cfg, &mut out),
        Command::IdealProduct { ideals, .. } => cmd_ideal_product(&cfg, &ideals, &mut out),
        Command::Colon {
            ideal, by, prefix, ..
        } => cmd_colon(&cfg, ideal.as_deref(), by.as_deref(), prefix, &mut out),
        Command::LinquotVerify { exhaustive, .. } => cmd_linquot_verify(&cfg, exhaustive, &mut out),
        Command::Betti {
            ideal,
            mapping_cone,
            ..
        } => cmd_betti(&cfg, ideal.as_deref(), mapping_cone, &mut out),
        Command::Reg { ideal, .. } => cmd_reg(&cfg, ideal.as_deref(), &mut out),
        Command::Groebner { check, .. } => cmd_groebner(&cfg, check, &mut out),
        Command::ConjectureScan {
            max_rows,
            max_cols,
            max_factors,
            ..
        } => cmd_conjecture_scan(&cfg, max_rows, max_cols, max_factors, &mut out),
        Command::Verify {
            target,
            exhaustive,
            samples,
            ..
        } => cmd_verify(&cfg, target, exhaustive, samples, &mut out),
        Command::PaperReplay => cmd_replay(&mut out),
    }?;
    out.sink
        .flush()
        .map_err(|e| Error::Resource(format!("write failed: {e}")))?;
    Ok(code)
}

/// The ideal named by `--ideal`, or the product over the windows.
fn target_ideal(cfg: &RunConfig, ideal: Option<&str>) -> Result<MonomialIdeal> {
    let shape = cfg.shape()?;
    match ideal {
        Some(text) => MonomialIdeal::parse(shape, text),
        None => diagideal::grid::diagonal_product(shape, cfg.windows()?),
    }
}

fn cmd_diagonals(cfg: &RunConfig, out: &mut Out) -> Result<u8> {
    let shape = cfg.shape()?;
    let w = cfg.single_window()?;
    let gens = enumerate_diagonals(shape, w)?;
    if out.json() {
        let ideal = diagonal_ideal(shape, w)?;
        out.line(
            json!({
                "shape": shape,
                "window": [w.k(), w.l()],
                "count": gens.len(),
                "ideal": ideal.to_json(),
            })
            .to_string(),
        )?;
    } else {
        for g in gens {
            out.line(g.to_string())?;
        }
    }
    Ok(0)
}

fn cmd_ideal_product(cfg: &RunConfig, extra: &[String], out: &mut Out) -> Result<u8> {
    let shape = cfg.shape()?;
    let mut acc = match &cfg.windows {
        Some(ws) => diagideal::grid::diagonal_product(shape, ws)?,
        None => MonomialIdeal::unit(shape),
    };
    if cfg.windows.is_none() && extra.is_empty() {
        return Err(Error::Parse("nothing to multiply".into()));
    }
    for text in extra {
        acc = acc.product(&MonomialIdeal::parse(shape, text)?);
    }
    print_ideal(&acc, out)?;
    Ok(0)
}

fn print_ideal(ideal: &MonomialIdeal, out: &mut Out) -> Result<()> {
    if out.json() {
        out.line(ideal.to_json().to_string())
    } else {
        out.line(ideal.to_string())
    }
}

fn cmd_colon(
    cfg: &RunConfig,
    ideal: Option<&str>,
    by: Option<&str>,
    prefix: Option<usize>,
    out: &mut Out,
) -> Result<u8> {
    let shape = cfg.shape()?;
    match (by, prefix) {
        (Some(by), None) => {
            let f = GridMonomial::parse(shape, by)?;
            print_ideal(&target_ideal(cfg, ideal)?.colon(&f), out)?;
            Ok(0)
        }
        (None, Some(u)) => {
            if ideal.is_some() {
                return Err(Error::Parse(
                    "--prefix works on the windows, not --ideal".into(),
                ));
            }
            let windows = cfg.windows()?;
            let (brute, f) = if let [w] = windows {
                let chain = quotient_chain(&diagonal_ideal(shape, *w)?)?;
                let brute = chain.entry(u).ok_or_else(|| {
                    Error::Domain(format!(
                        "prefix {u} out of range 1..={}",
                        chain.entries().len()
                    ))
                })?;
                (brute.clone(), chain.generators()[u].clone())
            } else {
                let f = enumerate_diagonals(shape, windows[0])?.get(u).cloned();
                (
                    lemma_colon_brute(shape, windows, u)?,
                    f.expect("index checked by brute force"),
                )
            };
            if cfg.force_brute {
                print_ideal(&brute, out)?;
                return Ok(0);
            }
            let chain = cfg.chain()?;
            let closed = if chain.len() == 1 {
                closed_form_colon_single(shape, chain.first(), &f)?
            } else {
                closed_form_colon_product(shape, &chain, &f)?
            };
            let equal = brute == closed;
            if out.json() {
                out.line(json!({"u": u, "brute": brute.to_string(), "closed": closed.to_string(), "equal": equal}).to_string())?;
            } else {
                out.line(format!("brute:  {brute}"))?;
                out.line(format!("closed: {closed}"))?;
                out.line(format!("equal:  {equal}"))?;
            }
            Ok(if equal { 0 } else { 1 })
        }
        _ => Err(Error::Parse("give exactly one of --by or --prefix".into())),
    }
}

fn lemma_report(cfg: &RunConfig, exhaustive: bool) -> Result<LemmaReport> {
    let shape = cfg.shape()?;
    let chain = cfg.chain()?;
    if chain.len() == 1 {
        verify_single_lemma(shape, chain.first())
    } else {
        verify_colon_lemma(shape, &chain, exhaustive, &cfg.opts)
    }
}

fn cmd_linquot_verify(cfg: &RunConfig, exhaustive: bool, out: &mut Out) -> Result<u8> {
    let report = lemma_report(cfg, exhaustive)?;
    if out.json() {
        for line in report.json_lines() {
            out.line(line)?;
        }
    } else {
        for step in &report.steps {
            let mark = if step.equal() { "ok  " } else { "FAIL" };
            out.line(format!(
                "{mark} u={} f={} colon={}",
                step.u, step.divisor, step.brute
            ))?;
            if !step.equal() {
                out.line(format!("     closed form {}", step.closed))?;
            }
        }
        let failed = report.failures().count();
        out.line(format!("{} steps, {failed} mismatches", report.steps.len()))?;
    }
    Ok(if report.passed() { 0 } else { 1 })
}

fn cmd_betti(
    cfg: &RunConfig,
    ideal: Option<&str>,
    mapping_cone: bool,
    out: &mut Out,
) -> Result<u8> {
    let ideal = target_ideal(cfg, ideal)?;
    let table = if mapping_cone {
        mapping_cone_betti(&ideal)?
    } else {
        betti_table(&ideal, cfg.char, &cfg.opts)?
    };
    if out.json() {
        out.line(table.to_json().to_string())?;
    } else {
        write!(out.sink, "{table}").map_err(|e| Error::Resource(format!("write failed: {e}")))?;
        if let Some(reg) = table.regularity() {
            out.line(format!("reg = {reg}"))?;
        }
    }
    Ok(0)
}

fn cmd_reg(cfg: &RunConfig, ideal: Option<&str>, out: &mut Out) -> Result<u8> {
    let ideal = target_ideal(cfg, ideal)?;
    let reg = regularity(&ideal, &cfg.opts)?;
    let linear = match has_linear_resolution(&ideal, &cfg.opts) {
        Ok(b) => Some(b),
        Err(Error::Domain(_)) => None,
        Err(e) => return Err(e),
    };
    if out.json() {
        out.line(json!({"reg": reg, "linear": linear}).to_string())?;
    } else {
        out.line(reg.to_string())?;
    }
    Ok(0)
}

fn cmd_groebner(cfg: &RunConfig, check: bool, out: &mut Out) -> Result<u8> {
    if cfg.char.is_rational() {
        groebner_with(Rationals, cfg, check, out)
    } else {
        groebner_with(PrimeField::new(cfg.char)?, cfg, check, out)
    }
}

fn groebner_with<F: Field>(field: F, cfg: &RunConfig, check: bool, out: &mut Out) -> Result<u8> {
    let shape = cfg.shape()?;
    let chain = cfg.chain()?;
    let gens = natural_generators(&field, shape, &chain, &cfg.opts.caps)?;
    let gb = buchberger(&gens, &cfg.opts)?;
    let ini = gb.initial_ideal();
    let product = chain.diagonal_product(shape)?;
    let sound = check.then(|| is_groebner_basis(gb.basis()));
    let stats = gb.stats();
    if out.json() {
        out.line(
            json!({
                "shape": shape,
                "chain": chain.to_string(),
                "char": cfg.char.value(),
                "basis": gb.basis().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
                "initial_ideal": ini.to_string(),
                "ini_equals_J": ini == product,
                "spairs": stats.spairs,
                "is_groebner_basis": sound,
            })
            .to_string(),
        )?;
    } else {
        for g in gb.basis() {
            out.line(g.to_string())?;
        }
        out.line(format!("initial ideal: {ini}"))?;
        out.line(format!("equals diagonal product: {}", ini == product))?;
        out.line(format!(
            "{} elements, {} S-pairs reduced, {} skipped by coprime leads, {} by chains",
            gb.len(),
            stats.spairs,
            stats.skipped_product,
            stats.skipped_chain
        ))?;
        if let Some(ok) = sound {
            out.line(format!("all S-polynomials reduce to zero: {ok}"))?;
        }
    }
    Ok(if sound == Some(false) { 1 } else { 0 })
}

fn cmd_conjecture_scan(
    cfg: &RunConfig,
    max_rows: usize,
    max_cols: usize,
    max_factors: usize,
    out: &mut Out,
) -> Result<u8> {
    let bounds = ScanBounds {
        max_rows,
        max_cols,
        max_factors,
        char: cfg.char,
    };
    let outcomes = conjecture_scan(&bounds, &cfg.opts)?;
    let mut engine_error = false;
    for o in &outcomes {
        if let ScanOutcome::Failed { error, .. } = o {
            engine_error |= !error.is_resource();
        }
        if out.json() {
            out.line(o.to_json().to_string())?;
        } else {
            out.line(match o {
                ScanOutcome::Verdict(v) => {
                    let chain = v
                        .chain
                        .iter()
                        .map(|[k, l]| format!("{k},{l}"))
                        .collect::<Vec<_>>()
                        .join(":");
                    let mut line = format!(
                        "{} {chain}: ini=J {} natural GB {} ({} S-pairs, {} ms)",
                        v.shape, v.ini_equals_j, v.natural_gens_are_gb, v.spairs, v.millis
                    );
                    if let Some(w) = &v.witness {
                        line.push_str(&format!(" witness {w}"));
                    }
                    line
                }
                ScanOutcome::Failed {
                    shape,
                    chain,
                    error,
                } => format!("{shape} {chain}: skipped, {error}"),
            })?;
        }
    }
    if !out.json() {
        let held = outcomes
            .iter()
            .filter(|o| o.verdict().is_some_and(|v| v.holds()))
            .count();
        out.line(format!("{held} of {} instances hold", outcomes.len()))?;
    }
    Ok(if engine_error { 2 } else { 0 })
}

fn cmd_verify(
    cfg: &RunConfig,
    target: Target,
    exhaustive: bool,
    samples: usize,
    out: &mut Out,
) -> Result<u8> {
    let wants = |t: Target| target == t || target == Target::All;
    let opts = &cfg.opts;
    let mut records: Vec<Record> = Vec::new();
    if wants(Target::Lemma1) {
        match (cfg.shape, &cfg.windows) {
            (Some(shape), Some(_)) => records.push(check_lemma1(shape, cfg.single_window()?)),
            (Some(shape), None) => {
                records.extend(shape.windows().into_iter().map(|w| check_lemma1(shape, w)))
            }
            _ => records.extend(sweep_lemma1(LEMMA_MAX_ROWS, LEMMA_MAX_COLS, opts)),
        }
    }
    if wants(Target::Lemma2) {
        let instances = match (cfg.shape, &cfg.windows) {
            (Some(shape), Some(_)) => vec![(shape, cfg.chain()?)],
            (Some(shape), None) => WindowChain::enumerate_sorted(shape, 2)
                .into_iter()
                .map(|c| (shape, c))
                .collect(),
            _ => {
                let mut all = sorted_chains_up_to(LEMMA_MAX_ROWS, LEMMA_MAX_COLS, 2);
                all.extend(sample_sorted_chains(
                    LEMMA_MAX_ROWS,
                    LEMMA_MAX_COLS,
                    3,
                    samples,
                    usize::MAX,
                    cfg.seed,
                )?);
                all
            }
        };
        let single: Vec<_> = instances.iter().filter(|(_, c)| c.len() == 1).collect();
        for (shape, c) in single {
            records.push(check_lemma1(*shape, c.first()));
        }
        let multi: Vec<_> = instances.into_iter().filter(|(_, c)| c.len() > 1).collect();
        records.extend(sweep_lemma2(
            &multi,
            exhaustive || cfg.shape.is_none(),
            opts,
        ));
    }
    if wants(Target::Theorem) {
        match (cfg.shape, &cfg.windows) {
            (Some(shape), Some(_)) => records.push(check_theorem(shape, &cfg.chain()?, opts)),
            (Some(shape), None) => {
                for s in 1..=THEOREM_MAX_FACTORS {
                    for c in WindowChain::enumerate_sorted(shape, s) {
                        if c.diagonal_product(shape)?.len() <= opts.caps.max_oracle_gens {
                            records.push(check_theorem(shape, &c, opts));
                        }
                    }
                }
            }
            _ => records.extend(sweep_theorem(
                LEMMA_MAX_ROWS,
                THEOREM_MAX_COLS,
                THEOREM_MAX_FACTORS,
                opts.caps.max_oracle_gens,
                opts,
            )?),
        }
    }
    if wants(Target::Remarks) {
        records.extend(check_remarks());
    }
    for r in &records {
        if out.json() {
            out.line(r.to_json().to_string())?;
        } else {
            let mark = match (&r.error, r.passed) {
                (Some(_), _) => "ERROR",
                (None, true) => "pass ",
                (None, false) => "FAIL ",
            };
            let shape = r.shape.map(|s| s.to_string()).unwrap_or_default();
            let mut line = format!("{mark} {} {shape} {}", r.target.name(), r.chain);
            if let Some(e) = &r.error {
                line.push_str(&format!(": {e}"));
            }
            out.line(line)?;
        }
    }
    if !out.json() {
        let passed = records.iter().filter(|r| r.passed).count();
        out.line(format!("{passed} of {} checks passed", records.len()))?;
    }
    Ok(exit_code(&records) as u8)
}

fn cmd_replay(out: &mut Out) -> Result<u8> {
    let report = diagideal::replay::replay()?;
    for c in &report.checks {
        if out.json() {
            out.line(c.to_json().to_string())?;
        } else if c.passed {
            out.line(format!("ok   {}", c.name))?;
        } else {
            out.line(format!(
                "FAIL {}: expected {}, got {}",
                c.name, c.expected, c.actual
            ))?;
        }
    }
    let passed = report.checks.iter().filter(|c| c.passed).count();
    if out.json() {
        out.line(json!({"passed": report.passed(), "checks": report.checks.len(), "millis": report.millis}).to_string())?;
    } else {
        out.line(format!(
            "{passed} of {} checks match ({} ms)",
            report.checks.len(),
            report.millis
        ))?;
    }
    Ok(if report.passed() { 0 } else { 1 })
}
