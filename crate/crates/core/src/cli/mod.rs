//! Batch front-end behind the `torsion` binary.
//!
//! Every run resolves its arguments into a [`RunConfig`]; the SHA-256 of the
//! config's canonical JSON tags each emitted row together with the crate
//! version and the wall time.

pub mod output;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::equivariant::{
    assemble, regulators, torsion_of_cover, OrbitCellComplex, RegulatorReport, TetraRow,
};
use crate::error::{Error, Result};
use crate::homology::{
    growth_report, level_scan, small_eigenvalue_sum, GrowthRecord, H1Options, ScanOptions,
    SpectrumCheck, Threshold, DEFAULT_PRIMES,
};
use crate::quadfield::matrix::{self, Mat2};
use crate::quadfield::{Field, QfIdeal, QuadElem};
use crate::subgroups::{bianchi_presentation, CosetAction, GroupKind};
use crate::symbols::{
    conductor, manin_decompose, split, ModularSymbol, P1Point, SplitOptions, DEFAULT_MARGIN,
};
pub use output::Format;
use output::Report;

pub const VERSION: &str = concat!("torsion-core/", env!("CARGO_PKG_VERSION"));

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "torsion",
    version,
    about = "Torsion homology, regulators and modular symbols"
)]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Recorded in the config; commands here are deterministic.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Report every timing as 0 so identical configs give identical bytes.
    #[arg(long, global = true)]
    pub no_timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Homology of congruence subgroups of Bianchi groups.
    #[command(subcommand)]
    Bianchi(BianchiCmd),
    /// H1 of every level up to a norm bound, with a cuspidal-dimension histogram.
    Scan(ScanArgs),
    /// Equivariant cohomology of orbit cell complexes.
    #[command(subcommand)]
    Tetra(TetraCmd),
    /// Modular symbol arithmetic over the tree of PGL2.
    #[command(subcommand)]
    Symbols(SymbolsCmd),
    /// Torsion-growth ratios against 1/(6π).
    Growth(GrowthArgs),
    /// Small-eigenvalue sum (1/V)·Σ_{0<λ≤θ} |log λ|.
    Spectrum(SpectrumArgs),
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BianchiCmd {
    /// H1 of Γ0(level) inside a Bianchi group.
    H1(H1Args),
}

#[derive(Args, Debug, Serialize)]
pub struct GroupArgs {
    #[arg(short = 'd')]
    pub d: u32,
    #[arg(long, default_value = "sl2")]
    pub kind: String,
    /// Primes for the mod-l bound.
    #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_PRIMES)]
    pub primes: Vec<u64>,
    /// Take b1 from the mod-l bound and skip the integral SNF.
    #[arg(long)]
    pub modl_only: bool,
}

#[derive(Args, Debug, Serialize)]
pub struct H1Args {
    #[command(flatten)]
    pub group: GroupArgs,
    /// Generator of the level ideal; repeat or separate with commas.
    #[arg(long, required = true, value_delimiter = ',')]
    pub level: Vec<String>,
}

#[derive(Args, Debug, Serialize)]
pub struct ScanArgs {
    #[arg(short = 'd', default_value_t = 1)]
    pub d: u32,
    #[arg(long, default_value = "sl2")]
    pub kind: String,
    #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_PRIMES)]
    pub primes: Vec<u64>,
    #[arg(long)]
    pub modl_only: bool,
    /// The unit ideal (norm 1) is skipped unless asked for.
    #[arg(long, default_value_t = 2)]
    pub min_norm: u64,
    #[arg(long)]
    pub max_norm: u64,
    /// Append-only progress file; rerunning with the same config resumes.
    #[arg(long)]
    #[serde(skip)]
    pub checkpoint: Option<PathBuf>,
    /// Emit histogram bins instead of per-level rows.
    #[arg(long)]
    pub histogram: bool,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TetraCmd {
    /// Regulators log r̃ᵢ and log rᵢ for each degree and action.
    Regulators(TetraArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct TetraArgs {
    /// Orbit cell complex JSON.
    #[arg(long)]
    pub complex: PathBuf,
    /// Coset action JSON; repeatable. Without one the trivial action is used.
    #[arg(long)]
    pub action: Vec<PathBuf>,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SymbolsCmd {
    /// Conductor and denominator of ⟨α, β; g⟩.
    Conductor(SymbolArgs),
    /// Split ⟨0, ∞; g⟩ into two symbols avoiding M·p.
    Split(SplitArgs),
    /// Continued-fraction decomposition of ⟨α, β⟩ into unimodular symbols.
    Decompose(SymbolArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct SymbolArgs {
    #[arg(short = 'd')]
    pub d: u32,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub alpha: String,
    #[arg(long, default_value = "inf", allow_hyphen_values = true)]
    pub beta: String,
    /// Matrix as `a,b;c,d`.
    #[arg(long, default_value = "1,0;0,1", allow_hyphen_values = true)]
    pub g: String,
    /// Read the symbol from JSON instead (`alpha`, `beta`, `g`).
    #[arg(long)]
    pub symbol: Option<PathBuf>,
    /// Primes up to this bound are verified to lie outside the conductor.
    #[arg(long, default_value_t = DEFAULT_MARGIN)]
    pub margin: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct SplitArgs {
    #[arg(short = 'd')]
    pub d: u32,
    #[arg(long, allow_hyphen_values = true)]
    pub g: String,
    /// The conductors must be coprime to `M·p`.
    #[arg(short = 'M', long, default_value_t = 1)]
    pub modulus: u64,
    #[arg(short = 'p', long)]
    pub prime: u64,
    /// Class elements examined per prime search.
    #[arg(long, default_value_t = SplitOptions::default().budget)]
    pub budget: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct GrowthArgs {
    /// Base volume; records given by `index` are scaled by it.
    #[arg(long)]
    pub vol0: Option<f64>,
    /// JSON array of `{volume | index, log_torsion, betti}`.
    pub records: PathBuf,
}

#[derive(Args, Debug, Serialize)]
pub struct SpectrumArgs {
    /// Strong threshold θ = c.
    #[arg(
        long = "c",
        required_unless_present = "delta",
        conflicts_with = "delta"
    )]
    pub c: Option<f64>,
    /// Weak threshold θ = V^(−δ).
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long = "V", visible_alias = "volume")]
    pub volume: f64,
    /// JSON array of eigenvalues, or `{"eigenvalues": [...]}`.
    pub spectrum: PathBuf,
}

/// The resolved configuration; its hash is echoed on every row.
#[derive(Debug, Serialize)]
pub struct RunConfig<'a> {
    pub command: &'a Command,
    pub seed: u64,
    pub version: &'static str,
}

impl RunConfig<'_> {
    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).unwrap()
    }

    pub fn hash(&self) -> String {
        let digest = Sha256::digest(serde_json::to_vec(self).unwrap());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// Exit code for an error: input problems are usage errors.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::UnsupportedField(_)
        | Error::UnsupportedGroup { .. }
        | Error::Parse(_)
        | Error::Schema(_)
        | Error::UnknownGenerator(_)
        | Error::InvalidPermutation(_)
        | Error::NotPrime(_)
        | Error::DegenerateSymbol(_)
        | Error::Io(_) => EXIT_USAGE,
        _ => EXIT_FAILURE,
    }
}

/// Parses `args` (program name first), runs the command and returns the exit
/// code. Diagnostics go to `err`; output goes to `--out` or `out`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    if cli.format == Format::Table && !matches!(cli.command, Command::Tetra(_)) {
        return Err(Error::Parse(
            "--format table is only available for tetra regulators".into(),
        ));
    }
    if let Some(n) = cli.workers {
        // Fails only if a pool already exists, e.g. on repeated in-process runs.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    let config = RunConfig {
        command: &cli.command,
        seed: cli.seed,
        version: VERSION,
    };
    let hash = config.hash();
    let start = Instant::now();
    let mut report = match &cli.command {
        Command::Bianchi(BianchiCmd::H1(a)) => cmd_bianchi_h1(a)?,
        Command::Scan(a) => cmd_scan(a, &hash)?,
        Command::Tetra(TetraCmd::Regulators(a)) => cmd_tetra(a)?,
        Command::Symbols(SymbolsCmd::Conductor(a)) => cmd_conductor(a)?,
        Command::Symbols(SymbolsCmd::Split(a)) => cmd_split(a)?,
        Command::Symbols(SymbolsCmd::Decompose(a)) => cmd_decompose(a)?,
        Command::Growth(a) => cmd_growth(a)?,
        Command::Spectrum(a) => cmd_spectrum(a)?,
    };
    let wall = if cli.no_timing {
        0.0
    } else {
        start.elapsed().as_secs_f64()
    };
    for row in report.rows.iter_mut() {
        row.insert("config_hash".into(), Value::from(hash.clone()));
        row.insert("version".into(), Value::from(VERSION));
        row.insert("wall_seconds".into(), Value::from(wall));
    }

    let mut file;
    let sink: &mut dyn Write = match &cli.out {
        Some(p) => {
            file = std::io::BufWriter::new(fs::File::create(p)?);
            &mut file
        }
        None => out,
    };
    match cli.format {
        Format::Csv => {
            if cli.no_timing {
                for r in report.rows.iter_mut() {
                    let mut v = Value::Object(std::mem::take(r));
                    output::zero_timings(&mut v);
                    *r = match v {
                        Value::Object(m) => m,
                        _ => unreachable!(),
                    };
                }
            }
            output::write_csv(sink, &report.rows)?;
        }
        Format::Json => {
            let mut doc = json!({
                "config": config.to_value(),
                "config_hash": hash,
                "version": VERSION,
                "wall_seconds": wall,
            });
            let obj = doc.as_object_mut().unwrap();
            obj.extend(std::mem::take(&mut report.extras));
            obj.insert(
                "rows".into(),
                Value::Array(report.rows.drain(..).map(Value::Object).collect()),
            );
            if cli.no_timing {
                output::zero_timings(&mut doc);
            }
            output::write_json(sink, &doc)?;
        }
        Format::Table => {
            writeln!(
                sink,
                "# config_hash {hash} version {VERSION} wall_seconds {wall}"
            )?;
            for line in report.table.as_deref().unwrap_or_default() {
                writeln!(sink, "{line}")?;
            }
        }
    }
    sink.flush()?;
    let total = report.rows.len() + report.failures;
    Ok(if report.failures > 0 && report.failures == total {
        EXIT_FAILURE
    } else {
        EXIT_OK
    })
}

fn group(d: u32, kind: &str) -> Result<(Field, GroupKind)> {
    Ok((Field::new(d)?, kind.parse()?))
}

fn h1_options(primes: &[u64], modl_only: bool) -> Result<H1Options> {
    if let Some(&l) = primes.iter().find(|&&l| !crate::arith::is_prime(l as u128)) {
        return Err(Error::NotPrime(l.to_string()));
    }
    Ok(H1Options {
        primes: primes.to_vec(),
        integral: !modl_only,
    })
}

fn cmd_bianchi_h1(a: &H1Args) -> Result<Report> {
    let (field, kind) = group(a.group.d, &a.group.kind)?;
    let opts = h1_options(&a.group.primes, a.group.modl_only)?;
    let pres = bianchi_presentation(a.group.d, kind)?;
    let mut levels = Vec::new();
    for s in &a.level {
        levels.push(QfIdeal::principal(field, &QuadElem::parse(s)?)?);
    }
    let mut report = Report::default();
    for (s, level) in a.level.iter().zip(&levels) {
        match crate::homology::bianchi_h1(&pres, level, &opts) {
            Ok(r) => report.push(serde_json::to_value(r)?),
            Err(e) => {
                log::error!("level {s}: {e}");
                report.failures += 1;
            }
        }
    }
    Ok(report)
}

fn cmd_scan(a: &ScanArgs, hash: &str) -> Result<Report> {
    let (_, kind) = group(a.d, &a.kind)?;
    let opts = ScanOptions {
        h1: h1_options(&a.primes, a.modl_only)?,
        min_norm: a.min_norm,
        max_norm: a.max_norm,
        checkpoint: a.checkpoint.clone(),
        config_hash: hash.to_string(),
    };
    let res = level_scan(a.d, kind, &opts)?;
    let mut report = Report::default();
    let total: usize = res.histogram.iter().sum();
    log::info!("histogram {:?}, total {total}", res.histogram);
    report
        .extras
        .insert("histogram".into(), json!(res.histogram));
    report.extras.insert("total".into(), json!(total));
    report.extras.insert(
        "failures".into(),
        json!(res
            .failures
            .iter()
            .map(|(l, e)| json!({"level": l, "error": e}))
            .collect::<Vec<_>>()),
    );
    if a.histogram {
        for (bin, count) in res.histogram.iter().enumerate() {
            let label = if bin + 1 == res.histogram.len() {
                format!(">={bin}")
            } else {
                bin.to_string()
            };
            report.push(json!({"cuspidal_dim": label, "count": count}));
        }
        report.push(json!({"cuspidal_dim": "total", "count": total}));
    } else {
        for r in res.reports {
            report.push(serde_json::to_value(r)?);
        }
    }
    report.failures = res.failures.len();
    Ok(report)
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Prefixes schema errors with the file they came from.
fn in_file<T>(path: &Path, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Schema(m) => Error::Schema(format!("{}: {m}", path.display())),
        e => e,
    })
}

fn regulator_row(name: &str, index: usize, r: &RegulatorReport) -> Value {
    let k = index as f64;
    json!({
        "action": name,
        "index": index,
        "degree": r.degree,
        "betti": r.betti,
        "log_r_tilde": r.log_r_tilde,
        "log_r_tilde_per_index": r.log_r_tilde / k,
        "log_r": r.log_r,
        "log_r_per_index": r.log_r / k,
        "gram_det_tilde": r.gram_det_tilde,
        "gram_det": r.gram_det,
        "inequality_holds": r.inequality_holds(1e-9),
        "convention": r.convention,
    })
}

fn cmd_tetra(a: &TetraArgs) -> Result<Report> {
    let complex = in_file(&a.complex, OrbitCellComplex::from_json(&read(&a.complex)?))?;
    let mut actions = Vec::new();
    for p in &a.action {
        let act = in_file(p, CosetAction::from_json(&read(p)?))?;
        actions.push((p.display().to_string(), act));
    }
    if actions.is_empty() {
        actions.push(("trivial".into(), CosetAction::trivial(&complex.generators)));
    }
    let mut report = Report::default();
    let mut table = vec![TetraRow::header().to_string()];
    for (name, action) in &actions {
        let levels = in_file(Path::new(name), assemble(&complex, action))?;
        let index = action.degree();
        let reports = (0..levels.len())
            .map(|i| regulators(&levels, i))
            .collect::<Result<Vec<_>>>()?;
        let cover = if complex.is_free() {
            Some(torsion_of_cover(&complex, action)?)
        } else {
            None
        };
        for r in &reports {
            let mut row = regulator_row(name, index, r);
            if r.degree == 1 {
                if let Some(c) = &cover {
                    let t: Vec<String> = c.torsion.iter().map(|x| x.to_string()).collect();
                    row["h1_b1"] = json!(c.b1);
                    row["h1_torsion"] = json!(t.join(" "));
                }
            }
            report.push(row);
        }
        if reports.len() > 2 {
            table.push(TetraRow::from_reports(index, &reports[1], &reports[2]).render());
        }
    }
    report.table = Some(table);
    Ok(report)
}

/// `a,b;c,d`.
pub fn parse_matrix(s: &str) -> Result<Mat2> {
    let rows: Vec<&str> = s.split(';').collect();
    let bad = || Error::Parse(format!("matrix '{s}' is not of the form a,b;c,d"));
    if rows.len() != 2 {
        return Err(bad());
    }
    let mut m = matrix::identity();
    for (i, r) in rows.iter().enumerate() {
        let es: Vec<&str> = r.split(',').collect();
        if es.len() != 2 {
            return Err(bad());
        }
        for (j, e) in es.iter().enumerate() {
            m[i][j] = QuadElem::parse(e.trim())?;
        }
    }
    Ok(m)
}

fn matrix_string(m: &Mat2) -> String {
    let s = matrix::to_strings(m);
    format!("{},{};{},{}", s[0][0], s[0][1], s[1][0], s[1][1])
}

fn symbol(a: &SymbolArgs) -> Result<ModularSymbol> {
    let f = Field::new(a.d)?;
    if let Some(p) = &a.symbol {
        return in_file(p, ModularSymbol::from_json(f, &read(p)?));
    }
    ModularSymbol::new(
        f,
        P1Point::parse(f, &a.alpha)?,
        P1Point::parse(f, &a.beta)?,
        parse_matrix(&a.g)?,
    )
}

fn cmd_conductor(a: &SymbolArgs) -> Result<Report> {
    let sym = symbol(a)?;
    let c = conductor(&sym, a.margin)?;
    let mut row = json!({
        "d": a.d,
        "alpha": sym.alpha.to_string(),
        "beta": sym.beta.to_string(),
        "g": matrix_string(&sym.g),
    });
    let obj = row.as_object_mut().unwrap();
    if let Value::Object(m) = c.to_json_value() {
        obj.extend(m);
    }
    let mut report = Report::default();
    report.push(row);
    Ok(report)
}

fn cmd_split(a: &SplitArgs) -> Result<Report> {
    let f = Field::new(a.d)?;
    let sym = ModularSymbol::standard(f, parse_matrix(&a.g)?)?;
    let opts = SplitOptions {
        budget: a.budget,
        ..SplitOptions::default()
    };
    let s = split(&sym, a.modulus, a.prime, &opts)?;
    let mut row = json!({
        "d": a.d,
        "g": matrix_string(&sym.g),
        "modulus": a.modulus,
        "p": a.prime,
    });
    if let Value::Object(m) = s.to_json_value() {
        row.as_object_mut().unwrap().extend(m);
    }
    let mut report = Report::default();
    report.push(row);
    Ok(report)
}

fn cmd_decompose(a: &SymbolArgs) -> Result<Report> {
    let sym = symbol(a)?;
    let f = sym.field;
    let gs = manin_decompose(f, &sym.alpha, &sym.beta)?;
    let mut report = Report::default();
    for (i, g) in gs.iter().enumerate() {
        report.push(json!({
            "d": a.d,
            "step": i,
            "g": matrix_string(g),
            "from": P1Point::zero().apply(f, g)?.to_string(),
            "to": P1Point::infinity().apply(f, g)?.to_string(),
        }));
    }
    report
        .extras
        .insert("alpha".into(), json!(sym.alpha.to_string()));
    report
        .extras
        .insert("beta".into(), json!(sym.beta.to_string()));
    Ok(report)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RecordJson {
    volume: Option<f64>,
    index: Option<usize>,
    log_torsion: f64,
    #[serde(default)]
    betti: usize,
}

fn cmd_growth(a: &GrowthArgs) -> Result<Report> {
    let raw: Vec<RecordJson> = in_file(
        &a.records,
        serde_json::from_str(&read(&a.records)?).map_err(Error::from),
    )?;
    let mut records = Vec::with_capacity(raw.len());
    for (i, r) in raw.iter().enumerate() {
        let rec = match (r.volume, r.index, a.vol0) {
            (Some(v), None, _) => GrowthRecord {
                volume: v,
                log_torsion: r.log_torsion,
                betti: r.betti,
            },
            (None, Some(k), Some(v0)) => GrowthRecord::from_index(k, v0, r.log_torsion, r.betti),
            (None, Some(_), None) => {
                return Err(Error::Parse(format!(
                    "record {i}: index given but no --vol0"
                )))
            }
            _ => {
                return Err(Error::Schema(format!(
                    "record {i}: exactly one of volume and index is required"
                )))
            }
        };
        records.push(rec);
    }
    let g = growth_report(&records)?;
    let mut report = Report::default();
    for row in &g.rows {
        let mut v = serde_json::to_value(row)?;
        v["target"] = json!(g.target);
        report.push(v);
    }
    report.extras.insert("target".into(), json!(g.target));
    report
        .extras
        .insert("volumes_increasing".into(), json!(g.volumes_increasing));
    Ok(report)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum SpectrumJson {
    List(Vec<f64>),
    Object { eigenvalues: Vec<f64> },
}

fn cmd_spectrum(a: &SpectrumArgs) -> Result<Report> {
    let parsed: SpectrumJson = in_file(
        &a.spectrum,
        serde_json::from_str(&read(&a.spectrum)?).map_err(Error::from),
    )?;
    let eigenvalues = match parsed {
        SpectrumJson::List(v) | SpectrumJson::Object { eigenvalues: v } => v,
    };
    let threshold = match (a.c, a.delta) {
        (Some(c), _) => Threshold::Strong(c),
        (None, Some(d)) => Threshold::Weak(d),
        (None, None) => unreachable!("clap requires one threshold"),
    };
    let spec = SpectrumCheck {
        eigenvalues,
        volume: a.volume,
        threshold,
    };
    let value = small_eigenvalue_sum(&spec)?;
    let mut report = Report::default();
    report.push(json!({
        "volume": spec.volume,
        "threshold": spec.threshold,
        "eigenvalue_count": spec.eigenvalues.len(),
        "small_eigenvalue_sum": value,
    }));
    Ok(report)
}
