//! Command-line front end: argument parsing, artifact files and the
//! result cache.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::gradedmat::{build_trivial_rep, build_vector_rep, GradedMatrix, Representation};
use crate::laxengine::{assemble_r, extend_sigma, init_simple_sigma, RTensor, SigmaSet};
use crate::qring::Rational;
use crate::spectral::{build_spectral_r, check_spectral, SpectralKind};
use crate::superroot::{build_algebra, AlgebraData};
use crate::verifier::{reports_to_json, run_check, Check, CheckReport};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RepSource {
    Vector,
    Trivial,
    File(PathBuf),
}

impl FromStr for RepSource {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "vector" => RepSource::Vector,
            "trivial" => RepSource::Trivial,
            "" => return Err(Error::InvalidInput("empty --rep".into())),
            path => RepSource::File(PathBuf::from(path)),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Check(Check),
    Spectral(SpectralKind),
}

impl Suite {
    pub fn all() -> Vec<Suite> {
        let mut v: Vec<Suite> = Check::ALL.into_iter().map(Suite::Check).collect();
        v.push(Suite::Spectral(SpectralKind::Untwisted));
        v.push(Suite::Spectral(SpectralKind::Twisted));
        v
    }

    pub fn name(&self) -> String {
        match self {
            Suite::Check(c) => c.name().into(),
            Suite::Spectral(k) => format!("spectral-{k}"),
        }
    }

    /// Parses a comma-separated list; `all` expands to every suite.
    pub fn parse_list(s: &str) -> Result<Vec<Suite>> {
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            if part == "all" {
                out.extend(Suite::all());
            } else if let Some(kind) = part.strip_prefix("spectral-") {
                out.push(Suite::Spectral(kind.parse()?));
            } else {
                out.push(Suite::Check(part.parse()?));
            }
        }
        if out.is_empty() {
            return Err(Error::InvalidInput("no suites selected".into()));
        }
        out.dedup();
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Clone, Debug)]
pub struct JobConfig {
    pub m: i64,
    pub n: i64,
    pub rep: RepSource,
    pub suites: Vec<Suite>,
    pub kind: SpectralKind,
    pub s: Option<Rational>,
    pub z: Option<Rational>,
    pub samples: usize,
    pub seed: u64,
    pub out: PathBuf,
    pub format: OutputFormat,
    pub cache_dir: Option<PathBuf>,
}

impl JobConfig {
    pub fn new(m: i64, n: i64) -> Self {
        JobConfig {
            m,
            n,
            rep: RepSource::Vector,
            suites: Suite::all(),
            kind: SpectralKind::Untwisted,
            s: None,
            z: None,
            samples: 20,
            seed: 1,
            out: PathBuf::from("."),
            format: OutputFormat::Text,
            cache_dir: None,
        }
    }
}

pub fn load_rep(alg: &AlgebraData, src: &RepSource) -> Result<Representation> {
    match src {
        RepSource::Vector => build_vector_rep(alg),
        RepSource::Trivial => build_trivial_rep(alg),
        RepSource::File(p) => {
            let text = fs::read_to_string(p)
                .map_err(|e| Error::InvalidInput(format!("cannot read representation {}: {e}", p.display())))?;
            let rep = Representation::from_json(&text)?;
            if rep.algebra != *alg {
                return Err(Error::InvalidInput(format!(
                    "{} is a module for ({}, {}), not ({}, {})",
                    p.display(),
                    rep.algebra.m,
                    rep.algebra.n,
                    alg.m,
                    alg.n
                )));
            }
            Ok(rep)
        }
    }
}

/// SHA-256 over the canonical algebra and representation documents.
pub fn fingerprint(rep: &Representation) -> String {
    let mut h = Sha256::new();
    h.update(serde_json::to_string(&rep.algebra).expect("algebra serializes"));
    h.update(b"\n");
    h.update(serde_json::to_string(&rep.to_json_value()).expect("representation serializes"));
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

pub fn sigma_file_name(m: i64, n: i64, rep: &str) -> String {
    format!("sigma_{m}_{n}_{rep}.json")
}

pub fn r_file_name(m: i64, n: i64, rep: &str) -> String {
    format!("r_{rep}_{m}_{n}.json")
}

/// Write-temp-then-rename.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

pub struct Artifacts {
    pub sigma: SigmaSet,
    pub sigma_json: String,
    pub r: RTensor,
    pub r_json: String,
    pub cache_hit: bool,
}

fn r_json(r: &RTensor, rep: &Representation) -> String {
    serde_json::to_string_pretty(&r.to_json_value(&rep.algebra, &rep.name)).expect("serializes")
}

/// Builds (or loads from the cache) the sigma set and R-matrix for `rep`.
pub fn artifacts(rep: &Representation, cache_dir: Option<&Path>) -> Result<Artifacts> {
    let slot = cache_dir.map(|d| d.join(fingerprint(rep)));
    if let Some(slot) = &slot {
        let (sp, rp) = (slot.join("sigma.json"), slot.join("r.json"));
        if sp.is_file() && rp.is_file() {
            let sigma_json = fs::read_to_string(&sp)?;
            let r_text = fs::read_to_string(&rp)?;
            return Ok(Artifacts {
                sigma: SigmaSet::from_json(&sigma_json, rep)?,
                r: RTensor::from_json(&r_text)?,
                sigma_json,
                r_json: r_text,
                cache_hit: true,
            });
        }
    }
    let sigma = extend_sigma(init_simple_sigma(rep)?)?;
    let r = assemble_r(&sigma)?;
    let out = Artifacts {
        sigma_json: sigma.to_json(),
        r_json: r_json(&r, rep),
        sigma,
        r,
        cache_hit: false,
    };
    if let Some(slot) = &slot {
        write_atomic(&slot.join("sigma.json"), out.sigma_json.as_bytes())?;
        write_atomic(&slot.join("r.json"), out.r_json.as_bytes())?;
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenerateOutcome {
    pub sigma_path: PathBuf,
    pub r_path: PathBuf,
    pub cache_hit: bool,
}

fn setup(cfg: &JobConfig) -> Result<Representation> {
    let alg = build_algebra(cfg.m, cfg.n)?;
    load_rep(&alg, &cfg.rep)
}

pub fn cmd_generate(cfg: &JobConfig) -> Result<GenerateOutcome> {
    let rep = setup(cfg)?;
    let art = artifacts(&rep, cfg.cache_dir.as_deref())?;
    let sigma_path = cfg.out.join(sigma_file_name(cfg.m, cfg.n, &rep.name));
    let r_path = cfg.out.join(r_file_name(cfg.m, cfg.n, &rep.name));
    write_atomic(&sigma_path, art.sigma_json.as_bytes())?;
    write_atomic(&r_path, art.r_json.as_bytes())?;
    Ok(GenerateOutcome {
        sigma_path,
        r_path,
        cache_hit: art.cache_hit,
    })
}

/// Runs the configured suites. A sigma file already present in `out` is
/// verified as is; otherwise the operators are generated.
pub fn cmd_verify(cfg: &JobConfig) -> Result<Vec<CheckReport>> {
    let rep = setup(cfg)?;
    let alg = rep.algebra.clone();
    let existing = cfg.out.join(sigma_file_name(cfg.m, cfg.n, &rep.name));
    let sigma = if existing.is_file() {
        SigmaSet::from_json(&fs::read_to_string(&existing)?, &rep)?
    } else {
        artifacts(&rep, cfg.cache_dir.as_deref())?.sigma
    };
    if !sigma.is_complete() {
        return Err(Error::Schema(format!("{} is missing operators", existing.display())));
    }
    cfg.suites
        .iter()
        .map(|suite| match suite {
            Suite::Check(c) => run_check(*c, &sigma),
            Suite::Spectral(k) => check_spectral(&alg, *k, cfg.samples, cfg.seed),
        })
        .collect()
}

fn rational_matrix_json(m: &GradedMatrix<Rational>) -> Vec<(usize, usize, String)> {
    m.to_triples().into_iter().map(|(r, c, v)| (r, c, v.to_string())).collect()
}

/// Writes the symbolic spectral matrix, or its value when `--s` and `--z`
/// are both given.
pub fn cmd_spectral(cfg: &JobConfig) -> Result<PathBuf> {
    let alg = build_algebra(cfg.m, cfg.n)?;
    let sr = build_spectral_r(&alg, cfg.kind)?;
    let (name, doc) = match (&cfg.s, &cfg.z) {
        (None, None) => (format!("spectral_{}_{}_{}.json", cfg.kind, cfg.m, cfg.n), sr.to_json_value()),
        (Some(s), Some(z)) => {
            let v = sr.eval(s, z)?;
            (
                format!("spectral_{}_{}_{}_eval.json", cfg.kind, cfg.m, cfg.n),
                json!({
                    "kind": cfg.kind,
                    "algebra": {"m": cfg.m, "n": cfg.n},
                    "s": s,
                    "z": z,
                    "gradings": v.gradings(),
                    "entries": rational_matrix_json(&v),
                }),
            )
        }
        _ => return Err(Error::InvalidInput("--s and --z must be given together".into())),
    };
    let path = cfg.out.join(name);
    write_atomic(&path, serde_json::to_string_pretty(&doc)?.as_bytes())?;
    Ok(path)
}

/// Evaluates the constant R-matrix at `s`, or the spectral one at `(s, z)`.
pub fn cmd_eval(cfg: &JobConfig) -> Result<PathBuf> {
    let s = cfg.s.as_ref().ok_or_else(|| Error::InvalidInput("eval needs --s".into()))?;
    if let Some(z) = &cfg.z {
        let alg = build_algebra(cfg.m, cfg.n)?;
        let v = build_spectral_r(&alg, cfg.kind)?.eval(s, z)?;
        let doc = json!({
            "kind": cfg.kind,
            "algebra": {"m": cfg.m, "n": cfg.n},
            "s": s,
            "z": z,
            "gradings": v.gradings(),
            "entries": rational_matrix_json(&v),
        });
        let path = cfg.out.join(format!("eval_spectral_{}_{}_{}.json", cfg.kind, cfg.m, cfg.n));
        write_atomic(&path, serde_json::to_string_pretty(&doc)?.as_bytes())?;
        return Ok(path);
    }
    let rep = setup(cfg)?;
    let art = artifacts(&rep, cfg.cache_dir.as_deref())?;
    let v = art.r.matrix.try_map(|c| c.eval(s))?;
    let doc = json!({
        "kind": art.r.kind,
        "algebra": {"m": cfg.m, "n": cfg.n},
        "rep_name": rep.name,
        "s": s,
        "v_gradings": art.r.v_gradings,
        "w_gradings": art.r.w_gradings,
        "entries": rational_matrix_json(&v),
    });
    let path = cfg.out.join(format!("eval_{}_{}_{}.json", rep.name, cfg.m, cfg.n));
    write_atomic(&path, serde_json::to_string_pretty(&doc)?.as_bytes())?;
    Ok(path)
}

/// Process exit status for an error: 2 for usage and configuration
/// problems, 1 for everything found while computing.
pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::UnsupportedRank { .. }
        | Error::InvalidInput(_)
        | Error::Parse(_)
        | Error::Schema(_)
        | Error::DimensionMismatch(_) => 2,
        _ => 1,
    }
}

#[derive(Parser, Debug)]
#[command(name = "laxforge", version, about = "Exact Lax operators and R-matrices for U_q[osp(m|n)]")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build the sigma operators and the R-matrix and write them to --out.
    Generate(CommonArgs),
    /// Run relation suites; exit 1 on the first failing suite.
    Verify(CommonArgs),
    /// Write the spectral R-matrix (symbolic, or evaluated with --s and --z).
    Spectral(CommonArgs),
    /// Evaluate the R-matrix at --s (and the spectral one at --z).
    Eval(CommonArgs),
}

#[derive(Args, Debug, Clone)]
pub struct CommonArgs {
    #[arg(long)]
    pub m: i64,
    #[arg(long)]
    pub n: i64,
    /// `vector`, `trivial`, or a representation JSON file.
    #[arg(long, default_value = "vector")]
    pub rep: String,
    /// Comma-separated suite names, or `all`.
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[arg(long, default_value = "untwisted")]
    pub kind: String,
    /// Value of s = q^(1/2), as an exact rational.
    #[arg(long)]
    pub s: Option<String>,
    #[arg(long)]
    pub z: Option<String>,
    #[arg(long, default_value_t = 20)]
    pub samples: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    #[arg(long, env = "LAXFORGE_CACHE")]
    pub cache_dir: Option<PathBuf>,
}

impl CommonArgs {
    pub fn to_config(&self) -> Result<JobConfig> {
        let rat = |name: &str, v: &Option<String>| -> Result<Option<Rational>> {
            v.as_deref()
                .map(|t| t.parse::<Rational>().map_err(|_| Error::InvalidInput(format!("--{name} {t} is not a rational"))))
                .transpose()
        };
        Ok(JobConfig {
            m: self.m,
            n: self.n,
            rep: self.rep.parse()?,
            suites: Suite::parse_list(&self.suite)?,
            kind: self.kind.parse()?,
            s: rat("s", &self.s)?,
            z: rat("z", &self.z)?,
            samples: self.samples,
            seed: self.seed,
            out: self.out.clone(),
            format: self.format,
            cache_dir: self.cache_dir.clone(),
        })
    }
}

fn print_reports(reports: &[CheckReport], format: OutputFormat) {
    match format {
        OutputFormat::Json => {
            println!("{}", serde_json::to_string_pretty(&reports_to_json(reports)).expect("serializes"))
        }
        OutputFormat::Text => {
            for r in reports {
                println!("{r}");
            }
        }
    }
}

fn execute(cmd: &Command) -> Result<u8> {
    match cmd {
        Command::Generate(a) => {
            let cfg = a.to_config()?;
            let o = cmd_generate(&cfg)?;
            match cfg.format {
                OutputFormat::Json => println!(
                    "{}",
                    json!({"sigma": o.sigma_path, "r": o.r_path, "cache_hit": o.cache_hit})
                ),
                OutputFormat::Text => {
                    println!("{}", o.sigma_path.display());
                    println!("{}", o.r_path.display());
                    if o.cache_hit {
                        println!("(cache hit)");
                    }
                }
            }
            Ok(0)
        }
        Command::Verify(a) => {
            let cfg = a.to_config()?;
            let reports = cmd_verify(&cfg)?;
            print_reports(&reports, cfg.format);
            match reports.iter().find(|r| !r.passed()) {
                Some(bad) => {
                    if let Some(w) = &bad.witness {
                        eprintln!(
                            "{} failed: {} at ({}, {}): lhs = {}, rhs = {}",
                            bad.check, w.relation, w.row, w.col, w.lhs, w.rhs
                        );
                    }
                    Ok(1)
                }
                None => Ok(0),
            }
        }
        Command::Spectral(a) => {
            let path = cmd_spectral(&a.to_config()?)?;
            println!("{}", path.display());
            Ok(0)
        }
        Command::Eval(a) => {
            let path = cmd_eval(&a.to_config()?)?;
            println!("{}", path.display());
            Ok(0)
        }
    }
}

/// Parses `args` and runs the command; returns the process exit status.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_lists() {
        assert_eq!(Suite::parse_list("all").unwrap().len(), 12);
        let v = Suite::parse_list("ybe, spectral-twisted").unwrap();
        assert_eq!(v, vec![Suite::Check(Check::Ybe), Suite::Spectral(SpectralKind::Twisted)]);
        assert!(Suite::parse_list("").is_err());
        assert!(Suite::parse_list("spectral-bogus").is_err());
        assert_eq!(Suite::all().iter().map(Suite::name).next_back().unwrap(), "spectral-twisted");
    }

    #[test]
    fn rep_sources() {
        assert_eq!("vector".parse::<RepSource>().unwrap(), RepSource::Vector);
        assert_eq!("x.json".parse::<RepSource>().unwrap(), RepSource::File("x.json".into()));
    }

    #[test]
    fn fingerprint_depends_on_rep() {
        let alg = build_algebra(3, 2).unwrap();
        let v = build_vector_rep(&alg).unwrap();
        let t = build_trivial_rep(&alg).unwrap();
        assert_eq!(fingerprint(&v), fingerprint(&v.clone()));
        assert_ne!(fingerprint(&v), fingerprint(&t));
        assert_eq!(fingerprint(&v).len(), 64);
    }

    #[test]
    fn generate_and_cache() {
        let dir = tempfile::tempdir().unwrap();
        let mut cfg = JobConfig::new(3, 2);
        cfg.out = dir.path().join("out");
        cfg.cache_dir = Some(dir.path().join("cache"));
        let a = cmd_generate(&cfg).unwrap();
        assert!(!a.cache_hit);
        assert!(a.sigma_path.ends_with("sigma_3_2_vector.json"));
        assert!(a.r_path.ends_with("r_vector_3_2.json"));
        let first = fs::read(&a.sigma_path).unwrap();
        let b = cmd_generate(&cfg).unwrap();
        assert!(b.cache_hit);
        assert_eq!(fs::read(&b.sigma_path).unwrap(), first);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::UnsupportedRank { m: 2 }), 2);
        assert_eq!(exit_code(&Error::Pole { denominator: "s".into() }), 1);
    }
}
