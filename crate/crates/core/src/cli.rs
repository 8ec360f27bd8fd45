//! Command-line front end. The payload (JSON or CSV) goes to the primary
//! stream, human-readable notes to the secondary one.
//!
//! Exit codes: 0 success or witness found, 1 no witness / invalid
//! certificate, 2 usage or parse error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use crate::census::{self, CensusOptions};
use crate::gluing::{self, CyclicWord, EnumerationLimits};
use crate::quadform::{
    certify_noncommensurable, generate_family, verify_certificate, CertifyOutcome, DiagonalForm,
    NoncommCertificate,
};
use crate::Sqrt2Int;

/// Environment variable capping the worker count of parallel sections.
pub const THREADS_ENV: &str = "HYBRID_CENSUS_THREADS";

#[derive(Parser, Debug)]
#[command(name = "hybrid", version, about = "Noncommensurability certificates, gluing codes and census tables")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Admissible quadratic forms over Q(sqrt 2)
    #[command(subcommand)]
    Forms(FormsCommand),
    /// Cyclic gluing words
    #[command(subcommand)]
    Words(WordsCommand),
    /// Exact counts of equal-volume rotation classes
    Census(CensusArgs),
}

#[derive(Subcommand, Debug)]
enum FormsCommand {
    /// Pairwise noncommensurable family q_a
    Family {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        count: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Certify that q_a and lambda*q_a' are never isometric
    Certify {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        a: BigInt,
        #[arg(long = "a-prime", allow_hyphen_values = true)]
        a_prime: BigInt,
        #[arg(long = "max-prime", default_value_t = 1000)]
        max_prime: u64,
    },
    /// Re-check a certificate from scratch
    Verify {
        #[arg(long)]
        cert: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum WordsCommand {
    /// Least rotation of a word
    Canon {
        #[arg(long)]
        word: String,
    },
    /// Whether two equal-length words lie in one rotation class
    Commensurable {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
    },
    /// Rotations and reflections of Z/mZ preserving the word
    Stabilizer {
        #[arg(long)]
        word: String,
        #[arg(long = "piece-bound")]
        piece_bound: Option<u64>,
    },
    /// Canonical representatives of all fixed-content classes
    Enumerate {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        m: u32,
        #[arg(long = "max-length", default_value_t = 20)]
        max_length: u64,
    },
}

#[derive(Args, Debug)]
struct CensusArgs {
    #[arg(long)]
    r: u32,
    #[arg(long = "m-max")]
    m_max: u64,
    /// JSON map {"1": "p/q", ...} of piece volumes
    #[arg(long)]
    volumes: Option<PathBuf>,
    #[arg(long = "K")]
    k: Option<String>,
    #[arg(long = "V")]
    v: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

struct Output {
    code: i32,
    body: String,
    notes: Vec<String>,
}

impl Output {
    fn json<T: Serialize>(value: &T) -> Self {
        Output::json_with(0, value)
    }

    fn json_with<T: Serialize>(code: i32, value: &T) -> Self {
        let mut body = serde_json::to_string_pretty(value).expect("payload serializes");
        body.push('\n');
        Output { code, body, notes: vec![] }
    }

    fn note(mut self, line: impl Into<String>) -> Self {
        self.notes.push(line.into());
        self
    }
}

/// Parse `args` (including the program name) and run the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    let result = with_thread_cap(|| dispatch(cli.command));
    match result {
        Ok(output) => {
            let _ = out.write_all(output.body.as_bytes());
            for line in output.notes {
                let _ = writeln!(err, "{line}");
            }
            output.code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn with_thread_cap<R: Send>(f: impl FnOnce() -> R + Send) -> R {
    let cap = std::env::var(THREADS_ENV).ok().and_then(|s| s.trim().parse::<usize>().ok()).filter(|&n| n > 0);
    match cap.and_then(|n| rayon::ThreadPoolBuilder::new().num_threads(n).build().ok()) {
        Some(pool) => pool.install(f),
        None => f(),
    }
}

fn dispatch(command: Command) -> Result<Output, Failure> {
    match command {
        Command::Forms(FormsCommand::Family { n, count, format }) => forms_family(n, count, format),
        Command::Forms(FormsCommand::Certify { n, a, a_prime, max_prime }) => forms_certify(n, a, a_prime, max_prime),
        Command::Forms(FormsCommand::Verify { cert }) => forms_verify(&cert),
        Command::Words(cmd) => words(cmd),
        Command::Census(args) => census_cmd(args),
    }
}

fn forms_family(n: usize, count: usize, format: Format) -> Result<Output, Failure> {
    if n < 2 {
        return Err(usage(format!("--n must be at least 2, got {n}")));
    }
    let family = generate_family(n, count).map_err(|e| usage(e.to_string()))?;
    match format {
        Format::Json => {
            let entries: Vec<Value> = family
                .iter()
                .map(|q| {
                    json!({
                        "a": q.coeffs()[0],
                        "form": q,
                        "admissible": q.is_admissible(),
                        "anisotropic_certified": q.is_anisotropic_certified(),
                        "signatures": q.signatures(),
                    })
                })
                .collect();
            Ok(Output::json(&entries))
        }
        Format::Csv => {
            let mut body = String::from("index,n,a,coeffs,admissible,anisotropic_certified\n");
            for (i, q) in family.iter().enumerate() {
                let coeffs: Vec<String> = q.coeffs().iter().map(|c| c.to_string()).collect();
                body.push_str(&format!(
                    "{},{},{},\"{}\",{},{}\n",
                    i,
                    n,
                    q.coeffs()[0],
                    coeffs.join(";"),
                    q.is_admissible(),
                    q.is_anisotropic_certified()
                ));
            }
            Ok(Output { code: 0, body, notes: vec![] })
        }
    }
}

fn forms_certify(n: usize, a: BigInt, a_prime: BigInt, max_prime: u64) -> Result<Output, Failure> {
    if n < 2 {
        return Err(usage(format!("--n must be at least 2, got {n}")));
    }
    let q = DiagonalForm::q_a(n, Sqrt2Int::from_int(a)).map_err(|e| usage(e.to_string()))?;
    let q_other = DiagonalForm::q_a(n, Sqrt2Int::from_int(a_prime)).map_err(|e| usage(e.to_string()))?;
    let outcome = certify_noncommensurable(&q, &q_other, max_prime).map_err(|e| usage(e.to_string()))?;
    Ok(match &outcome {
        CertifyOutcome::Ok { certificate } => {
            let note = match certificate.place() {
                Some(place) => format!("witness: {} at p = {}", certificate.kind(), place.prime()),
                None => format!("witness: {}", certificate.kind()),
            };
            Output::json(&outcome).note(note)
        }
        CertifyOutcome::NoWitness { reason, .. } => {
            Output::json_with(1, &outcome).note(format!("no witness: {reason}"))
        }
    })
}

fn forms_verify(path: &PathBuf) -> Result<Output, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let cert: NoncommCertificate = match serde_json::from_str::<CertifyOutcome>(&text) {
        Ok(CertifyOutcome::Ok { certificate }) => certificate,
        Ok(CertifyOutcome::NoWitness { .. }) => return Err(usage("file holds a no-witness result, not a certificate")),
        Err(_) => serde_json::from_str(&text).map_err(|e| usage(format!("not a certificate: {e}")))?,
    };
    Ok(match verify_certificate(&cert) {
        Ok(()) => Output::json(&json!({"status": "ok", "valid": true, "kind": cert.kind()})),
        Err(e) => Output::json_with(1, &json!({"status": "invalid", "valid": false, "kind": cert.kind(), "reason": e.to_string()}))
            .note(format!("certificate rejected: {e}")),
    })
}

fn parse_word(s: &str) -> Result<CyclicWord, Failure> {
    s.parse().map_err(|e: gluing::GluingError| usage(e.to_string()))
}

fn words(cmd: WordsCommand) -> Result<Output, Failure> {
    match cmd {
        WordsCommand::Canon { word } => {
            let w = parse_word(&word)?;
            let (c, shift) = gluing::canonical_rotation(&w);
            Ok(Output::json(&json!({"word": w.to_string(), "canonical": c.to_string(), "shift": shift})))
        }
        WordsCommand::Commensurable { alpha, beta } => {
            let a = parse_word(&alpha)?;
            let b = parse_word(&beta)?;
            let r = a.r().max(b.r());
            let a = a.with_alphabet(r).map_err(|e| usage(e.to_string()))?;
            let b = b.with_alphabet(r).map_err(|e| usage(e.to_string()))?;
            let shift = gluing::same_class(&a, &b).map_err(|e| usage(e.to_string()))?;
            let out = Output::json(&json!({
                "alpha": a.to_string(),
                "beta": b.to_string(),
                "commensurable": shift.is_some(),
                "shift": shift,
            }));
            Ok(match shift {
                Some(p) => out.note(format!("beta = rotate(alpha, {p})")),
                None => out,
            })
        }
        WordsCommand::Stabilizer { word, piece_bound } => {
            let w = parse_word(&word)?;
            let report = gluing::dihedral_stabilizer(&w);
            let mut value = json!({
                "word": w.to_string(),
                "rotation_order": report.rotation_order,
                "reflection_exists": report.reflection_exists,
                "dihedral_order": report.dihedral_order,
            });
            if let Some(b) = piece_bound {
                if b == 0 {
                    return Err(usage("--piece-bound must be positive"));
                }
                value["isometry_upper_bound"] = json!(gluing::isometry_upper_bound(&w, b));
            }
            Ok(Output::json(&value).note("reflections are combinatorial symmetries; dihedral_order is an upper-bound factor"))
        }
        WordsCommand::Enumerate { r, m, max_length } => {
            let limits = EnumerationLimits { max_length, ..EnumerationLimits::default() };
            let classes = gluing::enumerate_classes(r, m, limits).map_err(|e| usage(e.to_string()))?;
            let lists: Vec<&[u32]> = classes.iter().map(|w| w.letters()).collect();
            Ok(Output::json(&json!({"r": r, "m": m, "count": classes.len(), "classes": lists})))
        }
    }
}

fn census_cmd(args: CensusArgs) -> Result<Output, Failure> {
    if args.r == 0 {
        return Err(usage("--r must be at least 1"));
    }
    let volumes = match &args.volumes {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
            let vols = census::parse_piece_volumes(&text).map_err(|e| usage(e.to_string()))?;
            if let Some(k) = (1..=args.r).find(|k| !vols.contains_key(k)) {
                return Err(usage(format!("volume file has no entry for piece {k}")));
            }
            Some(vols)
        }
        None => None,
    };
    let constants = match (&args.k, &args.v) {
        (None, None) => None,
        (Some(k), Some(v)) => {
            let k = census::parse_rational(k).ok_or_else(|| usage(format!("bad rational for --K: {k:?}")))?;
            let v = census::parse_rational(v).ok_or_else(|| usage(format!("bad rational for --V: {v:?}")))?;
            Some((k, v))
        }
        _ => return Err(usage("--K and --V must be given together")),
    };
    if constants.is_some() && volumes.is_none() {
        return Err(usage("--K/--V need numeric piece volumes (--volumes)"));
    }
    let options = CensusOptions { volumes, constants };
    let rows = census::theorem_table(args.r, args.m_max, &options).map_err(|e| usage(e.to_string()))?;
    let note = format!(
        "note: a_m / (m^-1 (2 pi m)^(-(r-1)/2) r^(rm-1)) tends to sqrt(r) = {:.6}, not 1",
        (args.r as f64).sqrt()
    );
    let mut output = match args.format {
        Format::Csv => Output { code: 0, body: census::to_csv(&rows), notes: vec![] },
        Format::Json => {
            let liminf = if options.volumes.is_some() {
                census::liminf_check(&rows).map_err(|e| usage(e.to_string()))?
            } else {
                None
            };
            Output::json(&json!({
                "r": args.r,
                "m_max": args.m_max,
                "rows": rows,
                "power_threshold": census::power_threshold(&rows),
                "liminf_quotient": liminf,
            }))
        }
    };
    output.notes.push(note);
    Ok(output)
}
