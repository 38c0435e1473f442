//! Command-line front end: enumerate and classify endorelations over
//! prime fields, reduce a relation to its canonical bijective form,
//! decide shift equivalence, cross-check the decision procedure against
//! the brute-force search, and verify the spider truncations.

use clap::{Parser, Subcommand, ValueEnum};
use linrel::classify::{
    classify, enumerate_relations, export_csv, export_dot, export_json, ClassifyOptions,
};
use linrel::field::Prime;
use linrel::leray::{leray, EndoObject};
use linrel::relation::{LinearRelation, RelationDoc};
use linrel::spider::verify_truncation;
use linrel::szymczak::{oracle_szym_equiv, szym_equiv, szym_label};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "linrel",
    version,
    about = "Linear relations over prime fields: enumeration, canonical forms, shift equivalence"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ListFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Json,
    Csv,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// List every endorelation on GF(p)^dim in canonical order.
    Enumerate {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        dim: usize,
        #[arg(long, value_enum, default_value_t = ListFormat::Json)]
        format: ListFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Partition the endorelations on GF(p)^dim into shift-equivalence
    /// classes.
    Classify {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        dim: usize,
        #[arg(long, value_enum, default_value_t = TableFormat::Json)]
        format: TableFormat,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads; the output never depends on this.
        #[arg(long)]
        parallel: Option<usize>,
        /// Add (0, id_0) as an extra member of its class.
        #[arg(long)]
        include_zero_object: bool,
        /// Label cache file, reused and updated across runs.
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Reduce a relation document to its canonical bijective form.
    Leray {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide shift equivalence of two relation documents; exits 0
    /// exactly when they are equivalent, printing both class labels.
    Equiv { a: PathBuf, b: PathBuf },
    /// Compare the label decider against the brute-force search; exits
    /// nonzero on any disagreement.
    OracleCheck {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        dim: usize,
        /// Number of random pairs; all ordered pairs when omitted.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Verify the truncated spider relation and report per-check results.
    Spider {
        #[arg(long)]
        orbits: usize,
        /// Highest power to check; defaults to the orbit bound.
        #[arg(long)]
        max_power: Option<usize>,
    },
}

enum CliError {
    Lib(linrel::Error),
    Io(PathBuf, std::io::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Io(path, e) => write!(f, "{}: {e}", path.display()),
        }
    }
}

impl From<linrel::Error> for CliError {
    fn from(e: linrel::Error) -> Self {
        CliError::Lib(e)
    }
}

/// Exit codes: 1 negative decision, 2 usage (via clap), 3 malformed
/// input documents, 4 guard violations, 5 I/O failures, 6 invalid
/// parameters.
fn exit_code(err: &CliError) -> ExitCode {
    use linrel::Error::*;
    match err {
        CliError::Io(..) => ExitCode::from(5),
        CliError::Lib(e) => match e {
            Json(_) | LengthMismatch { .. } | EntryOutOfRange { .. } => ExitCode::from(3),
            GuardExceeded(_) | SpiderOrbitBound(_) | SpiderPowerRange { .. } => ExitCode::from(4),
            Io { .. } => ExitCode::from(5),
            _ => ExitCode::from(6),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            exit_code(&err)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, CliError> {
    match command {
        Command::Enumerate {
            p,
            dim,
            format,
            out,
        } => cmd_enumerate(p, dim, format, out.as_deref()),
        Command::Classify {
            p,
            dim,
            format,
            out,
            parallel,
            include_zero_object,
            cache,
        } => cmd_classify(
            p,
            dim,
            format,
            out.as_deref(),
            parallel,
            include_zero_object,
            cache,
        ),
        Command::Leray { input, out } => cmd_leray(&input, out.as_deref()),
        Command::Equiv { a, b } => cmd_equiv(&a, &b),
        Command::OracleCheck {
            p,
            dim,
            samples,
            seed,
        } => cmd_oracle_check(p, dim, samples, seed),
        Command::Spider { orbits, max_power } => cmd_spider(orbits, max_power),
    }
}

fn write_output(out: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, bytes).map_err(|e| CliError::Io(path.to_path_buf(), e)),
        None => std::io::stdout()
            .write_all(bytes)
            .map_err(|e| CliError::Io(PathBuf::from("<stdout>"), e)),
    }
}

fn cmd_enumerate(
    p: u64,
    dim: usize,
    format: ListFormat,
    out: Option<&Path>,
) -> Result<ExitCode, CliError> {
    let p = Prime::new(p)?;
    let docs: Vec<RelationDoc> = enumerate_relations(p, dim)?
        .map(|r| r.to_document())
        .collect();
    let bytes = match format {
        ListFormat::Json => {
            let payload = serde_json::json!({
                "p": p.value(),
                "dim": dim,
                "count": docs.len(),
                "relations": docs,
            });
            let mut text = serde_json::to_string_pretty(&payload).map_err(linrel::Error::from)?;
            text.push('\n');
            text.into_bytes()
        }
        ListFormat::Csv => {
            let mut buf = Vec::new();
            {
                let mut w = csv_writer(&mut buf);
                w.write_record(["index", "dim_dom", "dim_cod", "generators"])
                    .map_err(csv_to_io)?;
                for (i, doc) in docs.iter().enumerate() {
                    let gens =
                        serde_json::to_string(&doc.generators).map_err(linrel::Error::from)?;
                    w.write_record([
                        i.to_string(),
                        doc.dim_dom.to_string(),
                        doc.dim_cod.to_string(),
                        gens,
                    ])
                    .map_err(csv_to_io)?;
                }
                w.flush()
                    .map_err(|e| CliError::Io(PathBuf::from("<buffer>"), e))?;
            }
            buf
        }
    };
    eprintln!("enumerated {} relations on GF({})^{}", docs.len(), p, dim);
    write_output(out, &bytes)?;
    Ok(ExitCode::SUCCESS)
}

fn csv_writer(buf: &mut Vec<u8>) -> csv::Writer<&mut Vec<u8>> {
    csv::Writer::from_writer(buf)
}

fn csv_to_io(e: csv::Error) -> CliError {
    CliError::Io(PathBuf::from("<buffer>"), std::io::Error::other(e))
}

fn cmd_classify(
    p: u64,
    dim: usize,
    format: TableFormat,
    out: Option<&Path>,
    parallel: Option<usize>,
    include_zero_object: bool,
    cache: Option<PathBuf>,
) -> Result<ExitCode, CliError> {
    let p = Prime::new(p)?;
    let options = ClassifyOptions {
        include_zero_object,
        workers: parallel,
        cache_path: cache,
    };
    let table = classify(p, dim, &options)?;
    eprintln!(
        "classified {} relations on GF({})^{} into {} classes in {:.3?}",
        table.total_relations, p, dim, table.class_count, table.elapsed
    );
    let mut buf = Vec::new();
    let render = match format {
        TableFormat::Json => export_json(&table, &mut buf),
        TableFormat::Csv => export_csv(&table, &mut buf),
        TableFormat::Dot => export_dot(&table, &mut buf),
    };
    render.map_err(|e| CliError::Io(PathBuf::from("<buffer>"), e))?;
    write_output(out, &buf)?;
    Ok(ExitCode::SUCCESS)
}

fn load_object(path: &Path) -> Result<EndoObject, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))?;
    let doc = RelationDoc::from_json(&text)?;
    let relation = LinearRelation::from_document(&doc)?;
    Ok(EndoObject::new(relation)?)
}

fn cmd_leray(input: &Path, out: Option<&Path>) -> Result<ExitCode, CliError> {
    let object = load_object(input)?;
    let form = leray(&object);
    let payload = serde_json::json!({
        "p": object.modulus().value(),
        "dim": form.dim(),
        "matrix": form.matrix().to_int_rows(),
        "invariant_factors": form.factors().to_coeff_lists(),
    });
    let mut text = serde_json::to_string_pretty(&payload).map_err(linrel::Error::from)?;
    text.push('\n');
    write_output(out, text.as_bytes())?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_equiv(a: &Path, b: &Path) -> Result<ExitCode, CliError> {
    let obj_a = load_object(a)?;
    let obj_b = load_object(b)?;
    let label_a = serde_json::to_string(&szym_label(&obj_a)).map_err(linrel::Error::from)?;
    let label_b = serde_json::to_string(&szym_label(&obj_b)).map_err(linrel::Error::from)?;
    println!("{label_a}");
    println!("{label_b}");
    let equivalent = szym_equiv(&obj_a, &obj_b)?;
    eprintln!(
        "{} and {} are {}",
        a.display(),
        b.display(),
        if equivalent {
            "shift equivalent"
        } else {
            "not shift equivalent"
        }
    );
    Ok(if equivalent {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_oracle_check(
    p: u64,
    dim: usize,
    samples: Option<usize>,
    seed: u64,
) -> Result<ExitCode, CliError> {
    let p = Prime::new(p)?;
    let objects: Vec<EndoObject> = enumerate_relations(p, dim)?
        .map(|r| EndoObject::new(r).expect("enumeration yields endorelations"))
        .collect();
    let pairs: Vec<(usize, usize)> = match samples {
        None => (0..objects.len())
            .flat_map(|i| (0..objects.len()).map(move |j| (i, j)))
            .collect(),
        Some(count) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..count)
                .map(|_| {
                    (
                        rng.gen_range(0..objects.len()),
                        rng.gen_range(0..objects.len()),
                    )
                })
                .collect()
        }
    };

    let mut disagreements = 0usize;
    for &(i, j) in &pairs {
        let fast = szym_equiv(&objects[i], &objects[j])?;
        let slow = oracle_szym_equiv(&objects[i], &objects[j])?;
        if fast != slow {
            disagreements += 1;
            println!(
                "disagreement: decider={fast} oracle={slow} on relations {i} and {j}: {:?} vs {:?}",
                objects[i].alpha(),
                objects[j].alpha()
            );
        }
    }
    println!(
        "checked {} pairs over GF({})^{}: {} disagreements",
        pairs.len(),
        p,
        dim,
        disagreements
    );
    Ok(if disagreements == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_spider(orbits: usize, max_power: Option<usize>) -> Result<ExitCode, CliError> {
    let report = verify_truncation(orbits, max_power.unwrap_or(orbits))?;
    let mut text = serde_json::to_string_pretty(&report).map_err(linrel::Error::from)?;
    text.push('\n');
    write_output(None, text.as_bytes())?;
    Ok(if report.all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
