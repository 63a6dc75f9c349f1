mod ascii;
mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use indumatch::blmatch::chi;
use indumatch::induced::{g_matching, m_matching};
use indumatch::ladders::{enumerate_catalog, random_ladder};
use indumatch::persmod::{direct_sum_morphism, image_factorization, shift_morphism};
use indumatch::{LadderFile, Morphism, PrimeField};

#[derive(Parser)]
#[command(name = "indumatch", version, about = "Barcodes and induced matchings of persistence module morphisms")]
struct Cli {
    /// Field characteristic. Generators use it; file inputs must agree with it.
    #[arg(long, global = true)]
    prime: Option<u32>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Ascii,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    M,
    G,
    Chi,
}

#[derive(Subcommand)]
enum Command {
    /// Barcodes of the source, target and image of a morphism.
    Barcode { file: PathBuf },
    /// A matching between the source and target barcodes.
    Match {
        file: PathBuf,
        #[arg(long, value_enum)]
        method: Method,
        /// Shift the morphism by this many grid steps first.
        #[arg(long, default_value_t = 0)]
        eps: usize,
    },
    /// Direct sum of morphism files, written to stdout.
    Sum {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// The indecomposable ladders on a grid of length 3.
    Catalog {
        /// Write one file per ladder into this directory.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// A random morphism seeded by INDUMATCH_SEED (default 0).
    Random {
        #[arg(long, default_value_t = 6)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        max_dim: usize,
    },
}

/// Failures and their exit codes.
#[derive(Debug)]
enum Failure {
    Parse(String),
    Invalid(String),
    Usage(String),
    Incompatible(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Parse(_) => 2,
            Failure::Invalid(_) => 3,
            Failure::Usage(_) => 4,
            Failure::Incompatible(_) => 5,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Parse(m) | Failure::Invalid(m) | Failure::Usage(m) | Failure::Incompatible(m) => m,
        }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 4 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn run(cli: &Cli) -> Outcome<String> {
    match &cli.command {
        Command::Barcode { file } => {
            let f = load(file, cli.prime)?;
            let image = image_factorization(&f).map_err(invalid)?.image;
            let (bv, bu, bi) = (f.source().barcode(), f.target().barcode(), image.barcode());
            Ok(match cli.format {
                Format::Json => report::json(&report::barcodes(&bv, &bu, &bi)),
                Format::Ascii => ascii::barcodes(f.n(), &[("source", &bv), ("target", &bu), ("image", &bi)]),
            })
        }
        Command::Match { file, method, eps } => {
            let f = load(file, cli.prime)?;
            let f = shift_morphism(&f, *eps).map_err(|e| Failure::Usage(e.to_string()))?;
            match_report(&f, *method, *eps, cli.format)
        }
        Command::Sum { files } => {
            let mut acc = load(&files[0], cli.prime)?;
            for path in &files[1..] {
                let next = load(path, cli.prime)?;
                if next.field() != acc.field() || next.n() != acc.n() {
                    return Err(Failure::Incompatible(format!(
                        "{} is GF({}) on n = {}, expected GF({}) on n = {}",
                        path.display(),
                        next.field().prime(),
                        next.n(),
                        acc.field().prime(),
                        acc.n()
                    )));
                }
                acc = direct_sum_morphism(&acc, &next).map_err(invalid)?;
            }
            Ok(LadderFile::from_morphism(&acc).to_json())
        }
        Command::Catalog { dump } => {
            let catalog = enumerate_catalog(field(cli.prime)?);
            if let Some(dir) = dump {
                fs::create_dir_all(dir).map_err(|e| Failure::Usage(format!("{}: {e}", dir.display())))?;
                for (code, f) in &catalog {
                    let path = dir.join(format!("{}.json", code.to_string().replace('/', "-")));
                    fs::write(&path, LadderFile::from_morphism(f).to_json())
                        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
                }
            }
            Ok(match cli.format {
                Format::Json => report::json(&report::catalog(&catalog)),
                Format::Ascii => ascii::catalog(&catalog),
            })
        }
        Command::Random { n, max_dim } => {
            let seed = match std::env::var("INDUMATCH_SEED") {
                Ok(s) => s
                    .trim()
                    .parse::<u64>()
                    .map_err(|_| Failure::Usage(format!("INDUMATCH_SEED must be an unsigned integer, got {s:?}")))?,
                Err(_) => 0,
            };
            if *n == 0 {
                return Err(Failure::Usage("--n must be positive".into()));
            }
            Ok(LadderFile::from_morphism(&random_ladder(*n, *max_dim, field(cli.prime)?, seed)).to_json())
        }
    }
}

fn match_report(f: &Morphism, method: Method, eps: usize, format: Format) -> Outcome<String> {
    let (bv, bu) = (f.source().barcode(), f.target().barcode());
    let n = f.n();
    Ok(match method {
        Method::M => {
            let m = m_matching(f).map_err(invalid)?;
            match format {
                Format::Json => report::json(&report::m_table(&m, &bv, &bu, eps)),
                Format::Ascii => ascii::counts(n, &m, &bv, &bu),
            }
        }
        Method::G => {
            let g = g_matching(f).map_err(invalid)?;
            match format {
                Format::Json => report::json(&report::g_table(&g, &bv, &bu, eps)),
                Format::Ascii => {
                    let mut s = ascii::counts(n, &g.to_counts(), &bv, &bu);
                    s.push_str(&ascii::g_entries(&g));
                    s
                }
            }
        }
        Method::Chi => {
            let c = chi(f).map_err(invalid)?;
            match format {
                Format::Json => report::json(&report::chi(&c, eps)),
                Format::Ascii => ascii::matching(n, &c, &bv, &bu),
            }
        }
    })
}

fn invalid(e: indumatch::Error) -> Failure {
    Failure::Invalid(e.to_string())
}

fn field(prime: Option<u32>) -> Outcome<PrimeField> {
    PrimeField::new(prime.unwrap_or(2)).map_err(|e| Failure::Usage(e.to_string()))
}

fn load(path: &Path, prime: Option<u32>) -> Outcome<Morphism> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?;
    let file = LadderFile::from_json(&text).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?;
    if let Some(p) = prime {
        if p != file.prime {
            return Err(Failure::Incompatible(format!(
                "{} is over GF({}), but --prime is {p}",
                path.display(),
                file.prime
            )));
        }
    }
    file.to_morphism()
        .map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}
