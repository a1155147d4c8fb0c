//! `nsg`: command-line front end for nsg-core. Every command prints JSON.
//!
//! Exit codes: 0 on success, 1 when a corpus case fails or an internal
//! cross-check disagrees, 2 on usage or input errors.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use nsg_core::classify::{classify, hilbert_samuel};
use nsg_core::corpus::{load_dir, run_cases};
use nsg_core::extensions::{default_extension_n, duplication_report, extension_type_by_socle, verify_prop31};
use nsg_core::field::{Field, FieldSpec, PrimeField, Rationals};
use nsg_core::presentation::{minors_family, verify_presentation, PresentationData};
use nsg_core::semigroup::parse_int_list;
use nsg_core::trunc::{series_terms, TruncAlgebra};
use nsg_core::ulrich::{default_bound, enumerate_monomial_ulrich, glued_structure, gluing_ulrich_set, is_ulrich_general};
use nsg_core::{Error, NumericalSemigroup, RelativeIdeal};

#[derive(Parser)]
#[command(name = "nsg", version, about = "Numerical semigroup rings: 2-AGL classification and Ulrich ideals")]
struct Cli {
    /// Compact single-line JSON instead of pretty-printed.
    #[arg(long, global = true)]
    json: bool,
    /// Coefficient field: `q` or `fp:<p>`.
    #[arg(long, global = true, default_value = "q")]
    field: FieldSpec,
    /// Truncation order for finite-dimensional checks.
    #[arg(long = "N", global = true)]
    n: Option<i64>,
    /// Valuation bound for monomial enumeration.
    #[arg(long, global = true)]
    bound: Option<i64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Basic invariants of a semigroup given by generators, e.g. `5,7,9,13`.
    Info { semigroup: String },
    /// Sally rank, 2-AGL flags and K/R structure.
    Classify {
        semigroup: String,
        /// Also report Hilbert coefficients of the monomial ideal with these
        /// generator valuations.
        #[arg(long)]
        hilbert: Option<String>,
    },
    /// Monomial Ulrich ideals.
    Ulrich { semigroup: String },
    /// Gluing `<2·H1, α>`.
    Glue {
        h1: String,
        #[arg(long)]
        alpha: i64,
        /// Also compare the two-generated Ulrich formula with enumeration.
        #[arg(long)]
        ulrich: bool,
    },
    /// Quasi-trivial extension `R ⋉^α (R:T)`.
    Ext {
        semigroup: String,
        #[arg(long = "T")]
        t: String,
        /// Series in `t`; runs the finite-dimensional checks when given.
        #[arg(long)]
        alpha: Option<String>,
    },
    /// Ulrich check of an ideal given by power-series generators in `k[[H]]/t^N`.
    VerifyIdeal {
        semigroup: String,
        /// Comma-separated generators, e.g. `t^8 + t^10, t^11 + t^12`.
        #[arg(long)]
        gens: String,
        /// Reduction element to use instead of searching.
        #[arg(long)]
        reduction: Option<String>,
    },
    /// Defining-ideal checks.
    Presentation {
        #[command(subcommand)]
        action: PresentationAction,
    },
    /// Golden-example corpus.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Subcommand)]
enum PresentationAction {
    /// Verify a presentation data file.
    Verify {
        file: PathBuf,
    },
    /// Build and check one instance of the 2×2-minors family.
    Minors {
        /// Block exponents, e.g. `3,1,1`.
        ells: String,
        #[arg(long, default_value_t = 10)]
        degree: usize,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    /// Run `all` cases or the case with the given id.
    Run {
        which: String,
        #[arg(long, default_value = concat!(env!("CARGO_MANIFEST_DIR"), "/corpus"))]
        dir: PathBuf,
    },
}

enum Failure {
    Usage(String),
    Verdict(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(_) | Error::InconsistentTheorem12(_) => Failure::Verdict(json!({ "error": e.to_string() })),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = std::result::Result<Value, Failure>;

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn semigroup(s: &str) -> Result<NumericalSemigroup, Error> {
    NumericalSemigroup::new(&parse_int_list(s)?)
}

fn ext_checks<F: Field>(h: &NumericalSemigroup, t: &NumericalSemigroup, alpha: &str, field: F, n: i64) -> Outcome {
    let terms = series_terms(&field, alpha)?;
    let cert = verify_prop31(h, t, &terms, field.clone(), n)?;
    let socle_type = extension_type_by_socle(h, t, &terms, field, n)?;
    Ok(json!({ "alpha": alpha, "prop31": to_value(&cert), "type_by_socle": socle_type }))
}

fn verify_ideal<F: Field>(h: &NumericalSemigroup, gens: &str, reduction: Option<&str>, field: F, n: i64) -> Outcome {
    let alg = TruncAlgebra::truncated_ring(h, field, n)?;
    let elems = gens
        .split(',')
        .map(|g| alg.parse_element(g))
        .collect::<Result<Vec<_>, _>>()?;
    let red = reduction.map(|r| alg.parse_element(r)).transpose()?;
    let v = is_ulrich_general(&alg, &elems, red.as_ref())?;
    Ok(json!({ "field": field_name(alg.field()), "N": n, "verdict": to_value(&v) }))
}

fn field_name<F: Field>(f: &F) -> String {
    match f.characteristic() {
        0 => "q".into(),
        p => format!("fp:{p}"),
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Info { semigroup: s } => Ok(to_value(&semigroup(s)?.invariants())),
        Command::Classify { semigroup: s, hilbert } => {
            let h = semigroup(s)?;
            let mut out = to_value(&classify(&h)?);
            if let Some(gens) = hilbert {
                let i = RelativeIdeal::new(&h, &parse_int_list(gens)?)?;
                out["hilbert"] = to_value(&hilbert_samuel(&h, &i, 10)?);
            }
            Ok(out)
        }
        Command::Ulrich { semigroup: s } => {
            let h = semigroup(s)?;
            let e = enumerate_monomial_ulrich(&h, cli.bound.unwrap_or_else(|| default_bound(&h)));
            Ok(json!({ "ideals": e.gen_sets(), "bound": e.bound, "bound_too_small": e.bound_too_small }))
        }
        Command::Glue { h1, alpha, ulrich } => {
            let h1 = semigroup(h1)?;
            let mut out = json!({ "structure": to_value(&glued_structure(&h1, *alpha)?) });
            if *ulrich {
                out["ulrich"] = to_value(&gluing_ulrich_set(&h1, *alpha)?);
            }
            Ok(out)
        }
        Command::Ext { semigroup: s, t, alpha } => {
            let h = semigroup(s)?;
            let t = semigroup(t)?;
            let mut out = to_value(&duplication_report(&h, &t)?);
            if let Some(a) = alpha {
                let n = cli.n.unwrap_or_else(|| default_extension_n(&h, &t));
                out["checks"] = match cli.field {
                    FieldSpec::Rationals => ext_checks(&h, &t, a, Rationals, n)?,
                    FieldSpec::PrimeField(p) => ext_checks(&h, &t, a, PrimeField::new(p)?, n)?,
                };
            }
            Ok(out)
        }
        Command::VerifyIdeal { semigroup: s, gens, reduction } => {
            let h = semigroup(s)?;
            let n = cli.n.unwrap_or(3 * h.conductor() + 2 * h.largest_generator() + 4);
            let red = reduction.as_deref();
            match cli.field {
                FieldSpec::Rationals => verify_ideal(&h, gens, red, Rationals, n),
                FieldSpec::PrimeField(p) => verify_ideal(&h, gens, red, PrimeField::new(p)?, n),
            }
        }
        Command::Presentation { action } => match action {
            PresentationAction::Verify { file } => {
                let text = std::fs::read_to_string(file)
                    .map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))?;
                let data: PresentationData =
                    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))?;
                let report = verify_presentation(&data)?;
                let v = to_value(&report);
                if report.ok {
                    Ok(v)
                } else {
                    Err(Failure::Verdict(v))
                }
            }
            PresentationAction::Minors { ells, degree } => {
                let ells: Vec<u32> = parse_int_list(ells)?
                    .into_iter()
                    .map(|e| u32::try_from(e).map_err(|_| Failure::Usage(format!("bad exponent {e}"))))
                    .collect::<Result<_, _>>()?;
                Ok(to_value(&minors_family(&ells, *degree)?))
            }
        },
        Command::Corpus { action: CorpusAction::Run { which, dir } } => {
            let mut cases = load_dir(dir)?;
            if which != "all" {
                cases.retain(|c| &c.id == which);
                if cases.is_empty() {
                    return Err(Failure::Usage(format!("no corpus case with id {which:?}")));
                }
            }
            let outcomes = run_cases(&cases);
            for o in &outcomes {
                eprintln!("{} {} ({})", if o.passed { "PASS" } else { "FAIL" }, o.id, o.anchor);
            }
            let failed = outcomes.iter().filter(|o| !o.passed).count();
            let out = json!({ "passed": outcomes.len() - failed, "failed": failed, "cases": to_value(&outcomes) });
            if failed == 0 {
                Ok(out)
            } else {
                Err(Failure::Verdict(out))
            }
        }
    }
}

fn print(v: &Value, compact: bool) {
    let s = if compact {
        serde_json::to_string(v)
    } else {
        serde_json::to_string_pretty(v)
    };
    // A closed pipe (e.g. `| head`) is not an error worth reporting.
    let _ = writeln!(std::io::stdout().lock(), "{}", s.expect("JSON values serialize"));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(v) => {
            print(&v, cli.json);
            ExitCode::SUCCESS
        }
        Err(Failure::Verdict(v)) => {
            print(&v, cli.json);
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            print(&json!({ "error": msg }), cli.json);
            ExitCode::from(2)
        }
    }
}
