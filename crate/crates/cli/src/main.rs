use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;
use staircase::arquiver::default_slice_limit;
use staircase::linalg::parse_rational;
use staircase::nilpairs::{dominated_nullroots, is_isomorphic_seeded, DEFAULT_SEED};
use staircase::{
    bundled_radical_generators, classify, finiteness_space, hierarchy, knit, orbit_quiver, orbit_type, parse_partition, tensor_type,
    two_param_family, verify_classification, wildness_witness, Error, Finiteness, GradedPair, IntVector, Partition, UnitForm,
};

#[derive(Parser)]
#[command(name = "staircase", version, about = "Staircase algebras of partitions")]
struct Cli {
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Representation type of A(λ).
    Classify {
        lambda: String,
        /// Re-derive the type from the Tits form and report each check.
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        json: bool,
    },
    /// Tits form queries.
    Form {
        lambda: String,
        #[command(flatten)]
        query: FormQuery,
    },
    /// A non-negative vector with q = -1 for a wild partition.
    Witness { lambda: String },
    /// Knit the preprojective component.
    Knit {
        lambda: String,
        /// Number of τ⁻-slices before giving up (default 10n).
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long)]
        dot: bool,
        /// Emit the orbit quiver instead of the component.
        #[arg(long)]
        orbit: bool,
    },
    /// Orbit type from the closed-form case list.
    OrbitType { lambda: String },
    /// Type of the rectangle with l rows of length m.
    Tensor { m: usize, l: usize },
    /// Graded nilpotent pairs read from JSON.
    Nilpair {
        #[arg(value_enum)]
        action: NilpairAction,
        file: PathBuf,
    },
    /// A member of the bundled two-parameter family on λ.
    Family {
        lambda: String,
        /// Projective parameter, comma separated rationals.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        params: Vec<String>,
        /// Compare with a second member instead of printing it.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        against: Option<Vec<String>>,
    },
    /// Partitions up to size N ordered by inclusion.
    Hierarchy {
        #[arg(long = "max-n")]
        max_n: usize,
        #[arg(long)]
        dot: bool,
    },
}

#[derive(clap::Args)]
#[group(required = true, multiple = false)]
struct FormQuery {
    /// Evaluate q on the vector in this JSON file.
    #[arg(long, value_name = "FILE")]
    eval: Option<PathBuf>,
    #[arg(long)]
    gram: bool,
    #[arg(long)]
    radical: bool,
    #[arg(long)]
    psd: bool,
    #[arg(long)]
    roots: bool,
    #[arg(long)]
    corank0: bool,
    #[arg(long)]
    nullroot: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum NilpairAction {
    Validate,
    ToRep,
    Finite,
}

enum Failure {
    Domain(String),
    Inconclusive,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn emit<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn partition(text: &str) -> Result<Partition, Failure> {
    Ok(parse_partition(text)?)
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))
}

fn run_classify(lambda: &Partition, verify: bool, as_json: bool) -> Outcome {
    let t = classify(lambda);
    if !verify {
        if as_json {
            emit(&json!({ "lambda": lambda, "type": t }));
        } else {
            println!("{}", t.name());
        }
        return Ok(());
    }
    let report = verify_classification(lambda);
    if as_json {
        emit(&report);
    } else {
        println!("{}", t.name());
        for c in &report.checks {
            println!("  {}: expected {}, observed {}", c.criterion, c.expected, c.observed);
        }
        println!("consistent: {}", report.consistent);
    }
    if !report.consistent {
        Err(Failure::Domain(format!("classification of {lambda} is inconsistent with its Tits form")))
    } else if report.inconclusive {
        Err(Failure::Inconclusive)
    } else {
        Ok(())
    }
}

fn run_form(lambda: &Partition, query: &FormQuery) -> Outcome {
    let form = UnitForm::of(lambda);
    if let Some(path) = &query.eval {
        let x: IntVector = read_json(path)?;
        if x.lambda() != lambda {
            return Err(Error::ShapeMismatch(lambda.clone()).into());
        }
        emit(&json!({ "vector": x, "q": form.eval(&x)? }));
    } else if query.gram {
        let rows: Vec<Vec<String>> = form.gram().to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
        let labels: Vec<String> = form.quiver().vertices().iter().map(|v| v.label()).collect();
        emit(&json!({ "vertices": labels, "gram": rows }));
    } else if query.radical {
        let basis = form.radical_basis()?;
        let mut out = json!({ "lambda": lambda, "rank": basis.len(), "basis": basis });
        if let Some(gens) = bundled_radical_generators(lambda) {
            let in_lattice = gens.iter().all(|u| UnitForm::in_lattice(&basis, u));
            out["generators"] = json!(gens);
            out["generators_in_lattice"] = json!(in_lattice);
        }
        emit(&out);
    } else if query.psd {
        println!("{}", form.is_psd());
    } else if query.roots {
        let roots = form.positive_roots()?;
        emit(&json!({ "lambda": lambda, "count": roots.len(), "roots": roots }));
    } else if query.corank0 {
        println!("{}", form.corank0()?);
    } else if query.nullroot {
        emit(&form.minimal_nullroot()?);
    }
    Ok(())
}

fn run_knit(lambda: &Partition, limit: Option<usize>, dot: bool, orbit: bool) -> Outcome {
    let ar = knit(lambda, limit.unwrap_or_else(|| default_slice_limit(lambda)))?;
    if orbit {
        let oq = match orbit_quiver(&ar) {
            Ok(oq) => oq,
            Err(Error::PartialComponent) => {
                eprintln!("not every projective was reached within the slice limit");
                return Err(Failure::Inconclusive);
            }
            Err(e) => return Err(e.into()),
        };
        if dot {
            print!("{}", oq.to_dot());
        } else {
            emit(&oq);
        }
    } else if dot {
        print!("{}", ar.to_dot());
    } else {
        emit(&ar);
    }
    if ar.complete {
        Ok(())
    } else {
        eprintln!("component incomplete: slice limit reached");
        Err(Failure::Inconclusive)
    }
}

fn run_nilpair(action: NilpairAction, path: &Path) -> Outcome {
    let pair: GradedPair = read_json(path)?;
    match action {
        NilpairAction::Validate => {
            let violations = pair.validate();
            emit(&json!({ "valid": violations.is_empty(), "violations": violations }));
            if !violations.is_empty() {
                return Err(Failure::Domain(format!("{} violation(s)", violations.len())));
            }
        }
        NilpairAction::ToRep => emit(&pair.to_representation()?),
        NilpairAction::Finite => {
            let verdict = finiteness_space(&pair.space)?;
            let lambda = pair.space.lambda()?;
            let hits = dominated_nullroots(&pair.space.dim_vector()?)?;
            emit(&json!({ "lambda": lambda, "type": classify(&lambda), "finiteness": verdict, "dominated_nullroots": hits }));
            if verdict == Finiteness::Unknown {
                return Err(Failure::Inconclusive);
            }
        }
    }
    Ok(())
}

fn rationals(items: &[String]) -> Result<Vec<num_rational::BigRational>, Failure> {
    items.iter().map(|s| Ok(parse_rational(s.trim())?)).collect()
}

fn run_family(lambda: &Partition, params: &[String], against: Option<&[String]>, seed: u64) -> Outcome {
    let m = two_param_family(lambda, &rationals(params)?)?;
    match against {
        None => emit(&m),
        Some(other) => {
            let n = two_param_family(lambda, &rationals(other)?)?;
            let iso = is_isomorphic_seeded(&m, &n, 16, seed)?;
            emit(&json!({ "lambda": lambda, "isomorphic": iso, "seed": seed }));
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Classify { lambda, verify, json } => run_classify(&partition(&lambda)?, verify, json),
        Command::Form { lambda, query } => run_form(&partition(&lambda)?, &query),
        Command::Witness { lambda } => {
            emit(&wildness_witness(&partition(&lambda)?)?);
            Ok(())
        }
        Command::Knit { lambda, limit, dot, orbit } => run_knit(&partition(&lambda)?, limit, dot, orbit),
        Command::OrbitType { lambda } => {
            println!("{}", orbit_type(&partition(&lambda)?));
            Ok(())
        }
        Command::Tensor { m, l } => {
            println!("{}", tensor_type(m, l)?.name());
            Ok(())
        }
        Command::Nilpair { action, file } => run_nilpair(action, &file),
        Command::Family { lambda, params, against } => run_family(&partition(&lambda)?, &params, against.as_deref(), cli.seed),
        Command::Hierarchy { max_n, dot } => {
            let h = hierarchy(max_n);
            if dot {
                print!("{}", h.to_dot());
            } else {
                emit(&h);
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Inconclusive) => ExitCode::from(3),
    }
}
