//! `prefix-compete`: command-line front end.
//!
//! Every command prints one JSON document (or CSV for `simulate`) to
//! standard output. Exit status is 0 on success, 1 when the library rejects
//! the input and 2 on usage errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use prefix_compete::coding::{expected_length, huffman_profiles, shannon_fano, TieBreak};
use prefix_compete::competition::{compete, dominates};
use prefix_compete::families::{
    family_one_third, family_sf_gap, fixture_four_codes, fixture_two_huffman,
};
use prefix_compete::kraft::{
    construct_dominating_profile, exists_competitively_optimal_code, huffman_kraft_partition,
    is_competitively_optimal, kraft_completion, Method,
};
use prefix_compete::oracle::enumerate_complete_profiles;
use prefix_compete::simulate::{run_experiment, write_report, ExperimentConfig};
use prefix_compete::{
    huffman, AnySource, Error, LengthProfile, Rational, Scalar, Source, SymbolSet,
};

#[derive(Parser, Debug)]
#[command(
    name = "prefix-compete",
    version,
    about = "Competitive optimality of prefix codes"
)]
struct Cli {
    /// Worker threads for parallel work (default: all cores).
    #[arg(long, global = true, env = "PREFIX_COMPETE_THREADS")]
    threads: Option<usize>,

    /// Evaluate in floating point and print decimal numbers.
    #[arg(long, global = true)]
    float: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Huffman length profile(s) of a source.
    Huffman {
        #[arg(long)]
        source: String,
        #[arg(long, value_enum, default_value_t = Tie::Canonical)]
        tie: Tie,
    },
    /// Shannon-Fano length profile of a source.
    ShannonFano {
        #[arg(long)]
        source: String,
    },
    /// Competition of profile A against profile B.
    Compete {
        #[arg(long)]
        source: String,
        #[arg(long)]
        a: LengthProfile,
        #[arg(long)]
        b: LengthProfile,
    },
    /// Competitive optimality verdict for a profile (default: canonical Huffman).
    Check {
        #[arg(long)]
        source: String,
        #[arg(long)]
        profile: Option<LengthProfile>,
        #[arg(long, value_enum, default_value_t = CheckMethod::Subset)]
        method: CheckMethod,
    },
    /// Whether any prefix code for the source is competitively optimal.
    ExistsOptimal {
        #[arg(long)]
        source: String,
    },
    /// An extremal source family instance.
    Family {
        #[arg(long, value_enum)]
        name: FamilyName,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        eps: Rational,
    },
    /// A named example source with its codes.
    Fixture {
        #[arg(long, value_enum)]
        name: FixtureName,
    },
    /// Kraft partition of a subset under a complete profile.
    Partition {
        #[arg(long)]
        profile: LengthProfile,
        #[arg(long, value_parser = parse_set)]
        set: SymbolSet,
    },
    /// Subset B with K(A ∪ B) = 2^-j inside a universe.
    Completion {
        #[arg(long)]
        profile: LengthProfile,
        /// Defaults to the whole alphabet.
        #[arg(long, value_parser = parse_set)]
        universe: Option<SymbolSet>,
        #[arg(long, value_parser = parse_set)]
        set: SymbolSet,
        #[arg(long)]
        j: u32,
    },
    /// Profile that wins exactly on U and loses exactly on V.
    Dominate {
        #[arg(long)]
        profile: LengthProfile,
        #[arg(long, value_parser = parse_set)]
        u: SymbolSet,
        #[arg(long, value_parser = parse_set)]
        v: SymbolSet,
    },
    /// Monte Carlo over flat-Dirichlet sources; CSV on standard output.
    Simulate {
        #[arg(long)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        samples: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = SimMethod::Leaf)]
        method: SimMethod,
        /// Also write the report here (JSON when the name ends in .json).
        #[arg(long)]
        output: Option<PathBuf>,
        /// Print the JSON report instead of CSV.
        #[arg(long)]
        json: bool,
    },
    /// All complete length profiles of a given size.
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Defaults to n - 1.
        #[arg(long)]
        max_len: Option<u32>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Tie {
    Canonical,
    All,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CheckMethod {
    Subset,
    Leaf,
    Brute,
    Hexahedron,
    SmallN,
}

impl From<CheckMethod> for Method {
    fn from(m: CheckMethod) -> Method {
        match m {
            CheckMethod::Subset => Method::SubsetExact,
            CheckMethod::Leaf => Method::LeafCondition,
            CheckMethod::Brute => Method::BruteForce,
            CheckMethod::Hexahedron => Method::Hexahedron,
            CheckMethod::SmallN => Method::SmallN,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SimMethod {
    Leaf,
    Subset,
    Hexahedron,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyName {
    OneThird,
    SfGap,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FixtureName {
    TwoHuffman,
    FourCodes,
}

fn parse_set(text: &str) -> Result<SymbolSet, String> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<usize>()
                .map_err(|_| format!("bad symbol index {s:?}"))
        })
        .collect()
}

fn load_source(arg: &str, float: bool) -> Result<AnySource, Error> {
    let trimmed = arg.trim_start();
    let text = if trimmed.starts_with('[') || trimmed.starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg)?
    };
    let source = AnySource::from_json(&text)?;
    Ok(match (source, float) {
        (AnySource::Exact(s), true) => AnySource::Float(s.to_float()),
        (s, _) => s,
    })
}

macro_rules! with_source {
    ($source:expr, |$s:ident| $body:expr) => {
        match $source {
            AnySource::Exact($s) => $body,
            AnySource::Float($s) => $body,
        }
    };
}

fn num<T: Scalar>(v: &T) -> Value {
    Value::String(v.to_string())
}

fn huffman_json<T: Scalar>(s: &Source<T>, tie: Tie) -> Result<Value, Error> {
    match tie {
        Tie::Canonical => {
            let p = huffman(s).profile();
            Ok(json!({"profile": p, "expected_length": num(&expected_length(s, &p)?)}))
        }
        Tie::All => {
            let profiles = huffman_profiles(s, TieBreak::EnumerateAll)?;
            Ok(json!({"profiles": profiles}))
        }
    }
}

fn compete_json<T: Scalar>(
    s: &Source<T>,
    a: &LengthProfile,
    b: &LengthProfile,
) -> Result<Value, Error> {
    let r = compete(s, a, b)?;
    let mut v = serde_json::to_value(&r)?;
    v["dominance"] = serde_json::to_value(dominates(&r, s.epsilon()))?;
    Ok(v)
}

fn run(cli: Cli) -> Result<String, Error> {
    let float = cli.float;
    let value = match cli.command {
        Command::Huffman { source, tie } => {
            with_source!(load_source(&source, float)?, |s| huffman_json(&s, tie)?)
        }
        Command::ShannonFano { source } => with_source!(load_source(&source, float)?, |s| {
            let p = shannon_fano(&s);
            json!({"profile": p, "expected_length": num(&expected_length(&s, &p)?)})
        }),
        Command::Compete { source, a, b } => {
            with_source!(load_source(&source, float)?, |s| compete_json(&s, &a, &b)?)
        }
        Command::Check {
            source,
            profile,
            method,
        } => with_source!(load_source(&source, float)?, |s| {
            let p = profile.unwrap_or_else(|| huffman(&s).profile());
            let verdict = is_competitively_optimal(&s, &p, method.into())?;
            let mut v = serde_json::to_value(&verdict)?;
            v["profile"] = serde_json::to_value(&p)?;
            v
        }),
        Command::ExistsOptimal { source } => with_source!(load_source(&source, float)?, |s| {
            let (exists, witness) = exists_competitively_optimal_code(&s)?;
            json!({"exists": exists, "witness": witness})
        }),
        Command::Family { name, n, eps } => {
            let f = match name {
                FamilyName::OneThird => family_one_third(n, &eps)?,
                FamilyName::SfGap => family_sf_gap(n, &eps)?,
            };
            let mut v = serde_json::to_value(&f)?;
            if float {
                v["source"] = AnySource::Float(f.source.to_float()).to_json();
                v["predicted_advantage"] = num(&f.predicted_advantage.to_f64());
                v["predicted_avg_length_gap"] = num(&f.predicted_avg_length_gap.to_f64());
            }
            v
        }
        Command::Fixture { name } => {
            let (source, profiles): (Source, Vec<(&str, LengthProfile)>) = match name {
                FixtureName::TwoHuffman => (
                    fixture_two_huffman(),
                    vec![
                        ("H1", LengthProfile::new(vec![2, 2, 2, 2])?),
                        ("H2", LengthProfile::new(vec![1, 2, 3, 3])?),
                    ],
                ),
                FixtureName::FourCodes => {
                    let f = fixture_four_codes();
                    let named = f.named().map(|(n, p)| (n, p.clone())).to_vec();
                    (f.source, named)
                }
            };
            let source_json = if float {
                AnySource::Float(source.to_float()).to_json()
            } else {
                serde_json::to_value(&source)?
            };
            let mut map = serde_json::Map::new();
            for (n, p) in profiles {
                map.insert(n.to_string(), serde_json::to_value(&p)?);
            }
            json!({"source": source_json, "profiles": map})
        }
        Command::Partition { profile, set } => {
            serde_json::to_value(huffman_kraft_partition(&profile, &set)?)?
        }
        Command::Completion {
            profile,
            universe,
            set,
            j,
        } => {
            let universe = universe.unwrap_or_else(|| SymbolSet::full(profile.len()));
            let b = kraft_completion(&profile, &universe, &set, j)?;
            json!({"b": b, "kraft_sum": profile.kraft_sum(&set.union(&b))})
        }
        Command::Dominate { profile, u, v } => {
            let p = construct_dominating_profile(&profile, &u, &v)?;
            json!({"profile": p, "kraft_sum": p.kraft_total()})
        }
        Command::Simulate {
            n_min,
            n_max,
            samples,
            seed,
            method,
            output,
            json,
        } => {
            let method = match method {
                SimMethod::Leaf => Method::LeafCondition,
                SimMethod::Subset => Method::SubsetExact,
                SimMethod::Hexahedron => Method::Hexahedron,
            };
            let cfg = ExperimentConfig::new(n_min, n_max, samples, seed, method);
            let report = run_experiment(&cfg)?;
            if let Some(path) = output {
                write_report(&report, &path)?;
            }
            if json {
                return Ok(serde_json::to_string_pretty(&report)? + "\n");
            }
            return report.to_csv();
        }
        Command::Enumerate { n, max_len } => {
            let max_len = max_len.unwrap_or(n.saturating_sub(1) as u32);
            let profiles: Vec<LengthProfile> = enumerate_complete_profiles(n, max_len)?.collect();
            json!({"n": n, "max_len": max_len, "count": profiles.len(), "profiles": profiles})
        }
    };
    Ok(serde_json::to_string_pretty(&value)? + "\n")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
