mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use wci_core::Error;

use commands::Reply;

/// Checks, enumeration and verification for weighted complete
/// intersections.
///
/// Families are written "d_1,..,d_c / a_0,..,a_n" and pairs
/// "d_1,..,d_c/a_0,..,a_n"; "v^m" repeats a value m times.
#[derive(Parser, Debug)]
#[command(name = "wci", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Well-formedness, quasi-smoothness, smoothness, type and index.
    Check {
        family: String,
        #[command(flatten)]
        format: Format,
        /// Exit 1 unless the predicate holds.
        #[arg(long, value_enum)]
        assert: Option<CheckPredicate>,
    },
    /// δ, h-regularity, cancellation and prime splits of a pair.
    Pair {
        pair: String,
        #[arg(long, default_value_t = 1)]
        h: u64,
        /// Split at this prime.
        #[arg(long)]
        split: Option<u64>,
        #[command(flatten)]
        format: Format,
        /// Exit 1 unless the pair is h-regular.
        #[arg(long, value_enum)]
        assert: Option<PairPredicate>,
    },
    /// Frobenius number of a list of generators.
    Frobenius {
        generators: String,
        /// Also print Brauer's bound for the given order.
        #[arg(long)]
        brauer: bool,
        #[command(flatten)]
        format: Format,
    },
    /// Section dimensions h0(O_X(k)).
    Hilbert {
        family: String,
        /// Print k = 0..=K.
        #[arg(long, default_value_t = 20, conflicts_with = "at")]
        up_to: u64,
        /// Print only k = K.
        #[arg(long)]
        at: Option<u64>,
        #[command(flatten)]
        format: Format,
    },
    /// Maximal strata in the base locus of |O_X(ell)|.
    BaseLocus {
        family: String,
        ell: u64,
        #[command(flatten)]
        format: Format,
        /// Exit 1 unless the base locus is empty.
        #[arg(long, value_enum)]
        assert: Option<LocusPredicate>,
    },
    /// List canonical pairs or families inside bounds.
    Enumerate {
        #[arg(long, value_enum, default_value_t = Kind::Families)]
        kind: Kind,
        #[command(flatten)]
        bounds: BoundsArgs,
        #[command(flatten)]
        format: Format,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Exhaustive check of a claim inside bounds.
    Verify {
        #[arg(value_enum)]
        claim: Claim,
        /// Prime for lemma-qdiv.
        #[arg(long, default_value_t = 2)]
        q: u64,
        #[command(flatten)]
        bounds: BoundsArgs,
        #[command(flatten)]
        format: Format,
        /// Omit elapsed time, for reproducible output.
        #[arg(long)]
        no_timing: bool,
        /// Exit 1 if any counterexample is found.
        #[arg(long, value_enum)]
        assert: Option<ClaimPredicate>,
        #[arg(long)]
        workers: Option<usize>,
    },
}

#[derive(Args, Debug, Clone, Copy)]
struct Format {
    #[arg(long)]
    json: bool,
    #[arg(long, conflicts_with = "json")]
    csv: bool,
}

#[derive(Args, Debug, Clone)]
struct BoundsArgs {
    #[arg(long, default_value_t = 1)]
    min_codim: usize,
    #[arg(long, default_value_t = 1)]
    max_codim: usize,
    #[arg(long, default_value_t = 1)]
    min_vars: usize,
    #[arg(long, default_value_t = 4)]
    max_vars: usize,
    #[arg(long, default_value_t = 1)]
    min_weight: u64,
    #[arg(long, default_value_t = 6)]
    max_weight: u64,
    #[arg(long, default_value_t = 1)]
    min_degree: u64,
    #[arg(long, default_value_t = 20)]
    max_degree: u64,
    #[arg(long)]
    fano: bool,
    #[arg(long)]
    calabi_yau: bool,
    #[arg(long)]
    smooth: bool,
    #[arg(long)]
    quasi_smooth: bool,
    #[arg(long)]
    well_formed: bool,
    #[arg(long)]
    no_cones: bool,
    #[arg(long)]
    gcd_one: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum CheckPredicate {
    #[value(alias = "well_formed")]
    WellFormed,
    #[value(alias = "quasi_smooth")]
    QuasiSmooth,
    Smooth,
    #[value(alias = "linear_cone")]
    LinearCone,
    Fano,
    #[value(alias = "calabi_yau")]
    CalabiYau,
    General,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum PairPredicate {
    Regular,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum LocusPredicate {
    Free,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum ClaimPredicate {
    Holds,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Pairs,
    Families,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Claim {
    #[value(alias = "conjecture_regular")]
    ConjectureRegular,
    #[value(alias = "prop_regular")]
    PropRegular,
    #[value(alias = "lemma_qdiv")]
    LemmaQdiv,
    Nonvanishing,
    Hypersurface,
}

fn run(cli: Cli) -> Result<Reply, Error> {
    match cli.command {
        Command::Check { family, format, assert } => commands::check(&family, format, assert),
        Command::Pair {
            pair,
            h,
            split,
            format,
            assert,
        } => commands::pair(&pair, h, split, format, assert.is_some()),
        Command::Frobenius {
            generators,
            brauer,
            format,
        } => commands::frobenius(&generators, brauer, format),
        Command::Hilbert {
            family,
            up_to,
            at,
            format,
        } => commands::hilbert(&family, up_to, at, format),
        Command::BaseLocus {
            family,
            ell,
            format,
            assert,
        } => commands::base_locus(&family, ell, format, assert.is_some()),
        Command::Enumerate {
            kind,
            bounds,
            format,
            workers,
        } => {
            set_workers(workers)?;
            commands::enumerate(kind, &bounds, format)
        }
        Command::Verify {
            claim,
            q,
            bounds,
            format,
            no_timing,
            assert,
            workers,
        } => {
            set_workers(workers)?;
            commands::verify(claim, q, &bounds, format, no_timing, assert.is_some())
        }
    }
}

fn set_workers(workers: Option<usize>) -> Result<(), Error> {
    let Some(n) = workers else {
        return Ok(());
    };
    if n == 0 {
        return Err(Error::Usage("--workers must be positive".into()));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Error::Usage(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(reply) => {
            print!("{}", reply.stdout);
            if reply.asserted == Some(false) {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::Domain(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}
