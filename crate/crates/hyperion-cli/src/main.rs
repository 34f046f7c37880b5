use std::io::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use hyperion_cli::{run, Command as Dispatch};

/// Exact algebra over hyperfields: set-valued arithmetic, polynomials,
/// roots and multiplicities, and constructive tropical lifting.
///
/// The equality tolerance (default 1e-9) can be overridden through the
/// HYPERION_TOL environment variable.
#[derive(Parser)]
#[command(name = "hyperion", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate a polynomial at a point; exit 1 when the point is not a root
    Eval {
        /// Hyperfield name: K, S, T, P, TC, Qtriv
        hyperfield: String,
        /// Polynomial text, e.g. "mag1@90 X1^2 + mag1@120 X1 + mag1@180"
        polynomial: String,
        /// Point literal; coordinates split on ';' (or ',' without ';')
        #[arg(long)]
        at: String,
    },
    /// Enumerate roots: Newton polygon over T, exhaustive scan over K and S,
    /// tropicalize-then-lift over TC
    Roots {
        hyperfield: String,
        polynomial: String,
    },
    /// Root multiplicity: recursive factorization over K and S, lattice
    /// length of the Newton-polygon edge over T
    Mult {
        hyperfield: String,
        polynomial: String,
        #[arg(long)]
        at: String,
    },
    /// Push a polynomial forward along a homomorphism (eta, sgn, ph,
    /// `toK:<H>`, `id:<H>`)
    Push {
        homomorphism: String,
        polynomial: String,
    },
    /// Lift a tropical root of the tropicalization back to a certified
    /// complex root (univariate)
    Lift {
        hyperfield: String,
        polynomial: String,
        /// Tropical root literal, e.g. "0" or "-inf"
        #[arg(long)]
        root: String,
    },
    /// Full multivariate lift: restrict to a monomial curve, lift, certify
    Kapranov {
        hyperfield: String,
        polynomial: String,
        /// Tropical point, e.g. "(0,0)"
        #[arg(long)]
        root: String,
    },
    /// Verify the hyperfield axioms, exhaustively for finite carriers
    Axioms {
        hyperfield: String,
        /// Sampled triples for infinite carriers
        #[arg(long, default_value_t = 10_000)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Verify the homomorphism laws
    Homcheck {
        homomorphism: String,
        #[arg(long, default_value_t = 10_000)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Multiplicity-bound, inheritance and push-forward sweeps (K, S),
    /// the TC witness, or the non-lifting counterexamples (rac)
    Conjectures {
        /// K, S, TC, T, P, Qtriv, or rac
        target: String,
        #[arg(long, default_value_t = 3)]
        degree_max: u32,
    },
    /// Render complex hyperaddition of element pairs ("z;w") as SVG
    Regions {
        /// Pairs like "mag1@0;mag1@180"
        pairs: Vec<String>,
        /// Output file; stdout when omitted
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn main() {
    let cli = Cli::parse();
    let tolerance = std::env::var("HYPERION_TOL")
        .ok()
        .and_then(|v| v.parse::<f64>().ok())
        .unwrap_or_else(hyperion::default_tolerance::<f64>);
    let dispatch = match cli.command {
        Cmd::Eval { hyperfield, polynomial, at } => {
            Dispatch::Eval { hyperfield, polynomial, at }
        }
        Cmd::Roots { hyperfield, polynomial } => Dispatch::Roots { hyperfield, polynomial },
        Cmd::Mult { hyperfield, polynomial, at } => {
            Dispatch::Mult { hyperfield, polynomial, at }
        }
        Cmd::Push { homomorphism, polynomial } => {
            Dispatch::Push { homomorphism, polynomial }
        }
        Cmd::Lift { hyperfield, polynomial, root } => {
            Dispatch::Lift { hyperfield, polynomial, root }
        }
        Cmd::Kapranov { hyperfield, polynomial, root } => {
            Dispatch::Kapranov { hyperfield, polynomial, root }
        }
        Cmd::Axioms { hyperfield, budget, seed } => {
            Dispatch::Axioms { hyperfield, budget, seed }
        }
        Cmd::Homcheck { homomorphism, budget, seed } => {
            Dispatch::HomCheck { homomorphism, budget, seed }
        }
        Cmd::Conjectures { target, degree_max } => {
            Dispatch::Conjectures { target, degree_max }
        }
        Cmd::Regions { pairs, output } => Dispatch::Regions { pairs, output },
    };
    let outcome = run(&dispatch, tolerance);
    print!("{}", outcome.stdout);
    let _ = std::io::stdout().flush();
    for note in &outcome.notes {
        eprintln!("{note}");
    }
    std::process::exit(outcome.exit_code);
}
