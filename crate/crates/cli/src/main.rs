mod commands;
mod report;
mod spec;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use dring_core::DError;
use exactpoly::PolyError;

#[derive(Parser)]
#[command(name = "dring-kit", version, about = "Exact computations with free-operator rings")]
pub struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,
    /// Groebner reduction-step budget (overrides DRINGKIT_BUDGET).
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Largest iterated rank ℓ^n allowed (overrides DRINGKIT_RANK_CAP).
    #[arg(long, global = true)]
    pub rank_cap: Option<usize>,
    /// Seed for randomized checks; recorded in every report.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
pub enum Cmd {
    /// Validate an algebra spec (exit 1 when a law fails).
    CheckAlgebra {
        #[arg(long)]
        algebra: String,
    },
    /// Change basis so that the projection reads the first coordinate.
    Normalize {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fibred product, tensor product or composition of two algebras.
    #[command(group(ArgGroup::new("how").required(true).args(["fibred", "tensor", "compose"])))]
    Product {
        #[arg(long)]
        algebra: String,
        #[arg(long = "with")]
        other: String,
        #[arg(long)]
        fibred: bool,
        #[arg(long)]
        tensor: bool,
        /// `--with` applied on the outside.
        #[arg(long)]
        compose: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The Leibniz rules forced by the structure constants.
    Leibniz {
        #[arg(long)]
        algebra: String,
        /// Operator names for ∂1, ∂2, ... (comma separated).
        #[arg(long, value_delimiter = ',')]
        names: Vec<String>,
    },
    /// Validate a D-ring spec and print the operators on the generators.
    MakeDring {
        #[arg(long)]
        dring: String,
    },
    /// Apply one operator, or the whole of e, to an expression.
    #[command(group(ArgGroup::new("what").required(true).args(["op", "e"])))]
    Apply {
        #[arg(long)]
        dring: String,
        #[arg(long)]
        expr: String,
        #[arg(long)]
        op: Option<usize>,
        #[arg(long)]
        e: bool,
    },
    /// Local decomposition with residue polynomials and associated operators.
    Decompose {
        #[arg(long)]
        algebra: String,
    },
    /// Split a factor's associated operators over an extension.
    SplitEndos {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        factor: usize,
        #[arg(long, default_value = "r")]
        gen: String,
        /// Minimal polynomial of the generator, e.g. "r^2 - 2".
        #[arg(long)]
        minpoly: String,
        /// Roots of the factor's residue polynomial (comma separated).
        #[arg(long)]
        roots: String,
    },
    /// Equations of the prolongation of a variety.
    Prolong {
        #[arg(long)]
        dring: String,
        #[arg(long)]
        variety: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// ∇ of a point; with --variety also checks it lies on the prolongation.
    Nabla {
        #[arg(long)]
        dring: String,
        #[arg(long)]
        point: String,
        #[arg(long)]
        variety: Option<String>,
    },
    /// Apply an associated endomorphism to the coefficients of a variety.
    Twist {
        #[arg(long)]
        dring: String,
        #[arg(long)]
        variety: String,
        #[arg(long)]
        factor: usize,
    },
    /// Is each projection of a subvariety of the prolongation dense in the twist?
    Dominance {
        #[arg(long)]
        dring: String,
        #[arg(long)]
        variety: String,
        /// Subvariety in prolonged coordinates.
        #[arg(long)]
        sub: String,
    },
    /// Linear equations of the order-m jet space at a point.
    Jet {
        #[arg(long)]
        variety: String,
        #[arg(long)]
        point: String,
        #[arg(long)]
        order: u32,
        /// Supplies the coefficient field; defaults to Q.
        #[arg(long)]
        dring: Option<String>,
    },
    /// Operator words of length at most `length`.
    Words {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        length: usize,
        /// Number of local factors; each one past the first adds an
        /// inverted endomorphism to the alphabet.
        #[arg(long, default_value_t = 1)]
        factors: usize,
    },
    /// Transcendence degrees of the word values.
    Dims {
        #[arg(long)]
        dring: String,
        #[arg(long)]
        elements: String,
        #[arg(long)]
        length: usize,
    },
    /// The iterated algebra at level n.
    Iterate {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The iterated expansion of an expression.
    #[command(name = "En", alias = "en")]
    En {
        #[arg(long)]
        dring: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        expr: String,
    },
    /// Check the iterativity identities on sample expressions.
    Iterativity {
        #[arg(long)]
        dring: String,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// Explicit samples; random polynomials are drawn when absent.
        #[arg(long)]
        expr: Vec<String>,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 3)]
        degree: u32,
    },
    /// Is the level-n expansion of an expression a p-th power?
    PthRoot {
        #[arg(long)]
        dring: String,
        #[arg(long)]
        expr: String,
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    /// The characteristic-p obstruction on F_p[η]/(η^(length+1)).
    CharpDemo {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        length: usize,
        #[arg(long)]
        m: usize,
        /// Coordinates of ε (default η).
        #[arg(long)]
        epsilon: Option<String>,
    },
}

fn is_budget(err: &anyhow::Error) -> bool {
    err.chain().any(|c| {
        matches!(c.downcast_ref::<DError>(), Some(DError::RankBudget { .. } | DError::FactorBudget(_)))
            || matches!(c.downcast_ref::<DError>(), Some(DError::Poly(PolyError::BudgetExceeded { .. })))
            || matches!(c.downcast_ref::<PolyError>(), Some(PolyError::BudgetExceeded { .. }))
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budget = cli.budget.or_else(|| std::env::var("DRINGKIT_BUDGET").ok().and_then(|s| s.parse().ok()));
    if let Some(b) = budget {
        exactpoly::groebner::set_default_budget(b);
    }
    if let Some(cap) = cli.rank_cap {
        std::env::set_var("DRINGKIT_RANK_CAP", cap.to_string());
    }
    match commands::run(&cli) {
        Ok(mut rep) => {
            rep.set("seed", cli.seed);
            match cli.format {
                Format::Text => {
                    for l in &rep.text {
                        println!("{l}");
                    }
                }
                Format::Json => println!("{}", serde_json::to_string_pretty(&rep.json).unwrap()),
            }
            ExitCode::from(rep.negative as u8)
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(if is_budget(&err) { 3 } else { 2 })
        }
    }
}
