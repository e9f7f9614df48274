use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod report;

use report::Report;

/// Gorenstein homological algebra over finite-dimensional algebras.
#[derive(Parser, Debug)]
#[command(name = "gorkit", version, about)]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

/// Settings shared by every subcommand. Flags take precedence over the
/// environment, which takes precedence over the defaults.
#[derive(Args, Debug, Clone)]
pub(crate) struct Config {
    /// Field prime; overrides the prime recorded in algebra files.
    #[arg(long, global = true, env = "GORKIT_PRIME")]
    pub(crate) prime: Option<u64>,
    /// Resolution length cap for pd/id and certification.
    #[arg(long, global = true, env = "GORKIT_CAP", default_value_t = gorkit::resolve::DEFAULT_CAP)]
    pub(crate) cap: usize,
    /// Half-width of the complete-resolution window.
    #[arg(long, global = true, default_value_t = gorkit::gorenstein::DEFAULT_WINDOW)]
    pub(crate) window: usize,
    /// Random trials for probabilistic isomorphism and invertibility tests.
    #[arg(long, global = true, default_value_t = gorkit::modcat::DEFAULT_TRIALS)]
    pub(crate) trials: usize,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 1)]
    pub(crate) seed: u64,
    /// Emit a machine-readable JSON report.
    #[arg(long, global = true)]
    pub(crate) json: bool,
    /// Treat capped or probabilistic verdicts as failures (exit 5).
    #[arg(long, global = true)]
    pub(crate) strict: bool,
}

#[derive(Subcommand, Debug)]
pub(crate) enum Command {
    /// Print the path basis of an algebra.
    Basis { algebra: PathBuf },
    /// Dimension of Ext^i(M, N).
    Ext {
        algebra: PathBuf,
        m: PathBuf,
        n: PathBuf,
        #[arg(long)]
        degree: usize,
    },
    /// Projective dimension.
    Pd { algebra: PathBuf, m: PathBuf },
    /// Injective dimension.
    Id { algebra: PathBuf, m: PathBuf },
    /// Certify the Iwanaga-Gorenstein property within the cap.
    IgCertify { algebra: PathBuf },
    /// Whether a module is Gorenstein projective.
    GpTest { algebra: PathBuf, m: PathBuf },
    /// Gorenstein dimension.
    Gdim { algebra: PathBuf, m: PathBuf },
    /// Gorenstein extension group GE^k(X, Y).
    Gext {
        algebra: PathBuf,
        x: PathBuf,
        y: PathBuf,
        #[arg(long)]
        degree: usize,
    },
    /// GE^k(X, Y) from the explicit proper resolution.
    GextDirect {
        algebra: PathBuf,
        x: PathBuf,
        y: PathBuf,
        #[arg(long)]
        degree: usize,
    },
    /// Tate cohomology over a range of degrees.
    Tate {
        algebra: PathBuf,
        x: PathBuf,
        y: PathBuf,
        #[arg(long, allow_hyphen_values = true, default_value_t = -3)]
        from: isize,
        #[arg(long, allow_hyphen_values = true, default_value_t = 3)]
        to: isize,
    },
    /// Check the long exact sequence linking GE, Ext and Tate cohomology.
    AmCheck { algebra: PathBuf, x: PathBuf, y: PathBuf },
    /// The Nakayama functor applied to a module.
    Nakayama { algebra: PathBuf, m: PathBuf },
    /// Verify a Frobenius extension and its functor identities.
    FrobCheck { extension: PathBuf },
    /// Transfer of Gorenstein data along a Frobenius extension.
    TransferCheck {
        extension: PathBuf,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        /// Largest total dimension of sampled modules.
        #[arg(long, default_value_t = 8)]
        dim_cap: usize,
    },
    /// Engine/oracle agreement over a generated corpus.
    Selftest {
        #[arg(long)]
        algebra: String,
        /// Largest total dimension of corpus modules.
        #[arg(long)]
        dim_cap: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let mut report = Report::new(argv);
    if let Err(f) = commands::run(&cli.command, &cli.config, &mut report) {
        report.fail(f);
    }
    print!("{}", report.render(cli.config.json, cli.config.strict));
    ExitCode::from(report.exit_code(cli.config.strict) as u8)
}
