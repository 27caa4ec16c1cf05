//! `toperad`: runs the library's constructions and checkers on fixture files.
//!
//! Exit status is 0 when every check passes, 1 when an axiom or validation
//! check fails, and 2 on malformed input or usage errors.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "toperad", version, about = "Finite G-sets, span categories, discrete T-operads and indexing systems")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args, Clone)]
pub struct Opts {
    /// Fixture group: one of the names printed by `groups list`.
    #[arg(long, global = true)]
    pub group: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Bound on |U| for bounded bases and on G-set sizes in checks.
    #[arg(long, global = true, default_value_t = 4)]
    pub max_size: usize,
    /// Bound on arities.
    #[arg(long, global = true, default_value_t = 3)]
    pub max_n: usize,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Bound on apex size when enumerating Burnside hom-sets.
    #[arg(long, global = true)]
    pub bound_apex: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Cmd {
    /// Fixture groups.
    #[command(subcommand)]
    Groups(GroupsCmd),
    /// G-sets and maps between them, read from JSON.
    #[command(subcommand)]
    Gset(GsetCmd),
    /// Morphisms of the base span category.
    #[command(subcommand)]
    Span(SpanCmd),
    /// Discrete T-operads.
    #[command(subcommand)]
    Operad(OperadCmd),
    /// Colored operads given by multimorphism sets.
    #[command(subcommand)]
    Colored(ColoredCmd),
    /// Indexing systems.
    #[command(subcommand)]
    Indexing(IndexingCmd),
    /// Multiplication table of the Burnside ring of `--group`.
    Burnside,
    /// Graph subgroup classes of G × Σn for n ≤ `--max-n`.
    Graphsub,
}

#[derive(Subcommand)]
enum GroupsCmd {
    /// The fixture groups in their fixed order.
    List,
    /// Subgroup lattice of `--group` and its atomic-orbital check.
    Show,
}

#[derive(Subcommand)]
enum GsetCmd {
    /// Orbit decomposition of a G-set.
    Orbits { file: PathBuf },
    /// Pullback of two maps with a common target.
    Pullback { f: PathBuf, g: PathBuf },
}

#[derive(Subcommand)]
enum SpanCmd {
    /// Hom-set between two arrow objects, or with no files the whole bounded
    /// base over `--group` with |U| ≤ `--max-size`.
    Hom { source: Option<PathBuf>, target: Option<PathBuf> },
    /// Composite of two spans, `first` then `second`.
    Compose { first: PathBuf, second: PathBuf },
    /// Inert–active factorization of a span.
    Factorize { file: PathBuf },
}

#[derive(Subcommand)]
enum OperadCmd {
    /// Full axiom suite on an operad instance.
    Check { file: PathBuf },
    /// The trivial operad over the bounded base of `--group`.
    Triv,
    /// Envelope of the trivial operad, compared with graph subgroups for
    /// arities up to `--max-n`.
    Envelope,
    /// Multimorphism set over base morphism `alpha: a → b` from `x` to `y`.
    Mulset {
        /// Operad instance in JSON.
        file: PathBuf,
        /// Source object of the base.
        a: usize,
        /// Target object of the base.
        b: usize,
        /// Position of `alpha` in the base hom-set `a → b`.
        alpha: usize,
        /// Object of the operad over `a`.
        x: usize,
        /// Object of the operad over `b`.
        y: usize,
    },
}

#[derive(Subcommand)]
enum ColoredCmd {
    /// Colored axiom suite over G-sets of size ≤ `--max-size`.
    Check { file: PathBuf },
    /// Operadic nerve over the base with |U| ≤ `--max-size`, and its axiom suite.
    Nerve { file: PathBuf },
}

#[derive(Subcommand)]
enum IndexingCmd {
    /// Validates a candidate system.
    Check { file: PathBuf },
    /// The least system containing the given pairs.
    Closure { file: PathBuf },
    /// Every system over `--group` with its Hasse diagram.
    Enumerate,
    /// Each system over `--group` in its other presentations, with roundtrips.
    Dict,
}

/// What a command produced: output for standard output and whether its checks passed.
pub struct Outcome {
    pub output: String,
    pub passed: bool,
}

pub enum Failure {
    Input(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.to_string())
    }
}

fn run(cli: Cli) -> Result<Outcome, Failure> {
    use commands as c;
    let o = &cli.opts;
    match cli.cmd {
        Cmd::Groups(GroupsCmd::List) => c::groups_list(o),
        Cmd::Groups(GroupsCmd::Show) => c::groups_show(o),
        Cmd::Gset(GsetCmd::Orbits { file }) => c::gset_orbits(o, &file),
        Cmd::Gset(GsetCmd::Pullback { f, g }) => c::gset_pullback(o, &f, &g),
        Cmd::Span(SpanCmd::Hom { source, target }) => c::span_hom(o, source.as_deref(), target.as_deref()),
        Cmd::Span(SpanCmd::Compose { first, second }) => c::span_compose(o, &first, &second),
        Cmd::Span(SpanCmd::Factorize { file }) => c::span_factorize(o, &file),
        Cmd::Operad(OperadCmd::Check { file }) => c::operad_check(o, &file),
        Cmd::Operad(OperadCmd::Triv) => c::operad_triv(o),
        Cmd::Operad(OperadCmd::Envelope) => c::operad_envelope(o),
        Cmd::Operad(OperadCmd::Mulset { file, a, b, alpha, x, y }) => c::operad_mulset(o, &file, [a, b, alpha, x, y]),
        Cmd::Colored(ColoredCmd::Check { file }) => c::colored_check(o, &file),
        Cmd::Colored(ColoredCmd::Nerve { file }) => c::colored_nerve(o, &file),
        Cmd::Indexing(IndexingCmd::Check { file }) => c::indexing_check(o, &file),
        Cmd::Indexing(IndexingCmd::Closure { file }) => c::indexing_closure(o, &file),
        Cmd::Indexing(IndexingCmd::Enumerate) => c::indexing_enumerate(o),
        Cmd::Indexing(IndexingCmd::Dict) => c::indexing_dict(o),
        Cmd::Burnside => c::burnside(o),
        Cmd::Graphsub => c::graphsub(o),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{}", out.output);
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
