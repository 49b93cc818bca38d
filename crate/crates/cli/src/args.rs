use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use diho::DEFAULT_MAX_STATES;

#[derive(Debug, Parser)]
#[command(name = "diho", version, about = "Homotopy of finite directed graphs")]
pub struct Cli {
    /// Cap on generated maps per search.
    #[arg(long, global = true, env = "DIHO_MAX_STATES", default_value_t = DEFAULT_MAX_STATES)]
    pub max_states: usize,

    /// Cap on the length of breadth-first homotopy searches.
    #[arg(long, global = true)]
    pub max_len: Option<usize>,

    /// Print nothing except requested data on stdout.
    #[arg(long, short, global = true)]
    pub quiet: bool,

    #[command(subcommand)]
    pub command: Command,
}

/// Where a constructed digraph goes. Without `--out` it is printed.
#[derive(Debug, Args)]
pub struct Output {
    #[arg(long, short)]
    pub out: Option<PathBuf>,

    /// Also write a Graphviz rendering.
    #[arg(long)]
    pub dot: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum CofiberStyle {
    Paper,
    Categorical,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Glue {
    Im,
    Base,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Box product.
    Box {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Tensor product.
    Tensor {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Union of two digraphs on shared labels.
    Union {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Intersection of two digraphs on shared labels.
    Intersect {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Disjoint union, the k-th part tagged `Pair(k, -)`.
    Disjoint {
        #[arg(required = true)]
        parts: Vec<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Crush a sub-digraph to `Star`.
    Quotient {
        g: PathBuf,
        x: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Identify vertices pairwise, `--pair a=b`.
    Identify {
        g: PathBuf,
        #[arg(long = "pair", value_parser = parse_pair)]
        pairs: Vec<(String, String)>,
        #[command(flatten)]
        output: Output,
    },
    /// Mapping cylinder of a map.
    Cylinder {
        f: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Extended mapping cylinder.
    Emcylinder {
        f: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Cone over a digraph.
    Cone {
        g: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Extended cone over a sub-digraph `x` of `h`.
    Econe {
        x: PathBuf,
        h: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Cofiber of a map.
    Cofiber {
        #[arg(long, value_enum, default_value_t = CofiberStyle::Paper)]
        style: CofiberStyle,
        f: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Reduced mapping cylinder.
    Reduced {
        f: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Mapping tube of two maps with a common signature.
    Tube {
        f: PathBuf,
        g: PathBuf,
        /// Include the codomain, giving `H ∪ MT`.
        #[arg(long)]
        with_codomain: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Mapping cylinder and cofiber glued along the base.
    Gat {
        #[arg(long, value_enum, default_value_t = Glue::Im)]
        glue: Glue,
        f: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Decide `f ≃ g`.
    Homotopic {
        f: PathBuf,
        g: PathBuf,
        /// Write the certificate here.
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Homotopy classes of maps `A -> B`.
    Classes { a: PathBuf, b: PathBuf },
    /// Decide `A ≃ B`.
    Equivalent {
        a: PathBuf,
        b: PathBuf,
        /// Write `on_domain.hty` and `on_codomain.hty` here.
        #[arg(long)]
        cert_dir: Option<PathBuf>,
    },
    /// Decide whether a digraph is contractible.
    Contractible {
        g: PathBuf,
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Search for an extension of a homotopy on a sub-digraph.
    Hep {
        inst: PathBuf,
        /// Allow this many extra steps that are stationary on the sub-digraph.
        #[arg(long, default_value_t = 0)]
        allow_longer: usize,
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// List or count the digraph maps `A -> B`.
    Maps {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        count: bool,
    },
    /// Inverse limit of a finite system.
    Limit { sys: PathBuf },
    /// Cofinality and the restriction map between limits.
    Cofinal { sub: PathBuf, sys: PathBuf },
    /// Closure category of a finite system.
    Cbar { sys: PathBuf },
    /// Representability stages.
    Brown {
        #[command(subcommand)]
        command: BrownCommand,
    },
    /// Audits of the representable functor `[-, Z]`.
    Audit {
        #[command(subcommand)]
        command: AuditCommand,
    },
    /// Run the built-in fixtures whose identifier contains `filter`.
    Verify {
        filter: Option<String>,
        #[arg(long)]
        cert_dir: Option<PathBuf>,
    },
    /// Graphviz rendering of a digraph.
    Dot {
        g: PathBuf,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum BrownCommand {
    /// Build stage 1 from `u0: Y0 -> Z` and the test digraphs.
    Base {
        #[arg(long)]
        target: PathBuf,
        /// Map file for `u0`; the empty digraph when omitted.
        #[arg(long)]
        u0: Option<PathBuf>,
        #[arg(long, num_args = 0..)]
        tests: Vec<PathBuf>,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Attach mapping tubes to the next stage.
    Step {
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        stage: PathBuf,
        /// Replace the stage's test digraphs.
        #[arg(long, num_args = 0..)]
        tests: Option<Vec<PathBuf>>,
        #[arg(long, short)]
        out: Option<PathBuf>,
        #[arg(long)]
        cert_dir: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum AuditCommand {
    /// `[⨆ parts, Z]` against `∏ [part, Z]`.
    Additivity {
        #[arg(long)]
        target: PathBuf,
        #[arg(required = true)]
        parts: Vec<PathBuf>,
    },
    /// Restriction from `[G1 ∪ G2, Z]` to the fibered product.
    Mv {
        #[arg(long)]
        target: PathBuf,
        g1: PathBuf,
        g2: PathBuf,
    },
    /// Exactness at `[H, Z]` for `f: G -> H`, or for both steps of the
    /// chain `G ⊔ H -> G ∪ H -> C -> C'` with `--chain G H`.
    Cofiber {
        #[arg(long)]
        target: PathBuf,
        #[arg(required_unless_present = "chain")]
        f: Option<PathBuf>,
        #[arg(long, num_args = 2, value_names = ["G", "H"], conflicts_with = "f")]
        chain: Option<Vec<PathBuf>>,
    },
}

fn parse_pair(s: &str) -> Result<(String, String), String> {
    s.split_once('=')
        .map(|(a, b)| (a.to_owned(), b.to_owned()))
        .ok_or_else(|| format!("expected `a=b`, got `{s}`"))
}
