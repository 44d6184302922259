use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "sectorfact",
    version,
    about = "Exact validators for orthogonal categories, double-cone geometry and sector nets"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Write the JSON report to this file; stdout gets the rendered form.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// JSON object mapping check ids to citation strings attached to each check.
    #[arg(long, global = true, value_name = "FILE")]
    pub paper_ref: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Category axioms and orthogonality closure.
    ValidateCategory {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        /// Also require filteredness, orthocomplements and the extension property.
        #[arg(long)]
        assumptions: bool,
    },
    /// Group action by orthogonal functors.
    ValidateAction {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
    },
    #[command(subcommand)]
    Operad(OperadCmd),
    #[command(subcommand)]
    Geometry(GeometryCmd),
    #[command(subcommand)]
    Homotopy(HomotopyCmd),
    #[command(subcommand)]
    Sectors(SectorsCmd),
    #[command(subcommand)]
    Report(ReportCmd),
    /// Print a bundled input file.
    Fixture {
        /// Omit to list the available names.
        name: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum OperadCmd {
    /// Operad axioms, exhaustively up to the arity bound.
    Check {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[arg(long, default_value_t = 3)]
        bound: usize,
        /// Include the enumerated operations in the report.
        #[arg(long)]
        dump: bool,
    },
    /// Algebra axioms for the sector or local-algebra model of a net.
    Algebra {
        #[arg(long, value_name = "FILE")]
        net: PathBuf,
        #[arg(long, value_name = "FILE")]
        family: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = AlgebraModel::Sectors)]
        model: AlgebraModel,
        #[arg(long, default_value_t = 3)]
        bound: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlgebraModel {
    Sectors,
    Net,
}

#[derive(Subcommand, Debug)]
pub enum GeometryCmd {
    Disjoint {
        #[arg(long, value_name = "FILE")]
        a: PathBuf,
        #[arg(long, value_name = "FILE")]
        b: PathBuf,
        /// Treat a different answer as a violation.
        #[arg(long)]
        expect: Option<bool>,
    },
    Include {
        #[arg(long, value_name = "FILE")]
        inner: PathBuf,
        #[arg(long, value_name = "FILE")]
        outer: PathBuf,
        #[arg(long)]
        expect: Option<bool>,
    },
    /// Shadow of a cone, the projection inequality on a disjoint pair, or a
    /// random campaign.
    Project {
        #[arg(long, value_name = "FILE", conflicts_with_all = ["a", "b", "cases"])]
        cone: Option<PathBuf>,
        #[arg(long, value_name = "FILE", requires = "b", conflicts_with = "cases")]
        a: Option<PathBuf>,
        #[arg(long, value_name = "FILE", requires = "a")]
        b: Option<PathBuf>,
        #[arg(long)]
        cases: Option<u64>,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Extension witness for one cospan or a random campaign.
    Witness {
        #[arg(long, value_name = "FILE", requires_all = ["u2", "utilde"], conflicts_with = "cases")]
        u1: Option<PathBuf>,
        #[arg(long, value_name = "FILE", requires = "u1")]
        u2: Option<PathBuf>,
        #[arg(long, value_name = "FILE", requires = "u1")]
        utilde: Option<PathBuf>,
        #[arg(long)]
        cases: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = sectorfact_core::minkowski::DEFAULT_RETRY_BUDGET)]
        retry_budget: u32,
    },
}

#[derive(Subcommand, Debug)]
pub enum HomotopyCmd {
    /// Certify the straight-line homotopy to the Cauchy slice.
    Verify {
        /// Fixed cone; random cones of dimension 2 to 4 when omitted.
        #[arg(long, value_name = "FILE", requires = "m")]
        cone: Option<PathBuf>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = 1000)]
        cases: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Include per-pair certificates.
        #[arg(long)]
        audit: bool,
    },
    /// Lift then project spatial configurations.
    Section {
        #[arg(long, default_value_t = 500)]
        cases: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args, Debug, Clone)]
pub struct NetArgs {
    #[arg(long, value_name = "FILE")]
    pub net: PathBuf,
    /// Sector family; the bundled qubit family is used on full qubit nets
    /// when omitted.
    #[arg(long, value_name = "FILE")]
    pub family: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum SectorsCmd {
    Haag {
        #[arg(long, value_name = "FILE")]
        net: PathBuf,
        /// `a-b`, a single site or a region id; all regions when omitted.
        #[arg(long)]
        region: Option<String>,
    },
    Perp {
        #[command(flatten)]
        net: NetArgs,
    },
    Diamond {
        #[command(flatten)]
        net: NetArgs,
        /// Comma-separated sector names, multiplied left to right.
        #[arg(long, value_delimiter = ',', required = true)]
        sectors: Vec<String>,
        #[arg(long)]
        region: Option<String>,
    },
    Transport {
        #[command(flatten)]
        net: NetArgs,
        #[arg(long)]
        sector: String,
        #[arg(long)]
        to: String,
    },
    Equivariance {
        #[command(flatten)]
        net: NetArgs,
    },
    /// Haag and orthogonality prechecks, then the algebra and monoidality
    /// checks of the sector structure maps.
    Theorem311 {
        #[command(flatten)]
        net: NetArgs,
        #[arg(long, default_value_t = 3)]
        bound: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum ReportCmd {
    /// Text rendering of a saved report.
    Render {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
    },
}
