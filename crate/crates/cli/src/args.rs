use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

pub const DEFAULT_SEED: u64 = switchlab_validation::DEFAULT_SEED;

#[derive(Parser, Debug)]
#[command(name = "switchlab", version, about = "Qubit channels through the quantum switch")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// RNG seed (64-bit unsigned). Falls back to $SWITCHLAB_SEED.
    #[arg(long, global = true, env = "SWITCHLAB_SEED", default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    /// Number of samples or pairs for scans; each command documents its default.
    #[arg(long, global = true)]
    pub samples: Option<u64>,

    /// Worker threads for parallel scans (default: available parallelism).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    /// Entanglement-breaking, IBC and coherence-breaking verdicts plus switch usefulness.
    Classify(ChannelArgs),
    /// Switch branches of a channel and the corrected effective channel.
    Switch(SwitchArgs),
    /// QRAC success of the corrected z-contracting channel over λ₃ ∈ [0, 1].
    Qrac(SweepArgs),
    /// Steering witness F of the corrected z-contracting channel over λ₃ ∈ [0, 1].
    Steer(SweepArgs),
    /// Effective T-matrix of the coherence-breaking channel with a controlled unitary.
    Coherence(CoherenceArgs),
    /// Perfect channel with a depolarised control, swept over the noise t ∈ [-1/3, 1].
    Noisy(NoisyArgs),
    /// Monte-Carlo scans of channel space.
    Scan {
        #[command(subcommand)]
        kind: ScanKind,
    },
    /// Run the acceptance suite; exit code 4 if any criterion fails.
    Selftest,
    /// Re-run the command recorded in an output file and compare payloads byte for byte.
    #[serde(skip)]
    Replay {
        /// File previously written with --out.
        file: std::path::PathBuf,
    },
}

#[derive(Args, Debug, Clone, Default, Serialize, Deserialize)]
pub struct ChannelArgs {
    /// Pauli channel by its contraction factors "l1,l2,l3" (each in [-1, 1], inside the CP tetrahedron).
    #[arg(long, allow_hyphen_values = true, group = "channel")]
    pub pauli: Option<String>,

    /// T-matrix as 16 comma-separated reals, row-major, first row "1,0,0,0".
    #[arg(long, allow_hyphen_values = true, group = "channel")]
    pub tmatrix: Option<String>,

    /// Kraus operators as JSON: [{"re":[4 reals],"im":[4 reals]}, ...], row-major 2x2.
    #[arg(long, group = "channel")]
    pub kraus: Option<String>,

    /// Named channel: identity, perfect, obs1, phi:<λ₃ in [-1,1]>, depolarizing:<t in [-1/3,1]>.
    #[arg(long, group = "channel")]
    pub preset: Option<String>,
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
pub struct SwitchArgs {
    #[command(flatten)]
    pub channel: ChannelArgs,

    /// Control state as a Bloch vector "x,y,z" with norm ≤ 1 (default |+⟩ = 1,0,0).
    #[arg(long, allow_hyphen_values = true, default_value = "1,0,0")]
    pub control: String,
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
pub struct SweepArgs {
    /// Number of grid intervals on [0, 1] (dimensionless; step = 1/steps).
    #[arg(long, default_value_t = 1000)]
    pub steps: usize,
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
pub struct CoherenceArgs {
    /// Population contraction λ; requires |λ| + |t| ≤ 1.
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.5)]
    pub lambda: f64,
    /// Population shift t; requires |λ| + |t| ≤ 1.
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.1)]
    pub t: f64,
    /// Unitary angle θ in radians.
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub theta: f64,
    /// Unitary phase φ₁ in radians.
    #[arg(long, allow_hyphen_values = true, default_value_t = std::f64::consts::FRAC_PI_2)]
    pub phi1: f64,
    /// Unitary phase φ₂ in radians.
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub phi2: f64,
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
pub struct NoisyArgs {
    /// Number of grid intervals on t ∈ [-1/3, 1].
    #[arg(long, default_value_t = 100)]
    pub steps: usize,
}

#[derive(Subcommand, Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanKind {
    /// Branch images of uniform Pauli EBCs (--samples, default 100000).
    Octahedron {
        /// Branch to map through.
        #[arg(long, value_enum, default_value_t = BranchArg::Plus)]
        branch: BranchArg,
    },
    /// Concatenation census of switch-useless EBC pairs (--samples pairs, default 1000000).
    Census {
        /// Channel family: pauli (l1,l2,l3) or nonunital (k1,k3,t).
        #[arg(long, default_value = "pauli")]
        family: String,
    },
    /// Search for completely useless pairs whose composition is useful (--samples pairs, default 1000000).
    Conjecture {
        /// Channel family: pauli or nonunital.
        #[arg(long, default_value = "pauli")]
        family: String,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BranchArg {
    Plus,
    Minus,
}

impl Command {
    /// Space-separated command path used in the manifest.
    pub fn name(&self) -> String {
        match self {
            Command::Classify(_) => "classify".into(),
            Command::Switch(_) => "switch".into(),
            Command::Qrac(_) => "qrac".into(),
            Command::Steer(_) => "steer".into(),
            Command::Coherence(_) => "coherence".into(),
            Command::Noisy(_) => "noisy".into(),
            Command::Scan { kind } => match kind {
                ScanKind::Octahedron { .. } => "scan octahedron".into(),
                ScanKind::Census { .. } => "scan census".into(),
                ScanKind::Conjecture { .. } => "scan conjecture".into(),
            },
            Command::Selftest => "selftest".into(),
            Command::Replay { .. } => "replay".into(),
        }
    }
}
