//! Qubit states and channels in Kraus, T-matrix and Choi form.

pub mod choi;
pub mod kraus;
pub mod pauli;
pub mod presets;
pub mod serial;
pub mod state;
pub mod tmatrix;

pub use choi::ChoiMatrix;
pub use kraus::{Channel, CpMap, DualMap, KrausSet};
pub use pauli::{lambdas_to_probs, probs_to_lambdas, PauliChannel};
pub use serial::ChannelSpec;
pub use state::{bloch_to_density, density_to_bloch, DensityMatrix};
pub use tmatrix::{kraus_from_tmatrix, TMatrix};
