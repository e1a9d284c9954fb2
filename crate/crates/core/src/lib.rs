//! Continuous-time quantum walks `U(t) = exp(itA)` on weighted and signed
//! graphs, including graphs with semi-infinite path tails.
//!
//! The crate builds graphs and states, evaluates transition amplitudes via
//! dense eigendecomposition (with certified truncation for tails), and
//! provides the structural tools used to predict state transfer: equitable
//! partitions, twin subgraphs and sign switching.

pub mod constructions;
pub mod error;
pub mod experiments;
pub mod graph;
pub mod io;
pub mod partition;
pub mod signed;
pub mod spectral;
pub mod state;
pub mod transfer;
pub mod twins;

pub use constructions::{blow_up, cayley, named_gadget, CayleySpec, Claim, Gadget, GadgetParams, RootedCollection, TailLen};
pub use error::{Error, Result};
pub use experiments::{find_p5_limb, random_graph, random_tree, run_tree_experiment, LimbReport};
pub use graph::{DegreeProfile, TailSpec, WeightedGraph};
pub use partition::{EquitableData, Partition, QuotientGraph};
pub use signed::SignVector;
pub use spectral::{SpectralDecomposition, TruncationCertificate, Walk};
pub use state::PureState;
