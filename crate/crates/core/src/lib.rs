//! Edge augmentation on disconnected graphs by elevating zero eigenvalues of
//! the graph Laplacian.
//!
//! The pipeline is: build the Laplacian, pick an orthonormal basis of its
//! null space, raise `h` of the zero eigenvalues to `w_h`, read the per-node
//! degree surplus off the diagonal of the modified Laplacian, and realize the
//! surplus greedily as new edges. Around it sit closed-form realizability
//! bounds, seeded random-graph generators, five community detectors, the
//! evaluation metrics and an experiment harness.

pub mod augment;
pub mod bounds;
pub mod community;
pub mod error;
pub mod experiments;
pub mod graph;
pub mod io;
pub mod metrics;
pub mod randgraph;
pub mod rng;
pub mod spectral;

pub use augment::{augment, AugmentationResult, Augmenter, BeyondKernel, DegreeDelta, Phi};
pub use bounds::BoundReport;
pub use community::{Method, Partition};
pub use error::{Error, Result};
pub use graph::{
    canonical, connected_components, laplacian, ComponentLabeling, Edge, Graph, SymmetricMatrix,
};
pub use metrics::MetricsReport;
pub use rng::SplitMix64;
pub use spectral::{
    eigendecompose, BasisMode, EigenSystem, ElevationBasis, ElevationPlan, KernelBasis,
};
