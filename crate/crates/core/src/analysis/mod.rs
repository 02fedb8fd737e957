//! Verification layer: endpoint certificates, greedy orbits, density
//! witnesses, Hausdorff enclosures and the embedding check.

pub mod density;
pub mod embedding;
pub mod endpoints;
pub mod greedy;
pub mod hausdorff;

pub use density::{cutoff_index, density_witness, DensityConfig, DensityWitness};
pub use embedding::{verify_embedding, CheckResult, EmbeddingConfig, EmbeddingReport};
pub use endpoints::{classify_endpoint, CertificateKind, EndpointCertificate, EndpointVerdict};
pub use greedy::{
    greedy_sequence, greedy_until, oracle_best_sequence, Greedy, GreedyTrace,
    DEFAULT_ORACLE_MAX_LEN,
};
pub use hausdorff::{directed_hausdorff, hausdorff, HausdorffBounds};
