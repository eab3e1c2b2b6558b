//! Ordered Ramsey colorings: exact detectors, certificate-producing
//! extractors, explicit lower-bound constructions and exhaustive search.
//!
//! Vertices are `0..n` in their natural order. A coloring assigns red or
//! blue to every k-subset; red is stored as bit 1 in colex order.

pub mod certificate;
pub mod coloring;
pub mod combinatorics;
pub mod construct;
pub mod detect;
pub mod error;
pub mod extract;
pub mod pattern;
pub mod search;

pub use certificate::{Certificate, CertificateRecord, Embedding, Violation, ViolationKind};
pub use coloring::{Color, FileHeader, OrderedColoring};
pub use detect::Target;
pub use error::{Error, Result};
pub use pattern::PatternSpec;

/// Sizes the global rayon pool used by the detectors and the search.
///
/// Has to run before any parallel work; later calls fail.
pub fn configure_threads(threads: usize) -> Result<()> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Error::Resource(format!("cannot start {threads} worker threads: {e}")))
}
