//! Verification toolkit for the Grone-Merris majorization `λ(G) ⊴ d^T(G)`.
//!
//! | Module | Purpose |
//! |--------|---------|
//! | [`partition`] | partitions, conjugation, majorization |
//! | [`graph`], [`graph6`], [`canon`] | simple graphs, interchange, isomorphism |
//! | [`spectra`] | Jacobi eigensolver and Laplacian spectra |
//! | [`gm`] | GM verdicts and eigenvalue-free sufficient conditions |
//! | [`decomposition`] | `(A+B) ∪ C` cuts and certificates |
//! | [`dirichlet`] | (edge, vertex) pairs and the reduction to graphs |
//! | [`enumeration`] | isomorphism classes, trees, sweeps |

pub mod canon;
pub mod decomposition;
pub mod dirichlet;
pub mod enumeration;
pub mod error;
pub mod gm;
pub mod graph;
pub mod graph6;
pub mod partition;
pub mod spectra;

pub use error::{Error, Result};
pub use graph::Graph;
pub use partition::{Partition, RealSeq};
