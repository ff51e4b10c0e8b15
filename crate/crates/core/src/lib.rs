//! Fibonacci-chain quasicrystals and their aperiodic algebras, in exact
//! golden-ratio arithmetic.
//!
//! The crate builds up in layers:
//!
//! * [`golden`] — the scalar type: exact elements (p + qτ)/d of Q(√5) with
//!   the Galois star map, total order and exact floor;
//! * [`chain`] — Fibonacci chains F(α, β) by explicit formula and window
//!   membership, the substitution word, and quasiaddition;
//! * [`algebra`] — sparse formal linear combinations over generators and an
//!   exact span solver;
//! * [`lie`] — the quasicrystal Lie algebra on the defect chain, the
//!   aperiodic Witt algebra and its Virasoro extension, with identity
//!   verifiers;
//! * [`jordan`] — the aperiodic Jordan algebra, its finite truncations and
//!   structure-constant export;
//! * [`tables`] — regeneration of the published tables from first
//!   principles;
//! * [`verify`] — exhaustive verification suites emitting verdict
//!   documents.

pub mod algebra;
pub mod chain;
pub mod golden;
pub mod jordan;
pub mod lie;
pub mod tables;
pub mod verify;

pub use algebra::{AlgebraElement, BasisKey};
pub use chain::{ChainPoint, ChainSpec};
pub use golden::GoldenRational;
pub use jordan::{JordanSpec, StructureConstantTable, TruncationMode, TruncationSpec};
pub use lie::{CentralSign, LieAlgebraSpec};
pub use tables::{Table, TableId, TauStyle};
pub use verify::Verdict;
