//! Matrix-vector polynomial multiplication for Kyber in the NTT domain.
//!
//! Kyber's modulus q = 3329 admits no 256-point negacyclic NTT, so each
//! length-256 polynomial is split into `L` polyphase components that are
//! transformed separately with a 128- or 64-point NTT. Multiplying two such
//! split operands is then a small parallel FIR filter in which the delay
//! element becomes a pointwise product with the precomputed vector `NTT(y)`.
//! Fast filter structures cut the number of pointwise products, and in the
//! transposed form the `NTT(y)` product moves onto the vector side where all
//! `k` entries of a matrix row can share it.
//!
//! Every countable modular operation goes through an [`OpCounter`], so each
//! pipeline reports exact multiplication and addition tallies.
//!
//! ```
//! use kyber_matvec::{random_instance, matvec_proposed, matvec_schoolbook, Form, Parallelism, StageCounters, TableSet};
//!
//! let tables = TableSet::new();
//! let inst = random_instance(2, 42).unwrap();
//! let mut ctx = StageCounters::new();
//! let p = matvec_proposed(&inst.matrix, &inst.vector, Parallelism::Two, Form::Transposed, &tables, &mut ctx).unwrap();
//! assert_eq!(ctx.matvec.totals(), (1792, 2304));
//! let reference = matvec_schoolbook(&inst.matrix.to_coefficients(&tables).unwrap(), &inst.vector).unwrap();
//! assert_eq!(p, reference);
//! ```
//!
//! The `examples/` directory has one runnable program per capability:
//! `modular_arithmetic`, `ntt_roundtrip`, `polyphase_split`,
//! `two_parallel_entry`, `four_parallel_entry`, `matvec_pipelines`,
//! `operation_counts` and `instance_files`.

pub mod cli;
pub mod error;
pub mod faststruct;
pub mod format;
pub mod matvec;
pub mod modarith;
pub mod ntt;
pub mod opreport;
pub mod oracle;
pub mod polyphase;
pub mod rng;

pub use error::{Error, Result};
pub use matvec::{
    matvec_baseline_4mult, matvec_baseline_5mult, matvec_four_parallel_unshared, matvec_proposed, matvec_with_error,
    Algorithm, CoeffMatrix, Form, Instance, NttMatrix, PolyVector,
};
pub use modarith::{OpCounter, Residue, StageCounters, Q};
pub use ntt::{build_tables, ntt_forward, ntt_inverse, NttVector, Polynomial, TableSet, TwiddleTables};
pub use opreport::{closed_form_counts, latency_model, measure, ComplexityReport};
pub use oracle::{matvec_schoolbook, negacyclic_mul_schoolbook};
pub use polyphase::{decompose, recompose, Parallelism, PhaseSplit};
pub use rng::{random_instance, SplitMix64};
