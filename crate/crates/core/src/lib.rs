//! Sampling series for multidimensional bandlimited functions.
//!
//! A function whose Fourier transform lives in the box `|t_j| <= sigma_j` can be
//! rebuilt from its values on the lattice `(pi/sigma) Z^n` (classical cardinal
//! series), or from values *and all `2^n` mixed first partials* on the twice
//! coarser lattice `(2pi/sigma) Z^n`. The crate also keeps an older
//! two-dimensional formula that omits the mixed partial, so that its failure
//! can be demonstrated.
//!
//! Module map:
//!
//! * [`kernels`]: `sinc`, `sic` and the squared node kernel at complex arguments.
//! * [`lattice`]: multi-indices, bandwidths, truncation windows, node coordinates.
//! * [`corpus`]: test functions with closed-form (or quadrature) partials.
//! * [`reconstruct`]: the series engines.
//! * [`bounds`]: truncation certificates and auxiliary inequalities.
//! * [`sampleio`]: the `dsamp` sample-set format and CSV field export.
//! * [`cli`]: command-line front end.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod cli;
pub mod corpus;
mod error;
pub mod kernels;
pub mod lattice;
mod quadrature;
pub mod reconstruct;
pub mod sampleio;
mod summation;

pub use error::{Error, Result};
pub use kernels::{Complex, ComplexPoint};
pub use lattice::{Bandwidth, LatticeSpacing, MultiIndex, TruncationWindow};
pub use sampleio::{SampleSet, ValueKind};
