//! Core library for the Strix stream-intersection ISA toolkit.
//!
//! The crate is organized around the data path of a pattern-mining run:
//! [`graph`] ingests edge lists, sparse matrices and tensors into the CSR
//! layouts the ISA addresses; [`kernels`] holds the architecture-free
//! semantics of every stream operation; [`isa`] defines the instruction set,
//! its textual assembly form, and the functional executor that produces the
//! dynamic trace replayed by the timing model; [`compiler`] turns pattern
//! graphs into enumeration schedules and lowers them to stream programs; and
//! [`oracle`] is a deliberately independent brute-force reference used only
//! for validation.

pub mod compiler;
pub mod graph;
pub mod isa;
pub mod kernels;
pub mod oracle;
