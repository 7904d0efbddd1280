//! A workbench for constructing, simulating, and verifying symmetry-based
//! quantum error-correcting codes.
//!
//! Pick a finite group and a unitary representation; the code space is the
//! subspace fixed by every group element. The crate builds the code space and
//! the isotypic projectors indexing its syndromes, simulates syndrome
//! extraction by exact statevector evolution (with an independent
//! ancilla-circuit path), realizes qubit/qudit/mixed-dimension stabilizer
//! codes inside the same framework, constructs group Fourier transforms and
//! circuits for dihedral families, and verifies correctability conditions,
//! distances, and the measurement-based logical CNOT protocol.
//!
//! Conventions used throughout:
//! - site/qubit 0 is the least significant digit of a basis index;
//! - dihedral elements are enumerated as f^α r^k at index 2k+α;
//! - the abelian Fourier kernel is ω^{-jk}/√d and group Fourier rows carry
//!   conjugated irrep matrix elements.

pub mod cli;
pub mod extract;
pub mod gqft;
pub mod groups;
pub mod isotypic;
pub mod linalg;
pub mod reps;
pub mod specfile;
pub mod stabilizer;
pub mod verify;
