//! Degree-size sequences of simplicial complexes: deciding realizability,
//! sampling realizations, and measuring their homology.

pub mod bitset;
pub mod error;
pub mod experiments;
pub mod homology;
pub mod io;
pub mod model;
pub mod oracle;
pub mod realizer;
pub mod scm;
pub mod seqgen;
pub mod stats;

pub use error::{Error, Result};
pub use homology::{betti_numbers, BettiPair};
pub use model::{check_trivial, ConvergenceStats, DegreeSizeSequence, Realization, RejectReason};
pub use oracle::decide_bruteforce;
pub use realizer::{realize, realize_with, Outcome, SolverOptions, SolverVerdict};
pub use scm::{sample_ensemble, ScmConfig};
