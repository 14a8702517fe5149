//! Toolkit for binary quadratic models (Ising / QUBO).
//!
//! - [`model`]: the model type, energy evaluation and SPIN/BINARY conversion.
//! - [`sampleset`]: the common solver output.
//! - [`serio`]: coordinate-format input and CSV output.
//! - [`registry`]: declarative solver descriptors and the command line built
//!   from them.
//! - [`solvers`]: random, parallel tempering and exhaustive Gray-code search.
//!
//! ```
//! use spinsolve::{serio, solvers::bruteforce, Vartype};
//!
//! let bqm = serio::read_coo_str("1 2 1.5\n0 1 -1\n0 2 -3\n", Vartype::Spin).unwrap();
//! let spectrum = bruteforce::scan(&bqm, &bruteforce::BfParams { num_states: 2 }).unwrap();
//! assert_eq!(spectrum.records()[0].energy, -3.5);
//! ```

pub mod error;
pub mod model;
pub mod registry;
pub mod sampleset;
pub mod serio;
pub mod solvers;

pub use error::{ConformanceError, Error, Result};
pub use model::{Assignment, BinaryQuadraticModel, IndexedModel, Label, Vartype};
pub use registry::{
    ArgKind, ArgSpec, ArgValue, ArgValues, CliSchema, Command, Invocation, Registry, Scope, Solver,
    SolverDescriptor, UsageError,
};
pub use sampleset::{SampleRecord, SampleSet};

/// Registry holding every solver compiled into this build: `pt`, `random`
/// and `bruteforce`, in that order.
pub fn default_registry() -> Registry {
    let mut registry = Registry::new();
    #[cfg(feature = "pt")]
    registry
        .register(solvers::pt::descriptor())
        .expect("bundled descriptor is valid");
    #[cfg(feature = "random")]
    registry
        .register(solvers::random::descriptor())
        .expect("bundled descriptor is valid");
    #[cfg(feature = "bruteforce")]
    registry
        .register(solvers::bruteforce::descriptor())
        .expect("bundled descriptor is valid");
    registry
}
