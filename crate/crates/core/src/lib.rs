//! Three-valued logic of conjunctive questions over Pauli-string
//! propositions, with Clifford reduction and knowledge-state reasoning.

pub mod analysis;
pub mod bench;
pub mod clifford;
pub mod error;
pub mod gf2;
pub mod kernel;
pub mod knowledge;
pub mod pauli;
pub mod reduction;

pub use clifford::{CzChoice, Gate, Theory, TheoryVariant, Transcript};
pub use error::{Error, Result};
pub use kernel::{Assignment, CheckResult, Formula, TruthValue};
pub use knowledge::{KnowledgeState, MeasurementRecord};
pub use pauli::{PauliLetter, PropParseError, Proposition};
pub use reduction::{ReductionResult, Relation};
