//! Finite-field towers, splitting subspaces, block recurrences and exhaustive
//! verification of their closed-form counts.

pub mod config;
pub mod lfsr;
pub mod error;
pub mod field;
pub mod linalg;
pub mod literal;
pub mod numtheory;
pub mod outcome;
pub mod par;
pub mod poly;
pub mod report;
pub mod splitting;
pub mod tower;
pub mod verify;

pub use config::{Exec, LabConfig};
pub use error::{LabError, Result};
pub use field::{build_field, FieldCtx};
pub use linalg::{MatrixFq, SubspaceBasis, SubspaceSpace};
pub use poly::{Method, Poly};
pub use lfsr::{BlockRecurrence, FiberMethod, PeriodReport, PrimitivityMode, RecurrenceState};
pub use outcome::{Status, Verdict};
pub use report::Format;
pub use splitting::{SplitCountReport, SplitInstance};
pub use tower::{build_extension, FieldElement, TowerCtx};
pub use verify::{verify, JobVerdict, StatementId, VerificationJob};
