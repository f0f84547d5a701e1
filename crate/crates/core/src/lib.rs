//! Exact symbolic engine for bicovariant differential calculi on
//! finite-dimensional Hopf algebras.

pub mod calculus;
pub mod crossprod;
pub mod dsl;
pub mod duality;
pub mod error;
pub mod hopf;
pub mod linalg;
pub mod report;
pub mod verify;
pub mod wedge;

pub use error::{Error, Result};
pub use hopf::{check_hopf_axioms, dual_hopf, function_hopf, group_hopf, Element, GroupTable, HopfData, TensorElement};
pub use linalg::{Matrix, Rational};
pub use report::SuiteReport;
pub use calculus::{finite_group_calculus, finite_group_calculus_named, FodcData};
pub use crossprod::{CrossAlgebra, CrossElement, DualElement};
pub use wedge::{GradedForm, Wedge, WedgeOptions};
