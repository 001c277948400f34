//! Finite-universe analysis of axiom systems written in simple type theory.
//!
//! An axiom system is a list of formulas over typed free variables (its
//! primitive signs). Over a universe of `n` individuals every type has a
//! finite domain, so models can be enumerated outright and properties such
//! as monomorphy (all models isomorphic), forkability, and completeness
//! can be decided by exhaustive search.
//!
//! ```
//! use axcheck_core::{parse_axiom_system, models_of, Universe};
//!
//! let orders = parse_axiom_system(axcheck_core::corpus::TOTAL_ORDER).unwrap();
//! assert_eq!(models_of(&Universe::new(3), &orders).unwrap().len(), 6);
//! ```

pub mod corpus;
pub mod enumerate;
pub mod error;
pub mod eval;
pub mod formula;
pub mod iso;
pub mod meta;
pub mod parser;
pub mod synth;
pub mod system;
pub mod types;
pub mod universe;
pub mod value;

pub use enumerate::{admissible_models, is_hilbert_complete, is_maximal, is_minimal, is_submodel, models_of, ModelSet};
pub use error::{Error, ParseError, Result, TypeError, TypeErrors};
pub use eval::{eval, satisfies};
pub use formula::{check_types, Binder, Connective, Formula, Quantifier, Term};
pub use iso::{are_isomorphic, is_formal_semantic, is_formal_syntactic, iso_classes, Correlator, IsoClass, IsoMode};
pub use meta::{
    gabel_check, is_carnap_inconsistent, is_consequence, is_decidable, is_forkable_at, is_forkable_semantic,
    is_monomorphic, is_satisfiable, synthesize_forking_formula, Analysis, Evidence, GabelReport, IsoClassPredicate,
    Judgment,
};
pub use parser::{expand_sugar, parse_axiom_system, parse_formula, pretty_print};
pub use system::{Axiom, AxiomSystem, ModelAssignment, Signature};
pub use types::SimpleType;
pub use universe::{Universe, DEFAULT_QUANTIFIER_CAP};
pub use value::{Relation, Value};
