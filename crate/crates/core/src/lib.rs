//! Exact arithmetic for pointed hyperelliptic models over rings of
//! `S`-integers of `Q`.
//!
//! The crate covers discriminants and good reduction outside `S`, the
//! recursive reversal/splitting of a split model into genus-1 pieces,
//! genera of fiber products of double covers, and a bounded enumeration
//! of split models with `S`-unit discriminant. Every value is an exact
//! rational; nothing goes through floating point.
//!
//! ```
//! use shafdec::{good_reduction_outside, PointedModel, PrimeSet};
//!
//! let m = PointedModel::from_json(r#"{"genus":1,"P":["0","-1","0","1"]}"#).unwrap();
//! let s: PrimeSet = "2".parse().unwrap();
//! let report = good_reduction_outside(&m, &s).unwrap();
//! assert_eq!(report.discriminant.to_string(), "64");
//! assert!(report.good_outside_s);
//! ```

pub mod cli;
pub mod decompose;
pub mod enumerate;
pub mod error;
pub mod exactmath;
pub mod fiberprod;
pub mod hypermodel;

pub use decompose::{decompose_recursive, decompose_with, DecompositionTree, SplitStrategy};
pub use enumerate::{canonical_class, enumerate_split_models, s_unit_solutions, ProjectivePoint};
pub use error::{Error, Result};
pub use exactmath::{discriminant, resultant, Poly, PrimeSet, Rational};
pub use fiberprod::{fiber_genus, FiberGenusReport};
pub use hypermodel::{
    complete_the_square, good_reduction_outside, lockhart_discriminant, reduction_bijection_check,
    weierstrass_points, PointedModel, ReductionReport, WeierstrassData,
};
