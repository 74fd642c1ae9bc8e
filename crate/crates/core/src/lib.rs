//! Exact computations with finite groups, integral group rings and their unit groups.
//!
//! Arithmetic is generic over an exact integer [`Scalar`]; the aliases below fix it to
//! arbitrary precision integers.

pub mod arith;
pub mod catalog;
pub mod dihedral;
pub mod error;
pub mod group;
pub mod invariants;
pub mod linalg;
pub mod parse;
pub mod presentation;
pub mod ring;
pub mod scalar;
pub mod snf;
pub mod sweep;
pub mod unit_groups;
pub mod units;

pub use catalog::{builtin, builtin_arc, catalog_names};
pub use dihedral::{Mat2, RealCycloRing};
pub use error::{Error, Result};
pub use group::{ClassKind, ClassPartition, FiniteGroup};
pub use linalg::Matrix;
pub use parse::{parse_element, parse_group_element, ElementNames};
pub use presentation::{Presentation, SemidirectData, Word};
pub use ring::{Element, Unit};
pub use scalar::Scalar;
pub use snf::{abelianization, smith_normal_form, AbelianGroupType, SmithForm};

/// Seed for randomized sweeps when none is given.
pub const DEFAULT_SEED: u64 = 20260;

/// Arbitrary precision integer used by the concrete aliases.
pub type Int = num_bigint::BigInt;
/// Element of `ZG` with arbitrary precision coefficients.
pub type GroupRingElement = Element<Int>;
/// Unit of `ZG` with arbitrary precision coefficients.
pub type GroupRingUnit = Unit<Int>;
/// Dense arbitrary precision integer matrix.
pub type IntMatrix = Matrix<Int>;
/// Element of `Z[ζ_p + ζ_p⁻¹]` with arbitrary precision coefficients.
pub type RealCycloElement = dihedral::CycloElement<Int>;
/// `2 x 2` matrix over `Z[ζ_p + ζ_p⁻¹]`.
pub type Mat2R = Mat2<Int>;
