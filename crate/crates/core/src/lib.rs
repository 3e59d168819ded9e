//! Small generators of quadratic number fields.
//!
//! The height of an algebraic number is the largest absolute coefficient of
//! its primitive integer minimal polynomial. This crate computes the minimal
//! height `H_min(D)` of a generator of `Q(√D)` exactly, enumerates reduced
//! elements and their continued-fraction cycles, implements explicit small
//! generator constructions, and scans discriminant windows for the extremal
//! ratio `H_min(D)/√|D|`.
//!
//! All decisions are made in exact integer arithmetic.

pub mod construct;
pub mod error;
pub mod field;
pub mod intarith;
pub mod quadpoly;
pub mod reduced;
pub mod search;

pub use construct::{
    degree_n_family, imaginary_family, lemma1_integral, lemma2_generator, m_eps_exceptions,
    prop2_generator, real_family, DegreeNCertificate, MepsWitness,
};
pub use error::{Error, Result};
pub use field::{class_number_imaginary, fundamental_range, is_fundamental, Discriminant};
pub use quadpoly::{
    disc_n, en_inequality_check, field_disc_and_index, is_generator_of, prop1_bound,
    FieldIndexPair, GenPoly, Prop1Bound, QuadPoly,
};
pub use reduced::{
    count_real, cycles, duke_statistic, enumerate_imaginary, enumerate_real, g_h_contains,
    g_h_scan, lemma3_which_reduced, lemma4_check, mu_measure, rho, DukeStat, GhThreshold,
    HyperRect, Lemma3Variant, Measure, ReducedPointIm, ReducedPointRe,
};
pub use search::{
    hmin, hmin_reduced, hmin_with_bound, ratio_4dp, scan_max_ratio, scan_windows, upper_bound,
    HminResult, ReducedHmin, ScanKind, ScanRow,
};

pub use num_rational::Ratio;
