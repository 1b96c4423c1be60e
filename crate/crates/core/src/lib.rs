//! Idempotents of the 2x2 matrix ring over truncated power series with
//! coefficients in Z_n.
//!
//! Every idempotent is assembled from a split `n = P * Q * R` into pairwise
//! coprime parts: modulo `Q` it is the identity, modulo `R` it is zero, and
//! modulo `P` it has the trace-one shape `(alpha, beta; gamma, 1 - alpha)`
//! with `alpha (1 - alpha) = beta gamma`. [`idempotent_core`] builds, checks
//! and classifies these matrices; [`oracle`] enumerates small rings by brute
//! force as an independent cross-check.

pub mod cli;
pub mod error;
pub mod idempotent_core;
pub mod mat2;
pub mod oracle;
pub mod tseries;
pub mod zn_arith;

pub use error::{Error, Result};
pub use idempotent_core::{
    classify, construct_case, construct_crt, enumerate_all, solve_gamma, validate_spec, Case,
    ClassifiedIdempotent, IdempotentSpec, SpecJson, SpecParams,
};
pub use mat2::{Mat2, Mat2Json};
pub use oracle::{
    brute_force_idempotents, brute_force_series_idempotents, compare_sets, CompareReport,
    SearchSpace, DEFAULT_BUDGET,
};
pub use tseries::{Monomial, Series, SeriesJson, TermJson, TruncationContext};
pub use zn_arith::{
    crt_combine, factorize, idempotents_of_zn, mod_pow, totient, CoprimeSplit, Modulus,
    PrimePower, Residue, Role,
};
