//! Linear codes for the private pliable index coding problem with size-s
//! circular-h shift side information.
//!
//! One sender broadcasts to n = m/gcd(m,h) users over an error-free link.
//! User i already holds the s consecutive messages starting at (i−1)h+1
//! (indices mod m); a code is valid when every user can decode exactly one
//! message it does not hold and learns nothing about any other. This crate
//! provides:
//!
//! - [`gf2`]: bit-packed GF(2) linear algebra, including canonical
//!   enumeration of subspaces by RREF representative;
//! - [`instance`]: the problem model, the network topology hypergraph, and
//!   1-factor detection by exact cover;
//! - [`bounds`]: the closed-form feasibility and code-length classification;
//! - [`schemes`]: validated constructions achieving those lengths;
//! - [`validator`]: the exact span criterion for linear codes and an
//!   exhaustive truth-table/entropy check for arbitrary encoders;
//! - [`oracle`]: brute-force search for the optimal linear code length.

pub mod bounds;
pub mod error;
pub mod gf2;
pub mod instance;
pub mod oracle;
pub mod schemes;
pub mod validator;

pub use bounds::{classify, is_infeasible, BoundReport, CaseTag};
pub use error::{Error, Result};
pub use gf2::{gaussian_binomial, BitMatrix, BitVector};
pub use instance::{Assignment, Instance, Nth};
pub use oracle::{
    count_valid_codes, max_search_ell, optimal_linear_length, prove_linear_infeasible,
    OracleResult, OracleStatus,
};
pub use schemes::{construct, Scheme, SchemeCase};
pub use validator::{
    decodable_set_exhaustive, decodable_set_linear, privacy_entropy_report, validate_exhaustive,
    validate_linear, EncoderTable, Verdict, VerdictStatus,
};
