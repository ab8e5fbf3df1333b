//! Upper bounds for the geometric genus of integral curves of degree `d` on the
//! smooth three-dimensional quadric, lying on an integral surface of degree `2k`.
//!
//! The bound comes from maximizing `Σ (l-1) γ_l` over sequences `γ` of
//! hyperplane-section second differences subject to a fixed set of
//! constraints. This crate provides:
//!
//! * [`invariants`]: the residue data `n0, eps, theta0, eps', nu, eps^` of `(d, k)`;
//! * [`gamma`]: sequences, constraint profiles, the admissibility check and the functional;
//! * [`extremal`]: the maximizing templates and the mass-shifting local search;
//! * [`bounds`]: closed forms in exact rational arithmetic, sharpness and linkage data;
//! * [`oracle`]: a brute-force maximizer used to certify all of the above.
//!
//! ```
//! use quadric_genus::{genus_bound, CurveParams};
//!
//! let report = genus_bound(CurveParams::new(15, 3)?);
//! assert_eq!(report.pi_value, 18);
//! assert_eq!(report.bound_g_minus_1, 17);
//! # Ok::<(), quadric_genus::Error>(())
//! ```

pub mod bounds;
pub mod error;
pub mod extremal;
pub mod gamma;
pub mod invariants;
pub mod oracle;
pub mod report;

pub use bounds::{
    bound_no_small_curve, capital_pi, genus_bound, linkage_descriptor, pi, sharpness, xi, BoundReport,
    LinkageDescriptor, Rational, Sharpness,
};
pub use error::{Error, Result};
pub use extremal::{
    build_hat_gamma, build_tilde_gamma_large, build_tilde_gamma_small, build_tilde_gamma_theta_k, improve,
    TemplateReport,
};
pub use gamma::{beta_from_gamma, genus_functional, indices, is_admissible, ConstraintProfile, GammaSequence, Verdict};
pub use invariants::{CurveParams, InvariantSet, Regime};
pub use oracle::{oracle_max, verify, OracleResult, VerificationReport, DEFAULT_NODE_BUDGET};
pub use report::{CsvRow, CSV_HEADER};
