//! Exact-arithmetic sequence transforms built on terminating hypergeometric
//! series, with verifiers for the identities they imply for classical
//! orthogonal polynomials and for sums of `4F3(1)` and `5F4(1)` series.
//!
//! All arithmetic is over ℚ(i); nothing is rounded.

pub mod campaign;
pub mod error;
pub mod exactnum;
pub mod hyper;
pub mod oracle;
pub mod orthopoly;
pub mod report;
pub mod selftest;
pub mod seqtransform;
pub mod sums;

pub use campaign::{run_campaign, CampaignConfig, Mutation, RoundtripFamily, Tag};
pub use error::{Error, Result};
pub use exactnum::{binomial, pochhammer, GaussianRational, Rational};
pub use hyper::{classify, eval_terminating, HypSeriesSpec, SeriesClass};
pub use orthopoly::{eval_poly, verify_identity, FamilySpec, IdentityId};
pub use report::{CheckReport, Counterexample, Status, VerificationReport};
pub use seqtransform::{apply, invert, kernel_for, Sequence, TransformSpec, TriangularKernel};
pub use sums::{verify_sum, SumIdentityId, SumParams};
