//! Special functions, transfer-theorem expansions and the two-term moment
//! asymptotics. Logarithms are natural throughout.

pub mod moments;
pub mod special;
pub mod transfer;

pub use moments::{
    fs_leading_terms, harmonic_weighted_identity_check, moment_asymptotic, residual_diagnostic, FsLeadingForm,
    MomentAsymptote,
};
pub use special::{
    harmonic, harmonic_checked, harmonic_generalized, polygamma_at_integer, SpecialConstants, EULER_GAMMA, ZETA,
};
pub use transfer::{
    reciprocal_gamma_derivatives, reciprocal_gamma_derivatives_with, transfer_coeff_asymptotic, TransferExpansion,
};
