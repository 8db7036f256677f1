//! Formal local factors: gamma, L, epsilon and lambda tokens, their rewrite rules and
//! the identities they satisfy.

pub mod controls;
mod expr;
mod identities;
mod rep;

pub use expr::{rewrite, rewrite_with, Arg, FactorExpr, Rule, Token};
pub use identities::{
    comgamma_identity, complan_identity, gamma_of_parameter, normalizing_factor, plancherel_expr, r_squared_parts,
    tau_mono, theta_scalar, verify_comgamma, verify_complan, verify_r_squared, Backend, Identity, RSquaredParts,
};
pub use rep::{Det, Factor, Mono, RepSum};
