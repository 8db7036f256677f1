//! Formal local factors: the transfer identities and the squared intertwining operator.
//!
//! Run with `cargo run --example factors`.

use ortho_llc::arithmetic::{LocalField, QuadraticCharacter};
use ortho_llc::factors::{comgamma_identity, r_squared_parts, rewrite, theta_scalar, Backend};
use ortho_llc::parameters::{Parameter, Summand};
use ortho_llc::theta::lift_up_param;

fn main() -> ortho_llc::Result<()> {
    let f = LocalField::new(3)?;
    let chi_v = QuadraticCharacter::new(f.class_of_int(3)?);
    let phi = Parameter::characters(f, &[(1, 1), (3, 1)])?;
    let id = comgamma_identity(&lift_up_param(&phi, chi_v)?, &phi, chi_v, QuadraticCharacter::trivial(f));
    println!("gamma quotient: {}\n  = {}\n  holds: {}", id.lhs, id.rhs, id.holds()?);
    let tau = Summand::orthogonal("A", 3, f.class_of_int(-1)?)?;
    for backend in Backend::ALL {
        let parts = r_squared_parts(&tau, &phi, chi_v, backend)?;
        println!("{backend:?} r(w, tau_s x pi_0) = {}", parts.r_forward);
        println!("  product normalizes to {}", rewrite(&parts.identity().lhs)?);
    }
    for c in f.classes() {
        println!("theta scalar c = {c}: {}", theta_scalar(&tau, c, 3, chi_v)?);
    }
    Ok(())
}
