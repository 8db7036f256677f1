//! Constituents of tau (x) pi_0 and the scalars of the normalized intertwining operator.
//!
//! Run with `cargo run --example lir`.

use ortho_llc::arithmetic::{LocalField, QuadraticCharacter, WhittakerDatum};
use ortho_llc::lir::{build_induced, det_twist_sign, intertwining_scalar};
use ortho_llc::packets::PacketMember;
use ortho_llc::parameters::{Character, Parameter, Summand};

fn main() -> ortho_llc::Result<()> {
    let f = LocalField::new(5)?;
    let chi_v = QuadraticCharacter::new(f.class_of_int(5)?);
    let phi0 = Parameter::characters(f, &[(1, 1), (5, 1)])?;
    let m0 = PacketMember::orth(&phi0, chi_v, f.one(), Character::parse_bits("+-", 2)?)?;
    for tau in [Summand::character(f.class_of_int(2)?), Summand::character(f.class_of_int(5)?), Summand::orthogonal("A", 3, f.one())?] {
        let induced = build_induced(&tau, &m0)?;
        println!("tau = {}: phi = {}", tau.atom(), induced.phi);
        for eta in &induced.constituents {
            let scalars: Vec<String> = f
                .classes()
                .into_iter()
                .map(|c| intertwining_scalar(&induced, eta, WhittakerDatum::new(c)).map(|s| format!("{c}:{s}")))
                .collect::<ortho_llc::Result<_>>()?;
            println!("  constituent {eta}: scalars {}", scalars.join(" "));
        }
        let r = det_twist_sign(&induced)?;
        println!("  det twist sign {} consistent {}", r.sign, r.consistent);
    }
    Ok(())
}
