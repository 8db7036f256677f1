//! Enumerates the L-packet of 1 + chi_5 over Q_5 for every Whittaker datum.
//!
//! Run with `cargo run --example packet`.

use ortho_llc::arithmetic::{LocalField, QuadraticCharacter, WhittakerDatum};
use ortho_llc::packets::{change_whittaker, enumerate_packet};
use ortho_llc::parameters::Parameter;

fn main() -> ortho_llc::Result<()> {
    let f = LocalField::new(5)?;
    let chi_v = QuadraticCharacter::new(f.class_of_int(5)?);
    let phi = Parameter::characters(f, &[(1, 1), (5, 1)])?;
    for c in f.classes() {
        println!("datum c = {c}");
        for m in enumerate_packet(&phi, chi_v, WhittakerDatum::new(c))? {
            let at_one = change_whittaker(&m, c, f.one())?;
            println!("  eta {} on {}  (eta {} for c = 1)", m.eta, m.tag, at_one);
        }
    }
    Ok(())
}
