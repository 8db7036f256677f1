//! Det-twist orbits of an O(V) packet and the characters of S+ that label the SO(V) packet.
//!
//! Run with `cargo run --example so_descent`.

use ortho_llc::arithmetic::{LocalField, QuadraticCharacter, WhittakerDatum};
use ortho_llc::packets::so_descend;
use ortho_llc::parameters::{Parameter, Summand, Term};

fn main() -> ortho_llc::Result<()> {
    let f = LocalField::new(7)?;
    let a = Summand::orthogonal("A", 2, f.one())?;
    let phi = Parameter::new(
        f,
        vec![Term::new(Summand::character(f.one()), 1), Term::new(Summand::character(f.class_of_int(7)?), 1), Term::new(a, 1)],
    )?;
    let chi_v = QuadraticCharacter::new(phi.det());
    let r = so_descend(&phi, chi_v, WhittakerDatum::new(f.one()))?;
    println!("phi = {phi}: |S+| = {}, bijective {}, square commutes {}", r.s_plus_order, r.bijective, r.square_commutes);
    for o in &r.orbits {
        let members: Vec<String> = o.members.iter().map(|e| e.bits()).collect();
        let restr: String = o.restriction.iter().map(|s| s.symbol()).collect();
        println!("  orbit {{{}}} restricts to {}", members.join(", "), if restr.is_empty() { "()" } else { &restr });
    }
    Ok(())
}
