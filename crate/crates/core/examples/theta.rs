//! Theta lifts of packet members between O(V_2n) and Sp(W_2n), and back.
//!
//! Run with `cargo run --example theta`.

use ortho_llc::arithmetic::{LocalField, QuadraticCharacter};
use ortho_llc::packets::{theta_lift_member, PacketMember};
use ortho_llc::parameters::{ComponentGroup, Parameter};
use ortho_llc::theta::{first_occurrence, Direction};

fn main() -> ortho_llc::Result<()> {
    let f = LocalField::new(5)?;
    let chi_v = QuadraticCharacter::new(f.class_of_int(5)?);
    let phi = Parameter::characters(f, &[(1, 1), (5, 1)])?;
    for eta in ComponentGroup::of(&phi).characters() {
        let m = PacketMember::orth(&phi, chi_v, f.one(), eta)?;
        let rec = first_occurrence(&phi, &eta)?;
        let dir = if m.flags.in_theta_plus { Direction::OrthToSympUp } else { Direction::OrthToSympDown };
        let lift = theta_lift_member(&m, dir)?;
        print!("eta {eta} on {}: m(pi)={} m(pi x det)={}; {dir} gives {} eta {}", m.tag, rec.m_pi, rec.m_pi_det, lift.phi, lift.eta);
        if dir == Direction::OrthToSympUp {
            let back = theta_lift_member(&lift, Direction::SympToOrthDown)?;
            print!("; back to eta {}", back.eta);
        }
        println!();
    }
    Ok(())
}
