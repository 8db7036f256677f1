//! Formally induced representations tau (x) pi_0, their constituents and the scalars
//! by which normalized intertwining operators act on them.

use crate::arithmetic::{Sign, WhittakerDatum};
use crate::error::{Error, Result};
use crate::packets::{eta_twisted, det_twist, PacketMember, Side};
use crate::parameters::{embed_component, Character, ComponentGroup, Embedding, Parameter, SdType, Summand};

/// The induced representation of tau (x) pi_0 from a maximal parabolic with Levi GL_k x O(V_0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedRep {
    pub phi_tau: Summand,
    pub member0: PacketMember,
    /// phi_tau + phi_0 + phi_tau^v.
    pub phi: Parameter,
    pub embedding: Embedding,
    /// Characters of S_phi of the constituents, relative to the datum of `member0`.
    pub constituents: Vec<Character>,
}

impl InducedRep {
    pub fn is_reducible(&self) -> bool {
        self.constituents.len() > 1
    }

    /// Index of the generator a of S_phi attached to phi_tau.
    pub fn tau_generator(&self) -> Result<usize> {
        if self.phi_tau.sd_type() != SdType::Orthogonal {
            return Err(Error::NotSelfDualOrthogonal(self.phi_tau.atom()));
        }
        Ok(ComponentGroup::of(&self.phi).index_of(self.phi_tau.id()).expect("phi_tau occurs in phi"))
    }

    /// The constituent with character `eta` as a packet member of phi.
    pub fn member(&self, eta: Character) -> Result<PacketMember> {
        let m = &self.member0;
        PacketMember::orth(&self.phi, m.chi_v, m.c, eta)
    }
}

/// Assembles phi and lists the characters of S_phi extending the character of `member0`.
pub fn build_induced(phi_tau: &Summand, member0: &PacketMember) -> Result<InducedRep> {
    if member0.side != Side::Orth {
        return Err(Error::UnsupportedSide("induction is set up on the orthogonal side".into()));
    }
    if !phi_tau.is_tempered() {
        return Err(Error::TemperedOnly(phi_tau.atom()));
    }
    if !member0.phi.is_tempered() {
        return Err(Error::TemperedOnly(member0.phi.to_string()));
    }
    let mult = match phi_tau.sd_type() {
        SdType::NonSelfDualPair => 1,
        SdType::Orthogonal | SdType::Symplectic => 2,
    };
    let phi = member0.phi.plus(phi_tau, mult)?;
    let embedding = embed_component(&member0.phi, &phi)?;
    let constituents = extensions(&embedding, &member0.eta);
    Ok(InducedRep { phi_tau: phi_tau.clone(), member0: member0.clone(), phi, embedding, constituents })
}

/// All characters of the target group whose pullback along `embedding` is `eta0`.
fn extensions(embedding: &Embedding, eta0: &Character) -> Vec<Character> {
    let mut base = 0u64;
    let mut hit = 0u64;
    for (i, &j) in embedding.images.iter().enumerate() {
        hit |= 1 << j;
        if eta0.on_generator(i).is_minus() {
            base |= 1 << j;
        }
    }
    let free: Vec<usize> = (0..embedding.target_rank).filter(|j| hit >> j & 1 == 0).collect();
    let mut out = Vec::with_capacity(1 << free.len());
    for choice in 0u64..1 << free.len() {
        let mut mask = base;
        for (b, &j) in free.iter().enumerate() {
            if choice >> b & 1 == 1 {
                mask |= 1 << j;
            }
        }
        out.push(Character::from_mask(embedding.target_rank, mask));
    }
    out.sort_by_key(|c| c.bits());
    out
}

/// Scalar of the normalized intertwining operator for `datum` on the constituent `eta`.
///
/// `eta` is read relative to the datum of the inducing member and moved to `datum` first.
pub fn intertwining_scalar(induced: &InducedRep, eta: &Character, datum: WhittakerDatum) -> Result<Sign> {
    let a = induced.tau_generator()?;
    if !induced.constituents.contains(eta) {
        return Err(Error::BadCharacter(format!("{eta} is not a constituent of the induced representation")));
    }
    let group = ComponentGroup::of(&induced.phi);
    let ratio = datum.c.try_mul(induced.member0.c)?;
    let moved = eta.times(&eta_twisted(&group, induced.member0.chi_v, ratio)?);
    Ok(moved.on_generator(a))
}

/// Outcome of comparing the induced representation with its det twist.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DetTwistReport {
    /// (-1)^{dim tau}.
    pub sign: Sign,
    /// For each constituent, the det-twisted constituent sits over the det-twisted pi_0
    /// and its scalar differs by `sign`.
    pub consistent: bool,
}

/// Sign relating the intertwining scalars of pi and pi (x) det.
pub fn det_twist_sign(induced: &InducedRep) -> Result<DetTwistReport> {
    let a = induced.tau_generator()?;
    let sign = Sign::from_parity(induced.phi_tau.dim() % 2 == 1);
    let twisted0 = det_twist(&induced.member0)?;
    let twisted = build_induced(&induced.phi_tau, &twisted0)?;
    let kappa = ComponentGroup::of(&induced.phi).kappa();
    let datum = WhittakerDatum::new(induced.member0.c);
    let mut consistent = true;
    for eta in &induced.constituents {
        let partner = eta.times(&kappa);
        if !twisted.constituents.contains(&partner) {
            consistent = false;
            continue;
        }
        let lhs = intertwining_scalar(&twisted, &partner, datum)?;
        let rhs = intertwining_scalar(induced, eta, datum)?;
        consistent &= lhs == rhs * sign && partner.on_generator(a) == eta.on_generator(a) * sign;
        consistent &= induced.embedding.pull(&partner) == twisted0.eta;
    }
    Ok(DetTwistReport { sign, consistent })
}

/// True iff, as eta_0 runs over the packet of phi_0, the constituents cover every
/// character of S_phi exactly once.
pub fn constituents_partition_packet(phi_tau: &Summand, members0: &[PacketMember]) -> Result<bool> {
    let mut seen: Vec<Character> = Vec::new();
    let mut rank = None;
    for m in members0 {
        let induced = build_induced(phi_tau, m)?;
        rank = Some(ComponentGroup::of(&induced.phi).order());
        seen.extend(induced.constituents);
    }
    let total = seen.len();
    seen.sort_by_key(|c| c.bits());
    seen.dedup();
    Ok(seen.len() == total && rank.map_or(total == 0, |order| order == total as u64))
}
