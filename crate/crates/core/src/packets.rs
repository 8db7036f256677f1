//! L-packets as character groups, with Whittaker change, det twist, duality,
//! theta lifts of members, Langlands reduction and SO descent.

use std::fmt;

use num_rational::Rational64;

use crate::arithmetic::{hilbert, QuadraticCharacter, Sign, SquareClass, WhittakerDatum};
use crate::error::{Error, Result};
use crate::parameters::{ell_map, Character, ComponentGroup, Parameter, Summand, Term};
use crate::theta::{self, in_theta_plus, Direction, Mode};

/// Which group family a member belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Orth,
    Symp,
}

/// O(V+) or O(V-) for a fixed discriminant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupTag {
    Vplus,
    Vminus,
}

impl GroupTag {
    pub fn from_sign(s: Sign) -> GroupTag {
        match s {
            Sign::Plus => GroupTag::Vplus,
            Sign::Minus => GroupTag::Vminus,
        }
    }

    pub fn sign(self) -> Sign {
        match self {
            GroupTag::Vplus => Sign::Plus,
            GroupTag::Vminus => Sign::Minus,
        }
    }
}

impl fmt::Display for GroupTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupTag::Vplus => "V+",
            GroupTag::Vminus => "V-",
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MemberFlags {
    pub generic_plus: bool,
    pub generic_minus: bool,
    pub in_theta_plus: bool,
}

/// A member of an L-packet, labelled by a character of S_phi.
///
/// On the orthogonal side `tag` is the group O(V+/-) the member lives on. On the
/// symplectic side `eta` is trivial on z_phi and `tag` names the orthogonal tower
/// (of discriminant `chi_v`) the member is paired with.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PacketMember {
    pub side: Side,
    pub phi: Parameter,
    pub chi_v: QuadraticCharacter,
    pub c: SquareClass,
    pub eta: Character,
    pub tag: GroupTag,
    pub flags: MemberFlags,
}

/// Group tag of (phi, eta) for the datum c: V+ iff eta(z_phi) = chi_V(c).
pub fn group_tag(group: &ComponentGroup, eta: &Character, chi_v: QuadraticCharacter, c: SquareClass) -> Result<GroupTag> {
    let target = chi_v.eval(c)?;
    Ok(GroupTag::from_sign(eta.eval(group.z()) * target))
}

impl PacketMember {
    /// Member of the O(V_2n) packet of `phi` with character `eta` relative to the datum `c`.
    pub fn orth(phi: &Parameter, chi_v: QuadraticCharacter, c: SquareClass, eta: Character) -> Result<PacketMember> {
        phi.check_orthogonal(chi_v)?;
        let group = ComponentGroup::of(phi);
        check_rank(&group, &eta)?;
        let tag = group_tag(&group, &eta, chi_v, c)?;
        let kappa = group.kappa();
        let flags = MemberFlags {
            generic_plus: eta.is_trivial(),
            generic_minus: eta == kappa,
            in_theta_plus: in_theta_plus(&group, &eta),
        };
        Ok(PacketMember { side: Side::Orth, phi: phi.clone(), chi_v, c, eta, tag, flags })
    }

    /// Member of the Sp(W_2n) packet of `phi`, paired with the tower `tower` of discriminant `chi_v`.
    pub fn symp(
        phi: &Parameter,
        chi_v: QuadraticCharacter,
        c: SquareClass,
        eta: Character,
        tower: GroupTag,
    ) -> Result<PacketMember> {
        phi.check_symplectic()?;
        let group = ComponentGroup::of(phi);
        check_rank(&group, &eta)?;
        if eta.eval(group.z()).is_minus() {
            return Err(Error::BadCharacter(format!("{eta} is not trivial on z for {phi}")));
        }
        let flags = MemberFlags { generic_plus: eta.is_trivial(), generic_minus: false, in_theta_plus: false };
        Ok(PacketMember { side: Side::Symp, phi: phi.clone(), chi_v, c, eta, tag: tower, flags })
    }

    pub fn group(&self) -> ComponentGroup {
        ComponentGroup::of(&self.phi)
    }
}

fn check_rank(group: &ComponentGroup, eta: &Character) -> Result<()> {
    if eta.rank() != group.rank() {
        return Err(Error::BadCharacter(format!("character {eta} has rank {}, expected {}", eta.rank(), group.rank())));
    }
    Ok(())
}

/// All members of the packet of phi for the datum, one per character of S_phi, sorted by sign string.
pub fn enumerate_packet(phi: &Parameter, chi_v: QuadraticCharacter, datum: WhittakerDatum) -> Result<Vec<PacketMember>> {
    phi.check_orthogonal(chi_v)?;
    let core = langlands_reduce(phi)?.core;
    let group = ComponentGroup::of(phi);
    let mut members = Vec::with_capacity(group.order() as usize);
    for eta in group.characters() {
        let core_member = PacketMember::orth(&core, chi_v, datum.c, eta)?;
        members.push(PacketMember { phi: phi.clone(), ..core_member });
    }
    members.sort_by_key(|m| m.eta.bits());
    Ok(members)
}

/// eta_{phi chi_V, c} read on the generators of S_phi.
pub fn eta_twisted(group: &ComponentGroup, chi_v: QuadraticCharacter, c: SquareClass) -> Result<Character> {
    let signs = group
        .generators()
        .iter()
        .map(|g| hilbert(c, g.twist(chi_v).det()))
        .collect::<Result<Vec<_>>>()?;
    Ok(Character::from_signs(&signs))
}

/// Character of the same representation relative to the datum c2 instead of c1.
pub fn change_whittaker(member: &PacketMember, c1: SquareClass, c2: SquareClass) -> Result<Character> {
    let ratio = c2.try_mul(c1)?;
    let group = member.group();
    Ok(member.eta.times(&eta_twisted(&group, member.chi_v, ratio)?))
}

/// The member pi (x) det, with character eta kappa_phi.
pub fn det_twist(member: &PacketMember) -> Result<PacketMember> {
    if member.side != Side::Orth {
        return Err(Error::UnsupportedSide("det twist is defined on the orthogonal side".into()));
    }
    let eta = member.eta.times(&member.group().kappa());
    let core = langlands_reduce(&member.phi)?.core;
    let twisted = PacketMember::orth(&core, member.chi_v, member.c, eta)?;
    Ok(PacketMember { phi: member.phi.clone(), ..twisted })
}

/// Character of the contragredient of a symplectic member: eta eta_{phi,-1}.
pub fn contragredient_symp(member: &PacketMember) -> Result<Character> {
    if member.side != Side::Symp {
        return Err(Error::UnsupportedSide(
            "contragredient is only available for symplectic packets".into(),
        ));
    }
    let group = member.group();
    Ok(member.eta.times(&group.eta(member.phi.field().minus_one())?))
}

/// The generic member: trivial character for `Plus`, kappa_phi for `Minus`.
pub fn generic_member(phi: &Parameter, chi_v: QuadraticCharacter, datum: WhittakerDatum, sign: Sign) -> Result<PacketMember> {
    if !phi.is_tempered() {
        return Err(Error::TemperedOnly(phi.to_string()));
    }
    let group = ComponentGroup::of(phi);
    let eta = match sign {
        Sign::Plus => group.trivial_character(),
        Sign::Minus => group.kappa(),
    };
    PacketMember::orth(phi, chi_v, datum.c, eta)
}

/// Theta lift of a single member.
pub fn theta_lift_member(member: &PacketMember, direction: Direction) -> Result<PacketMember> {
    let vanish = |why: &str| Error::ThetaVanishes(format!("{} on {} with eta {}: {why}", direction, member.phi, member.eta));
    match direction {
        Direction::OrthToSympUp => {
            require_side(member, Side::Orth)?;
            if !theta::theta_nonvanishing(&member.phi, member.chi_v, &member.eta, direction)? {
                return Err(vanish("member is not in the theta-plus half"));
            }
            let ell = ell_map(&member.phi, member.chi_v)?;
            let mut minus = 0u64;
            for (i, &j) in ell.iota.iter().enumerate() {
                if member.eta.on_generator(i).is_minus() {
                    minus |= 1 << j;
                }
            }
            if let Some(e) = ell.extra {
                if member.eta.eval(ell.source.z()).is_minus() {
                    minus |= 1 << e;
                }
            }
            let eta_plus = Character::from_mask(ell.target.rank(), minus);
            PacketMember::symp(&ell.phi_plus, member.chi_v, member.c, eta_plus, member.tag)
        }
        Direction::SympToOrthDown => {
            require_side(member, Side::Symp)?;
            let phi = theta::symp_to_orth_params(&member.phi, member.chi_v, Mode::Down)?;
            let group = ComponentGroup::of(&phi);
            let sp_group = member.group();
            let signs: Vec<Sign> = group
                .generators()
                .iter()
                .map(|g| {
                    let j = sp_group.index_of(g.twist(member.chi_v).id()).expect("summand occurs upstairs");
                    member.eta.on_generator(j)
                })
                .collect();
            let out = PacketMember::orth(&phi, member.chi_v, member.c, Character::from_signs(&signs))?;
            if out.tag != member.tag {
                return Err(vanish("the lift lives on the other tower"));
            }
            Ok(out)
        }
        Direction::OrthToSympDown => {
            require_side(member, Side::Orth)?;
            if !theta::theta_nonvanishing(&member.phi, member.chi_v, &member.eta, direction)? {
                return Err(vanish("det twist does not descend"));
            }
            let phi_minus = theta::lift_down_param(&member.phi, member.chi_v)?;
            let group = member.group();
            let partner = member.eta.times(&group.kappa());
            let sp_group = ComponentGroup::of(&phi_minus);
            let signs: Vec<Sign> = sp_group
                .generators()
                .iter()
                .map(|g| {
                    let i = group.index_of(g.twist(member.chi_v).id()).expect("summand occurs upstairs");
                    partner.on_generator(i)
                })
                .collect();
            PacketMember::symp(&phi_minus, member.chi_v, member.c, Character::from_signs(&signs), member.tag)
        }
        Direction::SympToOrthUp => {
            require_side(member, Side::Symp)?;
            let phi = theta::symp_to_orth_params(&member.phi, member.chi_v, Mode::Up)?;
            let group = ComponentGroup::of(&phi);
            let sp_group = member.group();
            let one = group.trivial_index().expect("1 occurs in the target");
            let mut signs = vec![Sign::Plus; group.rank()];
            let mut image = 0u64;
            for (k, g) in sp_group.generators().iter().enumerate() {
                let i = group.index_of(g.twist(member.chi_v).id()).expect("summand occurs upstairs");
                signs[i] = member.eta.on_generator(k);
                image |= 1 << i;
            }
            if image >> one & 1 == 0 {
                let partial = Character::from_signs(&signs);
                let want = member.tag.sign() * member.chi_v.eval(member.c)?;
                let rest = partial.eval(group.z() & !(1 << one));
                signs[one] = want * rest;
            }
            let partner = Character::from_signs(&signs);
            let eta = partner.times(&group.kappa());
            let out = PacketMember::orth(&phi, member.chi_v, member.c, eta)?;
            if out.tag != member.tag {
                return Err(vanish("the lift lives on the other tower"));
            }
            Ok(out)
        }
    }
}

fn require_side(member: &PacketMember, side: Side) -> Result<()> {
    if member.side != side {
        return Err(Error::UnsupportedSide(format!("expected a {side:?} member")));
    }
    Ok(())
}

/// Decomposition of a parameter into shifted pairs and a tempered core.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LanglandsDatum {
    /// (summand, multiplicity, s) with s > 0, sorted by decreasing s.
    pub shifts: Vec<(Summand, u32, Rational64)>,
    pub core: Parameter,
}

impl LanglandsDatum {
    /// Sum of phi_i |.|^s_i + core + phi_i^v |.|^-s_i.
    pub fn reassemble(&self) -> Result<Parameter> {
        let mut terms: Vec<Term> = self.core.terms().to_vec();
        for (s, m, shift) in &self.shifts {
            terms.push(Term::shifted(s.clone(), *m, *shift));
            terms.push(Term::shifted(s.clone(), *m, -*shift));
        }
        Parameter::new(self.core.field(), terms)
    }
}

/// Splits off the shifted part of phi.
pub fn langlands_reduce(phi: &Parameter) -> Result<LanglandsDatum> {
    if let Some(t) = phi.unpaired_shift() {
        return Err(Error::InvalidParameter(format!(
            "{} at shift {} has no dual partner at {}",
            t.summand.atom(),
            t.shift,
            -t.shift
        )));
    }
    let zero = Rational64::from_integer(0);
    let mut shifts = Vec::new();
    let mut core = Vec::new();
    for t in phi.terms() {
        if t.shift > zero {
            shifts.push((t.summand.clone(), t.mult, t.shift));
        } else if t.shift == zero {
            if !t.summand.is_tempered() {
                return Err(Error::InvalidParameter(format!("{} is not tempered", t.summand.atom())));
            }
            core.push(t.clone());
        }
    }
    shifts.sort_by(|a, b| b.2.cmp(&a.2).then_with(|| a.0.cmp(&b.0)));
    Ok(LanglandsDatum { shifts, core: Parameter::new(phi.field(), core)? })
}

/// One det-twist orbit of a packet and the character of S+ it maps to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SoOrbit {
    pub members: Vec<Character>,
    pub restriction: Vec<Sign>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SoReport {
    pub orbits: Vec<SoOrbit>,
    pub s_plus_order: u64,
    /// Orbits and characters of S+ are in bijection via restriction.
    pub bijective: bool,
    /// Restriction is constant on orbits and commutes with every change of Whittaker datum.
    pub square_commutes: bool,
}

/// Groups the packet into det-twist orbits and matches them with characters of S+.
pub fn so_descend(phi: &Parameter, chi_v: QuadraticCharacter, datum: WhittakerDatum) -> Result<SoReport> {
    let members = enumerate_packet(phi, chi_v, datum)?;
    let group = ComponentGroup::of(phi);
    let mut orbits: Vec<SoOrbit> = Vec::new();
    let mut square_commutes = true;
    for m in &members {
        if orbits.iter().any(|o| o.members.contains(&m.eta)) {
            continue;
        }
        let partner = det_twist(m)?.eta;
        let restriction = group.restrict_to_s_plus(&m.eta);
        square_commutes &= group.restrict_to_s_plus(&partner) == restriction;
        let mut orbit = vec![m.eta];
        if partner != m.eta {
            orbit.push(partner);
        }
        orbits.push(SoOrbit { members: orbit, restriction });
    }
    for m in &members {
        for c2 in phi.field().classes() {
            let moved = change_whittaker(m, datum.c, c2)?;
            let shift = eta_twisted(&group, chi_v, c2.try_mul(datum.c)?)?;
            let lhs = group.restrict_to_s_plus(&moved);
            let rhs: Vec<Sign> = group
                .restrict_to_s_plus(&m.eta)
                .into_iter()
                .zip(group.restrict_to_s_plus(&shift))
                .map(|(a, b)| a * b)
                .collect();
            square_commutes &= lhs == rhs;
        }
    }
    let mut restrictions: Vec<&Vec<Sign>> = orbits.iter().map(|o| &o.restriction).collect();
    restrictions.sort();
    restrictions.dedup();
    let s_plus_order = group.s_plus_order();
    let bijective = restrictions.len() == orbits.len() && orbits.len() as u64 == s_plus_order;
    Ok(SoReport { orbits, s_plus_order, bijective, square_commutes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arithmetic::LocalField;

    struct Running {
        f: LocalField,
        chi_v: QuadraticCharacter,
        phi: Parameter,
    }

    fn running() -> Running {
        let f = LocalField::new(5).unwrap();
        let chi_v = QuadraticCharacter::new(f.class_of_int(5).unwrap());
        let phi = Parameter::characters(f, &[(1, 1), (5, 1)]).unwrap();
        Running { f, chi_v, phi }
    }

    fn member(r: &Running, bits: &str, c: i64) -> PacketMember {
        let c = r.f.class_of_int(c).unwrap();
        PacketMember::orth(&r.phi, r.chi_v, c, Character::parse_bits(bits, 2).unwrap()).unwrap()
    }

    #[test]
    fn running_packet() {
        let r = running();
        let packet = enumerate_packet(&r.phi, r.chi_v, WhittakerDatum::new(r.f.one())).unwrap();
        assert_eq!(packet.len(), 4);
        let plus: Vec<String> = packet.iter().filter(|m| m.tag == GroupTag::Vplus).map(|m| m.eta.bits()).collect();
        assert_eq!(plus, vec!["++", "--"]);
    }

    #[test]
    fn packet_tags_for_nontrivial_datum() {
        let r = running();
        let phi = Parameter::characters(r.f, &[(2, 1), (10, 1)]).unwrap();
        let packet = enumerate_packet(&phi, r.chi_v, WhittakerDatum::new(r.f.class_of_int(2).unwrap())).unwrap();
        for m in &packet {
            let expected = m.eta.eval(0b11) == Sign::Minus;
            assert_eq!(m.tag == GroupTag::Vplus, expected);
        }
    }

    #[test]
    fn whittaker_change() {
        let r = running();
        let m = member(&r, "++", 1);
        assert_eq!(change_whittaker(&m, r.f.one(), r.f.one()).unwrap(), m.eta);
        let two = r.f.class_of_int(2).unwrap();
        assert_eq!(change_whittaker(&m, r.f.one(), two).unwrap().bits(), "-+");
        let five = r.f.class_of_int(5).unwrap();
        assert_eq!(change_whittaker(&m, r.f.one(), five).unwrap(), m.eta);
    }

    #[test]
    fn det_twist_and_generic_members() {
        let r = running();
        let m = member(&r, "++", 1);
        let t = det_twist(&m).unwrap();
        assert_eq!(t.eta.bits(), "--");
        assert_eq!(t.tag, m.tag);
        assert_eq!(det_twist(&t).unwrap(), m);
        let datum = WhittakerDatum::new(r.f.one());
        assert!(generic_member(&r.phi, r.chi_v, datum, Sign::Plus).unwrap().eta.is_trivial());
        assert_eq!(generic_member(&r.phi, r.chi_v, datum, Sign::Minus).unwrap().eta.bits(), "--");
    }

    #[test]
    fn theta_lifts_of_members() {
        let r = running();
        let m = member(&r, "++", 1);
        let up = theta_lift_member(&m, Direction::OrthToSympUp).unwrap();
        assert_eq!(up.phi, Parameter::characters(r.f, &[(5, 2), (1, 1)]).unwrap());
        assert_eq!(theta_lift_member(&up, Direction::SympToOrthDown).unwrap(), m);
        let bad = member(&r, "+-", 1);
        assert!(matches!(theta_lift_member(&bad, Direction::OrthToSympUp), Err(Error::ThetaVanishes(_))));
        let down = theta_lift_member(&bad, Direction::OrthToSympDown).unwrap();
        assert_eq!(down.phi, Parameter::characters(r.f, &[(1, 1)]).unwrap());
        assert_eq!(theta_lift_member(&down, Direction::SympToOrthUp).unwrap(), bad);
    }

    #[test]
    fn contragredient() {
        let f = LocalField::new(3).unwrap();
        let m1 = f.minus_one();
        let sp = Parameter::characters(f, &[(3, 2), (1, 1)]).unwrap();
        let g = ComponentGroup::of(&sp);
        let eta = Character::trivial(g.rank());
        let m = PacketMember::symp(&sp, QuadraticCharacter::new(m1), f.one(), eta, GroupTag::Vplus).unwrap();
        let dual = contragredient_symp(&m).unwrap();
        assert_eq!(dual.bits(), "+-");
        let o = PacketMember::orth(
            &Parameter::characters(f, &[(1, 1), (-1, 1)]).unwrap(),
            QuadraticCharacter::new(m1),
            f.one(),
            Character::trivial(2),
        )
        .unwrap();
        assert!(matches!(contragredient_symp(&o), Err(Error::UnsupportedSide(_))));
    }

    #[test]
    fn langlands_reduction() {
        let r = running();
        let two = Summand::character(r.f.class_of_int(2).unwrap());
        let half = Rational64::new(1, 2);
        let mut terms = r.phi.terms().to_vec();
        terms.push(Term::shifted(two.clone(), 1, half));
        terms.push(Term::shifted(two.clone(), 1, -half));
        let phi = Parameter::new(r.f, terms).unwrap();
        let datum = langlands_reduce(&phi).unwrap();
        assert_eq!(datum.shifts, vec![(two.clone(), 1, half)]);
        assert_eq!(datum.core, r.phi);
        assert_eq!(datum.reassemble().unwrap(), phi);
        assert!(langlands_reduce(&r.phi).unwrap().shifts.is_empty());
        let bad = Parameter::new(r.f, vec![Term::shifted(two, 2, half)]).unwrap();
        assert!(matches!(langlands_reduce(&bad), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn so_descent_of_running_packet() {
        let r = running();
        let report = so_descend(&r.phi, r.chi_v, WhittakerDatum::new(r.f.one())).unwrap();
        assert_eq!(report.orbits.len(), 2);
        assert_eq!(report.s_plus_order, 2);
        assert!(report.bijective && report.square_commutes);
    }
}
