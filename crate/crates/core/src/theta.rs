//! Theta transfer between O(V_2n) and Sp(W_2n) at the level of parameters and characters.

use std::fmt;

use crate::arithmetic::QuadraticCharacter;
use crate::error::{Error, Result};
use crate::parameters::{Character, ComponentGroup, GroupElem, Parameter, Summand};

/// Direction of a theta transfer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    /// O(V_2n) to Sp(W_2n).
    OrthToSympUp,
    /// O(V_2n) to Sp(W_2n-2), applied to the det twist of the member.
    OrthToSympDown,
    /// Sp(W_2n) to O(V_2n+2); inverse of [`Direction::OrthToSympDown`].
    SympToOrthUp,
    /// Sp(W_2n) to O(V_2n); inverse of [`Direction::OrthToSympUp`].
    SympToOrthDown,
}

impl Direction {
    /// Change of the (even) dimension of the target space relative to the source.
    pub fn dim_shift(self) -> i32 {
        match self {
            Direction::OrthToSympUp | Direction::SympToOrthDown => 0,
            Direction::OrthToSympDown => -2,
            Direction::SympToOrthUp => 2,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Direction::OrthToSympUp => "orth-to-symp-up",
            Direction::OrthToSympDown => "orth-to-symp-down",
            Direction::SympToOrthUp => "symp-to-orth-up",
            Direction::SympToOrthDown => "symp-to-orth-down",
        };
        f.write_str(s)
    }
}

/// Mode of [`symp_to_orth_params`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Down,
    Up,
}

/// First occurrences of pi and pi (x) det in the symplectic tower, clamped to {2n-2, 2n, 2n+2}.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OccurrenceRecord {
    pub n: u32,
    pub m_pi: u32,
    pub m_pi_det: u32,
}

impl OccurrenceRecord {
    pub fn is_conserved(&self) -> bool {
        self.m_pi + self.m_pi_det == 4 * self.n
    }
}

/// phi+ = (phi (x) chi_V) + chi_V.
pub fn lift_up_param(phi: &Parameter, chi_v: QuadraticCharacter) -> Result<Parameter> {
    phi.check_orthogonal(chi_v)?;
    phi.twist(chi_v).plus(&Summand::character(chi_v.d), 1)
}

/// phi- = (phi - 1) (x) chi_V.
pub fn lift_down_param(phi: &Parameter, chi_v: QuadraticCharacter) -> Result<Parameter> {
    phi.check_orthogonal(chi_v)?;
    let rest = phi
        .minus(&Summand::character(phi.field().one()))
        .ok_or_else(|| Error::TrivialNotContained(phi.to_string()))?;
    Ok(rest.twist(chi_v))
}

/// Orthogonal parameter attached to a symplectic one: (phi+ (x) chi_V) -/+ 1.
pub fn symp_to_orth_params(phi_plus: &Parameter, chi_v: QuadraticCharacter, mode: Mode) -> Result<Parameter> {
    phi_plus.check_symplectic()?;
    let twisted = phi_plus.twist(chi_v);
    let one = Summand::character(phi_plus.field().one());
    match mode {
        Mode::Down => twisted.minus(&one).ok_or_else(|| Error::CharNotContained {
            chi: Summand::character(chi_v.d).atom(),
            phi: phi_plus.to_string(),
        }),
        Mode::Up => twisted.plus(&one, 1),
    }
}

/// The element z_phi + a_1 whose sign decides membership in the theta-plus half,
/// or `None` when 1 does not occur in phi.
pub fn pi_plus_element(group: &ComponentGroup) -> Option<GroupElem> {
    group.trivial_index().map(|i| group.z() ^ (1 << i))
}

/// True iff theta to Sp(W_2n) of the member with character `eta` is nonzero.
pub fn in_theta_plus(group: &ComponentGroup, eta: &Character) -> bool {
    match pi_plus_element(group) {
        None => true,
        Some(x) => !eta.eval(x).is_minus(),
    }
}

fn require_tempered(phi: &Parameter) -> Result<()> {
    if phi.is_tempered() {
        Ok(())
    } else {
        Err(Error::TemperedOnly(phi.to_string()))
    }
}

/// Nonvanishing of the theta lift of the packet member (phi, eta) in the given direction.
///
/// For the orthogonal directions `phi` is an O(V_2n) parameter and exactly one of
/// Up and Down holds; Down refers to the lift of the det twist to Sp(W_2n-2).
/// For the symplectic directions `phi` is an Sp(W_2n) parameter.
pub fn theta_nonvanishing(
    phi: &Parameter,
    chi_v: QuadraticCharacter,
    eta: &Character,
    direction: Direction,
) -> Result<bool> {
    require_tempered(phi)?;
    let group = ComponentGroup::of(phi);
    if eta.rank() != group.rank() {
        return Err(Error::BadCharacter(format!("character {eta} has rank {}, expected {}", eta.rank(), group.rank())));
    }
    Ok(match direction {
        Direction::OrthToSympUp => in_theta_plus(&group, eta),
        Direction::OrthToSympDown => !in_theta_plus(&group, eta),
        Direction::SympToOrthDown => phi.contains(&Summand::character(chi_v.d)) > 0,
        Direction::SympToOrthUp => true,
    })
}

/// Occurrence record of the member (phi, eta).
pub fn first_occurrence(phi: &Parameter, eta: &Character) -> Result<OccurrenceRecord> {
    require_tempered(phi)?;
    let n = phi.dim() / 2;
    let group = ComponentGroup::of(phi);
    let (m_pi, m_pi_det) = match pi_plus_element(&group) {
        None => (2 * n, 2 * n),
        Some(_) if in_theta_plus(&group, eta) => (2 * n - 2, 2 * n + 2),
        Some(_) => (2 * n + 2, 2 * n - 2),
    };
    Ok(OccurrenceRecord { n, m_pi, m_pi_det })
}

/// True iff every member of the packet of phi satisfies the conservation relation.
pub fn conservation_check(phi: &Parameter) -> Result<bool> {
    let group = ComponentGroup::of(phi);
    for eta in group.characters() {
        if !first_occurrence(phi, &eta)?.is_conserved() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arithmetic::LocalField;

    fn setup() -> (LocalField, QuadraticCharacter) {
        let f = LocalField::new(5).unwrap();
        (f, QuadraticCharacter::new(f.class_of_int(5).unwrap()))
    }

    #[test]
    fn lifting_the_running_parameter() {
        let (f, chi_v) = setup();
        let phi = Parameter::characters(f, &[(1, 1), (5, 1)]).unwrap();
        let up = lift_up_param(&phi, chi_v).unwrap();
        assert_eq!(up, Parameter::characters(f, &[(5, 2), (1, 1)]).unwrap());
        assert_eq!(symp_to_orth_params(&up, chi_v, Mode::Down).unwrap(), phi);
        assert_eq!(lift_down_param(&phi, chi_v).unwrap(), Parameter::characters(f, &[(1, 1)]).unwrap());
    }

    #[test]
    fn lifting_without_trivial_summand() {
        let (f, chi_v) = setup();
        let phi = Parameter::characters(f, &[(2, 1), (10, 1)]).unwrap();
        let up = lift_up_param(&phi, chi_v).unwrap();
        assert_eq!(up, Parameter::characters(f, &[(10, 1), (2, 1), (5, 1)]).unwrap());
        assert!(matches!(lift_down_param(&phi, chi_v), Err(Error::TrivialNotContained(_))));
        assert_eq!(symp_to_orth_params(&up, chi_v, Mode::Down).unwrap(), phi);
    }

    #[test]
    fn degenerate_parameters() {
        let (f, _) = setup();
        let triv = QuadraticCharacter::trivial(f);
        let empty = Parameter::empty(f);
        assert_eq!(lift_up_param(&empty, triv).unwrap(), Parameter::characters(f, &[(1, 1)]).unwrap());
        let one = Parameter::characters(f, &[(1, 1)]).unwrap();
        assert_eq!(symp_to_orth_params(&one, triv, Mode::Down).unwrap(), empty);
        let rec = first_occurrence(&empty, &Character::trivial(0)).unwrap();
        assert_eq!((rec.m_pi, rec.m_pi_det), (0, 0));
    }

    #[test]
    fn character_not_contained() {
        let (f, chi_v) = setup();
        let sp = Parameter::characters(f, &[(1, 1), (2, 2)]).unwrap();
        assert!(matches!(symp_to_orth_params(&sp, chi_v, Mode::Down), Err(Error::CharNotContained { .. })));
    }

    #[test]
    fn nonvanishing_rules() {
        let (f, chi_v) = setup();
        let run = Parameter::characters(f, &[(1, 1), (5, 1)]).unwrap();
        let pp = Character::parse_bits("++", 2).unwrap();
        let pm = Character::parse_bits("+-", 2).unwrap();
        assert!(theta_nonvanishing(&run, chi_v, &pp, Direction::OrthToSympUp).unwrap());
        assert!(!theta_nonvanishing(&run, chi_v, &pm, Direction::OrthToSympUp).unwrap());
        assert!(theta_nonvanishing(&run, chi_v, &pm, Direction::OrthToSympDown).unwrap());
        let other = Parameter::characters(f, &[(2, 1), (10, 1)]).unwrap();
        for eta in ComponentGroup::of(&other).characters() {
            assert!(theta_nonvanishing(&other, chi_v, &eta, Direction::OrthToSympUp).unwrap());
            assert!(!theta_nonvanishing(&other, chi_v, &eta, Direction::OrthToSympDown).unwrap());
        }
    }

    #[test]
    fn occurrence_records() {
        let (f, _) = setup();
        let other = Parameter::characters(f, &[(2, 1), (10, 1)]).unwrap();
        let rec = first_occurrence(&other, &Character::trivial(2)).unwrap();
        assert_eq!((rec.m_pi, rec.m_pi_det), (2, 2));
        let run = Parameter::characters(f, &[(1, 1), (5, 1)]).unwrap();
        let rec = first_occurrence(&run, &Character::trivial(2)).unwrap();
        assert_eq!((rec.m_pi, rec.m_pi_det), (0, 4));
        assert!(conservation_check(&run).unwrap());
        assert!(conservation_check(&other).unwrap());
    }
}
