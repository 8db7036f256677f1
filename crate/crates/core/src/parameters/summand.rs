//! Irreducible summands of a formal parameter.

use std::fmt;

use crate::arithmetic::{LocalField, QuadraticCharacter, SquareClass};
use crate::error::{Error, Result};

/// Self-duality type of an irreducible summand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SdType {
    Orthogonal,
    Symplectic,
    /// A non-self-dual irreducible together with its dual.
    NonSelfDualPair,
}

/// Identity of a summand.
///
/// One-dimensional orthogonal summands are quadratic characters and are named by
/// their class; every other summand carries an opaque base label and the
/// quadratic twist applied to it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SummandId {
    Char(SquareClass),
    Named { base: String, twist: SquareClass },
}

impl fmt::Display for SummandId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SummandId::Char(c) => write!(f, "chi({c})"),
            SummandId::Named { base, twist } if twist.is_one() => write!(f, "{base}"),
            SummandId::Named { base, twist } => write!(f, "{base}~{twist}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Summand {
    id: SummandId,
    dim: u32,
    sd_type: SdType,
    det: SquareClass,
    tempered: bool,
}

impl Summand {
    /// The quadratic character (., c).
    pub fn character(c: SquareClass) -> Summand {
        Summand { id: SummandId::Char(c), dim: 1, sd_type: SdType::Orthogonal, det: c, tempered: true }
    }

    /// Orthogonal summand; dimension one collapses to the character of `det`.
    pub fn orthogonal(name: &str, dim: u32, det: SquareClass) -> Result<Summand> {
        if dim == 1 {
            return Ok(Summand::character(det));
        }
        Self::named(name, dim, SdType::Orthogonal, det)
    }

    pub fn symplectic(name: &str, dim: u32, field: LocalField) -> Result<Summand> {
        if !dim.is_multiple_of(2) {
            return Err(Error::InvalidParameter(format!("symplectic summand {name} has odd dimension {dim}")));
        }
        Self::named(name, dim, SdType::Symplectic, field.one())
    }

    pub fn pair(name: &str, dim: u32, field: LocalField) -> Result<Summand> {
        Self::named(name, dim, SdType::NonSelfDualPair, field.one())
    }

    fn named(name: &str, dim: u32, sd_type: SdType, det: SquareClass) -> Result<Summand> {
        if dim == 0 {
            return Err(Error::InvalidParameter(format!("summand {name} has dimension 0")));
        }
        if !valid_name(name) {
            return Err(Error::InvalidParameter(format!("bad summand name {name:?}")));
        }
        let id = SummandId::Named { base: name.to_string(), twist: det.field().one() };
        Ok(Summand { id, dim, sd_type, det, tempered: true })
    }

    pub fn with_tempered(mut self, tempered: bool) -> Summand {
        self.tempered = tempered;
        self
    }

    pub fn id(&self) -> &SummandId {
        &self.id
    }

    /// Dimension of one member (for pairs, half the total).
    pub fn dim(&self) -> u32 {
        self.dim
    }

    /// Dimension of the representation the summand stands for.
    pub fn total_dim(&self) -> u32 {
        match self.sd_type {
            SdType::NonSelfDualPair => 2 * self.dim,
            _ => self.dim,
        }
    }

    pub fn sd_type(&self) -> SdType {
        self.sd_type
    }

    /// Determinant class; trivial for symplectic summands and pairs.
    pub fn det(&self) -> SquareClass {
        self.det
    }

    pub fn is_tempered(&self) -> bool {
        self.tempered
    }

    pub fn is_orthogonal(&self) -> bool {
        self.sd_type == SdType::Orthogonal
    }

    pub fn is_trivial_character(&self) -> bool {
        matches!(self.id, SummandId::Char(c) if c.is_one())
    }

    /// Base label and twist of a named summand; characters have none.
    pub fn base(&self) -> Option<(&str, SquareClass)> {
        match &self.id {
            SummandId::Char(_) => None,
            SummandId::Named { base, twist } => Some((base, *twist)),
        }
    }

    pub fn twist(&self, chi: QuadraticCharacter) -> Summand {
        let d = chi.d;
        let id = match &self.id {
            SummandId::Char(c) => SummandId::Char(*c * d),
            SummandId::Named { base, twist } => SummandId::Named { base: base.clone(), twist: *twist * d },
        };
        let det = match self.sd_type {
            SdType::Orthogonal => self.det * d.pow(self.dim as u64),
            _ => self.det,
        };
        Summand { id, dim: self.dim, sd_type: self.sd_type, det, tempered: self.tempered }
    }

    /// Atom in scenario syntax, e.g. `chi(5)`, `orth(A,2,5)`, `symp(B,2)`, `pair(C,1)`.
    pub fn atom(&self) -> String {
        match (&self.id, self.sd_type) {
            (SummandId::Char(c), _) => format!("chi({c})"),
            (id, SdType::Orthogonal) => format!("orth({id},{},{})", self.dim, self.det),
            (id, SdType::Symplectic) => format!("symp({id},{})", self.dim),
            (id, SdType::NonSelfDualPair) => format!("pair({id},{})", self.dim),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self.sd_type {
            SdType::Orthogonal => "orth",
            SdType::Symplectic => "symp",
            SdType::NonSelfDualPair => "pair",
        }
    }

    /// Rebuilds a named summand with an explicit twist label (used by the parser).
    pub fn with_twist_label(mut self, twist: SquareClass) -> Summand {
        if let SummandId::Named { twist: t, .. } = &mut self.id {
            *t = twist;
        }
        self
    }
}

impl fmt::Display for Summand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.atom())
    }
}

pub(crate) fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && name != "chi"
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dim_one_orthogonal_is_a_character() {
        let f = LocalField::new(5).unwrap();
        let five = f.class_of_int(5).unwrap();
        assert_eq!(Summand::orthogonal("A", 1, five).unwrap(), Summand::character(five));
    }

    #[test]
    fn twisting_updates_det_and_label() {
        let f = LocalField::new(5).unwrap();
        let five = f.class_of_int(5).unwrap();
        let chi = QuadraticCharacter::new(five);
        let a = Summand::orthogonal("A", 2, f.one()).unwrap();
        let at = a.twist(chi);
        assert_eq!(at.det(), f.one());
        assert_eq!(at.atom(), "orth(A~5,2,1)");
        assert_eq!(at.twist(chi), a);
        let b = Summand::orthogonal("B", 3, f.one()).unwrap();
        assert_eq!(b.twist(chi).det(), five);
        assert_eq!(Summand::character(f.one()).twist(chi), Summand::character(five));
    }

    #[test]
    fn names_and_dims_are_checked() {
        let f = LocalField::new(3).unwrap();
        assert!(Summand::symplectic("S", 3, f).is_err());
        assert!(Summand::orthogonal("9x", 2, f.one()).is_err());
        assert!(Summand::pair("P", 0, f).is_err());
    }
}
