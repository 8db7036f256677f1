//! Formal parameters: finite multisets of typed summands with shifts.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Rational64;

use super::summand::{SdType, Summand};
use crate::arithmetic::{LocalField, QuadraticCharacter, SquareClass};
use crate::error::{Error, Result};

/// One line of a parameter: `mult` copies of `summand |.|^shift`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub summand: Summand,
    pub mult: u32,
    pub shift: Rational64,
}

impl Term {
    pub fn new(summand: Summand, mult: u32) -> Term {
        Term { summand, mult, shift: Rational64::from_integer(0) }
    }

    pub fn shifted(summand: Summand, mult: u32, shift: Rational64) -> Term {
        Term { summand, mult, shift }
    }

    /// The term in scenario syntax, e.g. `2*chi(5)@1/2`.
    pub fn to_dsl(&self) -> String {
        let mut out = String::new();
        if self.mult != 1 {
            out.push_str(&format!("{}*", self.mult));
        }
        out.push_str(&self.summand.atom());
        if self.shift != Rational64::from_integer(0) {
            out.push_str(&format!("@{}", self.shift));
        }
        out
    }
}

/// What a parameter can be a parameter for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParamClass {
    /// Even dimension and orthogonal type: an O(V_2n) candidate.
    Orthogonal,
    /// Odd dimension, orthogonal type, trivial determinant: an Sp(W_2n) candidate.
    Symplectic,
    /// Neither.
    Other,
}

/// A formal parameter over Q_p.
///
/// Terms are merged by (summand, shift) and kept sorted, so structural
/// equality is multiset equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Parameter {
    field: LocalField,
    terms: Vec<Term>,
}

fn zero() -> Rational64 {
    Rational64::from_integer(0)
}

impl Parameter {
    pub fn empty(field: LocalField) -> Parameter {
        Parameter { field, terms: Vec::new() }
    }

    /// Validates and normalizes a list of terms.
    pub fn new(field: LocalField, terms: Vec<Term>) -> Result<Parameter> {
        let mut merged: BTreeMap<(Summand, Rational64), u32> = BTreeMap::new();
        let mut seen: BTreeMap<super::SummandId, Summand> = BTreeMap::new();
        for t in terms {
            if t.summand.det().field() != field {
                return Err(Error::FieldMismatch { left: field.p(), right: t.summand.det().field().p() });
            }
            if t.mult == 0 {
                return Err(Error::InvalidParameter(format!("{} has multiplicity 0", t.summand)));
            }
            if let Some(prev) = seen.get(t.summand.id()) {
                if prev != &t.summand {
                    return Err(Error::InvalidParameter(format!(
                        "summand {} declared twice with conflicting data ({} vs {})",
                        t.summand.id(),
                        prev.atom(),
                        t.summand.atom()
                    )));
                }
            } else {
                seen.insert(t.summand.id().clone(), t.summand.clone());
            }
            *merged.entry((t.summand, t.shift)).or_insert(0) += t.mult;
        }
        let terms = merged
            .into_iter()
            .map(|((summand, shift), mult)| Term { summand, mult, shift })
            .collect();
        Ok(Parameter { field, terms })
    }

    /// Tempered parameter from (summand, multiplicity) pairs.
    pub fn from_summands(field: LocalField, items: &[(Summand, u32)]) -> Result<Parameter> {
        Parameter::new(field, items.iter().map(|(s, m)| Term::new(s.clone(), *m)).collect())
    }

    /// Tempered parameter made of quadratic characters with multiplicities.
    pub fn characters(field: LocalField, items: &[(i64, u32)]) -> Result<Parameter> {
        let mut terms = Vec::new();
        for &(c, m) in items {
            terms.push(Term::new(Summand::character(field.class_of_int(c)?), m));
        }
        Parameter::new(field, terms)
    }

    pub fn field(&self) -> LocalField {
        self.field
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn dim(&self) -> u32 {
        self.terms.iter().map(|t| t.mult * t.summand.total_dim()).sum()
    }

    /// Determinant as a square class: product of det_i^{m_i} over orthogonal terms.
    pub fn det(&self) -> SquareClass {
        self.terms
            .iter()
            .filter(|t| t.summand.is_orthogonal())
            .fold(self.field.one(), |acc, t| acc * t.summand.det().pow(t.mult as u64))
    }

    pub fn is_tempered(&self) -> bool {
        self.terms.iter().all(|t| t.shift == zero() && t.summand.is_tempered())
    }

    /// Tempered, multiplicity free, and built from orthogonal summands only.
    pub fn is_discrete(&self) -> bool {
        self.is_tempered() && self.terms.iter().all(|t| t.mult == 1 && t.summand.is_orthogonal())
    }

    /// Shifts come in (s, -s) pairs and symplectic summands occur with even multiplicity.
    pub fn is_orthogonal_type(&self) -> bool {
        self.unpaired_shift().is_none()
            && self
                .terms
                .iter()
                .filter(|t| t.shift == zero() && t.summand.sd_type() == SdType::Symplectic)
                .all(|t| t.mult % 2 == 0)
    }

    /// First term whose mirror term at the negated shift is missing or has a different multiplicity.
    pub fn unpaired_shift(&self) -> Option<&Term> {
        self.terms.iter().find(|t| {
            t.shift != zero() && self.mult_at(&t.summand, -t.shift) != t.mult
        })
    }

    pub fn classify(&self) -> ParamClass {
        if !self.is_orthogonal_type() {
            ParamClass::Other
        } else if self.dim().is_multiple_of(2) {
            ParamClass::Orthogonal
        } else if self.det().is_one() {
            ParamClass::Symplectic
        } else {
            ParamClass::Other
        }
    }

    /// Checks that this is a parameter for O(V_2n) with discriminant character `chi_v`.
    pub fn check_orthogonal(&self, chi_v: QuadraticCharacter) -> Result<()> {
        if self.classify() != ParamClass::Orthogonal {
            return Err(Error::InvalidParameter(format!("{self} is not an even orthogonal parameter")));
        }
        if self.det() != chi_v.d {
            return Err(Error::InvalidParameter(format!(
                "det {self} = {} differs from the discriminant class {}",
                self.det(),
                chi_v.d
            )));
        }
        Ok(())
    }

    /// Checks that this is a parameter for Sp(W_2n).
    pub fn check_symplectic(&self) -> Result<()> {
        if self.classify() != ParamClass::Symplectic {
            return Err(Error::InvalidParameter(format!("{self} is not a parameter for a symplectic group")));
        }
        Ok(())
    }

    pub fn mult_at(&self, summand: &Summand, shift: Rational64) -> u32 {
        self.terms
            .iter()
            .find(|t| t.summand.id() == summand.id() && t.shift == shift)
            .map_or(0, |t| t.mult)
    }

    /// Multiplicity of `summand` in the unshifted part.
    pub fn contains(&self, summand: &Summand) -> u32 {
        self.mult_at(summand, zero())
    }

    pub fn contains_trivial(&self) -> u32 {
        self.contains(&Summand::character(self.field.one()))
    }

    /// The twist by a quadratic character; an involution.
    pub fn twist(&self, chi: QuadraticCharacter) -> Parameter {
        let terms = self
            .terms
            .iter()
            .map(|t| Term { summand: t.summand.twist(chi), mult: t.mult, shift: t.shift })
            .collect();
        Parameter::new(self.field, terms).expect("twisting preserves validity")
    }

    /// Adds `mult` unshifted copies of `summand`.
    pub fn plus(&self, summand: &Summand, mult: u32) -> Result<Parameter> {
        let mut terms = self.terms.clone();
        terms.push(Term::new(summand.clone(), mult));
        Parameter::new(self.field, terms)
    }

    /// Removes one unshifted copy of `summand`; `None` if it does not occur.
    pub fn minus(&self, summand: &Summand) -> Option<Parameter> {
        let pos = self.terms.iter().position(|t| t.summand.id() == summand.id() && t.shift == zero())?;
        let mut terms = self.terms.clone();
        if terms[pos].mult == 1 {
            terms.remove(pos);
        } else {
            terms[pos].mult -= 1;
        }
        Some(Parameter { field: self.field, terms })
    }

    /// Canonical report form: `kind(id,dim,det,mult,shift)` per term, sorted.
    pub fn canonical(&self) -> String {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                let det = match t.summand.sd_type() {
                    SdType::NonSelfDualPair => "-".to_string(),
                    _ => t.summand.det().to_string(),
                };
                format!(
                    "{}({},{},{},{},{})",
                    t.summand.kind_name(),
                    t.summand.id(),
                    t.summand.dim(),
                    det,
                    t.mult,
                    t.shift
                )
            })
            .collect();
        parts.join(" ")
    }
}

impl fmt::Display for Parameter {
    /// Scenario syntax body: `{ chi(1); 2*chi(5); }`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "{{ }}");
        }
        write!(f, "{{ ")?;
        for t in &self.terms {
            write!(f, "{}; ", t.to_dsl())?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q5() -> LocalField {
        LocalField::new(5).unwrap()
    }

    #[test]
    fn running_parameter() {
        let phi = Parameter::characters(q5(), &[(1, 1), (5, 1)]).unwrap();
        assert_eq!(phi.dim(), 2);
        assert_eq!(phi.det().repr(), 5);
        assert!(phi.is_tempered() && phi.is_discrete());
        assert_eq!(phi.classify(), ParamClass::Orthogonal);
        let chi_v = QuadraticCharacter::new(q5().class_of_int(5).unwrap());
        phi.check_orthogonal(chi_v).unwrap();
    }

    #[test]
    fn empty_and_symplectic_candidates() {
        let e = Parameter::empty(q5());
        assert_eq!((e.dim(), e.det()), (0, q5().one()));
        let sp = Parameter::characters(q5(), &[(5, 2), (1, 1)]).unwrap();
        assert_eq!(sp.dim(), 3);
        assert!(sp.det().is_one());
        assert_eq!(sp.classify(), ParamClass::Symplectic);
        assert!(!sp.is_discrete());
    }

    #[test]
    fn conflicting_declarations_are_rejected() {
        let f = q5();
        let a1 = Summand::orthogonal("A", 2, f.one()).unwrap();
        let a2 = Summand::orthogonal("A", 2, f.class_of_int(5).unwrap()).unwrap();
        let err = Parameter::from_summands(f, &[(a1, 1), (a2, 1)]).unwrap_err();
        assert!(matches!(err, Error::InvalidParameter(_)));
    }

    #[test]
    fn contains_counts_multiplicity() {
        let f = q5();
        let sp = Parameter::characters(f, &[(5, 2), (1, 1)]).unwrap();
        assert_eq!(sp.contains(&Summand::character(f.class_of_int(5).unwrap())), 2);
        assert_eq!(sp.contains_trivial(), 1);
        assert_eq!(sp.contains(&Summand::character(f.class_of_int(2).unwrap())), 0);
    }

    #[test]
    fn twist_is_an_involution() {
        let f = q5();
        let chi = QuadraticCharacter::new(f.class_of_int(5).unwrap());
        let phi = Parameter::characters(f, &[(1, 1), (5, 1)]).unwrap();
        assert_eq!(phi.twist(chi), phi);
        let a = Summand::orthogonal("A", 2, f.one()).unwrap();
        let psi = Parameter::from_summands(f, &[(a, 1), (Summand::character(f.one()), 1)]).unwrap();
        assert_eq!(psi.twist(chi).twist(chi), psi);
        assert_ne!(psi.twist(chi), psi);
    }

    #[test]
    fn shifts_must_pair() {
        let f = q5();
        let two = Summand::character(f.class_of_int(2).unwrap());
        let half = Rational64::new(1, 2);
        let ok = Parameter::new(
            f,
            vec![Term::shifted(two.clone(), 1, half), Term::shifted(two.clone(), 1, -half)],
        )
        .unwrap();
        assert!(ok.is_orthogonal_type() && !ok.is_tempered());
        let bad = Parameter::new(f, vec![Term::shifted(two, 1, half)]).unwrap();
        assert!(bad.unpaired_shift().is_some());
    }

    #[test]
    fn canonical_form() {
        let f = q5();
        let phi = Parameter::characters(f, &[(5, 2), (1, 1)]).unwrap();
        assert_eq!(phi.canonical(), "orth(chi(1),1,1,1,0) orth(chi(5),1,5,2,0)");
        assert_eq!(phi.to_string(), "{ chi(1); 2*chi(5); }");
    }
}
