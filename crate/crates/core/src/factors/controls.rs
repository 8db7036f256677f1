//! Deliberately broken variants of the factor identities, used as negative controls.

use super::expr::{FactorExpr, Token};
use super::identities::{comgamma_identity, complan_identity, Identity, RSquaredParts};
use crate::arithmetic::{LocalField, QuadraticCharacter};
use crate::error::Result;
use crate::parameters::{Parameter, Summand};

/// A generic corruption of an expression.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Corruption {
    /// Negates the exponent of the first token.
    FlipExponent,
    /// Replaces the additive character of the first gamma, epsilon or lambda token by psi_varpi.
    UniformizerPsi,
}

/// The corrupted expression, or `None` when there is nothing to corrupt.
pub fn corrupt(expr: &FactorExpr, c: Corruption, field: LocalField) -> Option<FactorExpr> {
    let mut out = expr.clone();
    match c {
        Corruption::FlipExponent => {
            let (t, e) = expr.tokens.iter().next()?;
            out.tokens.insert(t.clone(), -e);
        }
        Corruption::UniformizerPsi => {
            let varpi = field.uniformizer();
            let (t, e) = expr.tokens.iter().find(|(t, _)| match t {
                Token::Gamma { psi, .. } | Token::Eps { psi, .. } | Token::Lambda { psi, .. } => *psi != varpi,
                _ => false,
            })?;
            let moved = match t.clone() {
                Token::Gamma { arg, rep, .. } => Token::Gamma { arg, rep, psi: varpi },
                Token::Eps { arg, rep, .. } => Token::Eps { arg, rep, psi: varpi },
                Token::Lambda { disc, .. } => Token::Lambda { disc, psi: varpi },
                other => other,
            };
            out.tokens.remove(t);
            *out.tokens.entry(moved).or_insert(0) += e;
            out.tokens.retain(|_, e| *e != 0);
        }
    }
    Some(out)
}

/// The identity with its left side corrupted.
pub fn corrupt_identity(id: &Identity, c: Corruption, field: LocalField) -> Option<Identity> {
    Some(Identity { lhs: corrupt(&id.lhs, c, field)?, rhs: id.rhs.clone() })
}

/// The gamma transfer identity with phi+ = phi chi_V, missing the summand chi_V.
pub fn comgamma_without_chi_v(phi: &Parameter, chi_v: QuadraticCharacter, chi: QuadraticCharacter) -> Identity {
    comgamma_identity(&phi.twist(chi_v), phi, chi_v, chi)
}

/// The Plancherel transfer identity with the untwisted lift phi+ = phi + chi_V.
pub fn complan_untwisted(phi_tau: &Summand, phi: &Parameter, chi_v: QuadraticCharacter) -> Result<Identity> {
    let wrong = phi.plus(&Summand::character(chi_v.d), 1)?;
    Ok(complan_identity(phi_tau, &wrong, phi, chi_v))
}

/// The squared operator identity with every lambda token dropped from the forward factor.
pub fn r_squared_without_lambda(parts: &RSquaredParts) -> Identity {
    let mut broken = parts.clone();
    broken.r_forward.tokens.retain(|t, _| !matches!(t, Token::Lambda { .. }));
    broken.identity()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factors::{r_squared_parts, verify_comgamma, Backend};

    #[test]
    fn controls_break_the_running_identities() {
        let f = LocalField::new(5).unwrap();
        let chi_v = QuadraticCharacter::new(f.class_of_int(5).unwrap());
        let phi = Parameter::characters(f, &[(1, 1), (5, 1)]).unwrap();
        let triv = QuadraticCharacter::trivial(f);
        assert!(verify_comgamma(&phi, chi_v, triv).unwrap());
        assert!(!comgamma_without_chi_v(&phi, chi_v, triv).holds().unwrap());
        let tau = Summand::character(f.class_of_int(2).unwrap());
        assert!(complan_untwisted(&tau, &phi, chi_v).unwrap().holds().unwrap(), "phi is stable under chi_V");
        let moved = Parameter::characters(f, &[(1, 1), (2, 1), (5, 2)]).unwrap();
        let chi2 = QuadraticCharacter::new(f.class_of_int(2).unwrap());
        assert!(!complan_untwisted(&tau, &moved, chi2).unwrap().holds().unwrap());
        let cube = Summand::orthogonal("A", 3, f.class_of_int(2).unwrap()).unwrap();
        let parts = r_squared_parts(&cube, &phi, chi_v, Backend::Standard).unwrap();
        assert!(parts.identity().holds().unwrap());
        assert!(!r_squared_without_lambda(&parts).holds().unwrap());
        for c in [Corruption::FlipExponent, Corruption::UniformizerPsi] {
            assert!(!corrupt_identity(&parts.identity(), c, f).unwrap().holds().unwrap());
        }
    }
}
