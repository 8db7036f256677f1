//! Standard gamma factors, Plancherel measures, normalizing factors and the identities
//! relating them across the theta transfer.

use crate::arithmetic::{hilbert, QuadraticCharacter, Sign, SquareClass};
use crate::error::{Error, Result};
use crate::packets::Side;
use crate::parameters::{Parameter, SdType, Summand};
use crate::theta::lift_up_param;

use super::expr::{rewrite, Arg, FactorExpr, Token};
use super::rep::{Mono, RepSum};

/// A claimed equality of two factor expressions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Identity {
    pub lhs: FactorExpr,
    pub rhs: FactorExpr,
}

impl Identity {
    /// Both sides have the same normal form.
    pub fn holds(&self) -> Result<bool> {
        Ok(rewrite(&self.lhs)? == rewrite(&self.rhs)?)
    }
}

/// The representation tau of GL_k attached to the summand phi_tau.
pub fn tau_mono(phi_tau: &Summand) -> Mono {
    Mono::of_summand(phi_tau).swap_remove(0)
}

/// gamma(s, phi (x) chi, psi), summand by summand.
pub fn gamma_of_parameter(phi: &Parameter, chi: QuadraticCharacter, psi: SquareClass) -> FactorExpr {
    FactorExpr::gamma(&RepSum::of_parameter(phi).twisted(chi), Arg::s(1), psi)
}

/// mu(tau_s (x) pi) as the product of four gamma factors.
pub fn plancherel_expr(phi_tau: &Summand, phi: &Parameter, psi: SquareClass) -> FactorExpr {
    plancherel_of(&tau_mono(phi_tau), phi, psi)
}

fn plancherel_of(tau: &Mono, phi: &Parameter, psi: SquareClass) -> FactorExpr {
    let psi_minus = psi * psi.field().minus_one();
    let tau_sum = RepSum::single(tau.clone());
    let phi_sum = RepSum::of_parameter(phi);
    let a = tau_sum.tensor(&phi_sum.dual());
    let a_mirror = tau_sum.dual().tensor(&phi_sum);
    let b = RepSum::wedge2(tau);
    let b_mirror = RepSum::wedge2(&tau.dual());
    FactorExpr::gamma(&a, Arg::s(1), psi)
        .times(&FactorExpr::gamma(&a_mirror, Arg::s(-1), psi_minus))
        .times(&FactorExpr::gamma(&b, Arg::s(2), psi))
        .times(&FactorExpr::gamma(&b_mirror, Arg::s(-2), psi_minus))
}

/// Which normalizing factors to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Backend {
    /// L / (eps L) quotients.
    Standard,
    /// Inverse gamma factors.
    Gamma,
}

impl Backend {
    pub const ALL: [Backend; 2] = [Backend::Standard, Backend::Gamma];
}

/// L(x, r) / (eps(x, r, psi) L(1 + x, r)) for x = coeff * s.
fn lel(rep: &RepSum, coeff: i8, psi: SquareClass) -> FactorExpr {
    let one = num_rational::Rational64::from_integer(1);
    let x = Arg::s(coeff);
    FactorExpr::l(rep, x)
        .over(&FactorExpr::eps(rep, x, psi))
        .over(&FactorExpr::l(rep, x.shifted(one)))
}

fn normalizing_of(
    tau: &Mono,
    phi0: &Parameter,
    side: Side,
    chi_v: QuadraticCharacter,
    coeff: i8,
    backend: Backend,
) -> FactorExpr {
    let field = phi0.field();
    let psi = field.one();
    let a = RepSum::single(tau.clone()).tensor(&RepSum::of_parameter(phi0));
    let b = RepSum::wedge2(tau);
    let body = match backend {
        Backend::Standard => lel(&a, coeff, psi).times(&lel(&b, 2 * coeff, psi)),
        Backend::Gamma => FactorExpr::gamma(&a, Arg::s(coeff), psi)
            .times(&FactorExpr::gamma(&b, Arg::s(2 * coeff), psi))
            .inverse(),
    };
    match side {
        Side::Orth => {
            let k = tau.dim() as i64;
            body.with(Token::Lambda { disc: chi_v.d, psi }, k)
        }
        Side::Symp => body,
    }
}

/// r(w, tau_s (x) pi_0) on the orthogonal side, or r(w', tau_s (x) sigma_0) on the symplectic side.
pub fn normalizing_factor(
    phi_tau: &Summand,
    phi0: &Parameter,
    side: Side,
    chi_v: QuadraticCharacter,
    backend: Backend,
) -> FactorExpr {
    normalizing_of(&tau_mono(phi_tau), phi0, side, chi_v, 1, backend)
}

/// The pieces of r(w, w(tau_s (x) pi_0))^-1 r(w, tau_s (x) pi_0)^-1 omega_tau(-1)^(k-1) mu^-1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RSquaredParts {
    pub r_forward: FactorExpr,
    /// Formed from tau^v at -s.
    pub r_reflected: FactorExpr,
    pub omega_sign: Sign,
    pub mu: FactorExpr,
}

impl RSquaredParts {
    pub fn assemble(&self) -> FactorExpr {
        let mut out = self.r_reflected.inverse().times(&self.r_forward.inverse()).times(&self.mu.inverse());
        out.scalar = out.scalar * self.omega_sign;
        out
    }

    pub fn identity(&self) -> Identity {
        Identity { lhs: self.assemble(), rhs: FactorExpr::unit() }
    }
}

/// omega_tau(-1) for an orthogonal phi_tau.
fn omega_minus_one(phi_tau: &Summand) -> Result<Sign> {
    hilbert(phi_tau.det().field().minus_one(), phi_tau.det())
}

fn require_orthogonal(phi_tau: &Summand) -> Result<()> {
    if phi_tau.sd_type() != SdType::Orthogonal {
        return Err(Error::NotSelfDualOrthogonal(phi_tau.atom()));
    }
    Ok(())
}

pub fn r_squared_parts(
    phi_tau: &Summand,
    phi0: &Parameter,
    chi_v: QuadraticCharacter,
    backend: Backend,
) -> Result<RSquaredParts> {
    require_orthogonal(phi_tau)?;
    if !phi0.is_tempered() {
        return Err(Error::TemperedOnly(phi0.to_string()));
    }
    phi0.check_orthogonal(chi_v)?;
    let tau = tau_mono(phi_tau);
    let k = phi_tau.dim() as i64;
    Ok(RSquaredParts {
        r_forward: normalizing_of(&tau, phi0, Side::Orth, chi_v, 1, backend),
        r_reflected: normalizing_of(&tau.dual(), phi0, Side::Orth, chi_v, -1, backend),
        omega_sign: omega_minus_one(phi_tau)?.pow(k - 1),
        mu: plancherel_of(&tau, phi0, phi0.field().one()),
    })
}

/// The normalized intertwining operator composed with its reflection is the identity,
/// for both choices of normalizing factors.
pub fn verify_r_squared(phi_tau: &Summand, phi0: &Parameter, chi_v: QuadraticCharacter) -> Result<bool> {
    for backend in Backend::ALL {
        if !r_squared_parts(phi_tau, phi0, chi_v, backend)?.identity().holds()? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// gamma(s, phi+ (x) chi) / gamma(s, phi (x) chi chi_V) = gamma(s, chi chi_V).
pub fn comgamma_identity(
    phi_plus: &Parameter,
    phi: &Parameter,
    chi_v: QuadraticCharacter,
    chi: QuadraticCharacter,
) -> Identity {
    let psi = phi.field().one();
    let chi_chi_v = QuadraticCharacter::new(chi.d * chi_v.d);
    let lhs = gamma_of_parameter(phi_plus, chi, psi).over(&gamma_of_parameter(phi, chi_chi_v, psi));
    let rhs = FactorExpr::token(Token::Gamma { arg: Arg::s(1), rep: Mono::character(chi_chi_v.d), psi });
    Identity { lhs, rhs }
}

pub fn verify_comgamma(phi: &Parameter, chi_v: QuadraticCharacter, chi: QuadraticCharacter) -> Result<bool> {
    if !phi.is_tempered() {
        return Err(Error::TemperedOnly(phi.to_string()));
    }
    let phi_plus = lift_up_param(phi, chi_v)?;
    comgamma_identity(&phi_plus, phi, chi_v, chi).holds()
}

/// mu(tau chi_V (x) sigma) / mu(tau (x) pi) = gamma(s, tau, psi) gamma(-s, tau^v, psi_{-1}).
pub fn complan_identity(
    phi_tau: &Summand,
    phi_plus: &Parameter,
    phi: &Parameter,
    chi_v: QuadraticCharacter,
) -> Identity {
    let field = phi.field();
    let psi = field.one();
    let tau = tau_mono(phi_tau);
    let lhs = plancherel_of(&tau.twisted(chi_v), phi_plus, psi).over(&plancherel_of(&tau, phi, psi));
    let rhs = FactorExpr::token(Token::Gamma { arg: Arg::s(1), rep: tau.clone(), psi }).with(
        Token::Gamma { arg: Arg::s(-1), rep: tau.dual(), psi: field.minus_one() },
        1,
    );
    Identity { lhs, rhs }
}

pub fn verify_complan(phi_tau: &Summand, phi: &Parameter, chi_v: QuadraticCharacter) -> Result<bool> {
    if !phi.is_tempered() {
        return Err(Error::TemperedOnly(phi.to_string()));
    }
    if !phi_tau.is_tempered() {
        return Err(Error::TemperedOnly(phi_tau.atom()));
    }
    let phi_plus = lift_up_param(phi, chi_v)?;
    complan_identity(phi_tau, &phi_plus, phi, chi_v).holds()
}

/// omega_tau(-1/c) chi_V(-c)^k.
pub fn theta_scalar(phi_tau: &Summand, c: SquareClass, k: u32, chi_v: QuadraticCharacter) -> Result<Sign> {
    require_orthogonal(phi_tau)?;
    let minus_c = c.try_mul(c.field().minus_one())?;
    Ok(hilbert(minus_c, phi_tau.det())? * chi_v.eval(minus_c)?.pow(k as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arithmetic::LocalField;

    fn setup() -> (LocalField, QuadraticCharacter, Parameter) {
        let f = LocalField::new(5).unwrap();
        let chi_v = QuadraticCharacter::new(f.class_of_int(5).unwrap());
        (f, chi_v, Parameter::characters(f, &[(1, 1), (5, 1)]).unwrap())
    }

    #[test]
    fn gamma_expansion_of_running_parameter() {
        let (f, chi_v, phi) = setup();
        let e = gamma_of_parameter(&phi, chi_v, f.one());
        assert_eq!(e.to_string(), "gamma(s, chi(1), psi) * gamma(s, chi(5), psi)");
        assert!(gamma_of_parameter(&Parameter::empty(f), chi_v, f.one()).is_unit());
    }

    #[test]
    fn comgamma_and_complan() {
        let (f, chi_v, phi) = setup();
        for n in [1, 2, 5, 10] {
            let chi = QuadraticCharacter::new(f.class_of_int(n).unwrap());
            assert!(verify_comgamma(&phi, chi_v, chi).unwrap());
        }
        let taus = [
            Summand::character(f.class_of_int(2).unwrap()),
            Summand::orthogonal("A", 3, f.class_of_int(5).unwrap()).unwrap(),
            Summand::symplectic("B", 2, f).unwrap(),
            Summand::pair("C", 2, f).unwrap(),
        ];
        for tau in &taus {
            assert!(verify_complan(tau, &phi, chi_v).unwrap());
        }
        let untwisted = phi.twist(chi_v);
        assert!(!complan_identity(&taus[1], &untwisted, &phi, chi_v).holds().unwrap());
    }

    #[test]
    fn r_squared() {
        let (f, chi_v, phi) = setup();
        let empty_v = QuadraticCharacter::trivial(f);
        let tau = Summand::character(f.class_of_int(2).unwrap());
        assert!(verify_r_squared(&tau, &Parameter::empty(f), empty_v).unwrap());
        assert!(verify_r_squared(&tau, &phi, chi_v).unwrap());
        let big = Summand::orthogonal("A", 3, f.class_of_int(10).unwrap()).unwrap();
        let f3 = LocalField::new(3).unwrap();
        let chi3 = QuadraticCharacter::new(f3.class_of_int(3).unwrap());
        let phi3 = Parameter::characters(f3, &[(1, 1), (3, 1)]).unwrap();
        let big3 = Summand::orthogonal("A", 3, f3.class_of_int(-3).unwrap()).unwrap();
        assert!(verify_r_squared(&big, &phi, chi_v).unwrap());
        assert!(verify_r_squared(&big3, &phi3, chi3).unwrap());
        let sp = Summand::symplectic("B", 2, f).unwrap();
        assert!(matches!(verify_r_squared(&sp, &phi, chi_v), Err(Error::NotSelfDualOrthogonal(_))));
    }

    #[test]
    fn normalizing_factor_shapes() {
        let (f, chi_v, _) = setup();
        let tau = Summand::character(f.class_of_int(2).unwrap());
        let empty = Parameter::empty(f);
        let orth = normalizing_factor(&tau, &empty, Side::Orth, chi_v, Backend::Standard);
        assert_eq!(orth.tokens.len(), 1);
        assert_eq!(orth.lambda_exponent(), 1);
        assert!(normalizing_factor(&tau, &empty, Side::Symp, chi_v, Backend::Standard).is_unit());
        let plane = Summand::orthogonal("A", 2, f.class_of_int(2).unwrap()).unwrap();
        let orth = normalizing_factor(&plane, &empty, Side::Orth, chi_v, Backend::Standard);
        assert_eq!(orth.tokens.len(), 4);
        assert_eq!(orth.lambda_exponent(), 2);
        let symp = normalizing_factor(&plane, &empty, Side::Symp, chi_v, Backend::Standard);
        assert_eq!(symp.tokens.len(), 3);
        assert_eq!(symp.lambda_exponent(), 0);
    }

    #[test]
    fn theta_scalar_examples() {
        let (f, chi_v, _) = setup();
        let tau = Summand::character(f.class_of_int(5).unwrap());
        assert_eq!(theta_scalar(&tau, f.class_of_int(2).unwrap(), 1, chi_v).unwrap(), Sign::Plus);
        let triv = Summand::character(f.one());
        assert_eq!(theta_scalar(&triv, f.minus_one(), 2, chi_v).unwrap(), Sign::Plus);
    }
}
