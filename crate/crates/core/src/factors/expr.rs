//! Formal products of gamma, L, epsilon and lambda tokens, and their rewrite rules.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Rational64;

use crate::arithmetic::{hilbert, Sign, SquareClass};
use crate::error::Result;

use super::rep::{Mono, RepSum};

/// The argument c*s + o of a factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arg {
    pub coeff: i8,
    pub offset: Rational64,
}

impl Arg {
    pub fn new(coeff: i8, offset: Rational64) -> Arg {
        Arg { coeff, offset }
    }

    pub fn s(coeff: i8) -> Arg {
        Arg { coeff, offset: Rational64::from_integer(0) }
    }

    pub fn shifted(self, t: Rational64) -> Arg {
        Arg { coeff: self.coeff, offset: self.offset + t }
    }

    /// 1 - (c*s + o).
    pub fn reflect(self) -> Arg {
        Arg { coeff: -self.coeff, offset: Rational64::from_integer(1) - self.offset }
    }
}

impl fmt::Display for Arg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lead = match self.coeff {
            0 => String::new(),
            1 => "s".into(),
            -1 => "-s".into(),
            c => format!("{c}s"),
        };
        let zero = Rational64::from_integer(0);
        match (lead.is_empty(), self.offset.cmp(&zero)) {
            (true, _) => write!(f, "{}", self.offset),
            (false, std::cmp::Ordering::Equal) => f.write_str(&lead),
            (false, std::cmp::Ordering::Greater) => write!(f, "{lead}+{}", self.offset),
            (false, std::cmp::Ordering::Less) => write!(f, "{lead}-{}", -self.offset),
        }
    }
}

/// A single factor symbol.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Token {
    Gamma { arg: Arg, rep: Mono, psi: SquareClass },
    Eps { arg: Arg, rep: Mono, psi: SquareClass },
    L { arg: Arg, rep: Mono },
    /// lambda(E/F, psi) for E = F(sqrt disc).
    Lambda { disc: SquareClass, psi: SquareClass },
    /// omega_B(-1) for a non-self-dual atom B.
    Sign { atom: String },
}

fn psi_label(c: &SquareClass) -> String {
    if c.is_one() {
        "psi".into()
    } else {
        format!("psi[{c}]")
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Gamma { arg, rep, psi } => write!(f, "gamma({arg}, {rep}, {})", psi_label(psi)),
            Token::Eps { arg, rep, psi } => write!(f, "eps({arg}, {rep}, {})", psi_label(psi)),
            Token::L { arg, rep } => write!(f, "L({arg}, {rep})"),
            Token::Lambda { disc, psi } => write!(f, "lambda({disc}, {})", psi_label(psi)),
            Token::Sign { atom } => write!(f, "omega_{atom}(-1)"),
        }
    }
}

/// A product of tokens with integer exponents and a sign.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FactorExpr {
    pub tokens: BTreeMap<Token, i64>,
    pub scalar: Sign,
}

impl Default for FactorExpr {
    fn default() -> Self {
        FactorExpr::unit()
    }
}

impl FactorExpr {
    pub fn unit() -> FactorExpr {
        FactorExpr { tokens: BTreeMap::new(), scalar: Sign::Plus }
    }

    pub fn token(t: Token) -> FactorExpr {
        FactorExpr::unit().with(t, 1)
    }

    pub fn is_unit(&self) -> bool {
        self.tokens.is_empty() && self.scalar == Sign::Plus
    }

    /// Multiplies in `t^e`.
    pub fn with(mut self, t: Token, e: i64) -> FactorExpr {
        self.add(t, e);
        self
    }

    pub fn add(&mut self, t: Token, e: i64) {
        if e == 0 {
            return;
        }
        let slot = self.tokens.entry(t.clone()).or_insert(0);
        *slot += e;
        if *slot == 0 {
            self.tokens.remove(&t);
        }
    }

    pub fn times(&self, other: &FactorExpr) -> FactorExpr {
        let mut out = self.clone();
        for (t, e) in &other.tokens {
            out.add(t.clone(), *e);
        }
        out.scalar = out.scalar * other.scalar;
        out
    }

    pub fn inverse(&self) -> FactorExpr {
        FactorExpr { tokens: self.tokens.iter().map(|(t, e)| (t.clone(), -e)).collect(), scalar: self.scalar }
    }

    pub fn over(&self, other: &FactorExpr) -> FactorExpr {
        self.times(&other.inverse())
    }

    pub fn pow(&self, k: i64) -> FactorExpr {
        FactorExpr {
            tokens: self.tokens.iter().map(|(t, e)| (t.clone(), e * k)).collect(),
            scalar: self.scalar.pow(k),
        }
    }

    pub fn exponent(&self, t: &Token) -> i64 {
        self.tokens.get(t).copied().unwrap_or(0)
    }

    /// Total exponent of lambda tokens.
    pub fn lambda_exponent(&self) -> i64 {
        self.tokens.iter().filter(|(t, _)| matches!(t, Token::Lambda { .. })).map(|(_, e)| e).sum()
    }

    /// Product over a representation sum of `make(arg, mono)`, with multiplicities and shifts.
    pub fn over_rep(rep: &RepSum, arg: Arg, make: impl Fn(Arg, Mono) -> Token) -> FactorExpr {
        let mut out = FactorExpr::unit();
        for (m, shift, k) in &rep.items {
            out.add(make(arg.shifted(*shift), m.clone()), *k as i64);
        }
        out
    }

    pub fn gamma(rep: &RepSum, arg: Arg, psi: SquareClass) -> FactorExpr {
        FactorExpr::over_rep(rep, arg, |arg, rep| Token::Gamma { arg, rep, psi })
    }

    pub fn eps(rep: &RepSum, arg: Arg, psi: SquareClass) -> FactorExpr {
        FactorExpr::over_rep(rep, arg, |arg, rep| Token::Eps { arg, rep, psi })
    }

    pub fn l(rep: &RepSum, arg: Arg) -> FactorExpr {
        FactorExpr::over_rep(rep, arg, |arg, rep| Token::L { arg, rep })
    }
}

impl fmt::Display for FactorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.tokens.is_empty() {
            return write!(f, "{}", self.scalar);
        }
        if self.scalar == Sign::Minus {
            f.write_str("-")?;
        }
        let parts: Vec<String> = self
            .tokens
            .iter()
            .map(|(t, e)| if *e == 1 { t.to_string() } else { format!("{t}^{e}") })
            .collect();
        f.write_str(&parts.join(" * "))
    }
}

/// One rewrite rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    /// gamma(s, r, psi) -> eps(s, r, psi) L(1-s, r^v) / L(s, r).
    ExpandGamma,
    /// eps(s, r, psi_{-1}) -> det(r)(-1) eps(s, r, psi).
    TransportEps,
    /// lambda^2 -> chi_V(-1).
    ReduceLambda,
    /// omega_B(-1)^2 -> 1.
    ReduceSign,
}

impl Rule {
    pub const ALL: [Rule; 4] = [Rule::ExpandGamma, Rule::TransportEps, Rule::ReduceLambda, Rule::ReduceSign];

    /// Applies the rule once to every matching token; returns whether anything changed.
    pub fn apply(self, expr: &mut FactorExpr) -> Result<bool> {
        let mut changed = false;
        let snapshot: Vec<(Token, i64)> = expr.tokens.iter().map(|(t, e)| (t.clone(), *e)).collect();
        for (t, e) in snapshot {
            match (self, &t) {
                (Rule::ExpandGamma, Token::Gamma { arg, rep, psi }) => {
                    expr.add(t.clone(), -e);
                    expr.add(Token::Eps { arg: *arg, rep: rep.clone(), psi: *psi }, e);
                    expr.add(Token::L { arg: arg.reflect(), rep: rep.dual() }, e);
                    expr.add(Token::L { arg: *arg, rep: rep.clone() }, -e);
                    changed = true;
                }
                (Rule::TransportEps, Token::Eps { arg, rep, psi }) => {
                    let minus_one = psi.field().minus_one();
                    if psi.is_one() || *psi != minus_one {
                        continue;
                    }
                    let (sign, formal) = rep.det().at_minus_one()?;
                    expr.add(t.clone(), -e);
                    expr.add(Token::Eps { arg: *arg, rep: rep.clone(), psi: psi.field().one() }, e);
                    expr.scalar = expr.scalar * sign.pow(e);
                    for atom in formal {
                        expr.add(Token::Sign { atom }, e);
                    }
                    changed = true;
                }
                (Rule::ReduceLambda, Token::Lambda { disc, .. }) => {
                    let r = e.rem_euclid(2);
                    if r == e {
                        continue;
                    }
                    let q = (e - r) / 2;
                    expr.add(t.clone(), r - e);
                    expr.scalar = expr.scalar * hilbert(disc.field().minus_one(), *disc)?.pow(q);
                    changed = true;
                }
                (Rule::ReduceSign, Token::Sign { .. }) => {
                    let r = e.rem_euclid(2);
                    if r != e {
                        expr.add(t.clone(), r - e);
                        changed = true;
                    }
                }
                _ => {}
            }
        }
        Ok(changed)
    }
}

/// Normal form: applies the rules in the given order until none fires.
pub fn rewrite_with(expr: &FactorExpr, order: &[Rule]) -> Result<FactorExpr> {
    let mut out = expr.clone();
    loop {
        let mut changed = false;
        for rule in order {
            changed |= rule.apply(&mut out)?;
        }
        if !changed {
            return Ok(out);
        }
    }
}

/// Normal form under all rules.
pub fn rewrite(expr: &FactorExpr) -> Result<FactorExpr> {
    rewrite_with(expr, &Rule::ALL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arithmetic::LocalField;

    fn chi(f: LocalField, n: i64) -> Mono {
        Mono::character(f.class_of_int(n).unwrap())
    }

    #[test]
    fn gamma_cancels() {
        let f = LocalField::new(5).unwrap();
        let g = Token::Gamma { arg: Arg::s(1), rep: chi(f, 1), psi: f.one() };
        let e = FactorExpr::token(g.clone()).with(g, -1);
        assert!(rewrite(&e).unwrap().is_unit());
    }

    #[test]
    fn lambda_square() {
        let f = LocalField::new(5).unwrap();
        let lam = Token::Lambda { disc: f.class_of_int(5).unwrap(), psi: f.one() };
        assert!(rewrite(&FactorExpr::unit().with(lam.clone(), 2)).unwrap().is_unit());
        let f3 = LocalField::new(3).unwrap();
        let lam3 = Token::Lambda { disc: f3.class_of_int(3).unwrap(), psi: f3.one() };
        let out = rewrite(&FactorExpr::unit().with(lam3.clone(), -2)).unwrap();
        assert!(out.tokens.is_empty());
        assert_eq!(out.scalar, Sign::Minus);
        let odd = rewrite(&FactorExpr::unit().with(lam3.clone(), 3)).unwrap();
        assert_eq!(odd.exponent(&lam3), 1);
    }

    #[test]
    fn expansion_shape() {
        let f = LocalField::new(5).unwrap();
        let g = Token::Gamma { arg: Arg::s(1), rep: chi(f, 2), psi: f.one() };
        let out = rewrite(&FactorExpr::token(g)).unwrap();
        assert_eq!(out.tokens.len(), 3);
        assert_eq!(out.scalar, Sign::Plus);
        assert_eq!(out.to_string(), "eps(s, chi(2), psi) * L(-s+1, chi(2)) * L(s, chi(2))^-1");
    }

    #[test]
    fn transport_uses_determinant() {
        let f = LocalField::new(3).unwrap();
        let m1 = f.minus_one();
        let e = Token::Eps { arg: Arg::s(1), rep: chi(f, 3), psi: m1 };
        let out = rewrite(&FactorExpr::token(e)).unwrap();
        assert_eq!(out.scalar, Sign::Minus);
        assert_eq!(out.to_string(), "-eps(s, chi(3), psi)");
    }

    #[test]
    fn arg_rendering() {
        let half = Rational64::new(1, 2);
        assert_eq!(Arg::s(1).shifted(half).to_string(), "s+1/2");
        assert_eq!(Arg::s(2).reflect().to_string(), "-2s+1");
        assert_eq!(Arg::s(-1).shifted(-half).to_string(), "-s-1/2");
    }
}
