//! Square classes of Q_p and the quadratic Hilbert symbol.

use std::fmt;
use std::ops::{Mul, Neg};

use crate::error::{Error, Result};

/// A sign in {+1, -1}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_parity(odd: bool) -> Sign {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }

    pub fn value(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn pow(self, e: i64) -> Sign {
        if e.rem_euclid(2) == 0 {
            Sign::Plus
        } else {
            self
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_parity(self.is_minus() != rhs.is_minus())
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// The field Q_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LocalField {
    p: u64,
}

impl LocalField {
    pub fn new(p: u64) -> Result<LocalField> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(LocalField { p })
    }

    pub fn p(self) -> u64 {
        self.p
    }

    /// Smallest positive quadratic non-residue mod p (odd p only).
    pub fn nonresidue(self) -> i64 {
        assert!(self.p != 2, "no unit non-residue class representative at p = 2");
        (2..self.p as i64)
            .find(|&a| legendre(a, self.p) == -1)
            .expect("every odd prime has a non-residue")
    }

    /// Number of square classes: 4 for odd p, 8 for p = 2.
    pub fn class_count(self) -> usize {
        if self.p == 2 {
            8
        } else {
            4
        }
    }

    /// All square classes in canonical order.
    pub fn classes(self) -> Vec<SquareClass> {
        (0..self.class_count() as u8).map(|bits| SquareClass { field: self, bits }).collect()
    }

    pub fn one(self) -> SquareClass {
        SquareClass { field: self, bits: 0 }
    }

    pub fn minus_one(self) -> SquareClass {
        self.class_of_int(-1).expect("-1 is nonzero")
    }

    /// Class of the uniformizer p.
    pub fn uniformizer(self) -> SquareClass {
        self.class_of_int(self.p as i64).expect("p is nonzero")
    }

    /// Canonical class of num/den.
    pub fn square_class(self, num: i64, den: i64) -> Result<SquareClass> {
        Ok(self.class_of_int(num)? * self.class_of_int(den)?)
    }

    pub fn class_of_int(self, n: i64) -> Result<SquareClass> {
        if n == 0 {
            return Err(Error::DegenerateInput("zero has no square class".into()));
        }
        let p = self.p as i128;
        let mut unit = n as i128;
        let mut val = 0u8;
        while unit % p == 0 {
            unit /= p;
            val ^= 1;
        }
        let bits = if self.p == 2 {
            let low = match unit.rem_euclid(8) {
                1 => 0b00,
                5 => 0b01,
                7 => 0b10,
                3 => 0b11,
                _ => unreachable!("odd unit"),
            };
            low | (val << 2)
        } else {
            let nonres = legendre(unit.rem_euclid(p) as i64, self.p) == -1;
            (nonres as u8) | (val << 1)
        };
        Ok(SquareClass { field: self, bits })
    }

    /// The class `c0` with (c0, d) = -1 of smallest canonical index, if any.
    pub fn first_nonnorm(self, d: SquareClass) -> Option<SquareClass> {
        self.classes().into_iter().find(|&c| hilbert(c, d) == Ok(Sign::Minus))
    }
}

impl fmt::Display for LocalField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q({})", self.p)
    }
}

/// An element of F^x / F^x^2.
///
/// Odd p: bit 0 marks a non-residue unit, bit 1 odd valuation.
/// p = 2: bit 0 the factor 5, bit 1 the factor -1, bit 2 odd valuation.
/// Multiplication is XOR of the bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SquareClass {
    field: LocalField,
    bits: u8,
}

impl SquareClass {
    pub fn field(self) -> LocalField {
        self.field
    }

    /// Index in the canonical order of [`LocalField::classes`].
    pub fn index(self) -> usize {
        self.bits as usize
    }

    pub fn is_one(self) -> bool {
        self.bits == 0
    }

    pub fn valuation_parity(self) -> u8 {
        if self.field.p == 2 {
            self.bits >> 2
        } else {
            self.bits >> 1
        }
    }

    /// Canonical integer representative.
    pub fn repr(self) -> i64 {
        let p = self.field.p as i64;
        if self.field.p == 2 {
            let unit = match self.bits & 0b11 {
                0b00 => 1,
                0b01 => 5,
                0b10 => -1,
                _ => -5,
            };
            if self.bits & 0b100 != 0 {
                2 * unit
            } else {
                unit
            }
        } else {
            let unit = if self.bits & 1 != 0 { self.field.nonresidue() } else { 1 };
            if self.bits & 2 != 0 {
                unit * p
            } else {
                unit
            }
        }
    }

    /// Unit part of the canonical representative.
    fn unit_repr(self) -> i64 {
        let r = self.repr();
        if self.valuation_parity() == 1 {
            r / self.field.p as i64
        } else {
            r
        }
    }

    pub fn pow(self, e: u64) -> SquareClass {
        if e.is_multiple_of(2) {
            self.field.one()
        } else {
            self
        }
    }

    fn check(self, other: SquareClass) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch { left: self.field.p, right: other.field.p });
        }
        Ok(())
    }

    pub fn try_mul(self, other: SquareClass) -> Result<SquareClass> {
        self.check(other)?;
        Ok(SquareClass { field: self.field, bits: self.bits ^ other.bits })
    }
}

impl Mul for SquareClass {
    type Output = SquareClass;
    /// Panics on a field mismatch; use [`SquareClass::try_mul`] for a checked product.
    fn mul(self, rhs: SquareClass) -> SquareClass {
        self.try_mul(rhs).expect("square classes over different fields")
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.repr())
    }
}

/// The quadratic character x -> (x, d).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadraticCharacter {
    pub d: SquareClass,
}

impl QuadraticCharacter {
    pub fn new(d: SquareClass) -> Self {
        QuadraticCharacter { d }
    }

    pub fn trivial(field: LocalField) -> Self {
        QuadraticCharacter { d: field.one() }
    }

    pub fn is_trivial(self) -> bool {
        self.d.is_one()
    }

    pub fn eval(self, c: SquareClass) -> Result<Sign> {
        eval_char(self, c)
    }
}

/// The Hilbert symbol (a, b) over Q_p.
pub fn hilbert(a: SquareClass, b: SquareClass) -> Result<Sign> {
    a.check(b)?;
    let p = a.field.p;
    let (alpha, beta) = (a.valuation_parity() as u64, b.valuation_parity() as u64);
    let (u, v) = (a.unit_repr(), b.unit_repr());
    let odd = if p == 2 {
        let eps = |x: i64| ((x - 1) / 2).rem_euclid(2) as u64;
        let omega = |x: i64| ((x * x - 1) / 8).rem_euclid(2) as u64;
        eps(u) * eps(v) + alpha * omega(v) + beta * omega(u)
    } else {
        let half = (p - 1) / 2 % 2;
        let lu = (legendre(u, p) == -1) as u64;
        let lv = (legendre(v, p) == -1) as u64;
        alpha * beta * half + lu * beta + lv * alpha
    };
    Ok(Sign::from_parity(odd % 2 == 1))
}

/// Evaluates the quadratic character `chi` at the class `c`, i.e. (c, d).
pub fn eval_char(chi: QuadraticCharacter, c: SquareClass) -> Result<Sign> {
    hilbert(c, chi.d)
}

/// True iff `c` is a norm from F(sqrt d), i.e. (c, d) = 1.
pub fn norm_group_contains(d: SquareClass, c: SquareClass) -> Result<bool> {
    Ok(hilbert(c, d)? == Sign::Plus)
}

/// Legendre symbol (a / p) for odd prime p, via Euler's criterion.
pub fn legendre(a: i64, p: u64) -> i8 {
    let a = a.rem_euclid(p as i64) as u64;
    if a == 0 {
        return 0;
    }
    match mod_pow(a, (p - 1) / 2, p) {
        1 => 1,
        _ => -1,
    }
}

fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    let m = m as u128;
    let mut acc: u128 = 1;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: u64) -> LocalField {
        LocalField::new(p).unwrap()
    }

    #[test]
    fn canonical_representatives() {
        let reprs: Vec<i64> = q(2).classes().iter().map(|c| c.repr()).collect();
        assert_eq!(reprs, vec![1, 5, -1, -5, 2, 10, -2, -10]);
        let reprs: Vec<i64> = q(5).classes().iter().map(|c| c.repr()).collect();
        assert_eq!(reprs, vec![1, 2, 5, 10]);
        let reprs: Vec<i64> = q(7).classes().iter().map(|c| c.repr()).collect();
        assert_eq!(reprs, vec![1, 3, 7, 21]);
    }

    #[test]
    fn class_of_rationals() {
        assert_eq!(q(5).square_class(45, 1).unwrap().repr(), 5);
        assert_eq!(q(5).square_class(1, 1).unwrap(), q(5).one());
        assert_eq!(q(2).square_class(20, 1).unwrap().repr(), 5);
        assert_eq!(q(3).square_class(-1, 3).unwrap().repr(), 6);
        assert!(matches!(q(3).square_class(0, 1), Err(Error::DegenerateInput(_))));
        assert!(matches!(LocalField::new(9), Err(Error::NotPrime(9))));
    }

    #[test]
    fn representatives_reclassify_to_themselves() {
        for p in [2, 3, 5, 7, 11] {
            for c in q(p).classes() {
                assert_eq!(q(p).class_of_int(c.repr()).unwrap(), c);
            }
        }
    }

    #[test]
    fn known_symbols() {
        let f5 = q(5);
        let c = |n| f5.class_of_int(n).unwrap();
        assert_eq!(hilbert(c(2), c(5)).unwrap(), Sign::Minus);
        assert_eq!(hilbert(c(5), c(5)).unwrap(), Sign::Plus);
        let f2 = q(2);
        assert_eq!(hilbert(f2.class_of_int(2).unwrap(), f2.class_of_int(5).unwrap()).unwrap(), Sign::Minus);
        assert_eq!(hilbert(f2.minus_one(), f2.minus_one()).unwrap(), Sign::Minus);
        let f3 = q(3);
        assert_eq!(hilbert(f3.minus_one(), f3.minus_one()).unwrap(), Sign::Plus);
        assert_eq!(hilbert(f3.minus_one(), f3.uniformizer()).unwrap(), Sign::Minus);
    }

    #[test]
    fn mismatch_is_reported() {
        let err = hilbert(q(3).one(), q(5).one()).unwrap_err();
        assert_eq!(err, Error::FieldMismatch { left: 3, right: 5 });
    }

    #[test]
    fn eval_and_norms() {
        let f5 = q(5);
        let chi = QuadraticCharacter::new(f5.class_of_int(5).unwrap());
        assert_eq!(chi.eval(f5.class_of_int(2).unwrap()).unwrap(), Sign::Minus);
        assert_eq!(chi.eval(f5.class_of_int(5).unwrap()).unwrap(), Sign::Plus);
        assert!(norm_group_contains(f5.one(), f5.class_of_int(2).unwrap()).unwrap());
        assert!(!norm_group_contains(chi.d, f5.class_of_int(2).unwrap()).unwrap());
    }
}
