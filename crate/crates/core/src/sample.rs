//! Seeded random parameters for property sweeps and the desiderata checker.

use num_rational::Rational64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arithmetic::{LocalField, QuadraticCharacter, SquareClass};
use crate::parameters::{Character, ComponentGroup, Parameter, Summand, Term};

/// A random orthogonal-type parameter together with its discriminant character det(phi).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sample {
    pub phi: Parameter,
    pub chi_v: QuadraticCharacter,
}

/// Deterministic generator of parameters over a fixed field.
pub struct Sampler {
    rng: ChaCha8Rng,
    field: LocalField,
    max_summands: usize,
    fresh: u32,
    prefix: &'static str,
}

impl Sampler {
    pub fn new(field: LocalField, seed: u64, max_summands: usize) -> Sampler {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed), field, max_summands, fresh: 0, prefix: "R" }
    }

    /// Uses `prefix` for fresh summand names, keeping them apart from another sampler's.
    pub fn with_prefix(mut self, prefix: &'static str) -> Sampler {
        self.prefix = prefix;
        self
    }

    pub fn field(&self) -> LocalField {
        self.field
    }

    pub fn class(&mut self) -> SquareClass {
        *self.field.classes().choose(&mut self.rng).expect("nonempty")
    }

    pub fn sign_bit(&mut self) -> bool {
        self.rng.gen_bool(0.5)
    }

    pub fn below(&mut self, n: u32) -> u32 {
        self.rng.gen_range(0..n)
    }

    fn name(&mut self) -> String {
        self.fresh += 1;
        format!("{}{}", self.prefix, self.fresh)
    }

    /// A random tempered irreducible summand.
    pub fn summand(&mut self) -> Summand {
        let field = self.field;
        match self.rng.gen_range(0..10) {
            0..=4 => Summand::character(self.class()),
            5 | 6 => {
                let dim = self.rng.gen_range(2..=4);
                let name = self.name();
                let det = self.class();
                Summand::orthogonal(&name, dim, det).expect("valid orthogonal summand")
            }
            7 | 8 => {
                let name = self.name();
                Summand::symplectic(&name, 2, field).expect("valid symplectic summand")
            }
            _ => {
                let dim = self.rng.gen_range(1..=2);
                let name = self.name();
                Summand::pair(&name, dim, field).expect("valid pair")
            }
        }
    }

    /// A random tempered parameter of orthogonal type with at most `max_summands` distinct summands.
    pub fn tempered(&mut self) -> Sample {
        let count = self.rng.gen_range(0..=self.max_summands);
        let mut terms = Vec::new();
        let one = Summand::character(self.field.one());
        if count > 0 && self.rng.gen_bool(0.5) {
            terms.push(Term::new(one, self.rng.gen_range(1..=2)));
        }
        while terms.len() < count {
            let s = self.summand();
            let mult = match s.sd_type() {
                crate::parameters::SdType::Symplectic => 2,
                _ => self.rng.gen_range(1..=2),
            };
            terms.push(Term::new(s, mult));
        }
        let mut phi = Parameter::new(self.field, terms).expect("sampled terms are valid");
        if phi.dim() % 2 == 1 {
            phi = phi.plus(&Summand::character(self.class()), 1).expect("valid");
        }
        let chi_v = QuadraticCharacter::new(phi.det());
        Sample { phi, chi_v }
    }

    /// A tempered sample whose parameter contains the trivial character.
    pub fn tempered_with_one(&mut self) -> Sample {
        let s = self.tempered();
        if s.phi.contains_trivial() > 0 {
            return s;
        }
        let one = Summand::character(self.field.one());
        let phi = s.phi.plus(&one, 2).expect("valid");
        Sample { chi_v: QuadraticCharacter::new(phi.det()), phi }
    }

    /// A parameter with up to two shifted dual pairs around a tempered core.
    pub fn nontempered(&mut self) -> Sample {
        let core = self.tempered();
        let mut terms = core.phi.terms().to_vec();
        let pairs = self.rng.gen_range(1..=2);
        for _ in 0..pairs {
            let s = self.summand();
            let shift = Rational64::new(self.rng.gen_range(1..=3), 2);
            let mult = self.rng.gen_range(1..=2);
            terms.push(Term::shifted(s.clone(), mult, shift));
            terms.push(Term::shifted(s, mult, -shift));
        }
        let phi = Parameter::new(self.field, terms).expect("valid shifted terms");
        Sample { chi_v: core.chi_v, phi }
    }

    /// A random character of the component group.
    pub fn character(&mut self, group: &ComponentGroup) -> Character {
        let rank = group.rank();
        let mask = if rank == 0 { 0 } else { self.rng.gen::<u64>() & ((1u64 << rank) - 1) };
        Character::from_mask(rank, mask)
    }

    /// A tempered summand phi_tau for induction from phi_0: either one already in phi_0
    /// or a fresh one.
    pub fn tau_for(&mut self, phi0: &Parameter) -> Summand {
        let orth: Vec<&Summand> = phi0.terms().iter().map(|t| &t.summand).filter(|s| s.is_orthogonal()).collect();
        if !orth.is_empty() && self.rng.gen_bool(0.4) {
            return (*orth.choose(&mut self.rng).expect("nonempty")).clone();
        }
        self.summand()
    }

    /// A random orthogonal summand for the intertwining identities.
    pub fn orthogonal_tau(&mut self) -> Summand {
        if self.rng.gen_bool(0.5) {
            Summand::character(self.class())
        } else {
            let dim = self.rng.gen_range(2..=4);
            let name = self.name();
            let det = self.class();
            Summand::orthogonal(&name, dim, det).expect("valid orthogonal summand")
        }
    }

    pub fn quadratic_character(&mut self) -> QuadraticCharacter {
        QuadraticCharacter::new(self.class())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_are_valid_and_reproducible() {
        let f = LocalField::new(5).unwrap();
        let mut a = Sampler::new(f, 7, 6);
        let mut b = Sampler::new(f, 7, 6);
        for _ in 0..200 {
            let s = a.tempered();
            assert_eq!(s, b.tempered());
            s.phi.check_orthogonal(s.chi_v).unwrap();
            assert!(s.phi.is_tempered());
            let n = a.nontempered();
            b.nontempered();
            n.phi.check_orthogonal(n.chi_v).unwrap();
        }
    }
}
