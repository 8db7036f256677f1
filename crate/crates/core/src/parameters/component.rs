//! Component groups S_phi = (Z/2)^l and their characters.
//!
//! Group elements are bit masks over the sorted generators a_1..a_l; a character
//! is the mask of generators on which it takes the value -1.

use std::fmt;

use super::parameter::Parameter;
use super::summand::{Summand, SummandId};
use crate::arithmetic::{hilbert, QuadraticCharacter, Sign, SquareClass};
use crate::error::{Error, Result};

/// Element of S_phi as a bit mask over the generators.
pub type GroupElem = u64;

/// Largest supported rank.
pub const MAX_RANK: usize = 63;

/// A character of (Z/2)^rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character {
    rank: usize,
    minus: u64,
}

impl Character {
    pub fn trivial(rank: usize) -> Character {
        Character { rank, minus: 0 }
    }

    pub fn from_mask(rank: usize, minus: u64) -> Character {
        Character { rank, minus: minus & mask(rank) }
    }

    pub fn from_signs(signs: &[Sign]) -> Character {
        let minus = signs.iter().enumerate().filter(|(_, s)| s.is_minus()).fold(0, |m, (i, _)| m | 1 << i);
        Character { rank: signs.len(), minus }
    }

    /// Parses a `+`/`-` string in generator order.
    pub fn parse_bits(bits: &str, rank: usize) -> Result<Character> {
        if bits.chars().count() != rank {
            return Err(Error::BadCharacter(format!("{bits:?} has {} signs, expected {rank}", bits.chars().count())));
        }
        let mut minus = 0;
        for (i, ch) in bits.chars().enumerate() {
            match ch {
                '+' => {}
                '-' => minus |= 1 << i,
                other => return Err(Error::BadCharacter(format!("unexpected {other:?} in {bits:?}"))),
            }
        }
        Ok(Character { rank, minus })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn minus_mask(&self) -> u64 {
        self.minus
    }

    pub fn is_trivial(&self) -> bool {
        self.minus == 0
    }

    /// Value on a group element.
    pub fn eval(&self, x: GroupElem) -> Sign {
        Sign::from_parity((self.minus & x).count_ones() % 2 == 1)
    }

    /// Value on the i-th generator.
    pub fn on_generator(&self, i: usize) -> Sign {
        self.eval(1 << i)
    }

    pub fn times(&self, other: &Character) -> Character {
        debug_assert_eq!(self.rank, other.rank);
        Character { rank: self.rank, minus: self.minus ^ other.minus }
    }

    pub fn bits(&self) -> String {
        (0..self.rank).map(|i| self.on_generator(i).symbol()).collect()
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rank == 0 {
            f.write_str("()")
        } else {
            f.write_str(&self.bits())
        }
    }
}

fn mask(rank: usize) -> u64 {
    if rank >= 64 {
        u64::MAX
    } else {
        (1u64 << rank) - 1
    }
}

/// S_phi on the distinct unshifted orthogonal summands of a parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentGroup {
    generators: Vec<Summand>,
    mults: Vec<u32>,
}

impl ComponentGroup {
    pub fn of(phi: &Parameter) -> ComponentGroup {
        let mut generators = Vec::new();
        let mut mults = Vec::new();
        for t in phi.terms() {
            if t.summand.is_orthogonal() && t.shift == num_rational::Rational64::from_integer(0) {
                generators.push(t.summand.clone());
                mults.push(t.mult);
            }
        }
        assert!(generators.len() <= MAX_RANK, "component group rank exceeds {MAX_RANK}");
        ComponentGroup { generators, mults }
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn order(&self) -> u64 {
        1 << self.rank()
    }

    pub fn generators(&self) -> &[Summand] {
        &self.generators
    }

    pub fn index_of(&self, id: &SummandId) -> Option<usize> {
        self.generators.iter().position(|g| g.id() == id)
    }

    /// Index of the generator attached to the trivial character, if present.
    pub fn trivial_index(&self) -> Option<usize> {
        self.generators.iter().position(Summand::is_trivial_character)
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElem> {
        0..self.order()
    }

    /// z_phi = sum of m_i a_i mod 2.
    pub fn z(&self) -> GroupElem {
        self.mults.iter().enumerate().filter(|(_, m)| *m % 2 == 1).fold(0, |acc, (i, _)| acc | 1 << i)
    }

    /// Parity of det(x), with det(a_i) = dim_i mod 2.
    pub fn det_parity(&self, x: GroupElem) -> bool {
        (x & self.odd_mask()).count_ones() % 2 == 1
    }

    fn odd_mask(&self) -> u64 {
        self.generators.iter().enumerate().filter(|(_, g)| g.dim() % 2 == 1).fold(0, |acc, (i, _)| acc | 1 << i)
    }

    /// kappa(a_i) = (-1)^{dim_i}.
    pub fn kappa(&self) -> Character {
        Character::from_mask(self.rank(), self.odd_mask())
    }

    /// eta_{phi,c}(a_i) = (c, det_i).
    pub fn eta(&self, c: SquareClass) -> Result<Character> {
        let signs = self
            .generators
            .iter()
            .map(|g| hilbert(c, g.det()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Character::from_signs(&signs))
    }

    /// All 2^l characters, in mask order.
    pub fn characters(&self) -> impl Iterator<Item = Character> + '_ {
        (0..self.order()).map(|m| Character::from_mask(self.rank(), m))
    }

    pub fn trivial_character(&self) -> Character {
        Character::trivial(self.rank())
    }

    /// A basis of S+ = ker det.
    pub fn s_plus_basis(&self) -> Vec<GroupElem> {
        let mut basis = Vec::new();
        let mut first_odd = None;
        for (i, g) in self.generators.iter().enumerate() {
            if g.dim() % 2 == 0 {
                basis.push(1 << i);
            } else if let Some(j) = first_odd {
                basis.push((1u64 << j) | (1u64 << i));
            } else {
                first_odd = Some(i);
            }
        }
        basis
    }

    pub fn s_plus_order(&self) -> u64 {
        1 << self.s_plus_basis().len()
    }

    /// Restriction of a character to S+, as signs on [`Self::s_plus_basis`].
    pub fn restrict_to_s_plus(&self, eta: &Character) -> Vec<Sign> {
        self.s_plus_basis().into_iter().map(|b| eta.eval(b)).collect()
    }

    pub fn parse_character(&self, bits: &str) -> Result<Character> {
        Character::parse_bits(bits, self.rank())
    }

    /// Generator labels in order, e.g. `[chi(1), chi(5)]`.
    pub fn labels(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.id().to_string()).collect()
    }
}

/// The map S_phi0 -> S_phi sending a generator to the generator of the same summand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    /// Image index in S_phi of each generator of S_phi0.
    pub images: Vec<usize>,
    pub target_rank: usize,
}

impl Embedding {
    pub fn is_surjective(&self) -> bool {
        self.images.len() == self.target_rank
    }

    pub fn push(&self, x: GroupElem) -> GroupElem {
        self.images.iter().enumerate().filter(|(i, _)| x >> i & 1 == 1).fold(0, |acc, (_, &j)| acc | 1 << j)
    }

    /// Pullback of a character of S_phi to S_phi0.
    pub fn pull(&self, eta: &Character) -> Character {
        let signs: Vec<Sign> = self.images.iter().map(|&j| eta.on_generator(j)).collect();
        Character::from_signs(&signs)
    }
}

/// Embeds S_phi0 into S_phi along shared orthogonal summands.
pub fn embed_component(phi0: &Parameter, phi: &Parameter) -> Result<Embedding> {
    let g0 = ComponentGroup::of(phi0);
    let g = ComponentGroup::of(phi);
    let images = g0
        .generators()
        .iter()
        .map(|s| {
            g.index_of(s.id())
                .ok_or_else(|| Error::NotASubparameter(format!("{} does not occur in {phi}", s.atom())))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Embedding { images, target_rank: g.rank() })
}

/// Data of S_phi -> S_phi+ -> S_phi+ / <z_phi+>.
#[derive(Clone, Debug)]
pub struct EllMap {
    pub phi_plus: Parameter,
    pub source: ComponentGroup,
    pub target: ComponentGroup,
    /// Index in S_phi+ of each generator a_i of S_phi (a_i maps to the summand phi_i chi_V).
    pub iota: Vec<usize>,
    /// The generator of S_phi+ outside the image, present iff 1 does not occur in phi.
    pub extra: Option<usize>,
    /// Nonzero elements of the kernel of S_phi -> S_phi+ / <z_phi+>.
    pub kernel: Vec<GroupElem>,
}

impl EllMap {
    pub fn push(&self, x: GroupElem) -> GroupElem {
        self.iota.iter().enumerate().filter(|(i, _)| x >> i & 1 == 1).fold(0, |acc, (_, &j)| acc | 1 << j)
    }

    pub fn is_bijective(&self) -> bool {
        self.kernel.is_empty()
    }
}

/// Builds the map ell for phi and the discriminant character chi_V.
pub fn ell_map(phi: &Parameter, chi_v: QuadraticCharacter) -> Result<EllMap> {
    let phi_plus = crate::theta::lift_up_param(phi, chi_v)?;
    let source = ComponentGroup::of(phi);
    let target = ComponentGroup::of(&phi_plus);
    let iota = source
        .generators()
        .iter()
        .map(|g| target.index_of(g.twist(chi_v).id()).expect("twisted summands occur in phi+"))
        .collect::<Vec<_>>();
    let image: u64 = iota.iter().fold(0, |acc, &j| acc | 1 << j);
    let extra = (0..target.rank()).find(|j| image >> j & 1 == 0);
    let mut map = EllMap { phi_plus, source, target, iota, extra, kernel: Vec::new() };
    let z_plus = map.target.z();
    map.kernel = map.source.elements().filter(|&x| x != 0 && map.push(x) == z_plus).collect();
    Ok(map)
}
